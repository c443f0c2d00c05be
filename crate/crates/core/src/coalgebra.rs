//! Coalgebras for a theory inside a backend variety: co-operations
//! `σ_A : A → n·A`, the dual axiom check, morphisms, the invariants `G_Φ`,
//! and the canonical structures `V_Φ(X)` and `N_Φ(A)`.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::algebra::{enumerate_hom_tables, subalgebra, FiniteAlgebra, FiniteHom};
use crate::backend::{Elem, Gen, Hom, HomEquality, Obj, VarietyBackend};
use crate::error::{Error, Result};
use crate::theory::{Term, TheoryMorphism, TheoryPresentation};

#[derive(Clone, Debug)]
pub struct Coalgebra {
    pub name: String,
    pub cotheory: Arc<TheoryPresentation>,
    pub backend: VarietyBackend,
    pub carrier: Obj,
    /// One co-operation per cotheory op, in signature order.
    pub coops: Vec<Hom>,
}

impl Coalgebra {
    /// Checks that every co-operation runs from the carrier into the right
    /// copower. The dual axioms are checked separately by [`verify_coalgebra`].
    pub fn new(
        name: impl Into<String>,
        cotheory: Arc<TheoryPresentation>,
        backend: VarietyBackend,
        carrier: Obj,
        coops: Vec<Hom>,
    ) -> Result<Self> {
        let ops = cotheory.signature.ops();
        if ops.len() != coops.len() {
            return Err(Error::SignatureMismatch(format!("{} co-operations for {} ops", coops.len(), ops.len())));
        }
        for (op, h) in ops.iter().zip(&coops) {
            let target = backend.copower(&carrier, op.arity)?.obj;
            if h.domain != carrier || h.codomain != target {
                return Err(Error::HomMismatch(format!(
                    "co-operation `{}` must map {} to {}",
                    op.name,
                    carrier.label(),
                    target.label()
                )));
            }
        }
        Ok(Coalgebra { name: name.into(), cotheory, backend, carrier, coops })
    }

    pub fn coop(&self, op: &str) -> Result<&Hom> {
        let k = self.cotheory.signature.index_of(op).ok_or_else(|| Error::UnknownOp(op.to_string()))?;
        Ok(&self.coops[k])
    }

    pub fn show(&self, e: &Elem) -> String {
        self.backend.show(&self.carrier, e)
    }
}

/// The dual interpretation `t_A : A → n·A` of a term in context `n`.
pub fn derive_coop(c: &Coalgebra, t: &Term, n: usize) -> Result<Hom> {
    t.check(&c.cotheory.signature, n)?;
    let b = &c.backend;
    let target = b.copower(&c.carrier, n)?;
    derive_into(c, t, &target)
}

fn derive_into(c: &Coalgebra, t: &Term, target: &crate::backend::Coproduct) -> Result<Hom> {
    match t {
        Term::Var(j) => Ok(target.injections[j - 1].clone()),
        Term::App(op, args) => {
            let tau = c.coop(op)?;
            let legs = args.iter().map(|a| derive_into(c, a, target)).collect::<Result<Vec<_>>>()?;
            let source = c.backend.copower(&c.carrier, args.len())?;
            let pair = c.backend.copair_on(&source, &legs, &target.obj)?;
            c.backend.compose(&pair, tau)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationCheck {
    pub equation: String,
    pub result: HomEquality,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub checks: Vec<EquationCheck>,
}

impl Verification {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.result.is_equal())
    }

    pub fn first_failure(&self) -> Option<&EquationCheck> {
        self.checks.iter().find(|c| !c.result.is_equal())
    }
}

/// Compares `s_A` and `t_A` for every cotheory equation `s = t`.
pub fn verify_coalgebra(c: &Coalgebra) -> Result<Verification> {
    let mut checks = Vec::new();
    for eq in &c.cotheory.equations {
        let lhs = derive_coop(c, &eq.lhs, eq.context)?;
        let rhs = derive_coop(c, &eq.rhs, eq.context)?;
        checks.push(EquationCheck { equation: eq.to_string(), result: c.backend.hom_equal(&lhs, &rhs)? });
    }
    Ok(Verification { checks })
}

/// Checks `(n·f) ∘ σ_A = σ_B ∘ f` for every op `σ`.
pub fn verify_morphism(a: &Coalgebra, b: &Coalgebra, f: &Hom) -> Result<Verification> {
    if a.cotheory.signature != b.cotheory.signature || a.backend != b.backend {
        return Err(Error::SignatureMismatch(format!("{} and {} are coalgebras of different kinds", a.name, b.name)));
    }
    let bk = &a.backend;
    let mut checks = Vec::new();
    for (k, op) in a.cotheory.signature.ops().iter().enumerate() {
        let (ca, cb) = (bk.copower(&a.carrier, op.arity)?, bk.copower(&b.carrier, op.arity)?);
        let nf = bk.sum_of_homs(&vec![f.clone(); op.arity], &ca, &cb)?;
        let lhs = bk.compose(&nf, &a.coops[k])?;
        let rhs = bk.compose(&b.coops[k], f)?;
        checks.push(EquationCheck {
            equation: format!("morphism square for `{}`", op.name),
            result: bk.hom_equal(&lhs, &rhs)?,
        });
    }
    Ok(Verification { checks })
}

fn backend_of(phi: &TheoryMorphism) -> Result<&VarietyBackend> {
    phi.backend.as_ref().ok_or_else(|| Error::NoBackend(phi.target.name.clone()))
}

/// `V_Φ(X)`: on `F(X)`, each generator `x` is sent by `σ` to `Φ(σ)`
/// evaluated in `F(n·X)` at the `n` tagged copies of `x`.
pub fn v_phi(phi: &TheoryMorphism, gens: Vec<Gen>) -> Result<Coalgebra> {
    let b = backend_of(phi)?;
    let (carrier, _) = b.free(gens);
    let mut coops = Vec::new();
    for op in phi.source.signature.ops() {
        let cp = b.copower(&carrier, op.arity)?;
        let image = phi.image(&op.name)?;
        let m = carrier.gens().expect("free").len();
        let images = (0..m)
            .map(|x| {
                let copies: Vec<Elem> = cp.injections.iter().map(|nu| nu.images[x].clone()).collect();
                b.eval_term(&cp.obj, image, &copies)
            })
            .collect::<Result<Vec<_>>>()?;
        coops.push(Hom { domain: carrier.clone(), codomain: cp.obj, images });
    }
    Coalgebra::new(format!("V({})", phi.name), phi.source.clone(), b.clone(), carrier, coops)
}

/// `Φ(σ)^{n·A}(ν_1(a), .., ν_n(a))`.
fn diagonal_then_operate(b: &VarietyBackend, cp: &crate::backend::Coproduct, image: &Term, a: &Elem) -> Result<Elem> {
    let copies = cp.injections.iter().map(|nu| b.eval_hom(nu, a)).collect::<Result<Vec<_>>>()?;
    b.eval_term(&cp.obj, image, &copies)
}

/// `N_Φ(A)` with `σ ↦ Φ(σ)^{n·A} ∘ ⟨ν_1, .., ν_n⟩`; needs a commutative
/// backend so that these maps are homomorphisms.
pub fn n_phi(phi: &TheoryMorphism, a: &Obj) -> Result<Coalgebra> {
    let b = backend_of(phi)?;
    if let Some((s, t)) = b.commutation_witness() {
        return Err(Error::NonCommutative(format!("{} (`{s}` and `{t}` do not commute)", b.name())));
    }
    let mut coops = Vec::new();
    for op in phi.source.signature.ops() {
        let cp = b.copower(a, op.arity)?;
        let image = phi.image(&op.name)?;
        let h = match a {
            Obj::Free(g) => {
                let images = (0..g.len())
                    .map(|x| diagonal_then_operate(b, &cp, image, &b.free_gen(g.len(), x)))
                    .collect::<Result<Vec<_>>>()?;
                b.hom_from_gens(a, &cp.obj, images)?
            }
            Obj::Finite(alg) => {
                let table = (0..alg.size())
                    .map(|x| diagonal_then_operate(b, &cp, image, &Elem::Fin(x)))
                    .collect::<Result<Vec<_>>>()?;
                b.hom_from_table(a, &cp.obj, table)?
            }
        };
        coops.push(h);
    }
    Coalgebra::new(format!("N({})", phi.name), phi.source.clone(), b.clone(), a.clone(), coops)
}

/// The constant structure `E_e`: each op `σ` of arity `n ≥ 1` sends every
/// element to `Φ(σ)(ν_1 e, .., ν_n e)`, which is a homomorphism when `e` is
/// idempotent for the ops in play. For commutative semigroups this is
/// `a ↦ (e, e)`.
pub fn constant_coalgebra(phi: &TheoryMorphism, a: &Obj, e: usize) -> Result<Coalgebra> {
    let b = backend_of(phi)?;
    let alg = a.algebra().ok_or_else(|| Error::CapabilityUnsupported {
        backend: b.name(),
        what: "constant coalgebras on free carriers".into(),
    })?;
    if e >= alg.size() {
        return Err(Error::ElementNotInDomain(format!("{e} in {}", a.label())));
    }
    let mut coops = Vec::new();
    for op in phi.source.signature.ops() {
        let cp = b.copower(a, op.arity)?;
        let value = diagonal_then_operate(b, &cp, phi.image(&op.name)?, &Elem::Fin(e))?;
        coops.push(b.hom_from_table(a, &cp.obj, vec![value; alg.size()])?);
    }
    Coalgebra::new(format!("E_{e}"), phi.source.clone(), b.clone(), a.clone(), coops)
}

/// Every invertible coalgebra morphism `a → b` between finite carriers, as
/// tables, by exhaustive search over algebra isomorphisms.
pub fn coalgebra_isomorphisms(a: &Coalgebra, b: &Coalgebra) -> Result<Vec<Vec<usize>>> {
    let (Some(x), Some(y)) = (a.carrier.algebra(), b.carrier.algebra()) else {
        return Err(Error::CapabilityUnsupported {
            backend: a.backend.name(),
            what: "isomorphism search on free carriers".into(),
        });
    };
    if x.size() != y.size() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for table in enumerate_hom_tables(x, y)? {
        if table.iter().collect::<BTreeSet<_>>().len() != table.len() {
            continue;
        }
        let f = Hom {
            domain: a.carrier.clone(),
            codomain: b.carrier.clone(),
            images: table.iter().map(|&v| Elem::Fin(v)).collect(),
        };
        if verify_morphism(a, b, &f)?.ok() {
            out.push(table);
        }
    }
    Ok(out)
}

/// The invariants `G_Φ(A)`, in carrier order.
#[derive(Clone, Debug)]
pub struct Invariants {
    pub elems: Vec<Elem>,
    /// False when a free carrier was cut off by the enumeration bound.
    pub exact: bool,
    /// The induced subalgebra `Ḡ_Φ(A)` for finite carriers in a commutative
    /// backend.
    pub subalgebra: Option<(Arc<FiniteAlgebra>, FiniteHom)>,
}

impl Invariants {
    pub fn indices(&self) -> Vec<usize> {
        self.elems.iter().filter_map(|e| if let Elem::Fin(x) = e { Some(*x) } else { None }).collect()
    }
}

/// Whether `a` satisfies `σ_A(a) = Φ(σ)^{n·A}(ν_1(a), .., ν_n(a))` for every op.
pub fn is_invariant(phi: &TheoryMorphism, c: &Coalgebra, a: &Elem) -> Result<bool> {
    let copowers = copowers_of(c)?;
    invariant_with(phi, c, &copowers, a)
}

fn copowers_of(c: &Coalgebra) -> Result<Vec<crate::backend::Coproduct>> {
    c.cotheory.signature.ops().iter().map(|op| c.backend.copower(&c.carrier, op.arity)).collect()
}

fn invariant_with(
    phi: &TheoryMorphism,
    c: &Coalgebra,
    copowers: &[crate::backend::Coproduct],
    a: &Elem,
) -> Result<bool> {
    let b = backend_of(phi)?;
    for (k, op) in c.cotheory.signature.ops().iter().enumerate() {
        let lhs = b.eval_hom(&c.coops[k], a)?;
        if lhs != diagonal_then_operate(b, &copowers[k], phi.image(&op.name)?, a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn g_phi(phi: &TheoryMorphism, c: &Coalgebra, bound: usize) -> Result<Invariants> {
    if phi.source.signature != c.cotheory.signature {
        return Err(Error::SignatureMismatch(format!("{} is not a coalgebra for {}", c.name, phi.source.name)));
    }
    let b = backend_of(phi)?;
    if *b != c.backend {
        return Err(Error::SignatureMismatch(format!("{} lives in {}, not {}", c.name, c.backend.name(), b.name())));
    }
    let listed = b.elements(&c.carrier, bound)?;
    let copowers = copowers_of(c)?;
    let mut elems = Vec::new();
    for e in listed.elems {
        if invariant_with(phi, c, &copowers, &e)? {
            elems.push(e);
        }
    }
    let subalgebra = match (&c.carrier, b.is_commutative()) {
        (Obj::Finite(alg), true) => {
            let set: BTreeSet<usize> =
                elems.iter().filter_map(|e| if let Elem::Fin(x) = e { Some(*x) } else { None }).collect();
            Some(subalgebra(alg, &set)?)
        }
        _ => None,
    };
    Ok(Invariants { elems, exact: listed.exact, subalgebra })
}

/// Outcome of comparing `CoalgHom(N_Φ A, B)` with `Hom(A, Ḡ_Φ B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coreflection {
    pub coalgebra_homs: usize,
    pub algebra_homs: usize,
    /// Each coalgebra morphism with its corestriction, as tables.
    pub bijection: Vec<(Vec<usize>, Vec<usize>)>,
    pub ok: bool,
    pub problem: Option<String>,
}

pub fn check_coreflection(phi: &TheoryMorphism, a: &Obj, b: &Coalgebra) -> Result<Coreflection> {
    let bk = backend_of(phi)?;
    let alg_a = a.algebra().ok_or_else(|| Error::CapabilityUnsupported {
        backend: bk.name(),
        what: "coreflection check on a free carrier".into(),
    })?;
    let alg_b = b.carrier.algebra().ok_or_else(|| Error::CapabilityUnsupported {
        backend: bk.name(),
        what: "coreflection check on a free carrier".into(),
    })?;
    let n = n_phi(phi, a)?;
    let mut left = Vec::new();
    for table in enumerate_hom_tables(alg_a, alg_b)? {
        let f = Hom {
            domain: a.clone(),
            codomain: b.carrier.clone(),
            images: table.iter().map(|&x| Elem::Fin(x)).collect(),
        };
        if verify_morphism(&n, b, &f)?.ok() {
            left.push(table);
        }
    }
    let g = g_phi(phi, b, 0)?;
    let (sub, inc) = g.subalgebra.ok_or_else(|| Error::NonCommutative(bk.name()))?;
    let right = enumerate_hom_tables(alg_a, &sub)?;
    let mut bijection = Vec::new();
    let mut problem = None;
    for f in &left {
        match f.iter().map(|y| inc.table.binary_search(y).ok()).collect::<Option<Vec<usize>>>() {
            Some(co) => bijection.push((f.clone(), co)),
            None => {
                problem.get_or_insert_with(|| format!("coalgebra morphism {f:?} leaves the invariants"));
            }
        }
    }
    let images: BTreeSet<&Vec<usize>> = bijection.iter().map(|(_, c)| c).collect();
    let targets: BTreeSet<&Vec<usize>> = right.iter().collect();
    if problem.is_none() && images != targets {
        problem = Some("corestriction does not hit every hom into the invariants".into());
    }
    if problem.is_none() && images.len() != bijection.len() {
        problem = Some("corestriction is not injective".into());
    }
    Ok(Coreflection {
        coalgebra_homs: left.len(),
        algebra_homs: right.len(),
        ok: problem.is_none() && left.len() == right.len(),
        bijection,
        problem,
    })
}

/// The product of two canonical cogroups `V(X_A)`, `V(X_B)` in groups:
/// `V(X_A × X_B ⊔ X_A ⊔ X_B)` with its two projections.
pub struct CogroupProduct {
    pub product: Coalgebra,
    pub first: Hom,
    pub second: Hom,
}

pub fn product_of_cogroups(a: &Coalgebra, b: &Coalgebra) -> Result<CogroupProduct> {
    let grp = VarietyBackend::grp();
    let id = TheoryMorphism::identity(&grp);
    let canonical = |c: &Coalgebra| -> Result<Vec<Gen>> {
        let gens = c.carrier.gens().ok_or_else(|| Error::NonCanonical(format!("{} is not on a free group", c.name)))?;
        if c.backend != grp || c.cotheory.signature != grp.theory().signature {
            return Err(Error::NonCanonical(format!("{} is not a cogroup in groups", c.name)));
        }
        let v = v_phi(&id, gens.to_vec())?;
        if v.coops != c.coops {
            return Err(Error::NonCanonical(format!("{} does not carry the canonical structure", c.name)));
        }
        Ok(gens.to_vec())
    };
    let (xa, xb) = (canonical(a)?, canonical(b)?);
    let mut gens: Vec<Gen> = Vec::new();
    let mut first = Vec::new();
    let mut second = Vec::new();
    let unit = Elem::GroupWord(Vec::new());
    let (na, nb) = (xa.len(), xb.len());
    for (i, x) in xa.iter().enumerate() {
        for (j, y) in xb.iter().enumerate() {
            gens.push(Gen::Pair(Box::new(x.clone()), Box::new(y.clone())));
            first.push(grp.free_gen(na, i));
            second.push(grp.free_gen(nb, j));
        }
    }
    for (i, x) in xa.iter().enumerate() {
        gens.push(x.tagged(1));
        first.push(grp.free_gen(na, i));
        second.push(unit.clone());
    }
    for (j, y) in xb.iter().enumerate() {
        gens.push(y.tagged(2));
        first.push(unit.clone());
        second.push(grp.free_gen(nb, j));
    }
    let product = v_phi(&id, gens)?;
    let first = grp.hom_from_gens(&product.carrier, &a.carrier, first)?;
    let second = grp.hom_from_gens(&product.carrier, &b.carrier, second)?;
    Ok(CogroupProduct { product, first, second })
}
