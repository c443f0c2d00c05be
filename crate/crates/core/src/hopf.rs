//! Finite commutative bialgebras over finite commutative rings: group
//! algebras, truncated polynomial algebras, the tensor coproduct, group-like
//! and primitive elements, and the matrix comonoid in commutative rings.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{hom_from_images, hom_violation, satisfies, FiniteAlgebra, Satisfaction};
use crate::backend::poly::{Coeffs, Poly};
use crate::backend::ALGEBRA_TENSOR_CAP;
use crate::backend::{Elem, Gen, Hom, Obj, VarietyBackend};
use crate::coalgebra::{g_phi, verify_coalgebra, Coalgebra, Verification};
use crate::error::{Error, Result};
use crate::ew::{tensor, TensorModule};
use crate::ring::{Bimodule, FiniteModule, FiniteRing};
use crate::tensor::{Additive, Balance, Tensor};
use crate::theory::{Term, TheoryMorphism};
use crate::util::{tuple_index, tuples};

/// A commutative `R`-algebra on `{0..n-1}`, stored as an algebra for the
/// `cAlg(R)` backend, with a printable label per element.
#[derive(Clone, Debug)]
pub struct FiniteCommAlgebra {
    ring: Arc<FiniteRing>,
    backend: VarietyBackend,
    alg: Arc<FiniteAlgebra>,
    labels: Vec<String>,
}

struct Ops {
    plus: usize,
    zero: usize,
    neg: usize,
    times: usize,
    one: usize,
}

fn ops(b: &VarietyBackend) -> Ops {
    let ix = |o: &str| b.op_index(o).expect("cAlg op");
    Ops { plus: ix("plus"), zero: ix("zero"), neg: ix("neg"), times: ix("times"), one: ix("one") }
}

impl FiniteCommAlgebra {
    /// Builds the tables and checks every commutative-algebra law.
    #[allow(clippy::too_many_arguments)]
    pub fn from_fn(
        name: impl Into<String>,
        ring: Arc<FiniteRing>,
        size: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
        act: impl Fn(usize, usize) -> usize,
        one: usize,
        labels: Vec<String>,
    ) -> Result<Self> {
        let a = Self::build(name, ring, size, add, mul, act, one, labels)?;
        for eq in &a.backend.theory().equations {
            if let Satisfaction::Fails(env) = satisfies(&a.alg, eq)? {
                return Err(Error::AxiomViolation(format!("{}: `{eq}` fails at {env:?}", a.alg.name)));
            }
        }
        Ok(a)
    }

    #[allow(clippy::too_many_arguments)]
    fn build(
        name: impl Into<String>,
        ring: Arc<FiniteRing>,
        size: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
        act: impl Fn(usize, usize) -> usize,
        one: usize,
        labels: Vec<String>,
    ) -> Result<Self> {
        let backend = VarietyBackend::calg(ring.clone())?;
        if labels.len() != size {
            return Err(Error::InvalidTable(format!("{} labels for {size} elements", labels.len())));
        }
        let o = ops(&backend);
        let zero = (0..size)
            .find(|&z| (0..size).all(|x| add(z, x) == x))
            .ok_or_else(|| Error::AxiomViolation("no additive unit".into()))?;
        let neg: Vec<usize> = (0..size)
            .map(|x| {
                (0..size)
                    .find(|&y| add(x, y) == zero)
                    .ok_or_else(|| Error::AxiomViolation(format!("{x} has no negative")))
            })
            .collect::<Result<_>>()?;
        let alg = FiniteAlgebra::from_fn(name, backend.theory().signature.clone(), size, |k, args| match k {
            k if k == o.plus => add(args[0], args[1]),
            k if k == o.zero => zero,
            k if k == o.neg => neg[args[0]],
            k if k == o.times => mul(args[0], args[1]),
            k if k == o.one => one,
            k => act(k - 5, args[0]),
        })?;
        Ok(FiniteCommAlgebra { ring, backend, alg: Arc::new(alg), labels })
    }

    /// The ring itself as an algebra over itself.
    pub fn base(ring: Arc<FiniteRing>) -> Result<Self> {
        let labels = (0..ring.size()).map(|r| r.to_string()).collect();
        let r2 = ring.clone();
        Self::build(
            ring.name.clone(),
            ring,
            r2.size(),
            |a, b| r2.add(a, b),
            |a, b| r2.mul(a, b),
            |s, a| r2.mul(s, a),
            r2.one(),
            labels,
        )
    }

    pub fn name(&self) -> &str {
        &self.alg.name
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn backend(&self) -> &VarietyBackend {
        &self.backend
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.alg
    }

    pub fn size(&self) -> usize {
        self.alg.size()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.alg.apply(ops(&self.backend).plus, &[a, b])
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.alg.apply(ops(&self.backend).times, &[a, b])
    }

    pub fn zero(&self) -> usize {
        self.alg.apply(ops(&self.backend).zero, &[])
    }

    pub fn one(&self) -> usize {
        self.alg.apply(ops(&self.backend).one, &[])
    }

    pub fn act(&self, r: usize, a: usize) -> usize {
        self.alg.apply(5 + r, &[a])
    }

    /// The underlying `R`-module.
    pub fn module(&self) -> Result<FiniteModule> {
        let n = self.size();
        let add = tuples(n, 2).map(|t| self.add(t[0], t[1])).collect();
        let act =
            (0..self.ring.size()).flat_map(|r| (0..n).map(move |x| (r, x))).map(|(r, x)| self.act(r, x)).collect();
        FiniteModule::new_unchecked(self.name(), self.ring.clone(), n, add, act)
    }

    /// Renders `a` through labels; a finite algebra shows as its label.
    pub fn show_set(&self, elems: &[usize]) -> String {
        let parts: Vec<&str> = elems.iter().map(|&x| self.label(x)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// `A ⊗_R B` with its injections `a ↦ a ⊗ 1`, `b ↦ 1 ⊗ b`.
#[derive(Clone, Debug)]
pub struct AlgebraTensor {
    pub algebra: FiniteCommAlgebra,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    module: TensorModule,
}

impl AlgebraTensor {
    pub fn pure(&self, a: usize, b: usize) -> usize {
        self.module.pure(a, b)
    }

    /// Extends a map on pure tensors, additive and balanced in each slot,
    /// into the additive group of `target`.
    pub fn extend(&self, target: &FiniteCommAlgebra, f: impl Fn(usize, usize) -> usize) -> Vec<usize> {
        let add = |x, y| target.add(x, y);
        self.module.inner().induce(&Additive { size: target.size(), zero: target.zero(), add: &add }, f)
    }

    fn extend_into(&self, t: &Tensor, f: impl Fn(usize, usize) -> usize) -> Vec<usize> {
        let add = |x, y| t.add(x, y);
        self.module.inner().induce(&Additive { size: t.size, zero: t.zero, add: &add }, f)
    }

    /// `[f, g]`: `a ⊗ b ↦ f(a) g(b)`.
    pub fn copair(&self, f: &[usize], g: &[usize], target: &FiniteCommAlgebra) -> Vec<usize> {
        self.extend(target, |a, b| target.mul(f[a], g[b]))
    }
}

pub fn algebra_tensor(a: &FiniteCommAlgebra, b: &FiniteCommAlgebra) -> Result<AlgebraTensor> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch);
    }
    let ma = Bimodule::symmetric(&a.module()?)?;
    let module = tensor(&ma, &b.module()?)?;
    let t = module.inner();
    let n = t.size;
    if n > ALGEBRA_TENSOR_CAP {
        return Err(Error::CapExceeded(format!(
            "{}(x){} has {n} elements (cap {ALGEBRA_TENSOR_CAP})",
            a.name(),
            b.name()
        )));
    }
    let mul = t.induce_binary(|x, y, x2, y2| t.pure(a.mul(x, x2), b.mul(y, y2)));
    let act = |r: usize, v: usize| module.module.act(r, v);
    let one = t.pure(a.one(), b.one());
    let labels = tensor_labels(a, b, &module);
    let algebra = FiniteCommAlgebra::build(
        format!("{}(x){}", a.name(), b.name()),
        a.ring.clone(),
        n,
        |x, y| t.add(x, y),
        |x, y| mul[x * n + y],
        act,
        one,
        labels,
    )?;
    let left = (0..a.size()).map(|x| t.pure(x, b.one())).collect();
    let right = (0..b.size()).map(|y| t.pure(a.one(), y)).collect();
    Ok(AlgebraTensor { algebra, left, right, module })
}

/// Labels each tensor element by a shortest sum of pure tensors.
fn tensor_labels(a: &FiniteCommAlgebra, b: &FiniteCommAlgebra, t: &TensorModule) -> Vec<String> {
    let n = t.module.size();
    let zero = t.module.zero();
    let mut labels: Vec<Option<String>> = vec![None; n];
    labels[zero] = Some("0".into());
    let mut pures: Vec<(usize, String)> = Vec::new();
    for x in 0..a.size() {
        for y in 0..b.size() {
            let v = t.pure(x, y);
            if v != zero && x != a.zero() && y != b.zero() {
                pures.push((v, format!("{}(x){}", a.label(x), b.label(y))));
            }
        }
    }
    let mut frontier: Vec<usize> = vec![zero];
    while !frontier.is_empty() && labels.iter().any(Option::is_none) {
        let mut next = Vec::new();
        for &s in &frontier {
            for (p, text) in &pures {
                let v = t.module.add(s, *p);
                if labels[v].is_none() {
                    let prefix = labels[s].clone().expect("labelled");
                    labels[v] = Some(if s == zero { text.clone() } else { format!("{prefix}+{text}") });
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    labels.into_iter().enumerate().map(|(i, l)| l.unwrap_or_else(|| format!("#{i}"))).collect()
}

fn triple_tensor(sq: &AlgebraTensor, a: &FiniteCommAlgebra) -> Result<Tensor> {
    let s = &sq.algebra;
    let (add_s, add_a) = (|x, y| s.add(x, y), |x, y| a.add(x, y));
    let right = |x, r| s.act(r, x);
    let left = |r, y| a.act(r, y);
    Tensor::unwalked(
        &Additive { size: s.size(), zero: s.zero(), add: &add_s },
        &Additive { size: a.size(), zero: a.zero(), add: &add_a },
        Some(&Balance { ring: &a.ring, right: &right, left: &left }),
    )
}

/// Generator images for a bialgebra: `Δ(a)` as a sum of pure tensors, `ε(a)`
/// in the ring, and optionally the antipode.
#[derive(Clone, Debug, Default)]
pub struct BialgebraData {
    pub delta: Vec<(usize, Vec<(usize, usize)>)>,
    pub counit: Vec<(usize, usize)>,
    pub antipode: Option<Vec<(usize, usize)>>,
}

#[derive(Clone, Debug)]
pub struct FiniteBialgebra {
    pub name: String,
    pub algebra: FiniteCommAlgebra,
    /// `A ⊗ A`, the codomain of `Δ`.
    pub square: AlgebraTensor,
    pub delta: Vec<usize>,
    /// `ε(a)` as a ring element.
    pub counit: Vec<usize>,
    pub antipode: Option<Vec<usize>>,
}

impl FiniteBialgebra {
    /// Extends the generator data to algebra homs and checks coassociativity,
    /// both counit laws and, when present, the antipode law.
    pub fn new(name: impl Into<String>, algebra: FiniteCommAlgebra, data: &BialgebraData) -> Result<Self> {
        let name = name.into();
        let square = algebra_tensor(&algebra, &algebra)?;
        let seeds: Vec<(usize, usize)> = data
            .delta
            .iter()
            .map(|(a, terms)| {
                (
                    *a,
                    terms.iter().fold(square.algebra.zero(), |acc, &(x, y)| square.algebra.add(acc, square.pure(x, y))),
                )
            })
            .collect();
        let delta = hom_from_images(&algebra.alg, &square.algebra.alg, &seeds)?;
        let base = FiniteCommAlgebra::base(algebra.ring.clone())?;
        let counit = hom_from_images(&algebra.alg, &base.alg, &data.counit)?;
        let antipode = data.antipode.as_ref().map(|s| hom_from_images(&algebra.alg, &algebra.alg, s)).transpose()?;
        let h = FiniteBialgebra { name, algebra, square, delta, counit, antipode };
        h.check_laws()?;
        Ok(h)
    }

    fn check_laws(&self) -> Result<()> {
        let a = &self.algebra;
        let sq = &self.square;
        // (A ⊗ A) ⊗ A as a group only; its multiplication is never needed
        let cube = triple_tensor(sq, a)?;
        // (Δ ⊗ id)(x ⊗ y) = Δ(x) ⊗ y
        let delta_id = sq.extend_into(&cube, |x, y| cube.pure(self.delta[x], y));
        // (id ⊗ Δ)(x ⊗ y) = x ⊗ Δ(y), reassociated
        let assoc: Vec<Vec<usize>> =
            (0..a.size()).map(|x| sq.extend_into(&cube, |y, z| cube.pure(sq.pure(x, y), z))).collect();
        let id_delta = sq.extend_into(&cube, |x, y| assoc[x][self.delta[y]]);
        for x in 0..a.size() {
            if delta_id[self.delta[x]] != id_delta[self.delta[x]] {
                return Err(self.violation("coassociativity", x));
            }
        }
        let left_counit = sq.extend(a, |x, y| a.act(self.counit[x], y));
        let right_counit = sq.extend(a, |x, y| a.act(self.counit[y], x));
        for x in 0..a.size() {
            if left_counit[self.delta[x]] != x || right_counit[self.delta[x]] != x {
                return Err(self.violation("counit law", x));
            }
        }
        if let Some(s) = &self.antipode {
            let left = sq.extend(a, |x, y| a.mul(s[x], y));
            let right = sq.extend(a, |x, y| a.mul(x, s[y]));
            for x in 0..a.size() {
                let unit = a.act(self.counit[x], a.one());
                if left[self.delta[x]] != unit || right[self.delta[x]] != unit {
                    return Err(self.violation("antipode law", x));
                }
            }
        }
        Ok(())
    }

    fn violation(&self, what: &str, x: usize) -> Error {
        Error::AxiomViolation(format!("{}: {what} fails at {}", self.name, self.algebra.label(x)))
    }

    /// The comonoid (or, with an antipode, cogroup) structure as a coalgebra
    /// in `cAlg(R)`, with `Δ` transported into the backend's coproduct.
    pub fn as_coalgebra(&self) -> Result<Coalgebra> {
        let a = &self.algebra;
        let b = &a.backend;
        let carrier = Obj::Finite(a.alg.clone());
        let two = b.copower(&carrier, 2)?;
        let target = two.obj.algebra().expect("finite copower").clone();
        let fin = |h: &Hom, x: usize| match h.images[x] {
            Elem::Fin(v) => v,
            _ => unreachable!("finite injection"),
        };
        let o = ops(b);
        let add = |x, y| target.apply(o.plus, &[x, y]);
        let compare = self
            .square
            .module
            .inner()
            .induce(&Additive { size: target.size(), zero: target.apply(o.zero, &[]), add: &add }, |x, y| {
                target.apply(o.times, &[fin(&two.injections[0], x), fin(&two.injections[1], y)])
            });
        if let Some(v) = hom_violation(&self.square.algebra.alg, &target, &compare) {
            return Err(Error::HomMismatch(format!("tensor comparison is not an algebra hom: {v}")));
        }
        let delta = Hom {
            domain: carrier.clone(),
            codomain: two.obj.clone(),
            images: self.delta.iter().map(|&t| Elem::Fin(compare[t])).collect(),
        };
        let zero = b.copower(&carrier, 0)?;
        let k = Coeffs::Ring(&self.algebra.ring);
        let images = self.counit.iter().map(|&r| Elem::Poly(Poly::constant(0, r as i64, k))).collect();
        let counit = Hom { domain: carrier.clone(), codomain: zero.obj, images };
        let (cotheory, coops) = match &self.antipode {
            Some(s) => {
                let inv = Hom {
                    domain: carrier.clone(),
                    codomain: carrier.clone(),
                    images: s.iter().map(|&x| Elem::Fin(x)).collect(),
                };
                (VarietyBackend::grp().theory().clone(), vec![delta, counit, inv])
            }
            None => (VarietyBackend::mon().theory().clone(), vec![delta, counit]),
        };
        Coalgebra::new(self.name.clone(), cotheory, b.clone(), carrier, coops)
    }
}

/// `Φ` from the monoid (or group) theory into `cAlg(R)` picking out
/// group-likes: `m ↦ times`, `e ↦ one`, `i ↦` nothing sensible, so only the
/// monoid part is used.
pub fn group_like_morphism(b: &VarietyBackend) -> Result<TheoryMorphism> {
    let assignment = BTreeMap::from([
        ("m".to_string(), Term::app("times", vec![Term::Var(1), Term::Var(2)])),
        ("e".to_string(), Term::constant("one")),
    ]);
    TheoryMorphism::into_backend("grouplike", VarietyBackend::mon().theory().clone(), b, assignment)
}

/// `m ↦ plus`, `e ↦ zero`.
pub fn primitive_morphism(b: &VarietyBackend) -> Result<TheoryMorphism> {
    let assignment = BTreeMap::from([
        ("m".to_string(), Term::app("plus", vec![Term::Var(1), Term::Var(2)])),
        ("e".to_string(), Term::constant("zero")),
    ]);
    TheoryMorphism::into_backend("primitive", VarietyBackend::mon().theory().clone(), b, assignment)
}

/// `{a | Δ(a) = a ⊗ a, ε(a) = 1}`.
pub fn group_like(h: &FiniteBialgebra) -> Vec<usize> {
    let one = h.algebra.ring.one();
    (0..h.algebra.size()).filter(|&a| h.delta[a] == h.square.pure(a, a) && h.counit[a] == one).collect()
}

/// `{a | Δ(a) = a ⊗ 1 + 1 ⊗ a}`.
pub fn primitive(h: &FiniteBialgebra) -> Vec<usize> {
    let (sq, one) = (&h.square, h.algebra.one());
    (0..h.algebra.size()).filter(|&a| h.delta[a] == sq.algebra.add(sq.pure(a, one), sq.pure(one, a))).collect()
}

pub fn is_submonoid(a: &FiniteCommAlgebra, s: &[usize]) -> bool {
    s.contains(&a.one()) && s.iter().all(|&x| s.iter().all(|&y| s.contains(&a.mul(x, y))))
}

pub fn is_submodule(a: &FiniteCommAlgebra, s: &[usize]) -> bool {
    s.contains(&a.zero())
        && s.iter().all(|&x| s.iter().all(|&y| s.contains(&a.add(x, y))))
        && s.iter().all(|&x| (0..a.ring.size()).all(|r| s.contains(&a.act(r, x))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GphiComparison {
    pub bialgebra: String,
    /// The cotheory equations checked in the backend; `None` when the
    /// triple copower is over the size cap. The classical laws are checked
    /// on construction either way.
    pub coalgebra_laws: Option<bool>,
    pub group_like_abstract: Vec<usize>,
    pub group_like_classical: Vec<usize>,
    pub primitive_abstract: Vec<usize>,
    pub primitive_classical: Vec<usize>,
}

impl GphiComparison {
    pub fn ok(&self) -> bool {
        self.coalgebra_laws != Some(false)
            && self.group_like_abstract == self.group_like_classical
            && self.primitive_abstract == self.primitive_classical
    }
}

/// Runs `G_Φ` on the coalgebra encoding for both choices of `Φ` and sets
/// the results beside the classical filters.
pub fn gphi_matches_classical(h: &FiniteBialgebra) -> Result<GphiComparison> {
    let c = h.as_coalgebra()?;
    let laws = match verify_coalgebra(&c) {
        Ok(v) => Some(v.ok()),
        Err(Error::CapExceeded(_)) => None,
        Err(e) => return Err(e),
    };
    let mon = mon_part(&c)?;
    let b = &h.algebra.backend;
    let gl = g_phi(&group_like_morphism(b)?, &mon, 0)?.indices();
    let pr = g_phi(&primitive_morphism(b)?, &mon, 0)?.indices();
    Ok(GphiComparison {
        bialgebra: h.name.clone(),
        coalgebra_laws: laws,
        group_like_abstract: gl,
        group_like_classical: group_like(h),
        primitive_abstract: pr,
        primitive_classical: primitive(h),
    })
}

/// Forgets the co-inverse of a cogroup.
fn mon_part(c: &Coalgebra) -> Result<Coalgebra> {
    let mon = VarietyBackend::mon().theory().clone();
    let coops = vec![c.coop("m")?.clone(), c.coop("e")?.clone()];
    Coalgebra::new(c.name.clone(), mon, c.backend.clone(), c.carrier.clone(), coops)
}

/// Finite groups in the `Grp` signature `m, e, i`.
pub fn check_group(g: &FiniteAlgebra) -> Result<()> {
    let grp = VarietyBackend::grp();
    if *g.signature() != grp.theory().signature {
        return Err(Error::SignatureMismatch(format!("{} is not in the group signature", g.name)));
    }
    for eq in &grp.theory().equations {
        if let Satisfaction::Fails(env) = satisfies(g, eq)? {
            return Err(Error::AxiomViolation(format!("{} is not a group: `{eq}` fails at {env:?}", g.name)));
        }
    }
    Ok(())
}

/// `|R|^n`, refused when `A ⊗ A` could not be built.
fn carrier_size(r: &FiniteRing, n: usize) -> Result<usize> {
    u32::try_from(n)
        .ok()
        .and_then(|n| r.size().checked_pow(n))
        .filter(|&s| s.checked_mul(s).is_some_and(|sq| sq <= ALGEBRA_TENSOR_CAP))
        .ok_or_else(|| Error::CapExceeded(format!("{}^{n} elements", r.name)))
}

/// `R[G]` on `R^|G|` (coefficient vectors, first group element most
/// significant) with `Δ(g) = g ⊗ g`, `ε(g) = 1`, `S(g) = g⁻¹`.
/// `names[g]` labels the group elements; the unit should be `"1"`.
pub fn group_algebra(ring: Arc<FiniteRing>, g: &FiniteAlgebra, names: &[String]) -> Result<FiniteBialgebra> {
    check_group(g)?;
    let n = g.size();
    let r = ring.clone();
    let size = carrier_size(&r, n)?;
    let decode = |mut x: usize| {
        let mut c = vec![0; n];
        for k in (0..n).rev() {
            c[k] = x % r.size();
            x /= r.size();
        }
        c
    };
    let encode = |c: &[usize]| tuple_index(r.size(), c);
    let e = g.apply(1, &[]);
    let basis = |h: usize| {
        let mut c = vec![r.zero(); n];
        c[h] = r.one();
        encode(&c)
    };
    let labels: Vec<String> = (0..size)
        .map(|x| {
            let c = decode(x);
            let terms: Vec<String> = (0..n)
                .filter(|&h| c[h] != r.zero())
                .map(|h| match (c[h] == r.one(), h == e) {
                    (true, _) => names[h].clone(),
                    (false, true) => c[h].to_string(),
                    (false, false) => format!("{}{}", c[h], names[h]),
                })
                .collect();
            if terms.is_empty() {
                "0".into()
            } else {
                terms.join("+")
            }
        })
        .collect();
    let alg = FiniteCommAlgebra::from_fn(
        format!("{}[{}]", r.name, g.name),
        ring.clone(),
        size,
        |x, y| {
            let (a, b) = (decode(x), decode(y));
            encode(&a.iter().zip(&b).map(|(&p, &q)| r.add(p, q)).collect::<Vec<_>>())
        },
        |x, y| {
            let (a, b) = (decode(x), decode(y));
            let mut c = vec![r.zero(); n];
            for (h, &ah) in a.iter().enumerate() {
                for (k, &bk) in b.iter().enumerate() {
                    let hk = g.apply(0, &[h, k]);
                    c[hk] = r.add(c[hk], r.mul(ah, bk));
                }
            }
            encode(&c)
        },
        |s, x| encode(&decode(x).iter().map(|&p| r.mul(s, p)).collect::<Vec<_>>()),
        basis(e),
        labels,
    )?;
    let data = BialgebraData {
        delta: (0..n).map(|h| (basis(h), vec![(basis(h), basis(h))])).collect(),
        counit: (0..n).map(|h| (basis(h), r.one())).collect(),
        antipode: Some((0..n).map(|h| (basis(h), basis(g.apply(2, &[h])))).collect()),
    };
    FiniteBialgebra::new(alg.name().to_string(), alg, &data)
}

/// `R[x]/(x^n)` with `x` primitive: `Δ(x) = x ⊗ 1 + 1 ⊗ x`, `ε(x) = 0`,
/// `S(x) = -x`. Only a bialgebra when the binomial coefficients vanish, which
/// construction checks.
pub fn truncated_polynomial(ring: Arc<FiniteRing>, n: usize) -> Result<FiniteBialgebra> {
    let r = ring.clone();
    let size = carrier_size(&r, n)?;
    let decode = |mut v: usize| {
        let mut c = vec![0; n];
        for c in c.iter_mut() {
            *c = v % r.size();
            v /= r.size();
        }
        c
    };
    let encode = |c: &[usize]| c.iter().rev().fold(0, |acc, &d| acc * r.size() + d);
    let labels = (0..size)
        .map(|v| {
            let c = decode(v);
            let terms: Vec<String> = (0..n)
                .filter(|&k| c[k] != r.zero())
                .map(|k| {
                    let mono = match k {
                        0 => String::new(),
                        1 => "x".into(),
                        k => format!("x^{k}"),
                    };
                    match (c[k] == r.one(), k) {
                        (true, 0) => "1".into(),
                        (true, _) => mono,
                        (false, _) => format!("{}{mono}", c[k]),
                    }
                })
                .collect();
            if terms.is_empty() {
                "0".into()
            } else {
                terms.join("+")
            }
        })
        .collect();
    let unit = |k: usize| {
        let mut c = vec![r.zero(); n];
        c[k] = r.one();
        encode(&c)
    };
    let alg = FiniteCommAlgebra::from_fn(
        format!("{}[x]/x^{n}", r.name),
        ring.clone(),
        size,
        |a, b| encode(&decode(a).iter().zip(decode(b)).map(|(&p, q)| r.add(p, q)).collect::<Vec<_>>()),
        |a, b| {
            let (p, q) = (decode(a), decode(b));
            let mut c = vec![r.zero(); n];
            for i in 0..n {
                for j in 0..n - i {
                    c[i + j] = r.add(c[i + j], r.mul(p[i], q[j]));
                }
            }
            encode(&c)
        },
        |s, a| encode(&decode(a).iter().map(|&p| r.mul(s, p)).collect::<Vec<_>>()),
        unit(0),
        labels,
    )?;
    if n < 2 {
        let data = BialgebraData { delta: vec![], counit: vec![], antipode: Some(vec![]) };
        return FiniteBialgebra::new(alg.name().to_string(), alg, &data);
    }
    let x = unit(1);
    let minus_x = alg.act(r.neg(r.one()), x);
    let data = BialgebraData {
        delta: vec![(x, vec![(x, alg.one()), (alg.one(), x)])],
        counit: vec![(x, r.zero())],
        antipode: Some(vec![(x, minus_x)]),
    };
    FiniteBialgebra::new(alg.name().to_string(), alg, &data)
}

/// The cyclic group `C_n` in the `Grp` signature with element names
/// `1, g, g^2, ..`.
pub fn cyclic_group(n: usize) -> (FiniteAlgebra, Vec<String>) {
    let sig = VarietyBackend::grp().theory().signature.clone();
    let g = FiniteAlgebra::from_fn(format!("C{n}"), sig, n, |k, a| match k {
        0 => (a[0] + a[1]) % n,
        1 => 0,
        _ => (n - a[0]) % n,
    })
    .expect("cyclic group tables");
    let names = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "x".to_string(),
            k => format!("x^{k}"),
        })
        .collect();
    (g, names)
}

/// The stored bialgebras.
pub fn stored_bialgebras() -> Result<Vec<FiniteBialgebra>> {
    let f2 = Arc::new(FiniteRing::zmod(2));
    let z3 = Arc::new(FiniteRing::zmod(3));
    let (c1, n1) = cyclic_group(1);
    let (c2, n2) = cyclic_group(2);
    let (c3, n3) = cyclic_group(3);
    Ok(vec![
        group_algebra(f2.clone(), &c2, &n2)?,
        group_algebra(z3.clone(), &c2, &n2)?,
        truncated_polynomial(f2.clone(), 2)?,
        group_algebra(f2.clone(), &c1, &n1)?,
        group_algebra(f2, &c3, &n3)?,
        group_algebra(z3, &c1, &n1)?,
    ])
}

/// `Z[X_ij]` with `Δ(X_ij) = Σ_k X_ik ⊗ X_kj` and `ε(X_ij) = δ_ij`, a
/// comonoid in commutative rings.
#[derive(Clone, Debug)]
pub struct MatrixComonoid {
    pub n: usize,
    pub coalgebra: Coalgebra,
}

pub const MATRIX_CAP: usize = 3;

pub fn matrix_comonoid(n: usize) -> Result<MatrixComonoid> {
    if n == 0 || n > MATRIX_CAP {
        return Err(Error::CapExceeded(format!("matrix comonoid of size {n} (1..={MATRIX_CAP})")));
    }
    let b = VarietyBackend::cring();
    let gens: Vec<Gen> = tuples(n, 2).map(|t| Gen::named(format!("X{}{}", t[0] + 1, t[1] + 1))).collect();
    let (carrier, _) = b.free(gens);
    let two = b.copower(&carrier, 2)?;
    let times = b.op_index("times")?;
    let plus = b.op_index("plus")?;
    let total = 2 * n * n;
    let delta_images = tuples(n, 2)
        .map(|t| {
            let (i, j) = (t[0], t[1]);
            let mut acc = b.apply(&two.obj, b.op_index("zero")?, &[])?;
            for k in 0..n {
                let left = b.free_gen(total, i * n + k);
                let right = b.free_gen(total, n * n + k * n + j);
                let prod = b.apply(&two.obj, times, &[left, right])?;
                acc = b.apply(&two.obj, plus, &[acc, prod])?;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    let delta = b.hom_from_gens(&carrier, &two.obj, delta_images)?;
    let zero = b.copower(&carrier, 0)?;
    let int = |k: i64| b.eval_term(&zero.obj, &Term::constant(if k == 1 { "one" } else { "zero" }), &[]);
    let counit_images = tuples(n, 2).map(|t| int(i64::from(t[0] == t[1]))).collect::<Result<Vec<_>>>()?;
    let counit = b.hom_from_gens(&carrier, &zero.obj, counit_images)?;
    let coalgebra =
        Coalgebra::new(format!("M{n}"), VarietyBackend::mon().theory().clone(), b, carrier, vec![delta, counit])?;
    Ok(MatrixComonoid { n, coalgebra })
}

impl MatrixComonoid {
    pub fn verify(&self) -> Result<Verification> {
        verify_coalgebra(&self.coalgebra)
    }

    /// Compares the convolution `[f, g] ∘ Δ` of ring-valued points with
    /// matrix multiplication over `ring`, for every pair of points.
    pub fn check_against_matrices(&self, ring: &Arc<FiniteRing>) -> Result<MatrixCheck> {
        let b = &self.coalgebra.backend;
        let target = Obj::finite(ring_as_cring(ring)?);
        let n = self.n;
        let points: Vec<Vec<usize>> = tuples(ring.size(), n * n).collect();
        let two = b.copower(&self.coalgebra.carrier, 2)?;
        let delta = self.coalgebra.coop("m")?;
        let mut pairs = 0;
        let mut mismatches = Vec::new();
        for f in &points {
            for g in &points {
                pairs += 1;
                let hf =
                    b.hom_from_gens(&self.coalgebra.carrier, &target, f.iter().map(|&v| Elem::Fin(v)).collect())?;
                let hg =
                    b.hom_from_gens(&self.coalgebra.carrier, &target, g.iter().map(|&v| Elem::Fin(v)).collect())?;
                let conv = b.compose(&b.copair_on(&two, &[hf, hg], &target)?, delta)?;
                let product: Vec<Elem> = tuples(n, 2)
                    .map(|t| {
                        let v = (0..n)
                            .fold(ring.zero(), |acc, k| ring.add(acc, ring.mul(f[t[0] * n + k], g[k * n + t[1]])));
                        Elem::Fin(v)
                    })
                    .collect();
                if conv.images != product {
                    mismatches.push((f.clone(), g.clone()));
                }
            }
        }
        Ok(MatrixCheck { points: points.len(), pairs, mismatches })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixCheck {
    pub points: usize,
    pub pairs: usize,
    pub mismatches: Vec<(Vec<usize>, Vec<usize>)>,
}

/// A finite commutative ring as an algebra for the `cRing` backend.
pub fn ring_as_cring(ring: &FiniteRing) -> Result<FiniteAlgebra> {
    if !ring.is_commutative() {
        return Err(Error::NonCommutative(ring.name.clone()));
    }
    let b = VarietyBackend::cring();
    let o = ops(&b);
    FiniteAlgebra::from_fn(ring.name.clone(), b.theory().signature.clone(), ring.size(), |k, a| match k {
        k if k == o.plus => ring.add(a[0], a[1]),
        k if k == o.zero => ring.zero(),
        k if k == o.neg => ring.neg(a[0]),
        k if k == o.times => ring.mul(a[0], a[1]),
        _ => ring.one(),
    })
}
