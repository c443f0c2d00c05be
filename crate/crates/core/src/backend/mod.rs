//! Decidable normal-form models of free algebras, finite coproducts and
//! homomorphisms for a closed registry of varieties.

mod coproduct;
mod enumerate;
pub mod poly;
mod theories;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

pub use coproduct::{Coproduct, ALGEBRA_TENSOR_CAP};
pub use enumerate::Enumerated;
use poly::{Coeffs, Poly};

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::ring::FiniteRing;
use crate::theory::{Term, TheoryPresentation};

/// A generator name. Coproducts of free objects tag generators with the
/// 1-based index of their summand, printed `x@2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    Named(String),
    Tagged(Box<Gen>, usize),
    Pair(Box<Gen>, Box<Gen>),
}

impl Gen {
    pub fn named(s: impl Into<String>) -> Gen {
        Gen::Named(s.into())
    }

    pub fn tagged(&self, k: usize) -> Gen {
        Gen::Tagged(Box::new(self.clone()), k)
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Named(s) => write!(f, "{s}"),
            Gen::Tagged(g, k) => write!(f, "{g}@{k}"),
            Gen::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// `x1..xn`, the generators used when normalizing terms in context `n`.
pub fn default_gens(n: usize) -> Vec<Gen> {
    (1..=n).map(|i| Gen::Named(format!("x{i}"))).collect()
}

pub fn named_gens<S: AsRef<str>>(names: &[S]) -> Vec<Gen> {
    names.iter().map(|s| Gen::named(s.as_ref())).collect()
}

/// An element of a carrier object. Finite carriers use `Fin`; the other
/// variants are canonical forms in free algebras, with generators as
/// indices into the object's generator list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Fin(usize),
    /// Set
    Gen(usize),
    /// Pointed sets; `None` is the base point.
    Pointed(Option<usize>),
    /// Mon
    Word(Vec<usize>),
    /// Grp, freely reduced; `true` marks an inverse letter.
    GroupWord(Vec<(usize, bool)>),
    /// cMon and cSem (nonempty for cSem).
    Multiset(BTreeMap<usize, u64>),
    /// Ab, nonzero entries only.
    IntVec(BTreeMap<usize, i64>),
    /// Modules over a finite ring, nonzero entries only.
    RVec(BTreeMap<usize, usize>),
    /// cRing (integer coefficients) and cAlg_R (coefficients in R).
    Poly(Poly),
}

/// A carrier: a free algebra on finitely many generators or a finite algebra
/// of the backend's variety.
#[derive(Clone, Debug)]
pub enum Obj {
    Free(Arc<Vec<Gen>>),
    Finite(Arc<FiniteAlgebra>),
}

impl Obj {
    pub fn free(gens: Vec<Gen>) -> Obj {
        Obj::Free(Arc::new(gens))
    }

    pub fn finite(alg: FiniteAlgebra) -> Obj {
        Obj::Finite(Arc::new(alg))
    }

    pub fn gens(&self) -> Option<&[Gen]> {
        match self {
            Obj::Free(g) => Some(g),
            Obj::Finite(_) => None,
        }
    }

    pub fn algebra(&self) -> Option<&Arc<FiniteAlgebra>> {
        match self {
            Obj::Finite(a) => Some(a),
            Obj::Free(_) => None,
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self, Obj::Free(_))
    }

    pub fn label(&self) -> String {
        match self {
            Obj::Free(g) => format!("free{{{}}}", g.iter().map(Gen::to_string).collect::<Vec<_>>().join(",")),
            Obj::Finite(a) => format!("{}[{}]", a.name, a.size()),
        }
    }
}

impl PartialEq for Obj {
    fn eq(&self, other: &Obj) -> bool {
        match (self, other) {
            (Obj::Free(a), Obj::Free(b)) => Arc::ptr_eq(a, b) || a == b,
            (Obj::Finite(a), Obj::Finite(b)) => Arc::ptr_eq(a, b) || a == b,
            _ => false,
        }
    }
}

/// A homomorphism. For a free domain `images` lists generator images; for a
/// finite domain it is the full table.
#[derive(Clone, Debug, PartialEq)]
pub struct Hom {
    pub domain: Obj,
    pub codomain: Obj,
    pub images: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomEquality {
    Equal,
    Differs { at: String, left: String, right: String },
}

impl HomEquality {
    pub fn is_equal(&self) -> bool {
        matches!(self, HomEquality::Equal)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BackendKind {
    Set,
    Pointed,
    Mon,
    CMon,
    CSem,
    Grp,
    Ab,
    Module(Arc<FiniteRing>),
    CRing,
    CAlg(Arc<FiniteRing>),
}

/// What an op of a backend signature does.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Role {
    Pt,
    Mul,
    Unit,
    Inv,
    Plus,
    Zero,
    Neg,
    Times,
    One,
    Scalar(usize),
}

type CopowerCache = HashMap<(usize, usize), Coproduct>;

#[derive(Clone)]
pub struct VarietyBackend {
    kind: BackendKind,
    roles: Arc<Vec<Role>>,
    theory: Arc<TheoryPresentation>,
    cache: Arc<Mutex<CopowerCache>>,
}

impl fmt::Debug for VarietyBackend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarietyBackend({})", self.name())
    }
}

impl PartialEq for VarietyBackend {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl VarietyBackend {
    pub fn new(kind: BackendKind) -> Result<Self> {
        if let BackendKind::CAlg(r) = &kind {
            if !r.is_commutative() {
                return Err(Error::NonCommutative(r.name.clone()));
            }
        }
        let (roles, theory) = theories::build(&kind);
        Ok(VarietyBackend { kind, roles: Arc::new(roles), theory: Arc::new(theory), cache: Arc::default() })
    }

    pub fn set() -> Self {
        Self::new(BackendKind::Set).expect("built in")
    }

    pub fn pointed() -> Self {
        Self::new(BackendKind::Pointed).expect("built in")
    }

    pub fn mon() -> Self {
        Self::new(BackendKind::Mon).expect("built in")
    }

    pub fn cmon() -> Self {
        Self::new(BackendKind::CMon).expect("built in")
    }

    pub fn csem() -> Self {
        Self::new(BackendKind::CSem).expect("built in")
    }

    pub fn grp() -> Self {
        Self::new(BackendKind::Grp).expect("built in")
    }

    pub fn ab() -> Self {
        Self::new(BackendKind::Ab).expect("built in")
    }

    pub fn cring() -> Self {
        Self::new(BackendKind::CRing).expect("built in")
    }

    pub fn module(ring: Arc<FiniteRing>) -> Self {
        Self::new(BackendKind::Module(ring)).expect("modules exist over any ring")
    }

    pub fn calg(ring: Arc<FiniteRing>) -> Result<Self> {
        Self::new(BackendKind::CAlg(ring))
    }

    pub fn kind(&self) -> &BackendKind {
        &self.kind
    }

    pub fn theory(&self) -> &Arc<TheoryPresentation> {
        &self.theory
    }

    pub fn name(&self) -> String {
        self.theory.name.clone()
    }

    pub fn ring(&self) -> Option<&Arc<FiniteRing>> {
        match &self.kind {
            BackendKind::Module(r) | BackendKind::CAlg(r) => Some(r),
            _ => None,
        }
    }

    pub(crate) fn role(&self, op: usize) -> Role {
        self.roles[op]
    }

    pub fn op_index(&self, name: &str) -> Result<usize> {
        self.theory.signature.index_of(name).ok_or_else(|| Error::UnknownOp(name.to_string()))
    }

    fn coeffs(&self) -> Coeffs<'_> {
        match &self.kind {
            BackendKind::CAlg(r) => Coeffs::Ring(r),
            _ => Coeffs::Int,
        }
    }

    /// Finite coproducts of finite algebras exist and are computed.
    pub fn has_finite_coproducts(&self) -> bool {
        !matches!(self.kind, BackendKind::Mon | BackendKind::Grp | BackendKind::CRing)
    }

    /// A pair of ops violating the commutation square, decided by normal
    /// forms; `None` when the theory is commutative.
    pub fn commutation_witness(&self) -> Option<(String, String)> {
        let ops = self.theory.signature.ops();
        for s in ops {
            for t in ops {
                let (m, n) = (s.arity, t.arity);
                let x = |i: usize, j: usize| Term::Var(i * n + j + 1);
                let lhs = Term::app(
                    s.name.clone(),
                    (0..m).map(|i| Term::app(t.name.clone(), (0..n).map(|j| x(i, j)).collect())).collect(),
                );
                let rhs = Term::app(
                    t.name.clone(),
                    (0..n).map(|j| Term::app(s.name.clone(), (0..m).map(|i| x(i, j)).collect())).collect(),
                );
                let ctx = m * n;
                if self.nf(&lhs, ctx).ok() != self.nf(&rhs, ctx).ok() {
                    return Some((s.name.clone(), t.name.clone()));
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        self.commutation_witness().is_none()
    }

    /// `F(X)` and the insertion of generators.
    pub fn free(&self, gens: Vec<Gen>) -> (Obj, Vec<Elem>) {
        let eta = (0..gens.len()).map(|i| self.free_gen(gens.len(), i)).collect();
        (Obj::free(gens), eta)
    }

    pub fn free_gen(&self, n: usize, i: usize) -> Elem {
        match &self.kind {
            BackendKind::Set => Elem::Gen(i),
            BackendKind::Pointed => Elem::Pointed(Some(i)),
            BackendKind::Mon => Elem::Word(vec![i]),
            BackendKind::Grp => Elem::GroupWord(vec![(i, false)]),
            BackendKind::CMon | BackendKind::CSem => Elem::Multiset(BTreeMap::from([(i, 1)])),
            BackendKind::Ab => Elem::IntVec(BTreeMap::from([(i, 1)])),
            BackendKind::Module(r) => Elem::RVec(BTreeMap::from([(i, r.one())])),
            BackendKind::CRing | BackendKind::CAlg(_) => Elem::Poly(Poly::var(n, i, self.coeffs())),
        }
    }

    /// Applies op `op` in the object `obj`.
    pub fn apply(&self, obj: &Obj, op: usize, args: &[Elem]) -> Result<Elem> {
        match obj {
            Obj::Finite(a) => {
                let xs = args
                    .iter()
                    .map(|e| match e {
                        Elem::Fin(x) if *x < a.size() => Ok(*x),
                        other => Err(Error::ElementNotInDomain(format!("{other:?} in {}", a.name))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Elem::Fin(a.apply(op, &xs)))
            }
            Obj::Free(g) => self.free_apply(g.len(), op, args),
        }
    }

    fn free_apply(&self, n: usize, op: usize, args: &[Elem]) -> Result<Elem> {
        let bad = || Error::ElementNotInDomain(format!("{args:?} for {}", self.name()));
        let k = self.coeffs();
        Ok(match (self.role(op), &self.kind, args) {
            (Role::Pt, _, []) => Elem::Pointed(None),
            (Role::Mul, BackendKind::Mon, [Elem::Word(a), Elem::Word(b)]) => Elem::Word([a.as_slice(), b].concat()),
            (Role::Unit, BackendKind::Mon, []) => Elem::Word(Vec::new()),
            (Role::Mul, BackendKind::Grp, [Elem::GroupWord(a), Elem::GroupWord(b)]) => {
                Elem::GroupWord(reduce_word(a.iter().chain(b).copied()))
            }
            (Role::Unit, BackendKind::Grp, []) => Elem::GroupWord(Vec::new()),
            (Role::Inv, _, [Elem::GroupWord(a)]) => {
                Elem::GroupWord(a.iter().rev().map(|&(g, inv)| (g, !inv)).collect())
            }
            (Role::Plus, _, [Elem::Multiset(a), Elem::Multiset(b)]) => {
                let mut out = a.clone();
                for (g, c) in b {
                    *out.entry(*g).or_insert(0) += c;
                }
                Elem::Multiset(out)
            }
            (Role::Zero, BackendKind::CMon, []) => Elem::Multiset(BTreeMap::new()),
            (Role::Plus, _, [Elem::IntVec(a), Elem::IntVec(b)]) => {
                let mut out = a.clone();
                for (g, c) in b {
                    *out.entry(*g).or_insert(0) += c;
                }
                out.retain(|_, c| *c != 0);
                Elem::IntVec(out)
            }
            (Role::Zero, BackendKind::Ab, []) => Elem::IntVec(BTreeMap::new()),
            (Role::Neg, _, [Elem::IntVec(a)]) => Elem::IntVec(a.iter().map(|(g, c)| (*g, -c)).collect()),
            (Role::Plus, BackendKind::Module(r), [Elem::RVec(a), Elem::RVec(b)]) => {
                let mut out = a.clone();
                for (g, c) in b {
                    let e = out.entry(*g).or_insert(r.zero());
                    *e = r.add(*e, *c);
                }
                out.retain(|_, c| *c != r.zero());
                Elem::RVec(out)
            }
            (Role::Zero, BackendKind::Module(_), []) => Elem::RVec(BTreeMap::new()),
            (Role::Neg, BackendKind::Module(r), [Elem::RVec(a)]) => {
                Elem::RVec(a.iter().map(|(g, c)| (*g, r.neg(*c))).collect())
            }
            (Role::Scalar(s), BackendKind::Module(r), [Elem::RVec(a)]) => {
                let mut out: BTreeMap<usize, usize> = a.iter().map(|(g, c)| (*g, r.mul(s, *c))).collect();
                out.retain(|_, c| *c != r.zero());
                Elem::RVec(out)
            }
            (Role::Plus, _, [Elem::Poly(a), Elem::Poly(b)]) => Elem::Poly(a.add(b, k)),
            (Role::Zero, _, []) => Elem::Poly(Poly::zero(n)),
            (Role::Neg, _, [Elem::Poly(a)]) => Elem::Poly(a.neg(k)),
            (Role::Times, _, [Elem::Poly(a), Elem::Poly(b)]) => Elem::Poly(a.mul(b, k)),
            (Role::One, _, []) => Elem::Poly(Poly::constant(n, k.one(), k)),
            (Role::Scalar(s), _, [Elem::Poly(a)]) => Elem::Poly(a.scale(s as i64, k)),
            _ => return Err(bad()),
        })
    }

    /// Interprets a term in `obj` with variables bound to `env`.
    pub fn eval_term(&self, obj: &Obj, t: &Term, env: &[Elem]) -> Result<Elem> {
        match t {
            Term::Var(i) => {
                env.get(i.wrapping_sub(1)).cloned().ok_or(Error::VarOutOfContext { index: *i, context: env.len() })
            }
            Term::App(op, args) => {
                let k = self.op_index(op)?;
                let vals = args.iter().map(|a| self.eval_term(obj, a, env)).collect::<Result<Vec<_>>>()?;
                self.apply(obj, k, &vals)
            }
        }
    }

    /// Canonical form of `t` in the free algebra on `x1..xn`.
    pub fn nf(&self, t: &Term, n: usize) -> Result<Elem> {
        t.check(&self.theory.signature, n)?;
        let (obj, eta) = self.free(default_gens(n));
        self.eval_term(&obj, t, &eta)
    }

    /// A term over `x1..xn` (generator `i` is `x{i+1}`) denoting `e`.
    pub fn to_term(&self, e: &Elem) -> Result<Term> {
        let v = |g: usize| Term::Var(g + 1);
        let sum = |terms: Vec<Term>, empty: Option<&str>| -> Result<Term> {
            let mut it = terms.into_iter();
            match it.next() {
                None => empty.map(Term::constant).ok_or_else(|| Error::NonCanonical("empty sum".into())),
                Some(first) => Ok(it.fold(first, |acc, t| Term::app("plus", vec![acc, t]))),
            }
        };
        Ok(match e {
            Elem::Fin(_) => return Err(Error::NonCanonical("finite element has no free term".into())),
            Elem::Gen(g) => v(*g),
            Elem::Pointed(None) => Term::constant("pt"),
            Elem::Pointed(Some(g)) => v(*g),
            Elem::Word(w) => {
                let mut it = w.iter().map(|&g| v(g));
                match it.next() {
                    None => Term::constant("e"),
                    Some(first) => it.fold(first, |acc, t| Term::app("m", vec![acc, t])),
                }
            }
            Elem::GroupWord(w) => {
                let letter = |&(g, inv): &(usize, bool)| if inv { Term::app("i", vec![v(g)]) } else { v(g) };
                let mut it = w.iter().map(letter);
                match it.next() {
                    None => Term::constant("e"),
                    Some(first) => it.fold(first, |acc, t| Term::app("m", vec![acc, t])),
                }
            }
            Elem::Multiset(ms) => {
                let empty = if self.kind == BackendKind::CMon { Some("zero") } else { None };
                sum(ms.iter().map(|(&g, &c)| repeat("plus", v(g), c)).collect(), empty)?
            }
            Elem::IntVec(iv) => sum(
                iv.iter()
                    .map(|(&g, &c)| {
                        let t = repeat("plus", v(g), c.unsigned_abs());
                        if c < 0 {
                            Term::app("neg", vec![t])
                        } else {
                            t
                        }
                    })
                    .collect(),
                Some("zero"),
            )?,
            Elem::RVec(rv) => {
                sum(rv.iter().map(|(&g, &c)| Term::app(format!("sc{c}"), vec![v(g)])).collect(), Some("zero"))?
            }
            Elem::Poly(p) => {
                let mut terms = Vec::new();
                for (m, &c) in p.descending() {
                    let factors: Vec<Term> =
                        m.0.iter()
                            .enumerate()
                            .filter(|(_, &e)| e > 0)
                            .map(|(g, &e)| repeat("times", v(g), e as u64))
                            .collect();
                    let mono = factors
                        .into_iter()
                        .reduce(|a, b| Term::app("times", vec![a, b]))
                        .unwrap_or_else(|| Term::constant("one"));
                    terms.push(match self.kind {
                        BackendKind::CAlg(_) => Term::app(format!("sc{c}"), vec![mono]),
                        _ => {
                            let t = repeat("plus", mono, c.unsigned_abs());
                            if c < 0 {
                                Term::app("neg", vec![t])
                            } else {
                                t
                            }
                        }
                    });
                }
                sum(terms, Some("zero"))?
            }
        })
    }

    /// Whether `e` is an element of `obj`.
    pub fn contains(&self, obj: &Obj, e: &Elem) -> bool {
        match obj {
            Obj::Finite(a) => matches!(e, Elem::Fin(x) if *x < a.size()),
            Obj::Free(g) => {
                let n = g.len();
                match (&self.kind, e) {
                    (BackendKind::Set, Elem::Gen(i)) => *i < n,
                    (BackendKind::Pointed, Elem::Pointed(p)) => p.is_none_or(|i| i < n),
                    (BackendKind::Mon, Elem::Word(w)) => w.iter().all(|&i| i < n),
                    (BackendKind::Grp, Elem::GroupWord(w)) => {
                        w.iter().all(|&(i, _)| i < n) && reduce_word(w.iter().copied()) == *w
                    }
                    (BackendKind::CMon, Elem::Multiset(m)) => m.iter().all(|(&i, &c)| i < n && c > 0),
                    (BackendKind::CSem, Elem::Multiset(m)) => !m.is_empty() && m.iter().all(|(&i, &c)| i < n && c > 0),
                    (BackendKind::Ab, Elem::IntVec(v)) => v.iter().all(|(&i, &c)| i < n && c != 0),
                    (BackendKind::Module(r), Elem::RVec(v)) => {
                        v.iter().all(|(&i, &c)| i < n && c < r.size() && c != r.zero())
                    }
                    (BackendKind::CRing | BackendKind::CAlg(_), Elem::Poly(p)) => {
                        let ok_coeff = |c: i64| match &self.kind {
                            BackendKind::CAlg(r) => c >= 0 && (c as usize) < r.size() && c as usize != r.zero(),
                            _ => c != 0,
                        };
                        p.vars == n && p.terms.iter().all(|(m, &c)| m.0.len() == n && ok_coeff(c))
                    }
                    _ => false,
                }
            }
        }
    }

    pub fn show_free(&self, gens: &[Gen], e: &Elem) -> String {
        let names: Vec<String> = gens.iter().map(Gen::to_string).collect();
        let name = |i: usize| names.get(i).cloned().unwrap_or_else(|| format!("?{i}"));
        let join_word = |parts: Vec<String>| {
            if parts.is_empty() {
                "e".to_string()
            } else if names.iter().all(|n| n.chars().count() == 1) {
                parts.concat()
            } else {
                parts.join("·")
            }
        };
        let linear = |terms: Vec<(String, String, bool)>| {
            if terms.is_empty() {
                return "0".to_string();
            }
            let mut out = String::new();
            for (k, (coeff, var, negative)) in terms.into_iter().enumerate() {
                match (k, negative) {
                    (0, true) => out.push('-'),
                    (0, false) => {}
                    (_, true) => out.push('-'),
                    (_, false) => out.push('+'),
                }
                out.push_str(&coeff);
                out.push_str(&var);
            }
            out
        };
        match e {
            Elem::Fin(x) => x.to_string(),
            Elem::Gen(i) => name(*i),
            Elem::Pointed(None) => "*".to_string(),
            Elem::Pointed(Some(i)) => name(*i),
            Elem::Word(w) => join_word(w.iter().map(|&i| name(i)).collect()),
            Elem::GroupWord(w) => {
                join_word(w.iter().map(|&(i, inv)| if inv { format!("{}^-1", name(i)) } else { name(i) }).collect())
            }
            Elem::Multiset(m) => {
                let parts: Vec<String> = m.iter().map(|(&i, c)| format!("{}:{c}", name(i))).collect();
                format!("{{{}}}", parts.join(","))
            }
            Elem::IntVec(v) => linear(
                v.iter()
                    .map(|(&i, &c)| {
                        let a = c.unsigned_abs();
                        (if a == 1 { String::new() } else { a.to_string() }, name(i), c < 0)
                    })
                    .collect(),
            ),
            Elem::RVec(v) => {
                let one = self.ring().map(|r| r.one());
                linear(
                    v.iter()
                        .map(|(&i, &c)| (if Some(c) == one { String::new() } else { format!("{c}*") }, name(i), false))
                        .collect(),
                )
            }
            Elem::Poly(p) => p.render(&names, self.coeffs()),
        }
    }

    pub fn show(&self, obj: &Obj, e: &Elem) -> String {
        match obj {
            Obj::Free(g) => self.show_free(g, e),
            Obj::Finite(_) => self.show_free(&[], e),
        }
    }

    pub fn identity(&self, obj: &Obj) -> Hom {
        let images = match obj {
            Obj::Free(g) => (0..g.len()).map(|i| self.free_gen(g.len(), i)).collect(),
            Obj::Finite(a) => (0..a.size()).map(Elem::Fin).collect(),
        };
        Hom { domain: obj.clone(), codomain: obj.clone(), images }
    }

    /// The hom out of a free object determined by generator images.
    pub fn hom_from_gens(&self, domain: &Obj, codomain: &Obj, images: Vec<Elem>) -> Result<Hom> {
        let gens = domain.gens().ok_or_else(|| Error::HomMismatch("domain is not free".into()))?;
        if gens.len() != images.len() {
            return Err(Error::HomMismatch(format!("{} images for {} generators", images.len(), gens.len())));
        }
        if let Some(bad) = images.iter().find(|e| !self.contains(codomain, e)) {
            return Err(Error::ElementNotInDomain(format!("{bad:?} in {}", codomain.label())));
        }
        Ok(Hom { domain: domain.clone(), codomain: codomain.clone(), images })
    }

    /// A hom out of a finite object given by its full table; checked against
    /// every op.
    pub fn hom_from_table(&self, domain: &Obj, codomain: &Obj, table: Vec<Elem>) -> Result<Hom> {
        let a = domain.algebra().ok_or_else(|| Error::HomMismatch("domain is not finite".into()))?;
        if table.len() != a.size() {
            return Err(Error::HomMismatch(format!("{} entries for a carrier of size {}", table.len(), a.size())));
        }
        if let Some(bad) = table.iter().find(|e| !self.contains(codomain, e)) {
            return Err(Error::ElementNotInDomain(format!("{bad:?} in {}", codomain.label())));
        }
        for (k, op) in a.signature().ops().iter().enumerate() {
            for args in crate::util::tuples(a.size(), op.arity) {
                let lhs = &table[a.apply(k, &args)];
                let imgs: Vec<Elem> = args.iter().map(|&x| table[x].clone()).collect();
                if *lhs != self.apply(codomain, k, &imgs)? {
                    return Err(Error::HomMismatch(format!("`{}` at {args:?}", op.name)));
                }
            }
        }
        Ok(Hom { domain: domain.clone(), codomain: codomain.clone(), images: table })
    }

    pub fn eval_hom(&self, h: &Hom, e: &Elem) -> Result<Elem> {
        if !self.contains(&h.domain, e) {
            return Err(Error::ElementNotInDomain(format!("{e:?} in {}", h.domain.label())));
        }
        match (&h.domain, e) {
            (Obj::Finite(_), Elem::Fin(x)) => Ok(h.images[*x].clone()),
            _ => {
                let t = self.to_term(e)?;
                self.eval_term(&h.codomain, &t, &h.images)
            }
        }
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: &Hom, f: &Hom) -> Result<Hom> {
        if f.codomain != g.domain {
            return Err(Error::HomMismatch(format!(
                "cannot compose through {} and {}",
                f.codomain.label(),
                g.domain.label()
            )));
        }
        let images = f.images.iter().map(|e| self.eval_hom(g, e)).collect::<Result<Vec<_>>>()?;
        Ok(Hom { domain: f.domain.clone(), codomain: g.codomain.clone(), images })
    }

    pub fn hom_equal(&self, f: &Hom, g: &Hom) -> Result<HomEquality> {
        if f.domain != g.domain || f.codomain != g.codomain {
            return Err(Error::HomMismatch("homs have different domain or codomain".into()));
        }
        for (k, (a, b)) in f.images.iter().zip(&g.images).enumerate() {
            if a != b {
                let at = match &f.domain {
                    Obj::Free(gens) => gens[k].to_string(),
                    Obj::Finite(_) => k.to_string(),
                };
                return Ok(HomEquality::Differs {
                    at,
                    left: self.show(&f.codomain, a),
                    right: self.show(&g.codomain, b),
                });
            }
        }
        Ok(HomEquality::Equal)
    }

    /// `n·A` with its injections; finite copowers are cached per object.
    pub fn copower(&self, obj: &Obj, n: usize) -> Result<Coproduct> {
        let key = match obj {
            Obj::Finite(a) => Some((Arc::as_ptr(a) as usize, n)),
            Obj::Free(_) => None,
        };
        if let Some(key) = key {
            if let Some(c) = self.cache.lock().expect("cache").get(&key) {
                return Ok(c.clone());
            }
        }
        let c = self.coproduct(&vec![obj.clone(); n])?;
        if let Some(key) = key {
            self.cache.lock().expect("cache").insert(key, c.clone());
        }
        Ok(c)
    }

    /// `f_1 + .. + f_n : ΣA_k → ΣB_k`.
    pub fn sum_of_homs(&self, homs: &[Hom], dom: &Coproduct, cod: &Coproduct) -> Result<Hom> {
        let legs = homs.iter().zip(&cod.injections).map(|(f, nu)| self.compose(nu, f)).collect::<Result<Vec<_>>>()?;
        self.copair_on(dom, &legs, &cod.obj)
    }
}

/// `t + t + .. + t` (`k >= 1` copies) by doubling.
fn repeat(op: &str, t: Term, k: u64) -> Term {
    if k <= 1 {
        return t;
    }
    let half = repeat(op, t.clone(), k / 2);
    let twice = Term::app(op, vec![half.clone(), half]);
    if k.is_multiple_of(2) {
        twice
    } else {
        Term::app(op, vec![twice, t])
    }
}

/// Free reduction of a word over generators and their inverses.
fn reduce_word(letters: impl Iterator<Item = (usize, bool)>) -> Vec<(usize, bool)> {
    let mut out: Vec<(usize, bool)> = Vec::new();
    for (g, inv) in letters {
        if out.last() == Some(&(g, !inv)) {
            out.pop();
        } else {
            out.push((g, inv));
        }
    }
    out
}

#[cfg(test)]
mod tests;
