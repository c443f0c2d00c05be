//! Signatures, terms in explicit contexts, equations, presentations and
//! theory morphisms.
//!
//! Terms carry no context of their own: every operation that needs one takes
//! the context arity `n` alongside the term, and variables are the 1-based
//! positions `x1..xn`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::backend::VarietyBackend;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpDecl {
    pub name: String,
    pub arity: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Signature {
    ops: Vec<OpDecl>,
}

impl Signature {
    pub fn new<S: Into<String>>(ops: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let mut out: Vec<OpDecl> = Vec::new();
        for (name, arity) in ops {
            let name = name.into();
            if out.iter().any(|o| o.name == name) {
                return Err(Error::DuplicateOp(name));
            }
            out.push(OpDecl { name, arity });
        }
        Ok(Signature { ops: out })
    }

    pub fn ops(&self) -> &[OpDecl] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|o| o.name == name)
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.ops.iter().find(|o| o.name == name).map(|o| o.arity)
    }

    pub fn has_constants(&self) -> bool {
        self.ops.iter().any(|o| o.arity == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    /// 1-based variable position.
    Var(usize),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn app(op: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(op.into(), args)
    }

    pub fn constant(op: impl Into<String>) -> Term {
        Term::App(op.into(), Vec::new())
    }

    /// Checks well-formedness over `sig` in context `n`.
    pub fn check(&self, sig: &Signature, n: usize) -> Result<()> {
        match self {
            Term::Var(i) => {
                if *i == 0 || *i > n {
                    Err(Error::VarOutOfContext { index: *i, context: n })
                } else {
                    Ok(())
                }
            }
            Term::App(op, args) => {
                let arity = sig.arity(op).ok_or_else(|| Error::UnknownOp(op.clone()))?;
                if arity != args.len() {
                    return Err(Error::ArityMismatch { op: op.clone(), expected: arity, found: args.len() });
                }
                args.iter().try_for_each(|a| a.check(sig, n))
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Largest variable index occurring, 0 for closed terms.
    pub fn max_var(&self) -> usize {
        match self {
            Term::Var(i) => *i,
            Term::App(_, args) => args.iter().map(Term::max_var).max().unwrap_or(0),
        }
    }

    /// Replaces `x_i` by `args[i-1]`.
    pub fn substitute(&self, args: &[Term]) -> Term {
        match self {
            Term::Var(i) => args[*i - 1].clone(),
            Term::App(op, xs) => Term::App(op.clone(), xs.iter().map(|t| t.substitute(args)).collect()),
        }
    }

    pub fn map_vars(&self, f: &impl Fn(usize) -> Term) -> Term {
        match self {
            Term::Var(i) => f(*i),
            Term::App(op, xs) => Term::App(op.clone(), xs.iter().map(|t| t.map_vars(f)).collect()),
        }
    }

    /// Renames ops through `f`, keeping the tree shape.
    pub fn rename_ops(&self, f: &impl Fn(&str) -> String) -> Term {
        match self {
            Term::Var(i) => Term::Var(*i),
            Term::App(op, xs) => Term::App(f(op), xs.iter().map(|t| t.rename_ops(f)).collect()),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::App(op, args) if args.is_empty() => write!(f, "{op}"),
            Term::App(op, args) => {
                write!(f, "{op}(")?;
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub context: usize,
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    /// Builds an equation whose context is the largest variable used.
    pub fn new(lhs: Term, rhs: Term) -> Equation {
        let context = lhs.max_var().max(rhs.max_var());
        Equation { context, lhs, rhs }
    }

    pub fn check(&self, sig: &Signature) -> Result<()> {
        self.lhs.check(sig, self.context)?;
        self.rhs.check(sig, self.context)
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TheoryPresentation {
    pub name: String,
    pub signature: Signature,
    pub equations: Vec<Equation>,
}

impl TheoryPresentation {
    pub fn new(name: impl Into<String>, signature: Signature, equations: Vec<Equation>) -> Result<Self> {
        for eq in &equations {
            eq.check(&signature)?;
        }
        Ok(TheoryPresentation { name: name.into(), signature, equations })
    }
}

/// Canonical form accepted by [`crate::dsl::parse_theory`].
impl fmt::Display for TheoryPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "theory {} ops", self.name)?;
        for op in self.signature.ops() {
            write!(f, " {}/{}", op.name, op.arity)?;
        }
        write!(f, " eqs")?;
        for (k, eq) in self.equations.iter().enumerate() {
            write!(f, "{}{eq}", if k == 0 { " " } else { "; " })?;
        }
        Ok(())
    }
}

/// An assignment of target terms to source ops. When the target carries a
/// backend, equation preservation can be decided by normal forms.
#[derive(Clone, Debug)]
pub struct TheoryMorphism {
    pub name: String,
    pub source: Arc<TheoryPresentation>,
    pub target: Arc<TheoryPresentation>,
    pub backend: Option<VarietyBackend>,
    pub assignment: BTreeMap<String, Term>,
}

impl TheoryMorphism {
    /// Checks totality and that each image is well-formed in the op's arity.
    pub fn new(
        name: impl Into<String>,
        source: Arc<TheoryPresentation>,
        target: Arc<TheoryPresentation>,
        backend: Option<VarietyBackend>,
        assignment: BTreeMap<String, Term>,
    ) -> Result<Self> {
        for op in source.signature.ops() {
            let t = assignment.get(&op.name).ok_or_else(|| Error::MissingAssignment(op.name.clone()))?;
            t.check(&target.signature, op.arity)?;
        }
        if let Some(extra) = assignment.keys().find(|k| source.signature.index_of(k).is_none()) {
            return Err(Error::UnknownOp(extra.clone()));
        }
        Ok(TheoryMorphism { name: name.into(), source, target, backend, assignment })
    }

    /// The morphism into a backend's own theory.
    pub fn into_backend(
        name: impl Into<String>,
        source: Arc<TheoryPresentation>,
        backend: &VarietyBackend,
        assignment: BTreeMap<String, Term>,
    ) -> Result<Self> {
        Self::new(name, source, backend.theory().clone(), Some(backend.clone()), assignment)
    }

    /// Identity on a backend theory.
    pub fn identity(backend: &VarietyBackend) -> TheoryMorphism {
        let th = backend.theory().clone();
        let assignment = th
            .signature
            .ops()
            .iter()
            .map(|o| (o.name.clone(), Term::app(o.name.clone(), (1..=o.arity).map(Term::Var).collect())))
            .collect();
        TheoryMorphism {
            name: format!("id_{}", th.name),
            source: th.clone(),
            target: th,
            backend: Some(backend.clone()),
            assignment,
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &TheoryMorphism) -> Result<TheoryMorphism> {
        if self.target.signature != next.source.signature {
            return Err(Error::SignatureMismatch(format!("cannot compose {} with {}", self.name, next.name)));
        }
        let assignment =
            self.assignment.iter().map(|(k, t)| Ok((k.clone(), translate_term(next, t)?))).collect::<Result<_>>()?;
        Ok(TheoryMorphism {
            name: format!("{};{}", self.name, next.name),
            source: self.source.clone(),
            target: next.target.clone(),
            backend: next.backend.clone(),
            assignment,
        })
    }

    pub fn image(&self, op: &str) -> Result<&Term> {
        self.assignment.get(op).ok_or_else(|| Error::MissingAssignment(op.to_string()))
    }
}

/// Substitutes each source op by its assigned target term.
pub fn translate_term(phi: &TheoryMorphism, t: &Term) -> Result<Term> {
    match t {
        Term::Var(i) => Ok(Term::Var(*i)),
        Term::App(op, args) => {
            let image = phi.image(op)?;
            let args = args.iter().map(|a| translate_term(phi, a)).collect::<Result<Vec<_>>>()?;
            Ok(image.substitute(&args))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismValidation {
    Valid,
    Counterexample { equation: Box<Equation>, lhs: Term, rhs: Term, lhs_nf: String, rhs_nf: String },
}

/// Decides equation preservation through the target backend's normal forms.
pub fn validate_theory_morphism(phi: &TheoryMorphism) -> Result<MorphismValidation> {
    let backend = phi.backend.as_ref().ok_or_else(|| Error::NoBackend(phi.target.name.clone()))?;
    for eq in &phi.source.equations {
        let lhs = translate_term(phi, &eq.lhs)?;
        let rhs = translate_term(phi, &eq.rhs)?;
        let l = backend.nf(&lhs, eq.context)?;
        let r = backend.nf(&rhs, eq.context)?;
        if l != r {
            let gens = crate::backend::default_gens(eq.context);
            return Ok(MorphismValidation::Counterexample {
                equation: Box::new(eq.clone()),
                lhs_nf: backend.show_free(&gens, &l),
                rhs_nf: backend.show_free(&gens, &r),
                lhs,
                rhs,
            });
        }
    }
    Ok(MorphismValidation::Valid)
}
