//! Finite Σ-algebras given by operation tables over `{0..m-1}`.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::theory::{Equation, Signature, Term, TheoryPresentation};
use crate::util::{pow, tuple_index, tuples};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    pub name: String,
    signature: Signature,
    size: usize,
    /// One row-major table per op, in signature order.
    tables: Vec<Vec<usize>>,
}

impl FiniteAlgebra {
    pub fn new(name: impl Into<String>, signature: Signature, size: usize, tables: Vec<Vec<usize>>) -> Result<Self> {
        if size == 0 && signature.has_constants() {
            return Err(Error::EmptyCarrierWithConstants);
        }
        if tables.len() != signature.len() {
            return Err(Error::InvalidTable(format!("{} tables for {} ops", tables.len(), signature.len())));
        }
        for (op, table) in signature.ops().iter().zip(&tables) {
            let want = pow(size, op.arity);
            if table.len() != want {
                return Err(Error::InvalidTable(format!(
                    "table for `{}` has {} entries, expected {want}",
                    op.name,
                    table.len()
                )));
            }
            if let Some(bad) = table.iter().find(|&&v| v >= size) {
                return Err(Error::InvalidTable(format!("`{}` yields {bad} outside carrier of size {size}", op.name)));
            }
        }
        Ok(FiniteAlgebra { name: name.into(), signature, size, tables })
    }

    /// Builds tables by evaluating `f(op index, args)` on every tuple.
    pub fn from_fn(
        name: impl Into<String>,
        signature: Signature,
        size: usize,
        mut f: impl FnMut(usize, &[usize]) -> usize,
    ) -> Result<Self> {
        let tables = signature
            .ops()
            .iter()
            .enumerate()
            .map(|(k, op)| tuples(size, op.arity).map(|t| f(k, &t)).collect())
            .collect();
        Self::new(name, signature, size, tables)
    }

    /// Builds an algebra and checks it against every equation of `theory`.
    pub fn of_theory(
        name: impl Into<String>,
        theory: &TheoryPresentation,
        size: usize,
        tables: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let alg = Self::new(name, theory.signature.clone(), size, tables)?;
        for eq in &theory.equations {
            if let Satisfaction::Fails(w) = satisfies(&alg, eq)? {
                return Err(Error::AxiomViolation(format!("{} fails {eq} at {w:?}", alg.name)));
            }
        }
        Ok(alg)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn table(&self, op: usize) -> &[usize] {
        &self.tables[op]
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        self.tables[op][tuple_index(self.size, args)]
    }

    pub fn apply_named(&self, op: &str, args: &[usize]) -> Result<usize> {
        let k = self.signature.index_of(op).ok_or_else(|| Error::UnknownOp(op.to_string()))?;
        Ok(self.apply(k, args))
    }

    pub fn constants(&self) -> impl Iterator<Item = usize> + '_ {
        self.signature.ops().iter().zip(&self.tables).filter(|(o, _)| o.arity == 0).map(|(_, t)| t[0])
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// A term resolved to op indices of a fixed signature.
#[derive(Clone, Debug)]
pub enum Compiled {
    Var(usize),
    App(usize, Vec<Compiled>),
}

impl Compiled {
    pub fn new(t: &Term, sig: &Signature, n: usize) -> Result<Compiled> {
        t.check(sig, n)?;
        Ok(Self::build(t, sig))
    }

    fn build(t: &Term, sig: &Signature) -> Compiled {
        match t {
            Term::Var(i) => Compiled::Var(*i - 1),
            Term::App(op, args) => {
                Compiled::App(sig.index_of(op).expect("checked"), args.iter().map(|a| Self::build(a, sig)).collect())
            }
        }
    }

    pub fn eval(&self, alg: &FiniteAlgebra, env: &[usize]) -> usize {
        match self {
            Compiled::Var(i) => env[*i],
            Compiled::App(op, args) => {
                let vals: Vec<usize> = args.iter().map(|a| a.eval(alg, env)).collect();
                alg.apply(*op, &vals)
            }
        }
    }
}

/// The term function `t^A : A^n -> A` as a row-major table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermFunction {
    pub arity: usize,
    pub table: Vec<usize>,
}

impl TermFunction {
    pub fn at(&self, size: usize, args: &[usize]) -> usize {
        self.table[tuple_index(size, args)]
    }
}

pub fn interpret_term(t: &Term, n: usize, alg: &FiniteAlgebra) -> Result<TermFunction> {
    let c = Compiled::new(t, alg.signature(), n).map_err(|e| match e {
        Error::UnknownOp(op) => Error::SignatureMismatch(format!("`{op}` is not an op of {}", alg.name)),
        other => other,
    })?;
    Ok(TermFunction { arity: n, table: tuples(alg.size(), n).map(|env| c.eval(alg, &env)).collect() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Satisfaction {
    Holds,
    /// The lexicographically first tuple where the two sides differ.
    Fails(Vec<usize>),
}

impl Satisfaction {
    pub fn holds(&self) -> bool {
        matches!(self, Satisfaction::Holds)
    }
}

pub fn satisfies(alg: &FiniteAlgebra, eq: &Equation) -> Result<Satisfaction> {
    let l = Compiled::new(&eq.lhs, alg.signature(), eq.context)?;
    let r = Compiled::new(&eq.rhs, alg.signature(), eq.context)?;
    for env in tuples(alg.size(), eq.context) {
        if l.eval(alg, &env) != r.eval(alg, &env) {
            return Ok(Satisfaction::Fails(env));
        }
    }
    Ok(Satisfaction::Holds)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteHom {
    pub domain: Arc<FiniteAlgebra>,
    pub codomain: Arc<FiniteAlgebra>,
    pub table: Vec<usize>,
}

impl FiniteHom {
    pub fn new(domain: Arc<FiniteAlgebra>, codomain: Arc<FiniteAlgebra>, table: Vec<usize>) -> Result<Self> {
        if let Some(w) = hom_violation(&domain, &codomain, &table) {
            return Err(Error::HomMismatch(w));
        }
        Ok(FiniteHom { domain, codomain, table })
    }

    pub fn identity(a: Arc<FiniteAlgebra>) -> Self {
        let table = (0..a.size()).collect();
        FiniteHom { domain: a.clone(), codomain: a, table }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.size() == self.codomain.size()
            && self.table.iter().collect::<BTreeSet<_>>().len() == self.table.len()
    }
}

/// Describes the first place `table` fails to commute with an op, if any.
pub fn hom_violation(a: &FiniteAlgebra, b: &FiniteAlgebra, table: &[usize]) -> Option<String> {
    if a.signature() != b.signature() {
        return Some("signatures differ".into());
    }
    if table.len() != a.size() {
        return Some(format!("table has {} entries for a carrier of size {}", table.len(), a.size()));
    }
    if let Some(v) = table.iter().find(|&&v| v >= b.size()) {
        return Some(format!("image {v} outside codomain"));
    }
    for (k, op) in a.signature().ops().iter().enumerate() {
        for args in tuples(a.size(), op.arity) {
            let lhs = table[a.apply(k, &args)];
            let img: Vec<usize> = args.iter().map(|&x| table[x]).collect();
            if lhs != b.apply(k, &img) {
                return Some(format!("`{}` at {args:?}", op.name));
            }
        }
    }
    None
}

/// How each element of a generated subalgebra was first reached.
#[derive(Clone, Debug)]
enum Step {
    Gen,
    Op(usize, Vec<usize>),
}

/// Greedy generating set plus a derivation order covering the whole carrier.
fn generation_plan(a: &FiniteAlgebra) -> (Vec<usize>, Vec<(usize, Step)>) {
    let mut gens = Vec::new();
    let mut plan: Vec<(usize, Step)> = Vec::new();
    let mut reached = vec![false; a.size()];
    let close = |plan: &mut Vec<(usize, Step)>, reached: &mut Vec<bool>| loop {
        let mut grew = false;
        for (k, op) in a.signature().ops().iter().enumerate() {
            let members: Vec<usize> = (0..a.size()).filter(|&x| reached[x]).collect();
            for idx in tuples(members.len(), op.arity) {
                let args: Vec<usize> = idx.iter().map(|&i| members[i]).collect();
                let v = a.apply(k, &args);
                if !reached[v] {
                    reached[v] = true;
                    plan.push((v, Step::Op(k, args)));
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    };
    close(&mut plan, &mut reached);
    for x in 0..a.size() {
        if !reached[x] {
            reached[x] = true;
            plan.push((x, Step::Gen));
            gens.push(x);
            close(&mut plan, &mut reached);
        }
    }
    (gens, plan)
}

/// All homomorphisms `a -> b`, sorted lexicographically by table.
pub fn enumerate_homs(a: &Arc<FiniteAlgebra>, b: &Arc<FiniteAlgebra>) -> Result<Vec<FiniteHom>> {
    Ok(enumerate_hom_tables(a, b)?
        .into_iter()
        .map(|table| FiniteHom { domain: a.clone(), codomain: b.clone(), table })
        .collect())
}

pub fn enumerate_hom_tables(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    HomSearch::new(a, b, false)?.run(&mut |t| {
        out.push(t.to_vec());
        true
    });
    out.sort();
    Ok(out)
}

/// Depth-first search over generator images. After each choice the derived
/// elements are filled in and every op application that touches one of them
/// is checked, so dead branches are cut as soon as they appear.
struct HomSearch<'a> {
    a: &'a FiniteAlgebra,
    b: &'a FiniteAlgebra,
    injective: bool,
    /// `plan` split at generator steps: `levels[0]` is the closure of the
    /// constants, `levels[k + 1]` starts with generator `k`.
    levels: Vec<Vec<(usize, Step)>>,
}

impl<'a> HomSearch<'a> {
    fn new(a: &'a FiniteAlgebra, b: &'a FiniteAlgebra, injective: bool) -> Result<Self> {
        if a.signature() != b.signature() {
            return Err(Error::SignatureMismatch(format!("{} vs {}", a.name, b.name)));
        }
        let (_, plan) = generation_plan(a);
        let mut levels: Vec<Vec<(usize, Step)>> = vec![Vec::new()];
        for step in plan {
            if matches!(step.1, Step::Gen) {
                levels.push(Vec::new());
            }
            levels.last_mut().expect("nonempty").push(step);
        }
        Ok(HomSearch { a, b, injective, levels })
    }

    /// Calls `visit` on every hom table until it returns `false`.
    fn run(&self, visit: &mut dyn FnMut(&[usize]) -> bool) {
        let mut table = vec![usize::MAX; self.a.size()];
        let mut used = vec![false; self.b.size()];
        let mut reached = Vec::new();
        self.level(0, usize::MAX, &mut table, &mut used, &mut reached, visit);
    }

    fn level(
        &self,
        k: usize,
        image: usize,
        table: &mut Vec<usize>,
        used: &mut Vec<bool>,
        reached: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let mark = reached.len();
        let mut ok = true;
        for (x, step) in &self.levels[k] {
            let v = match step {
                Step::Gen => image,
                Step::Op(op, args) => {
                    let img: Vec<usize> = args.iter().map(|&y| table[y]).collect();
                    self.b.apply(*op, &img)
                }
            };
            if self.injective && used[v] {
                ok = false;
                break;
            }
            table[*x] = v;
            used[v] = true;
            reached.push(*x);
        }
        let mut go_on = true;
        if ok && self.consistent(table, reached, mark) {
            if k + 1 == self.levels.len() {
                go_on = visit(table);
            } else {
                for y in 0..self.b.size() {
                    if self.injective && used[y] {
                        continue;
                    }
                    if !self.level(k + 1, y, table, used, reached, visit) {
                        go_on = false;
                        break;
                    }
                }
            }
        }
        for &x in &reached[mark..] {
            used[table[x]] = false;
            table[x] = usize::MAX;
        }
        reached.truncate(mark);
        go_on
    }

    /// Every op application over `reached` with an argument at or past
    /// `mark` commutes with `table`.
    fn consistent(&self, table: &[usize], reached: &[usize], mark: usize) -> bool {
        for (k, op) in self.a.signature().ops().iter().enumerate() {
            for idx in tuples(reached.len(), op.arity) {
                if op.arity > 0 && idx.iter().all(|&i| i < mark) {
                    continue;
                }
                if op.arity == 0 && mark > 0 {
                    continue;
                }
                let args: Vec<usize> = idx.iter().map(|&i| reached[i]).collect();
                let v = table[self.a.apply(k, &args)];
                let img: Vec<usize> = args.iter().map(|&x| table[x]).collect();
                if v == usize::MAX || v != self.b.apply(k, &img) {
                    return false;
                }
            }
        }
        true
    }
}

/// Extends `seeds` (pairs `x ↦ y`) to a hom `a -> b` by propagating through
/// every op; fails if the seeds do not generate `a` or admit no extension.
pub fn hom_from_images(a: &FiniteAlgebra, b: &FiniteAlgebra, seeds: &[(usize, usize)]) -> Result<Vec<usize>> {
    if a.signature() != b.signature() {
        return Err(Error::SignatureMismatch(format!("{} vs {}", a.name, b.name)));
    }
    let mut table = vec![usize::MAX; a.size()];
    let mut reached: Vec<usize> = Vec::new();
    let mut clash = None;
    let mut set = |x: usize, v: usize, table: &mut Vec<usize>, reached: &mut Vec<usize>| {
        if table[x] == usize::MAX {
            table[x] = v;
            reached.push(x);
        } else if table[x] != v && clash.is_none() {
            clash = Some(x);
        }
    };
    for &(x, y) in seeds {
        set(x, y, &mut table, &mut reached);
    }
    for (k, op) in a.signature().ops().iter().enumerate() {
        if op.arity == 0 {
            set(a.apply(k, &[]), b.apply(k, &[]), &mut table, &mut reached);
        }
    }
    let mut head = 0;
    while head < reached.len() {
        let x = reached[head];
        head += 1;
        for (k, op) in a.signature().ops().iter().enumerate() {
            match op.arity {
                1 => set(a.apply(k, &[x]), b.apply(k, &[table[x]]), &mut table, &mut reached),
                2 => {
                    for i in 0..head {
                        let y = reached[i];
                        set(a.apply(k, &[x, y]), b.apply(k, &[table[x], table[y]]), &mut table, &mut reached);
                        set(a.apply(k, &[y, x]), b.apply(k, &[table[y], table[x]]), &mut table, &mut reached);
                    }
                }
                _ => {}
            }
        }
    }
    if let Some(x) = clash {
        return Err(Error::HomMismatch(format!("no hom {} -> {} extends the images: clash at {x}", a.name, b.name)));
    }
    if let Some(x) = table.iter().position(|&v| v == usize::MAX) {
        return Err(Error::HomMismatch(format!("element {x} of {} is not generated by the seeds", a.name)));
    }
    if let Some(v) = hom_violation(a, b, &table) {
        return Err(Error::HomMismatch(format!("{} -> {}: {v}", a.name, b.name)));
    }
    Ok(table)
}

/// The product algebra, encoding `(x, y)` as `x * |b| + y`, with projections.
pub fn product(a: &Arc<FiniteAlgebra>, b: &Arc<FiniteAlgebra>) -> Result<(Arc<FiniteAlgebra>, FiniteHom, FiniteHom)> {
    if a.signature() != b.signature() {
        return Err(Error::SignatureMismatch(format!("{} vs {}", a.name, b.name)));
    }
    let m = b.size();
    let p = Arc::new(FiniteAlgebra::from_fn(
        format!("{}x{}", a.name, b.name),
        a.signature().clone(),
        a.size() * m,
        |k, args| {
            let l: Vec<usize> = args.iter().map(|&x| x / m).collect();
            let r: Vec<usize> = args.iter().map(|&x| x % m).collect();
            a.apply(k, &l) * m + b.apply(k, &r)
        },
    )?);
    let p1 = FiniteHom { domain: p.clone(), codomain: a.clone(), table: (0..p.size()).map(|x| x / m).collect() };
    let p2 = FiniteHom { domain: p.clone(), codomain: b.clone(), table: (0..p.size()).map(|x| x % m).collect() };
    Ok((p, p1, p2))
}

/// Least subset containing `seed` and the constants, closed under every op.
pub fn subalgebra_generated(alg: &FiniteAlgebra, seed: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
    if let Some(&x) = seed.iter().find(|&&x| x >= alg.size()) {
        return Err(Error::ElementNotInDomain(format!("{x} in {}", alg.name)));
    }
    let mut set = seed.clone();
    loop {
        let members: Vec<usize> = set.iter().copied().collect();
        let before = set.len();
        for (k, op) in alg.signature().ops().iter().enumerate() {
            for idx in tuples(members.len(), op.arity) {
                let args: Vec<usize> = idx.iter().map(|&i| members[i]).collect();
                set.insert(alg.apply(k, &args));
            }
        }
        if set.len() == before {
            return Ok(set);
        }
    }
}

pub fn is_closed(alg: &FiniteAlgebra, subset: &BTreeSet<usize>) -> bool {
    subalgebra_generated(alg, subset).map(|s| s == *subset).unwrap_or(false)
}

/// The subalgebra on a closed subset, renumbered in carrier order, with its
/// inclusion.
pub fn subalgebra(alg: &Arc<FiniteAlgebra>, subset: &BTreeSet<usize>) -> Result<(Arc<FiniteAlgebra>, FiniteHom)> {
    if !is_closed(alg, subset) {
        return Err(Error::NonCanonical(format!("subset of {} is not closed", alg.name)));
    }
    let elems: Vec<usize> = subset.iter().copied().collect();
    let pos = |x: usize| elems.binary_search(&x).expect("closed");
    let sub = Arc::new(FiniteAlgebra::from_fn(
        format!("{}|sub", alg.name),
        alg.signature().clone(),
        elems.len(),
        |k, args| {
            let real: Vec<usize> = args.iter().map(|&i| elems[i]).collect();
            pos(alg.apply(k, &real))
        },
    )?);
    let inc = FiniteHom { domain: sub.clone(), codomain: alg.clone(), table: elems };
    Ok((sub, inc))
}

/// First bijective hom `a -> b`, if any.
pub fn find_isomorphism(a: &Arc<FiniteAlgebra>, b: &Arc<FiniteAlgebra>) -> Result<Option<FiniteHom>> {
    if a.size() != b.size() {
        return Ok(None);
    }
    let mut found = None;
    HomSearch::new(a, b, true)?.run(&mut |t| {
        found = Some(t.to_vec());
        false
    });
    Ok(found.map(|table| FiniteHom { domain: a.clone(), codomain: b.clone(), table }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod_add(n: usize) -> Arc<FiniteAlgebra> {
        let sig = Signature::new([("m", 2), ("e", 0)]).unwrap();
        Arc::new(
            FiniteAlgebra::from_fn(format!("Z{n}"), sig, n, |k, a| if k == 0 { (a[0] + a[1]) % n } else { 0 }).unwrap(),
        )
    }

    #[test]
    fn term_function_on_z3() {
        let t = Term::app("m", vec![Term::Var(1), Term::app("m", vec![Term::Var(2), Term::Var(3)])]);
        let f = interpret_term(&t, 3, &zmod_add(3)).unwrap();
        assert_eq!(f.at(3, &[1, 2, 2]), 2);
    }

    #[test]
    fn empty_carrier_needs_constant_free_signature() {
        let sig = Signature::new([("e", 0)]).unwrap();
        assert_eq!(FiniteAlgebra::new("E", sig, 0, vec![vec![]]).unwrap_err(), Error::EmptyCarrierWithConstants);
        let sig = Signature::new([("m", 2)]).unwrap();
        assert!(FiniteAlgebra::new("E", sig, 0, vec![vec![]]).is_ok());
    }

    #[test]
    fn monoid_endomorphisms_of_z2_in_lex_order() {
        let z2 = zmod_add(2);
        let tables: Vec<_> = enumerate_homs(&z2, &z2).unwrap().into_iter().map(|h| h.table).collect();
        assert_eq!(tables, vec![vec![0, 0], vec![0, 1]]);
    }

    #[test]
    fn generated_subalgebras_of_z4() {
        let z4 = zmod_add(4);
        assert_eq!(subalgebra_generated(&z4, &BTreeSet::new()).unwrap(), BTreeSet::from([0]));
        assert_eq!(subalgebra_generated(&z4, &BTreeSet::from([1])).unwrap(), (0..4).collect());
        assert_eq!(subalgebra_generated(&z4, &BTreeSet::from([2])).unwrap(), BTreeSet::from([0, 2]));
    }
}
