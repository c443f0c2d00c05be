//! Presentations of the registered varieties.

use super::{BackendKind, Role};
use crate::ring::FiniteRing;
use crate::theory::{Equation, Signature, Term, TheoryPresentation};

fn x(i: usize) -> Term {
    Term::Var(i)
}

fn ap(op: &str, args: Vec<Term>) -> Term {
    Term::app(op, args)
}

fn assoc(op: &str) -> Equation {
    Equation::new(ap(op, vec![ap(op, vec![x(1), x(2)]), x(3)]), ap(op, vec![x(1), ap(op, vec![x(2), x(3)])]))
}

fn comm(op: &str) -> Equation {
    Equation::new(ap(op, vec![x(1), x(2)]), ap(op, vec![x(2), x(1)]))
}

fn units(op: &str, unit: &str) -> [Equation; 2] {
    [
        Equation::new(ap(op, vec![Term::constant(unit), x(1)]), x(1)),
        Equation::new(ap(op, vec![x(1), Term::constant(unit)]), x(1)),
    ]
}

fn inverses(op: &str, inv: &str, unit: &str) -> [Equation; 2] {
    [
        Equation::new(ap(op, vec![ap(inv, vec![x(1)]), x(1)]), Term::constant(unit)),
        Equation::new(ap(op, vec![x(1), ap(inv, vec![x(1)])]), Term::constant(unit)),
    ]
}

fn abelian() -> Vec<Equation> {
    vec![
        assoc("plus"),
        comm("plus"),
        Equation::new(ap("plus", vec![Term::constant("zero"), x(1)]), x(1)),
        Equation::new(ap("plus", vec![ap("neg", vec![x(1)]), x(1)]), Term::constant("zero")),
    ]
}

fn sc(r: usize, t: Term) -> Term {
    ap(&format!("sc{r}"), vec![t])
}

fn module_laws(ring: &FiniteRing) -> Vec<Equation> {
    let n = ring.size();
    let mut eqs = Vec::new();
    for r in 0..n {
        eqs.push(Equation::new(sc(r, ap("plus", vec![x(1), x(2)])), ap("plus", vec![sc(r, x(1)), sc(r, x(2))])));
    }
    for r in 0..n {
        for s in 0..n {
            eqs.push(Equation::new(sc(ring.add(r, s), x(1)), ap("plus", vec![sc(r, x(1)), sc(s, x(1))])));
            eqs.push(Equation::new(sc(ring.mul(r, s), x(1)), sc(r, sc(s, x(1)))));
        }
    }
    eqs.push(Equation::new(sc(ring.one(), x(1)), x(1)));
    eqs
}

fn ring_laws() -> Vec<Equation> {
    let mut eqs = abelian();
    eqs.push(assoc("times"));
    eqs.push(comm("times"));
    eqs.push(Equation::new(ap("times", vec![Term::constant("one"), x(1)]), x(1)));
    eqs.push(Equation::new(
        ap("times", vec![x(1), ap("plus", vec![x(2), x(3)])]),
        ap("plus", vec![ap("times", vec![x(1), x(2)]), ap("times", vec![x(1), x(3)])]),
    ));
    eqs
}

fn op_name(role: Role) -> (String, usize) {
    match role {
        Role::Pt => ("pt".into(), 0),
        Role::Mul => ("m".into(), 2),
        Role::Unit => ("e".into(), 0),
        Role::Inv => ("i".into(), 1),
        Role::Plus => ("plus".into(), 2),
        Role::Zero => ("zero".into(), 0),
        Role::Neg => ("neg".into(), 1),
        Role::Times => ("times".into(), 2),
        Role::One => ("one".into(), 0),
        Role::Scalar(r) => (format!("sc{r}"), 1),
    }
}

pub(super) fn build(kind: &BackendKind) -> (Vec<Role>, TheoryPresentation) {
    use Role::*;
    let scalars = |r: &FiniteRing| (0..r.size()).map(Scalar).collect::<Vec<_>>();
    let (name, roles, eqs): (String, Vec<Role>, Vec<Equation>) = match kind {
        BackendKind::Set => ("Set".into(), vec![], vec![]),
        BackendKind::Pointed => ("Pointed".into(), vec![Pt], vec![]),
        BackendKind::Mon => {
            let mut eqs = vec![assoc("m")];
            eqs.extend(units("m", "e"));
            ("Mon".into(), vec![Mul, Unit], eqs)
        }
        BackendKind::Grp => {
            let mut eqs = vec![assoc("m")];
            eqs.extend(units("m", "e"));
            eqs.extend(inverses("m", "i", "e"));
            ("Grp".into(), vec![Mul, Unit, Inv], eqs)
        }
        BackendKind::CMon => (
            "cMon".into(),
            vec![Plus, Zero],
            vec![assoc("plus"), comm("plus"), Equation::new(ap("plus", vec![Term::constant("zero"), x(1)]), x(1))],
        ),
        BackendKind::CSem => ("cSem".into(), vec![Plus], vec![assoc("plus"), comm("plus")]),
        BackendKind::Ab => ("Ab".into(), vec![Plus, Zero, Neg], abelian()),
        BackendKind::Module(r) => {
            let mut roles = vec![Plus, Zero, Neg];
            roles.extend(scalars(r));
            let mut eqs = abelian();
            eqs.extend(module_laws(r));
            (format!("Mod({})", r.name), roles, eqs)
        }
        BackendKind::CRing => ("cRing".into(), vec![Plus, Zero, Neg, Times, One], ring_laws()),
        BackendKind::CAlg(r) => {
            let mut roles = vec![Plus, Zero, Neg, Times, One];
            roles.extend(scalars(r));
            let mut eqs = ring_laws();
            eqs.extend(module_laws(r));
            for s in 0..r.size() {
                eqs.push(Equation::new(sc(s, ap("times", vec![x(1), x(2)])), ap("times", vec![sc(s, x(1)), x(2)])));
            }
            (format!("cAlg({})", r.name), roles, eqs)
        }
    };
    let sig = Signature::new(roles.iter().map(|&r| op_name(r))).expect("distinct op names");
    let theory = TheoryPresentation::new(name, sig, eqs).expect("well-formed presentation");
    (roles, theory)
}
