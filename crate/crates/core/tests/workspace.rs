use coalg_core::coalgebra::verify_coalgebra;
use coalg_core::dsl::parse_workspace;

#[test]
fn bundled_examples_load() {
    let ws = parse_workspace(include_str!("../../cli/workspace/examples.coalg")).unwrap();
    for (name, c) in &ws.coalgebras {
        assert!(verify_coalgebra(c).unwrap().ok(), "{name}");
    }
    assert_eq!(ws.bialgebras.len(), 4);
}

use coalg_core::error::Error;

fn err(text: &str) -> Error {
    parse_workspace(text).unwrap_err()
}

fn position(text: &str) -> (usize, usize) {
    match err(text) {
        Error::Parse(p) => (p.line, p.column),
        e => panic!("expected a syntax error, got {e:?}"),
    }
}

#[test]
fn names_are_unique_per_kind() {
    assert!(matches!(err("theory T ops eqs\ntheory T ops eqs\n"), Error::DuplicateName(_)));
    // the same name in two kinds is fine
    let ws = parse_workspace("theory Z2 ops eqs\nalgebra Z2 : Z2 size 2\n").unwrap();
    assert_eq!(ws.algebras["Z2"].algebra.size(), 2);
}

#[test]
fn references_must_resolve() {
    assert!(matches!(err("morphism P : Nope -> Grp\n  m -> m(x1,x2)\n"), Error::UnknownName(_)));
    assert!(matches!(err("coalgebra C = V(Missing, {x})\n"), Error::UnknownName(_)));
    assert!(matches!(err("module M over Q7 = regular\n"), Error::UnknownName(_)));
    // definitions are visible only after they appear
    assert!(matches!(err("coalgebra C = V(IdG, {x})\nmorphism IdG = id Grp\n"), Error::UnknownName(_)));
}

#[test]
fn syntax_errors_carry_positions() {
    assert_eq!(position("theory T ops m/2 eqs\n  m(x1,=x1\n"), (2, 8));
    assert_eq!(position("  theory T ops eqs\n"), (1, 3));
    assert_eq!(position("theory T ops eqs\nfoo\n"), (2, 1));
    assert_eq!(position("algebra A : Grp size\n"), (1, 21));
    assert_eq!(position("theory T ops m/2 eqs m(x1,x2)=x1 $\n"), (1, 34));
}

#[test]
fn tables_are_checked() {
    assert!(matches!(err("algebra A : cSem size 2\n"), Error::InvalidTable(_)));
    assert!(matches!(err("algebra A : cSem size 2\n  table plus = [0,1,1]\n"), Error::InvalidTable(_)));
    assert!(matches!(
        err("algebra A : cSem size 2\n  table plus = [0,1,1,1]\n  table times = [0,0,0,0]\n"),
        Error::UnknownOp(_)
    ));
    assert!(matches!(
        err("ring R size 2\n  table plus = [0,1,1,0]\n  table times = [0,0,0,0]\n"),
        Error::AxiomViolation(_)
    ));
}

#[test]
fn morphisms_check_arities_and_totality() {
    assert!(matches!(err("morphism P : Mon -> Grp\n  m -> m(x1,x2,x3); e -> e\n"), Error::ArityMismatch { .. }));
    assert!(matches!(err("morphism P : Mon -> Grp\n  m -> m(x1,x2)\n"), Error::MissingAssignment(_)));
    assert!(matches!(err("morphism P : Mon -> Grp\n  m -> m(x1,x3); e -> e\n"), Error::VarOutOfContext { .. }));
}

#[test]
fn explicit_coalgebras() {
    let ws = parse_workspace(
        "algebra Two : Set size 2\n\
         coalgebra C : Triv in Set carrier finite Two\n\
         theory Triv ops eqs\n",
    );
    assert!(matches!(ws, Err(Error::UnknownName(_))));
    // a coalgebra whose image is not a hom is rejected
    let bad = "coalgebra C : Mon in Grp carrier free {x}\n  coop m = [m(x@1,x@1)]\n  coop e = [e]\n";
    let ws = parse_workspace(bad).unwrap();
    assert!(!verify_coalgebra(&ws.coalgebras["C"]).unwrap().ok());
}

#[test]
fn bialgebra_data_is_validated() {
    let base = "calgebra D over Z2 size 4\n  table plus = [0,1,2,3,1,0,3,2,2,3,0,1,3,2,1,0]\n  table times = [0,0,0,0,0,1,2,3,0,2,0,2,0,3,2,1]\n  table sc0 = [0,0,0,0]\n  table sc1 = [0,1,2,3]\n";
    // x is group-like would need x^2 = x
    let text = format!("{base}bialgebra B = D\n  delta 2 = 2*2; counit 2 = 1\n");
    assert!(parse_workspace(&text).is_err());
    let text = format!("{base}bialgebra B = D\n  delta 9 = 2*1\n");
    assert!(matches!(parse_workspace(&text), Err(Error::InvalidTable(_))));
}

#[test]
fn files_accumulate() {
    let mut ws = parse_workspace("morphism IdG = id Grp\n").unwrap();
    ws.load("coalgebra C = V(IdG, {a, b})\n").unwrap();
    assert!(verify_coalgebra(&ws.coalgebras["C"]).unwrap().ok());
}
