use std::collections::BTreeMap;
use std::sync::Arc;

use coalg_core::backend::{Obj, VarietyBackend};
use coalg_core::catalog::{commutative_semigroups, idempotents};
use coalg_core::coalgebra::{coalgebra_isomorphisms, constant_coalgebra, n_phi, verify_coalgebra};
use coalg_core::theory::{Term, TheoryMorphism};

fn identity() -> TheoryMorphism {
    TheoryMorphism::identity(&VarietyBackend::csem())
}

#[test]
fn n_and_e_are_coalgebras_and_differ() {
    let phi = identity();
    let mut checked = 0;
    for n in 1..=4 {
        for s in commutative_semigroups(n) {
            let a = Obj::Finite(Arc::new(s.clone()));
            let ns = n_phi(&phi, &a).unwrap();
            assert!(verify_coalgebra(&ns).unwrap().ok(), "N({})", s.name);
            for e in idempotents(&s) {
                let es = constant_coalgebra(&phi, &a, e).unwrap();
                assert!(verify_coalgebra(&es).unwrap().ok(), "E_{e} on {}", s.name);
                let isos = coalgebra_isomorphisms(&ns, &es).unwrap();
                assert_eq!(isos.is_empty(), n >= 2, "{} with e = {e}", s.name);
                checked += 1;
            }
        }
    }
    // every finite semigroup has an idempotent, so each one contributes
    assert!(checked >= 1 + 3 + 12 + 58);
}

#[test]
fn constant_structure_needs_an_idempotent() {
    // Z3 under addition is a semigroup whose only idempotent is 0
    let sig = VarietyBackend::csem().theory().signature.clone();
    let z3 = coalg_core::algebra::FiniteAlgebra::from_fn("Z3", sig, 3, |_, a| (a[0] + a[1]) % 3).unwrap();
    assert_eq!(idempotents(&z3), [0]);
    let a = Obj::finite(z3);
    let phi = identity();
    assert!(verify_coalgebra(&constant_coalgebra(&phi, &a, 0).unwrap()).unwrap().ok());
    assert!(constant_coalgebra(&phi, &a, 1).is_err());
}

#[test]
fn forgetful_n_is_the_diagonal() {
    // Φ: cSem → Ab, plus ↦ plus; on Z/3 the co-operation is a ↦ (a, a)
    let ab = VarietyBackend::ab();
    let sig = ab.theory().signature.clone();
    let z3 = coalg_core::algebra::FiniteAlgebra::from_fn("Z3", sig, 3, |k, a| match k {
        0 => (a[0] + a[1]) % 3,
        1 => 0,
        _ => (3 - a[0]) % 3,
    })
    .unwrap();
    let phi = TheoryMorphism::into_backend(
        "forget",
        VarietyBackend::csem().theory().clone(),
        &ab,
        BTreeMap::from([("plus".to_string(), Term::app("plus", vec![Term::Var(1), Term::Var(2)]))]),
    )
    .unwrap();
    let a = Obj::finite(z3);
    let c = n_phi(&phi, &a).unwrap();
    assert!(verify_coalgebra(&c).unwrap().ok());
    let two = ab.copower(&a, 2).unwrap();
    for x in 0..3 {
        let diag = ab
            .apply(
                &two.obj,
                0,
                &[
                    ab.eval_hom(&two.injections[0], &coalg_core::backend::Elem::Fin(x)).unwrap(),
                    ab.eval_hom(&two.injections[1], &coalg_core::backend::Elem::Fin(x)).unwrap(),
                ],
            )
            .unwrap();
        assert_eq!(c.coops[0].images[x], diag);
    }
}
