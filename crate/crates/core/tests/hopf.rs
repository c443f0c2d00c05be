use std::sync::Arc;

use coalg_core::error::Error;
use coalg_core::hopf::*;
use coalg_core::ring::FiniteRing;

fn f2() -> Arc<FiniteRing> {
    Arc::new(FiniteRing::zmod(2))
}

fn labels(h: &FiniteBialgebra, s: &[usize]) -> Vec<String> {
    s.iter().map(|&x| h.algebra.label(x).to_string()).collect()
}

#[test]
fn f2_c2_group_likes_are_the_group() {
    let (c2, names) = cyclic_group(2);
    let h = group_algebra(f2(), &c2, &names).unwrap();
    assert_eq!(h.algebra.size(), 4);
    assert_eq!(labels(&h, &group_like(&h)), ["x", "1"]);
    let cmp = gphi_matches_classical(&h).unwrap();
    assert!(cmp.ok(), "{cmp:?}");
}

#[test]
fn z3_c2_group_likes() {
    let (c2, names) = cyclic_group(2);
    let h = group_algebra(Arc::new(FiniteRing::zmod(3)), &c2, &names).unwrap();
    assert_eq!(h.algebra.size(), 9);
    let mut g = labels(&h, &group_like(&h));
    g.sort();
    assert_eq!(g, ["1", "x"]);
    // over Z/3 the augmentation of 1+x is 2, so it is not primitive
    assert_eq!(labels(&h, &primitive(&h)), ["0"]);
    assert!(gphi_matches_classical(&h).unwrap().ok());
}

#[test]
fn dual_numbers_primitives() {
    let h = truncated_polynomial(f2(), 2).unwrap();
    assert_eq!(labels(&h, &primitive(&h)), ["0", "x"]);
    assert_eq!(labels(&h, &group_like(&h)), ["1"]);
    assert!(gphi_matches_classical(&h).unwrap().ok());
}

#[test]
fn f2_c2_primitives() {
    // Δ(1+x) = 1⊗1 + x⊗x differs from (1+x)⊗1 + 1⊗(1+x) = x⊗1 + 1⊗x
    let (c2, names) = cyclic_group(2);
    let h = group_algebra(f2(), &c2, &names).unwrap();
    assert_eq!(labels(&h, &primitive(&h)), ["0"]);
}

#[test]
fn truncated_cube_over_f2_is_not_a_bialgebra() {
    // Δ(x)^3 has the cross terms x^2⊗x + x⊗x^2 which are nonzero mod 2
    assert!(matches!(truncated_polynomial(f2(), 3), Err(Error::HomMismatch(_))));
}

#[test]
fn stored_bialgebras_closure() {
    for h in stored_bialgebras().unwrap() {
        assert!(is_submonoid(&h.algebra, &group_like(&h)), "{}", h.name);
        assert!(is_submodule(&h.algebra, &primitive(&h)), "{}", h.name);
        let cmp = gphi_matches_classical(&h).unwrap();
        assert!(cmp.ok(), "{cmp:?}");
    }
}

#[test]
fn group_likes_of_z3_c2_brute_force() {
    let (c2, names) = cyclic_group(2);
    let z3 = Arc::new(FiniteRing::zmod(3));
    let h = group_algebra(z3, &c2, &names).unwrap();
    let sq = &h.square;
    // elements are a*1 + b*x encoded as 3a+b; expand Δ on coefficients
    let brute: Vec<usize> = (0..9)
        .filter(|&v| {
            let (a, b) = (v / 3, v % 3);
            let mut delta = sq.algebra.zero();
            for _ in 0..a {
                delta = sq.algebra.add(delta, sq.pure(3, 3));
            }
            for _ in 0..b {
                delta = sq.algebra.add(delta, sq.pure(1, 1));
            }
            delta == sq.pure(v, v) && (a + b) % 3 == 1
        })
        .collect();
    assert_eq!(group_like(&h), brute);
    assert_eq!(brute, [1, 3]);
}

#[test]
fn matrix_comonoid_laws() {
    for n in 1..=3 {
        let m = matrix_comonoid(n).unwrap();
        let v = m.verify().unwrap();
        assert!(v.ok(), "n={n}: {v:?}");
    }
    assert!(matches!(matrix_comonoid(4), Err(Error::CapExceeded(_))));
}

#[test]
fn matrix_points_multiply() {
    let m = matrix_comonoid(2).unwrap();
    let check = m.check_against_matrices(&f2()).unwrap();
    assert_eq!((check.points, check.pairs), (16, 256));
    assert!(check.mismatches.is_empty());
}

#[test]
fn non_group_rejected() {
    let (c2, _) = cyclic_group(2);
    let bad = c2.renamed("bad");
    let sig = bad.signature().clone();
    let broken = coalg_core::algebra::FiniteAlgebra::from_fn("bad", sig, 2, |k, a| match k {
        0 => a[0] | a[1],
        1 => 0,
        _ => a[0],
    })
    .unwrap();
    let names = vec!["1".to_string(), "x".to_string()];
    assert!(matches!(group_algebra(f2(), &broken, &names), Err(Error::AxiomViolation(_))));
}

#[test]
fn backend_laws_checked_where_the_copower_fits() {
    let h = truncated_polynomial(f2(), 2).unwrap();
    assert_eq!(gphi_matches_classical(&h).unwrap().coalgebra_laws, Some(true));
    let (c2, names) = cyclic_group(2);
    let h = group_algebra(Arc::new(FiniteRing::zmod(3)), &c2, &names).unwrap();
    // the triple copower of Z3[C2] has 3^8 elements
    assert_eq!(gphi_matches_classical(&h).unwrap().coalgebra_laws, None);
}

#[test]
fn group_likes_are_the_group_elements() {
    // |G(R[G])| = |G| for a field, or Z/3, and a cyclic group
    for (ring, n, size) in [(2, 2, 4), (2, 3, 8), (3, 2, 9)] {
        let (g, names) = cyclic_group(n);
        let h = group_algebra(Arc::new(FiniteRing::zmod(ring)), &g, &names).unwrap();
        assert_eq!(h.algebra.size(), size);
        let mut gl = labels(&h, &group_like(&h));
        gl.sort();
        let mut expect = names.clone();
        expect.sort();
        assert_eq!(gl, expect, "Z{ring}[C{n}]");
    }
    // Z3[C3] would need a multiplication table on 3^9 elements
    let (c3, names) = cyclic_group(3);
    let z3 = Arc::new(FiniteRing::zmod(3));
    assert!(matches!(group_algebra(z3, &c3, &names), Err(Error::CapExceeded(_))));
}
