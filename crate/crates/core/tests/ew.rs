use std::sync::Arc;

use coalg_core::catalog::{bimodules_up_to, commutative_semigroups, modules_up_to, test_rings};
use coalg_core::ew::*;
use coalg_core::ring::{Bimodule, FiniteModule, FiniteRing};
use coalg_core::Error;

fn z(n: usize) -> Arc<FiniteRing> {
    Arc::new(FiniteRing::zmod(n))
}

fn cyc(r: &Arc<FiniteRing>, k: usize) -> FiniteModule {
    FiniteModule::cyclic(r.clone(), k).unwrap()
}

fn factors(m: &FiniteModule) -> String {
    invariant_factors(m).to_string()
}

#[test]
fn z2_tensor_over_z_with_z3_is_trivial() {
    // Over Z/6 both are Z-modules in disguise.
    let r = z(6);
    let m = Bimodule::symmetric(&cyc(&r, 2)).unwrap();
    let t = tensor(&m, &cyc(&r, 3)).unwrap();
    assert_eq!(t.module.size(), 1);
}

#[test]
fn regular_tensor_is_identity() {
    let r = z(4);
    let t = tensor(&Bimodule::regular(r.clone()), &cyc(&r, 2)).unwrap();
    assert!(module_isomorphism(&t.module, &cyc(&r, 2)).unwrap().iso.is_some());
}

#[test]
fn z2_tensor_z2_over_z4() {
    let r = z(4);
    let m = Bimodule::symmetric(&cyc(&r, 2)).unwrap();
    let t = tensor(&m, &cyc(&r, 2)).unwrap();
    assert_eq!(factors(&t.module), "C2");
}

#[test]
fn ring_mismatch_is_reported() {
    let m = Bimodule::regular(z(4));
    let err = tensor(&m, &cyc(&z(2), 2)).unwrap_err();
    assert!(matches!(err, Error::RingMismatch));
    assert_eq!(err.to_string(), "ring-mismatch");
}

#[test]
fn hom_modules_match_enumeration() {
    // Over Z/4: Hom(Z2, Z4) has the two maps landing in {0, 2}.
    let r = z(4);
    let h = hom_module(&Bimodule::symmetric(&cyc(&r, 2)).unwrap(), &cyc(&r, 4)).unwrap();
    assert_eq!(h.maps, vec![vec![0, 0], vec![0, 2]]);
    assert_eq!(factors(&h.module), "C2");
    let h = hom_module(&Bimodule::symmetric(&cyc(&r, 2)).unwrap(), &cyc(&r, 2)).unwrap();
    assert_eq!(factors(&h.module), "C2");
    // Hom(S, Y) is Y
    let h = hom_module(&Bimodule::regular(r.clone()), &cyc(&r, 4)).unwrap();
    assert!(module_isomorphism(&h.module, &cyc(&r, 4)).unwrap().iso.is_some());
}

#[test]
fn adjunction_on_z2_over_z4() {
    let r = z(4);
    let m = Bimodule::symmetric(&cyc(&r, 2)).unwrap();
    let c = check_tensor_hom_adjunction(&m, &cyc(&r, 2), &cyc(&r, 2)).unwrap();
    assert!(c.ok(), "{c:?}");
    assert_eq!((c.left, c.right), (2, 2));
    let zero = FiniteModule::zero_module(r.clone());
    let c = check_tensor_hom_adjunction(&m, &zero, &cyc(&r, 4)).unwrap();
    assert!(c.ok());
    assert_eq!((c.left, c.right), (1, 1));
}

#[test]
fn left_adjoint_on_free_modules_is_a_copower() {
    for r in test_rings() {
        for m in bimodules_up_to(&r, 4).unwrap() {
            for n in 1..=2 {
                let free = FiniteModule::power(&FiniteModule::regular(r.clone()), n).unwrap();
                if (r.size() as f64).powi(free.size() as i32) > FREE_CAP as f64 {
                    assert!(matches!(left_adjoint_via_presentation(&m, &free), Err(Error::CapExceeded(_))));
                    continue;
                }
                let l = left_adjoint_via_presentation(&m, &free).unwrap();
                let expected = FiniteModule::power(&m.left_module(), n).unwrap();
                assert!(module_isomorphism(&l, &expected).unwrap().iso.is_some(), "{} {}", m.name, n);
            }
        }
    }
}

#[test]
fn left_adjoint_matches_tensor_on_z2_over_z4() {
    let r = z(4);
    let m = Bimodule::symmetric(&cyc(&r, 2)).unwrap();
    let l = left_adjoint_via_presentation(&m, &cyc(&r, 2)).unwrap();
    assert_eq!(factors(&l), "C2");
    let t = tensor(&m, &cyc(&r, 2)).unwrap();
    assert!(module_isomorphism(&l, &t.module).unwrap().iso.is_some());
}

#[test]
fn composition_units_and_zero() {
    let r = z(4);
    let m = Bimodule::symmetric(&cyc(&r, 2)).unwrap();
    let c = compose_bimodules(&Bimodule::regular(r.clone()), &m).unwrap();
    assert!(bimodule_isomorphic(&c, &m).unwrap());
    let c = compose_bimodules(&m, &m).unwrap();
    assert_eq!(c.size(), 2);
    let c = compose_bimodules(&Bimodule::zero(r.clone(), r.clone()), &m).unwrap();
    assert_eq!(c.size(), 1);
}

#[test]
fn composition_is_associative_up_to_isomorphism() {
    let r = z(4);
    let bs = bimodules_up_to(&r, 4).unwrap();
    for a in &bs {
        for b in &bs {
            for c in &bs {
                let left = compose_bimodules(&compose_bimodules(a, b).unwrap(), c).unwrap();
                let right = compose_bimodules(a, &compose_bimodules(b, c).unwrap()).unwrap();
                assert!(bimodule_isomorphic(&left, &right).unwrap());
            }
        }
    }
}

#[test]
fn cofree_bimodule_over_f2() {
    let r = z(2);
    let c = cofree_bimodule(&r, &r, &cyc(&r, 2)).unwrap();
    assert_eq!(c.bimodule.size(), 2);
    assert_eq!(c.counit, vec![0, 1]);
    let c0 = cofree_bimodule(&r, &r, &FiniteModule::zero_module(r.clone())).unwrap();
    assert_eq!(c0.bimodule.size(), 1);
    let check = check_cofree_couniversal(&Bimodule::regular(r.clone()), &cyc(&r, 2)).unwrap();
    assert!(check.ok());
    assert_eq!(check.left, check.right);
}

#[test]
fn free_bimodule_and_its_universal_property() {
    let r = z(2);
    let f = free_bimodule(&r, &r, &cyc(&r, 2)).unwrap();
    assert!(bimodule_isomorphic(&f.bimodule, &Bimodule::regular(r.clone())).unwrap());
    let f0 = free_bimodule(&r, &r, &FiniteModule::zero_module(r.clone())).unwrap();
    assert_eq!(f0.bimodule.size(), 1);
    for ring in [z(2), z(4)] {
        for m in modules_up_to(&ring, 4).unwrap() {
            for n in bimodules_up_to(&ring, 4).unwrap() {
                let c = check_free_universal(&m, &n).unwrap();
                assert!(c.ok(), "{c:?}");
                let c = check_cofree_couniversal(&n, &m).unwrap();
                assert!(c.ok(), "{c:?}");
            }
        }
    }
}

#[test]
fn change_of_rings_z4_to_z2() {
    let (r, s) = (z(4), z(2));
    let f = vec![0, 1, 0, 1];
    let rm = modules_up_to(&r, 4).unwrap();
    let sm = modules_up_to(&s, 4).unwrap();
    let report = change_of_rings(&f, &r, &s, &rm, &sm).unwrap();
    assert!(report.ok(), "{:?}", report.checks.iter().find(|c| !c.ok()));
    let z4 = report.extensions.iter().find(|(n, _)| n == "Z4").unwrap();
    assert_eq!(z4.1.to_string(), "C2");
    assert!(matches!(change_of_rings(&[0, 1, 1, 1], &r, &s, &rm, &sm), Err(Error::NotRingHom(_))));
    // restriction: Z4 acts on Z2 through f
    let res = restrict(&f, &r, &cyc(&s, 2)).unwrap();
    for (x, &fx) in f.iter().enumerate() {
        for v in 0..2 {
            assert_eq!(res.act(x, v), cyc(&s, 2).act(fx, v));
        }
    }
}

#[test]
fn tensor_preserves_surjections() {
    // Z4 -> Z2 stays surjective after tensoring with every small bimodule.
    let r = z(4);
    for m in bimodules_up_to(&r, 4).unwrap() {
        let (a, b) = (cyc(&r, 4), cyc(&r, 2));
        let ta = tensor(&m, &a).unwrap();
        let tb = tensor(&m, &b).unwrap();
        let mut hit = vec![false; tb.module.size()];
        for p in 0..m.size() {
            for x in 0..4 {
                hit[tb.pure(p, x % 2)] = true;
            }
        }
        // every element of M(x)Z2 is a sum of images of pure tensors of M(x)Z4
        let mut closed = hit.clone();
        loop {
            let before = closed.clone();
            for u in 0..closed.len() {
                for v in 0..closed.len() {
                    if before[u] && before[v] {
                        closed[tb.module.add(u, v)] = true;
                    }
                }
            }
            if closed == before {
                break;
            }
        }
        assert!(closed.iter().all(|&b| b), "{}", m.name);
        assert!(ta.module.size() >= tb.module.size());
    }
}

#[test]
fn semigroup_counts() {
    let counts: Vec<usize> = (1..=4).map(|n| commutative_semigroups(n).len()).collect();
    assert_eq!(counts, vec![1, 3, 12, 58]);
}

#[test]
fn invariants_of_a_bimodule_are_its_centralizer() {
    use coalg_core::backend::VarietyBackend;
    use coalg_core::coalgebra::{g_phi, verify_coalgebra};
    use coalg_core::theory::TheoryMorphism;
    let ut = Arc::new(FiniteRing::upper_triangular_f2());
    let m = Bimodule::regular(ut.clone());
    let c = bimodule_coalgebra(&m).unwrap();
    assert!(verify_coalgebra(&c).unwrap().ok());
    let phi = TheoryMorphism::identity(&VarietyBackend::module(ut.clone()));
    let g = g_phi(&phi, &c, 0).unwrap().indices();
    // the centre of UT2(F2) is {0, I}; I is encoded as 5
    assert_eq!(g, [0, 5]);
    let brute: Vec<usize> = (0..8).filter(|&a| (0..8).all(|r| ut.mul(r, a) == ut.mul(a, r))).collect();
    assert_eq!(g, brute);
}
