use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use coalg_core::abgroup::{Decomposition, PresentedAbGroup};
use coalg_core::backend::VarietyBackend;
use coalg_core::dsl::{parse_theory, parse_workspace};
use coalg_core::ew::{module_homs, tensor};
use coalg_core::ring::{Bimodule, FiniteModule, FiniteRing};
use coalg_core::theory::{Equation, Signature, Term, TheoryPresentation};
use coalg_core::util::gcd;

const OP_POOL: [&str; 6] = ["m", "e", "inv", "plus", "f", "g2"];

fn term(ops: Vec<(String, usize)>, n: usize) -> BoxedStrategy<Term> {
    let mut leaves: Vec<BoxedStrategy<Term>> = vec![(1..=n).prop_map(Term::Var).boxed()];
    for (name, _) in ops.iter().filter(|(_, a)| *a == 0) {
        leaves.push(Just(Term::constant(name.clone())).boxed());
    }
    let leaf = proptest::strategy::Union::new(leaves).boxed();
    let branching: Vec<(String, usize)> = ops.into_iter().filter(|(_, a)| *a > 0).collect();
    if branching.is_empty() {
        return leaf;
    }
    leaf.prop_recursive(3, 24, 3, move |inner| {
        let branching = branching.clone();
        (0..branching.len())
            .prop_flat_map(move |k| {
                let (name, arity) = branching[k].clone();
                prop::collection::vec(inner.clone(), arity).prop_map(move |args| Term::app(name.clone(), args))
            })
            .boxed()
    })
    .boxed()
}

fn theory() -> impl Strategy<Value = TheoryPresentation> {
    prop::collection::vec(0usize..=3, OP_POOL.len())
        .prop_flat_map(|arities| {
            let ops: Vec<(String, usize)> = OP_POOL
                .iter()
                .zip(&arities)
                .take(1 + arities[0] % OP_POOL.len())
                .map(|(o, &a)| (o.to_string(), a))
                .collect();
            let eq = (term(ops.clone(), 3), term(ops.clone(), 3)).prop_map(|(l, r)| Equation::new(l, r));
            (Just(ops), prop::collection::vec(eq, 0..4), "[A-Z][a-z]{0,5}")
        })
        .prop_map(|(ops, eqs, name)| TheoryPresentation::new(name, Signature::new(ops).unwrap(), eqs).unwrap())
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(t in theory()) {
        let printed = t.to_string();
        let back = parse_theory(&printed).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(back.to_string(), printed);
    }

    #[test]
    fn parsers_never_panic(s in "[a-zA-Z0-9(){}\\[\\],;:=/+*#@ \n-]{0,200}") {
        let _ = parse_theory(&s);
        let _ = parse_workspace(&s);
    }

    #[test]
    fn parsers_never_panic_on_keyword_soup(
        words in prop::collection::vec(prop::sample::select(vec![
            "theory", "morphism", "algebra", "ring", "module", "bimodule", "calgebra", "bialgebra", "coalgebra",
            "ops", "eqs", "size", "table", "over", "carrier", "free", "finite", "coop", "in", "id", "=", ":", "->",
            "(", ")", "{", "}", "[", "]", ",", ";", "\n", "\n  ", "0", "1", "2", "x1", "x", "Z2", "Z4", "Grp", "Ab",
            "Mod", "cSem", "V", "N", "E", "group", "truncated", "C2", "regular", "zero", "delta", "counit", "plus",
        ]), 0..40)
    ) {
        let _ = parse_workspace(&words.join(" "));
    }
}

/// Size of `Z^k / (rows + e Z^k)` by closing the rows under addition mod `e`.
fn brute_quotient_size(k: usize, rows: &[Vec<i64>], e: i64) -> usize {
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::from([vec![0; k]]);
    let mut frontier = vec![vec![0; k]];
    while let Some(v) = frontier.pop() {
        for r in rows {
            let w: Vec<i64> = v.iter().zip(r).map(|(a, b)| (a + b).rem_euclid(e)).collect();
            if seen.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    (e as usize).pow(k as u32) / seen.len()
}

proptest! {
    #[test]
    fn presented_quotient_matches_brute_force(
        k in 1usize..=3,
        e in prop::sample::select(vec![2i64, 3, 4, 6, 8, 12]),
        raw in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 0..=3),
    ) {
        let mut rows: Vec<Vec<i64>> = raw.into_iter().map(|r| r[..k].to_vec()).collect();
        for j in 0..k {
            let mut r = vec![0; k];
            r[j] = e;
            rows.push(r);
        }
        let q = PresentedAbGroup::new(k, rows.clone()).unwrap().quotient(e).unwrap();
        prop_assert_eq!(q.size(), brute_quotient_size(k, &rows, e));
        prop_assert!(q.factors.windows(2).all(|w| w[1] % w[0] == 0));
        for r in &rows {
            prop_assert!(q.coords(r).iter().all(|&c| c == 0));
        }
        let hit: BTreeSet<usize> = (0..e.pow(k as u32)).map(|mut i| {
            let v: Vec<i64> = (0..k).map(|_| { let c = i % e; i /= e; c }).collect();
            q.index_of(&v)
        }).collect();
        prop_assert_eq!(hit.len(), q.size());
    }

    #[test]
    fn invariant_factors_count_torsion(a in 1usize..=8, b in 1usize..=8, c in 1usize..=4) {
        let size = a * b * c;
        let split = |x: usize| (x % a, (x / a) % b, x / (a * b));
        let join = |(p, q, r): (usize, usize, usize)| p + a * (q + b * r);
        let add = |x: usize, y: usize| {
            let (p, q, r) = split(x);
            let (s, t, u) = split(y);
            join(((p + s) % a, (q + t) % b, (r + u) % c))
        };
        let f = Decomposition::of_group(size, 0, add).invariant_factors().0;
        prop_assert_eq!(f.iter().product::<i64>() as usize, size);
        prop_assert!(f.windows(2).all(|w| w[1] % w[0] == 0));
        for d in 1..=size {
            let killed = (0..size).filter(|&x| (0..d).fold(0, |acc, _| add(acc, x)) == 0).count();
            let predicted: i64 = f.iter().map(|&fi| gcd(d as i64, fi)).product();
            prop_assert_eq!(killed as i64, predicted);
        }
    }
}

/// Words over `x1..x3` with inverses.
fn word() -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0usize..3, any::<bool>()), 0..10)
}

fn word_term(w: &[(usize, bool)]) -> Term {
    w.iter()
        .map(|&(g, inv)| if inv { Term::app("i", vec![Term::Var(g + 1)]) } else { Term::Var(g + 1) })
        .reduce(|a, b| Term::app("m", vec![a, b]))
        .unwrap_or_else(|| Term::constant("e"))
}

fn reduce(w: &[(usize, bool)]) -> Vec<(usize, bool)> {
    let mut out: Vec<(usize, bool)> = Vec::new();
    for &l in w {
        if out.last() == Some(&(l.0, !l.1)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

type Perm = [usize; 3];

fn eval_s3(t: &Term, env: &[Perm]) -> Perm {
    match t {
        Term::Var(i) => env[i - 1],
        Term::App(op, args) => match op.as_str() {
            "e" => [0, 1, 2],
            "i" => {
                let p = eval_s3(&args[0], env);
                let mut q = [0; 3];
                for (k, &v) in p.iter().enumerate() {
                    q[v] = k;
                }
                q
            }
            _ => {
                let (p, q) = (eval_s3(&args[0], env), eval_s3(&args[1], env));
                [q[p[0]], q[p[1]], q[p[2]]]
            }
        },
    }
}

const S3: [Perm; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];

proptest! {
    #[test]
    fn free_group_normal_form_is_free_reduction(w in word()) {
        let grp = VarietyBackend::grp();
        let nf = grp.nf(&word_term(&w), 3).unwrap();
        let expected = grp.nf(&word_term(&reduce(&w)), 3).unwrap();
        prop_assert_eq!(&nf, &expected);
        let back = grp.to_term(&nf).unwrap();
        prop_assert_eq!(grp.nf(&back, 3).unwrap(), nf);
        for env in [[S3[1], S3[2], S3[4]], [S3[3], S3[5], S3[1]]] {
            prop_assert_eq!(eval_s3(&back, &env), eval_s3(&word_term(&w), &env));
        }
    }

    #[test]
    fn group_word_times_inverse_is_unit(w in word()) {
        let grp = VarietyBackend::grp();
        let t = word_term(&w);
        let prod = Term::app("m", vec![t.clone(), Term::app("i", vec![t])]);
        prop_assert_eq!(grp.nf(&prod, 3).unwrap(), grp.nf(&Term::constant("e"), 3).unwrap());
    }
}

fn ring_ops() -> Vec<(String, usize)> {
    [("plus", 2), ("zero", 0), ("neg", 1), ("times", 2), ("one", 0)].iter().map(|&(o, a)| (o.to_string(), a)).collect()
}

/// Evaluation in `Z/2^64`, a commutative ring.
fn eval_wrapping(t: &Term, env: &[i64]) -> i64 {
    match t {
        Term::Var(i) => env[i - 1],
        Term::App(op, args) => {
            let v: Vec<i64> = args.iter().map(|a| eval_wrapping(a, env)).collect();
            match op.as_str() {
                "plus" => v[0].wrapping_add(v[1]),
                "zero" => 0,
                "neg" => v[0].wrapping_neg(),
                "times" => v[0].wrapping_mul(v[1]),
                _ => 1,
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_normal_form_keeps_values(t in term(ring_ops(), 2), x in -50i64..50, y in -50i64..50) {
        let cring = VarietyBackend::cring();
        let nf = cring.nf(&t, 2).unwrap();
        let back = cring.to_term(&nf).unwrap();
        prop_assert_eq!(cring.nf(&back, 2).unwrap(), nf);
        prop_assert_eq!(eval_wrapping(&back, &[x, y]), eval_wrapping(&t, &[x, y]));
    }

    #[test]
    fn polynomial_ring_laws(a in term(ring_ops(), 2), b in term(ring_ops(), 2), c in term(ring_ops(), 2)) {
        let cring = VarietyBackend::cring();
        let nf = |t: Term| cring.nf(&t, 2).unwrap();
        let ap = |o: &str, args: Vec<Term>| Term::app(o, args);
        prop_assert_eq!(
            nf(ap("times", vec![a.clone(), ap("plus", vec![b.clone(), c.clone()])])),
            nf(ap("plus", vec![ap("times", vec![a.clone(), b.clone()]), ap("times", vec![a.clone(), c])]))
        );
        prop_assert_eq!(nf(ap("times", vec![a.clone(), b.clone()])), nf(ap("times", vec![b, a])));
    }
}

fn divisor_pair() -> impl Strategy<Value = (usize, usize, usize)> {
    (2usize..=12).prop_flat_map(|n| {
        let divs: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
        (Just(n), prop::sample::select(divs.clone()), prop::sample::select(divs))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cyclic_tensor_and_hom_sizes((n, a, b) in divisor_pair()) {
        let ring = Arc::new(FiniteRing::zmod(n));
        let ma = FiniteModule::cyclic(ring.clone(), a).unwrap();
        let mb = FiniteModule::cyclic(ring, b).unwrap();
        let g = gcd(a as i64, b as i64) as usize;
        let t = tensor(&Bimodule::symmetric(&ma).unwrap(), &mb).unwrap();
        prop_assert_eq!(t.module.size(), g);
        prop_assert_eq!(module_homs(&ma, &mb).unwrap().len(), g);
    }
}
