//! Stored instances: the test rings, their small modules and bimodules, and
//! commutative semigroups up to isomorphism.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::algebra::FiniteAlgebra;
use crate::backend::VarietyBackend;
use crate::error::Result;
use crate::ring::{Bimodule, FiniteModule, FiniteRing};
use crate::util::tuples;

/// `Z/2`, `Z/3`, `Z/4` and `F2[t]/(t^2)`.
pub fn test_rings() -> Vec<Arc<FiniteRing>> {
    vec![
        Arc::new(FiniteRing::zmod(2)),
        Arc::new(FiniteRing::zmod(3)),
        Arc::new(FiniteRing::zmod(4)),
        Arc::new(FiniteRing::f2_dual()),
    ]
}

/// `m / sub` for a submodule given as a set of elements.
pub fn quotient_module(m: &FiniteModule, sub: &BTreeSet<usize>, name: impl Into<String>) -> Result<FiniteModule> {
    let mut class = vec![usize::MAX; m.size()];
    let mut reps = Vec::new();
    for x in 0..m.size() {
        if class[x] == usize::MAX {
            for &s in sub {
                class[m.add(x, s)] = reps.len();
            }
            reps.push(x);
        }
    }
    let n = reps.len();
    let add = tuples(n, 2).map(|t| class[m.add(reps[t[0]], reps[t[1]])]).collect();
    let r = m.ring().size();
    let act = (0..r).flat_map(|s| reps.iter().map(move |&x| (s, x))).map(|(s, x)| class[m.act(s, x)]).collect();
    FiniteModule::new(name, m.ring().clone(), n, add, act)
}

fn left_ideals(ring: &FiniteRing) -> Vec<BTreeSet<usize>> {
    let n = ring.size();
    let mut out: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for t in tuples(n, 2) {
        let mut set: BTreeSet<usize> = BTreeSet::from([ring.zero()]);
        let mut frontier: Vec<usize> = t.clone();
        while let Some(x) = frontier.pop() {
            if set.insert(x) {
                frontier.extend((0..n).map(|r| ring.mul(r, x)));
                frontier.extend(set.iter().map(|&y| ring.add(x, y)));
            }
        }
        out.insert(set);
    }
    out.into_iter().collect()
}

/// The nonzero cyclic modules `R / I`, one per left ideal, largest first.
pub fn cyclic_modules(ring: &Arc<FiniteRing>) -> Result<Vec<FiniteModule>> {
    let regular = FiniteModule::regular(ring.clone());
    let mut out = Vec::new();
    for ideal in left_ideals(ring) {
        if ideal.len() < ring.size() {
            let name = if ideal.len() == 1 {
                ring.name.clone()
            } else if ring.characteristic() == ring.size() {
                format!("Z{}", ring.size() / ideal.len())
            } else {
                let gens: Vec<String> = ideal.iter().skip(1).map(|x| x.to_string()).collect();
                format!("{}/({})", ring.name, gens.join(","))
            };
            out.push(quotient_module(&regular, &ideal, name)?);
        }
    }
    out.sort_by_key(|m| std::cmp::Reverse(m.size()));
    Ok(out)
}

/// Direct sums of cyclic modules with at most `max` elements, the zero
/// module first. Over the test rings these are all modules up to
/// isomorphism.
pub fn modules_up_to(ring: &Arc<FiniteRing>, max: usize) -> Result<Vec<FiniteModule>> {
    let blocks = cyclic_modules(ring)?;
    let mut out = vec![FiniteModule::zero_module(ring.clone())];
    let mut stack: Vec<(usize, FiniteModule)> =
        blocks.iter().enumerate().filter(|(_, b)| b.size() <= max).map(|(i, b)| (i, b.clone())).collect();
    stack.reverse();
    while let Some((i, m)) = stack.pop() {
        let mut next = Vec::new();
        for (j, b) in blocks.iter().enumerate().skip(i) {
            if m.size() * b.size() <= max {
                let sum = FiniteModule::direct_sum(&m, b)?;
                next.push((j, sum));
            }
        }
        out.push(m);
        next.reverse();
        stack.extend(next);
    }
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.name().cmp(b.name())));
    Ok(out)
}

/// Bimodules over `(R, R)` with at most `max` elements: the symmetric ones
/// from [`modules_up_to`] and, over the dual numbers, one where `t` acts
/// only on the left.
pub fn bimodules_up_to(ring: &Arc<FiniteRing>, max: usize) -> Result<Vec<Bimodule>> {
    let mut out: Vec<Bimodule> = modules_up_to(ring, max)?.iter().map(Bimodule::symmetric).collect::<Result<_>>()?;
    if **ring == FiniteRing::f2_dual() && max >= 4 {
        out.push(left_nilpotent_bimodule(ring.clone())?);
    }
    Ok(out)
}

/// `F2^2` over the dual numbers with `t` acting as a nilpotent Jordan block
/// on the left and as zero on the right.
pub fn left_nilpotent_bimodule(ring: Arc<FiniteRing>) -> Result<Bimodule> {
    // a + bt acts on (x, y) by (a x + b y, a y); elements are x + 2y
    let act = |r: usize, m: usize| {
        let (a, b) = (r & 1, r >> 1);
        let (x, y) = (m & 1, m >> 1);
        ((a * x + b * y) % 2) + 2 * ((a * y) % 2)
    };
    let right = |m: usize, r: usize| if r & 1 == 1 { m } else { 0 };
    Bimodule::from_fn("J2", ring.clone(), ring, 4, |p, q| p ^ q, act, right)
}

/// Commutative semigroups on `{0..n-1}`, one per isomorphism class, as
/// algebras for the cSem backend.
pub fn commutative_semigroups(n: usize) -> Vec<FiniteAlgebra> {
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut table = vec![usize::MAX; n * n];
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let perms: Vec<Vec<usize>> = permutations(n);
    fill(0, &cells, &mut table, n, &mut |t| {
        let canon = perms.iter().map(|p| relabel(t, p, n)).min().expect("at least one permutation");
        seen.insert(canon);
    });
    let sig = VarietyBackend::csem().theory().signature.clone();
    seen.into_iter()
        .enumerate()
        .map(|(k, t)| FiniteAlgebra::new(format!("S{n}_{k}"), sig.clone(), n, vec![t]).expect("table in range"))
        .collect()
}

fn fill(k: usize, cells: &[(usize, usize)], table: &mut Vec<usize>, n: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == cells.len() {
        visit(table);
        return;
    }
    let (i, j) = cells[k];
    for v in 0..n {
        table[i * n + j] = v;
        table[j * n + i] = v;
        if associative_so_far(table, n) {
            fill(k + 1, cells, table, n, visit);
        }
    }
    table[i * n + j] = usize::MAX;
    table[j * n + i] = usize::MAX;
}

fn associative_so_far(t: &[usize], n: usize) -> bool {
    let get = |a: usize, b: usize| t[a * n + b];
    for a in 0..n {
        for b in 0..n {
            let ab = get(a, b);
            if ab == usize::MAX {
                continue;
            }
            for c in 0..n {
                let bc = get(b, c);
                if bc == usize::MAX {
                    continue;
                }
                let (l, r) = (get(ab, c), get(a, bc));
                if l != usize::MAX && r != usize::MAX && l != r {
                    return false;
                }
            }
        }
    }
    true
}

fn relabel(t: &[usize], p: &[usize], n: usize) -> Vec<usize> {
    let mut out = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            out[p[a] * n + p[b]] = p[t[a * n + b]];
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// The idempotents of a semigroup given as a one-op algebra.
pub fn idempotents(s: &FiniteAlgebra) -> Vec<usize> {
    (0..s.size()).filter(|&x| s.apply(0, &[x, x]) == x).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_modules_of_z4() {
        let r = Arc::new(FiniteRing::zmod(4));
        let sizes: Vec<usize> = cyclic_modules(&r).unwrap().iter().map(FiniteModule::size).collect();
        assert_eq!(sizes, vec![4, 2]);
        let all: Vec<usize> = modules_up_to(&r, 8).unwrap().iter().map(FiniteModule::size).collect();
        assert_eq!(all, vec![1, 2, 4, 4, 8, 8]);
    }
}
