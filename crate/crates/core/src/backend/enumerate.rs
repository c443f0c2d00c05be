//! Bounded enumeration of carriers.

use std::collections::BTreeMap;

use super::poly::{Monomial, Poly};
use super::{BackendKind, Elem, Obj, VarietyBackend};
use crate::error::{Error, Result};
use crate::util::{pow, tuples};

const MODULE_CAP: usize = 1 << 20;

/// Elements up to a size bound. `exact` means the list is the whole carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumerated {
    pub elems: Vec<Elem>,
    pub exact: bool,
}

impl VarietyBackend {
    /// Lists the carrier of `obj`. Free carriers are cut off by a size
    /// measure: word length for Mon and Grp, total multiplicity for cMon and
    /// cSem, the L1 norm for Ab, `Σ|c|(deg+1)` for cRing and `Σ(deg+1)` over
    /// the support for cAlg. Free modules over a finite ring are listed whole.
    pub fn elements(&self, obj: &Obj, bound: usize) -> Result<Enumerated> {
        let n = match obj {
            Obj::Finite(a) => return Ok(Enumerated { elems: (0..a.size()).map(Elem::Fin).collect(), exact: true }),
            Obj::Free(g) => g.len(),
        };
        let exact_if_empty = n == 0;
        let (elems, exact) = match &self.kind {
            BackendKind::Set => ((0..n).map(Elem::Gen).collect(), true),
            BackendKind::Pointed => (std::iter::once(None).chain((0..n).map(Some)).map(Elem::Pointed).collect(), true),
            BackendKind::Mon => {
                let mut out = Vec::new();
                for len in 0..=bound {
                    out.extend(tuples(n, len).map(Elem::Word));
                }
                (out, exact_if_empty)
            }
            BackendKind::Grp => {
                let mut out = vec![Elem::GroupWord(Vec::new())];
                let mut frontier: Vec<Vec<(usize, bool)>> = vec![Vec::new()];
                for _ in 0..bound {
                    let mut next = Vec::new();
                    for w in &frontier {
                        for g in 0..n {
                            for inv in [false, true] {
                                if w.last() != Some(&(g, !inv)) {
                                    let mut v = w.clone();
                                    v.push((g, inv));
                                    next.push(v);
                                }
                            }
                        }
                    }
                    out.extend(next.iter().cloned().map(Elem::GroupWord));
                    frontier = next;
                }
                (out, exact_if_empty)
            }
            BackendKind::CMon | BackendKind::CSem => {
                let min = usize::from(self.kind == BackendKind::CSem);
                let mut out = Vec::new();
                for counts in compositions(n, bound) {
                    if counts.iter().sum::<usize>() >= min {
                        out.push(Elem::Multiset(
                            counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(g, &c)| (g, c as u64)).collect(),
                        ));
                    }
                }
                (out, exact_if_empty)
            }
            BackendKind::Ab => {
                let mut out = Vec::new();
                for counts in compositions(n, bound) {
                    let support: Vec<usize> = (0..n).filter(|&g| counts[g] > 0).collect();
                    for signs in tuples(2, support.len()) {
                        out.push(Elem::IntVec(
                            support
                                .iter()
                                .zip(&signs)
                                .map(|(&g, &s)| (g, if s == 0 { counts[g] as i64 } else { -(counts[g] as i64) }))
                                .collect(),
                        ));
                    }
                }
                (out, exact_if_empty)
            }
            BackendKind::Module(r) => {
                let total = pow(r.size(), n);
                if total > MODULE_CAP {
                    return Err(Error::CapExceeded(format!(
                        "free module of rank {n} over {} has {total} elements",
                        r.name
                    )));
                }
                let out = tuples(r.size(), n)
                    .map(|v| Elem::RVec(v.into_iter().enumerate().filter(|&(_, c)| c != r.zero()).collect()))
                    .collect();
                (out, true)
            }
            BackendKind::CRing => {
                let monos = monomials(n, bound);
                let mut out = Vec::new();
                int_polys(&monos, 0, bound, &mut BTreeMap::new(), n, &mut out);
                (out, false)
            }
            BackendKind::CAlg(r) => {
                let monos = monomials(n, bound);
                let nonzero: Vec<i64> = (0..r.size()).filter(|&c| c != r.zero()).map(|c| c as i64).collect();
                let mut out = Vec::new();
                ring_polys(&monos, 0, bound, &mut BTreeMap::new(), n, &nonzero, &mut out);
                if exact_if_empty {
                    // R itself: every constant, whatever the bound.
                    out = std::iter::once(Poly::zero(0))
                        .chain(
                            nonzero.iter().map(|&c| Poly { vars: 0, terms: BTreeMap::from([(Monomial::one(0), c)]) }),
                        )
                        .map(Elem::Poly)
                        .collect();
                }
                (out, exact_if_empty)
            }
        };
        let mut elems: Vec<Elem> = elems;
        elems.sort();
        elems.dedup();
        Ok(Enumerated { elems, exact })
    }
}

/// All `n`-tuples of naturals with sum at most `bound`.
fn compositions(n: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    fn go(k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for c in 0..=left {
            cur[k] = c;
            go(k + 1, left - c, cur, out);
        }
        cur[k] = 0;
    }
    go(0, bound, &mut cur, &mut out);
    out
}

/// Monomials in `n` variables with `deg + 1 <= bound`.
fn monomials(n: usize, bound: usize) -> Vec<Monomial> {
    if bound == 0 {
        return Vec::new();
    }
    compositions(n, bound - 1).into_iter().map(|v| Monomial(v.into_iter().map(|e| e as u32).collect())).collect()
}

fn int_polys(
    monos: &[Monomial],
    k: usize,
    left: usize,
    cur: &mut BTreeMap<Monomial, i64>,
    n: usize,
    out: &mut Vec<Elem>,
) {
    if k == monos.len() {
        out.push(Elem::Poly(Poly { vars: n, terms: cur.clone() }));
        return;
    }
    int_polys(monos, k + 1, left, cur, n, out);
    let w = monos[k].degree() as usize + 1;
    let mut c = 1;
    while c * w <= left {
        for sign in [1i64, -1] {
            cur.insert(monos[k].clone(), sign * c as i64);
            int_polys(monos, k + 1, left - c * w, cur, n, out);
        }
        c += 1;
    }
    cur.remove(&monos[k]);
}

fn ring_polys(
    monos: &[Monomial],
    k: usize,
    left: usize,
    cur: &mut BTreeMap<Monomial, i64>,
    n: usize,
    nonzero: &[i64],
    out: &mut Vec<Elem>,
) {
    if k == monos.len() {
        out.push(Elem::Poly(Poly { vars: n, terms: cur.clone() }));
        return;
    }
    ring_polys(monos, k + 1, left, cur, n, nonzero, out);
    let w = monos[k].degree() as usize + 1;
    if w <= left {
        for &c in nonzero {
            cur.insert(monos[k].clone(), c);
            ring_polys(monos, k + 1, left - w, cur, n, nonzero, out);
        }
        cur.remove(&monos[k]);
    }
}
