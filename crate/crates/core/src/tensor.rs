//! Tensor products of finite abelian groups with balancing over a ring,
//! computed from additive presentations of both factors.

use crate::abgroup::{Decomposition, PresentedAbGroup, Quotient};
use crate::error::{Error, Result};

/// Largest tensor product computed with an element walk.
pub const TENSOR_CAP: usize = 1 << 20;
/// Largest tensor product given canonical forms only.
pub const UNWALKED_CAP: usize = 1 << 40;
use crate::ring::FiniteRing;
use crate::util::gcd;

/// A finite abelian group given by size, zero and an addition function.
pub struct Additive<'a> {
    pub size: usize,
    pub zero: usize,
    pub add: &'a dyn Fn(usize, usize) -> usize,
}

/// Balancing data for `M ⊗_R X`: the right action on `M` and the left
/// action on `X`.
pub struct Balance<'a> {
    pub ring: &'a FiniteRing,
    pub right: &'a dyn Fn(usize, usize) -> usize,
    pub left: &'a dyn Fn(usize, usize) -> usize,
}

/// `M ⊗ X` as a finite abelian group.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub size: usize,
    pub zero: usize,
    /// Invariant factors, least significant digit first.
    radix: Vec<usize>,
    left_size: usize,
    right_size: usize,
    /// `pure[m * |X| + x]` is `m ⊗ x`.
    pure: Vec<usize>,
    /// Pairs of additive generators whose pure tensors generate the group.
    gen_pairs: Vec<(usize, usize)>,
    /// Elements in breadth-first order from zero.
    order: Vec<usize>,
    /// `step[t] = (s, g)` with `t = s + pure(gen_pairs[g])`.
    step: Vec<Option<(usize, usize)>>,
}

impl Tensor {
    pub fn new(m: &Additive<'_>, x: &Additive<'_>, balance: Option<&Balance<'_>>) -> Result<Tensor> {
        Self::build(m, x, balance, TENSOR_CAP)
    }

    /// Canonical forms and addition only, for groups too large to walk;
    /// [`Tensor::induce`] and its relatives panic on the result.
    pub fn unwalked(m: &Additive<'_>, x: &Additive<'_>, balance: Option<&Balance<'_>>) -> Result<Tensor> {
        Self::build(m, x, balance, UNWALKED_CAP)
    }

    pub fn is_walked(&self) -> bool {
        !self.order.is_empty()
    }

    fn build(m: &Additive<'_>, x: &Additive<'_>, balance: Option<&Balance<'_>>, cap: usize) -> Result<Tensor> {
        let dm = Decomposition::of_group(m.size, m.zero, m.add);
        let dx = Decomposition::of_group(x.size, x.zero, x.add);
        let (gm, gx) = (dm.gens.len(), dx.gens.len());
        let idx = |i: usize, j: usize| i * gx + j;
        let mut relations = Vec::new();
        for rel in &dm.relations {
            for j in 0..gx {
                let mut v = vec![0i64; gm * gx];
                for (i, &c) in rel.iter().enumerate() {
                    v[idx(i, j)] += c;
                }
                relations.push(v);
            }
        }
        for rel in &dx.relations {
            for i in 0..gm {
                let mut v = vec![0i64; gm * gx];
                for (j, &c) in rel.iter().enumerate() {
                    v[idx(i, j)] += c;
                }
                relations.push(v);
            }
        }
        if let Some(b) = balance {
            for r in b.ring.generators() {
                for (i, &g) in dm.gens.iter().enumerate() {
                    for (j, &h) in dx.gens.iter().enumerate() {
                        let mut v = vec![0i64; gm * gx];
                        for (k, &c) in dm.coords[(b.right)(g, r)].iter().enumerate() {
                            v[idx(k, j)] += c;
                        }
                        for (l, &c) in dx.coords[(b.left)(r, h)].iter().enumerate() {
                            v[idx(i, l)] -= c;
                        }
                        relations.push(v);
                    }
                }
            }
        }
        let exponent = gcd(dm.exponent, dx.exponent).max(1);
        let q: Quotient = PresentedAbGroup::new(gm * gx, relations)?.quotient(exponent)?;
        let size =
            q.factors.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d as usize).filter(|&n| n <= cap)).ok_or_else(
                || Error::CapExceeded(format!("tensor product over {} generators exceeds {cap} elements", gm * gx)),
            )?;
        // digitwise addition in the mixed radix of the invariant factors
        let radix: Vec<usize> = q.factors.iter().rev().map(|&d| d as usize).collect();
        let zero = q.index(&vec![0; q.factors.len()]);
        let mut pure = vec![0usize; m.size * x.size];
        for (a, ca) in dm.coords.iter().enumerate() {
            for (b, cb) in dx.coords.iter().enumerate() {
                let mut v = vec![0i64; gm * gx];
                for (i, &p) in ca.iter().enumerate() {
                    for (j, &r) in cb.iter().enumerate() {
                        v[idx(i, j)] += p * r;
                    }
                }
                pure[a * x.size + b] = q.index_of(&v);
            }
        }
        let gen_pairs: Vec<(usize, usize)> =
            dm.gens.iter().flat_map(|&g| dx.gens.iter().map(move |&h| (g, h))).collect();
        if size > TENSOR_CAP {
            return Ok(Tensor {
                size,
                zero,
                radix,
                left_size: m.size,
                right_size: x.size,
                pure,
                gen_pairs,
                order: vec![],
                step: vec![],
            });
        }
        let mut step = vec![None; size];
        let mut seen = vec![false; size];
        seen[zero] = true;
        let mut order = vec![zero];
        let mut head = 0;
        while head < order.len() {
            let s = order[head];
            head += 1;
            for (gi, &(g, h)) in gen_pairs.iter().enumerate() {
                let t = digit_add(&radix, s, pure[g * x.size + h]);
                if !seen[t] {
                    seen[t] = true;
                    step[t] = Some((s, gi));
                    order.push(t);
                }
            }
        }
        debug_assert_eq!(order.len(), size);
        Ok(Tensor { size, zero, radix, left_size: m.size, right_size: x.size, pure, gen_pairs, order, step })
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        digit_add(&self.radix, a, b)
    }

    pub fn neg(&self, a: usize) -> usize {
        let (mut x, mut place, mut out) = (a, 1, 0);
        for &d in &self.radix {
            out += (d - x % d) % d * place;
            place *= d;
            x /= d;
        }
        out
    }

    /// The full addition table, row-major.
    pub fn add_table(&self) -> Vec<usize> {
        (0..self.size).flat_map(|a| (0..self.size).map(move |b| self.add(a, b))).collect()
    }

    pub fn pure(&self, m: usize, x: usize) -> usize {
        self.pure[m * self.right_size + x]
    }

    pub fn factor_sizes(&self) -> (usize, usize) {
        (self.left_size, self.right_size)
    }

    /// Extends a function on pure tensors, additive and balanced in each
    /// argument, to the whole group with values in `target`.
    pub fn induce(&self, target: &Additive<'_>, f: impl Fn(usize, usize) -> usize) -> Vec<usize> {
        assert!(self.is_walked(), "induce on an unwalked tensor of size {}", self.size);
        let gen_vals: Vec<usize> = self.gen_pairs.iter().map(|&(g, h)| f(g, h)).collect();
        let mut out = vec![target.zero; self.size];
        for &t in &self.order {
            if let Some((s, g)) = self.step[t] {
                out[t] = (target.add)(out[s], gen_vals[g]);
            }
        }
        out
    }

    /// Extends `(m ⊗ x, n ⊗ y) ↦ f(m, x, n, y)`, an element of this tensor
    /// biadditive and balanced in both slots, to a full binary table.
    pub fn induce_binary(&self, f: impl Fn(usize, usize, usize, usize) -> usize) -> Vec<usize> {
        let n = self.size;
        let me = Additive { size: n, zero: self.zero, add: &|a, b| self.add(a, b) };
        // rows[g][v] = pure(gen_pairs[g]) * v
        let rows: Vec<Vec<usize>> =
            self.gen_pairs.iter().map(|&(m, x)| self.induce(&me, |p, y| f(m, x, p, y))).collect();
        let mut table = vec![self.zero; n * n];
        for &u in &self.order {
            if let Some((s, g)) = self.step[u] {
                for v in 0..n {
                    table[u * n + v] = self.add(table[s * n + v], rows[g][v]);
                }
            }
        }
        table
    }
}

/// Addition in the mixed radix group `⊕ Z/d`.
fn digit_add(radix: &[usize], a: usize, b: usize) -> usize {
    let (mut x, mut y, mut place, mut sum) = (a, b, 1, 0);
    for &d in radix {
        sum += (x % d + y % d) % d * place;
        place *= d;
        x /= d;
        y /= d;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> impl Fn(usize, usize) -> usize {
        move |a, b| (a + b) % n
    }

    #[test]
    fn z4_tensor_z6_is_z2() {
        let (a4, a6) = (cyclic(4), cyclic(6));
        let t = Tensor::new(&Additive { size: 4, zero: 0, add: &a4 }, &Additive { size: 6, zero: 0, add: &a6 }, None)
            .unwrap();
        assert_eq!(t.size, 2);
        assert_ne!(t.pure(1, 1), t.zero);
        assert_eq!(t.pure(2, 1), t.zero);
    }

    #[test]
    fn induced_maps_follow_pure_tensors() {
        let a3 = cyclic(3);
        let g = Additive { size: 3, zero: 0, add: &a3 };
        let t = Tensor::new(&g, &g, None).unwrap();
        let mult = t.induce(&g, |a, b| a * b % 3);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(mult[t.pure(a, b)], a * b % 3);
            }
        }
    }
}
