//! Finitely presented abelian groups and their Smith-style diagonalization.
//!
//! Every quotient in module land goes through [`PresentedAbGroup::quotient`]:
//! rows are integer relations on `g` generators, and the result is a finite
//! group `⊕ Z/d_i` together with the map sending integer vectors to canonical
//! coordinates.

use std::fmt;

use crate::error::{Error, Result};
use crate::util::{gcd, lcm};

/// Extended gcd: `(g, s, t)` with `s a + t b = g >= 0`.
fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    // Prefer the trivial combination so elimination by a dividing pivot
    // leaves the pivot row alone.
    if a != 0 && b % a == 0 {
        return (a.abs(), a.signum(), 0);
    }
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedAbGroup {
    pub generators: usize,
    pub relations: Vec<Vec<i64>>,
}

/// `Z^g / relations`, finite, in canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    /// Invariant factors greater than 1, each dividing the next.
    pub factors: Vec<i64>,
    /// Row `j` holds the canonical coordinates of generator `j`.
    pub images: Vec<Vec<i64>>,
}

impl PresentedAbGroup {
    pub fn new(generators: usize, relations: Vec<Vec<i64>>) -> Result<Self> {
        if relations.iter().any(|r| r.len() != generators) {
            return Err(Error::InvalidTable("relation of the wrong length".into()));
        }
        Ok(PresentedAbGroup { generators, relations })
    }

    /// Diagonalizes the presentation. `exponent` must be a multiple of the
    /// exponent of the quotient (so `exponent * e_j` is a relation for every
    /// `j`); all arithmetic is then reduced modulo it.
    pub fn quotient(&self, exponent: i64) -> Result<Quotient> {
        if exponent <= 0 {
            return Err(Error::InvalidTable("quotient needs a positive exponent".into()));
        }
        let g = self.generators;
        let n = exponent as i128;
        let mut echelon = Echelon::new(g, n);
        for j in 0..g {
            let mut e = vec![0i128; g];
            e[j] = n;
            echelon.insert(e);
        }
        for r in &self.relations {
            echelon.insert(r.iter().map(|&x| x as i128).collect());
        }
        let mut a: Vec<Vec<i128>> = echelon.rows.into_iter().flatten().collect();
        let mut t: Vec<Vec<i128>> = (0..g).map(|j| (0..g).map(|k| i128::from(j == k)).collect()).collect();
        let diag = smith_in_place(&mut a, &mut t, g, n);
        let keep: Vec<usize> = (0..g).filter(|&i| diag[i] != 1).collect();
        let factors: Vec<i64> = keep.iter().map(|&i| diag[i] as i64).collect();
        let images = (0..g)
            .map(|j| keep.iter().zip(&factors).map(|(&i, &d)| (t[j][i].rem_euclid(d as i128)) as i64).collect())
            .collect();
        Ok(Quotient { factors, images })
    }
}

/// Row echelon form modulo `n`, one pivot row per column.
struct Echelon {
    n: i128,
    rows: Vec<Option<Vec<i128>>>,
}

impl Echelon {
    fn new(g: usize, n: i128) -> Self {
        Echelon { n, rows: vec![None; g] }
    }

    fn reduce(&self, v: &mut [i128], from: usize) {
        for x in v[from..].iter_mut() {
            *x = x.rem_euclid(self.n);
        }
    }

    fn insert(&mut self, mut v: Vec<i128>) {
        let g = v.len();
        self.reduce(&mut v, 0);
        for c in 0..g {
            if v[c] == 0 {
                continue;
            }
            match self.rows[c].take() {
                None => {
                    self.rows[c] = Some(v);
                    return;
                }
                Some(mut p) => {
                    let (d, s, t) = xgcd(p[c], v[c]);
                    let (pc, vc) = (p[c] / d, v[c] / d);
                    let np: Vec<i128> = (0..g).map(|k| s * p[k] + t * v[k]).collect();
                    let nv: Vec<i128> = (0..g).map(|k| vc * p[k] - pc * v[k]).collect();
                    p = np;
                    v = nv;
                    self.reduce(&mut p, c + 1);
                    self.reduce(&mut v, c + 1);
                    v[c] = 0;
                    self.rows[c] = Some(p);
                }
            }
        }
    }
}

/// Diagonalizes `a` (rows x g) by unimodular row and column operations,
/// applying every column operation to `t` as well. Returns the diagonal,
/// with `n` standing for zero.
fn smith_in_place(a: &mut [Vec<i128>], t: &mut [Vec<i128>], g: usize, n: i128) -> Vec<i128> {
    let rows = a.len();
    let modn = |x: i128| x.rem_euclid(n);
    let col_combine = |a: &mut [Vec<i128>], t: &mut [Vec<i128>], i: usize, j: usize, m: [[i128; 2]; 2]| {
        // new col_i = m00 col_i + m10 col_j ; new col_j = m01 col_i + m11 col_j
        for row in a.iter_mut().chain(t.iter_mut()) {
            let (x, y) = (row[i], row[j]);
            row[i] = modn(m[0][0] * x + m[1][0] * y);
            row[j] = modn(m[0][1] * x + m[1][1] * y);
        }
    };
    let mut diag = vec![n; g];
    for k in 0..g.min(rows) {
        loop {
            // Pick the smallest nonzero entry of the trailing block as pivot.
            let mut best: Option<(usize, usize, i128)> = None;
            for (i, row) in a.iter().enumerate().skip(k) {
                for (j, &x) in row.iter().enumerate().skip(k) {
                    let x = modn(x);
                    if x != 0 && best.is_none_or(|b| x < b.2) {
                        best = Some((i, j, x));
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                return diag;
            };
            a.swap(k, pi);
            if pj != k {
                col_combine(a, t, k, pj, [[0, 1], [1, 0]]);
            }
            let mut clean = true;
            for i in k + 1..rows {
                if a[i][k] != 0 {
                    let (d, s, u) = xgcd(a[k][k], a[i][k]);
                    let (p, q) = (a[k][k] / d, a[i][k] / d);
                    let (rk, ri) = (a[k].clone(), a[i].clone());
                    a[k] = rk.iter().zip(&ri).map(|(&x, &y)| modn(s * x + u * y)).collect();
                    a[i] = rk.iter().zip(&ri).map(|(&x, &y)| modn(q * x - p * y)).collect();
                    a[i][k] = 0;
                    clean = false;
                }
            }
            for j in k + 1..g {
                if a[k][j] != 0 {
                    let (d, s, u) = xgcd(a[k][k], a[k][j]);
                    let (p, q) = (a[k][k] / d, a[k][j] / d);
                    col_combine(a, t, k, j, [[s, -q], [u, p]]);
                    a[k][j] = 0;
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: the pivot must divide the whole trailing block.
            let p = a[k][k];
            let bad = (k + 1..rows).find(|&i| a[i].iter().skip(k + 1).any(|&x| modn(x) % p != 0));
            match bad {
                Some(i) => {
                    let ri = a[i].clone();
                    for (x, y) in a[k].iter_mut().zip(&ri) {
                        *x = modn(*x + y);
                    }
                }
                None => {
                    diag[k] = gcd(p as i64, n as i64) as i128;
                    break;
                }
            }
        }
    }
    diag
}

impl Quotient {
    pub fn size(&self) -> usize {
        self.factors.iter().product::<i64>() as usize
    }

    /// Canonical coordinates of an integer combination of the generators.
    pub fn coords(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.factors.len()];
        for (j, &c) in v.iter().enumerate() {
            if c != 0 {
                for (k, o) in out.iter_mut().enumerate() {
                    *o = (*o + c * self.images[j][k]).rem_euclid(self.factors[k]);
                }
            }
        }
        out
    }

    /// Mixed-radix index, first factor most significant.
    pub fn index(&self, coords: &[i64]) -> usize {
        coords.iter().zip(&self.factors).fold(0usize, |acc, (&c, &d)| acc * d as usize + c as usize)
    }

    pub fn element(&self, mut index: usize) -> Vec<i64> {
        let mut out = vec![0i64; self.factors.len()];
        for k in (0..self.factors.len()).rev() {
            let d = self.factors[k] as usize;
            out[k] = (index % d) as i64;
            index /= d;
        }
        out
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.element(a), self.element(b));
        let s: Vec<i64> = x.iter().zip(&y).zip(&self.factors).map(|((p, q), d)| (p + q) % d).collect();
        self.index(&s)
    }

    pub fn index_of(&self, v: &[i64]) -> usize {
        self.index(&self.coords(v))
    }
}

/// Invariant-factor form such as `C2 x C4`; the trivial group prints as `0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InvariantFactors(pub Vec<i64>);

impl fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|d| format!("C{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// A generating set of a finite abelian group with a complete relation set
/// and one coordinate vector per element.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub gens: Vec<usize>,
    pub relations: Vec<Vec<i64>>,
    /// `coords[x]` expresses `x` in `gens`.
    pub coords: Vec<Vec<i64>>,
    pub exponent: i64,
}

impl Decomposition {
    /// Greedy decomposition: each new generator `g` contributes the relation
    /// `c g = h` where `c` is least with `c g` in the span so far.
    pub fn of_group(size: usize, zero: usize, add: impl Fn(usize, usize) -> usize) -> Decomposition {
        let mut gens: Vec<usize> = Vec::new();
        let mut relations: Vec<Vec<i64>> = Vec::new();
        let mut coords: Vec<Option<Vec<i64>>> = vec![None; size];
        coords[zero] = Some(Vec::new());
        let mut span: Vec<usize> = vec![zero];
        for x in 0..size {
            if coords[x].is_some() {
                continue;
            }
            let k = gens.len();
            gens.push(x);
            for c in coords.iter_mut().flatten() {
                c.push(0);
            }
            // least c with c x in the old span
            let mut mult = x;
            let mut c = 1i64;
            while coords[mult].is_none() {
                mult = add(mult, x);
                c += 1;
            }
            let mut rel: Vec<i64> = coords[mult].clone().expect("in span").iter().map(|r| -r).collect();
            rel[k] += c;
            relations.push(rel);
            let old = span.clone();
            let mut jx = x;
            for j in 1..c {
                for &h in &old {
                    let y = add(h, jx);
                    let mut v = coords[h].clone().expect("span element");
                    v[k] += j;
                    coords[y] = Some(v);
                    span.push(y);
                }
                jx = add(jx, x);
            }
        }
        let g = gens.len();
        let coords = coords
            .into_iter()
            .map(|c| {
                let mut v = c.expect("every element reached");
                v.resize(g, 0);
                v
            })
            .collect();
        for r in relations.iter_mut() {
            r.resize(g, 0);
        }
        let exponent = exponent_of(size, zero, &add);
        Decomposition { gens, relations, coords, exponent }
    }

    pub fn presentation(&self) -> PresentedAbGroup {
        PresentedAbGroup { generators: self.gens.len(), relations: self.relations.clone() }
    }

    pub fn invariant_factors(&self) -> InvariantFactors {
        let q = self.presentation().quotient(self.exponent).expect("finite group");
        InvariantFactors(q.factors)
    }
}

/// Least common multiple of all element orders.
fn exponent_of(size: usize, zero: usize, add: &impl Fn(usize, usize) -> usize) -> i64 {
    (0..size).fold(1i64, |acc, x| {
        let mut y = x;
        let mut k = 1i64;
        while y != zero {
            y = add(y, x);
            k += 1;
        }
        lcm(acc, k)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn_sum(parts: &[usize]) -> (usize, impl Fn(usize, usize) -> usize) {
        let parts = parts.to_vec();
        let size = parts.iter().product();
        let add = move |a: usize, b: usize| {
            let (mut a, mut b) = (a, b);
            let mut out = 0;
            let mut scale = 1;
            for &d in parts.iter().rev() {
                out += ((a % d + b % d) % d) * scale;
                scale *= d;
                a /= d;
                b /= d;
            }
            out
        };
        (size, add)
    }

    #[test]
    fn decomposition_recovers_invariant_factors() {
        let (n, add) = zn_sum(&[2, 4]);
        assert_eq!(Decomposition::of_group(n, 0, add).invariant_factors().to_string(), "C2 x C4");
        let (n, add) = zn_sum(&[2, 3]);
        assert_eq!(Decomposition::of_group(n, 0, add).invariant_factors().to_string(), "C6");
        let (n, add) = zn_sum(&[1]);
        assert_eq!(Decomposition::of_group(n, 0, add).invariant_factors().to_string(), "0");
    }

    #[test]
    fn z2_tensor_z3_presentation_is_trivial() {
        // generator e = 1 (x) 1 with 2e = 0 and 3e = 0
        let p = PresentedAbGroup::new(1, vec![vec![2], vec![3]]).unwrap();
        assert_eq!(p.quotient(6).unwrap().size(), 1);
    }

    #[test]
    fn quotient_coordinates_respect_relations() {
        let p = PresentedAbGroup::new(2, vec![vec![2, 0], vec![1, 2], vec![0, 4]]).unwrap();
        let q = p.quotient(4).unwrap();
        assert_eq!(q.size(), 4);
        for r in &p.relations {
            assert!(q.coords(r).iter().all(|&c| c == 0));
        }
    }
}
