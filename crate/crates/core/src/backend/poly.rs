//! Expanded multivariate polynomials with monomials in degree-lexicographic
//! order. Coefficients are integers or elements of a finite commutative ring.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::ring::FiniteRing;

/// Dense exponent vector over a fixed generator list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Monomial {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Coefficient arithmetic.
#[derive(Clone, Copy, Debug)]
pub enum Coeffs<'a> {
    Int,
    Ring(&'a FiniteRing),
}

impl Coeffs<'_> {
    pub fn zero(&self) -> i64 {
        match self {
            Coeffs::Int => 0,
            Coeffs::Ring(r) => r.zero() as i64,
        }
    }

    pub fn one(&self) -> i64 {
        match self {
            Coeffs::Int => 1,
            Coeffs::Ring(r) => r.one() as i64,
        }
    }

    pub fn add(&self, a: i64, b: i64) -> i64 {
        match self {
            Coeffs::Int => a + b,
            Coeffs::Ring(r) => r.add(a as usize, b as usize) as i64,
        }
    }

    pub fn mul(&self, a: i64, b: i64) -> i64 {
        match self {
            Coeffs::Int => a * b,
            Coeffs::Ring(r) => r.mul(a as usize, b as usize) as i64,
        }
    }

    pub fn neg(&self, a: i64) -> i64 {
        match self {
            Coeffs::Int => -a,
            Coeffs::Ring(r) => r.neg(a as usize) as i64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    /// Number of generators; every monomial has this length.
    pub vars: usize,
    /// Nonzero coefficients only.
    pub terms: BTreeMap<Monomial, i64>,
}

impl Poly {
    pub fn zero(vars: usize) -> Poly {
        Poly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: i64, k: Coeffs<'_>) -> Poly {
        let mut p = Poly::zero(vars);
        if c != k.zero() {
            p.terms.insert(Monomial::one(vars), c);
        }
        p
    }

    pub fn var(vars: usize, i: usize, k: Coeffs<'_>) -> Poly {
        let mut p = Poly::zero(vars);
        p.terms.insert(Monomial::var(vars, i), k.one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_add(&mut self, m: Monomial, c: i64, k: Coeffs<'_>) {
        let z = k.zero();
        let entry = self.terms.entry(m.clone()).or_insert(z);
        *entry = k.add(*entry, c);
        if *entry == z {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Poly, k: Coeffs<'_>) -> Poly {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.insert_add(m.clone(), c, k);
        }
        out
    }

    pub fn neg(&self, k: Coeffs<'_>) -> Poly {
        Poly { vars: self.vars, terms: self.terms.iter().map(|(m, &c)| (m.clone(), k.neg(c))).collect() }
    }

    pub fn mul(&self, other: &Poly, k: Coeffs<'_>) -> Poly {
        let mut out = Poly::zero(self.vars);
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                out.insert_add(m1.mul(m2), k.mul(c1, c2), k);
            }
        }
        out
    }

    /// Left scalar multiplication.
    pub fn scale(&self, s: i64, k: Coeffs<'_>) -> Poly {
        let mut out = Poly::zero(self.vars);
        for (m, &c) in &self.terms {
            out.insert_add(m.clone(), k.mul(s, c), k);
        }
        out
    }

    /// Terms from the largest monomial down.
    pub fn descending(&self) -> impl Iterator<Item = (&Monomial, &i64)> {
        self.terms.iter().rev()
    }

    /// Prints with the given generator names, largest monomial first.
    pub fn render(&self, names: &[String], k: Coeffs<'_>) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, &c)) in self.descending().enumerate() {
            let mono: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) })
                    .collect();
            let mono = mono.join("*");
            match k {
                Coeffs::Int => {
                    let sign = if c < 0 { "-" } else { "+" };
                    if idx == 0 {
                        if c < 0 {
                            out.push('-');
                        }
                    } else {
                        out.push_str(&format!(" {sign} "));
                    }
                    let a = c.abs();
                    if mono.is_empty() {
                        out.push_str(&a.to_string());
                    } else if a == 1 {
                        out.push_str(&mono);
                    } else {
                        out.push_str(&format!("{a}*{mono}"));
                    }
                }
                Coeffs::Ring(r) => {
                    if idx > 0 {
                        out.push_str(" + ");
                    }
                    if mono.is_empty() {
                        out.push_str(&c.to_string());
                    } else if c as usize == r.one() {
                        out.push_str(&mono);
                    } else {
                        out.push_str(&format!("{c}*{mono}"));
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn difference_of_squares() {
        let k = Coeffs::Int;
        let x = Poly::var(2, 0, k);
        let y = Poly::var(2, 1, k);
        let p = x.add(&y, k).mul(&x.add(&y.neg(k), k), k);
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(p.render(&names, k), "x^2 - y^2");
    }

    #[test]
    fn deg_lex_puts_higher_degree_first() {
        assert!(Monomial(vec![0, 2]) > Monomial(vec![1, 0]));
        assert!(Monomial(vec![2, 0]) > Monomial(vec![1, 1]));
        assert!(Monomial(vec![1, 1]) > Monomial(vec![0, 2]));
    }
}
