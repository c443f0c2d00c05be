//! Finite rings, left modules and bimodules given by tables.

use std::sync::Arc;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::theory::Signature;
use crate::util::tuples;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteRing {
    pub name: String,
    size: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    zero: usize,
    one: usize,
}

impl FiniteRing {
    /// Checks every ring axiom on all tuples.
    pub fn new(
        name: impl Into<String>,
        size: usize,
        add: Vec<usize>,
        mul: Vec<usize>,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let name = name.into();
        if size == 0 || add.len() != size * size || mul.len() != size * size || zero >= size || one >= size {
            return Err(Error::InvalidTable(format!("ring {name}: malformed tables")));
        }
        if add.iter().chain(&mul).any(|&v| v >= size) {
            return Err(Error::InvalidTable(format!("ring {name}: entry outside carrier")));
        }
        let a = |x: usize, y: usize| add[x * size + y];
        let m = |x: usize, y: usize| mul[x * size + y];
        let mut neg = vec![usize::MAX; size];
        for (x, nx) in neg.iter_mut().enumerate() {
            if let Some(y) = (0..size).find(|&y| a(x, y) == zero) {
                *nx = y;
            } else {
                return Err(Error::AxiomViolation(format!("ring {name}: {x} has no additive inverse")));
            }
        }
        let fail = |what: &str, t: &[usize]| Err(Error::AxiomViolation(format!("ring {name}: {what} at {t:?}")));
        for x in 0..size {
            if a(zero, x) != x {
                return fail("additive unit", &[x]);
            }
            if m(one, x) != x || m(x, one) != x {
                return fail("multiplicative unit", &[x]);
            }
        }
        for t in tuples(size, 2) {
            if a(t[0], t[1]) != a(t[1], t[0]) {
                return fail("additive commutativity", &t);
            }
        }
        for t in tuples(size, 3) {
            let (x, y, z) = (t[0], t[1], t[2]);
            if a(a(x, y), z) != a(x, a(y, z)) {
                return fail("additive associativity", &t);
            }
            if m(m(x, y), z) != m(x, m(y, z)) {
                return fail("multiplicative associativity", &t);
            }
            if m(x, a(y, z)) != a(m(x, y), m(x, z)) || m(a(x, y), z) != a(m(x, z), m(y, z)) {
                return fail("distributivity", &t);
            }
        }
        Ok(FiniteRing { name, size, add, mul, neg, zero, one })
    }

    pub fn zmod(n: usize) -> FiniteRing {
        let add = tuples(n, 2).map(|t| (t[0] + t[1]) % n).collect();
        let mul = tuples(n, 2).map(|t| (t[0] * t[1]) % n).collect();
        FiniteRing::new(format!("Z{n}"), n, add, mul, 0, 1 % n).expect("Z/n is a ring")
    }

    /// `F2[t]/(t^2)`, encoding `a + b t` as `a + 2b`.
    pub fn f2_dual() -> FiniteRing {
        let dec = |x: usize| (x & 1, x >> 1);
        let enc = |a: usize, b: usize| (a % 2) + 2 * (b % 2);
        let add = tuples(4, 2)
            .map(|t| {
                let ((a, b), (c, d)) = (dec(t[0]), dec(t[1]));
                enc(a + c, b + d)
            })
            .collect();
        let mul = tuples(4, 2)
            .map(|t| {
                let ((a, b), (c, d)) = (dec(t[0]), dec(t[1]));
                enc(a * c, a * d + b * c)
            })
            .collect();
        FiniteRing::new("F2[t]/t2", 4, add, mul, 0, 1).expect("dual numbers form a ring")
    }

    /// Upper-triangular 2x2 matrices over F2; `[[a,b],[0,c]]` is `a + 2b + 4c`.
    pub fn upper_triangular_f2() -> FiniteRing {
        let dec = |x: usize| (x & 1, (x >> 1) & 1, (x >> 2) & 1);
        let enc = |a: usize, b: usize, c: usize| (a % 2) + 2 * (b % 2) + 4 * (c % 2);
        let add = tuples(8, 2)
            .map(|t| {
                let ((a, b, c), (d, e, f)) = (dec(t[0]), dec(t[1]));
                enc(a + d, b + e, c + f)
            })
            .collect();
        let mul = tuples(8, 2)
            .map(|t| {
                let ((a, b, c), (d, e, f)) = (dec(t[0]), dec(t[1]));
                enc(a * d, a * e + b * f, c * f)
            })
            .collect();
        FiniteRing::new("UT2(F2)", 8, add, mul, 0, 5).expect("upper-triangular matrices form a ring")
    }

    pub fn opposite(&self) -> FiniteRing {
        let n = self.size;
        let mul = tuples(n, 2).map(|t| self.mul(t[1], t[0])).collect();
        FiniteRing { name: format!("{}^op", self.name), mul, ..self.clone() }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn is_commutative(&self) -> bool {
        tuples(self.size, 2).all(|t| self.mul(t[0], t[1]) == self.mul(t[1], t[0]))
    }

    /// Additive order of 1, the characteristic.
    pub fn characteristic(&self) -> usize {
        let mut x = self.one;
        let mut k = 1;
        while x != self.zero {
            x = self.add(x, self.one);
            k += 1;
        }
        k
    }

    /// `k * 1` for an integer `k`.
    pub fn from_int(&self, k: i64) -> usize {
        let c = self.characteristic() as i64;
        let k = k.rem_euclid(c);
        (0..k).fold(self.zero, |acc, _| self.add(acc, self.one))
    }

    /// A generating set of the ring under `+` and `*`, chosen greedily.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut reached = vec![false; self.size];
        let close = |reached: &mut Vec<bool>| loop {
            let members: Vec<usize> = (0..self.size).filter(|&x| reached[x]).collect();
            let mut grew = false;
            for &x in &members {
                for &y in &members {
                    for v in [self.add(x, y), self.mul(x, y)] {
                        if !reached[v] {
                            reached[v] = true;
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                break;
            }
        };
        reached[self.zero] = true;
        reached[self.one] = true;
        close(&mut reached);
        for x in 0..self.size {
            if !reached[x] {
                gens.push(x);
                reached[x] = true;
                close(&mut reached);
            }
        }
        gens
    }

    /// Whether `f` (a table `self -> other`) preserves `+`, `*` and `1`.
    pub fn is_hom_to(&self, other: &FiniteRing, f: &[usize]) -> Result<()> {
        if f.len() != self.size || f.iter().any(|&v| v >= other.size) {
            return Err(Error::NotRingHom("table has the wrong shape".into()));
        }
        if f[self.one] != other.one {
            return Err(Error::NotRingHom("1 is not preserved".into()));
        }
        for t in tuples(self.size, 2) {
            let (x, y) = (t[0], t[1]);
            if f[self.add(x, y)] != other.add(f[x], f[y]) || f[self.mul(x, y)] != other.mul(f[x], f[y]) {
                return Err(Error::NotRingHom(format!("fails at {t:?}")));
            }
        }
        Ok(())
    }
}

/// Ops of the theory of left modules: `plus`, `zero`, `neg`, then `sc<r>`
/// for every ring element `r`.
pub fn module_signature(ring: &FiniteRing) -> Signature {
    let mut ops: Vec<(String, usize)> = vec![("plus".into(), 2), ("zero".into(), 0), ("neg".into(), 1)];
    ops.extend((0..ring.size()).map(|r| (format!("sc{r}"), 1)));
    Signature::new(ops).expect("distinct names")
}

/// Op index of the scalar `r` in [`module_signature`].
pub const fn scalar_op(r: usize) -> usize {
    3 + r
}

/// A left module, stored as a finite algebra over [`module_signature`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModule {
    ring: Arc<FiniteRing>,
    alg: Arc<FiniteAlgebra>,
}

impl FiniteModule {
    /// `add` is row-major on the carrier, `act[r * size + m]` is `r m`.
    pub fn new(
        name: impl Into<String>,
        ring: Arc<FiniteRing>,
        size: usize,
        add: Vec<usize>,
        act: Vec<usize>,
    ) -> Result<Self> {
        let module = Self::new_unchecked(name, ring, size, add, act)?;
        module.check_axioms()?;
        Ok(module)
    }

    /// Skips the exhaustive axiom check; used for modules built by
    /// construction.
    pub fn new_unchecked(
        name: impl Into<String>,
        ring: Arc<FiniteRing>,
        size: usize,
        add: Vec<usize>,
        act: Vec<usize>,
    ) -> Result<Self> {
        let name = name.into();
        if size == 0 || add.len() != size * size || act.len() != ring.size() * size {
            return Err(Error::InvalidTable(format!("module {name}: malformed tables")));
        }
        if add.iter().chain(&act).any(|&v| v >= size) {
            return Err(Error::InvalidTable(format!("module {name}: entry outside carrier")));
        }
        let zero = (0..size)
            .find(|&z| (0..size).all(|x| add[z * size + x] == x))
            .ok_or_else(|| Error::AxiomViolation(format!("module {name}: no additive unit")))?;
        let mut neg = vec![0; size];
        for (x, slot) in neg.iter_mut().enumerate() {
            *slot = (0..size)
                .find(|&y| add[x * size + y] == zero)
                .ok_or_else(|| Error::AxiomViolation(format!("module {name}: {x} has no inverse")))?;
        }
        let mut tables = vec![add, vec![zero], neg];
        for r in 0..ring.size() {
            tables.push(act[r * size..(r + 1) * size].to_vec());
        }
        let alg = FiniteAlgebra::new(name, module_signature(&ring), size, tables)?;
        Ok(FiniteModule { ring, alg: Arc::new(alg) })
    }

    pub fn from_algebra(ring: Arc<FiniteRing>, alg: Arc<FiniteAlgebra>) -> Result<Self> {
        if *alg.signature() != module_signature(&ring) {
            return Err(Error::SignatureMismatch(format!("{} is not over {}", alg.name, ring.name)));
        }
        Ok(FiniteModule { ring, alg })
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.size();
        let r = &self.ring;
        let fail =
            |what: &str, t: &[usize]| Err(Error::AxiomViolation(format!("module {}: {what} at {t:?}", self.name())));
        for t in tuples(n, 3) {
            if self.add(self.add(t[0], t[1]), t[2]) != self.add(t[0], self.add(t[1], t[2])) {
                return fail("associativity", &t);
            }
        }
        for t in tuples(n, 2) {
            if self.add(t[0], t[1]) != self.add(t[1], t[0]) {
                return fail("commutativity", &t);
            }
        }
        for x in 0..n {
            if self.act(r.one(), x) != x {
                return fail("unit action", &[x]);
            }
        }
        for s in 0..r.size() {
            for t in tuples(n, 2) {
                if self.act(s, self.add(t[0], t[1])) != self.add(self.act(s, t[0]), self.act(s, t[1])) {
                    return fail("additivity of scalars", &[s, t[0], t[1]]);
                }
            }
            for q in 0..r.size() {
                for x in 0..n {
                    if self.act(r.add(s, q), x) != self.add(self.act(s, x), self.act(q, x)) {
                        return fail("distributivity over ring addition", &[s, q, x]);
                    }
                    if self.act(r.mul(s, q), x) != self.act(s, self.act(q, x)) {
                        return fail("compatibility with ring multiplication", &[s, q, x]);
                    }
                }
            }
        }
        Ok(())
    }

    /// `Z/k` as a module over `Z/n`, for `k | n`.
    pub fn cyclic(ring: Arc<FiniteRing>, k: usize) -> Result<Self> {
        let n = ring.size();
        if ring.characteristic() != n {
            return Err(Error::RingMismatch);
        }
        if k == 0 || !n.is_multiple_of(k) {
            return Err(Error::InvalidTable(format!("Z{k} is not a module over {}", ring.name)));
        }
        let ints: Vec<usize> =
            (0..n).map(|r| (0..n).find(|&v| ring.from_int(v as i64) == r).expect("cyclic ring")).collect();
        let add = tuples(k, 2).map(|t| (t[0] + t[1]) % k).collect();
        let act = ints.iter().flat_map(|&v| (0..k).map(move |m| (v * m) % k)).collect();
        Self::new(format!("Z{k}"), ring, k, add, act)
    }

    /// The ring as a left module over itself.
    pub fn regular(ring: Arc<FiniteRing>) -> Self {
        let n = ring.size();
        let add = tuples(n, 2).map(|t| ring.add(t[0], t[1])).collect();
        let act = tuples(n, 2).map(|t| ring.mul(t[0], t[1])).collect();
        Self::new_unchecked(ring.name.clone(), ring, n, add, act).expect("regular module")
    }

    pub fn zero_module(ring: Arc<FiniteRing>) -> Self {
        let n = ring.size();
        Self::new_unchecked("0", ring, 1, vec![0], vec![0; n]).expect("zero module")
    }

    /// `a ⊕ b`, encoding `(x, y)` as `x * |b| + y`.
    pub fn direct_sum(a: &FiniteModule, b: &FiniteModule) -> Result<Self> {
        if a.ring != b.ring {
            return Err(Error::RingMismatch);
        }
        let m = b.size();
        let size = a.size() * m;
        let add = tuples(size, 2).map(|t| a.add(t[0] / m, t[1] / m) * m + b.add(t[0] % m, t[1] % m)).collect();
        let act = tuples(a.ring.size(), 1)
            .flat_map(|r| (0..size).map(move |x| a.act(r[0], x / m) * m + b.act(r[0], x % m)))
            .collect();
        Self::new_unchecked(format!("{}+{}", a.name(), b.name()), a.ring.clone(), size, add, act)
    }

    pub fn power(a: &FiniteModule, n: usize) -> Result<Self> {
        let mut out = FiniteModule::zero_module(a.ring.clone());
        for _ in 0..n {
            out = if out.size() == 1 { a.clone() } else { FiniteModule::direct_sum(&out, a)? };
        }
        Ok(out)
    }

    pub fn name(&self) -> &str {
        &self.alg.name
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.alg
    }

    pub fn size(&self) -> usize {
        self.alg.size()
    }

    pub fn zero(&self) -> usize {
        self.alg.table(1)[0]
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.alg.apply(0, &[a, b])
    }

    pub fn neg(&self, a: usize) -> usize {
        self.alg.table(2)[a]
    }

    pub fn act(&self, r: usize, a: usize) -> usize {
        self.alg.table(scalar_op(r))[a]
    }

    /// `k * a` for an integer `k`.
    pub fn times(&self, k: i64, a: usize) -> usize {
        let base = if k < 0 { self.neg(a) } else { a };
        (0..k.unsigned_abs()).fold(self.zero(), |acc, _| self.add(acc, base))
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        FiniteModule { ring: self.ring.clone(), alg: Arc::new((*self.alg).clone().renamed(name)) }
    }
}

/// `_S M_R`: commuting left `S` and right `R` actions on an abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    pub name: String,
    left_ring: Arc<FiniteRing>,
    right_ring: Arc<FiniteRing>,
    size: usize,
    add: Vec<usize>,
    /// `left[s * size + m] = s m`
    left: Vec<usize>,
    /// `right[m * |R| + r] = m r`
    right: Vec<usize>,
}

impl Bimodule {
    pub fn new(
        name: impl Into<String>,
        left_ring: Arc<FiniteRing>,
        right_ring: Arc<FiniteRing>,
        size: usize,
        add: Vec<usize>,
        left: Vec<usize>,
        right: Vec<usize>,
    ) -> Result<Self> {
        let b = Self::new_unchecked(name, left_ring, right_ring, size, add, left, right)?;
        b.left_module().check_axioms()?;
        b.right_module().check_axioms()?;
        for s in 0..b.left_ring.size() {
            for m in 0..size {
                for r in 0..b.right_ring.size() {
                    if b.act_right(b.act_left(s, m), r) != b.act_left(s, b.act_right(m, r)) {
                        return Err(Error::AxiomViolation(format!(
                            "bimodule {}: actions do not commute at {:?}",
                            b.name,
                            (s, m, r)
                        )));
                    }
                }
            }
        }
        Ok(b)
    }

    pub fn new_unchecked(
        name: impl Into<String>,
        left_ring: Arc<FiniteRing>,
        right_ring: Arc<FiniteRing>,
        size: usize,
        add: Vec<usize>,
        left: Vec<usize>,
        right: Vec<usize>,
    ) -> Result<Self> {
        let name = name.into();
        if size == 0
            || add.len() != size * size
            || left.len() != left_ring.size() * size
            || right.len() != right_ring.size() * size
        {
            return Err(Error::InvalidTable(format!("bimodule {name}: malformed tables")));
        }
        if add.iter().chain(&left).chain(&right).any(|&v| v >= size) {
            return Err(Error::InvalidTable(format!("bimodule {name}: entry outside carrier")));
        }
        Ok(Bimodule { name, left_ring, right_ring, size, add, left, right })
    }

    /// `R` over `(R, R)`.
    pub fn regular(ring: Arc<FiniteRing>) -> Self {
        let n = ring.size();
        let add = tuples(n, 2).map(|t| ring.add(t[0], t[1])).collect();
        let mul: Vec<usize> = tuples(n, 2).map(|t| ring.mul(t[0], t[1])).collect();
        Self::new_unchecked(ring.name.clone(), ring.clone(), ring, n, add, mul.clone(), mul).expect("regular bimodule")
    }

    /// A left `S`-module whose right `R`-action comes from a ring hom
    /// `f: R -> S` followed by multiplication, i.e. `S` itself as `_S S_R`.
    pub fn along_hom(left: Arc<FiniteRing>, right: Arc<FiniteRing>, f: &[usize]) -> Result<Self> {
        right.is_hom_to(&left, f)?;
        let n = left.size();
        let add = tuples(n, 2).map(|t| left.add(t[0], t[1])).collect();
        let l = tuples(n, 2).map(|t| left.mul(t[0], t[1])).collect();
        let r = tuples(n, 1)
            .flat_map(|m| (0..right.size()).map(move |x| (m[0], x)))
            .map(|(m, x)| left.mul(m, f[x]))
            .collect();
        Self::new_unchecked(left.name.clone(), left, right, n, add, l, r)
    }

    /// The same ring acting on both sides of a left module over a
    /// commutative ring.
    pub fn symmetric(m: &FiniteModule) -> Result<Self> {
        let ring = m.ring().clone();
        if !ring.is_commutative() {
            return Err(Error::NonCommutative(ring.name.clone()));
        }
        let n = m.size();
        let add = tuples(n, 2).map(|t| m.add(t[0], t[1])).collect();
        let left =
            tuples(ring.size(), 1).flat_map(|r| (0..n).map(move |x| (r[0], x))).map(|(r, x)| m.act(r, x)).collect();
        let right =
            tuples(n, 1).flat_map(|x| (0..ring.size()).map(move |r| (x[0], r))).map(|(x, r)| m.act(r, x)).collect();
        Self::new_unchecked(m.name(), ring.clone(), ring, n, add, left, right)
    }

    pub fn zero(left: Arc<FiniteRing>, right: Arc<FiniteRing>) -> Self {
        let (ls, rs) = (left.size(), right.size());
        Self::new_unchecked("0", left, right, 1, vec![0], vec![0; ls], vec![0; rs]).expect("zero bimodule")
    }

    pub fn left_ring(&self) -> &Arc<FiniteRing> {
        &self.left_ring
    }

    pub fn right_ring(&self) -> &Arc<FiniteRing> {
        &self.right_ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    pub fn act_left(&self, s: usize, m: usize) -> usize {
        self.left[s * self.size + m]
    }

    pub fn act_right(&self, m: usize, r: usize) -> usize {
        self.right[m * self.right_ring.size() + r]
    }

    pub fn left_module(&self) -> FiniteModule {
        FiniteModule::new_unchecked(
            self.name.clone(),
            self.left_ring.clone(),
            self.size,
            self.add.clone(),
            self.left.clone(),
        )
        .expect("left module of a bimodule")
    }

    /// The right action as a left module over the opposite ring.
    pub fn right_module(&self) -> FiniteModule {
        let r = self.right_ring.size();
        let act = (0..r).flat_map(|x| (0..self.size).map(move |m| (x, m))).map(|(x, m)| self.act_right(m, x)).collect();
        FiniteModule::new_unchecked(
            self.name.clone(),
            Arc::new(self.right_ring.opposite()),
            self.size,
            self.add.clone(),
            act,
        )
        .expect("right module of a bimodule")
    }

    pub fn zero_elem(&self) -> usize {
        self.act_right(0, self.right_ring.zero())
    }

    /// Builds the tables from functions; checked like [`Bimodule::new`].
    pub fn from_fn(
        name: impl Into<String>,
        left_ring: Arc<FiniteRing>,
        right_ring: Arc<FiniteRing>,
        size: usize,
        add: impl Fn(usize, usize) -> usize,
        left: impl Fn(usize, usize) -> usize,
        right: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let add_t = tuples(size, 2).map(|t| add(t[0], t[1])).collect();
        let left_t =
            (0..left_ring.size()).flat_map(|s| (0..size).map(move |m| (s, m))).map(|(s, m)| left(s, m)).collect();
        let rs = right_ring.size();
        let right_t = (0..size).flat_map(|m| (0..rs).map(move |r| (m, r))).map(|(m, r)| right(m, r)).collect();
        Self::new(name, left_ring, right_ring, size, add_t, left_t, right_t)
    }

    /// Both actions as one finite algebra with ops `plus`, `zero`, `neg`,
    /// `l<s>` and `r<r>`, so that bimodule homs are algebra homs.
    pub fn algebra(&self) -> FiniteAlgebra {
        let (ls, rs) = (self.left_ring.size(), self.right_ring.size());
        let mut ops: Vec<(String, usize)> = vec![("plus".into(), 2), ("zero".into(), 0), ("neg".into(), 1)];
        ops.extend((0..ls).map(|s| (format!("l{s}"), 1)));
        ops.extend((0..rs).map(|r| (format!("r{r}"), 1)));
        let sig = Signature::new(ops).expect("distinct names");
        let zero = self.zero_elem();
        FiniteAlgebra::from_fn(self.name.clone(), sig, self.size, |k, a| match k {
            0 => self.add(a[0], a[1]),
            1 => zero,
            2 => (0..self.size).find(|&y| self.add(a[0], y) == zero).expect("additive inverse"),
            k if k < 3 + ls => self.act_left(k - 3, a[0]),
            k => self.act_right(a[0], k - 3 - ls),
        })
        .expect("bimodule tables")
    }

    /// `{m | r m = m r for all r}` when both rings agree.
    pub fn centralizer(&self) -> Result<Vec<usize>> {
        if self.left_ring != self.right_ring {
            return Err(Error::RingMismatch);
        }
        Ok((0..self.size)
            .filter(|&m| (0..self.left_ring.size()).all(|r| self.act_left(r, m) == self.act_right(m, r)))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn built_in_rings_satisfy_the_axioms() {
        assert_eq!(FiniteRing::zmod(4).characteristic(), 4);
        assert!(FiniteRing::f2_dual().is_commutative());
        assert!(!FiniteRing::upper_triangular_f2().is_commutative());
    }

    #[test]
    fn cyclic_modules_check() {
        let z4 = Arc::new(FiniteRing::zmod(4));
        let m = FiniteModule::cyclic(z4.clone(), 2).unwrap();
        assert_eq!(m.act(3, 1), 1);
        assert!(FiniteModule::cyclic(z4, 3).is_err());
    }

    #[test]
    fn regular_bimodule_centre_of_upper_triangular() {
        let r = Arc::new(FiniteRing::upper_triangular_f2());
        let b = Bimodule::regular(r);
        assert_eq!(b.centralizer().unwrap(), vec![0, 5]);
    }
}
