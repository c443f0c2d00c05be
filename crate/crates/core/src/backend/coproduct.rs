//! Coproducts and copairing.

use std::collections::VecDeque;
use std::sync::Arc;

use super::{BackendKind, Elem, Hom, Obj, VarietyBackend};
use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::tensor::{Additive, Balance, Tensor};
use crate::util::tuple_index;

/// Largest tensor product of finite algebras tabulated in full.
pub const ALGEBRA_TENSOR_CAP: usize = 1 << 12;

/// `A_1 + .. + A_n` with injections `ν_k : A_k → ΣA`.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub obj: Obj,
    pub injections: Vec<Hom>,
    pub parts: Vec<Obj>,
}

impl VarietyBackend {
    pub fn coproduct(&self, parts: &[Obj]) -> Result<Coproduct> {
        if let [only] = parts {
            return Ok(Coproduct { obj: only.clone(), injections: vec![self.identity(only)], parts: parts.to_vec() });
        }
        if parts.iter().all(Obj::is_free) {
            return Ok(self.free_coproduct(parts));
        }
        let algs: Vec<Arc<FiniteAlgebra>> = parts
            .iter()
            .map(|p| p.algebra().cloned().ok_or_else(|| self.unsupported("coproducts mixing free and finite objects")))
            .collect::<Result<_>>()?;
        for a in &algs {
            if *a.signature() != self.theory.signature {
                return Err(Error::SignatureMismatch(format!("{} is not a {} algebra", a.name, self.name())));
            }
        }
        let (alg, tables) = match &self.kind {
            BackendKind::Set => disjoint_union(&algs)?,
            BackendKind::Pointed => wedge(&algs)?,
            BackendKind::CMon | BackendKind::Ab | BackendKind::Module(_) => self.biproduct(&algs)?,
            BackendKind::CSem => unitarized_product(&algs)?,
            BackendKind::CAlg(_) => self.algebra_tensor(&algs)?,
            BackendKind::Mon | BackendKind::Grp | BackendKind::CRing => {
                return Err(self.unsupported("finite coproducts"));
            }
        };
        let obj = Obj::Finite(Arc::new(alg));
        let injections = parts
            .iter()
            .zip(tables)
            .map(|(p, t)| Hom {
                domain: p.clone(),
                codomain: obj.clone(),
                images: t.into_iter().map(Elem::Fin).collect(),
            })
            .collect();
        Ok(Coproduct { obj, injections, parts: parts.to_vec() })
    }

    fn unsupported(&self, what: &str) -> Error {
        Error::CapabilityUnsupported { backend: self.name(), what: what.to_string() }
    }

    fn free_coproduct(&self, parts: &[Obj]) -> Coproduct {
        let mut gens = Vec::new();
        let mut ranges = Vec::new();
        for (k, p) in parts.iter().enumerate() {
            let g = p.gens().expect("free");
            ranges.push((gens.len(), g.len()));
            gens.extend(g.iter().map(|x| x.tagged(k + 1)));
        }
        let total = gens.len();
        let obj = Obj::free(gens);
        let injections = parts
            .iter()
            .zip(ranges)
            .map(|(p, (start, len))| Hom {
                domain: p.clone(),
                codomain: obj.clone(),
                images: (start..start + len).map(|i| self.free_gen(total, i)).collect(),
            })
            .collect();
        Coproduct { obj, injections, parts: parts.to_vec() }
    }

    /// `[f_1, .., f_n] : ΣA_k → B`.
    pub fn copair(&self, homs: &[Hom]) -> Result<Hom> {
        let parts: Vec<Obj> = homs.iter().map(|h| h.domain.clone()).collect();
        let cod = match homs.first() {
            Some(h) => h.codomain.clone(),
            None => return Err(Error::HomMismatch("copair of no homs needs an explicit codomain".into())),
        };
        let c = self.coproduct(&parts)?;
        self.copair_on(&c, homs, &cod)
    }

    /// Copairing out of an already built coproduct.
    pub fn copair_on(&self, c: &Coproduct, homs: &[Hom], codomain: &Obj) -> Result<Hom> {
        if homs.len() != c.parts.len() {
            return Err(Error::HomMismatch(format!("{} homs for {} summands", homs.len(), c.parts.len())));
        }
        for (h, p) in homs.iter().zip(&c.parts) {
            if h.domain != *p || h.codomain != *codomain {
                return Err(Error::HomMismatch(format!(
                    "leg {} -> {} does not fit {} -> {}",
                    h.domain.label(),
                    h.codomain.label(),
                    p.label(),
                    codomain.label()
                )));
            }
        }
        match &c.obj {
            Obj::Free(_) if c.parts.len() == 1 => Ok(homs[0].clone()),
            Obj::Free(_) => {
                let images = homs.iter().flat_map(|h| h.images.iter().cloned()).collect();
                Ok(Hom { domain: c.obj.clone(), codomain: codomain.clone(), images })
            }
            Obj::Finite(alg) => {
                let table = self.extend_by_closure(alg, c, homs, codomain)?;
                Ok(Hom { domain: c.obj.clone(), codomain: codomain.clone(), images: table })
            }
        }
    }

    /// Defines the copairing on the injected elements and propagates it
    /// through every op; any clash means the legs admit no copairing.
    fn extend_by_closure(&self, alg: &FiniteAlgebra, c: &Coproduct, homs: &[Hom], cod: &Obj) -> Result<Vec<Elem>> {
        let n = alg.size();
        let mut value: Vec<Option<Elem>> = vec![None; n];
        let mut queue = VecDeque::new();
        let mut defined = Vec::new();
        let set = |x: usize, v: Elem, value: &mut Vec<Option<Elem>>, queue: &mut VecDeque<usize>| -> Result<()> {
            match &value[x] {
                Some(old) if *old != v => Err(Error::HomMismatch(format!("copairing clashes at element {x}"))),
                Some(_) => Ok(()),
                None => {
                    value[x] = Some(v);
                    queue.push_back(x);
                    Ok(())
                }
            }
        };
        for (nu, f) in c.injections.iter().zip(homs) {
            let size = nu.domain.algebra().map(|a| a.size()).unwrap_or(0);
            for a in 0..size {
                let Elem::Fin(x) = nu.images[a] else { unreachable!("finite injection") };
                set(x, f.images[a].clone(), &mut value, &mut queue)?;
            }
        }
        let ops: Vec<(usize, usize)> = alg.signature().ops().iter().map(|o| o.arity).enumerate().collect();
        for &(k, arity) in &ops {
            if arity == 0 {
                let v = self.apply(cod, k, &[])?;
                set(alg.apply(k, &[]), v, &mut value, &mut queue)?;
            }
        }
        while let Some(x) = queue.pop_front() {
            defined.push(x);
            let vx = value[x].clone().expect("queued elements are defined");
            for &(k, arity) in &ops {
                match arity {
                    0 => {}
                    1 => {
                        let v = self.apply(cod, k, std::slice::from_ref(&vx))?;
                        set(alg.apply(k, &[x]), v, &mut value, &mut queue)?;
                    }
                    2 => {
                        for &y in &defined {
                            let vy = value[y].clone().expect("defined");
                            let v = self.apply(cod, k, &[vx.clone(), vy.clone()])?;
                            set(alg.table(k)[tuple_index(n, &[x, y])], v, &mut value, &mut queue)?;
                            let v = self.apply(cod, k, &[vy, vx.clone()])?;
                            set(alg.table(k)[tuple_index(n, &[y, x])], v, &mut value, &mut queue)?;
                        }
                    }
                    _ => return Err(self.unsupported("copairing through ops of arity above 2")),
                }
            }
        }
        value
            .into_iter()
            .enumerate()
            .map(|(x, v)| v.ok_or_else(|| Error::HomMismatch(format!("element {x} is not generated by the summands"))))
            .collect()
    }

    fn biproduct(&self, algs: &[Arc<FiniteAlgebra>]) -> Result<(FiniteAlgebra, Vec<Vec<usize>>)> {
        let zero_op = self.op_index("zero")?;
        let sizes: Vec<usize> = algs.iter().map(|a| a.size()).collect();
        let total: usize = sizes.iter().product();
        let decode = |mut x: usize| {
            let mut out = vec![0; sizes.len()];
            for k in (0..sizes.len()).rev() {
                out[k] = x % sizes[k];
                x /= sizes[k];
            }
            out
        };
        let encode = |v: &[usize]| v.iter().zip(&sizes).fold(0, |acc, (&c, &s)| acc * s + c);
        let name = algs.iter().map(|a| a.name.clone()).collect::<Vec<_>>().join("+");
        let alg = FiniteAlgebra::from_fn(name, self.theory.signature.clone(), total, |k, args| {
            let decoded: Vec<Vec<usize>> = args.iter().map(|&x| decode(x)).collect();
            let out: Vec<usize> = algs
                .iter()
                .enumerate()
                .map(|(i, a)| a.apply(k, &decoded.iter().map(|d| d[i]).collect::<Vec<_>>()))
                .collect();
            encode(&out)
        })?;
        let zeros: Vec<usize> = algs.iter().map(|a| a.apply(zero_op, &[])).collect();
        let tables = algs
            .iter()
            .enumerate()
            .map(|(k, a)| {
                (0..a.size())
                    .map(|x| {
                        let mut v = zeros.clone();
                        v[k] = x;
                        encode(&v)
                    })
                    .collect()
            })
            .collect();
        Ok((alg, tables))
    }

    fn algebra_tensor(&self, algs: &[Arc<FiniteAlgebra>]) -> Result<(FiniteAlgebra, Vec<Vec<usize>>)> {
        let Some((first, rest)) = algs.split_first() else {
            // The initial algebra R itself.
            let ring = self.ring().expect("cAlg has a ring");
            let alg = FiniteAlgebra::from_fn(ring.name.clone(), self.theory.signature.clone(), ring.size(), |k, a| {
                self.ring_op(k, a)
            })?;
            return Ok((alg, Vec::new()));
        };
        let mut acc = (**first).clone();
        let mut tables: Vec<Vec<usize>> = vec![(0..first.size()).collect()];
        for b in rest {
            let (t, left, right) = self.tensor_pair(&acc, b)?;
            for table in tables.iter_mut() {
                for x in table.iter_mut() {
                    *x = left[*x];
                }
            }
            tables.push(right);
            acc = t;
        }
        Ok((acc, tables))
    }

    /// The op `k` of `cAlg(R)` evaluated in `R` itself.
    fn ring_op(&self, k: usize, a: &[usize]) -> usize {
        let r = self.ring().expect("ring");
        match self.role(k) {
            super::Role::Plus => r.add(a[0], a[1]),
            super::Role::Zero => r.zero(),
            super::Role::Neg => r.neg(a[0]),
            super::Role::Times => r.mul(a[0], a[1]),
            super::Role::One => r.one(),
            super::Role::Scalar(s) => r.mul(s, a[0]),
            _ => unreachable!("not a cAlg op"),
        }
    }

    /// `A ⊗_R B` with `a ↦ a ⊗ 1` and `b ↦ 1 ⊗ b`.
    pub fn tensor_pair(&self, a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<(FiniteAlgebra, Vec<usize>, Vec<usize>)> {
        let ring = self.ring().ok_or_else(|| self.unsupported("algebra tensor products"))?;
        let [plus, zero, times, one] = ["plus", "zero", "times", "one"].map(|o| self.op_index(o).expect("cAlg op"));
        let sc = |r: usize| self.op_index(&format!("sc{r}")).expect("scalar op");
        let add_a = |x: usize, y: usize| a.apply(plus, &[x, y]);
        let add_b = |x: usize, y: usize| b.apply(plus, &[x, y]);
        let right = |x: usize, r: usize| a.apply(sc(r), &[x]);
        let left = |r: usize, y: usize| b.apply(sc(r), &[y]);
        let t = Tensor::new(
            &Additive { size: a.size(), zero: a.apply(zero, &[]), add: &add_a },
            &Additive { size: b.size(), zero: b.apply(zero, &[]), add: &add_b },
            Some(&Balance { ring, right: &right, left: &left }),
        )?;
        if t.size > ALGEBRA_TENSOR_CAP {
            return Err(Error::CapExceeded(format!(
                "{}(x){} has {} elements (cap {ALGEBRA_TENSOR_CAP})",
                a.name, b.name, t.size
            )));
        }
        let me = Additive { size: t.size, zero: t.zero, add: &|x, y| t.add(x, y) };
        let times_table = t.induce_binary(|x, y, x2, y2| t.pure(a.apply(times, &[x, x2]), b.apply(times, &[y, y2])));
        let scalars: Vec<Vec<usize>> =
            (0..ring.size()).map(|r| t.induce(&me, |x, y| t.pure(a.apply(sc(r), &[x]), y))).collect();
        let (one_a, one_b) = (a.apply(one, &[]), b.apply(one, &[]));
        let unit = t.pure(one_a, one_b);
        let n = t.size;
        let alg =
            FiniteAlgebra::from_fn(format!("{}(x){}", a.name, b.name), self.theory.signature.clone(), n, |k, args| {
                match self.role(k) {
                    super::Role::Plus => t.add(args[0], args[1]),
                    super::Role::Zero => t.zero,
                    super::Role::Neg => t.neg(args[0]),
                    super::Role::Times => times_table[args[0] * n + args[1]],
                    super::Role::One => unit,
                    super::Role::Scalar(r) => scalars[r][args[0]],
                    _ => unreachable!("not a cAlg op"),
                }
            })?;
        let left_inj = (0..a.size()).map(|x| t.pure(x, one_b)).collect();
        let right_inj = (0..b.size()).map(|y| t.pure(one_a, y)).collect();
        Ok((alg, left_inj, right_inj))
    }
}

fn disjoint_union(algs: &[Arc<FiniteAlgebra>]) -> Result<(FiniteAlgebra, Vec<Vec<usize>>)> {
    let mut tables = Vec::new();
    let mut offset = 0;
    for a in algs {
        tables.push((offset..offset + a.size()).collect());
        offset += a.size();
    }
    let sig = algs[0].signature().clone();
    Ok((FiniteAlgebra::new("union", sig, offset, vec![])?, tables))
}

/// Pointed sets glued at their base points; element 0 is the base.
fn wedge(algs: &[Arc<FiniteAlgebra>]) -> Result<(FiniteAlgebra, Vec<Vec<usize>>)> {
    let mut tables = Vec::new();
    let mut next = 1;
    for a in algs {
        let base = a.apply(0, &[]);
        let table: Vec<usize> = (0..a.size())
            .map(|x| {
                if x == base {
                    0
                } else {
                    next += 1;
                    next - 1
                }
            })
            .collect();
        tables.push(table);
    }
    let sig = algs[0].signature().clone();
    Ok((FiniteAlgebra::new("wedge", sig, next, vec![vec![0]])?, tables))
}

/// `(S_1¹ × .. × S_n¹) \ {(1, .., 1)}`; within component `k` the value
/// `|S_k|` stands for the adjoined unit, and the all-unit tuple is the last
/// index, hence excluded.
fn unitarized_product(algs: &[Arc<FiniteAlgebra>]) -> Result<(FiniteAlgebra, Vec<Vec<usize>>)> {
    let radix: Vec<usize> = algs.iter().map(|a| a.size() + 1).collect();
    let total = radix.iter().product::<usize>() - 1;
    let decode = |mut x: usize| {
        let mut out = vec![0; radix.len()];
        for k in (0..radix.len()).rev() {
            out[k] = x % radix[k];
            x /= radix[k];
        }
        out
    };
    let encode = |v: &[usize]| v.iter().zip(&radix).fold(0, |acc, (&c, &r)| acc * r + c);
    let alg = FiniteAlgebra::from_fn("cSem-sum", algs[0].signature().clone(), total, |k, args| {
        let (u, v) = (decode(args[0]), decode(args[1]));
        let out: Vec<usize> = algs
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let unit = a.size();
                match (u[i] == unit, v[i] == unit) {
                    (true, _) => v[i],
                    (_, true) => u[i],
                    _ => a.apply(k, &[u[i], v[i]]),
                }
            })
            .collect();
        encode(&out)
    })?;
    let tables = algs
        .iter()
        .enumerate()
        .map(|(k, a)| {
            (0..a.size())
                .map(|x| {
                    let mut v: Vec<usize> = algs.iter().map(|b| b.size()).collect();
                    v[k] = x;
                    encode(&v)
                })
                .collect()
        })
        .collect();
    Ok((alg, tables))
}
