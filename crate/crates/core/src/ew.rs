//! Bimodules as the functors between module categories: the tensor and hom
//! functors, their adjunction, the left adjoint rebuilt from a presentation,
//! change of rings, composition, and the free and cofree bimodules.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::abgroup::{Decomposition, InvariantFactors, PresentedAbGroup};
use crate::algebra::{enumerate_hom_tables, find_isomorphism, FiniteHom};
use crate::backend::{Elem, Obj, VarietyBackend};
use crate::coalgebra::Coalgebra;
use crate::error::{Error, Result};
use crate::ring::{Bimodule, FiniteModule, FiniteRing};
use crate::tensor::{Additive, Balance, Tensor};
use crate::util::tuples;

/// Largest free module `R^{|A|}` the presentation route will enumerate.
pub const FREE_CAP: usize = 1 << 16;
/// Largest hom-set candidate space searched by the adjunction checks.
pub const HOM_CAP: usize = 1 << 22;
/// Largest module whose tables are materialized.
pub const MODULE_TABLE_CAP: usize = 1 << 12;

fn same_ring(a: &FiniteRing, b: &FiniteRing) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

fn additive(m: &FiniteModule) -> impl Fn(usize, usize) -> usize + '_ {
    move |a, b| m.add(a, b)
}

/// An `(S, R)`-bimodule as a coalgebra for the theory of right `R`-modules
/// in left `S`-modules: `plus` is the diagonal `m ↦ (m, m)`, `zero` the map
/// to the initial module, `neg` negation and `sc<r>` the right action.
/// With `S = R` and the identity theory morphism, `G` is the centralizer.
pub fn bimodule_coalgebra(m: &Bimodule) -> Result<Coalgebra> {
    let backend = VarietyBackend::module(m.left_ring().clone());
    let cotheory = VarietyBackend::module(m.right_ring().clone()).theory().clone();
    let carrier = Obj::Finite(m.left_module().algebra().clone());
    let n = m.size();
    let fin = |f: &dyn Fn(usize) -> usize| (0..n).map(|x| Elem::Fin(f(x))).collect::<Vec<_>>();
    let two = backend.copower(&carrier, 2)?;
    let plus_op = backend.op_index("plus")?;
    let diagonal = (0..n)
        .map(|x| {
            let legs =
                two.injections.iter().map(|nu| backend.eval_hom(nu, &Elem::Fin(x))).collect::<Result<Vec<_>>>()?;
            backend.apply(&two.obj, plus_op, &legs)
        })
        .collect::<Result<Vec<_>>>()?;
    let zero = backend.copower(&carrier, 0)?;
    let zero_image = backend.apply(&zero.obj, backend.op_index("zero")?, &[])?;
    let mut coops = vec![
        backend.hom_from_table(&carrier, &two.obj, diagonal)?,
        backend.hom_from_table(&carrier, &zero.obj, vec![zero_image; n])?,
        backend.hom_from_table(&carrier, &carrier, fin(&|x| neg_of(m, x)))?,
    ];
    for r in 0..m.right_ring().size() {
        coops.push(backend.hom_from_table(&carrier, &carrier, fin(&|x| m.act_right(x, r)))?);
    }
    Coalgebra::new(m.name.clone(), cotheory, backend, carrier, coops)
}

fn neg_of(m: &Bimodule, x: usize) -> usize {
    let zero = m.zero_elem();
    (0..m.size()).find(|&y| m.add(x, y) == zero).expect("additive inverse")
}

/// `M ⊗_R X` as a left `S`-module together with `(m, x) ↦ m ⊗ x`.
#[derive(Clone, Debug)]
pub struct TensorModule {
    pub module: FiniteModule,
    tensor: Tensor,
}

impl TensorModule {
    pub fn pure(&self, m: usize, x: usize) -> usize {
        self.tensor.pure(m, x)
    }

    pub fn inner(&self) -> &Tensor {
        &self.tensor
    }

    /// `M ⊗ g` for an additive, balanced-compatible map `g` on the right
    /// factor.
    pub fn map_right(&self, g: impl Fn(usize) -> usize) -> Vec<usize> {
        let t = &self.tensor;
        let add = |a, b| t.add(a, b);
        t.induce(&Additive { size: t.size, zero: t.zero, add: &add }, |m, x| t.pure(m, g(x)))
    }
}

pub fn tensor(m: &Bimodule, x: &FiniteModule) -> Result<TensorModule> {
    same_ring(m.right_ring(), x.ring())?;
    let madd = |a, b| m.add(a, b);
    let xadd = additive(x);
    let right = |a, r| m.act_right(a, r);
    let left = |r, y| x.act(r, y);
    let t = Tensor::new(
        &Additive { size: m.size(), zero: m.zero_elem(), add: &madd },
        &Additive { size: x.size(), zero: x.zero(), add: &xadd },
        Some(&Balance { ring: x.ring(), right: &right, left: &left }),
    )?;
    if t.size > MODULE_TABLE_CAP {
        return Err(Error::CapExceeded(format!(
            "{}(x){} has {} elements (cap {MODULE_TABLE_CAP})",
            m.name,
            x.name(),
            t.size
        )));
    }
    let add = |a, b| t.add(a, b);
    let me = Additive { size: t.size, zero: t.zero, add: &add };
    let s = m.left_ring();
    let mut act = Vec::with_capacity(s.size() * t.size);
    for sc in 0..s.size() {
        act.extend(t.induce(&me, |a, y| t.pure(m.act_left(sc, a), y)));
    }
    let module =
        FiniteModule::new_unchecked(format!("{}(x){}", m.name, x.name()), s.clone(), t.size, t.add_table(), act)?;
    Ok(TensorModule { module, tensor: t })
}

/// `Hom_S(M, Y)` as a left `R`-module, with the maps listed as tables.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub module: FiniteModule,
    pub maps: Vec<Vec<usize>>,
}

impl HomModule {
    pub fn index_of(&self, table: &[usize]) -> Option<usize> {
        self.maps.binary_search_by(|m| m.as_slice().cmp(table)).ok()
    }
}

pub fn hom_module(m: &Bimodule, y: &FiniteModule) -> Result<HomModule> {
    same_ring(m.left_ring(), y.ring())?;
    let maps = enumerate_hom_tables(m.left_module().algebra(), y.algebra())?;
    let index: HashMap<&Vec<usize>, usize> = maps.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let n = maps.len();
    let mut add = Vec::with_capacity(n * n);
    for f in &maps {
        for g in &maps {
            let h: Vec<usize> = f.iter().zip(g).map(|(&a, &b)| y.add(a, b)).collect();
            add.push(index[&h]);
        }
    }
    let r = m.right_ring();
    let mut act = Vec::with_capacity(r.size() * n);
    for sc in 0..r.size() {
        for f in &maps {
            let h: Vec<usize> = (0..m.size()).map(|a| f[m.act_right(a, sc)]).collect();
            act.push(index[&h]);
        }
    }
    let module = FiniteModule::new(format!("Hom({},{})", m.name, y.name()), r.clone(), n, add, act)?;
    Ok(HomModule { module, maps })
}

/// Module homs as tables, refusing hopeless searches.
pub fn module_homs(a: &FiniteModule, b: &FiniteModule) -> Result<Vec<Vec<usize>>> {
    same_ring(a.ring(), b.ring())?;
    let space = (b.size() as f64).powf((a.size() as f64).log2().ceil().max(1.0));
    if space > HOM_CAP as f64 {
        return Err(Error::CapExceeded(format!("homs {} -> {}", a.name(), b.name())));
    }
    enumerate_hom_tables(a.algebra(), b.algebra())
}

/// Result of an explicit bijection check between two hom-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionCheck {
    pub name: String,
    pub left: usize,
    pub right: usize,
    pub naturality_squares: usize,
    pub problem: Option<String>,
}

impl BijectionCheck {
    pub fn ok(&self) -> bool {
        self.problem.is_none()
    }
}

/// Checks that `image` (one entry per left hom, `None` when the transpose
/// falls outside the right hom-set) is a bijection onto `0..right`.
fn bijection_problem(image: &[Option<usize>], right: usize) -> Option<String> {
    if let Some(k) = image.iter().position(Option::is_none) {
        return Some(format!("transpose of hom #{k} is not a hom"));
    }
    let hit: BTreeSet<usize> = image.iter().flatten().copied().collect();
    if hit.len() != image.len() {
        return Some("transposition is not injective".into());
    }
    if hit.len() != right {
        return Some(format!("transposition hits {} of {right} homs", hit.len()));
    }
    None
}

fn compose(g: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&x| g[x]).collect()
}

/// `Hom_S(M ⊗_R X, Y) ≅ Hom_R(X, Hom_S(M, Y))` with `f ↦ (x ↦ (m ↦ f(m ⊗ x)))`,
/// plus naturality in `X` and `Y` against all endomorphisms.
pub fn check_tensor_hom_adjunction(m: &Bimodule, x: &FiniteModule, y: &FiniteModule) -> Result<BijectionCheck> {
    let t = tensor(m, x)?;
    let h = hom_module(m, y)?;
    let left = module_homs(&t.module, y)?;
    let right = module_homs(x, &h.module)?;
    let right_index: HashMap<&Vec<usize>, usize> = right.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let transpose = |f: &[usize]| -> Option<Vec<usize>> {
        (0..x.size()).map(|xx| h.index_of(&(0..m.size()).map(|a| f[t.pure(a, xx)]).collect::<Vec<_>>())).collect()
    };
    let transposes: Vec<Option<Vec<usize>>> = left.iter().map(|f| transpose(f)).collect();
    let image: Vec<Option<usize>> =
        transposes.iter().map(|tr| tr.as_ref().and_then(|v| right_index.get(v).copied())).collect();
    let mut problem = bijection_problem(&image, right.len());
    let mut squares = 0;
    if problem.is_none() {
        for g in module_homs(x, x)? {
            let mg = t.map_right(|v| g[v]);
            for (f, tf) in left.iter().zip(&transposes) {
                squares += 1;
                let lhs = transpose(&compose(f, &mg));
                let rhs: Vec<usize> = compose(tf.as_ref().expect("checked"), &g);
                if lhs.as_deref() != Some(rhs.as_slice()) {
                    problem.get_or_insert_with(|| format!("naturality in X fails for endomorphism {g:?}"));
                }
            }
        }
        for k in module_homs(y, y)? {
            // Hom(M, k): post-composition on the hom module.
            let post: Vec<usize> = h.maps.iter().map(|p| h.index_of(&compose(&k, p)).expect("closed")).collect();
            for (f, tf) in left.iter().zip(&transposes) {
                squares += 1;
                let lhs = transpose(&compose(&k, f));
                let rhs = compose(&post, tf.as_ref().expect("checked"));
                if lhs.as_deref() != Some(rhs.as_slice()) {
                    problem.get_or_insert_with(|| format!("naturality in Y fails for endomorphism {k:?}"));
                }
            }
        }
    }
    Ok(BijectionCheck {
        name: format!("tensor-hom adjunction for {} at ({}, {})", m.name, x.name(), y.name()),
        left: left.len(),
        right: right.len(),
        naturality_squares: squares,
        problem,
    })
}

/// `L(A)` as the coequalizer of `|K_A|·M ⇉ |A|·M`: the quotient of `M^{|A|}`
/// by `(m u_a - m v_a)_a` for `(u, v)` in the kernel pair of `F|A| → A`.
///
/// `K_A` is materialized fibre by fibre over `A`; within a fibre the pairs
/// `(u_0, v)` against a fixed base point span the same relations as all pairs.
pub fn left_adjoint_via_presentation(m: &Bimodule, a: &FiniteModule) -> Result<FiniteModule> {
    let r = m.right_ring();
    same_ring(r, a.ring())?;
    let n = a.size();
    let free_size = crate::util::pow(r.size(), n);
    if free_size > FREE_CAP {
        return Err(Error::CapExceeded(format!("F|A| = {}^{n} elements", r.name)));
    }
    // ε : F|A| → A, u ↦ Σ u_a a
    let mut fibres: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
    for u in tuples(r.size(), n) {
        let e = u.iter().enumerate().fold(a.zero(), |acc, (x, &c)| a.add(acc, a.act(c, x)));
        fibres[e].push(u);
    }
    let madd = |p, q| m.add(p, q);
    let dm = Decomposition::of_group(m.size(), m.zero_elem(), madd);
    let g = dm.gens.len();
    let width = g * n;
    let mut relations: Vec<Vec<i64>> = Vec::new();
    for block in 0..n {
        for rel in &dm.relations {
            let mut v = vec![0i64; width];
            v[block * g..(block + 1) * g].copy_from_slice(rel);
            relations.push(v);
        }
    }
    for fibre in &fibres {
        let Some((base, rest)) = fibre.split_first() else { continue };
        for v in rest {
            for &gen in &dm.gens {
                let mut rel = vec![0i64; width];
                for block in 0..n {
                    let (p, q) = (m.act_right(gen, base[block]), m.act_right(gen, v[block]));
                    for k in 0..g {
                        rel[block * g + k] += dm.coords[p][k] - dm.coords[q][k];
                    }
                }
                relations.push(rel);
            }
        }
    }
    let q = PresentedAbGroup::new(width, relations)?.quotient(dm.exponent.max(1))?;
    let size = q.size();
    // representatives in M^{|A|} by breadth-first search over generator steps
    let gen_idx: Vec<usize> = (0..width)
        .map(|j| {
            let mut e = vec![0i64; width];
            e[j] = 1;
            q.index_of(&e)
        })
        .collect();
    let zero = q.index_of(&vec![0; width]);
    let mut rep: Vec<Option<Vec<usize>>> = vec![None; size];
    rep[zero] = Some(vec![m.zero_elem(); n]);
    let mut order = vec![zero];
    let mut head = 0;
    let add_q = |x: usize, y: usize| q.add(x, y);
    while head < order.len() {
        let s = order[head];
        head += 1;
        for (j, &gj) in gen_idx.iter().enumerate() {
            let t = add_q(s, gj);
            if rep[t].is_none() {
                let mut v = rep[s].clone().expect("visited");
                let (block, k) = (j / g, j % g);
                v[block] = m.add(v[block], dm.gens[k]);
                rep[t] = Some(v);
                order.push(t);
            }
        }
    }
    let class = |v: &[usize]| {
        let mut coords = vec![0i64; width];
        for (block, &x) in v.iter().enumerate() {
            coords[block * g..(block + 1) * g].copy_from_slice(&dm.coords[x]);
        }
        q.index_of(&coords)
    };
    let add = tuples(size, 2).map(|t| add_q(t[0], t[1])).collect();
    let s = m.left_ring();
    let mut act = Vec::with_capacity(s.size() * size);
    for sc in 0..s.size() {
        for r in &rep {
            let v: Vec<usize> = r.as_ref().expect("every class reached").iter().map(|&x| m.act_left(sc, x)).collect();
            act.push(class(&v));
        }
    }
    FiniteModule::new(format!("L_{}({})", m.name, a.name()), s.clone(), size, add, act)
}

/// Module isomorphism decided by invariant factors, then a hom search.
#[derive(Clone, Debug)]
pub struct ModuleIso {
    pub left_factors: InvariantFactors,
    pub right_factors: InvariantFactors,
    pub iso: Option<FiniteHom>,
}

pub fn module_isomorphism(a: &FiniteModule, b: &FiniteModule) -> Result<ModuleIso> {
    same_ring(a.ring(), b.ring())?;
    let lf = invariant_factors(a);
    let rf = invariant_factors(b);
    let iso = if lf == rf { find_isomorphism(a.algebra(), b.algebra())? } else { None };
    Ok(ModuleIso { left_factors: lf, right_factors: rf, iso })
}

pub fn invariant_factors(a: &FiniteModule) -> InvariantFactors {
    Decomposition::of_group(a.size(), a.zero(), additive(a)).invariant_factors()
}

/// `B ⊗_R A` for `_S B_R` and `_R A_Q`.
pub fn compose_bimodules(b: &Bimodule, a: &Bimodule) -> Result<Bimodule> {
    same_ring(b.right_ring(), a.left_ring())?;
    let badd = |p, q| b.add(p, q);
    let aadd = |p, q| a.add(p, q);
    let right = |p, r| b.act_right(p, r);
    let left = |r, p| a.act_left(r, p);
    let t = Tensor::new(
        &Additive { size: b.size(), zero: b.zero_elem(), add: &badd },
        &Additive { size: a.size(), zero: a.zero_elem(), add: &aadd },
        Some(&Balance { ring: a.left_ring(), right: &right, left: &left }),
    )?;
    let add = |p, q| t.add(p, q);
    let me = Additive { size: t.size, zero: t.zero, add: &add };
    let lefts: Vec<Vec<usize>> =
        (0..b.left_ring().size()).map(|s| t.induce(&me, |p, x| t.pure(b.act_left(s, p), x))).collect();
    let rights: Vec<Vec<usize>> =
        (0..a.right_ring().size()).map(|q| t.induce(&me, |p, x| t.pure(p, a.act_right(x, q)))).collect();
    Bimodule::from_fn(
        format!("{}(x){}", b.name, a.name),
        b.left_ring().clone(),
        a.right_ring().clone(),
        t.size,
        |p, q| t.add(p, q),
        |s, p| lefts[s][p],
        |p, q| rights[q][p],
    )
}

/// Bimodule homs as tables.
pub fn bimodule_homs(a: &Bimodule, b: &Bimodule) -> Result<Vec<Vec<usize>>> {
    if a.left_ring() != b.left_ring() || a.right_ring() != b.right_ring() {
        return Err(Error::RingMismatch);
    }
    enumerate_hom_tables(&a.algebra(), &b.algebra())
}

pub fn bimodule_isomorphic(a: &Bimodule, b: &Bimodule) -> Result<bool> {
    if a.size() != b.size() {
        return Ok(false);
    }
    Ok(find_isomorphism(&Arc::new(a.algebra()), &Arc::new(b.algebra()))?.is_some())
}

/// All additive maps between two finite abelian groups, as sorted tables.
fn additive_maps(
    dom_size: usize,
    dom_zero: usize,
    dom_add: &dyn Fn(usize, usize) -> usize,
    cod_size: usize,
    cod_zero: usize,
    cod_add: &dyn Fn(usize, usize) -> usize,
) -> Vec<Vec<usize>> {
    let d = Decomposition::of_group(dom_size, dom_zero, dom_add);
    let times = |k: i64, y: usize| {
        let k = k.rem_euclid(d.exponent.max(1)) as usize;
        (0..k).fold(cod_zero, |acc, _| cod_add(acc, y))
    };
    let mut out = Vec::new();
    'images: for imgs in tuples(cod_size, d.gens.len()) {
        let eval = |coords: &[i64]| coords.iter().zip(&imgs).fold(cod_zero, |acc, (&c, &y)| cod_add(acc, times(c, y)));
        for rel in &d.relations {
            if eval(rel) != cod_zero {
                continue 'images;
            }
        }
        out.push((0..dom_size).map(|x| eval(&d.coords[x])).collect());
    }
    out.sort();
    out
}

/// `C(N)`: additive maps `|R| → |N|` with `(s f)(r) = s f(r)` and
/// `(f r)(r') = f(r r')`, together with the counit `f ↦ f(1)`.
#[derive(Clone, Debug)]
pub struct Cofree {
    pub bimodule: Bimodule,
    pub maps: Vec<Vec<usize>>,
    pub counit: Vec<usize>,
}

pub fn cofree_bimodule(s: &Arc<FiniteRing>, r: &Arc<FiniteRing>, n: &FiniteModule) -> Result<Cofree> {
    same_ring(s, n.ring())?;
    let radd = |a, b| r.add(a, b);
    let nadd = additive(n);
    let maps = additive_maps(r.size(), r.zero(), &radd, n.size(), n.zero(), &nadd);
    let index: HashMap<&Vec<usize>, usize> = maps.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let look = |f: Vec<usize>| index[&f];
    let bimodule = Bimodule::from_fn(
        format!("C({})", n.name()),
        s.clone(),
        r.clone(),
        maps.len(),
        |f, g| look(maps[f].iter().zip(&maps[g]).map(|(&a, &b)| n.add(a, b)).collect()),
        |sc, f| look(maps[f].iter().map(|&v| n.act(sc, v)).collect()),
        |f, rc| look((0..r.size()).map(|x| maps[f][r.mul(rc, x)]).collect()),
    )?;
    let counit = maps.iter().map(|f| f[r.one()]).collect();
    Ok(Cofree { bimodule, maps, counit })
}

/// `Bimod(M, C(N)) ≅ Hom_S(|M|, N)` via composition with the counit.
pub fn check_cofree_couniversal(m: &Bimodule, n: &FiniteModule) -> Result<BijectionCheck> {
    let c = cofree_bimodule(m.left_ring(), m.right_ring(), n)?;
    let left = bimodule_homs(m, &c.bimodule)?;
    let right = module_homs(&m.left_module(), n)?;
    let index: HashMap<&Vec<usize>, usize> = right.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let image: Vec<Option<usize>> = left.iter().map(|phi| index.get(&compose(&c.counit, phi)).copied()).collect();
    Ok(BijectionCheck {
        name: format!("cofree couniversality of C({}) against {}", n.name(), m.name),
        left: left.len(),
        right: right.len(),
        naturality_squares: 0,
        problem: bijection_problem(&image, right.len()),
    })
}

/// `F(M) = |M| ⊗_Z R` with `s(m ⊗ r) = sm ⊗ r` and `(m ⊗ r) r' = m ⊗ r r'`,
/// and its unit `m ↦ m ⊗ 1`.
#[derive(Clone, Debug)]
pub struct FreeBimodule {
    pub bimodule: Bimodule,
    pub unit: Vec<usize>,
}

pub fn free_bimodule(s: &Arc<FiniteRing>, r: &Arc<FiniteRing>, m: &FiniteModule) -> Result<FreeBimodule> {
    same_ring(s, m.ring())?;
    let madd = additive(m);
    let radd = |a, b| r.add(a, b);
    let t = Tensor::new(
        &Additive { size: m.size(), zero: m.zero(), add: &madd },
        &Additive { size: r.size(), zero: r.zero(), add: &radd },
        None,
    )?;
    let add = |p, q| t.add(p, q);
    let me = Additive { size: t.size, zero: t.zero, add: &add };
    let lefts: Vec<Vec<usize>> = (0..s.size()).map(|sc| t.induce(&me, |p, x| t.pure(m.act(sc, p), x))).collect();
    let rights: Vec<Vec<usize>> = (0..r.size()).map(|rc| t.induce(&me, |p, x| t.pure(p, r.mul(x, rc)))).collect();
    let bimodule = Bimodule::from_fn(
        format!("F({})", m.name()),
        s.clone(),
        r.clone(),
        t.size,
        |p, q| t.add(p, q),
        |sc, p| lefts[sc][p],
        |p, rc| rights[rc][p],
    )?;
    let unit = (0..m.size()).map(|x| t.pure(x, r.one())).collect();
    Ok(FreeBimodule { bimodule, unit })
}

/// `Bimod(F(M), N) ≅ Hom_S(M, |N|)` via precomposition with the unit.
pub fn check_free_universal(m: &FiniteModule, n: &Bimodule) -> Result<BijectionCheck> {
    let f = free_bimodule(n.left_ring(), n.right_ring(), m)?;
    let left = bimodule_homs(&f.bimodule, n)?;
    let right = module_homs(m, &n.left_module())?;
    let index: HashMap<&Vec<usize>, usize> = right.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let image: Vec<Option<usize>> = left.iter().map(|phi| index.get(&compose(phi, &f.unit)).copied()).collect();
    Ok(BijectionCheck {
        name: format!("free universality of F({}) against {}", m.name(), n.name),
        left: left.len(),
        right: right.len(),
        naturality_squares: 0,
        problem: bijection_problem(&image, right.len()),
    })
}

/// Restriction of scalars along `f: R → S`.
pub fn restrict(f: &[usize], r: &Arc<FiniteRing>, y: &FiniteModule) -> Result<FiniteModule> {
    r.is_hom_to(y.ring(), f)?;
    let n = y.size();
    let add = tuples(n, 2).map(|t| y.add(t[0], t[1])).collect();
    let act = (0..r.size()).flat_map(|rc| (0..n).map(move |v| (rc, v))).map(|(rc, v)| y.act(f[rc], v)).collect();
    FiniteModule::new(format!("{}|{}", y.name(), r.name), r.clone(), n, add, act)
}

/// `S` as `_R S_S`: left action through `f`, right action by multiplication.
fn ring_as_coextension_bimodule(f: &[usize], r: &Arc<FiniteRing>, s: &Arc<FiniteRing>) -> Result<Bimodule> {
    Bimodule::from_fn(
        format!("{}_{}", s.name, s.name),
        r.clone(),
        s.clone(),
        s.size(),
        |a, b| s.add(a, b),
        |rc, a| s.mul(f[rc], a),
        |a, sc| s.mul(a, sc),
    )
}

/// The adjoint triple `S ⊗_R - ⊣ restriction ⊣ Hom_R(S, -)` checked on
/// explicit bijections.
#[derive(Clone, Debug)]
pub struct ChangeOfRings {
    pub checks: Vec<BijectionCheck>,
    /// Invariant factors of the extension of each `R`-module, in input order.
    pub extensions: Vec<(String, InvariantFactors)>,
    pub coextensions: Vec<(String, InvariantFactors)>,
}

impl ChangeOfRings {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(BijectionCheck::ok)
    }
}

pub fn change_of_rings(
    f: &[usize],
    r: &Arc<FiniteRing>,
    s: &Arc<FiniteRing>,
    r_modules: &[FiniteModule],
    s_modules: &[FiniteModule],
) -> Result<ChangeOfRings> {
    r.is_hom_to(s, f)?;
    let ext_bimodule = Bimodule::along_hom(s.clone(), r.clone(), f)?;
    let coext_bimodule = ring_as_coextension_bimodule(f, r, s)?;
    let mut checks = Vec::new();
    let mut extensions = Vec::new();
    let mut coextensions = Vec::new();
    for x in r_modules {
        let ext = tensor(&ext_bimodule, x)?;
        extensions.push((x.name().to_string(), invariant_factors(&ext.module)));
        let coext = hom_module(&coext_bimodule, x)?;
        coextensions.push((x.name().to_string(), invariant_factors(&coext.module)));
        for y in s_modules {
            let res_y = restrict(f, r, y)?;
            // Hom_S(S ⊗_R X, Y) ≅ Hom_R(X, Y|_R), g ↦ (x ↦ g(1 ⊗ x))
            let left = module_homs(&ext.module, y)?;
            let right = module_homs(x, &res_y)?;
            let index: HashMap<&Vec<usize>, usize> = right.iter().enumerate().map(|(i, g)| (g, i)).collect();
            let image: Vec<Option<usize>> = left
                .iter()
                .map(|g| {
                    let t: Vec<usize> = (0..x.size()).map(|v| g[ext.pure(s.one(), v)]).collect();
                    index.get(&t).copied()
                })
                .collect();
            checks.push(BijectionCheck {
                name: format!("extension adjunction at ({}, {})", x.name(), y.name()),
                left: left.len(),
                right: right.len(),
                naturality_squares: 0,
                problem: bijection_problem(&image, right.len()),
            });
            // Hom_R(Y|_R, X) ≅ Hom_S(Y, Hom_R(S, X)), g ↦ (y ↦ (s ↦ g(s y)))
            let left = module_homs(&res_y, x)?;
            let right = module_homs(y, &coext.module)?;
            let index: HashMap<&Vec<usize>, usize> = right.iter().enumerate().map(|(i, g)| (g, i)).collect();
            let image: Vec<Option<usize>> = left
                .iter()
                .map(|g| {
                    let t: Option<Vec<usize>> = (0..y.size())
                        .map(|v| coext.index_of(&(0..s.size()).map(|sc| g[y.act(sc, v)]).collect::<Vec<_>>()))
                        .collect();
                    t.and_then(|t| index.get(&t).copied())
                })
                .collect();
            checks.push(BijectionCheck {
                name: format!("coextension adjunction at ({}, {})", y.name(), x.name()),
                left: left.len(),
                right: right.len(),
                naturality_squares: 0,
                problem: bijection_problem(&image, right.len()),
            });
        }
    }
    Ok(ChangeOfRings { checks, extensions, coextensions })
}
