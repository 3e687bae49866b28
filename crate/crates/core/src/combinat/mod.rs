//! Brute-force enumeration of rooted forests and functional digraphs on
//! `[n]`, folded into generating polynomials.
//!
//! These are oracles: slow, direct from the definitions, and meant to be
//! diffed against the algebraic constructions in [`crate::triangle`].

use std::collections::HashMap;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::exactalg::{Monomial, MultiPoly, Rational, Var};
use crate::triangle::PolyMatrix;

pub const FOREST_BUDGET: usize = 8;
pub const DIGRAPH_BUDGET: usize = 7;

/// `parent[v - 1]` is the parent of vertex `v`, or 0 if `v` is a root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParentMap {
    pub n: usize,
    pub parent: Vec<u8>,
}

/// `image[v - 1]` is `f(v)`, in `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuncDigraph {
    pub n: usize,
    pub image: Vec<u8>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ForestStats {
    pub components: usize,
    pub improper_edges: usize,
    /// Proper children per vertex, indexed by `v - 1`.
    pub proper_children: Vec<u8>,
    pub improper_children: Vec<u8>,
    pub proper_vertices: usize,
    pub ascents: usize,
    pub descents: usize,
    pub root_descents: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Weighting {
    /// Plain count.
    Count,
    /// `y^imp z^(proper edges)`.
    Yz,
    /// `y^imp prod_v m_v! phi_(m_v)`, `m_v` proper children.
    Yphi,
    /// `a^(n - propv) b^(propv - k)`.
    SgsPropv,
    /// `a^des b^asc`.
    SgsAscdes,
    /// Increasing forests only, `prod_v m_v! phi_(m_v)`.
    Lah,
    /// `(1 + w)^(root descents)`.
    RootDescent,
    /// `prod_v m_v! phi_(m_v) xi_(l_v)`, `l_v` improper children.
    Xi,
}

impl std::str::FromStr for Weighting {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "count" => Weighting::Count,
            "yz" => Weighting::Yz,
            "yphi" => Weighting::Yphi,
            "sgs_propv" | "propv" => Weighting::SgsPropv,
            "sgs_ascdes" | "ascdes" => Weighting::SgsAscdes,
            "lah" => Weighting::Lah,
            "root_descent" => Weighting::RootDescent,
            "xi" => Weighting::Xi,
            _ => return Err(Error::UnknownName(s.to_string())),
        })
    }
}

fn check_budget(n: usize, max: usize) -> Result<()> {
    if n > max {
        Err(Error::Budget { n, max })
    } else {
        Ok(())
    }
}

/// Does following parents from `u` reach `v`? Unassigned vertices (value
/// `u8::MAX`) end the walk; the cycle is caught when its last vertex is set.
fn reaches(parent: &[u8], mut u: u8, v: u8) -> bool {
    while u != 0 && u != u8::MAX {
        if u == v {
            return true;
        }
        u = parent[u as usize - 1];
    }
    false
}

fn forests_from(parent: &mut Vec<u8>, v: usize, f: &mut impl FnMut(&[u8])) {
    let n = parent.len();
    if v > n {
        f(parent);
        return;
    }
    for u in 0..=n as u8 {
        if u as usize == v || (u != 0 && reaches(parent, u, v as u8)) {
            continue;
        }
        parent[v - 1] = u;
        forests_from(parent, v + 1, f);
    }
    parent[v - 1] = u8::MAX;
}

/// Visit every rooted forest on `[n]` once.
pub fn for_each_forest(n: usize, mut f: impl FnMut(&ParentMap)) -> Result<()> {
    check_budget(n, FOREST_BUDGET)?;
    let mut pm = ParentMap { n, parent: vec![u8::MAX; n] };
    let mut buf = vec![u8::MAX; n];
    forests_from(&mut buf, 1, &mut |p| {
        pm.parent.copy_from_slice(p);
        f(&pm)
    });
    Ok(())
}

/// Parallel fold over all forests, sharded by the parent of vertex 1.
pub fn fold_forests<T, F, R>(n: usize, init: impl Fn() -> T + Sync, fold: F, reduce: R) -> Result<T>
where
    T: Send,
    F: Fn(&mut T, &ParentMap) + Sync,
    R: Fn(T, T) -> T + Sync,
{
    check_budget(n, FOREST_BUDGET)?;
    if n == 0 {
        let mut acc = init();
        fold(&mut acc, &ParentMap { n: 0, parent: vec![] });
        return Ok(acc);
    }
    let shards: Vec<u8> = (0..=n as u8).filter(|&u| u != 1).collect();
    let out = shards
        .into_par_iter()
        .map(|u| {
            let mut acc = init();
            let mut buf = vec![u8::MAX; n];
            buf[0] = u;
            let mut pm = ParentMap { n, parent: vec![0; n] };
            forests_from(&mut buf, 2, &mut |p| {
                pm.parent.copy_from_slice(p);
                fold(&mut acc, &pm)
            });
            acc
        })
        .reduce(&init, &reduce);
    Ok(out)
}

/// All forests on `[n]`, materialized.
pub fn enum_forests(n: usize) -> Result<Vec<ParentMap>> {
    let mut v = Vec::new();
    for_each_forest(n, |f| v.push(f.clone()))?;
    Ok(v)
}

pub fn stats(f: &ParentMap) -> ForestStats {
    let n = f.n;
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for v in 1..=n {
        children[f.parent[v - 1] as usize].push(v);
    }
    // post-order from the virtual root 0
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        order.push(v);
        stack.extend(children[v].iter().copied());
    }
    let mut min_sub: Vec<usize> = (0..=n).collect();
    for &v in order.iter().rev() {
        if v == 0 {
            continue;
        }
        let p = f.parent[v - 1] as usize;
        if p != 0 && min_sub[v] < min_sub[p] {
            min_sub[p] = min_sub[v];
        }
    }
    let mut s = ForestStats {
        proper_children: vec![0; n],
        improper_children: vec![0; n],
        ..Default::default()
    };
    s.components = children[0].len();
    for i in 1..=n {
        let mut all_proper = true;
        for &j in &children[i] {
            if min_sub[j] < i {
                s.improper_edges += 1;
                s.improper_children[i - 1] += 1;
                all_proper = false;
            } else {
                s.proper_children[i - 1] += 1;
            }
            if i < j {
                s.ascents += 1;
            } else {
                s.descents += 1;
            }
        }
        if all_proper {
            s.proper_vertices += 1;
        }
        if f.parent[i - 1] == 0 {
            s.root_descents += children[i].iter().filter(|&&j| j < i).count();
        }
    }
    s
}

fn factorial(m: u8) -> u64 {
    (1..=m as u64).product()
}

/// Monomial and integer multiplier of one forest, or `None` if it is
/// filtered out. Root descents are tracked as powers of `w` and expanded
/// afterwards.
fn weigh(n: usize, s: &ForestStats, w: Weighting) -> Option<(Monomial, u64)> {
    let phi_profile = |ms: &[u8], extra: Option<&[u8]>| {
        let mut pairs: Vec<(Var, u32)> = Vec::new();
        let mut c = 1u64;
        for (v, &m) in ms.iter().enumerate() {
            c *= factorial(m);
            pairs.push((Var::phi(m as usize), 1));
            if let Some(l) = extra {
                pairs.push((Var::xi(l[v] as usize), 1));
            }
        }
        (Monomial::from_pairs(pairs), c)
    };
    Some(match w {
        Weighting::Count => (Monomial::one(), 1),
        Weighting::Yz => {
            let k = s.components;
            (Monomial::from_pairs([(Var::Y, s.improper_edges as u32), (Var::Z, (n - k - s.improper_edges) as u32)]), 1)
        }
        Weighting::Yphi => {
            let (m, c) = phi_profile(&s.proper_children, None);
            (m.mul(&Monomial::var(Var::Y, s.improper_edges as u32)), c)
        }
        Weighting::SgsPropv => (
            Monomial::from_pairs([(Var::A, (n - s.proper_vertices) as u32), (Var::B, (s.proper_vertices - s.components) as u32)]),
            1,
        ),
        Weighting::SgsAscdes => (Monomial::from_pairs([(Var::A, s.descents as u32), (Var::B, s.ascents as u32)]), 1),
        Weighting::Lah => {
            if s.improper_edges > 0 {
                return None;
            }
            phi_profile(&s.proper_children, None)
        }
        Weighting::RootDescent => (Monomial::var(Var::W, s.root_descents as u32), 1),
        Weighting::Xi => phi_profile(&s.proper_children, Some(&s.improper_children)),
    })
}

type Tally = FxHashMap<(usize, Monomial), u64>;

fn merge(mut a: Tally, b: Tally) -> Tally {
    for (k, c) in b {
        *a.entry(k).or_insert(0) += c;
    }
    a
}

/// Row `n` of the oracle triangle: generating polynomials over
/// `F_(n,k)` for `k = 0..=n`.
pub fn oracle_row(n: usize, w: Weighting) -> Result<Vec<MultiPoly>> {
    let tally = fold_forests(
        n,
        Tally::default,
        |acc, f| {
            let s = stats(f);
            if let Some((m, c)) = weigh(n, &s, w) {
                *acc.entry((s.components, m)).or_insert(0) += c;
            }
        },
        merge,
    )?;
    let mut rows: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); n + 1];
    for ((k, m), c) in tally {
        rows[k].push((m, Rational::from_int(c as i64)));
    }
    let shift: HashMap<Var, MultiPoly> = [(Var::W, MultiPoly::from_terms([(Monomial::one(), Rational::one()), (Monomial::var(Var::W, 1), Rational::one())]))].into();
    Ok(rows
        .into_iter()
        .map(|t| {
            let p = MultiPoly::from_terms(t);
            if w == Weighting::RootDescent {
                p.substitute(&shift)
            } else {
                p
            }
        })
        .collect())
}

pub fn oracle_polynomial(n: usize, k: usize, w: Weighting) -> Result<MultiPoly> {
    Ok(oracle_row(n, w)?.get(k).cloned().unwrap_or_else(MultiPoly::zero))
}

/// Rows `0..n` of the oracle triangle, as an `n x n` window.
pub fn oracle_triangle(n: usize, w: Weighting) -> Result<PolyMatrix> {
    check_budget(n.saturating_sub(1), FOREST_BUDGET)?;
    let rows: Vec<Vec<MultiPoly>> = (0..n)
        .map(|i| {
            let mut r = oracle_row(i, w)?;
            r.resize(n, MultiPoly::zero());
            Ok(r)
        })
        .collect::<Result<_>>()?;
    PolyMatrix::from_rows(rows)
}

/// Visit all `n^n` maps `[n] -> [n]`.
pub fn for_each_digraph(n: usize, mut f: impl FnMut(&FuncDigraph)) -> Result<()> {
    check_budget(n, DIGRAPH_BUDGET)?;
    let mut g = FuncDigraph { n, image: vec![1; n] };
    loop {
        f(&g);
        let mut i = 0;
        loop {
            if i == n {
                return Ok(());
            }
            if (g.image[i] as usize) < n {
                g.image[i] += 1;
                break;
            }
            g.image[i] = 1;
            i += 1;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DigraphStats {
    pub cyclic_vertices: usize,
    pub components: usize,
}

pub fn digraph_stats(g: &FuncDigraph) -> DigraphStats {
    let n = g.n;
    // f^n([n]) is exactly the set of cyclic vertices
    let mut img: Vec<usize> = (1..=n).collect();
    for _ in 0..n {
        for x in img.iter_mut() {
            *x = g.image[*x - 1] as usize;
        }
    }
    let mut cyc = vec![false; n + 1];
    for x in img {
        cyc[x] = true;
    }
    let mut uf: Vec<usize> = (0..=n).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    let mut components = n;
    for v in 1..=n {
        let (a, b) = (find(&mut uf, v), find(&mut uf, g.image[v - 1] as usize));
        if a != b {
            uf[a] = b;
            components -= 1;
        }
    }
    DigraphStats { cyclic_vertices: cyc.iter().filter(|&&c| c).count(), components }
}

/// `Psi_n(x, y) = sum x^(cyclic vertices) y^(components)` over all maps.
pub fn oracle_bivariate_psi(n: usize) -> Result<MultiPoly> {
    let mut tally: FxHashMap<(usize, usize), i64> = FxHashMap::default();
    for_each_digraph(n, |g| {
        let s = digraph_stats(g);
        *tally.entry((s.cyclic_vertices, s.components)).or_insert(0) += 1;
    })?;
    Ok(MultiPoly::from_terms(tally.into_iter().map(|((c, k), m)| {
        (Monomial::from_pairs([(Var::X, c as u32), (Var::Y, k as u32)]), Rational::from_int(m))
    })))
}

/// `S_n` (trees on `[n+1]` rooted at 1) or `A_n` (vertex 1 a leaf),
/// weighted `y^imp z^(n - imp)`, for `n = 0..=n_max`.
pub fn oracle_s_a_series(n_max: usize, which: char) -> Result<Vec<MultiPoly>> {
    if which != 'S' && which != 'A' {
        return Err(Error::Invalid(format!("series {which:?} is neither S nor A")));
    }
    check_budget(n_max + 1, FOREST_BUDGET)?;
    (0..=n_max)
        .map(|n| {
            let mut tally: FxHashMap<usize, i64> = FxHashMap::default();
            for_each_forest(n + 1, |f| {
                let s = stats(f);
                if s.components != 1 {
                    return;
                }
                let keep = match which {
                    'S' => f.parent[0] == 0,
                    _ => !f.parent.contains(&1),
                };
                if keep {
                    *tally.entry(s.improper_edges).or_insert(0) += 1;
                }
            })?;
            Ok(MultiPoly::from_terms(tally.into_iter().map(|(imp, c)| {
                (Monomial::from_pairs([(Var::Y, imp as u32), (Var::Z, (n - imp) as u32)]), Rational::from_int(c))
            })))
        })
        .collect()
}

/// Triangle of maps on `[n]` by cyclic vertices (`by_components = false`)
/// or by components.
pub fn digraph_triangle(n: usize, by_components: bool) -> Result<PolyMatrix> {
    check_budget(n.saturating_sub(1), DIGRAPH_BUDGET)?;
    let mut rows = vec![vec![MultiPoly::zero(); n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        let mut counts = vec![0i64; i + 1];
        for_each_digraph(i, |g| {
            let s = digraph_stats(g);
            counts[if by_components { s.components } else { s.cyclic_vertices }] += 1;
        })?;
        for (k, c) in counts.into_iter().enumerate() {
            row[k] = MultiPoly::int(c);
        }
    }
    PolyMatrix::from_rows(rows)
}

/// Oracle triangle (an `n x n` window) for a named construction; `via`
/// picks the statistic where there is a choice.
pub fn oracle_named(name: &str, via: Option<Weighting>, n: usize) -> Result<PolyMatrix> {
    let forest = |w| oracle_triangle(n, w);
    match name {
        "forest" => forest(Weighting::Count),
        "ramanujan_yz" => forest(Weighting::Yz),
        "rooted_forest_yphi" => forest(Weighting::Yphi),
        "lah_phi" => forest(Weighting::Lah),
        "root_descent_sharp" => forest(Weighting::RootDescent),
        "sgs_ab" => forest(via.unwrap_or(Weighting::SgsPropv)),
        "ordered_forest" => digraph_triangle(n, false),
        "functional_digraph_psi" => digraph_triangle(n, true),
        "psi_X" | "psi_Y" => {
            let v = if name == "psi_X" { Var::X } else { Var::Y };
            let rows = (0..n)
                .map(|i| {
                    let p = oracle_bivariate_psi(i)?;
                    Ok((0..n).map(|k| if k > i { MultiPoly::zero() } else { p.coeff_of(v, k as u32) }).collect())
                })
                .collect::<Result<Vec<Vec<MultiPoly>>>>()?;
            PolyMatrix::from_rows(rows)
        }
        _ => Err(Error::UnknownName(format!("no enumeration oracle for {name}"))),
    }
}
