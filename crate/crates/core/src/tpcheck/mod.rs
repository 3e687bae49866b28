//! Exhaustive coefficientwise total-positivity checks with witnesses.
//!
//! Minors are visited by increasing size, then row set, then column set,
//! each in lexicographic order. The first failure in that order is the
//! witness, whatever the number of worker threads.

mod det;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

pub use det::{det, det_permutation};

use crate::error::{Error, Result};
use crate::exactalg::{Monomial, MultiPoly, Rational};
use crate::series::named::exp_series;
use crate::series::Series;
use crate::triangle::{hankel, toeplitz, PolyMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinorWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub det: MultiPoly,
    #[serde(serialize_with = "as_string")]
    pub monomial: Monomial,
    pub coeff: Rational,
}

fn as_string<S: serde::Serializer>(m: &Monomial, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&m.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TPReport {
    pub verdict: Verdict,
    pub r: usize,
    pub window: usize,
    pub minors_evaluated: u64,
    pub witness: Option<MinorWitness>,
    pub wall_time_ms: u64,
}

impl TPReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    /// Give up with [`Error::Timeout`] once this much time has passed.
    pub budget_ms: Option<u64>,
    /// Minors handed to the worker pool at a time.
    pub batch: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { budget_ms: None, batch: 512 }
    }
}

/// All `k`-subsets of `0..n`, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
            return out;
        };
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

pub fn minor(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> MultiPoly {
    let a: Vec<Vec<&MultiPoly>> = rows.iter().map(|&i| cols.iter().map(|&j| m.get(i, j)).collect()).collect();
    det::det_rows(&a)
}

/// Check every minor of size `<= r` of the leading `window x window` part of `m`.
pub fn check_tp(m: &PolyMatrix, r: usize, window: usize) -> Result<TPReport> {
    check_tp_with(m, r, window, &CheckOptions::default())
}

pub fn check_tp_with(m: &PolyMatrix, r: usize, window: usize, opts: &CheckOptions) -> Result<TPReport> {
    if r == 0 {
        return Err(Error::Invalid("order r must be at least 1".into()));
    }
    let start = Instant::now();
    let m = m.window(window)?;
    let mut evaluated = 0u64;
    for k in 1..=r.min(window) {
        let subsets = combinations(window, k);
        let per = subsets.len();
        let total = per * per;
        let mut lo = 0;
        while lo < total {
            if let Some(b) = opts.budget_ms {
                if start.elapsed().as_millis() as u64 >= b {
                    return Err(Error::Timeout(b));
                }
            }
            let hi = (lo + opts.batch.max(1)).min(total);
            let best = AtomicUsize::new(usize::MAX);
            let fails: Vec<(usize, MultiPoly)> = (lo..hi)
                .into_par_iter()
                .filter_map(|idx| {
                    if idx > best.load(Ordering::Relaxed) {
                        return None;
                    }
                    let d = minor(&m, &subsets[idx / per], &subsets[idx % per]);
                    if d.is_coeffwise_nonneg() {
                        return None;
                    }
                    best.fetch_min(idx, Ordering::Relaxed);
                    Some((idx, d))
                })
                .collect();
            if let Some((idx, d)) = fails.into_iter().min_by_key(|f| f.0) {
                let w = d.negative_witness().expect("failing minor has a negative coefficient");
                return Ok(TPReport {
                    verdict: Verdict::Fail,
                    r,
                    window,
                    minors_evaluated: evaluated + idx as u64 + 1,
                    witness: Some(MinorWitness {
                        rows: subsets[idx / per].clone(),
                        cols: subsets[idx % per].clone(),
                        det: d,
                        monomial: w.monomial,
                        coeff: w.coeff,
                    }),
                    wall_time_ms: start.elapsed().as_millis() as u64,
                });
            }
            lo = hi;
        }
        evaluated += total as u64;
    }
    Ok(TPReport {
        verdict: Verdict::Pass,
        r,
        window,
        minors_evaluated: evaluated,
        witness: None,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

/// Hankel window `(a_(i+j))`; needs `2N - 1` terms.
pub fn check_hankel_tp(seq: &[MultiPoly], n: usize, r: usize) -> Result<TPReport> {
    check_hankel_tp_with(seq, n, r, &CheckOptions::default())
}

pub fn check_hankel_tp_with(seq: &[MultiPoly], n: usize, r: usize, opts: &CheckOptions) -> Result<TPReport> {
    check_tp_with(&hankel(seq, n)?, r, n, opts)
}

/// Lower-triangular Toeplitz window `(a_(i-j))`; needs `N` terms.
pub fn check_toeplitz_tp(seq: &[MultiPoly], n: usize, r: usize) -> Result<TPReport> {
    check_toeplitz_tp_with(seq, n, r, &CheckOptions::default())
}

pub fn check_toeplitz_tp_with(seq: &[MultiPoly], n: usize, r: usize, opts: &CheckOptions) -> Result<TPReport> {
    check_tp_with(&toeplitz(seq, n)?, r, n, opts)
}

/// First `n` coefficients of `C prod (1 + alpha_i t) / (1 - beta_i t)`,
/// times `e^(gamma t)` when `gamma` is given.
pub fn tp_seq_builder(
    c: &MultiPoly,
    alphas: &[MultiPoly],
    betas: &[MultiPoly],
    gamma: Option<&MultiPoly>,
    n: usize,
) -> Vec<MultiPoly> {
    if n == 0 {
        return Vec::new();
    }
    let order = n - 1;
    let mut s = Series::constant(c.clone(), order);
    for a in alphas {
        let f = Series::from_fn(order, |m| match m {
            0 => MultiPoly::one(),
            1 => a.clone(),
            _ => MultiPoly::zero(),
        });
        s = &s * &f;
    }
    for b in betas {
        s = &s * &crate::series::named::geometric(b, order);
    }
    if let Some(g) = gamma {
        s = &s * &exp_series(g, order);
    }
    s.coeffs().to_vec()
}
