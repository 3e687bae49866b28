//! Square windows of infinite polynomial matrices, special matrices, and the
//! production-matrix / output-matrix correspondence.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{MultiPoly, Rational, Var};

pub mod named;
pub mod riordan;
pub mod seqs;
pub mod special;

pub use riordan::{az_from_fg, riordan, riordan_production_from_az};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    LowerTriangular,
    LowerHessenberg,
    General,
}

/// How a window was produced, so a larger one can be rebuilt.
#[derive(Clone, Debug, PartialEq)]
pub struct Origin {
    pub name: String,
    pub production: bool,
    pub bindings: Vec<(Var, MultiPoly)>,
}

/// `N x N` window, row-major.
#[derive(Clone)]
pub struct PolyMatrix {
    n: usize,
    e: Vec<MultiPoly>,
    shape: Shape,
    pub origin: Option<Origin>,
}

fn detect_shape(n: usize, e: &[MultiPoly]) -> Shape {
    let mut band = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            if !e[i * n + j].is_zero() {
                band = band.max(j - i);
            }
        }
    }
    match band {
        0 => Shape::LowerTriangular,
        1 => Shape::LowerHessenberg,
        _ => Shape::General,
    }
}

impl PolyMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> MultiPoly) -> Self {
        let mut e = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                e.push(f(i, j));
            }
        }
        let shape = detect_shape(n, &e);
        PolyMatrix { n, e, shape, origin: None }
    }

    pub fn from_rows(rows: Vec<Vec<MultiPoly>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("rows must form a square window".into()));
        }
        let e: Vec<MultiPoly> = rows.into_iter().flatten().collect();
        let shape = detect_shape(n, &e);
        Ok(PolyMatrix { n, e, shape, origin: None })
    }

    pub fn zero(n: usize) -> Self {
        PolyMatrix::from_fn(n, |_, _| MultiPoly::zero())
    }

    pub fn with_origin(mut self, origin: Origin) -> Self {
        self.origin = Some(origin);
        self
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.e[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[MultiPoly] {
        &self.e[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<MultiPoly>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.e
    }

    /// Leading `k x k` window.
    pub fn window(&self, k: usize) -> Result<PolyMatrix> {
        if k > self.n {
            return Err(Error::WindowTooSmall { needed: k, have: self.n });
        }
        let mut m = PolyMatrix::from_fn(k, |i, j| self.get(i, j).clone());
        m.origin = self.origin.clone();
        Ok(m)
    }

    /// Submatrix on the given (ordered) index sets, as a square window.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<PolyMatrix> {
        if rows.len() != cols.len() {
            return Err(Error::Dimension("minor index sets differ in size".into()));
        }
        if rows.iter().chain(cols).any(|&i| i >= self.n) {
            return Err(Error::WindowTooSmall {
                needed: rows.iter().chain(cols).max().unwrap() + 1,
                have: self.n,
            });
        }
        Ok(PolyMatrix::from_fn(rows.len(), |i, j| self.get(rows[i], cols[j]).clone()))
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> PolyMatrix {
        PolyMatrix::from_fn(self.n, |i, j| f(self.get(i, j)))
    }

    pub fn substitute(&self, bind: &HashMap<Var, MultiPoly>) -> PolyMatrix {
        if bind.is_empty() {
            return self.clone();
        }
        let mut m = self.map(|p| p.substitute(bind));
        m.origin = self.origin.clone().map(|mut o| {
            o.bindings.extend(bind.iter().map(|(v, p)| (*v, p.clone())));
            o
        });
        m
    }

    pub fn scale(&self, c: &MultiPoly) -> PolyMatrix {
        self.map(|p| p * c)
    }

    /// Product of two windows of the same size. For lower-triangular
    /// (or row-finite times lower-triangular) factors the product window is
    /// the window of the infinite product.
    pub fn mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.n != rhs.n {
            return Err(Error::Dimension(format!("{} vs {}", self.n, rhs.n)));
        }
        let n = self.n;
        Ok(PolyMatrix::from_fn(n, |i, j| {
            let mut acc = MultiPoly::zero();
            for k in 0..n {
                let (a, b) = (self.get(i, k), rhs.get(k, j));
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            acc
        }))
    }

    pub fn add(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.n != rhs.n {
            return Err(Error::Dimension(format!("{} vs {}", self.n, rhs.n)));
        }
        Ok(PolyMatrix::from_fn(self.n, |i, j| self.get(i, j) + rhs.get(i, j)))
    }

    /// Inverse of a lower-triangular window by forward substitution.
    pub fn lower_inverse(&self) -> Result<PolyMatrix> {
        if self.shape != Shape::LowerTriangular {
            return Err(Error::Invalid("lower_inverse needs a lower-triangular window".into()));
        }
        let n = self.n;
        let mut inv = vec![MultiPoly::zero(); n * n];
        for j in 0..n {
            for i in j..n {
                // sum_k a_ik x_kj = delta_ij
                let mut r = if i == j { MultiPoly::one() } else { MultiPoly::zero() };
                for k in j..i {
                    let a = self.get(i, k);
                    if !a.is_zero() && !inv[k * n + j].is_zero() {
                        r -= &(a * &inv[k * n + j]);
                    }
                }
                inv[i * n + j] = div_by_diagonal(&r, self.get(i, i), i)?;
            }
        }
        Ok(PolyMatrix::from_fn(n, |i, j| inv[i * n + j].clone()))
    }

    /// All entries are integers.
    pub fn is_integral_constant(&self) -> bool {
        self.e.iter().all(|p| p.as_constant().is_some_and(|c| c.is_integer()))
    }
}

/// Exact division by a diagonal entry; a symbolic diagonal (such as
/// `phi0^n`) is fine as long as every quotient stays polynomial.
fn div_by_diagonal(r: &MultiPoly, d: &MultiPoly, i: usize) -> Result<MultiPoly> {
    match d.as_constant() {
        Some(c) if !c.is_zero() => r.div_rational(&c),
        Some(_) => Err(Error::NonInvertibleDiagonal(i)),
        None => r.exact_div(d).map_err(|_| Error::NonInvertibleDiagonal(i)),
    }
}

impl PartialEq for PolyMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.e == other.e
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Rows `0..n` of the output matrix: `a_0k = delta_0k`,
/// `a_nk = sum_i a_(n-1,i) p_ik`.
pub fn output_matrix(p: &PolyMatrix, n: usize) -> Result<PolyMatrix> {
    if p.size() < n {
        return Err(Error::WindowTooSmall { needed: n, have: p.size() });
    }
    if p.shape() == Shape::General {
        return Err(Error::NotRowFinite);
    }
    let mut a = vec![MultiPoly::zero(); n * n];
    if n == 0 {
        return Ok(PolyMatrix::zero(0));
    }
    a[0] = MultiPoly::one();
    for r in 1..n {
        for k in 0..=r.min(n - 1) {
            let mut acc = MultiPoly::zero();
            for i in k.saturating_sub(1)..r {
                let (x, y) = (&a[(r - 1) * n + i], p.get(i, k));
                if !x.is_zero() && !y.is_zero() {
                    acc += &(x * y);
                }
            }
            a[r * n + k] = acc;
        }
    }
    Ok(PolyMatrix::from_fn(n, |i, j| a[i * n + j].clone()))
}

/// `N x N` window of `A^(-1) Delta A` from an `(N+1) x (N+1)` window of `A`.
pub fn production_matrix(a: &PolyMatrix) -> Result<PolyMatrix> {
    if a.shape() != Shape::LowerTriangular {
        return Err(Error::Invalid("production_matrix needs a lower-triangular window".into()));
    }
    if a.size() < 2 {
        return Err(Error::WindowTooSmall { needed: 2, have: a.size() });
    }
    if !a.get(0, 0).is_one() {
        return Err(Error::Invalid("production_matrix needs a_00 = 1".into()));
    }
    let n = a.size() - 1;
    // forward substitution on A X = Delta A
    let mut x = vec![MultiPoly::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let mut r = a.get(i + 1, k).clone();
            for j in 0..i {
                let (aij, xjk) = (a.get(i, j), &x[j * n + k]);
                if !aij.is_zero() && !xjk.is_zero() {
                    r -= &(aij * xjk);
                }
            }
            x[i * n + k] = div_by_diagonal(&r, a.get(i, i), i)?;
        }
    }
    let mut p = PolyMatrix::from_fn(n, |i, k| x[i * n + k].clone());
    p.origin = a.origin.clone().map(|o| Origin { production: true, ..o });
    Ok(p)
}

/// Row-generating polynomials `sum_k a_nk x^k` and the binomial
/// row-generating matrix `A B_x`.
pub fn row_generating(a: &PolyMatrix, x: Var) -> Result<(Vec<MultiPoly>, PolyMatrix)> {
    let bx = special::binomial(a.size(), &MultiPoly::var(x));
    let m = a.mul(&bx)?;
    let seq = (0..a.size()).map(|i| m.get(i, 0).clone()).collect();
    Ok((seq, m))
}

/// `(a_(i+j))`; needs `2N - 1` terms.
pub fn hankel(seq: &[MultiPoly], n: usize) -> Result<PolyMatrix> {
    if n > 0 && seq.len() < 2 * n - 1 {
        return Err(Error::WindowTooSmall { needed: 2 * n - 1, have: seq.len() });
    }
    Ok(PolyMatrix::from_fn(n, |i, j| seq[i + j].clone()))
}

/// `(a_(i-j))` with zeros above the diagonal; needs `N` terms.
pub fn toeplitz(seq: &[MultiPoly], n: usize) -> Result<PolyMatrix> {
    special::toeplitz(seq, n)
}

/// Scale a sequence by `1/(n+shift)!`.
pub fn over_factorial(seq: &[MultiPoly], shift: u32) -> Vec<MultiPoly> {
    seq.iter()
        .enumerate()
        .map(|(n, p)| p.scale(&Rational::factorial(n as u32 + shift).recip().unwrap()))
        .collect()
}
