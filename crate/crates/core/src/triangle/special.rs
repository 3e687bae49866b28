//! Named structured matrices.

use super::{PolyMatrix, Shape};
use crate::error::{Error, Result};
use crate::exactalg::{MultiPoly, Rational};

/// The shift `Delta`, ones on the superdiagonal.
pub fn delta(n: usize) -> PolyMatrix {
    PolyMatrix::from_fn(n, |i, j| if j == i + 1 { MultiPoly::one() } else { MultiPoly::zero() })
}

pub fn identity(n: usize) -> PolyMatrix {
    PolyMatrix::from_fn(n, |i, j| if i == j { MultiPoly::one() } else { MultiPoly::zero() })
}

/// `e_ij`.
pub fn unit(n: usize, i0: usize, j0: usize) -> PolyMatrix {
    PolyMatrix::from_fn(n, |i, j| if (i, j) == (i0, j0) { MultiPoly::one() } else { MultiPoly::zero() })
}

fn powers(x: &MultiPoly, n: usize) -> Vec<MultiPoly> {
    let mut v = vec![MultiPoly::one()];
    for k in 1..n.max(1) {
        v.push(&v[k - 1] * x);
    }
    v
}

/// `B_x`: `binom(i, j) x^(i-j)`.
pub fn binomial(n: usize, x: &MultiPoly) -> PolyMatrix {
    let xp = powers(x, n);
    PolyMatrix::from_fn(n, |i, j| {
        if j > i {
            MultiPoly::zero()
        } else {
            xp[i - j].scale(&Rational::binomial(i as u32, j as u32))
        }
    })
}

/// `B_(x,y)`: `binom(i, j) x^(i-j) y^j`.
pub fn binomial_xy(n: usize, x: &MultiPoly, y: &MultiPoly) -> PolyMatrix {
    let (xp, yp) = (powers(x, n), powers(y, n));
    PolyMatrix::from_fn(n, |i, j| {
        if j > i {
            MultiPoly::zero()
        } else {
            (&xp[i - j] * &yp[j]).scale(&Rational::binomial(i as u32, j as u32))
        }
    })
}

/// Lower-triangular Toeplitz `(a_(i-j))`.
pub fn toeplitz(seq: &[MultiPoly], n: usize) -> Result<PolyMatrix> {
    if seq.len() < n {
        return Err(Error::WindowTooSmall { needed: n, have: seq.len() });
    }
    Ok(PolyMatrix::from_fn(n, |i, j| if j > i { MultiPoly::zero() } else { seq[i - j].clone() }))
}

/// `T_x`: Toeplitz matrix of the powers of `x`.
pub fn power_toeplitz(n: usize, x: &MultiPoly) -> PolyMatrix {
    toeplitz(&powers(x, n), n).expect("enough powers")
}

/// Inverse of the lower bidiagonal matrix with `1` on the diagonal and
/// `-y_1, -y_2, ...` below it: entries `y_(j+1) ... y_i`. `ys[0]` is `y_1`.
pub fn inverse_bidiag(ys: &[MultiPoly], n: usize) -> Result<PolyMatrix> {
    if n > 0 && ys.len() < n - 1 {
        return Err(Error::WindowTooSmall { needed: n - 1, have: ys.len() });
    }
    Ok(PolyMatrix::from_fn(n, |i, j| {
        if j > i {
            MultiPoly::zero()
        } else {
            ys[j..i].iter().fold(MultiPoly::one(), |acc, y| &acc * y)
        }
    }))
}

/// `D = diag(n!)`.
pub fn diag_factorial(n: usize) -> PolyMatrix {
    PolyMatrix::from_fn(n, |i, j| {
        if i == j {
            MultiPoly::constant(Rational::factorial(i as u32))
        } else {
            MultiPoly::zero()
        }
    })
}

pub fn diag_factorial_inv(n: usize) -> PolyMatrix {
    PolyMatrix::from_fn(n, |i, j| {
        if i == j {
            MultiPoly::constant(Rational::factorial(i as u32).recip().unwrap())
        } else {
            MultiPoly::zero()
        }
    })
}

/// `d_(j+1) ... d_i a_ij` on a lower-triangular window; `d[i]` is `d_i`
/// (`d[0]` is never used).
pub fn sharp_scale(a: &PolyMatrix, d: &[MultiPoly]) -> Result<PolyMatrix> {
    if a.shape() != Shape::LowerTriangular {
        return Err(Error::Invalid("sharp scaling needs a lower-triangular window".into()));
    }
    if d.len() < a.size() {
        return Err(Error::WindowTooSmall { needed: a.size(), have: d.len() });
    }
    Ok(PolyMatrix::from_fn(a.size(), |i, j| {
        if j > i || a.get(i, j).is_zero() {
            return MultiPoly::zero();
        }
        let f = d[j + 1..=i].iter().fold(MultiPoly::one(), |acc, x| &acc * x);
        &f * a.get(i, j)
    }))
}

/// `d_i = i`, giving `(n!/k!) a_nk`.
pub fn sharp(a: &PolyMatrix) -> Result<PolyMatrix> {
    let d: Vec<MultiPoly> = (0..a.size()).map(|i| MultiPoly::int(i as i64)).collect();
    sharp_scale(a, &d)
}
