//! Exponential Riordan arrays `R[F, G]_nk = (n!/k!) [t^n] F G^k`.

use super::PolyMatrix;
use crate::error::{Error, Result};
use crate::exactalg::{MultiPoly, Rational};
use crate::series::Series;

pub fn riordan(f: &Series, g: &Series, n: usize) -> Result<PolyMatrix> {
    if !g.coeff(0).is_zero() {
        return Err(Error::Series("Riordan array needs G(0) = 0".into()));
    }
    if n == 0 {
        return Ok(PolyMatrix::zero(0));
    }
    let order = n - 1;
    if f.order() < order || g.order() < order {
        return Err(Error::WindowTooSmall { needed: order, have: f.order().min(g.order()) });
    }
    let (f, g) = (f.truncate(order), g.truncate(order));
    let mut cols = Vec::with_capacity(n);
    let mut col = f;
    for _ in 0..n {
        cols.push(col.clone());
        col = &col * &g;
    }
    Ok(PolyMatrix::from_fn(n, |i, k| {
        if k > i {
            return MultiPoly::zero();
        }
        let c = Rational::factorial(i as u32) / Rational::factorial(k as u32);
        cols[k].coeff(i).scale(&c)
    }))
}

/// `p_nk = (n!/k!) (z_(n-k) + k a_(n-k+1))`, with `z_(-1) = 0`.
pub fn riordan_production_from_az(a: &[MultiPoly], z: &[MultiPoly], n: usize) -> Result<PolyMatrix> {
    if a.len() < n || z.len() < n {
        return Err(Error::WindowTooSmall { needed: n, have: a.len().min(z.len()) });
    }
    Ok(PolyMatrix::from_fn(n, |i, k| {
        if k > i + 1 {
            return MultiPoly::zero();
        }
        let mut acc = if k <= i { z[i - k].clone() } else { MultiPoly::zero() };
        if k > 0 {
            acc += &a[i + 1 - k].scale(&Rational::from(k));
        }
        acc.scale(&(Rational::factorial(i as u32) / Rational::factorial(k as u32)))
    }))
}

/// `A(s) = G'(Gbar(s))`, `Z(s) = F'(Gbar(s)) / F(Gbar(s))`.
pub fn az_from_fg(f: &Series, g: &Series) -> Result<(Series, Series)> {
    if !g.coeff(0).is_zero() {
        return Err(Error::Series("A/Z sequences need G(0) = 0".into()));
    }
    if f.order() == 0 || g.order() == 0 {
        return Err(Error::Series("F and G must be known beyond their constant terms".into()));
    }
    let gbar = g.comp_inverse()?;
    let order = gbar.order() - 1;
    let a = g.derivative().compose(&gbar.truncate(order))?;
    let f = f.truncate(f.order().min(order + 1));
    let logder = f.derivative().exact_div(&f.truncate(f.order() - 1))?;
    let z = logder.compose(&gbar.truncate(logder.order().min(order)))?;
    Ok((a, z))
}
