//! Truncated power series in one formal variable with polynomial coefficients.
//!
//! A [`Series`] of order `N` knows `c_0..=c_N`. Binary operations truncate to
//! the smaller order, so no result claims more accuracy than its inputs.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exactalg::{MultiPoly, Rational, Var};

pub mod named;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    c: Vec<MultiPoly>,
}

impl Series {
    /// Coefficients `c_0..=c_N`; an empty vector is rejected.
    pub fn new(c: Vec<MultiPoly>) -> Self {
        assert!(!c.is_empty(), "series needs at least c_0");
        Series { c }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> MultiPoly) -> Self {
        Series { c: (0..=order).map(f).collect() }
    }

    /// EGF with the given coefficients: `sum a_n t^n / n!`.
    pub fn from_egf(order: usize, mut a: impl FnMut(usize) -> MultiPoly) -> Self {
        Series::from_fn(order, |n| a(n).scale(&Rational::factorial(n as u32).recip().unwrap()))
    }

    pub fn zero(order: usize) -> Self {
        Series::from_fn(order, |_| MultiPoly::zero())
    }

    pub fn constant(c: MultiPoly, order: usize) -> Self {
        let mut s = Series::zero(order);
        s.c[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Series::constant(MultiPoly::one(), order)
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        let mut s = Series::zero(order);
        if order >= 1 {
            s.c[1] = MultiPoly::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &MultiPoly {
        &self.c[n]
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.c
    }

    /// `n! [t^n]` for every known `n`.
    pub fn egf_coeffs(&self) -> Vec<MultiPoly> {
        self.c
            .iter()
            .enumerate()
            .map(|(n, c)| c.scale(&Rational::factorial(n as u32)))
            .collect()
    }

    pub fn truncate(&self, order: usize) -> Series {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Series { c: self.c[..=order].to_vec() }
    }

    pub fn scale(&self, p: &MultiPoly) -> Series {
        Series { c: self.c.iter().map(|c| c * p).collect() }
    }

    /// `f(c t)`.
    pub fn dilate(&self, k: &MultiPoly) -> Series {
        let mut pw = MultiPoly::one();
        let mut out = Vec::with_capacity(self.c.len());
        for c in &self.c {
            out.push(c * &pw);
            pw = &pw * k;
        }
        Series { c: out }
    }

    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Series {
        Series { c: self.c.iter().map(f).collect() }
    }

    pub fn derivative(&self) -> Series {
        if self.order() == 0 {
            return Series::zero(0);
        }
        Series {
            c: (1..self.c.len())
                .map(|n| self.c[n].scale(&Rational::from(n)))
                .collect(),
        }
    }

    /// Antiderivative with zero constant term; order goes up by one.
    pub fn integral(&self) -> Series {
        let mut c = vec![MultiPoly::zero()];
        for (n, a) in self.c.iter().enumerate() {
            c.push(a.scale(&Rational::new(1, n as i64 + 1)));
        }
        Series { c }
    }

    fn mul_to(&self, rhs: &Series, order: usize) -> Series {
        Series::from_fn(order, |n| {
            let mut acc = MultiPoly::zero();
            for k in 0..=n {
                if self.c[k].is_zero() || rhs.c[n - k].is_zero() {
                    continue;
                }
                acc += &(&self.c[k] * &rhs.c[n - k]);
            }
            acc
        })
    }

    pub fn pow(&self, k: u32) -> Series {
        let mut acc = Series::one(self.order());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `q` with `q * d = self`; each step needs an exact division by `d_0`.
    pub fn exact_div(&self, d: &Series) -> Result<Series> {
        let order = self.order().min(d.order());
        if d.c[0].is_zero() {
            return Err(Error::Series("divisor has zero constant term".into()));
        }
        let mut q: Vec<MultiPoly> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut r = self.c[n].clone();
            for k in 0..n {
                if !q[k].is_zero() && !d.c[n - k].is_zero() {
                    r -= &(&q[k] * &d.c[n - k]);
                }
            }
            q.push(r.exact_div(&d.c[0])?);
        }
        Ok(Series { c: q })
    }

    pub fn recip(&self) -> Result<Series> {
        Series::one(self.order()).exact_div(self)
    }

    /// `self(g)`; needs `g(0) = 0`.
    pub fn compose(&self, g: &Series) -> Result<Series> {
        if !g.c[0].is_zero() {
            return Err(Error::Series("inner series must have zero constant term".into()));
        }
        let order = self.order().min(g.order());
        let g = g.truncate(order);
        // Horner from the top
        let mut acc = Series::constant(self.c[order].clone(), order);
        for n in (0..order).rev() {
            acc = &acc * &g;
            acc.c[0] += &self.c[n];
        }
        Ok(acc)
    }

    /// Compositional inverse; needs `c_0 = 0` and `c_1` a nonzero constant.
    pub fn comp_inverse(&self) -> Result<Series> {
        if !self.c[0].is_zero() {
            return Err(Error::Series("compositional inverse needs c_0 = 0".into()));
        }
        let n_max = self.order();
        if n_max == 0 {
            return Ok(Series::zero(0));
        }
        match self.c[1].as_constant() {
            Some(c) if !c.is_zero() => {}
            _ => return Err(Error::Series("compositional inverse needs a unit c_1".into())),
        }
        // self = u / Phi(u)  =>  inverse = t Phi(inverse)
        let shifted = Series { c: self.c[1..].to_vec() };
        let phi = shifted.recip()?;
        Ok(lagrange_solve(&phi, n_max))
    }

    /// `exp(self)`; needs `c_0 = 0`.
    pub fn exp(&self) -> Result<Series> {
        if !self.c[0].is_zero() {
            return Err(Error::Series("exp needs c_0 = 0".into()));
        }
        let n_max = self.order();
        // n e_n = sum_{k=1}^n k f_k e_{n-k}
        let mut e = vec![MultiPoly::one()];
        for n in 1..=n_max {
            let mut acc = MultiPoly::zero();
            for k in 1..=n {
                if !self.c[k].is_zero() {
                    acc += &(&self.c[k] * &e[n - k]).scale(&Rational::from(k));
                }
            }
            e.push(acc.scale(&Rational::new(1, n as i64)));
        }
        Ok(Series { c: e })
    }

    /// `log(self)`; needs `c_0 = 1`.
    pub fn log(&self) -> Result<Series> {
        if !self.c[0].is_one() {
            return Err(Error::Series("log needs c_0 = 1".into()));
        }
        if self.order() == 0 {
            return Ok(Series::zero(0));
        }
        let d = self.derivative();
        let q = d.exact_div(&self.truncate(d.order()))?;
        Ok(q.integral())
    }

    /// Substitute into every coefficient.
    pub fn substitute(&self, v: Var, by: &MultiPoly) -> Series {
        self.map(|c| c.substitute_one(v, by))
    }
}

/// `f = t Phi(f)` by Lagrange inversion: `[t^n] f = (1/n) [u^(n-1)] Phi^n`.
pub fn lagrange_solve(phi: &Series, n_max: usize) -> Series {
    lagrange_power(phi, n_max, 1)
}

/// `f^k` where `f = t Phi(f)`: `[t^n] f^k = (k/n) [u^(n-k)] Phi^n`.
pub fn lagrange_power(phi: &Series, n_max: usize, k: usize) -> Series {
    assert!(phi.order() + 1 >= n_max, "Phi known to order {} only", phi.order());
    let mut out = vec![MultiPoly::zero(); n_max + 1];
    if n_max == 0 {
        out[0] = if k == 0 { MultiPoly::one() } else { MultiPoly::zero() };
        return Series { c: out };
    }
    if k == 0 {
        out[0] = MultiPoly::one();
        return Series { c: out };
    }
    let phi = phi.truncate((n_max - 1).min(phi.order()));
    let mut pw = Series::one(phi.order());
    for n in 1..=n_max {
        pw = &pw * &phi;
        if n >= k {
            out[n] = pw.c[n - k].scale(&Rational::new(k as i64, n as i64));
        }
    }
    Series { c: out }
}

/// `H(f)` where `f = t Phi(f)`: `[t^n] H(f) = (1/n) [u^(n-1)] H'(u) Phi^n` for `n >= 1`.
pub fn lagrange_h(phi: &Series, h: &Series, n_max: usize) -> Series {
    assert!(phi.order() + 1 >= n_max && h.order() >= n_max);
    let hp = h.derivative();
    let mut out = vec![h.c[0].clone()];
    let mut pw = Series::one(n_max - 1);
    let phi = phi.truncate(n_max - 1);
    let hp = hp.truncate(n_max - 1);
    for n in 1..=n_max {
        pw = &pw * &phi;
        let prod = &hp * &pw;
        out.push(prod.c[n - 1].scale(&Rational::new(1, n as i64)));
    }
    Series { c: out }
}

/// `G' = A(G)`, `G(0) = 0`, via `(n+1) g_(n+1) = [t^n] A(G_(<=n))`.
pub fn solve_autonomous_ode(a: &Series, n_max: usize) -> Series {
    assert!(a.order() + 1 >= n_max, "A known to order {} only", a.order());
    let mut g = vec![MultiPoly::zero(); n_max + 1];
    for n in 0..n_max {
        let cur = Series { c: g[..=n].to_vec() };
        let a_n = a.truncate(n.min(a.order()));
        let comp = if n == 0 {
            Series::constant(a.c[0].clone(), 0)
        } else {
            a_n.compose(&cur).expect("g_0 = 0")
        };
        g[n + 1] = comp.c[n].scale(&Rational::new(1, n as i64 + 1));
    }
    Series { c: g }
}

impl<'a> Add<&'a Series> for &'a Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let o = self.order().min(rhs.order());
        Series::from_fn(o, |n| &self.c[n] + &rhs.c[n])
    }
}

impl<'a> Sub<&'a Series> for &'a Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let o = self.order().min(rhs.order());
        Series::from_fn(o, |n| &self.c[n] - &rhs.c[n])
    }
}

impl<'a> Mul<&'a Series> for &'a Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        self.mul_to(rhs, self.order().min(rhs.order()))
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.map(|c| -c)
    }
}
