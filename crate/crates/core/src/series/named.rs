//! Series that recur across the forest and digraph constructions.

use super::{lagrange_solve, solve_autonomous_ode, Series};
use crate::error::Result;
use crate::exactalg::{q_int, MultiPoly, Rational, Var};

/// `exp(c u) = sum c^n u^n / n!`.
pub fn exp_series(c: &MultiPoly, order: usize) -> Series {
    let mut pw = MultiPoly::one();
    Series::from_fn(order, |n| {
        let out = pw.scale(&Rational::factorial(n as u32).recip().unwrap());
        pw = &pw * c;
        out
    })
}

/// `1 / (1 - c u)`.
pub fn geometric(c: &MultiPoly, order: usize) -> Series {
    let mut pw = MultiPoly::one();
    Series::from_fn(order, |_| {
        let out = pw.clone();
        pw = &pw * c;
        out
    })
}

/// `Phi(u) = sum phi_m u^m` with symbolic coefficients.
pub fn phi_generic(order: usize) -> Series {
    Series::from_fn(order, |m| MultiPoly::var(Var::phi(m)))
}

/// `Psi(s; y, phi) = Phi(s) / (1 - y s)`, whose coefficients are the
/// convolutions `(phi * y^N)_m = sum_l phi_l y^(m-l)`.
pub fn psi_y_phi(phi: &Series) -> Series {
    phi * &geometric(&MultiPoly::var(Var::Y), phi.order())
}

/// `e^(z s) / (1 - y s)`.
pub fn ramanujan_a(order: usize) -> Series {
    &exp_series(&MultiPoly::var(Var::Z), order) * &geometric(&MultiPoly::var(Var::Y), order)
}

/// Tree function `T = t e^T`.
pub fn tree_function(order: usize) -> Series {
    lagrange_solve(&exp_series(&MultiPoly::one(), order.saturating_sub(1)), order)
}

/// `-log(1 - f)`; needs `f(0) = 0`.
pub fn neg_log_one_minus(f: &Series) -> Result<Series> {
    let one_minus = &Series::one(f.order()) - f;
    Ok(-&one_minus.log()?)
}

/// `(e^(w T) - 1) / w = sum_(m>=1) w^(m-1) T^m / m!`.
pub fn root_descent_g(order: usize) -> Series {
    let t = tree_function(order);
    let mut acc = Series::zero(order);
    let mut tp = Series::one(order);
    let w = MultiPoly::var(Var::W);
    let mut wp = MultiPoly::one();
    for m in 1..=order {
        tp = &tp * &t;
        let c = wp.scale(&Rational::factorial(m as u32).recip().unwrap());
        acc = &acc + &tp.scale(&c);
        wp = &wp * &w;
    }
    acc
}

/// Rooted-tree EGF `R(t; y, phi)` from `R' = Psi(R; y, phi)`, with the
/// normalisation that gives `f_(n,1)(y, phi)` as `n! [t^n] R`.
pub fn rooted_tree_egf(phi: &Series, order: usize) -> Series {
    solve_autonomous_ode(&psi_y_phi(&phi.truncate(order.saturating_sub(1).min(phi.order()))), order)
}

/// Column-one EGF of the q-forest numbers, `sum [n]_q^(n-1) t^n / n!`.
pub fn q_forest_egf(order: usize) -> Series {
    Series::from_egf(order, |n| if n == 0 { MultiPoly::zero() } else { q_int(n as u32).pow(n as u32 - 1) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::p;

    #[test]
    fn ramanujan_column_one() {
        let r = solve_autonomous_ode(&ramanujan_a(4), 4);
        let e = r.egf_coeffs();
        assert_eq!(e[1], p("1"));
        assert_eq!(e[2], p("z + y"));
        assert_eq!(e[3], p("2*z^2 + 4*z*y + 3*y^2"));
        assert_eq!(e[4], p("6*z^3 + 18*z^2*y + 25*z*y^2 + 15*y^3"));
    }

    #[test]
    fn root_descent_column_one() {
        // n! [t^n] G = (w + n)^(n-1)
        let g = root_descent_g(7);
        for (n, c) in g.egf_coeffs().into_iter().enumerate().skip(1) {
            assert_eq!(c, p(&format!("(w + {n})^{}", n - 1)));
        }
    }

    #[test]
    fn neg_log_of_geometric_tail() {
        let f = Series::t(6);
        let l = neg_log_one_minus(&f).unwrap();
        let expect: Vec<_> = (0..=6).map(|n| if n == 0 { p("0") } else { MultiPoly::constant(Rational::new(1, n)) }).collect();
        assert_eq!(l.coeffs(), expect.as_slice());
    }
}
