//! Every named triangle, built along each independent route available.
//!
//! [`named_triangle`] builds all routes, insists they agree entrywise on the
//! window, and only then applies the caller's specializations.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::{output_matrix, riordan, riordan_production_from_az, special, Origin, PolyMatrix};
use crate::error::{Error, Result};
use crate::exactalg::{q_binomial, q_int, rising, Monomial, MultiPoly, Rational, Var};
use crate::series::named::{
    exp_series, geometric, neg_log_one_minus, phi_generic, psi_y_phi, ramanujan_a, root_descent_g,
    tree_function,
};
use crate::series::{lagrange_power, solve_autonomous_ode, Series};

pub const TRIANGLES: &[&str] = &[
    "forest",
    "forest_Fx",
    "ramanujan_yz",
    "rooted_forest_yphi",
    "lah_phi",
    "sgs_ab",
    "q_forest",
    "q_forest_star",
    "q_sgs",
    "ordered_forest",
    "functional_digraph_psi",
    "psi_X",
    "psi_Y",
    "root_descent_sharp",
    "refined_ramanujan_yvec",
    "identity",
    "ramanujan_coeff",
];

type Routes = Vec<(&'static str, PolyMatrix)>;

fn int(n: impl Into<BigInt>) -> MultiPoly {
    MultiPoly::constant(Rational::from_bigint(n.into()))
}

fn v(x: Var) -> MultiPoly {
    MultiPoly::var(x)
}

fn pow_u(n: usize, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(n), e)
}

/// `f_nk = binom(n-1, k-1) n^(n-k)`, with `f_0k = delta_0k`.
pub fn forest_number(n: usize, k: usize) -> BigInt {
    if n == 0 {
        return BigInt::from((k == 0) as u8);
    }
    if k == 0 || k > n {
        return BigInt::from(0);
    }
    let b = Rational::binomial(n as u32 - 1, k as u32 - 1).numer();
    b * pow_u(n, n - k)
}

/// Unsigned Stirling numbers of the first kind, `c[j][k]` for `j, k < n`.
pub fn stirling_first(n: usize) -> Vec<Vec<BigInt>> {
    let mut c = vec![vec![BigInt::from(0); n.max(1)]; n.max(1)];
    c[0][0] = BigInt::from(1);
    for j in 1..n {
        for k in 1..=j {
            c[j][k] = &c[j - 1][k - 1] + &c[j - 1][k] * (j - 1);
        }
    }
    c
}

/// Stirling numbers of the second kind.
pub fn stirling_second(n: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::from(0); n.max(1)]; n.max(1)];
    s[0][0] = BigInt::from(1);
    for j in 1..n {
        for k in 1..=j {
            s[j][k] = &s[j - 1][k - 1] + &s[j - 1][k] * k;
        }
    }
    s
}

fn lower(n: usize, mut f: impl FnMut(usize, usize) -> MultiPoly) -> PolyMatrix {
    PolyMatrix::from_fn(n, |i, k| if k > i { MultiPoly::zero() } else { f(i, k) })
}

/// Coefficients of `x^k` in a list of row polynomials.
fn from_row_polys(rows: &[MultiPoly], n: usize) -> PolyMatrix {
    lower(n, |i, k| rows[i].coeff_of(Var::X, k as u32))
}

fn forest_closed(n: usize) -> PolyMatrix {
    lower(n, |i, k| int(forest_number(i, k)))
}

/// `a_n = sum_(l<=n) 1/l!`.
pub fn forest_a_sequence(n: usize) -> Vec<MultiPoly> {
    let mut acc = Rational::zero();
    (0..n)
        .map(|m| {
            acc += &Rational::factorial(m as u32).recip().unwrap();
            MultiPoly::constant(acc.clone())
        })
        .collect()
}

/// Production route from an A-sequence with `Z = 0`.
fn from_a_sequence(a: &[MultiPoly], n: usize) -> Result<PolyMatrix> {
    let zero = vec![MultiPoly::zero(); n];
    let p = riordan_production_from_az(a, &zero, n)?;
    output_matrix(&p, n)
}

fn ones(n: usize) -> Series {
    Series::one(n.saturating_sub(1))
}

fn order_of(n: usize) -> usize {
    n.saturating_sub(1)
}

/// `(phi * y^N)_m = sum_(l<=m) phi_l y^(m-l)`, generic `phi`.
pub fn phi_conv_y(n: usize) -> Vec<MultiPoly> {
    psi_y_phi(&phi_generic(n.max(1) - 1)).coeffs().to_vec()
}

/// Column-one sequence of the SGS array on the `h` route:
/// `h(u) = (e^(-a u) - e^(-b u)) / (b - a)`.
fn sgs_h(order: usize) -> Series {
    let (a, b) = (v(Var::A), v(Var::B));
    Series::from_fn(order, |m| {
        if m == 0 {
            return MultiPoly::zero();
        }
        // complete homogeneous h_(m-1)(a, b)
        let mut hsum = MultiPoly::zero();
        for i in 0..m {
            hsum += &(&a.pow(i as u32) * &b.pow((m - 1 - i) as u32));
        }
        let sign = if m % 2 == 1 { 1 } else { -1 };
        hsum.scale(&Rational::new(sign, 1).checked_div(&Rational::factorial(m as u32)).unwrap())
    })
}

/// `P_n(x; a, b) = x prod_(i=1)^(n-1) (x + i a + (n-i) b)`.
pub fn sgs_row(n: usize) -> MultiPoly {
    if n == 0 {
        return MultiPoly::one();
    }
    let (x, a, b) = (v(Var::X), v(Var::A), v(Var::B));
    (1..n).fold(x.clone(), |acc, i| {
        &acc * &(&(&x + &a.scale(&Rational::from(i))) + &b.scale(&Rational::from(n - i)))
    })
}

/// `x prod_(i=1)^(n-1) (q^i x + y + [i]_q a + q^i [n-i]_q b)`.
pub fn q_sgs_row(n: usize) -> MultiPoly {
    if n == 0 {
        return MultiPoly::one();
    }
    let (x, y, a, b) = (v(Var::X), v(Var::Y), v(Var::A), v(Var::B));
    (1..n).fold(x.clone(), |acc, i| {
        let qi = MultiPoly::term(Monomial::var(Var::Q, i as u32), Rational::one());
        let f = &(&(&(&qi * &x) + &y) + &(&q_int(i as u32) * &a)) + &(&(&qi * &q_int((n - i) as u32)) * &b);
        &acc * &f
    })
}

fn q_sgs_row_alt(n: usize) -> MultiPoly {
    if n == 0 {
        return MultiPoly::one();
    }
    let (x, y, a, b) = (v(Var::X), v(Var::Y), v(Var::A), v(Var::B));
    let qn = q_int(n as u32);
    (1..n).fold(x.clone(), |acc, i| {
        let qi = MultiPoly::term(Monomial::var(Var::Q, i as u32), Rational::one());
        let qii = q_int(i as u32);
        // q^i [n-i]_q = [n]_q - [i]_q
        let f = &(&(&(&qi * &x) + &y) + &(&qii * &a)) + &(&(&qn - &qii) * &b);
        &acc * &f
    })
}

/// `x prod_(i=1)^(n-1) (q^i x + [n]_q)`.
pub fn q_forest_star_row(n: usize) -> MultiPoly {
    if n == 0 {
        return MultiPoly::one();
    }
    let x = v(Var::X);
    let qn = q_int(n as u32);
    (1..n).fold(x.clone(), |acc, i| {
        &acc * &(&x.mul_term(&Monomial::var(Var::Q, i as u32), &Rational::one()) + &qn)
    })
}

fn q_forest_entry(n: usize, k: usize) -> MultiPoly {
    if n == 0 {
        return int((k == 0) as u8);
    }
    if k == 0 {
        return MultiPoly::zero();
    }
    &q_binomial(n as u32 - 1, k as u32 - 1) * &q_int(n as u32).pow((n - k) as u32)
}

fn q_forest_entry_alt(n: usize, k: usize) -> Result<MultiPoly> {
    if n == 0 {
        return Ok(int((k == 0) as u8));
    }
    let qn = q_int(n as u32);
    // binom_q(n, k) [k]_q [n]_q^(n-k-1), read with exact division when k = n
    let num = &(&q_binomial(n as u32, k as u32) * &q_int(k as u32)) * &qn.pow((n - k) as u32);
    num.exact_div(&qn)
}

fn rooted_forest_routes(n: usize) -> Result<Routes> {
    let o = order_of(n);
    let phi = phi_generic(o);
    let r = solve_autonomous_ode(&psi_y_phi(&phi), o);
    Ok(vec![
        ("riordan", riordan(&ones(n), &r, n)?),
        ("production", from_a_sequence(&phi_conv_y(n), n)?),
    ])
}

fn lah_routes(n: usize) -> Result<Routes> {
    let o = order_of(n);
    let phi = phi_generic(o);
    let g = solve_autonomous_ode(&phi, o);
    let a: Vec<MultiPoly> = phi.coeffs().to_vec();
    Ok(vec![
        ("production", from_a_sequence(&a, n)?),
        ("riordan", riordan(&ones(n), &g, n)?),
    ])
}

/// Windows built along every route this crate knows for `name`.
pub fn routes(name: &str, n: usize) -> Result<Routes> {
    let o = order_of(n);
    Ok(match name {
        "identity" => vec![("closed", special::identity(n))],
        "forest" => vec![
            ("closed", forest_closed(n)),
            ("riordan", riordan(&ones(n), &tree_function(o), n)?),
            ("production", from_a_sequence(&forest_a_sequence(n), n)?),
        ],
        "forest_Fx" => {
            let closed = lower(n, |i, k| {
                if i == 0 || k == i {
                    return MultiPoly::one();
                }
                let (x, kk, nn) = (v(Var::X), int(k), int(i));
                let base = &x + &nn;
                (&(&x + &kk) * &base.pow((i - k - 1) as u32)).scale(&Rational::binomial(i as u32, k as u32))
            });
            let prod = forest_closed(n).mul(&special::binomial(n, &v(Var::X)))?;
            vec![("closed", closed), ("binomial_product", prod)]
        }
        "ramanujan_yz" => {
            let r = solve_autonomous_ode(&ramanujan_a(o), o);
            let a = ramanujan_a(o).coeffs().to_vec();
            vec![("riordan", riordan(&ones(n), &r, n)?), ("production", from_a_sequence(&a, n)?)]
        }
        "rooted_forest_yphi" => rooted_forest_routes(n)?,
        "lah_phi" => lah_routes(n)?,
        "sgs_ab" => {
            let rows: Vec<MultiPoly> = (0..n).map(sgs_row).collect();
            let h = sgs_h(o);
            let g = h.comp_inverse()?;
            let a = h.derivative().recip()?;
            let mut a_seq = a.coeffs().to_vec();
            a_seq.resize(n.max(a_seq.len()), MultiPoly::zero());
            vec![
                ("closed", from_row_polys(&rows, n)),
                ("riordan", riordan(&ones(n), &g, n)?),
                ("production", from_a_sequence(&a_seq, n)?),
            ]
        }
        "q_forest" => {
            let alt = {
                let mut rows = Vec::new();
                for i in 0..n {
                    let mut r = Vec::new();
                    for k in 0..n {
                        r.push(if k > i { MultiPoly::zero() } else { q_forest_entry_alt(i, k)? });
                    }
                    rows.push(r);
                }
                PolyMatrix::from_rows(rows)?
            };
            vec![("closed", lower(n, q_forest_entry)), ("closed_alt", alt)]
        }
        "q_forest_star" => {
            let closed = lower(n, |i, k| {
                q_forest_entry(i, k).mul_term(&Monomial::var(Var::Q, (k * k.saturating_sub(1) / 2) as u32), &Rational::one())
            });
            let rows: Vec<MultiPoly> = (0..n).map(q_forest_star_row).collect();
            vec![("closed", closed), ("product", from_row_polys(&rows, n))]
        }
        "q_sgs" => {
            let r1: Vec<MultiPoly> = (0..n).map(q_sgs_row).collect();
            let r2: Vec<MultiPoly> = (0..n).map(q_sgs_row_alt).collect();
            vec![("product", from_row_polys(&r1, n)), ("product_alt", from_row_polys(&r2, n))]
        }
        "ordered_forest" => {
            let closed = lower(n, |i, k| int(forest_number(i, k)).scale(&Rational::factorial(k as u32)));
            // n! [t^n] T^k by Lagrange, T = t e^T
            let e = exp_series(&MultiPoly::one(), o);
            let cols: Vec<Series> = (0..n).map(|k| lagrange_power(&e, o, k)).collect();
            let gf = lower(n, |i, k| cols[k].coeff(i).scale(&Rational::factorial(i as u32)));
            vec![("closed", closed), ("egf", gf)]
        }
        "functional_digraph_psi" => {
            let g = neg_log_one_minus(&tree_function(o))?;
            let c = stirling_first(n);
            let closed = lower(n, |i, k| {
                int((k..=i).map(|j| forest_number(i, j) * &c[j][k]).sum::<BigInt>())
            });
            vec![("riordan", riordan(&ones(n), &g, n)?), ("closed", closed)]
        }
        "psi_X" => {
            let closed = lower(n, |i, k| int(forest_number(i, k)) * rising(&v(Var::Y), k as u32));
            let xt = tree_function(o).scale(&v(Var::X));
            let egf = neg_log_one_minus(&xt)?.scale(&v(Var::Y)).exp()?;
            let rows = egf.egf_coeffs();
            vec![("closed", closed), ("egf", from_row_polys(&rows, n))]
        }
        "psi_Y" => {
            let xt = tree_function(o).scale(&v(Var::X));
            let g = neg_log_one_minus(&xt)?;
            let c = stirling_first(n);
            let closed = lower(n, |i, k| {
                let mut acc = MultiPoly::zero();
                for j in k..=i {
                    acc += &MultiPoly::term(Monomial::var(Var::X, j as u32), Rational::from_bigint(forest_number(i, j) * &c[j][k]));
                }
                acc
            });
            vec![("riordan", riordan(&ones(n), &g, n)?), ("closed", closed)]
        }
        "root_descent_sharp" => {
            let s = stirling_second(n);
            let closed = lower(n, |i, k| {
                let mut acc = MultiPoly::zero();
                for j in k..=i {
                    acc += &MultiPoly::term(
                        Monomial::var(Var::W, (j - k) as u32),
                        Rational::from_bigint(forest_number(i, j) * &s[j][k]),
                    );
                }
                acc
            });
            vec![("riordan", riordan(&ones(n), &root_descent_g(o), n)?), ("closed", closed)]
        }
        "refined_ramanujan_yvec" => vec![("production", output_matrix(&refined_production(n)?, n)?)],
        "ramanujan_coeff" => ramanujan_coeff_routes(n)?,
        _ => return Err(Error::UnknownName(name.to_string())),
    })
}

/// `P(y, z) = B_z D T(y_1, y_2, ...) D^(-1) Delta` on an `n` window.
pub fn refined_production(n: usize) -> Result<PolyMatrix> {
    let ys: Vec<MultiPoly> = (1..n.max(2)).map(|i| v(Var::yi(i))).collect();
    let m = special::binomial(n, &v(Var::Z))
        .mul(&special::diag_factorial(n))?
        .mul(&special::inverse_bidiag(&ys, n)?)?
        .mul(&special::diag_factorial_inv(n))?
        .mul(&special::delta(n))?;
    Ok(m)
}

/// `r(n, m) = [y^m z^(n-m)] f_(n+1,1)(y, z)`, by coefficient extraction and
/// by the recurrence `r(n,m) = n r(n-1,m) + (n+m-1) r(n-1,m-1)`.
fn ramanujan_coeff_routes(n: usize) -> Result<Routes> {
    let r = solve_autonomous_ode(&ramanujan_a(n), n + 1);
    let col = r.egf_coeffs();
    let extracted = lower(n, |i, m| {
        let mono = Monomial::from_pairs([(Var::Y, m as u32), (Var::Z, (i - m) as u32)]);
        MultiPoly::constant(col[i + 1].coeff_monomial(&mono))
    });
    let mut t = vec![vec![BigInt::from(0); n.max(1)]; n.max(1)];
    if n > 0 {
        t[0][0] = BigInt::from(1);
    }
    for i in 1..n {
        for m in 0..=i {
            let mut acc = &t[i - 1][m] * i;
            if m > 0 {
                acc += &t[i - 1][m - 1] * (i + m - 1);
            }
            t[i][m] = acc;
        }
    }
    let rec = lower(n, |i, m| int(t[i][m].clone()));
    Ok(vec![("extracted", extracted), ("recurrence", rec)])
}

/// Build every route, require agreement, then specialize.
pub fn named_triangle(name: &str, bind: &HashMap<Var, MultiPoly>, n: usize) -> Result<PolyMatrix> {
    let rs = routes(name, n)?;
    let (first_name, first) = &rs[0];
    for (rn, m) in &rs[1..] {
        if m != first {
            return Err(Error::RouteMismatch(format!("{name}: {first_name} vs {rn} at window {n}")));
        }
    }
    let mut out = first.substitute(bind);
    out.origin = Some(Origin {
        name: name.to_string(),
        production: false,
        bindings: {
            let mut b: Vec<_> = bind.iter().map(|(v, p)| (*v, p.clone())).collect();
            b.sort_by_key(|p| p.0);
            b
        },
    });
    Ok(out)
}

/// Rebuild a window of a different size from its recorded origin.
pub fn regenerate(origin: &Origin, n: usize) -> Result<PolyMatrix> {
    let bind: HashMap<Var, MultiPoly> = origin.bindings.iter().cloned().collect();
    if origin.production {
        let a = named_triangle(&origin.name, &HashMap::new(), n + 1)?;
        Ok(super::production_matrix(&a)?.substitute(&bind))
    } else {
        named_triangle(&origin.name, &bind, n)
    }
}

/// The all-ones lower triangle, output of `e_00 + Delta`.
pub fn all_ones(n: usize) -> Result<PolyMatrix> {
    let p = special::unit(n, 0, 0).add(&special::delta(n))?;
    output_matrix(&p, n)
}

/// Phi from a sequence given as series, used to specialize generic `phi_m`.
pub fn phi_bindings(seq: &[MultiPoly]) -> HashMap<Var, MultiPoly> {
    seq.iter().enumerate().map(|(m, p)| (Var::phi(m), p.clone())).collect()
}

/// `e^(z s)/(1 - y s)` and friends are exposed for tests and the CLI.
pub fn geometric_y(n: usize) -> Series {
    geometric(&v(Var::Y), n)
}
