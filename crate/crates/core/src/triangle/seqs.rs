//! Named polynomial sequences, mostly read off named triangles.
//!
//! A triangle name followed by one of the suffixes below selects a sequence:
//!
//! * `_rowgen`: row-generating polynomials `sum_k a_nk x^k`
//!   (in `y` instead when the triangle already involves `x`)
//! * `_rowgen_over_nfact`: the same divided by `n!`
//! * `_col1`: `a_(n+1,1)`
//! * `_col1_over_nfact`, `_col1_over_n1fact`: divided by `n!`, `(n+1)!`

use std::collections::HashMap;

use num_bigint::BigInt;

use super::named::{named_triangle, TRIANGLES};
use super::{over_factorial, row_generating};
use crate::error::{Error, Result};
use crate::exactalg::{q_int, Monomial, MultiPoly, Rational, Var};

pub const STANDALONE: &[&str] = &[
    "tree_powers",
    "inv_factorial",
    "psi_partial_exp",
    "all_ones_rowgen",
    "q_sgs_y_prefix",
    "phi",
];

const SUFFIXES: &[&str] = &["_rowgen_over_nfact", "_rowgen", "_col1_over_n1fact", "_col1_over_nfact", "_col1"];

/// Every sequence name accepted by [`sequence`].
pub fn names() -> Vec<String> {
    let mut out: Vec<String> = STANDALONE.iter().map(|s| s.to_string()).collect();
    for t in TRIANGLES {
        for s in SUFFIXES.iter().rev() {
            out.push(format!("{t}{s}"));
        }
    }
    out
}

/// First `len` terms of the named sequence, after applying `bind`.
pub fn sequence(name: &str, bind: &HashMap<Var, MultiPoly>, len: usize) -> Result<Vec<MultiPoly>> {
    let raw = match standalone(name, len) {
        Some(s) => s,
        None => derived(name, len)?,
    };
    Ok(raw.iter().map(|p| p.substitute(bind)).collect())
}

fn standalone(name: &str, len: usize) -> Option<Vec<MultiPoly>> {
    let s = match name {
        "tree_powers" => (0..len)
            .map(|n| MultiPoly::constant(Rational::from_bigint(num_traits::pow(BigInt::from(n + 1), n))))
            .collect(),
        "inv_factorial" => (0..len).map(|n| MultiPoly::constant(Rational::factorial(n as u32).recip().unwrap())).collect(),
        "psi_partial_exp" => super::named::forest_a_sequence(len),
        "all_ones_rowgen" => (0..len)
            .map(|n| MultiPoly::from_terms((0..=n).map(|k| (Monomial::var(Var::X, k as u32), Rational::one()))))
            .collect(),
        "q_sgs_y_prefix" => (0..len).map(q_sgs_y_prefix).collect(),
        "phi" => (0..len).map(|m| MultiPoly::var(Var::phi(m))).collect(),
        _ => return None,
    };
    Some(s)
}

/// `s_0 = 1`, `s_n = y prod_(i=1)^(n-1) (y + q^i [n-i]_q b)`.
pub fn q_sgs_y_prefix(n: usize) -> MultiPoly {
    if n == 0 {
        return MultiPoly::one();
    }
    let (y, b) = (MultiPoly::var(Var::Y), MultiPoly::var(Var::B));
    (1..n).fold(y.clone(), |acc, i| {
        let qi = Monomial::var(Var::Q, i as u32);
        let f = &y + &(&q_int((n - i) as u32) * &b).mul_term(&qi, &Rational::one());
        &acc * &f
    })
}

fn derived(name: &str, len: usize) -> Result<Vec<MultiPoly>> {
    let (tri, suffix) = SUFFIXES
        .iter()
        .find_map(|s| name.strip_suffix(s).map(|t| (t, *s)))
        .ok_or_else(|| Error::UnknownName(name.to_string()))?;
    if !TRIANGLES.contains(&tri) {
        return Err(Error::UnknownName(name.to_string()));
    }
    let none = HashMap::new();
    if suffix.starts_with("_rowgen") {
        let a = named_triangle(tri, &none, len)?;
        let uses_x = a.entries().iter().any(|p| p.degree_in(Var::X) > 0);
        let (rows, _) = row_generating(&a, if uses_x { Var::Y } else { Var::X })?;
        Ok(if suffix == "_rowgen" { rows } else { over_factorial(&rows, 0) })
    } else {
        let a = named_triangle(tri, &none, len + 1)?;
        let col: Vec<MultiPoly> = (0..len).map(|n| a.get(n + 1, 1).clone()).collect();
        Ok(match suffix {
            "_col1" => col,
            "_col1_over_nfact" => over_factorial(&col, 0),
            _ => over_factorial(&col, 1),
        })
    }
}
