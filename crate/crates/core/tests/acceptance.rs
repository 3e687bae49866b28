//! Acceptance suite: one PASS/FAIL line per criterion, then a nonzero exit
//! status if any criterion failed.
//!
//! Every check is exact; the only tolerances are the wall-clock limits below.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use tpforest::cli::{run_conjecture, CONJECTURES};
use tpforest::combinat::{self, Weighting};
use tpforest::exactalg::{p, MultiPoly, Rational, Var};
use tpforest::series::named::{exp_series, geometric, phi_generic, ramanujan_a, tree_function};
use tpforest::series::{lagrange_solve, solve_autonomous_ode, Series};
use tpforest::tpcheck::{check_hankel_tp, check_tp, minor, tp_seq_builder, CheckOptions, TPReport};
use tpforest::triangle::named::{self, named_triangle, routes};
use tpforest::triangle::seqs::sequence;
use tpforest::triangle::special::{binomial, delta, diag_factorial, diag_factorial_inv, identity, power_toeplitz};
use tpforest::triangle::{hankel, output_matrix, production_matrix, riordan, row_generating, PolyMatrix};

const LIMIT_TABLES: Duration = Duration::from_secs(5);
const LIMIT_PRODMAT: Duration = Duration::from_secs(30);
const LIMIT_COUNTER: Duration = Duration::from_secs(120);
const LIMIT_ORACLE: Duration = Duration::from_secs(600);
const LIMIT_IDENTITY: Duration = Duration::from_secs(300);
const LIMIT_THEOREMS: Duration = Duration::from_secs(1800);
const LIMIT_CONJECTURES: Duration = Duration::from_secs(7200);
const LIMIT_SERIES: Duration = Duration::from_secs(60);

type Check = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn none() -> HashMap<Var, MultiPoly> {
    HashMap::new()
}

fn bind(pairs: &[(Var, &str)]) -> HashMap<Var, MultiPoly> {
    pairs.iter().map(|(v, s)| (*v, p(s))).collect()
}

fn tri(name: &str, n: usize) -> std::result::Result<PolyMatrix, String> {
    named_triangle(name, &none(), n).map_err(|e| format!("{name}: {e}"))
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Compare rows `0..rows.len()` of `m` against displayed prefixes.
fn rows_match(what: &str, m: &PolyMatrix, rows: &[&[&str]]) -> Check {
    for (i, r) in rows.iter().enumerate() {
        for (k, s) in r.iter().enumerate() {
            let want = p(s);
            ensure!(m.get(i, k) == &want, "{what}: entry ({i},{k}) is {}, expected {want}", m.get(i, k));
        }
    }
    Ok(())
}

fn int_rows_match(what: &str, m: &PolyMatrix, rows: &[&[i64]]) -> Check {
    for (i, r) in rows.iter().enumerate() {
        for (k, &c) in r.iter().enumerate() {
            ensure!(m.get(i, k) == &MultiPoly::int(c), "{what}: entry ({i},{k}) is {}, expected {c}", m.get(i, k));
        }
    }
    Ok(())
}

fn passes(what: &str, rep: TPReport) -> Check {
    ensure!(rep.passed(), "{what}: failing minor {:?}", rep.witness);
    Ok(())
}

// ---------------------------------------------------------------- tables

const FOREST: &[&[i64]] = &[
    &[1],
    &[0, 1],
    &[0, 2, 1],
    &[0, 9, 6, 1],
    &[0, 64, 48, 12, 1],
    &[0, 625, 500, 150, 20, 1],
    &[0, 7776, 6480, 2160, 360, 30, 1],
    &[0, 117649, 100842, 36015, 6860, 735, 42, 1],
    &[0, 2097152, 1835008, 688128, 143360, 17920, 1344, 56, 1],
];

const ORDERED: &[&[i64]] = &[
    &[1],
    &[0, 1],
    &[0, 2, 2],
    &[0, 9, 12, 6],
    &[0, 64, 96, 72, 24],
    &[0, 625, 1000, 900, 480, 120],
    &[0, 7776, 12960, 12960, 8640, 3600, 720],
    &[0, 117649, 201684, 216090, 164640, 88200, 30240, 5040],
    &[0, 2097152, 3670016, 4128768, 3440640, 2150400, 967680, 282240, 40320],
];

const PSI: &[&[i64]] = &[
    &[1],
    &[0, 1],
    &[0, 3, 1],
    &[0, 17, 9, 1],
    &[0, 142, 95, 18, 1],
    &[0, 1569, 1220, 305, 30, 1],
    &[0, 21576, 18694, 5595, 745, 45, 1],
    &[0, 355081, 334369, 113974, 18515, 1540, 63, 1],
    &[0, 6805296, 6852460, 2581964, 484729, 49840, 2842, 84, 1],
];

const YZ: &[&[&str]] = &[
    &["1"],
    &["0", "1"],
    &["0", "z + y", "1"],
    &["0", "2*z^2 + 4*z*y + 3*y^2", "3*z + 3*y", "1"],
    &["0", "6*z^3 + 18*z^2*y + 25*z*y^2 + 15*y^3", "11*z^2 + 22*z*y + 15*y^2", "6*z + 6*y", "1"],
];

const LAH: &[&[&str]] = &[
    &["1"],
    &["0", "1"],
    &["0", "phi1", "1"],
    &["0", "phi1^2 + 2*phi2", "3*phi1", "1"],
    &["0", "phi1^3 + 8*phi1*phi2 + 6*phi3", "7*phi1^2 + 8*phi2", "6*phi1", "1"],
    &["0", "phi1^4 + 22*phi1^2*phi2 + 16*phi2^2 + 42*phi1*phi3 + 24*phi4", "15*phi1^3 + 60*phi1*phi2 + 30*phi3", "25*phi1^2 + 20*phi2", "10*phi1", "1"],
];

const SGS: &[&[&str]] = &[
    &["1"],
    &["0", "1"],
    &["0", "a + b", "1"],
    &["0", "2*a^2 + 5*a*b + 2*b^2", "3*a + 3*b", "1"],
    &["0", "6*a^3 + 26*a^2*b + 26*a*b^2 + 6*b^3", "11*a^2 + 26*a*b + 11*b^2", "6*a + 6*b", "1"],
    &["0", "24*a^4 + 154*a^3*b + 269*a^2*b^2 + 154*a*b^3 + 24*b^4", "50*a^3 + 200*a^2*b + 200*a*b^2 + 50*b^3", "35*a^2 + 80*a*b + 35*b^2", "10*a + 10*b", "1"],
];

const QFOREST: &[&[&str]] = &[
    &["1"],
    &["0", "1"],
    &["0", "1 + q", "1"],
    &["0", "1 + 2*q + 3*q^2 + 2*q^3 + q^4", "1 + 2*q + 2*q^2 + q^3", "1"],
    &["0", "1 + 3*q + 6*q^2 + 10*q^3 + 12*q^4 + 12*q^5 + 10*q^6 + 6*q^7 + 3*q^8 + q^9", "1 + 3*q + 6*q^2 + 9*q^3 + 10*q^4 + 9*q^5 + 6*q^6 + 3*q^7 + q^8", "1 + 2*q + 3*q^2 + 3*q^3 + 2*q^4 + q^5", "1"],
];

const SHARP: &[&[&str]] = &[
    &["1"],
    &["0", "1"],
    &["0", "2 + w", "1"],
    &["0", "9 + 6*w + w^2", "6 + 3*w", "1"],
    &["0", "64 + 48*w + 12*w^2 + w^3", "48 + 36*w + 7*w^2", "12 + 6*w", "1"],
    &["0", "625 + 500*w + 150*w^2 + 20*w^3 + w^4", "500 + 450*w + 140*w^2 + 15*w^3", "150 + 120*w + 25*w^2", "20 + 10*w", "1"],
];

fn tables() -> Check {
    let f = tri("forest", 9)?;
    int_rows_match("forest", &f, FOREST)?;
    ensure!(f.get(8, 2) == &MultiPoly::int(1835008), "f_(8,2)");
    rows_match("ramanujan_yz", &tri("ramanujan_yz", 5)?, YZ)?;
    let lah = e(named_triangle("lah_phi", &bind(&[(Var::phi(0), "1")]), 6))?;
    rows_match("lah_phi", &lah, LAH)?;
    rows_match("sgs_ab", &tri("sgs_ab", 6)?, SGS)?;
    rows_match("q_forest", &tri("q_forest", 5)?, QFOREST)?;
    int_rows_match("ordered_forest", &tri("ordered_forest", 9)?, ORDERED)?;
    int_rows_match("functional_digraph_psi", &tri("functional_digraph_psi", 9)?, PSI)?;
    rows_match("root_descent_sharp", &tri("root_descent_sharp", 6)?, SHARP)?;
    // the totals columns of the integer tables
    let (psi, ord) = (tri("functional_digraph_psi", 9)?, tri("ordered_forest", 9)?);
    for n in 0..9usize {
        let total = |m: &PolyMatrix| m.row(n).iter().fold(MultiPoly::zero(), |a, c| &a + c);
        ensure!(total(&f) == MultiPoly::int((n as i64 + 1).pow(n.saturating_sub(1) as u32)), "forest total at n={n}");
        let nn = MultiPoly::int((n as i64).pow(n as u32));
        ensure!(total(&psi) == nn && total(&ord) == nn, "n^n totals at n={n}");
    }
    Ok(())
}

// ---------------------------------------------------------------- production matrices

const FOREST_PROD: &[&[i64]] = &[
    &[0, 1],
    &[0, 2, 1],
    &[0, 5, 4, 1],
    &[0, 16, 15, 6, 1],
    &[0, 65, 64, 30, 8, 1],
    &[0, 326, 325, 160, 50, 10, 1],
    &[0, 1957, 1956, 975, 320, 75, 12, 1],
    &[0, 13700, 13699, 6846, 2275, 560, 105, 14],
];

const SGS_PROD: &[&[&str]] = &[
    &["0", "1"],
    &["0", "a + b", "1"],
    &["0", "a^2 + 3*a*b + b^2", "2*a + 2*b", "1"],
    &["0", "a^3 + 7*a^2*b + 7*a*b^2 + b^3", "3*a^2 + 9*a*b + 3*b^2", "3*a + 3*b", "1"],
    &["0", "a^4 + 15*a^3*b + 33*a^2*b^2 + 15*a*b^3 + b^4", "4*a^3 + 28*a^2*b + 28*a*b^2 + 4*b^3", "6*a^2 + 18*a*b + 6*b^2", "4*a + 4*b", "1"],
    &["0", "a^5 + 31*a^4*b + 131*a^3*b^2 + 131*a^2*b^3 + 31*a*b^4 + b^5", "5*a^4 + 75*a^3*b + 165*a^2*b^2 + 75*a*b^3 + 5*b^4", "10*a^3 + 70*a^2*b + 70*a*b^2 + 10*b^3", "10*a^2 + 30*a*b + 10*b^2", "5*a + 5*b"],
];

const Q_PROD: &[&[&str]] = &[
    &["0", "1"],
    &["0", "1 + q", "1"],
    &["0", "2*q^2 + 2*q^3 + q^4", "q + 2*q^2 + q^3", "1"],
    &["0", "-q^2 - q^3 + 3*q^5 + 6*q^6 + 5*q^7 + 3*q^8 + q^9", "-q^2 + 2*q^4 + 5*q^5 + 5*q^6 + 3*q^7 + q^8", "q^2 + 2*q^3 + 2*q^4 + q^5"],
];

const PSI_PROD: &[&[i64]] = &[
    &[0, 1, 0, 0, 0, 0, 0, 0, 0],
    &[0, 3, 1, 0, 0, 0, 0, 0, 0],
    &[0, 8, 6, 1, 0, 0, 0, 0, 0],
    &[0, 19, 24, 9, 1, 0, 0, 0, 0],
    &[0, 41, 76, 48, 12, 1, 0, 0, 0],
    &[0, 84, 205, 190, 80, 15, 1, 0, 0],
    &[0, 171, 504, 615, 380, 120, 18, 1, 0],
    &[0, 347, 1197, 1764, 1435, 665, 168, 21, 1],
    &[0, 690, 2776, 4788, 4704, 2870, 1064, 224, 24],
];

fn production_matrices() -> Check {
    let pf = e(production_matrix(&tri("forest", 11)?))?;
    int_rows_match("forest production", &pf, FOREST_PROD)?;
    // p_jk = j!/(k-1)! sum_(l=0)^(j+1-k) 1/l!, and p_j0 = 0
    for j in 0..10 {
        for k in 0..10 {
            let want = if k == 0 || k > j + 1 {
                Rational::zero()
            } else {
                let s = (0..=j + 1 - k).fold(Rational::zero(), |a, l| &a + &Rational::factorial(l as u32).recip().unwrap());
                &s * &(Rational::factorial(j as u32) / Rational::factorial(k as u32 - 1))
            };
            ensure!(pf.get(j, k) == &MultiPoly::constant(want), "forest production formula at ({j},{k})");
        }
    }
    // the same matrix as F^-1 Delta F, by plain matrix algebra
    let f = tri("forest", 11)?;
    let direct = e(e(f.lower_inverse())?.mul(&e(delta(11).mul(&f))?))?;
    ensure!(e(direct.window(10))? == pf, "F^-1 Delta F differs from the production matrix");
    // (y,z) version: n!/(k-1)! sum_(l=0)^(n+1-k) y^(n+1-k-l) z^l / l!
    let pyz = e(production_matrix(&tri("ramanujan_yz", 11)?))?;
    for j in 0..10usize {
        for k in 1..=(j + 1).min(9) {
            let s = (0..=j + 1 - k).fold(MultiPoly::zero(), |a, l| {
                &a + &p(&format!("y^{} * z^{l}", j + 1 - k - l)).scale(&Rational::factorial(l as u32).recip().unwrap())
            });
            let want = s.scale(&(Rational::factorial(j as u32) / Rational::factorial(k as u32 - 1)));
            ensure!(pyz.get(j, k) == &want, "(y,z) production formula at ({j},{k})");
        }
    }
    rows_match("sgs production",&e(production_matrix(&tri("sgs_ab", 7)?))?, SGS_PROD)?;
    rows_match("q-forest production", &e(production_matrix(&tri("q_forest", 5)?))?, Q_PROD)?;
    int_rows_match("psi production", &e(production_matrix(&tri("functional_digraph_psi", 10)?))?, PSI_PROD)?;
    Ok(())
}

// ---------------------------------------------------------------- counterexamples

fn hankel_det(seq: &[MultiPoly], n: usize) -> std::result::Result<MultiPoly, String> {
    let h = e(hankel(seq, n))?;
    let all: Vec<usize> = (0..n).collect();
    Ok(minor(&h, &all, &all))
}

fn counterexamples() -> Check {
    let r = tri("ramanujan_coeff", 9)?;
    let rows: Vec<usize> = (2..9).collect();
    let cols: Vec<usize> = (0..7).collect();
    ensure!(minor(&r, &rows, &cols) == MultiPoly::int(-3709251874944000), "Ramanujan 7x7 minor");

    let pm = e(production_matrix(&tri("functional_digraph_psi", 10)?))?;
    ensure!(minor(&pm, &[5, 6, 7, 8], &[1, 2, 3, 4]) == MultiPoly::int(-36570734), "psi production 4x4 minor");

    let ps = e(production_matrix(&tri("sgs_ab", 7)?))?;
    let want = p("a^8 - 2*a^7*b + 35*a^6*b^2 + 36*a^5*b^3 + 121*a^4*b^4 + 36*a^3*b^5 + 35*a^2*b^6 - 2*a*b^7 + b^8");
    ensure!(minor(&ps, &[4, 5], &[1, 2]) == want, "SGS production 2x2 combination");

    let fq = e(sequence("q_forest_rowgen", &none(), 5))?;
    let d = hankel_det(&fq, 3)?;
    ensure!(d.coeff_of(Var::X, 4) == p("-1 - q + 2*q^2 + 2*q^3 - q^4 - q^5"), "q-Hankel x^4 coefficient");
    ensure!(d.coeff_of(Var::X, 2) == p("-q^2 + 3*q^4 + 8*q^5 + 12*q^6 + 12*q^7 + 8*q^8 + 4*q^9 + q^10"), "q-Hankel x^2 coefficient");
    ensure!(d.coeff_of(Var::X, 3) == p("-q - 2*q^2 - 2*q^3 - q^4 + 3*q^5 + 7*q^6 + 7*q^7 + 4*q^8 + q^9"), "q-Hankel x^3 coefficient");

    let fs = e(sequence("q_forest_star_rowgen", &none(), 4))?;
    let d01 = hankel_det(&fs[0..3], 2)?;
    ensure!(d01 == p("(q + 1)*x + (q - 1)*x^2"), "F* Hankel 2x2 from F_0: {d01}");
    let d12 = hankel_det(&fs[1..4], 2)?;
    ensure!(d12 == p("q^2*(q^2 + 2*q + 2)*x^2 + q*(q^3 + 2*q^2 - 1)*x^3 + q^2*(q - 1)*x^4"), "F* Hankel 2x2 from F_1: {d12}");

    let pre = e(sequence("q_sgs_y_prefix", &none(), 5))?;
    let d3 = hankel_det(&pre, 3)?;
    ensure!(d3.coeff_of(Var::Y, 4) == p("-q^2*(q - 1)^2*b^2"), "q-SGS Delta_3 y^4 coefficient: {}", d3.coeff_of(Var::Y, 4));
    ensure!(d3.degree_in(Var::Y) == 4, "q-SGS Delta_3 has degree 4 in y");

    let qi: HashMap<Var, MultiPoly> = (1..=8).map(|i| (Var::yi(i), p(&format!("q^{i}")))).collect();
    let fr = e(sequence("refined_ramanujan_yvec_rowgen", &qi, 5))?;
    let d = hankel_det(&fr, 3)?;
    ensure!(d.degree_in(Var::X) == 4, "refined Hankel has degree 4 in x");
    ensure!(d.coeff_of(Var::X, 4) == p("-q^2*(q - 1)^2 + 3*q*(q - 1)^2*z"), "refined-Ramanujan x^4 coefficient: {}", d.coeff_of(Var::X, 4));

    let sh = e(named_triangle("root_descent_sharp", &bind(&[(Var::W, "-1 + w'")]), 4))?;
    rows_match("shifted f#", &sh, &[&["1"], &["0", "1"], &["0", "1 + w'", "1"], &["0", "4 + 4*w' + w'^2", "3 + 3*w'", "1"]])?;
    ensure!(minor(&sh, &[2, 3], &[1, 2]) == p("-1 + 2*w' + 2*w'^2"), "shifted f# 2x2 minor");
    Ok(())
}

// ---------------------------------------------------------------- oracles

fn agree(name: &str, oracle: &PolyMatrix, n: usize) -> Check {
    let rs = e(routes(name, n))?;
    ensure!(rs.len() >= 2, "{name}: only {} construction route(s)", rs.len());
    for (route, m) in &rs {
        ensure!(m == oracle, "{name}: route {route} differs from the enumeration oracle");
    }
    Ok(())
}

fn oracles() -> Check {
    let n = 7; // rows 0..=6
    for (name, w) in [
        ("forest", Weighting::Count),
        ("ramanujan_yz", Weighting::Yz),
        ("rooted_forest_yphi", Weighting::Yphi),
        ("lah_phi", Weighting::Lah),
    ] {
        agree(name, &e(combinat::oracle_named(name, Some(w), n))?, n)?;
    }
    for via in [Weighting::SgsPropv, Weighting::SgsAscdes] {
        agree("sgs_ab", &e(combinat::oracle_named("sgs_ab", Some(via), n))?, n)?;
    }
    let n = 8; // rows 0..=7
    for name in ["functional_digraph_psi", "ordered_forest", "psi_X"] {
        agree(name, &e(combinat::oracle_named(name, None, n))?, n)?;
    }
    // the bivariate polynomials themselves
    let biv = e(sequence("psi_X_rowgen", &none(), n))?;
    for (m, b) in biv.iter().enumerate() {
        ensure!(b == &e(combinat::oracle_bivariate_psi(m))?, "Psi_{m}(x,y)");
    }
    Ok(())
}

// ---------------------------------------------------------------- identities

/// `O(M)_nk = (M^n)_0k` on the full window of `m`.
fn output_any(m: &PolyMatrix, rows: usize) -> Vec<Vec<MultiPoly>> {
    let n = m.size();
    let mut v: Vec<MultiPoly> = (0..n).map(|k| if k == 0 { MultiPoly::one() } else { MultiPoly::zero() }).collect();
    let mut out = Vec::new();
    for _ in 0..rows {
        out.push(v.clone());
        v = (0..n)
            .map(|k| (0..n).fold(MultiPoly::zero(), |acc, i| &acc + &(&v[i] * m.get(i, k))))
            .collect();
    }
    out
}

fn identities() -> Check {
    // B_x^-1 P B_x = P (I + x Delta^T), generic phi, 8-window
    let n = 8;
    let big = n + 1;
    let phi = phi_generic(n);
    let pm = PolyMatrix::from_fn(big, |i, j| {
        if j == 0 || j > i + 1 {
            return MultiPoly::zero();
        }
        phi.coeff(i + 1 - j).scale(&(Rational::factorial(i as u32) / Rational::factorial(j as u32 - 1)))
    });
    let x = p("x");
    let bx = binomial(big, &x);
    let lhs = e(e(e(bx.lower_inverse())?.mul(&pm))?.mul(&bx))?;
    let rhs = e(pm.mul(&e(identity(big).add(&delta(big).transpose().scale(&x)))?))?;
    ensure!(e(lhs.window(n))? == e(rhs.window(n))?, "B_x conjugation");

    // Hankel of the zeroth column = O(P) O(P^T)^T, 6-window; forest_Fx gives a
    // nontrivial zeroth column
    let n = 6;
    let big = 2 * n + 1;
    for name in ["forest", "forest_Fx"] {
        let pf = e(production_matrix(&tri(name, big + 1)?))?;
        let a = output_any(&pf, n);
        let b = output_any(&pf.transpose(), n);
        let col0: Vec<MultiPoly> = output_any(&pf, 2 * n - 1).iter().map(|r| r[0].clone()).collect();
        let h = e(hankel(&col0, n))?;
        let prod = PolyMatrix::from_fn(n, |i, j| (0..big).fold(MultiPoly::zero(), |acc, k| &acc + &(&a[i][k] * &b[j][k])));
        ensure!(h == prod, "{name}: Hankel of the zeroth column");
    }

    // O(B^-1 P B) = b_00^-1 O(P) B
    let n = 7;
    let pm = e(production_matrix(&tri("ramanujan_yz", n + 2)?))?;
    let bm = e(binomial(n + 1, &p("x")).mul(&diag_factorial(n + 1)))?.scale(&p("2"));
    let conj = e(e(e(bm.lower_inverse())?.mul(&pm))?.mul(&bm))?;
    let lhs = e(output_matrix(&conj, n))?;
    let rhs = e(e(e(output_matrix(&pm, n + 1))?.mul(&bm))?.window(n))?.scale(&p("1/2"));
    ensure!(lhs == rhs, "output of a conjugated production matrix");

    // production matrix of Delta F Delta^T is Delta P Delta^T
    let n = 8;
    for name in ["forest", "ramanujan_yz"] {
        let f = tri(name, n + 2)?;
        let shifted = PolyMatrix::from_fn(n + 1, |i, j| f.get(i + 1, j + 1).clone());
        let pm = e(production_matrix(&f))?;
        ensure!(
            e(production_matrix(&shifted))? == PolyMatrix::from_fn(n, |i, j| pm.get(i + 1, j + 1).clone()),
            "{name}: deleting row and column 0"
        );
    }

    // P = B_z D T_y D^-1 Delta, 9-window
    let n = 9;
    let fact = |bz: PolyMatrix, ty: PolyMatrix| -> std::result::Result<PolyMatrix, String> {
        e(e(e(e(bz.mul(&diag_factorial(n)))?.mul(&ty))?.mul(&diag_factorial_inv(n)))?.mul(&delta(n)))
    };
    ensure!(e(production_matrix(&tri("forest", n + 1)?))? == fact(binomial(n, &p("1")), power_toeplitz(n, &p("1")))?, "forest factorization");
    let pr = e(production_matrix(&tri("ramanujan_yz", n + 1)?))?;
    ensure!(pr == fact(binomial(n, &p("z")), power_toeplitz(n, &p("y")))?, "(y,z) factorization");

    // riordan(F, G) b = n! [t^n] F B(G)
    let n = 7;
    let f = Series::from_fn(n, |m| MultiPoly::int([1, 1, 3, 0, 2, 5, 1, 1][m]));
    let g = tree_function(n);
    let r = e(riordan(&f, &g, n + 1))?;
    for bvec in [[1i64, 0, 2, -1, 3, 0, 1, 4], [0, 1, 1, 1, 1, 1, 1, 1], [2, -3, 0, 0, 5, 1, 0, 2]] {
        let bs = Series::from_egf(n, |k| MultiPoly::int(bvec[k]));
        let rhs = (&f * &e(bs.compose(&g))?).egf_coeffs();
        for i in 0..=n {
            let lhs = (0..=i).fold(MultiPoly::zero(), |acc, k| &acc + &r.get(i, k).scale(&Rational::from_int(bvec[k])));
            ensure!(lhs == rhs[i], "FTERA at row {i}");
        }
    }

    // f_nk(y, phi) = f_nk(0, phi * y^N)
    let n = 7;
    let lah = tri("lah_phi", n)?;
    ensure!(lah == e(named_triangle("rooted_forest_yphi", &bind(&[(Var::Y, "0")]), n))?, "Lah = rooted forest at y = 0");
    ensure!(lah.substitute(&named::phi_bindings(&named::phi_conv_y(n))) == tri("rooted_forest_yphi", n)?, "dependence through phi * y^N");

    // P_n(x + y) = sum_k C(n,k) P_k(x) P_(n-k)(y)
    for n in 0..=6usize {
        let lhs = named::sgs_row(n).substitute(&bind(&[(Var::X, "x + y")]));
        let rhs = (0..=n).fold(MultiPoly::zero(), |acc, k| {
            let right = named::sgs_row(n - k).substitute_one(Var::X, &p("y"));
            &acc + &(&named::sgs_row(k) * &right).scale(&Rational::binomial(n as u32, k as u32))
        });
        ensure!(lhs == rhs, "SGS binomial type at n={n}");
    }

    // P_nk(0, 1, 1, q) = f*_nk(q)
    let s = e(named_triangle("q_sgs", &bind(&[(Var::Y, "0"), (Var::A, "1"), (Var::B, "1")]), 8))?;
    ensure!(s == tri("q_forest_star", 8)?, "q-SGS specialization");
    Ok(())
}

// ---------------------------------------------------------------- theorems

fn builder_phi(n: usize) -> HashMap<Var, MultiPoly> {
    // (1 + a t) / (1 - b t) is Toeplitz-TP by construction
    named::phi_bindings(&tp_seq_builder(&p("1"), &[p("a")], &[p("b")], None, n))
}

fn binomial_x(a: &PolyMatrix) -> std::result::Result<PolyMatrix, String> {
    Ok(e(row_generating(a, Var::X))?.1)
}

fn theorems() -> Check {
    passes("1.1(a)", e(check_tp(&tri("forest", 9)?, 4, 9))?)?;
    passes("1.1(b)", e(check_hankel_tp(&e(sequence("tree_powers", &none(), 9))?, 5, 4))?)?;

    let w = 6;
    let hank = |name: &str, bind: &HashMap<Var, MultiPoly>| -> Check {
        passes(name, e(check_hankel_tp(&e(sequence(name, bind, 2 * w - 1))?, w, 3))?)
    };
    passes("1.2(a)", e(check_tp(&tri("forest_Fx", w)?, 3, w))?)?;
    hank("forest_rowgen", &none())?;
    passes("1.3(a)", e(check_tp(&binomial_x(&tri("ramanujan_yz", w)?)?, 3, w))?)?;
    hank("ramanujan_yz_rowgen", &none())?;
    hank("ramanujan_yz_col1", &none())?;
    let phi = builder_phi(2 * w + 1);
    let rf = e(named_triangle("rooted_forest_yphi", &phi, w))?;
    passes("1.4(a)", e(check_tp(&binomial_x(&rf)?, 3, w))?)?;
    hank("rooted_forest_yphi_rowgen", &phi)?;
    hank("rooted_forest_yphi_col1", &phi)?;

    passes("6.3", e(check_tp(&tri("q_forest", 7)?, 3, 7))?)?;
    let shifted = e(sequence("root_descent_sharp_col1", &bind(&[(Var::W, "-1 + w'")]), 7))?;
    for (n, s) in shifted.iter().enumerate() {
        ensure!(s == &p(&format!("(w' + {n})^{n}")), "f#_(n+1,1)(-1+w') at n={n}");
    }
    passes("6.12", e(check_hankel_tp(&shifted, 4, 3))?)?;
    passes("6.13(a)", e(check_tp(&tri("refined_ramanujan_yvec", 6)?, 3, 6))?)?;
    let col1 = e(sequence("refined_ramanujan_yvec_col1", &none(), 7))?;
    let used: std::collections::BTreeSet<Var> = col1.iter().flat_map(|c| c.vars()).collect();
    ensure!(used.contains(&Var::yi(5)), "refined column is not symbolic in y_1..y_5: {used:?}");
    passes("6.13(c)", e(check_hankel_tp(&col1, 4, 3))?)?;
    Ok(())
}

// ---------------------------------------------------------------- conjectures

fn conjectures() -> Check {
    let mut fails = Vec::new();
    for c in CONJECTURES {
        let t = Instant::now();
        let rep = e(run_conjecture(c, c.window, c.r, &CheckOptions::default()))?;
        println!(
            "    conjecture {:<6} evidence at (N={}, r={}): {} [{:.1}s]",
            c.id,
            c.window,
            c.r,
            if rep.passed() { "pass" } else { "fail" },
            t.elapsed().as_secs_f64()
        );
        if !rep.passed() {
            fails.push(c.id);
        }
    }
    ensure!(fails.is_empty(), "conjectures failing: {fails:?}");
    Ok(())
}

// ---------------------------------------------------------------- series

fn series_suite() -> Check {
    let t = lagrange_solve(&exp_series(&p("1"), 12), 12);
    for (n, c) in t.egf_coeffs().iter().enumerate().skip(1) {
        ensure!(*c == MultiPoly::int((n as i64).pow(n as u32 - 1)), "tree function coefficient n={n}");
    }
    // T' = e^T / (1 - T)
    let ode = solve_autonomous_ode(&(&exp_series(&p("1"), 11) * &geometric(&p("1"), 11)), 12);
    ensure!(ode == lagrange_solve(&exp_series(&p("1"), 12), 12), "tree function: ODE and Lagrange routes differ");

    // R' = e^(zR) / (1 - yR), R(0) = 0
    let n = 10;
    let r = solve_autonomous_ode(&ramanujan_a(n), n + 1);
    let col1 = e(sequence("ramanujan_yz_col1", &none(), n + 1))?;
    for (m, c) in r.egf_coeffs().iter().enumerate().skip(1) {
        ensure!(c == &col1[m - 1], "R_{m} differs from f_(m,1)(y,z)");
    }
    let r = r.truncate(n);
    let z = p("z");
    let y = p("y");
    let s = e(exp_series(&z, n).compose(&r))?;
    let a = e(geometric(&y, n).compose(&r))?;
    // (c) R' = A S
    let rp = solve_autonomous_ode(&ramanujan_a(n + 1), n + 2).derivative().truncate(n);
    ensure!(rp == &a * &s, "R' - A S is nonzero");
    // (b) A (1 - y R) = 1, (a) log S = z R
    let one_minus = &Series::one(n) - &r.scale(&y);
    ensure!(&a * &one_minus == Series::one(n), "A (1 - y R) - 1 is nonzero");
    ensure!(e(s.log())? == r.scale(&z), "log S - z R is nonzero");
    // (d) is the defining ODE; check it on the coefficients directly
    ensure!(rp == e(ramanujan_a(n).compose(&r))?, "R' - e^(zR)/(1 - yR) is nonzero");
    // y - z + y z R = (y - z + z^2 t) e^(zR)
    let lhs = &Series::constant(&y - &z, n) + &r.scale(&(&y * &z));
    let lin = Series::from_fn(n, |m| match m {
        0 => &y - &z,
        1 => &z * &z,
        _ => MultiPoly::zero(),
    });
    ensure!(lhs == &lin * &s, "functional equation residual is nonzero");

    // enumeration oracles for S and A
    let k = 5;
    let so = e(combinat::oracle_s_a_series(k, 'S'))?;
    let ao = e(combinat::oracle_s_a_series(k, 'A'))?;
    let (se, ae) = (s.egf_coeffs(), a.egf_coeffs());
    for m in 0..=k {
        ensure!(so[m] == se[m], "S_{m}: oracle {} vs series {}", so[m], se[m]);
        ensure!(ao[m] == ae[m], "A_{m}: oracle {} vs series {}", ao[m], ae[m]);
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Check); 8] = [
        ("1 tables", LIMIT_TABLES, tables),
        ("2 production matrices", LIMIT_PRODMAT, production_matrices),
        ("3 counterexamples", LIMIT_COUNTER, counterexamples),
        ("4 oracle equivalence", LIMIT_ORACLE, oracles),
        ("5 identities", LIMIT_IDENTITY, identities),
        ("6 theorem checks", LIMIT_THEOREMS, theorems),
        ("7 conjecture evidence", LIMIT_CONJECTURES, conjectures),
        ("8 series", LIMIT_SERIES, series_suite),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, limit, f) in criteria {
        if !filter.is_empty() && !filter.iter().any(|w| name.contains(w.as_str())) {
            continue;
        }
        let t = Instant::now();
        let out = f();
        let took = t.elapsed();
        let verdict = match (&out, took <= limit) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (over the {}s limit)", limit.as_secs()),
            (Err(msg), _) => format!("FAIL: {msg}"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("criterion {name}: {verdict} [{:.2}s]", took.as_secs_f64());
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
