//! Exact determinants over `Q[vars]`.

use crate::exactalg::MultiPoly;
use crate::triangle::PolyMatrix;

/// Determinant of a square window. Cofactor expansion below size 4,
/// fraction-free Bareiss elimination otherwise.
pub fn det(m: &PolyMatrix) -> MultiPoly {
    let n = m.size();
    let rows: Vec<Vec<&MultiPoly>> = (0..n).map(|i| m.row(i).iter().collect()).collect();
    det_rows(&rows)
}

pub(crate) fn det_rows(a: &[Vec<&MultiPoly>]) -> MultiPoly {
    match a.len() {
        0 => MultiPoly::one(),
        1 => a[0][0].clone(),
        2 => det2(a[0][0], a[0][1], a[1][0], a[1][1]),
        3 => {
            let mut acc = MultiPoly::zero();
            for j in 0..3 {
                let x = a[0][j];
                if x.is_zero() {
                    continue;
                }
                let (c0, c1) = match j {
                    0 => (1, 2),
                    1 => (0, 2),
                    _ => (0, 1),
                };
                let m = det2(a[1][c0], a[1][c1], a[2][c0], a[2][c1]);
                if m.is_zero() {
                    continue;
                }
                let t = x * &m;
                if j == 1 {
                    acc -= &t;
                } else {
                    acc += &t;
                }
            }
            acc
        }
        _ => bareiss(a.iter().map(|r| r.iter().map(|&p| p.clone()).collect()).collect()),
    }
}

fn det2(a: &MultiPoly, b: &MultiPoly, c: &MultiPoly, d: &MultiPoly) -> MultiPoly {
    let l = if a.is_zero() || d.is_zero() { MultiPoly::zero() } else { a * d };
    if b.is_zero() || c.is_zero() {
        l
    } else {
        &l - &(b * c)
    }
}

/// Every intermediate entry is a minor of the input, so each division is
/// exact; a failure would mean a bug in the polynomial layer.
fn bareiss(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    let mut prev = MultiPoly::one();
    let mut negate = false;
    for k in 0..n - 1 {
        // the sparsest nonzero pivot keeps intermediate products small
        let Some(p) = (k..n).filter(|&i| !m[i][k].is_zero()).min_by_key(|&i| m[i][k].len()) else {
            return MultiPoly::zero();
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = det2(&m[k][k], &m[k][j], &m[i][k], &m[i][j]);
                m[i][j] = if prev.is_one() { num } else { num.exact_div(&prev).expect("Bareiss division is exact") };
            }
            m[i][k] = MultiPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Leibniz expansion; only for cross-checking on small windows.
pub fn det_permutation(m: &PolyMatrix) -> MultiPoly {
    let n = m.size();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut acc = MultiPoly::zero();
    permute(&mut perm, 0, m, &mut acc);
    acc
}

fn permute(perm: &mut Vec<usize>, i: usize, m: &PolyMatrix, acc: &mut MultiPoly) {
    let n = perm.len();
    if i == n {
        let mut inv = 0;
        for a in 0..n {
            for b in a + 1..n {
                if perm[a] > perm[b] {
                    inv += 1;
                }
            }
        }
        let t = (0..n).fold(MultiPoly::one(), |t, r| &t * m.get(r, perm[r]));
        if inv % 2 == 0 {
            *acc += &t;
        } else {
            *acc -= &t;
        }
        return;
    }
    for j in i..n {
        perm.swap(i, j);
        permute(perm, i + 1, m, acc);
        perm.swap(i, j);
    }
}
