use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use super::var::Var;

/// A power product, stored as sorted `(var << 16) | exp` words with no zero
/// exponents.
///
/// `Ord` is the canonical monomial order: total degree first, then the
/// exponent vectors compared lexicographically in declared variable order.
/// So `z^2 < y*z < y^2`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[u32; 4]>);

#[inline]
fn pack(v: Var, e: u32) -> u32 {
    assert!(e <= u16::MAX as u32, "exponent overflow");
    ((v.id() as u32) << 16) | e
}

#[inline]
fn unpack(w: u32) -> (Var, u32) {
    (Var::from_id((w >> 16) as u16), w & 0xffff)
}

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var, e: u32) -> Self {
        let mut m = Monomial::one();
        if e > 0 {
            m.0.push(pack(v, e));
        }
        m
    }

    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Self {
        let mut v: Vec<(Var, u32)> = pairs.into_iter().filter(|p| p.1 > 0).collect();
        v.sort_by_key(|p| p.0);
        let mut out: SmallVec<[u32; 4]> = SmallVec::new();
        for (var, e) in v {
            match out.last_mut() {
                Some(last) if unpack(*last).0 == var => {
                    let (_, e0) = unpack(*last);
                    *last = pack(var, e0 + e);
                }
                _ => out.push(pack(var, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().map(|w| unpack(*w))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|w| w & 0xffff).sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.iter().find(|p| p.0 == v).map_or(0, |p| p.1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if other.0.is_empty() {
            return self.clone();
        }
        if self.0.is_empty() {
            return other.clone();
        }
        let (a, b) = (&self.0, &other.0);
        let mut out: SmallVec<[u32; 4]> = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (va, vb) = (a[i] >> 16, b[j] >> 16);
            if va == vb {
                let e = (a[i] & 0xffff) + (b[j] & 0xffff);
                assert!(e <= u16::MAX as u32, "exponent overflow");
                out.push((va << 16) | e);
                i += 1;
                j += 1;
            } else if va < vb {
                out.push(a[i]);
                i += 1;
            } else {
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out: SmallVec<[u32; 4]> = SmallVec::new();
        let mut j = 0;
        let b = &other.0;
        for &w in self.0.iter() {
            let v = w >> 16;
            if j < b.len() && b[j] >> 16 < v {
                return None;
            }
            if j < b.len() && b[j] >> 16 == v {
                let (ea, eb) = (w & 0xffff, b[j] & 0xffff);
                if eb > ea {
                    return None;
                }
                if ea > eb {
                    out.push((v << 16) | (ea - eb));
                }
                j += 1;
            } else {
                out.push(w);
            }
        }
        (j == b.len()).then_some(Monomial(out))
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|w| {
            let (v, e) = unpack(*w);
            pack(v, e * k)
        }).filter(|w| w & 0xffff != 0).collect())
    }

    /// Drop `v` from the monomial.
    pub fn without(&self, v: Var) -> Monomial {
        Monomial(self.0.iter().copied().filter(|w| unpack(*w).0 != v).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (da, db) = (self.degree(), other.degree());
        if da != db {
            return da.cmp(&db);
        }
        for (x, y) in self.0.iter().zip(other.0.iter()) {
            if x == y {
                continue;
            }
            let (vx, vy) = (x >> 16, y >> 16);
            if vx != vy {
                // a positive exponent on an earlier variable wins
                return if vx < vy { Ordering::Greater } else { Ordering::Less };
            }
            return (x & 0xffff).cmp(&(y & 0xffff));
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_examples() {
        let z2 = Monomial::var(Var::Z, 2);
        let yz = Monomial::from_pairs([(Var::Y, 1), (Var::Z, 1)]);
        let y2 = Monomial::var(Var::Y, 2);
        let x = Monomial::var(Var::X, 1);
        assert!(Monomial::one() < x);
        assert!(x < z2);
        assert!(z2 < yz && yz < y2);
        let x2 = Monomial::var(Var::X, 2);
        let xy = Monomial::from_pairs([(Var::X, 1), (Var::Y, 1)]);
        assert!(y2 < xy && xy < x2);
    }

    #[test]
    fn mul_div() {
        let a = Monomial::from_pairs([(Var::X, 2), (Var::Q, 1)]);
        let b = Monomial::from_pairs([(Var::Q, 3), (Var::phi(2), 1)]);
        let p = a.mul(&b);
        assert_eq!(p.to_string(), "x^2*q^4*phi2");
        assert_eq!(p.div(&b).unwrap(), a);
        assert_eq!(p.div(&a).unwrap(), b);
        assert!(a.div(&b).is_none());
        assert_eq!(p.degree(), 7);
    }
}
