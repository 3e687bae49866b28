use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use rustc_hash::FxHashMap;

use super::monomial::Monomial;
use super::rational::Rational;
use super::var::Var;
use crate::error::{Error, Result};

/// Sparse polynomial over Q, terms kept in ascending canonical monomial order
/// with no zero coefficients. That makes structural equality mathematical
/// equality and fixes the serialization.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: Vec<(Monomial, Rational)>,
}

/// Outcome of a coefficientwise sign test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub monomial: Monomial,
    pub coeff: Rational,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v, 1), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MultiPoly { terms: vec![(m, c)] }
        }
    }

    /// Collects arbitrary terms, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut map: FxHashMap<Monomial, Rational> = FxHashMap::default();
        for (m, c) in it {
            *map.entry(m).or_default() += &c;
        }
        Self::from_map(map)
    }

    fn from_map(map: FxHashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        MultiPoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The value if the polynomial is a constant (including 0).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Rational {
        match self.terms.first() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    /// Largest term in canonical order.
    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.last()
    }

    pub fn coeff_monomial(&self, m: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|t| t.0.cmp(m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    /// `[v^k] self` as a polynomial in the remaining variables.
    pub fn coeff_of(&self, v: Var, k: u32) -> MultiPoly {
        MultiPoly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.exp(v) == k)
                .map(|(m, c)| (m.without(v), c.clone())),
        )
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.last().map_or(0, |(m, _)| m.degree())
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.iter().flat_map(|(m, _)| m.iter().map(|p| p.0)).collect()
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        // multiplying by a monomial preserves the order
        MultiPoly { terms: self.terms.iter().map(|(a, b)| (a.mul(m), b * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn div_rational(&self, c: &Rational) -> Result<MultiPoly> {
        Ok(self.scale(&c.recip()?))
    }

    /// Exact division; fails unless `d` divides `self` in Q[vars].
    ///
    /// Uses leading-term reduction, valid because the canonical order is a
    /// monomial order.
    pub fn exact_div(&self, d: &MultiPoly) -> Result<MultiPoly> {
        let (lm, lc) = d.leading().cloned().ok_or(Error::DivisionByZero)?;
        if let Some(c) = d.as_constant() {
            return self.div_rational(&c);
        }
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.leading().cloned() {
            let m = rm
                .div(&lm)
                .ok_or_else(|| Error::NotDivisible(format!("({self}) / ({d})")))?;
            let c = &rc / &lc;
            rem = &rem - &d.mul_term(&m, &c);
            quot.push((m, c));
        }
        quot.reverse();
        Ok(MultiPoly { terms: quot })
    }

    /// Replace variables by polynomials; unbound variables stay.
    pub fn substitute(&self, bind: &HashMap<Var, MultiPoly>) -> MultiPoly {
        if bind.is_empty() || self.vars().iter().all(|v| !bind.contains_key(v)) {
            return self.clone();
        }
        let mut powers: HashMap<(Var, u32), MultiPoly> = HashMap::new();
        let mut acc = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut keep = Vec::new();
            let mut prod = MultiPoly::one();
            for (v, e) in m.iter() {
                match bind.get(&v) {
                    Some(p) => {
                        let pe = powers.entry((v, e)).or_insert_with(|| p.pow(e));
                        prod = &prod * pe;
                    }
                    None => keep.push((v, e)),
                }
            }
            acc += &prod.mul_term(&Monomial::from_pairs(keep), c);
        }
        acc
    }

    pub fn substitute_one(&self, v: Var, p: &MultiPoly) -> MultiPoly {
        self.substitute(&HashMap::from([(v, p.clone())]))
    }

    /// All monomials have weighted degree `d`.
    pub fn is_homogeneous(&self, weight: impl Fn(Var) -> i64, d: i64) -> bool {
        self.terms
            .iter()
            .all(|(m, _)| m.iter().map(|(v, e)| weight(v) * e as i64).sum::<i64>() == d)
    }

    /// First negative coefficient in canonical order, if any.
    pub fn negative_witness(&self) -> Option<Witness> {
        self.terms
            .iter()
            .find(|(_, c)| c.is_negative())
            .map(|(m, c)| Witness { monomial: m.clone(), coeff: c.clone() })
    }

    pub fn is_coeffwise_nonneg(&self) -> bool {
        self.terms.iter().all(|(_, c)| !c.is_negative())
    }

    pub fn map_coeffs(&self, f: impl Fn(&Rational) -> Rational) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }
}

fn merge(a: &[(Monomial, Rational)], b: &[(Monomial, Rational)], negate_b: bool) -> MultiPoly {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let bval = |c: &Rational| if negate_b { -c } else { c.clone() };
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((b[j].0.clone(), bval(&b[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(m, c)| (m.clone(), bval(c))));
    MultiPoly { terms: out }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        merge(&self.terms, &rhs.terms, false)
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        merge(&self.terms, &rhs.terms, true)
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        if rhs.terms.len() == 1 {
            return self.mul_term(&rhs.terms[0].0, &rhs.terms[0].1);
        }
        if self.terms.len() == 1 {
            return rhs.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut map: FxHashMap<Monomial, Rational> =
            FxHashMap::with_capacity_and_hasher(self.len() * rhs.len() / 2 + 1, Default::default());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let c = ca * cb;
                match map.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += &c,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        MultiPoly::from_map(map)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

macro_rules! owned_polyop {
    ($tr:ident, $m:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
    };
}
owned_polyop!(Add, add);
owned_polyop!(Sub, sub);
owned_polyop!(Mul, mul);

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        if rhs.is_zero() {
            return;
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        if rhs.is_zero() {
            return;
        }
        *self = &*self - rhs;
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<i64> for MultiPoly {
    fn from(n: i64) -> Self {
        MultiPoly::int(n)
    }
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        MultiPoly::var(v)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl serde::Serialize for Witness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Witness", 2)?;
        st.serialize_field("monomial", &self.monomial.to_string())?;
        st.serialize_field("coeff", &self.coeff)?;
        st.end()
    }
}
