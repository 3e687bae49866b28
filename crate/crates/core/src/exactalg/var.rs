//! The variable universe.
//!
//! Variables are ordered x, y, z, a, b, q, r, w, w', then y1, y2, ...,
//! then phi0, phi1, ..., then xi0, xi1, .... The order is global so
//! polynomials from different constructions always compare consistently.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u16);

const NAMED: [&str; 9] = ["x", "y", "z", "a", "b", "q", "r", "w", "w'"];
const FAMILY: u16 = 1 << 12;
const MAX_INDEX: usize = (FAMILY - 1) as usize;

impl Var {
    pub const X: Var = Var(0);
    pub const Y: Var = Var(1);
    pub const Z: Var = Var(2);
    pub const A: Var = Var(3);
    pub const B: Var = Var(4);
    pub const Q: Var = Var(5);
    pub const R: Var = Var(6);
    pub const W: Var = Var(7);
    pub const WP: Var = Var(8);

    /// y_i, i >= 1.
    pub fn yi(i: usize) -> Var {
        assert!((1..=MAX_INDEX).contains(&i));
        Var(FAMILY + i as u16)
    }

    pub fn phi(i: usize) -> Var {
        assert!(i <= MAX_INDEX);
        Var(2 * FAMILY + i as u16)
    }

    pub fn xi(i: usize) -> Var {
        assert!(i <= MAX_INDEX);
        Var(3 * FAMILY + i as u16)
    }

    pub fn id(self) -> u16 {
        self.0
    }

    pub fn from_id(id: u16) -> Var {
        Var(id)
    }

    /// Index within the phi family, if this is some phi_i.
    pub fn phi_index(self) -> Option<usize> {
        (self.0 / FAMILY == 2).then_some((self.0 % FAMILY) as usize)
    }

    pub fn xi_index(self) -> Option<usize> {
        (self.0 / FAMILY == 3).then_some((self.0 % FAMILY) as usize)
    }

    pub fn y_index(self) -> Option<usize> {
        (self.0 / FAMILY == 1).then_some((self.0 % FAMILY) as usize)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (fam, idx) = (self.0 / FAMILY, self.0 % FAMILY);
        match fam {
            0 => f.write_str(NAMED[idx as usize]),
            1 => write!(f, "y{idx}"),
            2 => write!(f, "phi{idx}"),
            _ => write!(f, "xi{idx}"),
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Var {
    type Err = Error;

    /// Accepts the printed names plus `wp`, `y_3`, `phi_2`, `φ2`, `ξ1`, `w′`.
    fn from_str(s: &str) -> Result<Var, Error> {
        let unknown = || Error::UnknownVariable(s.to_string());
        match s {
            "wp" | "w′" => return Ok(Var::WP),
            _ => {}
        }
        if let Some(i) = NAMED.iter().position(|n| *n == s) {
            return Ok(Var(i as u16));
        }
        let (stem, digits) = match s.find(|c: char| c.is_ascii_digit()) {
            Some(p) => s.split_at(p),
            None => return Err(unknown()),
        };
        let stem = stem.strip_suffix('_').unwrap_or(stem);
        let idx: usize = digits.parse().map_err(|_| unknown())?;
        if idx > MAX_INDEX {
            return Err(unknown());
        }
        match stem {
            "y" if idx >= 1 => Ok(Var::yi(idx)),
            "phi" | "φ" => Ok(Var::phi(idx)),
            "xi" | "ξ" => Ok(Var::xi(idx)),
            _ => Err(unknown()),
        }
    }
}
