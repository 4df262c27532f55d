//! Exact arithmetic for charges and potentials.
//!
//! Every charge in the discharging procedure has a denominator dividing 60 and
//! every potential a denominator dividing 36, so both fit a fixed denominator
//! of 180. [`Charge`] stores the numerator over 180 in an `i64`; conversion to
//! a reduced [`Rational64`] happens only at the reporting boundary.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_rational::Rational64;

/// Common denominator of every charge and potential value.
pub const DENOMINATOR: i64 = 180;

/// An exact multiple of 1/180.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Charge(i64);

impl Charge {
    pub const ZERO: Charge = Charge(0);

    /// `numer / denom`; `denom` must divide 180.
    pub const fn new(numer: i64, denom: i64) -> Charge {
        assert!(denom > 0 && DENOMINATOR % denom == 0, "denominator must divide 180");
        Charge(numer * (DENOMINATOR / denom))
    }

    pub const fn int(value: i64) -> Charge {
        Charge(value * DENOMINATOR)
    }

    /// Numerator over [`DENOMINATOR`].
    pub const fn units(self) -> i64 {
        self.0
    }

    pub const fn from_units(units: i64) -> Charge {
        Charge(units)
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0
    }

    pub fn to_rational(self) -> Rational64 {
        Rational64::new(self.0, DENOMINATOR)
    }

    /// Converts a rational whose denominator divides 180.
    pub fn from_rational(r: Rational64) -> Option<Charge> {
        let denom = *r.denom();
        if DENOMINATOR % denom != 0 {
            return None;
        }
        Some(Charge(r.numer() * (DENOMINATOR / denom)))
    }
}

impl Add for Charge {
    type Output = Charge;
    fn add(self, rhs: Charge) -> Charge {
        Charge(self.0 + rhs.0)
    }
}

impl Sub for Charge {
    type Output = Charge;
    fn sub(self, rhs: Charge) -> Charge {
        Charge(self.0 - rhs.0)
    }
}

impl Neg for Charge {
    type Output = Charge;
    fn neg(self) -> Charge {
        Charge(-self.0)
    }
}

impl AddAssign for Charge {
    fn add_assign(&mut self, rhs: Charge) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Charge {
    fn sub_assign(&mut self, rhs: Charge) {
        self.0 -= rhs.0;
    }
}

impl Sum for Charge {
    fn sum<I: Iterator<Item = Charge>>(iter: I) -> Charge {
        Charge(iter.map(|c| c.0).sum())
    }
}

impl<'a> Sum<&'a Charge> for Charge {
    fn sum<I: Iterator<Item = &'a Charge>>(iter: I) -> Charge {
        Charge(iter.map(|c| c.0).sum())
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_ratio(&self.to_rational()))
    }
}

/// Formats a rational as `p/q` in lowest terms, always with an explicit
/// denominator (`1/1`, `0/1`, `-2/9`).
pub fn format_ratio(r: &Rational64) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` (or a bare integer) into a reduced rational.
pub fn parse_ratio(s: &str) -> Option<Rational64> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse::<i64>().ok()?, q.trim().parse::<i64>().ok()?),
        None => (s.parse::<i64>().ok()?, 1),
    };
    // A positive denominator and a numerator away from i64::MIN keep the
    // reduction free of overflow.
    if q <= 0 || p == i64::MIN {
        return None;
    }
    Some(Rational64::new(p, q))
}

/// Largest integer not exceeding `r`.
pub fn floor_ratio(r: &Rational64) -> i64 {
    r.floor().to_integer()
}
