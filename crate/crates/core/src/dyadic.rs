use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Non-negative rational `numerator / 2^exponent`.
///
/// Equality and ordering compare values, so `2/4 == 1/2`. Display always
/// uses the reduced form `p/q`.
#[derive(Clone, Debug)]
pub struct Dyadic {
    numerator: BigUint,
    exponent: u32,
}

impl Dyadic {
    pub fn new(numerator: BigUint, exponent: u32) -> Self {
        Dyadic { numerator, exponent }
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    /// `2^exponent`.
    pub fn denominator(&self) -> BigUint {
        BigUint::from(1u8) << self.exponent
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// Lowest terms; zero reduces to `0/1`.
    pub fn reduced(&self) -> Dyadic {
        if self.numerator.is_zero() {
            return Dyadic::new(BigUint::zero(), 0);
        }
        let tz = self.numerator.trailing_zeros().unwrap_or(0);
        let shift = tz.min(self.exponent as u64);
        Dyadic::new(&self.numerator >> shift, self.exponent - shift as u32)
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.numerator.bits();
        let shift = bits.saturating_sub(64);
        let head = (&self.numerator >> shift).to_f64().unwrap_or(f64::NAN);
        head * 2f64.powi(shift as i32 - self.exponent as i32)
    }

    fn cross(&self, other: &Dyadic) -> (BigUint, BigUint) {
        (
            &self.numerator << other.exponent,
            &other.numerator << self.exponent,
        )
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.cross(other);
        a == b
    }
}

impl Eq for Dyadic {}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = self.cross(other);
        a.cmp(&b)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        write!(f, "{}/{}", r.numerator, r.denominator())
    }
}

impl FromStr for Dyadic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("rational {s:?} is not of the form p/q")))?;
        let p: BigUint = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let q: BigUint = q
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        let exponent = q.trailing_zeros().unwrap_or(0);
        if q.is_zero() || q != BigUint::from(1u8) << exponent {
            return Err(Error::Parse(format!("denominator in {s:?} is not a power of two")));
        }
        Ok(Dyadic::new(p, exponent as u32))
    }
}
