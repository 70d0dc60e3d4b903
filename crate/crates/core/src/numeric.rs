//! Exact rational arithmetic and certified interval enclosures.
//!
//! Every certification path in this crate runs on [`Rational`]; floating
//! point only appears when values are exported for plotting.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in canonical form (positive denominator,
/// reduced). Canonicalization is enforced by the underlying type at
/// construction, so equality is structural.
pub type Rational = num_rational::BigRational;

/// Parse "p" or "p/q" (optionally negative) into a canonical rational.
pub fn rat_parse(text: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(text.to_string());
    let (num_text, den_text) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let numer: BigInt = num_text.parse().map_err(|_| bad())?;
    let denom: BigInt = match den_text {
        Some(d) => {
            if d.starts_with('-') || d.starts_with('+') {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::ZeroDenominator(text.to_string()));
    }
    Ok(Rational::new(numer, denom))
}

/// Canonical string form: "p/q", or "p" for integers.
pub fn rat_string(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Exact fractional part t − ⌊t⌋, in [0, 1).
pub fn frac_mod1(t: &Rational) -> Rational {
    t - t.floor()
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().expect("rational out of f64 range")
}

/// Closed interval [lo, hi] guaranteed to contain a true real value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    lo: Rational,
    hi: Rational,
}

impl Enclosure {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Internal(format!(
                "enclosure endpoints out of order: [{}, {}]",
                rat_string(&lo),
                rat_string(&hi)
            )));
        }
        Ok(Self { lo, hi })
    }

    /// Degenerate enclosure of an exactly known value.
    pub fn point(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    /// Symmetric enclosure center ± radius.
    pub fn centered(center: &Rational, radius: &Rational) -> Result<Self> {
        if radius.is_negative() {
            return Err(Error::Internal("negative enclosure radius".into()));
        }
        Ok(Self {
            lo: center - radius,
            hi: center + radius,
        })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rat_int(2)
    }

    /// Interval sum; inclusion-monotone by endpoint monotonicity.
    pub fn add(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    /// Scale by an exact rational factor.
    pub fn scale(&self, factor: &Rational) -> Enclosure {
        let a = &self.lo * factor;
        let b = &self.hi * factor;
        if a <= b {
            Enclosure { lo: a, hi: b }
        } else {
            Enclosure { lo: b, hi: a }
        }
    }
}
