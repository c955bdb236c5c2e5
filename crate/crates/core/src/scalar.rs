//! Scalar abstraction shared by every module.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_traits::{Num, Zero};

use crate::error::{Error, Result};
use crate::Rat;

/// Field-like element type for matrices, weights and paths.
///
/// Identities proven over the rationals hold exactly for [`Rat`] and up to
/// rounding for `f32`/`f64`.
pub trait Scalar: Clone + PartialEq + PartialOrd + Num + Neg<Output = Self> + Debug + Display + Send + Sync {
    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }

    /// `(-1)^k`.
    fn sign_power(k: usize) -> Self {
        if k.is_multiple_of(2) {
            Self::one()
        } else {
            -Self::one()
        }
    }
}

impl<T> Scalar for T where
    T: Clone + PartialEq + PartialOrd + Num + Neg<Output = T> + Debug + Display + Send + Sync
{
}

/// Parses `"p"` or `"p/q"` (with `q != 0`) into a canonical rational.
///
/// Non-reduced input such as `"4/2"` is accepted and canonicalized; a negative
/// denominator moves its sign to the numerator.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let text = text.trim();
    let bad = |reason: &str| Error::Parse(format!("invalid rational {text:?}: {reason}"));
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (text, None),
    };
    let parse_int = |s: &str| -> Result<BigInt> {
        if s.is_empty() || s.trim() != s {
            return Err(bad("malformed integer"));
        }
        s.parse::<BigInt>().map_err(|_| bad("malformed integer"))
    };
    let numer = parse_int(num)?;
    let denom = match den {
        Some(q) => parse_int(q)?,
        None => BigInt::from(1),
    };
    if denom.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rat::new(numer, denom))
}
