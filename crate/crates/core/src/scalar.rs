//! Exact scalar fields the algebra is generic over.

use std::fmt::{Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{FromPrimitive, Num, Zero};
use rand::Rng;

/// A field with exact arithmetic.
///
/// Every identity checked by this crate is an exact equality, so only
/// exact number types implement this trait. [`BigRational`] is the default
/// (see [`crate::Rational`]); [`Rational64`] is faster but panics on overflow.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Neg<Output = Self> + FromPrimitive + FromStr + Send + Sync + 'static
{
    fn from_int(value: i64) -> Self {
        Self::from_i64(value).expect("every i64 is representable")
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_int(numer) / Self::from_int(denom)
    }

    /// Parses `"p"` or `"p/q"`.
    fn parse_exact(text: &str) -> Option<Self> {
        Self::from_str(text.trim()).ok()
    }

    fn pow(&self, exp: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..exp {
            out = out * self.clone();
        }
        out
    }
}

impl Scalar for BigRational {
    fn parse_exact(text: &str) -> Option<Self> {
        let text = text.trim();
        match text.split_once('/') {
            None => BigInt::from_str(text).ok().map(BigRational::from_integer),
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).ok()?;
                let d = BigInt::from_str(d.trim()).ok()?;
                if d.is_zero() {
                    None
                } else {
                    Some(BigRational::new(n, d))
                }
            }
        }
    }
}

impl Scalar for Rational64 {
    fn parse_exact(text: &str) -> Option<Self> {
        let text = text.trim();
        match text.split_once('/') {
            None => text.parse::<i64>().ok().map(Rational64::from_integer),
            Some((n, d)) => {
                let n = n.trim().parse::<i64>().ok()?;
                let d = d.trim().parse::<i64>().ok()?;
                (d != 0).then(|| Rational64::new(n, d))
            }
        }
    }
}

/// Draws a rational `a/b` with `|a| <= max_numer` and `1 <= b <= max_denom`.
pub fn random_scalar<S: Scalar, R: Rng + ?Sized>(rng: &mut R, max_numer: i64, max_denom: i64) -> S {
    let numer = rng.random_range(-max_numer..=max_numer);
    let denom = rng.random_range(1..=max_denom.max(1));
    S::from_ratio(numer, denom)
}

/// Like [`random_scalar`] but never zero.
pub fn random_nonzero_scalar<S: Scalar, R: Rng + ?Sized>(rng: &mut R, max_numer: i64, max_denom: i64) -> S {
    loop {
        let value: S = random_scalar(rng, max_numer.max(1), max_denom);
        if !value.is_zero() {
            return value;
        }
    }
}

pub(crate) fn signed<S: Scalar>(value: S, sign: i8) -> S {
    match sign {
        1 => value,
        -1 => -value,
        _ => S::zero(),
    }
}

pub(crate) fn sign_scalar<S: Scalar>(sign: i8) -> S {
    signed(S::one(), sign)
}
