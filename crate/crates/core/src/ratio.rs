//! Exact rational scalars and their canonical string form.
//!
//! Rationals serialize as `"7"` or `"-22/7"`: always reduced, denominator
//! positive, omitted when 1. Integer matrix entries use the same decimal
//! string convention so JSON output never depends on platform integer width.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub type Rat = BigRational;

/// `n` as an exact rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d`, reduced with positive denominator. Panics if `d == 0`.
pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical form: `"7"` for integers, `"n/d"` otherwise.
pub fn render(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses the canonical form back. Accepts any integer numerator and
/// denominator; the result is reduced, so `parse` is a left inverse of
/// `render` but not injective on inputs.
pub fn parse(s: &str) -> Result<Rat, String> {
    let int_of = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| format!("bad integer {t:?}: {e}"))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(int_of(s)?)),
        Some((n, d)) => {
            let d = int_of(d)?;
            if d.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(Rat::new(int_of(n)?, d))
        }
    }
}

/// Serde adapter for a `BigInt` field stored as a decimal string.
pub mod serde_bigint {
    use num_bigint::BigInt;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.trim().parse::<BigInt>().map_err(de::Error::custom)
    }
}
