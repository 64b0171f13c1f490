//! Exact rational scalars and their string form.

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use std::str::FromStr;

pub type Rational = Ratio<i64>;

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Renders `p/q`, or just `p` for integers.
pub fn to_string(r: &Rational) -> String {
    r.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a rational: {0:?}")]
pub struct ParseRationalError(pub String);

/// Accepts `p`, `p/q`, and surrounding whitespace.
pub fn parse(s: &str) -> Result<Rational, ParseRationalError> {
    let t = s.trim();
    let bad = || ParseRationalError(s.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n = i64::from_str(n.trim()).map_err(|_| bad())?;
            let d = i64::from_str(d.trim()).map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(int(i64::from_str(t).map_err(|_| bad())?)),
    }
}

pub fn max_abs<'a>(it: impl IntoIterator<Item = &'a Rational>) -> Rational {
    it.into_iter()
        .map(|r| r.abs())
        .fold(Rational::zero(), |a, b| if b > a { b } else { a })
}
