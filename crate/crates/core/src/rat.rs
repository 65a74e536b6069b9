//! Exact rational scalars.
//!
//! `Rat` is an arbitrary-precision rational, always stored reduced with a
//! positive denominator, which is exactly the canonical form the rest of the
//! crate relies on. Text form is `p` for integers and `p/q` otherwise.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` reduced. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}

pub fn is_one(r: &Rat) -> bool {
    r.is_one()
}

/// Format as `p` or `p/q`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p` or `p/q` with optional sign; `q` must be positive.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (s, None),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational: {s:?}")))?;
    let den: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| Error::Parse(format!("invalid rational: {s:?}")))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    if den.is_negative() {
        return Err(Error::Parse(format!(
            "denominator must be positive in {s:?}"
        )));
    }
    Ok(Rat::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "5", "-3", "1/2", "-7/3", "10/4"] {
            let r = parse_rat(s).unwrap();
            let t = parse_rat(&format_rat(&r)).unwrap();
            assert_eq!(r, t);
        }
        // canonical form: 10/4 reduces
        assert_eq!(format_rat(&parse_rat("10/4").unwrap()), "5/2");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("1/-2").is_err());
        assert!(parse_rat("x").is_err());
    }
}
