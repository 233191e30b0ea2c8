//! Arbitrary-precision rationals and their canonical string form.
//!
//! `BigRational` keeps values in lowest terms with a positive denominator,
//! which is exactly the canonical form we need for deterministic output.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"p"` or `"p/q"`; `field` names the location for diagnostics.
pub fn parse_rat(s: &str, field: &str) -> Result<Rat> {
    let err = |message: String| Error::Parse {
        field: field.to_string(),
        message,
    };
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| err(format!("invalid numerator in rational {s:?}")))?;
    let den: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| err(format!("invalid denominator in rational {s:?}")))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err(format!("zero denominator in rational {s:?}")));
    }
    Ok(Rat::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_strings() {
        assert_eq!(format_rat(&ratio(2, 4)), "1/2");
        assert_eq!(format_rat(&ratio(-6, 3)), "-2");
        assert_eq!(format_rat(&ratio(3, -9)), "-1/3");
        assert_eq!(format_rat(&zero()), "0");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "7", "-7", "1/3", "-22/7"] {
            assert_eq!(format_rat(&parse_rat(s, "x").unwrap()), s);
        }
        assert_eq!(parse_rat("4/6", "x").unwrap(), ratio(2, 3));
    }

    #[test]
    fn zero_denominator_names_field() {
        match parse_rat("1/0", "levels[0].pairings.0") {
            Err(Error::Parse { field, .. }) => assert_eq!(field, "levels[0].pairings.0"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_rat("abc", "f").is_err());
        assert!(parse_rat("1/x", "f").is_err());
    }
}
