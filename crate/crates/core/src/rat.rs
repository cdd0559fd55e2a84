//! Helpers for exact rational coordinates: parsing, denominator clearing and
//! primitive integer directions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rat;

/// Parses "p/q" or "p" into an exact rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().ok()?;
            let d: BigInt = den.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(BigRational::from_integer(n))
        }
    }
}

pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_i64(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Least common multiple of all denominators appearing in `values`.
pub fn lcm_denominators<'a>(values: impl Iterator<Item = &'a Rat>) -> BigInt {
    let mut acc = BigInt::one();
    for v in values {
        acc = acc.lcm(v.denom());
    }
    acc
}

/// Scales a rational vector to a primitive integer vector (gcd of entries 1,
/// first nonzero entry positive). Errors on the zero vector.
pub fn primitive_integer(v: &[Rat]) -> Result<Vec<BigInt>> {
    let scale = lcm_denominators(v.iter());
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|r| r.numer() * (&scale / r.denom()))
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return Err(Error::EmptyInput);
    }
    for x in ints.iter_mut() {
        *x = &*x / &g;
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in ints.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    Ok(ints)
}

pub fn bigint_to_i64(x: &BigInt) -> Result<i64> {
    use num_traits::ToPrimitive;
    x.to_i64().ok_or(Error::IntegerOverflow)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        let r = parse_rat("-3/6").unwrap();
        assert_eq!(format_rat(&r), "-1/2");
        assert_eq!(format_rat(&parse_rat("7").unwrap()), "7");
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("x").is_none());
    }

    #[test]
    fn primitive_direction() {
        let v = vec![rat(1, 2), rat(-1, 3), rat_i64(0)];
        let p = primitive_integer(&v).unwrap();
        assert_eq!(p, vec![BigInt::from(3), BigInt::from(-2), BigInt::from(0)]);
        // sign convention: first nonzero entry positive
        let v = vec![rat_i64(0), rat(-2, 1)];
        let p = primitive_integer(&v).unwrap();
        assert_eq!(p, vec![BigInt::from(0), BigInt::from(1)]);
    }

    #[test]
    fn lcm_of_denominators() {
        let v = vec![rat(1, 2), rat(1, 3)];
        assert_eq!(lcm_denominators(v.iter()), BigInt::from(6));
    }
}
