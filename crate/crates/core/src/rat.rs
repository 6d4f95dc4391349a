//! Exact rational scalars and small helpers on top of `num-rational`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type BigRat = num_rational::BigRational;

pub fn rat_int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integer(r: &BigRat) -> bool {
    r.denom().is_one()
}

/// Renders `r` as `n` or `n/d`, matching the expression grammar.
pub fn rat_to_string(r: &BigRat) -> String {
    if is_integer(r) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Advisory decimal rendering; never used in decisions.
pub fn approx_string(r: &BigRat) -> String {
    match r.to_f64() {
        Some(v) => format!("{v:.6}"),
        None => "overflow".to_string(),
    }
}

/// Parses `n` or `n/d` with an optional leading sign.
pub fn parse_rat(s: &str) -> Option<BigRat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRat::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRat::from_integer(n))
    }
}

/// Midpoint of two rationals.
pub fn midpoint(a: &BigRat, b: &BigRat) -> BigRat {
    (a + b) / rat_int(2)
}

pub fn min_rat(a: BigRat, b: BigRat) -> BigRat {
    if a <= b {
        a
    } else {
        b
    }
}

pub fn max_rat(a: BigRat, b: BigRat) -> BigRat {
    if a >= b {
        a
    } else {
        b
    }
}

/// `max(|a|, |b|)` helper for interval arithmetic.
pub fn abs_max(a: &BigRat, b: &BigRat) -> BigRat {
    max_rat(a.abs(), b.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["3", "-5/2", "0", "7/3"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(rat_to_string(&r), s);
        }
        assert!(parse_rat("1/0").is_none());
        assert_eq!(parse_rat(" 4/6 ").unwrap(), rat(2, 3));
    }

    #[test]
    fn midpoint_is_between() {
        let m = midpoint(&rat_int(1), &rat_int(2));
        assert_eq!(m, rat(3, 2));
    }
}
