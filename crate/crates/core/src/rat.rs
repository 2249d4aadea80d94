//! Arbitrary-precision rational scalars.
//!
//! `Rat` is stored in lowest terms with a positive denominator, so equality
//! and ordering are canonical. All coordinates in this crate are `Rat`s;
//! there is no floating point anywhere on a decision path.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;

/// Shorthand for `num/den` as a canonical rational.
pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// An integer as a rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"`, or `"-p/q"` exactly.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rat::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(p))
        }
    }
}

/// Renders a rational as `"p/q"` or `"p"` when integral.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True iff `r` is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Floor of a rational as a `BigInt`.
pub fn floor_int(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

/// Ceiling of a rational as a `BigInt`.
pub fn ceil_int(r: &Rat) -> BigInt {
    r.ceil().to_integer()
}

/// Exact binomial coefficient `C(n, k)`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `C(n, k)` narrowed to `i64`; all uses in this crate stay far below the cliff.
pub fn binom(n: i64, k: i64) -> i64 {
    use num_traits::ToPrimitive;
    binomial(n, k).to_i64().expect("binomial out of i64 range")
}

/// gcd of two nonnegative `BigInt`s.
pub fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::gcd(a, b)
}

/// Positive rational gcd of a slice: the largest `w` with every entry an
/// integer multiple of `w`. Entries may be negative; zeros are ignored.
/// Returns `None` when all entries are zero.
pub fn rat_gcd(values: &[Rat]) -> Option<Rat> {
    use num_integer::Integer;
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for v in values {
        if v.is_zero() {
            continue;
        }
        // gcd(a/b, c/d) = gcd(a*d, c*b) / (b*d), reduced.
        num = gcd_big(&(num * v.denom()), &(v.numer().abs() * &den));
        den *= v.denom();
        let g = num.gcd(&den);
        num /= &g;
        den /= &g;
    }
    if num.is_zero() {
        None
    } else {
        Some(Rat::new(num, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["2/3", "-1", "5", "-7/4", "0"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert_eq!(parse_rat("4/6").unwrap(), rat(2, 3));
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("abc").is_none());
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(4, 2), 6);
        assert_eq!(binom(12, 6), 924);
        assert_eq!(binom(3, 0), 1);
        assert_eq!(binom(3, 5), 0);
    }

    #[test]
    fn rational_gcds() {
        assert_eq!(rat_gcd(&[rat(1, 3), int(1)]).unwrap(), rat(1, 3));
        assert_eq!(rat_gcd(&[rat(1, 2), rat(1, 3)]).unwrap(), rat(1, 6));
        assert_eq!(rat_gcd(&[rat(5, 1)]).unwrap(), int(5));
        assert!(rat_gcd(&[Rat::zero()]).is_none());
    }
}
