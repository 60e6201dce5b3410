//! Arbitrary-precision rationals plus the handful of integer helpers the
//! rest of the crate leans on.

use alloc::string::{String, ToString};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact rational number, always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

/// `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` as a reduced rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats as `"num/den"` with the denominator always present (`"3/1"`).
pub fn format_ratio(r: &Rational) -> String {
    let mut s = r.numer().to_string();
    s.push('/');
    s.push_str(&r.denom().to_string());
    s
}

/// Parses `"num/den"` or a bare integer `"num"`.
pub fn parse_ratio(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num.trim().parse().ok()?;
    let d: BigInt = den.trim().parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Binomial coefficient with the usual out-of-range zeros.
pub fn binomial(n: i64, k: i64) -> Rational {
    if k < 0 || k > n {
        return Rational::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

/// Nearest-f64 image of an exact rational. Values far outside the f64
/// range saturate to +/- infinity.
pub fn ratio_to_f64(r: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_parse_roundtrip() {
        let r = rat(6, -4);
        assert_eq!(format_ratio(&r), "-3/2");
        assert_eq!(parse_ratio("-3/2"), Some(r));
        assert_eq!(parse_ratio("7"), Some(rat_int(7)));
        assert_eq!(parse_ratio("1/0"), None);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), rat_int(20));
        assert_eq!(binomial(6, 7), rat_int(0));
        assert_eq!(binomial(5, 0), rat_int(1));
        assert_eq!(binomial(6, -1), rat_int(0));
    }
}
