//! Arbitrary-precision rationals, re-exported from `num-rational`.
//!
//! `BigRational` already maintains the invariants we need (reduced form,
//! positive denominator), so this module only adds conversion helpers.

use num_bigint::BigInt;

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Extracts an `i64` from an integral rational, if it fits.
pub fn as_i64(r: &Rational) -> Option<i64> {
    use num_traits::ToPrimitive;
    if !r.is_integer() {
        return None;
    }
    r.numer().to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_positive_denominator() {
        let r = ratio(4, -6);
        assert_eq!(r, ratio(-2, 3));
        assert!(r.denom() > &BigInt::from(0));
    }
}
