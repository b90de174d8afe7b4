//! The cyclotomic field `Q(z)` of degree 4, where `z` is a primitive 12th
//! root of unity: `z^4 = z^2 - 1`.
//!
//! This single field houses every coefficient the toolkit needs: `i = z^3`,
//! a primitive 6th root `b = z^2`, a primitive cube root `z^2 - 1`, and
//! `sqrt(3) = 2z - z^3` (the positive real embedding).

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::rational::{rat, Rational};

/// An element `c0 + c1*z + c2*z^2 + c3*z^3`, always in reduced basis form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct CycNum {
    coeffs: [Rational; 4],
}

/// Error for exact division by zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivByZero;

impl fmt::Display for DivByZero {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "division by zero in Q(z)")
    }
}

impl CycNum {
    pub fn new(coeffs: [Rational; 4]) -> Self {
        CycNum { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        CycNum {
            coeffs: [r, Rational::zero(), Rational::zero(), Rational::zero()],
        }
    }

    /// `z^k` for any integer `k`, reduced mod 12.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(12) as usize;
        let mut c = [
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        ];
        // z^0..z^3 are basis vectors; higher powers reduce via z^4 = z^2 - 1
        // and z^6 = -1.
        match k {
            0..=3 => c[k] = Rational::one(),
            4 => {
                c[2] = rat(1);
                c[0] = rat(-1);
            }
            5 => {
                c[3] = rat(1);
                c[1] = rat(-1);
            }
            _ => return -Self::zeta_pow((k - 6) as i64),
        }
        CycNum { coeffs: c }
    }

    /// The imaginary unit `i = z^3`.
    pub fn i() -> Self {
        Self::zeta_pow(3)
    }

    /// The primitive 6th root `b = z^2` used in the generator coefficients.
    pub fn b() -> Self {
        Self::zeta_pow(2)
    }

    /// `sqrt(3) = z + z^11 = 2z - z^3` (positive real embedding).
    pub fn sqrt3() -> Self {
        Self::zeta_pow(1) * Self::from_int(2) - Self::zeta_pow(3)
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational; 4] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycNum {
            coeffs: [
                &self.coeffs[0] * r,
                &self.coeffs[1] * r,
                &self.coeffs[2] * r,
                &self.coeffs[3] * r,
            ],
        }
    }

    /// Exact inverse, solving the 4x4 multiplication system over Q.
    pub fn inv(&self) -> Result<Self, DivByZero> {
        if self.is_zero() {
            return Err(DivByZero);
        }
        // Columns of m are self * z^k in basis coordinates.
        let mut m: Vec<[Rational; 5]> = Vec::with_capacity(4);
        let cols: [CycNum; 4] = [
            self.clone(),
            self * &CycNum::zeta_pow(1),
            self * &CycNum::zeta_pow(2),
            self * &CycNum::zeta_pow(3),
        ];
        for row in 0..4 {
            let mut r = [
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
            ];
            for (col, c) in cols.iter().enumerate() {
                r[col] = c.coeffs[row].clone();
            }
            if row == 0 {
                r[4] = Rational::one();
            }
            m.push(r);
        }
        // Gaussian elimination with exact rationals.
        let mut pivot_row = 0;
        for col in 0..4 {
            let Some(p) = (pivot_row..4).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(pivot_row, p);
            let inv_p = m[pivot_row][col].recip();
            for k in col..5 {
                m[pivot_row][k] = &m[pivot_row][k] * &inv_p;
            }
            for r in 0..4 {
                if r != pivot_row && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for k in col..5 {
                        m[r][k] = &m[r][k] - &(&f * &m[pivot_row][k]);
                    }
                }
            }
            pivot_row += 1;
        }
        debug_assert_eq!(pivot_row, 4, "field element has invertible mult matrix");
        let coeffs = [
            m[0][4].clone(),
            m[1][4].clone(),
            m[2][4].clone(),
            m[3][4].clone(),
        ];
        let out = CycNum { coeffs };
        debug_assert!((&out * self).is_one());
        Ok(out)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, DivByZero> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, DivByZero> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..e.unsigned_abs() {
            out *= &base;
        }
        Ok(out)
    }

    /// True iff `x^12 = 1`, i.e. `x` is one of the twelve roots of unity in
    /// this field.
    pub fn is_root_of_unity(&self) -> bool {
        self.pow(12).map(|p| p.is_one()).unwrap_or(false)
    }

    /// The exponent `k` with `self = z^k`, if the element is a root of unity.
    pub fn root_of_unity_exponent(&self) -> Option<i64> {
        (0..12).find(|&k| *self == CycNum::zeta_pow(k))
    }

    fn term_str(r: &Rational, power: usize, first: bool) -> String {
        use alloc::format;
        let mut s = String::new();
        if r.is_negative() {
            s.push('-');
        } else if !first {
            s.push('+');
        }
        let a = if r.is_negative() { -r.clone() } else { r.clone() };
        let coeff_one = a.is_one();
        if power == 0 {
            s.push_str(&format!("{a}"));
        } else {
            if !coeff_one {
                s.push_str(&format!("{a}*"));
            }
            if power == 1 {
                s.push('z');
            } else {
                s.push_str(&format!("z^{power}"));
            }
        }
        s
    }
}

use num_traits::Signed;

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            write!(f, "{}", Self::term_str(c, k, first))?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({self})")
    }
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        let mut c = self.coeffs.clone();
        for k in 0..4 {
            c[k] = &c[k] + &rhs.coeffs[k];
        }
        CycNum { coeffs: c }
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        let mut c = self.coeffs.clone();
        for k in 0..4 {
            c[k] = &c[k] - &rhs.coeffs[k];
        }
        CycNum { coeffs: c }
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        // Raw degree-6 product, then reduce z^4, z^5, z^6.
        let mut raw = [
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        ];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[i + j] = &raw[i + j] + &(a * b);
            }
        }
        // z^4 = z^2 - 1, z^5 = z^3 - z, z^6 = -1.
        let mut c = [
            raw[0].clone(),
            raw[1].clone(),
            raw[2].clone(),
            raw[3].clone(),
        ];
        c[2] = &c[2] + &raw[4];
        c[0] = &c[0] - &raw[4];
        c[3] = &c[3] + &raw[5];
        c[1] = &c[1] - &raw[5];
        c[0] = &c[0] - &raw[6];
        CycNum { coeffs: c }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $fn:ident) => {
        impl $trait for CycNum {
            type Output = CycNum;
            fn $fn(self, rhs: CycNum) -> CycNum {
                (&self).$fn(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        let mut c = self.coeffs;
        for k in 0..4 {
            c[k] = -c[k].clone();
        }
        CycNum { coeffs: c }
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -self.clone()
    }
}

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        for k in 0..4 {
            self.coeffs[k] = &self.coeffs[k] + &rhs.coeffs[k];
        }
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        for k in 0..4 {
            self.coeffs[k] = &self.coeffs[k] - &rhs.coeffs[k];
        }
    }
}

impl MulAssign<&CycNum> for CycNum {
    fn mul_assign(&mut self, rhs: &CycNum) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelfth_power_is_one() {
        assert!(CycNum::zeta_pow(1).pow(12).unwrap().is_one());
        assert_eq!(
            CycNum::zeta_pow(1) * CycNum::zeta_pow(11),
            CycNum::one()
        );
        assert_eq!(CycNum::zeta_pow(6), -CycNum::one());
    }

    #[test]
    fn named_constants() {
        let i = CycNum::i();
        assert_eq!(&i * &i, CycNum::from_int(-1));
        let s3 = CycNum::sqrt3();
        assert_eq!(&s3 * &s3, CycNum::from_int(3));
        // b is a primitive 6th root: b^6 = 1, b^2 != 1, b^3 != 1.
        let b = CycNum::b();
        assert!(b.pow(6).unwrap().is_one());
        assert!(!b.pow(2).unwrap().is_one());
        assert!(!b.pow(3).unwrap().is_one());
        // b^2 - b + 1 = 0 (primitive 6th root minimal polynomial).
        assert!((b.pow(2).unwrap() - b + CycNum::one()).is_zero());
        // zeta_3 = z^4 reduced, zeta_6 = z^2.
        assert!(CycNum::zeta_pow(4).pow(3).unwrap().is_one());
        assert_eq!(CycNum::zeta_pow(4), CycNum::b() - CycNum::one());
    }

    #[test]
    fn inverse_round_trip() {
        let x = CycNum::sqrt3() + CycNum::i().scale(&crate::rational::ratio(2, 3));
        let y = x.inv().unwrap();
        assert!((x * y).is_one());
        assert_eq!(CycNum::zero().inv(), Err(DivByZero));
    }

    #[test]
    fn display_is_canonical() {
        use alloc::string::ToString;
        let x = CycNum::from_int(2) - CycNum::b().scale(&rat(4));
        assert_eq!(x.to_string(), "2-4*z^2");
        assert_eq!(CycNum::zero().to_string(), "0");
    }
}
