//! The multiplicative subgroup of `Q(z)*` generated by the roots of unity,
//! `sqrt(3)` and the positive rationals, together with an exact solver for
//! systems `a^D = lambda` of multiplicative binomial equations.
//!
//! Every coefficient ratio appearing in the seed component ideals lives in
//! this subgroup, which is what makes the "rescale a binomial ideal to a
//! toric ideal" step exactly solvable.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::cyclotomic::CycNum;
use crate::intmat::IntMatrix;
use crate::rational::Rational;

/// `zeta12^zeta * 3^(half3 / 2) * prod p^e` with positive prime factors
/// `p != 3`. The group is isomorphic to `Z/12 + Z + Z^(primes)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Radical {
    zeta: i64,
    half3: i64,
    factors: BTreeMap<u64, i64>,
}

impl Radical {
    pub fn one() -> Self {
        Radical {
            zeta: 0,
            half3: 0,
            factors: BTreeMap::new(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.zeta == 0 && self.half3 == 0 && self.factors.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (&p, &e) in &other.factors {
            let v = factors.entry(p).or_insert(0);
            *v += e;
            if *v == 0 {
                factors.remove(&p);
            }
        }
        Radical {
            zeta: (self.zeta + other.zeta).rem_euclid(12),
            half3: self.half3 + other.half3,
            factors,
        }
    }

    pub fn pow(&self, n: i64) -> Self {
        let mut factors = BTreeMap::new();
        for (&p, &e) in &self.factors {
            if e * n != 0 {
                factors.insert(p, e * n);
            }
        }
        Radical {
            zeta: (self.zeta * n).rem_euclid(12),
            half3: self.half3 * n,
            factors,
        }
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    /// An exact `n`-th root inside the subgroup, when one exists. Roots of
    /// unity give `gcd(n,12)` choices; any one of them serves, because the
    /// caller validates the solved point by substitution.
    pub fn nth_root(&self, n: i64) -> Option<Self> {
        assert!(n > 0);
        let g = n.gcd(&12);
        if self.zeta % g != 0 {
            return None;
        }
        if self.half3 % n != 0 {
            return None;
        }
        let m = 12 / g;
        let n_red = (n / g).rem_euclid(m);
        // Solve (n/g) x = zeta/g (mod 12/g); n/g is invertible mod 12/g.
        let x = (0..m).find(|&x| (n_red * x).rem_euclid(m) == (self.zeta / g).rem_euclid(m))?;
        let mut factors = BTreeMap::new();
        for (&p, &e) in &self.factors {
            if e % n != 0 {
                return None;
            }
            factors.insert(p, e / n);
        }
        Some(Radical {
            zeta: x.rem_euclid(12),
            half3: self.half3 / n,
            factors,
        })
    }

    pub fn to_cycnum(&self) -> CycNum {
        let mut rat = Rational::one();
        for (&p, &e) in &self.factors {
            rat = rat * pow_rational(p, e);
        }
        let (three_pow, odd) = (self.half3.div_euclid(2), self.half3.rem_euclid(2) == 1);
        rat = rat * pow_rational(3, three_pow);
        let mut out = CycNum::zeta_pow(self.zeta).scale(&rat);
        if odd {
            out = out * CycNum::sqrt3();
        }
        out
    }

    /// Recognises a cyclotomic number as an element of the subgroup by
    /// stripping a root of unity and an optional `sqrt(3)` and factoring the
    /// remaining rational.
    pub fn from_cycnum(x: &CycNum) -> Option<Self> {
        if x.is_zero() {
            return None;
        }
        for k in 0..12 {
            for e in 0..2 {
                let mut div = CycNum::zeta_pow(k);
                if e == 1 {
                    div = div * CycNum::sqrt3();
                }
                let q = x.checked_div(&div).expect("unit divisor");
                let Some(r) = q.as_rational() else { continue };
                if !r.is_positive() {
                    continue;
                }
                let mut factors = BTreeMap::new();
                factor_into(r.numer(), 1, &mut factors)?;
                factor_into(r.denom(), -1, &mut factors)?;
                let three = factors.remove(&3).unwrap_or(0);
                return Some(Radical {
                    zeta: k,
                    half3: 2 * three + e,
                    factors,
                });
            }
        }
        None
    }
}

fn pow_rational(p: u64, e: i64) -> Rational {
    let big = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rational::from_integer(big)
    } else {
        Rational::new(BigInt::one(), big)
    }
}

fn factor_into(n: &BigInt, sign: i64, out: &mut BTreeMap<u64, i64>) -> Option<()> {
    let mut n = n.abs().to_u64()?;
    let mut p = 2u64;
    while p * p <= n {
        while n % p == 0 {
            let v = out.entry(p).or_insert(0);
            *v += sign;
            if *v == 0 {
                out.remove(&p);
            }
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        let v = out.entry(n).or_insert(0);
        *v += sign;
        if *v == 0 {
            out.remove(&n);
        }
    }
    Some(())
}

/// Solves `prod_j a_j^(d[i][j]) = lambda[i]` for `a` in the radical subgroup.
/// Returns one solution; callers validate it against the original equations.
pub fn solve_multiplicative(d: &[Vec<i64>], lambda: &[Radical]) -> Option<Vec<Radical>> {
    assert_eq!(d.len(), lambda.len());
    let k = d.len();
    let n = d.first().map_or(0, Vec::len);
    let mat = IntMatrix::from_rows_i64(d);
    let snf = mat.snf();
    let r = snf.rank();
    // mu = U * lambda (multiplicatively).
    let mut mu = Vec::with_capacity(k);
    for i in 0..k {
        let mut acc = Radical::one();
        for (j, l) in lambda.iter().enumerate() {
            let e = snf.u.at(i, j).to_i64().expect("small unimodular entries");
            acc = acc.mul(&l.pow(e));
        }
        mu.push(acc);
    }
    // beta_i = mu_i^(1/d_i) for pivot rows; later rows must be trivial.
    let mut beta = Vec::new();
    for i in 0..n {
        if i < r {
            let di = snf.d.at(i, i).to_i64().expect("small invariant factor");
            beta.push(mu[i].nth_root(di)?);
        } else {
            beta.push(Radical::one());
        }
    }
    for m in mu.iter().skip(r) {
        if !m.is_one() {
            return None;
        }
    }
    // alpha = V * beta.
    let mut alpha = Vec::with_capacity(n);
    for j in 0..n {
        let mut acc = Radical::one();
        for (i, b) in beta.iter().enumerate() {
            let e = snf.v.at(j, i).to_i64().expect("small unimodular entries");
            acc = acc.mul(&b.pow(e));
        }
        alpha.push(acc);
    }
    Some(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn recognise_and_round_trip() {
        let x = CycNum::i() * CycNum::sqrt3().scale(&crate::rational::ratio(9, 2));
        let r = Radical::from_cycnum(&x).unwrap();
        assert_eq!(r.to_cycnum(), x);
        assert!(Radical::from_cycnum(&(CycNum::one() + CycNum::i())).is_none());
    }

    #[test]
    fn roots() {
        let nine = Radical::from_cycnum(&CycNum::from_int(9)).unwrap();
        let three = nine.nth_root(2).unwrap();
        assert_eq!(three.to_cycnum(), CycNum::from_int(3));
        let m27 = Radical::from_cycnum(&CycNum::from_int(-27)).unwrap();
        let r = m27.nth_root(3).unwrap();
        assert_eq!(r.pow(3).to_cycnum(), CycNum::from_int(-27));
    }

    #[test]
    fn solve_two_equations() {
        // a0^2 a1 = 12, a0 a1 = 6 -> a0 = 2, a1 = 3.
        let d = vec![vec![2, 1], vec![1, 1]];
        let lambda = vec![
            Radical::from_cycnum(&CycNum::from_int(12)).unwrap(),
            Radical::from_cycnum(&CycNum::from_int(6)).unwrap(),
        ];
        let a = solve_multiplicative(&d, &lambda).unwrap();
        assert_eq!(a[0].to_cycnum(), CycNum::from_int(2));
        assert_eq!(a[1].to_cycnum(), CycNum::from_int(3));
    }

    #[test]
    fn inconsistent_system_rejected() {
        // a^2 = 2 has no rational-radical solution with zeta/sqrt3 parts only.
        let d = vec![vec![2]];
        let lambda = vec![Radical::from_cycnum(&CycNum::from_int(2)).unwrap()];
        assert!(solve_multiplicative(&d, &lambda).is_none());
    }
}
