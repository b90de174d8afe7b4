//! Prime fields `F_p` with `p = 1 (mod 12)`, ring-homomorphic images of
//! cyclotomic numbers, and incremental Gaussian elimination used for fast
//! rank lower bounds.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cyclotomic::CycNum;

/// A denominator of the embedded number is divisible by `p`; the caller
/// should retry with another prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BadReduction {
    pub p: u64,
}

impl fmt::Display for BadReduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "denominator divisible by p = {}", self.p)
    }
}

pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime, so Fermat suffices.
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `z^4 - z^2 + 1` evaluated mod p.
pub fn phi12_mod(r: u64, p: u64) -> u64 {
    let r2 = mul_mod(r, r, p);
    let r4 = mul_mod(r2, r2, p);
    add_mod(sub_mod(r4, r2, p), 1, p)
}

/// A prime `p = 1 (mod 12)` together with a primitive 12th root of unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmbeddingPrime {
    pub p: u64,
    pub root: u64,
}

impl EmbeddingPrime {
    /// Finds a root of the 12th cyclotomic polynomial in `F_p`, which exists
    /// exactly when `p = 1 (mod 12)`.
    pub fn for_prime(p: u64) -> Option<Self> {
        if p % 12 != 1 || !is_prime(p) {
            return None;
        }
        for a in 2..p {
            let r = pow_mod(a, (p - 1) / 12, p);
            if phi12_mod(r, p) == 0 {
                return Some(EmbeddingPrime { p, root: r });
            }
        }
        None
    }

    /// The first `count` embedding primes at or above `floor`.
    pub fn scan(floor: u64, count: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut p = floor.max(13);
        while out.len() < count {
            if p % 12 == 1 {
                if let Some(e) = Self::for_prime(p) {
                    out.push(e);
                }
            }
            p += 1;
        }
        out
    }

    /// Ring-homomorphic image of a cyclotomic number.
    pub fn embed(&self, x: &CycNum) -> Result<u64, BadReduction> {
        let mut acc = 0u64;
        let mut rpow = 1u64;
        for k in 0..4 {
            let c = x.coeff(k);
            if !c.numer().is_zero() {
                let num = bigint_mod(c.numer(), self.p);
                let den = bigint_mod(c.denom(), self.p);
                if den == 0 {
                    return Err(BadReduction { p: self.p });
                }
                let v = mul_mod(num, inv_mod(den, self.p), self.p);
                acc = add_mod(acc, mul_mod(v, rpow, self.p), self.p);
            }
            rpow = mul_mod(rpow, self.root, self.p);
        }
        Ok(acc)
    }
}

fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    let m = x.mod_floor(&BigInt::from(p));
    debug_assert!(!m.is_negative());
    m.to_u64().expect("reduced below p")
}

/// Incremental row-reduction over `F_p`: feed rows one at a time and watch
/// the rank grow. Rows are dense vectors of fixed width.
pub struct IncrementalRank {
    p: u64,
    width: usize,
    /// Reduced basis rows, each normalised to a unit leading entry.
    basis: Vec<(usize, Vec<u64>)>,
}

impl IncrementalRank {
    pub fn new(p: u64, width: usize) -> Self {
        IncrementalRank {
            p,
            width,
            basis: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Reduces `row` against the basis; returns true when it added a new
    /// pivot (i.e. the rank increased).
    pub fn add_row(&mut self, mut row: Vec<u64>) -> bool {
        assert_eq!(row.len(), self.width);
        let p = self.p;
        for (lead, b) in &self.basis {
            if row[*lead] != 0 {
                let f = row[*lead];
                for (x, y) in row.iter_mut().zip(b.iter()) {
                    *x = sub_mod(*x, mul_mod(f, *y, p), p);
                }
            }
        }
        let Some(lead) = row.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(row[lead], p);
        for x in row.iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        self.basis.push((lead, row));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn thirteen_admits_root_seven() {
        // 7^4 - 7^2 + 1 = 2353 = 181 * 13.
        assert_eq!(phi12_mod(7, 13), 0);
        let e = EmbeddingPrime::for_prime(13).unwrap();
        assert_eq!(phi12_mod(e.root, 13), 0);
    }

    #[test]
    fn embedding_is_ring_homomorphic() {
        let e = EmbeddingPrime::scan(1_000_000, 1)[0];
        let x = CycNum::sqrt3() + CycNum::from_rational(ratio(3, 7));
        let y = CycNum::i() - CycNum::b();
        let both = e.embed(&(&x * &y)).unwrap();
        let separate = mul_mod(e.embed(&x).unwrap(), e.embed(&y).unwrap(), e.p);
        assert_eq!(both, separate);
        // one maps to one, i*i maps to p - 1.
        assert_eq!(e.embed(&CycNum::one()).unwrap(), 1);
        let ii = CycNum::i() * CycNum::i();
        assert_eq!(e.embed(&ii).unwrap(), e.p - 1);
    }

    #[test]
    fn bad_denominator_reported() {
        let e = EmbeddingPrime::for_prime(13).unwrap();
        let x = CycNum::from_rational(ratio(1, 13));
        assert_eq!(e.embed(&x), Err(BadReduction { p: 13 }));
    }

    #[test]
    fn incremental_rank_counts_pivots() {
        let mut g = IncrementalRank::new(13, 3);
        assert!(g.add_row(vec![1, 2, 3]));
        assert!(!g.add_row(vec![2, 4, 6]));
        assert!(g.add_row(vec![0, 1, 1]));
        assert_eq!(g.rank(), 2);
    }
}
