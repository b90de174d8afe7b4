//! The localization series: the equivariant Euler characteristic as a sum
//! over fixed points of `t^mu / prod(1 - t^nu)`, expanded as a Laurent
//! series truncated by a positive linear functional, with every factor
//! rewritten into the functional-positive half before expanding.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::compass::FixedPointDatum;
use crate::gitquot::WeightTable;
use crate::poly::Weight;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesError {
    EllVanishesOnCompass { point: usize, nu: Weight },
    EllNotPositive,
    NegativeCoefficient { exponent: Weight, value: BigInt },
    OffQuadrant { exponent: Weight, value: BigInt },
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::EllVanishesOnCompass { point, nu } => {
                write!(f, "functional vanishes on compass vector {nu:?} at point {point}")
            }
            SeriesError::EllNotPositive => {
                write!(f, "functional is not positive on the quadrant")
            }
            SeriesError::NegativeCoefficient { exponent, value } => {
                write!(f, "negative coefficient {value} at {exponent:?}")
            }
            SeriesError::OffQuadrant { exponent, value } => {
                write!(f, "off-quadrant exponent {exponent:?} survives with {value}")
            }
        }
    }
}

/// A Laurent series truncated to `ell(e) <= bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    pub ell: Weight,
    pub bound: i64,
    pub terms: BTreeMap<Weight, BigInt>,
}

impl LaurentSeries {
    pub fn coefficient(&self, e: Weight) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }
}

fn ell_of(ell: Weight, e: Weight) -> i64 {
    ell.0 * e.0 + ell.1 * e.1
}

/// The character series of the bundle with fibre weights `mu` at each fixed
/// point: each factor `1/(1 - t^nu)` with `ell(nu) < 0` is rewritten as
/// `-t^(-nu)/(1 - t^(-nu))`, every factor is expanded geometrically, and
/// the seven contributions are summed exactly.
pub fn lrr_character_series(
    data: &[FixedPointDatum],
    mu: impl Fn(&FixedPointDatum) -> Weight,
    ell: Weight,
    bound: i64,
) -> Result<LaurentSeries, SeriesError> {
    if ell.0 <= 0 || ell.1 <= 0 {
        return Err(SeriesError::EllNotPositive);
    }
    // Reject a functional vanishing on any compass vector before expanding.
    for (i, p) in data.iter().enumerate() {
        for &nu in &p.compass {
            if ell_of(ell, nu) == 0 {
                return Err(SeriesError::EllVanishesOnCompass { point: i, nu });
            }
        }
    }
    let mut total: BTreeMap<Weight, BigInt> = BTreeMap::new();
    for p in data {
        let mut sign = 1i64;
        let mut base = mu(p);
        let mut dirs: Vec<Weight> = Vec::new();
        for &nu in &p.compass {
            if ell_of(ell, nu) > 0 {
                dirs.push(nu);
            } else {
                sign = -sign;
                base = (base.0 - nu.0, base.1 - nu.1);
                dirs.push((-nu.0, -nu.1));
            }
        }
        let mut cur: BTreeMap<Weight, i64> = BTreeMap::new();
        if ell_of(ell, base) <= bound {
            cur.insert(base, sign);
        }
        for d in dirs {
            let step = ell_of(ell, d);
            let mut next: BTreeMap<Weight, i64> = BTreeMap::new();
            for (&e, &c) in &cur {
                let mut k = 0i64;
                loop {
                    let shifted = (e.0 + k * d.0, e.1 + k * d.1);
                    if ell_of(ell, shifted) > bound {
                        break;
                    }
                    *next.entry(shifted).or_insert(0) += c;
                    k += 1;
                    let _ = step;
                }
            }
            cur = next;
        }
        for (e, c) in cur {
            let slot = total.entry(e).or_insert_with(BigInt::zero);
            *slot += c;
        }
    }
    total.retain(|_, v| !v.is_zero());
    Ok(LaurentSeries {
        ell,
        bound,
        terms: total,
    })
}

/// The series coefficients as a dimension table, asserting nonnegativity
/// and exact cancellation of every off-quadrant exponent.
pub fn hilbert_weight_table(series: &LaurentSeries) -> Result<WeightTable, SeriesError> {
    let mut table = WeightTable::new();
    for (&e, v) in &series.terms {
        if v.is_negative() {
            return Err(SeriesError::NegativeCoefficient {
                exponent: e,
                value: v.clone(),
            });
        }
        if e.0 < 0 || e.1 < 0 {
            return Err(SeriesError::OffQuadrant {
                exponent: e,
                value: v.clone(),
            });
        }
        table.insert(e, v.to_u64().expect("table dimensions fit"));
    }
    Ok(table)
}

/// Weight tables of `p L1 + q L2` for all `0 <= p <= pmax`, `0 <= q <= qmax`.
pub fn double_generating_series(
    data: &[FixedPointDatum],
    pmax: i64,
    qmax: i64,
    ell: Weight,
    bound: i64,
) -> Result<BTreeMap<Weight, WeightTable>, SeriesError> {
    let mut out = BTreeMap::new();
    for p in 0..=pmax {
        for q in 0..=qmax {
            let series = lrr_character_series(data, |d| d.mu_of(p, q), ell, bound)?;
            out.insert((p, q), hilbert_weight_table(&series)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn toy_quadrant_series() {
        // A single fixed point with compass {e1, e2} and weight 0 expands to
        // the full quadrant with coefficient one.
        let datum = FixedPointDatum {
            label: "Q".to_string(),
            vertex: (0, 0),
            mu_l1: (0, 0),
            mu_l1l2: (0, 0),
            compass: vec![(1, 0), (0, 1)],
        };
        let s = lrr_character_series(core::slice::from_ref(&datum), |d| d.mu_l1, (3, 2), 12)
            .unwrap();
        assert_eq!(s.coefficient((0, 0)), BigInt::from(1));
        assert_eq!(s.coefficient((2, 3)), BigInt::from(1));
        assert!(s
            .terms
            .keys()
            .all(|e| e.0 >= 0 && e.1 >= 0));
        let table = hilbert_weight_table(&s).unwrap();
        assert_eq!(table.get(&(1, 1)), Some(&1));
    }

    #[test]
    fn vanishing_functional_rejected() {
        let datum = FixedPointDatum {
            label: "Q".to_string(),
            vertex: (0, 0),
            mu_l1: (0, 0),
            mu_l1l2: (0, 0),
            compass: vec![(2, -3), (0, 1)],
        };
        match lrr_character_series(core::slice::from_ref(&datum), |d| d.mu_l1, (3, 2), 10) {
            Err(SeriesError::EllVanishesOnCompass { nu, .. }) => assert_eq!(nu, (2, -3)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn sign_normalised_expansion_cancels() {
        // Two fixed points of a projective line: mu 0 and (1,0) with
        // compasses {(1,0)} padded by quadrant directions; the classic
        // two-term rational identity has nonnegative quadrant support.
        let a = FixedPointDatum {
            label: "A".to_string(),
            vertex: (0, 0),
            mu_l1: (0, 0),
            mu_l1l2: (0, 0),
            compass: vec![(1, 0), (0, 1), (0, 1), (0, 1)],
        };
        let b = FixedPointDatum {
            label: "B".to_string(),
            vertex: (0, 0),
            mu_l1: (3, 0),
            mu_l1l2: (0, 0),
            compass: vec![(-1, 0), (0, 1), (0, 1), (0, 1)],
        };
        let s = lrr_character_series(&[a, b], |d| d.mu_l1, (3, 2), 15).unwrap();
        // Sections of degree-3 forms on the line times the quadrant filler:
        // coefficient at (k, 0) is 1 for 0 <= k <= 3.
        for k in 0..=3 {
            assert_eq!(s.coefficient((k, 0)), BigInt::from(1), "at ({k},0)");
        }
        assert!(s.coefficient((4, 0)).is_zero());
        assert!(s.terms.keys().all(|e| e.0 >= 0 && e.1 >= 0));
    }
}
