//! Walls of the chamber containing the relatively ample bundle: rays in the
//! movable cone on which two fixed points carry equal bundle weights.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::compass::FixedPointDatum;
use crate::lattice::gcd_i64;
use crate::poly::Weight;

/// For each pair of fixed points, the bundles `v = (p, q)` with equal
/// weights at both points form the kernel of a 2x2 system; one-dimensional
/// kernels meeting the chamber `p >= q >= 0` are the walls. Returns the
/// deduplicated primitive ray set.
pub fn movable_walls(data: &[FixedPointDatum]) -> BTreeSet<Weight> {
    let mut out = BTreeSet::new();
    for (i, a) in data.iter().enumerate() {
        for b in data.iter().skip(i + 1) {
            let d1 = (a.mu_l1.0 - b.mu_l1.0, a.mu_l1.1 - b.mu_l1.1);
            let l2a = a.mu_l2();
            let l2b = b.mu_l2();
            let d2 = (l2a.0 - l2b.0, l2a.1 - l2b.1);
            // Rows of the system p*d1 + q*d2 = 0.
            let rows = [(d1.0, d2.0), (d1.1, d2.1)];
            let nonzero: Vec<(i64, i64)> =
                rows.iter().copied().filter(|r| *r != (0, 0)).collect();
            if nonzero.is_empty() {
                // Equal weights everywhere would merge two fixed points.
                continue;
            }
            let (rm, rn) = nonzero[0];
            let mut v = (rn, -rm);
            // Consistency with the other row.
            if nonzero.len() == 2 {
                let (sm, sn) = nonzero[1];
                if sm * v.0 + sn * v.1 != 0 {
                    continue;
                }
            }
            let g = gcd_i64(v.0, v.1);
            v = (v.0 / g, v.1 / g);
            if v.0 < 0 || (v.0 == 0 && v.1 < 0) {
                v = (-v.0, -v.1);
            }
            // Keep rays meeting the chamber p >= q >= 0 nontrivially.
            if v.0 >= v.1 && v.1 >= 0 {
                out.insert(v);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn datum(mu_l1: Weight, mu_l1l2: Weight) -> FixedPointDatum {
        FixedPointDatum {
            label: "P".to_string(),
            vertex: (mu_l1.0 + mu_l1l2.0, mu_l1.1 + mu_l1l2.1),
            mu_l1,
            mu_l1l2,
            compass: vec![],
        }
    }

    #[test]
    fn equal_first_weights_give_the_first_ray() {
        // d1 = 0 forces q = 0: the ray through the first generator.
        let a = datum((0, 4), (0, 12));
        let b = datum((0, 4), (1, 7));
        let walls = movable_walls(&[a, b]);
        assert_eq!(walls.into_iter().collect::<Vec<_>>(), vec![(1, 0)]);
    }

    #[test]
    fn opposite_differences_give_the_diagonal() {
        // d1 = (-1,1), d2 = (1,-1): kernel p = q.
        let a = datum((2, 2), (3, 3));
        let b = datum((3, 1), (3, 3));
        let walls = movable_walls(&[a, b]);
        assert_eq!(walls.into_iter().collect::<Vec<_>>(), vec![(1, 1)]);
    }
}
