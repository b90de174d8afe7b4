//! Enumerates the monomials in the ring generators spanning one bigraded
//! piece: depth-first search over the section generators with componentwise
//! torus-weight bounds, then the two exceptional exponents solved uniquely
//! from the class degree.

use alloc::string::String;
use alloc::vec::Vec;

use crate::gitquot::DegreeTable;
use crate::poly::Weight;

/// One monomial of the piece: exponents on the section generators plus the
/// solved exceptional exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMonomial {
    /// Nonzero exponents on non-exceptional generators, in table order.
    pub exps: Vec<(String, i64)>,
    pub s_exp: i64,
    pub t_exp: i64,
}

impl GradedMonomial {
    pub fn total_degree(&self) -> i64 {
        self.exps.iter().map(|(_, e)| e).sum::<i64>() + self.s_exp + self.t_exp
    }
}

/// All monomials of class degree `l` and torus weight `w`. The section
/// generators all have nonzero, componentwise-nonnegative torus weights, so
/// the search is bounded; with section class degree `(pw, qw)` the
/// exceptional exponents must satisfy `s = (2A + B)/3`, `t = (A + 2B)/3`
/// for `(A, B) = (pw - l.0, qw - l.1)`, kept iff both are nonnegative
/// integers.
pub fn enumerate_graded_monomials(
    degrees: &DegreeTable,
    l: Weight,
    w: Weight,
) -> Vec<GradedMonomial> {
    let names: Vec<&String> = degrees
        .names()
        .iter()
        .filter(|n| *n != "s" && *n != "t")
        .collect();
    let torus: Vec<Weight> = names.iter().map(|n| degrees.torus(n).unwrap()).collect();
    let pic: Vec<Weight> = names.iter().map(|n| degrees.pic(n).unwrap()).collect();
    debug_assert!(torus.iter().all(|t| t.0 >= 0 && t.1 >= 0 && *t != (0, 0)));

    let mut out = Vec::new();
    let mut exps: Vec<i64> = alloc::vec![0; names.len()];
    dfs(
        0,
        w,
        (0, 0),
        &torus,
        &pic,
        &mut exps,
        &mut |exps, picw| {
            let a = picw.0 - l.0;
            let b = picw.1 - l.1;
            if (2 * a + b) % 3 != 0 || (a + 2 * b) % 3 != 0 {
                return;
            }
            let s_exp = (2 * a + b) / 3;
            let t_exp = (a + 2 * b) / 3;
            if s_exp < 0 || t_exp < 0 {
                return;
            }
            out.push(GradedMonomial {
                exps: exps
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| **e != 0)
                    .map(|(i, e)| (names[i].clone(), *e))
                    .collect(),
                s_exp,
                t_exp,
            });
        },
    );
    out
}

fn dfs(
    idx: usize,
    remaining: Weight,
    picw: Weight,
    torus: &[Weight],
    pic: &[Weight],
    exps: &mut Vec<i64>,
    emit: &mut impl FnMut(&[i64], Weight),
) {
    if idx == torus.len() {
        if remaining == (0, 0) {
            emit(exps, picw);
        }
        return;
    }
    let (u, v) = torus[idx];
    let bound = {
        let mut b = i64::MAX;
        if u > 0 {
            b = b.min(remaining.0 / u);
        }
        if v > 0 {
            b = b.min(remaining.1 / v);
        }
        b
    };
    for e in 0..=bound {
        exps[idx] = e;
        dfs(
            idx + 1,
            (remaining.0 - e * u, remaining.1 - e * v),
            (picw.0 + e * pic[idx].0, picw.1 + e * pic[idx].1),
            torus,
            pic,
            exps,
            emit,
        );
    }
    exps[idx] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gitquot::DegreeTable;
    use alloc::string::ToString;

    fn degrees() -> DegreeTable {
        DegreeTable::new(
            [
                ("a", (0, 0), (1, 1)),
                ("b", (1, 0), (2, 0)),
                ("c", (0, 1), (0, 2)),
                ("s", (-2, 1), (0, 0)),
                ("t", (1, -2), (0, 0)),
            ]
            .into_iter()
            .map(|(n, p, t)| (n.to_string(), p, t))
            .collect(),
        )
    }

    #[test]
    fn trivial_piece() {
        let ms = enumerate_graded_monomials(&degrees(), (0, 0), (0, 0));
        assert_eq!(ms.len(), 1);
        assert!(ms[0].exps.is_empty());
        assert_eq!((ms[0].s_exp, ms[0].t_exp), (0, 0));
    }

    #[test]
    fn exceptional_exponents_solved() {
        // b*c has class degree (1,1); to reach (0,0) needs s*t.
        let ms = enumerate_graded_monomials(&degrees(), (0, 0), (2, 2));
        // Candidates of weight (2,2): a^2 (degree (0,0), no correction) and
        // b*c (degree (1,1), corrected by s*t).
        assert_eq!(ms.len(), 2);
        let bc = ms
            .iter()
            .find(|m| m.exps.iter().any(|(n, _)| n == "b"))
            .unwrap();
        assert_eq!((bc.s_exp, bc.t_exp), (1, 1));
    }

    #[test]
    fn non_divisible_corrections_rejected() {
        // b alone has class degree (1,0): 2A+B = -2, not solvable in s,t.
        let ms = enumerate_graded_monomials(&degrees(), (0, 0), (2, 0));
        assert!(ms.is_empty());
    }
}
