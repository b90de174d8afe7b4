//! The regularity closure: starting from the seed bundles, multiplication
//! by a family member surjects out of any bundle inside that family's
//! regularity region, so coverage propagates across the nonnegative grid.

use alloc::vec;
use alloc::vec::Vec;

use crate::poly::Weight;
use crate::seeds::RegularityRule;

/// How a grid cell became covered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Seed,
    /// Covered as `from + bundle`, with `from` covered and inside the
    /// region of the rule that contributed `bundle`.
    Product { from: Weight, bundle: Weight },
}

#[derive(Clone, Debug)]
pub struct ClosureOutcome {
    pub n: i64,
    /// Row-major `(m, n)` grid of cover witnesses.
    pub witness: Vec<Vec<Option<Witness>>>,
    pub uncovered: Vec<Weight>,
}

impl ClosureOutcome {
    pub fn covered(&self, m: i64, n: i64) -> bool {
        self.witness[m as usize][n as usize].is_some()
    }

    pub fn fully_covered(&self) -> bool {
        self.uncovered.is_empty()
    }

    /// The derivation chain of a cell back to seeds.
    pub fn chain(&self, mut cell: Weight) -> Vec<Weight> {
        let mut out = vec![cell];
        loop {
            match &self.witness[cell.0 as usize][cell.1 as usize] {
                Some(Witness::Product { from, .. }) => {
                    cell = *from;
                    out.push(cell);
                }
                _ => return out,
            }
        }
    }
}

/// Marks every grid cell reachable from the seeds: whenever a covered cell
/// lies in a rule's region, the cell shifted by any family member of that
/// rule is covered too. Reports the uncovered cells of `[0, n]^2`.
pub fn regularity_closure(
    seeds: &[Weight],
    rules: &[RegularityRule],
    n: i64,
) -> ClosureOutcome {
    let size = (n + 1) as usize;
    let mut witness: Vec<Vec<Option<Witness>>> = vec![vec![None; size]; size];
    let mut queue: Vec<Weight> = Vec::new();
    for &s in seeds {
        if s.0 >= 0 && s.0 <= n && s.1 >= 0 && s.1 <= n {
            if witness[s.0 as usize][s.1 as usize].is_none() {
                witness[s.0 as usize][s.1 as usize] = Some(Witness::Seed);
                queue.push(s);
            }
        }
    }
    while let Some(cell) = queue.pop() {
        for rule in rules {
            if !rule.contains(cell.0, cell.1) {
                continue;
            }
            for &b in &rule.family {
                let next = (cell.0 + b.0, cell.1 + b.1);
                if next.0 > n || next.1 > n {
                    continue;
                }
                let slot = &mut witness[next.0 as usize][next.1 as usize];
                if slot.is_none() {
                    *slot = Some(Witness::Product {
                        from: cell,
                        bundle: b,
                    });
                    queue.push(next);
                }
            }
        }
    }
    let mut uncovered = Vec::new();
    for m in 0..=n {
        for k in 0..=n {
            if witness[m as usize][k as usize].is_none() {
                uncovered.push((m, k));
            }
        }
    }
    ClosureOutcome {
        n,
        witness,
        uncovered,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeds::parse_regularity_rules;

    #[test]
    fn zero_grid_needs_only_the_origin() {
        let rules = parse_regularity_rules("rule: m>=0 => 1 0").unwrap();
        let out = regularity_closure(&[(0, 0)], &rules, 0);
        assert!(out.fully_covered());
    }

    #[test]
    fn closure_is_monotone_in_seeds_and_rules() {
        let rules = parse_regularity_rules("rule: m-n>=1, n<=0 => 1 0").unwrap();
        let more_rules =
            parse_regularity_rules("rule: m-n>=1, n<=0 => 1 0\nrule: n>=0 => 0 1").unwrap();
        let base = regularity_closure(&[(1, 0)], &rules, 4);
        let more_seeds = regularity_closure(&[(1, 0), (0, 0)], &rules, 4);
        let wider = regularity_closure(&[(1, 0)], &more_rules, 4);
        for m in 0..=4 {
            for n in 0..=4 {
                if base.covered(m, n) {
                    assert!(more_seeds.covered(m, n));
                    assert!(wider.covered(m, n));
                }
            }
        }
    }

    #[test]
    fn witness_chains_terminate_at_seeds() {
        let rules = parse_regularity_rules("rule: m>=1 => 1 0").unwrap();
        let out = regularity_closure(&[(1, 0)], &rules, 5);
        let chain = out.chain((5, 0));
        assert_eq!(chain.last(), Some(&(1, 0)));
        assert_eq!(
            out.witness[1][0],
            Some(Witness::Seed),
        );
    }
}
