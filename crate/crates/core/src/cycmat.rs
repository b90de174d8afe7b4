//! Exact linear algebra over the cyclotomic field: fraction-free rank,
//! linear solving with certificates, kernels and reduced echelon forms.

use alloc::vec;
use alloc::vec::Vec;

use crate::cyclotomic::CycNum;

/// Dense matrix over `Q(z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<CycNum>,
}

/// Outcome of an exact linear solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// One exact solution (free variables set to zero) plus the rank of the
    /// coefficient matrix.
    Solution { x: Vec<CycNum>, rank: usize },
    /// The system is inconsistent; `witness_row` indexes an input row whose
    /// eliminated form reads `0 = nonzero`.
    Inconsistent { rank: usize, witness_row: usize },
}

impl CycMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        CycMatrix {
            rows,
            cols,
            data: vec![CycNum::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        CycMatrix { rows: r, cols: c, data }
    }

    pub fn at(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut CycNum {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Fraction-free (Bareiss) elimination; pivots are the first nonzero
    /// entry in row-major scan order. Entries of an integral input stay
    /// integral throughout.
    pub fn rank(&self) -> usize {
        self.clone().bareiss(None).0
    }

    /// Solves `self * x = b`, returning a solution or an inconsistency
    /// certificate.
    pub fn solve(&self, b: &[CycNum]) -> SolveOutcome {
        assert_eq!(b.len(), self.rows);
        let mut aug = CycMatrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = b[i].clone();
        }
        let (_, pivots, row_origin) = aug.bareiss(Some(self.cols));
        // Inconsistency: eliminated row that is zero on coefficients but not
        // on the augmented column.
        for i in 0..aug.rows {
            if (0..self.cols).all(|j| aug.at(i, j).is_zero())
                && !aug.at(i, self.cols).is_zero()
            {
                return SolveOutcome::Inconsistent {
                    rank: pivots.len(),
                    witness_row: row_origin[i],
                };
            }
        }
        // Back substitution over the echelon form; free variables are zero.
        let mut x = vec![CycNum::zero(); self.cols];
        for &(pr, pc) in pivots.iter().rev() {
            let mut acc = aug.at(pr, self.cols).clone();
            for j in pc + 1..self.cols {
                if !x[j].is_zero() {
                    acc -= &(aug.at(pr, j) * &x[j]);
                }
            }
            x[pc] = acc
                .checked_div(aug.at(pr, pc))
                .expect("pivot entries are nonzero");
        }
        SolveOutcome::Solution {
            x,
            rank: pivots.len(),
        }
    }

    /// Shared Bareiss driver. `coeff_cols` limits pivot search, so an
    /// augmented column never becomes a pivot. Returns the rank, the pivot
    /// (row, col) positions in the transformed matrix, and for each final row
    /// the index of the input row it originated from.
    fn bareiss(&mut self, coeff_cols: Option<usize>) -> (usize, Vec<(usize, usize)>, Vec<usize>) {
        let piv_cols = coeff_cols.unwrap_or(self.cols);
        let mut origin: Vec<usize> = (0..self.rows).collect();
        let mut prev = CycNum::one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..piv_cols {
            let Some(p) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    let idx_a = r * self.cols + j;
                    let idx_b = p * self.cols + j;
                    self.data.swap(idx_a, idx_b);
                }
                origin.swap(r, p);
            }
            let pivot = self.at(r, c).clone();
            // Every row below the pivot is rescaled, zero factor or not;
            // Sylvester's identity makes each division exact.
            for i in r + 1..self.rows {
                let factor = self.at(i, c).clone();
                for j in 0..self.cols {
                    let num = &(&pivot * self.at(i, j)) - &(&factor * self.at(r, j));
                    *self.at_mut(i, j) = num
                        .checked_div(&prev)
                        .expect("Bareiss division is exact");
                }
            }
            prev = pivot;
            pivots.push((r, c));
            r += 1;
        }
        (r, pivots, origin)
    }

    /// Basis of `{x : self * x = 0}` via reduced row echelon form.
    pub fn right_kernel(&self) -> Vec<Vec<CycNum>> {
        let (rref, pivots) = self.rref();
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![CycNum::zero(); self.cols];
            v[free] = CycNum::one();
            for &(pr, pc) in &pivots {
                v[pc] = -rref.at(pr, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Reduced row echelon form with unit pivots; returns pivot positions.
    pub fn rref(&self) -> (CycMatrix, Vec<(usize, usize)>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            let Some(p) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let (ia, ib) = (r * m.cols + j, p * m.cols + j);
                    m.data.swap(ia, ib);
                }
            }
            let inv = m.at(r, c).inv().expect("nonzero pivot");
            for j in 0..m.cols {
                let v = m.at(r, j) * &inv;
                *m.at_mut(r, j) = v;
            }
            for i in 0..m.rows {
                if i == r || m.at(i, c).is_zero() {
                    continue;
                }
                let f = m.at(i, c).clone();
                for j in 0..m.cols {
                    let v = &(m.at(i, j).clone()) - &(&f * m.at(r, j));
                    *m.at_mut(i, j) = v;
                }
            }
            pivots.push((r, c));
            r += 1;
            if r == m.rows {
                break;
            }
        }
        (m, pivots)
    }
}
