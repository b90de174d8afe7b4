//! Integer matrices with exact Smith normal form, kernels and cokernels.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A dense matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

/// Result of a Smith normal form computation: `u * a * v = d` with `u`, `v`
/// unimodular and `d` diagonal with `d[i] | d[i+1]`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionError {
    pub invariant_factor: BigInt,
}

impl fmt::Display for TorsionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cokernel has torsion (factor {})", self.invariant_factor)
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                *m.at_mut(i, j) = BigInt::from(x);
            }
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn row_i64(&self, i: usize) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        (0..self.cols).map(|j| self.at(i, j).to_i64()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.at(i, k).is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = self.at(i, k) * rhs.at(k, j);
                    *out.at_mut(i, j) += prod;
                }
            }
        }
        out
    }

    /// Fraction-free determinant (Bareiss).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.data.clone();
        let at = |m: &Vec<BigInt>, i: usize, j: usize| m[i * n + j].clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if at(&m, k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !at(&m, r, k).is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    m.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = at(&m, k, k) * at(&m, i, j) - at(&m, i, k) * at(&m, k, j);
                    m[i * n + j] = num / &prev;
                }
            }
            prev = at(&m, k, k);
        }
        sign * at(&m, n - 1, n - 1)
    }

    /// Smith normal form with transformation matrices.
    pub fn snf(&self) -> Snf {
        let mut d = self.clone();
        let mut u = Self::identity(self.rows);
        let mut v = Self::identity(self.cols);
        let n = core::cmp::min(self.rows, self.cols);

        for t in 0..n {
            loop {
                // Locate a pivot of minimal absolute value in the remaining block.
                let mut pivot: Option<(usize, usize)> = None;
                for i in t..d.rows {
                    for j in t..d.cols {
                        if d.at(i, j).is_zero() {
                            continue;
                        }
                        match &pivot {
                            None => pivot = Some((i, j)),
                            Some((pi, pj)) => {
                                if d.at(i, j).abs() < d.at(*pi, *pj).abs() {
                                    pivot = Some((i, j));
                                }
                            }
                        }
                    }
                }
                let Some((pi, pj)) = pivot else {
                    // Remaining block is zero; done with this and later indices.
                    return finish(d, u, v, t);
                };
                d.swap_rows(t, pi, &mut u);
                d.swap_cols(t, pj, &mut v);

                let mut clean = true;
                for i in t + 1..d.rows {
                    if !d.at(i, t).is_zero() {
                        let q = div_nearest(d.at(i, t), d.at(t, t));
                        d.row_axpy(i, t, &-q, &mut u);
                        if !d.at(i, t).is_zero() {
                            clean = false;
                        }
                    }
                }
                for j in t + 1..d.cols {
                    if !d.at(t, j).is_zero() {
                        let q = div_nearest(d.at(t, j), d.at(t, t));
                        d.col_axpy(j, t, &-q, &mut v);
                        if !d.at(t, j).is_zero() {
                            clean = false;
                        }
                    }
                }
                if !clean {
                    continue;
                }
                // Pivot must divide every later entry; if not, fold the
                // offending row in and restart the reduction.
                let mut offender = None;
                'scan: for i in t + 1..d.rows {
                    for j in t + 1..d.cols {
                        if !(d.at(i, j) % d.at(t, t)).is_zero() {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(i) => d.row_axpy(t, i, &BigInt::one(), &mut u),
                    None => break,
                }
            }
        }
        finish(d, u, v, n)
    }

    fn swap_rows(&mut self, a: usize, b: usize, u: &mut IntMatrix) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let idx_a = a * self.cols + j;
            let idx_b = b * self.cols + j;
            self.data.swap(idx_a, idx_b);
        }
        for j in 0..u.cols {
            let idx_a = a * u.cols + j;
            let idx_b = b * u.cols + j;
            u.data.swap(idx_a, idx_b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize, v: &mut IntMatrix) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
        for i in 0..v.rows {
            v.data.swap(i * v.cols + a, i * v.cols + b);
        }
    }

    /// row[dst] += q * row[src], mirrored on `u`.
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt, u: &mut IntMatrix) {
        for j in 0..self.cols {
            let add = q * self.at(src, j);
            *self.at_mut(dst, j) += add;
        }
        for j in 0..u.cols {
            let add = q * u.at(src, j);
            *u.at_mut(dst, j) += add;
        }
    }

    /// col[dst] += q * col[src], mirrored on `v`.
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt, v: &mut IntMatrix) {
        for i in 0..self.rows {
            let add = q * self.at(i, src);
            *self.at_mut(i, dst) += add;
        }
        for i in 0..v.rows {
            let add = q * v.at(i, src);
            *v.at_mut(i, dst) += add;
        }
    }

    /// Basis of `{x : self * x = 0}` as matrix columns; the basis spans the
    /// full (saturated) kernel lattice because `v` is unimodular.
    pub fn right_kernel_basis(&self) -> IntMatrix {
        let snf = self.snf();
        let r = snf.rank();
        let mut out = IntMatrix::zero(self.cols, self.cols - r);
        for j in r..self.cols {
            for i in 0..self.cols {
                *out.at_mut(i, j - r) = snf.v.at(i, j).clone();
            }
        }
        out
    }

    /// Projection `Z^rows -> Z^(rows - rank)` onto the free part of the
    /// cokernel of this matrix (viewed as a map on column vectors).
    /// Errors when the cokernel has torsion.
    pub fn cokernel_free_projection(&self) -> Result<IntMatrix, TorsionError> {
        let snf = self.snf();
        let r = snf.rank();
        for i in 0..r {
            if !snf.d.at(i, i).abs().is_one() {
                return Err(TorsionError {
                    invariant_factor: snf.d.at(i, i).clone(),
                });
            }
        }
        let mut out = IntMatrix::zero(self.rows - r, self.rows);
        for i in r..self.rows {
            for j in 0..self.rows {
                *out.at_mut(i - r, j) = snf.u.at(i, j).clone();
            }
        }
        Ok(out)
    }
}

impl Snf {
    pub fn rank(&self) -> usize {
        let n = core::cmp::min(self.d.rows, self.d.cols);
        (0..n).take_while(|&i| !self.d.at(i, i).is_zero()).count()
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = core::cmp::min(self.d.rows, self.d.cols);
        (0..n).map(|i| self.d.at(i, i).clone()).collect()
    }
}

fn finish(mut d: IntMatrix, mut u: IntMatrix, v: IntMatrix, upto: usize) -> Snf {
    // Normalise diagonal signs via u.
    let n = core::cmp::min(d.rows, d.cols);
    for t in 0..core::cmp::min(upto, n) {
        if d.at(t, t).is_negative() {
            for j in 0..d.cols {
                let x = -d.at(t, j).clone();
                *d.at_mut(t, j) = x;
            }
            for j in 0..u.cols {
                let x = -u.at(t, j).clone();
                *u.at_mut(t, j) = x;
            }
        }
    }
    Snf { u, d, v }
}

/// Quotient rounded to nearest, which keeps SNF intermediate entries small.
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        if (a.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self.at(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_contract(a: &IntMatrix) {
        let snf = a.snf();
        let prod = snf.u.mul(a).mul(&snf.v);
        assert_eq!(prod, snf.d);
        assert!(snf.u.det().abs().is_one());
        assert!(snf.v.det().abs().is_one());
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            if !w[1].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "divisibility chain");
            }
        }
    }

    #[test]
    fn identity_and_diag() {
        let id = IntMatrix::identity(2);
        assert_eq!(id.snf().d, id);
        let m = IntMatrix::from_rows_i64(&[vec![2, 0], vec![0, 3]]);
        let snf = m.snf();
        assert_eq!(
            snf.diagonal(),
            vec![BigInt::from(1), BigInt::from(6)],
            "diag(2,3) has invariant factors (1,6)"
        );
        check_contract(&m);
    }

    #[test]
    fn kernel_of_picard_embedding() {
        // Null space of [[1,0,0,1],[0,1,1,1]] is spanned by the two stated
        // kernel rows up to unimodular change.
        let p = IntMatrix::from_rows_i64(&[vec![1, 0, 0, 1], vec![0, 1, 1, 1]]);
        let k = p.right_kernel_basis();
        assert_eq!(k.cols, 2);
        assert!(p
            .mul(&k)
            .data
            .iter()
            .all(Zero::is_zero));
        // Row-equivalence with [[0,-1,1,0],[-1,-1,0,1]]: the stacked matrix
        // still has rank 2 and both span saturated rank-2 lattices.
        let q = IntMatrix::from_rows_i64(&[vec![0, -1, 1, 0], vec![-1, -1, 0, 1]]);
        let kt = k.transpose();
        let mut stacked_rows = Vec::new();
        for i in 0..2 {
            stacked_rows.push(kt.row_i64(i).unwrap());
        }
        for i in 0..2 {
            stacked_rows.push(q.row_i64(i).unwrap());
        }
        let stacked = IntMatrix::from_rows_i64(&stacked_rows);
        assert_eq!(stacked.snf().rank(), 2);
    }

    #[test]
    fn cokernel_projection() {
        // Z^3 / <(1,0,0),(0,2,0)> has torsion.
        let a = IntMatrix::from_rows_i64(&[vec![1, 0], vec![0, 2], vec![0, 0]]);
        assert!(a.cokernel_free_projection().is_err());
        let b = IntMatrix::from_rows_i64(&[vec![1, 0], vec![0, 1], vec![3, 5]]);
        let proj = b.cokernel_free_projection().unwrap();
        assert_eq!(proj.rows, 1);
        assert!(proj.mul(&b).data.iter().all(Zero::is_zero));
    }
}
