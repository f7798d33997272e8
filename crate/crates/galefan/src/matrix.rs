//! Dense exact matrices over `Scalar`: rank, reduced row echelon form,
//! canonical kernel bases and linear solving. Sizes here are desk scale,
//! so plain Gauss-Jordan over the field is used throughout.

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![Scalar::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col_vec(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for c in 0..self.cols {
                    acc += self.at(r, c) * &v[c];
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Scalar::zero();
                for k in 0..self.cols {
                    acc += self.at(r, k) * other.at(k, c);
                }
                *out.at_mut(r, c) = acc;
            }
        }
        out
    }

    /// Gauss-Jordan reduction in place on a copy. Returns (rref, pivot
    /// columns). Pivot selection is the first nonzero entry scanning rows
    /// in order, so the result is deterministic.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..m.cols {
            if next_row >= m.rows {
                break;
            }
            let pivot_row = (next_row..m.rows).find(|&r| !m.at(r, col).is_zero());
            let Some(pr) = pivot_row else { continue };
            m.swap_rows(next_row, pr);
            let inv = m.at(next_row, col).inverse().expect("pivot nonzero");
            for c in col..m.cols {
                let v = m.at(next_row, c) * &inv;
                *m.at_mut(next_row, c) = v;
            }
            for r in 0..m.rows {
                if r != next_row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    for c in col..m.cols {
                        let v = m.at(r, c) - &(&factor * m.at(next_row, c));
                        *m.at_mut(r, c) = v;
                    }
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of the right kernel, one basis vector per row.
    /// Derived from the reduced echelon form: for each free column f, the
    /// vector has 1 at f and minus the pivot-row entries at pivot columns.
    pub fn kernel_basis(&self) -> Matrix {
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Scalar::zero(); self.cols];
            v[f] = Scalar::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -rref.at(prow, f).clone();
            }
            rows.push(v);
        }
        if rows.is_empty() {
            Matrix::zero(0, self.cols)
        } else {
            Matrix::from_rows(rows)
        }
    }

    /// Solve self * x = rhs. Returns None when inconsistent; for
    /// underdetermined systems the free variables are set to zero.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = Matrix::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, self.cols) = rhs[r].clone();
        }
        let (rref, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = rref.at(prow, self.cols).clone();
        }
        Some(x)
    }

    /// Does v lie in the row space of self?
    pub fn row_space_contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut rows = self.row_vecs();
        let r0 = if rows.is_empty() {
            0
        } else {
            Matrix::from_rows(rows.clone()).rank()
        };
        rows.push(v.to_vec());
        Matrix::from_rows(rows).rank() == r0
    }

    /// Row-space equality as subspaces (mutual containment via rank).
    pub fn same_row_space(&self, other: &Matrix) -> bool {
        if self.cols != other.cols {
            return false;
        }
        let ra = if self.rows == 0 { 0 } else { self.rank() };
        let rb = if other.rows == 0 { 0 } else { other.rank() };
        if ra != rb {
            return false;
        }
        let mut stacked = self.row_vecs();
        stacked.extend(other.row_vecs());
        if stacked.is_empty() {
            return true;
        }
        Matrix::from_rows(stacked).rank() == ra
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    assert_eq!(a.len(), b.len());
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_identity() {
        assert_eq!(Matrix::identity(3).rank(), 3);
    }

    #[test]
    fn rank_extended_blowup_configuration() {
        // the 2x7 matrix of the extended configuration
        let m = Matrix::from_i64_rows(&[
            vec![1, 0, -1, -1, 0, 1, 0],
            vec![0, 1, 1, 0, -1, -1, 0],
        ]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn kernel_of_opposite_pairs() {
        let m = Matrix::from_i64_rows(&[vec![1, 0, -1, 0], vec![0, 1, 0, -1]]);
        let k = m.kernel_basis();
        assert_eq!(k.rows(), 2);
        for r in 0..k.rows() {
            let prod = m.mul_vec(k.row(r));
            assert!(prod.iter().all(|x| x.is_zero()));
        }
        assert!(k.row_space_contains(&[
            Scalar::from_int(1),
            Scalar::zero(),
            Scalar::from_int(1),
            Scalar::zero()
        ]));
        assert!(k.row_space_contains(&[
            Scalar::zero(),
            Scalar::from_int(1),
            Scalar::zero(),
            Scalar::from_int(1)
        ]));
    }

    #[test]
    fn kernel_contains_all_ones_when_balanced() {
        let m = Matrix::from_i64_rows(&[
            vec![1, 0, -1, -1, 0, 1, 0],
            vec![0, 1, 1, 0, -1, -1, 0],
        ]);
        let k = m.kernel_basis();
        assert_eq!(k.rows(), 5);
        let ones = vec![Scalar::one(); 7];
        assert!(k.row_space_contains(&ones));
    }

    #[test]
    fn solve_square() {
        let m = Matrix::from_i64_rows(&[vec![2, 1], vec![1, 3]]);
        let x = m
            .solve(&[Scalar::from_int(5), Scalar::from_int(10)])
            .unwrap();
        assert_eq!(x, vec![Scalar::from_int(1), Scalar::from_int(3)]);
    }

    #[test]
    fn solve_inconsistent() {
        let m = Matrix::from_i64_rows(&[vec![1, 1], vec![2, 2]]);
        assert!(m
            .solve(&[Scalar::from_int(1), Scalar::from_int(3)])
            .is_none());
    }

    #[test]
    fn rank_plus_kernel_dim() {
        let m = Matrix::from_i64_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(m.rank() + m.kernel_basis().rows(), m.cols());
    }
}
