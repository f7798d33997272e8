//! Integer-lattice operations: row-style Hermite normal form with a
//! unimodular transform, lattice membership by back-substitution, and
//! determinants via Bareiss elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols);
        IntMatrix { rows, cols, data }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        IntMatrix::new(
            r,
            c,
            rows.iter()
                .flat_map(|row| row.iter().map(|&x| BigInt::from(x)))
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::new(n, n, vec![BigInt::zero(); n * n]);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.at(r, c).clone();
            *self.at_mut(r, c) = v;
        }
    }

    // row[a] -= q * row[b]
    fn submul_row(&mut self, a: usize, b: usize, q: &BigInt) {
        for c in 0..self.cols {
            let v = self.at(a, c) - q * self.at(b, c);
            *self.at_mut(a, c) = v;
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::new(
            self.rows,
            other.cols,
            vec![BigInt::zero(); self.rows * other.cols],
        );
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.at(r, k) * other.at(k, c);
                }
                *out.at_mut(r, c) = acc;
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct HnfResult {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Pivot columns of the nonzero rows of H, in row order.
    pub pivots: Vec<usize>,
}

/// Row-style Hermite normal form: H = U * M with U unimodular, H in row
/// echelon form with positive pivots and entries above each pivot reduced
/// into [0, pivot).
pub fn hnf(m: &IntMatrix) -> HnfResult {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..h.cols {
        if row >= h.rows {
            break;
        }
        // Euclidean reduction within the column below `row`.
        loop {
            let mut best: Option<usize> = None;
            for r in row..h.rows {
                if !h.at(r, col).is_zero() {
                    best = match best {
                        None => Some(r),
                        Some(b) => {
                            if h.at(r, col).abs() < h.at(b, col).abs() {
                                Some(r)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(row, b);
            u.swap_rows(row, b);
            if h.at(row, col).is_negative() {
                h.negate_row(row);
                u.negate_row(row);
            }
            let mut done = true;
            let p = h.at(row, col).clone();
            for r in row + 1..h.rows {
                if !h.at(r, col).is_zero() {
                    let q = h.at(r, col).div_floor(&p);
                    h.submul_row(r, row, &q);
                    u.submul_row(r, row, &q);
                    if !h.at(r, col).is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h.at(row, col).is_zero() {
            continue;
        }
        // Reduce the entries above the pivot into [0, pivot).
        let p = h.at(row, col).clone();
        for r in 0..row {
            let q = h.at(r, col).div_floor(&p);
            if !q.is_zero() {
                h.submul_row(r, row, &q);
                u.submul_row(r, row, &q);
            }
        }
        pivots.push(col);
        row += 1;
    }
    HnfResult { h, u, pivots }
}

/// Integer coordinates of v in the lattice spanned by the rows of a
/// matrix already in HNF, or None when v is outside the lattice.
pub fn lattice_coords(hnf: &HnfResult, v: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(v.len(), hnf.h.cols);
    let mut rem: Vec<BigInt> = v.to_vec();
    let mut coords = vec![BigInt::zero(); hnf.pivots.len()];
    for (row, &pc) in hnf.pivots.iter().enumerate() {
        // Entries before the pivot column must already be cleared.
        let p = hnf.h.at(row, pc);
        let (q, r) = rem[pc].div_rem(p);
        if !r.is_zero() {
            return None;
        }
        for c in 0..hnf.h.cols {
            let t = &rem[c] - &q * hnf.h.at(row, c);
            rem[c] = t;
        }
        coords[row] = q;
    }
    if rem.iter().all(|x| x.is_zero()) {
        Some(coords)
    } else {
        None
    }
}

/// Exact determinant of a square integer matrix (Bareiss).
pub fn det(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.at(k, k).is_zero() {
            let swap = (k + 1..n).find(|&r| !a.at(r, k).is_zero());
            match swap {
                Some(r) => {
                    a.swap_rows(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / &prev;
                *a.at_mut(i, j) = v;
            }
            *a.at_mut(i, k) = BigInt::zero();
        }
        prev = a.at(k, k).clone();
    }
    sign * a.at(n - 1, n - 1).clone()
}

/// Z-module equality of the row spans of two integer matrices.
pub fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    if a.cols != b.cols {
        return false;
    }
    let ha = hnf(a);
    let hb = hnf(b);
    if ha.pivots.len() != hb.pivots.len() {
        return false;
    }
    (0..hb.pivots.len()).all(|r| lattice_coords(&ha, hb.h.row(r)).is_some())
        && (0..ha.pivots.len()).all(|r| lattice_coords(&hb, ha.h.row(r)).is_some())
}
