//! Exact Gaussian elimination over the rationals.
//!
//! Pivoting is deterministic: columns are scanned left to right and the
//! first row with a nonzero entry is chosen (no magnitude heuristics are
//! needed in exact arithmetic), so reduced echelon forms are reproducible.

use num_traits::{One, Zero};

use crate::arith::Rational;

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// In-place reduced row echelon form. Returns the pivot columns in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, pr);
            let inv = {
                let p = self.get(row, col).clone();
                Rational::one() / p
            };
            for c in col..self.cols {
                let v = self.get(row, c) * &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..self.cols {
                    let v = self.get(r, c) - &factor * self.get(row, c);
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Rank via a throwaway reduction.
    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }
}

/// Solve the square system `A x = b` exactly. Returns `None` when `A` is
/// singular.
pub fn solve(a: &QMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(a.nrows(), a.ncols(), "solve expects a square matrix");
    assert_eq!(a.nrows(), b.len(), "dimension mismatch");
    let n = a.nrows();
    let mut aug = QMatrix::zeros(n, n + 1);
    for r in 0..n {
        for c in 0..n {
            aug.set(r, c, a.get(r, c).clone());
        }
        aug.set(r, n, b[r].clone());
    }
    let pivots = aug.rref();
    if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
        return None;
    }
    Some((0..n).map(|r| aug.get(r, n).clone()).collect())
}

/// A basis of the null space `{x : A x = 0}`, read off the reduced echelon
/// form (one vector per free column, in column order).
pub fn kernel_basis(a: &QMatrix) -> Vec<Vec<Rational>> {
    let mut m = a.clone();
    let pivots = m.rref();
    let n = a.ncols();
    let pivot_set: Vec<Option<usize>> = {
        let mut v = vec![None; n];
        for (row, &col) in pivots.iter().enumerate() {
            v[col] = Some(row);
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_set[free].is_some() {
            continue;
        }
        let mut x = vec![Rational::zero(); n];
        x[free] = Rational::one();
        for (col, rowopt) in pivot_set.iter().enumerate() {
            if let Some(row) = rowopt {
                x[col] = -m.get(*row, free).clone();
            }
        }
        basis.push(x);
    }
    basis
}

/// Whether two row spaces coincide, compared via their canonical reduced
/// echelon forms.
pub fn row_space_equal(a: &QMatrix, b: &QMatrix) -> bool {
    if a.ncols() != b.ncols() {
        return false;
    }
    let canon = |m: &QMatrix| {
        let mut m = m.clone();
        let pivots = m.rref();
        let kept = pivots.len();
        let mut rows = Vec::with_capacity(kept);
        for r in 0..kept {
            rows.push((0..m.ncols()).map(|c| m.get(r, c).clone()).collect::<Vec<_>>());
        }
        rows
    };
    canon(a) == canon(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn m(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rref_and_rank() {
        let mut a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let pivots = a.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(a.rank(), 2);
        // canonical leading ones
        assert_eq!(*a.get(0, 0), rat_int(1));
        assert_eq!(*a.get(1, 1), rat_int(1));
    }

    #[test]
    fn solve_exact() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = solve(&a, &[rat_int(5), rat_int(10)]).unwrap();
        assert_eq!(x, vec![rat_int(1), rat_int(3)]);
        let singular = m(&[&[1, 2], &[2, 4]]);
        assert!(solve(&singular, &[rat_int(1), rat_int(2)]).is_none());
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let basis = kernel_basis(&a);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            for r in 0..a.nrows() {
                let mut acc = rat(0, 1);
                for c in 0..a.ncols() {
                    acc += a.get(r, c) * &v[c];
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn row_space_comparison() {
        let a = m(&[&[1, 0], &[0, 1]]);
        let b = m(&[&[2, 1], &[1, 1]]);
        let c = m(&[&[1, 1]]);
        assert!(row_space_equal(&a, &b));
        assert!(!row_space_equal(&a, &c));
    }
}
