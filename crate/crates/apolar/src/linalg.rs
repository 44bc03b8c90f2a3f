//! Exact dense linear algebra over the rationals.
//!
//! This module is the single source of truth for every dimension computed in
//! the crate: ranks, kernel bases and span membership are all obtained from
//! one reduced-row-echelon routine over [`Rational`] entries. Kernel bases
//! are returned in a normal form (pivot-free coordinates set to canonical
//! unit values, ordered by free column) so downstream generator extraction is
//! deterministic.

use crate::rational::Rational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("ragged rows: row {row} has length {found}, expected {expected}")]
    RaggedRows {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },
}

/// Dense row-major matrix with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != ncols {
                return Err(LinalgError::RaggedRows {
                    row: i,
                    found: r.len(),
                    expected: ncols,
                });
            }
        }
        Ok(RationalMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    /// Matrix-vector product `self · v`.
    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                context: format!(
                    "matrix has {} columns, vector has length {}",
                    self.cols,
                    v.len()
                ),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for (c, x) in v.iter().enumerate() {
                    if !self.entry(r, c).is_zero() && !x.is_zero() {
                        acc += self.entry(r, c) * x;
                    }
                }
                acc
            })
            .collect())
    }

    /// Reduced row-echelon form and the list of pivot columns.
    fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivot_cols = Vec::new();
        let mut pivot_row = 0;
        for col in 0..a.cols {
            if pivot_row >= a.rows {
                break;
            }
            let found = (pivot_row..a.rows).find(|&r| !a.entry(r, col).is_zero());
            let src = match found {
                Some(r) => r,
                None => continue,
            };
            if src != pivot_row {
                for c in 0..a.cols {
                    let tmp = a.entry(src, c).clone();
                    let other = a.entry(pivot_row, c).clone();
                    a.set(src, c, other);
                    a.set(pivot_row, c, tmp);
                }
            }
            let pivot = a.entry(pivot_row, col).clone();
            for c in col..a.cols {
                let v = a.entry(pivot_row, c) / &pivot;
                a.set(pivot_row, c, v);
            }
            for r in 0..a.rows {
                if r == pivot_row || a.entry(r, col).is_zero() {
                    continue;
                }
                let factor = a.entry(r, col).clone();
                for c in col..a.cols {
                    let v = a.entry(r, c) - &factor * a.entry(pivot_row, c);
                    a.set(r, c, v);
                }
            }
            pivot_cols.push(col);
            pivot_row += 1;
        }
        (a, pivot_cols)
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel in reduced-echelon normal form.
    ///
    /// One vector per free column, ordered by free column index; the vector
    /// for free column `f` has a `1` at position `f`, zeros at the other free
    /// positions, and the negated echelon entries at the pivot positions.
    /// Always satisfies `rank + basis.len() == cols`.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (rref, pivot_cols) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - pivot_cols.len());
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -rref.entry(row, f).clone();
            }
            basis.push(v);
        }
        basis
    }
}

/// Express `v` in the span of `basis`, if possible.
///
/// Returns the coefficient vector of one representation (free coefficients
/// set to zero when `basis` is dependent), or `None` when `v` lies outside
/// the span. All vectors must share the same length.
pub fn solve_membership(
    v: &[Rational],
    basis: &[Vec<Rational>],
) -> Result<Option<Vec<Rational>>, LinalgError> {
    for (i, b) in basis.iter().enumerate() {
        if b.len() != v.len() {
            return Err(LinalgError::DimensionMismatch {
                context: format!(
                    "basis vector {i} has length {}, target has length {}",
                    b.len(),
                    v.len()
                ),
            });
        }
    }
    let k = basis.len();
    // Augmented system [B | v] with basis vectors as columns.
    let mut aug = RationalMatrix::zero(v.len(), k + 1);
    for (j, b) in basis.iter().enumerate() {
        for (i, x) in b.iter().enumerate() {
            aug.set(i, j, x.clone());
        }
    }
    for (i, x) in v.iter().enumerate() {
        aug.set(i, k, x.clone());
    }
    let (rref, pivot_cols) = aug.rref();
    if pivot_cols.contains(&k) {
        return Ok(None); // inconsistent: v has a component outside the span
    }
    let mut coeffs = vec![Rational::zero(); k];
    for (row, &pc) in pivot_cols.iter().enumerate() {
        coeffs[pc] = rref.entry(row, k).clone();
    }
    Ok(Some(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_basic_cases() {
        assert_eq!(RationalMatrix::identity(3).rank(), 3);
        assert_eq!(RationalMatrix::zero(2, 2).rank(), 0);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(RationalMatrix::zero(0, 0).rank(), 0);
        assert_eq!(RationalMatrix::zero(0, 4).rank(), 0);
    }

    #[test]
    fn kernel_basic_cases() {
        assert!(RationalMatrix::identity(2).kernel_basis().is_empty());
        let k = m(&[&[1, -1]]).kernel_basis();
        assert_eq!(k, vec![vec![rat_int(1), rat_int(1)]]);
        let k = RationalMatrix::zero(2, 3).kernel_basis();
        assert_eq!(k.len(), 3);
        for (i, v) in k.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(*x, if i == j { rat_int(1) } else { rat_int(0) });
            }
        }
        // 0×n matrix: every column is free
        assert_eq!(RationalMatrix::zero(0, 3).kernel_basis().len(), 3);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6]]);
        for v in a.kernel_basis() {
            assert!(a.apply(&v).unwrap().iter().all(num_traits::Zero::is_zero));
        }
    }

    #[test]
    fn membership_cases() {
        let b1 = vec![rat_int(1), rat_int(0), rat_int(1)];
        let b2 = vec![rat_int(0), rat_int(1), rat_int(1)];
        let v: Vec<_> = (0..3).map(|i| &b1[i] + &b2[i] * rat_int(2)).collect();
        let c = solve_membership(&v, &[b1.clone(), b2.clone()])
            .unwrap()
            .unwrap();
        assert_eq!(c, vec![rat_int(1), rat_int(2)]);

        let zero = vec![rat_int(0); 3];
        assert_eq!(
            solve_membership(&zero, &[b1, b2]).unwrap().unwrap(),
            vec![rat_int(0); 2]
        );

        // nonzero vector against the empty basis
        let v = vec![rat_int(1)];
        assert_eq!(solve_membership(&v, &[]).unwrap(), None);
        let z = vec![rat_int(0)];
        assert_eq!(solve_membership(&z, &[]).unwrap(), Some(vec![]));

        let bad = solve_membership(&vec![rat_int(1); 2], &[vec![rat_int(1); 3]]);
        assert!(bad.is_err());
    }

    #[test]
    fn membership_outside_span() {
        let b = vec![rat(1, 2), rat_int(1), rat_int(0)];
        let v = vec![rat_int(0), rat_int(0), rat_int(1)];
        assert_eq!(solve_membership(&v, &[b]).unwrap(), None);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix() -> impl Strategy<Value = RationalMatrix> {
            (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
                proptest::collection::vec(-6i64..=6, r * c).prop_map(move |vals| {
                    let rows: Vec<Vec<Rational>> = vals
                        .chunks(c)
                        .map(|ch| ch.iter().map(|&x| rat_int(x)).collect())
                        .collect();
                    RationalMatrix::from_rows(rows).unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn rank_plus_nullity_is_cols(a in small_matrix()) {
                prop_assert_eq!(a.rank() + a.kernel_basis().len(), a.cols());
            }

            #[test]
            fn kernel_annihilates(a in small_matrix()) {
                for v in a.kernel_basis() {
                    prop_assert!(a.apply(&v).unwrap().iter().all(num_traits::Zero::is_zero));
                }
            }

            #[test]
            fn rank_invariant_under_row_scaling(a in small_matrix(), row in 0usize..4, scale in 1i64..5) {
                let row = row % a.rows();
                let mut b = a.clone();
                for c in 0..b.cols() {
                    let v = b.entry(row, c) * rat_int(scale);
                    b.set(row, c, v);
                }
                prop_assert_eq!(a.rank(), b.rank());
            }

            #[test]
            fn rank_invariant_under_row_swap(a in small_matrix(), i in 0usize..4, j in 0usize..4) {
                let (i, j) = (i % a.rows(), j % a.rows());
                let mut rows: Vec<Vec<Rational>> = (0..a.rows())
                    .map(|r| (0..a.cols()).map(|c| a.entry(r, c).clone()).collect())
                    .collect();
                rows.swap(i, j);
                let b = RationalMatrix::from_rows(rows).unwrap();
                prop_assert_eq!(a.rank(), b.rank());
            }
        }
    }
}
