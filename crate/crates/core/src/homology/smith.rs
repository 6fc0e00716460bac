//! Smith normal form over the integers.
//!
//! Pivots are chosen as the nonzero entry of least absolute value in the
//! remaining block, ties broken by lowest (row, col), so the transforms are
//! reproducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `left * A * right == diag(diagonal)` with `left`, `right` unimodular and
/// each diagonal entry dividing the next. Zero entries come last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }

    /// The nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_zero()).cloned().collect()
    }

    /// The `rows x cols` diagonal matrix this form describes.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.rows(), self.right.cols());
        for (i, x) in self.diagonal.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }
}

struct Work {
    a: IntMatrix,
    left: IntMatrix,
    right: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.left.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.right.swap_cols(i, j);
    }

    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(dst, src, k);
        self.left.add_row_multiple(dst, src, k);
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col_multiple(dst, src, k);
        self.right.add_col_multiple(dst, src, k);
    }

    /// Smallest nonzero |entry| in the block starting at (t, t).
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for r in t..self.a.rows() {
            for c in t..self.a.cols() {
                let x = &self.a[(r, c)];
                if x.is_zero() {
                    continue;
                }
                let v = x.abs();
                if best.as_ref().map_or(true, |(b, _, _)| v < *b) {
                    best = Some((v, r, c));
                }
            }
        }
        best.map(|(_, r, c)| (r, c))
    }

    /// Clears row t and column t outside the pivot. Returns false if a
    /// remainder appeared and the pivot has to be re-chosen.
    fn clear_cross(&mut self, t: usize) -> bool {
        let p = self.a[(t, t)].clone();
        let mut clean = true;
        for r in t + 1..self.a.rows() {
            if self.a[(r, t)].is_zero() {
                continue;
            }
            let q = self.a[(r, t)].div_floor(&p);
            self.add_row(r, t, &-q);
            if !self.a[(r, t)].is_zero() {
                clean = false;
            }
        }
        for c in t + 1..self.a.cols() {
            if self.a[(t, c)].is_zero() {
                continue;
            }
            let q = self.a[(t, c)].div_floor(&p);
            self.add_col(c, t, &-q);
            if !self.a[(t, c)].is_zero() {
                clean = false;
            }
        }
        clean
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work { a: a.clone(), left: IntMatrix::identity(m), right: IntMatrix::identity(n) };
    for t in 0..m.min(n) {
        loop {
            let Some((r, c)) = w.min_pivot(t) else {
                break;
            };
            w.swap_rows(t, r);
            w.swap_cols(t, c);
            if !w.clear_cross(t) {
                continue;
            }
            // Divisibility: fold any row with an entry the pivot does not
            // divide into row t and go around again.
            let p = w.a[(t, t)].clone();
            let bad = (t + 1..m).find(|&r| (t + 1..n).any(|c| !w.a[(r, c)].is_multiple_of(&p)));
            match bad {
                Some(r) => w.add_row(t, r, &BigInt::from(1)),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.a.negate_row(t);
            w.left.negate_row(t);
        }
    }
    let diagonal = (0..m.min(n)).map(|i| w.a[(i, i)].clone()).collect();
    SmithForm { diagonal, left: w.left, right: w.right }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn check(a: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(a);
        let d = &(&s.left * a) * &s.right;
        assert!(d.is_diagonal(), "not diagonal: {d:?}");
        assert_eq!(d, s.diagonal_matrix());
        for pair in s.diagonal.windows(2) {
            if !pair[1].is_zero() || !pair[0].is_zero() {
                assert!(pair[1].is_multiple_of(&pair[0]) || pair[0].is_zero() && pair[1].is_zero());
            }
        }
        assert!(s.diagonal.iter().all(|x| !x.is_negative()));
        assert_eq!(s.left.determinant().abs(), BigInt::one());
        assert_eq!(s.right.determinant().abs(), BigInt::one());
        s
    }

    #[test]
    fn small_cases() {
        assert_eq!(check(&IntMatrix::from_rows(1, &[vec![0]])).diagonal, vec![BigInt::from(0)]);
        assert_eq!(check(&IntMatrix::from_rows(1, &[vec![1]])).diagonal, vec![BigInt::from(1)]);
        assert_eq!(
            check(&IntMatrix::from_rows(2, &[vec![2, 0], vec![0, 3]])).diagonal,
            vec![BigInt::from(1), BigInt::from(6)]
        );
        assert_eq!(
            check(&IntMatrix::from_rows(2, &[vec![-4, 6]])).diagonal,
            vec![BigInt::from(2)]
        );
    }

    #[test]
    fn empty_matrices() {
        let s = check(&IntMatrix::zeros(0, 3));
        assert!(s.diagonal.is_empty());
        assert_eq!(s.right, IntMatrix::identity(3));
    }

    #[test]
    fn large_entries_do_not_overflow() {
        let big = BigInt::from(i64::MAX) * BigInt::from(i64::MAX);
        let a = IntMatrix::from_rows(2, &[vec![big.clone(), BigInt::from(3)], vec![BigInt::from(5), big]]);
        check(&a);
    }

    proptest! {
        #[test]
        fn random_matrices(rows in 0usize..5, cols in 0usize..5, seed in proptest::collection::vec(-9i64..10, 25)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|r| (0..cols).map(|c| seed[r * 5 + c]).collect()).collect();
            check(&IntMatrix::from_rows(cols, &data));
        }
    }
}
