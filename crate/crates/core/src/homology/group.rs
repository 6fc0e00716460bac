//! Finitely generated abelian groups given by generators and relations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{smith_normal_form, IntMatrix};

/// `Z^n / rowspan(R)` in invariant-factor form `Z/d1 + ... + Z/dk + Z^f`,
/// with the map sending coefficient vectors to normal-form elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    generators: usize,
    torsion: Vec<BigInt>,
    free_rank: usize,
    // n x (k + f): column j gives the j-th normal-form coordinate.
    projection: IntMatrix,
}

/// An element in normal form: torsion coordinates reduced into `[0, d)`,
/// followed by free coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub torsion: Vec<BigInt>,
    pub free: Vec<BigInt>,
}

impl GroupElement {
    pub fn is_zero(&self) -> bool {
        self.torsion.iter().chain(&self.free).all(Zero::is_zero)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.torsion.iter().chain(&self.free).map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Presents `Z^generator_count` modulo the integer row span of `relations`.
///
/// Panics if `relations` does not have `generator_count` columns.
pub fn quotient_group(generator_count: usize, relations: &IntMatrix) -> AbelianGroup {
    assert_eq!(
        relations.cols(),
        generator_count,
        "relation matrix has {} columns for {generator_count} generators",
        relations.cols()
    );
    let snf = smith_normal_form(relations);
    let rank = snf.rank();
    let mut keep: Vec<usize> = Vec::new();
    let mut torsion = Vec::new();
    for (i, d) in snf.diagonal.iter().enumerate().take(rank) {
        if !d.is_one() {
            keep.push(i);
            torsion.push(d.clone());
        }
    }
    keep.extend(rank..generator_count);
    let mut projection = IntMatrix::zeros(generator_count, keep.len());
    for (j, &col) in keep.iter().enumerate() {
        for r in 0..generator_count {
            projection[(r, j)] = snf.right[(r, col)].clone();
        }
    }
    AbelianGroup { generators: generator_count, torsion, free_rank: generator_count - rank, projection }
}

impl AbelianGroup {
    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Invariant factors greater than one, each dividing the next.
    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { torsion: vec![BigInt::zero(); self.torsion.len()], free: vec![BigInt::zero(); self.free_rank] }
    }

    /// The class of a coefficient vector over the original generators.
    pub fn project(&self, v: &[BigInt]) -> GroupElement {
        assert_eq!(v.len(), self.generators, "vector has {} entries for {} generators", v.len(), self.generators);
        let w = self.projection.left_mul_vec(v);
        let k = self.torsion.len();
        let torsion = w[..k].iter().zip(&self.torsion).map(|(x, d)| x.mod_floor(d)).collect();
        GroupElement { torsion, free: w[k..].to_vec() }
    }

    pub fn project_i64(&self, v: &[i64]) -> GroupElement {
        let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.project(&big)
    }

    /// The class of the `i`-th generator.
    pub fn generator_class(&self, i: usize) -> GroupElement {
        let mut v = vec![BigInt::zero(); self.generators];
        v[i] = BigInt::one();
        self.project(&v)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let torsion = a
            .torsion
            .iter()
            .zip(&b.torsion)
            .zip(&self.torsion)
            .map(|((x, y), d)| (x + y).mod_floor(d))
            .collect();
        let free = a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect();
        GroupElement { torsion, free }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn group(n: usize, rows: &[Vec<i64>]) -> AbelianGroup {
        quotient_group(n, &IntMatrix::from_rows(n, rows))
    }

    #[test]
    fn cyclic_cases() {
        let z = group(1, &[vec![0]]);
        assert_eq!((z.free_rank(), z.torsion().len()), (1, 0));
        assert!(!z.generator_class(0).is_zero());

        let trivial = group(1, &[vec![1]]);
        assert!(trivial.is_trivial());
        assert!(trivial.generator_class(0).is_zero());

        let z2 = group(1, &[vec![2]]);
        assert_eq!(z2.torsion(), &[BigInt::from(2)]);
        assert!(!z2.generator_class(0).is_zero());
        assert!(z2.project_i64(&[2]).is_zero());
        assert_eq!(z2.to_string(), "Z/2");
    }

    #[test]
    fn no_relations_is_free() {
        let g = quotient_group(3, &IntMatrix::zeros(0, 3));
        assert_eq!(g.free_rank(), 3);
        assert_eq!(g.to_string(), "Z^3");
        assert_eq!(g.project_i64(&[1, -2, 5]).free.len(), 3);
    }

    #[test]
    fn mixed_presentation() {
        // <a, b | 2a + 4b, 6b> = Z/2 + Z/6
        let g = group(2, &[vec![2, 4], vec![0, 6]]);
        assert_eq!(g.torsion(), &[BigInt::from(2), BigInt::from(6)]);
        assert_eq!(g.free_rank(), 0);
    }

    /// Is `v` an integer combination of `rows` with coefficients in [-20, 20]?
    fn in_lattice(rows: &[Vec<i64>], v: &[i64]) -> bool {
        fn go(rows: &[Vec<i64>], acc: &mut Vec<i64>, v: &[i64]) -> bool {
            let Some((first, rest)) = rows.split_first() else {
                return acc.as_slice() == v;
            };
            for k in -20..=20 {
                for (a, x) in acc.iter_mut().zip(first) {
                    *a += k * x;
                }
                let hit = go(rest, acc, v);
                for (a, x) in acc.iter_mut().zip(first) {
                    *a -= k * x;
                }
                if hit {
                    return true;
                }
            }
            false
        }
        go(rows, &mut vec![0; v.len()], v)
    }

    proptest! {
        #[test]
        fn projection_is_additive(
            entries in proptest::collection::vec(-4i64..5, 12),
            u in proptest::collection::vec(-30i64..30, 4),
            v in proptest::collection::vec(-30i64..30, 4),
        ) {
            let rows: Vec<Vec<i64>> = entries.chunks(4).map(<[i64]>::to_vec).collect();
            let g = group(4, &rows);
            let sum: Vec<i64> = u.iter().zip(&v).map(|(a, b)| a + b).collect();
            prop_assert_eq!(g.project_i64(&sum), g.add(&g.project_i64(&u), &g.project_i64(&v)));
        }

        // v is built as an integer combination of the rows, optionally plus a
        // unit vector, so any witness it has stays inside the enumeration box.
        #[test]
        fn zero_class_matches_lattice_membership(
            n in 1usize..4,
            m in 0usize..4,
            entries in proptest::collection::vec(-3i64..4, 9),
            coeffs in proptest::collection::vec(-2i64..3, 3),
            unit in proptest::option::of(0usize..3),
        ) {
            let rows: Vec<Vec<i64>> = (0..m).map(|r| entries[r * 3..r * 3 + n].to_vec()).collect();
            let mut v = vec![0i64; n];
            for (row, k) in rows.iter().zip(&coeffs) {
                for (a, x) in v.iter_mut().zip(row) {
                    *a += k * x;
                }
            }
            if let Some(j) = unit {
                v[j % n] += 1;
            }
            let g = group(n, &rows);
            prop_assert_eq!(g.project_i64(&v).is_zero(), in_lattice(&rows, &v));
        }
    }
}
