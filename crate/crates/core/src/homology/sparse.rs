//! Column-sparse GF(2) matrices and the standard "lowest one" column
//! reduction. Chain complexes of surfaces have at most three nonzeros per
//! column, so with a sensible row order this stays close to linear.

/// Sorted-support columns over GF(2).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseColumns {
    rows: usize,
    columns: Vec<Vec<u32>>,
}

impl SparseColumns {
    pub fn new(rows: usize) -> Self {
        SparseColumns { rows, columns: Vec::new() }
    }

    /// Appends a column given by the row indices of its nonzero entries.
    /// Repeated indices cancel in pairs.
    pub fn push(&mut self, mut support: Vec<u32>) {
        support.sort_unstable();
        let mut out: Vec<u32> = Vec::with_capacity(support.len());
        for r in support {
            assert!((r as usize) < self.rows, "row {r} out of range {}", self.rows);
            if out.last() == Some(&r) {
                out.pop();
            } else {
                out.push(r);
            }
        }
        self.columns.push(out);
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, c: usize) -> &[u32] {
        &self.columns[c]
    }

    pub fn reduce(&self) -> Reduction {
        let mut pivot_of_row: Vec<Option<u32>> = vec![None; self.rows];
        let mut reduced: Vec<Vec<u32>> = Vec::with_capacity(self.columns.len());
        let mut rank = 0;
        for col in &self.columns {
            let mut work = col.clone();
            while let Some(&low) = work.last() {
                match pivot_of_row[low as usize] {
                    Some(p) => work = sym_diff(&work, &reduced[p as usize]),
                    None => break,
                }
            }
            if let Some(&low) = work.last() {
                pivot_of_row[low as usize] = Some(reduced.len() as u32);
                rank += 1;
            }
            reduced.push(work);
        }
        Reduction { pivot_of_row, reduced, rank }
    }
}

/// Result of a column reduction: every nonzero reduced column has a distinct
/// lowest row, so membership in the column space is decided by reducing.
#[derive(Clone, Debug)]
pub struct Reduction {
    pivot_of_row: Vec<Option<u32>>,
    reduced: Vec<Vec<u32>>,
    rank: usize,
}

impl Reduction {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Reduces `v` against the pivots; the residual is empty iff `v` lies in
    /// the column space.
    pub fn residual(&self, v: &[u32]) -> Vec<u32> {
        let mut work: Vec<u32> = v.to_vec();
        work.sort_unstable();
        work.dedup();
        while let Some(&low) = work.last() {
            match self.pivot_of_row[low as usize] {
                Some(p) => work = sym_diff(&work, &self.reduced[p as usize]),
                None => break,
            }
        }
        work
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.residual(v).is_empty()
    }
}

fn sym_diff(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
