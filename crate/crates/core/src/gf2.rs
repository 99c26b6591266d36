//! Dense square matrices over the two-element field, one `u64` per row.

use num_bigint::BigUint;
use num_traits::One;

use crate::graph::{bits, compress, low_mask, Graph, VertexSubset};

/// A square 0/1 matrix with at most 64 rows; bit `j` of `rows[i]` is entry `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: Vec<u64>,
}

/// A vector in F₂^width packed into one word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gf2Vector {
    width: usize,
    bits: u64,
}

impl Gf2Vector {
    /// Panics if `width > 64` or `bits` has entries at or past `width`.
    pub fn new(width: usize, bits: u64) -> Self {
        assert!(width <= 64, "vector width {width} exceeds 64");
        assert_eq!(bits & !low_mask(width), 0, "bits beyond vector width");
        Gf2Vector { width, bits }
    }

    pub fn zero(width: usize) -> Self {
        Self::new(width, 0)
    }

    /// Indicator vector `𝟙_U` of a vertex subset.
    pub fn indicator(width: usize, u: VertexSubset) -> Self {
        Self::new(width, u.mask())
    }

    pub fn from_entries(entries: &[u8]) -> Self {
        let bits = entries
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &e)| acc | ((e as u64 & 1) << i));
        Self::new(entries.len(), bits)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }
}

impl Gf2Matrix {
    /// Panics if there are more than 64 rows or a row has bits past the dimension.
    pub fn from_rows(rows: Vec<u64>) -> Self {
        let dim = rows.len();
        assert!(dim <= 64, "matrix dimension {dim} exceeds 64");
        assert!(
            rows.iter().all(|r| r & !low_mask(dim) == 0),
            "row entries beyond matrix dimension"
        );
        Gf2Matrix { rows }
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_rows(vec![0; dim])
    }

    pub fn from_entries(entries: &[&[u8]]) -> Self {
        Self::from_rows(
            entries
                .iter()
                .map(|row| Gf2Vector::from_entries(row).bits())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn is_symmetric_zero_diagonal(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, &row)| row >> i & 1 == 0 && bits(row).all(|j| self.rows[j] >> i & 1 == 1))
    }

    /// Adjacency matrix of `G|_U`: rows and columns indexed by the members of
    /// `U` in increasing order.
    pub fn adjacency(g: &Graph, u: VertexSubset) -> Self {
        let rows = u
            .iter()
            .map(|v| compress(g.neighbors(v) & u.mask(), u.mask()))
            .collect();
        let m = Gf2Matrix { rows };
        debug_assert!(m.is_symmetric_zero_diagonal());
        m
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(&mut self.rows.clone())
    }

    pub fn corank(&self) -> usize {
        self.dim() - self.rank()
    }

    /// `2^corank`, the number of vectors in the right kernel.
    pub fn kernel_count(&self) -> BigUint {
        BigUint::one() << self.corank()
    }

    pub fn mat_vec(&self, x: &Gf2Vector) -> Gf2Vector {
        assert_eq!(x.width, self.dim(), "dimension mismatch");
        let bits = self.rows.iter().enumerate().fold(0u64, |acc, (i, &row)| {
            acc | (((row & x.bits).count_ones() & 1) as u64) << i
        });
        Gf2Vector::new(self.dim(), bits)
    }

    /// `S(x)`: coordinates where `M x` vanishes.
    pub fn zero_set(&self, x: &Gf2Vector) -> VertexSubset {
        support(&self.mat_vec(x)).complement(self.dim())
    }
}

/// `supp(x)` as a vertex subset.
pub fn support(x: &Gf2Vector) -> VertexSubset {
    VertexSubset::from_mask(x.bits)
}

/// Rank of the span of `rows`, destroying them.
///
/// Columns are processed left to right and the pivot is the first remaining
/// row with a set bit in the current column.
pub(crate) fn rank_of_rows(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    let mut remaining: u64 = rows.iter().fold(0, |acc, r| acc | r);
    while remaining != 0 {
        let col = remaining.trailing_zeros();
        let bit = 1u64 << col;
        remaining &= !bit;
        let Some(p) = (rank..rows.len()).find(|&i| rows[i] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for row in rows[rank + 1..].iter_mut() {
            if *row & bit != 0 {
                *row ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

/// Corank of the principal submatrix of `adj` on the rows and columns in `u`,
/// without relabelling.
#[inline]
pub(crate) fn principal_corank(adj: &[u64], u: u64) -> usize {
    let mut buf = [0u64; 64];
    let mut k = 0;
    for i in bits(u) {
        buf[k] = adj[i] & u;
        k += 1;
    }
    k - rank_of_rows(&mut buf[..k])
}
