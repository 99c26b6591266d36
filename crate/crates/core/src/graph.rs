//! Simple undirected labeled graphs stored as per-vertex adjacency bit masks.
//!
//! Vertex subsets and adjacency rows are single machine words, so a graph has
//! at most [`MAX_VERTICES`] vertices. Every operation that enumerates subsets
//! is exponential in the vertex count and stops being feasible long before
//! that cap.

use std::fmt;

use thiserror::Error;

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {0} vertices, at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("subset mask {mask:#x} has bits outside a ground set of size {width}")]
    MaskOutOfRange { mask: u64, width: usize },
    #[error("adjacency is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("graph has {0} edges, edge subsets support at most 64")]
    TooManyEdges(usize),
}

#[inline]
pub(crate) fn low_mask(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// Iterates over the indices of the set bits of `mask`, lowest first.
#[inline]
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// A subset `U` of the vertex set, bit `i` set iff vertex `i` is in `U`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSubset(u64);

impl VertexSubset {
    pub const EMPTY: VertexSubset = VertexSubset(0);

    /// Wraps a raw mask. Use [`Graph::vertex_subset`] to validate it against a graph.
    pub const fn from_mask(mask: u64) -> Self {
        VertexSubset(mask)
    }

    pub fn full(n: usize) -> Self {
        VertexSubset(low_mask(n))
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        VertexSubset(vertices.into_iter().fold(0, |m, v| m | (1u64 << v)))
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub const fn is_subset_of(self, other: VertexSubset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Complement within a ground set of `n` vertices.
    pub fn complement(self, n: usize) -> Self {
        VertexSubset(!self.0 & low_mask(n))
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        bits(self.0)
    }
}

impl fmt::Display for VertexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// A subset `E'` of the edge set, bit `k` selects the `k`-th edge of [`Graph::edges`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct EdgeSubset(u64);

impl EdgeSubset {
    pub const EMPTY: EdgeSubset = EdgeSubset(0);

    pub const fn from_mask(mask: u64) -> Self {
        EdgeSubset(mask)
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }
}

/// A simple undirected graph on vertices `0..n`.
///
/// `adj[i]` has bit `j` set iff `{i, j}` is an edge. Edges are also kept as a
/// lexicographically sorted list of `(i, j)` pairs with `i < j`; the position
/// in that list is the edge's index for [`EdgeSubset`] masks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph {
            adj: vec![0; n],
            edges: Vec::new(),
        })
    }

    /// Builds a graph from an edge iterator. Duplicate edges, in either
    /// orientation, collapse to one; loops are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = vec![0u64; n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Self::from_adjacency_unchecked(adj))
    }

    /// Builds a graph from adjacency rows, checking symmetry and the diagonal.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self, GraphError> {
        let n = adj.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        for (i, &row) in adj.iter().enumerate() {
            if row >> i & 1 == 1 {
                return Err(GraphError::Loop(i));
            }
            if row & !low_mask(n) != 0 {
                return Err(GraphError::MaskOutOfRange {
                    mask: row,
                    width: n,
                });
            }
            for j in bits(row) {
                if adj[j] >> i & 1 == 0 {
                    return Err(GraphError::Asymmetric(i, j));
                }
            }
        }
        Ok(Self::from_adjacency_unchecked(adj))
    }

    pub(crate) fn from_adjacency_unchecked(adj: Vec<u64>) -> Self {
        let edges = adj
            .iter()
            .enumerate()
            .flat_map(|(i, &row)| bits(row & !low_mask(i + 1)).map(move |j| (i, j)))
            .collect();
        let g = Graph { adj, edges };
        debug_assert!(g.check_invariants());
        g
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let full = low_mask(n);
        Ok(Self::from_adjacency_unchecked(
            (0..n).map(|i| full & !(1 << i)).collect(),
        ))
    }

    /// The cycle `0-1-...-(n-1)-0`. For `n < 3` this degenerates to a path.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        let closing = (n >= 3).then(|| (n - 1, 0));
        Self::from_edges(n, (1..n).map(|i| (i - 1, i)).chain(closing))
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    /// Neighbourhood of `v` as a mask.
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < 64 && self.adj[u] >> v & 1 == 1
    }

    pub fn full_set(&self) -> VertexSubset {
        VertexSubset::full(self.n())
    }

    pub fn vertex_subset(&self, mask: u64) -> Result<VertexSubset, GraphError> {
        if mask & !low_mask(self.n()) != 0 {
            return Err(GraphError::MaskOutOfRange {
                mask,
                width: self.n(),
            });
        }
        Ok(VertexSubset(mask))
    }

    pub fn edge_subset(&self, mask: u64) -> Result<EdgeSubset, GraphError> {
        if self.m() > 64 {
            return Err(GraphError::TooManyEdges(self.m()));
        }
        if mask & !low_mask(self.m()) != 0 {
            return Err(GraphError::MaskOutOfRange {
                mask,
                width: self.m(),
            });
        }
        Ok(EdgeSubset(mask))
    }

    /// `G|_U`: vertices of `U` relabelled `0..|U|` in increasing original order.
    pub fn induced_subgraph(&self, u: VertexSubset) -> Graph {
        debug_assert!(u.mask() & !low_mask(self.n()) == 0);
        let members: Vec<usize> = u.iter().collect();
        let adj = members
            .iter()
            .map(|&v| compress(self.adj[v] & u.mask(), u.mask()))
            .collect();
        Self::from_adjacency_unchecked(adj)
    }

    /// `G|_{E'}`: same vertex set, only the selected edges.
    pub fn spanning_subgraph(&self, selected: EdgeSubset) -> Graph {
        let mut adj = vec![0u64; self.n()];
        for k in bits(selected.mask()) {
            let (i, j) = self.edges[k];
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        Self::from_adjacency_unchecked(adj)
    }

    /// `|N(v) ∩ U|`.
    pub fn degree_in(&self, v: usize, u: VertexSubset) -> usize {
        (self.adj[v] & u.mask()).count_ones() as usize
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Number of edges with exactly one endpoint in `U`.
    pub fn cut_size(&self, u: VertexSubset) -> usize {
        let outside = !u.mask();
        u.iter()
            .map(|v| (self.adj[v] & outside).count_ones() as usize)
            .sum()
    }

    /// True iff every vertex of `G|_U` has even degree. Connectivity is not
    /// required and the empty set qualifies.
    pub fn is_eulerian_induced(&self, u: VertexSubset) -> bool {
        u.iter().all(|v| self.degree_in(v, u).is_multiple_of(2))
    }

    /// `G ⊔ H` with the vertices of `other` shifted past those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n() + other.n();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let shift = self.n();
        let adj = self
            .adj
            .iter()
            .copied()
            .chain(other.adj.iter().map(|&row| row << shift))
            .collect();
        Ok(Self::from_adjacency_unchecked(adj))
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n(), "permutation length mismatch");
        let mut adj = vec![0u64; self.n()];
        for &(i, j) in &self.edges {
            let (a, b) = (perm[i], perm[j]);
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Self::from_adjacency_unchecked(adj)
    }

    /// Checks the representation invariants; used by tests and debug builds.
    pub fn check_invariants(&self) -> bool {
        let n = self.n();
        let symmetric = self.adj.iter().enumerate().all(|(i, &row)| {
            row >> i & 1 == 0
                && row & !low_mask(n) == 0
                && bits(row).all(|j| self.adj[j] >> i & 1 == 1)
        });
        let total: u32 = self.adj.iter().map(|r| r.count_ones()).sum();
        let sorted = self.edges.windows(2).all(|w| w[0] < w[1]);
        let consistent = self
            .edges
            .iter()
            .all(|&(i, j)| i < j && self.adj[i] >> j & 1 == 1);
        symmetric && sorted && consistent && total as usize == 2 * self.edges.len()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges)
            .finish()
    }
}

/// Packs the bits of `value` selected by `select` into the low bits, keeping order.
#[inline]
pub(crate) fn compress(value: u64, select: u64) -> u64 {
    let mut out = 0u64;
    for (k, i) in bits(select).enumerate() {
        out |= (value >> i & 1) << k;
    }
    out
}
