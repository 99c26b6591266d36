//! The invariants φ and ψ, each evaluated exactly, plus the per-subset
//! quantities that connect them.
//!
//! All three sums are accumulated as integers at the common scale `2^(3n)`:
//!
//! * φ by spanning subgraphs: `Σ_{E'} (-2)^{|E'|} χ₃(G|_{E'})`
//! * φ by Eulerian induced subgraphs: `Σ_{U Eulerian} (-1)^{cut(U)} 2^{|U|}`
//! * ψ by coranks: `Σ_U (-1)^{n-|U|} 2^{|U| + corank A(G|_U)}`
//!
//! and the numerator is reduced once at the end.

use std::fmt;
use std::ops::Range;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::chi3_masked;
use crate::dyadic::DyadicRational;
use crate::exec::{sum_over, ExactSum, Execution};
use crate::gf2::principal_corank;
use crate::graph::{bits, Graph, VertexSubset};

/// Hard ceiling for the vertex-subset sweeps: terms must fit an `i128`.
pub const MAX_SWEEP_VERTICES: usize = 62;
/// Hard ceiling for the edge-subset sweep.
pub const MAX_SWEEP_EDGES: usize = 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formula {
    /// φ summed over spanning subgraphs.
    Definition,
    /// φ summed over Eulerian induced subgraphs.
    Eulerian,
    /// ψ summed over induced-subgraph coranks.
    Corank,
}

impl Formula {
    pub const ALL: [Formula; 3] = [Formula::Definition, Formula::Eulerian, Formula::Corank];

    pub fn name(self) -> &'static str {
        match self {
            Formula::Definition => "definition",
            Formula::Eulerian => "eulerian",
            Formula::Corank => "corank",
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Size limits beyond which a formula refuses to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    /// Largest `|E|` for the spanning-subgraph sum.
    pub edges: usize,
    /// Largest `n` for the two vertex-subset sums.
    pub vertices: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            edges: 24,
            vertices: 30,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("{formula} formula: budget exceeded ({what} = {actual}, limit {limit})")]
    BudgetExceeded {
        formula: Formula,
        what: &'static str,
        limit: usize,
        actual: usize,
    },
}

/// An exact invariant value together with how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantValue {
    pub value: DyadicRational,
    pub formula: Formula,
    /// Number of subsets scanned: `2^|E|` or `2^n`.
    pub terms_evaluated: u64,
    /// Number of subsets whose term is nonzero (for the Eulerian sum, the
    /// Eulerian subsets).
    pub terms_contributing: u64,
}

fn check_budget(
    formula: Formula,
    what: &'static str,
    actual: usize,
    budget: usize,
    ceiling: usize,
) -> Result<(), InvariantError> {
    let limit = budget.min(ceiling);
    if actual > limit {
        return Err(InvariantError::BudgetExceeded {
            formula,
            what,
            limit,
            actual,
        });
    }
    Ok(())
}

/// Evaluates `formula` on `g`.
pub fn evaluate(
    formula: Formula,
    g: &Graph,
    budgets: &Budgets,
    exec: Execution,
) -> Result<InvariantValue, InvariantError> {
    match formula {
        Formula::Definition => phi_definition(g, budgets, exec),
        Formula::Eulerian => phi_eulerian(g, budgets, exec),
        Formula::Corank => psi_corank(g, budgets, exec),
    }
}

#[inline]
fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// Sums a per-chunk `(ExactSum, contributing)` pair over `0..len`.
fn sweep<F>(exec: Execution, len: u64, chunk: F) -> (BigInt, u64)
where
    F: Fn(Range<u64>) -> (ExactSum, u64) + Sync,
{
    // The contributing count rides along in a second accumulator.
    let counted = std::sync::atomic::AtomicU64::new(0);
    let total = sum_over(exec, len, |r| {
        let (s, c) = chunk(r);
        counted.fetch_add(c, std::sync::atomic::Ordering::Relaxed);
        s
    });
    (total, counted.into_inner())
}

/// φ(G) = 2^(-3n) Σ_{E' ⊆ E} (-2)^{|E'|} χ₃(G|_{E'}).
///
/// Edge subsets are visited in Gray-code order, so moving to the next subset
/// toggles a single edge in the working adjacency rows.
pub fn phi_definition(
    g: &Graph,
    budgets: &Budgets,
    exec: Execution,
) -> Result<InvariantValue, InvariantError> {
    check_budget(
        Formula::Definition,
        "|E|",
        g.m(),
        budgets.edges,
        MAX_SWEEP_EDGES,
    )?;
    let n = g.n();
    let edges = g.edges();
    let len = 1u64 << g.m();
    let all = crate::graph::low_mask(n);

    let (sum, contributing) = sweep(exec, len, |range| {
        let mut acc = ExactSum::default();
        let mut nonzero = 0u64;
        let mut adj = vec![0u64; n];
        let mut selected = gray(range.start);
        for k in bits(selected) {
            let (a, b) = edges[k];
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        for i in range.clone() {
            let colorings = chi3_masked(&adj, all);
            if colorings != 0 {
                nonzero += 1;
                let size = selected.count_ones();
                match (colorings as i128).checked_mul(1i128 << size) {
                    Some(t) if size < 126 => {
                        acc.add_i128(if size.is_multiple_of(2) { t } else { -t })
                    }
                    _ => {
                        let t = BigInt::from(colorings) << size;
                        acc.add_big(&if size.is_multiple_of(2) { t } else { -t });
                    }
                }
            }
            if i + 1 < range.end {
                let k = (i + 1).trailing_zeros() as usize;
                selected ^= 1 << k;
                let (a, b) = edges[k];
                adj[a] ^= 1 << b;
                adj[b] ^= 1 << a;
            }
        }
        (acc, nonzero)
    });

    Ok(InvariantValue {
        value: DyadicRational::new(sum, 3 * n as u64),
        formula: Formula::Definition,
        terms_evaluated: len,
        terms_contributing: contributing,
    })
}

/// Running state of a vertex subset under single-vertex toggles.
#[derive(Debug, Clone, Copy)]
struct SubsetState {
    members: u64,
    /// Vertices (anywhere in G) with an odd number of neighbours in `members`.
    odd: u64,
    cut: u32,
}

impl SubsetState {
    fn new(adj: &[u64], members: u64) -> Self {
        let mut state = SubsetState {
            members: 0,
            odd: 0,
            cut: 0,
        };
        for v in bits(members) {
            state.toggle(adj, v);
        }
        state
    }

    #[inline]
    fn toggle(&mut self, adj: &[u64], v: usize) {
        let row = adj[v];
        let bit = 1u64 << v;
        let inside = (row & self.members & !bit).count_ones();
        let delta = row.count_ones() as i64 - 2 * inside as i64;
        self.members ^= bit;
        self.odd ^= row;
        self.cut = if self.members & bit != 0 {
            (self.cut as i64 + delta) as u32
        } else {
            (self.cut as i64 - delta) as u32
        };
    }

    #[inline]
    fn is_eulerian(&self) -> bool {
        self.odd & self.members == 0
    }
}

/// φ(G) = 2^(-3n) Σ_{U : G|_U Eulerian} (-1)^{|E(U, V∖U)|} 2^{|U|}.
///
/// Vertex subsets are visited in Gray-code order; the degree-parity vector and
/// the cut size are updated per toggle instead of being recomputed.
pub fn phi_eulerian(
    g: &Graph,
    budgets: &Budgets,
    exec: Execution,
) -> Result<InvariantValue, InvariantError> {
    check_budget(
        Formula::Eulerian,
        "n",
        g.n(),
        budgets.vertices,
        MAX_SWEEP_VERTICES,
    )?;
    let n = g.n();
    let adj = g.adjacency();
    let len = 1u64 << n;

    let (sum, contributing) = sweep(exec, len, |range| {
        let mut acc = ExactSum::default();
        let mut eulerian = 0u64;
        let mut state = SubsetState::new(adj, gray(range.start));
        for i in range.clone() {
            if state.is_eulerian() {
                eulerian += 1;
                let t = 1i128 << state.members.count_ones();
                acc.add_i128(if state.cut.is_multiple_of(2) { t } else { -t });
            }
            if i + 1 < range.end {
                state.toggle(adj, (i + 1).trailing_zeros() as usize);
            }
        }
        (acc, eulerian)
    });

    Ok(InvariantValue {
        value: DyadicRational::new(sum, 3 * n as u64),
        formula: Formula::Eulerian,
        terms_evaluated: len,
        terms_contributing: contributing,
    })
}

/// ψ(G) = 2^(-2n) Σ_U (-1/2)^{n-|U|} 2^{corank A(G|_U)}, computed as
/// 2^(-3n) Σ_U (-1)^{n-|U|} 2^{|U| + corank}. Each corank is recomputed by
/// elimination on the masked principal submatrix.
pub fn psi_corank(
    g: &Graph,
    budgets: &Budgets,
    exec: Execution,
) -> Result<InvariantValue, InvariantError> {
    check_budget(
        Formula::Corank,
        "n",
        g.n(),
        budgets.vertices,
        MAX_SWEEP_VERTICES,
    )?;
    let n = g.n();
    let adj = g.adjacency();
    let len = 1u64 << n;

    let (sum, _) = sweep(exec, len, |range| {
        let mut acc = ExactSum::default();
        for u in range.clone() {
            let size = u.count_ones() as usize;
            let t = 1i128 << (size + principal_corank(adj, u));
            acc.add_i128(if (n - size).is_multiple_of(2) { t } else { -t });
        }
        (acc, range.end - range.start)
    });

    Ok(InvariantValue {
        value: DyadicRational::new(sum, 3 * n as u64),
        formula: Formula::Corank,
        terms_evaluated: len,
        terms_contributing: len,
    })
}

/// `|{x ∈ F₂^V : supp(x) ⊆ U ⊆ S(x)}|` by enumerating every `x` supported in `U`.
pub fn constrained_vector_count(g: &Graph, u: VertexSubset) -> BigUint {
    BigUint::from(constrained_vector_count_raw(g.adjacency(), u.mask()))
}

pub(crate) fn constrained_vector_count_raw(adj: &[u64], u: u64) -> u64 {
    let mut count = 0u64;
    let mut x = 0u64;
    loop {
        // (A x)_i for i in U must vanish
        if bits(u).all(|i| (adj[i] & x).count_ones().is_multiple_of(2)) {
            count += 1;
        }
        // next submask of u
        x = x.wrapping_sub(u) & u;
        if x == 0 {
            return count;
        }
    }
}

/// The two sides of the parity identity for a subset `U`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParityWitness {
    /// `|supp(A 𝟙_U)|`: vertices with an odd number of neighbours in `U`.
    pub odd_degree_count: usize,
    /// `|E(U, V∖U)|`.
    pub cut: usize,
}

impl ParityWitness {
    pub fn congruent(&self) -> bool {
        self.odd_degree_count % 2 == self.cut % 2
    }
}

pub fn parity_witness(g: &Graph, u: VertexSubset) -> ParityWitness {
    ParityWitness {
        odd_degree_count: (0..g.n()).filter(|&i| g.degree_in(i, u) % 2 == 1).count(),
        cut: g.cut_size(u),
    }
}

/// `S(U) = {i : deg_U(i) even}`.
pub fn even_set(g: &Graph, u: VertexSubset) -> VertexSubset {
    VertexSubset::from_vertices((0..g.n()).filter(|&i| g.degree_in(i, u).is_multiple_of(2)))
}
