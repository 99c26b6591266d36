//! Verification campaigns: evaluate every selected formula on a corpus of
//! graphs, check that the exact values coincide, and check the per-subset
//! identities along the way.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

use crate::dyadic::DyadicRational;
use crate::exec::{map_ordered, Execution};
use crate::gf2::principal_corank;
use crate::graph::{low_mask, EdgeSubset, Graph, VertexSubset};
use crate::invariants::{
    constrained_vector_count_raw, evaluate, Budgets, Formula, InvariantError, InvariantValue,
};
use crate::io::{encode_graph6, GRAPH6_MAX_VERTICES};

/// Largest `n` for exhaustive labeled enumeration (`2^28` graphs).
pub const MAX_EXHAUSTIVE_VERTICES: usize = 8;
/// Subset identities are checked on every subset up to this many vertices,
/// and on a random sample above it.
pub const FULL_SUBSET_CHECK_VERTICES: usize = 6;
pub const SAMPLED_SUBSETS: usize = 256;
/// The kernel-count comparison enumerates `2^|U|` vectors; larger subsets are skipped.
pub const MAX_CLAIM_SUBSET: usize = 24;

const BATCH: usize = 512;
/// Streams at or above this offset feed subset sampling, below it graph generation.
const SAMPLING_STREAM: u64 = 1 << 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("exhaustive enumeration supports n <= {MAX_EXHAUSTIVE_VERTICES}, got {0}")]
    ExhaustiveTooLarge(usize),
    #[error("random graphs support n <= {GRAPH6_MAX_VERTICES}, got {0}")]
    RandomTooLarge(usize),
    #[error("random mode needs count >= 1")]
    EmptyCampaign,
    #[error("graph {index}: no formula is within budget: {errors}")]
    NothingComputable { index: usize, errors: String },
    #[error(
        "graph {index} has {n} vertices; reports need a graph6 id (n <= {GRAPH6_MAX_VERTICES})"
    )]
    Unreportable { index: usize, n: usize },
}

/// An edge probability `num/den` in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Probability {
    num: u64,
    den: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid probability `{0}`: expected `a/b` or a decimal in [0, 1]")]
pub struct ParseProbabilityError(String);

impl Probability {
    pub const ZERO: Probability = Probability { num: 0, den: 1 };
    pub const ONE: Probability = Probability { num: 1, den: 1 };

    /// `None` unless `0 <= num <= den` and `0 < den < 2^63`.
    pub fn new(num: u64, den: u64) -> Option<Self> {
        (den > 0 && den < 1 << 63 && num <= den).then_some(Probability { num, den })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// True with probability `num/den` for a uniform 64-bit `word`.
    #[inline]
    pub fn accepts(&self, word: u64) -> bool {
        (word as u128) * (self.den as u128) < (self.num as u128) << 64
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Probability {
    type Err = ParseProbabilityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseProbabilityError(s.to_string());
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let num = a.trim().parse().map_err(|_| err())?;
            let den = b.trim().parse().map_err(|_| err())?;
            return Probability::new(num, den).ok_or_else(err);
        }
        // exact decimal: "0.25" -> 25/100
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 18
            || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
            || int.len() + frac.len() == 0
        {
            return Err(err());
        }
        let den = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| err())?
        };
        let frac: u64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| err())?
        };
        let num = int
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac))
            .ok_or_else(err)?;
        Probability::new(num, den).ok_or_else(err)
    }
}

/// All `2^(n(n-1)/2)` labeled graphs on `n` vertices. Bit `k` of the counter
/// selects the `k`-th pair `(i, j)`, `i < j`, in lexicographic order, and
/// graphs are produced in increasing counter order.
pub fn enumerate_labeled_graphs(
    n: usize,
) -> Result<impl Iterator<Item = Graph> + Send, VerifyError> {
    if n > MAX_EXHAUSTIVE_VERTICES {
        return Err(VerifyError::ExhaustiveTooLarge(n));
    }
    let complete = Graph::complete(n).expect("n is small");
    let count = 1u64 << complete.m();
    Ok((0..count).map(move |mask| complete.spanning_subgraph(EdgeSubset::from_mask(mask))))
}

/// Erdős–Rényi graph `G(n, p)` from stream 0 of the ChaCha8 generator seeded
/// with `seed`.
pub fn random_graph(n: usize, p: Probability, seed: u64) -> Result<Graph, VerifyError> {
    random_graph_from_stream(n, p, seed, 0)
}

/// `G(n, p)` from a given ChaCha8 stream: pair `k` in lexicographic order is an
/// edge iff the `k`-th 64-bit output `w` satisfies `w / 2^64 < p`. The output
/// is fixed by `(seed, stream)` on every platform.
pub fn random_graph_from_stream(
    n: usize,
    p: Probability,
    seed: u64,
    stream: u64,
) -> Result<Graph, VerifyError> {
    if n > GRAPH6_MAX_VERTICES {
        return Err(VerifyError::RandomTooLarge(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|_| p.accepts(rng.next_u64()))
        .collect();
    Ok(Graph::from_edges(n, edges).expect("pairs are in range"))
}

/// How many subsets per graph are checked against the per-subset identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IdentityChecks {
    #[default]
    Off,
    /// All subsets for `n <= 6`, otherwise [`SAMPLED_SUBSETS`] random ones.
    Standard,
    /// Every subset regardless of `n`.
    All,
}

/// Where the graphs of a campaign come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSource {
    Exhaustive {
        n: usize,
    },
    Random {
        n: usize,
        p: Probability,
        count: usize,
    },
    List(Vec<Graph>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub source: GraphSource,
    pub seed: u64,
    pub budgets: Budgets,
    pub formulas: Vec<Formula>,
    pub identities: IdentityChecks,
    pub exec: Execution,
}

impl RunConfig {
    pub fn new(source: GraphSource) -> Self {
        RunConfig {
            source,
            seed: 0,
            budgets: Budgets::default(),
            formulas: Formula::ALL.to_vec(),
            identities: IdentityChecks::Off,
            exec: Execution::default(),
        }
    }
}

/// Outcome of one formula on one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaRun {
    pub result: Result<InvariantValue, InvariantError>,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub index: usize,
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    /// Indexed like [`Formula::ALL`]; `None` when the formula was not selected.
    pub runs: [Option<FormulaRun>; 3],
    /// True iff every computed value is identical.
    pub all_equal: bool,
    pub claim_checked: u64,
    pub parity_checked: u64,
    pub identity_violations: u64,
}

fn slot(f: Formula) -> usize {
    match f {
        Formula::Definition => 0,
        Formula::Eulerian => 1,
        Formula::Corank => 2,
    }
}

impl VerificationReport {
    pub fn run(&self, f: Formula) -> Option<&FormulaRun> {
        self.runs[slot(f)].as_ref()
    }

    pub fn value(&self, f: Formula) -> Option<&DyadicRational> {
        self.run(f)?.result.as_ref().ok().map(|v| &v.value)
    }

    /// Selected formulas that were not computed, with the reason.
    pub fn skipped(&self) -> impl Iterator<Item = (Formula, &InvariantError)> {
        Formula::ALL
            .into_iter()
            .filter_map(|f| Some((f, self.run(f)?.result.as_ref().err()?)))
    }

    pub fn is_mismatch(&self) -> bool {
        !self.all_equal || self.identity_violations > 0
    }
}

/// Subset identity counters for one graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct IdentityTally {
    claim: u64,
    parity: u64,
    violations: u64,
}

fn check_subset(g: &Graph, u: u64, tally: &mut IdentityTally) {
    let adj = g.adjacency();
    if (u.count_ones() as usize) <= MAX_CLAIM_SUBSET {
        tally.claim += 1;
        let kernel = 1u64 << principal_corank(adj, u);
        if constrained_vector_count_raw(adj, u) != kernel {
            tally.violations += 1;
        }
    }
    tally.parity += 1;
    let set = VertexSubset::from_mask(u);
    let odd = adj
        .iter()
        .filter(|&&row| (row & u).count_ones() % 2 == 1)
        .count();
    let cut = g.cut_size(set);
    let bridge = (u & !even_mask(adj, u) == 0) == g.is_eulerian_induced(set);
    if odd % 2 != cut % 2 || !bridge {
        tally.violations += 1;
    }
}

fn even_mask(adj: &[u64], u: u64) -> u64 {
    adj.iter()
        .enumerate()
        .filter(|(_, &row)| (row & u).count_ones().is_multiple_of(2))
        .fold(0, |m, (i, _)| m | 1 << i)
}

fn check_identities(g: &Graph, mode: IdentityChecks, seed: u64, index: usize) -> IdentityTally {
    let mut tally = IdentityTally::default();
    let n = g.n();
    let exhaustive = match mode {
        IdentityChecks::Off => return tally,
        IdentityChecks::All => true,
        IdentityChecks::Standard => n <= FULL_SUBSET_CHECK_VERTICES,
    };
    if exhaustive {
        for u in 0..1u64 << n {
            check_subset(g, u, &mut tally);
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(SAMPLING_STREAM | index as u64);
        for _ in 0..SAMPLED_SUBSETS {
            check_subset(g, rng.next_u64() & low_mask(n), &mut tally);
        }
    }
    tally
}

/// Evaluates the configured formulas on `g` and compares them. `index` is the
/// graph's position in its campaign and keys the subset sampling stream.
pub fn verify_graph(
    g: &Graph,
    cfg: &RunConfig,
    index: usize,
) -> Result<VerificationReport, VerifyError> {
    let graph6 = encode_graph6(g).map_err(|_| VerifyError::Unreportable { index, n: g.n() })?;
    let mut runs: [Option<FormulaRun>; 3] = Default::default();
    for &f in &cfg.formulas {
        let start = Instant::now();
        let result = evaluate(f, g, &cfg.budgets, cfg.exec);
        runs[slot(f)] = Some(FormulaRun {
            result,
            elapsed: start.elapsed(),
        });
    }

    let computed: Vec<&DyadicRational> = runs
        .iter()
        .flatten()
        .filter_map(|r| r.result.as_ref().ok().map(|v| &v.value))
        .collect();
    if computed.is_empty() && !cfg.formulas.is_empty() {
        let errors = runs
            .iter()
            .flatten()
            .filter_map(|r| r.result.as_ref().err().map(ToString::to_string))
            .collect::<Vec<_>>()
            .join("; ");
        return Err(VerifyError::NothingComputable { index, errors });
    }
    let all_equal = computed.windows(2).all(|w| w[0] == w[1]);
    let tally = check_identities(g, cfg.identities, cfg.seed, index);

    Ok(VerificationReport {
        index,
        graph6,
        n: g.n(),
        m: g.m(),
        runs,
        all_equal,
        claim_checked: tally.claim,
        parity_checked: tally.parity,
        identity_violations: tally.violations,
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Summary {
    pub graphs: u64,
    pub mismatches: u64,
    /// Formula evaluations skipped for budget reasons.
    pub skipped: u64,
    pub claim_checked: u64,
    pub parity_checked: u64,
    pub elapsed: Duration,
}

impl Summary {
    pub fn failed(&self) -> bool {
        self.mismatches > 0
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} graphs, {} mismatches", self.graphs, self.mismatches)
    }
}

/// Runs a campaign, handing each report to `sink` in corpus order. Graphs are
/// evaluated in batches; within a batch they may finish in any order but are
/// delivered in sequence.
pub fn run<F>(cfg: &RunConfig, mut sink: F) -> Result<Summary, VerifyError>
where
    F: FnMut(&VerificationReport),
{
    let start = Instant::now();
    let mut summary = Summary::default();
    let mut process = |batch: &[(usize, Graph)], summary: &mut Summary| {
        let reports = map_ordered(cfg.exec, batch, |(i, g)| verify_graph(g, cfg, *i));
        for report in reports {
            let report = report?;
            summary.graphs += 1;
            summary.mismatches += report.is_mismatch() as u64;
            summary.skipped += report.skipped().count() as u64;
            summary.claim_checked += report.claim_checked;
            summary.parity_checked += report.parity_checked;
            sink(&report);
        }
        Ok::<(), VerifyError>(())
    };

    let graphs: Box<dyn Iterator<Item = Result<Graph, VerifyError>>> = match &cfg.source {
        GraphSource::Exhaustive { n } => Box::new(enumerate_labeled_graphs(*n)?.map(Ok)),
        GraphSource::Random { n, p, count } => {
            if *count == 0 {
                return Err(VerifyError::EmptyCampaign);
            }
            let (n, p, seed) = (*n, *p, cfg.seed);
            Box::new((0..*count as u64).map(move |i| random_graph_from_stream(n, p, seed, i)))
        }
        GraphSource::List(list) => Box::new(list.iter().cloned().map(Ok)),
    };

    let mut batch = Vec::with_capacity(BATCH);
    for (i, g) in graphs.enumerate() {
        batch.push((i, g?));
        if batch.len() == BATCH {
            process(&batch, &mut summary)?;
            batch.clear();
        }
    }
    process(&batch, &mut summary)?;
    summary.elapsed = start.elapsed();
    Ok(summary)
}
