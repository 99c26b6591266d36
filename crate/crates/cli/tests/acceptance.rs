//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails. Reference values come from the oracles below, which
//! share no code with the library's evaluators.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use graphweight::coloring::chi3;
use graphweight::gf2::Gf2Matrix;
use graphweight::invariants::{constrained_vector_count, parity_witness};
use graphweight::verify::{
    enumerate_labeled_graphs, random_graph_from_stream, run, GraphSource, Probability, RunConfig,
};
use graphweight::{evaluate, Budgets, DyadicRational, Execution, Formula, Graph, VertexSubset};

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

/// Proper 3-colorings by trying all 3^n assignments.
fn chi3_oracle(g: &Graph) -> u64 {
    let n = g.n() as u32;
    (0..3u64.pow(n))
        .filter(|&code| {
            let color = |v: usize| code / 3u64.pow(v as u32) % 3;
            g.edges().iter().all(|&(a, b)| color(a) != color(b))
        })
        .count() as u64
}

/// φ as a rational: `(1/8)^n Σ_{F ⊆ E} (-2)^|F| χ₃(V, F)`.
fn phi_oracle(g: &Graph) -> BigRational {
    let mut sum = BigInt::from(0);
    for mask in 0..1u64 << g.m() {
        let edges = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e);
        let sub = Graph::from_edges(g.n(), edges).unwrap();
        sum += BigInt::from(-2).pow(mask.count_ones()) * BigInt::from(chi3_oracle(&sub));
    }
    BigRational::new(sum, BigInt::from(8).pow(g.n() as u32))
}

fn as_ratio(d: &DyadicRational) -> BigRational {
    BigRational::new(d.numerator().clone(), BigInt::from(1) << d.exponent())
}

/// Kernel size of a square F₂ matrix by testing all 2^dim vectors.
fn kernel_oracle(a: &[Vec<u8>]) -> u64 {
    let dim = a.len();
    (0..1u64 << dim)
        .filter(|&x| {
            a.iter().all(|row| {
                let dot: u32 = (0..dim).map(|j| row[j] as u32 * (x >> j & 1) as u32).sum();
                dot.is_multiple_of(2)
            })
        })
        .count() as u64
}

fn all_formulas(g: &Graph, budgets: &Budgets, exec: Execution) -> Vec<Option<DyadicRational>> {
    Formula::ALL
        .iter()
        .map(|&f| evaluate(f, g, budgets, exec).ok().map(|v| v.value))
        .collect()
}

fn graphs_up_to(n_max: usize) -> impl Iterator<Item = Graph> {
    (0..=n_max).flat_map(|n| enumerate_labeled_graphs(n).unwrap())
}

fn golden_values() -> Outcome {
    let cases = [
        ("K1", Graph::complete(1).unwrap(), (3, 8)),
        ("K2", Graph::complete(2).unwrap(), (-3, 64)),
        ("K3", Graph::complete(3).unwrap(), (15, 512)),
    ];
    let mut shown = Vec::new();
    for (name, g, (num, den)) in cases {
        let expected = BigRational::new(BigInt::from(num), BigInt::from(den));
        if phi_oracle(&g) != expected {
            return Err(format!("oracle disagrees with {num}/{den} on {name}"));
        }
        for (f, v) in
            Formula::ALL
                .iter()
                .zip(all_formulas(&g, &Budgets::default(), Execution::Sequential))
        {
            match v {
                Some(v) if as_ratio(&v) == expected => {}
                other => return Err(format!("{name}: {} gave {other:?}", f.name())),
            }
        }
        shown.push(format!("{name}={num}/{den}"));
    }
    Ok(shown.join(" "))
}

fn exhaustive(n: usize, exec: Execution, limit: Duration) -> Outcome {
    let mut cfg = RunConfig::new(GraphSource::Exhaustive { n });
    cfg.exec = exec;
    let mut incomplete = 0;
    let summary = run(&cfg, |r| {
        incomplete += r.runs.iter().any(|x| x.is_none()) as u64
    })
    .map_err(|e| e.to_string())?;
    let detail = format!("{summary}, {:.1} s", summary.elapsed.as_secs_f64());
    if summary.graphs != 1 << (n * (n - 1) / 2) || incomplete > 0 || summary.skipped > 0 {
        return Err(format!("{detail}, {incomplete} graphs missing a formula"));
    }
    if summary.failed() || summary.elapsed > limit {
        return Err(format!("{detail} (limit {} s)", limit.as_secs()));
    }
    Ok(detail)
}

fn random_campaign() -> Outcome {
    let ps = [(1, 4), (1, 2), (3, 4)];
    let budgets = Budgets::default();
    let (mut with_definition, mut without) = (0, 0);
    for i in 0..500u64 {
        let n = 7 + (i % 8) as usize;
        let (a, b) = ps[(i / 8 % 3) as usize];
        let g = random_graph_from_stream(n, Probability::new(a, b).unwrap(), 2024, i).unwrap();
        let values = all_formulas(&g, &budgets, Execution::default());
        let (def, eul, psi) = (&values[0], &values[1], &values[2]);
        if eul.is_none() || eul != psi {
            return Err(format!(
                "graph {i} (n={n}, m={}): eulerian {eul:?} vs corank {psi:?}",
                g.m()
            ));
        }
        match def {
            Some(_) if def == eul => with_definition += 1,
            None if g.m() > budgets.edges => without += 1,
            _ => {
                return Err(format!(
                    "graph {i} (n={n}, m={}): definition {def:?}",
                    g.m()
                ))
            }
        }
    }
    Ok(format!("500 graphs agree, definition included on {with_definition}, skipped on {without} with |E| > 24"))
}

/// Counts `(G, U)` pairs over every graph with n <= 5 and every subset U on
/// which `holds` fails.
fn over_all_subsets(holds: impl Fn(&Graph, VertexSubset) -> bool) -> Outcome {
    let (mut pairs, mut bad) = (0u64, 0u64);
    for g in graphs_up_to(5) {
        for mask in 0..1u64 << g.n() {
            pairs += 1;
            bad += !holds(&g, VertexSubset::from_mask(mask)) as u64;
        }
    }
    let text = format!("{pairs} (G, U) pairs, {bad} violations");
    if bad == 0 {
        Ok(text)
    } else {
        Err(text)
    }
}

fn claim_equality() -> Outcome {
    over_all_subsets(|g, u| {
        constrained_vector_count(g, u) == Gf2Matrix::adjacency(g, u).kernel_count()
    })
}

fn parity_identity() -> Outcome {
    over_all_subsets(|g, u| {
        let w = parity_witness(g, u);
        w.odd_degree_count % 2 == w.cut % 2
    })
}

fn gf2_and_coloring_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for t in 0..200 {
        let dim = (rng.next_u64() % 13) as usize;
        let mut a = vec![vec![0u8; dim]; dim];
        for (i, j) in (0..dim).flat_map(|i| (i + 1..dim).map(move |j| (i, j))) {
            let bit = (rng.next_u64() & 1) as u8;
            a[i][j] = bit;
            a[j][i] = bit;
        }
        let rows: Vec<&[u8]> = a.iter().map(Vec::as_slice).collect();
        let m = Gf2Matrix::from_entries(&rows);
        if m.kernel_count() != BigUint::from(kernel_oracle(&a)) {
            return Err(format!("matrix {t} (dim {dim}): kernel count disagrees"));
        }
    }
    let mut graphs = 0;
    for g in graphs_up_to(5) {
        if chi3(&g) != BigUint::from(chi3_oracle(&g)) {
            return Err(format!("chi3 disagrees on {:?}", g.edges()));
        }
        graphs += 1;
    }
    Ok(format!("200 matrices, {graphs} graphs"))
}

fn multiplicativity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let budgets = Budgets::default();
    let ps = [(1, 4), (1, 2), (3, 4)];
    let mut definition_checked = 0;
    for i in 0..100u64 {
        let n1 = 1 + (rng.next_u64() % 13) as usize;
        let n2 = 1 + (rng.next_u64() % (14 - n1) as u64) as usize;
        let (a, b) = ps[(rng.next_u64() % 3) as usize];
        let p = Probability::new(a, b).unwrap();
        let g1 = random_graph_from_stream(n1, p, 8, 2 * i).unwrap();
        let g2 = random_graph_from_stream(n2, p, 8, 2 * i + 1).unwrap();
        let union = g1.disjoint_union(&g2).unwrap();
        let (x, y, z) = (
            all_formulas(&g1, &budgets, Execution::default()),
            all_formulas(&g2, &budgets, Execution::default()),
            all_formulas(&union, &budgets, Execution::default()),
        );
        for (k, f) in Formula::ALL.iter().enumerate() {
            match (&x[k], &y[k], &z[k]) {
                (Some(a), Some(b), Some(c)) if *c == a * b => definition_checked += (k == 0) as u64,
                (_, _, None) if k == 0 => {}
                _ => {
                    return Err(format!(
                        "pair {i} (n1={n1}, n2={n2}): {} not multiplicative",
                        f.name()
                    ))
                }
            }
        }
    }
    Ok(format!(
        "100 pairs for phi and psi, definition also on {definition_checked}"
    ))
}

fn determinism() -> Outcome {
    let invoke = || {
        Command::new(env!("CARGO_BIN_EXE_graphweight"))
            .args([
                "verify", "--random", "10", "1/2", "100", "--seed", "7", "--output", "jsonl",
            ])
            .output()
            .map_err(|e| e.to_string())
    };
    let (first, second) = (invoke()?, invoke()?);
    if !first.status.success() {
        return Err(format!("exit status {}", first.status));
    }
    let lines = first.stdout.iter().filter(|&&b| b == b'\n').count();
    if lines != 100 {
        return Err(format!("expected 100 records, got {lines}"));
    }
    if first.stdout != second.stdout {
        return Err("outputs differ".to_string());
    }
    Ok(format!("{} identical bytes", first.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 9] = [
        ("golden values", golden_values),
        ("exhaustive n=5", || {
            exhaustive(5, Execution::Sequential, Duration::from_secs(60))
        }),
        ("exhaustive n=6", || {
            exhaustive(6, Execution::default(), Duration::from_secs(30 * 60))
        }),
        ("random campaign", random_campaign),
        ("claim equality", claim_equality),
        ("parity identity", parity_identity),
        ("gf2 and coloring oracles", gf2_and_coloring_oracles),
        ("multiplicativity", multiplicativity),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] AC{} {name}: {detail} ({secs:.1} s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] AC{} {name}: {detail} ({secs:.1} s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
