//! Built-in golden values and small arithmetic oracles.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use graphweight::coloring::{chi3, chi3_brute_force};
use graphweight::gf2::{Gf2Matrix, Gf2Vector};
use graphweight::{evaluate, Budgets, DyadicRational, Execution, Formula, Graph};

use crate::Failure;

fn golden() -> Vec<(&'static str, Graph, DyadicRational)> {
    vec![
        ("K1", Graph::empty(1).unwrap(), DyadicRational::new(3, 3)),
        (
            "K2",
            Graph::complete(2).unwrap(),
            DyadicRational::new(-3, 6),
        ),
        (
            "K3",
            Graph::complete(3).unwrap(),
            DyadicRational::new(15, 9),
        ),
        ("C4", Graph::cycle(4).unwrap(), DyadicRational::new(33, 12)),
        ("C5", Graph::cycle(5).unwrap(), DyadicRational::new(63, 15)),
    ]
}

fn check_golden() -> Vec<(String, bool)> {
    golden()
        .into_iter()
        .map(|(name, g, expected)| {
            let ok = Formula::ALL.iter().all(|&f| {
                evaluate(f, &g, &Budgets::default(), Execution::Sequential)
                    .map(|v| v.value == expected)
                    .unwrap_or(false)
            });
            (
                format!("golden {name} = {}", expected.to_fraction_string()),
                ok,
            )
        })
        .collect()
}

/// Dyadic arithmetic against `BigRational` on a fixed grid of operands.
fn check_dyadic() -> (String, bool) {
    let operands: Vec<DyadicRational> =
        [(0, 0), (1, 0), (-3, 6), (15, 9), (7, 1), (-1, 40), (12, 2)]
            .into_iter()
            .map(|(n, k)| DyadicRational::new(n, k))
            .collect();
    let ratio = |d: &DyadicRational| -> BigRational {
        BigRational::new(d.numerator().clone(), BigInt::from(1) << d.exponent())
    };
    let ok = operands.iter().all(|a| {
        operands.iter().all(|b| {
            ratio(&(a + b)) == ratio(a) + ratio(b)
                && ratio(&(a * b)) == ratio(a) * ratio(b)
                && ratio(&(a - b)) == ratio(a) - ratio(b)
                && a.to_string().parse::<DyadicRational>().ok().as_ref() == Some(a)
        })
    });
    ("dyadic arithmetic matches rationals".to_string(), ok)
}

fn check_chi3() -> (String, bool) {
    let graphs = [
        Graph::complete(4).unwrap(),
        Graph::cycle(6).unwrap(),
        Graph::path(5).unwrap(),
        Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (0, 3), (2, 5)]).unwrap(),
    ];
    let ok = graphs.iter().all(|g| chi3(g) == chi3_brute_force(g));
    ("3-coloring count matches brute force".to_string(), ok)
}

fn check_kernel() -> (String, bool) {
    let graphs = [
        Graph::cycle(6).unwrap(),
        Graph::complete(5).unwrap(),
        Graph::path(7).unwrap(),
    ];
    let ok = graphs.iter().all(|g| {
        let a = Gf2Matrix::adjacency(g, g.full_set());
        let brute = (0..1u64 << g.n())
            .filter(|&x| a.mat_vec(&Gf2Vector::new(g.n(), x)).is_zero())
            .count();
        a.kernel_count() == BigUint::from(brute)
    });
    ("kernel count matches enumeration".to_string(), ok)
}

pub fn run_all() -> Result<(), Failure> {
    let mut checks = check_golden();
    checks.push(check_dyadic());
    checks.push(check_chi3());
    checks.push(check_kernel());
    let mut failed = 0;
    for (name, ok) in &checks {
        println!("{} {name}", if *ok { "ok  " } else { "FAIL" });
        failed += !ok as usize;
    }
    println!("{} checks, {failed} failed", checks.len());
    if failed > 0 {
        return Err(Failure::Mismatch);
    }
    Ok(())
}
