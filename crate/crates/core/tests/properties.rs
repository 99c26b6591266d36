//! Property tests for the graph, GF(2), coloring and invariant layers. The
//! reference evaluators here are written out independently of the library's
//! fast paths.

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

use graphweight::coloring::chi3;
use graphweight::gf2::{Gf2Matrix, Gf2Vector};
use graphweight::invariants::{constrained_vector_count, even_set, parity_witness};
use graphweight::{
    encode_graph6, evaluate, parse_graph6, Budgets, DyadicRational, EdgeSubset, Execution, Formula,
    Graph, VertexSubset,
};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let edges = (0..n)
                .flat_map(|j| (0..j).map(move |i| (i, j)))
                .zip(bits)
                .filter_map(|(e, keep)| keep.then_some(e));
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn graph_and_subset(max_n: usize) -> impl Strategy<Value = (Graph, VertexSubset)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        (
            Just(g),
            any::<u64>().prop_map(move |m| VertexSubset::from_mask(m & full)),
        )
    })
}

fn graph_and_permutation(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

/// Brute force: tries every coloring in {0,1,2}^n.
fn chi3_oracle(g: &Graph) -> BigUint {
    let n = g.n() as u32;
    let count = (0..3u64.pow(n))
        .filter(|&code| {
            let color = |v: usize| code / 3u64.pow(v as u32) % 3;
            g.edges().iter().all(|&(a, b)| color(a) != color(b))
        })
        .count();
    BigUint::from(count)
}

/// φ straight from its definition with the brute-force coloring count.
fn phi_oracle(g: &Graph) -> DyadicRational {
    let mut sum = BigInt::from(0);
    for mask in 0..1u64 << g.m() {
        let sub = g.spanning_subgraph(EdgeSubset::from_mask(mask));
        let term = BigInt::from(chi3_oracle(&sub)) << mask.count_ones();
        sum += if mask.count_ones() % 2 == 0 {
            term
        } else {
            -term
        };
    }
    DyadicRational::new(sum, 3 * g.n() as u64)
}

/// Every formula that fits a small budget; the definition sum is skipped
/// above 14 edges.
fn all_three(g: &Graph) -> Vec<DyadicRational> {
    let b = Budgets {
        edges: 14,
        ..Budgets::default()
    };
    Formula::ALL
        .iter()
        .filter(|&&f| f != Formula::Definition || g.m() <= b.edges)
        .map(|&f| evaluate(f, g, &b, Execution::default()).unwrap().value)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trip(g in graph(20)) {
        let s = encode_graph6(&g).unwrap();
        prop_assert_eq!(parse_graph6(&s).unwrap(), g.clone());
        prop_assert_eq!(encode_graph6(&parse_graph6(&s).unwrap()).unwrap(), s);
    }

    #[test]
    fn degree_and_cut_identities((g, u) in graph_and_subset(16)) {
        let n = g.n();
        prop_assert_eq!(g.cut_size(u), g.cut_size(u.complement(n)));
        let full = g.full_set();
        let handshake: usize = (0..n).map(|i| g.degree_in(i, full)).sum();
        prop_assert_eq!(handshake, 2 * g.m());
        let into_u: usize = (0..n).map(|i| g.degree_in(i, u)).sum();
        prop_assert_eq!(into_u, 2 * g.induced_subgraph(u).m() + g.cut_size(u));
    }

    #[test]
    fn subgraphs_are_well_formed((g, u) in graph_and_subset(11), edge_bits in any::<u64>()) {
        let sub = g.induced_subgraph(u);
        prop_assert!(sub.check_invariants());
        prop_assert_eq!(sub.n(), u.len());
        let members: Vec<usize> = u.iter().collect();
        for (a, b) in sub.edges() {
            prop_assert!(g.has_edge(members[*a], members[*b]));
        }
        let mask = if g.m() >= 64 { edge_bits } else { edge_bits & ((1u64 << g.m()) - 1) };
        let span = g.spanning_subgraph(g.edge_subset(mask).unwrap());
        prop_assert!(span.check_invariants());
        prop_assert_eq!(span.n(), g.n());
        prop_assert_eq!(span.m(), mask.count_ones() as usize);
    }

    #[test]
    fn rank_bounds_and_relabelling((g, perm) in graph_and_permutation(14)) {
        let a = Gf2Matrix::adjacency(&g, g.full_set());
        prop_assert!(a.rank() <= a.dim());
        prop_assert_eq!(a.rank() + a.corank(), a.dim());
        let b = Gf2Matrix::adjacency(&g.relabel(&perm), g.full_set());
        prop_assert_eq!(a.corank(), b.corank());
    }

    #[test]
    fn kernel_count_matches_enumeration((g, u) in graph_and_subset(12)) {
        let a = Gf2Matrix::adjacency(&g, u);
        let dim = a.dim();
        let brute = (0..1u64 << dim)
            .filter(|&x| {
                (0..dim).all(|i| {
                    (0..dim).filter(|&j| a.get(i, j) && x >> j & 1 == 1).count() % 2 == 0
                })
            })
            .count();
        prop_assert_eq!(a.kernel_count(), BigUint::from(brute));
    }

    #[test]
    fn support_and_eulerian_bridge((g, u) in graph_and_subset(14)) {
        let a = Gf2Matrix::adjacency(&g, g.full_set());
        let x = Gf2Vector::indicator(g.n(), u);
        let inside = u.is_subset_of(a.zero_set(&x));
        prop_assert_eq!(inside, g.is_eulerian_induced(u));
        prop_assert_eq!(a.zero_set(&x), even_set(&g, u));
    }

    #[test]
    fn chi3_matches_brute_force(g in graph(8)) {
        prop_assert_eq!(chi3(&g), chi3_oracle(&g));
    }

    #[test]
    fn chi3_structure((g, perm) in graph_and_permutation(10), h in graph(6), drop in any::<prop::sample::Index>()) {
        let c = chi3(&g);
        prop_assert_eq!(chi3(&g.relabel(&perm)), c.clone());
        prop_assert!(c <= BigUint::from(3u32).pow(g.n() as u32));
        prop_assert_eq!(chi3(&g.disjoint_union(&h).unwrap()), &c * chi3(&h));
        if g.m() > 0 {
            let k = drop.index(g.m());
            let fewer = g.spanning_subgraph(EdgeSubset::from_mask(((1u64 << g.m()) - 1) & !(1 << k)));
            prop_assert!(chi3(&fewer) >= c);
        }
    }

    #[test]
    fn subset_identities((g, u) in graph_and_subset(12)) {
        prop_assert_eq!(
            constrained_vector_count(&g, u),
            Gf2Matrix::adjacency(&g, u).kernel_count()
        );
        let w = parity_witness(&g, u);
        prop_assert_eq!(w.odd_degree_count % 2, w.cut % 2);
        prop_assert_eq!(u.is_subset_of(even_set(&g, u)), g.is_eulerian_induced(u));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn formulas_agree_with_definition_oracle(g in graph(5)) {
        let oracle = phi_oracle(&g);
        for v in all_three(&g) {
            prop_assert_eq!(&v, &oracle);
        }
    }

    #[test]
    fn formulas_agree_and_are_relabelling_invariant((g, perm) in graph_and_permutation(10)) {
        let values = all_three(&g);
        prop_assert!(values.windows(2).all(|w| w[0] == w[1]));
        prop_assert!(values[0].exponent() <= 3 * g.n() as u64);
        prop_assert_eq!(all_three(&g.relabel(&perm)), values);
    }

    #[test]
    fn multiplicative_over_disjoint_union(g in graph(7), h in graph(6)) {
        let union = all_three(&g.disjoint_union(&h).unwrap());
        let (a, b) = (all_three(&g), all_three(&h));
        let product = &a[a.len() - 1] * &b[b.len() - 1];
        prop_assert!(union.iter().all(|v| *v == product));
    }
}
