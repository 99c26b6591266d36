//! Counting proper 3-colorings.
//!
//! Vertices of degree 0 or 1 are peeled off first (factors 3 and 2), the rest
//! is split into connected components, and each component is counted by
//! backtracking along a breadth-first order with the first vertex's color
//! fixed. Every later vertex in that order already has a colored neighbour,
//! so it has at most two choices.

use num_bigint::BigUint;

use crate::graph::{bits, low_mask, Graph};

/// Number of proper colorings of `g` with three colors.
pub fn chi3(g: &Graph) -> BigUint {
    BigUint::from(chi3_masked(g.adjacency(), low_mask(g.n())))
}

/// Reference evaluator: tries all `3^n` assignments. Only meant for small graphs.
pub fn chi3_brute_force(g: &Graph) -> BigUint {
    let n = g.n();
    assert!(n <= 16, "brute force limited to 16 vertices");
    let mut colors = vec![0u8; n];
    let mut count = 0u64;
    loop {
        if g.edges().iter().all(|&(i, j)| colors[i] != colors[j]) {
            count += 1;
        }
        // odometer increment in base 3
        let mut pos = 0;
        loop {
            if pos == n {
                return BigUint::from(count);
            }
            colors[pos] += 1;
            if colors[pos] < 3 {
                break;
            }
            colors[pos] = 0;
            pos += 1;
        }
    }
}

/// χ₃ of the subgraph induced on `alive`, where `adj` holds adjacency rows.
///
/// The result is at most `3^64 < 2^102`, so `u128` never overflows.
pub(crate) fn chi3_masked(adj: &[u64], mut alive: u64) -> u128 {
    let mut factor: u128 = 1;

    let mut degree = [0u32; 64];
    let mut low = 0u64;
    for v in bits(alive) {
        degree[v] = (adj[v] & alive).count_ones();
        if degree[v] <= 1 {
            low |= 1 << v;
        }
    }
    while low != 0 {
        let v = low.trailing_zeros() as usize;
        low &= low - 1;
        let bit = 1u64 << v;
        alive &= !bit;
        let rest = adj[v] & alive;
        if rest == 0 {
            factor *= 3;
        } else {
            factor *= 2;
            let w = rest.trailing_zeros() as usize;
            degree[w] -= 1;
            if degree[w] <= 1 {
                low |= 1 << w;
            }
        }
    }

    let mut order = [0usize; 64];
    while alive != 0 {
        let len = bfs_component(adj, alive, &mut order);
        let component = order[..len].iter().fold(0u64, |m, &v| m | 1 << v);
        alive &= !component;
        // After peeling every component has at least three vertices and the
        // second BFS vertex is adjacent to the first: fix both colors.
        debug_assert!(len >= 3);
        let classes = [1 << order[0], 1 << order[1], 0];
        let count = 6 * count_extensions(adj, &order[2..len], classes);
        if count == 0 {
            return 0;
        }
        factor *= count;
    }
    factor
}

/// Writes a breadth-first order of the component of the lowest vertex of
/// `alive` into `order`, returning its length.
fn bfs_component(adj: &[u64], alive: u64, order: &mut [usize; 64]) -> usize {
    let start = alive.trailing_zeros() as usize;
    order[0] = start;
    let mut seen = 1u64 << start;
    let (mut head, mut len) = (0, 1);
    while head < len {
        let v = order[head];
        head += 1;
        for w in bits(adj[v] & alive & !seen) {
            seen |= 1 << w;
            order[len] = w;
            len += 1;
        }
    }
    len
}

/// Number of ways to color `rest` in order, given the partial coloring
/// `classes`.
///
/// The longest suffix of `rest` with no edges inside it is not searched:
/// once everything before it is colored, its vertices choose independently.
fn count_extensions(adj: &[u64], rest: &[usize], mut classes: [u64; 3]) -> u128 {
    let mut split = rest.len();
    let mut suffix = 0u64;
    while split > 0 && adj[rest[split - 1]] & suffix == 0 {
        split -= 1;
        suffix |= 1 << rest[split];
    }
    let free = &rest[split..];
    let independent = |classes: &[u64; 3]| -> u128 {
        let mut product = 1u128;
        for &v in free {
            let options = classes.iter().filter(|&&c| adj[v] & c == 0).count();
            if options == 0 {
                return 0;
            }
            product *= options as u128;
        }
        product
    };
    if split == 0 {
        return independent(&classes);
    }

    let mut total = 0u128;
    // choice[d] is the next color to try at depth d
    let mut choice = [0u8; 64];
    let mut d = 0usize;
    loop {
        let v = rest[d];
        let mut placed = false;
        while choice[d] < 3 {
            let c = choice[d] as usize;
            choice[d] += 1;
            if adj[v] & classes[c] == 0 {
                classes[c] |= 1 << v;
                if d + 1 == split {
                    total += independent(&classes);
                    classes[c] &= !(1 << v);
                    continue;
                }
                placed = true;
                break;
            }
        }
        if placed {
            d += 1;
            choice[d] = 0;
            continue;
        }
        if d == 0 {
            return total;
        }
        d -= 1;
        let c = (choice[d] - 1) as usize;
        classes[c] &= !(1u64 << rest[d]);
    }
}
