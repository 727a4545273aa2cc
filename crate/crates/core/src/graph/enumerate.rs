//! Isomorphism classes of small connected graphs.
//!
//! Every connected graph on `m` vertices has a vertex whose removal leaves
//! it connected (a leaf of any spanning tree), so attaching one new vertex
//! to every connected graph on `m - 1` vertices in all nonempty ways reaches
//! every class on `m` vertices. Duplicates are removed by canonical code.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{canonical_code, Graph, GraphError};

/// Largest order the built-in generator accepts.
pub const GENERATOR_MAX_ORDER: usize = 9;

/// Rebuilds the graph whose upper-triangle bits form `code`.
pub fn graph_from_code(n: usize, code: u64) -> Graph {
    let mut g = Graph::empty(n).expect("order within range");
    let total = n * (n.saturating_sub(1)) / 2;
    let mut bit = total;
    for j in 1..n {
        for i in 0..j {
            bit -= 1;
            if code >> bit & 1 == 1 {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Canonical codes of all one-vertex extensions of `parents`.
///
/// Each parent must have the same order `k`; the returned set holds the
/// canonical codes of the order-`k + 1` graphs obtained by joining a new
/// vertex to every nonempty subset of the parent's vertices.
pub fn extend_by_vertex<'a, I>(parents: I) -> BTreeSet<u64>
where
    I: IntoIterator<Item = &'a Graph>,
{
    let mut seen = BTreeSet::new();
    for parent in parents {
        let k = parent.order();
        let mut child = Graph::empty(k + 1).expect("order within range");
        for (i, j) in parent.edges() {
            child.add_edge(i, j);
        }
        for mask in 1u64..(1u64 << k) {
            let mut g = child.clone();
            let mut m = mask;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                g.add_edge(v, k);
            }
            seen.insert(canonical_code(&g).expect("generator orders are canonisable"));
        }
    }
    seen
}

/// One canonical representative of every isomorphism class of connected
/// graphs on `m` vertices, sorted by canonical code.
pub fn enumerate_connected_graphs(m: usize) -> Result<Vec<Graph>, GraphError> {
    if m == 0 {
        return Err(GraphError::InvalidOrder(0));
    }
    if m > GENERATOR_MAX_ORDER {
        return Err(GraphError::UnsupportedOrder { order: m, max: GENERATOR_MAX_ORDER });
    }
    let mut level = alloc::vec![Graph::empty(1)?];
    for k in 2..=m {
        level = extend_by_vertex(level.iter())
            .into_iter()
            .map(|code| graph_from_code(k, code))
            .collect();
    }
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_for_tiny_orders() {
        let counts: Vec<usize> =
            (1..=5).map(|m| enumerate_connected_graphs(m).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 2, 6, 21]);
    }

    #[test]
    fn representatives_are_connected_and_canonical() {
        for g in enumerate_connected_graphs(5).unwrap() {
            assert!(g.is_connected());
            let order: Vec<usize> = (0..5).collect();
            let (code, _) = super::super::canonical_labeling(&g).unwrap();
            assert_eq!(graph_from_code(5, code), g.reordered(&order));
        }
    }

    #[test]
    fn order_limits() {
        assert!(enumerate_connected_graphs(0).is_err());
        assert!(matches!(
            enumerate_connected_graphs(10),
            Err(GraphError::UnsupportedOrder { order: 10, max: 9 })
        ));
    }
}
