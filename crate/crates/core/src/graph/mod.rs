//! Simple undirected graphs stored as 64-bit adjacency rows.

mod canon;
mod enumerate;
mod graph6;

use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::linalg::{IntMatrix, RationalMatrix};

pub use canon::{canonical_code, canonical_form, canonical_labeling, CANON_MAX_ORDER};
pub use enumerate::{
    enumerate_connected_graphs, extend_by_vertex, graph_from_code, GENERATOR_MAX_ORDER,
};
pub use graph6::{encode_graph6, parse_graph6, Graph6Error, Graph6ErrorKind, GRAPH6_MAX_ORDER};

/// Largest supported vertex count.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// Vertex count outside `1..=64`.
    InvalidOrder(usize),
    /// An operation was asked for more vertices than it supports.
    UnsupportedOrder { order: usize, max: usize },
    /// The operation requires a connected graph.
    Disconnected,
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::InvalidOrder(n) => write!(f, "invalid vertex count {n} (must be 1..=64)"),
            GraphError::UnsupportedOrder { order, max } => {
                write!(f, "order {order} not supported (maximum {max})")
            }
            GraphError::Disconnected => f.write_str("graph is not connected"),
        }
    }
}

impl core::error::Error for GraphError {}

/// A simple undirected graph on `n <= 64` vertices.
///
/// Row `i` is a bitset of the neighbours of vertex `i`; the matrix is kept
/// symmetric with an empty diagonal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: [u64; MAX_ORDER],
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_ORDER {
            return Err(GraphError::InvalidOrder(n));
        }
        Ok(Graph { n, rows: [0; MAX_ORDER] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(i, j) in edges {
            g.add_edge(i, j);
        }
        Ok(g)
    }

    /// Builds a graph from a 0/1 adjacency matrix given row by row.
    ///
    /// Returns `None` if the matrix is not symmetric or has a nonzero diagonal.
    pub fn from_adjacency(n: usize, adj: &[bool]) -> Option<Self> {
        if adj.len() != n * n {
            return None;
        }
        let mut g = Graph::empty(n).ok()?;
        for i in 0..n {
            if adj[i * n + i] {
                return None;
            }
            for j in (i + 1)..n {
                if adj[i * n + j] != adj[j * n + i] {
                    return None;
                }
                if adj[i * n + j] {
                    g.add_edge(i, j);
                }
            }
        }
        Some(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Adds the edge `{i, j}`. Panics on a loop or an out-of-range vertex.
    pub fn add_edge(&mut self, i: usize, j: usize) {
        assert!(i < self.n && j < self.n, "vertex out of range");
        assert!(i != j, "simple graphs have no loops");
        self.rows[i] |= 1 << j;
        self.rows[j] |= 1 << i;
    }

    pub fn remove_edge(&mut self, i: usize, j: usize) {
        assert!(i < self.n && j < self.n, "vertex out of range");
        self.rows[i] &= !(1 << j);
        self.rows[j] &= !(1 << i);
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    /// Neighbourhood of `i` as a bitset.
    #[inline]
    pub fn neighbors(&self, i: usize) -> u64 {
        self.rows[i]
    }

    #[inline]
    pub fn degree(&self, i: usize) -> usize {
        self.rows[i].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows[..self.n].iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| ((i + 1)..self.n).filter(move |&j| self.has_edge(i, j)).map(move |j| (i, j)))
    }

    /// Mask with the low `n` bits set.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// True iff a breadth-first search from vertex 0 reaches every vertex.
    pub fn is_connected(&self) -> bool {
        let all = self.vertex_mask();
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.rows[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen & all == all
    }

    /// Two-colouring of a bipartite graph (colour of each vertex, vertex 0
    /// of every component gets `false`), or `None` if an odd cycle exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut color = alloc::vec![None::<bool>; self.n];
        let mut stack = Vec::new();
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            stack.push(s);
            while let Some(v) = stack.pop() {
                let cv = color[v].unwrap();
                let mut nb = self.rows[v];
                while nb != 0 {
                    let u = nb.trailing_zeros() as usize;
                    nb &= nb - 1;
                    match color[u] {
                        None => {
                            color[u] = Some(!cv);
                            stack.push(u);
                        }
                        Some(cu) if cu == cv => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Relabels vertices: vertex `v` of `self` becomes vertex `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph { n: self.n, rows: [0; MAX_ORDER] };
        for (i, j) in self.edges() {
            g.add_edge(perm[i], perm[j]);
        }
        g
    }

    /// Induced graph with the vertices listed in `order`, renumbered `0..`.
    pub fn reordered(&self, order: &[usize]) -> Graph {
        let mut g = Graph { n: order.len(), rows: [0; MAX_ORDER] };
        for (a, &u) in order.iter().enumerate() {
            for (b, &v) in order.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    pub fn adjacency_int(&self) -> IntMatrix {
        IntMatrix::from_fn(self.n, self.n, |i, j| i64::from(self.has_edge(i, j)))
    }

    pub fn adjacency_rational(&self) -> RationalMatrix {
        RationalMatrix::from_int(&self.adjacency_int())
    }

    /// Dense row-major `f64` adjacency.
    pub fn adjacency_f64(&self) -> Vec<f64> {
        let n = self.n;
        let mut out = alloc::vec![0.0; n * n];
        for (i, j) in self.edges() {
            out[i * n + j] = 1.0;
            out[j * n + i] = 1.0;
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Undirected graph with non-negative rational edge weights; diagonal
/// entries are loop weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    weights: RationalMatrix,
}

impl WeightedGraph {
    /// Wraps a symmetric entrywise non-negative square matrix.
    pub fn new(weights: RationalMatrix) -> Option<Self> {
        if !weights.is_square() || !weights.is_symmetric() {
            return None;
        }
        if weights.entries().iter().any(|w| w.is_negative()) {
            return None;
        }
        Some(WeightedGraph { weights })
    }

    pub fn order(&self) -> usize {
        self.weights.rows()
    }

    pub fn weights(&self) -> &RationalMatrix {
        &self.weights
    }

    pub fn into_weights(self) -> RationalMatrix {
        self.weights
    }

    /// Vertices carrying a nonzero loop weight.
    pub fn loops(&self) -> Vec<usize> {
        (0..self.order()).filter(|&i| !self.weights.get(i, i).is_zero()).collect()
    }

    /// Graph of the nonzero off-diagonal weights (loops dropped).
    pub fn underlying_graph(&self) -> Graph {
        let n = self.order();
        let mut g = Graph::empty(n).expect("weighted graph order is within 1..=64");
        for i in 0..n {
            for j in (i + 1)..n {
                if !self.weights.get(i, j).is_zero() {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        self.underlying_graph().is_connected()
    }
}
