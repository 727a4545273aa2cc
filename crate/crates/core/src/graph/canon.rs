//! Canonical labelling by equitable-partition refinement plus exhaustive
//! individualisation.
//!
//! Every leaf of the search tree is a vertex ordering compatible with the
//! refined partition; the canonical form is the leaf whose graph6 string is
//! lexicographically smallest. Refinement only depends on the graph
//! structure, so isomorphic inputs explore the same set of relabelled graphs.

use alloc::vec::Vec;

use super::{encode_graph6, Graph, GraphError};

/// Largest order accepted by the canonical labeller.
pub const CANON_MAX_ORDER: usize = 10;

/// Upper-triangle bits of `g` under `order`, in graph6 bit order with the
/// first pair most significant.
fn code_of(g: &Graph, order: &[usize]) -> u64 {
    let mut code = 0u64;
    for j in 1..order.len() {
        let row = g.neighbors(order[j]);
        for &vi in &order[..j] {
            code = code << 1 | (row >> vi & 1);
        }
    }
    code
}

/// Splits every cell by the number of neighbours each vertex has in each
/// cell until the partition is equitable.
fn refine(g: &Graph, cells: &mut Vec<u64>) {
    let mut sigs: Vec<(u64, usize)> = Vec::with_capacity(g.order());
    loop {
        let mut next: Vec<u64> = Vec::with_capacity(g.order());
        let mut changed = false;
        for &cell in cells.iter() {
            if cell.count_ones() == 1 {
                next.push(cell);
                continue;
            }
            sigs.clear();
            let mut rest = cell;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let row = g.neighbors(v);
                let sig = cells
                    .iter()
                    .fold(0u64, |acc, &c| acc << 4 | u64::from((row & c).count_ones()));
                sigs.push((sig, v));
            }
            sigs.sort_unstable();
            let mut current = 0u64;
            let mut last_sig = sigs[0].0;
            for &(sig, v) in sigs.iter() {
                if sig != last_sig {
                    next.push(current);
                    current = 0;
                    last_sig = sig;
                    changed = true;
                }
                current |= 1 << v;
            }
            next.push(current);
        }
        *cells = next;
        if !changed {
            return;
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(u64, Vec<usize>)>,
}

impl Search<'_> {
    fn descend(&mut self, mut cells: Vec<u64>) {
        refine(self.g, &mut cells);
        match cells.iter().position(|c| c.count_ones() > 1) {
            None => {
                let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
                let code = code_of(self.g, &order);
                if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                    self.best = Some((code, order));
                }
            }
            Some(t) => {
                let target = cells[t];
                let mut rest = target;
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    let mut child = Vec::with_capacity(cells.len() + 1);
                    child.extend_from_slice(&cells[..t]);
                    child.push(1 << v);
                    child.push(target & !(1 << v));
                    child.extend_from_slice(&cells[t + 1..]);
                    self.descend(child);
                }
            }
        }
    }
}

fn check_order(g: &Graph) -> Result<(), GraphError> {
    if g.order() > CANON_MAX_ORDER {
        return Err(GraphError::UnsupportedOrder { order: g.order(), max: CANON_MAX_ORDER });
    }
    Ok(())
}

/// Canonical code and ordering: canonical vertex `k` is vertex `order[k]`
/// of the input.
pub fn canonical_labeling(g: &Graph) -> Result<(u64, Vec<usize>), GraphError> {
    check_order(g)?;
    if g.order() == 1 {
        return Ok((0, alloc::vec![0]));
    }
    let mut search = Search { g, best: None };
    search.descend(alloc::vec![g.vertex_mask()]);
    Ok(search.best.expect("search visits at least one leaf"))
}

/// Canonical adjacency bits; equal exactly for isomorphic graphs of the
/// same order.
pub fn canonical_code(g: &Graph) -> Result<u64, GraphError> {
    canonical_labeling(g).map(|(code, _)| code)
}

/// graph6 string of the canonical relabelling.
pub fn canonical_form(g: &Graph) -> Result<Vec<u8>, GraphError> {
    let (_, order) = canonical_labeling(g)?;
    encode_graph6(&g.reordered(&order))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return alloc::vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn relabelled_paths_agree() {
        let a = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let b = Graph::from_edges(3, &[(1, 0), (0, 2)]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn path_and_star_differ() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let s4 = Graph::from_edges(4, &[(0, 3), (1, 3), (2, 3)]).unwrap();
        assert_ne!(canonical_form(&p4).unwrap(), canonical_form(&s4).unwrap());
    }

    #[test]
    fn c4_all_relabellings_give_one_value() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let forms: alloc::collections::BTreeSet<_> = permutations(4)
            .iter()
            .map(|p| canonical_form(&c4.permuted(p)).unwrap())
            .collect();
        assert_eq!(forms.len(), 1);
    }

    #[test]
    fn canonical_form_is_a_relabelling() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)]).unwrap();
        let (code, order) = canonical_labeling(&g).unwrap();
        let h = g.reordered(&order);
        assert_eq!(h.edge_count(), g.edge_count());
        assert_eq!(code, code_of(&h, &[0, 1, 2, 3, 4]));
    }

    #[test]
    fn rejects_large_orders() {
        let g = Graph::empty(11).unwrap();
        assert!(canonical_form(&g).is_err());
    }
}
