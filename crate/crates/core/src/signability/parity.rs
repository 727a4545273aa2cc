use alloc::vec::Vec;

/// Union-find over vertices with a parity bit on every element relative to
/// its parent. A union either merges two classes with the requested
/// relative parity or reports whether an existing relation agrees.
#[derive(Debug, Clone)]
pub struct ParityUnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
    // parity[x] is x's parity relative to parent[x]
    parity: Vec<bool>,
}

impl ParityUnionFind {
    pub fn new(n: usize) -> Self {
        ParityUnionFind { parent: (0..n).collect(), rank: alloc::vec![0; n], parity: alloc::vec![false; n] }
    }

    /// Root of `x` and the parity of `x` relative to that root.
    pub fn find(&mut self, x: usize) -> (usize, bool) {
        let p = self.parent[x];
        if p == x {
            return (x, false);
        }
        let (root, pp) = self.find(p);
        let total = self.parity[x] ^ pp;
        self.parent[x] = root;
        self.parity[x] = total;
        (root, total)
    }

    /// Records `parity(a) xor parity(b) == odd`. Returns `false` if this
    /// contradicts earlier relations.
    pub fn relate(&mut self, a: usize, b: usize, odd: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return (pa ^ pb) == odd;
        }
        let link = pa ^ pb ^ odd;
        let (lo, hi) = if self.rank[ra] < self.rank[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[lo] = hi;
        self.parity[lo] = link;
        if self.rank[lo] == self.rank[hi] {
            self.rank[hi] += 1;
        }
        true
    }
}
