//! Exhaustive enumeration of connected partial k-trees (k ∈ {1, 2}) up to
//! isomorphism, by vertex count.
//!
//! Every connected graph of treewidth ≤ 2 on n+1 vertices contains a
//! non-cut vertex of degree ≤ 2 (a leaf block is an edge or a 2-connected
//! series-parallel graph, which has at least two degree-2 vertices, at
//! most one of which is the block's cut vertex). Deleting it gives a
//! connected partial 2-tree on n vertices, so attaching a new vertex along
//! 1 or 2 edges — keeping only results that stay K4-minor-free — visits
//! every isomorphism class. Deduplication uses the canonical form from the
//! core crate; the enumeration order (vertex count, then canonical key) is
//! deterministic and machine-independent.

use girthlab_core::graph::{canonical_key, CanonKey, Graph};
use rayon::prelude::*;
use std::collections::HashSet;

/// Compact scratch graph for the enumeration frontier (n ≤ 16).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SmallGraph {
    pub n: u8,
    pub adj: [u16; 16],
}

impl SmallGraph {
    pub fn single_vertex() -> SmallGraph {
        SmallGraph { n: 1, adj: [0; 16] }
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }

    pub fn with_new_vertex(&self, neighbors: u16) -> SmallGraph {
        let mut g = *self;
        let v = g.n as usize;
        g.adj[v] = neighbors;
        for u in 0..v {
            if neighbors & (1 << u) != 0 {
                g.adj[u] |= 1 << v;
            }
        }
        g.n += 1;
        g
    }

    pub fn to_graph(&self) -> Graph {
        let n = self.n as usize;
        let edges = (0..n).flat_map(|u| {
            let row = self.adj[u];
            (u + 1..n).filter(move |&v| row & (1 << v) != 0).map(move |v| (u, v))
        });
        Graph::from_edges_lossy(n, edges)
    }

    /// Exact treewidth ≤ 2 test: series-parallel reduction. Deleting
    /// vertices of degree ≤ 1 and suppressing degree-2 vertices (joining
    /// their neighbors) empties the graph iff there is no K4 minor; a
    /// stuck graph has minimum degree ≥ 3 and therefore contains one.
    pub fn treewidth_le2(&self) -> bool {
        let mut adj = self.adj;
        let mut alive: u16 = if self.n == 16 { u16::MAX } else { (1u16 << self.n) - 1 };
        while alive != 0 {
            let mut progressed = false;
            let mut rest = alive;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let nbrs = adj[v] & alive;
                match nbrs.count_ones() {
                    0 | 1 => {
                        alive &= !(1 << v);
                        progressed = true;
                    }
                    2 => {
                        let a = nbrs.trailing_zeros() as usize;
                        let b = (15 - nbrs.leading_zeros()) as usize;
                        adj[a] |= 1 << b;
                        adj[b] |= 1 << a;
                        alive &= !(1 << v);
                        progressed = true;
                    }
                    _ => {}
                }
            }
            if !progressed {
                return false;
            }
        }
        true
    }

    /// Exact treewidth ≤ 1 test: acyclic.
    pub fn treewidth_le1(&self) -> bool {
        let adj = self.adj;
        let mut alive: u16 = if self.n == 16 { u16::MAX } else { (1u16 << self.n) - 1 };
        while alive != 0 {
            let mut progressed = false;
            let mut rest = alive;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if (adj[v] & alive).count_ones() <= 1 {
                    alive &= !(1 << v);
                    progressed = true;
                }
            }
            if !progressed {
                return false;
            }
        }
        true
    }

    pub fn has_treewidth_at_most(&self, k: usize) -> bool {
        match k {
            1 => self.treewidth_le1(),
            2 => self.treewidth_le2(),
            _ => unreachable!("enumeration supports k in {{1, 2}}"),
        }
    }
}

/// Rebuilds a `SmallGraph` in canonical labeling from a canonical key's
/// adjacency bits.
fn from_canonical(n: usize, graph: &Graph) -> SmallGraph {
    let mut g = SmallGraph { n: n as u8, adj: [0; 16] };
    for (u, v) in graph.edges() {
        g.adj[u] |= 1 << v;
        g.adj[v] |= 1 << u;
    }
    g
}

/// All connected partial k-trees with exactly `n` vertices, one canonical
/// representative per isomorphism class, ordered by canonical key.
/// Levels are built incrementally; `visit` is called once per level in
/// ascending vertex count.
pub fn enumerate_connected(
    k: usize,
    max_vertices: usize,
    mut visit: impl FnMut(usize, &[Graph]),
) {
    assert!((1..=2).contains(&k));
    assert!(max_vertices <= 12, "canonical dedup caps at 12 vertices");
    let mut level: Vec<Graph> = vec![SmallGraph::single_vertex().to_graph()];
    visit(1, &level);
    for n in 2..=max_vertices {
        let parents: Vec<SmallGraph> =
            level.iter().map(|g| from_canonical(n - 1, g)).collect();
        // Children: attach one new vertex along 1..=k edges; keep the
        // K4-minor-free (or acyclic) survivors; dedup canonically.
        let mut keyed: Vec<(CanonKey, Graph)> = parents
            .par_iter()
            .flat_map_iter(|parent| {
                let masks = neighbor_masks(parent.n as usize, k);
                let parent = *parent;
                masks.into_iter().filter_map(move |mask| {
                    let child = parent.with_new_vertex(mask);
                    if !child.has_treewidth_at_most(k) {
                        return None;
                    }
                    let graph = child.to_graph();
                    let key = canonical_key(&graph).expect("within the canonical cap");
                    Some((key, graph))
                })
            })
            .collect();
        keyed.par_sort_unstable_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.0 == b.0);
        level = keyed.into_iter().map(|(_, g)| g).collect();
        visit(n, &level);
    }
}

fn neighbor_masks(n: usize, k: usize) -> Vec<u16> {
    let mut masks = Vec::new();
    for a in 0..n {
        masks.push(1u16 << a);
        if k >= 2 {
            for b in a + 1..n {
                masks.push((1u16 << a) | (1u16 << b));
            }
        }
    }
    masks
}

/// Total count per level, for reporting and tests.
pub fn count_connected(k: usize, max_vertices: usize) -> Vec<usize> {
    let mut counts = Vec::new();
    enumerate_connected(k, max_vertices, |_, level| counts.push(level.len()));
    counts
}

/// Brute-force oracle: count connected partial k-trees on exactly `n`
/// vertices by enumerating all labeled graphs and deduplicating
/// canonically. Only sane for n ≤ 7.
pub fn count_connected_brute(k: usize, n: usize) -> usize {
    assert!(n <= 7);
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut seen: HashSet<CanonKey> = HashSet::new();
    for bits in 0..(1u64 << pairs.len()) {
        let mut g = SmallGraph { n: n as u8, adj: [0; 16] };
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if bits & (1 << i) != 0 {
                g.adj[u] |= 1 << v;
                g.adj[v] |= 1 << u;
            }
        }
        if !g.has_treewidth_at_most(k) {
            continue;
        }
        let graph = g.to_graph();
        if !graph.is_connected() {
            continue;
        }
        seen.insert(canonical_key(&graph).unwrap());
    }
    seen.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_counts_match_the_literature() {
        // Unlabeled trees on 1..=10 vertices.
        let counts = count_connected(1, 10);
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
    }

    #[test]
    fn partial_two_tree_counts_match_brute_force() {
        let counts = count_connected(2, 6);
        for n in 1..=6 {
            assert_eq!(
                counts[n - 1],
                count_connected_brute(2, n),
                "count mismatch at n={n}"
            );
        }
    }

    #[test]
    fn treewidth_tests_are_exact_on_small_cases() {
        let k4 = from_canonical(4, &Graph::complete(4));
        assert!(!k4.treewidth_le2());
        let c5 = from_canonical(5, &Graph::cycle(5));
        assert!(c5.treewidth_le2());
        assert!(!c5.treewidth_le1());
        let p5 = from_canonical(5, &Graph::path(5));
        assert!(p5.treewidth_le1());
        // K4 minus an edge has treewidth 2.
        let diamond = from_canonical(4, &Graph::new(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap());
        assert!(diamond.treewidth_le2());
    }
}
