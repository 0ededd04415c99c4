//! Simple undirected graphs and the metric/parity primitives the rest of
//! the crate is built on.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::dist::Dist;

/// Largest vertex count accepted by the canonical-form search.
pub const CANONICAL_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    SelfLoop { v: usize },
    DuplicateEdge { u: usize, v: usize },
    VertexOutOfRange { v: usize, n: usize },
    TooLarge { n: usize, cap: usize },
    LabelCountMismatch { labels: usize, n: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::SelfLoop { v } => write!(f, "self-loop at vertex {v}"),
            GraphError::DuplicateEdge { u, v } => write!(f, "duplicate edge {{{u},{v}}}"),
            GraphError::VertexOutOfRange { v, n } => {
                write!(f, "vertex {v} out of range for graph on {n} vertices")
            }
            GraphError::TooLarge { n, cap } => {
                write!(f, "graph on {n} vertices exceeds the cap of {cap}")
            }
            GraphError::LabelCountMismatch { labels, n } => {
                write!(f, "{labels} labels for {n} vertices")
            }
        }
    }
}

/// A simple undirected graph on vertices `0..vertex_count`.
///
/// No self-loops, no duplicate edges. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    m: usize,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop { v: u });
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { v: w, n });
                }
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge { u: key.0, v: key.1 });
            }
        }
        Ok(Self::from_edge_set(n, seen))
    }

    /// Builds a graph from an arbitrary edge collection using simple-graph
    /// semantics: endpoints normalized, duplicates merged, loops dropped.
    pub fn from_edges_lossy<I>(n: usize, edges: I) -> Graph
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let set: BTreeSet<(usize, usize)> = edges
            .into_iter()
            .filter(|&(u, v)| u != v && u < n && v < n)
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        Self::from_edge_set(n, set)
    }

    fn from_edge_set(n: usize, edges: BTreeSet<(usize, usize)>) -> Graph {
        let mut adj = vec![Vec::new(); n];
        let m = edges.len();
        for (u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        Graph { n, adj, m, labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::LabelCountMismatch { labels: labels.len(), n: self.n });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u].iter().copied().filter(move |&v| u < v).map(move |v| (u, v))
        })
    }

    /// Component id per vertex; components numbered by their smallest vertex,
    /// in ascending order of that vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = next;
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().iter().all(|&c| c == 0)
    }

    /// Induced subgraph on `keep` (ascending re-indexing); returns the
    /// old-to-new vertex map with `usize::MAX` for dropped vertices.
    pub fn induced(&self, keep: &[bool]) -> (Graph, Vec<usize>) {
        let mut map = vec![usize::MAX; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if keep[v] {
                map[v] = next;
                next += 1;
            }
        }
        let edges = self
            .edges()
            .filter(|&(u, v)| keep[u] && keep[v])
            .map(|(u, v)| (map[u], map[v]));
        (Graph::from_edges_lossy(next, edges), map)
    }

    // Named families used throughout the tests and corpora.

    pub fn empty(n: usize) -> Graph {
        Graph::from_edges_lossy(n, core::iter::empty())
    }

    /// Path on `n` vertices `0-1-...-(n-1)`.
    pub fn path(n: usize) -> Graph {
        Graph::from_edges_lossy(n, (1..n).map(|v| (v - 1, v)))
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::from_edges_lossy(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges_lossy(n, (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v))))
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges_lossy(leaves + 1, (1..=leaves).map(|v| (0, v)))
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges_lossy(10, edges)
    }
}

/// A two-coloring of the vertices with no monochromatic edge.
///
/// Canonical orientation: in each connected component the smallest-index
/// vertex is red; isolated vertices are red.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub red: Vec<usize>,
    pub blue: Vec<usize>,
}

impl Bipartition {
    /// Per-vertex side: `true` for red.
    pub fn red_flags(&self, n: usize) -> Vec<bool> {
        let mut flags = vec![false; n];
        for &v in &self.red {
            flags[v] = true;
        }
        flags
    }
}

/// A closed walk with an odd number of edges, witnessing non-bipartiteness.
/// The first vertex is repeated at the end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddCycleWitness {
    pub walk: Vec<usize>,
}

impl OddCycleWitness {
    pub fn len(&self) -> usize {
        self.walk.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.walk.len() <= 1
    }

    /// Checks the witness against `g`: closed, odd, every step an edge.
    pub fn verify(&self, g: &Graph) -> bool {
        let w = &self.walk;
        w.len() >= 4
            && w.first() == w.last()
            && (w.len() - 1) % 2 == 1
            && w.windows(2).all(|e| g.has_edge(e[0], e[1]))
    }
}

/// Length of a shortest odd cycle; `∞` iff the graph is bipartite.
///
/// BFS from every vertex; an edge joining two vertices on layers of equal
/// parity closes an odd walk of length `d(u)+d(v)+1`, and the minimum such
/// value over all start vertices is the odd-girth.
pub fn odd_girth(g: &Graph) -> Dist {
    let mut best = Dist::Inf;
    let mut dist = vec![u64::MAX; g.vertex_count()];
    for root in 0..g.vertex_count() {
        for d in dist.iter_mut() {
            *d = u64::MAX;
        }
        let mut queue = alloc::collections::VecDeque::new();
        dist[root] = 0;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if dist[w] == u64::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        for (u, v) in g.edges() {
            if dist[u] != u64::MAX && dist[v] != u64::MAX && (dist[u] + dist[v]) % 2 == 0 {
                best = best.min(Dist::Fin(dist[u] + dist[v] + 1));
            }
        }
    }
    best
}

/// Two-colors `g` with the canonical orientation, or returns an odd closed
/// walk if `g` is not bipartite.
pub fn bipartition(g: &Graph) -> Result<Bipartition, OddCycleWitness> {
    let n = g.vertex_count();
    let mut color = vec![u8::MAX; n]; // 0 = red, 1 = blue
    let mut parent = vec![usize::MAX; n];
    for start in 0..n {
        if color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        let mut queue = alloc::collections::VecDeque::new();
        queue.push_back(start);
        let mut comp = vec![start];
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if color[w] == u8::MAX {
                    color[w] = color[u] ^ 1;
                    parent[w] = u;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        for &u in &comp {
            for &w in g.neighbors(u) {
                if u < w && color[u] == color[w] {
                    return Err(odd_walk_witness(&parent, u, w));
                }
            }
        }
    }
    let red = (0..n).filter(|&v| color[v] == 0).collect();
    let blue = (0..n).filter(|&v| color[v] == 1).collect();
    Ok(Bipartition { red, blue })
}

fn odd_walk_witness(parent: &[usize], u: usize, w: usize) -> OddCycleWitness {
    let path_to_root = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            p.push(x);
        }
        p
    };
    // root .. u, then w .. root: closed, with the u-w edge in the middle.
    let mut walk = path_to_root(u);
    walk.reverse();
    walk.extend(path_to_root(w));
    OddCycleWitness { walk }
}

/// Multi-source BFS distances: nearest distance to any source, `∞` when
/// unreachable.
pub fn distances(g: &Graph, sources: &[usize]) -> Result<Vec<Dist>, GraphError> {
    let n = g.vertex_count();
    let mut dist = vec![Dist::Inf; n];
    let mut queue = alloc::collections::VecDeque::new();
    for &s in sources {
        if s >= n {
            return Err(GraphError::VertexOutOfRange { v: s, n });
        }
        if dist[s].is_infinite() {
            dist[s] = Dist::Fin(0);
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let du = dist[u].finite().unwrap();
        for &w in g.neighbors(u) {
            if dist[w].is_infinite() {
                dist[w] = Dist::Fin(du + 1);
                queue.push_back(w);
            }
        }
    }
    Ok(dist)
}

/// Contracts the closed neighborhood `N[v]` to a single fresh vertex.
///
/// Surviving vertices are re-indexed in ascending order; the fresh vertex
/// takes the highest index. Returns the contracted graph together with the
/// surjective old-to-new vertex map.
pub fn contract_closed_neighborhood(
    g: &Graph,
    v: usize,
) -> Result<(Graph, Vec<usize>), GraphError> {
    let n = g.vertex_count();
    if v >= n {
        return Err(GraphError::VertexOutOfRange { v, n });
    }
    let mut absorbed = vec![false; n];
    absorbed[v] = true;
    for &w in g.neighbors(v) {
        absorbed[w] = true;
    }
    let mut map = vec![usize::MAX; n];
    let mut next = 0;
    for u in 0..n {
        if !absorbed[u] {
            map[u] = next;
            next += 1;
        }
    }
    let fresh = next;
    for u in 0..n {
        if absorbed[u] {
            map[u] = fresh;
        }
    }
    let edges = g.edges().map(|(a, b)| (map[a], map[b]));
    Ok((Graph::from_edges_lossy(fresh + 1, edges), map))
}

/// Canonical key of a vertex-colored graph: equal keys iff there is a
/// color-preserving isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonKey {
    n: u8,
    bits: u128,
    colors: Vec<u32>,
}

impl CanonKey {
    pub fn to_form_string(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        let _ = write!(s, "g{}:{:x}", self.n, self.bits);
        if self.colors.iter().any(|&c| c != 0) {
            let _ = write!(s, ":c");
            for c in &self.colors {
                let _ = write!(s, ",{c}");
            }
        }
        s
    }
}

/// Canonical string for small graphs: equal strings iff isomorphic.
/// Brute-force refinement/individualization; rejects graphs above
/// [`CANONICAL_CAP`] vertices.
pub fn canonical_form(g: &Graph) -> Result<String, GraphError> {
    canonical_key(g).map(|k| k.to_form_string())
}

pub fn canonical_key(g: &Graph) -> Result<CanonKey, GraphError> {
    let colors = vec![0u32; g.vertex_count()];
    canonical_key_colored(g, &colors)
}

/// Canonical key respecting an initial vertex coloring (only same-colored
/// vertices may be exchanged by the implied isomorphisms).
pub fn canonical_key_colored(g: &Graph, colors: &[u32]) -> Result<CanonKey, GraphError> {
    let n = g.vertex_count();
    if n > CANONICAL_CAP {
        return Err(GraphError::TooLarge { n, cap: CANONICAL_CAP });
    }
    assert_eq!(colors.len(), n);
    if n == 0 {
        return Ok(CanonKey { n: 0, bits: 0, colors: Vec::new() });
    }
    // Initial ordered partition: cells grouped by color, ascending.
    let mut palette: Vec<u32> = colors.to_vec();
    palette.sort_unstable();
    palette.dedup();
    let mut cells: Vec<Vec<usize>> = palette
        .iter()
        .map(|&c| (0..n).filter(|&v| colors[v] == c).collect())
        .collect();
    refine(g, &mut cells);
    let mut best: Option<CanonKey> = None;
    search_canonical(g, colors, cells, &mut best);
    Ok(best.expect("canonical search always yields a leaf"))
}

/// Splits cells by neighbor counts per cell until the partition is
/// equitable. Deterministic and isomorphism-invariant.
fn refine(g: &Graph, cells: &mut Vec<Vec<usize>>) {
    let n = g.vertex_count();
    loop {
        let mut cell_of = vec![0usize; n];
        for (i, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = i;
            }
        }
        let k = cells.len();
        let sig = |v: usize| -> Vec<u32> {
            let mut counts = vec![0u32; k];
            for &w in g.neighbors(v) {
                counts[cell_of[w]] += 1;
            }
            counts
        };
        let mut new_cells: Vec<Vec<usize>> = Vec::with_capacity(k);
        for cell in cells.iter() {
            if cell.len() == 1 {
                new_cells.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell.iter().map(|&v| (sig(v), v)).collect();
            keyed.sort();
            let mut i = 0;
            while i < keyed.len() {
                let mut j = i + 1;
                while j < keyed.len() && keyed[j].0 == keyed[i].0 {
                    j += 1;
                }
                new_cells.push(keyed[i..j].iter().map(|(_, v)| *v).collect());
                i = j;
            }
        }
        let grew = new_cells.len() > cells.len();
        *cells = new_cells;
        if !grew {
            break;
        }
    }
    // Keep vertices inside each cell sorted for determinism.
    for cell in cells.iter_mut() {
        cell.sort_unstable();
    }
}

fn search_canonical(
    g: &Graph,
    colors: &[u32],
    cells: Vec<Vec<usize>>,
    best: &mut Option<CanonKey>,
) {
    if cells.iter().all(|c| c.len() == 1) || is_homogeneous(g, &cells) {
        let labeling: Vec<usize> = cells.iter().flatten().copied().collect();
        let key = key_from_labeling(g, colors, &labeling);
        if best.as_ref().map_or(true, |b| key < *b) {
            *best = Some(key);
        }
        return;
    }
    let target = cells
        .iter()
        .position(|c| c.len() >= 2)
        .expect("non-discrete partition has a non-singleton cell");
    let members = cells[target].clone();
    for v in members {
        let mut child: Vec<Vec<usize>> = Vec::with_capacity(cells.len() + 1);
        for (i, cell) in cells.iter().enumerate() {
            if i == target {
                child.push(vec![v]);
                child.push(cell.iter().copied().filter(|&w| w != v).collect());
            } else {
                child.push(cell.clone());
            }
        }
        refine(g, &mut child);
        search_canonical(g, colors, child, best);
    }
}

/// True when every cell induces a complete or empty subgraph and every cell
/// pair is completely joined or completely non-adjacent; any cell ordering
/// then yields the same adjacency string.
fn is_homogeneous(g: &Graph, cells: &[Vec<usize>]) -> bool {
    for (i, a) in cells.iter().enumerate() {
        let inner = a
            .iter()
            .enumerate()
            .flat_map(|(s, &u)| a[s + 1..].iter().map(move |&v| g.has_edge(u, v)));
        let mut saw_true = false;
        let mut saw_false = false;
        for e in inner {
            saw_true |= e;
            saw_false |= !e;
            if saw_true && saw_false {
                return false;
            }
        }
        for b in &cells[i + 1..] {
            let mut saw_true = false;
            let mut saw_false = false;
            for &u in a {
                for &v in b.iter() {
                    let e = g.has_edge(u, v);
                    saw_true |= e;
                    saw_false |= !e;
                    if saw_true && saw_false {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn key_from_labeling(g: &Graph, colors: &[u32], labeling: &[usize]) -> CanonKey {
    let n = labeling.len();
    let mut pos = vec![0usize; n];
    for (i, &v) in labeling.iter().enumerate() {
        pos[v] = i;
    }
    let mut bits: u128 = 0;
    for (u, v) in g.edges() {
        let (a, b) = (pos[u].min(pos[v]), pos[u].max(pos[v]));
        let idx = a * (2 * n - a - 1) / 2 + (b - a - 1);
        bits |= 1u128 << idx;
    }
    CanonKey { n: n as u8, bits, colors: labeling.iter().map(|&v| colors[v]).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(Graph::new(3, &[(0, 0)]), Err(GraphError::SelfLoop { .. })));
        assert!(matches!(
            Graph::new(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge { .. })
        ));
        assert!(matches!(
            Graph::new(2, &[(0, 5)]),
            Err(GraphError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn odd_girth_basics() {
        assert_eq!(odd_girth(&Graph::cycle(5)), Dist::Fin(5));
        assert_eq!(odd_girth(&Graph::cycle(6)), Dist::Inf);
        assert_eq!(odd_girth(&Graph::complete(4)), Dist::Fin(3));
        assert_eq!(odd_girth(&Graph::empty(3)), Dist::Inf);
        assert_eq!(odd_girth(&Graph::petersen()), Dist::Fin(5));
    }

    #[test]
    fn bipartition_canonical_rule() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let b = bipartition(&g).unwrap();
        assert_eq!(b.red, vec![0]);
        assert_eq!(b.blue, vec![1]);

        let empty = Graph::empty(3);
        let b = bipartition(&empty).unwrap();
        assert_eq!(b.red, vec![0, 1, 2]);
        assert!(b.blue.is_empty());

        // Two components: smallest index of each is red.
        let g = Graph::new(4, &[(1, 0), (2, 3)]).unwrap();
        let b = bipartition(&g).unwrap();
        assert_eq!(b.red, vec![0, 2]);
        assert_eq!(b.blue, vec![1, 3]);
    }

    #[test]
    fn bipartition_witness_on_c5() {
        let w = bipartition(&Graph::cycle(5)).unwrap_err();
        assert_eq!(w.len(), 5);
        assert!(w.verify(&Graph::cycle(5)));
    }

    #[test]
    fn distances_multi_source() {
        let p = Graph::path(3);
        let d = distances(&p, &[0]).unwrap();
        assert_eq!(d, vec![Dist::Fin(0), Dist::Fin(1), Dist::Fin(2)]);
        let d = distances(&p, &[0, 2]).unwrap();
        assert_eq!(d, vec![Dist::Fin(0), Dist::Fin(1), Dist::Fin(0)]);
        let g = Graph::new(3, &[(0, 1)]).unwrap();
        let d = distances(&g, &[0]).unwrap();
        assert_eq!(d[2], Dist::Inf);
        assert!(distances(&p, &[7]).is_err());
    }

    #[test]
    fn contraction_examples() {
        // Star: contracting the center absorbs everything.
        let (g, map) = contract_closed_neighborhood(&Graph::star(3), 0).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(map, vec![0, 0, 0, 0]);

        // Path on five vertices, contract the middle.
        let (g, map) = contract_closed_neighborhood(&Graph::path(5), 2).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(map, vec![0, 2, 2, 2, 1]);
        assert!(g.has_edge(0, 2) && g.has_edge(1, 2) && !g.has_edge(0, 1));

        // C6 contracts to C4.
        let (g, _) = contract_closed_neighborhood(&Graph::cycle(6), 0).unwrap();
        assert_eq!(
            canonical_form(&g).unwrap(),
            canonical_form(&Graph::cycle(4)).unwrap()
        );
    }

    #[test]
    fn canonical_form_examples() {
        // Two labelings of C4.
        let c4a = Graph::cycle(4);
        let c4b = Graph::new(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(canonical_form(&c4a).unwrap(), canonical_form(&c4b).unwrap());
        // C4 vs P4.
        assert_ne!(
            canonical_form(&c4a).unwrap(),
            canonical_form(&Graph::path(4)).unwrap()
        );
        // K4 minus an edge, two labelings.
        let a = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let b = Graph::new(4, &[(2, 3), (2, 1), (2, 0), (3, 1), (3, 0)]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        // Cap enforced.
        assert!(matches!(
            canonical_form(&Graph::empty(13)),
            Err(GraphError::TooLarge { .. })
        ));
    }

    #[test]
    fn canonical_form_highly_symmetric() {
        assert_eq!(
            canonical_form(&Graph::complete(12)).unwrap(),
            canonical_form(&Graph::complete(12)).unwrap()
        );
        let pet = Graph::petersen();
        // Relabeled Petersen graph.
        let perm: Vec<usize> = vec![3, 7, 1, 9, 0, 4, 8, 2, 6, 5];
        let relabeled =
            Graph::from_edges_lossy(10, pet.edges().map(|(u, v)| (perm[u], perm[v])));
        assert_eq!(canonical_form(&pet).unwrap(), canonical_form(&relabeled).unwrap());
        // Petersen is not C10 plus chords of some other kind: compare distinct.
        assert_ne!(
            canonical_form(&pet).unwrap(),
            canonical_form(&Graph::cycle(10)).unwrap()
        );
    }

    #[test]
    fn canonical_colored_distinguishes_roots() {
        let p = Graph::path(3);
        let k1 = canonical_key_colored(&p, &[1, 0, 2]).unwrap();
        let k2 = canonical_key_colored(&p, &[2, 0, 1]).unwrap();
        let k3 = canonical_key_colored(&p, &[1, 2, 0]).unwrap();
        assert_eq!(k1, k2); // reflection swaps the endpoints
        assert_ne!(k1, k3); // root in the middle is different
    }
}
