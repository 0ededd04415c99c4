//! Rooted partial k-trees, their construction certificates, gluing and
//! splitting.
//!
//! Treewidth is never inferred from a bare graph: every value of
//! [`RootedPartialKTree`] carries a build sequence witnessing that its graph
//! is a subgraph of a k-tree in which the k+1 roots form a clique.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dist::Dist;
use crate::graph::{odd_girth, Graph};

/// One step of a k-tree build: a new vertex attached to a k-clique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertStep {
    pub vertex: usize,
    pub clique: Vec<usize>,
}

/// A graph of treewidth at most `k`, rooted at an ordered tuple of `k+1`
/// distinct vertices, together with a k-tree build certificate.
///
/// Replaying the certificate from the initial clique on the roots yields a
/// k-tree on the same vertex set that is a supergraph of `graph`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedPartialKTree {
    graph: Graph,
    k: usize,
    roots: Vec<usize>,
    steps: Vec<CertStep>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KTreeViolation {
    RootCountMismatch { roots: usize, k: usize },
    RootsNotDistinct,
    RootOutOfRange { v: usize },
    VertexCountMismatch { graph: usize, certified: usize },
    StepVertexNotFresh { vertex: usize },
    StepCliqueSize { vertex: usize, got: usize, k: usize },
    StepCliqueVertexMissing { vertex: usize, member: usize },
    StepCliqueNotClique { vertex: usize, u: usize, v: usize },
    EdgeNotCovered { u: usize, v: usize },
}

impl fmt::Display for KTreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KTreeViolation::RootCountMismatch { roots, k } => {
                write!(f, "{roots} roots for k={k} (need k+1)")
            }
            KTreeViolation::RootsNotDistinct => write!(f, "roots are not pairwise distinct"),
            KTreeViolation::RootOutOfRange { v } => write!(f, "root {v} out of range"),
            KTreeViolation::VertexCountMismatch { graph, certified } => {
                write!(f, "graph has {graph} vertices but certificate builds {certified}")
            }
            KTreeViolation::StepVertexNotFresh { vertex } => {
                write!(f, "certificate introduces vertex {vertex} twice or as a root")
            }
            KTreeViolation::StepCliqueSize { vertex, got, k } => {
                write!(f, "attachment of vertex {vertex} has {got} vertices, expected k={k}")
            }
            KTreeViolation::StepCliqueVertexMissing { vertex, member } => {
                write!(f, "attachment of vertex {vertex} references absent vertex {member}")
            }
            KTreeViolation::StepCliqueNotClique { vertex, u, v } => {
                write!(f, "attachment of vertex {vertex}: {u} and {v} not adjacent in the replayed k-tree")
            }
            KTreeViolation::EdgeNotCovered { u, v } => {
                write!(f, "edge {{{u},{v}}} of the graph is absent from the replayed k-tree")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KTreeError {
    KMismatch { left: usize, right: usize },
    TooSmall { vertices: usize, need: usize },
    SplitSizeTooSmall { n: usize, k: usize },
    Invalid(KTreeViolation),
}

impl fmt::Display for KTreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KTreeError::KMismatch { left, right } => {
                write!(f, "cannot combine k={left} with k={right}")
            }
            KTreeError::TooSmall { vertices, need } => {
                write!(f, "graph has {vertices} vertices, need at least {need}")
            }
            KTreeError::SplitSizeTooSmall { n, k } => {
                write!(f, "split size n={n} must be at least k+1={}", k + 1)
            }
            KTreeError::Invalid(v) => write!(f, "invalid rooted partial k-tree: {v}"),
        }
    }
}

impl RootedPartialKTree {
    /// Validates and wraps a graph, roots and certificate.
    pub fn new(
        graph: Graph,
        k: usize,
        roots: Vec<usize>,
        steps: Vec<CertStep>,
    ) -> Result<Self, KTreeViolation> {
        let t = RootedPartialKTree { graph, k, roots, steps };
        t.validate()?;
        Ok(t)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn steps(&self) -> &[CertStep] {
        &self.steps
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Replays the certificate and checks every invariant; reports the first
    /// violation found.
    pub fn validate(&self) -> Result<(), KTreeViolation> {
        let n = self.graph.vertex_count();
        if self.roots.len() != self.k + 1 {
            return Err(KTreeViolation::RootCountMismatch { roots: self.roots.len(), k: self.k });
        }
        let root_set: BTreeSet<usize> = self.roots.iter().copied().collect();
        if root_set.len() != self.roots.len() {
            return Err(KTreeViolation::RootsNotDistinct);
        }
        if let Some(&v) = self.roots.iter().find(|&&v| v >= n) {
            return Err(KTreeViolation::RootOutOfRange { v });
        }
        if self.k + 1 + self.steps.len() != n {
            return Err(KTreeViolation::VertexCountMismatch {
                graph: n,
                certified: self.k + 1 + self.steps.len(),
            });
        }
        let ktree = self.replay()?;
        for (u, v) in self.graph.edges() {
            if !ktree[u].contains(&v) {
                return Err(KTreeViolation::EdgeNotCovered { u, v });
            }
        }
        Ok(())
    }

    /// Adjacency sets of the replayed supergraph k-tree.
    pub(crate) fn replay(&self) -> Result<Vec<BTreeSet<usize>>, KTreeViolation> {
        let n = self.graph.vertex_count();
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        let mut present = vec![false; n];
        for &r in &self.roots {
            present[r] = true;
        }
        for (i, &u) in self.roots.iter().enumerate() {
            for &v in &self.roots[i + 1..] {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
        for step in &self.steps {
            let v = step.vertex;
            if v >= n || present[v] {
                return Err(KTreeViolation::StepVertexNotFresh { vertex: v });
            }
            if step.clique.len() != self.k {
                return Err(KTreeViolation::StepCliqueSize {
                    vertex: v,
                    got: step.clique.len(),
                    k: self.k,
                });
            }
            for &c in &step.clique {
                if c >= n || !present[c] {
                    return Err(KTreeViolation::StepCliqueVertexMissing { vertex: v, member: c });
                }
            }
            for (i, &a) in step.clique.iter().enumerate() {
                for &b in &step.clique[i + 1..] {
                    if !adj[a].contains(&b) {
                        return Err(KTreeViolation::StepCliqueNotClique { vertex: v, u: a, v: b });
                    }
                }
            }
            present[v] = true;
            for &c in &step.clique {
                adj[v].insert(c);
                adj[c].insert(v);
            }
        }
        Ok(adj)
    }

    /// `k+1` isolated roots (the fallback gadget and the i₀ = 1 reduction
    /// output).
    pub fn isolated(k: usize) -> RootedPartialKTree {
        RootedPartialKTree {
            graph: Graph::empty(k + 1),
            k,
            roots: (0..=k).collect(),
            steps: Vec::new(),
        }
    }

    /// Path on `n ≥ 2` vertices rooted at the adjacent pair `(0, 1)`, as a
    /// partial 1-tree.
    ///
    /// At k = 1 the witnessing supergraph is a tree containing the root
    /// edge, so two connected roots are necessarily adjacent; paths with
    /// far-apart distinguished vertices live at k = 2 (see
    /// [`far_rooted_path`]).
    pub fn path_on(n: usize) -> RootedPartialKTree {
        assert!(n >= 2, "rooted path needs at least 2 vertices");
        let graph = Graph::path(n);
        let steps = (2..n).map(|v| CertStep { vertex: v, clique: vec![v - 1] }).collect();
        RootedPartialKTree { graph, k: 1, roots: vec![0, 1], steps }
    }
}

/// Path `0-1-…-len` plus one isolated vertex, rooted at
/// `(0, len, len+1)` as a partial 2-tree: the endpoints sit at distance
/// `len` and the third root is disconnected.
///
/// This is the lab's stand-in for "a path with far-apart roots": the type
/// has one finite entry `len` and `∞` elsewhere.
pub fn far_rooted_path(len: usize) -> RootedPartialKTree {
    assert!(len >= 1, "far-rooted path needs length at least 1");
    let graph = Graph::path(len + 1);
    let graph = Graph::from_edges_lossy(len + 2, graph.edges());
    let roots = vec![0, len, len + 1];
    certify_low_treewidth(&graph, 2, Some(&roots))
        .expect("a path plus the root triangle is series-parallel")
}

/// A spider with the given leg lengths, rooted at its leaves plus one
/// isolated free root, as a partial k-tree with `k` = number of legs.
///
/// Rooting a spider at all of its leaves is impossible at k = 2 (the root
/// triangle would create a K4 minor), so the certificate lives one level
/// up: legs are attached to the clique of per-leg frontiers, walking from
/// the leaves inward to the center.
///
/// Layout: vertex 0 is the center; leg `i` occupies the next `leg_lengths[i]`
/// vertices outward, so its leaf is the last of them; the free root is the
/// final vertex.
pub fn spider_with_free_root(leg_lengths: &[usize]) -> RootedPartialKTree {
    let m = leg_lengths.len();
    assert!(m >= 2, "spider needs at least 2 legs");
    assert!(leg_lengths.iter().all(|&l| l >= 1), "legs need length at least 1");
    let total: usize = leg_lengths.iter().sum();
    let n = 1 + total + 1;
    let free_root = n - 1;
    let mut edges = Vec::new();
    let mut legs: Vec<Vec<usize>> = Vec::new(); // center outward
    let mut next = 1;
    for &len in leg_lengths {
        let mut leg = vec![0];
        for _ in 0..len {
            edges.push((*leg.last().unwrap(), next));
            leg.push(next);
            next += 1;
        }
        legs.push(leg);
    }
    let graph = Graph::from_edges_lossy(n, edges);
    let mut roots: Vec<usize> = legs.iter().map(|leg| *leg.last().unwrap()).collect();
    roots.push(free_root);

    // Frontiers start at the leaves; each attachment replaces one
    // frontier, so the frontier set stays a clique in the replay.
    let mut frontier: Vec<usize> = roots[..m].to_vec();
    let mut remaining: Vec<usize> = leg_lengths.iter().map(|&l| l - 1).collect();
    let mut steps = Vec::new();
    loop {
        let mut progressed = false;
        for i in 0..m {
            if remaining[i] == 0 {
                continue;
            }
            let leg = &legs[i];
            let v = leg[remaining[i]];
            steps.push(CertStep { vertex: v, clique: frontier.clone() });
            frontier[i] = v;
            remaining[i] -= 1;
            progressed = true;
        }
        if !progressed {
            break;
        }
    }
    steps.push(CertStep { vertex: 0, clique: frontier.clone() });
    RootedPartialKTree::new(graph, m, roots, steps)
        .expect("the frontier walk certifies the spider")
}

/// Glues two rooted partial k-trees by identifying their roots pairwise.
///
/// Vertices of `a` keep their indices; non-root vertices of `b` are appended
/// in ascending order. Returns the glued tree together with the vertex maps
/// of both inputs into the result.
pub fn glue_with_maps(
    a: &RootedPartialKTree,
    b: &RootedPartialKTree,
) -> Result<(RootedPartialKTree, Vec<usize>, Vec<usize>), KTreeError> {
    if a.k != b.k {
        return Err(KTreeError::KMismatch { left: a.k, right: b.k });
    }
    let k = a.k;
    let na = a.graph.vertex_count();
    let nb = b.graph.vertex_count();
    let map_a: Vec<usize> = (0..na).collect();
    let mut map_b = vec![usize::MAX; nb];
    for (i, &r) in b.roots.iter().enumerate() {
        map_b[r] = a.roots[i];
    }
    let mut next = na;
    for v in 0..nb {
        if map_b[v] == usize::MAX {
            map_b[v] = next;
            next += 1;
        }
    }
    let edges = a
        .graph
        .edges()
        .chain(b.graph.edges().map(|(u, v)| (map_b[u], map_b[v])));
    let graph = Graph::from_edges_lossy(next, edges);
    let mut steps = a.steps.clone();
    steps.extend(b.steps.iter().map(|s| CertStep {
        vertex: map_b[s.vertex],
        clique: s.clique.iter().map(|&c| map_b[c]).collect(),
    }));
    let glued = RootedPartialKTree::new(graph, k, a.roots.clone(), steps)
        .map_err(KTreeError::Invalid)?;
    Ok((glued, map_a, map_b))
}

pub fn glue(
    a: &RootedPartialKTree,
    b: &RootedPartialKTree,
) -> Result<RootedPartialKTree, KTreeError> {
    glue_with_maps(a, b).map(|(g, _, _)| g)
}

/// The bag tree induced by a certificate: bag 0 is the root clique, bag
/// `i+1` is `steps[i].clique ∪ {steps[i].vertex}`. The parent of a step bag
/// is the first earlier bag containing its attachment clique.
pub(crate) struct BagTree {
    pub bags: Vec<Vec<usize>>,
    pub parent: Vec<Option<usize>>,
}

impl BagTree {
    pub fn from_tree(t: &RootedPartialKTree) -> BagTree {
        let mut bags: Vec<Vec<usize>> = Vec::with_capacity(t.steps.len() + 1);
        let mut root_bag = t.roots.clone();
        root_bag.sort_unstable();
        bags.push(root_bag);
        let mut parent = vec![None];
        for step in &t.steps {
            let clique: BTreeSet<usize> = step.clique.iter().copied().collect();
            let p = bags
                .iter()
                .position(|bag| clique.iter().all(|c| bag.contains(c)))
                .expect("attachment clique is contained in an earlier bag");
            let mut bag: Vec<usize> = step.clique.clone();
            bag.push(step.vertex);
            bag.sort_unstable();
            bags.push(bag);
            parent.push(Some(p));
        }
        BagTree { bags, parent }
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.bags.len()];
        for (i, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                ch[*p].push(i);
            }
        }
        ch
    }

    /// Vertices introduced by each bag: the root bag introduces the roots,
    /// every step bag its new vertex.
    pub fn introduced(&self, t: &RootedPartialKTree) -> Vec<Vec<usize>> {
        let mut intro = vec![Vec::new(); self.bags.len()];
        intro[0] = t.roots.clone();
        for (i, step) in t.steps.iter().enumerate() {
            intro[i + 1].push(step.vertex);
        }
        intro
    }
}

/// Scratch state for building a fresh k-tree certificate vertex by vertex.
pub(crate) struct KTreeBuilder {
    k: usize,
    present: Vec<bool>,
    adj: Vec<BTreeSet<usize>>,
    pub steps: Vec<CertStep>,
}

impl KTreeBuilder {
    /// Starts from the clique on `roots`.
    pub fn new(k: usize, n: usize, roots: &[usize]) -> KTreeBuilder {
        assert_eq!(roots.len(), k + 1);
        let mut b = KTreeBuilder {
            k,
            present: vec![false; n],
            adj: vec![BTreeSet::new(); n],
            steps: Vec::new(),
        };
        for &r in roots {
            b.present[r] = true;
        }
        for (i, &u) in roots.iter().enumerate() {
            for &v in &roots[i + 1..] {
                b.adj[u].insert(v);
                b.adj[v].insert(u);
            }
        }
        b
    }

    pub fn is_present(&self, v: usize) -> bool {
        self.present[v]
    }

    fn attach(&mut self, v: usize, clique: Vec<usize>) {
        debug_assert!(!self.present[v]);
        debug_assert_eq!(clique.len(), self.k);
        self.present[v] = true;
        for &c in &clique {
            self.adj[v].insert(c);
            self.adj[c].insert(v);
        }
        self.steps.push(CertStep { vertex: v, clique });
    }

    /// Realizes a bag against an already-realized (k+1)-clique `base ⊇ keep`:
    /// introduces the vertices of `add` one by one, each attached to a
    /// k-subset of the evolving clique that retains `keep` and the vertices
    /// added so far. Returns the final (k+1)-clique.
    pub fn realize_bag(&mut self, base: &[usize], keep: &[usize], add: &[usize]) -> Vec<usize> {
        debug_assert_eq!(base.len(), self.k + 1);
        debug_assert!(keep.iter().all(|v| base.contains(v)));
        debug_assert!(keep.len() + add.len() <= self.k + 1);
        let mut clique: Vec<usize> = base.to_vec();
        let mut pinned: BTreeSet<usize> = keep.iter().copied().collect();
        for &v in add {
            let drop = *clique
                .iter()
                .find(|u| !pinned.contains(u))
                .expect("clique has a non-pinned vertex to displace");
            let attachment: Vec<usize> =
                clique.iter().copied().filter(|&u| u != drop).collect();
            self.attach(v, attachment.clone());
            clique = attachment;
            clique.push(v);
            clique.sort_unstable();
            pinned.insert(v);
        }
        clique
    }

    /// Walks a bag tree breadth-first from `start`, introducing each bag's
    /// new vertices. `adjacency` is the undirected bag-tree adjacency over
    /// the bag indices to visit; `start_clique` must be a realized
    /// (k+1)-clique covering the already-present vertices of `bags[start]`.
    pub fn walk_bags(
        &mut self,
        bags: &[Vec<usize>],
        adjacency: &[Vec<usize>],
        start: usize,
        start_clique: Vec<usize>,
    ) {
        let mut realized: Vec<Option<Vec<usize>>> = vec![None; bags.len()];
        let keep: Vec<usize> =
            bags[start].iter().copied().filter(|&v| self.present[v]).collect();
        let add: Vec<usize> =
            bags[start].iter().copied().filter(|&v| !self.present[v]).collect();
        realized[start] = Some(self.realize_bag(&start_clique, &keep, &add));
        let mut queue = VecDeque::new();
        queue.push_back(start);
        let mut visited = vec![false; bags.len()];
        visited[start] = true;
        while let Some(b) = queue.pop_front() {
            let base = realized[b].clone().unwrap();
            for &c in &adjacency[b] {
                if visited[c] {
                    continue;
                }
                visited[c] = true;
                let keep: Vec<usize> =
                    bags[c].iter().copied().filter(|&v| self.present[v]).collect();
                let add: Vec<usize> =
                    bags[c].iter().copied().filter(|&v| !self.present[v]).collect();
                realized[c] = Some(self.realize_bag(&base, &keep, &add));
                queue.push_back(c);
            }
        }
    }
}

/// Splits a rooted partial k-tree into two whose glue is the original.
///
/// Walks the certificate's bag tree accumulating a subtree; the shared
/// `k+1` vertices are the bag at the cut. The first part has between `n+1`
/// and `2n` vertices. Returns both parts and the vertex maps from the
/// original into each part (`usize::MAX` marks an absent vertex).
pub fn split_with_maps(
    t: &RootedPartialKTree,
    n: usize,
) -> Result<(RootedPartialKTree, RootedPartialKTree, Vec<usize>, Vec<usize>), KTreeError> {
    let k = t.k;
    if n < k + 1 {
        return Err(KTreeError::SplitSizeTooSmall { n, k });
    }
    let total = t.graph.vertex_count();
    if total < 3 * n {
        return Err(KTreeError::TooSmall { vertices: total, need: 3 * n });
    }
    let tree = BagTree::from_tree(t);
    let children = tree.children();
    let intro = tree.introduced(t);

    // Subtree weights: number of vertices introduced within each subtree.
    let mut weight = vec![0usize; tree.bags.len()];
    for i in (0..tree.bags.len()).rev() {
        weight[i] = intro[i].len() + children[i].iter().map(|&c| weight[c]).sum::<usize>();
    }

    // Descend while a single child subtree overshoots; cut at the first
    // child that fits; otherwise accumulate sibling subtrees greedily.
    let mut cur = 0usize;
    let (cut_bag, chosen): (usize, Vec<usize>) = loop {
        let mut fitting = None;
        let mut overshooting = None;
        for &c in &children[cur] {
            let size = weight[c] + k;
            if (n + 1..=2 * n).contains(&size) {
                fitting = Some(c);
                break;
            }
            if size > 2 * n && overshooting.is_none() {
                overshooting = Some(c);
            }
        }
        if let Some(c) = fitting {
            break (c, children[c].clone());
        }
        if let Some(c) = overshooting {
            cur = c;
            continue;
        }
        // Every child subtree is small; take the bag at `cur` plus a greedy
        // prefix of its children.
        let mut chosen = Vec::new();
        let mut size = k + 1;
        for &c in &children[cur] {
            chosen.push(c);
            size += weight[c];
            if size >= n + 1 {
                break;
            }
        }
        assert!(
            (n + 1..=2 * n).contains(&size),
            "separator walk failed to land in range"
        );
        break (cur, chosen);
    };

    // Vertices of part one: the separator bag plus everything introduced in
    // the chosen subtrees.
    let mut in_subtree = vec![false; tree.bags.len()];
    for &c in &chosen {
        mark_subtree(&children, c, &mut in_subtree);
    }
    let mut in_part1 = vec![false; total];
    for &v in &tree.bags[cut_bag] {
        in_part1[v] = true;
    }
    let mut introduced_in_chosen = vec![false; total];
    for (b, list) in intro.iter().enumerate() {
        if in_subtree[b] {
            for &v in list {
                in_part1[v] = true;
                introduced_in_chosen[v] = true;
            }
        }
    }

    let separator = tree.bags[cut_bag].clone();

    // Part one: relabel ascending, certificate = the chosen subtrees' steps
    // in original order.
    let (g1, map1) = t.graph.induced(&in_part1);
    let roots1: Vec<usize> = separator.iter().map(|&v| map1[v]).collect();
    let mut steps1 = Vec::new();
    for (i, step) in t.steps.iter().enumerate() {
        if in_subtree[i + 1] {
            steps1.push(CertStep {
                vertex: map1[step.vertex],
                clique: step.clique.iter().map(|&c| map1[c]).collect(),
            });
        }
    }
    let part1 = RootedPartialKTree::new(g1, k, roots1, steps1).map_err(KTreeError::Invalid)?;

    // Part two: everything not introduced inside the chosen subtrees,
    // certificate rebuilt by walking the remaining bag tree from the cut bag.
    let keep2: Vec<bool> = (0..total).map(|v| !introduced_in_chosen[v]).collect();
    let (g2, map2) = t.graph.induced(&keep2);
    let roots2: Vec<usize> = separator.iter().map(|&v| map2[v]).collect();
    let n2 = g2.vertex_count();

    let mut adjacency = vec![Vec::new(); tree.bags.len()];
    for (b, p) in tree.parent.iter().enumerate() {
        if let Some(p) = *p {
            if !in_subtree[b] && !in_subtree[p] {
                adjacency[b].push(p);
                adjacency[p].push(b);
            }
        }
    }
    let bags2: Vec<Vec<usize>> = tree
        .bags
        .iter()
        .map(|bag| bag.iter().filter_map(|&v| keep2[v].then(|| map2[v])).collect())
        .collect();
    let mut builder = KTreeBuilder::new(k, n2, &roots2);
    let mut start_clique = roots2.clone();
    start_clique.sort_unstable();
    builder.walk_bags(&bags2, &adjacency, cut_bag, start_clique);
    let part2 =
        RootedPartialKTree::new(g2, k, roots2, builder.steps).map_err(KTreeError::Invalid)?;

    Ok((part1, part2, map1, map2))
}

fn mark_subtree(children: &[Vec<usize>], root: usize, mark: &mut [bool]) {
    let mut stack = vec![root];
    while let Some(b) = stack.pop() {
        if mark[b] {
            continue;
        }
        mark[b] = true;
        stack.extend(children[b].iter().copied());
    }
}

pub fn split(
    t: &RootedPartialKTree,
    n: usize,
) -> Result<(RootedPartialKTree, RootedPartialKTree), KTreeError> {
    split_with_maps(t, n).map(|(a, b, _, _)| (a, b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenError {
    TooFewVertices { n: usize, k: usize },
    InvalidProbability,
    BudgetExhausted { attempts: usize },
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenError::TooFewVertices { n, k } => {
                write!(f, "cannot build a k={k} tree on {n} vertices")
            }
            GenError::InvalidProbability => write!(f, "edge keep probability must be in [0,1]"),
            GenError::BudgetExhausted { attempts } => {
                write!(f, "no graph met the odd-girth floor within {attempts} attempts")
            }
        }
    }
}

pub const DEFAULT_GENERATOR_ATTEMPTS: usize = 1000;

/// Deterministic random rooted partial k-tree: build a random k-tree by
/// attaching to uniformly chosen k-cliques, delete each edge independently
/// with probability `1 - edge_keep_prob`, and resample until the odd-girth
/// floor is met (`Dist::Inf` demands a bipartite result).
pub fn random_partial_k_tree(
    k: usize,
    n: usize,
    edge_keep_prob: f64,
    min_odd_girth: Dist,
    seed: u64,
) -> Result<RootedPartialKTree, GenError> {
    random_partial_k_tree_with_budget(
        k,
        n,
        edge_keep_prob,
        min_odd_girth,
        seed,
        DEFAULT_GENERATOR_ATTEMPTS,
    )
}

pub fn random_partial_k_tree_with_budget(
    k: usize,
    n: usize,
    edge_keep_prob: f64,
    min_odd_girth: Dist,
    seed: u64,
    attempts: usize,
) -> Result<RootedPartialKTree, GenError> {
    if n < k + 1 {
        return Err(GenError::TooFewVertices { n, k });
    }
    if !(0.0..=1.0).contains(&edge_keep_prob) {
        return Err(GenError::InvalidProbability);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let mut steps = Vec::with_capacity(n.saturating_sub(k + 1));
        let mut ktree_edges: Vec<(usize, usize)> = Vec::new();
        for u in 0..=k {
            for v in u + 1..=k {
                ktree_edges.push((u, v));
            }
        }
        // All k-cliques of the k-tree built so far.
        let mut cliques: Vec<Vec<usize>> = (0..=k)
            .map(|skip| (0..=k).filter(|&v| v != skip).collect())
            .collect();
        for v in k + 1..n {
            let choice = rng.gen_range(0..cliques.len());
            let clique = cliques[choice].clone();
            for &c in &clique {
                ktree_edges.push((c, v));
            }
            for skip in 0..clique.len() {
                let mut fresh: Vec<usize> =
                    clique.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &c)| c).collect();
                fresh.push(v);
                cliques.push(fresh);
            }
            steps.push(CertStep { vertex: v, clique });
        }
        let kept = ktree_edges.iter().copied().filter(|_| rng.gen_bool(edge_keep_prob));
        let graph = Graph::from_edges_lossy(n, kept);
        if odd_girth(&graph) >= min_odd_girth {
            let roots = (0..=k).collect();
            let t = RootedPartialKTree { graph, k, roots, steps };
            debug_assert!(t.validate().is_ok());
            return Ok(t);
        }
    }
    Err(GenError::BudgetExhausted { attempts })
}

/// Builds a certificate for a graph of treewidth at most `k ∈ {1, 2}` by
/// greedy low-degree elimination, which is exact in this range. When
/// `roots` is given, those vertices are protected and become the root tuple
/// (the graph must admit a k-tree supergraph in which they form a clique);
/// otherwise the last `k+1` surviving vertices are used, ascending.
///
/// Returns `None` when the graph (plus the requested root clique) has
/// treewidth above `k`, or when `k >= 3`.
pub fn certify_low_treewidth(
    g: &Graph,
    k: usize,
    roots: Option<&[usize]>,
) -> Option<RootedPartialKTree> {
    if !(1..=2).contains(&k) {
        return None;
    }
    let n = g.vertex_count();
    if n < k + 1 {
        return None;
    }
    let mut protected = vec![false; n];
    if let Some(rs) = roots {
        if rs.len() != k + 1 || rs.iter().any(|&r| r >= n) {
            return None;
        }
        let set: BTreeSet<usize> = rs.iter().copied().collect();
        if set.len() != k + 1 {
            return None;
        }
        for &r in rs {
            protected[r] = true;
        }
    }
    // Working multigraph-as-simple adjacency; the root clique is forced in so
    // that elimination respects it.
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (u, v) in g.edges() {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    if let Some(rs) = roots {
        for (i, &u) in rs.iter().enumerate() {
            for &v in &rs[i + 1..] {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
    }
    let mut alive: BTreeSet<usize> = (0..n).collect();
    let mut eliminated: Vec<(usize, Vec<usize>)> = Vec::new();
    while alive.len() > k + 1 {
        let pick = alive
            .iter()
            .copied()
            .find(|&v| !protected[v] && adj[v].len() <= k);
        let v = match pick {
            Some(v) => v,
            None => return None,
        };
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        // Fill: eliminating a degree-k vertex makes its neighborhood a clique.
        if nbrs.len() == k && k == 2 && !adj[nbrs[0]].contains(&nbrs[1]) {
            adj[nbrs[0]].insert(nbrs[1]);
            adj[nbrs[1]].insert(nbrs[0]);
        }
        for &w in &nbrs {
            adj[w].remove(&v);
        }
        adj[v].clear();
        alive.remove(&v);
        eliminated.push((v, nbrs));
    }
    if let Some(rs) = roots {
        if alive.iter().any(|v| !protected[*v]) {
            return None;
        }
        build_from_elimination(g, k, rs.to_vec(), eliminated)
    } else {
        let rs: Vec<usize> = alive.into_iter().collect();
        build_from_elimination(g, k, rs, eliminated)
    }
}

fn build_from_elimination(
    g: &Graph,
    k: usize,
    roots: Vec<usize>,
    eliminated: Vec<(usize, Vec<usize>)>,
) -> Option<RootedPartialKTree> {
    let n = g.vertex_count();
    let mut builder = KTreeBuilder::new(k, n, &roots);
    for (v, nbrs) in eliminated.into_iter().rev() {
        let mut clique = nbrs;
        // Pad short attachments with vertices adjacent (in the k-tree built
        // so far) to everything chosen, so the attachment stays a clique.
        while clique.len() < k {
            let pad = (0..n).find(|&u| {
                builder.is_present(u)
                    && !clique.contains(&u)
                    && clique.iter().all(|&c| builder.adj[c].contains(&u))
            })?;
            clique.push(pad);
        }
        builder.attach(v, clique);
    }
    RootedPartialKTree::new(g.clone(), k, roots, builder.steps).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canonical_form;

    #[test]
    fn validate_examples() {
        // Single edge, k=1, empty certificate.
        let t = RootedPartialKTree::new(Graph::new(2, &[(0, 1)]).unwrap(), 1, vec![0, 1], vec![]);
        assert!(t.is_ok());

        // Triangle claimed with k=1: some edge is not covered.
        let tri = Graph::cycle(3);
        let bad = RootedPartialKTree::new(
            tri,
            1,
            vec![0, 1],
            vec![CertStep { vertex: 2, clique: vec![1] }],
        );
        assert!(matches!(bad, Err(KTreeViolation::EdgeNotCovered { .. })));

        // Path 0-1-2, k=1.
        let ok = RootedPartialKTree::new(
            Graph::path(3),
            1,
            vec![0, 1],
            vec![CertStep { vertex: 2, clique: vec![1] }],
        );
        assert!(ok.is_ok());
    }

    #[test]
    fn glue_examples() {
        // Two single edges glued: edges merge.
        let e = RootedPartialKTree::new(Graph::new(2, &[(0, 1)]).unwrap(), 1, vec![0, 1], vec![])
            .unwrap();
        let g = glue(&e, &e).unwrap();
        assert_eq!(g.graph().vertex_count(), 2);
        assert_eq!(g.graph().edge_count(), 1);

        // Two far-rooted length-2 paths glued: C4 with antipodal roots
        // (plus the shared isolated third root).
        let p = far_rooted_path(2);
        let g = glue(&p, &p).unwrap();
        assert_eq!(g.graph().vertex_count(), 5);
        let mut keep = alloc::vec![true; 5];
        keep[g.roots()[2]] = false;
        let (cycle_part, _) = g.graph().induced(&keep);
        assert_eq!(
            canonical_form(&cycle_part).unwrap(),
            canonical_form(&Graph::cycle(4)).unwrap()
        );
        let d = crate::graph::distances(g.graph(), &[g.roots()[0]]).unwrap();
        assert_eq!(d[g.roots()[1]], Dist::Fin(2));

        // k=2: two triangle-rooted empty graphs glue to 3 isolated roots.
        let iso = RootedPartialKTree::isolated(2);
        let g = glue(&iso, &iso).unwrap();
        assert_eq!(g.graph().vertex_count(), 3);
        assert_eq!(g.graph().edge_count(), 0);

        let e2 = RootedPartialKTree::isolated(2);
        assert!(matches!(glue(&e, &e2), Err(KTreeError::KMismatch { .. })));
    }

    #[test]
    fn split_p10() {
        // Path on 10 vertices, k=1, n=3: part sizes in [4,6].
        let t = RootedPartialKTree::path_on(10);
        let (a, b, map1, map2) = split_with_maps(&t, 3).unwrap();
        assert!(a.vertex_count() >= 4 && a.vertex_count() <= 6);
        a.validate().unwrap();
        b.validate().unwrap();
        // Gluing back gives P10 again.
        let (glued, _, _) = glue_with_maps(&a, &b).unwrap();
        assert_eq!(
            canonical_form(glued.graph()).unwrap(),
            canonical_form(&Graph::path(10)).unwrap()
        );
        // Every original edge survives in exactly one of the parts (or both
        // when inside the separator).
        for (u, v) in t.graph().edges() {
            let in1 = map1[u] != usize::MAX && map1[v] != usize::MAX;
            let in2 = map2[u] != usize::MAX && map2[v] != usize::MAX;
            assert!(in1 || in2);
            if in1 {
                assert!(a.graph().has_edge(map1[u], map1[v]));
            }
            if in2 {
                assert!(b.graph().has_edge(map2[u], map2[v]));
            }
        }
    }

    #[test]
    fn split_boundaries() {
        let t = RootedPartialKTree::path_on(9); // exactly 3n for n=3
        assert!(split(&t, 3).is_ok());
        let t = RootedPartialKTree::path_on(8); // 8 vertices < 9
        assert!(matches!(split(&t, 3), Err(KTreeError::TooSmall { .. })));
        let t = RootedPartialKTree::path_on(10);
        assert!(matches!(split(&t, 1), Err(KTreeError::SplitSizeTooSmall { .. })));
    }

    #[test]
    fn far_rooted_path_shape() {
        let t = far_rooted_path(3);
        t.validate().unwrap();
        assert_eq!(t.vertex_count(), 5);
        let d = crate::graph::distances(t.graph(), &[t.roots()[0]]).unwrap();
        assert_eq!(d[t.roots()[1]], Dist::Fin(3));
        assert_eq!(d[t.roots()[2]], Dist::Inf);
    }

    #[test]
    fn generator_respects_parameters() {
        // Full k-tree when every edge is kept.
        let t = random_partial_k_tree(2, 8, 1.0, Dist::Fin(3), 7).unwrap();
        t.validate().unwrap();
        assert_eq!(t.graph().edge_count(), 3 + 2 * 5); // k-tree has k(k+1)/2 + k(n-k-1) edges

        // Bipartite on demand.
        let t = random_partial_k_tree(2, 10, 0.6, Dist::Inf, 11).unwrap();
        assert_eq!(odd_girth(t.graph()), Dist::Inf);

        // Deterministic in the seed.
        let a = random_partial_k_tree(2, 8, 0.5, Dist::Fin(3), 42).unwrap();
        let b = random_partial_k_tree(2, 8, 0.5, Dist::Fin(3), 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn certify_small_treewidth() {
        // A tree certifies at k=1.
        let star = Graph::star(4);
        let t = certify_low_treewidth(&star, 1, None).unwrap();
        t.validate().unwrap();

        // C5 certifies at k=2 but not k=1.
        let c5 = Graph::cycle(5);
        assert!(certify_low_treewidth(&c5, 1, None).is_none());
        let t = certify_low_treewidth(&c5, 2, None).unwrap();
        t.validate().unwrap();

        // K4 does not certify at k=2.
        assert!(certify_low_treewidth(&Graph::complete(4), 2, None).is_none());

        // A path rooted at both endpoints plus one internal vertex.
        let p6 = Graph::path(6);
        let t = certify_low_treewidth(&p6, 2, Some(&[0, 5, 2])).unwrap();
        t.validate().unwrap();
        assert_eq!(t.roots(), &[0, 5, 2]);

        // Spider with three legs of length 2 rooted at the three leaves:
        // adding the root triangle creates a K4 minor, so there is no
        // witnessing 2-tree.
        let spider = Graph::new(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        assert!(certify_low_treewidth(&spider, 2, Some(&[2, 4, 6])).is_none());

        // Same obstruction for the star center plus all three leaves.
        let k13 = Graph::star(3);
        assert!(certify_low_treewidth(&k13, 2, Some(&[1, 2, 3])).is_none());
    }
}
