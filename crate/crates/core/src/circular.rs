//! Exact circular (p,q)-colorability, the circular chromatic number, and
//! homomorphisms to odd cycles.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::Graph;
use crate::ktree::{BagTree, RootedPartialKTree};

/// Colors in a (p,q)-coloring are drawn from `{0,…,p-1}`; adjacent colors
/// `a`, `b` must satisfy `q ≤ |a-b| ≤ p-q`. The pair is kept as given —
/// no gcd normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PQParams {
    p: u32,
    q: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    ZeroParam,
    PTooLarge { p: u32, cap: u32 },
    InvalidPrecoloring { vertex: usize, color: u32, p: u32 },
    ConflictingPrecoloring { vertex: usize },
    VertexOutOfRange { v: usize, n: usize },
    TooLarge { n: usize, cap: usize },
    BudgetExhausted { needed: u128, limit: u64 },
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::ZeroParam => write!(f, "p and q must be at least 1"),
            SolveError::PTooLarge { p, cap } => write!(f, "p={p} exceeds the solver cap of {cap}"),
            SolveError::InvalidPrecoloring { vertex, color, p } => {
                write!(f, "precolored vertex {vertex} has color {color} >= p={p}")
            }
            SolveError::ConflictingPrecoloring { vertex } => {
                write!(f, "vertex {vertex} precolored with two different colors")
            }
            SolveError::VertexOutOfRange { v, n } => {
                write!(f, "vertex {v} out of range for graph on {n} vertices")
            }
            SolveError::TooLarge { n, cap } => {
                write!(f, "graph on {n} vertices exceeds the cap of {cap}")
            }
            SolveError::BudgetExhausted { needed, limit } => {
                write!(f, "dynamic program needs {needed} states per bag, limit is {limit}")
            }
        }
    }
}

/// Solver-side cap on `p`: color sets are kept as single machine words.
pub const MAX_COLORS: u32 = 64;

/// Default cap on the per-bag state count `p^(k+1)` of the certificate DP.
pub const DEFAULT_TABLE_LIMIT: u64 = 1_000_000;

impl PQParams {
    pub fn new(p: u32, q: u32) -> Result<PQParams, SolveError> {
        if p == 0 || q == 0 {
            return Err(SolveError::ZeroParam);
        }
        if p > MAX_COLORS {
            return Err(SolveError::PTooLarge { p, cap: MAX_COLORS });
        }
        Ok(PQParams { p, q })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Strictly above 2, i.e. `p > 2q`.
    pub fn ratio_exceeds_two(&self) -> bool {
        self.p > 2 * self.q
    }

    /// The edge constraint on a color pair.
    pub fn allows(&self, a: u32, b: u32) -> bool {
        let d = a.abs_diff(b);
        self.q <= d && d + self.q <= self.p
    }

    /// Bitmask of colors allowed next to `c`.
    pub fn allowed_mask(&self, c: u32) -> u64 {
        let mut mask = 0u64;
        for b in 0..self.p {
            if self.allows(c, b) {
                mask |= 1 << b;
            }
        }
        mask
    }

    pub fn full_mask(&self) -> u64 {
        if self.p == 64 {
            u64::MAX
        } else {
            (1u64 << self.p) - 1
        }
    }
}

impl fmt::Display for PQParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// A total (p,q)-coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircularColoring {
    pub assignment: Vec<u32>,
}

impl CircularColoring {
    /// Re-checks the edge constraint for every edge.
    pub fn verify(&self, g: &Graph, pq: PQParams) -> bool {
        self.assignment.len() == g.vertex_count()
            && self.assignment.iter().all(|&c| c < pq.p())
            && g.edges().all(|(u, v)| pq.allows(self.assignment[u], self.assignment[v]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Colored(CircularColoring),
    Unsat,
}

impl SolveOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveOutcome::Colored(_))
    }

    pub fn witness(&self) -> Option<&CircularColoring> {
        match self {
            SolveOutcome::Colored(c) => Some(c),
            SolveOutcome::Unsat => None,
        }
    }
}

fn normalize_partial(
    n: usize,
    p: u32,
    partial: &[(usize, u32)],
) -> Result<Vec<Option<u32>>, SolveError> {
    let mut fixed = vec![None; n];
    for &(v, c) in partial {
        if v >= n {
            return Err(SolveError::VertexOutOfRange { v, n });
        }
        if c >= p {
            return Err(SolveError::InvalidPrecoloring { vertex: v, color: c, p });
        }
        match fixed[v] {
            None => fixed[v] = Some(c),
            Some(prev) if prev == c => {}
            Some(_) => return Err(SolveError::ConflictingPrecoloring { vertex: v }),
        }
    }
    Ok(fixed)
}

/// Decides (p,q)-colorability extending a partial vertex precoloring, by
/// backtracking with forward checking in a degeneracy order.
pub fn is_pq_colorable(
    g: &Graph,
    pq: PQParams,
    partial: &[(usize, u32)],
) -> Result<SolveOutcome, SolveError> {
    let n = g.vertex_count();
    let fixed = normalize_partial(n, pq.p(), partial)?;
    // Two precolored endpoints of an edge must already satisfy it.
    for (u, v) in g.edges() {
        if let (Some(a), Some(b)) = (fixed[u], fixed[v]) {
            if !pq.allows(a, b) {
                return Ok(SolveOutcome::Unsat);
            }
        }
    }
    let masks: Vec<u64> = (0..pq.p()).map(|c| pq.allowed_mask(c)).collect();
    let mut domains: Vec<u64> = vec![pq.full_mask(); n];
    for v in 0..n {
        if let Some(c) = fixed[v] {
            domains[v] = 1u64 << c;
        }
    }
    // Seed propagation from the precolored vertices.
    for v in 0..n {
        if let Some(c) = fixed[v] {
            for &w in g.neighbors(v) {
                if fixed[w].is_none() {
                    domains[w] &= masks[c as usize];
                }
            }
        }
    }
    if domains.iter().any(|&d| d == 0) {
        return Ok(SolveOutcome::Unsat);
    }
    let mut assignment: Vec<Option<u32>> = fixed.clone();
    if solve_rec(g, &masks, &mut domains, &mut assignment) {
        let colors: Vec<u32> = assignment.into_iter().map(|c| c.unwrap()).collect();
        let witness = CircularColoring { assignment: colors };
        debug_assert!(witness.verify(g, pq));
        Ok(SolveOutcome::Colored(witness))
    } else {
        Ok(SolveOutcome::Unsat)
    }
}

fn solve_rec(
    g: &Graph,
    masks: &[u64],
    domains: &mut Vec<u64>,
    assignment: &mut Vec<Option<u32>>,
) -> bool {
    // Most-constrained vertex first; ties by index.
    let mut pick = None;
    let mut best = u32::MAX;
    for v in 0..g.vertex_count() {
        if assignment[v].is_none() {
            let size = domains[v].count_ones();
            if size < best {
                best = size;
                pick = Some(v);
                if size <= 1 {
                    break;
                }
            }
        }
    }
    let v = match pick {
        Some(v) => v,
        None => return true,
    };
    let candidates = domains[v];
    let mut rest = candidates;
    while rest != 0 {
        let c = rest.trailing_zeros();
        rest &= rest - 1;
        assignment[v] = Some(c);
        let saved = domains.clone();
        domains[v] = 1u64 << c;
        let mut dead = false;
        for &w in g.neighbors(v) {
            if assignment[w].is_none() {
                domains[w] &= masks[c as usize];
                if domains[w] == 0 {
                    dead = true;
                    break;
                }
            }
        }
        if !dead && solve_rec(g, masks, domains, assignment) {
            return true;
        }
        *domains = saved;
        assignment[v] = None;
    }
    false
}

/// Decides (p,q)-colorability by dynamic programming over the certificate's
/// bag tree, keyed by bag colorings. State count per bag is `p^(k+1)`;
/// refuses beyond `table_limit`.
pub fn is_pq_colorable_certified(
    t: &RootedPartialKTree,
    pq: PQParams,
    partial: &[(usize, u32)],
    table_limit: u64,
) -> Result<SolveOutcome, SolveError> {
    let dp = BagDp::run(t, pq, partial, table_limit)?;
    match dp.extract_witness() {
        Some(assignment) => {
            let witness = CircularColoring { assignment };
            debug_assert!(witness.verify(t.graph(), pq));
            Ok(SolveOutcome::Colored(witness))
        }
        None => Ok(SolveOutcome::Unsat),
    }
}

/// Bottom-up feasibility tables over the bag tree, shared by the certified
/// solver and the F-set sweep.
pub(crate) struct BagDp<'a> {
    t: &'a RootedPartialKTree,
    pq: PQParams,
    bags: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
    /// feasible[b][idx]: bag coloring `idx` (mixed radix over the sorted bag)
    /// satisfies local edges, the precoloring, and some extension into every
    /// child subtree.
    feasible: Vec<Vec<bool>>,
}

impl<'a> BagDp<'a> {
    pub fn run(
        t: &'a RootedPartialKTree,
        pq: PQParams,
        partial: &[(usize, u32)],
        table_limit: u64,
    ) -> Result<BagDp<'a>, SolveError> {
        let n = t.graph().vertex_count();
        let fixed = normalize_partial(n, pq.p(), partial)?;
        let dim = t.k() + 1;
        let states = (pq.p() as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
        if states > table_limit as u128 {
            return Err(SolveError::BudgetExhausted { needed: states, limit: table_limit });
        }
        let states = states as usize;
        let tree = BagTree::from_tree(t);
        let children = tree.children();
        let bags = tree.bags;
        let mut feasible: Vec<Vec<bool>> = vec![Vec::new(); bags.len()];
        let p = pq.p();
        for b in (0..bags.len()).rev() {
            let bag = &bags[b];
            let mut table = vec![false; states];
            let mut colors = vec![0u32; bag.len()];
            'state: for idx in 0..states {
                let mut rem = idx;
                for slot in 0..bag.len() {
                    colors[slot] = (rem % p as usize) as u32;
                    rem /= p as usize;
                }
                for (slot, &v) in bag.iter().enumerate() {
                    if let Some(c) = fixed[v] {
                        if colors[slot] != c {
                            continue 'state;
                        }
                    }
                    for (slot2, &w) in bag.iter().enumerate().skip(slot + 1) {
                        if t.graph().has_edge(v, w) && !pq.allows(colors[slot], colors[slot2]) {
                            continue 'state;
                        }
                    }
                }
                table[idx] = true;
            }
            // Child constraint: some child coloring must agree on the shared
            // vertices.
            for &c in &children[b] {
                let shared: Vec<usize> =
                    bags[c].iter().copied().filter(|v| bag.contains(v)).collect();
                let allowed = project(&bags[c], &feasible[c], &shared, p);
                let positions: Vec<usize> =
                    shared.iter().map(|v| bag.iter().position(|x| x == v).unwrap()).collect();
                for (idx, slot) in table.iter_mut().enumerate() {
                    if !*slot {
                        continue;
                    }
                    let mut key = 0usize;
                    for (rank, &pos) in positions.iter().enumerate() {
                        let color = (idx / (p as usize).pow(pos as u32)) % p as usize;
                        key += color * (p as usize).pow(rank as u32);
                    }
                    if !allowed[key] {
                        *slot = false;
                    }
                }
            }
            feasible[b] = table;
        }
        Ok(BagDp { t, pq, bags, children, feasible })
    }

    /// Feasible colorings of the root bag, indexed mixed-radix over the
    /// sorted root bag.
    pub fn root_table(&self) -> &[bool] {
        &self.feasible[0]
    }

    pub fn root_bag(&self) -> &[usize] {
        &self.bags[0]
    }

    /// Lexicographically-least total coloring, if any: pick the least
    /// feasible root coloring and descend, keeping child bags consistent on
    /// shared vertices.
    pub fn extract_witness(&self) -> Option<Vec<u32>> {
        let root_idx = self.feasible[0].iter().position(|&ok| ok)?;
        let n = self.t.graph().vertex_count();
        let p = self.pq.p() as usize;
        let mut colors: Vec<Option<u32>> = vec![None; n];
        let mut stack = vec![(0usize, root_idx)];
        while let Some((b, idx)) = stack.pop() {
            let bag = &self.bags[b];
            for (slot, &v) in bag.iter().enumerate() {
                let c = ((idx / p.pow(slot as u32)) % p) as u32;
                debug_assert!(colors[v].map_or(true, |prev| prev == c));
                colors[v] = Some(c);
            }
            for &c in &self.children[b] {
                let child_bag = &self.bags[c];
                let idx_child = (0..self.feasible[c].len())
                    .find(|&ci| {
                        if !self.feasible[c][ci] {
                            return false;
                        }
                        child_bag.iter().enumerate().all(|(slot, &v)| {
                            let col = ((ci / p.pow(slot as u32)) % p) as u32;
                            colors[v].map_or(true, |assigned| assigned == col)
                        })
                    })
                    .expect("feasible parent state has a consistent child state");
                stack.push((c, idx_child));
            }
        }
        // Vertices outside every bag cannot exist: each vertex is introduced
        // by its certificate bag.
        Some(colors.into_iter().map(|c| c.expect("bag tree covers all vertices")).collect())
    }

}

/// Projects a bag's feasible table onto a subset of its vertices: for each
/// assignment of the subset, is some feasible bag coloring consistent?
fn project(bag: &[usize], table: &[bool], subset: &[usize], p: u32) -> Vec<bool> {
    let p = p as usize;
    let positions: Vec<usize> =
        subset.iter().map(|v| bag.iter().position(|x| x == v).unwrap()).collect();
    let mut out = vec![false; p.pow(subset.len() as u32)];
    for (idx, &ok) in table.iter().enumerate() {
        if !ok {
            continue;
        }
        let mut key = 0usize;
        for (rank, &pos) in positions.iter().enumerate() {
            let color = (idx / p.pow(pos as u32)) % p;
            key += color * p.pow(rank as u32);
        }
        out[key] = true;
    }
    out
}

/// A reduced non-negative fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Frac {
    num: u64,
    den: u64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Frac {
    pub fn new(num: u64, den: u64) -> Frac {
        assert!(den != 0, "fraction with zero denominator");
        let g = gcd(num, den).max(1);
        Frac { num: num / g, den: den / g }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn ceil(&self) -> u64 {
        self.num.div_ceil(self.den)
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frac {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Exact circular chromatic number.
///
/// Conventions: 1 for edgeless graphs, 2 for bipartite graphs with an edge.
/// Otherwise the reduced fractions `p/q` with `p ≤ |V|` are swept in
/// increasing value; the first satisfiable one is the minimum.
pub fn circular_chromatic_number(g: &Graph) -> Frac {
    if g.edge_count() == 0 {
        return Frac::new(1, 1);
    }
    let og = crate::graph::odd_girth(g);
    let lower = match og {
        crate::dist::Dist::Inf => return Frac::new(2, 1),
        crate::dist::Dist::Fin(len) => Frac::new(len, len / 2),
    };
    let upper = Frac::new(greedy_color_count(g) as u64, 1);
    let n = g.vertex_count() as u64;
    let mut candidates: Vec<Frac> = Vec::new();
    for p in 3..=n {
        for q in 1..=(p - 1) / 2 {
            if gcd(p, q) != 1 {
                continue;
            }
            let f = Frac::new(p, q);
            if f >= lower && f <= upper {
                candidates.push(f);
            }
        }
    }
    candidates.sort();
    for f in candidates {
        let pq = PQParams::new(f.num as u32, f.den as u32).expect("p ≤ |V| fits the solver");
        if is_pq_colorable(g, pq, &[]).expect("no precoloring").is_sat() {
            return f;
        }
    }
    unreachable!("the greedy chromatic bound is always attained")
}

fn greedy_color_count(g: &Graph) -> u32 {
    let n = g.vertex_count();
    let mut color = vec![u32::MAX; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| core::cmp::Reverse(g.degree(v)));
    let mut used = 0;
    for &v in &order {
        let mut taken = 0u64;
        for &w in g.neighbors(v) {
            if color[w] != u32::MAX && color[w] < 64 {
                taken |= 1 << color[w];
            }
        }
        let c = (!taken).trailing_zeros();
        color[v] = c;
        used = used.max(c + 1);
    }
    used.max(1)
}

/// Cap for the exact chromatic-number oracle.
pub const CHROMATIC_CAP: usize = 14;

/// Exact chromatic number by branch and bound, for oracle use on graphs of
/// at most [`CHROMATIC_CAP`] vertices.
pub fn chromatic_number(g: &Graph) -> Result<u32, SolveError> {
    let n = g.vertex_count();
    if n > CHROMATIC_CAP {
        return Err(SolveError::TooLarge { n, cap: CHROMATIC_CAP });
    }
    if n == 0 {
        return Ok(0);
    }
    if g.edge_count() == 0 {
        return Ok(1);
    }
    let lb = greedy_clique(g).len() as u32;
    let ub = greedy_color_count(g);
    for k in lb..=ub {
        if k_colorable(g, k) {
            return Ok(k);
        }
    }
    Ok(ub)
}

fn greedy_clique(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| core::cmp::Reverse(g.degree(v)));
    let mut clique: Vec<usize> = Vec::new();
    for &v in &order {
        if clique.iter().all(|&u| g.has_edge(u, v)) {
            clique.push(v);
        }
    }
    clique
}

fn k_colorable(g: &Graph, k: u32) -> bool {
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| core::cmp::Reverse(g.degree(v)));
    let mut color = vec![u32::MAX; n];
    fn rec(g: &Graph, order: &[usize], color: &mut [u32], depth: usize, used: u32, k: u32) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        let mut taken = 0u64;
        for &w in g.neighbors(v) {
            if color[w] != u32::MAX {
                taken |= 1 << color[w];
            }
        }
        // Symmetry breaking: at most one brand-new color.
        let cap = (used + 1).min(k);
        for c in 0..cap {
            if taken & (1 << c) == 0 {
                color[v] = c;
                if rec(g, order, color, depth + 1, used.max(c + 1), k) {
                    return true;
                }
                color[v] = u32::MAX;
            }
        }
        false
    }
    rec(g, &order, &mut color, 0, 0, k)
}

/// Is there a graph homomorphism `g → C_{2t+1}`?
///
/// Direct backtracking over vertex images, independent of the (p,q)-solver
/// so the two can cross-check each other.
pub fn hom_to_odd_cycle(g: &Graph, t: u32) -> bool {
    assert!(t >= 1, "target cycle needs at least 3 vertices");
    let cycle_len = 2 * t as usize + 1;
    let n = g.vertex_count();
    if n == 0 {
        return true;
    }
    // Image adjacency masks for the odd cycle.
    let nbr_mask: Vec<u64> = (0..cycle_len)
        .map(|v| {
            let prev = (v + cycle_len - 1) % cycle_len;
            let next = (v + 1) % cycle_len;
            (1u64 << prev) | (1u64 << next)
        })
        .collect();
    let full = (1u64 << cycle_len) - 1;
    let mut domains = vec![full; n];
    let mut image: Vec<Option<u32>> = vec![None; n];
    hom_rec(g, &nbr_mask, &mut domains, &mut image)
}

fn hom_rec(
    g: &Graph,
    nbr_mask: &[u64],
    domains: &mut Vec<u64>,
    image: &mut Vec<Option<u32>>,
) -> bool {
    let mut pick = None;
    let mut best = u32::MAX;
    for v in 0..g.vertex_count() {
        if image[v].is_none() {
            let size = domains[v].count_ones();
            if size < best {
                best = size;
                pick = Some(v);
                if size <= 1 {
                    break;
                }
            }
        }
    }
    let v = match pick {
        Some(v) => v,
        None => return true,
    };
    let mut rest = domains[v];
    while rest != 0 {
        let target = rest.trailing_zeros();
        rest &= rest - 1;
        image[v] = Some(target);
        let saved = domains.clone();
        domains[v] = 1u64 << target;
        let mut dead = false;
        for &w in g.neighbors(v) {
            if image[w].is_none() {
                domains[w] &= nbr_mask[target as usize];
                if domains[w] == 0 {
                    dead = true;
                    break;
                }
            }
        }
        if !dead && hom_rec(g, nbr_mask, domains, image) {
            return true;
        }
        *domains = saved;
        image[v] = None;
    }
    false
}

/// Breadth-first vertex order (used by corpus builders that want stable
/// solver behavior; exposed for reuse).
pub fn bfs_order(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::new();
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::Dist;
    use crate::ktree::{certify_low_treewidth, random_partial_k_tree};

    #[test]
    fn pq_examples() {
        let pq = PQParams::new(5, 2).unwrap();
        // C5 is (5,2)-colorable and the witness verifies.
        let out = is_pq_colorable(&Graph::cycle(5), pq, &[]).unwrap();
        assert!(out.witness().unwrap().verify(&Graph::cycle(5), pq));

        // K3 is not (5,2)-colorable: brute force over all 125 assignments.
        let k3 = Graph::complete(3);
        assert!(!is_pq_colorable(&k3, pq, &[]).unwrap().is_sat());
        let mut brute_sat = false;
        for a in 0..5 {
            for b in 0..5 {
                for c in 0..5 {
                    let col = CircularColoring { assignment: alloc::vec![a, b, c] };
                    brute_sat |= col.verify(&k3, pq);
                }
            }
        }
        assert!(!brute_sat);

        // Single edge with (2,1).
        let pq21 = PQParams::new(2, 1).unwrap();
        let edge = Graph::new(2, &[(0, 1)]).unwrap();
        let out = is_pq_colorable(&edge, pq21, &[]).unwrap();
        let w = out.witness().unwrap();
        assert_ne!(w.assignment[0], w.assignment[1]);
    }

    #[test]
    fn precoloring_paths() {
        let pq = PQParams::new(5, 2).unwrap();
        let edge = Graph::new(2, &[(0, 1)]).unwrap();
        assert!(!is_pq_colorable(&edge, pq, &[(0, 0), (1, 0)]).unwrap().is_sat());
        assert!(is_pq_colorable(&edge, pq, &[(0, 0), (1, 2)]).unwrap().is_sat());
        assert!(matches!(
            is_pq_colorable(&edge, pq, &[(0, 9)]),
            Err(SolveError::InvalidPrecoloring { .. })
        ));
        assert!(matches!(
            is_pq_colorable(&edge, pq, &[(0, 0), (0, 1)]),
            Err(SolveError::ConflictingPrecoloring { .. })
        ));
    }

    #[test]
    fn chi_c_examples() {
        assert_eq!(circular_chromatic_number(&Graph::cycle(5)), Frac::new(5, 2));
        assert_eq!(circular_chromatic_number(&Graph::cycle(4)), Frac::new(2, 1));
        assert_eq!(circular_chromatic_number(&Graph::complete(4)), Frac::new(4, 1));
        assert_eq!(circular_chromatic_number(&Graph::empty(3)), Frac::new(1, 1));
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_number(&Graph::cycle(5)).unwrap(), 3);
        assert_eq!(chromatic_number(&Graph::complete(4)).unwrap(), 4);
        assert_eq!(chromatic_number(&Graph::petersen()).unwrap(), 3);
        assert!(matches!(
            chromatic_number(&Graph::empty(15)),
            Err(SolveError::TooLarge { .. })
        ));
    }

    #[test]
    fn hom_examples() {
        assert!(hom_to_odd_cycle(&Graph::cycle(5), 2));
        assert!(!hom_to_odd_cycle(&Graph::cycle(5), 3));
        assert!(hom_to_odd_cycle(&Graph::cycle(6), 1));
        assert!(hom_to_odd_cycle(&Graph::path(7), 4));
        assert!(!hom_to_odd_cycle(&Graph::complete(4), 1));
    }

    #[test]
    fn certified_dp_matches_backtracking() {
        for seed in 0..30u64 {
            let k = 1 + (seed as usize) % 2;
            let t = random_partial_k_tree(k, 9, 0.6, Dist::Fin(3), seed).unwrap();
            for &(p, q) in &[(5u32, 2u32), (7, 3), (4, 1)] {
                let pq = PQParams::new(p, q).unwrap();
                let plain = is_pq_colorable(t.graph(), pq, &[]).unwrap().is_sat();
                let dp = is_pq_colorable_certified(&t, pq, &[], DEFAULT_TABLE_LIMIT)
                    .unwrap()
                    .is_sat();
                assert_eq!(plain, dp, "seed {seed} pq ({p},{q})");
            }
        }
    }

    #[test]
    fn certified_dp_with_precoloring() {
        let pq = PQParams::new(5, 2).unwrap();
        let c6 = certify_low_treewidth(&Graph::cycle(6), 2, Some(&[0, 2, 4])).unwrap();
        for a in 0..5u32 {
            for b in 0..5u32 {
                let partial = [(0usize, a), (3usize, b)];
                let plain = is_pq_colorable(c6.graph(), pq, &partial).unwrap().is_sat();
                let dp = is_pq_colorable_certified(&c6, pq, &partial, DEFAULT_TABLE_LIMIT)
                    .unwrap()
                    .is_sat();
                assert_eq!(plain, dp, "precolor ({a},{b})");
            }
        }
    }

    #[test]
    fn dp_budget_respected() {
        let t = RootedPartialKTree::path_on(4);
        let pq = PQParams::new(5, 2).unwrap();
        assert!(matches!(
            is_pq_colorable_certified(&t, pq, &[], 10),
            Err(SolveError::BudgetExhausted { .. })
        ));
    }
}
