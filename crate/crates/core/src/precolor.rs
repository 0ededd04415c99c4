//! Root precolorings, the extendable-precoloring sets F(G), color spread
//! along paths, and the empirical extension-distance probe.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::circular::{
    is_pq_colorable, BagDp, PQParams, SolveError, DEFAULT_TABLE_LIMIT,
};
use crate::dist::Dist;
use crate::graph::{bipartition, distances, Graph};
use crate::ktree::RootedPartialKTree;

/// A partial color assignment to root indices `0..=k`. Unassigned roots are
/// unconstrained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Precoloring {
    p: u32,
    entries: BTreeMap<usize, u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrecolorError {
    ColorOutOfRange { index: usize, color: u32, p: u32 },
    IndexOutOfRange { index: usize, k: usize },
    NotBipartite { instance: usize },
    MarkedSetTooSmall { instance: usize, size: usize },
    EmptyCorpus,
    FSetTooLarge { needed: u128, limit: u64 },
}

impl fmt::Display for PrecolorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrecolorError::ColorOutOfRange { index, color, p } => {
                write!(f, "root {index} assigned color {color} >= p={p}")
            }
            PrecolorError::IndexOutOfRange { index, k } => {
                write!(f, "root index {index} out of range for k={k}")
            }
            PrecolorError::NotBipartite { instance } => {
                write!(f, "corpus instance {instance} is not bipartite")
            }
            PrecolorError::MarkedSetTooSmall { instance, size } => {
                write!(f, "corpus instance {instance} marks only {size} vertices (need 2)")
            }
            PrecolorError::EmptyCorpus => write!(f, "probe corpus is empty"),
            PrecolorError::FSetTooLarge { needed, limit } => {
                write!(f, "F-set over {needed} precolorings exceeds the limit {limit}")
            }
        }
    }
}

impl Precoloring {
    pub fn empty(p: u32) -> Precoloring {
        Precoloring { p, entries: BTreeMap::new() }
    }

    pub fn new(p: u32, entries: &[(usize, u32)]) -> Result<Precoloring, PrecolorError> {
        let mut c = Precoloring::empty(p);
        for &(index, color) in entries {
            c.assign(index, color)?;
        }
        Ok(c)
    }

    /// Total precoloring from the color tuple in root order.
    pub fn total(p: u32, colors: &[u32]) -> Result<Precoloring, PrecolorError> {
        let entries: Vec<(usize, u32)> =
            colors.iter().copied().enumerate().collect();
        Precoloring::new(p, &entries)
    }

    pub fn assign(&mut self, index: usize, color: u32) -> Result<(), PrecolorError> {
        if color >= self.p {
            return Err(PrecolorError::ColorOutOfRange { index, color, p: self.p });
        }
        self.entries.insert(index, color);
        Ok(())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn get(&self, index: usize) -> Option<u32> {
        self.entries.get(&index).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.entries.iter().map(|(&i, &c)| (i, c))
    }

    pub fn is_total(&self, k: usize) -> bool {
        (0..=k).all(|i| self.entries.contains_key(&i))
    }

    /// Maps root indices to graph vertices.
    fn on_vertices(&self, roots: &[usize]) -> Result<Vec<(usize, u32)>, PrecolorError> {
        let mut out = Vec::with_capacity(self.entries.len());
        for (&index, &color) in &self.entries {
            if index >= roots.len() {
                return Err(PrecolorError::IndexOutOfRange { index, k: roots.len() - 1 });
            }
            out.push((roots[index], color));
        }
        Ok(out)
    }
}

/// The set of all total root precolorings that extend to a (p,q)-coloring,
/// as a bitset over the `p^(k+1)` color tuples.
///
/// Indexing is mixed-radix little-endian in root order: the color of root 0
/// is the least significant digit. This layout is frozen; the CLI hex dump
/// and the gadget-table files rely on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FSet {
    k: usize,
    p: u32,
    bits: Vec<u64>,
}

impl FSet {
    pub fn size(k: usize, p: u32) -> u128 {
        (p as u128).pow(k as u32 + 1)
    }

    fn bit_len(k: usize, p: u32) -> usize {
        let total = Self::size(k, p);
        assert!(total <= usize::MAX as u128, "F-set too large to index");
        total as usize
    }

    pub fn new_empty(k: usize, p: u32) -> FSet {
        let len = Self::bit_len(k, p);
        FSet { k, p, bits: vec![0; len.div_ceil(64)] }
    }

    pub fn new_full(k: usize, p: u32) -> FSet {
        let mut s = Self::new_empty(k, p);
        for i in 0..Self::bit_len(k, p) {
            s.insert(i);
        }
        s
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        Self::bit_len(self.k, self.p)
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }

    pub fn insert(&mut self, index: usize) {
        self.bits[index / 64] |= 1 << (index % 64);
    }

    pub fn contains(&self, index: usize) -> bool {
        self.bits[index / 64] & (1 << (index % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len()
    }

    /// Index of a total color tuple in root order.
    pub fn index_of(&self, colors: &[u32]) -> usize {
        debug_assert_eq!(colors.len(), self.k + 1);
        let mut idx = 0usize;
        for &c in colors.iter().rev() {
            debug_assert!(c < self.p);
            idx = idx * self.p as usize + c as usize;
        }
        idx
    }

    /// Color tuple in root order for an index.
    pub fn colors_of(&self, mut index: usize) -> Vec<u32> {
        let mut colors = Vec::with_capacity(self.k + 1);
        for _ in 0..=self.k {
            colors.push((index % self.p as usize) as u32);
            index /= self.p as usize;
        }
        colors
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.contains(i))
    }

    pub fn is_subset_of(&self, other: &FSet) -> bool {
        assert_eq!((self.k, self.p), (other.k, other.p));
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn intersect(&self, other: &FSet) -> FSet {
        assert_eq!((self.k, self.p), (other.k, other.p));
        FSet {
            k: self.k,
            p: self.p,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect(),
        }
    }

    /// Image under shifting every color by +1 mod p.
    pub fn rotate(&self) -> FSet {
        self.map_colors(|c| (c + 1) % self.p)
    }

    /// Image under reflecting every color to (p - c) mod p.
    pub fn reflect(&self) -> FSet {
        self.map_colors(|c| (self.p - c) % self.p)
    }

    fn map_colors(&self, f: impl Fn(u32) -> u32) -> FSet {
        let mut out = FSet::new_empty(self.k, self.p);
        for i in self.members() {
            let mapped: Vec<u32> = self.colors_of(i).into_iter().map(&f).collect();
            out.insert(out.index_of(&mapped));
        }
        out
    }

    /// Little-endian hex dump of the bitset (bit `i` is precoloring `i`).
    pub fn to_hex(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        let mut remaining = self.len();
        for word in &self.bits {
            for byte in word.to_le_bytes() {
                if remaining == 0 {
                    break;
                }
                let _ = write!(s, "{byte:02x}");
                remaining = remaining.saturating_sub(8);
            }
        }
        s
    }

    pub fn from_hex(k: usize, p: u32, hex: &str) -> Option<FSet> {
        let mut out = FSet::new_empty(k, p);
        let bytes = hex.as_bytes();
        if bytes.len() % 2 != 0 {
            return None;
        }
        let nibble = |b: u8| -> Option<u64> {
            match b {
                b'0'..=b'9' => Some((b - b'0') as u64),
                b'a'..=b'f' => Some((b - b'a' + 10) as u64),
                b'A'..=b'F' => Some((b - b'A' + 10) as u64),
                _ => None,
            }
        };
        for (i, pair) in bytes.chunks(2).enumerate() {
            let val = nibble(pair[0])? * 16 + nibble(pair[1])?;
            let word = i / 8;
            if word >= out.bits.len() {
                if val != 0 {
                    return None;
                }
                continue;
            }
            out.bits[word] |= val << (8 * (i % 8));
        }
        Some(out)
    }
}

/// Does the (possibly partial) root precoloring extend to a full
/// (p,q)-coloring of the tree's graph?
pub fn extends(
    t: &RootedPartialKTree,
    c: &Precoloring,
    pq: PQParams,
) -> Result<bool, SolveError> {
    let partial = match c.on_vertices(t.roots()) {
        Ok(partial) => partial,
        Err(PrecolorError::IndexOutOfRange { index, k }) => {
            return Err(SolveError::VertexOutOfRange { v: index, n: k + 1 })
        }
        Err(_) => unreachable!("Precoloring construction already validated colors"),
    };
    is_pq_colorable_certified_or_plain(t, pq, &partial)
}

fn is_pq_colorable_certified_or_plain(
    t: &RootedPartialKTree,
    pq: PQParams,
    partial: &[(usize, u32)],
) -> Result<bool, SolveError> {
    match crate::circular::is_pq_colorable_certified(t, pq, partial, DEFAULT_TABLE_LIMIT) {
        Ok(out) => Ok(out.is_sat()),
        Err(SolveError::BudgetExhausted { .. }) => {
            Ok(is_pq_colorable(t.graph(), pq, partial)?.is_sat())
        }
        Err(e) => Err(e),
    }
}

/// F(G): one dynamic-programming sweep over the certificate computes the
/// full bitset of extendable total root precolorings.
pub fn f_set(t: &RootedPartialKTree, pq: PQParams, limit: u64) -> Result<FSet, SolveError> {
    let needed = FSet::size(t.k(), pq.p());
    if needed > limit as u128 {
        return Err(SolveError::BudgetExhausted { needed, limit });
    }
    let dp = BagDp::run(t, pq, &[], limit)?;
    let mut out = FSet::new_empty(t.k(), pq.p());
    let bag = dp.root_bag().to_vec();
    let p = pq.p() as usize;
    // Bag colorings are indexed over the sorted root bag; translate each
    // feasible one into root order.
    let positions: Vec<usize> = t
        .roots()
        .iter()
        .map(|r| bag.iter().position(|v| v == r).expect("roots form the root bag"))
        .collect();
    for (idx, &ok) in dp.root_table().iter().enumerate() {
        if !ok {
            continue;
        }
        let colors: Vec<u32> = positions
            .iter()
            .map(|&pos| ((idx / p.pow(pos as u32)) % p) as u32)
            .collect();
        out.insert(out.index_of(&colors));
    }
    Ok(out)
}

/// Set of colors reachable at the far end of a path of the given length
/// whose near end is precolored `start`, by iterating the constraint image.
pub fn spread(pq: PQParams, start: u32, length: usize) -> Result<Vec<u32>, SolveError> {
    if start >= pq.p() {
        return Err(SolveError::InvalidPrecoloring { vertex: 0, color: start, p: pq.p() });
    }
    let mut cur: u64 = 1 << start;
    for _ in 0..length {
        let mut next = 0u64;
        let mut rest = cur;
        while rest != 0 {
            let c = rest.trailing_zeros();
            rest &= rest - 1;
            next |= pq.allowed_mask(c);
        }
        cur = next;
    }
    Ok((0..pq.p()).filter(|&c| cur & (1 << c) != 0).collect())
}

/// One probe instance: a bipartite graph with a marked vertex set whose
/// total precolorings are tested for extension.
#[derive(Debug, Clone)]
pub struct ProbeInstance {
    pub graph: Graph,
    pub marked: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct ProbeWitness {
    pub instance: usize,
    pub colors: Vec<u32>,
    pub min_pairwise_distance: u64,
}

#[derive(Debug, Clone)]
pub struct ProbeOutcome {
    /// Smallest d such that no corpus instance with pairwise marked
    /// distances ≥ d has a non-extendable precoloring.
    pub d_hat: u64,
    /// A failing precoloring at distance d̂ - 1, when d̂ > 1.
    pub witness: Option<ProbeWitness>,
    pub instances_checked: usize,
    pub failing_instances: usize,
}

/// Empirically probes the extension distance: for each corpus instance,
/// every total precoloring of the marked set is tested; d̂ is one more than
/// the largest min-pairwise-distance among failing instances (1 if nothing
/// fails). A falsifier, not a prover — d̂ is corpus-relative.
pub fn probe_extension_distance(
    pq: PQParams,
    corpus: &[ProbeInstance],
) -> Result<ProbeOutcome, PrecolorError> {
    if corpus.is_empty() {
        return Err(PrecolorError::EmptyCorpus);
    }
    let mut d_hat = 1u64;
    let mut witness: Option<ProbeWitness> = None;
    let mut failing = 0usize;
    for (i, inst) in corpus.iter().enumerate() {
        if bipartition(&inst.graph).is_err() {
            return Err(PrecolorError::NotBipartite { instance: i });
        }
        if inst.marked.len() < 2 {
            return Err(PrecolorError::MarkedSetTooSmall { instance: i, size: inst.marked.len() });
        }
        let min_dist = min_pairwise_distance(&inst.graph, &inst.marked);
        let min_dist_fin = match min_dist {
            Dist::Fin(d) => d,
            // All marked pairs disconnected: singleton precolorings per
            // component always extend on bipartite graphs.
            Dist::Inf => continue,
        };
        if let Some(colors) = find_failing_precoloring(pq, inst) {
            failing += 1;
            if min_dist_fin + 1 > d_hat {
                d_hat = min_dist_fin + 1;
                witness = Some(ProbeWitness {
                    instance: i,
                    colors,
                    min_pairwise_distance: min_dist_fin,
                });
            }
        }
    }
    Ok(ProbeOutcome { d_hat, witness, instances_checked: corpus.len(), failing_instances: failing })
}

fn min_pairwise_distance(g: &Graph, marked: &[usize]) -> Dist {
    let mut best = Dist::Inf;
    for (i, &u) in marked.iter().enumerate() {
        let d = distances(g, &[u]).expect("marked vertices in range");
        for &v in &marked[i + 1..] {
            best = best.min(d[v]);
        }
    }
    best
}

fn find_failing_precoloring(pq: PQParams, inst: &ProbeInstance) -> Option<Vec<u32>> {
    let p = pq.p() as usize;
    let m = inst.marked.len();
    let total = p.checked_pow(m as u32).expect("marked precoloring space fits");
    let mut colors = vec![0u32; m];
    for idx in 0..total {
        let mut rem = idx;
        for slot in 0..m {
            colors[slot] = (rem % p) as u32;
            rem /= p;
        }
        let partial: Vec<(usize, u32)> =
            inst.marked.iter().copied().zip(colors.iter().copied()).collect();
        let sat = is_pq_colorable(&inst.graph, pq, &partial)
            .expect("validated precoloring")
            .is_sat();
        if !sat {
            return Some(colors);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pq52() -> PQParams {
        PQParams::new(5, 2).unwrap()
    }

    #[test]
    fn extends_examples() {
        let edge = RootedPartialKTree::path_on(2);
        let same = Precoloring::total(5, &[0, 0]).unwrap();
        assert!(!extends(&edge, &same, pq52()).unwrap());

        // Endpoints of a length-2 path colored (0,1): the middle takes 3.
        let p2 = crate::ktree::far_rooted_path(2);
        let c = Precoloring::new(5, &[(0, 0), (1, 1)]).unwrap();
        assert!(extends(&p2, &c, pq52()).unwrap());

        // A single precolored root on a bipartite tree always extends.
        let single = Precoloring::new(5, &[(0, 3)]).unwrap();
        for len in 1..6 {
            let t = crate::ktree::far_rooted_path(len);
            assert!(extends(&t, &single, pq52()).unwrap());
        }
    }

    #[test]
    fn f_set_examples() {
        let limit = DEFAULT_TABLE_LIMIT;
        // Two isolated roots: everything extends.
        let iso = RootedPartialKTree::isolated(1);
        let fs = f_set(&iso, pq52(), limit).unwrap();
        assert_eq!(fs.count(), 25);
        assert!(fs.is_full());

        // Edge between the roots: exactly the pairs with |a-b| in {2,3}.
        let edge = RootedPartialKTree::path_on(2);
        let fs = f_set(&edge, pq52(), limit).unwrap();
        assert_eq!(fs.count(), 10);
        for a in 0..5u32 {
            for b in 0..5u32 {
                let want = matches!(a.abs_diff(b), 2 | 3);
                assert_eq!(fs.contains(fs.index_of(&[a, b])), want);
            }
        }

        // Endpoints of a length-2 path (third root free): the endpoint pair
        // must sit at circular distance at most 1, giving 15 of 25 pairs,
        // each with all 5 colors for the free root.
        let p2 = crate::ktree::far_rooted_path(2);
        let fs = f_set(&p2, pq52(), limit).unwrap();
        assert_eq!(fs.count(), 75);
        for a in 0..5u32 {
            for b in 0..5u32 {
                let circ = a.abs_diff(b).min(5 - a.abs_diff(b));
                for c in 0..5u32 {
                    assert_eq!(fs.contains(fs.index_of(&[a, b, c])), circ <= 1);
                }
            }
        }
    }

    #[test]
    fn f_set_budget() {
        let iso = RootedPartialKTree::isolated(1);
        assert!(matches!(
            f_set(&iso, pq52(), 10),
            Err(SolveError::BudgetExhausted { .. })
        ));
    }

    #[test]
    fn index_round_trip() {
        let fs = FSet::new_empty(2, 5);
        for idx in 0..125 {
            assert_eq!(fs.index_of(&fs.colors_of(idx)), idx);
        }
        // Little-endian in root order: root 0 is the least significant digit.
        assert_eq!(fs.index_of(&[3, 0, 0]), 3);
        assert_eq!(fs.index_of(&[0, 1, 0]), 5);
        assert_eq!(fs.index_of(&[0, 0, 1]), 25);
    }

    #[test]
    fn hex_round_trip() {
        let edge = RootedPartialKTree::path_on(2);
        let fs = f_set(&edge, pq52(), DEFAULT_TABLE_LIMIT).unwrap();
        let hex = fs.to_hex();
        let back = FSet::from_hex(1, 5, &hex).unwrap();
        assert_eq!(fs, back);
    }

    #[test]
    fn spread_table_for_5_2() {
        let pq = pq52();
        assert_eq!(spread(pq, 0, 1).unwrap(), vec![2, 3]);
        assert_eq!(spread(pq, 0, 2).unwrap(), vec![0, 1, 4]);
        assert_eq!(spread(pq, 0, 3).unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(spread(pq, 0, 4).unwrap(), vec![0, 1, 2, 3, 4]);
        assert_eq!(spread(pq, 0, 0).unwrap(), vec![0]);
    }

    #[test]
    fn probe_on_paths() {
        // Paths P2..P8 with both endpoints marked: the only failures are at
        // distance ≤ 3, so d̂ = 4.
        let corpus: Vec<ProbeInstance> = (1..8)
            .map(|len| ProbeInstance {
                graph: Graph::path(len + 1),
                marked: vec![0, len],
            })
            .collect();
        let out = probe_extension_distance(pq52(), &corpus).unwrap();
        assert_eq!(out.d_hat, 4);
        let w = out.witness.unwrap();
        assert_eq!(w.min_pairwise_distance, 3);

        // An all-extendable corpus probes to 1.
        let easy = vec![ProbeInstance { graph: Graph::path(6), marked: vec![0, 5] }];
        let out = probe_extension_distance(pq52(), &easy).unwrap();
        assert_eq!(out.d_hat, 1);
        assert!(out.witness.is_none());

        // Marked pair at distance 1 with edge-incompatible colors probes ≥ 2.
        let tight = vec![ProbeInstance { graph: Graph::path(2), marked: vec![0, 1] }];
        let out = probe_extension_distance(pq52(), &tight).unwrap();
        assert_eq!(out.d_hat, 2);

        assert!(matches!(
            probe_extension_distance(pq52(), &[]),
            Err(PrecolorError::EmptyCorpus)
        ));
        let bad = vec![ProbeInstance { graph: Graph::cycle(5), marked: vec![0, 2] }];
        assert!(matches!(
            probe_extension_distance(pq52(), &bad),
            Err(PrecolorError::NotBipartite { .. })
        ));
    }
}
