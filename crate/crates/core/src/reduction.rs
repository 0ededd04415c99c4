//! The type-reduction construction: interval selection, the closeness
//! relation on roots, blue-neighborhood contraction, component discarding,
//! and the F-set inclusion verifier.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::circular::{PQParams, SolveError};
use crate::dist::Dist;
use crate::graph::{bipartition, contract_closed_neighborhood, distances, Graph};
use crate::ktree::{BagTree, KTreeBuilder, RootedPartialKTree};
use crate::precolor::f_set;
use crate::types::{leq, type_of, TypeMatrix};

/// Parameters of a reduction run. `D = 4d` drives the interval ladder.
///
/// The construction needs `d` to be a valid extension-distance constant for
/// the F-set inclusion to be guaranteed; smaller `d` still produces a
/// structurally correct reduction and is useful for exercising the
/// machinery, so `d ≥ 1` is accepted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionParams {
    pq: PQParams,
    d: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReduceError {
    RatioNotAboveTwo,
    ZeroDistance,
    NotBipartite,
    /// Closeness failed to be an equivalence relation: this would falsify
    /// the transitivity argument of the construction.
    NonEquivalenceCloseness { dump: String },
}

impl fmt::Display for ReduceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReduceError::RatioNotAboveTwo => write!(f, "reduction requires p/q > 2"),
            ReduceError::ZeroDistance => write!(f, "extension distance d must be at least 1"),
            ReduceError::NotBipartite => write!(f, "reduction input must be bipartite"),
            ReduceError::NonEquivalenceCloseness { dump } => {
                write!(f, "closeness is not an equivalence relation: {dump}")
            }
        }
    }
}

impl ReductionParams {
    pub fn new(pq: PQParams, d: u64) -> Result<ReductionParams, ReduceError> {
        if !pq.ratio_exceeds_two() {
            return Err(ReduceError::RatioNotAboveTwo);
        }
        if d == 0 {
            return Err(ReduceError::ZeroDistance);
        }
        Ok(ReductionParams { pq, d })
    }

    pub fn pq(&self) -> PQParams {
        self.pq
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn big_d(&self) -> u64 {
        4 * self.d
    }

    /// `D^e` as u128, saturating; interval bounds beyond any real distance
    /// compare as empty intervals.
    fn d_pow(&self, e: u32) -> u128 {
        let mut acc: u128 = 1;
        for _ in 0..e {
            acc = acc.saturating_mul(self.big_d() as u128);
        }
        acc
    }
}

/// Which qualifying blue vertex to contract next; the default is the
/// lowest current index. The reversed order exists to test that the result
/// is unique up to isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContractionOrder {
    LowestIndex,
    HighestIndex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionEvent {
    pub class: usize,
    /// Index of the contracted vertex in the working graph at the time.
    pub vertex: usize,
    pub vertices_before: usize,
}

#[derive(Debug, Clone)]
pub struct ReductionTrace {
    pub i0: usize,
    /// The intervals J^1 .. J^{i0}, inclusive bounds.
    pub intervals_checked: Vec<(u128, u128)>,
    /// Partition of the root indices 0..=k into closeness classes.
    pub classes: Vec<Vec<usize>>,
    pub contraction_log: Vec<ContractionEvent>,
    pub predicted_type: TypeMatrix,
}

/// Applies the type-reduction construction to a bipartite rooted partial
/// k-tree.
///
/// Output guarantees (asserted): the result is bipartite, carries a valid
/// certificate, has exactly the predicted type (original entries on close
/// pairs, `∞` elsewhere), the input type is ⪯ the output type, and every
/// finite output entry is at most `D^(k+1)²`.
pub fn reduce_type(
    t: &RootedPartialKTree,
    params: ReductionParams,
) -> Result<(RootedPartialKTree, ReductionTrace), ReduceError> {
    reduce_type_with_order(t, params, ContractionOrder::LowestIndex)
}

pub fn reduce_type_with_order(
    t: &RootedPartialKTree,
    params: ReductionParams,
    order: ContractionOrder,
) -> Result<(RootedPartialKTree, ReductionTrace), ReduceError> {
    let red_flags = match bipartition(t.graph()) {
        Ok(b) => b.red_flags(t.graph().vertex_count()),
        Err(_) => return Err(ReduceError::NotBipartite),
    };
    let k = t.k();
    let dim = k + 1;
    let m = type_of(t);

    // Interval ladder: J^i = [D^(i-1), D^i - 1]. The matrix has at most
    // k(k+1)/2 distinct entries, so some interval among the first (k+1)²
    // is free of them.
    let finite_entries: Vec<u128> =
        m.upper_triangle().iter().filter_map(|d| d.finite()).map(|d| d as u128).collect();
    let mut i0 = 0;
    let mut intervals = Vec::new();
    for i in 1..=dim * dim {
        let lo = params.d_pow(i as u32 - 1);
        let hi = params.d_pow(i as u32).saturating_sub(1);
        intervals.push((lo, hi));
        if !finite_entries.iter().any(|&e| lo <= e && e <= hi) {
            i0 = i;
            break;
        }
    }
    assert!(i0 >= 1, "an empty interval always exists among the first (k+1)^2");

    if i0 == 1 {
        let output = RootedPartialKTree::isolated(k);
        let predicted = TypeMatrix::all_infinite(k);
        let trace = ReductionTrace {
            i0,
            intervals_checked: intervals,
            classes: (0..dim).map(|i| vec![i]).collect(),
            contraction_log: Vec::new(),
            predicted_type: predicted.clone(),
        };
        debug_assert_eq!(type_of(&output), predicted);
        return Ok((output, trace));
    }

    let threshold = params.d_pow(i0 as u32 - 1);
    let close = |i: usize, j: usize| -> bool {
        i == j
            || match m.get(i, j) {
                Dist::Fin(d) => (d as u128) <= threshold,
                Dist::Inf => false,
            }
    };
    // The choice of i0 forces transitivity; a violation would falsify the
    // construction, so it is a hard error with a dump.
    for i in 0..dim {
        for j in 0..dim {
            for l in 0..dim {
                if close(i, j) && close(j, l) && !close(i, l) {
                    return Err(ReduceError::NonEquivalenceCloseness {
                        dump: format!(
                            "roots ({i},{j}) and ({j},{l}) close but ({i},{l}) is not; \
                             threshold {threshold}, type:\n{m}"
                        ),
                    });
                }
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..dim {
        match classes.iter_mut().find(|c| close(c[0], i)) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }

    // Work on one copy of the graph per class.
    let decomposition = BagTree::from_tree(t);
    let mut log = Vec::new();
    let mut blocks: Vec<ClassBlock> = Vec::new();
    for (ci, class) in classes.iter().enumerate() {
        let block = reduce_class(t, &decomposition, &red_flags, class, threshold, order, ci, &mut log);
        blocks.push(block);
    }

    // Assemble the disjoint union, rooted at the original root labels.
    let mut offset = vec![0usize; blocks.len()];
    let mut total = 0usize;
    for (ci, b) in blocks.iter().enumerate() {
        offset[ci] = total;
        total += b.graph.vertex_count();
    }
    let mut edges = Vec::new();
    for (ci, b) in blocks.iter().enumerate() {
        edges.extend(b.graph.edges().map(|(u, v)| (u + offset[ci], v + offset[ci])));
    }
    let graph = Graph::from_edges_lossy(total, edges);
    let mut out_roots = vec![usize::MAX; dim];
    for (ci, class) in classes.iter().enumerate() {
        for &r in class {
            out_roots[r] = blocks[ci].root_position(t.roots()[r]) + offset[ci];
        }
    }

    // Rebuild a certificate: the initial clique is the full root tuple, then
    // each class block is walked from the image of the original root bag.
    let mut builder = KTreeBuilder::new(k, total, &out_roots);
    let mut start_clique = out_roots.clone();
    start_clique.sort_unstable();
    for (ci, b) in blocks.iter().enumerate() {
        let bags: Vec<Vec<usize>> = b
            .bags
            .iter()
            .map(|bag| bag.iter().map(|&v| v + offset[ci]).collect())
            .collect();
        builder.walk_bags(&bags, &b.bag_adjacency, 0, start_clique.clone());
    }
    let output = RootedPartialKTree::new(graph, k, out_roots, builder.steps)
        .expect("reduction rebuilds a valid certificate");

    // Predicted type: original entries on close pairs, ∞ otherwise.
    let mut entries = vec![Dist::ZERO; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                entries[i * dim + j] = if close(i, j) { m.get(i, j) } else { Dist::Inf };
            }
        }
    }
    let predicted = TypeMatrix::new(k, entries)
        .expect("restriction of a metric to closeness classes is a valid type");

    // Structural postconditions of the construction.
    assert!(bipartition(output.graph()).is_ok(), "reduction output must be bipartite");
    let out_type = type_of(&output);
    assert_eq!(out_type, predicted, "reduction output type must match the prediction");
    assert!(leq(&m, &out_type).expect("same k"), "input type must be ⪯ the output type");
    if let Some(max) = out_type.max_finite_entry() {
        assert!(
            (max as u128) <= params.d_pow((dim * dim) as u32),
            "output entries must stay within the interval ladder"
        );
    }

    let trace = ReductionTrace {
        i0,
        intervals_checked: intervals,
        classes,
        contraction_log: log,
        predicted_type: predicted,
    };
    Ok((output, trace))
}

struct ClassBlock {
    graph: Graph,
    /// Original vertex -> current index (MAX when absent).
    forward: Vec<usize>,
    bags: Vec<Vec<usize>>,
    bag_adjacency: Vec<Vec<usize>>,
}

impl ClassBlock {
    fn root_position(&self, original_vertex: usize) -> usize {
        let pos = self.forward[original_vertex];
        assert_ne!(pos, usize::MAX, "class roots survive the reduction");
        pos
    }
}

fn reduce_class(
    t: &RootedPartialKTree,
    decomposition: &BagTree,
    red_flags: &[bool],
    class: &[usize],
    threshold: u128,
    order: ContractionOrder,
    class_index: usize,
    log: &mut Vec<ContractionEvent>,
) -> ClassBlock {
    let g = t.graph();
    let comp = g.components();
    let class_comp = comp[t.roots()[class[0]]];
    debug_assert!(
        class.iter().all(|&r| comp[t.roots()[r]] == class_comp),
        "close roots share a component"
    );

    // Discard components not containing the class before contracting.
    let keep: Vec<bool> = (0..g.vertex_count()).map(|v| comp[v] == class_comp).collect();
    let (mut cur, induced_map) = g.induced(&keep);
    let mut forward = induced_map; // original -> current
    let mut red: Vec<bool> = (0..g.vertex_count())
        .filter(|&v| keep[v])
        .map(|v| red_flags[v])
        .collect();
    let mut bags: Vec<Vec<usize>> = decomposition
        .bags
        .iter()
        .map(|bag| {
            let mut mapped: Vec<usize> =
                bag.iter().filter_map(|&v| (forward[v] != usize::MAX).then(|| forward[v])).collect();
            mapped.sort_unstable();
            mapped.dedup();
            mapped
        })
        .collect();
    let mut roots_cur: Vec<usize> = class.iter().map(|&r| forward[t.roots()[r]]).collect();

    loop {
        let dist = distances(&cur, &roots_cur).expect("roots in range");
        let qualifies = |v: usize| -> bool {
            !red[v]
                && match dist[v] {
                    Dist::Fin(x) => (x as u128) >= threshold,
                    Dist::Inf => true,
                }
        };
        let pick = match order {
            ContractionOrder::LowestIndex => (0..cur.vertex_count()).find(|&v| qualifies(v)),
            ContractionOrder::HighestIndex => (0..cur.vertex_count()).rev().find(|&v| qualifies(v)),
        };
        let v = match pick {
            Some(v) => v,
            None => break,
        };
        log.push(ContractionEvent {
            class: class_index,
            vertex: v,
            vertices_before: cur.vertex_count(),
        });
        let (next, cmap) = contract_closed_neighborhood(&cur, v).expect("vertex in range");
        let fresh = next.vertex_count() - 1;
        // Contracting the closed neighborhood of a blue vertex yields a red
        // vertex; everything else keeps its side.
        let mut next_red = vec![false; next.vertex_count()];
        for u in 0..cur.vertex_count() {
            if cmap[u] != fresh {
                next_red[cmap[u]] = red[u];
            }
        }
        next_red[fresh] = true;
        for f in forward.iter_mut() {
            if *f != usize::MAX {
                *f = cmap[*f];
            }
        }
        for bag in bags.iter_mut() {
            for x in bag.iter_mut() {
                *x = cmap[*x];
            }
            bag.sort_unstable();
            bag.dedup();
        }
        roots_cur = roots_cur.iter().map(|&r| cmap[r]).collect();
        debug_assert!(roots_cur.iter().all(|&r| r != fresh), "roots are never absorbed");
        cur = next;
        red = next_red;
    }

    let mut bag_adjacency = vec![Vec::new(); bags.len()];
    for (b, p) in decomposition.parent.iter().enumerate() {
        if let Some(p) = *p {
            bag_adjacency[b].push(p);
            bag_adjacency[p].push(b);
        }
    }
    ClassBlock { graph: cur, forward, bags, bag_adjacency }
}

/// Outcome of checking `F(reduced) ⊆ F(original)`.
///
/// Inclusion is only guaranteed when `d` is a valid extension-distance
/// constant, so a failed check is a report, not a hard error; the `d` used
/// is recorded.
#[derive(Debug, Clone)]
pub struct InclusionReport {
    pub holds: bool,
    /// A precoloring (in root order) extending into the reduced graph but
    /// not the original, if inclusion fails.
    pub counterexample: Option<Vec<u32>>,
    pub d: u64,
    pub original_count: usize,
    pub reduced_count: usize,
}

/// Computes both F-sets exactly and reports whether the reduced one is
/// contained in the original one.
pub fn verify_f_inclusion(
    original: &RootedPartialKTree,
    reduced: &RootedPartialKTree,
    params: ReductionParams,
    table_limit: u64,
) -> Result<InclusionReport, SolveError> {
    let fo = f_set(original, params.pq(), table_limit)?;
    let fr = f_set(reduced, params.pq(), table_limit)?;
    let mut counterexample = None;
    for idx in fr.members() {
        if !fo.contains(idx) {
            counterexample = Some(fr.colors_of(idx));
            break;
        }
    }
    Ok(InclusionReport {
        holds: counterexample.is_none(),
        counterexample,
        d: params.d(),
        original_count: fo.count(),
        reduced_count: fr.count(),
    })
}

/// Convenience wrapper: reduce, then verify inclusion.
pub fn reduce_and_verify(
    t: &RootedPartialKTree,
    params: ReductionParams,
    table_limit: u64,
) -> Result<(RootedPartialKTree, ReductionTrace, InclusionReport), ReduceError> {
    let (reduced, trace) = reduce_type(t, params)?;
    let report = verify_f_inclusion(t, &reduced, params, table_limit)
        .expect("inclusion check within budget");
    Ok((reduced, trace, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circular::DEFAULT_TABLE_LIMIT;
    use crate::ktree::certify_low_treewidth;

    fn params_d(d: u64) -> ReductionParams {
        ReductionParams::new(PQParams::new(5, 2).unwrap(), d).unwrap()
    }

    #[test]
    fn long_path_collapses_to_isolated_roots() {
        // Root distance 300 with d=1 (D=4): J^1=[1,3] is free of entries,
        // so i0 = 1 and the output is the isolated roots.
        let t = crate::ktree::far_rooted_path(300);
        let (out, trace) = reduce_type(&t, params_d(1)).unwrap();
        assert_eq!(trace.i0, 1);
        assert_eq!(out.graph().vertex_count(), 3);
        assert_eq!(out.graph().edge_count(), 0);
        assert_eq!(trace.predicted_type, TypeMatrix::all_infinite(2));
    }

    #[test]
    fn short_path_is_a_fixed_point() {
        // Root distance 2 lies in J^1; J^2=[4,15] is free, so i0 = 2 with
        // threshold 4: the endpoints are close, nothing is far enough to
        // contract, and the graph comes back unchanged.
        let t = crate::ktree::far_rooted_path(2);
        let (out, trace) = reduce_type(&t, params_d(1)).unwrap();
        assert_eq!(trace.i0, 2);
        assert_eq!(out.graph(), t.graph());
        assert_eq!(
            trace.predicted_type,
            TypeMatrix::from_upper_triangle(2, &[Dist::Fin(2), Dist::Inf, Dist::Inf]).unwrap()
        );
        assert_eq!(trace.classes, vec![vec![0, 1], vec![2]]);
        assert!(trace.contraction_log.is_empty());
    }

    #[test]
    fn isolated_roots_reduce_to_themselves() {
        let t = RootedPartialKTree::isolated(1);
        let (out, trace) = reduce_type(&t, params_d(3)).unwrap();
        assert_eq!(trace.i0, 1);
        assert_eq!(out.graph().vertex_count(), 2);
        assert_eq!(out.graph().edge_count(), 0);
    }

    #[test]
    fn rejects_non_bipartite() {
        let c5 = certify_low_treewidth(&Graph::cycle(5), 2, Some(&[0, 1, 2])).unwrap();
        assert!(matches!(reduce_type(&c5, params_d(1)), Err(ReduceError::NotBipartite)));
    }

    #[test]
    fn mid_length_path_contracts() {
        // Root distance 6 misses J^1=[1,3]: i0 = 1, everything collapses.
        let t = crate::ktree::far_rooted_path(6);
        let (out, trace) = reduce_type(&t, params_d(1)).unwrap();
        assert_eq!(trace.i0, 1);
        assert_eq!(out.graph().edge_count(), 0);

        // Root distance 3 sits inside J^1, J^2 is free: i0 = 2 and the path
        // is already reduced (no blue vertex at distance ≥ 4).
        let t = crate::ktree::far_rooted_path(3);
        let (out, trace) = reduce_type(&t, params_d(1)).unwrap();
        assert_eq!(trace.i0, 2);
        assert_eq!(out.graph(), t.graph());
    }

    #[test]
    fn two_far_roots_on_one_long_caterpillar_contract() {
        // A path of length 16 rooted at its endpoints, with d = 1 and an
        // extra pendant so some genuinely internal vertex is far from both
        // roots. Root distance 16 lies in J^3 = [16,63]; J^1 = [1,3] is
        // free, so i0 = 1 again. To reach i0 = 2 the root distance must be
        // in [1,3]; add a second pair of roots at distance 2 via k = 2.
        let mut edges: Vec<(usize, usize)> = (0..16).map(|i| (i, i + 1)).collect();
        edges.push((8, 17));
        let g = Graph::new(18, &edges).unwrap();
        // Roots: 0, 2 close (distance 2), 17 hangs near the middle.
        let t = certify_low_treewidth(&g, 2, Some(&[0, 2, 17])).unwrap();
        let (out, trace) = reduce_type(&t, params_d(1)).unwrap();
        // Distances: (0,2)=2, (0,17)=9, (2,17)=7. J^1=[1,3] contains 2, and
        // J^2=[4,15] contains 9 and 7, so i0 = 3 with threshold 16: all
        // roots are close and nothing is far enough to contract.
        assert_eq!(trace.i0, 3);
        assert_eq!(trace.classes.len(), 1);
        assert_eq!(out.graph().vertex_count(), 18);
    }

    #[test]
    fn separated_root_classes_become_disjoint_blocks() {
        // k=2 on a long path: roots 0, 1 adjacent and root 12 far away.
        let g = Graph::path(13);
        let t = certify_low_treewidth(&g, 2, Some(&[0, 1, 12])).unwrap();
        let (out, trace) = reduce_type(&t, params_d(1)).unwrap();
        // Distances: (0,1)=1 in J^1, (0,12)=12 and (1,12)=11 in J^2=[4,15],
        // (k+1)^2 = 9 intervals: J^3 = [16,63] is free, i0 = 3... but then
        // everything is close (threshold 16) and nothing contracts. The
        // interval walk stops at the FIRST free interval: J^1 has entry 1,
        // J^2 has 11 and 12, J^3 is free: i0 = 3.
        assert_eq!(trace.i0, 3);
        assert_eq!(trace.classes.len(), 1);
        assert_eq!(out.vertex_count(), 13);

        // Shrink the far distance into a gap: roots 0, 1 and 6; distances
        // 1, 5, 6. J^1 = [1,3] has 1; J^2 = [4,15] has 5, 6; i0 = 3 again —
        // with D = 4 gaps are wide. Use d = 1 but distances 1 and 30+:
        let mut edges: Vec<(usize, usize)> = (0..32).map(|i| (i, i + 1)).collect();
        edges.push((0, 33));
        let g = Graph::new(34, &edges).unwrap();
        let t = certify_low_treewidth(&g, 2, Some(&[0, 33, 32])).unwrap();
        // Distances: (0,33)=1, (0,32)=32, (33,32)=33. J^1 has 1, J^2=[4,15]
        // is free: i0 = 2, threshold 4: classes {0,33} and {32}.
        let (out, trace) = reduce_type(&t, params_d(1)).unwrap();
        assert_eq!(trace.i0, 2);
        assert_eq!(trace.classes, vec![vec![0, 1], vec![2]]);
        // Both blocks contract heavily and the output splits in two.
        assert!(!trace.contraction_log.is_empty());
        let ty = type_of(&out);
        assert_eq!(ty.get(0, 1), Dist::Fin(1));
        assert_eq!(ty.get(0, 2), Dist::Inf);
        assert_eq!(ty.get(1, 2), Dist::Inf);
        out.validate().unwrap();
    }

    #[test]
    fn inclusion_fixed_point_and_long_path() {
        let pq = PQParams::new(5, 2).unwrap();
        let params = ReductionParams::new(pq, 1).unwrap();
        // Fixed point: inclusion trivially holds.
        let t = crate::ktree::far_rooted_path(2);
        let (red, _) = reduce_type(&t, params).unwrap();
        let rep = verify_f_inclusion(&t, &red, params, DEFAULT_TABLE_LIMIT).unwrap();
        assert!(rep.holds);

        // Long even path, i0 = 1: the reduced F-set is full, and the
        // original's is full too because the spread saturates at length 4.
        let t = crate::ktree::far_rooted_path(8);
        let (red, trace) = reduce_type(&t, params).unwrap();
        assert_eq!(trace.i0, 1);
        let rep = verify_f_inclusion(&t, &red, params, DEFAULT_TABLE_LIMIT).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.reduced_count, 125);
        assert_eq!(rep.original_count, 125);
    }

    #[test]
    fn adversarial_small_d_breaks_inclusion() {
        // Spider with three legs of length 2 rooted at its leaves (k=3,
        // with a free fourth root): leaf distances are all 4. With d=1
        // (D=4), J^1=[1,3] is free of entries so i0=1 and the reduction
        // discards everything — but the original F-set is not full:
        // coloring the leaves (0,2,4) leaves no color for the center. The
        // report carries the witness.
        let t = crate::ktree::spider_with_free_root(&[2, 2, 2]);
        let params = params_d(1);
        let (red, trace) = reduce_type(&t, params).unwrap();
        assert_eq!(trace.i0, 1);
        let rep = verify_f_inclusion(&t, &red, params, DEFAULT_TABLE_LIMIT).unwrap();
        assert!(!rep.holds);
        assert!(rep.counterexample.is_some());
        assert!(rep.reduced_count > rep.original_count);

        // With d probed high enough (the spider itself fails at pairwise
        // distance 4, so any honest d̂ is at least 5), the same instance is
        // a fixed point and inclusion holds.
        let safe = params_d(5);
        let (red, trace) = reduce_type(&t, safe).unwrap();
        assert!(trace.i0 >= 2);
        let rep = verify_f_inclusion(&t, &red, safe, DEFAULT_TABLE_LIMIT).unwrap();
        assert!(rep.holds);
    }
}
