//! Structured corpora: bipartite probe instances for the extension-distance
//! probe, certified rooted instances for the reduction suites, and the
//! rejection sampler for glue-type instances.

use girthlab_core::dist::Dist;
use girthlab_core::graph::{bipartition, Graph};
use girthlab_core::ktree::{
    certify_low_treewidth, far_rooted_path, glue, random_partial_k_tree_with_budget,
    RootedPartialKTree,
};
use girthlab_core::precolor::ProbeInstance;
use girthlab_core::types::{compatible, is_bipartite_type, leq, type_of, TypeMatrix};

/// Spider: center 0, legs laid out consecutively; returns the graph and
/// its leaf vertices.
pub fn spider(leg_lengths: &[usize]) -> (Graph, Vec<usize>) {
    let mut edges = Vec::new();
    let mut leaves = Vec::new();
    let mut next = 1;
    for &len in leg_lengths {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        leaves.push(prev);
    }
    (Graph::from_edges_lossy(next, edges), leaves)
}

/// Theta graph: two hubs (0 and 1) joined by internally disjoint arms of
/// the given lengths (each ≥ 2 to stay simple).
pub fn theta(arm_lengths: &[usize]) -> Graph {
    assert!(arm_lengths.iter().all(|&l| l >= 2));
    let mut edges = Vec::new();
    let mut next = 2;
    for &len in arm_lengths {
        let mut prev = 0;
        for _ in 0..len - 1 {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, 1));
    }
    Graph::from_edges_lossy(next, edges)
}

/// The probe corpus: bipartite graphs at most 18 vertices with marked
/// vertex sets. Curated so the deepest failure sits at pairwise distance 6
/// (five legs of length 3 around one junction), which probes d̂ = 7 for
/// (5,2).
pub fn probe_corpus() -> Vec<ProbeInstance> {
    let mut out = Vec::new();
    // Paths, endpoints marked.
    for n in 2..=18 {
        out.push(ProbeInstance { graph: Graph::path(n), marked: vec![0, n - 1] });
    }
    // Even cycles, antipodal pair; larger ones with three marks.
    for m in (4..=18).step_by(2) {
        out.push(ProbeInstance { graph: Graph::cycle(m), marked: vec![0, m / 2] });
    }
    out.push(ProbeInstance { graph: Graph::cycle(12), marked: vec![0, 4, 8] });
    out.push(ProbeInstance { graph: Graph::cycle(18), marked: vec![0, 6, 12] });
    // Spiders, all leaves marked.
    for legs in [
        &[2usize, 2][..],
        &[2, 2, 2],
        &[2, 2, 2, 2],
        &[2, 2, 2, 2, 2],
        &[3, 3, 3],
        &[3, 3, 3, 3],
        &[3, 3, 3, 3, 3],
        &[4, 4, 4],
        &[2, 2, 3],
        &[2, 3, 4],
    ] {
        let (graph, leaves) = spider(legs);
        out.push(ProbeInstance { graph, marked: leaves });
    }
    // Caterpillar: spine with pendants, spine ends marked.
    let mut edges: Vec<(usize, usize)> = (0..9).map(|i| (i, i + 1)).collect();
    edges.extend([(2, 10), (4, 11), (6, 12)]);
    out.push(ProbeInstance { graph: Graph::from_edges_lossy(13, edges), marked: vec![0, 9] });
    // Thetas, hubs marked (even arms keep them bipartite).
    for arms in [&[2usize, 2][..], &[2, 4], &[4, 4], &[2, 2, 4]] {
        out.push(ProbeInstance { graph: theta(arms), marked: vec![0, 1] });
    }
    debug_assert!(out.iter().all(|i| i.graph.vertex_count() <= 18));
    debug_assert!(out.iter().all(|i| bipartition(&i.graph).is_ok()));
    out
}

/// Certified bipartite rooted instances (≤ 18 vertices) for the F-set
/// inclusion suite.
pub fn inclusion_corpus() -> Vec<RootedPartialKTree> {
    let mut out: Vec<RootedPartialKTree> = Vec::new();
    // Adjacent-rooted paths at k=1.
    for n in [2usize, 6, 10] {
        out.push(RootedPartialKTree::path_on(n));
    }
    // Far-rooted paths at k=2 across both interval regimes.
    for len in [1usize, 2, 3, 4, 7, 8, 15, 16] {
        out.push(far_rooted_path(len));
    }
    // Even cycles rooted at three positions.
    for m in [4usize, 6, 10, 14, 18] {
        let t = certify_low_treewidth(&Graph::cycle(m), 2, Some(&[0, m / 2, 1]))
            .expect("a cycle plus an inscribed triangle is series-parallel");
        out.push(t);
    }
    // A two-component forest at k=1 (disconnected roots).
    let two_paths = Graph::from_edges_lossy(
        9,
        (0..3).map(|i| (i, i + 1)).chain((4..8).map(|i| (i, i + 1))),
    );
    out.push(certify_low_treewidth(&two_paths, 1, Some(&[0, 4])).expect("forest certifies"));
    // Caterpillar with far roots plus a free one.
    let mut edges: Vec<(usize, usize)> = (0..9).map(|i| (i, i + 1)).collect();
    edges.extend([(2, 10), (4, 11), (6, 12)]);
    let caterpillar = Graph::from_edges_lossy(14, edges);
    out.push(
        certify_low_treewidth(&caterpillar, 2, Some(&[0, 9, 13]))
            .expect("caterpillar plus root triangle is series-parallel"),
    );
    // A theta with shared far roots, built by gluing two far-rooted paths.
    out.push(glue(&far_rooted_path(2), &far_rooted_path(4)).expect("same k"));
    // Spiders rooted at their leaves (k = number of legs).
    out.push(girthlab_core::ktree::spider_with_free_root(&[2, 2, 2]));
    out.push(girthlab_core::ktree::spider_with_free_root(&[3, 3, 3]));
    // Random bipartite rooted trees and partial 2-trees.
    for seed in 0..6u64 {
        if let Ok(t) = random_partial_k_tree_with_budget(1, 10, 0.8, Dist::Inf, seed, 2000) {
            out.push(t);
        }
        if let Ok(t) = random_partial_k_tree_with_budget(2, 12, 0.55, Dist::Inf, 1000 + seed, 2000)
        {
            out.push(t);
        }
    }
    debug_assert!(out.iter().all(|t| t.vertex_count() <= 18));
    debug_assert!(out.iter().all(|t| bipartition(t.graph()).is_ok()));
    debug_assert!(out.iter().all(|t| t.validate().is_ok()));
    out
}

/// Metric closure (all-pairs shortest paths over the matrix entries).
fn metric_closure(k: usize, entries: &mut [Dist]) {
    let dim = k + 1;
    for via in 0..dim {
        for i in 0..dim {
            for j in 0..dim {
                let through = entries[i * dim + via].add(entries[via * dim + j]);
                if through < entries[i * dim + j] {
                    entries[i * dim + j] = through;
                }
            }
        }
    }
}

/// One random glue-type instance: two certified bipartite rooted partial
/// k-trees whose types admit a common lower bound `m0`, produced by
/// rejection. The candidate `m0` is the metric closure of the entrywise
/// minimum of the two types; draws where that is not a valid bipartite
/// lower bound are rejected.
pub fn random_glue_instance(
    k: usize,
    vertices: usize,
    seed: u64,
) -> Option<(RootedPartialKTree, RootedPartialKTree, TypeMatrix)> {
    let draw = |s: u64| {
        let n = vertices.max(k + 2);
        random_partial_k_tree_with_budget(k, n, 0.62, Dist::Inf, s, 500).ok()
    };
    for attempt in 0..200u64 {
        let base = seed.wrapping_mul(1_000_003).wrapping_add(attempt * 2);
        let (a, b) = match (draw(base), draw(base + 1)) {
            (Some(a), Some(b)) => (a, b),
            _ => continue,
        };
        let ta = type_of(&a);
        let tb = type_of(&b);
        if !compatible(&ta, &tb).expect("same k") {
            continue;
        }
        let dim = k + 1;
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(ta.get(i, j).min(tb.get(i, j)));
            }
        }
        metric_closure(k, &mut entries);
        let m0 = match TypeMatrix::new(k, entries) {
            Ok(m) => m,
            Err(_) => continue,
        };
        if !is_bipartite_type(&m0) {
            continue;
        }
        if !leq(&m0, &ta).expect("same k") || !leq(&m0, &tb).expect("same k") {
            continue;
        }
        return Some((a, b, m0));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use girthlab_core::types::check_glue_type;

    #[test]
    fn corpora_are_wellformed() {
        assert!(probe_corpus().len() >= 30);
        assert!(inclusion_corpus().len() >= 20);
    }

    #[test]
    fn glue_instances_generate_and_pass() {
        let mut made = 0;
        for seed in 0..30u64 {
            let k = 1 + (seed % 2) as usize;
            if let Some((a, b, m0)) = random_glue_instance(k, 8, seed) {
                made += 1;
                check_glue_type(&a, &b, &m0).expect("glue-type invariant");
            }
        }
        assert!(made >= 20, "rejection sampler starved: {made}/30");
    }

    #[test]
    fn spider_and_theta_shapes() {
        let (g, leaves) = spider(&[2, 3]);
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(leaves, vec![2, 5]);
        assert_eq!(g.degree(0), 2);

        let th = theta(&[2, 2, 2]);
        assert_eq!(th.vertex_count(), 5);
        assert_eq!(th.degree(0), 3);
        assert_eq!(th.degree(1), 3);
        assert!(bipartition(&th).is_ok());
    }
}
