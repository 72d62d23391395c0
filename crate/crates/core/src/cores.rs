//! Core reductions: repeatedly delete vertices (or, for the 3*-core, pairs)
//! that a rule marks as removable, until nothing fires.
//!
//! Rules fire in a fixed order: the single-vertex rule on the lowest-index
//! eligible vertex, and only when no vertex is eligible, the pair rule on the
//! lexicographically least eligible pair. Every removal is recorded so the
//! input can be rebuilt from the core.

use serde::{Deserialize, Serialize};

use crate::graph::{bits, Graph, Pair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CoreKind {
    /// Remove vertices with fewer than `k` neighbours or fewer than `l`
    /// non-neighbours.
    Kl { k: usize, l: usize },
    Two,
    Three,
    ThreeStar,
    OneOne,
    TwoEdge,
    TwoNonedge,
}

impl CoreKind {
    pub const ALL: [CoreKind; 6] =
        [CoreKind::Two, CoreKind::Three, CoreKind::ThreeStar, CoreKind::OneOne, CoreKind::TwoEdge, CoreKind::TwoNonedge];

    pub fn name(self) -> String {
        match self {
            CoreKind::Kl { k, l } => format!("({k},{l})"),
            CoreKind::Two => "2".into(),
            CoreKind::Three => "3".into(),
            CoreKind::ThreeStar => "3*".into(),
            CoreKind::OneOne => "(1,1)".into(),
            CoreKind::TwoEdge => "2-edge".into(),
            CoreKind::TwoNonedge => "2-non-edge".into(),
        }
    }

    fn thresholds(self) -> (usize, usize) {
        match self {
            CoreKind::Kl { k, l } => (k, l),
            CoreKind::Two | CoreKind::TwoEdge | CoreKind::TwoNonedge => (2, 0),
            CoreKind::Three | CoreKind::ThreeStar => (3, 0),
            CoreKind::OneOne => (1, 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RuleTag {
    LowDegree,
    LowNonDegree,
    DegreeTwoAdjacent,
    DegreeTwoNonadjacent,
    SmallPairClosure,
}

/// One removal step. Vertex ids refer to the input graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    pub vertices: Vec<usize>,
    /// Neighbours among the vertices still present when the cluster went.
    pub attachment: Vec<usize>,
    pub rule: RuleTag,
    /// Every edge touching the cluster at removal time, inside it or to the
    /// attachment.
    pub edges: Vec<Pair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreTrace {
    pub kind: CoreKind,
    pub original_order: usize,
    /// Input ids of the core's vertices; core vertex `i` is `kept[i]`.
    pub kept: Vec<usize>,
    pub clusters: Vec<Cluster>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreResult {
    pub core: Graph,
    pub trace: CoreTrace,
}

fn vertex_rule(g: &Graph, alive: u64, v: usize, kind: CoreKind) -> Option<RuleTag> {
    let (k, l) = kind.thresholds();
    let nb = g.neighbors(v) & alive;
    let deg = nb.count_ones() as usize;
    let non = alive.count_ones() as usize - 1 - deg;
    if deg < k {
        return Some(RuleTag::LowDegree);
    }
    if non < l {
        return Some(RuleTag::LowNonDegree);
    }
    if deg == 2 && matches!(kind, CoreKind::TwoEdge | CoreKind::TwoNonedge) {
        let mut it = bits(nb);
        let (a, b) = (it.next().unwrap(), it.next().unwrap());
        let adjacent = g.has_edge(a, b);
        if adjacent && kind == CoreKind::TwoEdge {
            return Some(RuleTag::DegreeTwoAdjacent);
        }
        if !adjacent && kind == CoreKind::TwoNonedge {
            return Some(RuleTag::DegreeTwoNonadjacent);
        }
    }
    None
}

fn pair_rule(g: &Graph, alive: u64, u: usize, v: usize) -> bool {
    let closed = (g.closed_neighbors(u) | g.closed_neighbors(v)) & alive;
    closed.count_ones() <= 4
}

/// Every rule application available on the live vertex set `alive`.
fn eligible(g: &Graph, alive: u64, kind: CoreKind) -> Vec<(Vec<usize>, RuleTag)> {
    let mut out: Vec<(Vec<usize>, RuleTag)> =
        bits(alive).filter_map(|v| vertex_rule(g, alive, v, kind).map(|t| (vec![v], t))).collect();
    if kind == CoreKind::ThreeStar {
        for u in bits(alive) {
            for v in bits(alive & above(u)) {
                if pair_rule(g, alive, u, v) {
                    out.push((vec![u, v], RuleTag::SmallPairClosure));
                }
            }
        }
    }
    out
}

/// Reduce `g` to its core of the given kind.
pub fn core(g: &Graph, kind: CoreKind) -> CoreResult {
    let mut alive = g.vertex_mask();
    let mut clusters = Vec::new();
    loop {
        let step = bits(alive)
            .find_map(|v| vertex_rule(g, alive, v, kind).map(|t| (vec![v], t)))
            .or_else(|| {
                if kind != CoreKind::ThreeStar {
                    return None;
                }
                bits(alive).find_map(|u| {
                    bits(alive & above(u))
                        .find(|&v| pair_rule(g, alive, u, v))
                        .map(|v| (vec![u, v], RuleTag::SmallPairClosure))
                })
            });
        let Some((vertices, rule)) = step else { break };
        clusters.push(remove(g, &mut alive, vertices, rule));
    }
    let (core, kept) = g.induced_mask(alive);
    CoreResult { core, trace: CoreTrace { kind, original_order: g.n(), kept, clusters } }
}

fn remove(g: &Graph, alive: &mut u64, vertices: Vec<usize>, rule: RuleTag) -> Cluster {
    let cluster_mask = vertices.iter().fold(0u64, |m, &v| m | 1 << v);
    *alive &= !cluster_mask;
    let attach = vertices.iter().fold(0u64, |m, &v| m | g.neighbors(v)) & *alive;
    let mut edges = Vec::new();
    for (i, &v) in vertices.iter().enumerate() {
        for &w in &vertices[i + 1..] {
            if g.has_edge(v, w) {
                edges.push(crate::graph::pair(v, w));
            }
        }
        edges.extend(bits(g.neighbors(v) & *alive).map(|w| crate::graph::pair(v, w)));
    }
    Cluster { vertices, attachment: bits(attach).collect(), rule, edges }
}

/// True iff no rule of `kind` fires anywhere on `g`.
pub fn core_fixed_point_check(g: &Graph, kind: CoreKind) -> bool {
    eligible(g, g.vertex_mask(), kind).is_empty()
}

/// Rebuild the input graph from a core and its trace. Every edge of the
/// input was either kept or recorded by whichever endpoint left first.
pub fn replay(core: &Graph, trace: &CoreTrace) -> Graph {
    let mut g = Graph::new(trace.original_order);
    for (a, b) in core.edges() {
        g.add_edge(trace.kept[a], trace.kept[b]);
    }
    for c in trace.clusters.iter().rev() {
        for &(a, b) in &c.edges {
            g.add_edge(a, b);
        }
    }
    g
}

/// Mask of the vertices strictly above `u`.
fn above(u: usize) -> u64 {
    u64::MAX.checked_shl(u as u32 + 1).unwrap_or(0)
}

/// Canonical forms of all cores reachable from `g` by firing rules in any
/// order. Exponential; used to probe confluence on small graphs.
pub fn cores_over_all_orders(g: &Graph, kind: CoreKind) -> Vec<Graph> {
    let mut finals: Vec<Graph> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![g.vertex_mask()];
    while let Some(alive) = stack.pop() {
        if !seen.insert(alive) {
            continue;
        }
        let moves = eligible(g, alive, kind);
        if moves.is_empty() {
            let canon = crate::enumerate::canonical_form(&g.induced_mask(alive).0);
            if !finals.contains(&canon) {
                finals.push(canon);
            }
        }
        for (vs, _) in moves {
            stack.push(vs.iter().fold(alive, |m, &v| m & !(1 << v)));
        }
    }
    finals
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::graphs_of_order;
    use crate::named;
    use crate::search::{find_induced, isomorphic};

    fn c5_with_pendant() -> Graph {
        let mut g = named::cycle(5);
        let p = g.add_vertex().unwrap();
        g.add_edge(0, p);
        g
    }

    fn kinds() -> Vec<CoreKind> {
        let mut v = CoreKind::ALL.to_vec();
        v.push(CoreKind::Kl { k: 2, l: 1 });
        v
    }

    #[test]
    fn c5_pendant_cores() {
        let g = c5_with_pendant();
        let two = core(&g, CoreKind::Two);
        assert!(isomorphic(&two.core, &named::cycle(5)));
        assert_eq!(two.trace.clusters.len(), 1);
        assert_eq!(two.trace.clusters[0].vertices, vec![5]);
        assert_eq!(two.trace.clusters[0].attachment, vec![0]);
        assert_eq!(core(&g, CoreKind::ThreeStar).core.n(), 0);
    }

    #[test]
    fn p4_is_its_own_one_one_core() {
        let p4 = named::path(4);
        assert_eq!(core(&p4, CoreKind::OneOne).core, p4);
    }

    #[test]
    fn k4_three_star_core_is_empty() {
        let r = core(&Graph::complete(4), CoreKind::ThreeStar);
        assert_eq!(r.core.n(), 0);
        assert_eq!(r.trace.clusters[0].rule, RuleTag::SmallPairClosure);
        assert_eq!(r.trace.clusters[0].vertices, vec![0, 1]);
    }

    #[test]
    fn fixed_point_examples() {
        for kind in kinds() {
            assert!(core_fixed_point_check(&Graph::new(0), kind));
        }
        assert!(core_fixed_point_check(&named::cycle(5), CoreKind::Two));
        assert!(!core_fixed_point_check(&named::cycle(5), CoreKind::Three));
    }

    #[test]
    fn cores_are_fixed_points_and_replay_exactly() {
        for n in 0..=7 {
            for g in graphs_of_order(n) {
                for kind in kinds() {
                    let r = core(&g, kind);
                    assert!(core_fixed_point_check(&r.core, kind), "{kind:?} {g:?}");
                    assert_eq!(g.induced(&r.trace.kept), r.core);
                    assert_eq!(replay(&r.core, &r.trace), g);
                }
                let two = core(&g, CoreKind::Two).core;
                let three = core(&g, CoreKind::Three).core;
                assert!(find_induced(&two, &three, &[]).is_some());
            }
        }
    }

    #[test]
    fn firing_order_does_not_matter_up_to_6() {
        let mut counterexamples = Vec::new();
        for n in 0..=6 {
            for g in graphs_of_order(n) {
                for kind in kinds() {
                    let all = cores_over_all_orders(&g, kind);
                    if all.len() != 1 {
                        counterexamples.push((kind, g.clone(), all.len()));
                    }
                }
            }
        }
        for (kind, g, k) in &counterexamples {
            eprintln!("order-dependent {kind:?} core ({k} outcomes) for {g:?}");
        }
        assert!(counterexamples.is_empty());
    }

    #[test]
    fn degree_three_true_twins_trigger_pair_rule() {
        for n in 2..=7 {
            for g in graphs_of_order(n) {
                for (u, v) in g.edges().collect::<Vec<_>>() {
                    if g.degree(u) == 3 && g.closed_neighbors(u) == g.closed_neighbors(v) {
                        assert!(pair_rule(&g, g.vertex_mask(), u, v));
                    }
                }
            }
        }
    }
}
