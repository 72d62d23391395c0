//! Fixing operations and core extensions applied to a growing finite graph.

use serde::{Deserialize, Serialize};

use super::glue::{blowup_graph, glue};
use crate::error::{Error, GraphError};
use crate::gatekeeper::BlowupMode;
use crate::graph::{bits, pair, Graph, Pair, PairStatus, MAX_VERTICES};
use crate::recognizers::is_3conn_nonclique;
use crate::search::contains_induced;

/// One finite stage `G_i` of a limit construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixState {
    #[serde(with = "g6")]
    pub graph: Graph,
    /// The first stage; always the induced subgraph on the first vertices.
    #[serde(with = "g6")]
    pub origin: Graph,
    /// The graph every stage must stay free of.
    #[serde(with = "g6")]
    pub pattern: Graph,
    /// Vertex count of each stage so far; stage `i` is the induced
    /// subgraph on the first `orders[i - 1]` vertices.
    pub orders: Vec<usize>,
    /// Pairs fixed so far, in order, with the `(i, j)` queue entry that
    /// selected them when scheduled.
    pub fixed_ledger: Vec<(Pair, Option<(usize, usize)>)>,
    pub m: usize,
}

pub(crate) mod g6 {
    use crate::graph::Graph;
    use crate::graph6::{parse_graph6_str, to_graph6};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(g: &Graph, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_graph6(g))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Graph, D::Error> {
        let s = String::deserialize(d)?;
        parse_graph6_str(&s).map_err(serde::de::Error::custom)
    }
}

impl PrefixState {
    /// Start from `seed`, which must not contain `pattern`.
    pub fn new(seed: Graph, pattern: Graph, m: usize) -> Result<Self, Error> {
        if m == 0 {
            return Err(GraphError::Precondition("truncation m must be at least 1".into()).into());
        }
        if contains_induced(&seed, &pattern) {
            return Err(GraphError::Precondition("seed contains the pattern".into()).into());
        }
        Ok(PrefixState {
            orders: vec![seed.n()],
            origin: seed.clone(),
            graph: seed,
            pattern,
            fixed_ledger: Vec::new(),
            m,
        })
    }

    pub fn generation(&self) -> usize {
        self.orders.len()
    }

    /// Number of pairs of stage `i` (1-based).
    pub fn row_sizes(&self) -> Vec<usize> {
        self.orders.iter().map(|&n| n * n.saturating_sub(1) / 2).collect()
    }

    fn next(&self, graph: Graph, fixed: Option<Pair>) -> PrefixState {
        let mut s = self.clone();
        s.orders.push(graph.n());
        s.graph = graph;
        if let Some(p) = fixed {
            s.fixed_ledger.push((p, None));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE", tag = "strategy")]
pub enum FixStrategy {
    /// Glue the blow-up of the pattern at `pair` (whose status is opposite
    /// to the pair being fixed).
    GatekeeperGlue { pair: Pair, mode: BlowupMode },
    /// `m` independent common neighbours.
    K2pEdge,
    /// A clique `W` on `x` and `p - 1` cliques joined to `W` and `y`.
    K2pNonedge { p: usize },
    /// The truncated tree: a clique on both ends and `p - 2` child cliques.
    K11pEdge { p: usize },
    K11pNonedge,
    /// Twins of both ends, adjacent to each other exactly when the pair is
    /// an edge; false twins for an edge, true twins for a non-edge.
    TwinDuplicate,
}

fn clique_piece(m: usize, blocks: &[(bool, Vec<usize>)], anchors_adjacent: bool) -> Graph {
    // vertex 0 and 1 are the anchors; block b occupies 2 + b*m .. 2 + (b+1)*m
    // and lists the earlier blocks (or anchors, as usize::MAX - a) it joins
    let mut g = Graph::new(2 + m * blocks.len());
    if anchors_adjacent {
        g.add_edge(0, 1);
    }
    let range = |b: usize| 2 + b * m..2 + (b + 1) * m;
    for (b, (clique, joins)) in blocks.iter().enumerate() {
        for v in range(b) {
            if *clique {
                for w in range(b).filter(|&w| w > v) {
                    g.add_edge(v, w);
                }
            }
            for &j in joins {
                if j >= usize::MAX - 1 {
                    g.add_edge(v, usize::MAX - j);
                } else {
                    for w in range(j) {
                        g.add_edge(v, w);
                    }
                }
            }
        }
    }
    g
}

const X: usize = usize::MAX;
const Y: usize = usize::MAX - 1;

/// Minimum number of cliques covering `mask`.
pub fn clique_cover_number(g: &Graph, mask: u64) -> usize {
    fn fits(g: &Graph, verts: &[usize], i: usize, cliques: &mut Vec<u64>, k: usize) -> bool {
        if i == verts.len() {
            return true;
        }
        let v = verts[i];
        for c in 0..cliques.len() {
            if cliques[c] & !g.neighbors(v) == 0 {
                cliques[c] |= 1 << v;
                if fits(g, verts, i + 1, cliques, k) {
                    return true;
                }
                cliques[c] &= !(1 << v);
            }
        }
        if cliques.len() < k {
            cliques.push(1 << v);
            if fits(g, verts, i + 1, cliques, k) {
                return true;
            }
            cliques.pop();
        }
        false
    }
    let verts: Vec<usize> = bits(mask).collect();
    (0..=verts.len()).find(|&k| fits(g, &verts, 0, &mut Vec::new(), k)).unwrap_or(verts.len())
}

fn wrong_status(p: Pair, s: PairStatus, what: &str) -> Error {
    GraphError::Precondition(format!("pair ({},{}) is a {s:?}; {what}", p.0, p.1)).into()
}

/// Apply one fixing operation to `pair` of the current graph.
pub fn fix_pair(state: &PrefixState, pair_: Pair, strategy: &FixStrategy) -> Result<PrefixState, Error> {
    let g = &state.graph;
    let (x, y) = pair(pair_.0, pair_.1);
    if x == y || y >= g.n() {
        return Err(GraphError::BadPair { u: pair_.0, v: pair_.1, n: g.n() }.into());
    }
    let status = PairStatus::of(g, x, y);
    let m = state.m;
    let piece = match strategy {
        FixStrategy::GatekeeperGlue { pair: (u, v), mode } => {
            let c = &state.pattern;
            if *u == *v || *u >= c.n() || *v >= c.n() {
                return Err(GraphError::BadPair { u: *u, v: *v, n: c.n() }.into());
            }
            if PairStatus::of(c, *u, *v) != status.flipped() {
                return Err(wrong_status((x, y), status, "the pattern pair must have the other status"));
            }
            let b = blowup_graph(c, (*u, *v), *mode, m)?;
            let (out, _) = glue(g, &b.graph, &[x, y], &[*u, *v])?;
            return Ok(state.next(out, Some((x, y))));
        }
        FixStrategy::TwinDuplicate => {
            let n = g.n();
            if n + 2 > MAX_VERTICES {
                return Err(GraphError::TooManyVertices { n: n + 2, max: MAX_VERTICES }.into());
            }
            let mut out = g.clone();
            let xp = out.add_vertex()?;
            let yp = out.add_vertex()?;
            let (nx, ny) = match status {
                PairStatus::Edge => (g.neighbors(x), g.neighbors(y)),
                PairStatus::Nonedge => (g.closed_neighbors(x), g.closed_neighbors(y)),
            };
            for w in bits(nx) {
                out.add_edge(xp, w);
            }
            for w in bits(ny) {
                out.add_edge(yp, w);
            }
            out.set_edge(xp, yp, status == PairStatus::Edge);
            return Ok(state.next(out, Some((x, y))));
        }
        FixStrategy::K2pEdge => {
            if status != PairStatus::Edge {
                return Err(wrong_status((x, y), status, "K2P_EDGE fixes edges"));
            }
            clique_piece(m, &[(false, vec![X, Y])], true)
        }
        FixStrategy::K2pNonedge { p } => {
            if status != PairStatus::Nonedge {
                return Err(wrong_status((x, y), status, "K2P_NONEDGE fixes non-edges"));
            }
            if *p < 2 {
                return Err(GraphError::Precondition("K2P_NONEDGE needs p >= 2".into()).into());
            }
            let mut blocks = vec![(true, vec![X])];
            blocks.extend((1..*p).map(|_| (true, vec![0, Y])));
            clique_piece(m, &blocks, false)
        }
        FixStrategy::K11pEdge { p } => {
            if status != PairStatus::Edge {
                return Err(wrong_status((x, y), status, "K11P_EDGE fixes edges"));
            }
            if *p < 2 {
                return Err(GraphError::Precondition("K11P_EDGE needs p >= 2".into()).into());
            }
            let common = g.neighbors(x) & g.neighbors(y);
            let cover = clique_cover_number(g, common);
            if cover > p - 2 {
                return Err(GraphError::Precondition(format!(
                    "common neighbourhood of ({x},{y}) needs {cover} cliques, at most {} allowed",
                    p - 2
                ))
                .into());
            }
            let mut blocks = vec![(true, vec![X, Y])];
            blocks.extend((2..*p).map(|_| (true, vec![0])));
            clique_piece(m, &blocks, true)
        }
        FixStrategy::K11pNonedge => {
            if status != PairStatus::Nonedge {
                return Err(wrong_status((x, y), status, "K11P_NONEDGE fixes non-edges"));
            }
            clique_piece(m, &[(false, vec![X, Y])], false)
        }
    };
    let (out, _) = glue(g, &piece, &[x, y], &[0, 1])?;
    Ok(state.next(out, Some((x, y))))
}

/// The five ways of growing the fixed graph along with the pattern's core.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE", tag = "rule")]
pub enum ExtensionRule {
    /// For every `k` vertices, `m` independent vertices joined to them.
    LowDegree { k: usize },
    /// For every `l` vertices, an `m`-clique joined to everything else.
    LowNonDegree { l: usize },
    /// For every non-adjacent pair, `m` independent common neighbours.
    DegreeTwoNonadjacent,
    /// For every adjacent pair, `m` independent common neighbours.
    DegreeTwoAdjacent,
    /// For every pair, an `m`-clique joined to both.
    AdjacentPair,
}

impl ExtensionRule {
    pub fn number(self) -> usize {
        match self {
            ExtensionRule::LowDegree { .. } => 1,
            ExtensionRule::LowNonDegree { .. } => 2,
            ExtensionRule::DegreeTwoNonadjacent => 3,
            ExtensionRule::DegreeTwoAdjacent => 4,
            ExtensionRule::AdjacentPair => 5,
        }
    }
}

fn check_rule(c: &Graph, rule: ExtensionRule) -> Result<(), String> {
    let delta = c.min_degree().ok_or("pattern is empty")?;
    let co_delta = c.complement().min_degree().ok_or("pattern is empty")?;
    let deg2 = |adjacent: bool| {
        (0..c.n()).any(|v| {
            let nb: Vec<usize> = bits(c.neighbors(v)).collect();
            nb.len() == 2 && c.has_edge(nb[0], nb[1]) == adjacent
        })
    };
    match rule {
        ExtensionRule::LowDegree { k } if k >= delta => Err(format!("rule 1 needs k < {delta}, got {k}")),
        ExtensionRule::LowNonDegree { l } if l >= co_delta => Err(format!("rule 2 needs l < {co_delta}, got {l}")),
        ExtensionRule::DegreeTwoNonadjacent | ExtensionRule::DegreeTwoAdjacent if delta < 2 => {
            Err("rules 3 and 4 need minimum degree at least 2".into())
        }
        ExtensionRule::DegreeTwoNonadjacent if deg2(false) => {
            Err("pattern has a degree-2 vertex with non-adjacent neighbours".into())
        }
        ExtensionRule::DegreeTwoAdjacent if deg2(true) => Err("pattern has a degree-2 vertex with adjacent neighbours".into()),
        ExtensionRule::AdjacentPair if !is_3conn_nonclique(c) => Err("rule 5 needs a 3-connected non-clique".into()),
        _ => Ok(()),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(n, k, v + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// One round of a core-extension rule over every vertex tuple of the
/// current graph.
pub fn core_extension_step(state: &PrefixState, rule: ExtensionRule) -> Result<PrefixState, Error> {
    let c = &state.pattern;
    check_rule(c, rule).map_err(GraphError::Precondition)?;
    let g = &state.graph;
    let n = g.n();
    let m = state.m;
    let clique_minus_edge = c.n() >= 2 && c.edge_count() + 1 == c.n() * (c.n() - 1) / 2;
    // (attachment, blocks): each block is m vertices, a clique or not;
    // a second block, if any, is fully joined to the first
    let mut plan: Vec<(Vec<usize>, bool, bool)> = Vec::new();
    match rule {
        ExtensionRule::LowDegree { k } => plan.extend(subsets(n, k).into_iter().map(|s| (s, false, false))),
        ExtensionRule::LowNonDegree { l } => plan.extend(subsets(n, l).into_iter().map(|s| {
            let keep: Vec<usize> = (0..n).filter(|v| !s.contains(v)).collect();
            (keep, true, false)
        })),
        ExtensionRule::DegreeTwoNonadjacent => plan.extend(g.non_edges().map(|(a, b)| (vec![a, b], false, false))),
        ExtensionRule::DegreeTwoAdjacent => plan.extend(g.edges().map(|(a, b)| (vec![a, b], false, false))),
        ExtensionRule::AdjacentPair => plan.extend(g.pairs().map(|(a, b)| {
            if clique_minus_edge && !g.has_edge(a, b) {
                (vec![a, b], false, true)
            } else {
                (vec![a, b], true, false)
            }
        })),
    }
    let added: usize = plan.iter().map(|&(_, _, two)| if two { 2 * m } else { m }).sum();
    if n + added > MAX_VERTICES {
        return Err(GraphError::TooManyVertices { n: n + added, max: MAX_VERTICES }.into());
    }
    let mut out = Graph::new(n + added);
    for (a, b) in g.edges() {
        out.add_edge(a, b);
    }
    let mut next = n;
    for (attach, clique, two) in plan {
        let first = next..next + m;
        next += m;
        let second = if two {
            next += m;
            next - m..next
        } else {
            next..next
        };
        for v in first.clone().chain(second.clone()) {
            for &a in &attach {
                out.add_edge(v, a);
            }
        }
        for v in first.clone() {
            if clique {
                for w in first.clone().filter(|&w| w > v) {
                    out.add_edge(v, w);
                }
            }
            for w in second.clone() {
                out.add_edge(v, w);
            }
        }
    }
    Ok(state.next(out, None))
}
