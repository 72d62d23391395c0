//! Structural tests used by the classifier.

use serde::{Deserialize, Serialize};

use crate::connectivity::is_k_connected;
use crate::error::GraphError;
use crate::graph::{bits, Graph, Pair};
use crate::named;
use crate::search::isomorphic;

/// Largest input the permutation-graph search accepts.
pub const PERMUTATION_BUDGET: usize = 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Trivial {
    None,
    Clique,
    Independent,
    /// Fewer than two vertices: vacuously both.
    Both,
}

pub fn classify_trivial(g: &Graph) -> Trivial {
    let n = g.n();
    if n <= 1 {
        return Trivial::Both;
    }
    match g.edge_count() {
        0 => Trivial::Independent,
        m if m == n * (n - 1) / 2 => Trivial::Clique,
        _ => Trivial::None,
    }
}

/// Centre and degree of a forest whose maximum degree `d > 1` is attained by
/// exactly one vertex.
pub fn forest_unique_max(g: &Graph) -> Option<(usize, usize)> {
    let comps = g.components_within(g.vertex_mask()).len();
    if g.edge_count() + comps != g.n() {
        return None;
    }
    let d = g.max_degree()?;
    if d <= 1 {
        return None;
    }
    let mut top = (0..g.n()).filter(|&v| g.degree(v) == d);
    let centre = top.next()?;
    top.next().is_none().then_some((centre, d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE", tag = "shape", content = "p")]
pub enum K2pShape {
    /// K_{2,p}, p >= 2
    K2p(usize),
    /// K_{1,1,p}, p >= 1
    K11p(usize),
}

/// Recognise K_{2,p} or K_{1,1,p}; the two apex vertices are returned too.
pub fn match_k2p_k11p(g: &Graph) -> Option<(K2pShape, Pair)> {
    let n = g.n();
    if n < 3 {
        return None;
    }
    let all = g.vertex_mask();
    for (a, b) in g.pairs() {
        let rest = all & !(1 << a) & !(1 << b);
        let spokes = g.neighbors(a) & rest == rest && g.neighbors(b) & rest == rest;
        let independent = bits(rest).all(|v| g.neighbors(v) & rest == 0);
        if !spokes || !independent {
            continue;
        }
        let p = n - 2;
        if g.has_edge(a, b) {
            return Some((K2pShape::K11p(p), (a, b)));
        }
        if p >= 2 {
            return Some((K2pShape::K2p(p), (a, b)));
        }
    }
    None
}

pub fn is_bull_or_p4(g: &Graph) -> bool {
    isomorphic(g, &named::path(4)) || isomorphic(g, &named::bull())
}

pub fn is_3conn_nonclique(g: &Graph) -> bool {
    is_k_connected(g, 3) && classify_trivial(g) != Trivial::Clique
}

/// `ordering[i] < ordering[j]` positions with an edge exactly when
/// `sigma[i] < sigma[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationWitness {
    pub ordering: Vec<usize>,
    pub sigma: Vec<usize>,
}

impl PermutationWitness {
    pub fn is_valid(&self, g: &Graph) -> bool {
        let n = g.n();
        let mut seen = vec![false; n];
        let mut seen_s = vec![false; n];
        if self.ordering.len() != n || self.sigma.len() != n {
            return false;
        }
        for i in 0..n {
            let (v, s) = (self.ordering[i], self.sigma[i]);
            if v >= n || s >= n || seen[v] || seen_s[s] {
                return false;
            }
            seen[v] = true;
            seen_s[s] = true;
        }
        (0..n).all(|i| {
            (i + 1..n).all(|j| g.has_edge(self.ordering[i], self.ordering[j]) == (self.sigma[i] < self.sigma[j]))
        })
    }
}

/// Two linear orders whose common comparable pairs are the edges.
struct Realiser<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    first: Vec<usize>,
    second: Vec<usize>,
}

impl Realiser<'_> {
    fn run(&mut self, k: usize) -> bool {
        if k == self.order.len() {
            return true;
        }
        let v = self.order[k];
        let nb = self.g.neighbors(v);
        // reversing both orders gives the same graph, so the second vertex
        // only ever goes after the first
        let lowest = usize::from(k == 1);
        for p1 in lowest..=k {
            // vertices that must precede v in the second order
            let mut before = 0u64;
            for (i, &w) in self.first.iter().enumerate() {
                let adjacent = nb >> w & 1 == 1;
                if (i < p1) == adjacent {
                    before |= 1 << w;
                }
            }
            let p2 = before.count_ones() as usize;
            let prefix = self.second[..p2].iter().fold(0u64, |m, &w| m | 1 << w);
            if prefix != before {
                continue;
            }
            self.first.insert(p1, v);
            self.second.insert(p2, v);
            if self.run(k + 1) {
                return true;
            }
            self.first.remove(p1);
            self.second.remove(p2);
        }
        false
    }
}

/// Insertion order: each vertex after the first has as many placed
/// neighbours as possible, ties to higher degree.
fn insertion_order(g: &Graph, mask: u64) -> Vec<usize> {
    let mut order = Vec::new();
    let mut placed = 0u64;
    let mut left = mask;
    while left != 0 {
        let v = bits(left)
            .max_by_key(|&v| ((g.neighbors(v) & placed).count_ones(), g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        order.push(v);
        placed |= 1 << v;
        left &= !(1 << v);
    }
    order
}

/// Find a permutation representation of `g`, or prove there is none.
///
/// Twins are set aside first (substituting a twin class never changes the
/// answer), then the remaining vertices are inserted one by one into two
/// linear orders. Given the position in the first order, the position in
/// the second is forced, so the search branches only on the first.
pub fn is_permutation_graph(g: &Graph) -> Result<Option<PermutationWitness>, GraphError> {
    let n = g.n();
    if n > PERMUTATION_BUDGET {
        return Err(GraphError::Budget(format!(
            "permutation search is limited to {PERMUTATION_BUDGET} vertices, got {n}"
        )));
    }
    // (removed vertex, representative, adjacent)
    let mut folded: Vec<(usize, usize, bool)> = Vec::new();
    let mut alive = g.vertex_mask();
    'fold: loop {
        for u in bits(alive) {
            for v in bits(alive & !(1 << u)) {
                let nu = g.neighbors(u) & alive & !(1 << v);
                let nv = g.neighbors(v) & alive & !(1 << u);
                if nu == nv {
                    folded.push((u, v, g.has_edge(u, v)));
                    alive &= !(1 << u);
                    continue 'fold;
                }
            }
        }
        break;
    }

    let mut r = Realiser { g, order: insertion_order(g, alive), first: Vec::new(), second: Vec::new() };
    if !r.run(0) {
        return Ok(None);
    }
    let (mut first, mut second) = (r.first, r.second);
    for &(u, v, adjacent) in folded.iter().rev() {
        let i = first.iter().position(|&w| w == v).unwrap();
        first.insert(i + 1, u);
        let j = second.iter().position(|&w| w == v).unwrap();
        second.insert(if adjacent { j + 1 } else { j }, u);
    }
    let mut rank = vec![0; n];
    for (i, &w) in second.iter().enumerate() {
        rank[w] = i;
    }
    let sigma = first.iter().map(|&w| rank[w]).collect();
    Ok(Some(PermutationWitness { ordering: first, sigma }))
}

/// Witnesses that `g` is not a permutation graph but `g - e` and `g + f`
/// are, for some edge `e` and non-edge `f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CloseToPermutation {
    pub edge: Pair,
    pub nonedge: Pair,
    pub minus_edge: PermutationWitness,
    pub plus_nonedge: PermutationWitness,
}

pub fn close_to_permutation(g: &Graph) -> Result<Option<CloseToPermutation>, GraphError> {
    if is_permutation_graph(g)?.is_some() {
        return Ok(None);
    }
    let mut minus = None;
    for e in g.edges() {
        if let Some(w) = is_permutation_graph(&g.perturbed(e.0, e.1))? {
            minus = Some((e, w));
            break;
        }
    }
    let Some((edge, minus_edge)) = minus else { return Ok(None) };
    for f in g.non_edges() {
        if let Some(w) = is_permutation_graph(&g.perturbed(f.0, f.1))? {
            return Ok(Some(CloseToPermutation { edge, nonedge: f, minus_edge, plus_nonedge: w }));
        }
    }
    Ok(None)
}
