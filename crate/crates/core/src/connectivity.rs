//! Vertex connectivity and 2-cuts.

use serde::Serialize;

use crate::error::GraphError;
use crate::graph::{bits, Graph, Pair};

/// A vertex pair whose removal disconnects the graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoCut {
    pub pair: Pair,
    pub is_edge: bool,
    /// Components of `g - pair`, as sorted vertex lists.
    pub components: Vec<Vec<usize>>,
}

/// `g` is k-connected: at least `k + 1` vertices and connected after
/// deleting any `k - 1` of them.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    let n = g.n();
    if k == 0 {
        return true;
    }
    if n < k + 1 {
        return false;
    }
    let all = g.vertex_mask();
    // remove every subset of size < k
    fn rec(g: &Graph, all: u64, removed: u64, start: usize, left: usize) -> bool {
        if !g.connected_within(all & !removed) {
            return false;
        }
        if left == 0 {
            return true;
        }
        (start..g.n()).all(|v| rec(g, all, removed | 1 << v, v + 1, left - 1))
    }
    rec(g, all, 0, 0, k - 1)
}

pub fn cut_vertices(g: &Graph) -> Vec<usize> {
    let all = g.vertex_mask();
    let base = g.components_within(all).len();
    (0..g.n()).filter(|&v| g.components_within(all & !(1 << v)).len() > base).collect()
}

/// Every pair `{u, v}` with `g - {u, v}` disconnected, in colex order, with
/// the resulting components. The input must be connected.
pub fn enumerate_2cuts(g: &Graph) -> Result<Vec<TwoCut>, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let all = g.vertex_mask();
    let mut out = Vec::new();
    for (u, v) in g.pairs() {
        let comps = g.components_within(all & !(1 << u) & !(1 << v));
        if comps.len() >= 2 {
            out.push(TwoCut {
                pair: (u, v),
                is_edge: g.has_edge(u, v),
                components: comps.into_iter().map(|c| bits(c).collect()).collect(),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::graphs_of_order;
    use crate::graph6::parse_graph6;
    use crate::named;

    #[test]
    fn dr_bracket_has_one_nonedge_cut() {
        let g = parse_graph6(b"Dr[").unwrap();
        let cuts = enumerate_2cuts(&g).unwrap();
        assert_eq!(cuts.len(), 1);
        assert!(!cuts[0].is_edge);
        assert_eq!(cuts[0].pair, (1, 2));
        assert_eq!(cuts[0].components, vec![vec![0], vec![3, 4]]);
    }

    #[test]
    fn k4_has_no_cuts() {
        assert!(enumerate_2cuts(&Graph::complete(4)).unwrap().is_empty());
    }

    #[test]
    fn p5_cuts_match_brute_force() {
        let p5 = named::path(5);
        let cuts: Vec<Pair> = enumerate_2cuts(&p5).unwrap().into_iter().map(|c| c.pair).collect();
        let mut expect = Vec::new();
        for (u, v) in p5.pairs() {
            let rest: Vec<usize> = (0..5).filter(|&w| w != u && w != v).collect();
            if !p5.induced(&rest).is_connected() {
                expect.push((u, v));
            }
        }
        assert_eq!(cuts, expect);
        assert!(cuts.contains(&(1, 3)) && !cuts.contains(&(0, 4)));
    }

    #[test]
    fn disconnected_input_is_an_error() {
        let g = Graph::new(4);
        assert_eq!(enumerate_2cuts(&g), Err(GraphError::Disconnected));
    }

    #[test]
    fn three_connected_examples() {
        assert!(is_k_connected(&named::complete_bipartite(3, 3), 3));
        assert!(is_k_connected(&named::complete_multipartite(&[2, 1, 1, 1]), 3));
        assert!(!is_k_connected(&named::cycle(5), 3));
        assert!(is_k_connected(&named::cycle(5), 2));
        assert!(!is_k_connected(&Graph::complete(3), 3));
        assert!(is_k_connected(&Graph::complete(4), 3));
    }

    #[test]
    fn two_cuts_match_brute_force_up_to_7() {
        for n in 4..=7 {
            for g in graphs_of_order(n).into_iter().filter(|g| g.is_connected()) {
                let got: Vec<Pair> = enumerate_2cuts(&g).unwrap().into_iter().map(|c| c.pair).collect();
                let expect: Vec<Pair> = g
                    .pairs()
                    .filter(|&(u, v)| {
                        let rest: Vec<usize> = (0..n).filter(|&w| w != u && w != v).collect();
                        !g.induced(&rest).is_connected()
                    })
                    .collect();
                assert_eq!(got, expect, "{g:?}");
                if !got.is_empty() || !cut_vertices(&g).is_empty() {
                    assert!(!is_k_connected(&g, 3), "{g:?}");
                }
            }
        }
    }
}
