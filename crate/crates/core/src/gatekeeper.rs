//! Gatekeeper search on 2-connected graphs.
//!
//! An edge `xy` of `h` is accepted as a gatekeeper when no component of `h`
//! minus a non-edge 2-cut `{u, v}` (taken together with `u`, `v` and how it
//! attaches to them) embeds into `h - xy` with `{u, v}` landing on `{x, y}`.
//! Non-edges are handled dually with edge 2-cuts and `h + xy`. A pair is only
//! usable for a fixing operation if the blown-up copy of `h` can also be made
//! safe, which depends on the twins of its endpoints.

use serde::{Deserialize, Serialize};

use crate::connectivity::{enumerate_2cuts, is_k_connected};
use crate::constructions::glue::glue;
use crate::error::GraphError;
use crate::graph::{has_false_twin, has_true_twin, Graph, MarkedPair, Pair, PairStatus};
use crate::search::{contains_induced, find_marked};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlowupMode {
    #[serde(rename = "CLIQUE_MODE")]
    Clique,
    #[serde(rename = "INDEP_MODE")]
    Indep,
}

/// Every blow-up mode that keeps the blown-up graph free of `h`: cliques
/// when neither endpoint has a true twin, independent sets when neither has
/// a false twin.
pub fn blowup_modes(h: &Graph, (u, v): Pair) -> Vec<BlowupMode> {
    let mut modes = Vec::new();
    if !has_true_twin(h, u) && !has_true_twin(h, v) {
        modes.push(BlowupMode::Clique);
    }
    if !has_false_twin(h, u) && !has_false_twin(h, v) {
        modes.push(BlowupMode::Indep);
    }
    modes
}

/// The preferred mode: cliques first.
pub fn blowup_mode(h: &Graph, pair: Pair) -> Option<BlowupMode> {
    blowup_modes(h, pair).into_iter().next()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE", tag = "reason")]
pub enum Failure {
    #[serde(rename = "NOT_2CONNECTED")]
    NotTwoConnected,
    Complete,
    TwinConflict,
    FragmentFound { cut: Pair, component: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDiagnostic {
    pub pair: Pair,
    pub status: PairStatus,
    #[serde(flatten)]
    pub failure: Failure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GatekeeperWitness {
    pub pair: Pair,
    pub modes: Vec<BlowupMode>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GatekeeperResult {
    pub edge_witness: Option<GatekeeperWitness>,
    pub nonedge_witness: Option<GatekeeperWitness>,
    pub diagnostics: Vec<PairDiagnostic>,
}

impl GatekeeperResult {
    /// Both an edge and a non-edge fixing operation were found.
    pub fn is_complete(&self) -> bool {
        self.edge_witness.is_some() && self.nonedge_witness.is_some()
    }
}

fn check_preconditions(h: &Graph, (x, y): Pair, status: PairStatus) -> Result<(), GraphError> {
    if x == y || x >= h.n() || y >= h.n() {
        return Err(GraphError::BadPair { u: x, v: y, n: h.n() });
    }
    if !is_k_connected(h, 2) {
        return Err(GraphError::Precondition("graph is not 2-connected".into()));
    }
    if h.edge_count() == h.n() * (h.n() - 1) / 2 {
        return Err(GraphError::Precondition("graph is complete".into()));
    }
    if PairStatus::of(h, x, y) != status {
        return Err(GraphError::Precondition(format!("pair ({x},{y}) is not a {status:?}")));
    }
    Ok(())
}

/// First 2-cut component whose marked fragment occurs in the perturbed
/// graph, if any. Callers have already checked the preconditions.
fn first_fragment(h: &Graph, (x, y): Pair, cuts: &[crate::connectivity::TwoCut]) -> Option<(Pair, Vec<usize>)> {
    let status = PairStatus::of(h, x, y);
    let host = MarkedPair::new(h.perturbed(x, y), x, y).ok()?;
    // an edge is tested against non-edge cuts and vice versa
    let cut_is_edge = status == PairStatus::Nonedge;
    for cut in cuts.iter().filter(|c| c.is_edge == cut_is_edge) {
        let (u, v) = cut.pair;
        for comp in &cut.components {
            let mut verts = vec![u, v];
            verts.extend(comp);
            let frag = MarkedPair::new(h.induced(&verts), 0, 1).ok()?;
            if find_marked(&host, &frag).is_some() {
                return Some((cut.pair, comp.clone()));
            }
        }
    }
    None
}

/// The fragment test for a single pair. `kind` must match the pair.
pub fn check_gatekeeper(h: &Graph, pair: Pair, kind: PairStatus) -> Result<bool, GraphError> {
    check_preconditions(h, pair, kind)?;
    let cuts = enumerate_2cuts(h)?;
    Ok(first_fragment(h, crate::graph::pair(pair.0, pair.1), &cuts).is_none())
}

/// Look for an edge and a non-edge that pass both the twin condition and
/// the fragment test. Pairs are scanned in colex order and each kind stops
/// at its first witness; every pair scanned before that carries a reason.
pub fn has_fixing_operation(h: &Graph) -> GatekeeperResult {
    let mut res = GatekeeperResult::default();
    let blanket = if !is_k_connected(h, 2) {
        Some(Failure::NotTwoConnected)
    } else if h.edge_count() == h.n() * (h.n() - 1) / 2 {
        Some(Failure::Complete)
    } else {
        None
    };
    if let Some(f) = blanket {
        res.diagnostics = h
            .pairs()
            .map(|(u, v)| PairDiagnostic { pair: (u, v), status: PairStatus::of(h, u, v), failure: f.clone() })
            .collect();
        return res;
    }
    let cuts = enumerate_2cuts(h).expect("2-connected graphs are connected");
    for status in [PairStatus::Edge, PairStatus::Nonedge] {
        for p in h.pairs().filter(|&(u, v)| PairStatus::of(h, u, v) == status) {
            let modes = blowup_modes(h, p);
            let failure = if modes.is_empty() {
                Failure::TwinConflict
            } else if let Some((cut, component)) = first_fragment(h, p, &cuts) {
                Failure::FragmentFound { cut, component }
            } else {
                let w = Some(GatekeeperWitness { pair: p, modes });
                match status {
                    PairStatus::Edge => res.edge_witness = w,
                    PairStatus::Nonedge => res.nonedge_witness = w,
                }
                break;
            };
            res.diagnostics.push(PairDiagnostic { pair: p, status, failure });
        }
    }
    res
}

/// Every pair of the given kind that passes the fragment test (twins
/// ignored).
pub fn gatekeeper_pairs(h: &Graph, kind: PairStatus) -> Result<Vec<Pair>, GraphError> {
    let mut out = Vec::new();
    for (u, v) in h.pairs().filter(|&(u, v)| PairStatus::of(h, u, v) == kind) {
        if check_gatekeeper(h, (u, v), kind)? {
            out.push((u, v));
        }
    }
    Ok(out)
}

/// A concrete host showing a pair is not a gatekeeper.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub host: Graph,
    /// Host pair the perturbed copy of `h` was glued on, in the orientation
    /// used (`h`'s pair `(x, y)` went to `(a, b)`).
    pub host_pair: Pair,
    pub glued: Graph,
}

/// Search `h`-free hosts among `hosts` for a pair of the opposite status on
/// which gluing `h` with `(x, y)` perturbed creates a copy of `h`. Works on
/// any graph, 2-connected or not.
pub fn refute_gatekeeper<'a>(
    h: &Graph,
    (x, y): Pair,
    hosts: impl IntoIterator<Item = &'a Graph>,
) -> Option<Refutation> {
    let piece = h.perturbed(x, y);
    let want = PairStatus::of(h, x, y).flipped();
    for host in hosts {
        if contains_induced(host, h) {
            continue;
        }
        for (a, b) in host.pairs() {
            if PairStatus::of(host, a, b) != want {
                continue;
            }
            for (s, t) in [(a, b), (b, a)] {
                let Ok((glued, _)) = glue(host, &piece, &[s, t], &[x, y]) else { continue };
                if contains_induced(&glued, h) {
                    return Some(Refutation { host: host.clone(), host_pair: (s, t), glued });
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::graphs_of_order;
    use crate::graph6::parse_graph6;
    use crate::named;
    use crate::random::gnp;
    use crate::search::find_induced;

    #[test]
    fn blowup_mode_examples() {
        assert_eq!(blowup_mode(&named::cycle(5), (0, 1)), Some(BlowupMode::Clique));
        assert_eq!(blowup_modes(&Graph::complete(3), (0, 1)), vec![BlowupMode::Indep]);
    }

    #[test]
    fn every_nontrivial_small_graph_has_a_blowup_edge() {
        for n in 2..=7 {
            for h in graphs_of_order(n) {
                let m = h.edge_count();
                if m == 0 || m == n * (n - 1) / 2 {
                    continue;
                }
                assert!(h.edges().any(|e| blowup_mode(&h, e).is_some()), "{h:?}");
            }
        }
    }

    #[test]
    fn dr_bracket_non_edges_are_all_gatekeepers() {
        let h = parse_graph6(b"Dr[").unwrap();
        assert!(enumerate_2cuts(&h).unwrap().iter().all(|c| !c.is_edge));
        let mut all: Vec<Pair> = h.non_edges().collect();
        let mut got = gatekeeper_pairs(&h, PairStatus::Nonedge).unwrap();
        all.sort();
        got.sort();
        assert_eq!(got, all);
    }

    #[test]
    fn dr_bracket_fragments_are_absent() {
        // the edges of Dr[ that avoid the cut {1, 2}: no fragment from the
        // cut components appears in h - e
        let h = parse_graph6(b"Dr[").unwrap();
        for e in h.edges() {
            let ok = check_gatekeeper(&h, e, PairStatus::Edge).unwrap();
            let expect = !crate::gatekeeper::tests::naive_fragment_found(&h, e);
            assert_eq!(ok, expect, "{e:?}");
        }
    }

    /// Direct definition of the fragment test by trying every injection.
    pub(super) fn naive_fragment_found(h: &Graph, (x, y): Pair) -> bool {
        let host = h.perturbed(x, y);
        let cut_is_edge = !h.has_edge(x, y);
        for cut in enumerate_2cuts(h).unwrap().into_iter().filter(|c| c.is_edge == cut_is_edge) {
            let (u, v) = cut.pair;
            for comp in cut.components {
                let mut verts = vec![u, v];
                verts.extend(comp);
                let mut frag = h.induced(&verts);
                frag.remove_edge(0, 1);
                let mut hh = host.clone();
                hh.remove_edge(x, y);
                for (s, t) in [(x, y), (y, x)] {
                    if crate::search::oracle::naive_find(&hh, &frag, &[(0, s), (1, t)]) {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn fragment_test_agrees_with_naive_up_to_6() {
        for n in 3..=6 {
            for h in graphs_of_order(n) {
                if !is_k_connected(&h, 2) || h.edge_count() == n * (n - 1) / 2 {
                    continue;
                }
                for p in h.pairs() {
                    let kind = PairStatus::of(&h, p.0, p.1);
                    assert_eq!(check_gatekeeper(&h, p, kind).unwrap(), !naive_fragment_found(&h, p), "{h:?} {p:?}");
                }
            }
        }
    }

    #[test]
    fn paths_have_no_gatekeeper_edges() {
        let hosts: Vec<Graph> = (1..=4).flat_map(graphs_of_order).collect();
        for t in 4..=7 {
            let p = named::path(t);
            assert!(check_gatekeeper(&p, (0, 1), PairStatus::Edge).is_err());
            assert!(has_fixing_operation(&p).edge_witness.is_none());
            for e in p.edges() {
                let r = refute_gatekeeper(&p, e, &hosts).expect("path edge refuted");
                assert!(!contains_induced(&r.host, &p));
                assert!(contains_induced(&r.glued, &p));
            }
        }
    }

    #[test]
    fn c5_has_both_witnesses() {
        let r = has_fixing_operation(&named::cycle(5));
        assert!(r.is_complete());
        assert_eq!(r.edge_witness.unwrap().modes, vec![BlowupMode::Clique, BlowupMode::Indep]);
    }

    #[test]
    fn c5_with_pendant_is_not_2_connected() {
        let mut g = named::cycle(5);
        let p = g.add_vertex().unwrap();
        g.add_edge(0, p);
        let r = has_fixing_operation(&g);
        assert!(r.edge_witness.is_none() && r.nonedge_witness.is_none());
        assert_eq!(r.diagnostics.len(), 15);
        assert!(r.diagnostics.iter().all(|d| d.failure == Failure::NotTwoConnected));
        let core = crate::cores::core(&g, crate::cores::CoreKind::Two).core;
        assert!(has_fixing_operation(&core).is_complete());
    }

    #[test]
    fn complete_graphs_short_circuit() {
        let r = has_fixing_operation(&Graph::complete(4));
        assert!(r.diagnostics.iter().all(|d| d.failure == Failure::Complete));
    }

    #[test]
    fn witnesses_are_complete_or_every_pair_explained() {
        for h in graphs_of_order(6) {
            let r = has_fixing_operation(&h);
            for (w, status) in [(&r.edge_witness, PairStatus::Edge), (&r.nonedge_witness, PairStatus::Nonedge)] {
                match w {
                    Some(w) => {
                        assert!(check_gatekeeper(&h, w.pair, status).unwrap());
                        assert_eq!(blowup_mode(&h, w.pair), Some(w.modes[0]));
                    }
                    None => {
                        let explained = r.diagnostics.iter().filter(|d| d.status == status).count();
                        let total = h.pairs().filter(|&(u, v)| PairStatus::of(&h, u, v) == status).count();
                        assert_eq!(explained, total);
                    }
                }
            }
        }
    }

    /// Plain component test: only asks whether `h[C]` embeds in the
    /// perturbed graph at all.
    fn plain_component_found(h: &Graph, (x, y): Pair) -> bool {
        let host = h.perturbed(x, y);
        let cut_is_edge = !h.has_edge(x, y);
        enumerate_2cuts(h)
            .unwrap()
            .into_iter()
            .filter(|c| c.is_edge == cut_is_edge)
            .any(|c| c.components.iter().any(|comp| contains_induced(&host, &h.induced(comp))))
    }

    #[test]
    fn colored_test_is_at_least_as_permissive_as_plain() {
        for n in 3..=7 {
            for h in graphs_of_order(n) {
                if !is_k_connected(&h, 2) || h.edge_count() == n * (n - 1) / 2 {
                    continue;
                }
                for p in h.pairs() {
                    if !plain_component_found(&h, p) {
                        let kind = PairStatus::of(&h, p.0, p.1);
                        assert!(check_gatekeeper(&h, p, kind).unwrap(), "{h:?} {p:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn accepted_gatekeepers_survive_random_hosts() {
        let candidates: Vec<Graph> = (4..=6)
            .flat_map(graphs_of_order)
            .filter(|h| is_k_connected(h, 2) && h.edge_count() < h.n() * (h.n() - 1) / 2)
            .collect();
        let mut checked = 0;
        for (i, h) in candidates.iter().enumerate().step_by(7) {
            for kind in [PairStatus::Edge, PairStatus::Nonedge] {
                let Some(&(x, y)) = gatekeeper_pairs(h, kind).unwrap().first() else { continue };
                let piece = h.perturbed(x, y);
                let mut hosts = 0;
                let mut seed = i as u64 * 1000;
                while hosts < 200 {
                    seed += 1;
                    let g = gnp(4 + (seed % 7) as usize, 0.5, seed);
                    if contains_induced(&g, h) {
                        continue;
                    }
                    hosts += 1;
                    for (a, b) in g.pairs().filter(|&(a, b)| PairStatus::of(&g, a, b) == kind.flipped()) {
                        let (glued, _) = glue(&g, &piece, &[a, b], &[x, y]).unwrap();
                        assert!(find_induced(&glued, h, &[]).is_none(), "{h:?} {:?} {g:?}", (x, y));
                    }
                }
                checked += 1;
            }
        }
        assert!(checked > 10);
    }
}
