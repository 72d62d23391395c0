//! Decide which construction handles `H`: run every case on `H` and on its
//! complement, take the first hit, and record a certificate that can be
//! checked again from scratch.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::connectivity::is_k_connected;
use crate::constructions::fix::FixStrategy;
use crate::constructions::schedule::FixPlan;
use crate::cores::{core, core_fixed_point_check, replay, CoreKind, CoreTrace};
use crate::error::{Error, GraphError};
use crate::gatekeeper::{blowup_mode, check_gatekeeper, has_fixing_operation, GatekeeperWitness};
use crate::graph::{bits, Graph, Pair, PairStatus};
use crate::graph6::{parse_graph6_str, to_graph6};
use crate::named;
use crate::recognizers::{
    classify_trivial, close_to_permutation, forest_unique_max, is_3conn_nonclique, is_bull_or_p4,
    is_permutation_graph, match_k2p_k11p, CloseToPermutation, K2pShape, Trivial, PERMUTATION_BUDGET,
};
use crate::search::isomorphic;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Case {
    NotApplicableTrivial,
    ForestUniqueMax,
    CoreK2p,
    CoreK11p,
    #[serde(rename = "CORE_3CONN")]
    Core3Conn,
    #[serde(rename = "CORE_11_BULL_P4")]
    Core11BullP4,
    CloseToPermutation,
    CoreGatekeeper,
    SpecialRationalGeometric,
    SpecialZ3,
    Unclassified,
    TheoremViolation,
}

impl Case {
    /// Cases tried on `H` and its complement, in order.
    pub const ORDER: [Case; 9] = [
        Case::ForestUniqueMax,
        Case::CoreK2p,
        Case::CoreK11p,
        Case::Core3Conn,
        Case::Core11BullP4,
        Case::CloseToPermutation,
        Case::CoreGatekeeper,
        Case::SpecialRationalGeometric,
        Case::SpecialZ3,
    ];

    pub fn name(self) -> String {
        serde_json::to_value(self).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
    }

    pub fn is_classified(self) -> bool {
        !matches!(self, Case::Unclassified | Case::TheoremViolation)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE", tag = "type")]
pub enum Witness {
    Trivial {
        shape: Trivial,
        #[serde(skip_serializing_if = "Option::is_none")]
        note: Option<String>,
    },
    Forest {
        centre: usize,
        max_degree: usize,
    },
    CoreShape {
        trace: CoreTrace,
        shape: K2pShape,
        apex: Pair,
    },
    ThreeConnected {
        trace: CoreTrace,
    },
    BullP4 {
        trace: CoreTrace,
        is_p4: bool,
    },
    Permutation(CloseToPermutation),
    Gatekeeper {
        trace: CoreTrace,
        edge: GatekeeperWitness,
        nonedge: GatekeeperWitness,
    },
    Special {
        key: String,
    },
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub input: String,
    pub complemented: bool,
    pub case: Case,
    pub witness: Witness,
}

/// The special graphs; their complements are matched through the
/// complement flag. `F?rLw`, the label sometimes used for the third one, is
/// the complement of `F?q|w` and so is covered too.
pub const SPECIAL_TABLE: [(&str, Case); 4] = [
    ("E?qw", Case::SpecialRationalGeometric),
    ("F?S|w", Case::SpecialRationalGeometric),
    ("F?q|w", Case::SpecialRationalGeometric),
    ("F?q~w", Case::SpecialZ3),
];

pub fn special_graph(key: &str) -> Option<Graph> {
    SPECIAL_TABLE.iter().find(|(k, _)| *k == key).map(|(k, _)| parse_graph6_str(k).expect("table entries parse"))
}

/// Match `h` against the special table (not its complement).
pub fn special_table(h: &Graph) -> Option<(&'static str, Case)> {
    SPECIAL_TABLE.iter().copied().find(|(k, _)| isomorphic(h, &special_graph(k).expect("known key")))
}

fn try_case(case: Case, g: &Graph) -> Result<Option<Witness>, Error> {
    Ok(match case {
        Case::ForestUniqueMax => forest_unique_max(g).map(|(centre, max_degree)| Witness::Forest { centre, max_degree }),
        Case::CoreK2p | Case::CoreK11p => {
            let r = core(g, CoreKind::Two);
            match (case, match_k2p_k11p(&r.core)) {
                (Case::CoreK2p, Some((shape @ K2pShape::K2p(p), apex))) if p >= 3 => {
                    Some(Witness::CoreShape { trace: r.trace, shape, apex })
                }
                (Case::CoreK11p, Some((shape @ K2pShape::K11p(p), apex))) if p >= 2 => {
                    Some(Witness::CoreShape { trace: r.trace, shape, apex })
                }
                _ => None,
            }
        }
        Case::Core3Conn => [CoreKind::Three, CoreKind::ThreeStar].into_iter().find_map(|kind| {
            let r = core(g, kind);
            is_3conn_nonclique(&r.core).then_some(Witness::ThreeConnected { trace: r.trace })
        }),
        Case::Core11BullP4 => {
            let r = core(g, CoreKind::OneOne);
            is_bull_or_p4(&r.core)
                .then(|| Witness::BullP4 { is_p4: r.core.n() == 4, trace: r.trace })
        }
        Case::CloseToPermutation => {
            if g.n() > PERMUTATION_BUDGET {
                None
            } else {
                close_to_permutation(g)?.map(Witness::Permutation)
            }
        }
        Case::CoreGatekeeper => [CoreKind::Two, CoreKind::Three, CoreKind::TwoEdge, CoreKind::TwoNonedge]
            .into_iter()
            .find_map(|kind| {
                let r = core(g, kind);
                let res = has_fixing_operation(&r.core);
                match (res.edge_witness, res.nonedge_witness) {
                    (Some(edge), Some(nonedge)) => Some(Witness::Gatekeeper { trace: r.trace, edge, nonedge }),
                    _ => None,
                }
            }),
        Case::SpecialRationalGeometric | Case::SpecialZ3 => special_table(g)
            .filter(|&(_, c)| c == case)
            .map(|(k, _)| Witness::Special { key: k.to_string() }),
        Case::NotApplicableTrivial | Case::Unclassified | Case::TheoremViolation => None,
    })
}

/// Classify `h`. Each case is tried on `h` and then on its complement
/// before moving to the next case.
pub fn classify(h: &Graph) -> Result<Certificate, Error> {
    if h.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let input = to_graph6(h);
    let shape = classify_trivial(h);
    if shape != Trivial::None {
        let note = (h.n() <= 2).then(|| {
            "excluded as a clique or independent set; no impossibility is claimed on at most 2 vertices".to_string()
        });
        return Ok(Certificate {
            input,
            complemented: false,
            case: Case::NotApplicableTrivial,
            witness: Witness::Trivial { shape, note },
        });
    }
    let comp = h.complement();
    for case in Case::ORDER {
        for (complemented, g) in [(false, h), (true, &comp)] {
            if let Some(witness) = try_case(case, g)? {
                return Ok(Certificate { input, complemented, case, witness });
            }
        }
    }
    let case = if h.n() >= 12 { Case::TheoremViolation } else { Case::Unclassified };
    Ok(Certificate { input, complemented: false, case, witness: Witness::None })
}

fn kept_core(g: &Graph, trace: &CoreTrace, kind: CoreKind) -> Option<Graph> {
    let c = g.induced(&trace.kept);
    (trace.kind == kind && trace.original_order == g.n() && core_fixed_point_check(&c, kind) && replay(&c, trace) == *g)
        .then_some(c)
}

/// Check a certificate against `h` using only the recognisers.
pub fn verify_certificate(h: &Graph, cert: &Certificate) -> bool {
    if to_graph6(h) != cert.input {
        return false;
    }
    let g = if cert.complemented { h.complement() } else { h.clone() };
    match (&cert.case, &cert.witness) {
        (Case::NotApplicableTrivial, Witness::Trivial { shape, .. }) => {
            *shape != Trivial::None && classify_trivial(h) == *shape
        }
        (Case::ForestUniqueMax, Witness::Forest { centre, max_degree }) => {
            forest_unique_max(&g) == Some((*centre, *max_degree))
        }
        (Case::CoreK2p | Case::CoreK11p, Witness::CoreShape { trace, shape, apex }) => {
            let ok_shape = match (cert.case, shape) {
                (Case::CoreK2p, K2pShape::K2p(p)) => *p >= 3,
                (Case::CoreK11p, K2pShape::K11p(p)) => *p >= 2,
                _ => false,
            };
            ok_shape
                && kept_core(&g, trace, CoreKind::Two).is_some_and(|c| match_k2p_k11p(&c) == Some((*shape, *apex)))
        }
        (Case::Core3Conn, Witness::ThreeConnected { trace }) => {
            matches!(trace.kind, CoreKind::Three | CoreKind::ThreeStar)
                && kept_core(&g, trace, trace.kind).is_some_and(|c| is_3conn_nonclique(&c))
        }
        (Case::Core11BullP4, Witness::BullP4 { trace, is_p4 }) => kept_core(&g, trace, CoreKind::OneOne)
            .is_some_and(|c| is_bull_or_p4(&c) && *is_p4 == isomorphic(&c, &named::path(4))),
        (Case::CloseToPermutation, Witness::Permutation(w)) => {
            let (e, f) = (w.edge, w.nonedge);
            g.has_edge(e.0, e.1)
                && !g.has_edge(f.0, f.1)
                && w.minus_edge.is_valid(&g.perturbed(e.0, e.1))
                && w.plus_nonedge.is_valid(&g.perturbed(f.0, f.1))
                && matches!(is_permutation_graph(&g), Ok(None))
        }
        (Case::CoreGatekeeper, Witness::Gatekeeper { trace, edge, nonedge }) => {
            let Some(c) = kept_core(&g, trace, trace.kind) else { return false };
            [(edge, PairStatus::Edge), (nonedge, PairStatus::Nonedge)].iter().all(|(w, kind)| {
                check_gatekeeper(&c, w.pair, *kind).unwrap_or(false)
                    && !w.modes.is_empty()
                    && w.modes.iter().all(|m| crate::gatekeeper::blowup_modes(&c, w.pair).contains(m))
            })
        }
        (Case::SpecialRationalGeometric | Case::SpecialZ3, Witness::Special { key }) => {
            special_table(&g).is_some_and(|(k, c)| c == cert.case && special_graph(key).is_some_and(|s| isomorphic(&s, &g)) && !k.is_empty())
        }
        (Case::Unclassified | Case::TheoremViolation, Witness::None) => false,
        _ => false,
    }
}

/// The graph the fixing operations keep out, and a strategy per pair kind,
/// for certificates whose case is realised by fixing operations. The plan
/// applies to the complement of `h` when the certificate is complemented.
pub fn fix_plan(h: &Graph) -> Result<FixPlan, Error> {
    let cert = classify(h)?;
    let g = if cert.complemented { h.complement() } else { h.clone() };
    let unsupported = |why: &str| -> Error {
        GraphError::Precondition(format!("case {} has no fixing-operation plan: {why}", cert.case.name())).into()
    };
    let glue_with = |c: &Graph, status: PairStatus| -> Option<FixStrategy> {
        c.pairs()
            .filter(|&(u, v)| PairStatus::of(c, u, v) == status)
            .find_map(|p| blowup_mode(c, p).map(|mode| FixStrategy::GatekeeperGlue { pair: p, mode }))
    };
    let plan = match &cert.witness {
        Witness::BullP4 { is_p4: true, .. } => FixPlan {
            pattern: named::path(4),
            edge: FixStrategy::TwinDuplicate,
            nonedge: FixStrategy::TwinDuplicate,
        },
        Witness::CoreShape { shape: K2pShape::K2p(p), .. } => FixPlan {
            pattern: named::complete_bipartite(2, *p),
            edge: FixStrategy::K2pEdge,
            nonedge: FixStrategy::K2pNonedge { p: *p },
        },
        Witness::CoreShape { shape: K2pShape::K11p(p), .. } => FixPlan {
            pattern: named::complete_multipartite(&[1, 1, *p]),
            edge: FixStrategy::K11pEdge { p: *p },
            nonedge: FixStrategy::K11pNonedge,
        },
        Witness::ThreeConnected { trace } => {
            let c = g.induced(&trace.kept);
            // a pair of the other status becomes the fixed pair once perturbed
            let edge = glue_with(&c, PairStatus::Nonedge).ok_or_else(|| unsupported("no usable non-edge"))?;
            let nonedge = glue_with(&c, PairStatus::Edge).ok_or_else(|| unsupported("no usable edge"))?;
            FixPlan { pattern: c, edge, nonedge }
        }
        Witness::Gatekeeper { trace, edge, nonedge } => FixPlan {
            pattern: g.induced(&trace.kept),
            edge: FixStrategy::GatekeeperGlue { pair: nonedge.pair, mode: nonedge.modes[0] },
            nonedge: FixStrategy::GatekeeperGlue { pair: edge.pair, mode: edge.modes[0] },
        },
        _ => return Err(unsupported("it is realised by an explicit infinite graph or not at all")),
    };
    Ok(plan)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub total: usize,
    pub counts: BTreeMap<Case, usize>,
    /// Counts split by whether the complement was used.
    pub complemented: usize,
    /// graph6 of every non-trivial graph no case handled, sorted.
    pub unclassified: Vec<String>,
    /// `(line number, message)` for lines that failed to parse.
    pub errors: Vec<(usize, String)>,
}

impl SweepReport {
    pub fn is_complete(&self) -> bool {
        self.unclassified.is_empty()
    }
}

/// Classify every graph6 line (1-based line numbers in errors) using
/// `workers` threads. Blank lines are skipped. The report does not depend
/// on the worker count or on the line order apart from error positions.
pub fn sweep<S: AsRef<str> + Sync>(lines: &[S], n_max: Option<usize>, workers: usize) -> Result<SweepReport, Error> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| GraphError::Precondition(e.to_string()))?;
    let results: Vec<Option<Result<Certificate, String>>> = pool.install(|| {
        lines
            .par_iter()
            .map(|line| {
                let line = line.as_ref().trim();
                if line.is_empty() {
                    return None;
                }
                let g = match parse_graph6_str(line) {
                    Ok(g) => g,
                    Err(e) => return Some(Err(e.to_string())),
                };
                if n_max.is_some_and(|m| g.n() > m) {
                    return Some(Err(format!("graph has {} vertices, above the limit", g.n())));
                }
                Some(classify(&g).map_err(|e| e.to_string()))
            })
            .collect()
    });
    let mut report = SweepReport::default();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            None => {}
            Some(Err(msg)) => report.errors.push((i + 1, msg)),
            Some(Ok(cert)) => {
                report.total += 1;
                *report.counts.entry(cert.case).or_default() += 1;
                report.complemented += cert.complemented as usize;
                if !cert.case.is_classified() {
                    report.unclassified.push(cert.input);
                }
            }
        }
    }
    report.unclassified.sort();
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceReport {
    pub a: usize,
    pub b: usize,
    pub configurations: usize,
    pub counterexamples: Vec<Vec<Pair>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub slices: Vec<SliceReport>,
    pub configurations: usize,
    pub all_passed: bool,
}

/// Bipartite graph on `a + b` vertices: `A = 0..a`, and `B` vertex `i`
/// joined to every `A` vertex except the two in `missed[i]`.
pub fn missing_pair_graph(a: usize, missed: &[Pair]) -> Graph {
    let mut g = Graph::new(a + missed.len());
    for (i, &(x, y)) in missed.iter().enumerate() {
        for v in (0..a).filter(|&v| v != x && v != y) {
            g.add_edge(a + i, v);
        }
    }
    g
}

/// A vertex set of size at least 5 inducing a 3-connected subgraph, tried
/// from the largest sets down.
pub fn three_connected_subset(g: &Graph) -> Option<u64> {
    let n = g.n();
    let mut masks: Vec<u64> = (0u64..1 << n).filter(|m| m.count_ones() >= 5).collect();
    masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    masks.into_iter().find(|&mask| {
        bits(mask).all(|v| (g.neighbors(v) & mask).count_ones() >= 3) && is_k_connected(&g.induced_mask(mask).0, 3)
    })
}

fn multisets(items: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(items: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items {
            cur.push(i);
            rec(items, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Check one `(|A|, |B|)` slice.
pub fn structure_slice(a: usize, b: usize) -> SliceReport {
    let pairs: Vec<Pair> = Graph::new(a).pairs().collect();
    let choices = multisets(pairs.len(), b);
    let mut counterexamples: Vec<Vec<Pair>> = choices
        .par_iter()
        .filter_map(|c| {
            let missed: Vec<Pair> = c.iter().map(|&i| pairs[i]).collect();
            three_connected_subset(&missing_pair_graph(a, &missed)).is_none().then_some(missed)
        })
        .collect();
    counterexamples.sort();
    SliceReport { a, b, configurations: choices.len(), counterexamples }
}

/// Every split of 12 vertices into `|A| >= 5`, `|B| >= 3` where each `B`
/// vertex misses exactly two `A` vertices.
pub fn structure_check_12() -> StructureReport {
    let slices: Vec<SliceReport> = (5..=9).map(|a| structure_slice(a, 12 - a)).collect();
    let configurations = slices.iter().map(|s| s.configurations).sum();
    let all_passed = slices.iter().all(|s| s.counterexamples.is_empty());
    StructureReport { slices, configurations, all_passed }
}
