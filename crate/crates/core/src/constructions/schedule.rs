//! Fix scheduling: stage `i` enumerates its pairs in colex order, and queue
//! entries `(i, j)` are served shell by shell, `(1,1) < (1,2) < (2,1) <
//! (2,2) < (1,3) < ...`, skipping entries that do not exist.

use serde::{Deserialize, Serialize};

use super::fix::{fix_pair, FixStrategy, PrefixState};
use crate::error::{Error, GraphError};
use crate::graph::{Graph, Pair, PairStatus};
use crate::search::contains_induced;

/// What to keep out and how to fix each kind of pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixPlan {
    #[serde(with = "super::fix::g6")]
    pub pattern: Graph,
    pub edge: FixStrategy,
    pub nonedge: FixStrategy,
}

/// All existing entries `(i, j)` (1-based) in priority order, where stage
/// `i` has `rows[i - 1]` pairs.
pub fn priority_order(rows: &[usize]) -> Vec<(usize, usize)> {
    let shells = rows.iter().copied().max().unwrap_or(0).max(rows.len());
    let exists = |i: usize, j: usize| i <= rows.len() && j <= rows[i - 1];
    let mut out = Vec::new();
    for k in 1..=shells {
        out.extend((1..k).map(|i| (i, k)).filter(|&(i, j)| exists(i, j)));
        out.extend((1..=k).map(|j| (k, j)).filter(|&(i, j)| exists(i, j)));
    }
    out
}

/// The `j`-th pair (0-based) in colex order.
pub fn colex_pair(j: usize) -> Pair {
    let mut v = 1;
    while v * (v + 1) / 2 <= j {
        v += 1;
    }
    (j - v * (v - 1) / 2, v)
}

/// A pair counts as unfixed when perturbing it alone avoids the pattern.
pub fn is_unfixed(g: &Graph, pattern: &Graph, (x, y): Pair) -> bool {
    !contains_induced(&g.perturbed(x, y), pattern)
}

/// Highest-priority unfixed pair of the current graph.
pub fn next_unfixed(state: &PrefixState) -> Option<((usize, usize), Pair)> {
    priority_order(&state.row_sizes()).into_iter().find_map(|(i, j)| {
        let p = colex_pair(j - 1);
        is_unfixed(&state.graph, &state.pattern, p).then_some(((i, j), p))
    })
}

/// Run up to `steps` fixes from `seed`. Stops early, without error, when
/// every pair is fixed or the next fix would pass the vertex cap.
pub fn schedule_with_plan(seed: &Graph, plan: &FixPlan, steps: usize, m: usize) -> Result<Vec<PrefixState>, Error> {
    let mut states = vec![PrefixState::new(seed.clone(), plan.pattern.clone(), m)?];
    for _ in 0..steps {
        let cur = states.last().expect("nonempty");
        let Some((entry, p)) = next_unfixed(cur) else { break };
        let strategy = match PairStatus::of(&cur.graph, p.0, p.1) {
            PairStatus::Edge => &plan.edge,
            PairStatus::Nonedge => &plan.nonedge,
        };
        match fix_pair(cur, p, strategy) {
            Ok(mut next) => {
                next.fixed_ledger.last_mut().expect("fix recorded").1 = Some(entry);
                states.push(next);
            }
            Err(Error::Graph(GraphError::TooManyVertices { .. })) => break,
            Err(e) => return Err(e),
        }
    }
    Ok(states)
}

/// Classify `h`, derive its fixing plan and run the schedule.
pub fn schedule_fixes(seed: &Graph, h: &Graph, steps: usize, m: Option<usize>) -> Result<Vec<PrefixState>, Error> {
    let plan = crate::classifier::fix_plan(h)?;
    schedule_with_plan(seed, &plan, steps, m.unwrap_or(h.n() + 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;
    use crate::search::isomorphic;

    #[test]
    fn enumeration_prefix() {
        assert_eq!(
            priority_order(&[2, 2, 3]),
            vec![(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3)]
        );
        assert_eq!(priority_order(&[3, 3, 3])[4..7], [(1, 3), (2, 3), (3, 1)]);
        assert!(priority_order(&[]).is_empty());
    }

    #[test]
    fn priority_order_is_sorted_by_shell_then_rule() {
        let rows = [1, 6, 15, 3];
        let got = priority_order(&rows);
        let mut expect: Vec<(usize, usize)> =
            (1..=rows.len()).flat_map(|i| (1..=rows[i - 1]).map(move |j| (i, j))).collect();
        // shell, then column entries (i < k) before row entries, then index
        expect.sort_by_key(|&(i, j)| {
            let k = i.max(j);
            if i < k {
                (k, 0, i)
            } else {
                (k, 1, j)
            }
        });
        assert_eq!(got, expect);
    }

    #[test]
    fn colex_pairs() {
        let g = Graph::new(6);
        for (j, p) in g.pairs().enumerate() {
            assert_eq!(colex_pair(j), p);
        }
    }

    fn twin_plan() -> FixPlan {
        FixPlan { pattern: named::path(4), edge: FixStrategy::TwinDuplicate, nonedge: FixStrategy::TwinDuplicate }
    }

    #[test]
    fn p4_twin_schedule_matches_the_worked_sequence() {
        let states = schedule_with_plan(&Graph::complete(2), &twin_plan(), 3, 6).unwrap();
        assert_eq!(states.len(), 4);
        assert_eq!(states[0].graph, Graph::complete(2));
        assert!(isomorphic(&states[1].graph, &named::cycle(4)));
        // u1 u2 v1 v2 w1 x1
        let g3 = Graph::from_edges(
            6,
            &[(0, 1), (0, 3), (4, 3), (5, 3), (5, 1), (1, 2), (4, 1), (2, 3), (0, 4), (2, 5)],
        );
        assert!(isomorphic(&states[2].graph, &g3));
        let entries: Vec<(usize, usize)> = states[3].fixed_ledger.iter().map(|e| e.1.unwrap()).collect();
        assert_eq!(entries[..2], [(1, 1), (2, 2)]);
        for w in states.windows(2) {
            assert_eq!(w[1].graph.induced(&(0..w[0].graph.n()).collect::<Vec<_>>()), w[0].graph);
            assert!(!contains_induced(&w[1].graph, &named::path(4)));
        }
    }

    #[test]
    fn zero_steps_returns_the_seed() {
        let states = schedule_with_plan(&Graph::complete(2), &twin_plan(), 0, 6).unwrap();
        assert_eq!(states.len(), 1);
    }

    #[test]
    fn cap_overflow_gives_partial_sequence() {
        let plan = FixPlan {
            pattern: named::complete_bipartite(2, 3),
            edge: FixStrategy::K2pEdge,
            nonedge: FixStrategy::K2pNonedge { p: 3 },
        };
        let states = schedule_with_plan(&named::path(3), &plan, 100, 10).unwrap();
        assert!(states.len() > 1 && states.len() < 101);
        assert!(states.last().unwrap().graph.n() <= 64);
    }

    #[test]
    fn seed_containing_pattern_is_rejected() {
        assert!(schedule_with_plan(&named::path(4), &twin_plan(), 1, 3).is_err());
    }
}
