//! Freeness and saturation checks on finite graphs, bounded checks that a
//! pair is fixed, and replays of the explicit witnesses for the infinite
//! constructions.

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::constructions::exact::{format_rational, int, pi_enclosure, rat, Rational};
use num_traits::Signed;
use crate::constructions::fix::PrefixState;
use crate::constructions::oracle::{oracle_adjacent, oracle_window, random_window, OracleKind, OracleVertex};
use crate::enumerate::graphs_of_order;
use crate::error::{Error, GraphError};
use crate::graph::{bits, pair, Graph, Pair};
use crate::graph6::{parse_graph6_str, to_graph6};
use crate::named;
use crate::random::rng;
use crate::recognizers::is_permutation_graph;
use crate::search::{contains_induced, find_induced, Embedding};

pub fn is_free(g: &Graph, h: &Graph) -> bool {
    find_induced(g, h, &[]).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE", tag = "result")]
pub enum Saturation {
    Saturated,
    /// `g` already contains `h`.
    NotFree { embedding: Embedding },
    /// Perturbing this pair leaves the graph `h`-free.
    Unfixed { pair: Pair },
}

impl Saturation {
    pub fn is_saturated(&self) -> bool {
        matches!(self, Saturation::Saturated)
    }
}

/// Whether `g` is `h`-free and every single perturbation creates `h`.
/// Twin pairs are examined first, then the rest in colex order.
pub fn induced_saturated(g: &Graph, h: &Graph) -> Result<Saturation, GraphError> {
    if g.n() < 2 {
        return Err(GraphError::Precondition("saturation needs at least two vertices".into()));
    }
    if let Some(embedding) = find_induced(g, h, &[]) {
        return Ok(Saturation::NotFree { embedding });
    }
    let is_twin = |(u, v): Pair| {
        let others = !(1u64 << u | 1 << v);
        g.neighbors(u) & others == g.neighbors(v) & others
    };
    let (twins, rest): (Vec<Pair>, Vec<Pair>) = g.pairs().partition(|&p| is_twin(p));
    Ok(twins
        .into_iter()
        .chain(rest)
        .find(|&(u, v)| !contains_induced(&g.perturbed(u, v), h))
        .map_or(Saturation::Saturated, |pair| Saturation::Unfixed { pair }))
}

/// Distinct pairs perturbed together.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerturbationSet {
    pub pairs: Vec<Pair>,
}

impl PerturbationSet {
    pub fn new(pairs: Vec<Pair>, n: usize) -> Result<Self, GraphError> {
        if pairs.is_empty() {
            return Err(GraphError::Precondition("empty perturbation set".into()));
        }
        let mut seen = Vec::with_capacity(pairs.len());
        for &(u, v) in &pairs {
            if u == v || u >= n || v >= n {
                return Err(GraphError::BadPair { u, v, n });
            }
            let p = pair(u, v);
            if seen.contains(&p) {
                return Err(GraphError::Precondition(format!("pair {p:?} repeated")));
            }
            seen.push(p);
        }
        Ok(PerturbationSet { pairs: seen })
    }

    pub fn apply(&self, g: &Graph) -> Graph {
        let mut out = g.clone();
        for &(u, v) in &self.pairs {
            out.toggle(u, v);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCheck {
    pub pair: Pair,
    pub budget: usize,
    pub trials: usize,
    pub seed: u64,
    /// Perturbation sets tried, the pair alone included.
    pub tested: usize,
    pub exhaustive: bool,
    /// A perturbation containing the pair that leaves the graph `h`-free.
    pub counterexample: Option<PerturbationSet>,
}

impl PairCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Above this many extra sets the size <= 2 sweep is skipped.
pub const EXHAUSTIVE_LIMIT: usize = 200_000;

/// Evidence that `pair` is fixed in `g`: perturb it together with every
/// set of at most `min(k, 2)` other pairs (when there are few enough), then
/// with `trials` random sets of 1..=k other pairs. Passing is evidence only.
pub fn pair_fixed_check(
    g: &Graph,
    h: &Graph,
    (x, y): Pair,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<PairCheck, GraphError> {
    let n = g.n();
    if x == y || x >= n || y >= n {
        return Err(GraphError::BadPair { u: x, v: y, n });
    }
    let target = pair(x, y);
    let others: Vec<Pair> = g.pairs().filter(|&p| p != target).collect();
    let mut check = PairCheck { pair: target, budget: k, trials, seed, tested: 0, exhaustive: false, counterexample: None };
    let test = |extra: Vec<Pair>, check: &mut PairCheck| -> bool {
        let mut pairs = vec![target];
        pairs.extend(extra);
        let set = PerturbationSet { pairs };
        check.tested += 1;
        if is_free(&set.apply(g), h) {
            check.counterexample = Some(set);
            return false;
        }
        true
    };
    if !test(Vec::new(), &mut check) {
        return Ok(check);
    }
    let m = others.len();
    let small = k.min(2);
    let count = if small == 0 { 0 } else if small == 1 { m } else { m + m * m.saturating_sub(1) / 2 };
    if count <= EXHAUSTIVE_LIMIT {
        check.exhaustive = true;
        if small >= 1 {
            for i in 0..m {
                if !test(vec![others[i]], &mut check) {
                    return Ok(check);
                }
            }
        }
        if small >= 2 {
            for i in 0..m {
                for j in i + 1..m {
                    if !test(vec![others[i], others[j]], &mut check) {
                        return Ok(check);
                    }
                }
            }
        }
    }
    if k > 0 && m > 0 {
        let mut r = rng(seed);
        for _ in 0..trials {
            let size = r.gen_range(1..=k.min(m));
            let extra = sample(&mut r, m, size).into_iter().map(|i| others[i]).collect();
            if !test(extra, &mut check) {
                return Ok(check);
            }
        }
    }
    Ok(check)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotonicityViolation {
    pub generation: usize,
    pub pair: Pair,
}

/// Pairs of `G_i` that pass [`pair_fixed_check`] with budget `k` in `G_i`
/// and fail it in `G_{i+1}`. Each stage is a prefix of the next.
pub fn ledger_monotonicity(states: &[PrefixState], k: usize, trials: usize, seed: u64) -> Vec<MonotonicityViolation> {
    let mut out = Vec::new();
    for (i, w) in states.windows(2).enumerate() {
        let (a, b) = (&w[0], &w[1]);
        for p in a.graph.pairs() {
            let before = pair_fixed_check(&a.graph, &a.pattern, p, k, trials, seed).expect("pair in range");
            if before.passed() && !pair_fixed_check(&b.graph, &b.pattern, p, k, trials, seed).expect("pair in range").passed() {
                out.push(MonotonicityViolation { generation: i + 1, pair: p });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShadowFailure {
    pub graph: String,
    pub reason: String,
}

/// Every P4-free graph on `2..=n_max` vertices is not P4-saturated, and
/// the reported pair is a pair of twins whose perturbation stays P4-free.
/// Returns the number of graphs checked and any failures.
pub fn p4_shadow(n_max: usize) -> (usize, Vec<ShadowFailure>) {
    let p4 = named::path(4);
    let mut checked = 0;
    let mut failures = Vec::new();
    for n in 2..=n_max {
        for g in graphs_of_order(n).into_iter().filter(|g| is_free(g, &p4)) {
            checked += 1;
            let fail = |reason: String| ShadowFailure { graph: to_graph6(&g), reason };
            match induced_saturated(&g, &p4) {
                Ok(Saturation::Unfixed { pair: (u, v) }) => {
                    let others = !(1u64 << u | 1 << v);
                    if g.neighbors(u) & others != g.neighbors(v) & others {
                        failures.push(fail(format!("pair ({u},{v}) is not a twin pair")));
                    }
                }
                other => failures.push(fail(format!("{other:?}"))),
            }
        }
    }
    (checked, failures)
}

/// Whether the vertices of `mask` split into at most two cliques.
pub fn coverable_by_two_cliques(g: &Graph, mask: u64) -> bool {
    let c = g.complement();
    let mut side = [0u64; 2];
    let mut left = mask;
    while left != 0 {
        let start = left.trailing_zeros() as usize;
        let mut stack = vec![(start, 0usize)];
        side[0] |= 1 << start;
        left &= !(1 << start);
        while let Some((v, s)) = stack.pop() {
            for w in bits(c.neighbors(v) & mask) {
                if side[s] >> w & 1 == 1 {
                    return false;
                }
                if left >> w & 1 == 1 {
                    left &= !(1 << w);
                    side[1 - s] |= 1 << w;
                    stack.push((w, 1 - s));
                }
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub kind: OracleKind,
    pub property: String,
    pub windows: usize,
    pub max_size: usize,
    pub seed: u64,
    /// graph6 of violating windows.
    pub violations: Vec<String>,
}

/// The defining property checked for each kind.
pub fn oracle_property(kind: OracleKind, g: &Graph) -> Result<bool, Error> {
    Ok(match kind {
        OracleKind::Torero => is_free(g, &named::path(4)),
        OracleKind::UpRight => is_permutation_graph(g)?.is_some(),
        OracleKind::RationalGeometric => (0..g.n()).all(|v| coverable_by_two_cliques(g, g.closed_neighbors(v))),
        OracleKind::GridClique { .. } => (0..g.n()).all(|v| {
            let nb = g.neighbors(v);
            !bits(nb).any(|a| {
                bits(nb & !g.closed_neighbors(a) & !((1u64 << (a + 1)) - 1))
                    .any(|b| nb & !g.closed_neighbors(a) & !g.closed_neighbors(b) & !((1u64 << (b + 1)) - 1) != 0)
            })
        }),
        OracleKind::Z3Agree => is_free(g, &parse_graph6_str("F?q~w").expect("valid")),
    })
}

fn property_name(kind: OracleKind) -> &'static str {
    match kind {
        OracleKind::Torero => "P4-free",
        OracleKind::UpRight => "permutation graph",
        OracleKind::RationalGeometric => "closed neighbourhoods split into two cliques",
        OracleKind::GridClique { .. } => "no vertex with three independent neighbours",
        OracleKind::Z3Agree => "F?q~w-free",
    }
}

/// `windows` seeded random windows of size `2..=max_size`.
pub fn oracle_property_suite(kind: OracleKind, windows: usize, max_size: usize, seed: u64) -> Result<SuiteReport, Error> {
    let mut r = rng(seed);
    let mut violations = Vec::new();
    for _ in 0..windows {
        let size = r.gen_range(2..=max_size.max(2));
        let g = oracle_window(kind, &random_window(kind, size, &mut r))?;
        if !oracle_property(kind, &g)? {
            violations.push(to_graph6(&g));
        }
    }
    Ok(SuiteReport { kind, property: property_name(kind).into(), windows, max_size, seed, violations })
}

/// Adjacency of a finite set of oracle vertices, as bitset rows.
#[derive(Clone, Debug)]
pub struct OracleHost {
    pub candidates: Vec<OracleVertex>,
    adj: Vec<Vec<u64>>,
}

impl OracleHost {
    pub fn new(kind: OracleKind, candidates: Vec<OracleVertex>) -> Result<Self, Error> {
        let n = candidates.len();
        let words = n.div_ceil(64).max(1);
        let mut adj = vec![vec![0u64; words]; n];
        for x in 0..n {
            for y in x + 1..n {
                if oracle_adjacent(kind, &candidates[x], &candidates[y])? {
                    adj[x][y / 64] |= 1 << (y % 64);
                    adj[y][x / 64] |= 1 << (x % 64);
                }
            }
        }
        Ok(OracleHost { candidates, adj })
    }

    pub fn adjacent(&self, x: usize, y: usize) -> bool {
        self.adj[x][y / 64] >> (y % 64) & 1 == 1
    }
}

/// Embed `pattern` into `host` with the pair `(i, j)` of candidates
/// perturbed, sending the pattern pair `(a, b)` to it. Returns candidate
/// indices per pattern vertex.
pub fn embed_after_perturbation(host: &OracleHost, (i, j): Pair, pattern: &Graph, (a, b): Pair) -> Option<Vec<usize>> {
    let mut adj = host.adj.clone();
    let set = |row: &mut Vec<u64>, y: usize| row[y / 64] ^= 1 << (y % 64);
    set(&mut adj[i], j);
    set(&mut adj[j], i);
    let has = |row: &[u64], y: usize| row[y / 64] >> (y % 64) & 1 == 1;
    if has(&adj[i], j) != pattern.has_edge(a, b) {
        return None;
    }
    let mut map = vec![usize::MAX; pattern.n()];
    map[a] = i;
    map[b] = j;
    // most constrained pattern vertex first
    fn rec(map: &mut [usize], adj: &[Vec<u64>], pattern: &Graph) -> bool {
        let placed: Vec<usize> = (0..map.len()).filter(|&q| map[q] != usize::MAX).collect();
        let mut best: Option<(usize, Vec<u64>, u32)> = None;
        for p in (0..map.len()).filter(|&p| map[p] == usize::MAX) {
            let mut allowed = vec![u64::MAX; adj[0].len()];
            let tail = adj.len() % 64;
            if tail != 0 {
                *allowed.last_mut().expect("nonempty") = (1u64 << tail) - 1;
            }
            for &q in &placed {
                let row = &adj[map[q]];
                let edge = pattern.has_edge(p, q);
                for (w, a) in allowed.iter_mut().enumerate() {
                    *a &= if edge { row[w] } else { !row[w] };
                }
                allowed[map[q] / 64] &= !(1 << (map[q] % 64));
            }
            let count: u32 = allowed.iter().map(|w| w.count_ones()).sum();
            if best.as_ref().is_none_or(|b| count < b.2) {
                best = Some((p, allowed, count));
            }
        }
        let Some((p, allowed, _)) = best else { return true };
        for (w, &word) in allowed.iter().enumerate() {
            for c in bits(word) {
                map[p] = w * 64 + c;
                if rec(map, adj, pattern) {
                    return true;
                }
            }
        }
        map[p] = usize::MAX;
        false
    }
    rec(&mut map, &adj, pattern).then_some(map)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    pub id: String,
    pub kind: OracleKind,
    pub pattern: String,
    pub perturbed: (OracleVertex, OracleVertex),
    pub passed: bool,
    /// Oracle vertex per pattern vertex, when found.
    pub embedding: Option<Vec<OracleVertex>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub scenarios: Vec<Scenario>,
}

impl ReplayReport {
    pub fn all_passed(&self) -> bool {
        self.scenarios.iter().all(|s| s.passed)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.scenarios.iter().filter(|s| !s.passed).map(|s| s.id.as_str()).collect()
    }
}

/// The seven labelled points of each Z³ scenario, with the pair that is
/// perturbed. The last one uses two vertices from the same clique.
pub const Z3_SCENARIOS: [(&str, [([i64; 3], usize); 7], Pair); 4] = [
    (
        "z3-delete-two-agree",
        [([0, 1, 3], 0), ([0, 1, 1], 0), ([3, 0, 2], 0), ([2, 2, 0], 0), ([1, 0, 1], 0), ([1, 1, 0], 0), ([0, 0, 0], 0)],
        (0, 1),
    ),
    (
        "z3-delete-one-agree",
        [([3, 3, 0], 0), ([1, 2, 0], 0), ([2, 0, 3], 0), ([0, 1, 2], 0), ([1, 0, 1], 0), ([1, 1, 0], 0), ([0, 0, 0], 0)],
        (0, 1),
    ),
    (
        "z3-add",
        [([4, 1, 3], 0), ([3, 3, 0], 0), ([0, 2, 2], 0), ([1, 0, 1], 0), ([2, 2, 0], 0), ([1, 1, 0], 0), ([0, 0, 0], 0)],
        (0, 6),
    ),
    (
        "z3-delete-same-clique",
        [([1, 0, 1], 0), ([3, 3, 0], 0), ([0, 2, 2], 0), ([1, 0, 1], 1), ([2, 2, 0], 0), ([1, 1, 0], 0), ([0, 0, 0], 0)],
        (0, 3),
    ),
];

/// The labelled copy of `F?q~w` drawn with the Z³ scenarios.
pub fn z3_pattern() -> Graph {
    Graph::from_edges(7, &[(0, 5), (0, 6), (1, 4), (1, 5), (1, 6), (2, 4), (2, 6), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)])
}

fn z3_scenario(id: &str, points: &[([i64; 3], usize); 7], (i, j): Pair) -> Result<Scenario, Error> {
    let verts: Vec<OracleVertex> = points.iter().map(|&(p, c)| OracleVertex::point(p, c)).collect();
    let h = z3_pattern();
    let g = oracle_window(OracleKind::Z3Agree, &verts)?.perturbed(i, j);
    let passed = g == h && find_induced(&g, &h, &[(i, i), (j, j)]).is_some();
    Ok(Scenario {
        id: id.into(),
        kind: OracleKind::Z3Agree,
        pattern: to_graph6(&h),
        perturbed: (verts[i].clone(), verts[j].clone()),
        passed,
        embedding: passed.then_some(verts),
    })
}

/// Search for `pattern` after perturbing `(u, v)`, trying every pattern
/// pair of the right status as the image of the perturbed pair.
fn search_scenario(
    id: String,
    kind: OracleKind,
    pattern: &Graph,
    u: OracleVertex,
    v: OracleVertex,
    grid: Vec<OracleVertex>,
) -> Result<Scenario, Error> {
    let mut candidates = vec![u.clone(), v.clone()];
    candidates.extend(grid.into_iter().filter(|c| *c != u && *c != v));
    let status = !oracle_adjacent(kind, &u, &v)?;
    let host = OracleHost::new(kind, candidates)?;
    let candidates = &host.candidates;
    let mut embedding = None;
    let pairs = pattern.pairs().filter(|&(a, b)| pattern.has_edge(a, b) == status);
    for (a, b) in pairs.flat_map(|(a, b)| [(a, b), (b, a)]) {
        if let Some(map) = embed_after_perturbation(&host, (0, 1), pattern, (a, b)) {
            embedding = Some(map.into_iter().map(|c| candidates[c].clone()).collect::<Vec<_>>());
            break;
        }
    }
    Ok(Scenario {
        id,
        kind,
        pattern: to_graph6(pattern),
        perturbed: (u, v),
        passed: embedding.is_some(),
        embedding,
    })
}

/// Candidate points for a rational geometric replay around the pair
/// `0, r`: sums `i·r + j·π' + k·ε` with `π'` a close rational bound on
/// either side of π and `ε` small against `r` and `|π - r|`, plus a grid of
/// quarters, all within `3π` of the pair.
pub fn rational_geometric_candidates(r: &Rational) -> Vec<Rational> {
    let (lo, hi) = pi_enclosure();
    let near = (r - &lo).abs().min((r - &hi).abs());
    let eps = [r.clone(), near, rat(1, 4)].into_iter().min().expect("nonempty") / int(4);
    let left = -(&lo * int(3));
    let right = r + &lo * int(3);
    let mut pts = Vec::new();
    for i in -1..=2 {
        for j in -3..=3 {
            for p in [&lo, &hi] {
                for k in -3..=3 {
                    pts.push(r * int(i) + p * int(j) + &eps * int(k));
                }
            }
        }
    }
    let mut k = (&left * int(4)).ceil().to_integer();
    while Rational::from(k.clone()) <= &right * int(4) {
        pts.push(Rational::new(k.clone(), 4.into()));
        k += 1;
    }
    pts.retain(|x| *x >= left && *x <= right && *x != int(0) && x != r);
    pts.sort();
    pts.dedup();
    pts
}

fn rational_geometric_scenario(id: String, pattern: &Graph, r: &Rational) -> Result<Scenario, Error> {
    let grid = rational_geometric_candidates(r).into_iter().map(OracleVertex::line).collect();
    search_scenario(id, OracleKind::RationalGeometric, pattern, OracleVertex::line(int(0)), OracleVertex::line(r.clone()), grid)
}

/// Perturbed distances used for the rational geometric replays.
pub fn rational_geometric_distances() -> (Vec<Rational>, Vec<Rational>) {
    let deleted = vec![rat(1, 10), rat(1, 1), rat(3, 1), rat(314_159, 100_000)];
    let added = vec![rat(31_416, 10_000), rat(4, 1), rat(6, 1), rat(20, 1)];
    (deleted, added)
}

/// The graphs replayed in the rational geometric graph.
pub const RATIONAL_GEOMETRIC_KEYS: [&str; 3] = ["E?qw", "F?S|w", "F?rLw"];

/// Every replay: the Z³ scenarios verbatim, torero deletion and addition by
/// search, and rational geometric deletion/addition for each of the three
/// graphs by grid search within `3π` of the pair.
pub fn replay_witnesses() -> Result<ReplayReport, Error> {
    let mut scenarios = Vec::new();
    for (id, points, pair) in &Z3_SCENARIOS {
        scenarios.push(z3_scenario(id, points, *pair)?);
    }
    let bull = named::bull();
    let unit_grid = |d: i64| (1..d).map(|k| OracleVertex::unit(rat(k, d))).collect::<Vec<_>>();
    for (id, b, x) in [("torero-delete", rat(35, 100), rat(85, 100)), ("torero-add", rat(1, 10), rat(3, 10))] {
        scenarios.push(search_scenario(
            id.into(),
            OracleKind::Torero,
            &bull,
            OracleVertex::unit(b),
            OracleVertex::unit(x),
            unit_grid(40),
        )?);
    }
    let (deleted, added) = rational_geometric_distances();
    for key in RATIONAL_GEOMETRIC_KEYS {
        let h = parse_graph6_str(key).expect("valid");
        for (what, rs) in [("delete", &deleted), ("add", &added)] {
            for r in rs.iter() {
                let id = format!("rational-geometric-{what}-{key}-{}", format_rational(r));
                scenarios.push(rational_geometric_scenario(id, &h, r)?);
            }
        }
    }
    Ok(ReplayReport { scenarios })
}
