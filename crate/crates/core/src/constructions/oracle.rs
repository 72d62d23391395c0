//! Exact adjacency for the five explicit infinite graphs, and finite
//! windows into them.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::exact::{abs_below_pi, int, rat, QuadValue, Rational};
use crate::error::{Error, GraphError};
use crate::graph::{Graph, MAX_VERTICES};
use crate::recognizers::PermutationWitness;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE", tag = "kind")]
pub enum OracleKind {
    /// Q x Q; `(q, r) ~ (s, t)` when `q + r√2` and `q - r√2` move the same way.
    UpRight,
    /// Rationals in (0, 1); `x ~ y` when `x + y > 1`.
    Torero,
    /// Rationals; `q ~ r` when `|q - r| < π`.
    RationalGeometric,
    /// Z^p; adjacent when exactly one coordinate differs.
    GridClique { p: usize },
    /// Z^3 with every point blown up into a clique; distinct points are
    /// adjacent when they agree somewhere.
    Z3Agree,
}

mod q {
    use super::super::exact::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE", tag = "type")]
pub enum OracleVertex {
    Plane {
        #[serde(with = "q")]
        q: Rational,
        #[serde(with = "q")]
        r: Rational,
    },
    Unit {
        #[serde(with = "q")]
        x: Rational,
    },
    Line {
        #[serde(with = "q")]
        x: Rational,
    },
    Tuple { coords: Vec<i64> },
    Clone { point: [i64; 3], clone: usize },
}

impl OracleVertex {
    pub fn plane(q: Rational, r: Rational) -> Self {
        OracleVertex::Plane { q, r }
    }

    pub fn unit(x: Rational) -> Self {
        OracleVertex::Unit { x }
    }

    pub fn line(x: Rational) -> Self {
        OracleVertex::Line { x }
    }

    pub fn tuple(coords: Vec<i64>) -> Self {
        OracleVertex::Tuple { coords }
    }

    pub fn point(point: [i64; 3], clone: usize) -> Self {
        OracleVertex::Clone { point, clone }
    }
}

fn check_kind(kind: OracleKind, v: &OracleVertex) -> Result<(), Error> {
    let ok = match (kind, v) {
        (OracleKind::UpRight, OracleVertex::Plane { .. }) => true,
        (OracleKind::Torero, OracleVertex::Unit { x }) => x.is_positive() && *x < int(1),
        (OracleKind::RationalGeometric, OracleVertex::Line { .. }) => true,
        (OracleKind::GridClique { p }, OracleVertex::Tuple { coords: t }) => p >= 1 && t.len() == p,
        (OracleKind::Z3Agree, OracleVertex::Clone { .. }) => true,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::OracleKind(format!("{v:?} is not a vertex of {kind:?}")))
    }
}

/// Exact adjacency. Equal vertices are an error.
pub fn oracle_adjacent(kind: OracleKind, u: &OracleVertex, v: &OracleVertex) -> Result<bool, Error> {
    check_kind(kind, u)?;
    check_kind(kind, v)?;
    if u == v {
        return Err(Error::OracleKind(format!("{u:?} compared with itself")));
    }
    Ok(match (u, v) {
        (OracleVertex::Plane { q, r }, OracleVertex::Plane { q: s, r: t }) => {
            let plus = QuadValue::new(s - q, t - r).signum();
            let minus = QuadValue::new(s - q, r - t).signum();
            plus == minus && plus != Ordering::Equal
        }
        (OracleVertex::Unit { x }, OracleVertex::Unit { x: y }) => x + y > int(1),
        (OracleVertex::Line { x: q }, OracleVertex::Line { x: r }) => abs_below_pi(&(q - r)),
        (OracleVertex::Tuple { coords: a }, OracleVertex::Tuple { coords: b }) => a.iter().zip(b).filter(|(x, y)| x != y).count() == 1,
        (OracleVertex::Clone { point: a, .. }, OracleVertex::Clone { point: b, .. }) => {
            a == b || a.iter().zip(b).any(|(x, y)| x == y)
        }
        _ => unreachable!("kinds checked above"),
    })
}

/// The induced subgraph of the oracle graph on `vertices`, in order.
pub fn oracle_window(kind: OracleKind, vertices: &[OracleVertex]) -> Result<Graph, Error> {
    let n = vertices.len();
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices { n, max: MAX_VERTICES }.into());
    }
    for (i, v) in vertices.iter().enumerate() {
        check_kind(kind, v)?;
        if vertices[..i].contains(v) {
            return Err(GraphError::DuplicateVertex(i).into());
        }
    }
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if oracle_adjacent(kind, &vertices[i], &vertices[j])? {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

/// A random vertex with small coordinates, for property tests.
pub fn random_vertex<R: Rng>(kind: OracleKind, rng: &mut R) -> OracleVertex {
    match kind {
        OracleKind::UpRight => OracleVertex::plane(
            rat(rng.gen_range(-40..=40), rng.gen_range(1..=8)),
            rat(rng.gen_range(-40..=40), rng.gen_range(1..=8)),
        ),
        OracleKind::Torero => {
            let d = rng.gen_range(2..=40);
            OracleVertex::unit(rat(rng.gen_range(1..d), d))
        }
        OracleKind::RationalGeometric => OracleVertex::line(rat(rng.gen_range(-200..=200), rng.gen_range(1..=10))),
        OracleKind::GridClique { p } => OracleVertex::tuple((0..p).map(|_| rng.gen_range(0..4)).collect()),
        OracleKind::Z3Agree => OracleVertex::point([rng.gen_range(0..4), rng.gen_range(0..4), rng.gen_range(0..4)], rng.gen_range(0..2)),
    }
}

/// `size` distinct random vertices.
pub fn random_window<R: Rng>(kind: OracleKind, size: usize, rng: &mut R) -> Vec<OracleVertex> {
    let mut out: Vec<OracleVertex> = Vec::with_capacity(size);
    while out.len() < size {
        let v = random_vertex(kind, rng);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Points of the up-and-right graph realising a permutation graph: the
/// vertex at position `i` of the ordering goes near the point whose two
/// linear forms are `i` and `σ(i)`. Returned in vertex order.
pub fn up_right_embedding(w: &PermutationWitness) -> Vec<OracleVertex> {
    let n = w.ordering.len();
    let mut out = vec![OracleVertex::tuple(Vec::new()); n];
    for (i, (&v, &s)) in w.ordering.iter().zip(&w.sigma).enumerate() {
        let d = i as i64 - s as i64;
        let q = rat(i as i64 + s as i64, 2);
        // r within 1/4 of d√2/4, so each form moves by less than 1/2
        let root = BigInt::from(2 * d * d).sqrt();
        let mut r = Rational::new(root, BigInt::from(4));
        if d < 0 {
            r = -r;
        }
        out[v] = OracleVertex::plane(q, r);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::graphs_of_order;
    use crate::random::rng;
    use crate::recognizers::is_permutation_graph;

    fn plane(q: i64, r: i64) -> OracleVertex {
        OracleVertex::plane(int(q), int(r))
    }

    #[test]
    fn up_right_examples() {
        assert!(oracle_adjacent(OracleKind::UpRight, &plane(0, 0), &plane(1, 0)).unwrap());
        assert!(!oracle_adjacent(OracleKind::UpRight, &plane(0, 0), &plane(0, 1)).unwrap());
        // (0,0)-(3,2): 3 + 2√2 > 0 and 3 - 2√2 > 0
        assert!(oracle_adjacent(OracleKind::UpRight, &plane(0, 0), &plane(3, 2)).unwrap());
        assert!(!oracle_adjacent(OracleKind::UpRight, &plane(0, 0), &plane(2, 2)).unwrap());
    }

    #[test]
    fn rational_geometric_examples() {
        let line = |x| OracleVertex::line(int(x));
        assert!(oracle_adjacent(OracleKind::RationalGeometric, &line(0), &line(3)).unwrap());
        assert!(!oracle_adjacent(OracleKind::RationalGeometric, &line(0), &line(4)).unwrap());
        let a = OracleVertex::line(rat(355, 113));
        assert!(!oracle_adjacent(OracleKind::RationalGeometric, &line(0), &a).unwrap());
    }

    #[test]
    fn z3_examples() {
        let p = |a, b, c| OracleVertex::point([a, b, c], 0);
        assert!(oracle_adjacent(OracleKind::Z3Agree, &p(0, 1, 3), &p(0, 1, 1)).unwrap());
        assert!(!oracle_adjacent(OracleKind::Z3Agree, &p(0, 1, 3), &p(3, 0, 2)).unwrap());
        let c = OracleVertex::point([0, 1, 3], 1);
        assert!(oracle_adjacent(OracleKind::Z3Agree, &p(0, 1, 3), &c).unwrap());
    }

    #[test]
    fn grid_and_torero_examples() {
        let k = OracleKind::GridClique { p: 2 };
        let t = |a, b| OracleVertex::tuple(vec![a, b]);
        assert!(oracle_adjacent(k, &t(0, 0), &t(0, 5)).unwrap());
        assert!(!oracle_adjacent(k, &t(0, 0), &t(1, 5)).unwrap());
        let u = |a, b| OracleVertex::unit(rat(a, b));
        assert!(oracle_adjacent(OracleKind::Torero, &u(1, 2), &u(2, 3)).unwrap());
        assert!(!oracle_adjacent(OracleKind::Torero, &u(1, 2), &u(1, 3)).unwrap());
    }

    #[test]
    fn kind_errors() {
        let a = OracleVertex::line(int(0));
        assert!(oracle_adjacent(OracleKind::Torero, &a, &a).is_err());
        assert!(oracle_adjacent(OracleKind::RationalGeometric, &a, &a).is_err());
        assert!(oracle_adjacent(OracleKind::Torero, &OracleVertex::unit(int(1)), &OracleVertex::unit(rat(1, 2))).is_err());
        assert!(oracle_adjacent(OracleKind::GridClique { p: 2 }, &OracleVertex::tuple(vec![1]), &OracleVertex::tuple(vec![2])).is_err());
        assert!(oracle_window(OracleKind::RationalGeometric, &[a.clone(), a]).is_err());
    }

    #[test]
    fn torero_window_bull_after_deletion() {
        let pts: Vec<OracleVertex> = [(1, 4), (35, 100), (2, 5), (7, 10), (85, 100)]
            .iter()
            .map(|&(a, b)| OracleVertex::unit(rat(a, b)))
            .collect();
        let g = oracle_window(OracleKind::Torero, &pts).unwrap();
        // b = 0.35, x = 0.85
        assert!(g.has_edge(1, 4));
        let cut = g.perturbed(1, 4);
        let bull = crate::named::bull();
        let emb = crate::search::find_induced(&cut, &bull, &[]).expect("bull");
        assert!(emb.is_valid(&cut, &bull));
        assert!(crate::search::find_induced(&g, &bull, &[]).is_none());
    }

    #[test]
    fn vertex_json_uses_fraction_strings() {
        let v = OracleVertex::plane(rat(-3, 4), int(2));
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"type":"PLANE","q":"-3/4","r":"2"}"#);
        assert_eq!(serde_json::from_str::<OracleVertex>(&s).unwrap(), v);
        let k = serde_json::to_string(&OracleKind::GridClique { p: 2 }).unwrap();
        assert_eq!(k, r#"{"kind":"GRID_CLIQUE","p":2}"#);
    }

    #[test]
    fn up_right_embedding_realises_permutation_graphs() {
        for n in 1..=6 {
            for g in graphs_of_order(n) {
                if let Some(w) = is_permutation_graph(&g).unwrap() {
                    let pts = up_right_embedding(&w);
                    assert_eq!(oracle_window(OracleKind::UpRight, &pts).unwrap(), g, "{g:?}");
                }
            }
        }
    }

    #[test]
    fn random_windows_are_distinct() {
        let mut r = rng(5);
        for kind in [OracleKind::UpRight, OracleKind::Torero, OracleKind::Z3Agree, OracleKind::GridClique { p: 3 }] {
            let w = random_window(kind, 10, &mut r);
            assert!(oracle_window(kind, &w).is_ok());
        }
    }
}
