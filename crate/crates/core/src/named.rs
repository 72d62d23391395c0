//! Small named graphs used throughout the toolkit and its tests.

use crate::error::Error;
use crate::graph::Graph;
use crate::graph6::parse_graph6_str;

pub fn path(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        g.add_edge(v - 1, v);
    }
    g
}

pub fn cycle(n: usize) -> Graph {
    let mut g = path(n);
    if n >= 3 {
        g.add_edge(0, n - 1);
    }
    g
}

/// K_{1,k}, centre 0.
pub fn star(k: usize) -> Graph {
    let mut g = Graph::new(k + 1);
    for v in 1..=k {
        g.add_edge(0, v);
    }
    g
}

pub fn complete_multipartite(parts: &[usize]) -> Graph {
    let n = parts.iter().sum();
    let mut part_of = Vec::with_capacity(n);
    for (i, &p) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat(i).take(p));
    }
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] {
                g.add_edge(u, v);
            }
        }
    }
    g
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    complete_multipartite(&[a, b])
}

/// Triangle x=0, y=1, z=2 with pendants a=3 on x and b=4 on y.
pub fn bull() -> Graph {
    Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 4)])
}

/// The complement of the icosahedron: 12 vertices, 36 edges, and
/// induced-saturated for P5.
pub fn icosahedron_complement() -> Graph {
    Graph::from_edges(
        12,
        &[
            (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6),
            (1, 2), (1, 3), (1, 7), (1, 8), (1, 9),
            (2, 4), (2, 7), (2, 10), (2, 11),
            (3, 5), (3, 8), (3, 10), (3, 11),
            (4, 5), (4, 8), (4, 9), (4, 11),
            (5, 7), (5, 9), (5, 10),
            (6, 7), (6, 8), (6, 9), (6, 10), (6, 11),
            (7, 8), (7, 11),
            (8, 10),
            (9, 10), (9, 11),
        ],
    )
}

/// Resolve a graph name: `P<n>`, `C<n>`, `K<n>`, `K<a>,<b>[,<c>...]`,
/// `S<k>` (star), `bull`, `icosahedron-complement`, or a graph6 string.
pub fn parse_named(name: &str) -> Result<Graph, Error> {
    let s = name.trim();
    let num = |t: &str| t.parse::<usize>().ok().filter(|&k| k <= 64);
    match s {
        "bull" => return Ok(bull()),
        "icosahedron-complement" => return Ok(icosahedron_complement()),
        _ => {}
    }
    if let Some(rest) = s.strip_prefix('K') {
        if rest.contains(',') {
            let parts: Option<Vec<usize>> = rest.split(',').map(num).collect();
            if let Some(parts) = parts.filter(|p| p.iter().sum::<usize>() <= 64) {
                return Ok(complete_multipartite(&parts));
            }
        } else if let Some(k) = num(rest) {
            return Ok(Graph::complete(k));
        }
    }
    if let Some(k) = s.strip_prefix('P').and_then(num) {
        return Ok(path(k));
    }
    if let Some(k) = s.strip_prefix('C').and_then(num) {
        return Ok(cycle(k));
    }
    if let Some(k) = s.strip_prefix('S').and_then(num).filter(|&k| k < 64) {
        return Ok(star(k));
    }
    parse_graph6_str(s).map_err(|_| Error::UnknownName(s.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::isomorphic;

    #[test]
    fn names_resolve() {
        assert_eq!(parse_named("P5").unwrap(), path(5));
        assert_eq!(parse_named("C5").unwrap().edge_count(), 5);
        assert_eq!(parse_named("K3,3").unwrap().edge_count(), 9);
        assert_eq!(parse_named("K2,1,1,1").unwrap().edge_count(), 9);
        assert_eq!(parse_named("K4").unwrap().edge_count(), 6);
        assert!(isomorphic(&parse_named("Dr[").unwrap(), &parse_named("Dr[").unwrap()));
        assert!(parse_named("nonsense!").is_err());
    }

    #[test]
    fn bull_shape() {
        let b = bull();
        assert_eq!(b.degree_sequence(), vec![3, 3, 2, 1, 1]);
    }
}
