use crate::error::GraphError;
use crate::gatekeeper::BlowupMode;
use crate::graph::{Graph, Pair, MAX_VERTICES};

/// Glue `g2` onto `g`, identifying `a2[i]` with `a[i]`. The result keeps
/// `g`'s labels and appends the unanchored vertices of `g2` in order; a
/// pair is an edge if it is an edge on either side. The second value maps
/// each vertex of `g2` to its image.
pub fn glue(g: &Graph, g2: &Graph, a: &[usize], a2: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
    if a.len() != a2.len() {
        return Err(GraphError::LengthMismatch(a.len(), a2.len()));
    }
    check_list(a, g.n())?;
    check_list(a2, g2.n())?;
    let n = g.n() + g2.n() - a.len();
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices { n, max: MAX_VERTICES });
    }
    let mut map = vec![usize::MAX; g2.n()];
    for (&x, &y) in a.iter().zip(a2) {
        map[y] = x;
    }
    let mut next = g.n();
    for slot in map.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = next;
        next += 1;
    }
    let mut out = Graph::new(n);
    for (u, v) in g.edges() {
        out.add_edge(u, v);
    }
    for (u, v) in g2.edges() {
        out.add_edge(map[u], map[v]);
    }
    Ok((out, map))
}

fn check_list(list: &[usize], n: usize) -> Result<(), GraphError> {
    let mut seen = 0u64;
    for &v in list {
        if v >= n {
            return Err(GraphError::BadPair { u: v, v, n });
        }
        if seen >> v & 1 == 1 {
            return Err(GraphError::DuplicateVertex(v));
        }
        seen |= 1 << v;
    }
    Ok(())
}

/// A truncated blow-up together with the vertex of `h` each vertex copies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blowup {
    pub graph: Graph,
    pub class_of: Vec<usize>,
}

/// Perturb `pair` in `h` and replace every other vertex by `m` clones that
/// form a clique or an independent set. Vertices `0..n` are `h`'s own
/// (the first clone of each class); further clones follow clone by clone.
pub fn blowup_graph(h: &Graph, (u, v): Pair, mode: BlowupMode, m: usize) -> Result<Blowup, GraphError> {
    let n = h.n();
    if u == v || u >= n || v >= n {
        return Err(GraphError::BadPair { u, v, n });
    }
    if m == 0 {
        return Err(GraphError::Precondition("blow-up size must be at least 1".into()));
    }
    let rest: Vec<usize> = (0..n).filter(|&w| w != u && w != v).collect();
    let total = 2 + rest.len() * m;
    if total > MAX_VERTICES {
        return Err(GraphError::TooManyVertices { n: total, max: MAX_VERTICES });
    }
    let mut class_of: Vec<usize> = (0..n).collect();
    for _ in 1..m {
        class_of.extend(&rest);
    }
    let mut g = Graph::new(total);
    for a in 0..total {
        for b in a + 1..total {
            let (ca, cb) = (class_of[a], class_of[b]);
            let adjacent = if ca == cb {
                mode == BlowupMode::Clique
            } else if (ca, cb) == (u, v) || (ca, cb) == (v, u) {
                !h.has_edge(u, v)
            } else {
                h.has_edge(ca, cb)
            };
            g.set_edge(a, b, adjacent);
        }
    }
    Ok(Blowup { graph: g, class_of })
}
