//! Finite simple graphs on at most 64 vertices with one `u64` neighbour row
//! per vertex.

use std::fmt;

use crate::error::GraphError;

/// Hard vertex cap. Every row of the adjacency matrix is a single `u64`.
pub const MAX_VERTICES: usize = 64;

/// Unordered vertex pair, always stored with `.0 < .1`.
pub type Pair = (usize, usize);

/// Normalise a pair so that the smaller vertex comes first.
#[inline]
pub fn pair(u: usize, v: usize) -> Pair {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Iterate over the set bits of a mask, lowest first.
#[inline]
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A finite simple graph.
///
/// Adjacency is symmetric, there are no loops, and no bit at or above `n` is
/// ever set. All mutating methods keep these invariants.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: [u64; MAX_VERTICES],
}

impl Graph {
    /// Edgeless graph on `n` vertices. Panics if `n > 64`; use
    /// [`Graph::try_new`] when the size comes from input.
    pub fn new(n: usize) -> Self {
        Self::try_new(n).expect("vertex cap exceeded")
    }

    pub fn try_new(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n, max: MAX_VERTICES });
        }
        Ok(Graph { n, adj: [0; MAX_VERTICES] })
    }

    pub fn from_edges(n: usize, edges: &[Pair]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 0..n {
            g.adj[v] = full_mask(n) & !(1 << v);
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Closed neighbourhood N[v].
    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> u64 {
        self.adj[v] | (1 << v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).max()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n, "bad edge ({u},{v}) for n={}", self.n);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n);
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        if present {
            self.add_edge(u, v)
        } else {
            self.remove_edge(u, v)
        }
    }

    /// Toggle the adjacency of `u` and `v`.
    pub fn toggle(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n);
        self.adj[u] ^= 1 << v;
        self.adj[v] ^= 1 << u;
    }

    /// Copy with the pair `uv` perturbed.
    pub fn perturbed(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.toggle(u, v);
        g
    }

    /// Append a fresh isolated vertex and return its index.
    pub fn add_vertex(&mut self) -> Result<usize, GraphError> {
        if self.n == MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n: self.n + 1, max: MAX_VERTICES });
        }
        self.n += 1;
        Ok(self.n - 1)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = Pair> + '_ {
        (0..self.n).flat_map(move |u| bits(self.adj[u] & !full_mask(u + 1)).map(move |v| (u, v)))
    }

    pub fn non_edges(&self) -> impl Iterator<Item = Pair> + '_ {
        let all = self.vertex_mask();
        (0..self.n).flat_map(move |u| {
            bits(!self.adj[u] & all & !full_mask(u + 1)).map(move |v| (u, v))
        })
    }

    /// All unordered pairs in colex order: (0,1), (0,2), (1,2), (0,3), ...
    pub fn pairs(&self) -> impl Iterator<Item = Pair> {
        let n = self.n;
        (1..n).flat_map(|v| (0..v).map(move |u| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let mut g = self.clone();
        let all = self.vertex_mask();
        for v in 0..self.n {
            g.adj[v] = !self.adj[v] & all & !(1 << v);
        }
        g
    }

    /// Induced subgraph on `vertices`, in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::new(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Induced subgraph on the vertices of `mask`, plus the kept vertex list.
    pub fn induced_mask(&self, mask: u64) -> (Graph, Vec<usize>) {
        let kept: Vec<usize> = bits(mask & self.vertex_mask()).collect();
        (self.induced(&kept), kept)
    }

    /// Connected components of the subgraph induced on `mask`.
    pub fn components_within(&self, mask: u64) -> Vec<u64> {
        let mut rest = mask & self.vertex_mask();
        let mut out = Vec::new();
        while rest != 0 {
            let start = rest & rest.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let mut next = 0;
                for v in bits(frontier) {
                    next |= self.adj[v];
                }
                next &= mask & !comp;
                comp |= next;
                frontier = next;
            }
            rest &= !comp;
            out.push(comp);
        }
        out
    }

    pub fn connected_within(&self, mask: u64) -> bool {
        self.components_within(mask).len() <= 1
    }

    pub fn is_connected(&self) -> bool {
        self.connected_within(self.vertex_mask())
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        let mut g = Graph::try_new(n)?;
        g.adj[..self.n].copy_from_slice(&self.adj[..self.n]);
        for v in 0..other.n {
            g.adj[self.n + v] = other.adj[v] << self.n;
        }
        Ok(g)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// Which side of the adjacency relation a pair sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PairStatus {
    Edge,
    Nonedge,
}

impl PairStatus {
    pub fn of(g: &Graph, u: usize, v: usize) -> Self {
        if g.has_edge(u, v) {
            PairStatus::Edge
        } else {
            PairStatus::Nonedge
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            PairStatus::Edge => PairStatus::Nonedge,
            PairStatus::Nonedge => PairStatus::Edge,
        }
    }
}

/// A graph with one distinguished ("red") vertex pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedPair {
    graph: Graph,
    pair: Pair,
    status: PairStatus,
}

impl MarkedPair {
    pub fn new(graph: Graph, u: usize, v: usize) -> Result<Self, GraphError> {
        if u == v || u >= graph.n() || v >= graph.n() {
            return Err(GraphError::BadPair { u, v, n: graph.n() });
        }
        let status = PairStatus::of(&graph, u, v);
        Ok(MarkedPair { graph, pair: pair(u, v), status })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn pair(&self) -> Pair {
        self.pair
    }

    pub fn status(&self) -> PairStatus {
        self.status
    }
}

/// True and false twins of `v`: vertices `u != v` with `N[u] = N[v]`
/// (resp. `N(u) = N(v)`).
pub fn twins(g: &Graph, v: usize) -> (Vec<usize>, Vec<usize>) {
    let mut true_twins = Vec::new();
    let mut false_twins = Vec::new();
    for u in 0..g.n() {
        if u == v {
            continue;
        }
        if g.closed_neighbors(u) == g.closed_neighbors(v) {
            true_twins.push(u);
        } else if g.neighbors(u) == g.neighbors(v) {
            false_twins.push(u);
        }
    }
    (true_twins, false_twins)
}

pub fn has_true_twin(g: &Graph, v: usize) -> bool {
    (0..g.n()).any(|u| u != v && g.closed_neighbors(u) == g.closed_neighbors(v))
}

pub fn has_false_twin(g: &Graph, v: usize) -> bool {
    (0..g.n()).any(|u| u != v && g.neighbors(u) == g.neighbors(v))
}
