//! Isomorph-free generation of small graphs.
//!
//! Classes of order `n` are produced from those of order `n - 1` by adding a
//! vertex with every possible neighbourhood and keeping one representative
//! per canonical form. Canonical forms come from colour refinement followed
//! by a branch-and-bound search over cell-respecting labellings. This is a
//! corpus generator for sweeps and exhaustive tests; classification itself
//! never needs canonical labels.

use std::collections::HashSet;
use std::sync::Mutex;

use rayon::prelude::*;

use crate::graph::{bits, Graph};

/// Ordered colour classes after iterated degree refinement.
fn refined_cells(g: &Graph) -> Vec<u64> {
    let n = g.n();
    let mut color = vec![0usize; n];
    let mut ncolors = 1;
    loop {
        let mut sigs: Vec<(usize, Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let mut counts = vec![0usize; ncolors];
                for u in bits(g.neighbors(v)) {
                    counts[color[u]] += 1;
                }
                (color[v], counts, v)
            })
            .collect();
        sigs.sort();
        let mut next = vec![0usize; n];
        let mut c = 0;
        for i in 0..n {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                c += 1;
            }
            next[sigs[i].2] = c;
        }
        let new_count = if n == 0 { 0 } else { c + 1 };
        color = next;
        if new_count == ncolors {
            break;
        }
        ncolors = new_count;
    }
    let mut cells = vec![0u64; ncolors];
    for v in 0..n {
        cells[color[v]] |= 1 << v;
    }
    cells
}

struct Canon<'a> {
    g: &'a Graph,
    // cell index of every position
    slot_cell: Vec<usize>,
    cells: Vec<u64>,
    current: Vec<usize>,
    cols: Vec<u64>,
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Canon<'_> {
    fn rec(&mut self, pos: usize, used: u64, mut tied: bool) {
        let n = self.g.n();
        if pos == n {
            if !tied || self.best.is_none() {
                self.best = Some((self.cols.clone(), self.current.clone()));
            }
            return;
        }
        let cell = self.cells[self.slot_cell[pos]] & !used;
        for v in bits(cell) {
            let mut col = 0u64;
            for (i, &w) in self.current.iter().enumerate() {
                if self.g.has_edge(v, w) {
                    col |= 1 << i;
                }
            }
            let mut still_tied = tied;
            if tied {
                if let Some((best, _)) = &self.best {
                    match col.cmp(&best[pos]) {
                        std::cmp::Ordering::Less => continue,
                        std::cmp::Ordering::Greater => still_tied = false,
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
            self.current.push(v);
            self.cols.push(col);
            self.rec(pos + 1, used | 1 << v, still_tied);
            self.current.pop();
            self.cols.pop();
            // a strictly better branch replaced best; later siblings compare against it
            if !still_tied {
                tied = true;
            }
        }
    }
}

/// Canonical relabelling of `g`: isomorphic graphs map to identical graphs.
pub fn canonical_form(g: &Graph) -> Graph {
    let cells = refined_cells(g);
    let mut slot_cell = Vec::with_capacity(g.n());
    for (i, c) in cells.iter().enumerate() {
        slot_cell.extend(std::iter::repeat(i).take(c.count_ones() as usize));
    }
    let mut canon = Canon { g, slot_cell, cells, current: Vec::new(), cols: Vec::new(), best: None };
    canon.rec(0, 0, true);
    let order = canon.best.map(|(_, o)| o).unwrap_or_default();
    g.induced(&order)
}

static CACHE: Mutex<Vec<Vec<Graph>>> = Mutex::new(Vec::new());

/// One representative per isomorphism class of graphs on `n` vertices, in a
/// deterministic order. Results are cached; intended for `n <= 9`.
pub fn graphs_of_order(n: usize) -> Vec<Graph> {
    {
        let cache = CACHE.lock().unwrap();
        if let Some(v) = cache.get(n) {
            return v.clone();
        }
    }
    let prev = if n == 0 { Vec::new() } else { graphs_of_order(n - 1) };
    let result = if n == 0 {
        vec![Graph::new(0)]
    } else {
        extend_by_one(&prev, n)
    };
    let mut cache = CACHE.lock().unwrap();
    while cache.len() <= n {
        let k = cache.len();
        if k == n {
            cache.push(result.clone());
        } else {
            drop(cache);
            graphs_of_order(k);
            cache = CACHE.lock().unwrap();
        }
    }
    result
}

fn extend_by_one(prev: &[Graph], n: usize) -> Vec<Graph> {
    let mut forms: Vec<(Vec<u64>, Graph)> = prev
        .par_iter()
        .flat_map_iter(|base| {
            (0u64..1 << (n - 1)).map(move |nbhd| {
                let mut g = Graph::new(n);
                for (u, v) in base.edges() {
                    g.add_edge(u, v);
                }
                for u in bits(nbhd) {
                    g.add_edge(u, n - 1);
                }
                let c = canonical_form(&g);
                (key(&c), c)
            })
        })
        .collect();
    forms.sort_by(|a, b| a.0.cmp(&b.0));
    let mut seen = HashSet::new();
    forms.into_iter().filter(|(k, _)| seen.insert(k.clone())).map(|(_, g)| g).collect()
}

fn key(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| g.neighbors(v)).collect()
}

/// Every labelled graph on `n` vertices (2^(n(n-1)/2) of them).
pub fn all_labelled(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = Graph::new(n).pairs().collect();
    assert!(pairs.len() < 40, "too many labelled graphs");
    (0u64..1 << pairs.len()).map(move |m| {
        let mut g = Graph::new(n);
        for i in bits(m) {
            g.add_edge(pairs[i].0, pairs[i].1);
        }
        g
    })
}
