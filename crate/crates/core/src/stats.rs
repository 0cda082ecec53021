//! Exact summary statistics of unlabeled graphs.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::graph::UnlabeledGraph;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct StatVector {
    pub e: usize,
    pub v: usize,
    pub triangles: usize,
    pub max_degree: usize,
    /// degree -> number of vertices; loops count twice.
    pub degree_histogram: BTreeMap<usize, usize>,
}

pub fn stats(g: &UnlabeledGraph) -> StatVector {
    let degrees = g.degrees();
    let mut degree_histogram = BTreeMap::new();
    for &d in &degrees {
        *degree_histogram.entry(d).or_insert(0) += 1;
    }
    StatVector {
        e: g.edge_count(),
        v: g.vertex_count(),
        triangles: triangles(g),
        max_degree: degrees.iter().copied().max().unwrap_or(0),
        degree_histogram,
    }
}

/// Triangles on three distinct vertices, by intersecting sorted forward
/// neighbor lists. Loops are ignored.
pub fn triangles(g: &UnlabeledGraph) -> usize {
    let n = g.vertex_count();
    let mut forward: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    for &(u, v) in g.edges() {
        if u != v {
            forward[u].push(v);
        }
    }
    for list in &mut forward {
        list.sort_unstable();
    }
    let mut count = 0;
    for u in 0..n {
        for &v in &forward[u] {
            count += sorted_intersection(&forward[u], &forward[v]);
        }
    }
    count
}

fn sorted_intersection(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}
