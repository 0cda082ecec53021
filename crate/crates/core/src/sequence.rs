//! Jump times, graph sequences and dilations.

use alloc::vec::Vec;

use crate::error::{invalid, Result};
use crate::graph::{LabeledEdge, LabeledGraph, UnlabeledGraph};
use crate::graphon::Graphex;

/// Sorted distinct values of `max(theta, theta')`: the sizes at which the
/// edge count of the restriction jumps.
pub fn jump_times(g: &LabeledGraph) -> Vec<f64> {
    let mut times: Vec<f64> = g.edges().iter().map(LabeledEdge::max_label).collect();
    times.dedup();
    times
}

/// The distinct unlabeled graphs of `g` restricted to growing sizes.
///
/// Step `k` holds the edges entering at the `k`-th jump time. Vertices carry
/// appearance ids: ordered by the step in which they first appear, then by
/// label. Ids are therefore stable across steps, so the graph after step `k`
/// is the union of steps `0..=k`, and they are unchanged by any increasing
/// relabeling such as a dilation.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphSequence {
    steps: Vec<Vec<(usize, usize)>>,
    jump_times: Option<Vec<f64>>,
}

impl GraphSequence {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Edges added at each step, in appearance ids.
    pub fn steps(&self) -> &[Vec<(usize, usize)>] {
        &self.steps
    }

    pub fn jump_times(&self) -> Option<&[f64]> {
        self.jump_times.as_deref()
    }

    /// The same sequence with sizes forgotten.
    pub fn without_jump_times(mut self) -> Self {
        self.jump_times = None;
        self
    }

    /// First `k` steps.
    pub fn prefix(&self, k: usize) -> Self {
        let k = k.min(self.len());
        Self {
            steps: self.steps[..k].to_vec(),
            jump_times: self.jump_times.as_ref().map(|t| t[..k].to_vec()),
        }
    }

    /// Graph after step `k` in appearance ids.
    pub fn graph_in_appearance_ids(&self, k: usize) -> UnlabeledGraph {
        UnlabeledGraph::from_edges(self.steps[..=k].iter().flatten().copied())
    }

    /// Graph after step `k` in canonical order.
    pub fn graph(&self, k: usize) -> UnlabeledGraph {
        self.graph_in_appearance_ids(k).canonical()
    }

    /// All graphs of the sequence in canonical order.
    pub fn graphs(&self) -> Vec<UnlabeledGraph> {
        (0..self.len()).map(|k| self.graph(k)).collect()
    }
}

pub fn graph_sequence(g: &LabeledGraph) -> GraphSequence {
    let edges = g.edges();
    let mut ids: Vec<(f64, usize)> = Vec::new();
    let mut steps: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut times = Vec::new();
    let mut start = 0;
    while start < edges.len() {
        let tau = edges[start].theta_prime;
        let end = start + edges[start..].partition_point(|e| e.theta_prime == tau);
        let block = &edges[start..end];
        // New labels of this step, ordered by label.
        let mut fresh: Vec<f64> = block
            .iter()
            .flat_map(|e| [e.theta, e.theta_prime])
            .filter(|x| lookup(&ids, *x).is_none())
            .collect();
        fresh.sort_by(f64::total_cmp);
        fresh.dedup();
        for x in fresh {
            let id = ids.len();
            let at = ids.partition_point(|(l, _)| l.total_cmp(&x).is_lt());
            ids.insert(at, (x, id));
        }
        let step = block
            .iter()
            .map(|e| {
                let a = lookup(&ids, e.theta).expect("label registered");
                let b = lookup(&ids, e.theta_prime).expect("label registered");
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        steps.push(step);
        times.push(tau);
        start = end;
    }
    GraphSequence { steps, jump_times: Some(times) }
}

fn lookup(ids: &[(f64, usize)], x: f64) -> Option<usize> {
    ids.binary_search_by(|(l, _)| l.total_cmp(&x)).ok().map(|k| ids[k].1)
}

/// Summary of the first `ell` steps of a graph sequence: edge and vertex
/// counts of the `ell`-th graph and the edges added per step, capped at `ell`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrefixStats {
    pub e: usize,
    pub v: usize,
    pub steps: Vec<usize>,
}

/// `None` when the sequence has fewer than `ell` steps.
pub fn prefix_stats(seq: &GraphSequence, ell: usize) -> Option<PrefixStats> {
    if ell == 0 || seq.len() < ell {
        return None;
    }
    let steps: Vec<usize> = seq.steps()[..ell].iter().map(|s| s.len().min(ell)).collect();
    let g = seq.graph_in_appearance_ids(ell - 1);
    Some(PrefixStats { e: g.edge_count(), v: g.vertex_count(), steps })
}

/// Multiplies every label and the size by `c`.
pub fn dilate_measure(g: &LabeledGraph, c: f64) -> Result<LabeledGraph> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(invalid(alloc::format!("dilation must be positive, got {c}")));
    }
    let edges = g
        .edges()
        .iter()
        .map(|e| LabeledEdge::new(c * e.theta, c * e.theta_prime, e.component))
        .collect();
    LabeledGraph::new(c * g.size(), edges)
}

/// `(c^2 I, c S(. / c), W(. / c, . / c))`.
pub fn dilate_graphex(gx: &Graphex, c: f64) -> Result<Graphex> {
    gx.dilate(c)
}
