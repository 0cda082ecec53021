//! Labeled graphs (finite adjacency measures on `[0, s]^2`) and unlabeled
//! graphs over contiguous vertex ids.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::error::{invalid, Error, Result};

/// Which part of the graphex produced an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    W,
    S,
    I,
}

impl Component {
    pub fn as_str(self) -> &'static str {
        match self {
            Component::W => "W",
            Component::S => "S",
            Component::I => "I",
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Component {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "W" => Ok(Component::W),
            "S" => Ok(Component::S),
            "I" => Ok(Component::I),
            _ => Err(invalid(alloc::format!("unknown edge component `{s}`"))),
        }
    }
}

/// An undirected labeled edge, stored with `theta <= theta_prime`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LabeledEdge {
    pub theta: f64,
    pub theta_prime: f64,
    pub component: Component,
}

impl LabeledEdge {
    pub fn new(a: f64, b: f64, component: Component) -> Self {
        let (theta, theta_prime) = if a <= b { (a, b) } else { (b, a) };
        Self { theta, theta_prime, component }
    }

    /// The size at which this edge enters the process.
    pub fn max_label(&self) -> f64 {
        self.theta_prime
    }

    fn key_cmp(&self, other: &Self) -> Ordering {
        self.theta_prime
            .total_cmp(&other.theta_prime)
            .then(self.theta.total_cmp(&other.theta))
    }
}

/// A finite simple symmetric point pattern on `[0, size]^2`.
///
/// Edges are kept sorted by `(theta_prime, theta)`, so a restriction is a
/// prefix and two graphs with the same edges compare equal.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledGraph {
    size: f64,
    edges: Vec<LabeledEdge>,
}

impl LabeledGraph {
    pub fn new(size: f64, mut edges: Vec<LabeledEdge>) -> Result<Self> {
        if !(size >= 0.0 && size.is_finite()) {
            return Err(invalid(alloc::format!("graph size must be finite and >= 0, got {size}")));
        }
        for e in &mut edges {
            *e = LabeledEdge::new(e.theta, e.theta_prime, e.component);
            for label in [e.theta, e.theta_prime] {
                if !(0.0..=size).contains(&label) {
                    return Err(Error::LabelOutOfRange { label, size });
                }
            }
        }
        edges.sort_by(LabeledEdge::key_cmp);
        if let Some(w) = edges.windows(2).find(|w| w[0].key_cmp(&w[1]) == Ordering::Equal) {
            return Err(Error::DuplicateEdge(w[0].theta, w[0].theta_prime));
        }
        Ok(Self { size, edges })
    }

    pub fn empty(size: f64) -> Result<Self> {
        Self::new(size, Vec::new())
    }

    /// Edges already normalized, sorted, distinct and within `[0, size]`.
    pub(crate) fn from_sorted(size: f64, edges: Vec<LabeledEdge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0].key_cmp(&w[1]) == Ordering::Less));
        Self { size, edges }
    }

    pub fn size(&self) -> f64 {
        self.size
    }

    pub fn edges(&self) -> &[LabeledEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn count_component(&self, c: Component) -> usize {
        self.edges.iter().filter(|e| e.component == c).count()
    }

    /// Edges with both labels in `[0, r]`, as a graph of size `r`.
    pub fn restrict(&self, r: f64) -> Result<Self> {
        if !(0.0..=self.size).contains(&r) {
            return Err(Error::OutOfRange { r, size: self.size });
        }
        let keep = self.edges.partition_point(|e| e.theta_prime <= r);
        Ok(Self { size: r, edges: self.edges[..keep].to_vec() })
    }

    /// Distinct labels in ascending order.
    pub fn labels(&self) -> Vec<f64> {
        let mut labels: Vec<f64> = self.edges.iter().flat_map(|e| [e.theta, e.theta_prime]).collect();
        labels.sort_by(f64::total_cmp);
        labels.dedup();
        labels
    }

    /// The unlabeled graph with vertex `k` the `k`-th smallest label.
    pub fn unlabeled_by_label(&self) -> UnlabeledGraph {
        let labels = self.labels();
        let id = |x: f64| labels.binary_search_by(|l| l.total_cmp(&x)).expect("label present");
        let edges = self.edges.iter().map(|e| (id(e.theta), id(e.theta_prime))).collect();
        UnlabeledGraph::from_compact(labels.len(), edges)
    }

    /// The unlabeled graph in canonical vertex order.
    pub fn forget_labels(&self) -> UnlabeledGraph {
        self.unlabeled_by_label().canonical()
    }
}

/// Simple undirected graph on vertices `0..n`, every vertex incident to an
/// edge. Self-loops are allowed. Edges are stored as `(u, v)` with `u <= v`,
/// sorted and distinct.
///
/// Ids are 0-based in memory; file formats shift them to 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UnlabeledGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl UnlabeledGraph {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a graph from edges over arbitrary ids. Ids are compressed to
    /// `0..n` preserving their relative order; repeated edges collapse.
    pub fn from_edges(edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let edges: Vec<(usize, usize)> = edges.into_iter().collect();
        let mut ids: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        ids.sort_unstable();
        ids.dedup();
        let id = |x: usize| ids.binary_search(&x).expect("id present");
        let compact = edges.iter().map(|&(u, v)| (id(u), id(v))).collect();
        Self::from_compact(ids.len(), compact)
    }

    /// `edges` already use every id in `0..n`.
    pub(crate) fn from_compact(n: usize, mut edges: Vec<(usize, usize)>) -> Self {
        for e in &mut edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Self { n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let e = if u <= v { (u, v) } else { (v, u) };
        self.edges.binary_search(&e).is_ok()
    }

    /// Sorted neighbor lists. A loop lists the vertex as its own neighbor once.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            if u != v {
                adj[v].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Degrees, with a loop counting twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Subgraph induced by the vertices with `keep[v]`, minus the vertices it
    /// leaves isolated. Ids keep their relative order.
    pub fn induced(&self, keep: &[bool]) -> Self {
        Self::from_edges(self.edges.iter().copied().filter(|&(u, v)| keep[u] && keep[v]))
    }

    /// Relabels vertex `v` to `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length must equal the vertex count");
        Self::from_compact(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect())
    }

    /// Deterministic vertex order: `order[k]` is the vertex placed at
    /// position `k`.
    ///
    /// Vertices start colored by (degree descending, has-loop) and colors are
    /// refined by the sorted multiset of neighbor colors until stable, so
    /// higher degrees come first. Ties left after refinement are settled by
    /// an individualization search that keeps the smallest relabeled edge
    /// list, component by component. Isomorphic graphs therefore get the same
    /// canonical graph, whatever their ids.
    pub fn canonical_order(&self) -> Vec<usize> {
        crate::canon::canonical_order(self.n, &self.edges, &self.adjacency())
    }

    /// The same graph relabeled into canonical order.
    pub fn canonical(&self) -> Self {
        let order = self.canonical_order();
        let mut position = vec![0; self.n];
        for (k, &v) in order.iter().enumerate() {
            position[v] = k;
        }
        self.relabel(&position)
    }
}
