//! Canonical vertex order: color refinement, then an individualization
//! search per connected component for the ties refinement leaves.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// Invariant colors by position, then the edge list over positions.
type Certificate = (Vec<usize>, Vec<(usize, usize)>);

/// `order[k]` is the vertex at position `k`.
///
/// Vertices are sorted by their stable refinement color (degree descending
/// first), then by the rank of their component's certificate, then by their
/// position inside the component. Isomorphic components are interchangeable,
/// so how copies are ranked among themselves does not change the result.
pub(crate) fn canonical_order(n: usize, edges: &[(usize, usize)], adj: &[Vec<usize>]) -> Vec<usize> {
    let mut deg = vec![0usize; n];
    let mut looped = vec![false; n];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
        looped[u] |= u == v;
    }
    let mut color = rank_by(n, |a, b| deg[b].cmp(&deg[a]).then(looped[a].cmp(&looped[b])));
    let cells = count_colors(&color);
    refine(adj, &mut color, cells);

    let mut local = vec![0usize; n];
    let canon: Vec<(Certificate, Vec<usize>)> =
        components(adj).iter().map(|c| component_order(c, adj, &color, &mut local)).collect();
    let mut ranked: Vec<usize> = (0..canon.len()).collect();
    ranked.sort_by(|&a, &b| canon[a].0.cmp(&canon[b].0).then(a.cmp(&b)));
    let mut key = vec![(0usize, 0usize, 0usize); n];
    for (rank, &c) in ranked.iter().enumerate() {
        for (pos, &v) in canon[c].1.iter().enumerate() {
            key[v] = (color[v], rank, pos);
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by_key(|&v| key[v]);
    order
}

/// Vertex sets of the connected components, each ascending, listed by
/// smallest member.
fn components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; adj.len()];
    let mut out = Vec::new();
    for start in 0..adj.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut k = 0;
        while k < comp.len() {
            for &u in &adj[comp[k]] {
                if !seen[u] {
                    seen[u] = true;
                    comp.push(u);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Certificate of one component and its vertices in canonical order.
fn component_order(comp: &[usize], adj: &[Vec<usize>], color: &[usize], local: &mut [usize]) -> (Certificate, Vec<usize>) {
    for (i, &v) in comp.iter().enumerate() {
        local[v] = i;
    }
    let m = comp.len();
    let ladj: Vec<Vec<usize>> = comp.iter().map(|&v| adj[v].iter().map(|&u| local[u]).collect()).collect();
    let base: Vec<usize> = comp.iter().map(|&v| color[v]).collect();
    let start = rank_by(m, |a, b| base[a].cmp(&base[b]));
    let cells = count_colors(&start);
    let mut search = Search { adj: &ladj, base: &base, path: Vec::new(), first_path: Vec::new(), first: None, best: None, automorphisms: Vec::new() };
    search.explore(start, cells);
    let best = search.best.expect("a leaf is always reached");
    (best.cert, best.inverse.iter().map(|&v| comp[v]).collect())
}

struct Leaf {
    cert: Certificate,
    /// Position to vertex.
    inverse: Vec<usize>,
}

struct Search<'a> {
    adj: &'a [Vec<usize>],
    base: &'a [usize],
    /// Vertices individualized on the way to the current node.
    path: Vec<usize>,
    first_path: Vec<usize>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Depth-first over individualizations of the first non-singleton cell.
    /// Returns the level to resume at after a leaf equivalent to the first
    /// one: the whole subtree below that level mirrors an explored one.
    fn explore(&mut self, color: Vec<usize>, cells: usize) -> Option<usize> {
        let m = color.len();
        if cells == m {
            return self.leaf(&color);
        }
        let target = first_split_cell(&color);
        let cell: Vec<usize> = (0..m).filter(|&v| color[v] == target).collect();
        let depth = self.path.len();
        let mut tried: Vec<usize> = Vec::new();
        for &w in &cell {
            if tried.iter().any(|&u| self.twins(u, w)) || self.same_orbit(&tried, w) {
                continue;
            }
            tried.push(w);
            let key = |v: usize| (color[v], v != w);
            let mut next = rank_by(m, |a, b| key(a).cmp(&key(b)));
            let c = refine(self.adj, &mut next, cells + 1);
            self.path.push(w);
            let resume = self.explore(next, c);
            self.path.pop();
            if let Some(level) = resume {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, color: &[usize]) -> Option<usize> {
        let m = color.len();
        let mut inverse = vec![0; m];
        for (v, &c) in color.iter().enumerate() {
            inverse[c] = v;
        }
        let cert = self.certificate(&inverse, color);
        let Some(first) = &self.first else {
            self.first_path = self.path.clone();
            self.first = Some(Leaf { cert: cert.clone(), inverse: inverse.clone() });
            self.best = Some(Leaf { cert, inverse });
            return None;
        };
        if first.cert == cert {
            self.automorphisms.push(color.iter().map(|&c| first.inverse[c]).collect());
            let level = self.path.iter().zip(&self.first_path).position(|(a, b)| a != b).unwrap_or(self.path.len());
            return Some(level);
        }
        let best = self.best.as_mut().expect("set with the first leaf");
        match cert.cmp(&best.cert) {
            Ordering::Less => *best = Leaf { cert, inverse },
            Ordering::Equal => self.automorphisms.push(color.iter().map(|&c| best.inverse[c]).collect()),
            Ordering::Greater => {}
        }
        None
    }

    fn certificate(&self, inverse: &[usize], position: &[usize]) -> Certificate {
        let colors = inverse.iter().map(|&v| self.base[v]).collect();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (u, list) in self.adj.iter().enumerate() {
            for &w in list.iter().filter(|&&w| u <= w) {
                let (a, b) = (position[u], position[w]);
                edges.push((a.min(b), a.max(b)));
            }
        }
        edges.sort_unstable();
        (colors, edges)
    }

    /// Swapping `u` and `w` is an automorphism.
    fn twins(&self, u: usize, w: usize) -> bool {
        let rest = |v: usize| self.adj[v].iter().copied().filter(move |&x| x != u && x != w);
        rest(u).eq(rest(w)) && self.adj[u].contains(&u) == self.adj[w].contains(&w)
    }

    /// `w` lies in the orbit of a tried vertex under the automorphisms found
    /// so far that fix the current path.
    fn same_orbit(&self, tried: &[usize], w: usize) -> bool {
        if tried.is_empty() || self.automorphisms.is_empty() {
            return false;
        }
        let m = self.adj.len();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for g in self.automorphisms.iter().filter(|g| self.path.iter().all(|&p| g[p] == p)) {
            for (v, &gv) in g.iter().enumerate() {
                let (a, b) = (find(&mut parent, v), find(&mut parent, gv));
                parent[a] = b;
            }
        }
        let root = find(&mut parent, w);
        tried.iter().any(|&u| find(&mut parent, u) == root)
    }
}

/// Dense ranks `0..` of vertices under a total preorder; equal elements share
/// a rank.
fn rank_by(n: usize, cmp: impl Fn(usize, usize) -> Ordering) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| cmp(a, b).then(a.cmp(&b)));
    let mut rank = vec![0; n];
    let mut r = 0;
    for k in 0..n {
        if k > 0 && cmp(idx[k - 1], idx[k]) != Ordering::Equal {
            r += 1;
        }
        rank[idx[k]] = r;
    }
    rank
}

fn count_colors(color: &[usize]) -> usize {
    color.iter().max().map_or(0, |&m| m + 1)
}

/// Smallest color shared by two or more vertices.
fn first_split_cell(color: &[usize]) -> usize {
    let mut size = vec![0usize; color.len()];
    for &c in color {
        size[c] += 1;
    }
    size.iter().position(|&s| s > 1).expect("partition is not discrete")
}

/// Color refinement to a stable partition; returns the number of colors.
/// New colors refine old ones and keep their relative order.
fn refine(adj: &[Vec<usize>], color: &mut Vec<usize>, mut cells: usize) -> usize {
    let n = color.len();
    let mut signature: Vec<Vec<usize>> = vec![Vec::new(); n];
    loop {
        for v in 0..n {
            let sig = &mut signature[v];
            sig.clear();
            sig.extend(adj[v].iter().map(|&u| color[u]));
            sig.sort_unstable();
        }
        let current = &*color;
        let next = rank_by(n, |a, b| current[a].cmp(&current[b]).then_with(|| signature[a].cmp(&signature[b])));
        let next_cells = count_colors(&next);
        *color = next;
        if next_cells == cells {
            return cells;
        }
        cells = next_cells;
    }
}
