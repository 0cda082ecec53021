//! Vertex subsampling of unlabeled graphs and random labelings.

use alloc::vec::Vec;

use libm::{exp, lgamma, log, log1p};
use rand_distr::{Binomial, Distribution};

use crate::error::{invalid, Error, Result};
use crate::graph::{Component, LabeledEdge, LabeledGraph, UnlabeledGraph};
use crate::rng::RngHandle;

/// Keeps each vertex independently with probability `p` and returns the
/// induced edge set in canonical order.
pub fn p_sample(g: &UnlabeledGraph, p: f64, rng: &mut RngHandle) -> Result<UnlabeledGraph> {
    check_probability(p)?;
    let keep: Vec<bool> = (0..g.vertex_count()).map(|_| rng.bernoulli(p)).collect();
    Ok(g.induced(&keep).canonical())
}

/// One joint draw of the three coupled `r/s` samplers.
#[derive(Clone, Debug, PartialEq)]
pub struct CouplingOutcome {
    /// Without replacement, `Binomial(v, r/s)` vertices.
    pub x: UnlabeledGraph,
    /// With replacement, the same number of draws.
    pub h: UnlabeledGraph,
    /// With replacement, `Poisson(v r/s)` draws.
    pub m: UnlabeledGraph,
    pub agree_xh: bool,
    pub agree_hm: bool,
}

/// Draws `X`, `H` and `M` jointly.
///
/// `K ~ Binomial(v, r/s)` and `L` is a uniformly random list of `K` distinct
/// vertices. `L~` keeps `L[j]` (1-based) with probability `1 - (j-1)/v` and
/// otherwise repeats a uniform earlier entry of `L`, which makes it an i.i.d.
/// uniform list. `J ~ Poisson(v r/s)` is maximally coupled to `K`, and the
/// list for `M` is `L~` cut or extended to length `J`. Agreement compares the
/// induced edge sets as subsets of `g`.
pub fn coupled_sample(g: &UnlabeledGraph, r: f64, s: f64, rng: &mut RngHandle) -> Result<CouplingOutcome> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !(r > 0.0 && r <= s && s.is_finite()) {
        return Err(invalid(alloc::format!("need 0 < r <= s, got r={r}, s={s}")));
    }
    let v = g.vertex_count();
    let p = r / s;
    let k = binomial(v as u64, p, rng) as usize;

    let mut pool: Vec<usize> = (0..v).collect();
    for j in 0..k {
        let pick = j + rng.index(v - j);
        pool.swap(j, pick);
    }
    let list = &pool[..k];

    let mut tilde = Vec::with_capacity(k);
    for (j, &l) in list.iter().enumerate() {
        // 0-based j: keep with probability 1 - j/v.
        if j == 0 || rng.bernoulli(1.0 - j as f64 / v as f64) {
            tilde.push(l);
        } else {
            tilde.push(list[rng.index(j)]);
        }
    }

    let jj = coupled_poisson(v as u64, p, k as u64, rng) as usize;
    let mut with_poisson: Vec<usize> = tilde[..jj.min(k)].to_vec();
    while with_poisson.len() < jj {
        with_poisson.push(rng.index(v));
    }

    let x = induced_edges(g, list);
    let h = induced_edges(g, &tilde);
    let m = induced_edges(g, &with_poisson);
    Ok(CouplingOutcome {
        agree_xh: x == h,
        agree_hm: h == m,
        x: UnlabeledGraph::from_edges(x).canonical(),
        h: UnlabeledGraph::from_edges(h).canonical(),
        m: UnlabeledGraph::from_edges(m).canonical(),
    })
}

/// Edges of `g` with both ends in `vertices`, in `g`'s ids.
fn induced_edges(g: &UnlabeledGraph, vertices: &[usize]) -> Vec<(usize, usize)> {
    let mut keep = alloc::vec![false; g.vertex_count()];
    for &u in vertices {
        keep[u] = true;
    }
    g.edges().iter().copied().filter(|&(a, b)| keep[a] && keep[b]).collect()
}

/// Bound on `P(X != H)` for a graph with `e` edges and `v` vertices:
/// `2 e (r^3/s^3 + 2 r^3/(s^3 v^2) + 3 r^2/(s^2 v) + r/(s v^2))`.
pub fn replacement_bound(e: usize, v: usize, r: f64, s: f64) -> f64 {
    let (e, v, q) = (e as f64, v as f64, r / s);
    2.0 * e * (q * q * q + 2.0 * q * q * q / (v * v) + 3.0 * q * q / v + q / (v * v))
}

/// Total variation distance between `Binomial(n, p)` and `Poisson(n p)`.
pub fn binomial_poisson_tv(n: u64, p: f64) -> f64 {
    let lambda = n as f64 * p;
    let upper = support_limit(n, lambda);
    (0..=upper).map(|j| (poisson_pmf(lambda, j) - binomial_pmf(n, p, j)).max(0.0)).sum()
}

/// Given `K = k ~ Binomial(n, p)`, draws `J ~ Poisson(n p)` from the maximal
/// coupling: keep `k` with probability `min(1, q(k)/b(k))`, otherwise draw
/// from the normalized excess `(q - b)+`.
fn coupled_poisson(n: u64, p: f64, k: u64, rng: &mut RngHandle) -> u64 {
    let lambda = n as f64 * p;
    let b = binomial_pmf(n, p, k);
    let q = poisson_pmf(lambda, k);
    if b <= 0.0 || rng.uniform() * b < q {
        return k;
    }
    let upper = support_limit(n, lambda);
    let excess = |j: u64| (poisson_pmf(lambda, j) - binomial_pmf(n, p, j)).max(0.0);
    let tv: f64 = (0..=upper).map(excess).sum();
    let target = rng.uniform() * tv;
    let mut acc = 0.0;
    let mut last = k;
    for j in 0..=upper {
        let w = excess(j);
        if w > 0.0 {
            last = j;
            acc += w;
            if acc > target {
                return j;
            }
        }
    }
    last
}

/// Index beyond which both pmfs are negligible.
fn support_limit(n: u64, lambda: f64) -> u64 {
    let spread = 12.0 * libm::sqrt(lambda) + 40.0;
    n.max((lambda + spread) as u64)
}

fn binomial_pmf(n: u64, p: f64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    if p >= 1.0 {
        return if k == n { 1.0 } else { 0.0 };
    }
    if p <= 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    let (nf, kf) = (n as f64, k as f64);
    let ln_choose = lgamma(nf + 1.0) - lgamma(kf + 1.0) - lgamma(nf - kf + 1.0);
    exp(ln_choose + kf * log(p) + (nf - kf) * log1p(-p))
}

fn poisson_pmf(lambda: f64, k: u64) -> f64 {
    if lambda <= 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    let kf = k as f64;
    exp(kf * log(lambda) - lambda - lgamma(kf + 1.0))
}

pub(crate) fn binomial(n: u64, p: f64, rng: &mut RngHandle) -> u64 {
    // Binomial::new only rejects p outside [0, 1].
    Binomial::new(n, p).expect("probability in [0, 1]").sample(rng)
}

/// Gives every vertex an i.i.d. uniform label on `[0, s]`. Edges are tagged
/// `W` since their source is unknown.
pub fn random_label(g: &UnlabeledGraph, s: f64, rng: &mut RngHandle) -> Result<LabeledGraph> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(invalid(alloc::format!("size must be positive, got {s}")));
    }
    let labels: Vec<f64> = (0..g.vertex_count()).map(|_| s * rng.uniform()).collect();
    let edges = g.edges().iter().map(|&(u, v)| LabeledEdge::new(labels[u], labels[v], Component::W)).collect();
    LabeledGraph::new(s, edges)
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(invalid(alloc::format!("probability must be in [0, 1], got {p}")))
    }
}
