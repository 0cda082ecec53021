//! Size-`s` graphex processes.
//!
//! Latent points `(theta_i, vartheta_i)` form a unit-rate Poisson process on
//! `[0, s] x R+`, cut at a level `V` chosen from the truncation budget. Three
//! independent edge sources are superposed:
//!
//! - `W`: each distinct pair of latent points is joined with probability
//!   `W(vartheta_i, vartheta_j)`.
//! - `S`: latent point `j` emits `Poisson(s S(vartheta_j))` rays to endpoints
//!   uniform on `[0, s]`.
//! - `I`: `Poisson(s^2 I)` edges with both endpoints uniform on `[0, s]`.
//!
//! Random streams are children of `cfg.seed`: 0 for interval counts of the
//! `vartheta` process, 1 for the `theta` labels, 2 for `W` thinning, 3 for
//! star rays, 4 for isolated edges and 5 for positions within intervals.

use alloc::vec::Vec;

use alloc::vec;

use libm::{floor, log, log1p, sqrt};
use rand_distr::{Distribution, Poisson};

use crate::error::{invalid, Error, Result};
use crate::graph::{Component, LabeledEdge, LabeledGraph};
use crate::graphon::{GraphonFamily, GraphonSpec, Graphex, PixelGraphon};
use crate::rng::{IndexedUniforms, RngHandle};

pub const DEFAULT_EPSILON: f64 = 1e-3;

/// Upper limit on the expected number of materialized latent points: star
/// emitters, or all points when they are kept.
pub const LATENT_LIMIT: f64 = (1u64 << 24) as f64;

const STREAM_COUNTS: u64 = 0;
const STREAM_THETA: u64 = 1;
const STREAM_W: u64 = 2;
const STREAM_STAR: u64 = 3;
const STREAM_ISOLATED: u64 = 4;
const STREAM_POSITION: u64 = 5;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimConfig {
    pub size: f64,
    /// Expected number of edges lost to truncation, over all components.
    pub epsilon: f64,
    pub seed: u64,
    pub keep_latent: bool,
}

impl SimConfig {
    pub fn new(size: f64, seed: u64) -> Self {
        Self { size, epsilon: DEFAULT_EPSILON, seed, keep_latent: false }
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.size > 0.0 && self.size.is_finite()) {
            return Err(invalid(alloc::format!("size must be positive, got {}", self.size)));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(invalid(alloc::format!("epsilon must be positive, got {}", self.epsilon)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LatentPoint {
    pub theta: f64,
    pub vartheta: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Simulation {
    pub graph: LabeledGraph,
    /// Latent points in ascending `vartheta`, when requested.
    pub latent: Option<Vec<LatentPoint>>,
}

/// Expected edge counts per component at size `s`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpectedEdges {
    pub w: f64,
    pub s: f64,
    pub i: f64,
}

impl ExpectedEdges {
    pub fn total(&self) -> f64 {
        self.w + self.s + self.i
    }
}

/// `(s^2 |W|_1 / 2, s^2 |S|_1, s^2 I)`.
pub fn expected_edge_counts(gx: &Graphex, s: f64) -> Result<ExpectedEdges> {
    let s2 = s * s;
    Ok(ExpectedEdges {
        w: 0.5 * s2 * gx.graphon().l1_norm()?,
        s: s2 * gx.star().l1_norm(),
        i: s2 * gx.isolated(),
    })
}

pub fn simulate(gx: &Graphex, cfg: &SimConfig) -> Result<Simulation> {
    cfg.validate()?;
    if !gx.is_nontrivial()? {
        return Err(Error::TrivialGraphex);
    }
    let s = cfg.size;
    let root = RngHandle::new(cfg.seed);
    // Each of W and S gets half the budget; per unit of s^2.
    let per_area = 0.5 * cfg.epsilon / (s * s);
    let v_w = match gx.graphon() {
        GraphonSpec::Zero => 0.0,
        w => w.truncation(per_area)?,
    };
    let v_s = gx.star().truncation(per_area)?;
    // Only star emitters, and every point when asked for, are materialized.
    let materialized = s * if cfg.keep_latent { v_w.max(v_s) } else { v_s };
    if materialized > LATENT_LIMIT {
        return Err(Error::LatentBudgetExceeded { expected: materialized, limit: LATENT_LIMIT });
    }

    let bounds = WBounds::new(gx.graphon(), v_w);
    let levels = Levels::new(bounds.breakpoints(v_w, v_s), s, &mut root.child(STREAM_COUNTS), root.child(STREAM_POSITION).seed());
    let mut thetas = Labels::new(s, root.child(STREAM_THETA).seed());
    let mut edges = Vec::new();

    let mut positions = levels.positions();
    let w_rng = &mut root.child(STREAM_W);
    block_edges(&levels, &bounds, &mut positions, w_rng, |i, j| {
        edges.push(LabeledEdge::new(thetas.get(i), thetas.get(j), Component::W));
    });

    let star_rng = &mut root.child(STREAM_STAR);
    for level in 0..levels.len() {
        if levels.hi(level) > v_s {
            break;
        }
        for k in levels.points(level) {
            let rays = poisson(s * gx.star().eval(positions.get(level, k)), star_rng);
            for _ in 0..rays {
                let sigma = s * star_rng.uniform();
                edges.push(LabeledEdge::new(thetas.get(k as usize), sigma, Component::S));
            }
        }
    }

    let iso_rng = &mut root.child(STREAM_ISOLATED);
    let count = poisson(s * s * gx.isolated(), iso_rng);
    for _ in 0..count {
        let a = s * iso_rng.uniform();
        let b = s * iso_rng.uniform();
        edges.push(LabeledEdge::new(a, b, Component::I));
    }

    // Coinciding labels have probability zero; collapse them if floating
    // point ever produces one, keeping the measure simple.
    edges.sort_by(|a, b| {
        a.theta_prime.total_cmp(&b.theta_prime).then(a.theta.total_cmp(&b.theta))
    });
    edges.dedup_by(|a, b| a.theta == b.theta && a.theta_prime == b.theta_prime);
    let graph = LabeledGraph::from_sorted(s, edges);

    let latent = cfg.keep_latent.then(|| {
        let mut out: Vec<LatentPoint> = (0..levels.len())
            .flat_map(|level| levels.points(level).map(move |k| (level, k)))
            .map(|(level, k)| LatentPoint { theta: thetas.get(k as usize), vartheta: positions.get(level, k) })
            .collect();
        out.sort_by(|a, b| a.vartheta.total_cmp(&b.vartheta));
        out
    });
    Ok(Simulation { graph, latent })
}

/// The labeled graph only.
pub fn simulate_graph(gx: &Graphex, cfg: &SimConfig) -> Result<LabeledGraph> {
    Ok(simulate(gx, &SimConfig { keep_latent: false, ..*cfg })?.graph)
}

/// One draw at the largest size, restricted to every requested size.
pub fn simulate_projective(gx: &Graphex, sizes: &[f64], epsilon: f64, seed: u64) -> Result<Vec<LabeledGraph>> {
    let Some(&s_max) = sizes.last() else {
        return Ok(Vec::new());
    };
    if sizes.windows(2).any(|w| w[0].is_nan() || w[1].is_nan() || w[0] > w[1]) {
        return Err(invalid("sizes must be ascending"));
    }
    let full = simulate_graph(gx, &SimConfig::new(s_max, seed).with_epsilon(epsilon))?;
    sizes.iter().map(|&r| full.restrict(r)).collect()
}

pub(crate) fn poisson(mean: f64, rng: &mut RngHandle) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    // Poisson::new only fails for non-positive or non-finite means.
    let dist = Poisson::new(mean).expect("finite positive mean");
    dist.sample(rng) as u64
}

/// `theta` labels drawn on demand, keyed by latent point index.
struct Labels {
    size: f64,
    stream: IndexedUniforms,
}

impl Labels {
    fn new(size: f64, seed: u64) -> Self {
        Self { size, stream: IndexedUniforms::new(seed) }
    }

    fn get(&mut self, k: usize) -> f64 {
        self.size * self.stream.at(k)
    }
}

/// The latent process cut into consecutive intervals of the `vartheta` axis.
/// Interval counts are Poisson and positions within an interval are uniform,
/// drawn on demand by global point index, so no point is stored.
struct Levels {
    /// Interval endpoints, ascending from 0.
    edges: Vec<f64>,
    /// Global index of each interval's first point; one extra entry at the end.
    offsets: Vec<u64>,
    position_seed: u64,
}

impl Levels {
    fn new(edges: Vec<f64>, s: f64, rng: &mut RngHandle, position_seed: u64) -> Self {
        let mut offsets = Vec::with_capacity(edges.len());
        offsets.push(0);
        for w in edges.windows(2) {
            let last = offsets[offsets.len() - 1];
            offsets.push(last + poisson(s * (w[1] - w[0]), rng));
        }
        Self { edges, offsets, position_seed }
    }

    fn len(&self) -> usize {
        self.edges.len().saturating_sub(1)
    }

    fn hi(&self, level: usize) -> f64 {
        self.edges[level + 1]
    }

    fn count(&self, level: usize) -> u64 {
        self.offsets[level + 1] - self.offsets[level]
    }

    fn points(&self, level: usize) -> core::ops::Range<u64> {
        self.offsets[level]..self.offsets[level + 1]
    }

    /// Positions of the first points, up to [`CACHED_POINTS`], are read in
    /// one sequential pass; the rest on demand. Both give the same values.
    fn positions(&self) -> Positions<'_> {
        let mut stream = IndexedUniforms::new(self.position_seed);
        let cached = self.offsets[self.offsets.len() - 1].min(CACHED_POINTS) as usize;
        let mut uniforms = vec![0.0; cached];
        stream.fill(0, &mut uniforms);
        Positions { levels: self, stream, uniforms }
    }
}

const CACHED_POINTS: u64 = 1 << 13;

struct Positions<'a> {
    levels: &'a Levels,
    stream: IndexedUniforms,
    uniforms: Vec<f64>,
}

impl Positions<'_> {
    /// `vartheta` of global point `k`, which lies in `level`.
    fn get(&mut self, level: usize, k: u64) -> f64 {
        let lo = self.levels.edges[level];
        let u = match self.uniforms.get(k as usize) {
            Some(&u) => u,
            None => self.stream.at(k as usize),
        };
        lo + (self.levels.edges[level + 1] - lo) * u
    }
}

/// Upper bounds of `W` on products of intervals.
enum WBounds<'a> {
    Zero,
    /// `f` at each interval's left end bounds `f` on the interval.
    Product { family: &'a GraphonFamily, v: f64 },
    /// Intervals are pixel cells, on which `W` is constant.
    Pixel { px: &'a PixelGraphon, v: f64 },
}

enum LevelBounds<'a> {
    Zero,
    /// `f` at each interval's left end.
    Factors(Vec<f64>),
    /// Pixel cell containing each interval.
    Cells(&'a PixelGraphon, Vec<Option<usize>>),
}

impl LevelBounds<'_> {
    /// Bound of `W` on the product of two intervals.
    fn block(&self, a: usize, b: usize) -> f64 {
        match self {
            LevelBounds::Zero => 0.0,
            LevelBounds::Factors(f) => (f[a] * f[b]).min(1.0),
            LevelBounds::Cells(px, cells) => match (cells[a], cells[b]) {
                (Some(i), Some(j)) => px.get(i, j),
                _ => 0.0,
            },
        }
    }
}

/// Bisection halvings of `f` stop before `f` underflows to zero.
const MAX_LEVELS: usize = 1100;
const BISECTIONS: usize = 24;

impl<'a> WBounds<'a> {
    fn new(w: &'a GraphonSpec, v: f64) -> Self {
        match w {
            GraphonSpec::Zero => WBounds::Zero,
            GraphonSpec::Builtin(family) => WBounds::Product { family, v },
            GraphonSpec::Pixel(px) => WBounds::Pixel { px, v },
        }
    }

    /// Interval endpoints covering `[0, max(v_w, v_s)]`, including both levels.
    fn breakpoints(&self, v_w: f64, v_s: f64) -> Vec<f64> {
        let mut pts = vec![0.0, v_w, v_s];
        match *self {
            WBounds::Zero => {}
            WBounds::Product { family, v } => pts.extend(halvings(family, v)),
            WBounds::Pixel { px, v } => {
                pts.extend((1..px.size()).map(|i| i as f64 * px.cell_width()).filter(|&x| x < v));
            }
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    /// Per-interval data from which block bounds follow; nothing beyond `V`.
    fn per_level(&self, levels: &Levels) -> LevelBounds<'a> {
        let inside = |l: usize| levels.hi(l) <= self.v();
        match *self {
            WBounds::Zero => LevelBounds::Zero,
            WBounds::Product { family, .. } => LevelBounds::Factors(
                (0..levels.len())
                    .map(|l| if inside(l) { family.factor(levels.edges[l]) } else { 0.0 })
                    .collect(),
            ),
            WBounds::Pixel { px, .. } => LevelBounds::Cells(
                px,
                (0..levels.len())
                    .map(|l| inside(l).then(|| px.cell(0.5 * (levels.edges[l] + levels.hi(l)))).flatten())
                    .collect(),
            ),
        }
    }

    fn v(&self) -> f64 {
        match *self {
            WBounds::Zero => 0.0,
            WBounds::Product { v, .. } | WBounds::Pixel { v, .. } => v,
        }
    }

    /// Acceptance probability of a proposal made at `bound`.
    fn accept(&self, x: f64, y: f64, bound: f64) -> f64 {
        match *self {
            WBounds::Product { family, .. } => (family.factor(x) * family.factor(y)).min(1.0) / bound,
            WBounds::Pixel { .. } | WBounds::Zero => 1.0,
        }
    }
}

/// Points where the non-increasing factor `f` has halved, up to `v`.
fn halvings(family: &GraphonFamily, v: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut lo = 0.0;
    let tail = family.factor(v);
    while out.len() < MAX_LEVELS {
        let target = 0.5 * family.factor(lo);
        if target <= 0.0 || tail > target {
            break;
        }
        // Some x in (lo, v] with f(x) <= target, near the smallest. Any such
        // point keeps the bounds valid; precision only affects acceptance.
        let (mut a, mut b) = (lo, v);
        for _ in 0..BISECTIONS {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if family.factor(mid) <= target {
                b = mid;
            } else {
                a = mid;
            }
        }
        out.push(b);
        lo = b;
    }
    out
}

/// Bernoulli thinning of all pairs of latent points, one product of intervals
/// at a time, in time linear in intervals squared plus edges.
///
/// Within a block every pair is proposed at the block bound `p` by geometric
/// skips over a flat pair index, then accepted with ratio `W / p`.
fn block_edges(
    levels: &Levels,
    bounds: &WBounds<'_>,
    positions: &mut Positions<'_>,
    rng: &mut RngHandle,
    mut emit: impl FnMut(usize, usize),
) {
    let table = bounds.per_level(levels);
    for a in 0..levels.len() {
        let na = levels.count(a);
        if na == 0 {
            continue;
        }
        for b in a..levels.len() {
            let nb = levels.count(b);
            // Heavy tails put more than 2^32 points in a level.
            let (na, nb) = (u128::from(na), u128::from(nb));
            let pairs = if a == b { na * (na - 1) / 2 } else { na * nb };
            if pairs == 0 {
                continue;
            }
            let p = table.block(a, b);
            if p <= 0.0 {
                continue;
            }
            let (oa, ob) = (u128::from(levels.offsets[a]), u128::from(levels.offsets[b]));
            for t in proposals(pairs, p, rng) {
                let (i, j) = if a == b {
                    let (i, j) = triangle_pair(t);
                    (oa + i, oa + j)
                } else {
                    (oa + t / nb, ob + t % nb)
                };
                let (i, j) = (i as u64, j as u64);
                let q = bounds.accept(positions.get(a, i), positions.get(b, j), p);
                if q >= 1.0 || rng.uniform() < q {
                    emit(i as usize, j as usize);
                }
            }
        }
    }
}

/// Indices in `0..n` each kept independently with probability `p`, ascending.
fn proposals(n: u128, p: f64, rng: &mut RngHandle) -> Vec<u128> {
    let mut out = Vec::new();
    let mut t = 0u128;
    let ln_q = log1p(-p);
    while t < n {
        if p < 1.0 {
            let skip = floor(log(rng.open_uniform()) / ln_q);
            if skip >= (n - t) as f64 {
                break;
            }
            t += skip as u128;
        }
        out.push(t);
        t += 1;
    }
    out
}

/// Pair `(i, j)`, `i < j`, at position `t` of the order by `j` then `i`.
fn triangle_pair(t: u128) -> (u128, u128) {
    let mut j = floor((1.0 + sqrt(1.0 + 8.0 * t as f64)) / 2.0) as u128;
    while j * (j - 1) / 2 > t {
        j -= 1;
    }
    while (j + 1) * j / 2 <= t {
        j += 1;
    }
    (t - j * (j - 1) / 2, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphon::{PixelGraphon, StarSpec};
    use alloc::vec;

    fn exp_gx() -> Graphex {
        Graphex::graphon_only(GraphonSpec::exp_product())
    }

    #[test]
    fn deterministic_given_seed() {
        let gx = Graphex::new(0.1, StarSpec::builtin("exp", &[0.5, 1.0]).unwrap(), GraphonSpec::exp_product())
            .unwrap();
        let cfg = SimConfig::new(8.0, 99);
        assert_eq!(simulate(&gx, &cfg).unwrap(), simulate(&gx, &cfg).unwrap());
    }

    #[test]
    fn latent_points_do_not_change_the_graph() {
        let gx = exp_gx();
        let cfg = SimConfig::new(6.0, 5);
        let with = simulate(&gx, &SimConfig { keep_latent: true, ..cfg }).unwrap();
        let without = simulate(&gx, &cfg).unwrap();
        assert_eq!(with.graph, without.graph);
        let latent = with.latent.unwrap();
        assert!(latent.iter().all(|p| (0.0..6.0).contains(&p.theta) && p.vartheta >= 0.0));
        assert!(latent.windows(2).all(|w| w[0].vartheta <= w[1].vartheta));
    }

    #[test]
    fn trivial_and_invalid_inputs() {
        let zero = Graphex::graphon_only(GraphonSpec::Zero);
        assert_eq!(simulate(&zero, &SimConfig::new(1.0, 0)), Err(Error::TrivialGraphex));
        assert!(simulate(&exp_gx(), &SimConfig::new(0.0, 0)).is_err());
        assert!(simulate(&exp_gx(), &SimConfig::new(1.0, 0).with_epsilon(0.0)).is_err());
        let heavy = Graphex::graphon_only(GraphonSpec::builtin("inverse-power", &[1.0]).unwrap());
        assert!(simulate(&heavy, &SimConfig::new(1.0, 0)).is_err());
    }

    #[test]
    fn expected_counts() {
        let e = expected_edge_counts(&exp_gx(), 10.0).unwrap();
        assert_eq!((e.w, e.s, e.i), (50.0, 0.0, 0.0));
        let three_part = Graphex::new(
            0.1,
            StarSpec::builtin("exp", &[0.5, 1.0]).unwrap(),
            GraphonSpec::builtin("inverse-power", &[2.0, 2.0]).unwrap(),
        )
        .unwrap();
        let e = expected_edge_counts(&three_part, 15.0).unwrap();
        assert!((e.w - 112.5).abs() < 1e-12);
        assert!((e.s - 225.0 / (2.0 * core::f64::consts::E)).abs() < 1e-12);
        assert!((e.i - 22.5).abs() < 1e-12);
        assert_eq!(expected_edge_counts(&three_part, 0.0).unwrap().total(), 0.0);
    }

    #[test]
    fn projective_nesting() {
        let out = simulate_projective(&exp_gx(), &[5.0, 10.0, 15.0], 1e-3, 3).unwrap();
        assert_eq!(out[1].restrict(5.0).unwrap(), out[0]);
        assert_eq!(out[2].restrict(10.0).unwrap(), out[1]);
        assert!(out.windows(2).all(|w| w[0].edge_count() <= w[1].edge_count()));
        let single = simulate_projective(&exp_gx(), &[7.0], 1e-3, 3).unwrap();
        assert_eq!(single[0], simulate_graph(&exp_gx(), &SimConfig::new(7.0, 3)).unwrap());
        assert!(simulate_projective(&exp_gx(), &[5.0, 4.0], 1e-3, 3).is_err());
    }

    #[test]
    fn component_tags() {
        let gx = Graphex::new(0.2, StarSpec::Zero, GraphonSpec::Zero).unwrap();
        let g = simulate_graph(&gx, &SimConfig::new(10.0, 1)).unwrap();
        assert!(g.edge_count() > 0);
        assert_eq!(g.count_component(Component::I), g.edge_count());
    }

    #[test]
    fn triangle_pairs_enumerate_in_order() {
        let mut t = 0;
        for j in 1..200u128 {
            for i in 0..j {
                assert_eq!(triangle_pair(t), (i, j));
                t += 1;
            }
        }
        let big = 30_000_000_000u128;
        let t = big * (big - 1) / 2 + 17;
        assert_eq!(triangle_pair(t), (17, big));
    }

    #[test]
    fn proposals_keep_each_index_at_rate_p() {
        let mut rng = RngHandle::new(4);
        assert_eq!(proposals(5, 1.0, &mut rng), vec![0, 1, 2, 3, 4]);
        let (n, p, reps) = (1000u128, 0.03, 400);
        let mut hits = vec![0u32; n as usize];
        for _ in 0..reps {
            let kept = proposals(n, p, &mut rng);
            assert!(kept.windows(2).all(|w| w[0] < w[1]));
            for t in kept {
                hits[t as usize] += 1;
            }
        }
        let total: u32 = hits.iter().sum();
        let mean = n as f64 * p * reps as f64;
        assert!((total as f64 - mean).abs() < 4.0 * mean.sqrt(), "{total} vs {mean}");
        let head: u32 = hits[..10].iter().sum();
        let tail: u32 = hits[n as usize - 10..].iter().sum();
        let expect = 10.0 * p * reps as f64;
        assert!((head as f64 - expect).abs() < 4.0 * expect.sqrt());
        assert!((tail as f64 - expect).abs() < 4.0 * expect.sqrt());
    }

    /// Mean of `W` edges minus their conditional mean given the latent points.
    fn conditional_excess(gx: &Graphex, s: f64, reps: u64, pair_sum: impl Fn(&[f64]) -> f64) -> (f64, f64) {
        let (mut excess, mut var) = (0.0, 0.0);
        for seed in 0..reps {
            let sim = simulate(gx, &SimConfig { keep_latent: true, ..SimConfig::new(s, seed) }).unwrap();
            let xs: Vec<f64> = sim.latent.unwrap().iter().map(|p| p.vartheta).collect();
            let mean = pair_sum(&xs);
            excess += sim.graph.count_component(Component::W) as f64 - mean;
            var += mean;
        }
        // Bernoulli variances are at most their means.
        (excess / reps as f64, (var.sqrt()) / reps as f64)
    }

    #[test]
    fn block_thinning_matches_conditional_pair_sums() {
        for w in [GraphonSpec::exp_product(), GraphonSpec::builtin("inverse-power", &[2.5]).unwrap()] {
            let GraphonSpec::Builtin(family) = w else { unreachable!() };
            let gx = Graphex::graphon_only(w);
            let (mean, se) = conditional_excess(&gx, 5.0, 300, |xs| {
                let f: Vec<f64> = xs.iter().map(|&x| family.factor(x)).collect();
                let sum: f64 = f.iter().sum();
                let sq: f64 = f.iter().map(|v| v * v).sum();
                0.5 * (sum * sum - sq)
            });
            assert!(mean.abs() < 4.0 * se, "{}: excess {mean} vs se {se}", family.name());
        }
        let px = PixelGraphon::new(3, 0.7, vec![0.3, 0.5, 0.1, 0.5, 0.0, 0.9, 0.1, 0.9, 0.6]).unwrap();
        let w = GraphonSpec::Pixel(px);
        let gx = Graphex::graphon_only(w.clone());
        let (mean, se) = conditional_excess(&gx, 4.0, 300, |xs| {
            let mut sum = 0.0;
            for i in 0..xs.len() {
                for j in i + 1..xs.len() {
                    sum += w.eval(xs[i], xs[j]);
                }
            }
            sum
        });
        assert!(mean.abs() < 4.0 * se, "pixel: excess {mean} vs se {se}");
    }

    #[test]
    fn heavy_tails_cost_no_more_than_their_edges() {
        // About 6.75 million latent points, none of them stored.
        let gx = Graphex::graphon_only(GraphonSpec::builtin("inverse-power", &[2.0]).unwrap());
        let g = simulate_graph(&gx, &SimConfig::new(15.0, 1)).unwrap();
        assert!(g.edge_count() > 50);
    }

    #[test]
    fn binary_pixel_connects_all_allowed_pairs() {
        let px = PixelGraphon::new(1, 1.0, vec![1.0]).unwrap();
        let gx = Graphex::graphon_only(GraphonSpec::Pixel(px));
        let sim = simulate(&gx, &SimConfig { keep_latent: true, ..SimConfig::new(3.0, 8) }).unwrap();
        let m = sim.latent.unwrap().len();
        assert_eq!(sim.graph.edge_count(), m * m.saturating_sub(1) / 2);
    }
}
