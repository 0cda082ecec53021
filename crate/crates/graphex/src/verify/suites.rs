//! Named verification batteries.

use std::str::FromStr;

use graphex_core::estimate::{dilated_empirical_graphon, empirical_graphon};
use graphex_core::graph::Component;
use graphex_core::graphon::{GraphonFamily, StarSpec};
use graphex_core::rng::derive_seed;
use graphex_core::sample::{coupled_sample, p_sample, replacement_bound};
use graphex_core::sequence::{dilate_graphex, dilate_measure, graph_sequence, jump_times};
use graphex_core::simulate::{expected_edge_counts, simulate_graph, simulate_projective, SimConfig};
use graphex_core::{Graphex, GraphonSpec, LabeledGraph, PixelGraphon, RngHandle, UnlabeledGraph};

use super::ensemble::{ensemble, pixel_graphex, prefix_ensemble, stat_ensemble, Generator, PrefixSource};
use super::hypothesis::{chi_square_poisson, chi_square_two_sample, frequency_threshold, mean_check, ChiSquareOutcome};
use super::report::{TestKind, TestReport};
use super::{two_sample_test, Statistic, VerifyError};

pub const DEFAULT_ALPHA: f64 = 0.01;
/// Allowed distance of a mean or frequency from its reference, in standard errors.
pub const SE_SLACK: f64 = 4.0;
/// Prefix length for graph-sequence statistics.
pub const PREFIX_LENGTH: usize = 5;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Replaces each suite's default graphex where the suite uses one.
    pub model: Option<Graphex>,
    /// Replaces each suite's default replicate count.
    pub replicates: Option<usize>,
    pub seed: u64,
    pub alpha: f64,
    pub epsilon: f64,
    /// Graph for the coupling checks instead of a simulated 50-vertex graph.
    pub graph: Option<UnlabeledGraph>,
    /// `r/s` ratios for the coupling checks.
    pub ratios: Option<Vec<f64>>,
}

impl SuiteConfig {
    pub fn new(seed: u64) -> Self {
        Self {
            model: None,
            replicates: None,
            seed,
            alpha: DEFAULT_ALPHA,
            epsilon: graphex_core::simulate::DEFAULT_EPSILON,
            graph: None,
            ratios: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Projectivity,
    SamplingInvariance,
    RelabelingInvariance,
    CouplingBounds,
    ComponentCounts,
    EstimatorConsistency,
    DilationInvariance,
    SequenceConsistency,
    NormConsistency,
    OracleEquivalence,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Projectivity,
        Suite::SamplingInvariance,
        Suite::RelabelingInvariance,
        Suite::CouplingBounds,
        Suite::ComponentCounts,
        Suite::EstimatorConsistency,
        Suite::DilationInvariance,
        Suite::SequenceConsistency,
        Suite::NormConsistency,
        Suite::OracleEquivalence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Projectivity => "projectivity",
            Suite::SamplingInvariance => "sampling-invariance",
            Suite::RelabelingInvariance => "relabeling-invariance",
            Suite::CouplingBounds => "coupling-bounds",
            Suite::ComponentCounts => "component-counts",
            Suite::EstimatorConsistency => "estimator-consistency",
            Suite::DilationInvariance => "dilation-invariance",
            Suite::SequenceConsistency => "sequence-consistency",
            Suite::NormConsistency => "norm-consistency",
            Suite::OracleEquivalence => "oracle-equivalence",
        }
    }
}

impl FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, VerifyError> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| VerifyError::UnknownSuite(s.into()))
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<TestReport>, VerifyError> {
    let index = Suite::ALL.iter().position(|&s| s == suite).expect("listed suite") as u64;
    let ctx = Ctx { suite: suite.name(), index, cfg };
    match suite {
        Suite::Projectivity => projectivity(&ctx),
        Suite::SamplingInvariance => sampling_invariance(&ctx),
        Suite::RelabelingInvariance => relabeling_invariance(&ctx),
        Suite::CouplingBounds => coupling_bounds(&ctx),
        Suite::ComponentCounts => component_counts(&ctx),
        Suite::EstimatorConsistency => estimator_consistency(&ctx),
        Suite::DilationInvariance => dilation_invariance(&ctx),
        Suite::SequenceConsistency => sequence_consistency(&ctx),
        Suite::NormConsistency => norm_consistency(&ctx),
        Suite::OracleEquivalence => oracle_equivalence(&ctx),
    }
}

pub fn exp_product_graphex() -> Graphex {
    Graphex::graphon_only(GraphonSpec::exp_product())
}

/// `S(x) = exp(-(x + 1)) / 2`.
pub fn half_exp_star() -> StarSpec {
    StarSpec::Exp { amplitude: 0.5, shift: 1.0, scale: 1.0 }
}

/// `(0.1, exp(-(x + 1)) / 2, (x + 1)^-2 (y + 1)^-2)`.
pub fn three_part_graphex() -> Graphex {
    let w = GraphonSpec::Builtin(GraphonFamily::InversePower { exponent: 2.0, scale: 1.0 });
    Graphex::new(0.1, half_exp_star(), w).expect("valid parameters")
}

/// `(0.1, exp(-(x + 1)) / 2, exp(-x - y))`.
pub fn mixed_exp_graphex() -> Graphex {
    Graphex::new(0.1, half_exp_star(), GraphonSpec::exp_product()).expect("valid parameters")
}

struct Ctx<'a> {
    suite: &'static str,
    index: u64,
    cfg: &'a SuiteConfig,
}

impl Ctx<'_> {
    /// Seed of ensemble `tag`; suites draw from disjoint streams.
    fn seed(&self, tag: u64) -> u64 {
        derive_seed(derive_seed(self.cfg.seed, self.index), tag)
    }

    fn reps(&self, default: usize) -> usize {
        self.cfg.replicates.unwrap_or(default)
    }

    fn model_or(&self, default: Graphex) -> Graphex {
        self.cfg.model.clone().unwrap_or(default)
    }

    fn chi(&self, test: &str, statistic: &str, out: &ChiSquareOutcome, reps: usize, seeds: Vec<u64>) -> TestReport {
        TestReport::new(
            self.suite,
            test,
            statistic,
            TestKind::ChiSquare,
            out.statistic,
            out.critical,
            Some(out.p_value),
            reps,
            seeds,
        )
    }

    fn two_sample(&self, test: &str, a: &Generator, b: &Generator, stat: Statistic, reps: usize, tags: (u64, u64)) -> Result<TestReport, VerifyError> {
        let (sa, sb) = (self.seed(tags.0), self.seed(tags.1));
        let xa = stat_ensemble(a, reps, sa)?;
        let xb = stat_ensemble(b, reps, sb)?;
        let out = two_sample_test(&xa, &xb, stat, self.cfg.alpha)?;
        Ok(self.chi(test, stat.name(), &out, reps, vec![sa, sb]))
    }
}

fn projectivity(ctx: &Ctx) -> Result<Vec<TestReport>, VerifyError> {
    let count = ctx.reps(50);
    let seed = ctx.seed(0);
    let eps = ctx.cfg.epsilon;
    let violations: usize = ensemble(count, seed, |mut rng| {
        let gx = match &ctx.cfg.model {
            Some(m) => m.clone(),
            None => random_graphex(&mut rng)?,
        };
        let s_max = 4.0 + 8.0 * rng.uniform();
        let mut sizes = vec![s_max * rng.uniform(), s_max * rng.uniform(), s_max];
        sizes.sort_by(f64::total_cmp);
        let sim_seed = rng.child(0).seed();
        let out = simulate_projective(&gx, &sizes, eps, sim_seed)?;
        let direct = simulate_graph(&gx, &SimConfig::new(s_max, sim_seed).with_epsilon(eps))?;
        let mut bad = 0;
        for (k, &r) in sizes.iter().enumerate() {
            bad += usize::from(direct.restrict(r)? != out[k]);
            if k + 1 < sizes.len() {
                bad += usize::from(out[k + 1].restrict(r)? != out[k]);
            }
        }
        Ok(bad)
    })?
    .into_iter()
    .sum();
    Ok(vec![TestReport::new(
        ctx.suite,
        "restriction-nesting",
        "violations",
        TestKind::Exact,
        violations as f64,
        0.0,
        None,
        count,
        vec![seed],
    )])
}

/// A nontrivial graphex with random components and parameters.
pub fn random_graphex(rng: &mut RngHandle) -> Result<Graphex, VerifyError> {
    loop {
        let isolated = if rng.bernoulli(0.5) { 0.3 * rng.uniform() } else { 0.0 };
        let star = if rng.bernoulli(0.5) {
            StarSpec::Exp { amplitude: rng.uniform(), shift: 2.0 * rng.uniform(), scale: 0.5 + rng.uniform() }
        } else {
            StarSpec::Zero
        };
        let family = match rng.index(4) {
            0 => Some(GraphonFamily::ExpProduct { scale: 0.5 + 1.5 * rng.uniform() }),
            1 => Some(GraphonFamily::InversePower { exponent: 2.0 + 1.5 * rng.uniform(), scale: 0.5 + rng.uniform() }),
            2 => Some(GraphonFamily::CompactUniform { p: rng.uniform(), cutoff: 0.5 + 2.5 * rng.uniform() }),
            _ => None,
        };
        let graphon = match family {
            Some(f) => GraphonSpec::from_family(f)?,
            None => GraphonSpec::Zero,
        };
        let gx = Graphex::new(isolated, star, graphon)?;
        if gx.is_nontrivial()? {
            return Ok(gx);
        }
    }
}

fn component_counts(ctx: &Ctx) -> Result<Vec<TestReport>, VerifyError> {
    let reps = ctx.reps(2000);
    let eps = ctx.cfg.epsilon;
    let model = ctx.cfg.model.as_ref();
    let mut reports = Vec::new();

    let rate = model.map_or(0.1, Graphex::isolated);
    if rate > 0.0 {
        let s = 15.0;
        let gx = Graphex::new(rate, StarSpec::Zero, GraphonSpec::Zero)?;
        let seed = ctx.seed(1);
        let counts = component_ensemble(&gx, s, eps, Component::I, reps, seed)?;
        let out = chi_square_poisson(&counts, s * s * rate, ctx.cfg.alpha)?;
        reports.push(ctx.chi("isolated-poisson", "i-edges", &out, reps, vec![seed]));
    }

    let graphon = model.map_or_else(GraphonSpec::exp_product, |m| m.graphon().clone());
    if graphon != GraphonSpec::Zero {
        let gx = Graphex::graphon_only(graphon);
        reports.push(mean_report(ctx, "w-mean", Component::W, &gx, 10.0, reps, ctx.seed(2))?);
    }

    let star = model.map_or_else(half_exp_star, |m| *m.star());
    if star.l1_norm() > 0.0 {
        let gx = Graphex::new(0.0, star, GraphonSpec::Zero)?;
        reports.push(mean_report(ctx, "s-mean", Component::S, &gx, 15.0, reps, ctx.seed(3))?);
    }
    Ok(reports)
}

fn component_ensemble(gx: &Graphex, s: f64, eps: f64, c: Component, reps: usize, seed: u64) -> Result<Vec<u64>, VerifyError> {
    ensemble(reps, seed, |rng| {
        let g = simulate_graph(gx, &SimConfig::new(s, rng.seed()).with_epsilon(eps))?;
        Ok(g.count_component(c) as u64)
    })
}

fn mean_report(ctx: &Ctx, test: &str, c: Component, gx: &Graphex, s: f64, reps: usize, seed: u64) -> Result<TestReport, VerifyError> {
    let counts = component_ensemble(gx, s, ctx.cfg.epsilon, c, reps, seed)?;
    let expected = expected_edge_counts(gx, s)?;
    let reference = match c {
        Component::W => expected.w,
        Component::S => expected.s,
        Component::I => expected.i,
    };
    let xs: Vec<f64> = counts.iter().map(|&k| k as f64).collect();
    let m = mean_check(&xs, reference)?;
    let name = format!("{}-edges", c.as_str().to_lowercase());
    Ok(TestReport::new(ctx.suite, test, &name, TestKind::MeanSe, m.z.abs(), SE_SLACK, Some(m.p_value), reps, vec![seed]))
}

fn sampling_invariance(ctx: &Ctx) -> Result<Vec<TestReport>, VerifyError> {
    let graphex = ctx.model_or(exp_product_graphex());
    let (s, r, epsilon) = (30.0, 10.0, ctx.cfg.epsilon);
    let reps = ctx.reps(2000);
    let a = Generator::PSample { graphex: graphex.clone(), size: s, r, epsilon };
    let b = Generator::Simulate { graphex, size: r, epsilon };
    invariance_reports(ctx, "p-sample-vs-direct", &a, &b, reps)
}

fn relabeling_invariance(ctx: &Ctx) -> Result<Vec<TestReport>, VerifyError> {
    let graphex = ctx.model_or(exp_product_graphex());
    let (s, r, epsilon) = (30.0, 10.0, ctx.cfg.epsilon);
    let reps = ctx.reps(2000);
    let a = Generator::Relabel { graphex: graphex.clone(), size: s, r, epsilon };
    let b = Generator::Simulate { graphex, size: r, epsilon };
    invariance_reports(ctx, "relabel-vs-direct", &a, &b, reps)
}

/// Edge and vertex counts gate; triangle counts are reported alongside.
fn invariance_reports(ctx: &Ctx, test: &str, a: &Generator, b: &Generator, reps: usize) -> Result<Vec<TestReport>, VerifyError> {
    let (sa, sb) = (ctx.seed(1), ctx.seed(2));
    let xa = stat_ensemble(a, reps, sa)?;
    let xb = stat_ensemble(b, reps, sb)?;
    let mut reports = Vec::new();
    for stat in [Statistic::Edges, Statistic::Vertices, Statistic::Triangles] {
        let report = match two_sample_test(&xa, &xb, stat, ctx.cfg.alpha) {
            Ok(out) => ctx.chi(test, stat.name(), &out, reps, vec![sa, sb]),
            // Too few nonzero values to form two bins.
            Err(VerifyError::DegenerateBins) if stat == Statistic::Triangles => continue,
            Err(e) => return Err(e),
        };
        reports.push(if stat == Statistic::Triangles { report.diagnostic() } else { report });
    }
    Ok(reports)
}

/// First restriction of a simulated graph with exactly `target` vertices,
/// scanning child seeds until one exists.
pub fn graph_with_vertices(gx: &Graphex, target: usize, size: f64, seed: u64) -> Result<UnlabeledGraph, VerifyError> {
    let root = RngHandle::new(seed);
    for attempt in 0..1000 {
        let g = simulate_graph(gx, &SimConfig::new(size, root.child(attempt).seed()))?;
        for tau in jump_times(&g) {
            let h = g.restrict(tau)?.unlabeled_by_label();
            if h.vertex_count() == target {
                return Ok(h.canonical());
            }
            if h.vertex_count() > target {
                break;
            }
        }
    }
    Err(VerifyError::InvalidInput(format!("no restriction with {target} vertices in 1000 draws")))
}

fn coupling_bounds(ctx: &Ctx) -> Result<Vec<TestReport>, VerifyError> {
    let draws = ctx.reps(20_000);
    let gx = ctx.model_or(exp_product_graphex());
    let mut cases: Vec<(String, UnlabeledGraph, Vec<f64>)> = Vec::new();
    match &ctx.cfg.graph {
        Some(g) => cases.push(("given".into(), g.clone(), ctx.cfg.ratios.clone().unwrap_or_else(|| vec![0.5]))),
        None => {
            let ratios = ctx.cfg.ratios.clone().unwrap_or_else(|| vec![0.05, 0.1, 0.2]);
            cases.push(("v50".into(), graph_with_vertices(&gx, 50, 20.0, ctx.seed(0))?, ratios));
            let g30 = simulate_graph(&gx, &SimConfig::new(30.0, ctx.seed(1)).with_epsilon(ctx.cfg.epsilon))?;
            cases.push(("s30".into(), g30.forget_labels(), vec![0.1]));
        }
    }
    let mut reports = Vec::new();
    let mut tag = 10;
    for (label, g, ratios) in &cases {
        for &q in ratios {
            tag += 1;
            let seed = ctx.seed(tag);
            let flags = ensemble(draws, seed, |mut rng| {
                let out = coupled_sample(g, q, 1.0, &mut rng)?;
                Ok((out.agree_xh, out.agree_hm))
            })?;
            let n = flags.len() as f64;
            let hm = flags.iter().filter(|f| !f.1).count() as f64 / n;
            let xh = flags.iter().filter(|f| !f.0).count() as f64 / n;
            let bound_xh = replacement_bound(g.edge_count(), g.vertex_count(), q, 1.0);
            let t = format!("{label} r/s={q}");
            reports.push(TestReport::new(
                ctx.suite,
                &format!("{t} H!=M"),
                "disagreement",
                TestKind::Bound,
                hm,
                frequency_threshold(q, draws, SE_SLACK),
                None,
                draws,
                vec![seed],
            ));
            reports.push(TestReport::new(
                ctx.suite,
                &format!("{t} X!=H"),
                "disagreement",
                TestKind::Bound,
                xh,
                frequency_threshold(bound_xh, draws, SE_SLACK),
                None,
                draws,
                vec![seed],
            ));
        }
    }
    Ok(reports)
}

/// One realization observed at nested sizes.
fn nested_observations(gx: &Graphex, sizes: &[f64], seed: u64, epsilon: f64) -> Result<Vec<UnlabeledGraph>, VerifyError> {
    Ok(simulate_projective(gx, sizes, epsilon, seed)?.iter().map(LabeledGraph::unlabeled_by_label).collect())
}

pub const CONSISTENCY_SIZES: [f64; 3] = [10.0, 20.0, 40.0];

fn estimator_consistency(ctx: &Ctx) -> Result<Vec<TestReport>, VerifyError> {
    let gx = ctx.model_or(exp_product_graphex());
    let reps = ctx.reps(2000);
    let r = 5.0;
    let epsilon = ctx.cfg.epsilon;
    let observed = nested_observations(&gx, &CONSISTENCY_SIZES, ctx.seed(0), epsilon)?;
    let sb = ctx.seed(1);
    let truth = stat_ensemble(&Generator::Simulate { graphex: gx, size: r, epsilon }, reps, sb)?;
    let mut reports = Vec::new();
    let mut statistics = Vec::new();
    for (k, (g, &s)) in observed.iter().zip(&CONSISTENCY_SIZES).enumerate() {
        let pixel = dilated_empirical_graphon(g, s)?;
        let sa = ctx.seed(2 + k as u64);
        let est = stat_ensemble(&Generator::Pixel { pixel, r }, reps, sa)?;
        let out = two_sample_test(&est, &truth, Statistic::Edges, ctx.cfg.alpha)?;
        statistics.push(out.statistic);
        let report = ctx.chi(&format!("s={s} r={r}"), "edges", &out, reps, vec![sa, sb]);
        reports.push(if k + 1 == CONSISTENCY_SIZES.len() { report } else { report.diagnostic() });
    }
    reports.push(trend_report(ctx, &statistics, reps));
    reports.push(full_triple_recovery(ctx, reps)?);
    Ok(reports)
}

/// Diagnostic: the dilated empirical graphon of one three-part `G_40`
/// against the three-part graphex itself, on joint `(e, v)` at `r = 3`.
fn full_triple_recovery(ctx: &Ctx, reps: usize) -> Result<TestReport, VerifyError> {
    let gx = three_part_graphex();
    let (s, r) = (40.0, 3.0);
    let epsilon = ctx.cfg.epsilon;
    let g = simulate_graph(&gx, &SimConfig::new(s, ctx.seed(5)).with_epsilon(epsilon))?.unlabeled_by_label();
    let pixel = dilated_empirical_graphon(&g, s)?;
    let (sa, sb) = (ctx.seed(6), ctx.seed(7));
    let joint = |v: Vec<graphex_core::StatVector>| -> Vec<(usize, usize)> { v.iter().map(|x| (x.e, x.v)).collect() };
    let est = joint(stat_ensemble(&Generator::Pixel { pixel, r }, reps, sa)?);
    let truth = joint(stat_ensemble(&Generator::Simulate { graphex: gx, size: r, epsilon }, reps, sb)?);
    let out = chi_square_two_sample(&est, &truth, ctx.cfg.alpha)?;
    Ok(ctx.chi(&format!("three-part s={s} r={r}"), "edges-vertices", &out, reps, vec![sa, sb]).diagnostic())
}

/// Statistic at the largest size must not exceed the one at the smallest.
fn trend_report(ctx: &Ctx, statistics: &[f64], reps: usize) -> TestReport {
    let (first, last) = (statistics[0], statistics[statistics.len() - 1]);
    TestReport::new(ctx.suite, "trend s=40 vs s=10", "chi-square", TestKind::Trend, last, first, None, reps, vec![ctx.cfg.seed])
}

fn dilation_invariance(ctx: &Ctx) -> Result<Vec<TestReport>, VerifyError> {
    let inputs = 100;
    let exact_seed = ctx.seed(0);
    let violations: usize = ensemble(inputs, exact_seed, |mut rng| {
        let gx = random_graphex(&mut rng)?;
        let size = 2.0 + 6.0 * rng.uniform();
        let g = simulate_graph(&gx, &SimConfig::new(size, rng.child(0).seed()))?;
        let base = graph_sequence(&g);
        let mut bad = 0;
        for c in [0.5, 2.0, 7.0] {
            let d = graph_sequence(&dilate_measure(&g, c)?);
            bad += usize::from(d.graphs() != base.graphs() || d.steps() != base.steps());
            let scaled: Vec<f64> = base.jump_times().unwrap_or(&[]).iter().map(|t| c * t).collect();
            bad += usize::from(d.jump_times().unwrap_or(&[]) != scaled.as_slice());
        }
        Ok(bad)
    })?
    .into_iter()
    .sum();
    let mut reports = vec![TestReport::new(
        ctx.suite,
        "sequence-equality",
        "violations",
        TestKind::Exact,
        violations as f64,
        0.0,
        None,
        inputs,
        vec![exact_seed],
    )];

    let gx = ctx.model_or(mixed_exp_graphex());
    let dilated = dilate_graphex(&gx, 2.0)?;
    let reps = ctx.reps(2000);
    let epsilon = ctx.cfg.epsilon;
    let (sa, sb) = (ctx.seed(1), ctx.seed(2));
    let a = prefix_ensemble(&PrefixSource::Graphex { graphex: gx, epsilon }, PREFIX_LENGTH, reps, sa)?;
    let b = prefix_ensemble(&PrefixSource::Graphex { graphex: dilated, epsilon }, PREFIX_LENGTH, reps, sb)?;
    let out = chi_square_two_sample(&a, &b, ctx.cfg.alpha)?;
    reports.push(ctx.chi("prefix c=2", "prefix-5", &out, reps, vec![sa, sb]));
    Ok(reports)
}

fn sequence_consistency(ctx: &Ctx) -> Result<Vec<TestReport>, VerifyError> {
    let gx = ctx.model_or(exp_product_graphex());
    let reps = ctx.reps(2000);
    let epsilon = ctx.cfg.epsilon;
    let observed = nested_observations(&gx, &CONSISTENCY_SIZES, ctx.seed(0), epsilon)?;
    let sb = ctx.seed(1);
    let truth = prefix_ensemble(&PrefixSource::Graphex { graphex: gx, epsilon }, PREFIX_LENGTH, reps, sb)?;
    let mut reports = Vec::new();
    let mut statistics = Vec::new();
    for (k, (g, &s)) in observed.iter().zip(&CONSISTENCY_SIZES).enumerate() {
        let pixel = empirical_graphon(g)?;
        let sa = ctx.seed(2 + k as u64);
        let est = prefix_ensemble(&PrefixSource::Pixel(pixel), PREFIX_LENGTH, reps, sa)?;
        let out = chi_square_two_sample(&est, &truth, ctx.cfg.alpha)?;
        statistics.push(out.statistic);
        let report = ctx.chi(&format!("s={s} unknown size"), "prefix-5", &out, reps, vec![sa, sb]);
        reports.push(if k + 1 == CONSISTENCY_SIZES.len() { report } else { report.diagnostic() });
    }
    reports.push(trend_report(ctx, &statistics, reps).diagnostic());
    Ok(reports)
}

fn norm_consistency(ctx: &Ctx) -> Result<Vec<TestReport>, VerifyError> {
    let gx = Graphex::graphon_only(ctx.model_or(exp_product_graphex()).graphon().clone());
    let norm = gx.graphon().l1_norm()?;
    let reps = ctx.reps(200);
    let s = 40.0;
    let seed = ctx.seed(0);
    let ratios = ensemble(reps, seed, |rng| {
        let g = simulate_graph(&gx, &SimConfig::new(s, rng.seed()).with_epsilon(ctx.cfg.epsilon))?;
        Ok(2.0 * g.edge_count() as f64 / (s * s))
    })?;
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    Ok(vec![TestReport::new(
        ctx.suite,
        "2e/s^2 at s=40",
        "relative-error",
        TestKind::Tolerance,
        (mean - norm).abs() / norm,
        0.1,
        None,
        reps,
        vec![seed],
    )])
}

fn oracle_equivalence(ctx: &Ctx) -> Result<Vec<TestReport>, VerifyError> {
    let reps = ctx.reps(2000);
    let base = simulate_graph(&exp_product_graphex(), &SimConfig::new(10.0, ctx.seed(0)))?;
    let pixel = dilated_empirical_graphon(&base.unlabeled_by_label(), 10.0)?;
    let r = 5.0;
    let a = Generator::Pixel { pixel: pixel.clone(), r };
    let b = Generator::Simulate { graphex: pixel_graphex(&pixel), size: r, epsilon: ctx.cfg.epsilon };
    let mut reports = vec![
        ctx.two_sample("pixel-shortcut-vs-simulate", &a, &b, Statistic::Edges, reps, (1, 2))?,
        ctx.two_sample("pixel-shortcut-vs-simulate", &a, &b, Statistic::Vertices, reps, (1, 2))?,
    ];

    // Single-edge pixel, unit cells, r = 1: slots per row are independent
    // Poisson(1), and an edge exists iff both rows are hit.
    let single = PixelGraphon::new(2, 1.0, vec![0.0, 1.0, 1.0, 0.0])?;
    let draws = 10 * reps;
    let seed = ctx.seed(3);
    let hits = ensemble(draws, seed, |mut rng| {
        Ok(f64::from(u8::from(!graphex_core::estimate::generate_from_pixel(&single, 1.0, &mut rng)?.is_empty())))
    })?;
    let p = (1.0 - (-1.0f64).exp()).powi(2);
    let m = mean_check(&hits, p)?;
    reports.push(TestReport::new(
        ctx.suite,
        "single-edge pixel P(edge)",
        "frequency",
        TestKind::MeanSe,
        m.z.abs(),
        SE_SLACK,
        Some(m.p_value),
        draws,
        vec![seed],
    ));

    // p-sampling composes: p then q against pq, on the observed graph.
    let g = base.forget_labels();
    let (p1, p2) = (0.6, 0.5);
    let (sa, sb) = (ctx.seed(4), ctx.seed(5));
    let twice = ensemble(reps, sa, |mut rng| Ok(p_sample(&p_sample(&g, p1, &mut rng)?, p2, &mut rng)?.edge_count()))?;
    let once = ensemble(reps, sb, |mut rng| Ok(p_sample(&g, p1 * p2, &mut rng)?.edge_count()))?;
    let out = chi_square_two_sample(&twice, &once, ctx.cfg.alpha)?;
    reports.push(ctx.chi("p-sample composition", "edges", &out, reps, vec![sa, sb]));
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("nope".parse::<Suite>(), Err(VerifyError::UnknownSuite(_))));
    }

    #[test]
    fn fixed_vertex_count() {
        let g = graph_with_vertices(&exp_product_graphex(), 12, 10.0, 3).unwrap();
        assert_eq!(g.vertex_count(), 12);
        assert_eq!(g, graph_with_vertices(&exp_product_graphex(), 12, 10.0, 3).unwrap());
    }

    #[test]
    fn projectivity_passes_small() {
        let mut cfg = SuiteConfig::new(5);
        cfg.replicates = Some(5);
        let reports = run_suite(Suite::Projectivity, &cfg).unwrap();
        assert!(reports.iter().all(|r| r.pass));
    }
}
