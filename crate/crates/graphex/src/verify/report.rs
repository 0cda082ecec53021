use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestKind {
    ChiSquare,
    Ks,
    MeanSe,
    /// Empirical frequency against an upper bound with binomial slack.
    Bound,
    /// Deterministic identity; `observed` counts violations.
    Exact,
    /// Relative error against a tolerance.
    Tolerance,
    /// Statistic at the largest size against the one at the smallest.
    Trend,
}

impl TestKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TestKind::ChiSquare => "chi-square",
            TestKind::Ks => "ks",
            TestKind::MeanSe => "mean-se",
            TestKind::Bound => "bound",
            TestKind::Exact => "exact",
            TestKind::Tolerance => "tolerance",
            TestKind::Trend => "trend",
        }
    }
}

impl fmt::Display for TestKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one check. `pass` is `observed <= threshold`; for mean checks
/// `observed` is `|z|`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TestReport {
    pub suite: String,
    pub test: String,
    pub statistic: String,
    pub kind: TestKind,
    pub observed: f64,
    pub threshold: f64,
    pub p_value: Option<f64>,
    pub pass: bool,
    /// Whether the check decides the suite outcome; diagnostics do not.
    pub gating: bool,
    pub replicates: usize,
    /// Master seeds of the ensembles involved.
    pub seeds: Vec<u64>,
}

impl TestReport {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        suite: &str,
        test: &str,
        statistic: &str,
        kind: TestKind,
        observed: f64,
        threshold: f64,
        p_value: Option<f64>,
        replicates: usize,
        seeds: Vec<u64>,
    ) -> Self {
        Self {
            suite: suite.into(),
            test: test.into(),
            statistic: statistic.into(),
            kind,
            observed,
            threshold,
            p_value,
            pass: observed <= threshold,
            gating: true,
            replicates,
            seeds,
        }
    }

    pub fn diagnostic(mut self) -> Self {
        self.gating = false;
        self
    }

    /// Seeds joined by `:` for single-column output.
    pub fn seed_field(&self) -> String {
        self.seeds.iter().map(u64::to_string).collect::<Vec<_>>().join(":")
    }
}

/// Every gating check passes.
pub fn all_pass(reports: &[TestReport]) -> bool {
    reports.iter().filter(|r| r.gating).all(|r| r.pass)
}

/// Bonferroni outcome of the gating checks: every p-value is at least
/// `alpha / m` and every check without a p-value passes.
pub fn bonferroni_pass(reports: &[TestReport], alpha: f64) -> bool {
    let gating: Vec<&TestReport> = reports.iter().filter(|r| r.gating).collect();
    let m = gating.iter().filter(|r| r.p_value.is_some()).count().max(1) as f64;
    gating.iter().all(|r| match r.p_value {
        Some(p) => p >= alpha / m,
        None => r.pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(p: Option<f64>, pass: bool) -> TestReport {
        let (observed, threshold) = if pass { (0.0, 1.0) } else { (2.0, 1.0) };
        TestReport::new("s", "t", "e", TestKind::ChiSquare, observed, threshold, p, 10, vec![1, 2])
    }

    #[test]
    fn bonferroni_relaxes_per_test_level() {
        let family = vec![report(Some(0.006), false), report(Some(0.5), true)];
        assert!(bonferroni_pass(&family, 0.01));
        assert!(!bonferroni_pass(&[report(Some(0.004), false), report(Some(0.001), false)], 0.01));
        assert!(!bonferroni_pass(&[report(None, false)], 0.01));
    }

    #[test]
    fn seed_field_format() {
        assert_eq!(report(None, true).seed_field(), "1:2");
    }
}
