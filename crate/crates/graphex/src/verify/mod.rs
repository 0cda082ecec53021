//! Runnable statistical checks of graphex-process properties.
//!
//! Ensembles replicate a random draw under child streams of a master seed,
//! [`hypothesis`] holds the tests, and [`suites`] bundles them into named
//! batteries that return [`TestReport`]s.

pub mod ensemble;
pub mod hypothesis;
pub mod report;
pub mod suites;

pub use ensemble::{ensemble, prefix_ensemble, stat_ensemble, Generator, PrefixSource};
pub use graphex_core::stats::{stats, StatVector};
pub use report::{all_pass, bonferroni_pass, TestKind, TestReport};
pub use suites::{run_suite, Suite, SuiteConfig};

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Core(#[from] graphex_core::Error),
    #[error("pooled counts do not fill two bins with at least 5 expected each")]
    DegenerateBins,
    #[error("ensemble is empty")]
    EmptyEnsemble,
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("{0}")]
    InvalidInput(String),
}

/// Integer statistic of a [`StatVector`] used by two-sample tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Statistic {
    Edges,
    Vertices,
    Triangles,
    MaxDegree,
}

impl Statistic {
    pub fn name(self) -> &'static str {
        match self {
            Statistic::Edges => "edges",
            Statistic::Vertices => "vertices",
            Statistic::Triangles => "triangles",
            Statistic::MaxDegree => "max-degree",
        }
    }

    pub fn of(self, s: &StatVector) -> usize {
        match self {
            Statistic::Edges => s.e,
            Statistic::Vertices => s.v,
            Statistic::Triangles => s.triangles,
            Statistic::MaxDegree => s.max_degree,
        }
    }
}

impl std::str::FromStr for Statistic {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, VerifyError> {
        match s {
            "edges" | "e" => Ok(Statistic::Edges),
            "vertices" | "v" => Ok(Statistic::Vertices),
            "triangles" => Ok(Statistic::Triangles),
            "max-degree" => Ok(Statistic::MaxDegree),
            _ => Err(VerifyError::InvalidInput(format!("unknown statistic `{s}`"))),
        }
    }
}

/// Two-sample chi-square test of one statistic between two ensembles.
pub fn two_sample_test(
    a: &[StatVector],
    b: &[StatVector],
    statistic: Statistic,
    alpha: f64,
) -> Result<hypothesis::ChiSquareOutcome, VerifyError> {
    let xa: Vec<usize> = a.iter().map(|s| statistic.of(s)).collect();
    let xb: Vec<usize> = b.iter().map(|s| statistic.of(s)).collect();
    hypothesis::chi_square_two_sample(&xa, &xb, alpha)
}
