//! TOML model files.
//!
//! ```toml
//! I = 0.1
//! epsilon = 1e-3
//! seed = 7
//!
//! [S]
//! family = "exp"
//! params = [0.5, 1.0]
//!
//! [W]
//! family = "inverse-power"
//! params = [2.0, 2.0]
//! ```
//!
//! `W` takes either `family`/`params` or `pixel = "<file>"`, a pixel CSV
//! resolved against the model file's directory. A missing `S` or `W`, or
//! `family = "zero"`, is the zero function. Unknown keys are rejected.

use std::path::{Path, PathBuf};

use graphex_core::{Graphex, GraphonSpec, StarSpec};
use serde::Deserialize;

use crate::io::{parse_pixel_csv, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Syntax(#[from] toml::de::Error),
    #[error("{0}")]
    Model(#[from] graphex_core::Error),
    #[error("W: give exactly one of `family` and `pixel`")]
    GraphonSource,
    #[error("W: `params` cannot be combined with `pixel`")]
    PixelParams,
    #[error("pixel file {}: {source}", path.display())]
    Pixel { path: PathBuf, source: ParseError },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    #[serde(rename = "I", default)]
    isolated: f64,
    #[serde(rename = "S")]
    star: Option<RawStar>,
    #[serde(rename = "W")]
    graphon: Option<RawGraphon>,
    epsilon: Option<f64>,
    seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStar {
    family: String,
    #[serde(default)]
    params: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraphon {
    family: Option<String>,
    params: Option<Vec<f64>>,
    pixel: Option<PathBuf>,
}

/// A parsed model file. `epsilon` and `seed` are defaults that command-line
/// flags override.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelConfig {
    pub graphex: Graphex,
    pub epsilon: Option<f64>,
    pub seed: Option<u64>,
}

impl ModelConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read { path: path.into(), source })?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    /// `base` resolves relative pixel paths.
    pub fn parse(text: &str, base: &Path) -> Result<Self, ConfigError> {
        let raw: RawModel = toml::from_str(text)?;
        let star = match raw.star {
            None => StarSpec::Zero,
            Some(s) if s.family == "zero" && s.params.is_empty() => StarSpec::Zero,
            Some(s) => StarSpec::builtin(&s.family, &s.params)?,
        };
        let graphon = match raw.graphon {
            None => GraphonSpec::Zero,
            Some(w) => graphon_spec(w, base)?,
        };
        let graphex = Graphex::new(raw.isolated, star, graphon)?;
        if !graphex.is_nontrivial()? {
            return Err(graphex_core::Error::TrivialGraphex.into());
        }
        Ok(Self { graphex, epsilon: raw.epsilon, seed: raw.seed })
    }
}

fn graphon_spec(w: RawGraphon, base: &Path) -> Result<GraphonSpec, ConfigError> {
    match (w.family, w.pixel) {
        (Some(family), None) => {
            let params = w.params.unwrap_or_default();
            if family == "zero" && params.is_empty() {
                Ok(GraphonSpec::Zero)
            } else {
                Ok(GraphonSpec::builtin(&family, &params)?)
            }
        }
        (None, Some(file)) => {
            if w.params.is_some() {
                return Err(ConfigError::PixelParams);
            }
            let path = base.join(file);
            let text = std::fs::read_to_string(&path)
                .map_err(|source| ConfigError::Read { path: path.clone(), source })?;
            let pixel = parse_pixel_csv(&text).map_err(|source| ConfigError::Pixel { path, source })?;
            Ok(GraphonSpec::Pixel(pixel))
        }
        _ => Err(ConfigError::GraphonSource),
    }
}
