//! Simulation, subsampling and estimation for sparse exchangeable random
//! graphs generated by a graphex `(I, S, W)`.
//!
//! The crate is `no_std` and only needs `alloc`. Every random operation takes
//! an explicit [`RngHandle`], so results are reproducible from a 64-bit seed.
//! All transcendental functions go through `libm`, which keeps outputs
//! bit-identical across platforms.
//!
//! Module map:
//!
//! - [`graphon`]: graphon and star-intensity families, pixel graphons, the
//!   [`Graphex`] triple.
//! - [`graph`]: labeled graphs (adjacency measures) and unlabeled graphs with
//!   a canonical vertex order.
//! - [`simulate`]: size-`s` graphex processes with a truncated latent Poisson
//!   process.
//! - [`sample`]: p-sampling, the with/without-replacement and Poisson/binomial
//!   couplings, random labelings.
//! - [`estimate`]: empirical and dilated empirical graphons and generation
//!   from pixel graphons.
//! - [`sequence`]: jump times, graph sequences and dilations.
//! - [`stats`]: exact graph statistics used as distributional probes.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod canon;
mod error;
pub mod estimate;
pub mod graph;
pub mod graphon;
pub mod rng;
pub mod sample;
pub mod sequence;
pub mod simulate;
pub mod stats;

pub use error::{Error, Result};
pub use graph::{Component, LabeledEdge, LabeledGraph, UnlabeledGraph};
pub use graphon::{GraphonFamily, GraphonSpec, Graphex, PixelGraphon, StarSpec};
pub use rng::RngHandle;
pub use stats::StatVector;
