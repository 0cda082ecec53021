//! Replicated draws in parallel. Replicate `i` always uses child stream `i`
//! of the master seed, so results do not depend on scheduling.

use graphex_core::estimate::{generate_from_pixel, generate_from_pixel_labeled};
use graphex_core::sample::{p_sample, random_label};
use graphex_core::sequence::{graph_sequence, prefix_stats, PrefixStats};
use graphex_core::simulate::{expected_edge_counts, simulate_graph, SimConfig};
use graphex_core::stats::{stats, StatVector};
use graphex_core::{Graphex, GraphonSpec, LabeledGraph, PixelGraphon, RngHandle, UnlabeledGraph};
use rayon::prelude::*;

use super::VerifyError;

/// Runs `draw` once per replicate with that replicate's stream.
pub fn ensemble<T, F>(replicates: usize, master_seed: u64, draw: F) -> Result<Vec<T>, VerifyError>
where
    T: Send,
    F: Fn(RngHandle) -> Result<T, VerifyError> + Sync,
{
    if replicates == 0 {
        return Err(VerifyError::EmptyEnsemble);
    }
    let master = RngHandle::new(master_seed);
    (0..replicates as u64).into_par_iter().map(|i| draw(master.child(i))).collect()
}

/// A random unlabeled graph.
#[derive(Clone, Debug)]
pub enum Generator {
    /// `Gamma_s` of a graphex, labels forgotten.
    Simulate { graphex: Graphex, size: f64, epsilon: f64 },
    /// `Gamma_s` thinned by `r/s`-sampling.
    PSample { graphex: Graphex, size: f64, r: f64, epsilon: f64 },
    /// `Gamma_s` unlabeled, randomly relabeled into `[0, s]`, restricted to `[0, r]`.
    Relabel { graphex: Graphex, size: f64, r: f64, epsilon: f64 },
    /// Slot resampling from a pixel graphon at size `r`.
    Pixel { pixel: PixelGraphon, r: f64 },
}

impl Generator {
    /// Child 0 seeds the simulation and child 1 drives any later step.
    pub fn draw(&self, rng: &RngHandle) -> Result<UnlabeledGraph, VerifyError> {
        // The simulation derives its own child streams from its seed, so it
        // takes child 0 and post-processing takes child 1.
        let sim = rng.child(0).seed();
        let mut next = rng.child(1);
        Ok(match self {
            Generator::Simulate { graphex, size, epsilon } => simulate_at(graphex, *size, *epsilon, sim)?.unlabeled_by_label(),
            Generator::PSample { graphex, size, r, epsilon } => {
                let g = simulate_at(graphex, *size, *epsilon, sim)?.unlabeled_by_label();
                p_sample(&g, r / size, &mut next)?
            }
            Generator::Relabel { graphex, size, r, epsilon } => {
                let g = simulate_at(graphex, *size, *epsilon, sim)?.unlabeled_by_label();
                random_label(&g, *size, &mut next)?.restrict(*r)?.unlabeled_by_label()
            }
            Generator::Pixel { pixel, r } => generate_from_pixel(pixel, *r, &mut next)?,
        })
    }
}

fn simulate_at(gx: &Graphex, size: f64, epsilon: f64, seed: u64) -> Result<LabeledGraph, VerifyError> {
    Ok(simulate_graph(gx, &SimConfig::new(size, seed).with_epsilon(epsilon))?)
}

pub fn stat_ensemble(generator: &Generator, replicates: usize, master_seed: u64) -> Result<Vec<StatVector>, VerifyError> {
    ensemble(replicates, master_seed, |rng| Ok(stats(&generator.draw(&rng)?)))
}

/// A process whose graph sequence is observed without sizes.
#[derive(Clone, Debug)]
pub enum PrefixSource {
    Graphex { graphex: Graphex, epsilon: f64 },
    Pixel(PixelGraphon),
}

impl PrefixSource {
    fn expected_edges_per_area(&self) -> Result<f64, VerifyError> {
        Ok(match self {
            PrefixSource::Graphex { graphex, .. } => expected_edge_counts(graphex, 1.0)?.total(),
            PrefixSource::Pixel(p) => 0.5 * p.l1_norm(),
        })
    }

    fn labeled(&self, size: f64, rng: &RngHandle) -> Result<LabeledGraph, VerifyError> {
        match self {
            PrefixSource::Graphex { graphex, epsilon } => simulate_at(graphex, size, *epsilon, rng.seed()),
            PrefixSource::Pixel(p) => Ok(generate_from_pixel_labeled(p, size, &mut rng.child(0))?),
        }
    }

    /// Statistics of the first `ell` steps of the graph sequence.
    ///
    /// The process is drawn at a size expecting `20 ell` edges; if that shows
    /// fewer than `ell` jumps, a fresh draw at twice the size is taken from
    /// the next child stream. The prefix of a draw with at least `ell` jumps
    /// is the prefix of the whole process, so the result is within total
    /// variation `P(redraw)` of the exact law. For exp-product at `ell = 5`
    /// no redraw occurred in 200000 draws.
    pub fn draw_prefix(&self, ell: usize, rng: &RngHandle) -> Result<PrefixStats, VerifyError> {
        let rate = self.expected_edges_per_area()?;
        if rate.is_nan() || rate <= 0.0 {
            return Err(VerifyError::InvalidInput("process has no edges".into()));
        }
        let mut size = (20.0 * ell as f64 / rate).sqrt();
        for attempt in 0..64 {
            let g = self.labeled(size, &rng.child(attempt))?;
            if let Some(p) = prefix_stats(&graph_sequence(&g), ell) {
                return Ok(p);
            }
            size *= 2.0;
        }
        Err(VerifyError::InvalidInput(format!("no {ell}-step prefix after 64 doublings")))
    }
}

pub fn prefix_ensemble(source: &PrefixSource, ell: usize, replicates: usize, master_seed: u64) -> Result<Vec<PrefixStats>, VerifyError> {
    ensemble(replicates, master_seed, |rng| source.draw_prefix(ell, &rng))
}

/// `(0, 0, pixel)` as a graphex.
pub fn pixel_graphex(pixel: &PixelGraphon) -> Graphex {
    Graphex::graphon_only(GraphonSpec::Pixel(pixel.clone()))
}
