//! Empirical graphons and graphs generated from pixel graphons.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::graph::{Component, LabeledEdge, LabeledGraph, UnlabeledGraph};
use crate::graphon::PixelGraphon;
use crate::rng::RngHandle;
use crate::simulate::poisson;

/// Adjacency matrix of `g` in canonical order, cells of width `1 / v(g)`.
pub fn empirical_graphon(g: &UnlabeledGraph) -> Result<PixelGraphon> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    pixel_from(g, 1.0 / n as f64)
}

/// Adjacency matrix of `g` in canonical order, cells of width `1 / s`,
/// supported on `[0, v(g)/s)^2`.
pub fn dilated_empirical_graphon(g: &UnlabeledGraph, s: f64) -> Result<PixelGraphon> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !(s > 0.0 && s.is_finite()) {
        return Err(invalid(alloc::format!("size must be positive, got {s}")));
    }
    pixel_from(g, 1.0 / s)
}

/// See [`UnlabeledGraph::canonical_order`].
pub fn canonical_order(g: &UnlabeledGraph) -> Vec<usize> {
    g.canonical_order()
}

fn pixel_from(g: &UnlabeledGraph, cell_width: f64) -> Result<PixelGraphon> {
    let c = g.canonical();
    let n = c.vertex_count();
    let mut values = vec![0.0; n * n];
    for &(u, v) in c.edges() {
        values[u * n + v] = 1.0;
        values[v * n + u] = 1.0;
    }
    PixelGraphon::new(n, cell_width, values)
}

/// A size-`r` draw from the graphex `(0, 0, pg)`, without latent points.
///
/// `J ~ Poisson(r n w)` slots pick rows uniformly with replacement; each
/// pair of distinct slots is joined with probability equal to the entry at
/// their rows. Slots left without edges vanish.
pub fn generate_from_pixel(pg: &PixelGraphon, r: f64, rng: &mut RngHandle) -> Result<UnlabeledGraph> {
    let (_, edges) = slot_edges(pg, r, rng)?;
    Ok(UnlabeledGraph::from_edges(edges).canonical())
}

/// As [`generate_from_pixel`] with slot labels i.i.d. uniform on `[0, r]`.
pub fn generate_from_pixel_labeled(pg: &PixelGraphon, r: f64, rng: &mut RngHandle) -> Result<LabeledGraph> {
    let (slots, edges) = slot_edges(pg, r, rng)?;
    let labels: Vec<f64> = (0..slots).map(|_| r * rng.uniform()).collect();
    let edges = edges.into_iter().map(|(a, b)| LabeledEdge::new(labels[a], labels[b], Component::W)).collect();
    LabeledGraph::new(r, edges)
}

fn slot_edges(pg: &PixelGraphon, r: f64, rng: &mut RngHandle) -> Result<(usize, Vec<(usize, usize)>)> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(invalid(alloc::format!("size must be positive, got {r}")));
    }
    let n = pg.size();
    let slots = poisson(r * pg.support_edge(), rng) as usize;
    let rows: Vec<usize> = (0..slots).map(|_| rng.index(n)).collect();
    let mut edges = Vec::new();
    for a in 0..slots {
        for b in a + 1..slots {
            let w = pg.get(rows[a], rows[b]);
            if w >= 1.0 || (w > 0.0 && rng.bernoulli(w)) {
                edges.push((a, b));
            }
        }
    }
    Ok((slots, edges))
}
