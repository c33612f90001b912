use alloc::vec::Vec;

use crate::instances::{Hypergraph, NeighborhoodIndex};
use crate::stats::quantile_sorted;
use crate::Result;

/// Exact `|B(v, p)|` for every vertex, with summaries.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborhoodStats {
    pub radius: usize,
    pub sizes: Vec<usize>,
    pub max: usize,
    pub mean: f64,
    pub median: f64,
    pub q90: f64,
    pub q99: f64,
    /// `n^A`.
    pub threshold: f64,
    /// Fraction of vertices with `|B(v, p)| > n^A`.
    pub exceed_fraction: f64,
}

pub fn neighborhood_stats(
    graph: &Hypergraph,
    p: usize,
    exponent: f64,
) -> Result<NeighborhoodStats> {
    let n = graph.n();
    let index = NeighborhoodIndex::new(graph);
    let mut search = index.searcher();
    let mut sizes = Vec::with_capacity(n);
    for v in 0..n {
        search.run(&[v], p)?;
        sizes.push(search.visited().len());
    }
    let mut sorted: Vec<f64> = sizes.iter().map(|&s| s as f64).collect();
    sorted.sort_by(f64::total_cmp);
    let threshold = libm::pow(n as f64, exponent);
    let exceed = sizes.iter().filter(|&&s| s as f64 > threshold).count();
    Ok(NeighborhoodStats {
        radius: p,
        max: sizes.iter().copied().max().unwrap_or(0),
        mean: if n == 0 {
            0.0
        } else {
            sorted.iter().sum::<f64>() / n as f64
        },
        median: quantile_sorted(&sorted, 0.5),
        q90: quantile_sorted(&sorted, 0.9),
        q99: quantile_sorted(&sorted, 0.99),
        threshold,
        exceed_fraction: if n == 0 {
            0.0
        } else {
            exceed as f64 / n as f64
        },
        sizes,
    })
}
