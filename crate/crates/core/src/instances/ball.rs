use alloc::vec::Vec;

use super::graph::Hypergraph;
use crate::{Error, Result};

/// `(vertex, distance)` pair reported by a search.
pub type Visit = (usize, usize);

/// Per-vertex incident edge lists in CSR layout.
///
/// Edge `e` appears once in the list of `v` iff `v` occurs in tuple `e`,
/// however many times it occurs there.
#[derive(Debug, Clone)]
pub struct NeighborhoodIndex<'g> {
    graph: &'g Hypergraph,
    offsets: Vec<usize>,
    incident: Vec<usize>,
}

/// The radius-`p` ball around a root vertex.
///
/// `vertices` holds everything within `p` hyperedge steps; `edges` holds the
/// ids of edges touching a vertex within `p - 1` steps. Both are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    pub root: usize,
    pub radius: usize,
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl<'g> NeighborhoodIndex<'g> {
    pub fn new(graph: &'g Hypergraph) -> Self {
        let n = graph.n();
        let mut counts = alloc::vec![0usize; n + 1];
        let mut scratch: Vec<usize> = Vec::with_capacity(graph.k());
        for e in graph.edges() {
            scratch.clear();
            scratch.extend_from_slice(e);
            scratch.sort_unstable();
            scratch.dedup();
            for &v in &scratch {
                counts[v + 1] += 1;
            }
        }
        for v in 0..n {
            counts[v + 1] += counts[v];
        }
        let offsets = counts;
        let mut cursor = offsets.clone();
        let mut incident = alloc::vec![0usize; offsets[n]];
        for (id, e) in graph.edges().enumerate() {
            scratch.clear();
            scratch.extend_from_slice(e);
            scratch.sort_unstable();
            scratch.dedup();
            for &v in &scratch {
                incident[cursor[v]] = id;
                cursor[v] += 1;
            }
        }
        Self {
            graph,
            offsets,
            incident,
        }
    }

    pub fn graph(&self) -> &'g Hypergraph {
        self.graph
    }

    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Breadth-first search in hyperedge steps from every root at once.
    /// Returns `(vertex, distance)` pairs for distances up to `radius` and the
    /// sorted ids of edges touching a vertex at distance below `radius`.
    pub fn explore(&self, roots: &[usize], radius: usize) -> Result<(Vec<Visit>, Vec<usize>)> {
        let mut search = BallSearch::new(self);
        search.run(roots, radius)?;
        let mut edges = search.edges.clone();
        edges.sort_unstable();
        Ok((search.order.clone(), edges))
    }

    pub fn searcher(&self) -> BallSearch<'_, 'g> {
        BallSearch::new(self)
    }

    pub fn ball(&self, v: usize, radius: usize) -> Result<Ball> {
        let (order, edges) = self.explore(&[v], radius)?;
        let mut vertices: Vec<usize> = order.into_iter().map(|(w, _)| w).collect();
        vertices.sort_unstable();
        Ok(Ball {
            root: v,
            radius,
            vertices,
            edges,
        })
    }

    /// Hyperedge distance between two vertices, if it is at most `limit`.
    pub fn distance_within(&self, from: usize, to: usize, limit: usize) -> Result<Option<usize>> {
        let n = self.graph.n();
        if to >= n {
            return Err(Error::VertexOutOfRange { vertex: to, n });
        }
        let (order, _) = self.explore(&[from], limit)?;
        Ok(order.into_iter().find(|&(w, _)| w == to).map(|(_, d)| d))
    }
}

/// Reusable breadth-first search buffers over one [`NeighborhoodIndex`].
///
/// Marks are generation stamps, so a query costs time proportional to the
/// ball it visits rather than to `n`.
#[derive(Debug, Clone)]
pub struct BallSearch<'i, 'g> {
    index: &'i NeighborhoodIndex<'g>,
    stamp: u32,
    vertex_mark: Vec<u32>,
    edge_mark: Vec<u32>,
    order: Vec<(usize, usize)>,
    edges: Vec<usize>,
}

impl<'i, 'g> BallSearch<'i, 'g> {
    pub fn new(index: &'i NeighborhoodIndex<'g>) -> Self {
        Self {
            index,
            stamp: 0,
            vertex_mark: alloc::vec![0; index.graph.n()],
            edge_mark: alloc::vec![0; index.graph.edge_count()],
            order: Vec::new(),
            edges: Vec::new(),
        }
    }

    /// Runs the search; results are read through [`visited`](Self::visited)
    /// and [`edges`](Self::edges).
    pub fn run(&mut self, roots: &[usize], radius: usize) -> Result<()> {
        let graph = self.index.graph;
        let n = graph.n();
        if let Some(&vertex) = roots.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex, n });
        }
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.vertex_mark.fill(0);
            self.edge_mark.fill(0);
            self.stamp = 1;
        }
        let stamp = self.stamp;
        self.order.clear();
        self.edges.clear();
        for &r in roots {
            if self.vertex_mark[r] != stamp {
                self.vertex_mark[r] = stamp;
                self.order.push((r, 0));
            }
        }
        let mut head = 0;
        while head < self.order.len() {
            let (u, du) = self.order[head];
            head += 1;
            if du >= radius {
                continue;
            }
            for &e in self.index.incident(u) {
                if self.edge_mark[e] == stamp {
                    continue;
                }
                self.edge_mark[e] = stamp;
                self.edges.push(e);
                for &w in graph.edge(e) {
                    if self.vertex_mark[w] != stamp {
                        self.vertex_mark[w] = stamp;
                        self.order.push((w, du + 1));
                    }
                }
            }
        }
        Ok(())
    }

    /// `(vertex, distance)` in discovery order.
    pub fn visited(&self) -> &[(usize, usize)] {
        &self.order
    }

    /// Edge ids in discovery order.
    pub fn edges(&self) -> &[usize] {
        &self.edges
    }
}

/// `B_G(v, p)`; builds a throwaway index. Use [`NeighborhoodIndex`] for
/// repeated queries on the same graph.
pub fn ball(graph: &Hypergraph, v: usize, p: usize) -> Result<Ball> {
    NeighborhoodIndex::new(graph).ball(v, p)
}

/// Largest `p` with `2p + 1 <= (1 - τ) ln n / ln(d(k-1)/ln 2)`, or 0 when no
/// positive depth fits.
pub fn depth_budget(n: usize, d: f64, k: usize, tau: f64) -> Result<usize> {
    if n < 2 {
        return Err(Error::InvalidParameter("depth budget needs n >= 2"));
    }
    if !(tau > 0.0 && tau < 1.0) {
        return Err(Error::InvalidParameter("tau must lie in (0, 1)"));
    }
    let growth = d * (k as f64 - 1.0) / core::f64::consts::LN_2;
    if !(growth > 1.0) || !growth.is_finite() {
        return Err(Error::InvalidParameter(
            "depth budget undefined for d(k-1) <= ln 2",
        ));
    }
    let budget = (1.0 - tau) * libm::log(n as f64) / libm::log(growth);
    if budget < 1.0 {
        return Ok(0);
    }
    Ok(libm::floor((budget - 1.0) / 2.0) as usize)
}
