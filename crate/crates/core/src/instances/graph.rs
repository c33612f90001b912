use alloc::vec::Vec;

use crate::{Error, Result};

/// Read access to a list of parity clauses, signed or not.
///
/// `clause_sign(i)` is the product of the clause's per-position signs, so
/// the clause contributes `-clause_sign(i) * Π σ` to the Hamiltonian.
pub trait Clauses {
    fn hypergraph(&self) -> &Hypergraph;
    fn vertex_count(&self) -> usize;
    fn arity(&self) -> usize;
    fn clause_count(&self) -> usize;
    fn clause(&self, i: usize) -> &[usize];
    fn clause_sign(&self, i: usize) -> i8;

    /// Vertices occurring an odd number of times in clause `i`, as a bit
    /// mask. Only meaningful when `vertex_count() <= 64`.
    fn parity_mask(&self, i: usize) -> u64 {
        self.clause(i).iter().fold(0u64, |m, &v| m ^ (1u64 << v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    /// Edges stored back to back, `k` ids each.
    flat: Vec<usize>,
}

impl Hypergraph {
    pub fn new(n: usize, k: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut flat = Vec::with_capacity(edges.len() * k);
        for e in &edges {
            if e.len() != k {
                return Err(Error::LengthMismatch {
                    expected: k,
                    actual: e.len(),
                });
            }
            flat.extend_from_slice(e);
        }
        Self::from_flat(n, k, flat)
    }

    pub fn from_flat(n: usize, k: usize, flat: Vec<usize>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("arity must be at least 1"));
        }
        if !flat.len().is_multiple_of(k) {
            return Err(Error::LengthMismatch {
                expected: flat.len().next_multiple_of(k),
                actual: flat.len(),
            });
        }
        if let Some(&vertex) = flat.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex, n });
        }
        Ok(Self { n, k, flat })
    }

    pub fn empty(n: usize, k: usize) -> Result<Self> {
        Self::from_flat(n, k, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edge_count(&self) -> usize {
        self.flat.len() / self.k
    }

    pub fn edge(&self, i: usize) -> &[usize] {
        &self.flat[i * self.k..(i + 1) * self.k]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[usize]> + '_ {
        self.flat.chunks_exact(self.k)
    }

    pub fn to_nested(&self) -> Vec<Vec<usize>> {
        self.edges().map(<[usize]>::to_vec).collect()
    }

    /// Appends the edges of `other` after our own. Arity and vertex count
    /// must agree.
    pub fn concat(&self, other: &Hypergraph) -> Result<Hypergraph> {
        if self.n != other.n || self.k != other.k {
            return Err(Error::InvalidParameter(
                "concatenated graphs must share n and k",
            ));
        }
        let mut flat = Vec::with_capacity(self.flat.len() + other.flat.len());
        flat.extend_from_slice(&self.flat);
        flat.extend_from_slice(&other.flat);
        Ok(Hypergraph {
            n: self.n,
            k: self.k,
            flat,
        })
    }

    pub fn with_edge_added(&self, edge: &[usize]) -> Result<Hypergraph> {
        let extra = Hypergraph::from_flat(self.n, self.k, edge.to_vec())?;
        if extra.edge_count() != 1 {
            return Err(Error::LengthMismatch {
                expected: self.k,
                actual: edge.len(),
            });
        }
        self.concat(&extra)
    }

    pub fn with_edge_removed(&self, id: usize) -> Result<Hypergraph> {
        if id >= self.edge_count() {
            return Err(Error::InvalidParameter("edge id out of range"));
        }
        let mut flat = self.flat.clone();
        flat.drain(id * self.k..(id + 1) * self.k);
        Ok(Hypergraph {
            n: self.n,
            k: self.k,
            flat,
        })
    }
}

impl Clauses for Hypergraph {
    fn hypergraph(&self) -> &Hypergraph {
        self
    }

    fn vertex_count(&self) -> usize {
        self.n
    }

    fn arity(&self) -> usize {
        self.k
    }

    fn clause_count(&self) -> usize {
        self.edge_count()
    }

    fn clause(&self, i: usize) -> &[usize] {
        self.edge(i)
    }

    fn clause_sign(&self, _i: usize) -> i8 {
        1
    }
}

/// A hypergraph with a Rademacher sign on every tuple position.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedInstance {
    graph: Hypergraph,
    /// One row of `k` signs per edge, flattened like the edges.
    signs: Vec<i8>,
}

impl SignedInstance {
    pub fn new(graph: Hypergraph, signs: Vec<Vec<i8>>) -> Result<Self> {
        if signs.len() != graph.edge_count() {
            return Err(Error::LengthMismatch {
                expected: graph.edge_count(),
                actual: signs.len(),
            });
        }
        let mut flat = Vec::with_capacity(signs.len() * graph.k());
        for row in &signs {
            if row.len() != graph.k() {
                return Err(Error::LengthMismatch {
                    expected: graph.k(),
                    actual: row.len(),
                });
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat(graph, flat)
    }

    pub fn from_flat(graph: Hypergraph, signs: Vec<i8>) -> Result<Self> {
        if signs.len() != graph.flat.len() {
            return Err(Error::LengthMismatch {
                expected: graph.flat.len(),
                actual: signs.len(),
            });
        }
        if let Some(&s) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidSpin(s as i64));
        }
        Ok(Self { graph, signs })
    }

    /// All signs `+1`; the Hamiltonian coincides with the unsigned one.
    pub fn unsigned(graph: Hypergraph) -> Self {
        let signs = alloc::vec![1; graph.flat.len()];
        Self { graph, signs }
    }

    pub fn graph(&self) -> &Hypergraph {
        &self.graph
    }

    pub fn signs(&self, edge: usize) -> &[i8] {
        let k = self.graph.k;
        &self.signs[edge * k..(edge + 1) * k]
    }

    pub fn sign_rows(&self) -> impl ExactSizeIterator<Item = &[i8]> + '_ {
        self.signs.chunks_exact(self.graph.k)
    }

    /// `p_i = Π_j p_ij`.
    pub fn edge_sign(&self, edge: usize) -> i8 {
        self.signs(edge).iter().product()
    }
}

impl Clauses for SignedInstance {
    fn hypergraph(&self) -> &Hypergraph {
        &self.graph
    }

    fn vertex_count(&self) -> usize {
        self.graph.n
    }

    fn arity(&self) -> usize {
        self.graph.k
    }

    fn clause_count(&self) -> usize {
        self.graph.edge_count()
    }

    fn clause(&self, i: usize) -> &[usize] {
        self.graph.edge(i)
    }

    fn clause_sign(&self, i: usize) -> i8 {
        self.edge_sign(i)
    }
}

/// Two instances drawn from the coupled interpolation at parameter `t`.
///
/// Both graphs list the shared edges first, so an edge id below
/// [`shared_count`](Self::shared_count) refers to the same tuple in either
/// graph.
#[derive(Debug, Clone, PartialEq)]
pub struct CoupledPair {
    t: f64,
    shared_count: usize,
    g1: Hypergraph,
    g2: Hypergraph,
}

impl CoupledPair {
    pub fn new(
        t: f64,
        shared: Hypergraph,
        private1: Hypergraph,
        private2: Hypergraph,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::InvalidParameter(
                "coupling parameter t must lie in [0, 1]",
            ));
        }
        let g1 = shared.concat(&private1)?;
        let g2 = shared.concat(&private2)?;
        Ok(Self {
            t,
            shared_count: shared.edge_count(),
            g1,
            g2,
        })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn n(&self) -> usize {
        self.g1.n
    }

    pub fn k(&self) -> usize {
        self.g1.k
    }

    pub fn shared_count(&self) -> usize {
        self.shared_count
    }

    pub fn graph1(&self) -> &Hypergraph {
        &self.g1
    }

    pub fn graph2(&self) -> &Hypergraph {
        &self.g2
    }

    pub fn shared(&self) -> impl ExactSizeIterator<Item = &[usize]> + '_ {
        self.g1.edges().take(self.shared_count)
    }

    pub fn private1(&self) -> impl ExactSizeIterator<Item = &[usize]> + '_ {
        self.g1.edges().skip(self.shared_count)
    }

    pub fn private2(&self) -> impl ExactSizeIterator<Item = &[usize]> + '_ {
        self.g2.edges().skip(self.shared_count)
    }

    pub fn is_shared(&self, edge: usize) -> bool {
        edge < self.shared_count
    }
}
