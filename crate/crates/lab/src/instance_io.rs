//! Instance files.
//!
//! `{"n": .., "k": .., "edges": [[..], ..], "signs": [[..], ..], "seed": [hi, lo]}`
//! with `signs` and `seed` optional. Fields are written in that order and
//! edges in sampling order.

use std::path::Path;

use ogp_core::instances::{Hypergraph, SignedInstance};
use ogp_core::rng::Seed;
use serde::{Deserialize, Serialize};

use crate::error::{io_err, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: usize,
    pub k: usize,
    pub edges: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<Vec<Vec<i8>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<[u64; 2]>,
}

impl InstanceFile {
    pub fn from_graph(graph: &Hypergraph, seed: Option<Seed>) -> Self {
        Self {
            n: graph.n(),
            k: graph.k(),
            edges: graph.to_nested(),
            signs: None,
            seed: seed.map(|s| [s.hi, s.lo]),
        }
    }

    pub fn from_signed(instance: &SignedInstance, seed: Option<Seed>) -> Self {
        let mut out = Self::from_graph(instance.graph(), seed);
        out.signs = Some(instance.sign_rows().map(|r| r.to_vec()).collect());
        out
    }

    pub fn graph(&self) -> Result<Hypergraph> {
        Ok(Hypergraph::new(self.n, self.k, self.edges.clone())?)
    }

    /// The signed instance, with all signs `+1` when the file has none.
    pub fn instance(&self) -> Result<SignedInstance> {
        let graph = self.graph()?;
        Ok(match &self.signs {
            Some(rows) => SignedInstance::new(graph, rows.clone())?,
            None => SignedInstance::unsigned(graph),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        Self::from_json(&text)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = self.to_json()?;
        text.push('\n');
        std::fs::write(path, text).map_err(io_err(path))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ogp_core::instances::{sample_hypergraph, sample_signs};

    #[test]
    fn round_trip_and_field_order() {
        let seed = Seed::new(3, 4);
        let g = sample_hypergraph(10, 2.0, 3, &mut seed.stream(0)).unwrap();
        let inst = sample_signs(&g, &mut seed.stream(1));
        let file = InstanceFile::from_signed(&inst, Some(seed));
        let text = file.to_json().unwrap();
        assert!(text.starts_with("{\"n\":10,\"k\":3,\"edges\":"));
        let back = InstanceFile::from_json(&text).unwrap();
        assert_eq!(back.instance().unwrap(), inst);
        let plain = InstanceFile::from_graph(&g, None).to_json().unwrap();
        assert!(!plain.contains("signs") && !plain.contains("seed"));
    }

    #[test]
    fn rejects_bad_files() {
        assert!(InstanceFile::from_json(r#"{"n":2,"k":2,"edges":[[0,1]],"extra":1}"#).is_err());
        let f = InstanceFile::from_json(r#"{"n":2,"k":2,"edges":[[0,2]]}"#).unwrap();
        assert!(f.graph().is_err());
        let f =
            InstanceFile::from_json(r#"{"n":2,"k":2,"edges":[[0,1]],"signs":[[1,0]]}"#).unwrap();
        assert!(f.instance().is_err());
    }
}
