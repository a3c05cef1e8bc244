use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{subset_key, McxError, Multicomplex, SimplexSpec};

pub const MULTICOMPLEX_FORMAT_VERSION: u32 = 1;

/// File representation of a multicomplex.
///
/// Facet keys are the comma-joined sorted vertex names of the facet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMulticomplex {
    #[serde(default = "default_format")]
    pub format: String,
    #[serde(default = "default_version")]
    pub version: u32,
    pub vertices: Vec<String>,
    pub simplices: Vec<RawSimplex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSimplex {
    pub id: String,
    pub vertices: Vec<String>,
    #[serde(default)]
    pub facets: BTreeMap<String, String>,
}

fn default_format() -> String {
    "multicomplex".into()
}

fn default_version() -> u32 {
    MULTICOMPLEX_FORMAT_VERSION
}

impl RawMulticomplex {
    pub fn from_multicomplex(mc: &Multicomplex) -> Self {
        let simplices = mc
            .to_specs()
            .into_iter()
            .map(|s| RawSimplex {
                id: s.id,
                vertices: s.vertices,
                facets: s.facets.into_iter().map(|(k, t)| (subset_key(&k), t)).collect(),
            })
            .collect();
        Self {
            format: default_format(),
            version: MULTICOMPLEX_FORMAT_VERSION,
            vertices: mc.vertex_names().to_vec(),
            simplices,
        }
    }

    /// Resolves names. Axiom violations are not checked here.
    pub fn to_multicomplex(&self) -> Result<Multicomplex, McxError> {
        if self.format != "multicomplex" {
            return Err(McxError::Precondition(format!("expected format `multicomplex`, got `{}`", self.format)));
        }
        if self.version != MULTICOMPLEX_FORMAT_VERSION {
            return Err(McxError::Precondition(format!("unsupported multicomplex version {}", self.version)));
        }
        let specs = self
            .simplices
            .iter()
            .map(|s| {
                let facets = s
                    .facets
                    .iter()
                    .map(|(key, target)| (facet_key_names(&s.vertices, key), target.clone()))
                    .collect();
                SimplexSpec { id: s.id.clone(), vertices: s.vertices.clone(), facets }
            })
            .collect();
        Multicomplex::from_specs(self.vertices.iter().cloned(), specs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

/// Recovers the vertex names of a facet key. Keys matching a codimension-one subset of the
/// simplex are resolved exactly, so vertex names may themselves contain commas.
fn facet_key_names(vertices: &[String], key: &str) -> Vec<String> {
    if vertices.len() > 1 {
        for subset in vertices.iter().combinations(vertices.len() - 1) {
            if subset_key(&subset) == key {
                return subset.into_iter().cloned().collect();
            }
        }
    }
    key.split(',').map(str::to_string).collect()
}
