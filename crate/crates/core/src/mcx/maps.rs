use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{McxError, Multicomplex, SimplexIx, ValidationReport, VertexIx, Violation};

/// A simplicial map between multicomplexes: a vertex map together with a simplex map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    pub vertex_map: Vec<VertexIx>,
    pub simplex_map: Vec<SimplexIx>,
}

/// File form of a [`SimplicialMap`], keyed by names and ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSimplicialMap {
    pub vertex_map: BTreeMap<String, String>,
    pub simplex_map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapReport {
    #[serde(flatten)]
    pub report: ValidationReport,
    /// Every simplex keeps its dimension.
    pub non_degenerate: bool,
}

impl MapReport {
    pub fn ok(&self) -> bool {
        self.report.ok
    }
}

impl std::ops::Deref for MapReport {
    type Target = ValidationReport;
    fn deref(&self) -> &ValidationReport {
        &self.report
    }
}

impl SimplicialMap {
    pub fn identity(mc: &Multicomplex) -> Self {
        Self { vertex_map: (0..mc.num_vertices()).collect(), simplex_map: (0..mc.num_simplices()).collect() }
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &SimplicialMap) -> Self {
        Self {
            vertex_map: first.vertex_map.iter().map(|&v| self.vertex_map[v]).collect(),
            simplex_map: first.simplex_map.iter().map(|&s| self.simplex_map[s]).collect(),
        }
    }

    pub fn from_raw(raw: &RawSimplicialMap, src: &Multicomplex, dst: &Multicomplex) -> Result<Self, McxError> {
        let mut vertex_map = Vec::with_capacity(src.num_vertices());
        for v in src.vertex_names() {
            let target = raw.vertex_map.get(v).ok_or_else(|| McxError::UnknownVertex(v.clone()))?;
            vertex_map.push(dst.vertex_ix(target).ok_or_else(|| McxError::UnknownVertex(target.clone()))?);
        }
        let mut simplex_map = Vec::with_capacity(src.num_simplices());
        for s in src.simplices() {
            let target = raw.simplex_map.get(&s.id).ok_or_else(|| McxError::UnknownSimplex(s.id.clone()))?;
            simplex_map.push(dst.simplex_ix(target).ok_or_else(|| McxError::UnknownSimplex(target.clone()))?);
        }
        for k in raw.vertex_map.keys() {
            src.vertex_ix(k).ok_or_else(|| McxError::UnknownVertex(k.clone()))?;
        }
        for k in raw.simplex_map.keys() {
            src.simplex_ix(k).ok_or_else(|| McxError::UnknownSimplex(k.clone()))?;
        }
        Ok(Self { vertex_map, simplex_map })
    }

    pub fn to_raw(&self, src: &Multicomplex, dst: &Multicomplex) -> RawSimplicialMap {
        RawSimplicialMap {
            vertex_map: self
                .vertex_map
                .iter()
                .enumerate()
                .map(|(v, &w)| (src.vertex_name(v).to_string(), dst.vertex_name(w).to_string()))
                .collect(),
            simplex_map: self
                .simplex_map
                .iter()
                .enumerate()
                .map(|(s, &t)| (src.simplex(s).id.clone(), dst.simplex(t).id.clone()))
                .collect(),
        }
    }
}

/// Checks that `f` is a simplicial map from `src` to `dst`: simplices go to simplices on the
/// image vertex set, and facets are carried to faces of the image.
pub fn validate_simplicial_map(
    f: &SimplicialMap,
    src: &Multicomplex,
    dst: &Multicomplex,
) -> Result<MapReport, McxError> {
    if f.vertex_map.len() != src.num_vertices() || f.simplex_map.len() != src.num_simplices() {
        return Err(McxError::Precondition("map does not cover the source".into()));
    }
    if let Some(&v) = f.vertex_map.iter().find(|&&v| v >= dst.num_vertices()) {
        return Err(McxError::UnknownVertex(format!("#{v}")));
    }
    if let Some(&s) = f.simplex_map.iter().find(|&&s| s >= dst.num_simplices()) {
        return Err(McxError::UnknownSimplex(format!("#{s}")));
    }

    let mut out = Vec::new();
    let mut non_degenerate = true;
    for (si, s) in src.simplices().iter().enumerate() {
        let t = f.simplex_map[si];
        let mut image: Vec<VertexIx> = s.vertices.iter().map(|&v| f.vertex_map[v]).collect();
        image.sort_unstable();
        image.dedup();
        if image.len() != s.vertices.len() {
            non_degenerate = false;
        }
        if dst.simplex(t).vertices != image {
            out.push(Violation {
                rule: "vertex-image",
                ids: vec![s.id.clone(), dst.simplex(t).id.clone()],
                message: format!(
                    "`{}` is sent to `{}`, which does not span the image of its vertices",
                    s.id,
                    dst.simplex(t).id
                ),
            });
            continue;
        }
        for (key, &fs) in &s.facets {
            let mut fimage: Vec<VertexIx> = key.iter().map(|&v| f.vertex_map[v]).collect();
            fimage.sort_unstable();
            fimage.dedup();
            let expected = dst.face(t, &fimage);
            if expected != Some(f.simplex_map[fs]) {
                out.push(Violation {
                    rule: "face-compatibility",
                    ids: vec![s.id.clone(), src.simplex(fs).id.clone()],
                    message: format!(
                        "facet `{}` of `{}` is not sent to the corresponding face of `{}`",
                        src.simplex(fs).id,
                        s.id,
                        dst.simplex(t).id
                    ),
                });
            }
        }
    }
    Ok(MapReport { report: ValidationReport::from_violations(out), non_degenerate })
}
