//! Multicomplexes: simplicial objects whose simplices have distinct, unordered vertices but
//! where several simplices may share the same vertex set.
//!
//! A [`Multicomplex`] stores, for each simplex, its vertex set and the simplices glued onto its
//! codimension-one faces. Deeper faces are reached by composing facet maps; [`validate`] checks
//! that every route to the same face lands on the same simplex.
//!
//! Vertex identifiers are opaque strings. Internally vertices are kept in lexicographic order,
//! and that order is the one used wherever an arbitrary total order of the vertices is needed
//! (canonical tuples, reduced bases, signs).

mod construct;
mod io;
mod maps;
mod validate;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

pub use construct::{
    compatible_simplices, product_with_interval, skeleton, special_sphere, submulticomplex,
    ProductWithInterval,
};
pub use io::{RawMulticomplex, RawSimplex, MULTICOMPLEX_FORMAT_VERSION};
pub use maps::{validate_simplicial_map, MapReport, RawSimplicialMap, SimplicialMap};
pub use validate::validate;

/// Index of a vertex inside a [`Multicomplex`]; vertex indices follow the lexicographic order of
/// vertex names.
pub type VertexIx = usize;
/// Index of a simplex inside a [`Multicomplex`].
pub type SimplexIx = usize;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum McxError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown simplex `{0}`")]
    UnknownSimplex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate simplex id `{0}`")]
    DuplicateSimplexId(String),
    #[error("simplex `{simplex}` has malformed facet key `{key}`")]
    BadFacetKey { simplex: String, key: String },
    #[error("not a multicomplex: {0}")]
    Invalid(String),
    #[error("simplex set is not closed under faces: `{simplex}` is missing its face `{face}`")]
    NotClosed { simplex: String, face: String },
    #[error("duplicate vertex labels")]
    DuplicateLabels,
    #[error("{0}")]
    Precondition(String),
}

/// One simplex record: its id, sorted vertex set and the facets glued to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplex {
    pub id: String,
    /// Vertex indices in ascending order. Duplicates are representable only so that
    /// [`validate`] can report them.
    pub vertices: Vec<VertexIx>,
    /// Facet map keyed by the sorted vertex subset it is glued along.
    pub facets: BTreeMap<Vec<VertexIx>, SimplexIx>,
}

impl Simplex {
    pub fn dim(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }
}

/// Finite multicomplex. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multicomplex {
    vertices: Vec<String>,
    vertex_index: HashMap<String, VertexIx>,
    simplices: Vec<Simplex>,
    simplex_index: HashMap<String, SimplexIx>,
}

/// A single axiom violation.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Violation {
    pub rule: &'static str,
    pub ids: Vec<String>,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn from_violations(violations: Vec<Violation>) -> Self {
        Self { ok: violations.is_empty(), violations }
    }

    pub fn has_rule(&self, rule: &str) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "[{}] {}", v.rule, v.message)?;
        }
        Ok(())
    }
}

/// A simplex description in terms of names, used to assemble a [`Multicomplex`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexSpec {
    pub id: String,
    pub vertices: Vec<String>,
    /// `(facet vertex names, facet simplex id)`.
    pub facets: Vec<(Vec<String>, String)>,
}

impl Multicomplex {
    /// Resolves names into indices. Unknown names and duplicate ids are hard errors; axiom
    /// violations are left for [`validate`] to report.
    pub fn from_specs(
        vertices: impl IntoIterator<Item = String>,
        simplices: Vec<SimplexSpec>,
    ) -> Result<Self, McxError> {
        let mut names: Vec<String> = vertices.into_iter().collect();
        let unique: BTreeSet<&String> = names.iter().collect();
        if unique.len() != names.len() {
            let mut seen = BTreeSet::new();
            let dup = names.iter().find(|n| !seen.insert(n.as_str())).cloned();
            return Err(McxError::DuplicateVertex(dup.unwrap_or_default()));
        }
        names.sort();
        let vertex_index: HashMap<String, VertexIx> =
            names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();

        let mut simplex_index = HashMap::with_capacity(simplices.len());
        for (i, s) in simplices.iter().enumerate() {
            if simplex_index.insert(s.id.clone(), i).is_some() {
                return Err(McxError::DuplicateSimplexId(s.id.clone()));
            }
        }

        let resolve_vertices = |vs: &[String]| -> Result<Vec<VertexIx>, McxError> {
            let mut out = vs
                .iter()
                .map(|v| vertex_index.get(v).copied().ok_or_else(|| McxError::UnknownVertex(v.clone())))
                .collect::<Result<Vec<_>, _>>()?;
            out.sort_unstable();
            Ok(out)
        };

        let mut built = Vec::with_capacity(simplices.len());
        for s in &simplices {
            let verts = resolve_vertices(&s.vertices)?;
            let mut facets = BTreeMap::new();
            for (key, target) in &s.facets {
                let key_ix = resolve_vertices(key)?;
                let t = *simplex_index
                    .get(target)
                    .ok_or_else(|| McxError::UnknownSimplex(target.clone()))?;
                if facets.insert(key_ix, t).is_some() {
                    return Err(McxError::BadFacetKey { simplex: s.id.clone(), key: key.join(",") });
                }
            }
            built.push(Simplex { id: s.id.clone(), vertices: verts, facets });
        }

        Ok(Self { vertices: names, vertex_index, simplices: built, simplex_index })
    }

    /// Same as [`Multicomplex::from_specs`] followed by [`validate`]; invalid input is an error.
    pub fn new_valid(
        vertices: impl IntoIterator<Item = String>,
        simplices: Vec<SimplexSpec>,
    ) -> Result<Self, McxError> {
        let mc = Self::from_specs(vertices, simplices)?;
        mc.ensure_valid()?;
        Ok(mc)
    }

    pub fn ensure_valid(&self) -> Result<(), McxError> {
        let report = validate(self);
        if report.ok {
            Ok(())
        } else {
            Err(McxError::Invalid(report.to_string()))
        }
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: VertexIx) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_ix(&self, name: &str) -> Option<VertexIx> {
        self.vertex_index.get(name).copied()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn simplex(&self, s: SimplexIx) -> &Simplex {
        &self.simplices[s]
    }

    pub fn simplex_ix(&self, id: &str) -> Option<SimplexIx> {
        self.simplex_index.get(id).copied()
    }

    pub fn num_simplices(&self) -> usize {
        self.simplices.len()
    }

    /// Dimension of the multicomplex; `None` when there are no simplices.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(Simplex::dim).max()
    }

    pub fn simplices_of_dim(&self, n: usize) -> impl Iterator<Item = SimplexIx> + '_ {
        self.simplices.iter().enumerate().filter(move |(_, s)| s.dim() == n).map(|(i, _)| i)
    }

    pub fn count_of_dim(&self, n: usize) -> usize {
        self.simplices_of_dim(n).count()
    }

    /// Alternating count of simplices.
    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .map(|s| if s.dim() % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// The 0-simplex sitting on vertex `v`, if any.
    pub fn vertex_simplex(&self, v: VertexIx) -> Option<SimplexIx> {
        self.simplices.iter().position(|s| s.vertices.len() == 1 && s.vertices[0] == v)
    }

    /// Facet of `s` opposite its `i`-th vertex (in ascending vertex order).
    pub fn facet(&self, s: SimplexIx, i: usize) -> Option<SimplexIx> {
        let verts = &self.simplices[s].vertices;
        let key: Vec<VertexIx> =
            verts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
        self.simplices[s].facets.get(&key).copied()
    }

    /// Face of `s` spanned by `subset` (sorted, non-empty, contained in the vertex set),
    /// obtained by composing facet maps. On a valid multicomplex every route agrees.
    pub fn face(&self, s: SimplexIx, subset: &[VertexIx]) -> Option<SimplexIx> {
        let mut cur = s;
        loop {
            let verts = &self.simplices[cur].vertices;
            if verts.as_slice() == subset {
                return Some(cur);
            }
            let i = verts.iter().position(|v| subset.binary_search(v).is_err())?;
            cur = self.facet(cur, i)?;
        }
    }

    /// All faces of `s` (including `s`), one per non-empty vertex subset.
    pub fn faces(&self, s: SimplexIx) -> Vec<SimplexIx> {
        let verts = self.simplices[s].vertices.clone();
        let n = verts.len();
        let mut out = Vec::with_capacity((1usize << n) - 1);
        for mask in 1u64..(1u64 << n) {
            let subset: Vec<VertexIx> =
                (0..n).filter(|i| mask & (1 << i) != 0).map(|i| verts[i]).collect();
            if let Some(f) = self.face(s, &subset) {
                out.push(f);
            }
        }
        out
    }

    /// Simplices whose vertex set is exactly `subset`.
    pub fn simplices_on(&self, subset: &[VertexIx]) -> Vec<SimplexIx> {
        self.simplices
            .iter()
            .enumerate()
            .filter(|(_, s)| s.vertices.as_slice() == subset)
            .map(|(i, _)| i)
            .collect()
    }

    /// True iff no two simplices share a vertex set.
    pub fn is_simplicial_complex(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.simplices.iter().all(|s| seen.insert(s.vertices.clone()))
    }

    /// Name-level description of every simplex, in storage order.
    pub fn to_specs(&self) -> Vec<SimplexSpec> {
        self.simplices
            .iter()
            .map(|s| SimplexSpec {
                id: s.id.clone(),
                vertices: s.vertices.iter().map(|&v| self.vertices[v].clone()).collect(),
                facets: s
                    .facets
                    .iter()
                    .map(|(k, &t)| {
                        (k.iter().map(|&v| self.vertices[v].clone()).collect(), self.simplices[t].id.clone())
                    })
                    .collect(),
            })
            .collect()
    }

    pub fn vertex_names_of(&self, s: SimplexIx) -> Vec<&str> {
        self.simplices[s].vertices.iter().map(|&v| self.vertices[v].as_str()).collect()
    }
}

/// Key used in files for a vertex subset: sorted names joined by commas.
pub fn subset_key<S: AsRef<str>>(names: &[S]) -> String {
    let mut v: Vec<&str> = names.iter().map(AsRef::as_ref).collect();
    v.sort_unstable();
    v.join(",")
}
