use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{McxError, Multicomplex, SimplexIx, SimplexSpec, SimplicialMap};

/// Simplices of dimension at most `n`, on the same vertex set.
pub fn skeleton(mc: &Multicomplex, n: usize) -> Multicomplex {
    let specs = mc
        .simplices()
        .iter()
        .zip(mc.to_specs())
        .filter(|(s, _)| s.dim() <= n)
        .map(|(_, spec)| spec)
        .collect();
    Multicomplex::from_specs(mc.vertex_names().iter().cloned(), specs)
        .expect("skeleton of a resolvable multicomplex is resolvable")
}

/// The special sphere of dimension `n`: one simplex on every proper subset of the `n + 1`
/// labels, and two top simplices (ids suffixed `#n` and `#s`) sharing their whole boundary.
pub fn special_sphere<S: AsRef<str>>(n: usize, labels: &[S]) -> Result<Multicomplex, McxError> {
    if n == 0 {
        return Err(McxError::Precondition("special spheres need dimension at least 1".into()));
    }
    if labels.len() != n + 1 {
        return Err(McxError::Precondition(format!(
            "special sphere of dimension {n} needs {} labels, got {}",
            n + 1,
            labels.len()
        )));
    }
    let mut names: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
    names.sort();
    if names.windows(2).any(|w| w[0] == w[1]) {
        return Err(McxError::DuplicateLabels);
    }

    let id_of = |subset: &[String]| subset.join(",");
    let facets_of = |subset: &[String]| -> Vec<(Vec<String>, String)> {
        if subset.len() == 1 {
            return Vec::new();
        }
        (0..subset.len())
            .map(|i| {
                let b: Vec<String> =
                    subset.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v.clone()).collect();
                let id = id_of(&b);
                (b, id)
            })
            .collect()
    };

    let mut specs = Vec::new();
    for k in 1..=n {
        for subset in itertools::Itertools::combinations(names.iter().cloned(), k) {
            specs.push(SimplexSpec { id: id_of(&subset), vertices: subset.clone(), facets: facets_of(&subset) });
        }
    }
    let top = id_of(&names);
    for suffix in ["#n", "#s"] {
        specs.push(SimplexSpec { id: format!("{top}{suffix}"), vertices: names.clone(), facets: facets_of(&names) });
    }
    Multicomplex::from_specs(names, specs)
}

/// `K × I` together with the embeddings of `K` onto the two ends.
#[derive(Debug, Clone)]
pub struct ProductWithInterval {
    pub product: Multicomplex,
    pub i0: SimplicialMap,
    pub i1: SimplicialMap,
}

/// Builds `K × I` by coning: for every simplex `ρ`, the boundary of `ρ × I` (both ends plus the
/// already triangulated `τ × I` for proper faces `τ`) is coned from an apex named `c[ρ]`.
///
/// Vertex names: `v@0`, `v@1` for the two copies of `v`, and `c[ρ]` for apices. Simplex ids:
/// `τ@0`, `τ@1` for the end copies, `c[ρ]` for an apex and `c[ρ]*F` for the cone over `F`.
pub fn product_with_interval(mc: &Multicomplex) -> Result<ProductWithInterval, McxError> {
    mc.ensure_valid()?;
    let mut builder = ProductBuilder { mc, records: BTreeMap::new(), boundary_memo: HashMap::new() };
    for s in 0..mc.num_simplices() {
        builder.level(s, 0);
        builder.level(s, 1);
        builder.cones(s);
    }

    let mut vertex_names: BTreeSet<String> = BTreeSet::new();
    let mut records: Vec<(usize, String, Record)> =
        builder.records.into_iter().map(|(id, r)| (r.vertices.len(), id, r)).collect();
    records.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let specs: Vec<SimplexSpec> = records
        .into_iter()
        .map(|(_, id, r)| {
            if r.vertices.len() == 1 {
                vertex_names.insert(r.vertices[0].clone());
            }
            SimplexSpec { id, vertices: r.vertices, facets: r.facets }
        })
        .collect();
    let product = Multicomplex::from_specs(vertex_names, specs)?;

    let embed = |end: u8| -> SimplicialMap {
        let vertex_map = mc
            .vertex_names()
            .iter()
            .map(|v| product.vertex_ix(&format!("{v}@{end}")).expect("end vertex exists"))
            .collect();
        let simplex_map = mc
            .simplices()
            .iter()
            .map(|s| product.simplex_ix(&format!("{}@{end}", s.id)).expect("end simplex exists"))
            .collect();
        SimplicialMap { vertex_map, simplex_map }
    };
    let i0 = embed(0);
    let i1 = embed(1);
    Ok(ProductWithInterval { product, i0, i1 })
}

#[derive(Debug, Clone)]
struct Record {
    vertices: Vec<String>,
    facets: Vec<(Vec<String>, String)>,
}

struct ProductBuilder<'a> {
    mc: &'a Multicomplex,
    records: BTreeMap<String, Record>,
    boundary_memo: HashMap<SimplexIx, Vec<String>>,
}

impl ProductBuilder<'_> {
    fn level(&mut self, s: SimplexIx, end: u8) -> String {
        let id = format!("{}@{end}", self.mc.simplex(s).id);
        if self.records.contains_key(&id) {
            return id;
        }
        let vertices: Vec<String> =
            self.mc.vertex_names_of(s).iter().map(|v| format!("{v}@{end}")).collect();
        let mut facets = Vec::new();
        let simplex = self.mc.simplex(s).clone();
        if simplex.vertices.len() > 1 {
            for (i, _) in simplex.vertices.iter().enumerate() {
                let f = self.mc.facet(s, i).expect("valid multicomplex has all facets");
                let fid = self.level(f, end);
                facets.push((self.records[&fid].vertices.clone(), fid));
            }
        }
        self.records.insert(id.clone(), Record { vertices, facets });
        id
    }

    fn apex(&self, s: SimplexIx) -> String {
        format!("c[{}]", self.mc.simplex(s).id)
    }

    /// Cone over `base` (a simplex of the boundary of `ρ × I`) from the apex of `ρ`.
    fn cone(&mut self, rho: SimplexIx, base: Option<&str>) -> String {
        let apex = self.apex(rho);
        let id = match base {
            None => apex.clone(),
            Some(b) => format!("{apex}*{b}"),
        };
        if self.records.contains_key(&id) {
            return id;
        }
        let record = match base {
            None => Record { vertices: vec![apex.clone()], facets: Vec::new() },
            Some(b) => {
                let base_rec = self.records[b].clone();
                let mut vertices = base_rec.vertices.clone();
                vertices.push(apex.clone());
                vertices.sort();
                let mut facets = vec![(base_rec.vertices.clone(), b.to_string())];
                if base_rec.facets.is_empty() {
                    let apex_id = self.cone(rho, None);
                    facets.push((vec![apex.clone()], apex_id));
                } else {
                    for (_, g) in &base_rec.facets {
                        let gid = self.cone(rho, Some(g));
                        facets.push((self.records[&gid].vertices.clone(), gid));
                    }
                }
                Record { vertices, facets }
            }
        };
        self.records.insert(id.clone(), record);
        id
    }

    /// Simplices of the triangulated boundary of `ρ × I`.
    fn boundary(&mut self, rho: SimplexIx) -> Vec<String> {
        if let Some(b) = self.boundary_memo.get(&rho) {
            return b.clone();
        }
        let mut out = Vec::new();
        for tau in self.mc.faces(rho) {
            out.push(self.level(tau, 0));
            out.push(self.level(tau, 1));
            if tau != rho {
                out.extend(self.cones(tau));
            }
        }
        out.sort();
        out.dedup();
        self.boundary_memo.insert(rho, out.clone());
        out
    }

    /// All simplices of `ρ × I` that contain the apex of `ρ`.
    fn cones(&mut self, rho: SimplexIx) -> Vec<String> {
        let mut out = vec![self.cone(rho, None)];
        for b in self.boundary(rho) {
            out.push(self.cone(rho, Some(&b)));
        }
        out
    }
}

/// The set `π(σ)` of simplices compatible with `σ`: same vertex set and the same facets (hence
/// the same faces on every proper subset).
pub fn compatible_simplices(mc: &Multicomplex, sigma: SimplexIx) -> Result<BTreeSet<SimplexIx>, McxError> {
    let s = mc.simplex(sigma);
    if s.dim() == 0 {
        return Err(McxError::Precondition(format!(
            "compatibility is defined for simplices of dimension at least 1; `{}` is a vertex",
            s.id
        )));
    }
    Ok(mc
        .simplices()
        .iter()
        .enumerate()
        .filter(|(_, t)| t.vertices == s.vertices && t.facets == s.facets)
        .map(|(i, _)| i)
        .collect())
}

/// The submulticomplex spanned by `ids`. With `close` the set is first closed under faces;
/// without it, a missing face is an error.
pub fn submulticomplex(
    mc: &Multicomplex,
    ids: &BTreeSet<SimplexIx>,
    close: bool,
) -> Result<Multicomplex, McxError> {
    let mut keep: BTreeSet<SimplexIx> = ids.clone();
    if close {
        for &s in ids {
            keep.extend(mc.faces(s));
        }
    } else {
        for &s in ids {
            for f in mc.faces(s) {
                if !keep.contains(&f) {
                    return Err(McxError::NotClosed {
                        simplex: mc.simplex(s).id.clone(),
                        face: mc.simplex(f).id.clone(),
                    });
                }
            }
            let nv = mc.simplex(s).vertices.len();
            if mc.faces(s).len() != (1usize << nv) - 1 {
                return Err(McxError::Invalid(format!("simplex `{}` has unresolved faces", mc.simplex(s).id)));
            }
        }
    }
    let specs = mc.to_specs();
    let vertices: BTreeSet<String> = keep
        .iter()
        .filter(|&&s| mc.simplex(s).vertices.len() == 1)
        .map(|&s| mc.vertex_name(mc.simplex(s).vertices[0]).to_string())
        .collect();
    let kept_specs = keep.iter().map(|&s| specs[s].clone()).collect();
    Multicomplex::from_specs(vertices, kept_specs)
}
