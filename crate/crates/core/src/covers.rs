//! Covers of the vertex set of a complex, their nerves and multiplicity, adapted colorings,
//! and the vanishing of invariant alternating cochains on simplices with a repeated color.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::actions::{ensure_valid, ActionError, GroupAction};
use crate::chain::{sort_sign, AlgebraicSimplex, Basis, ChainComplex, Cochain};
use crate::fixtures::simplicial_complex;
use crate::mcx::{Multicomplex, SimplexIx, VertexIx};
use crate::num::{q, Q};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown cover index `{0}`")]
    UnknownIndex(String),
    #[error("unknown simplex `{0}`")]
    UnknownSimplex(String),
    #[error("the host must be a simplicial complex")]
    NotSimplicial,
    #[error("the closed star of vertex `{0}` lies in no member of the cover")]
    NoAdmissibleIndex(String),
    #[error("witness for `{simplex}` is invalid: {reason}")]
    BadWitness { simplex: String, reason: String },
    #[error("the cochain is not alternating at {0}")]
    NotAlternating(String),
    #[error("the cochain is not invariant: element `{element}` changes its value at {simplex}")]
    NotInvariant { element: String, simplex: String },
    #[error("cochain must live on distinct-vertex tuples")]
    WrongBasis,
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// A finite family of vertex subsets `U_j` of a host complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    pub indices: Vec<String>,
    pub sets: Vec<BTreeSet<VertexIx>>,
    /// Reported, never interpreted.
    pub amenable: Vec<Option<bool>>,
    pub num_vertices: usize,
}

/// File form: `{host, sets: {index: [vertex, …]}, amenable: {index: bool}}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCover {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub host: Option<String>,
    pub sets: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub amenable: BTreeMap<String, bool>,
}

/// Numeric index names first, in numeric order, then the rest lexicographically.
fn index_order(a: &str, b: &str) -> std::cmp::Ordering {
    let key = |s: &str| (s.parse::<u64>().ok().map_or(1, |_| 0), s.parse::<u64>().unwrap_or(0), s.to_string());
    key(a).cmp(&key(b))
}

impl Cover {
    /// Members are listed in the given order, which is the order used to pick least indices.
    pub fn new(num_vertices: usize, members: Vec<(String, BTreeSet<VertexIx>)>) -> Self {
        let amenable = vec![None; members.len()];
        let (indices, sets) = members.into_iter().unzip();
        Self { indices, sets, amenable, num_vertices }
    }

    pub fn from_raw(raw: &RawCover, host: &Multicomplex) -> Result<Self, CoverError> {
        let mut names: Vec<&String> = raw.sets.keys().collect();
        names.sort_by(|a, b| index_order(a, b));
        let mut members = Vec::with_capacity(names.len());
        for name in &names {
            let set = raw.sets[*name]
                .iter()
                .map(|v| host.vertex_ix(v).ok_or_else(|| CoverError::UnknownVertex(v.clone())))
                .collect::<Result<BTreeSet<_>, _>>()?;
            members.push(((*name).clone(), set));
        }
        if let Some(extra) = raw.amenable.keys().find(|k| !raw.sets.contains_key(*k)) {
            return Err(CoverError::UnknownIndex(extra.clone()));
        }
        let mut cover = Self::new(host.num_vertices(), members);
        cover.amenable = cover.indices.iter().map(|i| raw.amenable.get(i).copied()).collect();
        Ok(cover)
    }

    pub fn to_raw(&self, host: &Multicomplex, host_ref: Option<String>) -> RawCover {
        RawCover {
            host: host_ref,
            sets: self
                .indices
                .iter()
                .zip(&self.sets)
                .map(|(i, s)| (i.clone(), s.iter().map(|&v| host.vertex_name(v).to_string()).collect()))
                .collect(),
            amenable: self.indices.iter().zip(&self.amenable).filter_map(|(i, a)| a.map(|a| (i.clone(), a))).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Every vertex lies in some member.
    pub fn covers_everything(&self) -> bool {
        (0..self.num_vertices).all(|v| self.sets.iter().any(|s| s.contains(&v)))
    }

    /// Indices of the members containing `v`.
    pub fn members_at(&self, v: VertexIx) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.sets[j].contains(&v)).collect()
    }
}

/// Index sets with a common point, found by extending index sets while the running
/// intersection stays nonempty. Limited to `max_dim + 1` indices when given.
pub fn nerve_simplices(c: &Cover, max_dim: Option<usize>) -> Vec<Vec<usize>> {
    fn extend(
        c: &Cover,
        current: &mut Vec<usize>,
        meet: &BTreeSet<VertexIx>,
        limit: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(current.clone());
        if current.len() == limit {
            return;
        }
        let start = current.last().map_or(0, |&j| j + 1);
        for j in start..c.len() {
            let next: BTreeSet<VertexIx> = meet.intersection(&c.sets[j]).copied().collect();
            if !next.is_empty() {
                current.push(j);
                extend(c, current, &next, limit, out);
                current.pop();
            }
        }
    }
    let limit = max_dim.map_or(usize::MAX, |d| d + 1);
    let mut out = Vec::new();
    for j in 0..c.len() {
        if !c.sets[j].is_empty() && limit > 0 {
            extend(c, &mut vec![j], &c.sets[j], limit, &mut out);
        }
    }
    out
}

/// The nerve as a simplicial complex on the index names.
pub fn nerve(c: &Cover, max_dim: Option<usize>) -> Multicomplex {
    let tops: Vec<Vec<&str>> =
        nerve_simplices(c, max_dim).iter().map(|s| s.iter().map(|&j| c.indices[j].as_str()).collect()).collect();
    simplicial_complex(&tops)
}

/// The largest number of members sharing a point, counted point by point.
pub fn multiplicity(c: &Cover) -> usize {
    (0..c.num_vertices).map(|v| c.members_at(v).len()).max().unwrap_or(0)
}

/// `j(v)` for every vertex of the host, as an index into the cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<usize>,
}

/// Vertices of all simplices containing `v`.
pub fn closed_star(host: &Multicomplex, v: VertexIx) -> BTreeSet<VertexIx> {
    host.simplices().iter().filter(|s| s.vertices.contains(&v)).flat_map(|s| s.vertices.iter().copied()).collect()
}

/// Colors every vertex by the least index whose member contains its closed star.
pub fn coloring_adapted(host: &Multicomplex, c: &Cover) -> Result<Coloring, CoverError> {
    if !host.is_simplicial_complex() {
        return Err(CoverError::NotSimplicial);
    }
    let colors = (0..host.num_vertices())
        .map(|v| {
            let star = closed_star(host, v);
            (0..c.len())
                .find(|&j| star.is_subset(&c.sets[j]))
                .ok_or_else(|| CoverError::NoAdmissibleIndex(host.vertex_name(v).to_string()))
        })
        .collect::<Result<_, _>>()?;
    Ok(Coloring { colors })
}

/// Checks the adapted condition for an arbitrary coloring; returns the first offending vertex.
pub fn first_unadapted_vertex(host: &Multicomplex, c: &Cover, coloring: &Coloring) -> Option<VertexIx> {
    (0..host.num_vertices()).find(|&v| !closed_star(host, v).is_subset(&c.sets[coloring.colors[v]]))
}

/// An element fixing `simplex` that swaps two of its vertices and fixes the others.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub simplex: SimplexIx,
    pub element: usize,
    pub swap: (VertexIx, VertexIx),
}

/// File form: `{simplex id: {element, swap: [v, w]}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawWitness {
    pub element: String,
    pub swap: [String; 2],
}

pub fn witnesses_from_raw(
    raw: &BTreeMap<String, RawWitness>,
    mc: &Multicomplex,
    a: &GroupAction,
) -> Result<Vec<Witness>, CoverError> {
    raw.iter()
        .map(|(id, w)| {
            let simplex = mc.simplex_ix(id).ok_or_else(|| CoverError::UnknownSimplex(id.clone()))?;
            let element = a.group.element(&w.element).ok_or_else(|| ActionError::UnknownElement(w.element.clone()))?;
            let v = |n: &String| mc.vertex_ix(n).ok_or_else(|| CoverError::UnknownVertex(n.clone()));
            Ok(Witness { simplex, element, swap: (v(&w.swap[0])?, v(&w.swap[1])?) })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessedValue {
    pub label: AlgebraicSimplex,
    pub value: Q,
    /// `φ(g·s) = φ(s)`.
    pub invariant: bool,
    /// `φ(g·s) = −φ(s)`, since `g·s` is an odd reordering of `s`.
    pub alternating: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepeatedColorReport {
    pub values: Vec<WitnessedValue>,
    /// Simplices with a repeated color and no witness.
    pub unwitnessed: Vec<SimplexIx>,
    /// Simplices whose vertices all have distinct colors.
    pub unconstrained: Vec<SimplexIx>,
}

impl RepeatedColorReport {
    pub fn all_zero(&self) -> bool {
        self.values.iter().all(|v| v.value.is_zero())
    }
}

fn check_witness(mc: &Multicomplex, a: &GroupAction, coloring: &Coloring, w: &Witness, degree: usize) -> Result<(), String> {
    let s = mc.simplex(w.simplex);
    let (x, y) = w.swap;
    let m = &a.maps[w.element];
    if s.dim() != degree {
        return Err(format!("simplex has dimension {}, the cochain has degree {degree}", s.dim()));
    }
    if x == y || !s.vertices.contains(&x) || !s.vertices.contains(&y) {
        return Err("the swapped vertices must be two distinct vertices of the simplex".into());
    }
    if coloring.colors[x] != coloring.colors[y] {
        return Err("the swapped vertices have different colors".into());
    }
    if m.simplex_map[w.simplex] != w.simplex {
        return Err("the element does not fix the simplex".into());
    }
    if m.vertex_map[x] != y || m.vertex_map[y] != x {
        return Err("the element does not transpose the named vertices".into());
    }
    if s.vertices.iter().any(|&v| v != x && v != y && m.vertex_map[v] != v) {
        return Err("the element moves another vertex of the simplex".into());
    }
    Ok(())
}

/// Evaluates an invariant alternating cochain on every ordering of every witnessed simplex.
/// Each value satisfies `φ(s) = φ(g·s) = −φ(s)`, so it vanishes.
pub fn check_repeated_color_vanishing(
    mc: &Multicomplex,
    cc: &ChainComplex,
    phi: &Cochain,
    a: &GroupAction,
    coloring: &Coloring,
    witnesses: &[Witness],
) -> Result<RepeatedColorReport, CoverError> {
    ensure_valid(a, mc)?;
    if !matches!(cc.basis_kind(), Basis::Distinct | Basis::WithRepeats) {
        return Err(CoverError::WrongBasis);
    }
    let n = phi.degree;
    for s in cc.basis(n) {
        let Some(sign) = sort_sign(&s.vertices) else { continue };
        let mut sorted = s.vertices.clone();
        sorted.sort_unstable();
        if phi.value(s) != phi.value(&AlgebraicSimplex::new(s.simplex, sorted)) * q(sign) {
            return Err(CoverError::NotAlternating(cc.display_label(s)));
        }
        for g in 0..a.order() {
            if phi.value(&a.act_on_label(g, s)) != phi.value(s) {
                return Err(CoverError::NotInvariant { element: a.group.name(g).to_string(), simplex: cc.display_label(s) });
            }
        }
    }
    let mut values = Vec::new();
    let mut witnessed = BTreeSet::new();
    for w in witnesses {
        check_witness(mc, a, coloring, w, n)
            .map_err(|reason| CoverError::BadWitness { simplex: mc.simplex(w.simplex).id.clone(), reason })?;
        witnessed.insert(w.simplex);
        let verts = &mc.simplex(w.simplex).vertices;
        for tuple in itertools::Itertools::permutations(verts.iter().copied(), verts.len()) {
            let label = AlgebraicSimplex::new(w.simplex, tuple);
            let value = phi.value(&label);
            let image = phi.value(&a.act_on_label(w.element, &label));
            values.push(WitnessedValue { invariant: image == value, alternating: image == -&value, label, value });
        }
    }
    let mut unwitnessed = Vec::new();
    let mut unconstrained = Vec::new();
    for s in mc.simplices_of_dim(n) {
        let colors: BTreeSet<usize> = mc.simplex(s).vertices.iter().map(|&v| coloring.colors[v]).collect();
        if colors.len() == n + 1 {
            unconstrained.push(s);
        } else if !witnessed.contains(&s) {
            unwitnessed.push(s);
        }
    }
    Ok(RepeatedColorReport { values, unwitnessed, unconstrained })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::build_full_chain_complex;
    use crate::fixtures::{simplex, triangle_boundary};
    use crate::mcx::SimplicialMap;

    fn hexagon() -> Multicomplex {
        simplicial_complex(&[vec!["0", "1"], vec!["1", "2"], vec!["2", "3"], vec!["3", "4"], vec!["4", "5"], vec!["5", "0"]])
    }

    fn cover_of(mc: &Multicomplex, sets: &[(&str, &[&str])]) -> Cover {
        let raw = RawCover {
            host: None,
            sets: sets.iter().map(|(j, vs)| (j.to_string(), vs.iter().map(|v| v.to_string()).collect())).collect(),
            amenable: BTreeMap::new(),
        };
        Cover::from_raw(&raw, mc).unwrap()
    }

    #[test]
    fn three_arcs_on_a_hexagon() {
        let mc = hexagon();
        let c = cover_of(&mc, &[("0", &["0", "1", "2"]), ("1", &["2", "3", "4"]), ("2", &["4", "5", "0"])]);
        let n = nerve(&c, None);
        assert_eq!((n.count_of_dim(0), n.count_of_dim(1), n.count_of_dim(2)), (3, 3, 0));
        assert_eq!(multiplicity(&c), 2);
        assert!(c.covers_everything());
    }

    #[test]
    fn small_nerves() {
        let mc = hexagon();
        let whole = cover_of(&mc, &[("0", &["0", "1", "2", "3", "4", "5"])]);
        assert_eq!(nerve(&whole, None).num_simplices(), 1);
        let nested = cover_of(&mc, &[("0", &["0"]), ("1", &["0", "1"])]);
        assert_eq!(nerve(&nested, None).dim(), Some(1));
        let disjoint = cover_of(&mc, &[("0", &["0", "1", "2"]), ("1", &["3", "4", "5"])]);
        assert_eq!(multiplicity(&disjoint), 1);
        assert_eq!(nerve(&disjoint, None).dim(), Some(0));
        let triple = cover_of(&mc, &[("0", &["0"]), ("1", &["0"]), ("2", &["0"])]);
        assert_eq!(nerve(&triple, Some(1)).dim(), Some(1));
    }

    #[test]
    fn index_names_sort_numerically() {
        let mc = hexagon();
        let c = cover_of(&mc, &[("10", &["0"]), ("2", &["0"]), ("b", &["0"]), ("a", &["0"])]);
        assert_eq!(c.indices, vec!["2", "10", "a", "b"]);
    }

    #[test]
    fn adapted_colorings() {
        let tri = triangle_boundary();
        let all: Vec<&str> = tri.vertex_names().iter().map(String::as_str).collect();
        let c = cover_of(&tri, &[("0", &all)]);
        assert_eq!(coloring_adapted(&tri, &c).unwrap().colors, vec![0; 3]);

        let mc = hexagon();
        let stars: Vec<(String, Vec<String>)> = (0..6)
            .map(|i| (i.to_string(), [(i + 5) % 6, i, (i + 1) % 6].iter().map(|v| v.to_string()).collect()))
            .collect();
        let raw = RawCover { host: None, sets: stars.into_iter().collect(), amenable: BTreeMap::new() };
        let c = Cover::from_raw(&raw, &mc).unwrap();
        let coloring = coloring_adapted(&mc, &c).unwrap();
        for v in 0..6 {
            assert_eq!(c.indices[coloring.colors[v]], mc.vertex_name(v));
        }
        assert_eq!(first_unadapted_vertex(&mc, &c, &coloring), None);

        let coarse = cover_of(&mc, &[("0", &["0", "1", "2", "3"]), ("1", &["3", "4", "5", "0"])]);
        assert_eq!(coloring_adapted(&mc, &coarse), Err(CoverError::NoAdmissibleIndex("0".into())));
    }

    /// `S₂` swapping vertices `0` and `1` of a triangle.
    fn swap01(mc: &Multicomplex) -> GroupAction {
        let mut g = SimplicialMap::identity(mc);
        g.vertex_map.swap(0, 1);
        for s in 0..mc.num_simplices() {
            let image: Vec<usize> = {
                let mut v: Vec<usize> = mc.simplex(s).vertices.iter().map(|&v| g.vertex_map[v]).collect();
                v.sort_unstable();
                v
            };
            g.simplex_map[s] = mc.simplices_on(&image)[0];
        }
        GroupAction::cyclic(&g, 2, mc)
    }

    #[test]
    fn repeated_colors_force_zero() {
        let mc = simplex(2);
        let cc = build_full_chain_complex(&mc, 2, Basis::Distinct).unwrap();
        let a = swap01(&mc);
        let coloring = Coloring { colors: vec![0, 0, 1] };
        let top = mc.simplices_of_dim(2).next().unwrap();
        let witness = Witness { simplex: top, element: 1, swap: (0, 1) };
        // The zero cochain is the only invariant alternating 2-cochain here.
        let phi = Cochain::zero(2);
        let r = check_repeated_color_vanishing(&mc, &cc, &phi, &a, &coloring, &[witness.clone()]).unwrap();
        assert_eq!(r.values.len(), 6);
        assert!(r.all_zero() && r.values.iter().all(|v| v.invariant && v.alternating));
        assert!(r.unwitnessed.is_empty());

        let mut bad = Cochain::zero(2);
        for t in cc.basis(2) {
            bad.set(t.clone(), q(sort_sign(&t.vertices).unwrap()));
        }
        let err = check_repeated_color_vanishing(&mc, &cc, &bad, &a, &coloring, &[witness.clone()]).unwrap_err();
        assert!(matches!(err, CoverError::NotInvariant { .. }));

        let wrong = Witness { swap: (0, 2), ..witness };
        let err = check_repeated_color_vanishing(&mc, &cc, &phi, &a, &coloring, &[wrong]).unwrap_err();
        assert!(matches!(err, CoverError::BadWitness { .. }));

        let distinct = Coloring { colors: vec![0, 1, 2] };
        let r = check_repeated_color_vanishing(&mc, &cc, &phi, &a, &distinct, &[]).unwrap();
        assert_eq!(r.unconstrained, vec![top]);
    }
}
