//! Finite group actions on multicomplexes.
//!
//! A group is an explicit multiplication table with `table[g][h] = gh`. An action assigns a
//! simplicial automorphism `ρ(g)` to every element with `ρ(gh) = ρ(g) ∘ ρ(h)`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::chain::{project_to_reduced, AlgebraicSimplex, Basis, Chain, ChainComplex, ChainError, Cochain, Ring};
use crate::lp::independent_columns;
use crate::mcx::{
    validate_simplicial_map, McxError, Multicomplex, RawSimplicialMap, SimplexIx, SimplexSpec, SimplicialMap,
    ValidationReport, Violation,
};
use crate::num::{q, Q};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("group table is not square over the element list: {0}")]
    Shape(String),
    #[error("unknown group element `{0}`")]
    UnknownElement(String),
    #[error(
        "element `{element}` moves vertex `{vertex}`; the quotient of an action that is not trivial on \
         vertices is not a multicomplex, since edges of a multicomplex have distinct endpoints"
    )]
    NotZeroTrivial { element: String, vertex: String },
    #[error("invalid action: {0}")]
    Invalid(ValidationReport),
    #[error("quotient failed to be a multicomplex: {0}")]
    Internal(String),
    #[error(transparent)]
    Mcx(#[from] McxError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Checks only that the table is square with entries in range; the group axioms are
    /// checked by [`validate_action`].
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, ActionError> {
        let n = names.len();
        if n == 0 {
            return Err(ActionError::Shape("no elements".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(ActionError::Shape(format!("expected a {n}×{n} table of element indices")));
        }
        if names.iter().collect::<BTreeSet<_>>().len() != n {
            return Err(ActionError::Shape("duplicate element names".into()));
        }
        Ok(Self { names, table })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `ℤ/n` with elements `"0"`, …, `"n-1"`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self { names, table }
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn identity(&self) -> Option<usize> {
        (0..self.order()).find(|&e| (0..self.order()).all(|g| self.mul(e, g) == g && self.mul(g, e) == g))
    }

    pub fn inverse(&self, g: usize) -> Option<usize> {
        let e = self.identity()?;
        (0..self.order()).find(|&h| self.mul(g, h) == e && self.mul(h, g) == e)
    }

    fn axiom_violations(&self) -> Vec<Violation> {
        let n = self.order();
        let mut out = Vec::new();
        'assoc: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        out.push(Violation {
                            rule: "associativity",
                            ids: vec![self.names[a].clone(), self.names[b].clone(), self.names[c].clone()],
                            message: format!("({0}{1}){2} ≠ {0}({1}{2})", self.names[a], self.names[b], self.names[c]),
                        });
                        break 'assoc;
                    }
                }
            }
        }
        match self.identity() {
            None => out.push(Violation { rule: "identity", ids: vec![], message: "no two-sided identity".into() }),
            Some(_) => {
                for g in 0..n {
                    if self.inverse(g).is_none() {
                        out.push(Violation {
                            rule: "inverse",
                            ids: vec![self.names[g].clone()],
                            message: format!("`{}` has no inverse", self.names[g]),
                        });
                    }
                }
            }
        }
        out
    }
}

/// A group acting on a multicomplex through simplicial automorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    pub group: FiniteGroup,
    /// `maps[g] = ρ(g)`.
    pub maps: Vec<SimplicialMap>,
}

/// File form: `{elements, table, maps: {element: {vertex_map, simplex_map}}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawGroupAction {
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
    pub maps: BTreeMap<String, RawSimplicialMap>,
}

impl GroupAction {
    pub fn trivial(mc: &Multicomplex) -> Self {
        Self { group: FiniteGroup::trivial(), maps: vec![SimplicialMap::identity(mc)] }
    }

    /// `ℤ/n` acting through the powers of `generator`.
    pub fn cyclic(generator: &SimplicialMap, n: usize, mc: &Multicomplex) -> Self {
        let mut maps = vec![SimplicialMap::identity(mc)];
        for k in 1..n {
            maps.push(generator.after(&maps[k - 1]));
        }
        Self { group: FiniteGroup::cyclic(n), maps }
    }

    pub fn from_raw(raw: &RawGroupAction, mc: &Multicomplex) -> Result<Self, ActionError> {
        let ix = |name: &String| raw.elements.iter().position(|e| e == name).ok_or_else(|| ActionError::UnknownElement(name.clone()));
        let table = raw
            .table
            .iter()
            .map(|row| row.iter().map(ix).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let group = FiniteGroup::new(raw.elements.clone(), table)?;
        if let Some(extra) = raw.maps.keys().find(|k| group.element(k).is_none()) {
            return Err(ActionError::UnknownElement(extra.clone()));
        }
        let maps = raw
            .elements
            .iter()
            .map(|e| {
                let m = raw.maps.get(e).ok_or_else(|| ActionError::UnknownElement(e.clone()))?;
                Ok(SimplicialMap::from_raw(m, mc, mc)?)
            })
            .collect::<Result<Vec<_>, ActionError>>()?;
        Ok(Self { group, maps })
    }

    pub fn to_raw(&self, mc: &Multicomplex) -> RawGroupAction {
        let g = &self.group;
        RawGroupAction {
            elements: g.names.clone(),
            table: g.table.iter().map(|row| row.iter().map(|&x| g.names[x].clone()).collect()).collect(),
            maps: (0..g.order()).map(|i| (g.names[i].clone(), self.maps[i].to_raw(mc, mc))).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    fn inverse_or_panic(&self, g: usize) -> usize {
        self.group.inverse(g).expect("validated group")
    }

    /// `g · (σ, (v₀,…)) = (ρ(g)σ, (ρ(g)v₀,…))`.
    pub fn act_on_label(&self, g: usize, s: &AlgebraicSimplex) -> AlgebraicSimplex {
        let m = &self.maps[g];
        AlgebraicSimplex::new(m.simplex_map[s.simplex], s.vertices.iter().map(|&v| m.vertex_map[v]).collect())
    }

    /// Linear extension to chains in the given basis. In the reduced and alternating bases the
    /// image tuple is reordered increasingly, with the sign of the permutation.
    pub fn act_on_chain(&self, g: usize, c: &Chain, basis: Basis) -> Chain {
        let mut out = Chain::zero(c.degree, c.ring);
        for (s, x) in c.terms() {
            out = out.plus(&Chain::single(c.ring, self.act_on_label(g, s), x.clone()));
        }
        match basis {
            Basis::Reduced | Basis::Alternating => project_to_reduced(&out),
            Basis::Distinct | Basis::WithRepeats => out,
        }
    }

    /// Every element fixes every vertex.
    pub fn is_zero_trivial(&self) -> bool {
        self.first_moved_vertex().is_none()
    }

    fn first_moved_vertex(&self) -> Option<(usize, usize)> {
        self.maps.iter().enumerate().find_map(|(g, m)| m.vertex_map.iter().enumerate().find(|&(v, &w)| v != w).map(|(v, _)| (g, v)))
    }
}

/// Checks the group axioms, that every `ρ(g)` is a simplicial automorphism, and that `ρ` is a
/// homomorphism.
pub fn validate_action(a: &GroupAction, mc: &Multicomplex) -> Result<ValidationReport, ActionError> {
    let g = &a.group;
    if a.maps.len() != g.order() {
        return Err(ActionError::Shape(format!("{} maps for {} elements", a.maps.len(), g.order())));
    }
    let mut out = g.axiom_violations();
    for (i, m) in a.maps.iter().enumerate() {
        let r = validate_simplicial_map(m, mc, mc)?;
        let bijective = m.vertex_map.iter().collect::<BTreeSet<_>>().len() == mc.num_vertices()
            && m.simplex_map.iter().collect::<BTreeSet<_>>().len() == mc.num_simplices();
        if !r.ok() || !bijective {
            let mut message = format!("ρ({}) is not a simplicial automorphism", g.names[i]);
            if !r.ok() {
                message.push_str(&format!(": {}", r.report));
            }
            out.push(Violation { rule: "automorphism", ids: vec![g.names[i].clone()], message });
        }
    }
    for x in 0..g.order() {
        for y in 0..g.order() {
            if a.maps[g.mul(x, y)] != a.maps[x].after(&a.maps[y]) {
                out.push(Violation {
                    rule: "homomorphism",
                    ids: vec![g.names[x].clone(), g.names[y].clone()],
                    message: format!("ρ({0}{1}) ≠ ρ({0}) ∘ ρ({1})", g.names[x], g.names[y]),
                });
            }
        }
    }
    Ok(ValidationReport::from_violations(out))
}

pub(crate) fn ensure_valid(a: &GroupAction, mc: &Multicomplex) -> Result<(), ActionError> {
    let r = validate_action(a, mc)?;
    if r.ok {
        Ok(())
    } else {
        Err(ActionError::Invalid(r))
    }
}

/// `K/Γ` with its projection `K → K/Γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub multicomplex: Multicomplex,
    pub projection: SimplicialMap,
}

/// The quotient of a 0-trivial action: same vertices, one simplex per orbit, named after the
/// least id in the orbit.
pub fn quotient(a: &GroupAction, mc: &Multicomplex) -> Result<Quotient, ActionError> {
    ensure_valid(a, mc)?;
    if let Some((g, v)) = a.first_moved_vertex() {
        return Err(ActionError::NotZeroTrivial {
            element: a.group.names[g].clone(),
            vertex: mc.vertex_name(v).to_string(),
        });
    }
    let rep: Vec<SimplexIx> = (0..mc.num_simplices())
        .map(|s| {
            a.maps
                .iter()
                .map(|m| m.simplex_map[s])
                .min_by(|&x, &y| mc.simplex(x).id.cmp(&mc.simplex(y).id))
                .expect("nonempty group")
        })
        .collect();
    let reps: Vec<SimplexIx> = (0..mc.num_simplices()).filter(|&s| rep[s] == s).collect();
    let specs: Vec<SimplexSpec> = reps
        .iter()
        .map(|&s| {
            let simplex = mc.simplex(s);
            SimplexSpec {
                id: simplex.id.clone(),
                vertices: simplex.vertices.iter().map(|&v| mc.vertex_name(v).to_string()).collect(),
                facets: simplex
                    .facets
                    .iter()
                    .map(|(k, &f)| {
                        (k.iter().map(|&v| mc.vertex_name(v).to_string()).collect(), mc.simplex(rep[f]).id.clone())
                    })
                    .collect(),
            }
        })
        .collect();
    let quotient = Multicomplex::new_valid(mc.vertex_names().iter().cloned(), specs)
        .map_err(|e| ActionError::Internal(e.to_string()))?;
    let projection = SimplicialMap {
        vertex_map: (0..mc.num_vertices()).collect(),
        simplex_map: rep
            .iter()
            .map(|&r| quotient.simplex_ix(&mc.simplex(r).id).expect("representatives are kept"))
            .collect(),
    };
    Ok(Quotient { multicomplex: quotient, projection })
}

/// The degree-`k` basis of a chain complex split into orbits. Orbits are listed by their least
/// member in basis order, members in basis order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub degree: usize,
    pub orbits: Vec<Vec<AlgebraicSimplex>>,
}

/// Orbits of the degree-`k` basis elements of `cc`. In the reduced and alternating bases a
/// label and its negative are the same basis element.
pub fn orbits(a: &GroupAction, cc: &ChainComplex, k: usize) -> Result<OrbitPartition, ActionError> {
    let basis = cc.basis(k);
    let mut seen = vec![false; basis.len()];
    let mut out = Vec::new();
    for i in 0..basis.len() {
        if seen[i] {
            continue;
        }
        let mut members = BTreeSet::new();
        for g in 0..a.order() {
            let image = a.act_on_chain(g, &Chain::single(Ring::Q, basis[i].clone(), q(1)), cc.basis_kind());
            for t in image.terms().keys() {
                let j = cc.index_of(k, t).ok_or_else(|| ChainError::NotInBasis(cc.display_label(t)))?;
                members.insert(j);
            }
        }
        for &j in &members {
            seen[j] = true;
        }
        out.push(members.into_iter().map(|j| basis[j].clone()).collect());
    }
    Ok(OrbitPartition { degree: k, orbits: out })
}

/// `A(φ)(s) = (1/|Γ|) Σ_g φ(g⁻¹ · s)`.
pub fn average_cochain(a: &GroupAction, cc: &ChainComplex, phi: &Cochain) -> Cochain {
    let n = phi.degree;
    let order = q(a.order() as i64);
    let mut out = Cochain::zero(n);
    for s in cc.basis(n) {
        let unit = Chain::single(Ring::Q, s.clone(), q(1));
        let total: Q = (0..a.order())
            .map(|g| phi.eval(&a.act_on_chain(a.inverse_or_panic(g), &unit, cc.basis_kind())))
            .sum();
        out.set(s.clone(), total / &order);
    }
    out
}

/// Dimensions of the cohomology of the Γ-invariant cochains of `cc` over ℚ, in degrees
/// `0..=max_degree` (which must be below the top degree of `cc`).
pub fn invariant_cohomology_dims(
    a: &GroupAction,
    mc: &Multicomplex,
    cc: &ChainComplex,
    max_degree: usize,
) -> Result<Vec<usize>, ActionError> {
    ensure_valid(a, mc)?;
    if max_degree >= cc.top_degree() {
        return Err(ChainError::DegreeOutOfRange(max_degree + 1).into());
    }
    // |Γ|·A(1_s) over orbit representatives spans the invariant cochains, with integer values.
    let invariant_basis = |n: usize| -> Vec<Cochain> {
        let scale = q(a.order() as i64);
        orbits(a, cc, n)
            .expect("basis is closed under the action")
            .orbits
            .iter()
            .map(|o| {
                let avg = average_cochain(a, cc, &Cochain::indicator(o[0].clone()));
                let mut c = Cochain::zero(n);
                for (s, x) in avg.values() {
                    c.set(s.clone(), x * &scale);
                }
                c
            })
            .filter(|c| !c.is_zero())
            .collect()
    };
    let to_column = |phi: &Cochain| -> Vec<(usize, i64)> {
        let v = cc.cochain_vector(phi).expect("basis labels");
        v.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.to_integer().try_into().expect("small integer values")))
            .collect()
    };
    let mut dims = Vec::new();
    let mut ranks = Vec::new();
    for n in 0..=max_degree + 1 {
        let basis = invariant_basis(n);
        let cols: Vec<Vec<(usize, i64)>> = basis.iter().map(to_column).collect();
        dims.push(independent_columns(cc.rank(n), &cols).len());
        if n <= max_degree {
            let images: Vec<Vec<(usize, i64)>> =
                basis.iter().map(|phi| to_column(&cc.coboundary(phi).expect("degree in range"))).collect();
            ranks.push(independent_columns(cc.rank(n + 1), &images).len());
        }
    }
    Ok((0..=max_degree).map(|n| dims[n] - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{build_full_chain_complex, build_reduced_chain_complex};
    use crate::fixtures;
    use crate::homology::homology;

    fn s1() -> Multicomplex {
        fixtures::circle()
    }

    use fixtures::{circle_antipodal as antipodal, circle_edge_swap as edge_swap};

    #[test]
    fn validation() {
        let mc = s1();
        assert!(validate_action(&GroupAction::trivial(&mc), &mc).unwrap().ok);
        assert!(validate_action(&edge_swap(&mc), &mc).unwrap().ok);
        assert!(validate_action(&antipodal(&mc), &mc).unwrap().ok);
        // A table where 1·1 = 1 breaks associativity together with the other entries.
        let r = validate_action(&fixtures::broken_composition(&mc), &mc).unwrap();
        assert!(r.has_rule("associativity"), "{r}");
        // Swapping only the vertices is not simplicial.
        let mut bad = SimplicialMap::identity(&mc);
        bad.vertex_map.swap(0, 1);
        let r = validate_action(&GroupAction::cyclic(&bad, 2, &mc), &mc).unwrap();
        assert!(r.has_rule("automorphism"));
        // Declared order 3 for an involution breaks the homomorphism property.
        let mut wrong = SimplicialMap::identity(&mc);
        wrong.simplex_map.swap(2, 3);
        let r = validate_action(&GroupAction::cyclic(&wrong, 3, &mc), &mc).unwrap();
        assert!(r.has_rule("homomorphism"));
    }

    #[test]
    fn quotients() {
        let mc = s1();
        assert!(edge_swap(&mc).is_zero_trivial());
        assert!(!antipodal(&mc).is_zero_trivial());
        assert!(GroupAction::trivial(&mc).is_zero_trivial());
        let q = quotient(&edge_swap(&mc), &mc).unwrap();
        assert_eq!((q.multicomplex.count_of_dim(0), q.multicomplex.count_of_dim(1)), (2, 1));
        let r = validate_simplicial_map(&q.projection, &mc, &q.multicomplex).unwrap();
        assert!(r.ok() && r.non_degenerate);
        let same = quotient(&GroupAction::trivial(&mc), &mc).unwrap();
        assert_eq!(same.multicomplex, mc);
        let err = quotient(&antipodal(&mc), &mc).unwrap_err();
        assert!(matches!(err, ActionError::NotZeroTrivial { .. }));
        assert!(err.to_string().contains("distinct endpoints"));
    }

    #[test]
    fn orbit_counts() {
        let mc = s1();
        let cc = build_full_chain_complex(&mc, 1, Basis::Distinct).unwrap();
        let trivial = orbits(&GroupAction::trivial(&mc), &cc, 1).unwrap();
        assert!(trivial.orbits.iter().all(|o| o.len() == 1));
        let swap = orbits(&edge_swap(&mc), &cc, 1).unwrap();
        assert_eq!(swap.orbits.iter().map(Vec::len).collect::<Vec<_>>(), vec![2, 2]);
        for o in &swap.orbits {
            assert_eq!(o[0].vertices, o[1].vertices);
        }
        // All permutations of the triangle's vertices act simply transitively on ordered edges.
        let tri = fixtures::triangle_boundary();
        let s3 = vertex_permutation_action(&tri, &all_permutations(3));
        assert!(validate_action(&s3, &tri).unwrap().ok);
        let cc = build_full_chain_complex(&tri, 1, Basis::Distinct).unwrap();
        assert_eq!(orbits(&s3, &cc, 1).unwrap().orbits.len(), 1);
    }

    fn all_permutations(n: usize) -> Vec<Vec<usize>> {
        use itertools::Itertools;
        (0..n).permutations(n).collect()
    }

    /// The action of a list of vertex permutations (closed under composition) on a simplicial
    /// complex.
    fn vertex_permutation_action(mc: &Multicomplex, perms: &[Vec<usize>]) -> GroupAction {
        let maps: Vec<SimplicialMap> = perms
            .iter()
            .map(|p| SimplicialMap {
                vertex_map: p.clone(),
                simplex_map: (0..mc.num_simplices())
                    .map(|s| {
                        let mut vs: Vec<usize> = mc.simplex(s).vertices.iter().map(|&v| p[v]).collect();
                        vs.sort_unstable();
                        mc.simplices_on(&vs)[0]
                    })
                    .collect(),
            })
            .collect();
        let table = (0..maps.len())
            .map(|g| (0..maps.len()).map(|h| maps.iter().position(|m| *m == maps[g].after(&maps[h])).unwrap()).collect())
            .collect();
        let group = FiniteGroup::new((0..maps.len()).map(|i| format!("g{i}")).collect(), table).unwrap();
        GroupAction { group, maps }
    }

    #[test]
    fn chains_and_averaging() {
        let mc = s1();
        let a = edge_swap(&mc);
        let cc = build_reduced_chain_complex(&mc, 1).unwrap();
        let e1 = cc.label("a,b#n", &["a", "b"]).unwrap();
        let e2 = cc.label("a,b#s", &["a", "b"]).unwrap();
        let c = Chain::from_terms(1, Ring::Z, [(e1.clone(), q(1)), (e2.clone(), q(-1))]).unwrap();
        assert_eq!(a.act_on_chain(0, &c, Basis::Reduced), c);
        assert_eq!(a.act_on_chain(1, &c, Basis::Reduced), c.neg());
        let avg = average_cochain(&a, &cc, &Cochain::indicator(e1.clone()));
        assert_eq!((avg.value(&e1), avg.value(&e2)), (q(1) / q(2), q(1) / q(2)));
        assert_eq!(average_cochain(&a, &cc, &avg), avg);
    }

    #[test]
    fn raw_round_trip() {
        let mc = s1();
        let a = edge_swap(&mc);
        let json = serde_json::to_string(&a.to_raw(&mc)).unwrap();
        let back = GroupAction::from_raw(&serde_json::from_str(&json).unwrap(), &mc).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn quotient_homology_matches_invariant_cochains() {
        let mc = s1();
        let a = edge_swap(&mc);
        let q = quotient(&a, &mc).unwrap();
        let hq = homology(&build_reduced_chain_complex(&q.multicomplex, 1).unwrap(), Ring::Q).betti_numbers();
        let cc = build_reduced_chain_complex(&mc, 2).unwrap();
        assert_eq!(invariant_cohomology_dims(&a, &mc, &cc, 1).unwrap(), hq);
    }
}
