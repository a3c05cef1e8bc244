//! Vanishing of a class by diffusing an alternating representative along a finite group.
//!
//! Chains live in the full complex with all tuples, so the action moves algebraic simplices
//! without sign changes and the chain module is `ℓ₀` of the algebraic simplices. Each orbit of
//! the support is diffused in turn with budget `ε/s`, where `s` is the number of orbits.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use super::{diffuse_to_epsilon, ActionOnSet, DiffusionError, GroupModel, Measure, SetKind, SparseFunction};
use crate::actions::{ensure_valid, GroupAction};
use crate::chain::{alternate, build_full_chain_complex, sort_sign, AlgebraicSimplex, Basis, Chain, ChainComplex, ChainError, Ring};
use crate::homology::{homology_in_degree, HomologyResult};
use crate::mcx::Multicomplex;
use crate::num::{format_q, q, Q};

/// How the odd-reordering hypothesis was met.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddPermutationCheck {
    /// Every simplex of the support is sent by some element to an odd reordering of itself.
    pub literal: bool,
    /// Simplices failing the literal condition, whose orbits were accepted because the
    /// coefficients of the alternated cycle sum to zero on them.
    pub via_orbit_sums: Vec<AlgebraicSimplex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPreservation {
    pub element: String,
    pub preserved: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToyVanish {
    pub complex: ChainComplex,
    pub alternated: Chain,
    pub odd_permutations: OddPermutationCheck,
    pub class_checks: Vec<ClassPreservation>,
    /// Orbits of the support, by least member.
    pub orbits: Vec<Vec<AlgebraicSimplex>>,
    pub measures: Vec<Measure>,
    /// The measure of the composite diffusion, `μ_s ⋆ … ⋆ μ_1`.
    pub total_measure: Measure,
    pub output: Chain,
    pub norm: Q,
    /// `∂b = c′ − z`.
    pub bounding: Chain,
    /// `∂b = c′ − z` and `‖c′‖₁ ≤ ε`, both checked directly.
    pub certified: bool,
}

fn act(a: &GroupAction, g: usize, c: &Chain) -> Chain {
    a.act_on_chain(g, c, Basis::WithRepeats)
}

fn odd_self_reordering(a: &GroupAction, s: &AlgebraicSimplex) -> bool {
    let own = sort_sign(&s.vertices);
    (0..a.order()).any(|g| {
        let t = a.act_on_label(g, s);
        let same_vertices = t.vertices.iter().collect::<BTreeSet<_>>() == s.vertices.iter().collect::<BTreeSet<_>>();
        t.simplex == s.simplex && same_vertices && own.zip(sort_sign(&t.vertices)).is_some_and(|(x, y)| x != y)
    })
}

fn label_orbits(a: &GroupAction, support: impl Iterator<Item = AlgebraicSimplex>) -> Vec<Vec<AlgebraicSimplex>> {
    let mut seen: BTreeSet<AlgebraicSimplex> = BTreeSet::new();
    let mut out = Vec::new();
    for s in support {
        if seen.contains(&s) {
            continue;
        }
        let orbit: BTreeSet<AlgebraicSimplex> = (0..a.order()).map(|g| a.act_on_label(g, &s)).collect();
        seen.extend(orbit.iter().cloned());
        out.push(orbit.into_iter().collect::<Vec<_>>());
    }
    out.sort();
    out
}

fn class_witness(h: &HomologyResult, c: &Chain) -> Result<Vec<String>, ChainError> {
    let d = h.degree(c.degree).ok_or(ChainError::DegreeOutOfRange(c.degree))?;
    Ok(d.free_coords(&h.complex().vector(c)?).iter().map(format_q).collect())
}

/// Replaces the cycle `z` by a homologous cycle of norm at most `ε`, provided every simplex of
/// the support of `alt z` has an orbit on which the coefficients cancel and every element
/// preserves `[z]` over ℚ.
pub fn toy_vanish(mc: &Multicomplex, a: &GroupAction, z: &Chain, eps: &Q) -> Result<ToyVanish, DiffusionError> {
    if !eps.is_positive() {
        return Err(DiffusionError::NonPositiveEpsilon);
    }
    ensure_valid(a, mc)?;
    let k = z.degree;
    let cc = build_full_chain_complex(mc, k + 1, Basis::WithRepeats)?;
    let z = z.to_ring(Ring::Q)?;
    if !cc.is_cycle(&z)? {
        return Err(ChainError::NotACycle.into());
    }
    let alt = alternate(&z)?;

    let orbits = label_orbits(a, alt.terms().keys().cloned());
    let mut via_orbit_sums = Vec::new();
    for s in alt.terms().keys() {
        if !odd_self_reordering(a, s) {
            via_orbit_sums.push(s.clone());
        }
    }
    for orbit in &orbits {
        let sum: Q = orbit.iter().map(|s| alt.coeff(s)).sum();
        if !sum.is_zero() {
            return Err(DiffusionError::OddPermutation { orbit: cc.display_label(&orbit[0]), sum: format_q(&sum) });
        }
    }
    let odd_permutations = OddPermutationCheck { literal: via_orbit_sums.is_empty(), via_orbit_sums };

    let h = homology_in_degree(&cc, k, Ring::Q)?;
    let mut class_checks = Vec::with_capacity(a.order());
    for g in 0..a.order() {
        let gz = act(a, g, &z);
        if !h.are_homologous(&gz, &z)? {
            return Err(DiffusionError::ClassNotPreserved {
                element: a.group.name(g).to_string(),
                class_z: class_witness(&h, &z)?,
                class_gz: class_witness(&h, &gz)?,
            });
        }
        class_checks.push(ClassPreservation { element: a.group.name(g).to_string(), preserved: true });
    }

    let group = GroupModel::Finite(a.group.clone());
    let eta = if orbits.is_empty() { eps.clone() } else { eps / q(orbits.len() as i64) };
    let mut current = alt.clone();
    let mut measures = Vec::with_capacity(orbits.len());
    let mut total = Measure::dirac(group.identity());
    for orbit in &orbits {
        let index: BTreeMap<&AlgebraicSimplex, usize> = orbit.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let table = (0..a.order()).map(|g| orbit.iter().map(|s| index[&a.act_on_label(g, s)]).collect()).collect();
        let points = orbit.iter().map(|s| cc.display_label(s)).collect();
        let restricted = ActionOnSet::new(group.clone(), SetKind::Table { points, table })?;
        let local = SparseFunction::new(orbit.iter().enumerate().map(|(i, s)| (vec![i as i64], current.coeff(s))));
        let d = diffuse_to_epsilon(&restricted, &local, &eta)?;
        let mut next = Chain::zero(k, Ring::Q);
        for (g, w) in d.measure.weights() {
            next = next.add_scaled(&act(a, g[0] as usize, &current), w);
        }
        current = next;
        total = d.measure.after(&total, &group);
        measures.push(d.measure);
    }

    // c′ = Σ_h ν(h)·h·alt z, so c′ − z = (alt z − z) + Σ_h ν(h)(h·alt z − alt z).
    let mut recombined = Chain::zero(k, Ring::Q);
    let mut bounding = h.solve_boundary(&alt.minus(&z))?.ok_or_else(|| internal("alt z − z is not a boundary"))?;
    for (g, w) in total.weights() {
        let moved = act(a, g[0] as usize, &alt);
        recombined = recombined.add_scaled(&moved, w);
        let b = h.solve_boundary(&moved.minus(&alt))?.ok_or_else(|| internal("h·alt z − alt z is not a boundary"))?;
        bounding = bounding.add_scaled(&b, w);
    }
    if recombined != current {
        return Err(internal("sequential diffusion disagrees with the composite measure"));
    }
    let norm = current.l1_norm();
    let certified = cc.boundary(&bounding)? == current.minus(&z) && norm <= *eps;
    Ok(ToyVanish {
        complex: cc,
        alternated: alt,
        odd_permutations,
        class_checks,
        orbits,
        measures,
        total_measure: total,
        output: current,
        norm,
        bounding,
        certified,
    })
}

fn internal(m: &str) -> DiffusionError {
    DiffusionError::Precondition(format!("internal inconsistency: {m}"))
}
