//! Local diffusion on a truncated locally finite action.
//!
//! The set is a finite list of orbits `Λ_s = ℤ/n_s`, with points `[s, x]`. Each subgroup `Γ_s`
//! is `ℤ` or a finite cyclic group `ℤ/m`, and its generator translates orbit `t` by a speed
//! `c_{s,t}`. Every subgroup preserves every orbit, and `Γ_s` must be transitive on `Λ_s`.
//! Asymptotic disjointness can only be checked on the enumerated orbits.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{convolve_by, diffuse_to_epsilon, ActionOnSet, DiffusionError, Element, GroupModel, Measure, Point, SetKind, SparseFunction};
use crate::actions::FiniteGroup;
use crate::num::{format_q, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupAction {
    /// `None` for `ℤ`, `Some(m)` for `ℤ/m`.
    pub order: Option<u64>,
    /// Orbit index to translation speed; orbits not listed are fixed.
    pub speeds: BTreeMap<usize, i64>,
}

impl SubgroupAction {
    pub fn model(&self) -> GroupModel {
        match self.order {
            None => GroupModel::FreeAbelian(1),
            Some(m) => GroupModel::Finite(FiniteGroup::cyclic(m as usize)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocallyFiniteAction {
    pub orbit_sizes: Vec<i64>,
    pub subgroups: Vec<SubgroupAction>,
}

impl LocallyFiniteAction {
    pub fn new(orbit_sizes: Vec<i64>, subgroups: Vec<SubgroupAction>) -> Result<Self, DiffusionError> {
        let a = Self { orbit_sizes, subgroups };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<(), DiffusionError> {
        let bad = |m: String| Err(DiffusionError::InvalidAction(m));
        if self.subgroups.len() != self.orbit_sizes.len() {
            return bad("one subgroup per orbit is required".into());
        }
        if let Some(s) = self.orbit_sizes.iter().position(|&n| n < 1) {
            return bad(format!("orbit {s} is empty"));
        }
        for (s, g) in self.subgroups.iter().enumerate() {
            if g.order == Some(0) {
                return bad(format!("subgroup {s} has order 0"));
            }
            for (&t, &c) in &g.speeds {
                let Some(&n) = self.orbit_sizes.get(t) else {
                    return bad(format!("subgroup {s} moves unknown orbit {t}"));
                };
                if let Some(m) = g.order {
                    if (m as i64 * c).rem_euclid(n) != 0 {
                        return bad(format!("ℤ/{m} cannot translate orbit {t} of size {n} by {c}"));
                    }
                }
            }
            let own = g.speeds.get(&s).copied().unwrap_or(0);
            if own.gcd(&self.orbit_sizes[s]) != 1 {
                return bad(format!("subgroup {s} is not transitive on orbit {s}"));
            }
        }
        Ok(())
    }

    pub fn num_orbits(&self) -> usize {
        self.orbit_sizes.len()
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.len() == 2 && p[0] >= 0 && (p[0] as usize) < self.num_orbits() && (0..self.orbit_sizes[p[0] as usize]).contains(&p[1])
    }

    /// `g · [t, x]` for `g ∈ Γ_s`.
    pub fn act(&self, s: usize, g: &Element, p: &Point) -> Point {
        let t = p[0] as usize;
        match self.subgroups[s].speeds.get(&t) {
            Some(&c) => vec![p[0], (p[1] + g[0] * c).rem_euclid(self.orbit_sizes[t])],
            None => p.clone(),
        }
    }

    fn moved_orbits(&self, s: usize) -> impl Iterator<Item = usize> + '_ {
        self.subgroups[s].speeds.iter().filter(move |(&t, &c)| c.rem_euclid(self.orbit_sizes[t]) != 0).map(|(&t, _)| t)
    }

    /// Least `k > s` such that no `Γ_{s′}` with `s′ ≥ k` touches `Λ_s` or the orbits moved by
    /// `Γ_s`, among the enumerated subgroups.
    pub fn horizon(&self, s: usize) -> usize {
        let mut touched: Vec<usize> = self.moved_orbits(s).collect();
        touched.push(s);
        (s + 1..self.num_orbits())
            .rev()
            .find(|&i| self.moved_orbits(i).any(|t| touched.contains(&t)))
            .map_or(s + 1, |i| i + 1)
    }

    /// `Γ_s` acting on `Λ_s` alone, relabelled so that the generator moves by one.
    fn restricted(&self, s: usize) -> (ActionOnSet, i64) {
        let n = self.orbit_sizes[s];
        let c = self.subgroups[s].speeds[&s];
        let inv = if n == 1 { 0 } else { modular_inverse(c.rem_euclid(n), n) };
        let action = match self.subgroups[s].order {
            None => ActionOnSet { group: GroupModel::FreeAbelian(1), kind: SetKind::Modular(vec![n]) },
            Some(m) => {
                let table = (0..m as usize).map(|k| (0..n as usize).map(|x| (x + k) % n as usize).collect()).collect();
                let points = (0..n).map(|x| x.to_string()).collect();
                ActionOnSet { group: self.subgroups[s].model(), kind: SetKind::Table { points, table } }
            }
        };
        (action, inv)
    }
}

fn modular_inverse(a: i64, n: i64) -> i64 {
    let e = a.extended_gcd(&n);
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(n)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalDiffusion {
    pub output: SparseFunction,
    /// `μ_s`, supported in `Γ_s`.
    pub measures: Vec<Measure>,
    /// `k(s)` computed on the enumerated range.
    pub horizons: Vec<usize>,
    /// Number of enumerated orbits: asymptotic disjointness is only known up to here.
    pub enumerated_orbits: usize,
    pub orbit_norms: Vec<Q>,
    pub orbit_sums: Vec<Q>,
    pub sums_preserved: bool,
    /// `‖f̄|Λ_s‖₁ ≤ ε_s` for every `s ≥ s̄`.
    pub within_budget: bool,
}

fn orbit_totals(a: &LocallyFiniteAction, f: &SparseFunction) -> (Vec<Q>, Vec<Q>) {
    let mut norms = vec![Q::zero(); a.num_orbits()];
    let mut sums = vec![Q::zero(); a.num_orbits()];
    for (p, v) in f.values() {
        let s = p[0] as usize;
        norms[s] += v.abs();
        sums[s] += v;
    }
    (norms, sums)
}

/// Builds `μ_s` one orbit at a time: uniform for `s < s̄`, and for `s ≥ s̄` a diffusion of
/// `f_{s−1}|Λ_s` along `Γ_s ↷ Λ_s` with budget `ε_s`. Entries of `eps` below `s̄` are ignored.
pub fn local_diffuse(
    a: &LocallyFiniteAction,
    f: &SparseFunction,
    eps: &[Q],
    s_bar: usize,
) -> Result<LocalDiffusion, DiffusionError> {
    if eps.len() != a.num_orbits() {
        return Err(DiffusionError::Precondition(format!("expected {} budgets, got {}", a.num_orbits(), eps.len())));
    }
    if eps[s_bar.min(eps.len())..].iter().any(|e| !e.is_positive()) {
        return Err(DiffusionError::NonPositiveEpsilon);
    }
    if let Some(p) = f.values().keys().find(|p| !a.contains(p)) {
        return Err(DiffusionError::NotAPoint(format!("{p:?}")));
    }
    let (_, initial_sums) = orbit_totals(a, f);
    if let Some(s) = (s_bar..a.num_orbits()).find(|&s| !initial_sums[s].is_zero()) {
        return Err(DiffusionError::NonzeroOrbitSum { orbit: s.to_string(), sum: format_q(&initial_sums[s]) });
    }
    let mut current = f.clone();
    let mut measures = Vec::with_capacity(a.num_orbits());
    for s in 0..a.num_orbits() {
        let mu = if s < s_bar {
            match a.subgroups[s].model() {
                GroupModel::FreeAbelian(_) => Measure::uniform((0..a.orbit_sizes[s]).map(|k| vec![k])),
                g => Measure::uniform(g.elements().expect("finite")),
            }
        } else {
            let (restricted, inv) = a.restricted(s);
            let n = a.orbit_sizes[s];
            let local = SparseFunction::new(
                current.values().iter().filter(|(p, _)| p[0] as usize == s).map(|(p, v)| (vec![(p[1] * inv).rem_euclid(n)], v.clone())),
            );
            let d = diffuse_to_epsilon(&restricted, &local, &eps[s])?;
            if !d.certified {
                return Err(DiffusionError::Precondition(format!("diffusion bound failed on orbit {s}")));
            }
            d.measure
        };
        current = convolve_by(&mu, &current, |g, p| a.act(s, g, p));
        measures.push(mu);
    }
    let (orbit_norms, orbit_sums) = orbit_totals(a, &current);
    let within_budget = (s_bar..a.num_orbits()).all(|s| orbit_norms[s] <= eps[s]);
    Ok(LocalDiffusion {
        output: current,
        measures,
        horizons: (0..a.num_orbits()).map(|s| a.horizon(s)).collect(),
        enumerated_orbits: a.num_orbits(),
        sums_preserved: orbit_sums == initial_sums,
        orbit_norms,
        orbit_sums,
        within_budget,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{q, q_frac};

    fn integers(speeds: &[(usize, i64)]) -> SubgroupAction {
        SubgroupAction { order: None, speeds: speeds.iter().copied().collect() }
    }

    fn dipole(s: i64, x: i64, y: i64) -> SparseFunction {
        SparseFunction::new([(vec![s, x], q(1)), (vec![s, y], q(-1))])
    }

    #[test]
    fn disjoint_supports_diffuse_independently() {
        let a = LocallyFiniteAction::new(vec![50, 40], vec![integers(&[(0, 1)]), integers(&[(1, 3)])]).unwrap();
        let f = SparseFunction::new(dipole(0, 0, 1).values().clone().into_iter().chain(dipole(1, 5, 2).values().clone()));
        let eps = vec![q_frac(1, 2), q_frac(1, 3)];
        let both = local_diffuse(&a, &f, &eps, 0).unwrap();
        for s in 0..2 {
            let single = local_diffuse(&a, &f.restrict(|p| p[0] == s as i64), &eps, 0).unwrap();
            assert_eq!(single.output.restrict(|p| p[0] == s as i64), both.output.restrict(|p| p[0] == s as i64));
        }
        assert!(both.within_budget && both.sums_preserved);
        assert_eq!(both.horizons, vec![1, 2]);
    }

    #[test]
    fn finite_subgroup_flattens_its_orbit() {
        let g = SubgroupAction { order: Some(6), speeds: BTreeMap::from([(0, 1)]) };
        let a = LocallyFiniteAction::new(vec![6], vec![g]).unwrap();
        let f = SparseFunction::new([(vec![0, 0], q(3)), (vec![0, 4], q(-2)), (vec![0, 5], q(-1))]);
        let out = local_diffuse(&a, &f, &[q_frac(1, 100)], 0).unwrap();
        assert!(out.output.is_zero());
    }

    #[test]
    fn overlapping_supports_respect_budgets() {
        // Γ_1 also shifts orbit 0, so it can spoil the work of Γ_0 only without increasing norms.
        let a = LocallyFiniteAction::new(
            vec![30, 20, 25],
            vec![integers(&[(0, 1), (1, 2)]), integers(&[(1, 1), (0, 7)]), integers(&[(2, 2)])],
        )
        .unwrap();
        let f = SparseFunction::new(
            [dipole(0, 3, 17), dipole(1, 0, 9), dipole(2, 1, 2)].iter().flat_map(|d| d.values().clone()),
        );
        let eps: Vec<Q> = (0..3).map(|s| q_frac(1, s + 2)).collect();
        let out = local_diffuse(&a, &f, &eps, 0).unwrap();
        assert!(out.within_budget && out.sums_preserved);
        assert_eq!(out.horizons, vec![2, 2, 3]);
    }

    #[test]
    fn orbits_below_threshold_keep_their_sums() {
        let a = LocallyFiniteAction::new(vec![4, 8], vec![integers(&[(0, 1)]), integers(&[(1, 3)])]).unwrap();
        let f = SparseFunction::new([(vec![0, 1], q(5)), (vec![1, 0], q(2)), (vec![1, 7], q(-2))]);
        let out = local_diffuse(&a, &f, &[q(1), q_frac(1, 4)], 1).unwrap();
        assert_eq!(out.orbit_sums[0], q(5));
        assert!(out.orbit_norms[1] <= q_frac(1, 4));
        let err = local_diffuse(&a, &f, &[q(1), q(1)], 0).unwrap_err();
        assert!(matches!(err, DiffusionError::NonzeroOrbitSum { ref orbit, .. } if orbit == "0"));
    }

    #[test]
    fn invalid_orbit_structures() {
        assert!(LocallyFiniteAction::new(vec![4], vec![integers(&[(0, 2)])]).is_err());
        let g = SubgroupAction { order: Some(3), speeds: BTreeMap::from([(0, 1)]) };
        assert!(LocallyFiniteAction::new(vec![4], vec![g]).is_err());
        assert!(LocallyFiniteAction::new(vec![4], vec![integers(&[(1, 1)])]).is_err());
    }
}
