//! JSON file forms of chains, cochains, measures, functions and actions on sets. Every
//! coefficient is an exact `"p/q"` or integer string.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::actions::FiniteGroup;
use crate::chain::{project_to_reduced, AlgebraicSimplex, Basis, Chain, ChainComplex, Cochain, Ring};
use crate::diffusion::{ActionOnSet, GroupModel, LocallyFiniteAction, Measure, Point, SetKind, SparseFunction, SubgroupAction};
use crate::num::{format_q, parse_q, Q};

/// Version stamped on every structured output.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("unresolved reference: {0}")]
    Reference(String),
}

fn parse_coeff(s: &str) -> Result<Q, FormatError> {
    parse_q(s).ok_or_else(|| FormatError::Parse(format!("`{s}` is not an exact rational")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawTerm {
    pub simplex: String,
    /// Empty means the simplex with its vertices in increasing order.
    #[serde(default)]
    pub vertices: Vec<String>,
    pub coeff: String,
}

/// `{degree, ring, terms: [{simplex, vertices, coeff}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawChain {
    pub degree: usize,
    pub ring: Ring,
    pub terms: Vec<RawTerm>,
}

fn resolve(cc: &ChainComplex, degree: usize, t: &RawTerm) -> Result<AlgebraicSimplex, FormatError> {
    let found = if t.vertices.is_empty() {
        let s = cc.simplex_ix(&t.simplex);
        (degree <= cc.top_degree())
            .then(|| cc.basis(degree))
            .and_then(|b| b.iter().find(|a| Some(a.simplex) == s && a.vertices.windows(2).all(|w| w[0] < w[1])))
            .cloned()
    } else {
        cc.label(&t.simplex, &t.vertices)
    };
    found
        .ok_or_else(|| FormatError::Reference(format!("simplex `{}` with vertices {:?}", t.simplex, t.vertices)))
}

/// Resolves names against `cc`. In the reduced and alternating bases any ordering of the
/// vertices is accepted and normalised with its sign.
pub fn chain_from_raw(raw: &RawChain, cc: &ChainComplex) -> Result<Chain, FormatError> {
    let terms = raw
        .terms
        .iter()
        .map(|t| Ok((resolve(cc, raw.degree, t)?, parse_coeff(&t.coeff)?)))
        .collect::<Result<Vec<_>, FormatError>>()?;
    let c = Chain::from_terms(raw.degree, raw.ring, terms).map_err(|e| FormatError::Parse(e.to_string()))?;
    let c = match cc.basis_kind() {
        Basis::Reduced | Basis::Alternating => project_to_reduced(&c),
        Basis::Distinct | Basis::WithRepeats => c,
    };
    cc.vector(&c).map_err(|e| FormatError::Reference(e.to_string()))?;
    Ok(c)
}

fn raw_terms<'a>(cc: &ChainComplex, terms: impl Iterator<Item = (&'a AlgebraicSimplex, &'a Q)>) -> Vec<RawTerm> {
    terms
        .map(|(s, x)| RawTerm {
            simplex: cc.simplex_names()[s.simplex].clone(),
            vertices: s.vertices.iter().map(|&v| cc.vertex_names()[v].clone()).collect(),
            coeff: format_q(x),
        })
        .collect()
}

pub fn chain_to_raw(c: &Chain, cc: &ChainComplex) -> RawChain {
    RawChain { degree: c.degree, ring: c.ring, terms: raw_terms(cc, c.terms().iter()) }
}

/// `{degree, values: [{simplex, vertices, coeff}]}`; missing basis elements are zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCochain {
    pub degree: usize,
    pub values: Vec<RawTerm>,
}

pub fn cochain_from_raw(raw: &RawCochain, cc: &ChainComplex) -> Result<Cochain, FormatError> {
    let values = raw
        .values
        .iter()
        .map(|t| {
            let s = resolve(cc, raw.degree, t)?;
            if s.vertices.len() != raw.degree + 1 || cc.index_of(raw.degree, &s).is_none() {
                return Err(FormatError::Reference(format!("{} is not a basis element", cc.display_label(&s))));
            }
            Ok((s, parse_coeff(&t.coeff)?))
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    let mut phi = Cochain::zero(raw.degree);
    for (s, x) in values {
        phi.set(s, x);
    }
    Ok(phi)
}

pub fn cochain_to_raw(phi: &Cochain, cc: &ChainComplex) -> RawCochain {
    RawCochain { degree: phi.degree, values: raw_terms(cc, phi.values().iter()) }
}

/// `{kind: "zd", dim}` or `{kind: "finite", elements, table}` with `table[g][h] = gh`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RawGroup {
    Zd { dim: usize },
    Finite { elements: Vec<String>, table: Vec<Vec<String>> },
}

pub fn group_from_raw(raw: &RawGroup) -> Result<GroupModel, FormatError> {
    match raw {
        RawGroup::Zd { dim } => Ok(GroupModel::FreeAbelian(*dim)),
        RawGroup::Finite { elements, table } => {
            let ix = |n: &String| elements.iter().position(|e| e == n).ok_or_else(|| FormatError::Reference(format!("element `{n}`")));
            let table = table.iter().map(|r| r.iter().map(ix).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>()?;
            let g = FiniteGroup::new(elements.clone(), table).map_err(|e| FormatError::Parse(e.to_string()))?;
            if g.identity().is_none() || (0..g.order()).any(|x| g.inverse(x).is_none()) {
                return Err(FormatError::Parse("the table is not a group".into()));
            }
            Ok(GroupModel::Finite(g))
        }
    }
}

/// `{kind: "regular"}`, `{kind: "torus", moduli}` or `{kind: "table", points, table: {element: [point…]}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RawSet {
    Regular,
    Torus { moduli: Vec<i64> },
    Table { points: Vec<String>, table: BTreeMap<String, Vec<String>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSetAction {
    pub group: RawGroup,
    pub set: RawSet,
}

pub fn set_action_from_raw(raw: &RawSetAction) -> Result<ActionOnSet, FormatError> {
    let group = group_from_raw(&raw.group)?;
    let kind = match &raw.set {
        RawSet::Regular => SetKind::Regular,
        RawSet::Torus { moduli } => SetKind::Modular(moduli.clone()),
        RawSet::Table { points, table } => {
            let GroupModel::Finite(g) = &group else {
                return Err(FormatError::Parse("table actions need a finite group".into()));
            };
            let px = |n: &String| points.iter().position(|p| p == n).ok_or_else(|| FormatError::Reference(format!("point `{n}`")));
            let rows = g
                .names()
                .iter()
                .map(|e| {
                    let row = table.get(e).ok_or_else(|| FormatError::Reference(format!("no row for element `{e}`")))?;
                    row.iter().map(px).collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            SetKind::Table { points: points.clone(), table: rows }
        }
    };
    ActionOnSet::new(group, kind).map_err(|e| FormatError::Parse(e.to_string()))
}

/// `{group: ref, weights: {element-key: "p/q"}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMeasure {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    pub weights: BTreeMap<String, String>,
}

pub fn measure_from_raw(raw: &RawMeasure, group: &GroupModel) -> Result<Measure, FormatError> {
    let weights = raw
        .weights
        .iter()
        .map(|(k, w)| Ok((group.parse_key(k).map_err(|e| FormatError::Reference(e.to_string()))?, parse_coeff(w)?)))
        .collect::<Result<Vec<_>, FormatError>>()?;
    Measure::new(weights).map_err(|e| FormatError::Parse(e.to_string()))
}

pub fn measure_to_raw(mu: &Measure, group: &GroupModel, group_ref: Option<String>) -> RawMeasure {
    RawMeasure { group: group_ref, weights: mu.weights().iter().map(|(g, w)| (group.key(g), format_q(w))).collect() }
}

/// `{values: {point-key: "p/q"}}`; point keys are comma-joined integers, or point names for
/// table actions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawFunction {
    pub values: BTreeMap<String, String>,
}

fn parse_point(a: &ActionOnSet, key: &str) -> Result<Point, FormatError> {
    let p = match &a.kind {
        SetKind::Table { points, .. } => points.iter().position(|p| p == key).map(|i| vec![i as i64]),
        _ => key.split(',').map(|t| t.trim().parse::<i64>().ok()).collect::<Option<Vec<_>>>(),
    };
    match p {
        Some(p) if a.contains(&p) => Ok(p),
        _ => Err(FormatError::Reference(format!("point `{key}`"))),
    }
}

pub fn function_from_raw(raw: &RawFunction, a: &ActionOnSet) -> Result<SparseFunction, FormatError> {
    let values = raw
        .values
        .iter()
        .map(|(k, v)| Ok((parse_point(a, k)?, parse_coeff(v)?)))
        .collect::<Result<Vec<_>, FormatError>>()?;
    Ok(SparseFunction::new(values))
}

pub fn function_to_raw(f: &SparseFunction, key: impl Fn(&Point) -> String) -> RawFunction {
    RawFunction { values: f.values().iter().map(|(p, v)| (key(p), format_q(v))).collect() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSubgroup {
    /// Omitted for `ℤ`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
    pub speeds: BTreeMap<usize, i64>,
}

/// `{orbit_sizes, subgroups: [{order?, speeds: {orbit: speed}}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawLocalAction {
    pub orbit_sizes: Vec<i64>,
    pub subgroups: Vec<RawSubgroup>,
}

pub fn local_action_from_raw(raw: &RawLocalAction) -> Result<LocallyFiniteAction, FormatError> {
    let subgroups = raw.subgroups.iter().map(|g| SubgroupAction { order: g.order, speeds: g.speeds.clone() }).collect();
    LocallyFiniteAction::new(raw.orbit_sizes.clone(), subgroups).map_err(|e| FormatError::Parse(e.to_string()))
}

/// Points of a locally finite action are keyed `"s:x"`.
pub fn local_point_key(p: &Point) -> String {
    format!("{}:{}", p[0], p[1])
}

pub fn local_function_from_raw(raw: &RawFunction, a: &LocallyFiniteAction) -> Result<SparseFunction, FormatError> {
    let values = raw
        .values
        .iter()
        .map(|(k, v)| {
            let p = k
                .split_once(':')
                .and_then(|(s, x)| Some(vec![s.trim().parse().ok()?, x.trim().parse().ok()?]))
                .filter(|p| a.contains(p))
                .ok_or_else(|| FormatError::Reference(format!("point `{k}`")))?;
            Ok((p, parse_coeff(v)?))
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    Ok(SparseFunction::new(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{build_full_chain_complex, build_reduced_chain_complex};
    use crate::fixtures::triangle_boundary;
    use crate::num::q;

    #[test]
    fn chains_resolve_and_normalise() {
        let mc = triangle_boundary();
        let red = build_reduced_chain_complex(&mc, 1).unwrap();
        let e = red.basis(1)[0].clone();
        let name = red.simplex_names()[e.simplex].clone();
        let vs: Vec<String> = e.vertices.iter().rev().map(|&v| red.vertex_names()[v].clone()).collect();
        let raw = RawChain { degree: 1, ring: Ring::Z, terms: vec![RawTerm { simplex: name, vertices: vs, coeff: "2".into() }] };
        let c = chain_from_raw(&raw, &red).unwrap();
        assert_eq!(c.coeff(&e), q(-2));
        assert_eq!(chain_from_raw(&chain_to_raw(&c, &red), &red).unwrap(), c);

        let full = build_full_chain_complex(&mc, 1, Basis::Distinct).unwrap();
        let bad = RawChain { degree: 1, ring: Ring::Z, terms: vec![RawTerm { simplex: "nope".into(), vertices: vec![], coeff: "1".into() }] };
        assert!(matches!(chain_from_raw(&bad, &full), Err(FormatError::Reference(_))));
    }

    #[test]
    fn set_actions_and_measures() {
        let raw: RawSetAction = serde_json::from_str(
            r#"{"group": {"kind": "finite", "elements": ["e", "s"], "table": [["e", "s"], ["s", "e"]]},
                "set": {"kind": "table", "points": ["p", "q"], "table": {"e": ["p", "q"], "s": ["q", "p"]}}}"#,
        )
        .unwrap();
        let a = set_action_from_raw(&raw).unwrap();
        let mu = measure_from_raw(&RawMeasure { group: None, weights: BTreeMap::from([("s".into(), "1".into())]) }, &a.group).unwrap();
        let f = function_from_raw(&RawFunction { values: BTreeMap::from([("p".into(), "1/2".into())]) }, &a).unwrap();
        let out = crate::diffusion::convolve(&mu, &f, &a);
        assert_eq!(out.get(&vec![1]), crate::num::q_frac(1, 2));
        let torus: RawSetAction = serde_json::from_str(r#"{"group": {"kind": "zd", "dim": 2}, "set": {"kind": "torus", "moduli": [3, 4]}}"#).unwrap();
        let t = set_action_from_raw(&torus).unwrap();
        assert!(function_from_raw(&RawFunction { values: BTreeMap::from([("3,0".into(), "1".into())]) }, &t).is_err());
    }
}
