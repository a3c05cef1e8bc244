//! Diffusion operators: finitely supported probability measures on a group acting on a set,
//! convolution `(μ∗f)(x) = Σ_γ μ(γ) f(γ⁻¹x)`, measure derivatives and Følner measures.
//!
//! Two group models are supported, finite groups given by a table and `ℤᵈ`. Elements and
//! points are integer vectors: a finite group element is `[index]`, an element of `ℤᵈ` is its
//! coordinate vector.

mod local;
mod toy;

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use crate::actions::{ActionError, FiniteGroup};
use crate::chain::ChainError;
use crate::num::{q, Q};

pub use local::{local_diffuse, LocalDiffusion, LocallyFiniteAction, SubgroupAction};
pub use toy::{toy_vanish, ClassPreservation, OddPermutationCheck, ToyVanish};

pub type Element = Vec<i64>;
pub type Point = Vec<i64>;

/// Largest support a Følner box may have.
pub const MAX_BOX_SUPPORT: usize = 4_000_000;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum DiffusionError {
    #[error("weights must be positive and sum to 1 (they sum to {0})")]
    NotProbability(String),
    #[error("`{0}` is not an element of the group")]
    NotAnElement(String),
    #[error("`{0}` is not a point of the set")]
    NotAPoint(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("the action is not transitive: no element moves {from} to {to}")]
    NotTransitive { from: String, to: String },
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("a Følner box with side {side} in dimension {dim} is too large to enumerate")]
    BoxTooLarge { side: u64, dim: usize },
    #[error("orbit {orbit} has sum {sum}, but diffusion can only shrink orbits of sum zero")]
    NonzeroOrbitSum { orbit: String, sum: String },
    #[error("condition on odd reorderings fails on the orbit of {orbit}: its coefficients sum to {sum}")]
    OddPermutation { orbit: String, sum: String },
    #[error("element `{element}` does not preserve the class: [z] has coordinates {class_z:?}, [g·z] has {class_gz:?}")]
    ClassNotPreserved { element: String, class_z: Vec<String>, class_gz: Vec<String> },
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Action(#[from] ActionError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupModel {
    Finite(FiniteGroup),
    FreeAbelian(usize),
}

impl GroupModel {
    pub fn identity(&self) -> Element {
        match self {
            GroupModel::Finite(g) => vec![g.identity().expect("valid group") as i64],
            GroupModel::FreeAbelian(d) => vec![0; *d],
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        match self {
            GroupModel::Finite(g) => vec![g.mul(a[0] as usize, b[0] as usize) as i64],
            GroupModel::FreeAbelian(_) => a.iter().zip(b).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn inv(&self, a: &Element) -> Element {
        match self {
            GroupModel::Finite(g) => vec![g.inverse(a[0] as usize).expect("valid group") as i64],
            GroupModel::FreeAbelian(_) => a.iter().map(|x| -x).collect(),
        }
    }

    pub fn contains(&self, a: &Element) -> bool {
        match self {
            GroupModel::Finite(g) => a.len() == 1 && a[0] >= 0 && (a[0] as usize) < g.order(),
            GroupModel::FreeAbelian(d) => a.len() == *d,
        }
    }

    /// All elements of a finite group.
    pub fn elements(&self) -> Option<Vec<Element>> {
        match self {
            GroupModel::Finite(g) => Some((0..g.order() as i64).map(|i| vec![i]).collect()),
            GroupModel::FreeAbelian(_) => None,
        }
    }

    /// Element name for finite groups, comma-joined coordinates for `ℤᵈ`.
    pub fn key(&self, a: &Element) -> String {
        match self {
            GroupModel::Finite(g) => g.name(a[0] as usize).to_string(),
            GroupModel::FreeAbelian(_) => a.iter().map(i64::to_string).collect::<Vec<_>>().join(","),
        }
    }

    pub fn parse_key(&self, s: &str) -> Result<Element, DiffusionError> {
        let bad = || DiffusionError::NotAnElement(s.to_string());
        match self {
            GroupModel::Finite(g) => g.element(s).map(|i| vec![i as i64]).ok_or_else(bad),
            GroupModel::FreeAbelian(d) => {
                let v: Vec<i64> = if *d == 0 && s.is_empty() {
                    Vec::new()
                } else {
                    s.split(',').map(|t| t.trim().parse::<i64>()).collect::<Result<_, _>>().map_err(|_| bad())?
                };
                if v.len() == *d {
                    Ok(v)
                } else {
                    Err(bad())
                }
            }
        }
    }
}

/// A probability measure with finite support and positive rational weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measure {
    weights: BTreeMap<Element, Q>,
}

impl Measure {
    pub fn new(weights: impl IntoIterator<Item = (Element, Q)>) -> Result<Self, DiffusionError> {
        let mut map: BTreeMap<Element, Q> = BTreeMap::new();
        for (e, w) in weights {
            *map.entry(e).or_insert_with(Q::zero) += w;
        }
        let total: Q = map.values().sum();
        if map.values().any(|w| !w.is_positive()) || !total.is_one() {
            return Err(DiffusionError::NotProbability(crate::num::format_q(&total)));
        }
        Ok(Self { weights: map })
    }

    pub fn dirac(e: Element) -> Self {
        Self { weights: BTreeMap::from([(e, q(1))]) }
    }

    pub fn uniform(elements: impl IntoIterator<Item = Element>) -> Self {
        let set: BTreeSet<Element> = elements.into_iter().collect();
        assert!(!set.is_empty(), "uniform measure needs a nonempty support");
        let w = q(1) / q(set.len() as i64);
        Self { weights: set.into_iter().map(|e| (e, w.clone())).collect() }
    }

    /// Uniform measure on the box `{0,…,n−1}ᵈ` of `ℤᵈ`.
    pub fn uniform_box(d: usize, n: u64) -> Result<Self, DiffusionError> {
        let too_large = || DiffusionError::BoxTooLarge { side: n, dim: d };
        let size = (n as u128).checked_pow(d as u32).ok_or_else(too_large)?;
        if n == 0 || size > MAX_BOX_SUPPORT as u128 {
            return Err(too_large());
        }
        let mut elements = vec![Vec::new()];
        for _ in 0..d {
            elements = elements
                .into_iter()
                .flat_map(|e: Vec<i64>| {
                    (0..n as i64).map(move |i| {
                        let mut f = e.clone();
                        f.push(i);
                        f
                    })
                })
                .collect();
        }
        Ok(Self::uniform(elements))
    }

    pub fn weights(&self) -> &BTreeMap<Element, Q> {
        &self.weights
    }

    pub fn weight(&self, e: &Element) -> Q {
        self.weights.get(e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn support_len(&self) -> usize {
        self.weights.len()
    }

    /// The measure of "apply `first`, then `self`": `(self ⋆ first)(h) = Σ_{ab = h} self(a)·first(b)`.
    pub fn after(&self, first: &Measure, group: &GroupModel) -> Measure {
        let mut out: BTreeMap<Element, Q> = BTreeMap::new();
        for (a, wa) in &self.weights {
            for (b, wb) in &first.weights {
                *out.entry(group.mul(a, b)).or_insert_with(Q::zero) += wa * wb;
            }
        }
        Measure { weights: out }
    }
}

/// A finitely supported rational function on a set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparseFunction {
    values: BTreeMap<Point, Q>,
}

impl SparseFunction {
    pub fn new(values: impl IntoIterator<Item = (Point, Q)>) -> Self {
        let mut f = Self::default();
        for (x, v) in values {
            f.add(x, &v);
        }
        f
    }

    pub fn dirac(x: Point) -> Self {
        Self::new([(x, q(1))])
    }

    pub fn add(&mut self, x: Point, v: &Q) {
        if v.is_zero() {
            return;
        }
        match self.values.entry(x) {
            Entry::Vacant(e) => {
                e.insert(v.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += v;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn values(&self) -> &BTreeMap<Point, Q> {
        &self.values
    }

    pub fn get(&self, x: &Point) -> Q {
        self.values.get(x).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn l1_norm(&self) -> Q {
        self.values.values().map(Signed::abs).sum()
    }

    pub fn sum(&self) -> Q {
        self.values.values().sum()
    }

    pub fn scaled(&self, c: &Q) -> Self {
        Self::new(self.values.iter().map(|(x, v)| (x.clone(), v * c)))
    }

    pub fn restrict(&self, keep: impl Fn(&Point) -> bool) -> Self {
        Self { values: self.values.iter().filter(|(x, _)| keep(x)).map(|(x, v)| (x.clone(), v.clone())).collect() }
    }

    pub fn min_support(&self) -> Option<&Point> {
        self.values.keys().next()
    }
}

/// The set a group acts on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetKind {
    /// The group acting on itself by left multiplication.
    Regular,
    /// `ℤᵈ` acting on `ℤ/n₁ × … × ℤ/n_d` by translation.
    Modular(Vec<i64>),
    /// A finite group acting on named points: `table[g][x] = g·x`.
    Table { points: Vec<String>, table: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionOnSet {
    pub group: GroupModel,
    pub kind: SetKind,
}

impl ActionOnSet {
    pub fn new(group: GroupModel, kind: SetKind) -> Result<Self, DiffusionError> {
        let a = Self { group, kind };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<(), DiffusionError> {
        let bad = |m: &str| Err(DiffusionError::InvalidAction(m.to_string()));
        match (&self.group, &self.kind) {
            (_, SetKind::Regular) => Ok(()),
            (GroupModel::FreeAbelian(d), SetKind::Modular(moduli)) => {
                if moduli.len() != *d || moduli.iter().any(|&n| n < 1) {
                    return bad("one positive modulus per coordinate is required");
                }
                Ok(())
            }
            (GroupModel::Finite(g), SetKind::Table { points, table }) => {
                if table.len() != g.order() || table.iter().any(|r| r.len() != points.len() || r.iter().any(|&x| x >= points.len())) {
                    return bad("action table must have one row per element and one entry per point");
                }
                let e = g.identity().ok_or(DiffusionError::InvalidAction("group has no identity".into()))?;
                if (0..points.len()).any(|x| table[e][x] != x) {
                    return bad("the identity must fix every point");
                }
                for a in 0..g.order() {
                    for b in 0..g.order() {
                        if (0..points.len()).any(|x| table[g.mul(a, b)][x] != table[a][table[b][x]]) {
                            return bad(&format!("(gh)·x ≠ g·(h·x) for g = `{}`, h = `{}`", g.name(a), g.name(b)));
                        }
                    }
                }
                Ok(())
            }
            _ => bad("set kind does not match the group model"),
        }
    }

    pub fn contains(&self, x: &Point) -> bool {
        match &self.kind {
            SetKind::Regular => self.group.contains(x),
            SetKind::Modular(m) => x.len() == m.len() && x.iter().zip(m).all(|(&a, &n)| (0..n).contains(&a)),
            SetKind::Table { points, .. } => x.len() == 1 && x[0] >= 0 && (x[0] as usize) < points.len(),
        }
    }

    pub fn act(&self, g: &Element, x: &Point) -> Point {
        match &self.kind {
            SetKind::Regular => self.group.mul(g, x),
            SetKind::Modular(m) => x.iter().zip(g).zip(m).map(|((a, b), n)| (a + b).rem_euclid(*n)).collect(),
            SetKind::Table { table, .. } => vec![table[g[0] as usize][x[0] as usize] as i64],
        }
    }

    pub fn point_key(&self, x: &Point) -> String {
        match &self.kind {
            SetKind::Table { points, .. } => points[x[0] as usize].clone(),
            _ => x.iter().map(i64::to_string).collect::<Vec<_>>().join(","),
        }
    }

    /// Some `γ` with `γ·from = to`. For `ℤᵈ` on a torus the coordinates are taken in
    /// `(−n/2, n/2]`; for finite groups the least element index is used.
    pub fn transport(&self, from: &Point, to: &Point) -> Option<Element> {
        match (&self.group, &self.kind) {
            (_, SetKind::Regular) => Some(self.group.mul(to, &self.group.inv(from))),
            (_, SetKind::Modular(m)) => Some(
                from.iter()
                    .zip(to)
                    .zip(m)
                    .map(|((a, b), &n)| {
                        let r = (b - a).rem_euclid(n);
                        if 2 * r > n {
                            r - n
                        } else {
                            r
                        }
                    })
                    .collect(),
            ),
            (GroupModel::Finite(g), SetKind::Table { table, .. }) => (0..g.order())
                .find(|&e| table[e][from[0] as usize] == to[0] as usize)
                .map(|e| vec![e as i64]),
            _ => None,
        }
    }
}

/// `(μ∗f)(x) = Σ_γ μ(γ) f(γ⁻¹x)`, computed by pushing each value of `f` forward.
pub fn convolve(mu: &Measure, f: &SparseFunction, a: &ActionOnSet) -> SparseFunction {
    convolve_by(mu, f, |g, x| a.act(g, x))
}

/// Convolution for an action given by a closure.
pub fn convolve_by(mu: &Measure, f: &SparseFunction, act: impl Fn(&Element, &Point) -> Point) -> SparseFunction {
    let mut acc: BTreeMap<Point, Q> = BTreeMap::new();
    for (y, v) in f.values() {
        for (g, w) in mu.weights() {
            *acc.entry(act(g, y)).or_insert_with(Q::zero) += w * v;
        }
    }
    SparseFunction { values: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
}

/// `‖D_φμ‖₁ = Σ_γ |μ(γφ) − μ(γ)|`.
pub fn measure_derivative(mu: &Measure, phi: &Element, group: &GroupModel) -> Q {
    let phi_inv = group.inv(phi);
    let mut points: BTreeSet<Element> = mu.weights().keys().cloned().collect();
    points.extend(mu.weights().keys().map(|g| group.mul(g, &phi_inv)));
    points.iter().map(|g| (mu.weight(&group.mul(g, phi)) - mu.weight(g)).abs()).sum()
}

/// `‖D_Φμ‖ = max_{φ ∈ Φ} ‖D_φμ‖₁`, zero for empty `Φ`.
pub fn derivative_norm(mu: &Measure, phis: &[Element], group: &GroupModel) -> Q {
    phis.iter().map(|p| measure_derivative(mu, p, group)).max().unwrap_or_else(Q::zero)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FolnerMeasure {
    pub measure: Measure,
    /// `‖D_Φμ‖`, evaluated directly on the returned measure.
    pub derivative: Q,
    /// Side of the box for `ℤᵈ`.
    pub box_side: Option<u64>,
}

/// A measure with `‖D_Φμ‖ < ε`: uniform on a finite group, and on `ℤᵈ` uniform on the box
/// `{0,…,N−1}ᵈ` with `N = ⌊2M/ε⌋ + 1`, where `M` bounds the ℓ¹-length of the elements of `Φ`.
/// A displacement `m` moves a fraction at most `Σᵢ|mᵢ|/N` of the box, so the derivative is at
/// most `2M/N < ε`.
pub fn folner_measure(group: &GroupModel, phis: &[Element], eps: &Q) -> Result<FolnerMeasure, DiffusionError> {
    if !eps.is_positive() {
        return Err(DiffusionError::NonPositiveEpsilon);
    }
    if let Some(bad) = phis.iter().find(|p| !group.contains(p)) {
        return Err(DiffusionError::NotAnElement(format!("{bad:?}")));
    }
    let (measure, box_side) = match group {
        GroupModel::Finite(_) => (Measure::uniform(group.elements().expect("finite")), None),
        GroupModel::FreeAbelian(d) => {
            let m: i64 = phis.iter().map(|p| p.iter().map(|x| x.abs()).sum::<i64>()).max().unwrap_or(0);
            let n: num_bigint::BigInt = (q(2 * m) / eps).floor().to_integer() + 1;
            let side: u64 = u64::try_from(&n).map_err(|_| DiffusionError::BoxTooLarge { side: u64::MAX, dim: *d })?;
            (Measure::uniform_box(*d, side)?, Some(side))
        }
    };
    let derivative = derivative_norm(&measure, phis, group);
    assert!(derivative < *eps, "Følner bound violated");
    Ok(FolnerMeasure { measure, derivative, box_side })
}

/// Result of [`diffuse_to_epsilon`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diffusion {
    pub measure: Measure,
    pub output: SparseFunction,
    pub base_point: Option<Point>,
    /// `Φ` with `Φ·x₀ ⊇ supp f`.
    pub phi: Vec<Element>,
    /// `‖D_{Φ⁻¹}μ‖`.
    pub derivative: Q,
    /// `|Σf| + ε`.
    pub bound: Q,
    /// `‖f′‖₁ ≤ |Σf| + ‖D_{Φ⁻¹}μ‖·‖f‖₁ ≤ |Σf| + ε`, checked exactly.
    pub certified: bool,
}

/// Base point and `Φ` with `Φ·x₀ ⊇ supp f`, one element per support point.
pub fn covering_elements(a: &ActionOnSet, f: &SparseFunction) -> Result<(Point, Vec<Element>), DiffusionError> {
    let x0 = f.min_support().cloned().ok_or_else(|| DiffusionError::Precondition("zero function".into()))?;
    let mut phi = Vec::with_capacity(f.values().len());
    for x in f.values().keys() {
        if !a.contains(x) {
            return Err(DiffusionError::NotAPoint(format!("{x:?}")));
        }
        let g = a.transport(&x0, x).ok_or_else(|| DiffusionError::NotTransitive {
            from: a.point_key(&x0),
            to: a.point_key(x),
        })?;
        debug_assert_eq!(&a.act(&g, &x0), x);
        phi.push(g);
    }
    Ok((x0, phi))
}

/// Diffuses `f` along a transitive action until `‖f′‖₁ ≤ |Σf| + ε`.
pub fn diffuse_to_epsilon(a: &ActionOnSet, f: &SparseFunction, eps: &Q) -> Result<Diffusion, DiffusionError> {
    if !eps.is_positive() {
        return Err(DiffusionError::NonPositiveEpsilon);
    }
    let bound = f.sum().abs() + eps;
    if f.is_zero() {
        return Ok(Diffusion {
            measure: Measure::dirac(a.group.identity()),
            output: f.clone(),
            base_point: None,
            phi: Vec::new(),
            derivative: Q::zero(),
            bound,
            certified: true,
        });
    }
    let (x0, phi) = covering_elements(a, f)?;
    let phi_inv: Vec<Element> = phi.iter().map(|g| a.group.inv(g)).collect();
    let norm = f.l1_norm();
    let folner = folner_measure(&a.group, &phi_inv, &(eps / &norm))?;
    let output = convolve(&folner.measure, f, a);
    let via_derivative = f.sum().abs() + &folner.derivative * &norm;
    let certified = output.l1_norm() <= via_derivative && via_derivative <= bound;
    Ok(Diffusion {
        measure: folner.measure,
        output,
        base_point: Some(x0),
        phi,
        derivative: folner.derivative,
        bound,
        certified,
    })
}

/// Both sides of `‖μ∗f‖₁ ≤ |Σf| + ‖D_{Φ⁻¹}μ‖·‖f‖₁` for `Φ·x₀ ⊇ supp f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityCheck {
    pub lhs: Q,
    pub rhs: Q,
    pub base_point: Point,
    pub phi: Vec<Element>,
}

impl InequalityCheck {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }
}

pub fn diffusion_inequality(mu: &Measure, f: &SparseFunction, a: &ActionOnSet) -> Result<InequalityCheck, DiffusionError> {
    let (x0, phi) = covering_elements(a, f)?;
    let phi_inv: Vec<Element> = phi.iter().map(|g| a.group.inv(g)).collect();
    let lhs = convolve(mu, f, a).l1_norm();
    let rhs = f.sum().abs() + derivative_norm(mu, &phi_inv, &a.group) * f.l1_norm();
    Ok(InequalityCheck { lhs, rhs, base_point: x0, phi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::q_frac;

    fn z1() -> GroupModel {
        GroupModel::FreeAbelian(1)
    }

    fn line() -> ActionOnSet {
        ActionOnSet::new(z1(), SetKind::Regular).unwrap()
    }

    #[test]
    fn dirac_at_identity_is_neutral() {
        let f = SparseFunction::new([(vec![3], q(2)), (vec![-1], q(-5))]);
        assert_eq!(convolve(&Measure::dirac(vec![0]), &f, &line()), f);
    }

    #[test]
    fn box_on_the_line() {
        for n in 1..=9u64 {
            let mu = Measure::uniform_box(1, n).unwrap();
            let out = convolve(&mu, &SparseFunction::dirac(vec![0]), &line());
            assert_eq!(out.values().len(), n as usize);
            assert!(out.values().values().all(|v| *v == q_frac(1, n as i64)));
            let expected = if n == 1 { q(2) } else { q_frac(2, n as i64) };
            // A box of side one is a Dirac mass, which moves entirely.
            assert_eq!(measure_derivative(&mu, &vec![1], &z1()), expected);
        }
        assert_eq!(measure_derivative(&Measure::uniform_box(1, 5).unwrap(), &vec![0], &z1()), q(0));
    }

    #[test]
    fn uniform_measure_on_a_transitive_finite_action() {
        let g = FiniteGroup::cyclic(6);
        // ℤ/6 acting on three points through ℤ/3.
        let table = (0..6).map(|k| (0..3).map(|x| (x + k) % 3).collect()).collect();
        let a = ActionOnSet::new(
            GroupModel::Finite(g),
            SetKind::Table { points: vec!["p".into(), "q".into(), "r".into()], table },
        )
        .unwrap();
        let f = SparseFunction::new([(vec![0], q(4)), (vec![2], q(-1))]);
        let mu = Measure::uniform(a.group.elements().unwrap());
        let out = convolve(&mu, &f, &a);
        for x in 0..3 {
            assert_eq!(out.get(&vec![x]), q(1));
        }
        assert_eq!(derivative_norm(&mu, &a.group.elements().unwrap(), &a.group), q(0));
    }

    #[test]
    fn folner_boxes() {
        let f = folner_measure(&z1(), &[vec![1], vec![-1]], &q_frac(1, 10)).unwrap();
        assert_eq!(f.box_side, Some(21));
        assert_eq!(f.derivative, q_frac(2, 21));
        let z2 = GroupModel::FreeAbelian(2);
        let f = folner_measure(&z2, &[vec![1, 0], vec![0, 1]], &q_frac(1, 5)).unwrap();
        assert!(f.derivative < q_frac(1, 5));
        assert_eq!(f.derivative, derivative_norm(&f.measure, &[vec![1, 0], vec![0, 1]], &z2));
        let fin = GroupModel::Finite(FiniteGroup::cyclic(4));
        let f = folner_measure(&fin, &[vec![1]], &q_frac(1, 1000)).unwrap();
        assert_eq!(f.derivative, q(0));
    }

    #[test]
    fn diffusing_a_dipole_on_the_line() {
        let f = SparseFunction::new([(vec![0], q(1)), (vec![1], q(-1))]);
        let d = diffuse_to_epsilon(&line(), &f, &q_frac(1, 10)).unwrap();
        assert!(d.certified);
        assert!(d.output.l1_norm() <= q_frac(1, 10));
        assert_eq!(d.measure.support_len(), 41);
        assert_eq!(d.output.sum(), q(0));
    }

    #[test]
    fn dipoles_scale_linearly() {
        let mu = Measure::new([(vec![0], q_frac(1, 2)), (vec![2], q_frac(1, 3)), (vec![3], q_frac(1, 6))]).unwrap();
        let f1 = SparseFunction::new([(vec![0], q(1)), (vec![1], q(-1))]);
        let n1 = convolve(&mu, &f1, &line()).l1_norm();
        let direct: Q = (-1..=4).map(|x| (mu.weight(&vec![x]) - mu.weight(&vec![x - 1])).abs()).sum();
        assert_eq!(n1, direct);
        for n in [2, 7, 100] {
            assert_eq!(convolve(&mu, &f1.scaled(&q(n)), &line()).l1_norm(), &n1 * q(n));
        }
    }

    #[test]
    fn measure_validation_and_keys() {
        assert!(Measure::new([(vec![0], q_frac(1, 2))]).is_err());
        assert!(Measure::new([(vec![0], q(2)), (vec![1], q(-1))]).is_err());
        let z2 = GroupModel::FreeAbelian(2);
        assert_eq!(z2.parse_key("3,-4").unwrap(), vec![3, -4]);
        assert_eq!(z2.key(&vec![3, -4]), "3,-4");
        assert!(z2.parse_key("3").is_err());
    }

    #[test]
    fn torus_transport_and_composition() {
        let a = ActionOnSet::new(GroupModel::FreeAbelian(2), SetKind::Modular(vec![5, 4])).unwrap();
        let g = a.transport(&vec![4, 0], &vec![1, 3]).unwrap();
        assert_eq!(g, vec![2, -1]);
        assert_eq!(a.act(&g, &vec![4, 0]), vec![1, 3]);
        let m1 = Measure::uniform([vec![0, 0], vec![1, 0]]);
        let m2 = Measure::uniform([vec![0, 0], vec![0, 1]]);
        let f = SparseFunction::dirac(vec![0, 0]);
        let step = convolve(&m2, &convolve(&m1, &f, &a), &a);
        assert_eq!(step, convolve(&m2.after(&m1, &a.group), &f, &a));
    }
}
