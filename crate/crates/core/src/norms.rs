//! ℓ¹ and ℓ∞ norms, the ℓ¹-seminorm of homology classes and simplicial volume.
//!
//! The seminorm `min ‖z + ∂b‖₁` is an exact rational linear program. Splitting `z + ∂b = u − v`
//! with `u, v ≥ 0` and `b = b⁻ − b⁺` gives the standard form
//!
//! ```text
//! min Σu + Σv   subject to   u − v + ∂b⁺ − ∂b⁻ = z
//! ```
//!
//! whose optimal dual `φ` satisfies `|φ| ≤ 1` on every basis element, `φ ∘ ∂ = 0` and
//! `φ(z) = min`, so it certifies optimality on its own.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::chain::{build_reduced_chain_complex, Chain, ChainComplex, ChainError, Cochain, Ring};
use crate::homology::{fundamental_cycle, homology_in_degree, FundamentalCycleError};
use crate::lp::{independent_columns, LinearProgram, LpError, LpStatus};
use crate::mcx::Multicomplex;
use crate::num::{q, Q};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum NormError {
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("degree {0} needs chains in degree {1}, which this complex does not contain")]
    MissingDegree(usize, usize),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Fundamental(#[from] FundamentalCycleError),
}

pub fn l1_norm(c: &Chain) -> Q {
    c.l1_norm()
}

/// Maximum of `|φ|` over the basis of its degree; zero outside the support.
pub fn linf_norm(phi: &Cochain) -> Q {
    phi.linf_norm()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeminormResult {
    pub value: Q,
    /// `z + ∂b` of ℓ¹-norm `value`.
    pub representative: Chain,
    /// The `b` above.
    pub bounding: Chain,
    /// `φ` with `‖φ‖∞ ≤ 1`, `δφ = 0` and `φ(z) = value`.
    pub certificate: Cochain,
    pub pivots: usize,
}

fn check_cycle_degree(cc: &ChainComplex, z: &Chain) -> Result<usize, NormError> {
    let n = z.degree;
    if cc.is_truncated() && n + 1 > cc.top_degree() {
        return Err(NormError::MissingDegree(n, n + 1));
    }
    if !cc.is_cycle(z)? {
        return Err(NormError::NotACycle);
    }
    Ok(n)
}

/// `‖[z]‖₁ = min ‖z + ∂b‖₁` over rational `b`, with primal and dual optima.
pub fn seminorm_l1(cc: &ChainComplex, z: &Chain) -> Result<SeminormResult, NormError> {
    let n = check_cycle_degree(cc, z)?;
    let zq = z.to_ring(Ring::Q)?;
    let zv = cc.vector(&zq)?;
    let d = cc.boundary_matrix(n + 1);
    let m = cc.rank(n);
    // Dependent columns of ∂ span nothing new, and the cocycle condition on the kept columns
    // implies it on the rest.
    let kept = independent_columns(d.rows, &d.columns);
    let p = kept.len();
    let cols = 2 * m + 2 * p;
    let mut a = vec![vec![Q::zero(); cols]; m];
    for i in 0..m {
        a[i][i] = q(1);
        a[i][m + i] = q(-1);
    }
    for (k, &j) in kept.iter().enumerate() {
        for &(i, x) in &d.columns[j] {
            a[i][2 * m + k] = q(x);
            a[i][2 * m + p + k] = q(-x);
        }
    }
    let mut c = vec![q(1); 2 * m];
    c.extend(std::iter::repeat(Q::zero()).take(2 * p));
    let start: Vec<usize> = (0..m).map(|i| if zv[i].is_negative() { m + i } else { i }).collect();
    let lp = LinearProgram { a, b: zv, c };
    let sol = lp.solve_from_unit_basis(&start)?;
    // The objective is bounded below by zero and the start is feasible.
    assert_eq!(sol.status, LpStatus::Optimal);
    let rep: Vec<Q> = (0..m).map(|i| &sol.x[i] - &sol.x[m + i]).collect();
    let mut b = vec![Q::zero(); d.cols];
    for (k, &j) in kept.iter().enumerate() {
        b[j] = &sol.x[2 * m + p + k] - &sol.x[2 * m + k];
    }
    Ok(SeminormResult {
        value: sol.value,
        representative: cc.chain_from_vector(n, Ring::Q, &rep),
        bounding: cc.chain_from_vector(n + 1, Ring::Q, &b),
        certificate: cc.cochain_from_vector(n, &sol.dual),
        pivots: sol.pivots,
    })
}

/// Individual checks of a seminorm result, each computed from scratch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DualCheck {
    pub representative_norm_matches: bool,
    pub representative_is_homologous: bool,
    pub certificate_bounded: bool,
    pub certificate_is_cocycle: bool,
    pub zero_gap: bool,
}

impl DualCheck {
    pub fn all(&self) -> bool {
        self.representative_norm_matches
            && self.representative_is_homologous
            && self.certificate_bounded
            && self.certificate_is_cocycle
            && self.zero_gap
    }
}

/// Audits `r` against `z` without trusting the solver.
pub fn audit_seminorm(cc: &ChainComplex, z: &Chain, r: &SeminormResult) -> Result<DualCheck, NormError> {
    let n = check_cycle_degree(cc, z)?;
    let zq = z.to_ring(Ring::Q)?;
    let shifted = zq.plus(&cc.boundary(&r.bounding)?);
    let phi = &r.certificate;
    let cocycle = if n < cc.top_degree() { cc.coboundary(phi)?.is_zero() } else { true };
    Ok(DualCheck {
        representative_norm_matches: r.representative.l1_norm() == r.value,
        representative_is_homologous: shifted == r.representative,
        certificate_bounded: phi.linf_norm() <= q(1),
        certificate_is_cocycle: cocycle,
        zero_gap: phi.eval(&zq) == r.value && phi.eval(&r.representative) == r.value,
    })
}

/// Primal optimum equals dual optimum exactly, together with the other certificate checks.
pub fn dual_check(cc: &ChainComplex, z: &Chain) -> Result<bool, NormError> {
    let r = seminorm_l1(cc, z)?;
    Ok(audit_seminorm(cc, z, &r)?.all())
}

/// ℓ¹-seminorm of the fundamental class in the reduced chains of `mc`.
///
/// This is the simplicial seminorm on this fixed multicomplex. It bounds the simplicial volume of
/// the realization from above and is generally larger.
pub fn simplicial_volume(mc: &Multicomplex) -> Result<SeminormResult, NormError> {
    let n = mc.dim().unwrap_or(0);
    let z = fundamental_cycle(mc, n)?;
    let cc = build_reduced_chain_complex(mc, n)?;
    seminorm_l1(&cc, &z)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntegralSeminorm {
    /// Smallest ℓ¹-norm of an integral cycle integrally homologous to `z` inside the search
    /// region. `global` is true when every cycle of smaller norm was examined, which makes
    /// `value` the integral seminorm outright.
    Found { value: u64, witness: Chain, global: bool },
    /// The region holds no integral representative, or the budget ran out first.
    Unknown { examined: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub coeff_bound: u64,
    pub support_bound: usize,
    /// Maximum number of candidate chains examined.
    pub budget: u64,
}

/// Integral ℓ¹-seminorm by exhaustive search.
///
/// Candidates `w` are integral chains with coefficients in `[−coeff_bound, coeff_bound]` and at
/// most `support_bound` nonzero entries, enumerated by increasing ℓ¹-norm. A candidate is a
/// representative when `∂w = 0` and `w − z` bounds an integral chain, which is decided exactly
/// through the Smith normal form. The first representative found has the least norm in the
/// region.
pub fn integral_seminorm_bruteforce(
    cc: &ChainComplex,
    z: &Chain,
    bounds: SearchBounds,
) -> Result<IntegralSeminorm, NormError> {
    let n = z.degree;
    let z = z.to_ring(Ring::Z)?;
    if !cc.is_cycle(&z)? {
        return Err(NormError::NotACycle);
    }
    let h = homology_in_degree(cc, n, Ring::Z)?;
    let dh = &h.degrees[0];
    let zv = cc.vector(&z)?;
    let m = cc.rank(n);
    // Columns of ∂ₙ over the basis of Cₙ, for a cheap cycle test.
    let d = cc.boundary_matrix(n);
    let cap = (bounds.coeff_bound as u128 * bounds.support_bound as u128).min(u64::MAX as u128) as u64;
    let max_norm = z.l1_norm().to_integer().try_into().unwrap_or(u64::MAX).min(cap);
    let mut search = Search {
        d: &d.columns,
        acc: vec![0i64; d.rows],
        support: Vec::new(),
        coeffs: Vec::new(),
        examined: 0,
        budget: bounds.budget,
        coeff_bound: bounds.coeff_bound as i64,
        support_bound: bounds.support_bound,
        m,
    };
    let full_level = bounds.coeff_bound.min(bounds.support_bound as u64);
    for t in 0..=max_norm {
        let mut hit: Option<Vec<Q>> = None;
        let mut accept = |support: &[usize], coeffs: &[i64]| -> bool {
            let mut w = vec![Q::zero(); m];
            for (&i, &c) in support.iter().zip(coeffs) {
                w[i] = q(c);
            }
            let diff: Vec<Q> = w.iter().zip(&zv).map(|(a, b)| a - b).collect();
            if dh.is_boundary_vec(&diff) {
                hit = Some(w);
                true
            } else {
                false
            }
        };
        let done = search.level(t as i64, 0, &mut accept);
        if let Some(w) = hit {
            return Ok(IntegralSeminorm::Found {
                value: t,
                witness: cc.chain_from_vector(n, Ring::Z, &w),
                global: t == 0 || t - 1 <= full_level,
            });
        }
        if !done {
            break;
        }
    }
    Ok(IntegralSeminorm::Unknown { examined: search.examined })
}

struct Search<'a> {
    d: &'a [Vec<(usize, i64)>],
    acc: Vec<i64>,
    support: Vec<usize>,
    coeffs: Vec<i64>,
    examined: u64,
    budget: u64,
    coeff_bound: i64,
    support_bound: usize,
    m: usize,
}

impl Search<'_> {
    /// Enumerates chains of norm exactly `remaining` more, using basis indices `≥ from`.
    /// Returns false when the budget is exhausted.
    fn level(&mut self, remaining: i64, from: usize, accept: &mut impl FnMut(&[usize], &[i64]) -> bool) -> bool {
        if remaining == 0 {
            self.examined += 1;
            if self.examined > self.budget {
                return false;
            }
            if self.acc.iter().all(|&x| x == 0) && accept(&self.support, &self.coeffs) {
                // Signal success by stopping; the caller inspects its hit.
                return false;
            }
            return true;
        }
        if self.support.len() == self.support_bound {
            return true;
        }
        for i in from..self.m {
            for mag in 1..=remaining.min(self.coeff_bound) {
                for sign in [1, -1] {
                    let c = sign * mag;
                    for &(r, x) in &self.d[i] {
                        self.acc[r] += c * x;
                    }
                    self.support.push(i);
                    self.coeffs.push(c);
                    let go_on = self.level(remaining - mag, i + 1, accept);
                    self.support.pop();
                    self.coeffs.pop();
                    for &(r, x) in &self.d[i] {
                        self.acc[r] -= c * x;
                    }
                    if !go_on {
                        return false;
                    }
                }
            }
        }
        true
    }
}
