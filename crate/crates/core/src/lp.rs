//! Exact rational simplex method for `min cᵀx` subject to `Ax = b`, `x ≥ 0`.
//!
//! Entering columns follow Dantzig's rule (most negative reduced cost) while the objective
//! strictly improves and switch to Bland's rule (smallest index) during runs of degenerate
//! pivots, which rules out cycling. Ratio-test ties go to the smallest basic variable label.
//! Optimal duals are read off the final tableau from the columns that formed the initial
//! identity basis.
//!
//! The tableau first runs on `i64` fractions with checked arithmetic and restarts on big
//! rationals if anything overflows. Both are exact, so the pivot sequence and the result do not
//! depend on which one finished.

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, ToPrimitive, Zero};

use crate::num::{q, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    /// Constraint rows, each of length `num_cols`.
    pub a: Vec<Vec<Q>>,
    pub b: Vec<Q>,
    pub c: Vec<Q>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Primal optimum (meaningful when optimal).
    pub x: Vec<Q>,
    pub value: Q,
    /// Dual optimum `y` with `Aᵀy ≤ c` and `bᵀy = value`.
    pub dual: Vec<Q>,
    pub basis: Vec<usize>,
    pub pivots: usize,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("linear program has inconsistent dimensions")]
    Shape,
    #[error("column {0} is not a signed unit vector and cannot start the basis")]
    NotUnitColumn(usize),
    #[error("starting basis is infeasible in row {0}")]
    InfeasibleStart(usize),
}

/// Row-normalised problem whose starting basis columns form an identity.
struct Prepared {
    rows: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    basis: Vec<usize>,
    /// Row signs applied to reach the identity.
    signs: Vec<i64>,
    /// Number of original columns; any further columns are artificial.
    n: usize,
}

impl LinearProgram {
    pub fn num_rows(&self) -> usize {
        self.b.len()
    }

    pub fn num_cols(&self) -> usize {
        self.c.len()
    }

    fn check_shape(&self) -> Result<(), LpError> {
        if self.a.len() != self.b.len() || self.a.iter().any(|r| r.len() != self.c.len()) {
            return Err(LpError::Shape);
        }
        Ok(())
    }

    /// Two-phase simplex from scratch.
    pub fn solve(&self) -> Result<LpSolution, LpError> {
        self.check_shape()?;
        let m = self.num_rows();
        let n = self.num_cols();
        let signs: Vec<i64> = self.b.iter().map(|x| if x.is_negative() { -1 } else { 1 }).collect();
        let rows = (0..m)
            .map(|i| {
                let mut row: Vec<Q> = self.a[i].iter().map(|x| x * q(signs[i])).collect();
                row.extend((0..m).map(|k| if k == i { q(1) } else { Q::zero() }));
                row
            })
            .collect();
        let rhs = self.b.iter().zip(&signs).map(|(x, &s)| x * q(s)).collect();
        let p = Prepared { rows, rhs, basis: (n..n + m).collect(), signs, n };
        Ok(with_fallback(|| two_phase::<Ratio<i64>>(self, &p), || two_phase::<Q>(self, &p)))
    }

    /// Simplex started from a basis of signed unit columns: `basis[i]` must be `±eᵢ` and the
    /// corresponding basic solution nonnegative. Skips the first phase.
    pub fn solve_from_unit_basis(&self, basis: &[usize]) -> Result<LpSolution, LpError> {
        self.check_shape()?;
        let m = self.num_rows();
        let n = self.num_cols();
        if basis.len() != m {
            return Err(LpError::Shape);
        }
        let mut signs = Vec::with_capacity(m);
        for (i, &j) in basis.iter().enumerate() {
            if j >= n {
                return Err(LpError::NotUnitColumn(j));
            }
            let entry = &self.a[i][j];
            let unit = (entry == &q(1) || entry == &q(-1)) && (0..m).all(|k| k == i || self.a[k][j].is_zero());
            if !unit {
                return Err(LpError::NotUnitColumn(j));
            }
            signs.push(if entry.is_negative() { -1 } else { 1 });
        }
        let rows = (0..m).map(|i| self.a[i].iter().map(|x| x * q(signs[i])).collect()).collect();
        let rhs: Vec<Q> = (0..m).map(|i| &self.b[i] * q(signs[i])).collect();
        if let Some(i) = rhs.iter().position(Signed::is_negative) {
            return Err(LpError::InfeasibleStart(i));
        }
        let p = Prepared { rows, rhs, basis: basis.to_vec(), signs, n };
        Ok(with_fallback(|| one_phase::<Ratio<i64>>(self, &p), || one_phase::<Q>(self, &p)))
    }
}

/// Indices of a maximal linearly independent set of integer columns, chosen greedily from the
/// left. Columns are given sparsely as `(row, entry)` pairs.
pub fn independent_columns(rows: usize, columns: &[Vec<(usize, i64)>]) -> Vec<usize> {
    greedy_independent::<Ratio<i64>>(rows, columns)
        .or_else(|_| greedy_independent::<Q>(rows, columns))
        .expect("big rationals do not overflow")
}

fn greedy_independent<T: Scalar>(rows: usize, columns: &[Vec<(usize, i64)>]) -> Result<Vec<usize>, Overflow> {
    // Each echelon vector is 1 at its pivot and 0 at the pivots of earlier vectors.
    let mut echelon: Vec<(usize, Vec<T>)> = Vec::new();
    let mut kept = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        let mut v = vec![T::zero(); rows];
        for &(i, x) in col {
            v[i] = T::from_q(&q(x))?;
        }
        for (p, e) in &echelon {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (k, x) in e.iter().enumerate() {
                if !x.is_zero() {
                    v[k] = v[k].minus(&f.times(x)?)?;
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            let piv = v[p].clone();
            for x in v.iter_mut().filter(|x| !x.is_zero()) {
                *x = x.over(&piv)?;
            }
            echelon.push((p, v));
            kept.push(j);
        }
    }
    Ok(kept)
}

#[derive(Debug)]
struct Overflow;

fn with_fallback(
    fast: impl FnOnce() -> Result<LpSolution, Overflow>,
    exact: impl FnOnce() -> Result<LpSolution, Overflow>,
) -> LpSolution {
    fast().or_else(|_| exact()).expect("big rationals do not overflow")
}

fn two_phase<T: Scalar>(lp: &LinearProgram, p: &Prepared) -> Result<LpSolution, Overflow> {
    let m = lp.num_rows();
    let n = p.n;
    let mut phase1_cost = vec![Q::zero(); n];
    phase1_cost.extend(std::iter::repeat(q(1)).take(m));
    let mut t = Tableau::<T>::new(p, &phase1_cost, vec![true; n + m])?;
    t.run()?;
    if t.value.is_pos() {
        return Ok(LpSolution {
            status: LpStatus::Infeasible,
            x: Vec::new(),
            value: Q::zero(),
            dual: Vec::new(),
            basis: Vec::new(),
            pivots: t.pivots,
        });
    }
    // Drive artificial variables out of the basis where a real column can replace them.
    for i in 0..m {
        if t.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, j)?;
            }
        }
    }
    let mut phase2_cost = lp.c.clone();
    phase2_cost.extend(std::iter::repeat(Q::zero()).take(m));
    let mut allowed = vec![true; n];
    allowed.extend(std::iter::repeat(false).take(m));
    t.reset_objective(&phase2_cost, allowed)?;
    let status = t.run()?;
    let dual = (0..m).map(|i| (&phase2_cost[n + i] - t.reduced[n + i].to_q()) * q(p.signs[i])).collect();
    Ok(t.finish(status, n, dual))
}

fn one_phase<T: Scalar>(lp: &LinearProgram, p: &Prepared) -> Result<LpSolution, Overflow> {
    let n = p.n;
    let mut t = Tableau::<T>::new(p, &lp.c, vec![true; n])?;
    let status = t.run()?;
    let dual = (0..lp.num_rows())
        .map(|i| (&lp.c[p.basis[i]] - t.reduced[p.basis[i]].to_q()) * q(p.signs[i]))
        .collect();
    Ok(t.finish(status, n, dual))
}

/// Exact ordered field arithmetic that may report overflow.
trait Scalar: Clone + Ord + Zero {
    fn from_q(x: &Q) -> Result<Self, Overflow>;
    fn to_q(&self) -> Q;
    fn plus(&self, o: &Self) -> Result<Self, Overflow>;
    fn minus(&self, o: &Self) -> Result<Self, Overflow>;
    fn times(&self, o: &Self) -> Result<Self, Overflow>;
    fn over(&self, o: &Self) -> Result<Self, Overflow>;
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
}

impl Scalar for Q {
    fn from_q(x: &Q) -> Result<Self, Overflow> {
        Ok(x.clone())
    }
    fn to_q(&self) -> Q {
        self.clone()
    }
    fn plus(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self + o)
    }
    fn minus(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self - o)
    }
    fn times(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self * o)
    }
    fn over(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self / o)
    }
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
}

impl Scalar for Ratio<i64> {
    fn from_q(x: &Q) -> Result<Self, Overflow> {
        let n = x.numer().to_i64().ok_or(Overflow)?;
        let d = x.denom().to_i64().ok_or(Overflow)?;
        Ok(Ratio::new_raw(n, d))
    }
    fn to_q(&self) -> Q {
        Q::new_raw((*self.numer()).into(), (*self.denom()).into())
    }
    fn plus(&self, o: &Self) -> Result<Self, Overflow> {
        self.checked_add(o).ok_or(Overflow)
    }
    fn minus(&self, o: &Self) -> Result<Self, Overflow> {
        self.checked_sub(o).ok_or(Overflow)
    }
    fn times(&self, o: &Self) -> Result<Self, Overflow> {
        self.checked_mul(o).ok_or(Overflow)
    }
    fn over(&self, o: &Self) -> Result<Self, Overflow> {
        self.checked_div(o).ok_or(Overflow)
    }
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
}

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
    basis: Vec<usize>,
    reduced: Vec<T>,
    value: T,
    allowed: Vec<bool>,
    pivots: usize,
}

impl<T: Scalar> Tableau<T> {
    fn new(p: &Prepared, cost: &[Q], allowed: Vec<bool>) -> Result<Self, Overflow> {
        let conv = |v: &[Q]| v.iter().map(T::from_q).collect::<Result<Vec<T>, Overflow>>();
        let rows = p.rows.iter().map(|r| conv(r)).collect::<Result<Vec<_>, _>>()?;
        let mut t = Self {
            rows,
            rhs: conv(&p.rhs)?,
            basis: p.basis.clone(),
            reduced: Vec::new(),
            value: T::zero(),
            allowed: Vec::new(),
            pivots: 0,
        };
        t.reset_objective(cost, allowed)?;
        Ok(t)
    }

    fn reset_objective(&mut self, cost: &[Q], allowed: Vec<bool>) -> Result<(), Overflow> {
        let mut reduced = cost.iter().map(T::from_q).collect::<Result<Vec<T>, _>>()?;
        let mut value = T::zero();
        for (i, &bi) in self.basis.iter().enumerate() {
            let cb = T::from_q(&cost[bi])?;
            if cb.is_zero() {
                continue;
            }
            for (j, x) in self.rows[i].iter().enumerate() {
                if !x.is_zero() {
                    reduced[j] = reduced[j].minus(&cb.times(x)?)?;
                }
            }
            value = value.plus(&cb.times(&self.rhs[i])?)?;
        }
        self.reduced = reduced;
        self.value = value;
        self.allowed = allowed;
        Ok(())
    }

    fn pivot(&mut self, r: usize, e: usize) -> Result<(), Overflow> {
        let piv = self.rows[r][e].clone();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x = x.over(&piv)?;
            }
        }
        self.rhs[r] = self.rhs[r].over(&piv)?;
        let nz: Vec<usize> = (0..self.rows[r].len()).filter(|&j| !self.rows[r][j].is_zero()).collect();
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][e].is_zero() {
                continue;
            }
            let f = self.rows[i][e].clone();
            for &j in &nz {
                self.rows[i][j] = self.rows[i][j].minus(&f.times(&pivot_row[j])?)?;
            }
            self.rhs[i] = self.rhs[i].minus(&f.times(&pivot_rhs)?)?;
        }
        let f = self.reduced[e].clone();
        if !f.is_zero() {
            for &j in &nz {
                self.reduced[j] = self.reduced[j].minus(&f.times(&pivot_row[j])?)?;
            }
            self.value = self.value.plus(&f.times(&pivot_rhs)?)?;
        }
        self.rows[r] = pivot_row;
        self.basis[r] = e;
        self.pivots += 1;
        Ok(())
    }

    fn run(&mut self) -> Result<LpStatus, Overflow> {
        let mut bland = false;
        loop {
            let candidates = (0..self.reduced.len()).filter(|&j| self.allowed[j] && self.reduced[j].is_neg());
            let entering = if bland {
                candidates.min()
            } else {
                candidates.min_by(|&a, &b| self.reduced[a].cmp(&self.reduced[b]).then(a.cmp(&b)))
            };
            let Some(e) = entering else { return Ok(LpStatus::Optimal) };
            let mut leave: Option<(usize, T)> = None;
            for i in 0..self.rows.len() {
                let x = &self.rows[i][e];
                if !x.is_pos() {
                    continue;
                }
                let ratio = self.rhs[i].over(x)?;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, ratio)) = leave else { return Ok(LpStatus::Unbounded) };
            bland = ratio.is_zero();
            self.pivot(r, e)?;
        }
    }

    fn finish(self, status: LpStatus, n: usize, dual: Vec<Q>) -> LpSolution {
        let mut x = vec![Q::zero(); n];
        for (i, &bi) in self.basis.iter().enumerate() {
            if bi < n {
                x[bi] = self.rhs[i].to_q();
            }
        }
        LpSolution { status, x, value: self.value.to_q(), dual, basis: self.basis, pivots: self.pivots }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::q_frac;
    use itertools::Itertools;
    use proptest::prelude::*;

    fn lp(a: &[&[i64]], b: &[i64], c: &[i64]) -> LinearProgram {
        LinearProgram {
            a: a.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(),
            b: b.iter().map(|&x| q(x)).collect(),
            c: c.iter().map(|&x| q(x)).collect(),
        }
    }

    /// Solves the square system `M x = b` exactly; `None` when singular.
    fn solve_square(m: Vec<Vec<Q>>, b: Vec<Q>) -> Option<Vec<Q>> {
        let k = b.len();
        let mut aug: Vec<Vec<Q>> = m.into_iter().zip(b).map(|(mut r, x)| {
            r.push(x);
            r
        }).collect();
        for col in 0..k {
            let p = (col..k).find(|&i| !aug[i][col].is_zero())?;
            aug.swap(p, col);
            let inv = q(1) / &aug[col][col];
            for x in aug[col].iter_mut() {
                *x *= &inv;
            }
            for i in 0..k {
                if i != col && !aug[i][col].is_zero() {
                    let f = aug[i][col].clone();
                    for j in col..=k {
                        let d = &f * &aug[col][j];
                        aug[i][j] -= d;
                    }
                }
            }
        }
        Some(aug.into_iter().map(|r| r[k].clone()).collect())
    }

    /// Optimum over basic feasible solutions by brute force; `None` when infeasible.
    /// Assumes full row rank and a bounded objective.
    fn vertex_oracle(p: &LinearProgram) -> Option<Q> {
        let m = p.num_rows();
        let n = p.num_cols();
        let mut best: Option<Q> = None;
        for cols in (0..n).combinations(m) {
            let mat: Vec<Vec<Q>> = (0..m).map(|i| cols.iter().map(|&j| p.a[i][j].clone()).collect()).collect();
            let Some(xb) = solve_square(mat, p.b.clone()) else { continue };
            if xb.iter().any(Signed::is_negative) {
                continue;
            }
            let v: Q = cols.iter().zip(&xb).map(|(&j, x)| &p.c[j] * x).sum();
            if best.as_ref().map_or(true, |b| v < *b) {
                best = Some(v);
            }
        }
        best
    }

    fn check_certificates(p: &LinearProgram, s: &LpSolution) {
        for i in 0..p.num_rows() {
            let ax: Q = (0..p.num_cols()).map(|j| &p.a[i][j] * &s.x[j]).sum();
            assert_eq!(ax, p.b[i]);
        }
        assert!(s.x.iter().all(|x| !x.is_negative()));
        let cx: Q = p.c.iter().zip(&s.x).map(|(c, x)| c * x).sum();
        assert_eq!(cx, s.value);
        let by: Q = p.b.iter().zip(&s.dual).map(|(b, y)| b * y).sum();
        assert_eq!(by, s.value);
        for j in 0..p.num_cols() {
            let aty: Q = (0..p.num_rows()).map(|i| &p.a[i][j] * &s.dual[i]).sum();
            assert!(aty <= p.c[j], "dual infeasible at column {j}");
        }
    }

    #[test]
    fn small_problem() {
        // min x1 + 2 x2 with x1 + x2 = 3, x1 − x3 = 1.
        let p = lp(&[&[1, 1, 0], &[1, 0, -1]], &[3, 1], &[1, 2, 0]);
        let s = p.solve().unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.value, q(3));
        check_certificates(&p, &s);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let p = lp(&[&[1, 1]], &[-1], &[1, 1]);
        assert_eq!(p.solve().unwrap().status, LpStatus::Infeasible);
        let p = lp(&[&[1, -1]], &[1], &[0, -1]);
        assert_eq!(p.solve().unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn unit_basis_start() {
        // min u + v subject to u − v + 2b = 3 with u, v, b ≥ 0.
        let p = lp(&[&[1, -1, 2]], &[3], &[1, 1, 0]);
        let s = p.solve_from_unit_basis(&[0]).unwrap();
        assert_eq!(s.value, q(0));
        assert_eq!(s.x[2], q_frac(3, 2));
        check_certificates(&p, &s);
        assert_eq!(p.solve_from_unit_basis(&[1]).unwrap_err(), LpError::InfeasibleStart(0));
        assert_eq!(p.solve_from_unit_basis(&[2]).unwrap_err(), LpError::NotUnitColumn(2));
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's example in equality form; Dantzig's rule alone cycles on it.
        let p = LinearProgram {
            a: vec![
                vec![q_frac(1, 4), q(-8), q(-1), q(9), q(1), q(0), q(0)],
                vec![q_frac(1, 2), q(-12), q_frac(-1, 2), q(3), q(0), q(1), q(0)],
                vec![q(0), q(0), q(1), q(0), q(0), q(0), q(1)],
            ],
            b: vec![q(0), q(0), q(1)],
            c: vec![q_frac(-3, 4), q(20), q_frac(-1, 2), q(6), q(0), q(0), q(0)],
        };
        let s = p.solve_from_unit_basis(&[4, 5, 6]).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.value, q_frac(-5, 4));
        check_certificates(&p, &s);
        assert_eq!(p.solve().unwrap().value, q_frac(-5, 4));
    }

    #[test]
    fn independent_column_selection() {
        let cols = vec![vec![(0, 1), (1, -1)], vec![], vec![(0, -2), (1, 2)], vec![(1, 1)], vec![(0, 1)]];
        assert_eq!(independent_columns(2, &cols), vec![0, 3]);
    }

    proptest! {
        #[test]
        fn agrees_with_vertex_enumeration(
            m in 1usize..=3,
            n in 2usize..=6,
            seed in proptest::collection::vec(-3i64..=3, 64),
        ) {
            let n = n.max(m + 1);
            let a: Vec<Vec<Q>> = (0..m).map(|i| (0..n).map(|j| q(seed[(i * n + j) % 64])).collect()).collect();
            let b: Vec<Q> = (0..m).map(|i| q(seed[(40 + i) % 64])).collect();
            // Nonnegative costs keep the problem bounded below by zero.
            let c: Vec<Q> = (0..n).map(|j| q(seed[(50 + j) % 64].abs())).collect();
            let p = LinearProgram { a, b, c };
            let full_rank = {
                let mut best = 0;
                for cols in (0..n).combinations(m) {
                    let mat: Vec<Vec<Q>> = (0..m).map(|i| cols.iter().map(|&j| p.a[i][j].clone()).collect()).collect();
                    if solve_square(mat, vec![Q::zero(); m]).is_some() { best = m; break; }
                }
                best == m
            };
            prop_assume!(full_rank);
            let s = p.solve().unwrap();
            match vertex_oracle(&p) {
                None => prop_assert_eq!(s.status, LpStatus::Infeasible),
                Some(v) => {
                    prop_assert_eq!(s.status, LpStatus::Optimal);
                    prop_assert_eq!(&s.value, &v);
                    check_certificates(&p, &s);
                }
            }
        }
    }
}
