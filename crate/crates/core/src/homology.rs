//! Homology over ℤ and ℚ through exact integer reductions.
//!
//! For `Hₙ` the boundary `∂ₙ` is brought to column echelon form `∂ₙ·Q = [H | 0]` by unimodular
//! column operations, so the last `k` columns of `Q` are a basis of the cycles. The boundaries
//! `∂ₙ₊₁` are rewritten in that basis and put in Smith normal form `P·M·R = D`. Class
//! coordinates of a cycle `z` are `P · (Q⁻¹z)[last k]`, which answers membership and yields
//! explicit bounding chains.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::chain::{build_reduced_chain_complex, Chain, ChainComplex, ChainError, Ring, SparseMatrix};
use crate::mcx::Multicomplex;
use crate::num::{q_int, Q};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone)]
struct Mat {
    rows: usize,
    cols: usize,
    a: Vec<BigInt>,
}

impl Mat {
    fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, a: vec![BigInt::zero(); rows * cols] }
    }

    fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.a[i * n + i] = BigInt::one();
        }
        m
    }

    fn from_sparse(m: &SparseMatrix) -> Self {
        let mut out = Self::zeros(m.rows, m.cols);
        for (j, col) in m.columns.iter().enumerate() {
            for &(i, x) in col {
                out.a[i * m.cols + j] = BigInt::from(x);
            }
        }
        out
    }

    fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.a[i * self.cols + j]
    }

    /// row `dst` += `factor` · row `src`
    fn row_addmul(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let x = &self.a[src * self.cols + j];
            if !x.is_zero() {
                let add = x * factor;
                self.a[dst * self.cols + j] += add;
            }
        }
    }

    /// column `dst` += `factor` · column `src`
    fn col_addmul(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let x = &self.a[i * self.cols + src];
            if !x.is_zero() {
                let add = x * factor;
                self.a[i * self.cols + dst] += add;
            }
        }
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 != r2 {
            for j in 0..self.cols {
                self.a.swap(r1 * self.cols + j, r2 * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, c1: usize, c2: usize) {
        if c1 != c2 {
            for i in 0..self.rows {
                self.a.swap(i * self.cols + c1, i * self.cols + c2);
            }
        }
    }

    fn neg_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let x = &mut self.a[r * self.cols + j];
            *x = -std::mem::take(x);
        }
    }

    fn neg_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let x = &mut self.a[i * self.cols + c];
            *x = -std::mem::take(x);
        }
    }

    fn row(&self, i: usize) -> &[BigInt] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }
}

/// Floor-style quotient used to reduce `x` modulo the pivot `p`.
fn quot(x: &BigInt, p: &BigInt) -> BigInt {
    x.div_floor(p)
}

/// Homology data for one degree.
#[derive(Debug, Clone)]
pub struct DegreeHomology {
    pub degree: usize,
    pub ring: Ring,
    /// Rank of the free part (the Betti number).
    pub free_rank: usize,
    /// Invariant factors `≥ 2` of the torsion part (always empty over ℚ).
    pub torsion: Vec<BigInt>,
    /// One cycle per free generator followed by one per torsion generator, in complex
    /// coordinates.
    pub generators: Vec<Vec<BigInt>>,
    boundary_n: SparseMatrix,
    /// Rows of `Q⁻¹` giving cycle-basis coordinates.
    qinv_kernel_rows: Vec<Vec<BigInt>>,
    p: Mat,
    /// Diagonal of the Smith form (nonzero entries, including ones).
    d: Vec<BigInt>,
    r: Mat,
}

impl DegreeHomology {
    fn compute(cc: &ChainComplex, n: usize, ring: Ring) -> Self {
        let a_sparse = cc.boundary_matrix(n);
        let b_sparse = cc.boundary_matrix(n + 1);
        let m_n = cc.rank(n);

        // Column echelon form of ∂ₙ, tracking Q and Q⁻¹.
        let mut a = Mat::from_sparse(&a_sparse);
        let mut qm = Mat::identity(m_n);
        let mut qinv = Mat::identity(m_n);
        let mut c = 0;
        for row in 0..a.rows {
            if c >= m_n {
                break;
            }
            loop {
                let piv = (c..m_n)
                    .filter(|&j| !a.at(row, j).is_zero())
                    .min_by(|&x, &y| a.at(row, x).abs().cmp(&a.at(row, y).abs()));
                let Some(piv) = piv else { break };
                a.swap_cols(piv, c);
                qm.swap_cols(piv, c);
                qinv.swap_rows(piv, c);
                let mut clean = true;
                for j in (c + 1)..m_n {
                    if a.at(row, j).is_zero() {
                        continue;
                    }
                    let f = quot(a.at(row, j), a.at(row, c));
                    let negf = -&f;
                    a.col_addmul(j, c, &negf);
                    qm.col_addmul(j, c, &negf);
                    qinv.row_addmul(c, j, &f);
                    if !a.at(row, j).is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    c += 1;
                    break;
                }
            }
        }
        let k = m_n - c;
        let qinv_kernel_rows: Vec<Vec<BigInt>> = (c..m_n).map(|i| qinv.row(i).to_vec()).collect();

        // Boundaries in cycle coordinates: M = (Q⁻¹ ∂ₙ₊₁)[last k rows].
        let p_cols = b_sparse.cols;
        let mut m = Mat::zeros(k, p_cols);
        for (j, col) in b_sparse.columns.iter().enumerate() {
            for (i, qrow) in qinv_kernel_rows.iter().enumerate() {
                let mut acc = BigInt::zero();
                for &(l, x) in col {
                    if !qrow[l].is_zero() {
                        acc += &qrow[l] * BigInt::from(x);
                    }
                }
                m.a[i * p_cols + j] = acc;
            }
        }

        // Smith normal form P·M·R = D.
        let mut p = Mat::identity(k);
        let mut pinv = Mat::identity(k);
        let mut r = Mat::identity(p_cols);
        let mut t = 0;
        while t < k.min(p_cols) {
            let Some((pi, pj)) = min_entry(&m, t, t) else { break };
            m.swap_rows(pi, t);
            p.swap_rows(pi, t);
            pinv.swap_cols(pi, t);
            m.swap_cols(pj, t);
            r.swap_cols(pj, t);
            loop {
                let mut clean = true;
                for i in (t + 1)..k {
                    if m.at(i, t).is_zero() {
                        continue;
                    }
                    let f = quot(m.at(i, t), m.at(t, t));
                    let negf = -&f;
                    m.row_addmul(i, t, &negf);
                    p.row_addmul(i, t, &negf);
                    pinv.col_addmul(t, i, &f);
                    if !m.at(i, t).is_zero() {
                        clean = false;
                    }
                }
                for j in (t + 1)..p_cols {
                    if m.at(t, j).is_zero() {
                        continue;
                    }
                    let f = quot(m.at(t, j), m.at(t, t));
                    let negf = -&f;
                    m.col_addmul(j, t, &negf);
                    r.col_addmul(j, t, &negf);
                    if !m.at(t, j).is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    // Move the smallest leftover of row/column t onto the diagonal.
                    let mut best: Option<(usize, usize)> = None;
                    let consider = |i: usize, j: usize, best: &mut Option<(usize, usize)>| {
                        if !m.at(i, j).is_zero()
                            && best.map_or(true, |(bi, bj)| m.at(i, j).abs() < m.at(bi, bj).abs())
                        {
                            *best = Some((i, j));
                        }
                    };
                    for i in (t + 1)..k {
                        consider(i, t, &mut best);
                    }
                    for j in (t + 1)..p_cols {
                        consider(t, j, &mut best);
                    }
                    let (bi, bj) = best.expect("some entry is left");
                    if bj == t {
                        m.swap_rows(bi, t);
                        p.swap_rows(bi, t);
                        pinv.swap_cols(bi, t);
                    } else {
                        m.swap_cols(bj, t);
                        r.swap_cols(bj, t);
                    }
                    continue;
                }
                // Divisibility of the remaining block by the pivot.
                let piv = m.at(t, t).clone();
                let bad = ((t + 1)..k).find(|&i| ((t + 1)..p_cols).any(|j| !m.at(i, j).is_multiple_of(&piv)));
                match bad {
                    Some(i) => {
                        m.row_addmul(t, i, &BigInt::one());
                        p.row_addmul(t, i, &BigInt::one());
                        pinv.col_addmul(i, t, &-BigInt::one());
                    }
                    None => break,
                }
            }
            if m.at(t, t).is_negative() {
                m.neg_row(t);
                p.neg_row(t);
                pinv.neg_col(t);
            }
            t += 1;
        }
        let rank = t;
        let d: Vec<BigInt> = (0..rank).map(|i| m.at(i, i).clone()).collect();

        // Generators: columns of K·P⁻¹, free ones first, then torsion.
        let column_of_kpinv = |i: usize| -> Vec<BigInt> {
            let mut v = vec![BigInt::zero(); m_n];
            for l in 0..k {
                let coef = pinv.at(l, i);
                if coef.is_zero() {
                    continue;
                }
                for (row, out) in v.iter_mut().enumerate() {
                    let x = qm.at(row, c + l);
                    if !x.is_zero() {
                        *out += x * coef;
                    }
                }
            }
            v
        };
        let mut generators: Vec<Vec<BigInt>> = (rank..k).map(column_of_kpinv).collect();
        let mut torsion = Vec::new();
        if ring == Ring::Z {
            for (i, di) in d.iter().enumerate() {
                if !di.is_one() {
                    torsion.push(di.clone());
                    generators.push(column_of_kpinv(i));
                }
            }
        }

        Self { degree: n, ring, free_rank: k - rank, torsion, generators, boundary_n: a_sparse, qinv_kernel_rows, p, d, r }
    }

    /// Coordinates of a cycle in the Smith basis of the cycle group.
    fn class_coords(&self, z: &[Q]) -> Vec<Q> {
        let w: Vec<Q> = self
            .qinv_kernel_rows
            .iter()
            .map(|row| row.iter().zip(z).filter(|(a, _)| !a.is_zero()).map(|(a, x)| q_int(a.clone()) * x).sum())
            .collect();
        (0..self.p.rows)
            .map(|i| self.p.row(i).iter().zip(&w).filter(|(a, _)| !a.is_zero()).map(|(a, x)| q_int(a.clone()) * x).sum())
            .collect()
    }

    fn is_cycle_vec(&self, z: &[Q]) -> bool {
        self.boundary_n.mul_vec(z).iter().all(Zero::is_zero)
    }

    /// Some `b` with `∂b = z` (integral over ℤ), if one exists.
    pub fn solve_boundary_vec(&self, z: &[Q]) -> Option<Vec<Q>> {
        if !self.is_cycle_vec(z) {
            return None;
        }
        let y = self.class_coords(z);
        let rank = self.d.len();
        if y[rank..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut x = vec![Q::zero(); self.r.rows];
        for i in 0..rank {
            let xi = &y[i] / q_int(self.d[i].clone());
            if self.ring == Ring::Z && !xi.is_integer() {
                return None;
            }
            x[i] = xi;
        }
        Some(
            (0..self.r.rows)
                .map(|row| {
                    (0..rank).filter(|&i| !self.r.at(row, i).is_zero()).map(|i| q_int(self.r.at(row, i).clone()) * &x[i]).sum()
                })
                .collect(),
        )
    }

    pub fn is_boundary_vec(&self, z: &[Q]) -> bool {
        self.solve_boundary_vec(z).is_some()
    }

    /// Coordinates of the class of `z` on the free generators (ℚ-linear, exact).
    pub fn free_coords(&self, z: &[Q]) -> Vec<Q> {
        self.class_coords(z)[self.d.len()..].to_vec()
    }
}

fn min_entry(m: &Mat, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in r0..m.rows {
        for j in c0..m.cols {
            let x = m.at(i, j);
            if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < m.at(bi, bj).abs()) {
                best = Some((i, j));
                if x.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

/// Homology of a chain complex in every degree it determines.
#[derive(Debug, Clone)]
pub struct HomologyResult {
    pub ring: Ring,
    pub degrees: Vec<DegreeHomology>,
    complex: ChainComplex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeSummary {
    pub degree: usize,
    pub rank: usize,
    pub torsion: Vec<String>,
}

impl HomologyResult {
    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.free_rank).collect()
    }

    pub fn degree(&self, n: usize) -> Option<&DegreeHomology> {
        self.degrees.iter().find(|d| d.degree == n)
    }

    pub fn summary(&self) -> Vec<DegreeSummary> {
        self.degrees
            .iter()
            .map(|d| DegreeSummary { degree: d.degree, rank: d.free_rank, torsion: d.torsion.iter().map(|t| t.to_string()).collect() })
            .collect()
    }

    fn degree_for(&self, c: &Chain) -> Result<&DegreeHomology, ChainError> {
        self.degree(c.degree).ok_or(ChainError::DegreeOutOfRange(c.degree))
    }

    pub fn generators(&self, n: usize) -> Vec<Chain> {
        self.degree(n)
            .map(|d| {
                d.generators
                    .iter()
                    .map(|g| {
                        let v: Vec<Q> = g.iter().map(|x| q_int(x.clone())).collect();
                        self.complex.chain_from_vector(n, Ring::Z, &v)
                    })
                    .collect()
            })
            .unwrap_or_default()
    }

    /// `b` with `∂b = z`, if `z` is a boundary (integral `b` over ℤ).
    pub fn solve_boundary(&self, z: &Chain) -> Result<Option<Chain>, ChainError> {
        let d = self.degree_for(z)?;
        if self.ring == Ring::Z {
            z.to_ring(Ring::Z)?;
        }
        let v = self.complex.vector(z)?;
        Ok(d.solve_boundary_vec(&v).map(|b| self.complex.chain_from_vector(z.degree + 1, self.ring, &b)))
    }

    pub fn is_boundary(&self, z: &Chain) -> Result<bool, ChainError> {
        Ok(self.solve_boundary(z)?.is_some())
    }

    /// `z₁ − z₂` is a boundary (both must be cycles).
    pub fn are_homologous(&self, z1: &Chain, z2: &Chain) -> Result<bool, ChainError> {
        if !self.complex.is_cycle(z1)? || !self.complex.is_cycle(z2)? {
            return Err(ChainError::NotACycle);
        }
        self.is_boundary(&z1.minus(z2))
    }
}

/// Homology in every degree the complex determines.
pub fn homology(cc: &ChainComplex, ring: Ring) -> HomologyResult {
    let degrees = cc.homology_degrees().map(|n| DegreeHomology::compute(cc, n, ring)).collect();
    HomologyResult { ring, degrees, complex: cc.clone() }
}

/// Homology in the single degree `n`.
pub fn homology_in_degree(cc: &ChainComplex, n: usize, ring: Ring) -> Result<HomologyResult, ChainError> {
    if !cc.homology_degrees().contains(&n) {
        return Err(ChainError::DegreeOutOfRange(n));
    }
    Ok(HomologyResult { ring, degrees: vec![DegreeHomology::compute(cc, n, ring)], complex: cc.clone() })
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum FundamentalCycleError {
    #[error("multicomplex has simplices above dimension {0}")]
    TooBig(usize),
    #[error("H_{degree}(K; Z) has rank {rank} and torsion {torsion:?}, not infinite cyclic")]
    NotCyclic { degree: usize, rank: usize, torsion: Vec<String> },
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// Generator of `Hₙ(K;ℤ) ≅ ℤ` as a reduced integral cycle, signed so that its first nonzero
/// coefficient (in basis order) is positive.
pub fn fundamental_cycle(mc: &Multicomplex, n: usize) -> Result<Chain, FundamentalCycleError> {
    if mc.dim().is_some_and(|d| d > n) {
        return Err(FundamentalCycleError::TooBig(n));
    }
    let cc = build_reduced_chain_complex(mc, n)?;
    let h = homology_in_degree(&cc, n, Ring::Z)?;
    let d = &h.degrees[0];
    if d.free_rank != 1 || !d.torsion.is_empty() {
        return Err(FundamentalCycleError::NotCyclic {
            degree: n,
            rank: d.free_rank,
            torsion: d.torsion.iter().map(|t| t.to_string()).collect(),
        });
    }
    let g = h.generators(n).remove(0);
    let lead = (0..cc.rank(n)).map(|i| g.coeff(&cc.basis(n)[i])).find(|x| !x.is_zero()).expect("generator is nonzero");
    Ok(if lead.is_negative() { g.neg() } else { g })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{build_full_chain_complex, Basis};
    use crate::fixtures;
    use crate::mcx::special_sphere;
    use crate::num::q;

    #[test]
    fn spheres_over_q_and_z() {
        let s2 = special_sphere(2, &["a", "b", "c"]).unwrap();
        let red = build_reduced_chain_complex(&s2, 2).unwrap();
        assert_eq!(homology(&red, Ring::Q).betti_numbers(), vec![1, 0, 1]);
        let circle = fixtures::triangle_boundary();
        let h = homology(&build_reduced_chain_complex(&circle, 1).unwrap(), Ring::Z);
        assert_eq!(h.betti_numbers(), vec![1, 1]);
        assert!(h.degrees.iter().all(|d| d.torsion.is_empty()));
    }

    #[test]
    fn single_vertex() {
        let point = fixtures::simplex(0);
        let h = homology(&build_reduced_chain_complex(&point, 3).unwrap(), Ring::Z);
        assert_eq!(h.betti_numbers(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn torsion_of_a_scaled_circle() {
        // C₁ = ℤ → C₀ = ℤ with ∂ = 0 and C₂ = ℤ → C₁ with ∂ = 2 gives H₁ = ℤ/2.
        use crate::chain::{AlgebraicSimplex, SparseMatrix};
        let cc = ChainComplex::from_parts(
            vec!["v".into(), "e".into(), "t".into()],
            vec!["0".into(), "1".into(), "2".into()],
            vec![
                vec![AlgebraicSimplex::new(0, vec![0])],
                vec![AlgebraicSimplex::new(1, vec![0, 1])],
                vec![AlgebraicSimplex::new(2, vec![0, 1, 2])],
            ],
            vec![
                SparseMatrix::zero(0, 1),
                SparseMatrix::zero(1, 1),
                SparseMatrix { rows: 1, cols: 1, columns: vec![vec![(0, 2)]] },
            ],
            Basis::Reduced,
            false,
        )
        .unwrap();
        let hz = homology(&cc, Ring::Z);
        assert_eq!(hz.degrees[1].torsion, vec![BigInt::from(2)]);
        assert_eq!(hz.degrees[1].free_rank, 0);
        let e = Chain::single(Ring::Z, AlgebraicSimplex::new(1, vec![0, 1]), q(1));
        assert!(!hz.is_boundary(&e).unwrap());
        assert!(hz.is_boundary(&e.scaled(&q(2))).unwrap());
        let hq = homology(&cc, Ring::Q);
        assert!(hq.is_boundary(&e.to_ring(Ring::Q).unwrap()).unwrap());
        let b = hq.solve_boundary(&e.to_ring(Ring::Q).unwrap()).unwrap().unwrap();
        assert_eq!(cc.boundary(&b).unwrap(), e.to_ring(Ring::Q).unwrap());
    }

    #[test]
    fn full_complex_with_repeats_matches_reduced() {
        let s1 = special_sphere(1, &["a", "b"]).unwrap();
        let full = build_full_chain_complex(&s1, 3, Basis::WithRepeats).unwrap();
        assert_eq!(homology(&full, Ring::Z).betti_numbers(), vec![1, 1, 0]);
        // Distinct tuples alone give a wrong H₁.
        let distinct = build_full_chain_complex(&s1, 1, Basis::Distinct).unwrap();
        assert_eq!(homology(&distinct, Ring::Q).betti_numbers(), vec![1, 3]);
    }

    #[test]
    fn fundamental_cycles() {
        let s2 = special_sphere(2, &["a", "b", "c"]).unwrap();
        let z = fundamental_cycle(&s2, 2).unwrap();
        assert_eq!(z.support_len(), 2);
        assert!(z.terms().values().all(|x| x.abs() == q(1)));
        let circle = fixtures::triangle_boundary();
        assert_eq!(fundamental_cycle(&circle, 1).unwrap().support_len(), 3);
        assert!(matches!(
            fundamental_cycle(&fixtures::cone_over_double_edge(), 2),
            Err(FundamentalCycleError::NotCyclic { .. })
        ));
    }
}
