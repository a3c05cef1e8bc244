//! Chains, cochains and chain complexes of multicomplexes.
//!
//! A chain complex is stored with explicit labelled bases and sparse integer boundary matrices.
//! Labels are [`AlgebraicSimplex`] values `(σ, (v₀,…,vₙ))`; the complex carries its own name
//! tables, so chains can be printed and parsed without the multicomplex they came from.

mod build;
mod cells;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::mcx::McxError;
use crate::num::{format_q, is_integral, q, Q};

pub use build::{
    alternate, build_alternating_chain_complex, build_full_chain_complex, build_reduced_chain_complex,
    build_relative_complex, cell_chain_complex, project_to_reduced, section_from_reduced,
};
pub use cells::{Cell, CellComplex};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("chain has degree {found}, expected {expected}")]
    WrongDegree { expected: usize, found: usize },
    #[error("`{0}` is not a basis element of the complex")]
    NotInBasis(String),
    #[error("coefficient {0} is not an integer")]
    NonIntegral(String),
    #[error("operation divides coefficients and needs a rational chain")]
    NeedsRationals,
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("degree {0} is outside the complex")]
    DegreeOutOfRange(usize),
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Mcx(#[from] McxError),
}

/// Coefficient ring of a chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ring {
    #[serde(rename = "z")]
    Z,
    #[serde(rename = "q")]
    Q,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Z => "z",
            Ring::Q => "q",
        })
    }
}

/// Basis convention of a chain complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    /// Orderings of the vertex set of each simplex, no repeated vertices.
    Distinct,
    /// All tuples whose underlying set is the vertex set of a simplex, repeats allowed.
    WithRepeats,
    /// One element per simplex, its increasing tuple.
    Reduced,
    /// One element per simplex: the alternating sum of all its orderings.
    Alternating,
}

/// `(σ, (v₀,…,vₙ))`: a simplex index and a tuple of vertex indices (names live in the complex).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlgebraicSimplex {
    pub simplex: usize,
    pub vertices: Vec<usize>,
}

impl AlgebraicSimplex {
    pub fn new(simplex: usize, vertices: Vec<usize>) -> Self {
        Self { simplex, vertices }
    }

    pub fn degree(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn has_repeats(&self) -> bool {
        let mut v = self.vertices.clone();
        v.sort_unstable();
        v.windows(2).any(|w| w[0] == w[1])
    }
}

/// Sparse map from algebraic simplices of one degree to exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub degree: usize,
    pub ring: Ring,
    terms: BTreeMap<AlgebraicSimplex, Q>,
}

impl Chain {
    pub fn zero(degree: usize, ring: Ring) -> Self {
        Self { degree, ring, terms: BTreeMap::new() }
    }

    /// Sums repeated keys and drops zeros.
    pub fn from_terms(
        degree: usize,
        ring: Ring,
        terms: impl IntoIterator<Item = (AlgebraicSimplex, Q)>,
    ) -> Result<Self, ChainError> {
        let mut c = Self::zero(degree, ring);
        for (s, x) in terms {
            if s.vertices.len() != degree + 1 {
                return Err(ChainError::WrongDegree { expected: degree, found: s.degree() });
            }
            if ring == Ring::Z && !is_integral(&x) {
                return Err(ChainError::NonIntegral(format_q(&x)));
            }
            c.add_term(s, &x);
        }
        Ok(c)
    }

    pub fn single(ring: Ring, s: AlgebraicSimplex, coeff: Q) -> Self {
        let mut c = Self::zero(s.degree(), ring);
        c.add_term(s, &coeff);
        c
    }

    pub fn terms(&self) -> &BTreeMap<AlgebraicSimplex, Q> {
        &self.terms
    }

    pub fn coeff(&self, s: &AlgebraicSimplex) -> Q {
        self.terms.get(s).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn add_term(&mut self, s: AlgebraicSimplex, x: &Q) {
        if x.is_zero() {
            return;
        }
        let entry = self.terms.entry(s.clone()).or_insert_with(Q::zero);
        *entry += x;
        if entry.is_zero() {
            self.terms.remove(&s);
        }
    }

    /// `self + factor · other`.
    pub fn add_scaled(&self, other: &Chain, factor: &Q) -> Chain {
        let mut out = self.clone();
        if other.ring == Ring::Q || !is_integral(factor) {
            out.ring = Ring::Q;
        }
        for (s, x) in &other.terms {
            out.add_term(s.clone(), &(x * factor));
        }
        out
    }

    pub fn plus(&self, other: &Chain) -> Chain {
        self.add_scaled(other, &q(1))
    }

    pub fn minus(&self, other: &Chain) -> Chain {
        self.add_scaled(other, &q(-1))
    }

    pub fn scaled(&self, factor: &Q) -> Chain {
        Chain::zero(self.degree, self.ring).add_scaled(self, factor)
    }

    pub fn neg(&self) -> Chain {
        self.scaled(&q(-1))
    }

    pub fn l1_norm(&self) -> Q {
        self.terms.values().map(|x| x.abs()).sum()
    }

    /// Reinterprets the coefficients in another ring; fails for non-integral values going to ℤ.
    pub fn to_ring(&self, ring: Ring) -> Result<Chain, ChainError> {
        if ring == Ring::Z {
            if let Some(x) = self.terms.values().find(|x| !is_integral(x)) {
                return Err(ChainError::NonIntegral(format_q(x)));
            }
        }
        Ok(Chain { ring, ..self.clone() })
    }
}

/// Sparse map from algebraic simplices of one degree to values (the dual basis).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    values: BTreeMap<AlgebraicSimplex, Q>,
}

impl Cochain {
    pub fn zero(degree: usize) -> Self {
        Self { degree, values: BTreeMap::new() }
    }

    pub fn from_values(
        degree: usize,
        values: impl IntoIterator<Item = (AlgebraicSimplex, Q)>,
    ) -> Result<Self, ChainError> {
        let mut c = Self::zero(degree);
        for (s, x) in values {
            if s.vertices.len() != degree + 1 {
                return Err(ChainError::WrongDegree { expected: degree, found: s.degree() });
            }
            c.set(s, x);
        }
        Ok(c)
    }

    pub fn indicator(s: AlgebraicSimplex) -> Self {
        Self::from_values(s.degree(), [(s, q(1))]).expect("degree matches by construction")
    }

    pub fn values(&self) -> &BTreeMap<AlgebraicSimplex, Q> {
        &self.values
    }

    pub fn value(&self, s: &AlgebraicSimplex) -> Q {
        self.values.get(s).cloned().unwrap_or_else(Q::zero)
    }

    pub fn set(&mut self, s: AlgebraicSimplex, x: Q) {
        if x.is_zero() {
            self.values.remove(&s);
        } else {
            self.values.insert(s, x);
        }
    }

    /// Kronecker pairing `⟨φ, c⟩`.
    pub fn eval(&self, c: &Chain) -> Q {
        c.terms().iter().map(|(s, x)| self.value(s) * x).sum()
    }

    /// Largest absolute value on the stored support (absent keys are zero).
    pub fn linf_norm(&self) -> Q {
        self.values.values().map(|x| x.abs()).max().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }
}

/// Sparse integer matrix stored by columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    /// Column `j` as `(row, entry)` pairs with nonzero entries, ascending rows.
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn mul_vec(&self, x: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            if x[j].is_zero() {
                continue;
            }
            for &(i, a) in col {
                out[i] += &x[j] * q(a);
            }
        }
        out
    }

    pub fn transpose_mul_vec(&self, y: &[Q]) -> Vec<Q> {
        self.columns
            .iter()
            .map(|col| col.iter().filter(|(i, _)| !y[*i].is_zero()).map(|&(i, a)| &y[i] * q(a)).sum())
            .collect()
    }

    /// `self · other` is identically zero.
    pub fn product_is_zero(&self, other: &SparseMatrix) -> bool {
        let mut acc: HashMap<usize, i128> = HashMap::new();
        for col in &other.columns {
            acc.clear();
            for &(k, b) in col {
                for &(i, a) in &self.columns[k] {
                    *acc.entry(i).or_insert(0) += a as i128 * b as i128;
                }
            }
            if acc.values().any(|&v| v != 0) {
                return false;
            }
        }
        true
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }
}

/// A finite chain complex with labelled bases in degrees `0..=top`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    simplex_names: Vec<String>,
    vertex_names: Vec<String>,
    bases: Vec<Vec<AlgebraicSimplex>>,
    index: Vec<HashMap<AlgebraicSimplex, usize>>,
    /// `boundaries[n]` maps degree `n` to degree `n - 1`; `boundaries[0]` has no rows.
    boundaries: Vec<SparseMatrix>,
    basis_kind: Basis,
    truncated: bool,
    relative: bool,
}

impl ChainComplex {
    /// Assembles a complex from explicit data. `truncated` records that the true complex has
    /// further nonzero chain groups above the top degree.
    pub fn from_parts(
        simplex_names: Vec<String>,
        vertex_names: Vec<String>,
        bases: Vec<Vec<AlgebraicSimplex>>,
        boundaries: Vec<SparseMatrix>,
        basis_kind: Basis,
        truncated: bool,
    ) -> Result<Self, ChainError> {
        if bases.len() != boundaries.len() || bases.is_empty() {
            return Err(ChainError::Precondition("one boundary matrix per degree is required".into()));
        }
        let mut index = Vec::with_capacity(bases.len());
        for (n, basis) in bases.iter().enumerate() {
            let mut map = HashMap::with_capacity(basis.len());
            for (i, s) in basis.iter().enumerate() {
                if s.vertices.len() != n + 1 || s.simplex >= simplex_names.len() {
                    return Err(ChainError::Precondition(format!("malformed basis element in degree {n}")));
                }
                if s.vertices.iter().any(|&v| v >= vertex_names.len()) {
                    return Err(ChainError::Precondition(format!("unknown vertex in degree {n}")));
                }
                if map.insert(s.clone(), i).is_some() {
                    return Err(ChainError::Precondition(format!("repeated basis element in degree {n}")));
                }
            }
            index.push(map);
        }
        for (n, m) in boundaries.iter().enumerate() {
            let rows = if n == 0 { 0 } else { bases[n - 1].len() };
            if m.rows != rows || m.cols != bases[n].len() || m.columns.len() != m.cols {
                return Err(ChainError::Precondition(format!("boundary matrix {n} has the wrong shape")));
            }
            if m.columns.iter().flatten().any(|&(i, a)| i >= rows || a == 0) {
                return Err(ChainError::Precondition(format!("boundary matrix {n} has bad entries")));
            }
        }
        Ok(Self {
            simplex_names,
            vertex_names,
            bases,
            index,
            boundaries,
            basis_kind,
            truncated,
            relative: false,
        })
    }

    pub fn basis_kind(&self) -> Basis {
        self.basis_kind
    }

    pub fn is_relative(&self) -> bool {
        self.relative
    }

    pub fn top_degree(&self) -> usize {
        self.bases.len() - 1
    }

    /// True when chain groups above the top degree were cut off, so the top degree's homology
    /// is not computed by this complex.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Degrees whose homology this complex determines.
    pub fn homology_degrees(&self) -> std::ops::RangeInclusive<usize> {
        if self.truncated {
            if self.top_degree() == 0 {
                #[allow(clippy::reversed_empty_ranges)]
                return 1..=0;
            }
            0..=self.top_degree() - 1
        } else {
            0..=self.top_degree()
        }
    }

    pub fn rank(&self, n: usize) -> usize {
        self.bases.get(n).map_or(0, Vec::len)
    }

    pub fn basis(&self, n: usize) -> &[AlgebraicSimplex] {
        self.bases.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, n: usize, s: &AlgebraicSimplex) -> Option<usize> {
        self.index.get(n)?.get(s).copied()
    }

    /// `∂ₙ`; beyond the top degree this is the zero map from the zero group.
    pub fn boundary_matrix(&self, n: usize) -> SparseMatrix {
        if n < self.boundaries.len() {
            self.boundaries[n].clone()
        } else if n == self.boundaries.len() {
            SparseMatrix::zero(self.rank(n - 1), 0)
        } else {
            SparseMatrix::zero(0, 0)
        }
    }

    pub fn simplex_names(&self) -> &[String] {
        &self.simplex_names
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn simplex_ix(&self, name: &str) -> Option<usize> {
        self.simplex_names.iter().position(|s| s == name)
    }

    pub fn vertex_ix(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|s| s == name)
    }

    /// Builds the label `(σ, (v₀,…))` from names.
    pub fn label<S: AsRef<str>>(&self, simplex: &str, vertices: &[S]) -> Option<AlgebraicSimplex> {
        let s = self.simplex_ix(simplex)?;
        let v = vertices.iter().map(|v| self.vertex_ix(v.as_ref())).collect::<Option<Vec<_>>>()?;
        Some(AlgebraicSimplex::new(s, v))
    }

    pub fn display_label(&self, s: &AlgebraicSimplex) -> String {
        let vs: Vec<&str> = s.vertices.iter().map(|&v| self.vertex_names[v].as_str()).collect();
        format!("({}, ({}))", self.simplex_names[s.simplex], vs.join(","))
    }

    /// Coordinates of `c` in the basis of its degree.
    pub fn vector(&self, c: &Chain) -> Result<Vec<Q>, ChainError> {
        let n = c.degree;
        if n > self.top_degree() {
            return if c.is_zero() { Ok(Vec::new()) } else { Err(ChainError::DegreeOutOfRange(n)) };
        }
        let mut v = vec![Q::zero(); self.rank(n)];
        for (s, x) in c.terms() {
            let i = self.index_of(n, s).ok_or_else(|| ChainError::NotInBasis(self.display_label(s)))?;
            v[i] = x.clone();
        }
        Ok(v)
    }

    pub fn chain_from_vector(&self, n: usize, ring: Ring, v: &[Q]) -> Chain {
        let mut c = Chain::zero(n, ring);
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                c.add_term(self.bases[n][i].clone(), x);
            }
        }
        c
    }

    pub fn cochain_vector(&self, phi: &Cochain) -> Result<Vec<Q>, ChainError> {
        let n = phi.degree;
        let mut v = vec![Q::zero(); self.rank(n)];
        for (s, x) in phi.values() {
            let i = self.index_of(n, s).ok_or_else(|| ChainError::NotInBasis(self.display_label(s)))?;
            v[i] = x.clone();
        }
        Ok(v)
    }

    pub fn cochain_from_vector(&self, n: usize, v: &[Q]) -> Cochain {
        let mut c = Cochain::zero(n);
        for (i, x) in v.iter().enumerate() {
            c.set(self.bases[n][i].clone(), x.clone());
        }
        c
    }

    /// `∂c`, with `∂₀ = 0`.
    pub fn boundary(&self, c: &Chain) -> Result<Chain, ChainError> {
        let v = self.vector(c)?;
        if c.degree == 0 || c.degree >= self.boundaries.len() {
            return Ok(Chain::zero(c.degree.saturating_sub(1), c.ring));
        }
        let w = self.boundaries[c.degree].mul_vec(&v);
        Ok(self.chain_from_vector(c.degree - 1, c.ring, &w))
    }

    pub fn is_cycle(&self, c: &Chain) -> Result<bool, ChainError> {
        Ok(self.boundary(c)?.is_zero())
    }

    /// `δφ = φ ∘ ∂`.
    pub fn coboundary(&self, phi: &Cochain) -> Result<Cochain, ChainError> {
        let n = phi.degree + 1;
        if n > self.top_degree() {
            return Err(ChainError::DegreeOutOfRange(n));
        }
        let v = self.cochain_vector(phi)?;
        Ok(self.cochain_from_vector(n, &self.boundaries[n].transpose_mul_vec(&v)))
    }

    /// Checks `∂ₙ₋₁ ∂ₙ = 0` in every degree.
    pub fn check_d_squared(&self) -> bool {
        (2..self.boundaries.len()).all(|n| self.boundaries[n - 1].product_is_zero(&self.boundaries[n]))
    }

    /// The quotient by the subcomplex spanned by basis elements with `in_sub` true. Those elements
    /// must span a subcomplex.
    pub fn quotient_by(&self, in_sub: impl Fn(&AlgebraicSimplex) -> bool) -> Result<ChainComplex, ChainError> {
        let mut bases = Vec::with_capacity(self.bases.len());
        let mut new_ix: Vec<Vec<Option<usize>>> = Vec::with_capacity(self.bases.len());
        for basis in &self.bases {
            let mut kept = Vec::new();
            let mut map = Vec::with_capacity(basis.len());
            for s in basis {
                if in_sub(s) {
                    map.push(None);
                } else {
                    map.push(Some(kept.len()));
                    kept.push(s.clone());
                }
            }
            bases.push(kept);
            new_ix.push(map);
        }
        let mut boundaries = Vec::with_capacity(self.boundaries.len());
        for (n, m) in self.boundaries.iter().enumerate() {
            let rows = if n == 0 { 0 } else { bases[n - 1].len() };
            let mut out = SparseMatrix::zero(rows, bases[n].len());
            for (j, col) in m.columns.iter().enumerate() {
                match new_ix[n][j] {
                    Some(nj) => {
                        out.columns[nj] = col.iter().filter_map(|&(i, a)| new_ix[n - 1][i].map(|ni| (ni, a))).collect();
                    }
                    None => {
                        if col.iter().any(|&(i, _)| new_ix[n - 1][i].is_some()) {
                            return Err(ChainError::Precondition(format!(
                                "`{}` has a boundary term outside the subcomplex",
                                self.display_label(&self.bases[n][j])
                            )));
                        }
                    }
                }
            }
            boundaries.push(out);
        }
        let mut cc = ChainComplex::from_parts(
            self.simplex_names.clone(),
            self.vertex_names.clone(),
            bases,
            boundaries,
            self.basis_kind,
            self.truncated,
        )?;
        cc.relative = true;
        Ok(cc)
    }

    pub fn format_chain(&self, c: &Chain) -> String {
        if c.is_zero() {
            return "0".into();
        }
        c.terms()
            .iter()
            .map(|(s, x)| format!("{}·{}", format_q(x), self.display_label(s)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Sign of the permutation sorting `t` (distinct entries); `None` if `t` repeats a value.
pub fn sort_sign(t: &[usize]) -> Option<i64> {
    let mut inversions = 0usize;
    for i in 0..t.len() {
        for j in (i + 1)..t.len() {
            match t[i].cmp(&t[j]) {
                std::cmp::Ordering::Greater => inversions += 1,
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}
