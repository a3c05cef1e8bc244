use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;

use super::{sort_sign, AlgebraicSimplex, Basis, CellComplex, Chain, ChainComplex, ChainError, Ring, SparseMatrix};
use crate::mcx::{McxError, Multicomplex, SimplexIx};
use crate::num::{q, Q};

/// Tuples of length `len` over `corners` (ascending) that use every corner, in lexicographic
/// order.
fn surjections(corners: &[usize], len: usize) -> Vec<Vec<usize>> {
    fn rec(corners: &[usize], len: usize, cur: &mut Vec<usize>, used: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let missing = used.iter().filter(|&&u| u == 0).count();
        if len - cur.len() < missing {
            return;
        }
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for (i, &c) in corners.iter().enumerate() {
            cur.push(c);
            used[i] += 1;
            rec(corners, len, cur, used, out);
            used[i] -= 1;
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if len >= corners.len() {
        rec(corners, len, &mut Vec::with_capacity(len), &mut vec![0; corners.len()], &mut out);
    }
    out
}

fn tuples_of(corners: &[usize], n: usize, basis: Basis) -> Vec<Vec<usize>> {
    match basis {
        Basis::Distinct if corners.len() == n + 1 => corners.iter().copied().permutations(n + 1).collect(),
        Basis::WithRepeats => surjections(corners, n + 1),
        Basis::Reduced | Basis::Alternating if corners.len() == n + 1 => vec![corners.to_vec()],
        _ => Vec::new(),
    }
}

/// Chain complex of a cell complex in degrees `0..=max_degree`.
///
/// The boundary is `∂(X,(v₀,…,vₙ)) = Σᵢ (−1)ⁱ (face of X on {v₀,…,v̂ᵢ,…,vₙ}, relabelled tuple)`,
/// where the face is `X` itself when dropping `vᵢ` does not shrink the vertex set. Reduced and
/// alternating bases use the increasing tuple of each cell; in the alternating basis the element
/// of `X` is the sum of `ε(τ)` times every ordering, whose boundary is `n + 1` times the reduced
/// one.
pub fn cell_chain_complex(cx: &CellComplex, basis: Basis, max_degree: usize) -> ChainComplex {
    let mut order: Vec<usize> = (0..cx.cells.len()).collect();
    order.sort_by(|&a, &b| cx.cell_names[a].cmp(&cx.cell_names[b]));

    let bases: Vec<Vec<AlgebraicSimplex>> = (0..=max_degree)
        .map(|n| {
            order
                .iter()
                .flat_map(|&c| {
                    tuples_of(&cx.cells[c].corners, n, basis).into_iter().map(move |t| AlgebraicSimplex::new(c, t))
                })
                .collect()
        })
        .collect();
    let index: Vec<std::collections::HashMap<&AlgebraicSimplex, usize>> =
        bases.iter().map(|b| b.iter().enumerate().map(|(i, s)| (s, i)).collect()).collect();

    let mut boundaries = vec![SparseMatrix::zero(0, bases[0].len())];
    for n in 1..=max_degree {
        let mut m = SparseMatrix::zero(bases[n - 1].len(), bases[n].len());
        for (j, s) in bases[n].iter().enumerate() {
            let mut col: BTreeMap<usize, i64> = BTreeMap::new();
            for (label, coeff) in boundary_terms(cx, s, basis) {
                let i = index[n - 1][&label];
                *col.entry(i).or_insert(0) += coeff;
            }
            m.columns[j] = col.into_iter().filter(|&(_, a)| a != 0).collect();
        }
        boundaries.push(m);
    }

    let truncated = match basis {
        Basis::WithRepeats => !cx.cells.is_empty(),
        _ => cx.cells.iter().any(|c| c.corners.len() > max_degree + 1),
    };
    ChainComplex::from_parts(cx.cell_names.clone(), cx.corner_names.clone(), bases, boundaries, basis, truncated)
        .expect("builder output is well formed")
}

fn boundary_terms(cx: &CellComplex, s: &AlgebraicSimplex, basis: Basis) -> Vec<(AlgebraicSimplex, i64)> {
    let n = s.degree();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let rest: Vec<usize> = s.vertices.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
        let distinct: Vec<usize> = rest.iter().copied().unique().collect();
        let (face, img) = cx.face(s.simplex, &distinct);
        let relabel: BTreeMap<usize, usize> = distinct.iter().copied().zip(img).collect();
        let t: Vec<usize> = rest.iter().map(|v| relabel[v]).collect();
        match basis {
            Basis::Distinct | Basis::WithRepeats => out.push((AlgebraicSimplex::new(face, t), sign)),
            Basis::Reduced | Basis::Alternating => {
                let perm_sign = sort_sign(&t).expect("faces of cells have distinct corners");
                let factor = if basis == Basis::Alternating { (n + 1) as i64 } else { 1 };
                out.push((AlgebraicSimplex::new(face, cx.cells[face].corners.clone()), sign * perm_sign * factor));
            }
        }
    }
    out
}

fn usable(mc: &Multicomplex) -> Result<CellComplex, ChainError> {
    mc.ensure_valid()?;
    Ok(CellComplex::from_multicomplex(mc))
}

/// `C_*(K)` in degrees `0..=max_degree`, with either distinct-vertex tuples only or all tuples
/// (repeated vertices allowed) as basis.
///
/// Only the `WithRepeats` basis computes the homology of the multicomplex: with distinct tuples
/// alone a single edge already carries the spurious cycle `(e,(a,b)) + (e,(b,a))`.
pub fn build_full_chain_complex(mc: &Multicomplex, max_degree: usize, tuples: Basis) -> Result<ChainComplex, ChainError> {
    if !matches!(tuples, Basis::Distinct | Basis::WithRepeats) {
        return Err(ChainError::Precondition("the full complex uses distinct or with-repeats tuples".into()));
    }
    Ok(cell_chain_complex(&usable(mc)?, tuples, max_degree))
}

/// `C_*(K)_red`: one basis element per simplex, the class of its increasing tuple.
pub fn build_reduced_chain_complex(mc: &Multicomplex, max_degree: usize) -> Result<ChainComplex, ChainError> {
    Ok(cell_chain_complex(&usable(mc)?, Basis::Reduced, max_degree))
}

/// The integral subcomplex of alternating chains, one generator per simplex.
pub fn build_alternating_chain_complex(mc: &Multicomplex, max_degree: usize) -> Result<ChainComplex, ChainError> {
    Ok(cell_chain_complex(&usable(mc)?, Basis::Alternating, max_degree))
}

/// `C_*(K, L) = C_*(K) / C_*(L)` for the submulticomplex `L` given by its simplices.
pub fn build_relative_complex(
    mc: &Multicomplex,
    sub: &BTreeSet<SimplexIx>,
    basis: Basis,
    max_degree: usize,
) -> Result<ChainComplex, ChainError> {
    for &s in sub {
        if s >= mc.num_simplices() {
            return Err(McxError::UnknownSimplex(format!("#{s}")).into());
        }
        if let Some(f) = mc.faces(s).into_iter().find(|f| !sub.contains(f)) {
            return Err(McxError::NotClosed { simplex: mc.simplex(s).id.clone(), face: mc.simplex(f).id.clone() }.into());
        }
    }
    let full = cell_chain_complex(&usable(mc)?, basis, max_degree);
    full.quotient_by(|s| sub.contains(&s.simplex))
}

/// The quotient map onto reduced chains: tuples with repeats vanish, the others become
/// `ε · (σ, increasing tuple)`.
pub fn project_to_reduced(c: &Chain) -> Chain {
    let mut out = Chain::zero(c.degree, c.ring);
    for (s, x) in c.terms() {
        if let Some(sign) = sort_sign(&s.vertices) {
            let mut t = s.vertices.clone();
            t.sort_unstable();
            out.add_term(AlgebraicSimplex::new(s.simplex, t), &(x * q(sign)));
        }
    }
    out
}

/// The section sending a reduced generator to its increasing-tuple representative.
pub fn section_from_reduced(c: &Chain) -> Chain {
    project_to_reduced(c)
}

/// `alt(σ,(v₀,…,vₖ)) = (1/(k+1)!) Σ_τ ε(τ)(σ,(v_τ(0),…,v_τ(k)))`, extended linearly.
pub fn alternate(c: &Chain) -> Result<Chain, ChainError> {
    if c.ring == Ring::Z {
        return Err(ChainError::NeedsRationals);
    }
    let k1 = c.degree + 1;
    let fact: BigInt = (1..=k1).map(BigInt::from).product();
    let scale = Q::new(BigInt::from(1), fact);
    let mut out = Chain::zero(c.degree, Ring::Q);
    for (s, x) in c.terms() {
        let Some(base_sign) = sort_sign(&s.vertices) else { continue };
        let w = x * &scale;
        for p in s.vertices.iter().copied().permutations(k1) {
            let sign = sort_sign(&p).expect("distinct") * base_sign;
            out.add_term(AlgebraicSimplex::new(s.simplex, p), &(&w * q(sign)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcx::special_sphere;
    use crate::num::q_frac;

    fn s1() -> Multicomplex {
        special_sphere(1, &["a", "b"]).unwrap()
    }

    #[test]
    fn surjection_counts() {
        assert_eq!(surjections(&[0, 1], 2).len(), 2);
        assert_eq!(surjections(&[0, 1], 3).len(), 6);
        assert_eq!(surjections(&[0, 1, 2], 4).len(), 36);
        assert_eq!(surjections(&[5], 3), vec![vec![5, 5, 5]]);
        assert!(surjections(&[0, 1, 2], 2).is_empty());
    }

    #[test]
    fn basis_sizes_of_the_special_circle() {
        let full = build_full_chain_complex(&s1(), 1, Basis::Distinct).unwrap();
        assert_eq!(full.rank(1), 4);
        let red = build_reduced_chain_complex(&s1(), 1).unwrap();
        assert_eq!(red.rank(1), 2);
        let rep = build_full_chain_complex(&s1(), 2, Basis::WithRepeats).unwrap();
        assert_eq!((rep.rank(0), rep.rank(1), rep.rank(2)), (2, 6, 14));
        assert!(rep.is_truncated());
        assert!(!red.is_truncated());
    }

    #[test]
    fn edge_boundary() {
        let cc = build_full_chain_complex(&s1(), 1, Basis::Distinct).unwrap();
        let e = cc.label("a,b#n", &["a", "b"]).unwrap();
        let d = cc.boundary(&Chain::single(Ring::Z, e, q(1))).unwrap();
        let a = cc.label("a", &["a"]).unwrap();
        let b = cc.label("b", &["b"]).unwrap();
        assert_eq!(d, Chain::from_terms(0, Ring::Z, [(b, q(1)), (a, q(-1))]).unwrap());
    }

    #[test]
    fn d_squared_vanishes_on_spheres() {
        for n in 1..=4 {
            let labels: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
            let mc = special_sphere(n, &labels).unwrap();
            for basis in [Basis::Distinct, Basis::Reduced, Basis::Alternating] {
                assert!(cell_chain_complex(&CellComplex::from_multicomplex(&mc), basis, n).check_d_squared());
            }
            let rep = build_full_chain_complex(&mc, n.min(3), Basis::WithRepeats).unwrap();
            assert!(rep.check_d_squared());
        }
    }

    #[test]
    fn projection_signs() {
        let mc = s1();
        let full = build_full_chain_complex(&mc, 1, Basis::Distinct).unwrap();
        let red = build_reduced_chain_complex(&mc, 1).unwrap();
        let back = full.label("a,b#n", &["b", "a"]).unwrap();
        let fwd = red.label("a,b#n", &["a", "b"]).unwrap();
        assert_eq!(project_to_reduced(&Chain::single(Ring::Z, back, q(1))), Chain::single(Ring::Z, fwd.clone(), q(-1)));
        let c = Chain::single(Ring::Z, fwd, q(3));
        assert_eq!(project_to_reduced(&section_from_reduced(&c)), c);
        let degenerate = AlgebraicSimplex::new(0, vec![0, 0]);
        assert!(project_to_reduced(&Chain::single(Ring::Z, degenerate, q(1))).is_zero());
    }

    #[test]
    fn alternation_of_an_edge() {
        let e = AlgebraicSimplex::new(3, vec![0, 1]);
        let alt = alternate(&Chain::single(Ring::Q, e, q(1))).unwrap();
        let expected = Chain::from_terms(
            1,
            Ring::Q,
            [(AlgebraicSimplex::new(3, vec![0, 1]), q_frac(1, 2)), (AlgebraicSimplex::new(3, vec![1, 0]), q_frac(-1, 2))],
        )
        .unwrap();
        assert_eq!(alt, expected);
        assert_eq!(alternate(&alt).unwrap(), alt);
        assert!(alternate(&Chain::zero(1, Ring::Z)).is_err());
    }

    #[test]
    fn relative_complex_shapes() {
        let mc = special_sphere(2, &["a", "b", "c"]).unwrap();
        let all: BTreeSet<usize> = (0..mc.num_simplices()).collect();
        let rel = build_relative_complex(&mc, &all, Basis::Reduced, 2).unwrap();
        assert!((0..=2).all(|n| rel.rank(n) == 0));
        let none = build_relative_complex(&mc, &BTreeSet::new(), Basis::Reduced, 2).unwrap();
        assert_eq!((none.rank(0), none.rank(1), none.rank(2)), (3, 3, 2));
        let e = mc.simplex_ix("a,b").unwrap();
        assert!(build_relative_complex(&mc, &BTreeSet::from([e]), Basis::Reduced, 2).is_err());
    }
}
