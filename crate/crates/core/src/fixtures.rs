//! Small named multicomplexes and complexes used by tests, the CLI and the acceptance suite.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::chain::{
    cell_chain_complex, project_to_reduced, Basis, Cell, CellComplex, Chain, ChainComplex, Ring,
};
use crate::actions::GroupAction;
use crate::homology::homology_in_degree;
use crate::covers::Cover;
use crate::mcx::{special_sphere, Multicomplex, SimplexSpec, SimplicialMap};
use crate::num::q;

/// The simplicial complex generated by the given simplices. Simplex ids are the comma-joined
/// sorted vertex names.
pub fn simplicial_complex<S: AsRef<str>>(tops: &[Vec<S>]) -> Multicomplex {
    let mut all: BTreeSet<Vec<String>> = BTreeSet::new();
    for t in tops {
        let mut vs: Vec<String> = t.iter().map(|s| s.as_ref().to_string()).collect();
        vs.sort();
        vs.dedup();
        for k in 1..=vs.len() {
            all.extend(vs.iter().cloned().combinations(k));
        }
    }
    let vertices: BTreeSet<String> = all.iter().filter(|s| s.len() == 1).map(|s| s[0].clone()).collect();
    let mut ordered: Vec<Vec<String>> = all.into_iter().collect();
    ordered.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    let specs = ordered
        .into_iter()
        .map(|vs| {
            let facets = if vs.len() == 1 {
                Vec::new()
            } else {
                vs.iter().cloned().combinations(vs.len() - 1).map(|f| (f.clone(), f.join(","))).collect()
            };
            SimplexSpec { id: vs.join(","), vertices: vs, facets }
        })
        .collect();
    Multicomplex::new_valid(vertices, specs).expect("simplicial complexes are multicomplexes")
}

/// The full simplex on vertices `0..=n`.
pub fn simplex(n: usize) -> Multicomplex {
    simplicial_complex(&[(0..=n).map(|i| i.to_string()).collect::<Vec<_>>()])
}

/// `∂Δ²`: three vertices and three edges.
pub fn triangle_boundary() -> Multicomplex {
    simplicial_complex(&[vec!["0", "1"], vec!["0", "2"], vec!["1", "2"]])
}

/// `∂Δ³`: a simplicial 2-sphere with four triangles.
pub fn tetrahedron_boundary() -> Multicomplex {
    simplicial_complex(&[vec!["0", "1", "2"], vec!["0", "1", "3"], vec!["0", "2", "3"], vec!["1", "2", "3"]])
}

/// The 7-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` modulo 7.
pub fn seven_vertex_torus() -> Multicomplex {
    let tops: Vec<Vec<String>> = (0..7)
        .flat_map(|i| {
            [[i, i + 1, i + 3], [i, i + 2, i + 3]].map(|t| t.iter().map(|v| (v % 7).to_string()).collect::<Vec<_>>())
        })
        .collect();
    simplicial_complex(&tops)
}

fn spec(id: &str, vertices: &[&str], facets: &[(&[&str], &str)]) -> SimplexSpec {
    SimplexSpec {
        id: id.into(),
        vertices: vertices.iter().map(|s| s.to_string()).collect(),
        facets: facets.iter().map(|(k, t)| (k.iter().map(|s| s.to_string()).collect(), t.to_string())).collect(),
    }
}

fn double_edge_specs() -> Vec<SimplexSpec> {
    vec![
        spec("a", &["a"], &[]),
        spec("b", &["b"], &[]),
        spec("e1", &["a", "b"], &[(&["a"], "a"), (&["b"], "b")]),
        spec("e2", &["a", "b"], &[(&["a"], "a"), (&["b"], "b")]),
    ]
}

/// Two vertices `a`, `b` joined by two edges `e1`, `e2`.
pub fn double_edge() -> Multicomplex {
    Multicomplex::new_valid(["a".to_string(), "b".to_string()], double_edge_specs()).expect("valid fixture")
}

/// The cone from `c` over the double edge: triangles `t1` over `e1` and `t2` over `e2` sharing
/// the edges `ac` and `bc`.
pub fn cone_over_double_edge() -> Multicomplex {
    let mut specs = double_edge_specs();
    specs.extend([
        spec("c", &["c"], &[]),
        spec("ac", &["a", "c"], &[(&["a"], "a"), (&["c"], "c")]),
        spec("bc", &["b", "c"], &[(&["b"], "b"), (&["c"], "c")]),
        spec("t1", &["a", "b", "c"], &[(&["a", "b"], "e1"), (&["a", "c"], "ac"), (&["b", "c"], "bc")]),
        spec("t2", &["a", "b", "c"], &[(&["a", "b"], "e2"), (&["a", "c"], "ac"), (&["b", "c"], "bc")]),
    ]);
    Multicomplex::new_valid(["a", "b", "c"].map(String::from), specs).expect("valid fixture")
}

/// `ℤ/2` swapping `e1 ↔ e2`, and `t1 ↔ t2` when the cone is present, fixing everything else.
pub fn edge_swap(mc: &Multicomplex) -> GroupAction {
    let mut g = SimplicialMap::identity(mc);
    for (x, y) in [("e1", "e2"), ("t1", "t2")] {
        if let (Some(i), Some(j)) = (mc.simplex_ix(x), mc.simplex_ix(y)) {
            g.simplex_map.swap(i, j);
        }
    }
    GroupAction::cyclic(&g, 2, mc)
}

/// `Ṡ¹`: vertices `a`, `b` joined by the edges `a,b#n` and `a,b#s`.
pub fn circle() -> Multicomplex {
    special_sphere(1, &["a", "b"]).expect("valid fixture")
}

/// `ℤ/2` exchanging the two edges of [`circle`] and fixing both vertices.
pub fn circle_edge_swap(mc: &Multicomplex) -> GroupAction {
    let mut g = SimplicialMap::identity(mc);
    let n = mc.simplex_ix("a,b#n").expect("circle fixture");
    let s = mc.simplex_ix("a,b#s").expect("circle fixture");
    g.simplex_map.swap(n, s);
    GroupAction::cyclic(&g, 2, mc)
}

/// `ℤ/2` acting on [`circle`] by the rotation by half a turn: it swaps the vertices and the
/// edges, so it is free on the realization but moves vertices.
pub fn circle_antipodal(mc: &Multicomplex) -> GroupAction {
    let mut g = SimplicialMap::identity(mc);
    g.vertex_map.swap(0, 1);
    let (a, b) = (mc.simplex_ix("a").expect("circle fixture"), mc.simplex_ix("b").expect("circle fixture"));
    let (n, s) = (mc.simplex_ix("a,b#n").expect("circle fixture"), mc.simplex_ix("a,b#s").expect("circle fixture"));
    g.simplex_map.swap(a, b);
    g.simplex_map.swap(n, s);
    GroupAction::cyclic(&g, 2, mc)
}

/// A three-element "action" on [`circle`] whose table is not associative.
pub fn broken_composition(mc: &Multicomplex) -> GroupAction {
    let mut broken = circle_edge_swap(mc);
    let swap = broken.maps[1].clone();
    broken.group = crate::actions::FiniteGroup::new(
        vec!["0".into(), "1".into(), "2".into()],
        vec![vec![0, 1, 2], vec![1, 1, 0], vec![2, 0, 1]],
    )
    .expect("square table");
    broken.maps = vec![SimplicialMap::identity(mc), swap, SimplicialMap::identity(mc)];
    broken
}

/// The hexagon: a circle triangulated by six edges on the vertices `0`, …, `5`.
pub fn hexagon() -> Multicomplex {
    simplicial_complex(&(0..6).map(|i| vec![i.to_string(), ((i + 1) % 6).to_string()]).collect::<Vec<_>>())
}

/// Three arcs covering [`hexagon`]: `{0,1,2}`, `{2,3,4}`, `{4,5,0}`. They meet pairwise and
/// have no common point.
pub fn hexagon_arcs(mc: &Multicomplex) -> Cover {
    let arc = |vs: [&str; 3]| vs.iter().map(|v| mc.vertex_ix(v).expect("hexagon fixture")).collect();
    Cover::new(
        mc.num_vertices(),
        vec![("0".into(), arc(["0", "1", "2"])), ("1".into(), arc(["2", "3", "4"])), ("2".into(), arc(["4", "5", "0"]))],
    )
}

/// A Δ-complex that is not a multicomplex: a single 3-simplex `D` with corners `0..3` whose
/// faces are identified so that everything collapses onto one vertex, two edges and two
/// triangles. The integral class of `D` has norm 1 in reduced chains but cannot be represented
/// by a single algebraic simplex in the full complex.
#[derive(Debug, Clone)]
pub struct Noisog {
    pub cells: CellComplex,
    /// All tuples with repeats, degrees `0..=4`.
    pub full: ChainComplex,
    /// Reduced chains, degrees `0..=3` (complete).
    pub reduced: ChainComplex,
    /// `[D]` in the reduced complex.
    pub sigma_reduced: Chain,
    /// An integral cycle of the full complex whose projection is homologous to `[D]`.
    pub sigma_full: Chain,
}

pub fn noisog_cells() -> CellComplex {
    let facets = |entries: &[(&[usize], usize, &[usize])]| -> BTreeMap<Vec<usize>, (usize, Vec<usize>)> {
        entries.iter().map(|(k, t, img)| (k.to_vec(), (*t, img.to_vec()))).collect()
    };
    // Cell order: v, a, b, T1, T2, D.
    let cells = vec![
        Cell { corners: vec![0], facets: BTreeMap::new() },
        Cell { corners: vec![0, 1], facets: facets(&[(&[0], 0, &[0]), (&[1], 0, &[0])]) },
        Cell { corners: vec![0, 2], facets: facets(&[(&[0], 0, &[0]), (&[2], 0, &[0])]) },
        Cell {
            corners: vec![0, 2, 3],
            facets: facets(&[(&[2, 3], 1, &[0, 1]), (&[0, 3], 1, &[1, 0]), (&[0, 2], 2, &[0, 2])]),
        },
        Cell {
            corners: vec![0, 1, 2],
            facets: facets(&[(&[1, 2], 1, &[0, 1]), (&[0, 2], 2, &[0, 2]), (&[0, 1], 1, &[0, 1])]),
        },
        Cell {
            corners: vec![0, 1, 2, 3],
            facets: facets(&[
                (&[1, 2, 3], 3, &[2, 3, 0]),
                (&[0, 2, 3], 3, &[0, 2, 3]),
                (&[0, 1, 3], 4, &[1, 2, 0]),
                (&[0, 1, 2], 4, &[0, 1, 2]),
            ]),
        },
    ];
    CellComplex::new(
        ["v", "a", "b", "T1", "T2", "D"].map(String::from).to_vec(),
        ["0", "1", "2", "3"].map(String::from).to_vec(),
        cells,
    )
    .expect("valid cell data")
}

pub fn noisog() -> Noisog {
    let cells = noisog_cells();
    let full = cell_chain_complex(&cells, Basis::WithRepeats, 4);
    let reduced = cell_chain_complex(&cells, Basis::Reduced, 3);
    let d = cells.cell_names.iter().position(|n| n == "D").expect("D exists");
    let sigma_label = crate::chain::AlgebraicSimplex::new(d, vec![0, 1, 2, 3]);
    let sigma_reduced = Chain::single(Ring::Z, sigma_label.clone(), q(1));

    let h = homology_in_degree(&full, 3, Ring::Z).expect("degree 3 is determined");
    let deg = &h.degrees[0];
    assert!(deg.free_rank == 1 && deg.torsion.is_empty(), "H_3 of the fixture is infinite cyclic");
    let g = h.generators(3).remove(0);
    let projected = project_to_reduced(&g);
    let coeff = projected.coeff(&sigma_label);
    assert!(coeff == q(1) || coeff == q(-1), "projection is an isomorphism on H_3");
    let sigma_full = if coeff == q(1) { g } else { g.neg() };
    Noisog { cells, full, reduced, sigma_reduced, sigma_full }
}
