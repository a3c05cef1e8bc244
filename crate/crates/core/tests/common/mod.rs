//! Seeded generators shared by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use mcx_core::actions::{FiniteGroup, GroupAction};
use mcx_core::chain::{Chain, ChainComplex, Ring};
use mcx_core::covers::Cover;
use mcx_core::diffusion::{Element, Measure, SparseFunction};
use mcx_core::homology::homology;
use mcx_core::mcx::{Multicomplex, SimplexSpec, SimplicialMap};
use mcx_core::num::{q, q_frac};
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub vertices: usize,
    pub dim: usize,
    pub simplices: usize,
    /// Chance that a new simplex reuses the vertex set of an existing one.
    pub parallel: f64,
}

struct Raw {
    verts: Vec<usize>,
    facets: BTreeMap<Vec<usize>, usize>,
}

/// Random facet assignments for `set`, consistent on codimension-two faces.
fn choose_facets(rng: &mut impl Rng, set: &[usize], all: &[Raw], by_set: &HashMap<Vec<usize>, Vec<usize>>) -> Option<Vec<usize>> {
    let keys: Vec<Vec<usize>> = (0..set.len()).map(|i| set.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect()).collect();
    let mut candidates = Vec::with_capacity(keys.len());
    for k in &keys {
        let mut c = by_set.get(k)?.clone();
        c.shuffle(rng);
        candidates.push(c);
    }
    let consistent = |chosen: &[usize], i: usize, f: usize| {
        chosen.iter().enumerate().all(|(j, &g)| {
            if set.len() <= 2 {
                return true;
            }
            let common: Vec<usize> = set.iter().enumerate().filter(|&(t, _)| t != i && t != j).map(|(_, &v)| v).collect();
            all[f].facets[&common] == all[g].facets[&common]
        })
    };
    fn search(i: usize, chosen: &mut Vec<usize>, candidates: &[Vec<usize>], ok: &dyn Fn(&[usize], usize, usize) -> bool) -> bool {
        if i == candidates.len() {
            return true;
        }
        for &f in &candidates[i] {
            if ok(chosen, i, f) {
                chosen.push(f);
                if search(i + 1, chosen, candidates, ok) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    search(0, &mut chosen, &candidates, &consistent).then_some(chosen)
}

fn assemble(num_vertices: usize, all: &[Raw]) -> Multicomplex {
    let vname = |v: usize| format!("v{v}");
    let id = |i: usize| if i < num_vertices { vname(i) } else { format!("s{i}") };
    let specs = all
        .iter()
        .enumerate()
        .map(|(i, r)| SimplexSpec {
            id: id(i),
            vertices: r.verts.iter().map(|&v| vname(v)).collect(),
            facets: r.facets.iter().map(|(k, &f)| (k.iter().map(|&v| vname(v)).collect(), id(f))).collect(),
        })
        .collect();
    Multicomplex::new_valid((0..num_vertices).map(vname), specs).expect("generator builds valid multicomplexes")
}

struct Builder {
    num_vertices: usize,
    all: Vec<Raw>,
    by_set: HashMap<Vec<usize>, Vec<usize>>,
}

impl Builder {
    fn new(num_vertices: usize) -> Self {
        let mut b = Builder { num_vertices, all: Vec::new(), by_set: HashMap::new() };
        for v in 0..num_vertices {
            b.push(vec![v], BTreeMap::new());
        }
        b
    }

    fn push(&mut self, verts: Vec<usize>, facets: BTreeMap<Vec<usize>, usize>) -> usize {
        let i = self.all.len();
        self.by_set.entry(verts.clone()).or_default().push(i);
        self.all.push(Raw { verts, facets });
        i
    }

    /// Adds a simplex on `set`, first adding simplices for any missing faces. Stops quietly at
    /// the size cap or when no consistent choice of facets exists.
    fn add(&mut self, rng: &mut impl Rng, set: &[usize], cap: usize) -> bool {
        if set.len() > 2 {
            for i in 0..set.len() {
                let key: Vec<usize> = set.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
                if !self.by_set.contains_key(&key) && !self.add(rng, &key, cap) {
                    return false;
                }
            }
        }
        if self.all.len() >= cap {
            return false;
        }
        let Some(chosen) = choose_facets(rng, set, &self.all, &self.by_set) else { return false };
        let facets = (0..set.len())
            .map(|i| (set.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect(), chosen[i]))
            .collect();
        self.push(set.to_vec(), facets);
        true
    }

    fn grow(&mut self, rng: &mut impl Rng, shape: &Shape) {
        let mut attempts = 0;
        while self.all.len() < shape.simplices && attempts < 40 * shape.simplices {
            attempts += 1;
            let k = rng.gen_range(1..=shape.dim.min(self.num_vertices - 1));
            let existing: Vec<&Vec<usize>> = self.by_set.keys().filter(|s| s.len() == k + 1).collect();
            let set: Vec<usize> = if !existing.is_empty() && rng.gen_bool(shape.parallel) {
                existing[rng.gen_range(0..existing.len())].clone()
            } else {
                let mut s: Vec<usize> = (0..self.num_vertices).collect::<Vec<_>>().choose_multiple(rng, k + 1).copied().collect();
                s.sort_unstable();
                s
            };
            self.add(rng, &set, shape.simplices);
        }
    }

    fn is_maximal(&self, i: usize) -> bool {
        self.all.iter().all(|r| !r.facets.values().any(|&f| f == i))
    }
}

pub fn random_multicomplex(rng: &mut impl Rng, shape: &Shape) -> Multicomplex {
    let mut b = Builder::new(shape.vertices.max(1));
    b.grow(rng, shape);
    assemble(b.num_vertices, &b.all)
}

/// A random multicomplex in which some maximal simplices of positive dimension have `copies`
/// compatible twins, with `ℤ/copies` rotating every family of twins at once. The action fixes
/// all vertices.
pub fn random_zero_trivial_action(rng: &mut impl Rng, shape: &Shape, copies: usize) -> (Multicomplex, GroupAction) {
    let mut b = Builder::new(shape.vertices.max(2));
    b.grow(rng, shape);
    let maximal: Vec<usize> = (b.num_vertices..b.all.len()).filter(|&i| b.is_maximal(i)).collect();
    let count = rng.gen_range(1..=maximal.len().clamp(1, 3));
    let picked: Vec<usize> = maximal.choose_multiple(rng, count).copied().collect();
    let mut families = Vec::new();
    for &i in &picked {
        let mut family = vec![i];
        for _ in 1..copies {
            let (verts, facets) = (b.all[i].verts.clone(), b.all[i].facets.clone());
            family.push(b.push(verts, facets));
        }
        families.push(family);
    }
    let mc = assemble(b.num_vertices, &b.all);
    let ix = |i: usize| mc.simplex_ix(&if i < b.num_vertices { format!("v{i}") } else { format!("s{i}") }).unwrap();
    let mut g = SimplicialMap::identity(&mc);
    for family in &families {
        for (k, &i) in family.iter().enumerate() {
            g.simplex_map[ix(i)] = ix(family[(k + 1) % family.len()]);
        }
    }
    let a = GroupAction::cyclic(&g, copies, &mc);
    (mc, a)
}

/// A cycle of degree `n` in `cc`: a random integral combination of homology generators plus a
/// random boundary. `None` when the class part would be zero.
pub fn random_cycle(rng: &mut impl Rng, cc: &ChainComplex, n: usize) -> Option<Chain> {
    let h = homology(cc, Ring::Q);
    let gens = h.generators(n);
    if gens.is_empty() {
        return None;
    }
    let mut z = Chain::zero(n, Ring::Q);
    for g in &gens {
        z = z.add_scaled(g, &q(rng.gen_range(-2..=2)));
    }
    if z.is_zero() {
        z = gens[0].clone();
    }
    Some(z.plus(&random_boundary(rng, cc, n)))
}

/// `∂` of a random small chain of degree `n + 1`.
pub fn random_boundary(rng: &mut impl Rng, cc: &ChainComplex, n: usize) -> Chain {
    if n + 1 > cc.top_degree() || cc.rank(n + 1) == 0 {
        return Chain::zero(n, Ring::Q);
    }
    let basis = cc.basis(n + 1);
    let terms = (0..rng.gen_range(0..=3)).map(|_| (basis[rng.gen_range(0..basis.len())].clone(), q(rng.gen_range(-2..=2))));
    let c = Chain::from_terms(n + 1, Ring::Q, terms.collect::<Vec<_>>()).unwrap();
    cc.boundary(&c).unwrap()
}

/// `count` random nonempty subsets of `0..num_vertices`, and the cover they form.
pub fn random_cover(rng: &mut impl Rng, num_vertices: usize, count: usize) -> Cover {
    let members = (0..count)
        .map(|i| {
            let size = rng.gen_range(1..=num_vertices);
            let set: BTreeSet<usize> = (0..num_vertices).collect::<Vec<_>>().choose_multiple(rng, size).copied().collect();
            (i.to_string(), set)
        })
        .collect();
    Cover::new(num_vertices, members)
}

/// A probability measure with random positive rational weights on the given support.
pub fn random_measure(rng: &mut impl Rng, support: impl IntoIterator<Item = Element>) -> Measure {
    let raw: Vec<(Element, i64)> = support.into_iter().map(|e| (e, rng.gen_range(1..=9))).collect();
    let total: i64 = raw.iter().map(|(_, w)| w).sum();
    Measure::new(raw.into_iter().map(|(e, w)| (e, q_frac(w, total)))).expect("positive weights summing to one")
}

/// A random nonzero function on the given points, with values in `[-4, 4]`.
pub fn random_function(rng: &mut impl Rng, points: &[Vec<i64>], size: usize) -> SparseFunction {
    loop {
        let f = SparseFunction::new((0..size).map(|_| (points[rng.gen_range(0..points.len())].clone(), q(rng.gen_range(-4..=4)))));
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random point of `ℤᵈ` in `[-r, r]ᵈ`.
pub fn lattice_point(rng: &mut impl Rng, d: usize, r: i64) -> Vec<i64> {
    (0..d).map(|_| rng.gen_range(-r..=r)).collect()
}

/// `S₃` as permutations of `{0, 1, 2}` under composition, with its action on the three points.
pub fn symmetric_group_3() -> (FiniteGroup, Vec<Vec<usize>>) {
    let perms: Vec<Vec<usize>> = (0..3).permutations(3).collect();
    let index = |p: &Vec<usize>| perms.iter().position(|x| x == p).unwrap();
    let table = perms
        .iter()
        .map(|a| perms.iter().map(|b| index(&(0..3).map(|i| a[b[i]]).collect())).collect())
        .collect();
    let names = perms.iter().map(|p| p.iter().join("")).collect();
    (FiniteGroup::new(names, table).unwrap(), perms)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}
