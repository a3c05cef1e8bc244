//! Algebraic invariants on generated inputs.

mod common;

use std::collections::BTreeSet;

use mcx_core::actions::{quotient, validate_action};
use mcx_core::chain::{build_alternating_chain_complex, build_full_chain_complex, build_reduced_chain_complex, Basis, Ring};
use mcx_core::covers::{multiplicity, nerve, Cover};
use mcx_core::diffusion::{convolve, ActionOnSet, GroupModel, SetKind, SparseFunction};
use mcx_core::homology::homology;
use mcx_core::mcx::validate_simplicial_map;
use mcx_core::norms::seminorm_l1;
use mcx_core::num::{abs, q};
use proptest::prelude::*;

use common::{random_cycle, random_measure, random_multicomplex, random_zero_trivial_action, rng, Shape};

fn shape(seed: u64) -> Shape {
    Shape { vertices: 3 + (seed % 5) as usize, dim: 1 + (seed % 3) as usize, simplices: 8 + (seed % 30) as usize, parallel: 0.3 }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_characteristic_matches_rational_betti_numbers(seed in any::<u64>()) {
        let mc = random_multicomplex(&mut rng(seed), &shape(seed));
        let d = mc.dim().unwrap();
        let betti = homology(&build_reduced_chain_complex(&mc, d).unwrap(), Ring::Q).betti_numbers();
        let chi: i64 = betti.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        prop_assert_eq!(chi, mc.euler_characteristic());
    }

    #[test]
    fn reduced_alternating_and_repeated_tuple_bases_agree_rationally(seed in any::<u64>()) {
        let mc = random_multicomplex(&mut rng(seed), &shape(seed));
        let d = mc.dim().unwrap().min(2);
        let reduced = homology(&build_reduced_chain_complex(&mc, d + 1).unwrap(), Ring::Q).betti_numbers();
        let alternating = homology(&build_alternating_chain_complex(&mc, d + 1).unwrap(), Ring::Q).betti_numbers();
        let with_repeats = homology(&build_full_chain_complex(&mc, d + 1, Basis::WithRepeats).unwrap(), Ring::Q).betti_numbers();
        prop_assert_eq!(&reduced[..=d], &alternating[..=d]);
        prop_assert_eq!(&reduced[..=d], &with_repeats[..=d]);
    }

    #[test]
    fn seminorm_is_absolutely_homogeneous_and_below_the_norm(seed in any::<u64>(), k in -3i64..=3) {
        let mut g = rng(seed);
        let mc = random_multicomplex(&mut g, &Shape { dim: 2, ..shape(seed) });
        let cc = build_reduced_chain_complex(&mc, 2).unwrap();
        if let Some(z) = random_cycle(&mut g, &cc, 1) {
            let base = seminorm_l1(&cc, &z).unwrap().value;
            prop_assert!(base <= z.l1_norm());
            prop_assert_eq!(seminorm_l1(&cc, &z.scaled(&q(k))).unwrap().value, base * abs(&q(k)));
        }
    }

    #[test]
    fn zero_trivial_quotients_are_multicomplexes(seed in any::<u64>(), copies in 2usize..=3) {
        let (mc, a) = random_zero_trivial_action(&mut rng(seed), &shape(seed), copies);
        prop_assert!(validate_action(&a, &mc).unwrap().ok);
        let qt = quotient(&a, &mc).unwrap();
        prop_assert!(qt.multicomplex.ensure_valid().is_ok());
        let r = validate_simplicial_map(&qt.projection, &mc, &qt.multicomplex).unwrap();
        prop_assert!(r.ok() && r.non_degenerate);
        prop_assert_eq!(qt.multicomplex.num_vertices(), mc.num_vertices());
    }

    #[test]
    fn nerve_dimension_is_multiplicity_minus_one(sets in prop::collection::vec(prop::collection::btree_set(0usize..10, 1..6), 1..8)) {
        let c = Cover::new(10, sets.into_iter().enumerate().map(|(i, s)| (i.to_string(), s)).collect());
        let d = nerve(&c, None).dim().map_or(-1, |d| d as i64);
        prop_assert_eq!(multiplicity(&c) as i64, 1 + d);
    }

    #[test]
    fn convolution_keeps_sums_and_never_grows_norms(seed in any::<u64>(), d in 1usize..=2) {
        let mut g = rng(seed);
        let a = ActionOnSet::new(GroupModel::FreeAbelian(d), SetKind::Regular).unwrap();
        let support: BTreeSet<Vec<i64>> = (0..6).map(|_| common::lattice_point(&mut g, d, 5)).collect();
        let (mu, nu) = (random_measure(&mut g, support.clone()), random_measure(&mut g, support));
        let pts: Vec<Vec<i64>> = (0..8).map(|_| common::lattice_point(&mut g, d, 4)).collect();
        let f: SparseFunction = common::random_function(&mut g, &pts, 4);
        let once = convolve(&mu, &f, &a);
        prop_assert_eq!(once.sum(), f.sum());
        prop_assert!(once.l1_norm() <= f.l1_norm());
        // Convolving twice is convolving once with the composite measure.
        prop_assert_eq!(convolve(&nu, &once, &a), convolve(&nu.after(&mu, &a.group), &f, &a));
    }
}
