use std::sync::OnceLock;

use modcat::catalog::build_so_n2;
use modcat::ring::examples::{cyclic, fibonacci, ising, product, trivial};
use modcat::FusionRing;
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn small_rings() -> &'static [FusionRing] {
    static RINGS: OnceLock<Vec<FusionRing>> = OnceLock::new();
    RINGS.get_or_init(build_small_rings)
}

fn build_small_rings() -> Vec<FusionRing> {
    let mut out = vec![trivial(), fibonacci(), ising()];
    out.extend((2..=8).map(cyclic));
    out.push(product(&fibonacci(), &fibonacci()));
    out.push(product(&ising(), &fibonacci()));
    out.push(product(&cyclic(2), &ising()));
    out.extend([2, 3, 5, 7].map(|n| build_so_n2(n).unwrap()));
    out
}

fn any_ring() -> impl Strategy<Value = FusionRing> {
    prop_oneof![
        (0..small_rings().len()).prop_map(|i| small_rings()[i].clone()),
        (2u64..=40).prop_map(|n| build_so_n2(n).unwrap()),
    ]
}

/// A ring together with a relabeling that keeps the unit at index 0.
fn relabeled_ring() -> impl Strategy<Value = FusionRing> {
    any_ring().prop_flat_map(|ring| {
        let rest: Vec<usize> = (1..ring.rank()).collect();
        (Just(ring), Just(rest).prop_shuffle()).prop_map(|(ring, mut order)| {
            order.insert(0, 0);
            ring.permuted(&order).unwrap()
        })
    })
}

/// Path count through the tensor word using the full dense tensor.
fn paths(ring: &FusionRing, current: usize, word: &[usize], target: usize) -> u128 {
    match word.split_first() {
        None => u128::from(current == target),
        Some((&x, rest)) => (0..ring.rank())
            .map(|k| u128::from(ring.mult(current, x, k)) * paths(ring, k, rest, target))
            .sum(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dims_form_a_character(ring in relabeled_ring()) {
        let d = ring.fp_dimensions().unwrap();
        let r = ring.rank();
        for i in 0..r {
            prop_assert!(d[i] >= 1.0 - TOL, "d_{} = {}", i, d[i]);
            prop_assert!((d[ring.dual(i)] - d[i]).abs() < TOL);
            for j in 0..r {
                let rhs: f64 = ring.product(i, j).iter().map(|&(k, m)| f64::from(m) * d[k]).sum();
                prop_assert!((d[i] * d[j] - rhs).abs() < TOL * rhs.max(1.0));
            }
        }
    }

    #[test]
    fn invertibles_are_the_dimension_one_objects(ring in relabeled_ring()) {
        let d = ring.fp_dimensions().unwrap();
        let inv = ring.invertibles().unwrap();
        let by_dim: Vec<usize> = (0..ring.rank()).filter(|&i| d[i] <= 1.0 + TOL).collect();
        prop_assert_eq!(&inv.members, &by_dim);
        prop_assert_eq!(inv.group.order() as usize, by_dim.len());
        for &a in &by_dim {
            for &b in &by_dim {
                let prod = ring.product(a, b);
                prop_assert!(prod.len() == 1 && by_dim.contains(&prod[0].0));
            }
        }
    }

    #[test]
    fn adjoint_subring_is_the_trivial_component(ring in relabeled_ring()) {
        let g = ring.universal_grading().unwrap();
        prop_assert!(g.is_compatible(&ring));
        let trivial_component = g.components()[g.assignment[0]].clone();
        prop_assert_eq!(ring.adjoint_subring(), trivial_component);
    }

    #[test]
    fn hom_spaces_match_path_counts(
        ring_idx in 0..small_rings().len(),
        raw_word in proptest::collection::vec(0usize..64, 1..=6),
        raw_target in 0usize..64,
    ) {
        let ring = &small_rings()[ring_idx];
        let r = ring.rank();
        prop_assume!(r <= 8);
        let word: Vec<usize> = raw_word.iter().map(|w| w % r).collect();
        let target = raw_target % r;
        let want = paths(ring, word[0], &word[1..], target);
        prop_assert_eq!(ring.hom_space_dim(&word, target).unwrap(), want);
    }
}

#[test]
fn metaplectic_gradings_are_faithful_and_balanced() {
    for n in 2..=40 {
        let ring = build_so_n2(n).unwrap();
        let g = ring.universal_grading().unwrap();
        assert!(g.faithful, "N = {n}");
        let cd = g.component_dims(&ring.dims_f64().unwrap());
        let total: f64 = cd.iter().sum();
        for c in &cd {
            assert!((c * cd.len() as f64 - total).abs() < 1e-6, "N = {n}: {cd:?}");
        }
    }
}

#[test]
fn verify_axioms_accepts_every_small_ring() {
    for ring in small_rings() {
        assert!(ring.verify_axioms().passed(), "{:?}", ring.labels());
    }
}
