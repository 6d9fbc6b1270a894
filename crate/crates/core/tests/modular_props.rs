use std::sync::OnceLock;

use modcat::catalog::{ising_squared_data, IsingParams};
use modcat::metric::{enumerate_cyclic_metric_groups, klein_forms, pointed_ribbon_data};
use modcat::RibbonData;
use proptest::prelude::*;

fn catalog_data() -> &'static [RibbonData] {
    static DATA: OnceLock<Vec<RibbonData>> = OnceLock::new();
    DATA.get_or_init(build_catalog_data)
}

fn build_catalog_data() -> Vec<RibbonData> {
    let mut out: Vec<RibbonData> = IsingParams::all().into_iter().map(|p| ising_squared_data(p).unwrap()).collect();
    for n in 2..=12 {
        for mg in enumerate_cyclic_metric_groups(n).unwrap() {
            out.push(pointed_ribbon_data(&mg).unwrap());
        }
    }
    out.extend(klein_forms().iter().map(|k| pointed_ribbon_data(&k.form).unwrap()));
    out
}

#[test]
fn s_matrix_is_symmetric_with_dims_in_row_zero() {
    for rd in catalog_data() {
        let s = rd.s_matrix();
        assert!(s.is_symmetric(1e-9));
        let d = rd.dims_f64();
        for (j, dj) in d.iter().enumerate() {
            assert!((s.get(0, j).re - dj).abs() < 1e-12 && s.get(0, j).im.abs() < 1e-12);
        }
    }
}

fn relabel(rd: &RibbonData, order: &[usize]) -> RibbonData {
    RibbonData::new(
        rd.ring().permuted(order).unwrap(),
        order.iter().map(|&o| rd.dims()[o]).collect(),
        order.iter().map(|&o| rd.twist(o)).collect(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn centralizers_contain_the_unit_and_are_antitone(
        idx in 0..catalog_data().len(),
        seeds in proptest::collection::vec(0usize..64, 0..3),
        extra in 0usize..64,
    ) {
        let rd = &catalog_data()[idx];
        let r = rd.rank();
        let seeds: Vec<usize> = seeds.iter().map(|s| s % r).collect();
        let small = rd.ring().subring_generated(&seeds);
        let mut more = seeds.clone();
        more.push(extra % r);
        let big = rd.ring().subring_generated(&more);
        prop_assert!(small.iter().all(|x| big.contains(x)));
        let c_small = rd.centralizer(&small).unwrap();
        let c_big = rd.centralizer(&big).unwrap();
        prop_assert!(c_small.contains(&0) && c_big.contains(&0));
        prop_assert!(c_big.iter().all(|x| c_small.contains(x)));
    }

    #[test]
    fn classify_invertible_ignores_relabeling(
        (idx, mut order) in (0..catalog_data().len()).prop_flat_map(|idx| {
            let rest: Vec<usize> = (1..catalog_data()[idx].rank()).collect();
            (Just(idx), Just(rest).prop_shuffle())
        }),
    ) {
        let rd = &catalog_data()[idx];
        order.insert(0, 0);
        let moved = relabel(rd, &order);
        for (new, &old) in order.iter().enumerate() {
            prop_assert_eq!(rd.classify_invertible(old).ok(), moved.classify_invertible(new).ok());
        }
    }
}
