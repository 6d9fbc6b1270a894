use std::collections::BTreeMap;

use modcat::catalog::{build_so_n2, ising_squared_data, ising_squared_enumeration, structure_census};
use modcat::gauging::{gauge_cyclic, GaugingDatum};
use modcat::ring::find_isomorphism;

#[test]
fn catalog_rings_verify_with_the_right_census() {
    for n in 2..=40 {
        let ring = build_so_n2(n).unwrap();
        assert!(ring.verify_axioms().passed(), "N = {n}");
        assert!((ring.global_fp_dim().unwrap() - 4.0 * n as f64).abs() < 1e-6);
        let census = structure_census(&ring).unwrap();
        assert!(census.matches(), "N = {n}: {:?}", census.mismatches);
        assert_eq!(census.invertibles + census.dim_two + census.spinors, ring.rank());
    }
}

#[test]
fn self_duality_follows_n_mod_four() {
    for n in 2..=40u64 {
        let ring = build_so_n2(n).unwrap();
        let census = structure_census(&ring).unwrap();
        let non_self_dual = (0..ring.rank()).filter(|&i| !ring.is_self_dual(i)).count();
        let want = if n % 4 == 2 { (2, 4, 6) } else { (0, 0, 0) };
        assert_eq!(
            (census.non_self_dual_invertibles, census.non_self_dual_spinors, non_self_dual),
            want,
            "N = {n}"
        );
    }
}

#[test]
fn every_catalog_dimension_is_at_least_one() {
    for n in 2..=40 {
        let ring = build_so_n2(n).unwrap();
        for (i, d) in ring.exact_dims().expect("exact dims").iter().enumerate() {
            assert!(d.to_f64() >= 1.0, "N = {n}, {}", ring.label(i));
        }
    }
}

#[test]
fn explicit_rules_agree_with_gauging() {
    for n in (4..=40).step_by(4) {
        let gauged = gauge_cyclic(&GaugingDatum::metaplectic(n).unwrap()).unwrap();
        let catalog = build_so_n2(n).unwrap();
        let map = find_isomorphism(&gauged, &catalog).unwrap_or_else(|| panic!("N = {n}"));
        let dg = gauged.dims_f64().unwrap();
        let dc = catalog.dims_f64().unwrap();
        for (i, &j) in map.iter().enumerate() {
            assert!((dg[i] - dc[j]).abs() < 1e-9);
        }
    }
}

#[test]
fn ising_squared_orbits_share_their_t_multisets() {
    let multiset = |p| {
        let rd = ising_squared_data(p).unwrap();
        let mut counts: BTreeMap<(String, String), usize> = BTreeMap::new();
        for i in 0..rd.rank() {
            *counts.entry((rd.dims()[i].to_string(), format!("{:?}", rd.twist(i)))).or_default() += 1;
        }
        counts
    };
    for orbit in ising_squared_enumeration().orbits {
        let first = multiset(orbit[0]);
        for &p in &orbit[1..] {
            assert_eq!(multiset(p), first, "{orbit:?}");
        }
    }
}

#[test]
fn every_ising_squared_instance_is_modular() {
    for orbit in ising_squared_enumeration().orbits {
        for p in orbit {
            assert!(ising_squared_data(p).unwrap().is_modular(), "{p:?}");
        }
    }
}
