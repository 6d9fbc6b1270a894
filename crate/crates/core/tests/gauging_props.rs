use modcat::catalog::structure_census;
use modcat::gauging::{
    condense_boson, count_gaugings_per_form, count_metaplectic, equivariantize, gauge_cyclic, gauge_particle_hole,
    particle_hole_extension, z2_cohomology, z2_cohomology_brute_force, CrossedExtension, GaugingDatum, Z2Module,
};
use modcat::metric::enumerate_cyclic_metric_groups;
use modcat::ring::find_isomorphism;
use modcat::{AbelianGroup, Error, FusionRing};

fn involutions(group: &AbelianGroup) -> Vec<Vec<usize>> {
    group.automorphisms(1_000_000).unwrap().into_iter().filter(|a| (0..a.len()).all(|x| a[a[x]] == x)).collect()
}

#[test]
fn periodic_formulas_match_normalized_cocycles() {
    for order in 1..=16 {
        for group in AbelianGroup::all_of_order(order) {
            for action in involutions(&group) {
                let module = Z2Module::finite(group.clone(), action).unwrap();
                for n in [2, 3] {
                    assert_eq!(
                        z2_cohomology(&module, n).unwrap(),
                        z2_cohomology_brute_force(&module, n, true).unwrap(),
                        "{module:?}, degree {n}"
                    );
                }
            }
        }
    }
}

#[test]
fn gauged_rings_are_metaplectic() {
    for n in 2..=40 {
        let ring = gauge_cyclic(&GaugingDatum::metaplectic(n).unwrap()).unwrap();
        assert!(ring.verify_axioms().passed(), "N = {n}");
        assert!((ring.global_fp_dim().unwrap() - 4.0 * n as f64).abs() < 1e-6, "N = {n}");
        // a non-self-dual pair of invertibles forces ℤ₄ when N ≡ 2 mod 4, and
        // for N = 2 the spinors have dimension one and the ring is pointed
        let want = match n % 4 {
            _ if n == 2 => vec![8],
            1 | 3 => vec![2],
            2 => vec![4],
            _ => vec![2, 2],
        };
        assert_eq!(ring.invertibles().unwrap().group.factors(), want, "N = {n}");
    }
}

#[test]
fn the_form_does_not_enter_the_fusion_rules() {
    for n in 2..=16 {
        let datum = GaugingDatum::metaplectic(n).unwrap();
        let reference = gauge_cyclic(&datum).unwrap();
        for mg in enumerate_cyclic_metric_groups(n).unwrap() {
            assert_eq!(gauge_particle_hole(&mg, &datum).unwrap(), reference, "N = {n}");
        }
    }
}

#[test]
fn condensing_the_charge_recovers_the_cyclic_group() {
    for n in 3..=24u64 {
        let ring = gauge_cyclic(&GaugingDatum::metaplectic(n).unwrap()).unwrap();
        let z = ring.require("Z").unwrap();
        let report = condense_boson(&ring, None, z, false).unwrap();
        assert!((report.global_dim - 2.0 * n as f64).abs() < 1e-6, "N = {n}");
        assert!(report.generalized_tambara_yamagami, "N = {n}");
        let t = report.trivial_component.expect("pointed part");
        assert_eq!(t.order, n);
        if n == 4 {
            assert!(t.ambiguous, "{:?}", t.consistent_groups);
        } else {
            assert_eq!(t.cyclic, Some(true), "N = {n}: {:?}", t.consistent_groups);
        }
    }
}

#[test]
fn condensing_the_charge_at_n_two_leaves_a_pointed_result() {
    let ring = gauge_cyclic(&GaugingDatum::metaplectic(2).unwrap()).unwrap();
    let z = ring.require("Z").unwrap();
    let report = condense_boson(&ring, None, z, true).unwrap();
    assert!((report.global_dim - 4.0).abs() < 1e-9);
    assert!(report.dims.iter().all(|&d| (d - 1.0).abs() < 1e-9));
}

#[test]
fn count_is_forms_times_gaugings_per_form() {
    for n in (2..=100).filter(|&n| n != 4) {
        let forms = enumerate_cyclic_metric_groups(n).unwrap().len() as u64;
        assert_eq!(count_metaplectic(n).unwrap(), forms * count_gaugings_per_form(n).unwrap(), "N = {n}");
    }
    assert!(matches!(count_metaplectic(4), Err(Error::Redirect(_))));
}

#[test]
fn defect_cocycle_does_not_change_fusion_when_four_divides_n() {
    for n in (4..=40).step_by(4) {
        for beta in [0, 1] {
            let plain = GaugingDatum::new(n, 0, beta).unwrap();
            let twisted = GaugingDatum::new(n, 1, beta).unwrap();
            assert_eq!(particle_hole_extension(&plain).unwrap().ring, particle_hole_extension(&twisted).unwrap().ring);
            assert_eq!(gauge_cyclic(&plain).unwrap(), gauge_cyclic(&twisted).unwrap(), "N = {n}");
        }
    }
}

/// Every sign table on the fixed-point hom spaces (signs touching the unit
/// on the left are +1) that yields a commutative fusion ring with the
/// metaplectic census.
fn admissible_tables(ext: &CrossedExtension) -> Vec<FusionRing> {
    let fixed = ext.fixed_points();
    let d = &ext.ring;
    let mut triples = Vec::new();
    for &x in &fixed {
        for &y in &fixed {
            for &z in &fixed {
                if x != 0 && y != 0 && d.mult(x, y, z) == 1 {
                    triples.push((x, y, z));
                }
            }
        }
    }
    assert!(triples.len() <= 12, "{} free signs", triples.len());
    let mut out = Vec::new();
    for bits in 0u32..1 << triples.len() {
        let sign = |x: usize, y: usize, z: usize| -> i32 {
            match triples.iter().position(|&t| t == (x, y, z)) {
                Some(p) if bits >> p & 1 == 1 => -1,
                _ => 1,
            }
        };
        let Ok((ring, _)) = equivariantize(ext, &sign) else { continue };
        if !ring.verify_axioms().passed() || !ring.is_commutative() {
            continue;
        }
        if structure_census(&ring).is_ok_and(|c| c.matches()) {
            out.push(ring);
        }
    }
    out
}

#[test]
fn every_admissible_sign_table_gives_the_library_ring() {
    for n in [3u64, 4, 5, 6, 7, 8, 10, 12] {
        let datum = GaugingDatum::metaplectic(n).unwrap();
        let reference = gauge_cyclic(&datum).unwrap();
        let found = admissible_tables(&particle_hole_extension(&datum).unwrap());
        assert!(!found.is_empty(), "N = {n}");
        for ring in &found {
            assert!(find_isomorphism(ring, &reference).is_some(), "N = {n}");
        }
    }
}

#[test]
fn untwisted_class_has_no_metaplectic_table_when_n_is_two_mod_four() {
    for n in [6u64, 10] {
        let datum = GaugingDatum::new(n, 0, 0).unwrap();
        assert!(admissible_tables(&particle_hole_extension(&datum).unwrap()).is_empty(), "N = {n}");
        assert!(matches!(gauge_cyclic(&datum), Err(Error::Unsupported(_))));
    }
}
