//! The products Ising^{ν₁} ⊠ Ising^{ν₂} and their count.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{AlgebraicReal, Phase};
use crate::gauging::count_gaugings_per_form;
use crate::metric::{enumerate_cyclic_metric_groups, klein_forms};
use crate::modular::RibbonData;
use crate::ring::examples::{ising, product};

/// Odd residues `ν₁, ν₂` mod 16; `θ_σ = e^{πiν/8}` in each factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IsingParams {
    pub nu1: u8,
    pub nu2: u8,
}

impl IsingParams {
    pub fn new(nu1: i64, nu2: i64) -> Result<Self> {
        let reduce = |nu: i64| -> Result<u8> {
            if nu.rem_euclid(2) == 0 {
                Err(Error::Parameter(format!("ν = {nu} must be odd")))
            } else {
                Ok(nu.rem_euclid(16) as u8)
            }
        };
        Ok(Self { nu1: reduce(nu1)?, nu2: reduce(nu2)? })
    }

    pub fn all() -> Vec<Self> {
        let odd: Vec<i64> = (1..16).step_by(2).collect();
        odd.iter().flat_map(|&a| odd.iter().map(move |&b| Self::new(a, b).expect("odd"))).collect()
    }

    fn swapped(self) -> Self {
        Self { nu1: self.nu2, nu2: self.nu1 }
    }

    fn shifted(self) -> Self {
        Self { nu1: (self.nu1 + 8) % 16, nu2: (self.nu2 + 8) % 16 }
    }
}

/// Dimensions and twists of Ising^{ν₁} ⊠ Ising^{ν₂} on the rank-9 product
/// ring, labels `a⊠b` with `a, b ∈ {1, psi, sigma}`.
pub fn ising_squared_data(p: IsingParams) -> Result<RibbonData> {
    let ring = product(&ising(), &ising());
    let factor = |nu: u8, x: usize| match x {
        0 => Phase::zero(),
        1 => Phase::half(),
        _ => Phase::new(i64::from(nu), 16),
    };
    let dim = |x: usize| if x == 2 { AlgebraicReal::sqrt_of(2) } else { AlgebraicReal::integer(1) };
    let mut dims = Vec::with_capacity(9);
    let mut twists = Vec::with_capacity(9);
    for x in 0..9 {
        let (a, b) = (x / 3, x % 3);
        dims.push(dim(a).checked_mul(&dim(b)).expect("same radicand"));
        twists.push(factor(p.nu1, a) + factor(p.nu2, b));
    }
    RibbonData::new(ring, dims, twists)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsingEnumeration {
    pub orbits: Vec<Vec<IsingParams>>,
    /// Orbit size ↦ number of orbits of that size.
    pub histogram: BTreeMap<usize, usize>,
    pub count: usize,
}

/// Orbits of the 64 parameter pairs under swapping the factors and shifting
/// both `ν` by 8 (which fixes every T-matrix up to relabeling).
pub fn ising_squared_enumeration() -> IsingEnumeration {
    let mut seen = std::collections::BTreeSet::new();
    let mut orbits = Vec::new();
    for p in IsingParams::all() {
        if seen.contains(&p) {
            continue;
        }
        let mut orbit = vec![p];
        let mut i = 0;
        while i < orbit.len() {
            for q in [orbit[i].swapped(), orbit[i].shifted()] {
                if !orbit.contains(&q) {
                    orbit.push(q);
                }
            }
            i += 1;
        }
        orbit.sort();
        seen.extend(orbit.iter().copied());
        orbits.push(orbit);
    }
    let mut histogram = BTreeMap::new();
    for o in &orbits {
        *histogram.entry(o.len()).or_insert(0) += 1;
    }
    IsingEnumeration { count: orbits.len(), orbits, histogram }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsingCount {
    pub cyclic_forms: usize,
    pub gaugings_per_cyclic_form: u64,
    pub cyclic_gauged: u64,
    /// ℤ₂×ℤ₂ metric groups containing a fermion, each gauged two ways.
    pub klein_theories: Vec<String>,
    pub klein_gauged: u64,
    pub total: u64,
    pub enumeration_count: usize,
}

/// 12 from gauging particle-hole on the four cyclic forms of order 4 (three
/// gaugings each) plus 8 from the four ℤ₂×ℤ₂ theories with a fermion.
pub fn ising_squared_total_count() -> Result<IsingCount> {
    let cyclic_forms = enumerate_cyclic_metric_groups(4)?.len();
    let per = count_gaugings_per_form(4)?;
    let klein_theories: Vec<String> = klein_forms().into_iter().filter(|k| k.has_fermion).map(|k| k.name).collect();
    let cyclic_gauged = cyclic_forms as u64 * per;
    let klein_gauged = 2 * klein_theories.len() as u64;
    Ok(IsingCount {
        cyclic_forms,
        gaugings_per_cyclic_form: per,
        cyclic_gauged,
        klein_theories,
        klein_gauged,
        total: cyclic_gauged + klein_gauged,
        enumeration_count: ising_squared_enumeration().count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_entries() {
        let rd = ising_squared_data(IsingParams::new(1, 1).unwrap()).unwrap();
        let ss = rd.ring().require("sigma⊠sigma").unwrap();
        assert_eq!(rd.dims()[ss], AlgebraicReal::integer(2));
        assert_eq!(rd.twist(ss), Phase::new(1, 8));
        let pp = rd.ring().require("psi⊠psi").unwrap();
        assert!(rd.twist(pp).is_zero());
        assert!(rd.is_modular());
    }

    #[test]
    fn even_nu_is_rejected() {
        assert!(matches!(IsingParams::new(2, 1), Err(Error::Parameter(_))));
    }

    #[test]
    fn orbit_examples() {
        let e = ising_squared_enumeration();
        let find = |a, b| e.orbits.iter().find(|o| o.contains(&IsingParams::new(a, b).unwrap())).unwrap().len();
        assert_eq!(find(1, 1), 2);
        assert_eq!(find(1, 9), 2);
        assert_eq!(find(1, 3), 4);
        assert_eq!(e.count, 20);
    }

    #[test]
    fn total() {
        let c = ising_squared_total_count().unwrap();
        assert_eq!((c.cyclic_gauged, c.klein_gauged, c.total), (12, 8, 20));
    }
}
