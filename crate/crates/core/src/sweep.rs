//! Batch runs over ranges of N, one independent job per N.
//!
//! Every sweep takes an [`Exec`]; results come back in ascending N whatever
//! the strategy.

use std::ops::RangeInclusive;

use serde::Serialize;

use crate::catalog::{build_so_n2, structure_census};
use crate::error::Result;
use crate::gauging::{count_gaugings_per_form, count_metaplectic, gauge_cyclic, GaugingDatum};
use crate::metric::enumerate_cyclic_metric_groups;
use crate::par::{self, Exec};
use crate::ring::find_isomorphism;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SoRow {
    pub n: u64,
    pub rank: usize,
    pub axioms_ok: bool,
    pub global_dim: f64,
    pub census_ok: bool,
    pub mismatches: Vec<String>,
}

/// Builds, verifies and censuses SO(N)₂ for every N in the range.
pub fn so_n2_sweep(ns: RangeInclusive<u64>, exec: Exec) -> Result<Vec<SoRow>> {
    par::map(exec, ns.collect(), |n| {
        let ring = build_so_n2(n)?;
        let census = structure_census(&ring)?;
        Ok(SoRow {
            n,
            rank: ring.rank(),
            axioms_ok: ring.verify_axioms_with(Exec::Sequential).passed(),
            global_dim: ring.global_fp_dim()?,
            census_ok: census.matches(),
            mismatches: census.mismatches,
        })
    })
    .into_iter()
    .collect()
}

/// Whether the gauged ring and the catalog ring are isomorphic, per N.
pub fn gauge_catalog_sweep(ns: RangeInclusive<u64>, exec: Exec) -> Result<Vec<(u64, bool)>> {
    par::map(exec, ns.collect(), |n| {
        let gauged = gauge_cyclic(&GaugingDatum::metaplectic(n)?)?;
        let catalog = build_so_n2(n)?;
        Ok((n, find_isomorphism(&gauged, &catalog).is_some()))
    })
    .into_iter()
    .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub n: u64,
    pub formula: u64,
    pub forms: u64,
    pub per_form: u64,
}

impl CountRow {
    pub fn consistent(&self) -> bool {
        self.formula == self.forms * self.per_form
    }
}

/// `count_metaplectic(N)` against `#forms × gaugings per form`; N = 4 is skipped.
pub fn count_sweep(ns: RangeInclusive<u64>, exec: Exec) -> Result<Vec<CountRow>> {
    par::map(exec, ns.filter(|&n| n != 4).collect(), |n| {
        Ok(CountRow {
            n,
            formula: count_metaplectic(n)?,
            forms: enumerate_cyclic_metric_groups(n)?.len() as u64,
            per_form: count_gaugings_per_form(n)?,
        })
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        assert_eq!(so_n2_sweep(2..=9, Exec::Sequential).unwrap(), so_n2_sweep(2..=9, Exec::Parallel).unwrap());
        assert_eq!(count_sweep(2..=30, Exec::Sequential).unwrap(), count_sweep(2..=30, Exec::Parallel).unwrap());
    }
}
