//! Structure censuses of metaplectic rings.

use serde::Serialize;

use super::so_n2::{build_so_n2, SoLayout};
use crate::error::{Error, Result};
use crate::exact::{AlgebraicReal, Phase};
use crate::modular::transparency_constraint;
use crate::nt;
use crate::ring::FusionRing;

const TOL: f64 = 1e-9;

/// Object counts a metaplectic ring of dimension 4N must have.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpectedCensus {
    pub invertibles: usize,
    pub dim_two: usize,
    pub spinors: usize,
    pub spinor_dim: AlgebraicReal,
    pub non_self_dual_invertibles: usize,
    pub non_self_dual_spinors: usize,
}

/// N odd: 2 / (N−1)/2 / 2 of dim √N. N even: 4 / N/2 − 1 / 4 of dim √(N/2),
/// with one pair of invertibles and all spinors non-self-dual when N ≡ 2 mod 4.
pub fn expected_census(n: u64) -> Result<ExpectedCensus> {
    if n < 2 {
        return Err(Error::Parameter(format!("N must be at least 2, got {n}")));
    }
    let n_us = n as usize;
    Ok(if n % 2 == 1 {
        ExpectedCensus {
            invertibles: 2,
            dim_two: (n_us - 1) / 2,
            spinors: 2,
            spinor_dim: AlgebraicReal::sqrt_of(n),
            non_self_dual_invertibles: 0,
            non_self_dual_spinors: 0,
        }
    } else {
        let twisted = n % 4 == 2;
        ExpectedCensus {
            invertibles: 4,
            dim_two: n_us / 2 - 1,
            spinors: 4,
            spinor_dim: AlgebraicReal::sqrt_of(n / 2),
            non_self_dual_invertibles: if twisted { 2 } else { 0 },
            non_self_dual_spinors: if twisted { 4 } else { 0 },
        }
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MetaplecticCensus {
    /// `global dim / 4`, when that is an integer ≥ 2.
    pub n: Option<u64>,
    pub rank: usize,
    pub invertibles: usize,
    pub dim_two: usize,
    pub spinors: usize,
    pub spinor_dims: Vec<f64>,
    pub self_dual: Vec<bool>,
    pub non_self_dual_invertibles: usize,
    pub non_self_dual_spinors: usize,
    /// `k = N/2` for even N.
    pub k: Option<u64>,
    /// `r = k/2 − 1` for 4 | N.
    pub r: Option<u64>,
    /// 2-adic valuation of N.
    pub a: Option<u32>,
    /// Number of odd primes dividing N.
    pub s: Option<u32>,
    pub expected: Option<ExpectedCensus>,
    pub mismatches: Vec<String>,
}

impl MetaplecticCensus {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Counts invertibles, dimension-2 objects and spinors of a ring and compares
/// them with the metaplectic table for `N = dim/4`.
///
/// Spinors are the objects outside an index-2 subgroup of the universal
/// grading group whose complement consists of objects of the expected spinor
/// dimension.
pub fn structure_census(ring: &FusionRing) -> Result<MetaplecticCensus> {
    let dims = ring.dims_f64()?;
    let global: f64 = dims.iter().map(|d| d * d).sum();
    let quarter = global / 4.0;
    let n = (quarter >= 2.0 - 1e-6 && (quarter - quarter.round()).abs() < 1e-6).then(|| quarter.round() as u64);
    let self_dual: Vec<bool> = (0..ring.rank()).map(|i| ring.is_self_dual(i)).collect();
    let mut census = MetaplecticCensus {
        n,
        rank: ring.rank(),
        invertibles: 0,
        dim_two: 0,
        spinors: 0,
        spinor_dims: Vec::new(),
        self_dual: self_dual.clone(),
        non_self_dual_invertibles: 0,
        non_self_dual_spinors: 0,
        k: None,
        r: None,
        a: None,
        s: None,
        expected: None,
        mismatches: Vec::new(),
    };
    let Some(n) = n else {
        census.mismatches.push(format!("global dimension {global} is not 4N for an integer N ≥ 2"));
        return Ok(census);
    };
    let expected = expected_census(n)?;
    let factors = nt::factorize(n);
    census.a = Some(factors.iter().find(|(p, _)| *p == 2).map_or(0, |&(_, e)| e));
    census.s = Some(factors.iter().filter(|(p, _)| *p != 2).count() as u32);
    if n % 2 == 0 {
        census.k = Some(n / 2);
    }
    if n % 4 == 0 {
        census.r = Some(n / 4 - 1);
    }
    let spinor_dim = expected.spinor_dim.to_f64();
    let near = |x: f64, y: f64| (x - y).abs() < TOL;

    let outside = spinor_sector(ring, &dims, spinor_dim)?;
    match &outside {
        None => census.mismatches.push("no index-2 grading component holds exactly the spinors".into()),
        Some(out) => {
            for i in 0..ring.rank() {
                if out[i] {
                    census.spinors += 1;
                    census.spinor_dims.push(dims[i]);
                    census.non_self_dual_spinors += usize::from(!self_dual[i]);
                } else if near(dims[i], 1.0) {
                    census.invertibles += 1;
                    census.non_self_dual_invertibles += usize::from(!self_dual[i]);
                } else if near(dims[i], 2.0) {
                    census.dim_two += 1;
                    if !self_dual[i] {
                        census.mismatches.push(format!("dimension-2 object {} is not self-dual", ring.label(i)));
                    }
                } else {
                    census.mismatches.push(format!("{} has unexpected dimension {}", ring.label(i), dims[i]));
                }
            }
        }
    }
    let mut compare = |what: &str, got: usize, want: usize| {
        if got != want {
            census.mismatches.push(format!("{what}: found {got}, expected {want}"));
        }
    };
    compare("invertible objects", census.invertibles, expected.invertibles);
    compare("dimension-2 objects", census.dim_two, expected.dim_two);
    compare("spinors", census.spinors, expected.spinors);
    compare("non-self-dual invertibles", census.non_self_dual_invertibles, expected.non_self_dual_invertibles);
    compare("non-self-dual spinors", census.non_self_dual_spinors, expected.non_self_dual_spinors);
    if census.spinor_dims.iter().any(|&d| !near(d, spinor_dim)) {
        census.mismatches.push(format!("spinor dimensions differ from {}", expected.spinor_dim));
    }
    census.expected = Some(expected);
    Ok(census)
}

/// Membership mask of the first index-2 grading component made of objects of
/// dimension `spinor_dim`.
fn spinor_sector(ring: &FusionRing, dims: &[f64], spinor_dim: f64) -> Result<Option<Vec<bool>>> {
    let grading = ring.universal_grading()?;
    let group = &grading.group;
    let even: Vec<usize> = (0..group.rank()).filter(|&i| group.factors()[i] % 2 == 0).collect();
    for mask in 1u64..(1u64 << even.len()) {
        let chi = |g: usize| -> u64 {
            let c = group.coords(g);
            even.iter().enumerate().filter(|(bit, _)| mask >> bit & 1 == 1).map(|(_, &i)| c[i]).sum::<u64>() % 2
        };
        let out: Vec<bool> = grading.assignment.iter().map(|&g| chi(g) == 1).collect();
        if (0..ring.rank()).filter(|&i| out[i]).all(|i| (dims[i] - spinor_dim).abs() < TOL) {
            return Ok(Some(out));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistics {
    Boson,
    Fermion,
}

/// Structural facts tied to whether 8 divides N.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPointEvidence {
    pub r_even: bool,
    pub eight_divides: bool,
    /// `Y_{r/2} ⊗ Y_{r/2}` contains all four invertibles (only possible for r even).
    pub middle_y_square_has_all_invertibles: bool,
    /// Tensoring with `f` moves every `X_i`.
    pub f_fixed_point_free_on_x: bool,
}

impl FixedPointEvidence {
    pub fn consistent(&self) -> bool {
        self.r_even == !self.eight_divides
            && self.r_even == self.middle_y_square_has_all_invertibles
            && self.r_even == self.f_fixed_point_free_on_x
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BosonFermionCensus {
    pub n: u64,
    /// Twist of `fg` forced by centralizing `witness`.
    pub fg_twist: Phase,
    pub witness: String,
    pub fg: Statistics,
    pub f: Statistics,
    pub g: Statistics,
    pub evidence: FixedPointEvidence,
}

impl BosonFermionCensus {
    pub fn passed(&self) -> bool {
        self.fg == Statistics::Boson && self.fg_twist.is_zero() && self.evidence.consistent()
    }
}

/// Statistics of the nontrivial invertibles of SO(N)₂ for 4 | N.
///
/// `fg` fixes `X_0` (or `Y_0` when N = 4), so centralizing it forces its
/// twist; `f` and `g` are bosons when 8 | N and fermions otherwise, which is
/// cross-checked against the fixed-point structure that forces it.
pub fn boson_fermion_census(n: u64) -> Result<BosonFermionCensus> {
    let layout = SoLayout::for_n(n)?;
    let ring = build_so_n2(n)?;
    let dims = ring.exact_dims().expect("catalog rings carry exact dims").to_vec();
    let witness = if layout.r > 0 { layout.x(0) } else { layout.y(0) };
    let fg_twist = transparency_constraint(&ring, &dims, &vec![None; ring.rank()], SoLayout::FG, witness)?;
    let r = layout.r;
    let invertibles = [SoLayout::UNIT, SoLayout::F, SoLayout::G, SoLayout::FG];
    let middle = (r % 2 == 0).then(|| layout.y(r / 2));
    let evidence = FixedPointEvidence {
        r_even: r % 2 == 0,
        eight_divides: n % 8 == 0,
        middle_y_square_has_all_invertibles: middle
            .is_some_and(|y| invertibles.iter().all(|&u| ring.mult(y, y, u) == 1)),
        f_fixed_point_free_on_x: (0..r).all(|i| ring.mult(SoLayout::F, layout.x(i), layout.x(i)) == 0),
    };
    let fg = if fg_twist.is_zero() { Statistics::Boson } else { Statistics::Fermion };
    let fg_stats = if n % 8 == 0 { Statistics::Boson } else { Statistics::Fermion };
    Ok(BosonFermionCensus {
        n,
        fg_twist,
        witness: ring.label(witness).into(),
        fg,
        f: fg_stats,
        g: fg_stats,
        evidence,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentCensus {
    pub name: String,
    pub objects: Vec<String>,
    pub invertibles: usize,
    pub dim_two: usize,
    pub dims: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SixteenMCensus {
    pub m: u64,
    pub n: u64,
    pub rank: usize,
    pub grading_group: String,
    pub components: Vec<ComponentCensus>,
    pub checks: Vec<Check>,
    pub not_checked: Vec<String>,
}

impl SixteenMCensus {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Universal-grading components of SO(4m)₂ (dimension 16m) for odd
/// square-free `m > 1`: `C₀` has 1 boson, 2 fermions and `m − 1` objects of
/// dimension 2, `C₍₁,₁₎` has `m` objects of dimension 2, and each spinor
/// component has 2 objects of dimension `√(2m)`.
pub fn sixteen_m_component_census(m: u64) -> Result<SixteenMCensus> {
    if m <= 1 || m % 2 == 0 || !nt::is_squarefree(m) {
        return Err(Error::Parameter(format!("m must be odd, square-free and > 1, got {m}")));
    }
    let n = 4 * m;
    let layout = SoLayout::for_n(n)?;
    let ring = build_so_n2(n)?;
    let dims = ring.dims_f64()?;
    let grading = ring.universal_grading()?;
    let comps = grading.components();
    let named = [
        ("C0", SoLayout::UNIT),
        ("C(1,1)", layout.y(0)),
        ("C(1,0)", layout.v(0)),
        ("C(0,1)", layout.w(0)),
    ];
    let near = |x: f64, y: f64| (x - y).abs() < TOL;
    let components: Vec<ComponentCensus> = named
        .iter()
        .map(|&(name, rep)| {
            let members = &comps[grading.assignment[rep]];
            ComponentCensus {
                name: name.into(),
                objects: members.iter().map(|&i| ring.label(i).to_string()).collect(),
                invertibles: members.iter().filter(|&&i| near(dims[i], 1.0)).count(),
                dim_two: members.iter().filter(|&&i| near(dims[i], 2.0)).count(),
                dims: members.iter().map(|&i| dims[i]).collect(),
            }
        })
        .collect();
    let stats = boson_fermion_census(n)?;
    let spinor = AlgebraicReal::sqrt_of(2 * m).to_f64();
    let m_us = m as usize;
    let mut checks = Vec::new();
    let mut check = |name: &str, passed: bool, detail: String| {
        checks.push(Check { name: name.into(), passed, detail });
    };
    let group = grading.group.to_string();
    check("grading group is Z2xZ2", group == "Z2xZ2", group.clone());
    let c0 = &components[0];
    check(
        "C0 populations",
        c0.invertibles == 4 && c0.dim_two == m_us - 1 && c0.objects.len() == m_us + 3,
        format!("{} invertibles, {} of dimension 2", c0.invertibles, c0.dim_two),
    );
    let bosons = 1 + 2 * usize::from(stats.f == Statistics::Boson);
    let fermions = 2 * usize::from(stats.f == Statistics::Fermion);
    check(
        "C0 has 1 boson and 2 fermions",
        stats.passed() && bosons == 1 && fermions == 2,
        format!("fg: {:?}, f and g: {:?}", stats.fg, stats.f),
    );
    let c11 = &components[1];
    check(
        "C(1,1) has m objects of dimension 2",
        c11.dim_two == m_us && c11.objects.len() == m_us,
        format!("{} objects", c11.objects.len()),
    );
    for c in &components[2..] {
        check(
            &format!("{} has 2 objects of dimension sqrt(2m)", c.name),
            c.objects.len() == 2 && c.dims.iter().all(|&d| near(d, spinor)),
            format!("dims {:?}", c.dims),
        );
    }
    let distinct = {
        let mut g: Vec<usize> = named.iter().map(|&(_, rep)| grading.assignment[rep]).collect();
        g.sort_unstable();
        g.dedup();
        g.len()
    };
    check("the four components are distinct", distinct == 4, format!("{distinct} distinct"));
    Ok(SixteenMCensus {
        m,
        n,
        rank: ring.rank(),
        grading_group: group,
        components,
        checks,
        not_checked: vec!["twist pairing between spinor components (defect twists are not available)".into()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_examples() {
        let c = structure_census(&build_so_n2(5).unwrap()).unwrap();
        assert!(c.matches(), "{:?}", c.mismatches);
        assert_eq!((c.invertibles, c.dim_two, c.spinors), (2, 2, 2));
        let c = structure_census(&build_so_n2(6).unwrap()).unwrap();
        assert!(c.matches(), "{:?}", c.mismatches);
        assert_eq!((c.invertibles, c.dim_two, c.spinors), (4, 2, 4));
        let c = structure_census(&build_so_n2(2).unwrap()).unwrap();
        assert!(c.matches(), "{:?}", c.mismatches);
        assert_eq!((c.invertibles, c.dim_two, c.spinors), (4, 0, 4));
    }

    #[test]
    fn fibonacci_is_flagged() {
        let c = structure_census(&crate::ring::examples::fibonacci()).unwrap();
        assert!(!c.matches());
    }

    #[test]
    fn statistics_follow_eight_divisibility() {
        for (n, f) in [(8, Statistics::Boson), (12, Statistics::Fermion), (16, Statistics::Boson)] {
            let c = boson_fermion_census(n).unwrap();
            assert!(c.passed());
            assert_eq!(c.f, f);
        }
        assert!(matches!(boson_fermion_census(6), Err(Error::Parameter(_))));
    }

    #[test]
    fn sixteen_m() {
        let c = sixteen_m_component_census(3).unwrap();
        assert!(c.passed(), "{:?}", c.checks);
        assert_eq!(c.components[1].dim_two, 3);
        assert_eq!(sixteen_m_component_census(15).unwrap().rank, 37);
        assert!(sixteen_m_component_census(9).is_err());
        assert!(sixteen_m_component_census(4).is_err());
    }
}
