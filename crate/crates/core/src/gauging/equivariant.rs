//! Particle-hole gauging at the level of fusion rules: a ℤ₂-crossed extension
//! of the pointed ring on ℤ_N followed by equivariantization.

use serde::Serialize;

use super::cohomology::{z2_cohomology, Z2Module};
use crate::error::{Error, Result};
use crate::exact::AlgebraicReal;
use crate::group::AbelianGroup;
use crate::metric::MetricGroup;
use crate::ring::FusionRing;

/// Cohomology data selecting one particle-hole gauging of a cyclic metric group.
///
/// `alpha` indexes `H²_ρ(ℤ₂, ℤ_N)` (so it is `0` or `1`), `beta` indexes
/// `H³(ℤ₂, U(1)) ≅ ℤ₂`. The normalized 2-cocycle representing `alpha` is
/// `ω(1,1) = alpha·N/2`, zero elsewhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GaugingDatum {
    n: u64,
    alpha: u8,
    beta: u8,
}

impl GaugingDatum {
    pub fn new(n: u64, alpha: u8, beta: u8) -> Result<Self> {
        if n < 2 {
            return Err(Error::Parameter(format!("particle-hole gauging needs N ≥ 2, got {n}")));
        }
        let h2 = z2_cohomology(&Z2Module::negation(AbelianGroup::cyclic(n)), 2)?.order();
        if u64::from(alpha) >= h2 {
            return Err(Error::Parameter(format!("alpha = {alpha} but H²_ρ(ℤ₂, ℤ_{n}) has order {h2}")));
        }
        let h3 = z2_cohomology(&Z2Module::circle(), 3)?.order();
        if u64::from(beta) >= h3 {
            return Err(Error::Parameter(format!("beta = {beta} but H³(ℤ₂, U(1)) has order {h3}")));
        }
        Ok(Self { n, alpha, beta })
    }

    /// The class whose gauging is metaplectic: untwisted except for
    /// `N ≡ 2 (mod 4)`, where only the twisted defect fusion pairs the defects
    /// into duals.
    pub fn metaplectic(n: u64) -> Result<Self> {
        Self::new(n, u8::from(n % 4 == 2), 0)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn alpha(&self) -> u8 {
        self.alpha
    }

    pub fn beta(&self) -> u8 {
        self.beta
    }

    /// `ω(g, h) ∈ ℤ_N` for `g, h ∈ {0, 1}`.
    pub fn omega(&self, g: u8, h: u8) -> u64 {
        if g == 1 && h == 1 {
            u64::from(self.alpha) * (self.n / 2)
        } else {
            0
        }
    }
}

/// The Grothendieck ring of a ℤ₂-crossed extension together with the ℤ₂
/// action on its simple objects.
#[derive(Clone, Debug)]
pub struct CrossedExtension {
    pub ring: FusionRing,
    pub action: Vec<usize>,
    /// Dimension of each simple object.
    pub dims: Vec<AlgebraicReal>,
}

impl CrossedExtension {
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.ring.rank()).filter(|&x| self.action[x] == x).collect()
    }
}

/// Extension of the pointed ring on ℤ_N by particle-hole defects.
///
/// Objects `[a]` (index `a`) are acted on by `a ↦ −a`. For odd N there is one
/// defect `σ` with `σ⊗σ = ⊕_a [a]`; for even N two defects `σ±` (indices N,
/// N+1) with `σ±⊗[a] = σ±` for even `a` and `σ∓` for odd `a`,
/// `σ+⊗σ+ = ⊕_{a even}[a]`, `σ+⊗σ− = ⊕_{a odd}[a]`. The cocycle twists
/// defect–defect products by `[ω(1,1)]`.
pub fn particle_hole_extension(datum: &GaugingDatum) -> Result<CrossedExtension> {
    let n = datum.n as usize;
    let twist = datum.omega(1, 1) as usize;
    let defects = if n % 2 == 1 { 1 } else { 2 };
    let rank = n + defects;
    let mut labels: Vec<String> = (0..n).map(|a| format!("[{a}]")).collect();
    if defects == 1 {
        labels.push("σ".into());
    } else {
        labels.extend(["σ+".into(), "σ-".into()]);
    }
    let parity = |x: usize| x - n;
    let rule = |i: usize, j: usize| -> Vec<(usize, u32)> {
        match (i < n, j < n) {
            (true, true) => vec![((i + j) % n, 1)],
            (true, false) | (false, true) => {
                let (a, s) = if i < n { (i, j) } else { (j, i) };
                if defects == 1 {
                    vec![(s, 1)]
                } else {
                    vec![(n + (parity(s) + a) % 2, 1)]
                }
            }
            (false, false) => {
                if defects == 1 {
                    (0..n).map(|a| (a, 1)).collect()
                } else {
                    let p = (parity(i) + parity(j)) % 2;
                    (0..n).filter(|a| a % 2 == p).map(|a| ((a + twist) % n, 1)).collect()
                }
            }
        }
    };
    let duals: Vec<usize> = (0..rank)
        .map(|x| {
            if x < n {
                (n - x) % n
            } else {
                (n..rank).find(|&y| rule(x, y).iter().any(|&(k, _)| k == 0)).unwrap_or(x)
            }
        })
        .collect();
    let ring = FusionRing::from_rule(labels, duals, rule)?;
    let action = (0..rank).map(|x| if x < n { (n - x) % n } else { x }).collect();
    let defect_dim = if defects == 1 { AlgebraicReal::sqrt_of(n as u64) } else { AlgebraicReal::sqrt_of(n as u64 / 2) };
    let dims = (0..rank).map(|x| if x < n { AlgebraicReal::integer(1) } else { defect_dim }).collect();
    Ok(CrossedExtension { ring, action, dims })
}

/// A simple object of an equivariantization: an orbit of the action, and for
/// a fixed point the character (`±1`) by which ℤ₂ acts on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivariantObject {
    pub support: Vec<usize>,
    pub character: Option<i8>,
}

/// Fusion rules of the ℤ₂-equivariantization:
///
/// `N(A,B,C) = ½ (Σ_{a∈A, b∈B, c∈C} N_{ab}^c + [A,B,C fixed] ε_A ε_B ε_C s(a,b,c) N_{ab}^c)`
///
/// where `s(a,b,c) = ±1` is the trace of the generator on the one-dimensional
/// space `Hom(a⊗b, c)` between fixed objects. Returns the ring (labels are
/// placeholders `O0, O1, …`) and its objects in order: orbits are visited in
/// extension order, a fixed point giving its `+1` then `−1` object.
pub fn equivariantize(
    ext: &CrossedExtension,
    sign: &dyn Fn(usize, usize, usize) -> i32,
) -> Result<(FusionRing, Vec<EquivariantObject>)> {
    let d = &ext.ring;
    let mut objects = Vec::new();
    let mut seen = vec![false; d.rank()];
    for x in 0..d.rank() {
        if seen[x] {
            continue;
        }
        let y = ext.action[x];
        seen[x] = true;
        seen[y] = true;
        if x == y {
            objects.push(EquivariantObject { support: vec![x], character: Some(1) });
            objects.push(EquivariantObject { support: vec![x], character: Some(-1) });
        } else {
            objects.push(EquivariantObject { support: vec![x, y], character: None });
        }
    }
    let r = objects.len();
    let mut entries = Vec::new();
    for (i, a) in objects.iter().enumerate() {
        for (j, b) in objects.iter().enumerate() {
            for (k, c) in objects.iter().enumerate() {
                let mut total: i64 = 0;
                for &x in &a.support {
                    for &y in &b.support {
                        for &z in &c.support {
                            total += i64::from(d.mult(x, y, z));
                        }
                    }
                }
                if let (Some(ea), Some(eb), Some(ec)) = (a.character, b.character, c.character) {
                    let (x, y, z) = (a.support[0], b.support[0], c.support[0]);
                    let m = i64::from(d.mult(x, y, z));
                    if m > 1 {
                        return Err(Error::Unsupported("fixed-point hom spaces of dimension > 1".into()));
                    }
                    if m == 1 {
                        total += i64::from(ea * eb * ec) * i64::from(sign(x, y, z));
                    }
                }
                if total % 2 != 0 || total < 0 {
                    return Err(Error::Internal(format!("non-integral equivariant multiplicity at ({i},{j},{k})")));
                }
                if total > 0 {
                    entries.push((i, j, k, (total / 2) as u32));
                }
            }
        }
    }
    let unit = 0;
    let mut duals = Vec::with_capacity(r);
    for i in 0..r {
        let partners: Vec<usize> = entries
            .iter()
            .filter(|&&(a, _, c, m)| a == i && c == unit && m > 0)
            .map(|&(_, b, _, _)| b)
            .collect();
        match partners.as_slice() {
            [b] => duals.push(*b),
            _ => return Err(Error::Internal(format!("equivariant object {i} has no unique dual"))),
        }
    }
    let labels: Vec<String> = (0..r).map(|i| format!("O{i}")).collect();
    Ok((FusionRing::new(labels, duals, entries)?, objects))
}

/// Role of a fixed point of the particle-hole extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Fixed {
    Unit,
    Half,
    Defect(u8),
}

/// Signs of the action on the one-dimensional hom spaces between fixed points.
///
/// Associativity pins these down up to relabeling the two objects over each
/// fixed point; the choice below is the one realizing the metaplectic census
/// (all objects self-dual for N odd or 4 | N, the invertibles forming ℤ₄ for
/// N ≡ 2 mod 4). Any sign touching the unit is +1.
fn particle_hole_sign(datum: &GaugingDatum, x: Fixed, y: Fixed, z: Fixed) -> Result<i32> {
    use Fixed::*;
    if x == Unit || y == Unit {
        return Ok(1);
    }
    let t = [x, y, z];
    match (datum.n % 4, datum.alpha) {
        (1 | 3, _) => Ok(1),
        (0, _) => Ok(if t.contains(&Half) && t.contains(&Defect(1)) { -1 } else { 1 }),
        (2, 1) => Ok(
            if matches!(
                (x, y, z),
                (Half, Half, Unit) | (Half, Defect(0), Defect(1)) | (Defect(0), Half, Defect(1)) | (Defect(1), Defect(1), Half)
            ) {
                -1
            } else {
                1
            },
        ),
        _ => Err(Error::Unsupported(format!(
            "for N = {} ≡ 2 mod 4 the untwisted class leaves both defects self-dual; \
             no commutative equivariantization reproduces the metaplectic census (use alpha = 1)",
            datum.n
        ))),
    }
}

/// Gauges the particle-hole symmetry `a ↦ −a` of a cyclic metric group.
///
/// Labels: `1`, `Z` over `[0]`; `X_a` for the orbit `{[a], [−a]}`;
/// `A+`, `A-` over `[N/2]`; `V±` over the (first) defect and `W±` over the
/// second. Dimensions are attached exactly. The quadratic form does not enter
/// the fusion rules; it only fixes which ℤ_N is gauged.
pub fn gauge_particle_hole(mg: &MetricGroup, datum: &GaugingDatum) -> Result<FusionRing> {
    let n = mg.order() as u64;
    if !mg.group().is_cyclic() || n != datum.n {
        return Err(Error::Parameter(format!(
            "datum is for ℤ_{} but the metric group is {}",
            datum.n,
            mg.group()
        )));
    }
    gauge_cyclic(datum)
}

/// [`gauge_particle_hole`] without a metric group: only N and the datum matter.
pub fn gauge_cyclic(datum: &GaugingDatum) -> Result<FusionRing> {
    let ext = particle_hole_extension(datum)?;
    let n = datum.n as usize;
    let role = |x: usize| {
        if x == 0 {
            Fixed::Unit
        } else if x < n {
            Fixed::Half
        } else {
            Fixed::Defect((x - n) as u8)
        }
    };
    // surface an unsupported class before enumerating
    particle_hole_sign(datum, Fixed::Half, Fixed::Half, Fixed::Unit)?;
    let sign = |x: usize, y: usize, z: usize| particle_hole_sign(datum, role(x), role(y), role(z)).unwrap_or(1);
    let (ring, objects) = equivariantize(&ext, &sign)?;
    let labels: Vec<String> = objects
        .iter()
        .map(|o| {
            let x = o.support[0];
            let pm = if o.character == Some(1) { "+" } else { "-" };
            match role(x) {
                Fixed::Unit if o.character == Some(1) => "1".to_string(),
                Fixed::Unit => "Z".to_string(),
                _ if x < n && o.character.is_none() => format!("X_{x}"),
                Fixed::Half => format!("A{pm}"),
                Fixed::Defect(0) => format!("V{pm}"),
                Fixed::Defect(_) => format!("W{pm}"),
            }
        })
        .collect();
    let dims: Vec<AlgebraicReal> = objects
        .iter()
        .map(|o| {
            let d = ext.dims[o.support[0]];
            if o.support.len() == 2 {
                d.checked_mul(&AlgebraicReal::integer(2)).expect("integer scaling")
            } else {
                d
            }
        })
        .collect();
    let entries = ring.entries();
    let ring = FusionRing::new(labels, ring.duals().to_vec(), entries)?.with_exact_dims(dims)?;
    let report = ring.verify_axioms();
    if !report.passed() {
        return Err(Error::Internal(format!(
            "gauged ring for N = {n} violates {}",
            report.violations[0].describe(&ring)
        )));
    }
    Ok(ring)
}

/// Gaugings per cyclic metric group: 3 when 4 | N (the fourth cohomology
/// pair is identified with another by relabeling), otherwise 2.
pub fn count_gaugings_per_form(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::Parameter(format!("N must be at least 2, got {n}")));
    }
    Ok(if n % 4 == 0 { 3 } else { 2 })
}

/// Number of metaplectic modular categories of dimension 4N, from
/// `N = 2^a p₁^{a₁}⋯p_s^{a_s}`: `2^{s+1+a}` if `a ≤ 1`, else `3·2^{s+2}`.
pub fn count_metaplectic(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::Parameter(format!("N must be at least 2, got {n}")));
    }
    if n == 4 {
        return Err(Error::Redirect(
            "N = 4 is the Ising⊠Ising case; use the Ising² enumeration (20 categories)".into(),
        ));
    }
    let factors = crate::nt::factorize(n);
    let a = factors.iter().find(|(p, _)| *p == 2).map_or(0, |&(_, e)| e);
    let s = factors.iter().filter(|(p, _)| *p != 2).count() as u32;
    Ok(if a <= 1 { 1u64 << (s + 1 + a) } else { 3 * (1u64 << (s + 2)) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::find_isomorphism;

    fn gauge(n: u64) -> FusionRing {
        gauge_cyclic(&GaugingDatum::metaplectic(n).unwrap()).unwrap()
    }

    #[test]
    fn odd_n_census() {
        let r = gauge(5);
        assert_eq!(r.labels(), ["1", "Z", "X_1", "X_2", "V+", "V-"]);
        let d: Vec<String> = r.exact_dims().unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(d, ["1", "1", "2", "2", "√5", "√5"]);
        assert!((0..r.rank()).all(|i| r.is_self_dual(i)));
    }

    #[test]
    fn n_four_is_ising_squared() {
        use crate::ring::examples::{ising, product};
        let r = gauge(4);
        assert_eq!(r.rank(), 9);
        assert!(find_isomorphism(&r, &product(&ising(), &ising())).is_some());
    }

    #[test]
    fn twist_does_not_change_defect_fusion_when_four_divides_n() {
        for n in [4u64, 8, 12, 20] {
            let a = particle_hole_extension(&GaugingDatum::new(n, 0, 0).unwrap()).unwrap();
            let b = particle_hole_extension(&GaugingDatum::new(n, 1, 0).unwrap()).unwrap();
            assert_eq!(a.ring, b.ring);
        }
        let a = particle_hole_extension(&GaugingDatum::new(6, 0, 0).unwrap()).unwrap();
        let b = particle_hole_extension(&GaugingDatum::new(6, 1, 0).unwrap()).unwrap();
        assert_ne!(a.ring, b.ring);
    }

    #[test]
    fn extensions_are_fusion_rings() {
        for n in 2..=12 {
            for alpha in 0..=u8::from(n % 2 == 0) {
                let e = particle_hole_extension(&GaugingDatum::new(n, alpha, 0).unwrap()).unwrap();
                assert!(e.ring.verify_axioms().passed(), "N = {n}, alpha = {alpha}");
            }
        }
    }

    #[test]
    fn invalid_data() {
        assert!(matches!(GaugingDatum::new(5, 1, 0), Err(Error::Parameter(_))));
        assert!(matches!(GaugingDatum::new(1, 0, 0), Err(Error::Parameter(_))));
        assert!(matches!(gauge_cyclic(&GaugingDatum::new(6, 0, 0).unwrap()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn counts() {
        assert_eq!(count_metaplectic(15).unwrap(), 8);
        assert_eq!(count_metaplectic(6).unwrap(), 8);
        assert_eq!(count_metaplectic(16).unwrap(), 12);
        assert_eq!(count_metaplectic(20).unwrap(), 24);
        assert!(matches!(count_metaplectic(4), Err(Error::Redirect(_))));
        assert_eq!(count_gaugings_per_form(4).unwrap(), 3);
        assert_eq!(count_gaugings_per_form(5).unwrap(), 2);
    }
}
