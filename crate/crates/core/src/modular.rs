//! Ribbon data (dimensions and twists) on a fusion ring, the S-matrix derived
//! from the balancing relation, modularity, centralizers and the boson/fermion
//! classification of invertible objects.
//!
//! The S-matrix is always computed from
//! `S_{ij} = (θ_i θ_j)^{-1} Σ_k N_{i*j}^k d_k θ_k`; there is no second formula.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{AlgebraicReal, Phase};
use crate::ring::FusionRing;

/// Tolerance for every S-matrix based predicate.
pub const S_TOLERANCE: f64 = 1e-6;

/// Dimensions and twists attached to a fusion ring.
#[derive(Clone, Debug)]
pub struct RibbonData {
    ring: FusionRing,
    dims: Vec<AlgebraicReal>,
    twists: Vec<Phase>,
}

impl RibbonData {
    /// Validates `θ_0 = 1`, `θ_{i*} = θ_i`, `d_{i*} = d_i` and the dimension
    /// homomorphism `d_i d_j = Σ_k N_{ij}^k d_k` (within 1e-9).
    pub fn new(ring: FusionRing, dims: Vec<AlgebraicReal>, twists: Vec<Phase>) -> Result<Self> {
        let r = ring.rank();
        if dims.len() != r || twists.len() != r {
            return Err(Error::Malformed(format!(
                "rank {r} but {} dimensions and {} twists",
                dims.len(),
                twists.len()
            )));
        }
        if !twists[0].is_zero() {
            return Err(Error::Malformed("the unit must have trivial twist".into()));
        }
        check_dims(&ring, &dims)?;
        for i in 0..r {
            if twists[ring.dual(i)] != twists[i] {
                return Err(Error::Malformed(format!("twist of {} differs from its dual", ring.label(i))));
            }
        }
        Ok(Self { ring, dims, twists })
    }

    /// Same ring and dimensions with new twists, validated as in [`Self::new`].
    pub fn with_twists(mut self, twists: Vec<Phase>) -> Result<Self> {
        let r = self.rank();
        if twists.len() != r {
            return Err(Error::Malformed(format!("rank {r} but {} twists", twists.len())));
        }
        if !twists[0].is_zero() {
            return Err(Error::Malformed("the unit must have trivial twist".into()));
        }
        if let Some(i) = (0..r).find(|&i| twists[self.ring.dual(i)] != twists[i]) {
            return Err(Error::Malformed(format!("twist of {} differs from its dual", self.ring.label(i))));
        }
        self.twists = twists;
        Ok(self)
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    pub fn dims(&self) -> &[AlgebraicReal] {
        &self.dims
    }

    pub fn twists(&self) -> &[Phase] {
        &self.twists
    }

    pub fn twist(&self, i: usize) -> Phase {
        self.twists[i]
    }

    pub fn dims_f64(&self) -> Vec<f64> {
        self.dims.iter().map(AlgebraicReal::to_f64).collect()
    }

    pub fn global_dim(&self) -> f64 {
        self.dims_f64().iter().map(|d| d * d).sum()
    }

    /// The S-matrix from the balancing relation.
    pub fn s_matrix(&self) -> SMatrix {
        let r = self.rank();
        let d = self.dims_f64();
        let theta: Vec<Complex64> = self.twists.iter().map(Phase::to_complex).collect();
        let mut entries = vec![Complex64::new(0.0, 0.0); r * r];
        for i in 0..r {
            let istar = self.ring.dual(i);
            for j in 0..r {
                let sum: Complex64 = self
                    .ring
                    .product(istar, j)
                    .iter()
                    .map(|&(k, n)| theta[k] * (f64::from(n) * d[k]))
                    .sum();
                entries[i * r + j] = sum * (theta[i] * theta[j]).conj();
            }
        }
        SMatrix { rank: r, entries }
    }

    /// Modular iff `|det S| > ½ (Σ d_i²)^{rank/2}`, the modular value of `|det S|`.
    pub fn is_modular(&self) -> bool {
        let s = self.s_matrix();
        let threshold = 0.5 * self.global_dim().powf(self.rank() as f64 / 2.0);
        s.determinant().norm() > threshold
    }

    /// Objects `i` with `S_{ij} = d_i d_j` for every `j` in `sub`, sorted.
    pub fn centralizer(&self, sub: &[usize]) -> Result<Vec<usize>> {
        if !self.ring.is_closed(sub) {
            return Err(Error::Malformed("centralizer needs a fusion-closed sub-basis containing the unit".into()));
        }
        let s = self.s_matrix();
        let d = self.dims_f64();
        Ok((0..self.rank())
            .filter(|&i| sub.iter().all(|&j| (s.get(i, j) - Complex64::new(d[i] * d[j], 0.0)).norm() < S_TOLERANCE))
            .collect())
    }

    pub fn muger_center(&self) -> Vec<usize> {
        let all: Vec<usize> = (0..self.rank()).collect();
        self.centralizer(&all).expect("the whole basis is closed")
    }

    /// Boson, fermion, or neither for an invertible object.
    pub fn classify_invertible(&self, i: usize) -> Result<InvertibleKind> {
        if i >= self.rank() {
            return Err(Error::Malformed(format!("index {i} out of range")));
        }
        if self.dims[i] != AlgebraicReal::integer(1) {
            return Err(Error::Precondition(format!("{} is not invertible", self.ring.label(i))));
        }
        let order_two = self.ring.mult(i, i, 0) == 1;
        let t = self.twists[i];
        Ok(match (order_two, t) {
            (true, t) if t.is_zero() => InvertibleKind::Boson,
            (true, t) if t == Phase::half() => InvertibleKind::Fermion,
            _ => InvertibleKind::NotOrderTwo { twist: t, order_two },
        })
    }

    /// `(τ⁺, τ⁻) = (Σ d_i² θ_i, Σ d_i² θ_i⁻¹)`.
    pub fn gauss_sums(&self) -> (Complex64, Complex64) {
        let d = self.dims_f64();
        let mut plus = Complex64::new(0.0, 0.0);
        let mut minus = Complex64::new(0.0, 0.0);
        for (di, t) in d.iter().zip(&self.twists) {
            let z = t.to_complex();
            plus += z * (di * di);
            minus += z.conj() * (di * di);
        }
        (plus, minus)
    }
}

fn check_dims(ring: &FusionRing, dims: &[AlgebraicReal]) -> Result<()> {
    let d: Vec<f64> = dims.iter().map(AlgebraicReal::to_f64).collect();
    let r = ring.rank();
    for i in 0..r {
        if dims[ring.dual(i)] != dims[i] {
            return Err(Error::Malformed(format!("dimension of {} differs from its dual", ring.label(i))));
        }
        for j in 0..r {
            let rhs: f64 = ring.product(i, j).iter().map(|&(k, n)| f64::from(n) * d[k]).sum();
            if (d[i] * d[j] - rhs).abs() > 1e-9 * rhs.max(1.0) {
                return Err(Error::Malformed(format!(
                    "dimensions are not multiplicative at ({}, {})",
                    ring.label(i),
                    ring.label(j)
                )));
            }
        }
    }
    Ok(())
}

/// Verdict of [`RibbonData::classify_invertible`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InvertibleKind {
    Boson,
    Fermion,
    /// Not a boson or fermion; `order_two` records whether `X ⊗ X = 1`.
    NotOrderTwo { twist: Phase, order_two: bool },
}

/// Complex S-matrix in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct SMatrix {
    rank: usize,
    entries: Vec<Complex64>,
}

impl SMatrix {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.rank + j]
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.entries[i * self.rank..(i + 1) * self.rank]
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (0..self.rank).all(|i| (0..i).all(|j| (self.get(i, j) - self.get(j, i)).norm() < tol))
    }

    pub fn determinant(&self) -> Complex64 {
        DMatrix::from_row_slice(self.rank, self.rank, &self.entries).determinant()
    }

    /// Entry as text: an exact-looking Gaussian rational when within 1e-9 of
    /// one with small denominator, decimals otherwise.
    pub fn format_entry(z: Complex64) -> String {
        let exact = |x: f64| -> Option<String> {
            (1..=12i64).find_map(|den| {
                let num = (x * den as f64).round();
                ((x - num / den as f64).abs() < 1e-9).then(|| {
                    let g = num_integer::gcd(num as i64, den);
                    let (n, d) = (num as i64 / g.max(1), den / g.max(1));
                    if d == 1 {
                        n.to_string()
                    } else {
                        format!("{n}/{d}")
                    }
                })
            })
        };
        match (exact(z.re), exact(z.im)) {
            (Some(re), Some(im)) => match (re.as_str(), im.as_str()) {
                (_, "0") => re,
                ("0", "1") => "i".into(),
                ("0", "-1") => "-i".into(),
                ("0", _) => format!("{im}i"),
                (_, "1") => format!("{re}+i"),
                (_, "-1") => format!("{re}-i"),
                (_, _) if im.starts_with('-') => format!("{re}{im}i"),
                _ => format!("{re}+{im}i"),
            },
            _ if z.im.abs() < 1e-9 => format!("{:.9}", z.re),
            _ => format!("{:.9}{:+.9}i", z.re, z.im),
        }
    }

    pub fn formatted(&self) -> Vec<Vec<String>> {
        (0..self.rank).map(|i| self.row(i).iter().map(|&z| Self::format_entry(z)).collect()).collect()
    }
}

/// The twist of an invertible `g` forced by requiring `g` to centralize an
/// object `x` that it fixes (`S_{x,g} = d_x d_g`).
///
/// Twists are optional: the balancing relation for `S_{x,g}` only involves
/// `θ_x` on both sides, so it cancels and need not be known.
pub fn transparency_constraint(
    ring: &FusionRing,
    dims: &[AlgebraicReal],
    twists: &[Option<Phase>],
    g: usize,
    x: usize,
) -> Result<Phase> {
    let r = ring.rank();
    if g >= r || x >= r || dims.len() != r || twists.len() != r {
        return Err(Error::Malformed("index or data length out of range".into()));
    }
    if ring.mult(g, x, x) != 1 || dims[g] != AlgebraicReal::integer(1) {
        return Err(Error::Precondition(format!(
            "{} is not an invertible object fixing {}",
            ring.label(g),
            ring.label(x)
        )));
    }
    // θ_x θ_g S_{x,g} = Σ_k N_{x*,g}^k d_k θ_k; express each θ_k relative to θ_x
    let xs = ring.dual(x);
    let d: Vec<f64> = dims.iter().map(AlgebraicReal::to_f64).collect();
    let mut sum = Complex64::new(0.0, 0.0);
    for &(k, n) in ring.product(xs, g) {
        let rel = if k == x || k == xs {
            Phase::zero()
        } else {
            match (twists[k], twists[x]) {
                (Some(tk), Some(tx)) => tk - tx,
                _ => {
                    return Err(Error::Precondition(format!(
                        "twist of {} is needed but unknown",
                        ring.label(k)
                    )))
                }
            }
        };
        sum += rel.to_complex() * (f64::from(n) * d[k]);
    }
    // S_{x,g} = d_x d_g  ⇔  θ_g = sum / (d_x d_g)
    let value = sum / (d[x] * d[g]);
    phase_of(value).ok_or_else(|| Error::Internal(format!("forced twist {value} is not a root of unity of small order")))
}

fn phase_of(z: Complex64) -> Option<Phase> {
    if (z.norm() - 1.0).abs() > 1e-9 {
        return None;
    }
    let turns = z.arg() / std::f64::consts::TAU;
    (1..=240i64).find_map(|den| {
        let num = (turns * den as f64).round();
        ((turns - num / den as f64).abs() < 1e-10).then(|| Phase::new(num as i64, den))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::examples;

    fn pointed(n: usize, q: &[Phase]) -> RibbonData {
        RibbonData::new(examples::cyclic(n), vec![AlgebraicReal::integer(1); n], q.to_vec()).unwrap()
    }

    fn svec() -> RibbonData {
        pointed(2, &[Phase::zero(), Phase::half()])
    }

    fn semion() -> RibbonData {
        pointed(2, &[Phase::zero(), Phase::new(1, 4)])
    }

    fn rep_z2() -> RibbonData {
        pointed(2, &[Phase::zero(), Phase::zero()])
    }

    fn ising(nu: i64) -> RibbonData {
        let ring = examples::ising();
        let dims = ring.exact_dims().unwrap().to_vec();
        RibbonData::new(ring, dims, vec![Phase::zero(), Phase::half(), Phase::new(nu, 16)]).unwrap()
    }

    #[test]
    fn semion_s_matrix() {
        let s = semion().s_matrix();
        let want = [1.0, 1.0, 1.0, -1.0];
        for (i, w) in want.iter().enumerate() {
            assert!((s.get(i / 2, i % 2) - Complex64::new(*w, 0.0)).norm() < 1e-12);
        }
        assert!((s.determinant() - Complex64::new(-2.0, 0.0)).norm() < 1e-12);
        assert!(semion().is_modular());
        assert_eq!(semion().muger_center(), vec![0]);
    }

    #[test]
    fn degenerate_pointed_data() {
        assert!(!rep_z2().is_modular());
        assert!(!svec().is_modular());
        assert_eq!(rep_z2().muger_center(), vec![0, 1]);
        assert_eq!(svec().s_matrix().formatted(), vec![vec!["1", "1"], vec!["1", "1"]]);
    }

    #[test]
    fn ising_s_sigma_sigma_vanishes() {
        for nu in (1..16).step_by(2) {
            let rd = ising(nu);
            let s = rd.s_matrix();
            assert!(s.get(2, 2).norm() < 1e-12);
            assert!(s.is_symmetric(1e-9));
            assert!(rd.is_modular());
            let (p, m) = rd.gauss_sums();
            assert!((p.norm_sqr() - 4.0).abs() < 1e-9);
            assert!((m.norm_sqr() - 4.0).abs() < 1e-9);
        }
    }

    #[test]
    fn centralizer_in_z4() {
        let q: Vec<Phase> = (0..4).map(|a| Phase::new(a * a, 8)).collect();
        let rd = pointed(4, &q);
        assert_eq!(rd.centralizer(&[0, 2]).unwrap(), vec![0, 2]);
        assert_eq!(rd.centralizer(&[0]).unwrap(), vec![0, 1, 2, 3]);
        assert!(matches!(rd.centralizer(&[0, 1]), Err(Error::Malformed(_))));
    }

    #[test]
    fn invertible_kinds() {
        assert_eq!(svec().classify_invertible(1).unwrap(), InvertibleKind::Fermion);
        assert_eq!(svec().classify_invertible(0).unwrap(), InvertibleKind::Boson);
        assert_eq!(
            semion().classify_invertible(1).unwrap(),
            InvertibleKind::NotOrderTwo { twist: Phase::new(1, 4), order_two: true }
        );
        assert!(matches!(ising(1).classify_invertible(2), Err(Error::Precondition(_))));
    }

    #[test]
    fn gauss_sums_of_small_data() {
        let (p, m) = semion().gauss_sums();
        assert!((p - Complex64::new(1.0, 1.0)).norm() < 1e-12);
        assert!((m - Complex64::new(1.0, -1.0)).norm() < 1e-12);
        assert_eq!(rep_z2().gauss_sums().0, Complex64::new(2.0, 0.0));
    }

    #[test]
    fn invalid_ribbon_data_is_rejected() {
        let ring = examples::cyclic(3);
        let one = vec![AlgebraicReal::integer(1); 3];
        let bad = RibbonData::new(ring.clone(), one.clone(), vec![Phase::zero(), Phase::new(1, 3), Phase::new(2, 3)]);
        assert!(matches!(bad, Err(Error::Malformed(_))));
        let bad = RibbonData::new(ring, vec![AlgebraicReal::integer(2); 3], vec![Phase::zero(); 3]);
        assert!(matches!(bad, Err(Error::Malformed(_))));
    }

    #[test]
    fn centralizing_a_fixed_object_forces_trivial_twist() {
        let ring = examples::ising();
        let dims = ring.exact_dims().unwrap().to_vec();
        let t = transparency_constraint(&ring, &dims, &[None; 3], 1, 2).unwrap();
        assert!(t.is_zero());
        assert!(transparency_constraint(&ring, &dims, &[None; 3], 0, 0).unwrap().is_zero());
        assert!(matches!(transparency_constraint(&ring, &dims, &[None; 3], 1, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn entry_formatting() {
        assert_eq!(SMatrix::format_entry(Complex64::new(0.5, -0.5)), "1/2-1/2i");
        assert_eq!(SMatrix::format_entry(Complex64::new(0.0, 2.0)), "2i");
        assert_eq!(SMatrix::format_entry(Complex64::new(2f64.sqrt(), 0.0)), "1.414213562");
    }
}
