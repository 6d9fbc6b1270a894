use serde::Serialize;

use super::FusionRing;
use crate::error::{Error, Result};
use crate::group::{self, AbelianGroup};
use crate::nt;

/// Tolerance for dimension predicates when no exact dimensions are attached.
pub const DIM_TOLERANCE: f64 = 1e-9;

const POWER_TOLERANCE: f64 = 1e-12;
const POWER_MAX_ITERATIONS: usize = 100_000;

/// The invertible simple objects and their group structure under fusion.
#[derive(Clone, Debug, Serialize)]
pub struct InvertibleGroup {
    /// Sorted indices of the invertible objects.
    pub members: Vec<usize>,
    pub group: AbelianGroup,
    /// `element[n]` is the group element of `members[n]`.
    pub element: Vec<usize>,
}

impl InvertibleGroup {
    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn element_of(&self, i: usize) -> Option<usize> {
        self.members.binary_search(&i).ok().map(|n| self.element[n])
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }
}

impl FusionRing {
    /// Frobenius–Perron dimensions, normalized so that `d_0 = 1`.
    ///
    /// Power iteration on `M = Σ_i N_i`, which is entrywise positive for a
    /// fusion ring, so the iteration converges to the common PF eigenvector.
    pub fn fp_dimensions(&self) -> Result<Vec<f64>> {
        if !self.is_commutative() {
            return Err(Error::Unsupported("Frobenius-Perron dimensions need a commutative fusion ring".into()));
        }
        let r = self.rank();
        let mut m = vec![0f64; r * r];
        for i in 0..r {
            for j in 0..r {
                for &(k, n) in self.product(i, j) {
                    m[j * r + k] += f64::from(n);
                }
            }
        }
        let mut v = vec![1.0 / r as f64; r];
        let mut next = vec![0f64; r];
        let mut delta = f64::INFINITY;
        for _ in 0..POWER_MAX_ITERATIONS {
            for j in 0..r {
                next[j] = (0..r).map(|k| m[j * r + k] * v[k]).sum();
            }
            let norm = next.iter().fold(0f64, |a, &x| a.max(x));
            if !(norm > 0.0) || !norm.is_finite() {
                return Err(Error::Degenerate("fusion matrix annihilates the iterate".into()));
            }
            next.iter_mut().for_each(|x| *x /= norm);
            delta = v.iter().zip(&next).fold(0f64, |a, (x, y)| a.max((x - y).abs()));
            std::mem::swap(&mut v, &mut next);
            if delta < POWER_TOLERANCE {
                let d0 = v[0];
                return Ok(v.into_iter().map(|x| x / d0).collect());
            }
        }
        Err(Error::NoConvergence { iterations: POWER_MAX_ITERATIONS, delta })
    }

    /// `Σ_i d_i²`.
    pub fn global_fp_dim(&self) -> Result<f64> {
        Ok(self.dims_f64()?.iter().map(|d| d * d).sum())
    }

    /// Multiplicity of `X_target` in `X_{w_1} ⊗ … ⊗ X_{w_n}` (left to right).
    pub fn hom_space_dim(&self, word: &[usize], target: usize) -> Result<u128> {
        let r = self.rank();
        let (&first, rest) = word.split_first().ok_or_else(|| Error::Parameter("empty tensor word".into()))?;
        if let Some(&bad) = word.iter().chain(std::iter::once(&target)).find(|&&i| i >= r) {
            return Err(Error::Malformed(format!("index {bad} out of range for rank {r}")));
        }
        let mut v = vec![0u128; r];
        v[first] = 1;
        for &x in rest {
            v = self.act_right(&v, x)?;
        }
        Ok(v[target])
    }

    /// `v ↦ v · N_x`, i.e. the coefficients of `(Σ v_m X_m) ⊗ X_x`.
    pub(crate) fn act_right(&self, v: &[u128], x: usize) -> Result<Vec<u128>> {
        let mut out = vec![0u128; self.rank()];
        for (m, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(k, n) in self.product(m, x) {
                let add = c.checked_mul(u128::from(n)).ok_or_else(overflow)?;
                out[k] = out[k].checked_add(add).ok_or_else(overflow)?;
            }
        }
        Ok(out)
    }

    /// `dim Hom(1, X^{⊗kn}) / dim Hom(1, X^{⊗k(n−1)})` where `k` is the
    /// smallest positive power of `X_i` containing the unit.
    pub fn asymptotic_dim_ratio(&self, i: usize, n: usize) -> Result<f64> {
        if n < 2 {
            return Err(Error::Parameter(format!("asymptotic ratio needs n >= 2, got {n}")));
        }
        if i >= self.rank() {
            return Err(Error::Malformed(format!("index {i} out of range")));
        }
        let period = self.invariant_period(i)?;
        let mut v = vec![0u128; self.rank()];
        v[0] = 1;
        let mut prev = 0u128;
        for step in 1..=n {
            for _ in 0..period {
                v = self.act_right(&v, i)?;
            }
            if step == n - 1 {
                prev = v[0];
            }
        }
        if prev == 0 {
            return Err(Error::Degenerate(format!("no invariants in power {} of {}", period * (n - 1), self.label(i))));
        }
        Ok(v[0] as f64 / prev as f64)
    }

    /// Minimal `k ≤ rank` with `Hom(1, X_i^{⊗k}) ≠ 0`.
    pub fn invariant_period(&self, i: usize) -> Result<usize> {
        let mut v = vec![0u128; self.rank()];
        v[0] = 1;
        for k in 1..=self.rank() {
            v = self.act_right(&v, i)?;
            if v[0] > 0 {
                return Ok(k);
            }
        }
        Err(Error::Degenerate(format!("no power of {} up to the rank contains the unit", self.label(i))))
    }

    fn is_dim_one(&self, i: usize, dims: &[f64]) -> bool {
        match self.exact_dims() {
            Some(d) => d[i] == crate::exact::AlgebraicReal::integer(1),
            None => dims[i] <= 1.0 + DIM_TOLERANCE,
        }
    }

    /// The objects of dimension one, with the group law read off from fusion.
    pub fn invertibles(&self) -> Result<InvertibleGroup> {
        let dims = self.dims_f64()?;
        let members: Vec<usize> = (0..self.rank()).filter(|&i| self.is_dim_one(i, &dims)).collect();
        let pos = |k: usize| members.binary_search(&k).ok();
        let mut table = vec![vec![0usize; members.len()]; members.len()];
        for (a, &i) in members.iter().enumerate() {
            for (b, &j) in members.iter().enumerate() {
                match self.product(i, j) {
                    [(k, 1)] if pos(*k).is_some() => table[a][b] = pos(*k).expect("checked"),
                    _ => {
                        return Err(Error::Internal(format!(
                            "product of invertibles {} and {} is not invertible",
                            self.label(i),
                            self.label(j)
                        )))
                    }
                }
            }
        }
        let (group, element) = group::identify(&table, 0)?;
        Ok(InvertibleGroup { members, group, element })
    }

    /// Invertible objects `Y` with `Y ⊗ X_i ≅ X_i`, sorted.
    pub fn fixing_group(&self, i: usize) -> Result<Vec<usize>> {
        Ok(self.invertibles()?.members.into_iter().filter(|&y| self.mult(y, i, i) == 1).collect())
    }

    /// Whether every `d_i` is an integer.
    pub fn is_integral(&self) -> Result<bool> {
        match self.exact_dims() {
            Some(d) => Ok(d.iter().all(|x| x.is_integer())),
            None => Ok(self.fp_dimensions()?.iter().all(|d| (d - d.round()).abs() < DIM_TOLERANCE)),
        }
    }

    /// Square-free part `n_x` of `d_x²` for every object, when the ring is weakly integral.
    pub fn weak_classes(&self) -> Result<Vec<u64>> {
        let not_weak = |i: usize| Error::Unsupported(format!("dimension of {} squares to a non-integer", self.label(i)));
        match self.exact_dims() {
            Some(d) => d.iter().enumerate().map(|(i, x)| x.weak_class().ok_or_else(|| not_weak(i))).collect(),
            None => {
                let d = self.fp_dimensions()?;
                d.iter()
                    .enumerate()
                    .map(|(i, x)| {
                        let sq = x * x;
                        let n = sq.round();
                        if (sq - n).abs() < DIM_TOLERANCE * sq.max(1.0) && n >= 1.0 {
                            Ok(nt::split_square(n as u64).1)
                        } else {
                            Err(not_weak(i))
                        }
                    })
                    .collect()
            }
        }
    }
}

fn overflow() -> Error {
    Error::Overflow("hom-space dimension exceeds 128 bits".into())
}
