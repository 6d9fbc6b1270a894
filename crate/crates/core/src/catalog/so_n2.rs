//! SO(N)₂: explicit fusion rules for 4 | N and the gauging construction otherwise.

use crate::error::{Error, Result};
use crate::exact::AlgebraicReal;
use crate::gauging::{gauge_cyclic, GaugingDatum};
use crate::ring::FusionRing;

/// Label positions of SO(N)₂ for 4 | N: `1, f, g, fg`, then `X_0 … X_{r−1}`,
/// `Y_0 … Y_r`, `V_1, V_2, W_1, W_2`, with `k = N/2`, `r = k/2 − 1`.
#[derive(Clone, Copy, Debug)]
pub struct SoLayout {
    pub r: usize,
}

impl SoLayout {
    pub const UNIT: usize = 0;
    pub const F: usize = 1;
    pub const G: usize = 2;
    pub const FG: usize = 3;

    pub fn for_n(n: u64) -> Result<Self> {
        if n < 4 || n % 4 != 0 {
            return Err(Error::Parameter(format!("explicit SO(N)₂ rules need 4 | N, got {n}")));
        }
        Ok(Self { r: (n / 4 - 1) as usize })
    }

    pub fn x(&self, i: usize) -> usize {
        4 + i
    }

    pub fn y(&self, i: usize) -> usize {
        4 + self.r + i
    }

    pub fn v(&self, i: usize) -> usize {
        5 + 2 * self.r + i
    }

    pub fn w(&self, i: usize) -> usize {
        7 + 2 * self.r + i
    }

    pub fn rank(&self) -> usize {
        2 * self.r + 9
    }

    pub fn labels(&self) -> Vec<String> {
        let mut l: Vec<String> = ["1", "f", "g", "fg"].iter().map(|s| s.to_string()).collect();
        l.extend((0..self.r).map(|i| format!("X_{i}")));
        l.extend((0..=self.r).map(|i| format!("Y_{i}")));
        l.extend(["V_1", "V_2", "W_1", "W_2"].iter().map(|s| s.to_string()));
        l
    }

    pub fn dims(&self) -> Vec<AlgebraicReal> {
        let k = 2 * (self.r as u64 + 1);
        let mut d = vec![AlgebraicReal::integer(1); 4];
        d.extend(vec![AlgebraicReal::integer(2); 2 * self.r + 1]);
        d.extend(vec![AlgebraicReal::sqrt_of(k); 4]);
        d
    }
}

/// SO(N)₂ fusion ring with exact dimensions.
///
/// For 4 | N the ring is derived from the listed rules (see
/// [`SoLayout`]); for other N it is the particle-hole gauging of ℤ_N,
/// labelled `1, Z, X_a, A±, V±, W±`.
pub fn build_so_n2(n: u64) -> Result<FusionRing> {
    if n < 2 {
        return Err(Error::Parameter(format!("SO(N)₂ needs N ≥ 2, got {n}")));
    }
    if n % 4 != 0 {
        return gauge_cyclic(&GaugingDatum::metaplectic(n)?);
    }
    let layout = SoLayout::for_n(n)?;
    let mut k = Knowledge::new(layout.dims());
    seed_listed_rules(&layout, &mut k)?;
    k.close()?;
    let entries = k.entries()?;
    let rank = layout.rank();
    let ring = FusionRing::new(layout.labels(), (0..rank).collect(), entries)?.with_exact_dims(layout.dims())?;
    let report = ring.verify_axioms();
    if !report.passed() {
        return Err(Error::Internal(format!(
            "SO({n})₂ rules derived from the list violate {}",
            report.violations[0].describe(&ring)
        )));
    }
    Ok(ring)
}

/// The rules stated for SO(N)₂ with 4 | N. Every object is self-dual.
fn seed_listed_rules(l: &SoLayout, k: &mut Knowledge) -> Result<()> {
    let r = l.r;
    let (one, f, g, fg) = (SoLayout::UNIT, SoLayout::F, SoLayout::G, SoLayout::FG);
    for x in 0..l.rank() {
        k.product(one, x, &[x])?;
    }
    k.product(f, f, &[one])?;
    k.product(g, g, &[one])?;
    k.product(f, g, &[fg])?;
    for i in 0..r {
        k.product(f, l.x(i), &[l.x(r - i - 1)])?;
        k.product(g, l.x(i), &[l.x(r - i - 1)])?;
    }
    for i in 0..=r {
        k.product(f, l.y(i), &[l.y(r - i)])?;
        k.product(g, l.y(i), &[l.y(r - i)])?;
    }
    k.product(g, l.v(0), &[l.v(1)])?;
    k.product(f, l.v(0), &[l.v(0)])?;
    k.product(f, l.w(0), &[l.w(1)])?;
    k.product(g, l.w(0), &[l.w(0)])?;
    let xs: Vec<usize> = (0..r).map(|i| l.x(i)).collect();
    k.product(l.v(0), l.v(0), &[&[one, f][..], &xs].concat())?;
    k.product(l.w(0), l.w(0), &[&[one, g][..], &xs].concat())?;
    k.product(l.w(0), l.v(0), &(0..=r).map(|i| l.y(i)).collect::<Vec<_>>())?;

    // indices are compared through 2i against r − 1 to stay in integers
    for j in 0..r {
        for i in 0..=j {
            if i < j && 2 * j <= r.saturating_sub(1) && r >= 1 {
                k.product(l.x(i), l.x(j), &[l.x(i + j + 1), l.x(j - i - 1)])?;
            } else if i == j && 2 * i + 1 < r {
                k.product(l.x(i), l.x(i), &[one, fg, l.x(2 * i + 1)])?;
            } else if i == j && 2 * i + 1 == r && i + 1 < r {
                k.product(l.x(i), l.x(i), &[one, f, g, fg])?;
            }
        }
    }
    for j in 0..=r {
        for i in 0..=j {
            if i < j && 2 * j <= r {
                k.product(l.y(i), l.y(j), &[l.x(i + j), l.x(j - i - 1)])?;
            } else if i == j && 2 * i < r {
                k.product(l.y(i), l.y(i), &[one, fg, l.x(2 * i)])?;
            } else if i == j && 2 * i == r {
                k.product(l.y(i), l.y(i), &[one, f, g, fg])?;
            }
        }
    }
    Ok(())
}

/// Partially known fusion tensor of a commutative ring with self-dual simples.
struct Knowledge {
    rank: usize,
    dims: Vec<AlgebraicReal>,
    n: Vec<Option<u32>>,
}

impl Knowledge {
    fn new(dims: Vec<AlgebraicReal>) -> Self {
        let rank = dims.len();
        Self { rank, dims, n: vec![None; rank * rank * rank] }
    }

    fn at(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.rank + b) * self.rank + c
    }

    fn get(&self, a: usize, b: usize, c: usize) -> Option<u32> {
        self.n[self.at(a, b, c)]
    }

    fn set(&mut self, a: usize, b: usize, c: usize, v: u32) -> Result<bool> {
        let idx = self.at(a, b, c);
        match self.n[idx] {
            Some(old) if old == v => Ok(false),
            Some(old) => Err(Error::Internal(format!("conflicting multiplicities {old} and {v} at ({a},{b},{c})"))),
            None => {
                self.n[idx] = Some(v);
                Ok(true)
            }
        }
    }

    /// Records `a ⊗ b` completely: the listed constituents once each, nothing else.
    fn product(&mut self, a: usize, b: usize, constituents: &[usize]) -> Result<()> {
        for c in 0..self.rank {
            let m = constituents.iter().filter(|&&x| x == c).count() as u32;
            self.set(a, b, c, m)?;
        }
        Ok(())
    }

    /// `u ⊗ x` for every `x` whose product with `u` is fully known and simple.
    fn images(&self, u: usize) -> Vec<Option<usize>> {
        (0..self.rank)
            .map(|x| {
                let mut hit = None;
                for c in 0..self.rank {
                    match self.get(u, x, c)? {
                        0 => {}
                        1 if hit.is_none() => hit = Some(c),
                        _ => return None,
                    }
                }
                hit
            })
            .collect()
    }

    /// Applies commutativity, reciprocity, tensoring with `f` and `g`, and
    /// dimension counting until nothing new is learned.
    fn close(&mut self) -> Result<()> {
        let r = self.rank;
        loop {
            let mut changed = false;
            for a in 0..r {
                for b in 0..r {
                    for c in 0..r {
                        if let Some(v) = self.get(a, b, c) {
                            // N_ab^c = N_ba^c = N_ac^b = N_cb^a for self-dual simples
                            changed |= self.set(b, a, c, v)?;
                            changed |= self.set(a, c, b, v)?;
                            changed |= self.set(c, b, a, v)?;
                        }
                    }
                }
            }
            for u in [SoLayout::F, SoLayout::G] {
                let p = self.images(u);
                for a in 0..r {
                    for c in 0..r {
                        let (Some(ua), Some(uc)) = (p[a], p[c]) else { continue };
                        for b in 0..r {
                            if let Some(v) = self.get(a, b, c) {
                                changed |= self.set(ua, b, uc, v)?;
                            }
                        }
                    }
                }
            }
            for a in 0..r {
                for b in 0..r {
                    changed |= self.complete_by_dimension(a, b)?;
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    fn complete_by_dimension(&mut self, a: usize, b: usize) -> Result<bool> {
        let mut unknown = Vec::new();
        let mut total = AlgebraicReal::integer(0);
        for c in 0..self.rank {
            match self.get(a, b, c) {
                None => unknown.push(c),
                Some(0) => {}
                Some(m) => {
                    let term = self.dims[c].checked_mul(&AlgebraicReal::integer(i64::from(m)));
                    match term.and_then(|t| total.checked_add(&t)) {
                        Some(t) => total = t,
                        None => return Ok(false),
                    }
                }
            }
        }
        if unknown.is_empty() || self.dims[a].checked_mul(&self.dims[b]) != Some(total) {
            return Ok(false);
        }
        for c in unknown {
            self.set(a, b, c, 0)?;
        }
        Ok(true)
    }

    fn entries(&self) -> Result<Vec<(usize, usize, usize, u32)>> {
        let mut out = Vec::new();
        for a in 0..self.rank {
            for b in 0..self.rank {
                for c in 0..self.rank {
                    match self.get(a, b, c) {
                        Some(0) => {}
                        Some(m) => out.push((a, b, c, m)),
                        None => {
                            return Err(Error::Internal(format!("N({a},{b},{c}) is not determined by the listed rules")))
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::examples::{ising, product};
    use crate::ring::find_isomorphism;

    #[test]
    fn so8_census() {
        let r = build_so_n2(8).unwrap();
        assert_eq!(r.rank(), 11);
        let d = r.dims_f64().unwrap();
        assert_eq!(d.iter().filter(|&&x| (x - 1.0).abs() < 1e-9).count(), 4);
        assert_eq!(d.iter().filter(|&&x| (x - 2.0).abs() < 1e-9).count(), 7);
    }

    #[test]
    fn v1_v2_product_for_n_12() {
        let r = build_so_n2(12).unwrap();
        let (v1, v2) = (r.require("V_1").unwrap(), r.require("V_2").unwrap());
        assert_eq!(r.product_labels(v1, v2), ["g", "fg", "X_0", "X_1"]);
    }

    #[test]
    fn so4_is_two_ising_factors() {
        let r = build_so_n2(4).unwrap();
        assert_eq!(r.rank(), 9);
        assert!(find_isomorphism(&r, &product(&ising(), &ising())).is_some());
    }

    #[test]
    fn rejects_small_n() {
        assert!(matches!(build_so_n2(1), Err(Error::Parameter(_))));
    }
}
