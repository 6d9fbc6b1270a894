//! Fusion rings: based ℤ₊-rings with a unit basis element and a dual involution.
//!
//! A [`FusionRing`] is always well shaped once constructed (indices in range,
//! duals defined for every basis element). Whether it actually satisfies the
//! fusion-ring axioms is a separate question answered by
//! [`FusionRing::verify_axioms`].

mod axioms;
mod dims;
mod grading;
mod iso;
mod sub;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::AlgebraicReal;

pub use axioms::{AxiomReport, Violation};
pub use dims::{InvertibleGroup, DIM_TOLERANCE};
pub use grading::Grading;
pub use iso::find_isomorphism;

/// Rank at or below which a dense `rank³` table is kept alongside the sparse rows.
pub const DENSE_RANK_LIMIT: usize = 64;

#[derive(Clone, Debug)]
pub struct FusionRing {
    labels: Vec<String>,
    dual: Vec<usize>,
    /// Row `i * rank + j` lists `(k, N_{ij}^k)` for nonzero entries, sorted by `k`.
    products: Vec<Vec<(usize, u32)>>,
    dense: Option<Vec<u32>>,
    exact_dims: Option<Vec<AlgebraicReal>>,
}

impl PartialEq for FusionRing {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.dual == other.dual && self.products == other.products
    }
}

impl FusionRing {
    /// Builds a ring from nonzero entries `(i, j, k, N_{ij}^k)`.
    ///
    /// Zero multiplicities are ignored; repeated `(i, j, k)` triples are rejected.
    pub fn new<S: Into<String>>(
        labels: Vec<S>,
        dual: Vec<usize>,
        entries: impl IntoIterator<Item = (usize, usize, usize, u32)>,
    ) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let rank = labels.len();
        if rank == 0 {
            return Err(Error::Malformed("a fusion ring needs at least the unit".into()));
        }
        if dual.len() != rank {
            return Err(Error::Malformed(format!("dual has length {} but rank is {rank}", dual.len())));
        }
        if let Some(&bad) = dual.iter().find(|&&d| d >= rank) {
            return Err(Error::Malformed(format!("dual index {bad} out of range")));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Malformed(format!("duplicate label {l:?}")));
            }
        }
        let mut rows: Vec<BTreeMap<usize, u32>> = vec![BTreeMap::new(); rank * rank];
        for (i, j, k, m) in entries {
            if i >= rank || j >= rank || k >= rank {
                return Err(Error::Malformed(format!("fusion entry ({i},{j},{k}) out of range for rank {rank}")));
            }
            if m == 0 {
                continue;
            }
            if rows[i * rank + j].insert(k, m).is_some() {
                return Err(Error::Malformed(format!("fusion entry ({i},{j},{k}) given twice")));
            }
        }
        let products = rows.into_iter().map(|r| r.into_iter().collect()).collect();
        Ok(Self::from_parts(labels, dual, products))
    }

    /// Builds a ring from a product rule `(i, j) ↦ [(k, mult)]`.
    pub fn from_rule<S: Into<String>>(
        labels: Vec<S>,
        dual: Vec<usize>,
        rule: impl Fn(usize, usize) -> Vec<(usize, u32)>,
    ) -> Result<Self> {
        let rank = labels.len();
        let mut entries = Vec::new();
        for i in 0..rank {
            for j in 0..rank {
                let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
                for (k, m) in rule(i, j) {
                    *acc.entry(k).or_default() += m;
                }
                entries.extend(acc.into_iter().map(|(k, m)| (i, j, k, m)));
            }
        }
        Self::new(labels, dual, entries)
    }

    fn from_parts(labels: Vec<String>, dual: Vec<usize>, products: Vec<Vec<(usize, u32)>>) -> Self {
        let rank = labels.len();
        let dense = (rank <= DENSE_RANK_LIMIT).then(|| {
            let mut d = vec![0u32; rank * rank * rank];
            for (row, list) in products.iter().enumerate() {
                for &(k, m) in list {
                    d[row * rank + k] = m;
                }
            }
            d
        });
        Self { labels, dual, products, dense, exact_dims: None }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Index for a label, as an error when missing.
    pub fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label).ok_or_else(|| Error::Malformed(format!("no simple object labelled {label:?}")))
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    /// `N_{ij}^k`.
    pub fn mult(&self, i: usize, j: usize, k: usize) -> u32 {
        let r = self.rank();
        match &self.dense {
            Some(d) => d[(i * r + j) * r + k],
            None => {
                let row = &self.products[i * r + j];
                row.binary_search_by_key(&k, |&(kk, _)| kk).map(|p| row[p].1).unwrap_or(0)
            }
        }
    }

    /// Nonzero constituents of `X_i ⊗ X_j` as `(k, multiplicity)`, sorted by `k`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, u32)] {
        &self.products[i * self.rank() + j]
    }

    /// All nonzero entries `(i, j, k, N_{ij}^k)` in lexicographic order.
    pub fn entries(&self) -> Vec<(usize, usize, usize, u32)> {
        let r = self.rank();
        let mut out = Vec::new();
        for i in 0..r {
            for j in 0..r {
                out.extend(self.product(i, j).iter().map(|&(k, m)| (i, j, k, m)));
            }
        }
        out
    }

    pub fn is_dense(&self) -> bool {
        self.dense.is_some()
    }

    pub fn is_commutative(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| (i + 1..r).all(|j| self.product(i, j) == self.product(j, i)))
    }

    pub fn is_self_dual(&self, i: usize) -> bool {
        self.dual[i] == i
    }

    /// Attaches exact dimensions after checking them against the
    /// Perron–Frobenius eigenvector (`|exact − float| < 1e-9`).
    pub fn with_exact_dims(mut self, dims: Vec<AlgebraicReal>) -> Result<Self> {
        if dims.len() != self.rank() {
            return Err(Error::Malformed(format!("{} dimensions for rank {}", dims.len(), self.rank())));
        }
        let float = self.fp_dimensions()?;
        for (i, (d, f)) in dims.iter().zip(&float).enumerate() {
            if (d.to_f64() - f).abs() >= DIM_TOLERANCE {
                return Err(Error::Internal(format!(
                    "exact dimension {d} of {} disagrees with Perron-Frobenius value {f}",
                    self.labels[i]
                )));
            }
        }
        self.exact_dims = Some(dims);
        Ok(self)
    }

    pub fn exact_dims(&self) -> Option<&[AlgebraicReal]> {
        self.exact_dims.as_deref()
    }

    /// Relabels the basis: new index `n` is old index `order[n]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let r = self.rank();
        let mut inv = vec![usize::MAX; r];
        for (new, &old) in order.iter().enumerate() {
            if old >= r || inv[old] != usize::MAX {
                return Err(Error::Malformed("not a permutation of the basis".into()));
            }
            inv[old] = new;
        }
        if order.len() != r {
            return Err(Error::Malformed("not a permutation of the basis".into()));
        }
        let labels = order.iter().map(|&o| self.labels[o].clone()).collect();
        let dual = order.iter().map(|&o| inv[self.dual[o]]).collect();
        let entries = self.entries().into_iter().map(|(i, j, k, m)| (inv[i], inv[j], inv[k], m));
        let mut out = Self::new(labels, dual, entries)?;
        out.exact_dims = self.exact_dims.as_ref().map(|d| order.iter().map(|&o| d[o]).collect());
        Ok(out)
    }

    /// Canonical order: unit, invertibles by label, then the rest by `(dim, label)`.
    ///
    /// The unit must already sit at index 0.
    pub fn canonicalized(&self) -> Result<Self> {
        let dims = self.dims_f64()?;
        let inv = self.invertibles()?.members;
        let mut order: Vec<usize> = (1..self.rank()).collect();
        order.sort_by(|&a, &b| {
            let ia = inv.contains(&a);
            let ib = inv.contains(&b);
            ib.cmp(&ia)
                .then_with(|| {
                    if ia && ib {
                        Ordering::Equal
                    } else {
                        dims[a].partial_cmp(&dims[b]).unwrap_or(Ordering::Equal)
                    }
                })
                .then_with(|| natural_cmp(&self.labels[a], &self.labels[b]))
        });
        order.insert(0, 0);
        self.permuted(&order)
    }

    /// Exact dims as floats when attached, otherwise the Perron–Frobenius vector.
    pub fn dims_f64(&self) -> Result<Vec<f64>> {
        match &self.exact_dims {
            Some(d) => Ok(d.iter().map(AlgebraicReal::to_f64).collect()),
            None => self.fp_dimensions(),
        }
    }

    /// Sorted multiset `{k : N_{ij}^k > 0}` expanded by multiplicity.
    pub fn product_labels(&self, i: usize, j: usize) -> Vec<&str> {
        let mut out = Vec::new();
        for &(k, m) in self.product(i, j) {
            for _ in 0..m {
                out.push(self.label(k));
            }
        }
        out
    }
}

/// Label order treating embedded digit runs numerically (`X_2 < X_10`).
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for ((da, sa), (db, sb)) in ca.iter().zip(&cb) {
        let ord = if *da && *db {
            sa.parse::<u64>().unwrap_or(0).cmp(&sb.parse::<u64>().unwrap_or(0)).then(sa.cmp(sb))
        } else {
            sa.cmp(sb)
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len())
}

/// Small reference rings used throughout the tests and examples.
pub mod examples {
    use super::*;
    use num_rational::Ratio;

    pub fn trivial() -> FusionRing {
        FusionRing::new(vec!["1"], vec![0], [(0, 0, 0, 1)]).expect("valid").with_exact_dims(vec![AlgebraicReal::integer(1)]).expect("dims")
    }

    /// `{1, X}` with `X ⊗ X = 1 ⊕ X`.
    pub fn fibonacci() -> FusionRing {
        let phi = AlgebraicReal::new(Ratio::new(1, 2), Ratio::new(1, 2), 5).expect("valid");
        FusionRing::new(vec!["1", "X"], vec![0, 1], [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 1)])
            .expect("valid")
            .with_exact_dims(vec![AlgebraicReal::integer(1), phi])
            .expect("dims")
    }

    /// `{1, ψ, σ}` with `ψ² = 1`, `σ² = 1 ⊕ ψ`, `ψσ = σ`.
    pub fn ising() -> FusionRing {
        let entries = [
            (0, 0, 0, 1),
            (0, 1, 1, 1),
            (0, 2, 2, 1),
            (1, 0, 1, 1),
            (2, 0, 2, 1),
            (1, 1, 0, 1),
            (1, 2, 2, 1),
            (2, 1, 2, 1),
            (2, 2, 0, 1),
            (2, 2, 1, 1),
        ];
        FusionRing::new(vec!["1", "psi", "sigma"], vec![0, 1, 2], entries)
            .expect("valid")
            .with_exact_dims(vec![AlgebraicReal::integer(1), AlgebraicReal::integer(1), AlgebraicReal::sqrt_of(2)])
            .expect("dims")
    }

    /// Group ring of `ℤ_n` with labels `"0" … "n-1"`.
    pub fn cyclic(n: usize) -> FusionRing {
        let labels: Vec<String> = (0..n).map(|a| a.to_string()).collect();
        let dual = (0..n).map(|a| (n - a) % n).collect();
        FusionRing::from_rule(labels, dual, |i, j| vec![((i + j) % n, 1)])
            .expect("valid")
            .with_exact_dims(vec![AlgebraicReal::integer(1); n])
            .expect("dims")
    }

    /// Deligne product of two rings; labels `a⊠b`, index `i * rank(b) + j`.
    pub fn product(a: &FusionRing, b: &FusionRing) -> FusionRing {
        let rb = b.rank();
        let labels: Vec<String> =
            (0..a.rank() * rb).map(|x| format!("{}⊠{}", a.label(x / rb), b.label(x % rb))).collect();
        let dual = (0..a.rank() * rb).map(|x| a.dual(x / rb) * rb + b.dual(x % rb)).collect();
        let ring = FusionRing::from_rule(labels, dual, |x, y| {
            let mut out = Vec::new();
            for &(k1, m1) in a.product(x / rb, y / rb) {
                for &(k2, m2) in b.product(x % rb, y % rb) {
                    out.push((k1 * rb + k2, m1 * m2));
                }
            }
            out
        })
        .expect("valid");
        match (a.exact_dims(), b.exact_dims()) {
            (Some(da), Some(db)) => {
                let dims: Option<Vec<AlgebraicReal>> =
                    (0..a.rank() * rb).map(|x| da[x / rb].checked_mul(&db[x % rb])).collect();
                match dims {
                    Some(d) => ring.clone().with_exact_dims(d).unwrap_or(ring),
                    None => ring,
                }
            }
            _ => ring,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    #[test]
    fn shape_errors_are_malformed() {
        assert!(matches!(FusionRing::new(Vec::<String>::new(), vec![], []), Err(Error::Malformed(_))));
        assert!(matches!(FusionRing::new(vec!["1"], vec![0, 0], []), Err(Error::Malformed(_))));
        assert!(matches!(FusionRing::new(vec!["1"], vec![0], [(0, 0, 1, 1)]), Err(Error::Malformed(_))));
        assert!(matches!(FusionRing::new(vec!["1", "1"], vec![0, 1], []), Err(Error::Malformed(_))));
    }

    #[test]
    fn lookups_agree_between_dense_and_sparse() {
        let r = fibonacci();
        assert!(r.is_dense());
        assert_eq!(r.mult(1, 1, 1), 1);
        assert_eq!(r.product(1, 1), &[(0, 1), (1, 1)]);
        assert_eq!(r.product_labels(1, 1), vec!["1", "X"]);
    }

    #[test]
    fn permutation_round_trip() {
        let r = ising();
        let p = r.permuted(&[0, 2, 1]).unwrap();
        assert_eq!(p.label(1), "sigma");
        assert_eq!(p.mult(1, 1, 2), 1);
        assert_eq!(p.permuted(&[0, 2, 1]).unwrap(), r);
    }

    #[test]
    fn natural_label_order() {
        assert_eq!(natural_cmp("X_2", "X_10"), Ordering::Less);
        assert_eq!(natural_cmp("V_1", "W_1"), Ordering::Less);
        assert_eq!(natural_cmp("f", "fg"), Ordering::Less);
    }

    #[test]
    fn canonical_order_puts_invertibles_first() {
        let r = product(&ising(), &ising());
        let c = r.canonicalized().unwrap();
        let d = c.dims_f64().unwrap();
        assert_eq!(c.label(0), "1⊠1");
        assert!(d[..4].iter().all(|&x| (x - 1.0).abs() < 1e-12));
        assert!(d.windows(2).skip(4).all(|w| w[0] <= w[1] + 1e-12));
    }
}
