use std::fmt;

use serde::Serialize;

use super::FusionRing;
use crate::par::{self, Exec};

/// A violated fusion-ring axiom together with the witnessing indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    DualOfUnit { found: usize },
    DualNotInvolution { i: usize },
    /// `N_{0j}^k ≠ δ_{jk}`.
    LeftUnit { j: usize, k: usize, found: u32 },
    /// `N_{j0}^k ≠ δ_{jk}`.
    RightUnit { j: usize, k: usize, found: u32 },
    /// `N_{ij}^0 ≠ δ_{j,i*}`.
    DualityPairing { i: usize, j: usize, found: u32 },
    /// `(X_i ⊗ X_j) ⊗ X_k` and `X_i ⊗ (X_j ⊗ X_k)` differ in multiplicity of `X_l`.
    Associativity { i: usize, j: usize, k: usize, l: usize, left: u64, right: u64 },
    /// `N_{ij}^k`, `N_{i*k}^j`, `N_{kj*}^i` are not all equal.
    Frobenius { i: usize, j: usize, k: usize },
}

impl Violation {
    pub fn describe(&self, ring: &FusionRing) -> String {
        let l = |i: usize| ring.label(i).to_string();
        match *self {
            Violation::DualOfUnit { found } => format!("dual of the unit is {}", l(found)),
            Violation::DualNotInvolution { i } => format!("dual is not an involution at {}", l(i)),
            Violation::LeftUnit { j, k, found } => {
                format!("unit law fails: N(1,{},{}) = {found}", l(j), l(k))
            }
            Violation::RightUnit { j, k, found } => {
                format!("unit law fails: N({},1,{}) = {found}", l(j), l(k))
            }
            Violation::DualityPairing { i, j, found } => {
                format!("duality pairing fails: N({},{},1) = {found}", l(i), l(j))
            }
            Violation::Associativity { i, j, k, l: t, left, right } => format!(
                "associativity fails at ({},{},{},{}): {left} vs {right}",
                l(i),
                l(j),
                l(k),
                l(t)
            ),
            Violation::Frobenius { i, j, k } => {
                format!("Frobenius reciprocity fails at ({},{},{})", l(i), l(j), l(k))
            }
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Outcome of [`FusionRing::verify_axioms`]; empty means every axiom holds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl FusionRing {
    /// Checks unit law, duality, associativity and Frobenius reciprocity.
    ///
    /// Shape problems cannot reach this point: they are rejected as
    /// [`crate::Error::Malformed`] when the ring is constructed.
    pub fn verify_axioms(&self) -> AxiomReport {
        self.verify_axioms_with(Exec::default())
    }

    pub fn verify_axioms_with(&self, exec: Exec) -> AxiomReport {
        let r = self.rank();
        let mut violations = Vec::new();
        if self.dual[0] != 0 {
            violations.push(Violation::DualOfUnit { found: self.dual[0] });
        }
        for i in 0..r {
            if self.dual[self.dual[i]] != i {
                violations.push(Violation::DualNotInvolution { i });
            }
        }
        for j in 0..r {
            for k in 0..r {
                let want = u32::from(j == k);
                let left = self.mult(0, j, k);
                if left != want {
                    violations.push(Violation::LeftUnit { j, k, found: left });
                }
                let right = self.mult(j, 0, k);
                if right != want {
                    violations.push(Violation::RightUnit { j, k, found: right });
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                let found = self.mult(i, j, 0);
                if found != u32::from(j == self.dual[i]) {
                    violations.push(Violation::DualityPairing { i, j, found });
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let a = self.mult(i, j, k);
                    if a != self.mult(self.dual[i], k, j) || a != self.mult(k, self.dual[j], i) {
                        violations.push(Violation::Frobenius { i, j, k });
                    }
                }
            }
        }
        let assoc = par::map_range(exec, r, |i| self.associativity_row(i));
        violations.extend(assoc.into_iter().flatten());
        AxiomReport { violations }
    }

    fn associativity_row(&self, i: usize) -> Vec<Violation> {
        let r = self.rank();
        let mut out = Vec::new();
        let mut left = vec![0u64; r];
        let mut right = vec![0u64; r];
        for j in 0..r {
            for k in 0..r {
                left.iter_mut().for_each(|x| *x = 0);
                right.iter_mut().for_each(|x| *x = 0);
                for &(m, a) in self.product(i, j) {
                    for &(l, b) in self.product(m, k) {
                        left[l] += u64::from(a) * u64::from(b);
                    }
                }
                for &(m, a) in self.product(j, k) {
                    for &(l, b) in self.product(i, m) {
                        right[l] += u64::from(a) * u64::from(b);
                    }
                }
                for l in 0..r {
                    if left[l] != right[l] {
                        out.push(Violation::Associativity { i, j, k, l, left: left[l], right: right[l] });
                    }
                }
            }
        }
        out
    }
}
