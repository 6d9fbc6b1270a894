use serde::Serialize;

use super::FusionRing;
use crate::error::{Error, Result};
use crate::group::{self, AbelianGroup};
use crate::nt;

/// A grading of the simple objects by a finite abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Grading {
    pub group: AbelianGroup,
    /// Group element (flat index into `group`) of each simple object.
    pub assignment: Vec<usize>,
    pub faithful: bool,
}

impl Grading {
    fn new(group: AbelianGroup, assignment: Vec<usize>) -> Self {
        let mut hit = vec![false; group.order() as usize];
        for &g in &assignment {
            hit[g] = true;
        }
        let faithful = hit.iter().all(|&h| h);
        Self { group, assignment, faithful }
    }

    /// Objects in each component, indexed by group element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.group.order() as usize];
        for (i, &g) in self.assignment.iter().enumerate() {
            out[g].push(i);
        }
        out
    }

    /// `N_{ij}^k > 0 ⇒ deg k = deg i + deg j`.
    pub fn is_compatible(&self, ring: &FusionRing) -> bool {
        let r = ring.rank();
        (0..r).all(|i| {
            (0..r).all(|j| {
                let want = self.group.add(self.assignment[i], self.assignment[j]);
                ring.product(i, j).iter().all(|&(k, _)| self.assignment[k] == want)
            })
        })
    }

    /// Σ d² over each component.
    pub fn component_dims(&self, dims: &[f64]) -> Vec<f64> {
        self.components().iter().map(|c| c.iter().map(|&i| dims[i] * dims[i]).sum()).collect()
    }
}

impl FusionRing {
    /// The universal grading: `X_i ~ X_j` iff `X_i ⊂ X_j ⊗ A` for some `A` in the
    /// adjoint subring.
    pub fn universal_grading(&self) -> Result<Grading> {
        let r = self.rank();
        let adjoint = self.adjoint_subring();
        let mut parent: Vec<usize> = (0..r).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for j in 0..r {
            for &a in &adjoint {
                for &(k, _) in self.product(j, a) {
                    let (x, y) = (find(&mut parent, j), find(&mut parent, k));
                    if x != y {
                        parent[x.max(y)] = x.min(y);
                    }
                }
            }
        }
        let mut comp_id = vec![usize::MAX; r];
        let mut comp = vec![0usize; r];
        let mut count = 0;
        for i in 0..r {
            let root = find(&mut parent, i);
            if comp_id[root] == usize::MAX {
                comp_id[root] = count;
                count += 1;
            }
            comp[i] = comp_id[root];
        }
        self.grading_from_classes(&comp, count, 0)
    }

    /// Builds a grading from a class map, deriving the group law from fusion.
    fn grading_from_classes(&self, class: &[usize], count: usize, unit_class: usize) -> Result<Grading> {
        let r = self.rank();
        let mut table = vec![vec![usize::MAX; count]; count];
        for i in 0..r {
            for j in 0..r {
                for &(k, _) in self.product(i, j) {
                    let slot = &mut table[class[i]][class[j]];
                    if *slot == usize::MAX {
                        *slot = class[k];
                    } else if *slot != class[k] {
                        return Err(Error::Internal(format!(
                            "components of {} ⊗ {} are inconsistent",
                            self.label(i),
                            self.label(j)
                        )));
                    }
                }
            }
        }
        if table.iter().flatten().any(|&x| x == usize::MAX) {
            return Err(Error::Internal("component products are not closed".into()));
        }
        let (group, iso) = group::identify(&table, unit_class)?;
        let grading = Grading::new(group, class.iter().map(|&c| iso[c]).collect());
        if !grading.is_compatible(self) {
            return Err(Error::Internal("derived grading is not compatible with fusion".into()));
        }
        Ok(grading)
    }

    /// Grading by the square-free part of `d_x²` (an elementary abelian 2-group).
    pub fn gn_grading(&self) -> Result<Grading> {
        let classes = self.weak_classes()?;
        let mut distinct = classes.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let pos: Vec<usize> = classes.iter().map(|c| distinct.binary_search(c).expect("present")).collect();
        // n_x · n_y reduces to the square-free part of their product
        for &a in &distinct {
            for &b in &distinct {
                let g = nt::gcd(a, b);
                if distinct.binary_search(&(a / g * (b / g))).is_err() {
                    return Err(Error::Internal("square-free classes are not closed under products".into()));
                }
            }
        }
        self.grading_from_classes(&pos, distinct.len(), 0)
    }
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::*;

    #[test]
    fn cyclic_ring_grades_by_itself() {
        let g = cyclic(6).universal_grading().unwrap();
        assert_eq!(g.group, AbelianGroup::cyclic(6));
        assert!(g.faithful);
        assert!(g.components().iter().all(|c| c.len() == 1));
    }

    #[test]
    fn fibonacci_and_ising_gradings() {
        assert_eq!(fibonacci().universal_grading().unwrap().group, AbelianGroup::trivial());
        let g = ising().universal_grading().unwrap();
        assert_eq!(g.group, AbelianGroup::cyclic(2));
        assert_eq!(g.components()[0], vec![0, 1]);
        let gn = ising().gn_grading().unwrap();
        assert_eq!(gn.components(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn components_are_equidimensional() {
        let r = product(&ising(), &ising());
        let g = r.universal_grading().unwrap();
        assert_eq!(g.group, AbelianGroup::new(vec![2, 2]).unwrap());
        let dims = r.fp_dimensions().unwrap();
        for d in g.component_dims(&dims) {
            assert!((d - 4.0).abs() < 1e-9);
        }
    }
}
