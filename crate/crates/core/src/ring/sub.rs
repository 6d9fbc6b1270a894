use super::FusionRing;

impl FusionRing {
    /// Smallest fusion- and dual-closed sub-basis containing the unit and `seeds`, sorted.
    pub fn subring_generated(&self, seeds: &[usize]) -> Vec<usize> {
        let r = self.rank();
        let mut inside = vec![false; r];
        let mut members = Vec::new();
        let mut queue: Vec<usize> = std::iter::once(0).chain(seeds.iter().copied()).filter(|&s| s < r).collect();
        while let Some(x) = queue.pop() {
            if inside[x] {
                continue;
            }
            inside[x] = true;
            members.push(x);
            queue.push(self.dual(x));
            for &y in &members {
                for &(k, _) in self.product(x, y).iter().chain(self.product(y, x)) {
                    if !inside[k] {
                        queue.push(k);
                    }
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// Subring generated by all constituents of `X_i ⊗ X_i*`.
    pub fn adjoint_subring(&self) -> Vec<usize> {
        let seeds: Vec<usize> =
            (0..self.rank()).flat_map(|i| self.product(i, self.dual(i)).iter().map(|&(k, _)| k)).collect();
        self.subring_generated(&seeds)
    }

    /// Whether `set` is closed under fusion and duals and contains the unit.
    pub fn is_closed(&self, set: &[usize]) -> bool {
        let mut inside = vec![false; self.rank()];
        for &s in set {
            if s >= self.rank() {
                return false;
            }
            inside[s] = true;
        }
        inside[0]
            && set.iter().all(|&a| inside[self.dual(a)])
            && set.iter().all(|&a| set.iter().all(|&b| self.product(a, b).iter().all(|&(k, _)| inside[k])))
    }
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;

    #[test]
    fn generated_subrings() {
        let r = ising();
        assert_eq!(r.subring_generated(&[]), vec![0]);
        assert_eq!(r.subring_generated(&[1]), vec![0, 1]);
        assert_eq!(r.subring_generated(&[2]), vec![0, 1, 2]);
        assert_eq!(cyclic(6).subring_generated(&[2]), vec![0, 2, 4]);
    }

    #[test]
    fn adjoint_subrings() {
        assert_eq!(cyclic(7).adjoint_subring(), vec![0]);
        assert_eq!(fibonacci().adjoint_subring(), vec![0, 1]);
        assert_eq!(ising().adjoint_subring(), vec![0, 1]);
        assert!(ising().is_closed(&[0, 1]));
        assert!(!ising().is_closed(&[0, 2]));
    }
}
