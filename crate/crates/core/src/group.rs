//! Finite abelian groups in invariant-factor form.
//!
//! Elements of `ℤ_{n_1} × … × ℤ_{n_k}` are addressed by a flat index in mixed
//! radix with the first coordinate varying fastest.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nt;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbelianGroup {
    factors: Vec<u64>,
}

impl AbelianGroup {
    /// Builds a group from invariant factors `n_1 | n_2 | …`; factors equal to 1 are dropped.
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        let factors: Vec<u64> = factors.into_iter().filter(|&n| n != 1).collect();
        if factors.iter().any(|&n| n == 0) {
            return Err(Error::Malformed("invariant factor 0".into()));
        }
        for w in factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(Error::Malformed(format!(
                    "invariant factors must divide each other: {} does not divide {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Self { factors })
    }

    pub fn trivial() -> Self {
        Self { factors: vec![] }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::new(vec![n]).expect("single factor")
    }

    /// Group isomorphic to a product of cyclic groups of arbitrary orders.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        // per prime, collect the exponents then zip them into invariant factors
        let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &n in orders {
            for (p, k) in nt::factorize(n) {
                by_prime.entry(p).or_default().push(k);
            }
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for (p, mut ks) in by_prime {
            ks.sort_unstable_by(|a, b| b.cmp(a));
            for (i, k) in ks.into_iter().enumerate() {
                factors[len - 1 - i] *= p.pow(k);
            }
        }
        Self::new(factors).expect("valid by construction")
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn coords(&self, mut idx: usize) -> Vec<u64> {
        self.factors
            .iter()
            .map(|&n| {
                let c = idx as u64 % n;
                idx /= n as usize;
                c
            })
            .collect()
    }

    pub fn index(&self, coords: &[u64]) -> usize {
        let mut idx = 0u64;
        let mut scale = 1u64;
        for (c, &n) in coords.iter().zip(&self.factors) {
            idx += (c % n) * scale;
            scale *= n;
        }
        idx as usize
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let mut idx = 0usize;
        let mut scale = 1usize;
        let (mut x, mut y) = (x, y);
        for &n in &self.factors {
            let n = n as usize;
            idx += ((x % n + y % n) % n) * scale;
            x /= n;
            y /= n;
            scale *= n;
        }
        idx
    }

    pub fn neg(&self, x: usize) -> usize {
        let c: Vec<u64> = self.coords(x).iter().zip(&self.factors).map(|(&c, &n)| (n - c) % n).collect();
        self.index(&c)
    }

    pub fn scale(&self, x: usize, k: u64) -> usize {
        let c: Vec<u64> = self.coords(x).iter().zip(&self.factors).map(|(&c, &n)| (c * (k % n)) % n).collect();
        self.index(&c)
    }

    pub fn element_order(&self, x: usize) -> u64 {
        self.coords(x)
            .iter()
            .zip(&self.factors)
            .map(|(&c, &n)| n / nt::gcd(c, n))
            .fold(1, num_integer::lcm)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order() as usize
    }

    /// Unit vectors `e_i` generating the group.
    pub fn generators(&self) -> Vec<usize> {
        (0..self.rank())
            .map(|i| {
                let mut c = vec![0; self.rank()];
                c[i] = 1;
                self.index(&c)
            })
            .collect()
    }

    /// Recovers the isomorphism type of a finite abelian group of order `order`
    /// from `killed(d) = #{x : d·x = 0}`, evaluated at prime powers.
    pub fn from_torsion_counts(order: u64, killed: impl Fn(u64) -> u64) -> Self {
        let mut orders = Vec::new();
        for (p, e) in nt::factorize(order) {
            // number of cyclic p-parts of length >= j, for j = 1..=e
            let mut prev = 0u32;
            let mut at_least = Vec::new();
            for j in 1..=e {
                let c = ilog(killed(p.pow(j)), p);
                at_least.push(c - prev);
                prev = c;
            }
            let parts = at_least.first().copied().unwrap_or(0) as usize;
            for i in 0..parts {
                let len = at_least.iter().filter(|&&m| m as usize > i).count() as u32;
                orders.push(p.pow(len));
            }
        }
        Self::from_cyclic_orders(&orders)
    }

    /// Every abelian group of the given order, one per isomorphism class.
    pub fn all_of_order(order: u64) -> Vec<Self> {
        let mut per_prime: Vec<Vec<Vec<u64>>> = Vec::new();
        for (p, e) in nt::factorize(order) {
            per_prime.push(partitions(e).into_iter().map(|part| part.into_iter().map(|k| p.pow(k)).collect()).collect());
        }
        let mut out = vec![Vec::<u64>::new()];
        for options in per_prime {
            let mut next = Vec::new();
            for base in &out {
                for opt in &options {
                    let mut v = base.clone();
                    v.extend(opt);
                    next.push(v);
                }
            }
            out = next;
        }
        out.iter().map(|orders| Self::from_cyclic_orders(orders)).collect()
    }

    /// All automorphisms, each as the image vector of every element.
    ///
    /// Backtracks over images of the generators; `accept` may prune partial
    /// assignments (it sees the images chosen so far).
    pub fn automorphisms_filtered(
        &self,
        limit: usize,
        accept: &dyn Fn(&[usize]) -> bool,
    ) -> Result<Vec<Vec<usize>>> {
        let gens = self.generators();
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        self.extend_auto(&gens, &mut chosen, &mut out, limit, accept)?;
        Ok(out)
    }

    pub fn automorphisms(&self, limit: usize) -> Result<Vec<Vec<usize>>> {
        self.automorphisms_filtered(limit, &|_| true)
    }

    fn extend_auto(
        &self,
        gens: &[usize],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
        accept: &dyn Fn(&[usize]) -> bool,
    ) -> Result<()> {
        if chosen.len() == gens.len() {
            if let Some(map) = self.extend_hom(chosen) {
                let mut seen = vec![false; map.len()];
                if map.iter().all(|&y| !std::mem::replace(&mut seen[y], true)) {
                    if out.len() >= limit {
                        return Err(Error::Resource(format!("more than {limit} automorphisms")));
                    }
                    out.push(map);
                }
            }
            return Ok(());
        }
        let n = self.factors[chosen.len()];
        for y in self.elements() {
            if n % self.element_order(y) != 0 {
                continue;
            }
            chosen.push(y);
            if accept(chosen) {
                self.extend_auto(gens, chosen, out, limit, accept)?;
            }
            chosen.pop();
        }
        Ok(())
    }

    /// The endomorphism sending `e_i ↦ images[i]` as a full element map.
    pub fn extend_hom(&self, images: &[usize]) -> Option<Vec<usize>> {
        for (i, &y) in images.iter().enumerate() {
            if self.factors[i] % self.element_order(y) != 0 {
                return None;
            }
        }
        Some(
            self.elements()
                .map(|x| {
                    self.coords(x)
                        .iter()
                        .zip(images)
                        .fold(0, |acc, (&c, &y)| self.add(acc, self.scale(y, c)))
                })
                .collect(),
        )
    }
}

fn ilog(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        n /= p;
        k += 1;
    }
    k
}

fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(acc.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            acc.push(k);
            go(n - k, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", parts.join("xZ").replace("xZZ", "xZ"))
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Identifies an abstract finite abelian group given by a Cayley table.
///
/// Returns the invariant-factor group and, for each abstract element, its
/// image under an explicit isomorphism.
pub fn identify(table: &[Vec<usize>], identity: usize) -> Result<(AbelianGroup, Vec<usize>)> {
    let n = table.len();
    for (x, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Internal("Cayley table is not square".into()));
        }
        for y in 0..n {
            if table[x][y] != table[y][x] {
                return Err(Error::Internal("Cayley table is not commutative".into()));
            }
        }
    }
    let power = |x: usize, k: u64| (0..k).fold(identity, |acc, _| table[acc][x]);
    let group = AbelianGroup::from_torsion_counts(n as u64, |d| {
        (0..n).filter(|&x| power(x, d) == identity).count() as u64
    });
    // search generators g_i of order n_i whose span is everything
    let target = group.factors().to_vec();
    let mut gens = Vec::new();
    let order_of = |x: usize| (1..=n as u64).find(|&k| power(x, k) == identity).unwrap_or(0);
    fn span(table: &[Vec<usize>], identity: usize, gens: &[usize], orders: &[u64]) -> Vec<usize> {
        let mut elems = vec![identity];
        for (&g, &k) in gens.iter().zip(orders) {
            let mut next = Vec::with_capacity(elems.len() * k as usize);
            let mut layer = elems.clone();
            for _ in 0..k {
                next.extend_from_slice(&layer);
                for e in layer.iter_mut() {
                    *e = table[*e][g];
                }
            }
            elems = next;
        }
        elems
    }
    fn search(
        table: &[Vec<usize>],
        identity: usize,
        target: &[u64],
        order_of: &dyn Fn(usize) -> u64,
        gens: &mut Vec<usize>,
    ) -> bool {
        let i = gens.len();
        let current = span(table, identity, gens, &target[..i]);
        let mut seen = vec![false; table.len()];
        for &e in &current {
            if seen[e] {
                return false;
            }
            seen[e] = true;
        }
        if i == target.len() {
            return current.len() == table.len();
        }
        for x in 0..table.len() {
            if order_of(x) == target[i] && !seen[x] {
                gens.push(x);
                if search(table, identity, target, order_of, gens) {
                    return true;
                }
                gens.pop();
            }
        }
        false
    }
    if !search(table, identity, &target, &order_of, &mut gens) {
        return Err(Error::Internal("no generating set found for Cayley table".into()));
    }
    let mut image = vec![0usize; n];
    let elems = span(table, identity, &gens, &target);
    for (idx, &e) in elems.iter().enumerate() {
        image[e] = idx;
    }
    Ok((group, image))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_cyclic_orders() {
        assert_eq!(AbelianGroup::from_cyclic_orders(&[4, 3]).factors(), &[12]);
        assert_eq!(AbelianGroup::from_cyclic_orders(&[2, 2, 3]).factors(), &[2, 6]);
        assert_eq!(AbelianGroup::from_cyclic_orders(&[]).factors(), &[] as &[u64]);
        assert!(AbelianGroup::new(vec![4, 2]).is_err());
    }

    #[test]
    fn arithmetic() {
        let g = AbelianGroup::new(vec![2, 4]).unwrap();
        let x = g.index(&[1, 3]);
        assert_eq!(g.coords(g.add(x, x)), vec![0, 2]);
        assert_eq!(g.element_order(x), 4);
        assert_eq!(g.add(x, g.neg(x)), 0);
    }

    #[test]
    fn enumerates_groups_by_order() {
        let names: Vec<Vec<u64>> = AbelianGroup::all_of_order(16).iter().map(|g| g.factors().to_vec()).collect();
        assert_eq!(names.len(), 5);
        assert!(names.contains(&vec![2, 2, 2, 2]));
        assert!(names.contains(&vec![4, 4]));
        assert_eq!(AbelianGroup::all_of_order(12).len(), 2);
        assert_eq!(AbelianGroup::all_of_order(1), vec![AbelianGroup::trivial()]);
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(AbelianGroup::cyclic(12).automorphisms(100).unwrap().len(), 4);
        assert_eq!(AbelianGroup::new(vec![2, 2]).unwrap().automorphisms(100).unwrap().len(), 6);
        assert_eq!(AbelianGroup::new(vec![2, 4]).unwrap().automorphisms(100).unwrap().len(), 8);
    }

    #[test]
    fn identifies_klein_four_from_table() {
        let g = AbelianGroup::new(vec![2, 2]).unwrap();
        let table: Vec<Vec<usize>> = g.elements().map(|x| g.elements().map(|y| g.add(x, y)).collect()).collect();
        let (found, iso) = identify(&table, 0).unwrap();
        assert_eq!(found, g);
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(iso[table[x][y]], found.add(iso[x], iso[y]));
            }
        }
    }

    #[test]
    fn identifies_cyclic_from_table() {
        let n = 12;
        let perm = [0usize, 7, 2, 9, 4, 11, 6, 1, 8, 3, 10, 5];
        let mut t = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                t[perm[a]][perm[b]] = perm[(a + b) % n];
            }
        }
        let (found, iso) = identify(&t, 0).unwrap();
        assert_eq!(found, AbelianGroup::cyclic(12));
        for x in 0..n {
            for y in 0..n {
                assert_eq!(iso[t[x][y]], found.add(iso[x], iso[y]));
            }
        }
    }
}
