//! Cohomology of ℤ₂ with coefficients in a ℤ₂-module.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::group::{self, AbelianGroup};

/// Largest cochain group the brute-force route will enumerate.
pub const MAX_COCHAINS: u64 = 5_000_000;

/// An abelian group with an involutive automorphism `ρ`.
///
/// `Circle` stands for `ℚ/ℤ ≅ U(1)`, with either the trivial action or negation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Z2Module {
    Finite { group: AbelianGroup, action: Vec<usize> },
    Circle { negate: bool },
}

impl Z2Module {
    /// `action[x] = ρ(x)`; must be an automorphism squaring to the identity.
    pub fn finite(group: AbelianGroup, action: Vec<usize>) -> Result<Self> {
        let n = group.order() as usize;
        if action.len() != n || action.iter().any(|&y| y >= n) {
            return Err(Error::Malformed(format!("action must map the {n} elements of {group} into themselves")));
        }
        for x in 0..n {
            if action[action[x]] != x {
                return Err(Error::Malformed("action is not an involution".into()));
            }
            for y in 0..n {
                if action[group.add(x, y)] != group.add(action[x], action[y]) {
                    return Err(Error::Malformed("action is not a homomorphism".into()));
                }
            }
        }
        Ok(Z2Module::Finite { group, action })
    }

    pub fn trivial(group: AbelianGroup) -> Self {
        let action = group.elements().collect();
        Z2Module::Finite { group, action }
    }

    pub fn negation(group: AbelianGroup) -> Self {
        let action = group.elements().map(|x| group.neg(x)).collect();
        Z2Module::Finite { group, action }
    }

    pub fn circle() -> Self {
        Z2Module::Circle { negate: false }
    }

    fn finite_parts(&self) -> Result<(&AbelianGroup, &[usize])> {
        match self {
            Z2Module::Finite { group, action } => Ok((group, action)),
            Z2Module::Circle { .. } => Err(Error::Unsupported("explicit cochains need finite coefficients".into())),
        }
    }
}

/// The group `Hⁿ(ℤ₂, M)` from the 2-periodic resolution:
/// `H⁰ = M^ρ`, `H^even = M^ρ / im(1+ρ)`, `H^odd = ker(1+ρ) / im(1−ρ)`.
///
/// For `ℚ/ℤ` with trivial action `M` is divisible, so `im(1+ρ) = 2M = M` and
/// the even groups vanish, while `ker(1+ρ) = {0, ½}`.
pub fn z2_cohomology(module: &Z2Module, n: usize) -> Result<AbelianGroup> {
    match module {
        Z2Module::Circle { negate: true } => {
            Err(Error::Unsupported("ℤ₂ acting on U(1) by negation is not supported".into()))
        }
        Z2Module::Circle { negate: false } => match n {
            0 => Err(Error::Unsupported("H⁰(ℤ₂, ℚ/ℤ) = ℚ/ℤ is not finite".into())),
            _ if n % 2 == 0 => Ok(AbelianGroup::trivial()),
            _ => Ok(AbelianGroup::cyclic(2)),
        },
        Z2Module::Finite { group, action } => {
            let plus: Vec<usize> = group.elements().map(|x| group.add(x, action[x])).collect();
            let minus: Vec<usize> = group.elements().map(|x| group.add(x, group.neg(action[x]))).collect();
            let (kernel, image): (Vec<usize>, Vec<usize>) = if n == 0 {
                (group.elements().filter(|&x| minus[x] == 0).collect(), vec![0])
            } else if n % 2 == 0 {
                (group.elements().filter(|&x| minus[x] == 0).collect(), plus.clone())
            } else {
                (group.elements().filter(|&x| plus[x] == 0).collect(), minus.clone())
            };
            let cocycles: Vec<Vec<usize>> = kernel.into_iter().map(|x| vec![x]).collect();
            let boundaries: HashSet<Vec<usize>> = image.into_iter().map(|x| vec![x]).collect();
            quotient(group, &cocycles, &boundaries)
        }
    }
}

/// `Hⁿ(ℤ₂, M)` by enumerating cochains `ℤ₂ⁿ → M` and applying the bar
/// differential directly.
///
/// With `normalized` only cochains vanishing whenever an argument is the
/// identity are enumerated; otherwise every function is.
pub fn z2_cohomology_brute_force(module: &Z2Module, n: usize, normalized: bool) -> Result<AbelianGroup> {
    let (group, action) = module.finite_parts()?;
    if n == 0 {
        return Err(Error::Parameter("brute force starts in degree 1".into()));
    }
    let cocycles: Vec<Vec<usize>> =
        cochains(group, n, normalized)?.into_iter().filter(|f| is_zero(&coboundary(group, action, f, n))).collect();
    let boundaries: HashSet<Vec<usize>> =
        cochains(group, n - 1, normalized)?.iter().map(|h| coboundary(group, action, h, n - 1)).collect();
    quotient(group, &cocycles, &boundaries)
}

fn is_zero(f: &[usize]) -> bool {
    f.iter().all(|&x| x == 0)
}

/// All `n`-cochains as value tables indexed by the bit pattern of the
/// arguments (bit `i` set ⇔ the `i`-th argument is the generator).
fn cochains(group: &AbelianGroup, n: usize, normalized: bool) -> Result<Vec<Vec<usize>>> {
    let m = group.order();
    let cells = 1usize << n;
    let free: Vec<usize> = (0..cells).filter(|&c| !normalized || c == cells - 1).collect();
    let count = m
        .checked_pow(free.len() as u32)
        .filter(|&c| c <= MAX_COCHAINS)
        .ok_or_else(|| Error::Resource(format!("more than {MAX_COCHAINS} {n}-cochains")))?;
    let mut out = Vec::with_capacity(count as usize);
    for mut code in 0..count {
        let mut f = vec![0usize; cells];
        for &c in &free {
            f[c] = (code % m) as usize;
            code /= m;
        }
        out.push(f);
    }
    Ok(out)
}

/// `(δf)(g₁,…,g_{n+1}) = g₁·f(g₂,…) + Σᵢ (−1)ⁱ f(…,gᵢgᵢ₊₁,…) + (−1)^{n+1} f(g₁,…,gₙ)`.
fn coboundary(group: &AbelianGroup, action: &[usize], f: &[usize], n: usize) -> Vec<usize> {
    let bit = |c: usize, i: usize| (c >> i) & 1;
    let signed = |x: usize, i: usize| if i % 2 == 0 { x } else { group.neg(x) };
    (0..1usize << (n + 1))
        .map(|c| {
            let g: Vec<usize> = (0..=n).map(|i| bit(c, i)).collect();
            let pack = |args: &[usize]| args.iter().enumerate().fold(0, |acc, (i, &b)| acc | (b << i));
            let first = f[pack(&g[1..])];
            let mut total = if g[0] == 1 { action[first] } else { first };
            for i in 1..=n {
                let mut args: Vec<usize> = g[..i - 1].to_vec();
                args.push(g[i - 1] ^ g[i]);
                args.extend_from_slice(&g[i + 1..]);
                total = group.add(total, signed(f[pack(&args)], i));
            }
            group.add(total, signed(f[pack(&g[..n])], n + 1))
        })
        .collect()
}

/// `Z / B` for pointwise-added value tables.
fn quotient(group: &AbelianGroup, cocycles: &[Vec<usize>], boundaries: &HashSet<Vec<usize>>) -> Result<AbelianGroup> {
    let add = |a: &[usize], b: &[usize]| -> Vec<usize> { a.iter().zip(b).map(|(&x, &y)| group.add(x, y)).collect() };
    if cocycles.len() % boundaries.len().max(1) != 0 {
        return Err(Error::Internal("boundaries do not form a subgroup of the cocycles".into()));
    }
    let index: std::collections::HashMap<&[usize], usize> =
        cocycles.iter().enumerate().map(|(i, z)| (z.as_slice(), i)).collect();
    let mut coset = vec![usize::MAX; cocycles.len()];
    let mut reps = Vec::new();
    for (i, z) in cocycles.iter().enumerate() {
        if coset[i] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(i);
        for b in boundaries {
            let j = *index
                .get(add(z, b).as_slice())
                .ok_or_else(|| Error::Internal("a coboundary is not a cocycle".into()))?;
            coset[j] = id;
        }
    }
    let zero = coset[index
        .get(vec![0usize; cocycles.first().map_or(0, Vec::len)].as_slice())
        .copied()
        .ok_or_else(|| Error::Internal("zero cochain missing".into()))?];
    let table: Vec<Vec<usize>> = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| coset[index[add(&cocycles[a], &cocycles[b]).as_slice()]]).collect())
        .collect();
    Ok(group::identify(&table, zero)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twisted_degree_two_for_cyclic_groups() {
        for n in 2..=30u64 {
            let h = z2_cohomology(&Z2Module::negation(AbelianGroup::cyclic(n)), 2).unwrap();
            assert_eq!(h.order(), if n % 2 == 0 { 2 } else { 1 }, "N = {n}");
        }
    }

    #[test]
    fn circle_coefficients() {
        assert_eq!(z2_cohomology(&Z2Module::circle(), 3).unwrap(), AbelianGroup::cyclic(2));
        assert_eq!(z2_cohomology(&Z2Module::circle(), 4).unwrap(), AbelianGroup::trivial());
        assert!(matches!(
            z2_cohomology(&Z2Module::Circle { negate: true }, 2),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn full_enumeration_for_trivial_z2() {
        let m = Z2Module::trivial(AbelianGroup::cyclic(2));
        for n in 1..=3 {
            let expect = z2_cohomology(&m, n).unwrap();
            assert_eq!(z2_cohomology_brute_force(&m, n, false).unwrap(), expect);
            assert_eq!(z2_cohomology_brute_force(&m, n, true).unwrap(), expect);
        }
        assert_eq!(z2_cohomology(&m, 2).unwrap(), AbelianGroup::cyclic(2));
    }

    #[test]
    fn non_involution_is_rejected() {
        let g = AbelianGroup::cyclic(5);
        let doubling: Vec<usize> = g.elements().map(|x| g.scale(x, 2)).collect();
        assert!(Z2Module::finite(g, doubling).is_err());
    }
}
