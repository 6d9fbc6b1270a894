//! Metric groups: finite abelian groups with a quadratic form `q: A → ℚ/ℤ`.
//!
//! Nondegenerate metric groups are the same data as pointed modular
//! categories; [`pointed_ribbon_data`] produces the corresponding ribbon data.

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{AlgebraicReal, ModOne};
use crate::group::AbelianGroup;
use crate::modular::RibbonData;
use crate::nt;
use crate::par::{self, Exec};
use crate::ring::FusionRing;

/// Largest group order accepted by the brute-force searches.
pub const MAX_SEARCH_ORDER: u64 = 10_000;

const MAX_AUTOMORPHISMS: usize = 1_000_000;

/// A finite abelian group with a quadratic form, stored as its value table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MetricGroup {
    group: AbelianGroup,
    q: Vec<ModOne>,
}

impl MetricGroup {
    /// A nondegenerate quadratic form given by its values on every element.
    pub fn new(group: AbelianGroup, q: Vec<ModOne>) -> Result<Self> {
        let mg = Self::quadratic(group, q)?;
        if !mg.is_nondegenerate() {
            return Err(Error::Malformed("the bilinear form of q is degenerate".into()));
        }
        Ok(mg)
    }

    /// A quadratic form that may be degenerate.
    ///
    /// Checks `q(−a) = q(a)` and that `σ(a, b) = q(a+b) − q(a) − q(b)` is
    /// additive in `a` against every generator, which gives bilinearity.
    pub fn quadratic(group: AbelianGroup, q: Vec<ModOne>) -> Result<Self> {
        if q.len() as u64 != group.order() {
            return Err(Error::Malformed(format!("{} values for a group of order {}", q.len(), group.order())));
        }
        let mg = Self { group, q };
        if !mg.q[0].is_zero() {
            return Err(Error::Malformed("q(0) must be 0".into()));
        }
        for a in mg.group.elements() {
            if mg.q[mg.group.neg(a)] != mg.q[a] {
                return Err(Error::Malformed(format!("q(-a) != q(a) at element {a}")));
            }
        }
        for e in mg.group.generators() {
            for a in mg.group.elements() {
                let ae = mg.group.add(a, e);
                for c in mg.group.elements() {
                    if mg.sigma(ae, c) != mg.sigma(a, c) + mg.sigma(e, c) {
                        return Err(Error::Malformed("the associated form is not bilinear".into()));
                    }
                }
            }
        }
        Ok(mg)
    }

    /// Builds from values on generators `q(e_i)` and cross terms `σ(e_i, e_j)`
    /// (`i < j`, row-major): `q(x) = Σ x_i² q(e_i) + Σ_{i<j} x_i x_j σ(e_i, e_j)`.
    ///
    /// Well defined when `2 n_i q(e_i) ∈ ℤ` with `n_i q(e_i) ∈ ℤ` for odd `n_i`,
    /// and `n_i σ(e_i, e_j) ∈ ℤ`; otherwise a malformed-input error.
    pub fn from_generator_data(group: AbelianGroup, q_gen: &[ModOne], cross: &[ModOne]) -> Result<Self> {
        let k = group.rank();
        if q_gen.len() != k || cross.len() != k * k.saturating_sub(1) / 2 {
            return Err(Error::Malformed("wrong number of generator values".into()));
        }
        let n = group.factors().to_vec();
        for i in 0..k {
            let ni = n[i] as i64;
            let need = if ni % 2 == 1 { ni } else { 2 * ni };
            if !q_gen[i].times(need).is_zero() {
                return Err(Error::Malformed(format!("q(e_{i}) is not compatible with order {ni}")));
            }
        }
        let mut c = 0;
        for i in 0..k {
            for _ in i + 1..k {
                if !cross[c].times(n[i] as i64).is_zero() {
                    return Err(Error::Malformed("cross term is not compatible with the orders".into()));
                }
                c += 1;
            }
        }
        // integer numerators over a common denominator keep this cheap
        let den = 2 * n.iter().fold(1i64, |acc, &ni| num_integer::lcm(acc, ni as i64));
        let lift = |v: &ModOne| v.numer() * (den / v.denom());
        let qn: Vec<i64> = q_gen.iter().map(lift).collect();
        let cn: Vec<i64> = cross.iter().map(lift).collect();
        let q = group
            .elements()
            .map(|x| {
                let xs = group.coords(x);
                let mut v = 0i64;
                let mut c = 0;
                for i in 0..k {
                    let xi = xs[i] as i64;
                    v = (v + qn[i] * (xi * xi % den)) % den;
                    for j in i + 1..k {
                        v = (v + cn[c] * (xi * xs[j] as i64 % den)) % den;
                        c += 1;
                    }
                }
                ModOne::new(v, den)
            })
            .collect();
        Ok(Self { group, q })
    }

    /// `q(a) = c a² / (2n)` on `ℤ_n`; `c` must be even when `n` is odd.
    pub fn cyclic(n: u64, c: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("cyclic group of order 0".into()));
        }
        Self::from_generator_data(AbelianGroup::cyclic(n), &[ModOne::new(c, 2 * n as i64)][..(n > 1) as usize], &[])
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.q.len()
    }

    pub fn q(&self, a: usize) -> ModOne {
        self.q[a]
    }

    pub fn values(&self) -> &[ModOne] {
        &self.q
    }

    /// `σ(a, b) = q(a+b) − q(a) − q(b)`.
    pub fn sigma(&self, a: usize, b: usize) -> ModOne {
        self.q[self.group.add(a, b)] - self.q[a] - self.q[b]
    }

    /// Elements `a` with `σ(a, ·) ≡ 0`.
    pub fn radical(&self) -> Vec<usize> {
        let gens = self.group.generators();
        self.group.elements().filter(|&a| gens.iter().all(|&e| self.sigma(a, e).is_zero())).collect()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical().len() == 1
    }

    /// Orthogonal sum on the product group (first factor's coordinates first).
    ///
    /// Only defined when the product's invariant factors are the concatenation
    /// of both, e.g. `ℤ₂ ⊕ ℤ₂`; otherwise a malformed-input error.
    pub fn orthogonal_sum(&self, other: &Self) -> Result<Self> {
        let mut f = self.group.factors().to_vec();
        f.extend(other.group.factors());
        let group = AbelianGroup::new(f)?;
        let n1 = self.order();
        let q = group.elements().map(|x| self.q[x % n1] + other.q[x / n1]).collect();
        Ok(Self { group, q })
    }

    /// Text form listing `q` on the generators, e.g. `Z12: q(e)=1/24`.
    pub fn describe(&self) -> String {
        let gens: Vec<String> = self.group.generators().iter().map(|&e| self.q[e].to_string()).collect();
        format!("{}: q(gens)=[{}]", self.group, gens.join(", "))
    }
}

impl fmt::Debug for MetricGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl Serialize for MetricGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::io::MetricGroupJson::from(self).serialize(s)
    }
}

/// `q_u(a) = u a² / p^k` for odd `p`, `u a² / 2^{k+1}` for `p = 2`, on `ℤ_{p^k}`.
///
/// For odd `p` any `u` prime to `p` is accepted (the two classes are `u = 1`
/// and a non-residue); for `p = 2`, `u` must be odd and is read mod 8.
pub fn cyclic_form(p: u64, k: u32, u: i64) -> Result<MetricGroup> {
    if !nt::is_prime(p) || k == 0 {
        return Err(Error::Parameter(format!("{p}^{k} is not a prime power")));
    }
    let pk = p.checked_pow(k).ok_or_else(|| Error::Parameter("prime power too large".into()))?;
    if p == 2 {
        if u.rem_euclid(2) == 0 {
            return Err(Error::Parameter(format!("u = {u} must be odd for p = 2")));
        }
        MetricGroup::cyclic(pk, u.rem_euclid(8))
    } else {
        if u.rem_euclid(p as i64) == 0 {
            return Err(Error::Parameter(format!("u = {u} must be prime to {p}")));
        }
        MetricGroup::cyclic(pk, 2 * u)
    }
}

/// Representative `u` values for the classes on `ℤ_{p^k}`.
fn prime_power_units(p: u64, k: u32) -> Vec<i64> {
    match (p, k) {
        (2, 1) => vec![1, 3],
        (2, _) => vec![1, 3, 5, 7],
        _ => vec![1, nt::smallest_nonresidue(p) as i64],
    }
}

/// One nondegenerate quadratic form on `ℤ_N` per equivalence class, as
/// orthogonal sums of prime-power forms via the Chinese remainder theorem.
pub fn enumerate_cyclic_metric_groups(n: u64) -> Result<Vec<MetricGroup>> {
    if n == 0 {
        return Err(Error::Parameter("N must be positive".into()));
    }
    let parts = nt::factorize(n);
    // one u per prime power, combined as an orthogonal sum over the CRT factors
    let mut combos: Vec<Vec<i64>> = vec![vec![]];
    for &(p, k) in &parts {
        let units = prime_power_units(p, k);
        combos = combos
            .into_iter()
            .flat_map(|c| units.iter().map(move |&u| [c.clone(), vec![u]].concat()))
            .collect();
    }
    combos
        .into_iter()
        .map(|units| {
            let forms: Vec<MetricGroup> =
                parts.iter().zip(&units).map(|(&(p, k), &u)| cyclic_form(p, k, u)).collect::<Result<_>>()?;
            let group = AbelianGroup::cyclic(n);
            let q = group
                .elements()
                .map(|a| {
                    forms
                        .iter()
                        .map(|f| f.q(a % f.order()))
                        .fold(ModOne::zero(), |acc, v| acc + v)
                })
                .collect();
            MetricGroup::new(group, q)
        })
        .collect()
}

/// Number of classes [`enumerate_cyclic_metric_groups`] returns, from the factorization.
pub fn cyclic_form_count(n: u64) -> u64 {
    nt::factorize(n).iter().map(|&(p, k)| prime_power_units(p, k).len() as u64).product()
}

fn check_size(m: &MetricGroup) -> Result<()> {
    if m.group.order() > MAX_SEARCH_ORDER {
        return Err(Error::Resource(format!(
            "group of order {} exceeds the search limit {MAX_SEARCH_ORDER}",
            m.group.order()
        )));
    }
    Ok(())
}

/// Automorphisms `φ` with `target ∘ φ = source`, pruned generator by generator.
fn isometries(source: &MetricGroup, target: &MetricGroup) -> Result<Vec<Vec<usize>>> {
    let group = &source.group;
    let gens = group.generators();
    let accept = |chosen: &[usize]| {
        let m = chosen.len() - 1;
        target.q[chosen[m]] == source.q[gens[m]]
            && (0..m).all(|i| target.sigma(chosen[m], chosen[i]) == source.sigma(gens[m], gens[i]))
    };
    let autos = group.automorphisms_filtered(MAX_AUTOMORPHISMS, &accept)?;
    Ok(autos.into_iter().filter(|phi| group.elements().all(|a| target.q[phi[a]] == source.q[a])).collect())
}

/// Whether some group isomorphism carries `m1` to `m2`.
pub fn equivalence_test(m1: &MetricGroup, m2: &MetricGroup) -> Result<bool> {
    check_size(m1)?;
    check_size(m2)?;
    if m1.group != m2.group {
        return Ok(false);
    }
    let mut h1 = m1.q.clone();
    let mut h2 = m2.q.clone();
    h1.sort();
    h2.sort();
    if h1 != h2 {
        return Ok(false);
    }
    Ok(!isometries(m1, m2)?.is_empty())
}

/// All automorphisms preserving `q`, as element maps, sorted.
pub fn form_preserving_autos(mg: &MetricGroup) -> Result<Vec<Vec<usize>>> {
    check_size(mg)?;
    let mut out = isometries(mg, mg)?;
    out.sort();
    Ok(out)
}

/// For cyclic groups: the multipliers `x` with `q(xa) = q(a)`, ascending.
pub fn cyclic_form_multipliers(mg: &MetricGroup) -> Result<Vec<u64>> {
    if !mg.group.is_cyclic() {
        return Err(Error::Unsupported("multipliers are only defined for cyclic groups".into()));
    }
    let gen = if mg.order() > 1 { 1 } else { 0 };
    let mut xs: Vec<u64> = form_preserving_autos(mg)?.iter().map(|phi| phi[gen] as u64).collect();
    xs.sort_unstable();
    Ok(xs)
}

/// Group-ring fusion, unit dimensions and twists `θ_a = e^{2πi q(a)}`.
pub fn pointed_ribbon_data(mg: &MetricGroup) -> Result<RibbonData> {
    let ring = pointed_ring(&mg.group)?;
    let dims = vec![AlgebraicReal::integer(1); mg.order()];
    RibbonData::new(ring, dims, mg.q.clone())
}

/// The group ring of `A` with labels `"a"` (cyclic) or `"(a,b,…)"`.
pub fn pointed_ring(group: &AbelianGroup) -> Result<FusionRing> {
    let labels: Vec<String> = group
        .elements()
        .map(|x| {
            if group.is_cyclic() {
                x.to_string()
            } else {
                let c: Vec<String> = group.coords(x).iter().map(u64::to_string).collect();
                format!("({})", c.join(","))
            }
        })
        .collect();
    let dual = group.elements().map(|x| group.neg(x)).collect();
    let n = group.order() as usize;
    FusionRing::from_rule(labels, dual, |i, j| vec![(group.add(i, j), 1)])?
        .with_exact_dims(vec![AlgebraicReal::integer(1); n])
}

/// Every quadratic form on `group`, degenerate ones included, enumerated
/// through generator data.
///
/// With `sorted_blocks`, only forms whose generator values are non-decreasing
/// within each run of equal invariant factors are produced. Permuting those
/// generators is a group automorphism, so every form is isometric to one of
/// the produced ones.
pub fn all_quadratic_forms(group: &AbelianGroup, sorted_blocks: bool) -> Vec<MetricGroup> {
    let n = group.factors();
    let k = n.len();
    let q_choices: Vec<Vec<ModOne>> = n
        .iter()
        .map(|&ni| {
            let den = 2 * ni as i64;
            (0..den).filter(|c| ni % 2 == 0 || c % 2 == 0).map(|c| ModOne::new(c, den)).collect()
        })
        .collect();
    let mut cross_choices = Vec::new();
    for i in 0..k {
        for _ in i + 1..k {
            cross_choices.push((0..n[i] as i64).map(|c| ModOne::new(c, n[i] as i64)).collect::<Vec<_>>());
        }
    }
    let q_tuples = cartesian(&q_choices);
    let cross_tuples = cartesian(&cross_choices);
    let mut out = Vec::new();
    for qs in &q_tuples {
        if sorted_blocks && (1..k).any(|i| n[i] == n[i - 1] && qs[i] < qs[i - 1]) {
            continue;
        }
        for cs in &cross_tuples {
            out.push(MetricGroup::from_generator_data(group.clone(), qs, cs).expect("well defined by construction"));
        }
    }
    out
}

fn cartesian<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for c in choices {
        out = out.into_iter().flat_map(|prefix| c.iter().map(move |x| [prefix.clone(), vec![x.clone()]].concat())).collect();
    }
    out
}

/// Classes of nondegenerate forms on `ℤ_N` found by testing every pair of
/// forms `q(1) = c/(2N)` for equivalence; one representative per class.
pub fn brute_force_cyclic_classes(n: u64, exec: Exec) -> Result<Vec<MetricGroup>> {
    if n == 0 {
        return Err(Error::Parameter("N must be positive".into()));
    }
    let forms: Vec<MetricGroup> = (0..2 * n as i64)
        .filter(|c| n % 2 == 0 || c % 2 == 0)
        .map(|c| MetricGroup::cyclic(n, c))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(MetricGroup::is_nondegenerate)
        .collect();
    partition_by_equivalence(forms, exec)
}

/// Splits forms into equivalence classes; keeps the first member of each.
pub fn partition_by_equivalence(forms: Vec<MetricGroup>, exec: Exec) -> Result<Vec<MetricGroup>> {
    let mut reps: Vec<MetricGroup> = Vec::new();
    for f in forms {
        let hits = par::map(exec, reps.iter().collect(), |r| equivalence_test(r, &f));
        let mut found = false;
        for h in hits {
            found |= h?;
        }
        if !found {
            reps.push(f);
        }
    }
    Ok(reps)
}

/// Named nondegenerate forms on `ℤ₂ × ℤ₂`, one per class, found by brute force.
#[derive(Clone, Debug, Serialize)]
pub struct KleinForm {
    pub name: String,
    pub form: MetricGroup,
    /// Some element of order two has `q = 1/2`.
    pub has_fermion: bool,
}

pub fn klein_forms() -> Vec<KleinForm> {
    let group = AbelianGroup::new(vec![2, 2]).expect("valid");
    let forms: Vec<MetricGroup> =
        all_quadratic_forms(&group, false).into_iter().filter(MetricGroup::is_nondegenerate).collect();
    let reps = partition_by_equivalence(forms, Exec::Sequential).expect("small group");
    let mut out: Vec<KleinForm> = reps
        .into_iter()
        .map(|form| {
            let mut nonzero: Vec<ModOne> = form.values()[1..].to_vec();
            nonzero.sort();
            let key: Vec<(i64, i64)> = nonzero.iter().map(|v| (v.numer(), v.denom())).collect();
            let name = match key.as_slice() {
                [(0, 1), (0, 1), (1, 2)] => "TC".to_string(),
                [(1, 2), (1, 2), (1, 2)] => "3F".to_string(),
                [(1, 4), (1, 4), (1, 2)] => "Sem^2".to_string(),
                [(1, 2), (3, 4), (3, 4)] => "conj-Sem^2".to_string(),
                [(0, 1), (1, 4), (3, 4)] => "Sem x conj-Sem".to_string(),
                _ => format!("q={nonzero:?}"),
            };
            let has_fermion = form.values()[1..].iter().any(|&v| v == ModOne::half());
            KleinForm { name, form, has_fermion }
        })
        .collect();
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

/// `q(1)` as an exact rational, for cyclic groups.
pub fn generator_value(mg: &MetricGroup) -> Option<Ratio<i64>> {
    (mg.group.is_cyclic() && mg.order() > 1).then(|| mg.q(1).value())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_forms() {
        let f = cyclic_form(5, 1, 1).unwrap();
        assert_eq!(f.q(1), ModOne::new(1, 5));
        assert_eq!(f.q(2), ModOne::new(4, 5));
        assert_eq!(f.q(0), ModOne::zero());
        let s = cyclic_form(2, 1, 1).unwrap();
        assert_eq!(s.q(1), ModOne::new(1, 4));
        assert!(matches!(cyclic_form(2, 3, 2), Err(Error::Parameter(_))));
        assert!(matches!(cyclic_form(5, 1, 10), Err(Error::Parameter(_))));
        assert!(matches!(cyclic_form(6, 1, 1), Err(Error::Parameter(_))));
    }

    #[test]
    fn enumeration_sizes() {
        for (n, want) in [(1, 1), (2, 2), (4, 4), (5, 2), (6, 4), (8, 4), (12, 8), (15, 4), (30, 8)] {
            let forms = enumerate_cyclic_metric_groups(n).unwrap();
            assert_eq!(forms.len() as u64, want, "N = {n}");
            assert_eq!(cyclic_form_count(n), want);
        }
    }

    #[test]
    fn equivalences_on_z5_and_z7() {
        let a = cyclic_form(5, 1, 1).unwrap();
        let b = MetricGroup::cyclic(5, 8).unwrap(); // 4a²/5
        assert!(equivalence_test(&a, &b).unwrap());
        assert!(equivalence_test(&a, &a).unwrap());
        // −1 is a square mod 5, so a²/5 and −a²/5 are isometric via a ↦ 2a
        let minus = cyclic_form(5, 1, -1).unwrap();
        assert!(equivalence_test(&a, &minus).unwrap());
        // but not mod 7
        assert!(!equivalence_test(&cyclic_form(7, 1, 1).unwrap(), &cyclic_form(7, 1, -1).unwrap()).unwrap());
    }

    #[test]
    fn automorphisms_of_small_cyclic_forms() {
        assert_eq!(cyclic_form_multipliers(&cyclic_form(5, 1, 1).unwrap()).unwrap(), vec![1, 4]);
        assert_eq!(cyclic_form_multipliers(&cyclic_form(2, 1, 1).unwrap()).unwrap(), vec![1]);
        assert_eq!(cyclic_form_multipliers(&cyclic_form(2, 3, 1).unwrap()).unwrap(), vec![1, 7]);
        // two odd CRT factors give four square roots of unity
        let z15 = &enumerate_cyclic_metric_groups(15).unwrap()[0];
        assert_eq!(cyclic_form_multipliers(z15).unwrap(), vec![1, 4, 11, 14]);
    }

    #[test]
    fn pointed_data_of_z4() {
        let mg = MetricGroup::cyclic(4, 1).unwrap();
        let rd = pointed_ribbon_data(&mg).unwrap();
        let want = [ModOne::zero(), ModOne::new(1, 8), ModOne::half(), ModOne::new(1, 8)];
        assert_eq!(rd.twists(), &want);
        assert!(rd.is_modular());
        assert!(rd.ring().verify_axioms().passed());
    }

    #[test]
    fn degenerate_forms_are_detected() {
        let deg = MetricGroup::cyclic(4, 2).unwrap(); // q(a) = a²/4, σ(2,·) = 0
        assert!(!deg.is_nondegenerate());
        assert_eq!(deg.radical(), vec![0, 2]);
        assert!(matches!(MetricGroup::new(deg.group().clone(), deg.values().to_vec()), Err(Error::Malformed(_))));
    }

    #[test]
    fn not_a_quadratic_form() {
        let g = AbelianGroup::cyclic(3);
        let bad = MetricGroup::quadratic(g, vec![ModOne::zero(), ModOne::new(1, 3), ModOne::new(2, 3)]);
        assert!(matches!(bad, Err(Error::Malformed(_))));
    }

    #[test]
    fn klein_classes() {
        let names: Vec<String> = klein_forms().into_iter().map(|k| k.name).collect();
        assert_eq!(names, vec!["3F", "Sem x conj-Sem", "Sem^2", "TC", "conj-Sem^2"]);
        assert_eq!(klein_forms().iter().filter(|k| k.has_fermion).count(), 4);
    }

    #[test]
    fn brute_force_matches_enumeration_small() {
        for n in 1..=12 {
            let classes = brute_force_cyclic_classes(n, Exec::Sequential).unwrap();
            assert_eq!(classes.len() as u64, cyclic_form_count(n), "N = {n}");
        }
    }

    #[test]
    fn search_limit() {
        let big = MetricGroup::cyclic(10_007, 2).unwrap();
        assert!(matches!(equivalence_test(&big, &big), Err(Error::Resource(_))));
    }
}
