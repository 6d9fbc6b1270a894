//! Boson condensation (de-equivariantization by `{1, b}`) at the level of
//! fusion rules.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{AlgebraicReal, Phase};
use crate::group::AbelianGroup;
use crate::io::RingJson;
use crate::modular::transparency_constraint;
use crate::ring::FusionRing;

/// Search nodes allowed per candidate group when reconstructing the trivial component.
pub const MAX_LABELING_NODES: usize = 2_000_000;

/// How the condensed object was established to be a boson.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BosonEvidence {
    /// Its twist was supplied and is 1.
    Twist,
    /// Its twist is forced to 1 by centralizing a non-invertible object it fixes.
    Transparency { witness: String },
    /// Taken on trust from the caller.
    Assumed,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Orbit {
    pub members: Vec<String>,
    pub fixed: bool,
    /// Labels of the resulting simple objects (two for a fixed point).
    pub labels: Vec<String>,
    pub dim: f64,
}

/// The pointed trivial component of the condensed category.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrivialComponent {
    pub labels: Vec<String>,
    pub order: u64,
    /// Every abelian group of this order admitting a labeling consistent with
    /// the fusion rules upstairs.
    pub consistent_groups: Vec<String>,
    /// Set when exactly one group is consistent.
    pub group: Option<String>,
    pub cyclic: Option<bool>,
    pub ambiguous: bool,
    /// Coordinates of each label in `group`, when determined.
    pub elements: Vec<(String, Vec<u64>)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CondensationReport {
    pub boson: String,
    pub evidence: BosonEvidence,
    pub orbits: Vec<Orbit>,
    pub labels: Vec<String>,
    pub dims: Vec<f64>,
    pub global_dim: f64,
    /// Pointed part plus defects whose pairwise products are sums of invertibles.
    pub generalized_tambara_yamagami: bool,
    pub trivial_component: Option<TrivialComponent>,
    pub fusion: Option<RingJson>,
    pub notes: Vec<String>,
}

/// Condenses the boson `b`.
///
/// `b` must be invertible with `b⊗b = 1` and a boson: its twist is read from
/// `twists` when given, otherwise it is forced via
/// [`transparency_constraint`] from a non-invertible object it fixes, and
/// only if neither is possible `assume_boson` is consulted.
///
/// Objects fixed by `b` split into two of half the dimension. When every
/// simple object downstairs is either invertible or comes from a free orbit of
/// non-invertibles, the group law on the invertible part is reconstructed by
/// matching lifted multiplicities, `F(x)⊗F(y) = F(x⊗y)`, over every abelian
/// group of the right order.
pub fn condense_boson(
    ring: &FusionRing,
    twists: Option<&[Option<Phase>]>,
    b: usize,
    assume_boson: bool,
) -> Result<CondensationReport> {
    let r = ring.rank();
    if b >= r {
        return Err(Error::Malformed(format!("boson index {b} out of range")));
    }
    let dims = ring.dims_f64()?;
    let is_invertible = |i: usize| ring.product(i, ring.dual(i)).len() == 1;
    if b == 0 || !is_invertible(b) || ring.product(b, b) != [(0, 1)] {
        return Err(Error::Precondition(format!("{} is not an invertible object of order two", ring.label(b))));
    }
    let evidence = boson_evidence(ring, twists, b, assume_boson)?;

    let image: Vec<usize> = (0..r)
        .map(|x| match ring.product(b, x) {
            [(y, 1)] => Ok(*y),
            _ => Err(Error::Internal("tensoring with an invertible is not a permutation".into())),
        })
        .collect::<Result<_>>()?;
    let mut orbits = Vec::new();
    // lift[x] = downstairs objects in F(x)
    let mut lift: Vec<Vec<usize>> = vec![Vec::new(); r];
    let mut labels = Vec::new();
    let mut down_dims = Vec::new();
    for x in 0..r {
        let y = image[x];
        if y < x {
            lift[x] = lift[y].clone();
            continue;
        }
        if y == x {
            let names = vec![format!("{}^(1)", ring.label(x)), format!("{}^(2)", ring.label(x))];
            lift[x] = vec![labels.len(), labels.len() + 1];
            labels.extend(names.iter().cloned());
            down_dims.extend([dims[x] / 2.0; 2]);
            orbits.push(Orbit { members: vec![ring.label(x).into()], fixed: true, labels: names, dim: dims[x] / 2.0 });
        } else {
            lift[x] = vec![labels.len()];
            labels.push(ring.label(x).to_string());
            down_dims.push(dims[x]);
            orbits.push(Orbit {
                members: vec![ring.label(x).into(), ring.label(y).into()],
                fixed: false,
                labels: vec![ring.label(x).into()],
                dim: dims[x],
            });
        }
    }
    let global_dim = down_dims.iter().map(|d| d * d).sum();
    let mut report = CondensationReport {
        boson: ring.label(b).into(),
        evidence,
        orbits,
        labels,
        dims: down_dims,
        global_dim,
        generalized_tambara_yamagami: false,
        trivial_component: None,
        fusion: None,
        notes: Vec::new(),
    };

    let unit_dim = |d: f64| (d - 1.0).abs() < 1e-9;
    let pointed: Vec<usize> = (0..r).filter(|&x| lift[x].iter().all(|&u| unit_dim(report.dims[u]))).collect();
    let defects: Vec<usize> = (0..r).filter(|x| pointed.binary_search(x).is_err()).collect();
    if let Err(reason) = check_shape(ring, &pointed, &defects, &image) {
        report.notes.push(format!("fusion rules not reconstructed: {reason}"));
        return Ok(report);
    }
    report.generalized_tambara_yamagami = !defects.is_empty();

    let lifts: Vec<usize> = {
        let mut v: Vec<usize> = pointed.iter().flat_map(|&x| lift[x].iter().copied()).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let order = lifts.len() as u64;
    let local = |u: usize| lifts.binary_search(&u).expect("pointed lift");
    let constraints = lift_constraints(ring, &pointed, &lift, &local);
    let fixed_pairs: Vec<(usize, usize)> =
        pointed.iter().filter(|&&x| lift[x].len() == 2).map(|&x| (local(lift[x][0]), local(lift[x][1]))).collect();

    let mut consistent = Vec::new();
    let mut solutions = Vec::new();
    let mut undecided = Vec::new();
    for group in AbelianGroup::all_of_order(order) {
        let mut search = Labeling::new(&group, lifts.len(), &constraints, &fixed_pairs);
        match search.run(local(lift[0][0])) {
            Some(phi) => {
                consistent.push(group.to_string());
                solutions.push((group, phi));
            }
            None if search.exhausted => undecided.push(group.to_string()),
            None => {}
        }
    }
    if !undecided.is_empty() {
        report.notes.push(format!("labeling search hit its node limit for {}", undecided.join(", ")));
    }
    let sub_labels: Vec<String> = lifts.iter().map(|&u| report.labels[u].clone()).collect();
    let mut component = TrivialComponent {
        labels: sub_labels.clone(),
        order,
        consistent_groups: consistent.clone(),
        group: None,
        cyclic: None,
        ambiguous: consistent.len() > 1 || !undecided.is_empty(),
        elements: Vec::new(),
    };
    if component.ambiguous {
        report.notes.push(format!(
            "trivial component is not determined by fusion rules: consistent with {}",
            consistent.join(" and ")
        ));
    }
    if solutions.len() == 1 && undecided.is_empty() {
        let (group, phi) = solutions.pop().expect("one solution");
        let phi = normalize(&group, phi, &fixed_pairs);
        component.group = Some(group.to_string());
        component.cyclic = Some(group.is_cyclic());
        component.elements = sub_labels.iter().cloned().zip(phi.iter().map(|&g| group.coords(g))).collect();
        match assemble(ring, &report, &lift, &lifts, &defects, &image, &group, &phi) {
            Ok(down) => {
                let check = down.verify_axioms();
                if check.passed() {
                    report.fusion = Some(RingJson::from(&down));
                } else {
                    report.notes.push(format!("reconstructed rules fail: {}", check.violations[0].describe(&down)));
                }
            }
            Err(reason) => report.notes.push(format!("fusion rules not reconstructed: {reason}")),
        }
    } else if solutions.is_empty() && undecided.is_empty() {
        report.notes.push("no abelian group labels the trivial component consistently".into());
    }
    report.trivial_component = Some(component);
    Ok(report)
}

fn boson_evidence(
    ring: &FusionRing,
    twists: Option<&[Option<Phase>]>,
    b: usize,
    assume_boson: bool,
) -> Result<BosonEvidence> {
    if let Some(theta) = twists.and_then(|t| t.get(b).copied().flatten()) {
        return if theta.is_zero() {
            Ok(BosonEvidence::Twist)
        } else {
            Err(Error::Precondition(format!("{} has twist {theta}, not a boson", ring.label(b))))
        };
    }
    if let Some(exact) = ring.exact_dims() {
        let unknown = vec![None; ring.rank()];
        let tw = twists.unwrap_or(&unknown);
        let witness = (0..ring.rank()).find(|&x| ring.mult(b, x, x) == 1 && exact[x] != AlgebraicReal::integer(1));
        if let Some(x) = witness {
            if let Ok(theta) = transparency_constraint(ring, exact, tw, b, x) {
                return if theta.is_zero() {
                    Ok(BosonEvidence::Transparency { witness: ring.label(x).into() })
                } else {
                    Err(Error::Precondition(format!(
                        "centralizing {} forces {} to have twist {theta}",
                        ring.label(x),
                        ring.label(b)
                    )))
                };
            }
        }
    }
    if assume_boson {
        Ok(BosonEvidence::Assumed)
    } else {
        Err(Error::Precondition(format!(
            "cannot establish that {} is a boson: no twist given and no fixed non-invertible witness",
            ring.label(b)
        )))
    }
}

fn check_shape(ring: &FusionRing, pointed: &[usize], defects: &[usize], image: &[usize]) -> std::result::Result<(), String> {
    if !ring.is_closed(pointed) {
        return Err("objects lifting to invertibles are not closed under fusion".into());
    }
    let is_pointed = |k: usize| pointed.binary_search(&k).is_ok();
    for &q in defects {
        if image[q] == q {
            return Err(format!("{} is a non-invertible fixed point; its split needs module data", ring.label(q)));
        }
        for &p in pointed {
            if ring.product(p, q).iter().chain(ring.product(q, p)).any(|&(k, _)| is_pointed(k)) {
                return Err("pointed part does not act on the defects".into());
            }
        }
        for &q2 in defects {
            if ring.product(q, q2).iter().any(|&(k, _)| !is_pointed(k)) {
                return Err("a product of defects contains a non-invertible".into());
            }
        }
    }
    Ok(())
}

/// `(F(x), F(y), F(x⊗y))` in local indices, the target sorted.
type Constraint = (Vec<usize>, Vec<usize>, Vec<usize>);

fn lift_constraints(
    ring: &FusionRing,
    pointed: &[usize],
    lift: &[Vec<usize>],
    local: &dyn Fn(usize) -> usize,
) -> Vec<Constraint> {
    let mut out = Vec::new();
    for &x in pointed {
        for &y in pointed {
            if y < x {
                continue;
            }
            let mut target = Vec::new();
            for &(z, m) in ring.product(x, y) {
                for _ in 0..m {
                    target.extend(lift[z].iter().map(|&u| local(u)));
                }
            }
            target.sort_unstable();
            let fx = lift[x].iter().map(|&u| local(u)).collect();
            let fy = lift[y].iter().map(|&u| local(u)).collect();
            out.push((fx, fy, target));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Backtracking assignment of group elements to the lifted invertibles.
struct Labeling<'a> {
    group: &'a AbelianGroup,
    constraints: &'a [Constraint],
    fixed_pairs: &'a [(usize, usize)],
    phi: Vec<Option<usize>>,
    used: Vec<bool>,
    nodes: usize,
    exhausted: bool,
}

impl<'a> Labeling<'a> {
    fn new(group: &'a AbelianGroup, n: usize, constraints: &'a [Constraint], fixed_pairs: &'a [(usize, usize)]) -> Self {
        Self {
            group,
            constraints,
            fixed_pairs,
            phi: vec![None; n],
            used: vec![false; group.order() as usize],
            nodes: 0,
            exhausted: false,
        }
    }

    fn run(&mut self, unit: usize) -> Option<Vec<usize>> {
        self.phi[unit] = Some(0);
        self.used[0] = true;
        if !self.consistent() {
            return None;
        }
        if self.extend() {
            Some(self.phi.iter().map(|p| p.expect("complete")).collect())
        } else {
            None
        }
    }

    fn sums(&self, fx: &[usize], fy: &[usize]) -> Option<Vec<usize>> {
        let mut s = Vec::with_capacity(fx.len() * fy.len());
        for &u in fx {
            for &v in fy {
                s.push(self.group.add(self.phi[u]?, self.phi[v]?));
            }
        }
        s.sort_unstable();
        Some(s)
    }

    fn consistent(&self) -> bool {
        for &(a, b) in self.fixed_pairs {
            if let (Some(x), Some(y)) = (self.phi[a], self.phi[b]) {
                if x > y {
                    return false;
                }
            }
        }
        for (fx, fy, target) in self.constraints {
            let Some(sums) = self.sums(fx, fy) else { continue };
            let mut known: Vec<usize> = target.iter().filter_map(|&t| self.phi[t]).collect();
            known.sort_unstable();
            if !is_submultiset(&known, &sums) {
                return false;
            }
        }
        true
    }

    /// Candidate values for `u` allowed by the fully determined constraints.
    fn domain(&self, u: usize) -> Vec<usize> {
        let mut allowed: Option<Vec<usize>> = None;
        for (fx, fy, target) in self.constraints {
            if !target.contains(&u) {
                continue;
            }
            let Some(mut sums) = self.sums(fx, fy) else { continue };
            for &t in target {
                if let Some(v) = self.phi[t] {
                    if let Some(pos) = sums.iter().position(|&s| s == v) {
                        sums.remove(pos);
                    }
                }
            }
            sums.dedup();
            allowed = Some(match allowed {
                None => sums,
                Some(prev) => prev.into_iter().filter(|v| sums.binary_search(v).is_ok()).collect(),
            });
        }
        let all: Vec<usize> = (0..self.used.len()).collect();
        allowed.unwrap_or(all).into_iter().filter(|&v| !self.used[v]).collect()
    }

    fn extend(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > MAX_LABELING_NODES {
            self.exhausted = true;
            return false;
        }
        let open: Vec<usize> = (0..self.phi.len()).filter(|&u| self.phi[u].is_none()).collect();
        let Some((u, dom)) = open.into_iter().map(|u| (u, self.domain(u))).min_by_key(|(_, d)| d.len()) else {
            return true;
        };
        for v in dom {
            self.phi[u] = Some(v);
            self.used[v] = true;
            if self.consistent() && self.extend() {
                return true;
            }
            self.phi[u] = None;
            self.used[v] = false;
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

fn is_submultiset(small: &[usize], big: &[usize]) -> bool {
    let mut j = 0;
    for &x in small {
        while j < big.len() && big[j] < x {
            j += 1;
        }
        if j == big.len() || big[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

/// For a cyclic group, rescales so the first generating label maps to `1`,
/// then reorders each split pair so `^(1)` carries the smaller element.
fn normalize(group: &AbelianGroup, mut phi: Vec<usize>, fixed_pairs: &[(usize, usize)]) -> Vec<usize> {
    if group.is_cyclic() && group.order() > 1 {
        let n = group.order();
        if let Some(&g) = phi.iter().find(|&&g| group.element_order(g) == n) {
            let inv = crate::nt::mod_inverse(g as i64, n as i64).expect("generator is a unit") as u64;
            phi = phi.into_iter().map(|x| group.scale(x, inv)).collect();
        }
    }
    for &(a, b) in fixed_pairs {
        if phi[a] > phi[b] {
            phi.swap(a, b);
        }
    }
    phi
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    ring: &FusionRing,
    report: &CondensationReport,
    lift: &[Vec<usize>],
    lifts: &[usize],
    defects: &[usize],
    image: &[usize],
    group: &AbelianGroup,
    phi: &[usize],
) -> std::result::Result<FusionRing, String> {
    let rank = report.labels.len();
    let mut of_element = vec![usize::MAX; group.order() as usize];
    for (i, &u) in lifts.iter().enumerate() {
        of_element[phi[i]] = u;
    }
    let local = |u: usize| lifts.binary_search(&u).ok();
    // downstairs object -> an upstairs representative for defects
    let mut upstairs = vec![usize::MAX; rank];
    for &q in defects {
        upstairs[lift[q][0]] = q.min(image[q]);
    }
    let image_of = |x: usize, y: usize| -> std::result::Result<Vec<(usize, u32)>, String> {
        let mut acc = std::collections::BTreeMap::new();
        for &(z, m) in ring.product(x, y) {
            for &w in &lift[z] {
                *acc.entry(w).or_insert(0u32) += m;
            }
        }
        Ok(acc.into_iter().collect())
    };
    let mut entries = Vec::new();
    for u in 0..rank {
        for v in 0..rank {
            let row: Vec<(usize, u32)> = match (local(u), local(v)) {
                (Some(a), Some(b)) => vec![(of_element[group.add(phi[a], phi[b])], 1)],
                (None, None) => image_of(upstairs[u], upstairs[v])?,
                (Some(a), None) | (None, Some(a)) => {
                    let x = (0..ring.rank()).find(|&x| lift[x].contains(&lifts[a])).expect("lift source");
                    let q = if local(u).is_none() { upstairs[u] } else { upstairs[v] };
                    let up = if local(u).is_some() { image_of(x, q)? } else { image_of(q, x)? };
                    let share = lift[x].len() as u32;
                    match up.as_slice() {
                        [(w, m)] if *m == share => vec![(*w, 1)],
                        _ => return Err(format!("{} ⊗ {} splits ambiguously", report.labels[u], report.labels[v])),
                    }
                }
            };
            entries.extend(row.into_iter().map(|(w, m)| (u, v, w, m)));
        }
    }
    let dual: Vec<usize> = (0..rank)
        .map(|u| match local(u) {
            Some(a) => of_element[group.neg(phi[a])],
            None => lift[ring.dual(upstairs[u])][0],
        })
        .collect();
    FusionRing::new(report.labels.clone(), dual, entries).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::examples;

    #[test]
    fn condensing_rep_z2_leaves_the_trivial_category() {
        let ring = examples::cyclic(2);
        let twists = [Some(Phase::zero()), Some(Phase::zero())];
        let rep = condense_boson(&ring, Some(&twists), 1, false).unwrap();
        assert_eq!(rep.labels, ["0"]);
        assert!((rep.global_dim - 1.0).abs() < 1e-12);
        assert_eq!(rep.evidence, BosonEvidence::Twist);
        assert_eq!(rep.trivial_component.unwrap().cyclic, Some(true));
    }

    #[test]
    fn fermion_is_rejected() {
        let ring = examples::cyclic(2);
        let twists = [Some(Phase::zero()), Some(Phase::half())];
        assert!(matches!(condense_boson(&ring, Some(&twists), 1, false), Err(Error::Precondition(_))));
    }

    #[test]
    fn unit_is_not_condensable() {
        assert!(condense_boson(&examples::cyclic(2), None, 0, true).is_err());
    }

    #[test]
    fn no_evidence_without_assumption() {
        assert!(matches!(condense_boson(&examples::cyclic(2), None, 1, false), Err(Error::Precondition(_))));
        assert_eq!(condense_boson(&examples::cyclic(2), None, 1, true).unwrap().evidence, BosonEvidence::Assumed);
    }

    #[test]
    fn submultiset() {
        assert!(is_submultiset(&[1, 1, 3], &[0, 1, 1, 2, 3]));
        assert!(!is_submultiset(&[1, 1, 1], &[1, 1, 2]));
    }
}
