use std::collections::HashMap;

use super::FusionRing;

/// Searches for a based-ring isomorphism `a → b`: a bijection of bases fixing
/// the unit and preserving every `N_{ij}^k`. Returns `map[i_a] = i_b`.
///
/// Candidates are narrowed by colour refinement on the fusion tensor, then a
/// backtracking search checks every triple as soon as it is fully assigned.
pub fn find_isomorphism(a: &FusionRing, b: &FusionRing) -> Option<Vec<usize>> {
    let r = a.rank();
    if r != b.rank() || a.entries().len() != b.entries().len() {
        return None;
    }
    let (ca, cb) = refine_colours(a, b);
    let mut hist_a = ca.clone();
    let mut hist_b = cb.clone();
    hist_a.sort_unstable();
    hist_b.sort_unstable();
    if hist_a != hist_b {
        return None;
    }
    let mut class_size: HashMap<usize, usize> = HashMap::new();
    for &c in &ca {
        *class_size.entry(c).or_default() += 1;
    }
    let mut order: Vec<usize> = (1..r).collect();
    order.sort_by_key(|&i| (class_size[&ca[i]], ca[i], i));
    order.insert(0, 0);

    let mut map = vec![usize::MAX; r];
    let mut used = vec![false; r];
    if search(a, b, &ca, &cb, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    a: &FusionRing,
    b: &FusionRing,
    ca: &[usize],
    cb: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    for y in 0..b.rank() {
        if used[y] || cb[y] != ca[x] || (x == 0) != (y == 0) {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if consistent(a, b, x, &order[..=depth], map) && search(a, b, ca, cb, order, depth + 1, map, used) {
            return true;
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
    false
}

/// Checks all triples involving `x` among the assigned objects.
fn consistent(a: &FusionRing, b: &FusionRing, x: usize, assigned: &[usize], map: &[usize]) -> bool {
    let dx = a.dual(x);
    if map[dx] != usize::MAX && map[dx] != b.dual(map[x]) {
        return false;
    }
    for &p in assigned {
        for &q in assigned {
            let (fx, fp, fq) = (map[x], map[p], map[q]);
            if a.mult(x, p, q) != b.mult(fx, fp, fq)
                || a.mult(p, x, q) != b.mult(fp, fx, fq)
                || a.mult(p, q, x) != b.mult(fp, fq, fx)
            {
                return false;
            }
        }
    }
    true
}

/// Joint colour refinement of both rings with a shared palette, so equal
/// colours are comparable across the two.
fn refine_colours(a: &FusionRing, b: &FusionRing) -> (Vec<usize>, Vec<usize>) {
    let r = a.rank();
    let initial = |ring: &FusionRing, i: usize| -> Vec<u64> {
        let mut row: Vec<u64> = (0..r).map(|j| ring.product(i, j).iter().map(|&(_, m)| u64::from(m)).sum()).collect();
        row.sort_unstable();
        let mut sig = vec![u64::from(i == 0), u64::from(ring.dual(i) == i), u64::from(ring.mult(i, i, i))];
        sig.extend(row);
        sig
    };
    let mut palette: HashMap<Vec<u64>, usize> = HashMap::new();
    let intern = |sig: Vec<u64>, palette: &mut HashMap<Vec<u64>, usize>| {
        let n = palette.len();
        *palette.entry(sig).or_insert(n)
    };
    let mut ca: Vec<usize> = (0..r).map(|i| intern(initial(a, i), &mut palette)).collect();
    let mut cb: Vec<usize> = (0..r).map(|i| intern(initial(b, i), &mut palette)).collect();
    let classes = |c: &[usize]| {
        let mut v = c.to_vec();
        v.sort_unstable();
        v.dedup();
        v.len()
    };
    loop {
        let before = classes(&ca) + classes(&cb);
        let step = |ring: &FusionRing, c: &[usize], i: usize| -> Vec<u64> {
            let mut nbrs: Vec<(usize, usize, u32)> = Vec::new();
            for j in 0..r {
                for &(k, m) in ring.product(i, j) {
                    nbrs.push((c[j], c[k], m));
                }
            }
            nbrs.sort_unstable();
            let mut sig = vec![c[i] as u64, c[ring.dual(i)] as u64];
            sig.extend(nbrs.into_iter().flat_map(|(x, y, m)| [x as u64, y as u64, u64::from(m)]));
            sig
        };
        let sa: Vec<Vec<u64>> = (0..r).map(|i| step(a, &ca, i)).collect();
        let sb: Vec<Vec<u64>> = (0..r).map(|i| step(b, &cb, i)).collect();
        palette.clear();
        ca = sa.into_iter().map(|s| intern(s, &mut palette)).collect();
        cb = sb.into_iter().map(|s| intern(s, &mut palette)).collect();
        if classes(&ca) + classes(&cb) == before {
            return (ca, cb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::*;

    #[test]
    fn relabelled_ring_is_isomorphic() {
        let r = product(&ising(), &fibonacci());
        let p = r.permuted(&[0, 3, 5, 1, 4, 2]).unwrap();
        let map = find_isomorphism(&r, &p).expect("isomorphic");
        for (i, j, k, m) in r.entries() {
            assert_eq!(p.mult(map[i], map[j], map[k]), m);
        }
    }

    #[test]
    fn different_rings_are_not_isomorphic() {
        assert!(find_isomorphism(&cyclic(4), &product(&cyclic(2), &cyclic(2))).is_none());
        assert!(find_isomorphism(&ising(), &cyclic(3)).is_none());
    }
}
