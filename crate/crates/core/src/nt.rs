//! Small integer number theory used across the crate.

use num_integer::Integer;

/// Prime factorization as `(p, k)` pairs with `p` ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

pub fn is_squarefree(n: u64) -> bool {
    n >= 1 && factorize(n).iter().all(|&(_, k)| k == 1)
}

/// Writes `n = s^2 * t` with `t` square-free and returns `(s, t)`.
pub fn split_square(n: u64) -> (u64, u64) {
    let mut s = 1;
    let mut t = 1;
    for (p, k) in factorize(n) {
        s *= p.pow(k / 2);
        if k % 2 == 1 {
            t *= p;
        }
    }
    (s, t)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Smallest quadratic non-residue modulo an odd prime `p`.
pub fn smallest_nonresidue(p: u64) -> u64 {
    (2..p)
        .find(|&a| mod_pow(a, (p - 1) / 2, p) == p - 1)
        .expect("odd prime has a non-residue")
}

pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let g = a.extended_gcd(&m);
    if g.gcd != 1 && g.gcd != -1 {
        return None;
    }
    Some((g.x * g.gcd).rem_euclid(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
    }

    #[test]
    fn squares() {
        assert_eq!(split_square(12), (2, 3));
        assert_eq!(split_square(4), (2, 1));
        assert_eq!(split_square(30), (1, 30));
        assert!(is_squarefree(15));
        assert!(!is_squarefree(9));
    }

    #[test]
    fn residues() {
        assert_eq!(smallest_nonresidue(5), 2);
        assert_eq!(smallest_nonresidue(7), 3);
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(2, 4), None);
    }
}
