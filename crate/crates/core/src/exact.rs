//! Exact scalars: real quadratic irrationals `a + b√t` and rationals modulo 1.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nt;

pub type Rational = Ratio<i64>;

/// A real number `a + b·√t` with rational `a`, `b` and square-free `t ≥ 1`.
///
/// Canonical form: `b == 0` iff `t == 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraicReal {
    a: Rational,
    b: Rational,
    t: u64,
}

impl AlgebraicReal {
    pub fn new(a: Rational, b: Rational, t: u64) -> Result<Self> {
        if t == 0 {
            return Err(Error::Malformed("radicand must be positive".into()));
        }
        let (s, core) = nt::split_square(t);
        Ok(Self::canonical(a, b * Rational::from_integer(s as i64), core))
    }

    fn canonical(a: Rational, b: Rational, t: u64) -> Self {
        if b.is_zero() || t == 1 {
            Self { a: a + b, b: Rational::zero(), t: 1 }
        } else {
            Self { a, b, t }
        }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(Rational::from_integer(n))
    }

    pub fn rational(r: Rational) -> Self {
        Self { a: r, b: Rational::zero(), t: 1 }
    }

    /// `√n` in canonical form, e.g. `√12 = 2√3`.
    pub fn sqrt_of(n: u64) -> Self {
        let (s, t) = nt::split_square(n);
        Self::canonical(Rational::zero(), Rational::from_integer(s as i64), t)
    }

    pub fn a(&self) -> Rational {
        self.a
    }

    pub fn b(&self) -> Rational {
        self.b
    }

    pub fn radicand(&self) -> u64 {
        self.t
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.a.is_integer()
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.t as f64).sqrt()
    }

    /// Product, or `None` when the factors live in different quadratic fields.
    pub fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        if self.is_rational() || rhs.is_rational() || self.t == rhs.t {
            let t = self.t.max(rhs.t) as i64;
            let a = self.a * rhs.a + self.b * rhs.b * Rational::from_integer(t);
            let b = self.a * rhs.b + self.b * rhs.a;
            Some(Self::canonical(a, b, t as u64))
        } else {
            None
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Option<Self> {
        if self.is_rational() || rhs.is_rational() || self.t == rhs.t {
            Some(Self::canonical(self.a + rhs.a, self.b + rhs.b, self.t.max(rhs.t)))
        } else {
            None
        }
    }

    pub fn square(&self) -> Self {
        self.checked_mul(self).expect("same field")
    }

    /// For a weakly integral value (`x² ∈ ℤ`, `x > 0`), the square-free part of `x²`.
    pub fn weak_class(&self) -> Option<u64> {
        let sq = self.square();
        if !sq.is_integer() || !sq.a.is_positive() {
            return None;
        }
        let n = sq.a.to_integer() as u64;
        Some(nt::split_square(n).1)
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let frac = |r: Rational| {
            if r.is_integer() {
                r.to_integer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        };
        if self.is_rational() {
            return write!(f, "{}", frac(self.a));
        }
        let root = if self.b.abs() == Rational::from_integer(1) {
            format!("√{}", self.t)
        } else {
            format!("{}√{}", frac(self.b.abs()), self.t)
        };
        match (self.a.is_zero(), self.b.is_negative()) {
            (true, false) => write!(f, "{root}"),
            (true, true) => write!(f, "-{root}"),
            (false, neg) => write!(f, "{}{}{}", frac(self.a), if neg { "-" } else { "+" }, root),
        }
    }
}

impl fmt::Debug for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Wire form `[a_num, a_den, b_num, b_den, t]`.
impl Serialize for AlgebraicReal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [*self.a.numer(), *self.a.denom(), *self.b.numer(), *self.b.denom(), self.t as i64]
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraicReal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [an, ad, bn, bd, t] = <[i64; 5]>::deserialize(d)?;
        if ad == 0 || bd == 0 || t <= 0 {
            return Err(serde::de::Error::custom("zero denominator or non-positive radicand"));
        }
        AlgebraicReal::new(Ratio::new(an, ad), Ratio::new(bn, bd), t as u64)
            .map_err(serde::de::Error::custom)
    }
}

/// A rational number reduced into `[0, 1)`.
///
/// Used both for values of quadratic forms in `ℚ/ℤ` and, as [`Phase`], for the
/// root of unity `e^{2πi r}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModOne(Rational);

pub type Phase = ModOne;

impl ModOne {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_ratio(Ratio::new(num, den))
    }

    pub fn from_ratio(r: Rational) -> Self {
        let fl = r.floor();
        ModOne(r - fl)
    }

    pub fn zero() -> Self {
        ModOne(Rational::zero())
    }

    pub fn half() -> Self {
        Self::new(1, 2)
    }

    pub fn value(&self) -> Rational {
        self.0
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn times(&self, n: i64) -> Self {
        Self::from_ratio(self.0 * Rational::from_integer(n))
    }

    /// `e^{2πi r}`.
    pub fn to_complex(&self) -> Complex64 {
        let x = self.0.to_f64().unwrap_or(f64::NAN) * std::f64::consts::TAU;
        // exact values at quarter turns keep exactly-pointed S-matrices clean
        match (self.numer(), self.denom()) {
            (0, _) => Complex64::new(1.0, 0.0),
            (1, 2) => Complex64::new(-1.0, 0.0),
            (1, 4) => Complex64::new(0.0, 1.0),
            (3, 4) => Complex64::new(0.0, -1.0),
            _ => Complex64::new(x.cos(), x.sin()),
        }
    }
}

impl Add for ModOne {
    type Output = ModOne;
    fn add(self, rhs: Self) -> Self {
        Self::from_ratio(self.0 + rhs.0)
    }
}

impl Sub for ModOne {
    type Output = ModOne;
    fn sub(self, rhs: Self) -> Self {
        Self::from_ratio(self.0 - rhs.0)
    }
}

impl Neg for ModOne {
    type Output = ModOne;
    fn neg(self) -> Self {
        Self::from_ratio(-self.0)
    }
}

impl Mul<i64> for ModOne {
    type Output = ModOne;
    fn mul(self, rhs: i64) -> Self {
        self.times(rhs)
    }
}

impl fmt::Display for ModOne {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for ModOne {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Wire form `[num, den]`.
impl Serialize for ModOne {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.numer(), self.denom()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for ModOne {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [n, den] = <[i64; 2]>::deserialize(d)?;
        if den == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(ModOne::new(n, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Ratio::new(n, d)
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(AlgebraicReal::sqrt_of(12), AlgebraicReal::new(q(0, 1), q(2, 1), 3).unwrap());
        assert_eq!(AlgebraicReal::sqrt_of(4), AlgebraicReal::integer(2));
        assert_eq!(AlgebraicReal::new(q(1, 1), q(0, 1), 7).unwrap().radicand(), 1);
        assert_eq!(AlgebraicReal::new(q(1, 1), q(3, 1), 9).unwrap(), AlgebraicReal::integer(10));
    }

    #[test]
    fn golden_ratio_squares_to_itself_plus_one() {
        let phi = AlgebraicReal::new(q(1, 2), q(1, 2), 5).unwrap();
        let lhs = phi.square();
        let rhs = phi.checked_add(&AlgebraicReal::integer(1)).unwrap();
        assert_eq!(lhs, rhs);
        assert!((phi.to_f64() - 1.618_033_988_749_895).abs() < 1e-15);
        assert_eq!(phi.to_string(), "1/2+1/2√5");
    }

    #[test]
    fn mixed_fields_do_not_multiply() {
        assert!(AlgebraicReal::sqrt_of(2).checked_mul(&AlgebraicReal::sqrt_of(3)).is_none());
        assert_eq!(
            AlgebraicReal::sqrt_of(6).checked_mul(&AlgebraicReal::sqrt_of(6)),
            Some(AlgebraicReal::integer(6))
        );
    }

    #[test]
    fn weak_class() {
        assert_eq!(AlgebraicReal::sqrt_of(12).weak_class(), Some(3));
        assert_eq!(AlgebraicReal::integer(2).weak_class(), Some(1));
        let phi = AlgebraicReal::new(q(1, 2), q(1, 2), 5).unwrap();
        assert_eq!(phi.weak_class(), None);
    }

    #[test]
    fn mod_one_arithmetic() {
        assert_eq!(ModOne::new(9, 8), ModOne::new(1, 8));
        assert_eq!(ModOne::new(-1, 4), ModOne::new(3, 4));
        assert_eq!(ModOne::new(1, 4) + ModOne::new(3, 4), ModOne::zero());
        assert_eq!(-ModOne::new(1, 5), ModOne::new(4, 5));
        let i = ModOne::new(1, 4).to_complex();
        assert_eq!((i.re, i.im), (0.0, 1.0));
    }

    #[test]
    fn serde_wire_forms() {
        let d = AlgebraicReal::sqrt_of(5);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, "[0,1,1,1,5]");
        assert_eq!(serde_json::from_str::<AlgebraicReal>(&s).unwrap(), d);
        let p: ModOne = serde_json::from_str("[3,8]").unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[3,8]");
    }
}
