//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! A [`CycNum`] stores an integer polynomial of degree below `phi(N)` together
//! with a positive common denominator; the polynomial is the unique reduced
//! representative modulo the `N`-th cyclotomic polynomial, so equality of two
//! numbers with the same conductor is equality of their stored data. Mixed
//! conductors are lifted to the least common multiple before operating.

pub(crate) mod parse;
pub mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use parse::{parse_scalar, Lexer, Token};
pub use poly::{cyclotomic_poly, divisors, lcm, totient};

#[derive(Clone, Debug)]
pub struct CycNum {
    conductor: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

/// Reduces an integer polynomial modulo the monic `Phi_n`, in place.
fn reduce_mod_phi(p: &mut Vec<BigInt>, n: u32) {
    let phi = cyclotomic_poly(n);
    let d = phi.len() - 1;
    for i in (d..p.len()).rev() {
        if p[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut p[i]);
        for (j, &coef) in phi.iter().enumerate().take(d) {
            if coef != 0 {
                p[i - d + j] -= &c * coef;
            }
        }
    }
    p.resize(d, BigInt::zero());
}

impl CycNum {
    fn from_parts(conductor: u32, mut num: Vec<BigInt>, mut den: BigInt) -> CycNum {
        reduce_mod_phi(&mut num, conductor);
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if num.iter().all(|c| c.is_zero()) {
            den = BigInt::one();
        } else if !g.is_one() {
            for c in num.iter_mut() {
                *c /= &g;
            }
            den /= &g;
        }
        CycNum { conductor, num, den }
    }

    pub fn zero() -> CycNum {
        CycNum::from_int(0)
    }

    pub fn one() -> CycNum {
        CycNum::from_int(1)
    }

    pub fn from_int(v: i64) -> CycNum {
        CycNum { conductor: 1, num: vec![BigInt::from(v)], den: BigInt::one() }
    }

    pub fn from_ratio(n: BigInt, d: BigInt) -> Result<CycNum> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(CycNum::from_parts(1, vec![n], d))
    }

    /// The fixed primitive `n`-th root of unity `exp(2 pi i / n)`.
    pub fn zeta(n: u32) -> CycNum {
        assert!(n >= 1, "zeta: conductor must be positive");
        let mut num = vec![BigInt::zero(); 2];
        num[1] = BigInt::one();
        CycNum::from_parts(n, num, BigInt::one())
    }

    /// `zeta(n)^k` for any integer `k`.
    pub fn root_power(n: u32, k: i64) -> CycNum {
        let e = k.rem_euclid(n as i64) as usize;
        let mut num = vec![BigInt::zero(); e + 1];
        num[e] = BigInt::one();
        CycNum::from_parts(n, num, BigInt::one())
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// Returns the value as a rational `(numerator, denominator)` if it lies in `Q`.
    pub fn as_rational(&self) -> Option<(BigInt, BigInt)> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some((self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Coefficients with respect to `1, zeta, ..., zeta^(phi(N)-1)` as
    /// `(numerator, common denominator)`.
    pub fn coefficients(&self) -> (&[BigInt], &BigInt) {
        (&self.num, &self.den)
    }

    /// Re-expresses the number in `Q(zeta_m)`; `m` must be a multiple of the conductor.
    pub fn lift(&self, m: u32) -> CycNum {
        if m == self.conductor {
            return self.clone();
        }
        assert!(m % self.conductor == 0, "cannot lift conductor {} to {}", self.conductor, m);
        let step = (m / self.conductor) as usize;
        let mut num = vec![BigInt::zero(); (self.num.len() - 1) * step + 1];
        for (i, c) in self.num.iter().enumerate() {
            num[i * step] = c.clone();
        }
        CycNum::from_parts(m, num, self.den.clone())
    }

    fn lifted_pair(&self, other: &CycNum) -> (CycNum, CycNum) {
        let m = lcm(self.conductor, other.conductor);
        (self.lift(m), other.lift(m))
    }

    /// Applies the Galois automorphism `zeta -> zeta^k`, `gcd(k, N) = 1`.
    pub fn galois(&self, k: u32) -> CycNum {
        let n = self.conductor;
        let mut num = vec![BigInt::zero(); n as usize];
        for (i, c) in self.num.iter().enumerate() {
            let e = (i as u64 * k as u64 % n as u64) as usize;
            num[e] += c;
        }
        CycNum::from_parts(n, num, self.den.clone())
    }

    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.conductor;
        if let Some((p, q)) = self.as_rational() {
            return Ok(CycNum::from_parts(n, vec![q], p));
        }
        // 1/a = (product of the other conjugates) / norm(a)
        let mut others = CycNum::one().lift(n);
        for k in 2..n {
            if k.gcd(&n) == 1 {
                others = &others * &self.galois(k);
            }
        }
        let norm = self * &others;
        let (p, q) = norm.as_rational().expect("norm lies in Q");
        let mut num = others.num;
        for c in num.iter_mut() {
            *c *= &q;
        }
        Ok(CycNum::from_parts(n, num, others.den * p))
    }

    pub fn checked_div(&self, other: &CycNum) -> Result<CycNum> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<CycNum> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = CycNum::one().lift(self.conductor);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Smallest `m > 0` with `x^m = 1`.
    ///
    /// A root of unity in `Q(zeta_N)` has order dividing `2N`, so only those
    /// divisors are tested.
    pub fn root_order(&self) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let bound = 2 * self.conductor;
        for d in divisors(bound) {
            if self.pow(d as i64)?.is_one() {
                return Ok(d);
            }
        }
        Err(Error::NotRootOfUnity)
    }

    /// If `self = zeta(n)^k` for the given `n`, returns `k mod n`.
    pub fn root_exponent(&self, n: u32) -> Option<u32> {
        let m = lcm(n, self.conductor);
        let me = self.lift(m);
        (0..n).find(|&k| CycNum::root_power(n, k as i64).lift(m) == me)
    }

    fn add_sub(&self, other: &CycNum, negate: bool) -> CycNum {
        if self.conductor != other.conductor {
            let (a, b) = self.lifted_pair(other);
            return a.add_sub(&b, negate);
        }
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| {
                let l = a * &other.den;
                let r = b * &self.den;
                if negate { l - r } else { l + r }
            })
            .collect();
        CycNum::from_parts(self.conductor, num, &self.den * &other.den)
    }

    fn mul_impl(&self, other: &CycNum) -> CycNum {
        if self.conductor != other.conductor {
            let (a, b) = self.lifted_pair(other);
            return a.mul_impl(&b);
        }
        if self.is_zero() || other.is_zero() {
            return CycNum::zero().lift(self.conductor);
        }
        let len = self.num.len() + other.num.len() - 1;
        let mut num = vec![BigInt::zero(); len];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    num[i + j] += a * b;
                }
            }
        }
        CycNum::from_parts(self.conductor, num, &self.den * &other.den)
    }

    /// Rough size measure used for pivot selection in elimination.
    pub fn weight(&self) -> u64 {
        self.num.iter().map(|c| c.bits()).sum::<u64>() + self.den.bits()
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &CycNum) -> bool {
        if self.conductor == other.conductor {
            self.den == other.den && self.num == other.num
        } else {
            let (a, b) = self.lifted_pair(other);
            a.den == b.den && a.num == b.num
        }
    }
}

impl Eq for CycNum {}

impl Default for CycNum {
    fn default() -> CycNum {
        CycNum::zero()
    }
}

impl From<i64> for CycNum {
    fn from(v: i64) -> CycNum {
        CycNum::from_int(v)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                let f: fn(&CycNum, &CycNum) -> CycNum = $body;
                f(self, rhs)
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_sub(b, false));
forward_binop!(Sub, sub, |a, b| a.add_sub(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            conductor: self.conductor,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

fn fmt_rational(n: &BigInt, d: &BigInt) -> String {
    if d.is_one() { n.to_string() } else { format!("{n}/{d}") }
}

/// Renders in the scalar literal grammar, e.g. `z6 - 1` or `1/2*z4^3 + 2`.
/// Parsing the output gives back the same number.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.num.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = fmt_rational(&c.abs(), &self.den);
            let root = match i {
                0 => String::new(),
                1 => format!("z{}", self.conductor),
                _ => format!("z{}^{}", self.conductor, i),
            };
            let body = match (i, mag.as_str()) {
                (0, _) => mag.clone(),
                (_, "1") => root,
                _ => format!("{mag}*{root}"),
            };
            match (first, neg) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl PartialOrd for CycNum {
    /// Only rationals are ordered.
    fn partial_cmp(&self, other: &CycNum) -> Option<Ordering> {
        let (a, b) = (self.as_rational()?, other.as_rational()?);
        Some((a.0 * &b.1).cmp(&(b.0 * &a.1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32) -> CycNum {
        CycNum::zeta(n)
    }

    #[test]
    fn zeta_small_conductors() {
        assert_eq!(z(1), CycNum::one());
        assert_eq!(z(2), CycNum::from_int(-1));
        assert_eq!(z(4).pow(2).unwrap(), CycNum::from_int(-1));
    }

    #[test]
    fn arithmetic_examples() {
        let z3 = z(3);
        assert!((&z3 * &z3.pow(2).unwrap()).is_one());
        let one_plus = CycNum::one() + &z3;
        assert_eq!(CycNum::one().checked_div(&one_plus).unwrap(), -&z3);
        let z6 = z(6);
        assert_eq!(&z6 + &z6.pow(5).unwrap(), CycNum::one());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(CycNum::one().checked_div(&CycNum::zero()), Err(Error::DivisionByZero));
        assert_eq!(CycNum::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn root_orders() {
        assert_eq!(CycNum::from_int(-1).root_order(), Ok(2));
        assert_eq!(z(12).pow(4).unwrap().root_order(), Ok(3));
        assert_eq!(CycNum::from_int(2).root_order(), Err(Error::NotRootOfUnity));
        assert_eq!(CycNum::zero().root_order(), Err(Error::ZeroInput));
        // -zeta_3 is a primitive 6th root living in conductor 3
        assert_eq!((-z(3)).root_order(), Ok(6));
    }

    #[test]
    fn zeta_is_primitive_root_of_phi() {
        for n in 1..=48u32 {
            let zn = z(n);
            assert!(zn.pow(n as i64).unwrap().is_one(), "zeta({n})^{n}");
            for m in 1..n {
                assert!(!zn.pow(m as i64).unwrap().is_one(), "zeta({n})^{m}");
            }
            let phi = cyclotomic_poly(n);
            let mut acc = CycNum::zero();
            for (k, &c) in phi.iter().enumerate() {
                acc = acc + CycNum::from_int(c) * zn.pow(k as i64).unwrap();
            }
            assert!(acc.is_zero(), "Phi_{n}(zeta) != 0");
        }
    }

    #[test]
    fn root_order_of_powers() {
        for n in 1..=24u32 {
            for k in 1..n {
                let expect = n / k.gcd(&n);
                assert_eq!(z(n).pow(k as i64).unwrap().root_order(), Ok(expect), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn mixed_conductors_lift() {
        let a = z(4) + z(3);
        assert_eq!(a.conductor(), 12);
        assert_eq!(z(6).pow(2).unwrap(), z(3));
        assert_eq!(z(12).pow(3).unwrap(), z(4));
    }

    #[test]
    fn display_forms() {
        assert_eq!(z(3).to_string(), "z3");
        assert_eq!((-z(3) - CycNum::one()).to_string(), "-z3 - 1");
        assert_eq!(CycNum::from_ratio(BigInt::from(-3), BigInt::from(6)).unwrap().to_string(), "-1/2");
        assert_eq!(z(3).lift(6).to_string(), "z6 - 1");
    }

    #[test]
    fn root_exponent_finds_power() {
        assert_eq!(z(12).pow(4).unwrap().root_exponent(3), Some(1));
        assert_eq!(CycNum::from_int(-1).root_exponent(4), Some(2));
        assert_eq!(CycNum::from_int(2).root_exponent(4), None);
    }
}

impl serde::Serialize for CycNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for CycNum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(d)?;
        parse_scalar(&s).map_err(serde::de::Error::custom)
    }
}
