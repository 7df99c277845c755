//! Exact ground fields: prime fields with machine-word arithmetic and the
//! rationals with arbitrary precision.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest characteristic accepted for prime fields. Products of two reduced
/// residues must fit into a `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// Characteristic of the ground field: `0` for the rationals, otherwise a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub characteristic: u64,
}

impl FieldSpec {
    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic != 0 {
            if characteristic > MAX_PRIME {
                return Err(Error::Structural(format!("characteristic {characteristic} exceeds the supported bound {MAX_PRIME}")));
            }
            if !is_prime(characteristic) {
                return Err(Error::Structural(format!("characteristic {characteristic} is neither 0 nor prime")));
            }
        }
        Ok(FieldSpec { characteristic })
    }

    /// Whether `n` is invertible in the field.
    pub fn is_unit(&self, n: u64) -> bool {
        self.characteristic == 0 || !n.is_multiple_of(self.characteristic)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Field operations. Elements are plain values; the field object carries any
/// runtime parameters such as the modulus.
pub trait Field: Clone + Debug + Send + Sync + 'static {
    type E: Clone + PartialEq + Eq + Hash + Debug + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self, a: &Self::E) -> Self::E;
    fn from_i64(&self, v: i64) -> Self::E;
    /// The element `num/den`; fails if `den` vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Self::E>;
    fn render(&self, a: &Self::E) -> String;

    fn is_one(&self, a: &Self::E) -> bool {
        *a == self.one()
    }
    /// `a + b*c`
    fn mul_add(&self, a: &Self::E, b: &Self::E, c: &Self::E) -> Self::E {
        self.add(a, &self.mul(b, c))
    }
    fn div(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.mul(a, &self.inv(b))
    }
    fn sign(&self, negative: bool) -> Self::E {
        if negative {
            self.neg(&self.one())
        } else {
            self.one()
        }
    }
    fn characteristic(&self) -> u64 {
        self.spec().characteristic
    }
}

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u64) -> Result<Self> {
        let spec = FieldSpec::new(p)?;
        if spec.characteristic == 0 {
            return Err(Error::Structural("F_p needs a prime characteristic".into()));
        }
        Ok(Fp { p: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let p = self.p as u64;
        let mut r = 1u64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }
}

impl Field for Fp {
    type E = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec { characteristic: self.p as u64 }
    }
    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.p as u64 - *b as u64) as u32
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        self.pow(*a as u64, self.p as u64 - 2) as u32
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<u32> {
        let p = BigInt::from(self.p);
        let n = num.mod_floor(&p).to_u64().unwrap_or(0) as u32;
        let d = den.mod_floor(&p).to_u64().unwrap_or(0) as u32;
        if d == 0 {
            return Err(Error::Structural(format!("denominator {den} vanishes in characteristic {}", self.p)));
        }
        Ok(self.div(&n, &d))
    }
    fn render(&self, a: &u32) -> String {
        a.to_string()
    }
    #[inline]
    fn mul_add(&self, a: &u32, b: &u32, c: &u32) -> u32 {
        ((*a as u64 + *b as u64 * *c as u64) % self.p as u64) as u32
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type E = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec { characteristic: 0 }
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in Q");
        a.recip()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<BigRational> {
        if den.is_zero() {
            return Err(Error::Structural("zero denominator".into()));
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }
    fn render(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else if a.is_negative() {
            format!("-{}/{}", a.numer().abs(), a.denom())
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

/// Binomial coefficient `n(n-1)...(n-k+1)/k!` for any integer `n`, zero for
/// `k < 0`. Pascal's rule holds for all integer arguments.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_gate() {
        assert!(FieldSpec::new(0).is_ok());
        assert!(FieldSpec::new(2).is_ok());
        assert!(FieldSpec::new(7919).is_ok());
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(9).is_err());
        assert!(FieldSpec::new(MAX_PRIME + 2).is_err());
    }

    #[test]
    fn fp_inverse_and_ratio() {
        let f = Fp::new(7).unwrap();
        for a in 1..7u32 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        let half = f.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(f.mul(&half, &2), 1);
        assert!(f.from_ratio(&BigInt::from(1), &BigInt::from(14)).is_err());
        assert_eq!(f.from_i64(-1), 6);
    }

    #[test]
    fn rationals_render() {
        let q = Rationals;
        let x = q.from_ratio(&BigInt::from(-3), &BigInt::from(6)).unwrap();
        assert_eq!(q.render(&x), "-1/2");
        assert_eq!(q.render(&q.from_i64(4)), "4");
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, 6), BigInt::zero());
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(-1, 3), BigInt::from(-1));
        assert_eq!(binomial(-2, 2), BigInt::from(3));
        assert_eq!(binomial(0, 0), BigInt::one());
    }
}
