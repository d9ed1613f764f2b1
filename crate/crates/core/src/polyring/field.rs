//! Coefficient fields: prime fields with Barrett reduction and the rationals.

use std::fmt;
use std::hash::Hash;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest admissible prime modulus.
pub const MAX_PRIME: u64 = 1 << 62;

/// Default characteristic for computations.
pub const DEFAULT_PRIME: u64 = 32003;

/// Arithmetic in a coefficient field, carried as a runtime context so that
/// the modulus of a prime field does not have to be a type parameter.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` exactly for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_biguint(&self, v: &BigUint) -> Self::Elem;
    /// `num / den`; only fields of characteristic 0 accept fractions in
    /// source text.
    fn from_fraction(&self, num: &BigUint, den: &BigUint) -> Option<Self::Elem>;
    /// Sign and magnitude text used by the polynomial printer.
    fn render(&self, a: &Self::Elem) -> (bool, String);
    fn describe(&self) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// 𝔽_p for a prime p ≤ 2⁶², elements stored as canonical residues in `0..p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
    /// floor(2^64 / p), used when p < 2^32.
    mu64: u64,
    /// floor((2^128 - 1) / p), used for wide moduli.
    mu128: u128,
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(Error::InvalidArgument(format!(
                "modulus {p} exceeds 2^62"
            )));
        }
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        let mu64 = if p < (1 << 32) {
            ((1u128 << 64) / p as u128) as u64
        } else {
            0
        };
        Ok(PrimeField {
            p,
            mu64,
            mu128: u128::MAX / p as u128,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn reduce_wide(&self, x: u128) -> u64 {
        let q = mulhi_u128(x, self.mu128);
        let mut r = x.wrapping_sub(q.wrapping_mul(self.p as u128));
        while r >= self.p as u128 {
            r -= self.p as u128;
        }
        r as u64
    }

    #[inline]
    fn mul_raw(&self, a: u64, b: u64) -> u64 {
        if self.mu64 != 0 {
            let x = a * b;
            let q = ((x as u128 * self.mu64 as u128) >> 64) as u64;
            let r = x - q * self.p;
            if r >= self.p {
                r - self.p
            } else {
                r
            }
        } else {
            self.reduce_wide(a as u128 * b as u128)
        }
    }

    pub fn elem(&self, v: u64) -> u64 {
        v % self.p
    }
}

/// High 128 bits of the 256-bit product `a * b`.
#[inline]
fn mulhi_u128(a: u128, b: u128) -> u128 {
    let mask = u64::MAX as u128;
    let (a0, a1) = (a & mask, a >> 64);
    let (b0, b1) = (b & mask, b >> 64);
    let p00 = a0 * b0;
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let p11 = a1 * b1;
    let mid = (p00 >> 64) + (p01 & mask) + (p10 & mask);
    p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64)
}

impl Field for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mul_raw(*a, *b)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(t0.rem_euclid(self.p as i128) as u64)
    }
    fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }
    fn from_biguint(&self, v: &BigUint) -> u64 {
        (v % self.p).to_u64().expect("residue fits in u64")
    }
    fn from_fraction(&self, _num: &BigUint, _den: &BigUint) -> Option<u64> {
        None
    }
    fn render(&self, a: &u64) -> (bool, String) {
        // symmetric representative
        if *a > self.p / 2 {
            (true, (self.p - a).to_string())
        } else {
            (false, a.to_string())
        }
    }
    fn describe(&self) -> String {
        format!("GF({})", self.p)
    }
}

/// The field ℚ, elements kept in lowest terms with positive denominator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn characteristic(&self) -> u64 {
        0
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
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_biguint(&self, v: &BigUint) -> BigRational {
        BigRational::from_integer(BigInt::from(v.clone()))
    }
    fn from_fraction(&self, num: &BigUint, den: &BigUint) -> Option<BigRational> {
        if den.is_zero() {
            return None;
        }
        Some(BigRational::new(
            BigInt::from(num.clone()),
            BigInt::from(den.clone()),
        ))
    }
    fn render(&self, a: &BigRational) -> (bool, String) {
        let neg = a.is_negative();
        let abs = a.abs();
        let text = if abs.is_integer() {
            abs.numer().to_string()
        } else {
            format!("{}/{}", abs.numer(), abs.denom())
        };
        (neg, text)
    }
    fn describe(&self) -> String {
        "QQ".to_string()
    }
}

/// A coefficient field chosen at runtime, used by front ends that dispatch
/// into the generic code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientField {
    Prime(u64),
    Rationals,
}

impl CoefficientField {
    pub fn from_characteristic(p: u64) -> Result<Self> {
        if p == 0 {
            Ok(CoefficientField::Rationals)
        } else {
            PrimeField::new(p)?;
            Ok(CoefficientField::Prime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientField::Prime(p) => *p,
            CoefficientField::Rationals => 0,
        }
    }
}

impl Default for CoefficientField {
    fn default() -> Self {
        CoefficientField::Prime(DEFAULT_PRIME)
    }
}

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u64(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_u64(acc, a, m);
        }
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(32003));
        assert!(!is_prime(32001));
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(1));
        assert!(PrimeField::new(15).is_err());
        assert!(PrimeField::new(u64::MAX).is_err());
    }

    #[test]
    fn barrett_matches_naive() {
        for p in [2u64, 3, 32003, 4294967311, (1 << 61) - 1, 4611686018427387847] {
            if !is_prime(p) {
                continue;
            }
            let k = PrimeField::new(p).unwrap();
            let samples = [0, 1, 2, p / 2, p / 3 + 7, p - 2, p - 1];
            for &a in &samples {
                for &b in &samples {
                    let (a, b) = (a % p, b % p);
                    assert_eq!(k.mul(&a, &b), mulmod_u64(a, b, p), "p={p} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn inverses() {
        let k = PrimeField::new(32003).unwrap();
        for a in 1..200u64 {
            let i = k.inv(&a).unwrap();
            assert_eq!(k.mul(&a, &i), 1);
        }
        assert_eq!(k.inv(&0), None);
        assert_eq!(k.from_i64(-1), 32002);
        assert_eq!(k.render(&32002), (true, "1".to_string()));
    }

    #[test]
    fn rationals_lowest_terms() {
        let q = Rationals;
        let a = q.from_fraction(&BigUint::from(4u32), &BigUint::from(6u32)).unwrap();
        assert_eq!(q.render(&a), (false, "2/3".to_string()));
        assert_eq!(q.render(&q.neg(&a)), (true, "2/3".to_string()));
        assert!(q.from_fraction(&BigUint::from(1u32), &BigUint::zero()).is_none());
    }
}
