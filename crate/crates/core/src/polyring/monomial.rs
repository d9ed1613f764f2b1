//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exponents are bounded by this value; exceeding it is a hard error.
pub const MAX_EXPONENT: u32 = 1 << 31;

pub type Exponents = SmallVec<[u32; 8]>;

/// A power product `x_1^{e_1} ... x_n^{e_n}` with cached total degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u64,
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn new(exps: &[u32]) -> Result<Self> {
        if exps.iter().any(|&e| e >= MAX_EXPONENT) {
            return Err(Error::ExponentOverflow);
        }
        Ok(Self::from_exps(SmallVec::from_slice(exps)))
    }

    pub(crate) fn from_exps(exps: Exponents) -> Self {
        let degree = exps.iter().map(|&e| e as u64).sum();
        Monomial { exps, degree }
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = e;
        m.degree = e as u64;
        m
    }

    #[inline]
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        if self.nvars() != other.nvars() {
            return Err(Error::Structural(format!(
                "monomial lengths {} and {} differ",
                self.nvars(),
                other.nvars()
            )));
        }
        let mut exps = self.exps.clone();
        for (a, &b) in exps.iter_mut().zip(other.exps.iter()) {
            let s = *a as u64 + b as u64;
            if s >= MAX_EXPONENT as u64 {
                return Err(Error::ExponentOverflow);
            }
            *a = s as u32;
        }
        Ok(Monomial {
            exps,
            degree: self.degree + other.degree,
        })
    }

    /// Product for monomials already known to share a length.
    ///
    /// # Panics
    /// On exponent overflow.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut exps = self.exps.clone();
        for (a, &b) in exps.iter_mut().zip(other.exps.iter()) {
            *a += b;
            assert!(*a < MAX_EXPONENT, "exponent overflow");
        }
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    pub fn pow(&self, n: u32) -> Result<Monomial> {
        let mut exps = self.exps.clone();
        for a in exps.iter_mut() {
            let e = *a as u64 * n as u64;
            if e >= MAX_EXPONENT as u64 {
                return Err(Error::ExponentOverflow);
            }
            *a = e as u32;
        }
        Ok(Monomial::from_exps(exps))
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps: Exponents = other
            .exps
            .iter()
            .zip(self.exps.iter())
            .map(|(a, b)| a - b)
            .collect();
        Some(Monomial {
            exps,
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| a.max(b))
            .collect();
        Monomial::from_exps(exps)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| a.min(b))
            .collect();
        Monomial::from_exps(exps)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Bit signature for fast non-divisibility rejection: bit i is set when
    /// variable `i mod 64` occurs.
    #[inline]
    pub fn support_mask(&self) -> u64 {
        let mut mask = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << (i % 64);
            }
        }
        mask
    }

    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        // new position j holds old variable perm[j]
        let exps: Exponents = perm.iter().map(|&old| self.exps[old]).collect();
        Monomial {
            exps,
            degree: self.degree,
        }
    }
}

/// A monomial order.
///
/// `Weighted` compares the weighted degree and breaks ties reverse
/// lexicographically (the last variable with differing exponent decides, the
/// smaller exponent winning). `Grevlex` is `Weighted` with unit weights.
/// `Elimination(k)` compares the total degree in the first `k` variables and
/// refines by grevlex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub enum TermOrder {
    #[default]
    Grevlex,
    Lex,
    Elimination(usize),
    Weighted(Vec<u32>),
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermOrder::Grevlex => f.write_str("grevlex"),
            TermOrder::Lex => f.write_str("lex"),
            TermOrder::Elimination(k) => write!(f, "elim({k})"),
            TermOrder::Weighted(w) => write!(f, "wrevlex{w:?}"),
        }
    }
}

#[inline]
fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl TermOrder {
    pub fn validate(&self, nvars: usize) -> Result<()> {
        match self {
            TermOrder::Weighted(w) if w.len() != nvars || w.contains(&0) => {
                Err(Error::Structural(format!(
                    "weight vector {w:?} must have {nvars} positive entries"
                )))
            }
            TermOrder::Elimination(k) if *k > nvars => Err(Error::Structural(format!(
                "elimination block {k} larger than {nvars} variables"
            ))),
            _ => Ok(()),
        }
    }

    /// Degree used by the pair-selection strategy.
    #[inline]
    pub fn degree(&self, m: &Monomial) -> u64 {
        match self {
            TermOrder::Weighted(w) => m.weighted_degree(w),
            _ => m.degree(),
        }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Grevlex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| revlex(a.exps(), b.exps())),
            TermOrder::Lex => a.exps().cmp(b.exps()),
            TermOrder::Elimination(k) => {
                let da: u64 = a.exps()[..*k].iter().map(|&e| e as u64).sum();
                let db: u64 = b.exps()[..*k].iter().map(|&e| e as u64).sum();
                da.cmp(&db)
                    .then_with(|| a.degree().cmp(&b.degree()))
                    .then_with(|| revlex(a.exps(), b.exps()))
            }
            TermOrder::Weighted(w) => a
                .weighted_degree(w)
                .cmp(&b.weighted_degree(w))
                .then_with(|| revlex(a.exps(), b.exps())),
        }
    }

    /// Checked comparison for monomials of possibly different lengths.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::Structural(format!(
                "cannot compare monomials of lengths {} and {}",
                a.nvars(),
                b.nvars()
            )));
        }
        Ok(self.cmp(a, b))
    }

    /// The order induced on a ring whose variables were permuted so that new
    /// position j holds old variable `perm[j]`.
    pub fn permuted(&self, perm: &[usize]) -> TermOrder {
        match self {
            TermOrder::Weighted(w) => TermOrder::Weighted(perm.iter().map(|&o| w[o]).collect()),
            other => other.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e).unwrap()
    }

    #[test]
    fn grevlex_examples() {
        let o = TermOrder::Grevlex;
        assert_eq!(o.cmp(&m(&[2, 1, 0]), &m(&[1, 1, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1, 1]), &m(&[1, 1, 1])), Ordering::Equal);
    }

    #[test]
    fn lex_examples() {
        assert_eq!(
            TermOrder::Lex.cmp(&m(&[1, 0, 0]), &m(&[0, 2, 0])),
            Ordering::Greater
        );
    }

    #[test]
    fn length_mismatch_is_structural() {
        let err = TermOrder::Grevlex.compare(&m(&[1, 0]), &m(&[1, 0, 0]));
        assert!(matches!(err, Err(Error::Structural(_))));
    }

    #[test]
    fn elimination_property() {
        let o = TermOrder::Elimination(1);
        // t * 1 beats any pure x,y,z monomial
        assert_eq!(o.cmp(&m(&[1, 0, 0, 0]), &m(&[0, 9, 9, 9])), Ordering::Greater);
    }

    #[test]
    fn overflow_is_error() {
        assert!(Monomial::new(&[MAX_EXPONENT]).is_err());
        let a = m(&[MAX_EXPONENT - 1]);
        assert_eq!(a.checked_mul(&a), Err(Error::ExponentOverflow));
        assert_eq!(a.pow(2), Err(Error::ExponentOverflow));
    }
}
