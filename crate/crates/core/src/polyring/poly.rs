//! Ring descriptors and sparse polynomials.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};

use super::field::Field;
use super::monomial::{Monomial, TermOrder};

/// Variables, coefficient field and the order polynomials are kept sorted in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring<F: Field> {
    vars: Vec<String>,
    field: F,
    order: TermOrder,
}

pub type RingRef<F> = Arc<Ring<F>>;

fn valid_var_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric())
}

impl<F: Field> Ring<F> {
    pub fn new<S: AsRef<str>>(vars: &[S], field: F, order: TermOrder) -> Result<RingRef<F>> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        if vars.is_empty() {
            return Err(Error::Structural("a ring needs at least one variable".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if !valid_var_name(v) {
                return Err(Error::Structural(format!("invalid variable name \"{v}\"")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Structural(format!("duplicate variable \"{v}\"")));
            }
        }
        order.validate(vars.len())?;
        Ok(Arc::new(Ring { vars, field, order }))
    }

    /// R = k[x,y,z] under grevlex.
    pub fn xyz(field: F) -> RingRef<F> {
        Self::new(&["x", "y", "z"], field, TermOrder::Grevlex).expect("valid ring")
    }

    /// S = k[x,y,z,T1,T2,T3] under grevlex.
    pub fn rees(field: F) -> RingRef<F> {
        Self::new(&["x", "y", "z", "T1", "T2", "T3"], field, TermOrder::Grevlex)
            .expect("valid ring")
    }

    /// k[x,y,z,t], the ring used for monomial-curve kernels.
    pub fn curve(field: F) -> RingRef<F> {
        Self::new(&["x", "y", "z", "t"], field, TermOrder::Grevlex).expect("valid ring")
    }

    /// k[x1..xv].
    pub fn indexed(v: usize, field: F) -> Result<RingRef<F>> {
        let names: Vec<String> = (1..=v).map(|i| format!("x{i}")).collect();
        Self::new(&names, field, TermOrder::Grevlex)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: TermOrder) -> Result<RingRef<F>> {
        order.validate(self.nvars())?;
        Ok(Arc::new(Ring {
            vars: self.vars.clone(),
            field: self.field.clone(),
            order,
        }))
    }

    /// Ring whose position j holds variable `perm[j]` of `self`.
    pub fn permuted(&self, perm: &[usize], order: TermOrder) -> Result<RingRef<F>> {
        let vars: Vec<String> = perm.iter().map(|&i| self.vars[i].clone()).collect();
        Ring::new(&vars, self.field.clone(), order)
    }

    /// Same variables and field; the order may differ.
    pub fn same_space(&self, other: &Ring<F>) -> bool {
        self.vars == other.vars && self.field == other.field
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term<F: Field> {
    pub coeff: F::Elem,
    pub mono: Monomial,
}

/// A polynomial with terms sorted strictly descending in its ring's order.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: RingRef<F>,
    terms: Vec<Term<F>>,
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        if !self.ring.same_space(&other.ring) || self.terms.len() != other.terms.len() {
            return false;
        }
        if self.ring.order == other.ring.order {
            return self.terms == other.terms;
        }
        let mut a = self.terms.clone();
        let mut b = other.terms.clone();
        a.sort_by(|s, t| s.mono.exps().cmp(t.mono.exps()));
        b.sort_by(|s, t| s.mono.exps().cmp(t.mono.exps()));
        a == b
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &RingRef<F>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &RingRef<F>, c: F::Elem) -> Self {
        Self::term(ring, c, Monomial::one(ring.nvars()))
    }

    pub fn one(ring: &RingRef<F>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn var(ring: &RingRef<F>, i: usize) -> Self {
        Self::term(ring, ring.field().one(), Monomial::var(ring.nvars(), i, 1))
    }

    pub fn monomial(ring: &RingRef<F>, mono: Monomial) -> Self {
        Self::term(ring, ring.field().one(), mono)
    }

    pub fn term(ring: &RingRef<F>, coeff: F::Elem, mono: Monomial) -> Self {
        assert_eq!(mono.nvars(), ring.nvars(), "monomial length");
        let terms = if ring.field().is_zero(&coeff) {
            Vec::new()
        } else {
            vec![Term { coeff, mono }]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms(ring: &RingRef<F>, terms: impl IntoIterator<Item = (F::Elem, Monomial)>) -> Self {
        let k = ring.field();
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (c, m) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial length");
            match acc.get_mut(&m) {
                Some(e) => *e = k.add(e, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<Term<F>> = acc
            .into_iter()
            .filter(|(_, c)| !k.is_zero(c))
            .map(|(mono, coeff)| Term { coeff, mono })
            .collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wraps terms that are already sorted, distinct and nonzero.
    pub(crate) fn from_sorted_terms(ring: &RingRef<F>, terms: Vec<Term<F>>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].mono, &w[1].mono).is_gt()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<Term<F>> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn leading_term(&self) -> Option<&Term<F>> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.coeff)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> Option<u64> {
        self.terms.iter().map(|t| t.mono.weighted_degree(weights)).max()
    }

    /// All terms share one weighted degree (zero counts as homogeneous).
    pub fn is_homogeneous(&self, weights: &[u32]) -> bool {
        let mut it = self.terms.iter().map(|t| t.mono.weighted_degree(weights));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring.same_space(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{:?}/{} vs {:?}/{}",
                self.ring.vars,
                self.ring.field.describe(),
                other.ring.vars,
                other.ring.field.describe()
            )))
        }
    }

    /// `other` sorted in `self`'s order.
    fn aligned<'a>(&self, other: &'a Self) -> std::borrow::Cow<'a, [Term<F>]> {
        if self.ring.order == other.ring.order {
            std::borrow::Cow::Borrowed(&other.terms)
        } else {
            let mut t = other.terms.clone();
            let order = self.ring.order();
            t.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
            std::borrow::Cow::Owned(t)
        }
    }

    /// Re-sorts the terms for a ring with the same variables and field.
    pub fn with_ring(&self, ring: &RingRef<F>) -> Result<Self> {
        if !self.ring.same_space(ring) {
            return Err(Error::RingMismatch(format!(
                "{:?} vs {:?}",
                self.ring.vars, ring.vars
            )));
        }
        let mut terms = self.terms.clone();
        let order = ring.order();
        if order != self.ring.order() {
            terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        }
        Ok(Polynomial {
            ring: ring.clone(),
            terms,
        })
    }

    pub fn with_order(&self, order: &TermOrder) -> Result<Self> {
        if order == self.ring.order() {
            return Ok(self.clone());
        }
        self.with_ring(&self.ring.with_order(order.clone())?)
    }

    /// Maps variable i of `self` to variable `positions[i]` of `target`.
    pub fn embed(&self, target: &RingRef<F>, positions: &[usize]) -> Result<Self> {
        if positions.len() != self.ring.nvars() || positions.iter().any(|&p| p >= target.nvars())
        {
            return Err(Error::Structural("bad variable embedding".into()));
        }
        if self.ring.field != target.field {
            return Err(Error::RingMismatch("embedding changes the field".into()));
        }
        let terms = self.terms.iter().map(|t| {
            let mut e = vec![0u32; target.nvars()];
            for (i, &p) in positions.iter().enumerate() {
                e[p] += t.mono.exps()[i];
            }
            (t.coeff.clone(), Monomial::new(&e).expect("exponents already bounded"))
        });
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Embedding by variable name; every variable of `self` must exist in
    /// `target`.
    pub fn embed_by_name(&self, target: &RingRef<F>) -> Result<Self> {
        let positions: Vec<usize> = self
            .ring
            .vars
            .iter()
            .map(|v| target.var_index(v).ok_or_else(|| Error::UnknownVariable(v.clone())))
            .collect::<Result<_>>()?;
        self.embed(target, &positions)
    }

    fn merge(&self, other: &[Term<F>], negate: bool) -> Vec<Term<F>> {
        let k = self.ring.field();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        while i < a.len() && j < other.len() {
            match order.cmp(&a[i].mono, &other[j].mono) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { k.neg(&other[j].coeff) } else { other[j].coeff.clone() };
                    out.push(Term { coeff: c, mono: other[j].mono.clone() });
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        k.sub(&a[i].coeff, &other[j].coeff)
                    } else {
                        k.add(&a[i].coeff, &other[j].coeff)
                    };
                    if !k.is_zero(&c) {
                        out.push(Term { coeff: c, mono: a[i].mono.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &other[j..] {
            let c = if negate { k.neg(&t.coeff) } else { t.coeff.clone() };
            out.push(Term { coeff: c, mono: t.mono.clone() });
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let o = self.aligned(other);
        Ok(Polynomial::from_sorted_terms(&self.ring, self.merge(&o, false)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let o = self.aligned(other);
        Ok(Polynomial::from_sorted_terms(&self.ring, self.merge(&o, true)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let k = self.ring.field();
        let mut products = Vec::with_capacity(self.terms.len() * other.terms.len());
        for s in &self.terms {
            for t in &other.terms {
                products.push((k.mul(&s.coeff, &t.coeff), s.mono.checked_mul(&t.mono)?));
            }
        }
        Ok(Polynomial::from_terms(&self.ring, products))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let k = self.ring.field();
        if k.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: k.mul(&t.coeff, c), mono: t.mono.clone() })
            .collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }

    /// `c * m * self`.
    pub fn mul_term(&self, c: &F::Elem, m: &Monomial) -> Result<Self> {
        let k = self.ring.field();
        if k.is_zero(c) {
            return Ok(Polynomial::zero(&self.ring));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Ok(Term { coeff: k.mul(&t.coeff, c), mono: t.mono.checked_mul(m)? }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_sorted_terms(&self.ring, terms))
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field().inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, mut n: u32) -> Result<Self> {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Divides every term by the monomial `m`; `None` if some term is not
    /// divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        let terms = self
            .terms
            .iter()
            .map(|t| m.divide_into(&t.mono).map(|q| Term { coeff: t.coeff.clone(), mono: q }))
            .collect::<Option<Vec<_>>>()?;
        Some(Polynomial::from_sorted_terms(&self.ring, terms))
    }

    /// Greatest common monomial divisor of all terms.
    pub fn monomial_content(&self) -> Option<Monomial> {
        let mut it = self.terms.iter();
        let first = it.next()?.mono.clone();
        Some(it.fold(first, |g, t| g.gcd(&t.mono)))
    }

    /// `self / g` when `g` divides `self` exactly.
    pub fn div_exact(&self, g: &Self) -> Result<Option<Self>> {
        self.check_ring(g)?;
        let g = g.with_ring(&self.ring)?;
        let Some(lt) = g.leading_term().cloned() else {
            return Err(Error::ZeroInput);
        };
        let k = self.ring.field();
        let inv = k.inv(&lt.coeff).expect("nonzero");
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some(t) = rem.leading_term().cloned() {
            let Some(q) = lt.mono.divide_into(&t.mono) else {
                return Ok(None);
            };
            let c = k.mul(&t.coeff, &inv);
            rem = rem.try_sub(&g.mul_term(&c, &q)?)?;
            quot.push((c, q));
        }
        Ok(Some(Polynomial::from_terms(&self.ring, quot)))
    }

    /// Image under the ring map sending variable i to `images[i]`.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Result<Polynomial<F>> {
        if images.len() != self.ring.nvars() {
            return Err(Error::Structural(format!(
                "{} images for {} variables",
                images.len(),
                self.ring.nvars()
            )));
        }
        let target = images[0].ring().clone();
        for im in images {
            if !im.ring.same_space(&target) {
                return Err(Error::RingMismatch("images live in different rings".into()));
            }
        }
        if target.field != self.ring.field {
            return Err(Error::RingMismatch("substitution changes the field".into()));
        }
        let mut powers: Vec<Vec<Polynomial<F>>> =
            images.iter().map(|im| vec![Polynomial::one(&target), im.with_ring(&target).unwrap()]).collect();
        let mut acc = Polynomial::zero(&target);
        for t in &self.terms {
            let mut prod = Polynomial::constant(&target, t.coeff.clone());
            for (i, &e) in t.mono.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().try_mul(&powers[i][1])?;
                    powers[i].push(next);
                }
                prod = prod.try_mul(&powers[i][e])?;
            }
            acc = acc.try_add(&prod)?;
        }
        Ok(acc)
    }

    /// Renames variables by a permutation: the result lives in `target`,
    /// whose position j holds variable `perm[j]` of `self`'s ring.
    pub fn permute_into(&self, target: &RingRef<F>, perm: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| (t.coeff.clone(), t.mono.permuted(perm)));
        Polynomial::from_terms(target, terms)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<'a, F: Field> $trait<&'a Polynomial<F>> for &'a Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
                self.$try(rhs).expect("polynomial arithmetic")
            }
        }
        impl<F: Field> $trait<Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: Polynomial<F>) -> Polynomial<F> {
                self.$try(&rhs).expect("polynomial arithmetic")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        let k = self.field();
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: k.neg(&t.coeff), mono: t.mono.clone() })
            .collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }
}

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::field::{PrimeField, Rationals};

    #[test]
    fn difference_of_squares_over_q() {
        let r = Ring::xyz(Rationals);
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let lhs = &(&x + &y) * &(&x - &y);
        let rhs = &(&x * &x) - &(&y * &y);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn frobenius_char_two() {
        let r = Ring::xyz(PrimeField::new(2).unwrap());
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let s = &x + &y;
        assert_eq!(&s * &s, &(&x * &x) + &(&y * &y));
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let r = Ring::xyz(Rationals);
        let s = Ring::rees(Rationals);
        let a = Polynomial::var(&r, 0);
        let b = Polynomial::var(&s, 0);
        assert!(matches!(a.try_add(&b), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn equality_ignores_order() {
        let r = Ring::xyz(Rationals);
        let f = &Polynomial::var(&r, 0) + &(&Polynomial::var(&r, 1) * &Polynomial::var(&r, 1));
        let g = f.with_order(&TermOrder::Lex).unwrap();
        assert_eq!(f, g);
        assert_ne!(f.terms()[0].mono, g.terms()[0].mono);
    }

    #[test]
    fn exact_division() {
        let r = Ring::xyz(Rationals);
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let f = &(&x - &y) * &(&(&x * &x) + &y);
        assert_eq!(f.div_exact(&(&x - &y)).unwrap(), Some(&(&x * &x) + &y));
        assert_eq!(f.div_exact(&(&x + &y)).unwrap(), None);
    }

    #[test]
    fn identity_substitution() {
        let r = Ring::xyz(Rationals);
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let z = Polynomial::var(&r, 2);
        let f = &(&x * &y) - &(&z * &z);
        let images = [x, y, z];
        assert_eq!(f.substitute(&images).unwrap(), f);
    }
}
