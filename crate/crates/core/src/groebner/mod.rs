//! Gröbner bases, normal forms, membership and elimination.

mod buchberger;
mod ideal;

use std::time::{Duration, Instant};

use crate::error::{Error, LimitKind, Result};
use crate::polyring::{Field, Monomial, Polynomial, RingRef, TermOrder};

pub use buchberger::{buchberger, buchberger_truncated};
pub(crate) use buchberger::{make_monic, reduce, Meter, Reducer};
pub use ideal::{eliminate, eliminate_into, ideal_member, Ideal};
pub(crate) use ideal::minimalize as minimalize_monomials;

/// Caps that turn Gröbner blowup into an explicit outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResourceLimits {
    pub max_degree: u64,
    pub max_steps: u64,
    pub max_pairs: usize,
    pub deadline: Option<Instant>,
}

impl Default for ResourceLimits {
    fn default() -> Self {
        ResourceLimits {
            max_degree: 120,
            max_steps: 10_000_000,
            max_pairs: 2_000_000,
            deadline: None,
        }
    }
}

impl ResourceLimits {
    pub fn with_timeout(mut self, d: Duration) -> Self {
        self.deadline = Some(Instant::now() + d);
        self
    }

    pub fn check_clock(&self) -> Result<()> {
        match self.deadline {
            Some(t) if Instant::now() > t => Err(Error::ResourceLimit(LimitKind::WallClock)),
            _ => Ok(()),
        }
    }
}

/// Degree bound for a truncated computation: only elements of weighted
/// degree at most `max_degree` are guaranteed to reduce to zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Truncation {
    pub weights: Vec<u32>,
    pub max_degree: u64,
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: RingRef<F>,
    elements: Vec<Polynomial<F>>,
    reduced: bool,
    truncation: Option<Truncation>,
}

impl<F: Field> GroebnerBasis<F> {
    pub(crate) fn from_parts(
        ring: RingRef<F>,
        elements: Vec<Polynomial<F>>,
        reduced: bool,
        truncation: Option<Truncation>,
    ) -> Self {
        GroebnerBasis { ring, elements, reduced, truncation }
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn order(&self) -> &TermOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<Polynomial<F>> {
        self.elements
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn truncation(&self) -> Option<&Truncation> {
        self.truncation.as_ref()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .filter_map(|g| g.leading_monomial().cloned())
            .collect()
    }

    /// Krull dimension of the quotient, read off the leading monomials:
    /// the size of a largest variable set containing no leading monomial's
    /// support.
    pub fn dimension(&self) -> usize {
        let n = self.ring.nvars();
        if self.is_unit() {
            return 0;
        }
        let supports: Vec<u64> = self
            .leading_monomials()
            .iter()
            .map(|m| {
                m.exps()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .fold(0u64, |acc, (i, _)| acc | (1 << i))
            })
            .collect();
        assert!(n < 64, "dimension check supports fewer than 64 variables");
        (0u64..(1 << n))
            .filter(|&s| supports.iter().all(|&m| m & !s != 0))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Height (codimension) of the ideal.
    pub fn height(&self) -> usize {
        self.ring.nvars() - self.dimension()
    }

    fn reducers(&self) -> Vec<Reducer<F>> {
        self.elements
            .iter()
            .map(|g| {
                let mut t = g.terms().to_vec();
                make_monic(self.ring.field(), &mut t);
                Reducer::new(t)
            })
            .collect()
    }

    /// Remainder of `f`; `f` must use the basis order.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        normal_form(f, self)
    }

    /// Membership of `f`, converting it to the basis order if necessary.
    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        if let Some(t) = &self.truncation {
            if f.weighted_degree(&t.weights).unwrap_or(0) > t.max_degree {
                return Err(Error::InvalidArgument(
                    "element lies beyond the truncation degree".into(),
                ));
            }
        }
        let f = f.with_ring(&self.ring)?;
        Ok(self.normal_form(&f)?.is_zero())
    }
}

/// Fully reduced remainder of `f` modulo `basis`.
pub fn normal_form<F: Field>(f: &Polynomial<F>, basis: &GroebnerBasis<F>) -> Result<Polynomial<F>> {
    if !f.ring().same_space(&basis.ring) {
        return Err(Error::RingMismatch("polynomial and basis live in different rings".into()));
    }
    if f.ring().order() != basis.order() {
        return Err(Error::OrderMismatch {
            basis: basis.order().to_string(),
            input: f.ring().order().to_string(),
        });
    }
    let reducers = basis.reducers();
    let active: Vec<usize> = (0..reducers.len()).collect();
    let unlimited = ResourceLimits {
        max_steps: u64::MAX,
        ..ResourceLimits::default()
    };
    let mut meter = Meter::new(&unlimited);
    let rem = reduce(
        basis.ring.field(),
        basis.order(),
        f.terms().to_vec(),
        &reducers,
        &active,
        &mut meter,
    )?;
    Ok(Polynomial::from_sorted_terms(&basis.ring, rem))
}

/// `(lcm/lt(f))·f − (lcm/lt(g))·g`.
pub fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Result<Polynomial<F>> {
    let (Some(tf), Some(tg)) = (f.leading_term(), g.leading_term()) else {
        return Err(Error::ZeroInput);
    };
    let g = g.with_ring(f.ring())?;
    let k = f.field();
    let lcm = tf.mono.lcm(&tg.mono);
    let qf = tf.mono.divide_into(&lcm).expect("lcm");
    let qg = tg.mono.divide_into(&lcm).expect("lcm");
    let cf = k.inv(&tf.coeff).expect("nonzero");
    let cg = k.inv(&tg.coeff).expect("nonzero");
    let a = f.mul_term(&cf, &qf)?;
    let b = g.mul_term(&cg, &qg)?;
    a.try_sub(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, Rationals, Ring};

    #[test]
    fn s_polynomial_examples() {
        let r = Ring::xyz(Rationals);
        let p = |s| parse_poly(s, &r).unwrap();
        assert_eq!(
            s_polynomial(&p("x^2 - y"), &p("x*y - z")).unwrap(),
            p("x*z - y^2")
        );
        assert!(s_polynomial(&p("x"), &p("y")).unwrap().is_zero());
        assert!(s_polynomial(&p("x + y"), &p("x + y")).unwrap().is_zero());
        assert_eq!(
            s_polynomial(&p("x"), &Polynomial::zero(&r)),
            Err(Error::ZeroInput)
        );
    }

    #[test]
    fn normal_form_one_step_lex() {
        let r = Ring::new(&["x", "y"], Rationals, TermOrder::Lex).unwrap();
        let g = parse_poly("x^2 - y", &r).unwrap();
        let b = buchberger(&r, std::slice::from_ref(&g), &ResourceLimits::default()).unwrap();
        assert_eq!(b.normal_form(&parse_poly("x^2", &r).unwrap()).unwrap().to_string(), "y");
        assert!(b.normal_form(&g).unwrap().is_zero());
        let other = g.with_order(&TermOrder::Grevlex).unwrap();
        assert!(matches!(b.normal_form(&other), Err(Error::OrderMismatch { .. })));
    }

    #[test]
    fn dimension_of_curve() {
        let r = Ring::xyz(Rationals);
        let g: Vec<_> = ["y^2 - x*z", "x^3 - y*z", "z^2 - x^2*y"]
            .iter()
            .map(|s| parse_poly(s, &r).unwrap())
            .collect();
        let b = buchberger(&r, &g, &ResourceLimits::default()).unwrap();
        assert_eq!(b.dimension(), 1);
        assert_eq!(b.height(), 2);
    }
}
