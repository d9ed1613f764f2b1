//! Ideals with cached Gröbner bases.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use parking_lot::Mutex;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::polyring::{parse_poly, Field, Monomial, Polynomial, Ring, RingRef, TermOrder};

use super::{buchberger, GroebnerBasis, ResourceLimits};

type GbCache<F> = Arc<Mutex<HashMap<TermOrder, Arc<GroebnerBasis<F>>>>>;

/// A finitely generated ideal. Clones share the basis cache.
#[derive(Clone)]
pub struct Ideal<F: Field> {
    ring: RingRef<F>,
    gens: Vec<Polynomial<F>>,
    limits: ResourceLimits,
    cache: GbCache<F>,
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl<F: Field> fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped and exact duplicates removed.
    pub fn new(ring: &RingRef<F>, gens: impl IntoIterator<Item = Polynomial<F>>) -> Result<Self> {
        let mut out: Vec<Polynomial<F>> = Vec::new();
        for g in gens {
            if !g.ring().same_space(ring) {
                return Err(Error::RingMismatch(format!(
                    "generator {g} is not in the ideal's ring"
                )));
            }
            if g.is_zero() {
                continue;
            }
            let g = g.with_ring(ring)?;
            if !out.contains(&g) {
                out.push(g);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: out,
            limits: ResourceLimits::default(),
            cache: Arc::default(),
        })
    }

    pub fn parse<S: AsRef<str>>(ring: &RingRef<F>, gens: &[S]) -> Result<Self> {
        let polys = gens
            .iter()
            .map(|s| parse_poly(s.as_ref(), ring))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, polys)
    }

    pub fn zero(ring: &RingRef<F>) -> Self {
        Self::new(ring, []).expect("empty ideal")
    }

    pub fn unit(ring: &RingRef<F>) -> Self {
        Self::new(ring, [Polynomial::one(ring)]).expect("unit ideal")
    }

    /// The ideal generated by the listed variables.
    pub fn of_variables(ring: &RingRef<F>, vars: &[usize]) -> Self {
        Self::new(ring, vars.iter().map(|&i| Polynomial::var(ring, i))).expect("variables")
    }

    /// The homogeneous maximal ideal (all variables).
    pub fn maximal(ring: &RingRef<F>) -> Self {
        let all: Vec<usize> = (0..ring.nvars()).collect();
        Self::of_variables(ring, &all)
    }

    pub fn from_monomials(ring: &RingRef<F>, monos: impl IntoIterator<Item = Monomial>) -> Self {
        Self::new(ring, monos.into_iter().map(|m| Polynomial::monomial(ring, m))).expect("monomials")
    }

    /// Same ideal and cache, different limits.
    pub fn with_limits(&self, limits: ResourceLimits) -> Self {
        Ideal { limits, ..self.clone() }
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn limits(&self) -> &ResourceLimits {
        &self.limits
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Every generator is a single term.
    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.is_monomial())
    }

    pub fn monomial_gens(&self) -> Option<Vec<Monomial>> {
        self.gens
            .iter()
            .map(|g| if g.is_monomial() { g.leading_monomial().cloned() } else { None })
            .collect()
    }

    /// Reduced Gröbner basis in the ring's own order.
    pub fn gb(&self) -> Result<Arc<GroebnerBasis<F>>> {
        self.gb_in(self.ring.order())
    }

    pub fn gb_in(&self, order: &TermOrder) -> Result<Arc<GroebnerBasis<F>>> {
        if let Some(b) = self.cache.lock().get(order) {
            return Ok(b.clone());
        }
        let ring = if order == self.ring.order() {
            self.ring.clone()
        } else {
            self.ring.with_order(order.clone())?
        };
        let basis = match self.monomial_gens() {
            Some(monos) => {
                let min = minimalize(monos);
                let mut elems: Vec<Polynomial<F>> =
                    min.into_iter().map(|m| Polynomial::monomial(&ring, m)).collect();
                elems.sort_by(|a, b| {
                    order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
                });
                GroebnerBasis::from_parts(ring, elems, true, None)
            }
            None => buchberger(&ring, &self.gens, &self.limits)?,
        };
        let basis = Arc::new(basis);
        // first write wins
        let mut cache = self.cache.lock();
        Ok(cache.entry(order.clone()).or_insert(basis).clone())
    }

    /// Seeds the cache with a basis computed elsewhere.
    pub fn with_basis(self, basis: GroebnerBasis<F>) -> Result<Self> {
        if !basis.ring().same_space(&self.ring) {
            return Err(Error::RingMismatch("basis lives in another ring".into()));
        }
        self.cache
            .lock()
            .entry(basis.order().clone())
            .or_insert_with(|| Arc::new(basis));
        Ok(self)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        if !f.ring().same_space(&self.ring) {
            return Err(Error::RingMismatch(format!("{f} is not in the ideal's ring")));
        }
        if let Some(monos) = self.monomial_gens() {
            // every term of f must be divisible by a generator
            return Ok(f
                .terms()
                .iter()
                .all(|t| monos.iter().any(|m| m.divides(&t.mono))));
        }
        self.gb()?.contains(f)
    }

    pub fn is_unit(&self) -> Result<bool> {
        if self.gens.iter().any(|g| g.is_constant()) {
            return Ok(true);
        }
        if self.is_monomial() {
            return Ok(false);
        }
        Ok(self.gb()?.is_unit())
    }

    /// The same ideal over a ring with the same variables but another order.
    pub fn in_ring(&self, ring: &RingRef<F>) -> Result<Self> {
        let gens = self.gens.iter().map(|g| g.with_ring(ring)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(ring, gens)?.with_limits(self.limits.clone()))
    }

    /// Stable identifier: a hash of the field, the variables and the sorted
    /// generator texts.
    pub fn fingerprint(&self) -> String {
        let mut texts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        texts.sort();
        let mut h = Sha256::new();
        h.update(self.ring.field().describe().as_bytes());
        h.update(b"\n");
        h.update(self.ring.vars().join(",").as_bytes());
        for t in &texts {
            h.update(b"\n");
            h.update(t.as_bytes());
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Drops monomials divisible by another one and sorts the rest.
pub(crate) fn minimalize(mut monos: Vec<Monomial>) -> Vec<Monomial> {
    monos.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.exps().cmp(b.exps())));
    monos.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in monos {
        if !out.iter().any(|o| o.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// `f ∈ I`.
pub fn ideal_member<F: Field>(f: &Polynomial<F>, ideal: &Ideal<F>) -> Result<bool> {
    ideal.contains(f)
}

/// Order on the ring that keeps the variables listed in `keep` (indices of
/// `ring`) in their original relative order.
fn restricted_order<F: Field>(ring: &Ring<F>, keep: &[usize]) -> TermOrder {
    match ring.order() {
        TermOrder::Weighted(w) => TermOrder::Weighted(keep.iter().map(|&i| w[i]).collect()),
        TermOrder::Lex => TermOrder::Lex,
        _ => TermOrder::Grevlex,
    }
}

/// `I ∩ k[remaining variables]`, returned over the ring of the remaining
/// variables.
pub fn eliminate<F: Field>(ideal: &Ideal<F>, drop: &[usize]) -> Result<Ideal<F>> {
    let ring = ideal.ring();
    let keep: Vec<usize> = (0..ring.nvars()).filter(|i| !drop.contains(i)).collect();
    if keep.is_empty() {
        return Err(Error::InvalidArgument("cannot eliminate every variable".into()));
    }
    let target = ring.permuted(&keep, restricted_order(ring, &keep))?;
    eliminate_into(ideal, drop, &target)
}

/// Like [`eliminate`], mapping the result by variable name into `target`.
pub fn eliminate_into<F: Field>(
    ideal: &Ideal<F>,
    drop: &[usize],
    target: &RingRef<F>,
) -> Result<Ideal<F>> {
    let ring = ideal.ring();
    let n = ring.nvars();
    if drop.iter().any(|&d| d >= n) {
        return Err(Error::InvalidArgument("variable index out of range".into()));
    }
    let mut drop: Vec<usize> = drop.to_vec();
    drop.sort_unstable();
    drop.dedup();
    let k = drop.len();
    let keep: Vec<usize> = (0..n).filter(|i| !drop.contains(i)).collect();
    let positions: Vec<usize> = keep
        .iter()
        .map(|&i| {
            target
                .var_index(&ring.vars()[i])
                .ok_or_else(|| Error::UnknownVariable(ring.vars()[i].clone()))
        })
        .collect::<Result<_>>()?;
    if k == 0 {
        let gens = ideal
            .gens()
            .iter()
            .map(|g| g.embed(target, &(0..n).map(|i| positions[i]).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Ideal::new(target, gens)?.with_limits(ideal.limits.clone()));
    }
    let perm: Vec<usize> = drop.iter().chain(keep.iter()).copied().collect();
    let pring = ring.permuted(&perm, TermOrder::Elimination(k))?;
    let pgens: Vec<Polynomial<F>> = ideal.gens().iter().map(|g| g.permute_into(&pring, &perm)).collect();
    let basis = buchberger(&pring, &pgens, &ideal.limits)?;
    let mut out = Vec::new();
    for g in basis.elements() {
        if g.terms().iter().all(|t| t.mono.exps()[..k].iter().all(|&e| e == 0)) {
            let terms = g.terms().iter().map(|t| {
                let mut e = vec![0u32; target.nvars()];
                for (j, &p) in positions.iter().enumerate() {
                    e[p] = t.mono.exps()[k + j];
                }
                (t.coeff.clone(), Monomial::new(&e).expect("bounded"))
            });
            out.push(Polynomial::from_terms(target, terms));
        }
    }
    Ok(Ideal::new(target, out)?.with_limits(ideal.limits.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{PrimeField, Rationals};

    #[test]
    fn membership_examples() {
        let r = Ring::xyz(Rationals);
        let i = Ideal::parse(&r, &["x*y", "x*z", "y*z"]).unwrap();
        let sq = Ideal::parse(&r, &["x^2*y^2", "x^2*y*z", "x*y^2*z", "x^2*z^2", "x*y*z^2", "y^2*z^2"]).unwrap();
        let xyz = parse_poly("x*y*z", &r).unwrap();
        assert!(!sq.contains(&xyz).unwrap());
        assert!(i.contains(&Polynomial::zero(&r)).unwrap());
        let xy2 = Ideal::parse(&r, &["x^2", "x*y", "y^2"]).unwrap();
        assert!(xy2.contains(&xyz).unwrap());
    }

    #[test]
    fn cusp_by_elimination() {
        let r = Ring::new(&["t", "x", "y"], Rationals, TermOrder::Grevlex).unwrap();
        let i = Ideal::parse(&r, &["x - t^2", "y - t^3"]).unwrap();
        let e = eliminate(&i, &[0]).unwrap();
        assert_eq!(e.ring().vars(), ["x", "y"]);
        let b = e.gb().unwrap();
        assert_eq!(b.elements().len(), 1);
        assert_eq!(b.elements()[0].to_string(), "x^3 - y^2");
    }

    #[test]
    fn free_variable_eliminates_to_zero() {
        let r = Ring::new(&["x", "t"], Rationals, TermOrder::Grevlex).unwrap();
        let i = Ideal::parse(&r, &["x - t"]).unwrap();
        assert!(eliminate(&i, &[1]).unwrap().is_zero());
    }

    #[test]
    fn fingerprint_ignores_generator_order() {
        let r = Ring::xyz(PrimeField::new(32003).unwrap());
        let a = Ideal::parse(&r, &["x", "y^2 - z"]).unwrap();
        let b = Ideal::parse(&r, &["y^2 - z", "x"]).unwrap();
        assert_eq!(a.fingerprint(), b.fingerprint());
        assert_eq!(a.fingerprint().len(), 64);
    }
}
