//! Frobenius powers and Fedder's F-purity test.

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::polyring::{Field, Polynomial};

use super::{check_same, contains, from_polys, product, quotient};

/// `q = p^e` for the characteristic `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrobeniusQuery {
    pub p: u64,
    pub e: u32,
    pub q: u64,
}

impl FrobeniusQuery {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidArgument("Frobenius exponent must be positive".into()));
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q < (1 << 31))
            .ok_or_else(|| Error::InvalidArgument(format!("{p}^{e} is too large")))?;
        Ok(FrobeniusQuery { p, e, q })
    }

    /// Recognises `q` as a power of `p`.
    pub fn from_q(p: u64, q: u64) -> Result<Self> {
        let mut e = 0;
        let mut x = q;
        while x > 1 && x.is_multiple_of(p) {
            x /= p;
            e += 1;
        }
        if x != 1 || e == 0 {
            return Err(Error::InvalidArgument(format!("{q} is not a positive power of {p}")));
        }
        Self::new(p, e)
    }
}

/// `I^[q]`, generated by the `q`-th powers of the generators.
pub fn frobenius_power<F: Field>(ideal: &Ideal<F>, fq: FrobeniusQuery) -> Result<Ideal<F>> {
    let ch = ideal.field().characteristic();
    if ch == 0 {
        return Err(Error::CharacteristicGuard(
            "Frobenius powers need positive characteristic".into(),
        ));
    }
    if ch != fq.p {
        return Err(Error::CharacteristicGuard(format!(
            "ring has characteristic {ch}, query uses {}",
            fq.p
        )));
    }
    let k = ideal.field();
    let gens = ideal
        .gens()
        .iter()
        .map(|g| {
            let terms = g
                .terms()
                .iter()
                .map(|t| Ok((k.pow(&t.coeff, fq.q), t.mono.pow(fq.q as u32)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Polynomial::from_terms(ideal.ring(), terms))
        })
        .collect::<Result<Vec<_>>>()?;
    from_polys(ideal, gens)
}

/// Fedder's criterion: `R/I` is F-pure iff `(I^[p] : I) ⊄ m^[p]`.
pub fn fedder_is_fpure<F: Field>(ideal: &Ideal<F>, p: u64) -> Result<bool> {
    Ok(fedder_witness(ideal, p)?.is_some())
}

/// An element of `(I^[p] : I)` outside `m^[p]`, if one exists.
pub fn fedder_witness<F: Field>(ideal: &Ideal<F>, p: u64) -> Result<Option<Polynomial<F>>> {
    if ideal.gens().iter().any(|g| g.terms().iter().any(|t| t.mono.is_one())) {
        return Err(Error::InvalidArgument("ideal must lie in the maximal ideal".into()));
    }
    let fq = FrobeniusQuery::new(p, 1)?;
    let bracket = frobenius_power(ideal, fq)?;
    let col = quotient(&bracket, ideal)?;
    let pp = p as u32;
    for g in col.gens() {
        let outside = g
            .terms()
            .iter()
            .any(|t| t.mono.exps().iter().all(|&e| e < pp));
        if outside {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

/// `I ⊆ A·B`.
pub fn product_containment<F: Field>(i: &Ideal<F>, a: &Ideal<F>, b: &Ideal<F>) -> Result<bool> {
    check_same(i, a)?;
    check_same(i, b)?;
    contains(&product(a, b)?, i)
}
