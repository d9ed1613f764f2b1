//! Sums, products, powers, intersections, quotients and saturations.

pub mod fedder;
pub mod monomial;
mod weights;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, eliminate_into, Ideal};
use crate::polyring::{Field, Monomial, Polynomial, Ring, RingRef, TermOrder};

pub use fedder::{fedder_is_fpure, frobenius_power, product_containment, FrobeniusQuery};
pub use weights::{quasi_homogeneous_weights, WEIGHT_BOUND};


fn check_same<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<()> {
    if i.ring().same_space(j.ring()) {
        Ok(())
    } else {
        Err(Error::RingMismatch(format!("{:?} vs {:?}", i.ring().vars(), j.ring().vars())))
    }
}

fn from_monos<F: Field>(like: &Ideal<F>, monos: Vec<Monomial>) -> Ideal<F> {
    Ideal::from_monomials(like.ring(), monos).with_limits(like.limits().clone())
}

fn from_polys<F: Field>(like: &Ideal<F>, polys: Vec<Polynomial<F>>) -> Result<Ideal<F>> {
    Ok(Ideal::new(like.ring(), polys)?.with_limits(like.limits().clone()))
}

pub fn sum<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Ideal<F>> {
    check_same(i, j)?;
    from_polys(i, i.gens().iter().chain(j.gens()).cloned().collect())
}

/// Pairwise generator products.
pub fn product<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Ideal<F>> {
    check_same(i, j)?;
    if let (Some(a), Some(b)) = (i.monomial_gens(), j.monomial_gens()) {
        return Ok(from_monos(i, monomial::product(&a, &b)));
    }
    let mut out = Vec::with_capacity(i.gens().len() * j.gens().len());
    for f in i.gens() {
        for g in j.gens() {
            out.push(f.try_mul(g)?);
        }
    }
    from_polys(i, out)
}

/// `I^n`, generated by the products over multisets of generators.
pub fn power<F: Field>(i: &Ideal<F>, n: u32) -> Result<Ideal<F>> {
    if n == 0 {
        return Ok(Ideal::unit(i.ring()).with_limits(i.limits().clone()));
    }
    if n == 1 {
        return Ok(i.clone());
    }
    if let Some(a) = i.monomial_gens() {
        return Ok(from_monos(i, monomial::power(&a, n)));
    }
    let gens = i.gens();
    let mut out = Vec::new();
    // products over nondecreasing index sequences
    fn rec<F: Field>(
        gens: &[Polynomial<F>],
        start: usize,
        left: u32,
        acc: &Polynomial<F>,
        out: &mut Vec<Polynomial<F>>,
    ) -> Result<()> {
        if left == 0 {
            out.push(acc.clone());
            return Ok(());
        }
        for k in start..gens.len() {
            rec(gens, k, left - 1, &acc.try_mul(&gens[k])?, out)?;
        }
        Ok(())
    }
    rec(gens, 0, n, &Polynomial::one(i.ring()), &mut out)?;
    from_polys(i, out)
}

/// Every generator of `j` lies in `i`.
pub fn contains<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<bool> {
    check_same(i, j)?;
    Ok(first_outside(i, j)?.is_none())
}

/// The first generator of `j` (in generator order) not in `i`.
pub fn first_outside<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Option<Polynomial<F>>> {
    check_same(i, j)?;
    for g in j.gens() {
        i.limits().check_clock()?;
        if !i.contains(g)? {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

/// Equality as mutual containment.
pub fn equal<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<bool> {
    Ok(contains(i, j)? && contains(j, i)?)
}

fn fresh_name<F: Field>(ring: &Ring<F>, base: &str) -> String {
    let mut name = base.to_string();
    let mut k = 0;
    while ring.var_index(&name).is_some() {
        name = format!("{base}{k}");
        k += 1;
    }
    name
}

/// Ring with one extra variable in front.
fn with_aux_var<F: Field>(ring: &RingRef<F>, name: &str) -> Result<RingRef<F>> {
    let mut vars = vec![name.to_string()];
    vars.extend(ring.vars().iter().cloned());
    Ring::new(&vars, ring.field().clone(), TermOrder::Grevlex)
}

fn lift<F: Field>(f: &Polynomial<F>, target: &RingRef<F>) -> Result<Polynomial<F>> {
    let positions: Vec<usize> = (1..=f.ring().nvars()).collect();
    f.embed(target, &positions)
}

/// `I ∩ J`.
pub fn intersect<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Ideal<F>> {
    check_same(i, j)?;
    if i.is_zero() || j.is_zero() {
        return Ok(Ideal::zero(i.ring()).with_limits(i.limits().clone()));
    }
    if let (Some(a), Some(b)) = (i.monomial_gens(), j.monomial_gens()) {
        return Ok(from_monos(i, monomial::intersect(&a, &b)));
    }
    if i.is_unit()? {
        return Ok(j.with_limits(i.limits().clone()));
    }
    if j.is_unit()? {
        return Ok(i.clone());
    }
    if contains(j, i)? {
        return Ok(i.clone());
    }
    if contains(i, j)? {
        return Ok(j.with_limits(i.limits().clone()));
    }
    intersect_by_elimination(i, j)
}

/// `I ∩ J` through `t·I + (1−t)·J`, eliminating `t`.
pub fn intersect_by_elimination<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Ideal<F>> {
    check_same(i, j)?;
    let ring = i.ring();
    let t = fresh_name(ring, "t");
    let big = with_aux_var(ring, &t)?;
    let tv = Polynomial::var(&big, 0);
    let one_minus_t = &Polynomial::one(&big) - &tv;
    let mut gens = Vec::new();
    for f in i.gens() {
        gens.push(tv.try_mul(&lift(f, &big)?)?);
    }
    for g in j.gens() {
        gens.push(one_minus_t.try_mul(&lift(g, &big)?)?);
    }
    let aux = Ideal::new(&big, gens)?.with_limits(i.limits().clone());
    eliminate_into(&aux, &[0], ring)
}

/// Intersection of a list, folded in input order.
pub fn intersect_all<F: Field>(ideals: &[Ideal<F>]) -> Result<Ideal<F>> {
    let Some(first) = ideals.first() else {
        return Err(Error::InvalidArgument("empty intersection".into()));
    };
    let mut acc = first.clone();
    for j in &ideals[1..] {
        acc = intersect(&acc, j)?;
    }
    Ok(acc)
}

/// Quotient or saturation by the variable `v` of an ideal that is
/// homogeneous for `weights`, read off a basis in weighted reverse
/// lexicographic order with `v` last.
pub fn quotient_by_variable<F: Field>(
    i: &Ideal<F>,
    v: usize,
    weights: &[u32],
    infinite: bool,
) -> Result<Ideal<F>> {
    let ring = i.ring();
    let n = ring.nvars();
    let mut perm: Vec<usize> = (0..n).filter(|&k| k != v).collect();
    perm.push(v);
    let w: Vec<u32> = perm.iter().map(|&k| weights[k]).collect();
    let pring = ring.permuted(&perm, TermOrder::Weighted(w))?;
    let pgens: Vec<Polynomial<F>> = i.gens().iter().map(|g| g.permute_into(&pring, &perm)).collect();
    let basis = buchberger(&pring, &pgens, i.limits())?;
    let mut inverse = vec![0usize; n];
    for (q, &old) in perm.iter().enumerate() {
        inverse[old] = q;
    }
    let mut out = Vec::with_capacity(basis.elements().len());
    for g in basis.elements() {
        let content = g.monomial_content().expect("nonzero");
        let e = content.exps()[n - 1];
        let e = if infinite { e } else { e.min(1) };
        let g = g.div_monomial(&Monomial::var(n, n - 1, e)).expect("content divides");
        out.push(g.permute_into(ring, &inverse));
    }
    from_polys(i, out)
}

/// `(I : g)` for one polynomial.
pub fn quotient_by<F: Field>(i: &Ideal<F>, g: &Polynomial<F>) -> Result<Ideal<F>> {
    if g.is_zero() {
        return Err(Error::ZeroInput);
    }
    if g.is_constant() || i.is_zero() {
        return Ok(i.clone());
    }
    if let (Some(a), true) = (i.monomial_gens(), g.is_monomial()) {
        return Ok(from_monos(i, monomial::quotient(&a, g.leading_monomial().unwrap())));
    }
    if i.contains(g)? {
        return Ok(Ideal::unit(i.ring()).with_limits(i.limits().clone()));
    }
    if g.is_monomial() {
        if let Some(w) = quasi_homogeneous_weights(i) {
            let mut acc = i.clone();
            for (v, &e) in g.leading_monomial().unwrap().exps().iter().enumerate() {
                for _ in 0..e {
                    acc = quotient_by_variable(&acc, v, &w, false)?;
                }
            }
            return Ok(acc);
        }
    }
    quotient_by_elimination(i, g)
}

/// `(I : g) = (I ∩ (g)) / g`.
pub fn quotient_by_elimination<F: Field>(i: &Ideal<F>, g: &Polynomial<F>) -> Result<Ideal<F>> {
    let principal = from_polys(i, vec![g.clone()])?;
    let cap = intersect_by_elimination(i, &principal)?;
    let mut out = Vec::with_capacity(cap.gens().len());
    for h in cap.gens() {
        match h.div_exact(g)? {
            Some(q) => out.push(q),
            None => {
                return Err(Error::Internal(format!(
                    "{h} in the intersection is not divisible by {g}"
                )))
            }
        }
    }
    from_polys(i, out)
}

/// `(I : J) = ∩_g (I : g)` over the generators of `J`.
pub fn quotient<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Ideal<F>> {
    check_same(i, j)?;
    if j.is_zero() {
        return Err(Error::InvalidArgument("quotient by the zero ideal".into()));
    }
    let parts = j
        .gens()
        .iter()
        .map(|g| quotient_by(i, g))
        .collect::<Result<Vec<_>>>()?;
    intersect_all(&parts)
}

/// `(I : g^∞)` by repeated quotients; also returns how many quotient steps
/// were taken before the chain stabilized.
pub fn saturate_iterated<F: Field>(i: &Ideal<F>, g: &Polynomial<F>) -> Result<(Ideal<F>, usize)> {
    let mut acc = i.clone();
    let mut steps = 0;
    loop {
        let next = quotient_by(&acc, g)?;
        steps += 1;
        if contains(&acc, &next)? {
            return Ok((acc, steps));
        }
        acc = next;
    }
}

/// `(I : g^∞)` as `(I + (1 − t·g)) ∩ R`.
pub fn saturate_by_aux<F: Field>(i: &Ideal<F>, g: &Polynomial<F>) -> Result<Ideal<F>> {
    let ring = i.ring();
    let t = fresh_name(ring, "t");
    let big = with_aux_var(ring, &t)?;
    let tv = Polynomial::var(&big, 0);
    let mut gens = i.gens().iter().map(|f| lift(f, &big)).collect::<Result<Vec<_>>>()?;
    gens.push(&Polynomial::one(&big) - &tv.try_mul(&lift(g, &big)?)?);
    let aux = Ideal::new(&big, gens)?.with_limits(i.limits().clone());
    eliminate_into(&aux, &[0], ring)
}

/// `(I : g^∞)` for one polynomial.
pub fn saturate_by<F: Field>(i: &Ideal<F>, g: &Polynomial<F>) -> Result<Ideal<F>> {
    if g.is_zero() {
        return Err(Error::ZeroInput);
    }
    if g.is_constant() || i.is_zero() {
        return Ok(i.clone());
    }
    if let (Some(a), true) = (i.monomial_gens(), g.is_monomial()) {
        return Ok(from_monos(i, monomial::saturate(&a, g.leading_monomial().unwrap())));
    }
    if g.is_monomial() {
        if let Some(w) = quasi_homogeneous_weights(i) {
            let mut acc = i.clone();
            for (v, &e) in g.leading_monomial().unwrap().exps().iter().enumerate() {
                if e > 0 {
                    acc = quotient_by_variable(&acc, v, &w, true)?;
                }
            }
            return Ok(acc);
        }
    }
    Ok(saturate_iterated(i, g)?.0)
}

/// `(I : J^∞) = ∩_g (I : g^∞)` over the generators of `J`.
pub fn saturate<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Ideal<F>> {
    check_same(i, j)?;
    if j.is_zero() {
        return Ok(Ideal::unit(i.ring()).with_limits(i.limits().clone()));
    }
    let parts = j
        .gens()
        .iter()
        .map(|g| saturate_by(i, g))
        .collect::<Result<Vec<_>>>()?;
    intersect_all(&parts)
}

/// The variable of smallest index that is a nonzerodivisor modulo `I`,
/// i.e. with `(I : v) = I`.
pub fn regular_variable<F: Field>(i: &Ideal<F>) -> Result<Option<usize>> {
    for v in 0..i.ring().nvars() {
        let q = quotient_by(i, &Polynomial::var(i.ring(), v))?;
        if contains(i, &q)? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// Reduced Gröbner bases of two ideals in the ring order agree.
pub fn same_reduced_basis<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<bool> {
    check_same(i, j)?;
    let (a, b) = (i.gb()?, j.gb()?);
    Ok(a.elements() == b.elements())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, PrimeField, Rationals};

    fn ring() -> RingRef<PrimeField> {
        Ring::xyz(PrimeField::new(32003).unwrap())
    }

    fn id(r: &RingRef<PrimeField>, g: &[&str]) -> Ideal<PrimeField> {
        Ideal::parse(r, g).unwrap()
    }

    #[test]
    fn powers() {
        let r = ring();
        let sq = power(&id(&r, &["x", "y"]), 2).unwrap();
        assert!(equal(&sq, &id(&r, &["x^2", "x*y", "y^2"])).unwrap());
        assert_eq!(power(&id(&r, &["x*y", "x*z", "y*z"]), 2).unwrap().gens().len(), 6);
        let p = id(&r, &["y^2 - x*z", "x^3 - y*z", "z^2 - x^2*y"]);
        assert_eq!(power(&p, 2).unwrap().gens().len(), 6);
    }

    #[test]
    fn intersections() {
        let r = ring();
        let xy = intersect(&id(&r, &["x"]), &id(&r, &["y"])).unwrap();
        assert!(equal(&xy, &id(&r, &["x*y"])).unwrap());
        let a = id(&r, &["x + y*z", "y^2"]);
        let b = id(&r, &["x - z", "y"]);
        let e = intersect_by_elimination(&a, &b).unwrap();
        for f in e.gens() {
            assert!(a.contains(f).unwrap() && b.contains(f).unwrap());
        }
        let prod = product(&a, &b).unwrap();
        assert!(contains(&e, &prod).unwrap());
    }

    #[test]
    fn quotients() {
        let r = ring();
        let q = quotient(&id(&r, &["x*y"]), &id(&r, &["x"])).unwrap();
        assert!(equal(&q, &id(&r, &["y"])).unwrap());
        let i = id(&r, &["x^2 + y*z", "x*y"]);
        assert!(equal(&quotient(&i, &Ideal::unit(&r)).unwrap(), &i).unwrap());
        let f2 = Ring::xyz(PrimeField::new(2).unwrap());
        let q2 = quotient(&Ideal::parse(&f2, &["x^2", "y^2"]).unwrap(), &Ideal::parse(&f2, &["x", "y"]).unwrap()).unwrap();
        assert!(q2.contains(&parse_poly("x*y", &f2).unwrap()).unwrap());
    }

    #[test]
    fn quotient_routes_agree() {
        let r = ring();
        let p2 = power(&id(&r, &["y^2 - x*z", "x^3 - y*z", "z^2 - x^2*y"]), 2).unwrap();
        let x = parse_poly("x", &r).unwrap();
        let bayer = quotient_by(&p2, &x).unwrap();
        let generic = quotient_by_elimination(&p2, &x).unwrap();
        assert!(equal(&bayer, &generic).unwrap());
    }

    #[test]
    fn saturations() {
        let r = ring();
        let s = saturate(&id(&r, &["x^2*y", "x*z"]), &id(&r, &["x"])).unwrap();
        assert!(equal(&s, &id(&r, &["y", "z"])).unwrap());
        let m = Ideal::maximal(&r);
        let s = saturate(&id(&r, &["x^2", "x*y", "y^3"]), &id(&r, &["x", "y"])).unwrap();
        assert!(s.is_unit().unwrap());
        let sq = power(&id(&r, &["x*y", "x*z", "y*z"]), 2).unwrap();
        let s = saturate(&sq, &m).unwrap();
        assert!(equal(&s, &sum(&sq, &id(&r, &["x*y*z"])).unwrap()).unwrap());
    }

    #[test]
    fn saturation_routes_agree() {
        let r = ring();
        let i = id(&r, &["x^2*y + y^3", "x*z^2 - y^2*z"]);
        let g = parse_poly("x + z", &r).unwrap();
        let (a, _) = saturate_iterated(&i, &g).unwrap();
        let b = saturate_by_aux(&i, &g).unwrap();
        assert!(equal(&a, &b).unwrap());
    }

    #[test]
    fn rationals_work_too() {
        let r = Ring::xyz(Rationals);
        let i = Ideal::parse(&r, &["x^2 - y*z", "x*y"]).unwrap();
        let q = quotient_by(&i, &parse_poly("x", &r).unwrap()).unwrap();
        assert!(contains(&q, &i).unwrap());
    }
}
