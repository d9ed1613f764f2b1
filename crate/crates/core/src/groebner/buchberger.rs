//! Buchberger's algorithm with the Gebauer–Möller pair criteria.

use std::collections::BTreeSet;

use crate::error::{Error, LimitKind, Result};
use crate::polyring::{Field, Monomial, Polynomial, RingRef, Term, TermOrder};

use super::{GroebnerBasis, ResourceLimits, Truncation};

/// `p - c * m * g` for term lists sorted descending in `order`.
pub(crate) fn sub_mul<F: Field>(
    k: &F,
    order: &TermOrder,
    p: &[Term<F>],
    c: &F::Elem,
    m: &Monomial,
    g: &[Term<F>],
) -> Vec<Term<F>> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let mut pending: Option<Term<F>> = None;
    loop {
        if pending.is_none() && j < g.len() {
            pending = Some(Term {
                coeff: k.neg(&k.mul(c, &g[j].coeff)),
                mono: g[j].mono.mul(m),
            });
            j += 1;
        }
        match (p.get(i), pending.take()) {
            (None, None) => break,
            (Some(a), None) => {
                out.push(a.clone());
                i += 1;
            }
            (None, Some(b)) => out.push(b),
            (Some(a), Some(b)) => match order.cmp(&a.mono, &b.mono) {
                std::cmp::Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                    pending = Some(b);
                }
                std::cmp::Ordering::Less => out.push(b),
                std::cmp::Ordering::Equal => {
                    let s = k.add(&a.coeff, &b.coeff);
                    if !k.is_zero(&s) {
                        out.push(Term { coeff: s, mono: b.mono });
                    }
                    i += 1;
                }
            },
        }
    }
    out
}

/// A monic basis element with its cached leading data.
#[derive(Clone)]
pub(crate) struct Reducer<F: Field> {
    pub terms: Vec<Term<F>>,
    pub lm: Monomial,
    pub mask: u64,
}

impl<F: Field> Reducer<F> {
    pub fn new(terms: Vec<Term<F>>) -> Self {
        let lm = terms[0].mono.clone();
        let mask = lm.support_mask();
        Reducer { terms, lm, mask }
    }
}

/// Counts reduction steps against the limits.
pub(crate) struct Meter<'a> {
    limits: &'a ResourceLimits,
    steps: u64,
}

impl<'a> Meter<'a> {
    pub fn new(limits: &'a ResourceLimits) -> Self {
        Meter { limits, steps: 0 }
    }

    #[inline]
    pub fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.limits.max_steps {
            return Err(Error::ResourceLimit(LimitKind::Steps));
        }
        if self.steps.is_multiple_of(512) {
            self.limits.check_clock()?;
        }
        Ok(())
    }
}

fn find_divisor<'r, F: Field>(
    reducers: &'r [Reducer<F>],
    active: &[usize],
    m: &Monomial,
) -> Option<&'r Reducer<F>> {
    let mask = m.support_mask();
    active
        .iter()
        .map(|&i| &reducers[i])
        .find(|r| r.mask & !mask == 0 && r.lm.divides(m))
}

/// Full reduction of `f` by the reducers listed in `active`.
pub(crate) fn reduce<F: Field>(
    k: &F,
    order: &TermOrder,
    f: Vec<Term<F>>,
    reducers: &[Reducer<F>],
    active: &[usize],
    meter: &mut Meter<'_>,
) -> Result<Vec<Term<F>>> {
    let mut p = f;
    let mut head = 0;
    let mut rem = Vec::new();
    while head < p.len() {
        match find_divisor(reducers, active, &p[head].mono) {
            Some(r) => {
                meter.tick()?;
                let q = r.lm.divide_into(&p[head].mono).expect("divisor");
                let c = p[head].coeff.clone();
                p = sub_mul(k, order, &p[head + 1..], &c, &q, &r.terms[1..]);
                head = 0;
            }
            None => {
                rem.push(std::mem::replace(
                    &mut p[head],
                    Term { coeff: k.zero(), mono: Monomial::one(0) },
                ));
                head += 1;
            }
        }
    }
    Ok(rem)
}

pub(crate) fn make_monic<F: Field>(k: &F, terms: &mut [Term<F>]) {
    if let Some(first) = terms.first() {
        if k.is_one(&first.coeff) {
            return;
        }
        let inv = k.inv(&first.coeff).expect("nonzero");
        for t in terms.iter_mut() {
            t.coeff = k.mul(&t.coeff, &inv);
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct PairKey {
    sugar: u64,
    degree: u64,
    lcm: smallvec::SmallVec<[u32; 8]>,
    i: usize,
    j: usize,
}

struct State<'a, F: Field> {
    order: TermOrder,
    polys: Vec<Reducer<F>>,
    sugar: Vec<u64>,
    active: Vec<usize>,
    pairs: BTreeSet<PairKey>,
    limits: &'a ResourceLimits,
    truncation: Option<&'a Truncation>,
}

impl<F: Field> State<'_, F> {
    fn pair_key(&self, i: usize, j: usize) -> PairKey {
        let (a, b) = (&self.polys[i].lm, &self.polys[j].lm);
        let lcm = a.lcm(b);
        let d = self.order.degree(&lcm);
        let sugar = (self.sugar[i] + d - self.order.degree(a))
            .max(self.sugar[j] + d - self.order.degree(b));
        PairKey {
            sugar,
            degree: d,
            lcm: lcm.exps().iter().copied().collect(),
            i: i.min(j),
            j: i.max(j),
        }
    }

    fn beyond_truncation(&self, lcm: &Monomial) -> bool {
        match self.truncation {
            Some(t) => lcm.weighted_degree(&t.weights) > t.max_degree,
            None => false,
        }
    }

    /// Gebauer–Möller update after adding polynomial `h`.
    fn update(&mut self, h: usize) -> Result<()> {
        let lh = self.polys[h].lm.clone();
        let lcm_with = |s: &Self, g: usize| lh.lcm(&s.polys[g].lm);

        let mut c: Vec<(usize, Monomial)> =
            self.active.iter().map(|&g| (g, lcm_with(self, g))).collect();
        let mut d: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g1, l1)) = (!c.is_empty()).then(|| c.remove(0)) {
            let coprime = lh.is_coprime(&self.polys[g1].lm);
            let dominated = c.iter().chain(d.iter()).any(|(_, l2)| l2.divides(&l1));
            if coprime || !dominated {
                d.push((g1, l1));
            }
        }
        let new_pairs: Vec<usize> = d
            .into_iter()
            .filter(|(g, l)| !lh.is_coprime(&self.polys[*g].lm) && !self.beyond_truncation(l))
            .map(|(g, _)| g)
            .collect();

        let polys = &self.polys;
        self.pairs.retain(|p| {
            let lij = Monomial::new(&p.lcm).expect("bounded");
            if !lh.divides(&lij) {
                return true;
            }
            lh.lcm(&polys[p.i].lm) == lij || lh.lcm(&polys[p.j].lm) == lij
        });
        for g in new_pairs {
            let key = self.pair_key(g, h);
            self.pairs.insert(key);
        }
        if self.pairs.len() > self.limits.max_pairs {
            return Err(Error::ResourceLimit(LimitKind::Pairs));
        }
        let lh = &self.polys[h].lm;
        let polys = &self.polys;
        self.active.retain(|&g| !lh.divides(&polys[g].lm));
        self.active.push(h);
        Ok(())
    }

    fn add(&mut self, terms: Vec<Term<F>>, sugar: u64) -> Result<()> {
        let deg = terms.iter().map(|t| t.mono.degree()).max().unwrap_or(0);
        if deg > self.limits.max_degree {
            return Err(Error::ResourceLimit(LimitKind::Degree));
        }
        self.polys.push(Reducer::new(terms));
        self.sugar.push(sugar);
        self.update(self.polys.len() - 1)
    }
}

fn sugar_of<F: Field>(order: &TermOrder, terms: &[Term<F>]) -> u64 {
    terms.iter().map(|t| order.degree(&t.mono)).max().unwrap_or(0)
}

/// Reduced Gröbner basis of `gens` in `ring`'s order.
pub fn buchberger<F: Field>(
    ring: &RingRef<F>,
    gens: &[Polynomial<F>],
    limits: &ResourceLimits,
) -> Result<GroebnerBasis<F>> {
    run(ring, gens, limits, None)
}

/// Gröbner basis valid up to `truncation.max_degree` in the given grading.
///
/// The generators must be homogeneous for the grading. Every element of
/// the ideal whose graded degree is at most the bound reduces to zero.
pub fn buchberger_truncated<F: Field>(
    ring: &RingRef<F>,
    gens: &[Polynomial<F>],
    limits: &ResourceLimits,
    truncation: Truncation,
) -> Result<GroebnerBasis<F>> {
    for g in gens {
        if !g.is_homogeneous(&truncation.weights) {
            return Err(Error::InvalidArgument(
                "truncated basis needs generators homogeneous in the grading".into(),
            ));
        }
    }
    run(ring, gens, limits, Some(truncation))
}

fn run<F: Field>(
    ring: &RingRef<F>,
    gens: &[Polynomial<F>],
    limits: &ResourceLimits,
    truncation: Option<Truncation>,
) -> Result<GroebnerBasis<F>> {
    limits.check_clock()?;
    let k = ring.field().clone();
    let order = ring.order().clone();
    let mut meter = Meter::new(limits);

    let mut input: Vec<Vec<Term<F>>> = Vec::new();
    for g in gens {
        if !g.ring().same_space(ring) {
            return Err(Error::RingMismatch("generator outside the basis ring".into()));
        }
        if g.is_zero() {
            continue;
        }
        if let Some(t) = &truncation {
            if g.weighted_degree(&t.weights).unwrap_or(0) > t.max_degree {
                continue;
            }
        }
        input.push(g.with_ring(ring)?.into_terms());
    }
    input.sort_by(|a, b| order.cmp(&a[0].mono, &b[0].mono));

    let mut st = State {
        order: order.clone(),
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: BTreeSet::new(),
        limits,
        truncation: truncation.as_ref(),
    };

    for f in input {
        let sugar = sugar_of(&order, &f);
        let mut h = reduce(&k, &order, f, &st.polys, &st.active, &mut meter)?;
        if h.is_empty() {
            continue;
        }
        make_monic(&k, &mut h);
        st.add(h, sugar)?;
    }

    while let Some(p) = st.pairs.pop_first() {
        let (a, b) = (&st.polys[p.i], &st.polys[p.j]);
        let lcm = Monomial::new(&p.lcm).expect("bounded");
        let qa = a.lm.divide_into(&lcm).expect("lcm");
        let qb = b.lm.divide_into(&lcm).expect("lcm");
        // both monic: S = qa*a - qb*b, leading terms cancel
        let left: Vec<Term<F>> = a.terms[1..]
            .iter()
            .map(|t| Term { coeff: t.coeff.clone(), mono: t.mono.mul(&qa) })
            .collect();
        let s = sub_mul(&k, &order, &left, &k.one(), &qb, &b.terms[1..]);
        meter.tick()?;
        let mut h = reduce(&k, &order, s, &st.polys, &st.active, &mut meter)?;
        if h.is_empty() {
            continue;
        }
        make_monic(&k, &mut h);
        st.add(h, p.sugar)?;
    }

    // interreduce the minimal basis
    let active = st.active.clone();
    let mut out = Vec::with_capacity(active.len());
    for (pos, &i) in active.iter().enumerate() {
        let others: Vec<usize> = active
            .iter()
            .enumerate()
            .filter(|&(q, _)| q != pos)
            .map(|(_, &j)| j)
            .collect();
        let terms = st.polys[i].terms.clone();
        let lead = terms[0].clone();
        let mut tail = reduce(&k, &order, terms[1..].to_vec(), &st.polys, &others, &mut meter)?;
        tail.insert(0, lead);
        out.push(Polynomial::from_sorted_terms(ring, tail));
    }
    out.sort_by(|a, b| {
        order.cmp(
            a.leading_monomial().expect("nonzero"),
            b.leading_monomial().expect("nonzero"),
        )
    });
    Ok(GroebnerBasis::from_parts(ring.clone(), out, true, truncation))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, PrimeField, Rationals, Ring};

    fn gb_strs(ring: &RingRef<Rationals>, gens: &[&str]) -> Vec<String> {
        let gens: Vec<_> = gens.iter().map(|s| parse_poly(s, ring).unwrap()).collect();
        buchberger(ring, &gens, &ResourceLimits::default())
            .unwrap()
            .elements()
            .iter()
            .map(|p| p.to_string())
            .collect()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let r = Ring::xyz(Rationals);
        assert_eq!(gb_strs(&r, &["x*y", "x*z", "y*z"]), ["y*z", "x*z", "x*y"]);
    }

    #[test]
    fn linear_elimination() {
        let r = Ring::xyz(Rationals);
        assert_eq!(gb_strs(&r, &["x + y", "x - y"]), ["y", "x"]);
        let r2 = Ring::xyz(PrimeField::new(2).unwrap());
        let g: Vec<_> = ["x + y", "x - y"].iter().map(|s| parse_poly(s, &r2).unwrap()).collect();
        let b = buchberger(&r2, &g, &ResourceLimits::default()).unwrap();
        assert_eq!(b.elements().len(), 1);
    }

    #[test]
    fn twisted_cubic_basis() {
        let r = Ring::xyz(Rationals);
        let out = gb_strs(&r, &["y^2 - x*z", "x^3 - y*z", "z^2 - x^2*y"]);
        assert_eq!(out, ["y^2 - x*z", "x^2*y - z^2", "x^3 - y*z"]);
    }

    #[test]
    fn degree_cap_is_reported() {
        let r = Ring::xyz(Rationals);
        let gens = vec![parse_poly("x^5 - y", &r).unwrap(), parse_poly("y^7 - z", &r).unwrap()];
        let limits = ResourceLimits { max_degree: 4, ..Default::default() };
        assert_eq!(
            buchberger(&r, &gens, &limits).unwrap_err(),
            Error::ResourceLimit(LimitKind::Degree)
        );
    }
}
