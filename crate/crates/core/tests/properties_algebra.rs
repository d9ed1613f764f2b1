use proptest::prelude::*;
use symcontain::groebner::{buchberger, normal_form, s_polynomial, Ideal, ResourceLimits};
use symcontain::polyring::{parse_poly, Field, Monomial, Polynomial, PrimeField, Rationals, Ring, RingRef, TermOrder};
use symcontain::Error;

type RawPoly = Vec<(i64, [u32; 3])>;

/// Exponent triples of total degree at most `degree`, rotated so no
/// variable is favoured by the nesting.
fn exponents(degree: u32) -> impl Strategy<Value = [u32; 3]> {
    (0..=degree)
        .prop_flat_map(move |a| (Just(a), 0..=degree - a))
        .prop_flat_map(move |(a, b)| (Just(a), Just(b), 0..=degree - a - b, 0usize..3))
        .prop_map(|(a, b, c, r)| {
            let mut e = [a, b, c];
            e.rotate_left(r);
            e
        })
}

fn raw_poly(terms: usize, degree: u32) -> impl Strategy<Value = RawPoly> {
    prop::collection::vec((-6i64..=6, exponents(degree)), 0..=terms)
}

fn build<F: Field>(ring: &RingRef<F>, raw: &RawPoly) -> Polynomial<F> {
    let k = ring.field();
    Polynomial::from_terms(ring, raw.iter().map(|(c, e)| (k.from_i64(*c), Monomial::new(e).unwrap())))
}

fn monomial() -> impl Strategy<Value = Monomial> {
    [0u32..6, 0..6, 0..6].prop_map(|e| Monomial::new(&e).unwrap())
}

fn orders() -> Vec<TermOrder> {
    vec![
        TermOrder::Grevlex,
        TermOrder::Lex,
        TermOrder::Elimination(1),
        TermOrder::Elimination(2),
        TermOrder::Weighted(vec![1, 2, 3]),
        TermOrder::Weighted(vec![5, 1, 2]),
    ]
}

fn ring_axioms<F: Field>(ring: &RingRef<F>, f: &RawPoly, g: &RawPoly, h: &RawPoly) -> Result<(), TestCaseError> {
    let (f, g, h) = (build(ring, f), build(ring, g), build(ring, h));
    prop_assert_eq!(&f + &g, &g + &f);
    prop_assert_eq!(&f * &g, &g * &f);
    prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
    prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
    prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
    prop_assert!((&f + &(-&f)).is_zero());
    prop_assert_eq!(&f - &g, &f + &(-&g));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms_mod_p(f in raw_poly(6, 6), g in raw_poly(6, 6), h in raw_poly(6, 6)) {
        ring_axioms(&Ring::xyz(PrimeField::new(32003).unwrap()), &f, &g, &h)?;
        ring_axioms(&Ring::xyz(PrimeField::new(2).unwrap()), &f, &g, &h)?;
    }

    #[test]
    fn ring_axioms_over_q(f in raw_poly(6, 6), g in raw_poly(6, 6), h in raw_poly(6, 6)) {
        ring_axioms(&Ring::xyz(Rationals), &f, &g, &h)?;
    }

    #[test]
    fn order_axioms(a in monomial(), b in monomial(), c in monomial()) {
        let one = Monomial::one(3);
        for o in orders() {
            let ab = o.cmp(&a, &b);
            prop_assert_eq!(ab == std::cmp::Ordering::Equal, a == b, "totality under {}", o);
            prop_assert_eq!(o.cmp(&b, &a), ab.reverse(), "antisymmetry under {}", o);
            prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), ab, "multiplicativity under {}", o);
            prop_assert_ne!(o.cmp(&one, &a), std::cmp::Ordering::Greater, "1 is least under {}", o);
            if ab.is_lt() && o.cmp(&b, &c).is_lt() {
                prop_assert!(o.cmp(&a, &c).is_lt(), "transitivity under {}", o);
            }
        }
    }

    #[test]
    fn parse_round_trip(f in raw_poly(6, 6)) {
        let r = Ring::xyz(PrimeField::new(32003).unwrap());
        let p = build(&r, &f);
        prop_assert_eq!(parse_poly(&p.to_string(), &r).unwrap(), p);
        let q = Ring::xyz(Rationals);
        let p = build(&q, &f);
        let half = p.scale(&Rationals.from_fraction(&1u32.into(), &2u32.into()).unwrap());
        prop_assert_eq!(parse_poly(&half.to_string(), &q).unwrap(), half);
    }

    #[test]
    fn freshman_dream(f in raw_poly(4, 3), g in raw_poly(4, 3), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let r = Ring::xyz(PrimeField::new(p).unwrap());
        let (f, g) = (build(&r, &f), build(&r, &g));
        let e = p as u32;
        prop_assert_eq!((&f + &g).pow(e).unwrap(), &f.pow(e).unwrap() + &g.pow(e).unwrap());
    }
}

fn small_ideal() -> impl Strategy<Value = Vec<RawPoly>> {
    prop::collection::vec(raw_poly(3, 3), 1..=3)
}

fn limits() -> ResourceLimits {
    ResourceLimits { max_steps: 200_000, ..Default::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn groebner_invariants(
        gens in small_ideal(),
        order in prop::sample::select(orders()),
        f in raw_poly(5, 4),
        multipliers in prop::collection::vec(raw_poly(3, 2), 3),
    ) {
        let r = Ring::new(&["x", "y", "z"], PrimeField::new(32003).unwrap(), order).unwrap();
        let gens: Vec<_> = gens.iter().map(|g| build(&r, g)).collect();
        let basis = match buchberger(&r, &gens, &limits()) {
            Err(Error::ResourceLimit(_)) => return Err(TestCaseError::reject("too large")),
            other => other.unwrap(),
        };
        let els = basis.elements();
        for i in 0..els.len() {
            for j in i + 1..els.len() {
                let s = s_polynomial(&els[i], &els[j]).unwrap();
                prop_assert!(normal_form(&s, &basis).unwrap().is_zero());
            }
        }
        let f = build(&r, &f);
        let nf = normal_form(&f, &basis).unwrap();
        prop_assert_eq!(normal_form(&nf, &basis).unwrap(), nf.clone());
        prop_assert!(basis.contains(&(&f - &nf)).unwrap());
        let mut h = Polynomial::zero(&r);
        for (g, m) in gens.iter().zip(&multipliers) {
            h = &h + &(g * &build(&r, m));
        }
        prop_assert!(basis.contains(&h).unwrap());
        for g in &gens {
            prop_assert!(basis.contains(g).unwrap());
        }
    }

    #[test]
    fn reduced_basis_is_unique(gens in small_ideal(), mix in raw_poly(2, 1)) {
        let r = Ring::xyz(PrimeField::new(32003).unwrap());
        let gens: Vec<_> = gens.iter().map(|g| build(&r, g)).collect();
        let mut other = gens.clone();
        let extra = gens.iter().fold(Polynomial::zero(&r), |acc, g| &acc + &(g * &build(&r, &mix)));
        other.push(extra);
        other.reverse();
        let a = match buchberger(&r, &gens, &limits()) {
            Err(Error::ResourceLimit(_)) => return Err(TestCaseError::reject("too large")),
            other => other.unwrap(),
        };
        let b = buchberger(&r, &other, &limits()).unwrap();
        prop_assert_eq!(a.elements(), b.elements());
        let i = Ideal::new(&r, gens).unwrap();
        let c = i.gb().unwrap();
        prop_assert_eq!(c.elements(), a.elements());
    }
}
