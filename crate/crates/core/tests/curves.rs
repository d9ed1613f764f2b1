use symcontain::curves::{
    divisibility_criterion, herzog_matrix, is_complete_intersection, normalize_matrix, semigroup_kernel, Certificate,
    CurveMatrix, CurveSpec, Pattern,
};
use symcontain::idealops::equal;
use symcontain::polyring::{Polynomial, PrimeField, Ring};
use symcontain::symbolic::check_containment;

fn k() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

fn pairs(m: &CurveMatrix<PrimeField>) -> Vec<(u32, u32)> {
    let mut v: Vec<_> = divisibility_criterion(m).iter().map(|c| (c.n, c.m)).collect();
    v.sort();
    v
}

#[test]
fn kernels_vanish_on_the_curve() {
    let curve = Ring::curve(k());
    let t = Polynomial::var(&curve, 3);
    for (a, b, c) in [(3, 4, 5), (3, 5, 7), (4, 5, 7), (5, 6, 8), (9, 11, 14)] {
        let spec = CurveSpec::new(a, b, c).unwrap();
        let p = semigroup_kernel(&spec, &k()).unwrap();
        let images = [a, b, c].map(|e| t.pow(e).unwrap());
        for g in p.gens() {
            assert!(g.substitute(&images).unwrap().is_zero());
            assert!(g.is_homogeneous(&[a, b, c]));
        }
    }
}

#[test]
fn complete_intersections() {
    assert!(is_complete_intersection(&CurveSpec::new(2, 3, 5).unwrap(), &k()).unwrap());
    assert!(is_complete_intersection(&CurveSpec::new(4, 6, 9).unwrap(), &k()).unwrap());
    assert!(!is_complete_intersection(&CurveSpec::new(3, 4, 5).unwrap(), &k()).unwrap());
}

#[test]
fn huneke_form_for_457() {
    let h = herzog_matrix(&CurveSpec::new(4, 5, 7).unwrap(), &k()).unwrap();
    let m = h.matrix.unwrap();
    let forms: Vec<String> = m.variants().iter().map(|v| v.to_string()).collect();
    assert!(forms.contains(&"y, z, x | x^2, y^2, z".to_string()), "{forms:?}");
    let huneke = CurveMatrix::parse("y, z, x | x^2, y^2, z", &Ring::xyz(k())).unwrap();
    assert!(pairs(&huneke).contains(&(4, 3)));
    assert!(pairs(&m).contains(&(4, 3)));
}

#[test]
fn criterion_for_9_11_14() {
    let r = Ring::xyz(k());
    let m = CurveMatrix::parse("z, y^3, x^3 | x, z^2, y^2", &r).unwrap();
    assert_eq!(pairs(&m), [(3, 2), (5, 3)]);
    assert_eq!(normalize_matrix(&m, Pattern::ThreeTwo), Some(m.clone()));
    assert!(normalize_matrix(&m, Pattern::FourThree).is_none());
    let identity = normalize_matrix(&m, Pattern::FiveThree).unwrap();
    assert_eq!(normalize_matrix(&identity, Pattern::FiveThree), Some(identity));
}

#[test]
fn no_qualifying_variant() {
    let r = Ring::xyz(k());
    let m = CurveMatrix::parse("x + y, y, z | z, x, y", &r).unwrap();
    assert!(pairs(&m).is_empty());
}

#[test]
fn small_characteristic_certificates() {
    let r = Ring::xyz(PrimeField::new(2).unwrap());
    let m = CurveMatrix::parse("x^2, y, z | z, x, y", &r).unwrap();
    let certs = divisibility_criterion(&m);
    let three_two = certs.iter().find(|c| (c.n, c.m) == (3, 2)).unwrap();
    assert_eq!(three_two.certificate, Certificate::Frobenius { q: 2 });
    assert!(certs.iter().all(|c| (c.n, c.m) != (5, 3)));
    let r = Ring::xyz(PrimeField::new(3).unwrap());
    let m = CurveMatrix::parse("x^2, y, z | z, x, y", &r).unwrap();
    let certs = divisibility_criterion(&m);
    let five_three = certs.iter().find(|c| (c.n, c.m) == (5, 3)).unwrap();
    assert_eq!(five_three.certificate, Certificate::Frobenius { q: 3 });
    assert!(certs.iter().any(|c| (c.n, c.m) == (4, 3)));
}

#[test]
fn variants_preserve_the_ideal() {
    let h = herzog_matrix(&CurveSpec::new(5, 6, 7).unwrap(), &k()).unwrap();
    let m = h.matrix.unwrap();
    for v in m.variants() {
        assert!(equal(&h.kernel, &v.ideal().unwrap()).unwrap());
    }
}

#[test]
fn certificates_are_sound_on_the_corpus() {
    for a in 2..=8u32 {
        for b in a + 1..=8 {
            for c in b + 1..=8 {
                let h = herzog_matrix(&CurveSpec::new(a, b, c).unwrap(), &k()).unwrap();
                let Some(m) = h.matrix else { continue };
                assert!(equal(&h.kernel, &m.ideal().unwrap()).unwrap());
                for cert in divisibility_criterion(&m) {
                    let rep = check_containment(&h.kernel, cert.n, cert.m).unwrap();
                    assert!(rep.outcome.is_holds(), "P({a},{b},{c}) ({}, {})", cert.n, cert.m);
                }
            }
        }
    }
}

// The family P(7n−3, (5n−2)n, 8n−3) with the matrix
// [[y, x^n, x^(2n−1)], [x^n, y^2, z^(2n−1)]]: the matrix minors are not the
// kernel, but the kernel still meets the (4,3) pattern. Kernels use the
// sorted triple, so y and z trade places in the matrix.
#[test]
fn family_checked_against_elimination() {
    let r = Ring::xyz(k());
    for n in [4u32, 5] {
        let spec = CurveSpec::new(7 * n - 3, (5 * n - 2) * n, 8 * n - 3).unwrap();
        let h = herzog_matrix(&spec, &k()).unwrap();
        let text = format!("z, x^{n}, x^{e} | x^{n}, z^2, y^{e}", e = 2 * n - 1);
        let stated = CurveMatrix::parse(&text, &r).unwrap();
        assert!(!equal(&h.kernel, &stated.ideal().unwrap()).unwrap());
        assert!(!stated.minors()[0].is_homogeneous(&spec.exponents()));
        let m = h.matrix.unwrap();
        assert!(pairs(&m).contains(&(4, 3)));
        assert!(check_containment(&h.kernel, 4, 3).unwrap().outcome.is_holds());
    }
}
