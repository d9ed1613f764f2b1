use num_bigint::BigUint;
use symcontain::criterion::{
    build_context, build_h, build_v, build_v_with, column_member, commutation_defects, decide,
    derivation_variant_member, representative_member, t_monomials, CriterionContext, Lift, Mode,
};
use symcontain::curves::{herzog_matrix, CurveMatrix, CurveSpec};
use symcontain::polyring::{PrimeField, Ring};
use symcontain::symbolic::check_containment;

fn k() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

fn ctx(text: &str) -> CriterionContext<PrimeField> {
    build_context(&CurveMatrix::parse(text, &Ring::xyz(k())).unwrap()).unwrap()
}

fn curve_ctx(a: u32, b: u32, c: u32) -> Option<CriterionContext<PrimeField>> {
    let h = herzog_matrix(&CurveSpec::new(a, b, c).unwrap(), &k()).unwrap();
    h.matrix.map(|m| build_context(&m).unwrap())
}

#[test]
fn h3_matches_displayed_matrix() {
    let c = ctx("z, y^3, x^3 | x, z^2, y^2");
    let h = build_h(&c, 3).unwrap();
    let m = c.matrix();
    let a = |i| m.a(i).to_string();
    let b = |i| m.b(i).to_string();
    let z = || "0".to_string();
    let expect = [
        [a(1), a(2), a(3), z(), z(), z(), b(1), b(2), b(3), z(), z(), z()],
        [z(), a(1), z(), a(2), a(3), z(), z(), b(1), z(), b(2), b(3), z()],
        [z(), z(), a(1), z(), a(2), a(3), z(), z(), b(1), z(), b(2), b(3)],
    ];
    assert_eq!(h.shape(), (3, 12));
    for (r, row) in expect.iter().enumerate() {
        for (col, e) in row.iter().enumerate() {
            assert_eq!(&h.entry(r, col).to_string(), e, "entry ({r}, {col})");
        }
    }
    let text = h.to_string();
    assert!(text.contains("T1^2 a") && text.contains("T3^2 b"));
}

#[test]
fn strand_shapes() {
    let c = ctx("x^2, y, z | z, x, y");
    let h2 = build_h(&c, 2).unwrap();
    assert_eq!(h2.shape(), (1, 6));
    let row: Vec<String> = (0..6).map(|j| h2.entry(0, j).to_string()).collect();
    assert_eq!(row, ["x^2", "y", "z", "z", "x", "y"]);
    assert_eq!(build_h(&c, 5).unwrap().shape(), (10, 30));
    for n in 3..8 {
        let h = build_h(&c, n).unwrap();
        for col in 0..h.shape().1 {
            let nz = (0..h.shape().0).filter(|&r| !h.entry(r, col).is_zero()).count();
            assert!(nz <= 3);
        }
    }
}

#[test]
fn v53_matches_displayed_vectors() {
    let c = ctx("x^2, y, z | z, x, y");
    let v = build_v(&c, 5, 3).unwrap();
    let col = |j: usize| -> Vec<String> {
        v.column(j).iter().map(|e| e.map_or("0".to_string(), |e| e.to_string())).collect()
    };
    assert_eq!(col(0), ["f1^2", "2*f1*f2", "2*f1*f3", "f2^2", "2*f2*f3", "f3^2", "0", "0", "0", "0"]);
    assert_eq!(col(1), ["0", "f1^2", "0", "2*f1*f2", "2*f1*f3", "0", "f2^2", "2*f2*f3", "f3^2", "0"]);
    assert_eq!(col(2), ["0", "0", "f1^2", "0", "2*f1*f2", "2*f1*f3", "0", "f2^2", "2*f2*f3", "f3^2"]);
    let v32 = build_v(&c, 3, 2).unwrap();
    let col: Vec<String> = v32.column(0).iter().map(|e| e.unwrap().to_string()).collect();
    assert_eq!(col, ["f1", "f2", "f3"]);
}

#[test]
fn multinomial_and_derivation_sums() {
    let c = ctx("x^2, y, z | z, x, y");
    for n in 3..=7u32 {
        for m in 2..n {
            let v = build_v(&c, n, m).unwrap();
            let d = build_v_with(&c, n, m, Lift::Derivation).unwrap();
            let ratio: BigUint = (m + 1..=n).map(BigUint::from).product();
            for j in 0..v.cols.len() {
                assert_eq!(v.column_sum(j), BigUint::from(3u32).pow(n - m));
                assert_eq!(d.column_sum(j), ratio);
            }
        }
    }
    assert_eq!(build_v(&c, 4, 2).unwrap().column_sum(0), BigUint::from(9u32));
    assert_eq!(build_v_with(&c, 4, 3, Lift::Derivation).unwrap().column_sum(0), BigUint::from(4u32));
}

#[test]
fn commutation_identity() {
    for (a, b, cc) in [(3, 4, 5), (3, 5, 7), (4, 5, 7), (5, 6, 7), (9, 11, 14)] {
        let c = curve_ctx(a, b, cc).unwrap();
        for n in 3..=6 {
            assert!(commutation_defects(&c, n, Lift::Derivation).unwrap().is_empty());
            let d = commutation_defects(&c, n, Lift::Multinomial).unwrap();
            assert!(!d.is_empty(), "P({a},{b},{cc}) n={n}");
        }
    }
}

#[test]
fn d_lift_defect_is_a_boundary_term() {
    let c = ctx("x^2, y, z | z, x, y");
    let d = commutation_defects(&c, 3, Lift::Multinomial).unwrap();
    let first = &d[0];
    assert_eq!(first.row.exps(), &[1, 0, 0]);
    // a2·f2·T1 + a3·f3·T1 = −a1·f1·T1 for the row T1 and the α copy
    let expect = c.minor_in_s(0).try_mul(&c.t_monomial(&first.row).unwrap()).unwrap();
    let a1 = c.f().terms().iter().find(|t| t.mono.exps()[3] == 1).unwrap().mono.exps()[..3].to_vec();
    assert_eq!(a1, [2, 0, 0]);
    let x2 = symcontain::polyring::parse_poly("x^2", c.s_ring()).unwrap();
    assert_eq!(first.difference, -x2.try_mul(&expect).unwrap());
}

#[test]
fn four_vector_equivalence_for_32() {
    for (a, b, cc) in [(3, 4, 5), (3, 5, 7), (9, 11, 14), (5, 7, 8)] {
        let Some(c) = curve_ctx(a, b, cc) else { continue };
        let full = column_member(&c, 3, 2, [0, 0, 0], Lift::Multinomial).unwrap();
        for uvw in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
            assert_eq!(representative_member(&c, 3, 2, [0, 0, 0], uvw).unwrap(), full);
        }
    }
}

#[test]
fn criterion_agrees_with_oracle() {
    let mut checked = 0;
    for a in 2..=8u32 {
        for b in a + 1..=8 {
            for cc in b + 1..=8 {
                let Some(c) = curve_ctx(a, b, cc) else { continue };
                let ideal = c.matrix().ideal().unwrap();
                for (n, m) in [(3, 2), (4, 3), (5, 3)] {
                    let crit = decide(&c, n, m, Mode::Deterministic).unwrap();
                    let oracle = check_containment(&ideal, n, m).unwrap();
                    assert_eq!(crit.outcome, oracle.outcome, "P({a},{b},{cc}) ({n},{m})");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked >= 21, "{checked}");
}

#[test]
fn exhaustive_matches_deterministic() {
    for (a, b, cc) in [(3, 4, 5), (4, 5, 7), (9, 11, 14)] {
        let c = curve_ctx(a, b, cc).unwrap();
        for (n, m) in [(3, 2), (4, 3), (5, 3)] {
            let d = decide(&c, n, m, Mode::Deterministic).unwrap();
            let e = decide(&c, n, m, Mode::Exhaustive).unwrap();
            assert_eq!(d.outcome, e.outcome);
        }
    }
}

#[test]
fn derivation_columns_agree_with_representatives() {
    let c = curve_ctx(9, 11, 14).unwrap();
    for (n, m) in [(3, 2), (4, 3), (5, 3)] {
        for ijk in t_monomials(m - 2) {
            let ijk = [ijk.exps()[0], ijk.exps()[1], ijk.exps()[2]];
            let rep = representative_member(&c, n, m, ijk, [n - m, 0, 0]).unwrap();
            assert_eq!(derivation_variant_member(&c, n, m, ijk).unwrap(), rep);
            assert_eq!(column_member(&c, n, m, ijk, Lift::Multinomial).unwrap(), rep);
        }
    }
}

#[test]
fn characteristic_three() {
    let r = Ring::xyz(PrimeField::new(3).unwrap());
    let m = CurveMatrix::parse("x^2, y, z | z, x, y", &r).unwrap();
    let c = build_context(&m).unwrap();
    assert!(decide(&c, 4, 3, Mode::Deterministic).unwrap().outcome.is_holds());
    assert!(matches!(
        decide(&c, 6, 3, Mode::Deterministic),
        Err(symcontain::Error::CharacteristicGuard(_))
    ));
}

#[test]
fn known_verdicts() {
    let c = curve_ctx(4, 5, 7).unwrap();
    assert!(decide(&c, 4, 3, Mode::Deterministic).unwrap().outcome.is_holds());
    assert!(decide(&c, 5, 1, Mode::Deterministic).unwrap().outcome.is_holds());
    let c = curve_ctx(9, 11, 14).unwrap();
    assert!(decide(&c, 4, 3, Mode::Deterministic).unwrap().outcome.is_fails());
    assert!(decide(&c, 3, 2, Mode::Deterministic).unwrap().outcome.is_holds());
}
