use num_rational::Ratio;
use symcontain::groebner::Ideal;
use symcontain::polyring::{PrimeField, Ring};
use symcontain::symbolic::{sweep_table, Outcome, SweepOptions, SymbolicContext};

#[test]
fn fermat_sweep() {
    let r = Ring::xyz(PrimeField::new(32003).unwrap());
    let f = Ideal::parse(&r, &["x*y^3 - x*z^3", "y*z^3 - x^3*y", "x^3*z - y^3*z"]).unwrap();
    let ctx = SymbolicContext::new(&f).unwrap();
    let t = sweep_table(&ctx, &SweepOptions::new(4, 2)).unwrap();
    assert_eq!(t.get(3, 2).unwrap().outcome, Outcome::Fails);
    assert_eq!(t.get(4, 2).unwrap().outcome, Outcome::Holds);
    assert_eq!(t.resurgence_lower, Some(Ratio::new(3, 2)));
}

#[test]
fn p_9_11_14() {
    let r = Ring::xyz(PrimeField::new(32003).unwrap());
    let p = Ideal::parse(&r, &["y^5 - x^3*z^2", "x^4 - y^2*z", "z^3 - x*y^3"]).unwrap();
    let ctx = SymbolicContext::new(&p).unwrap();
    let rep = ctx.check(4, 3).unwrap();
    assert_eq!(rep.outcome, Outcome::Fails);
}
