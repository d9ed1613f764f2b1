//! Built-in example ideals.

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::polyring::{Field, Monomial, Ring, RingRef};

/// `(x(y³−z³), y(z³−x³), z(x³−y³))` in the given three-variable ring.
pub fn fermat<F: Field>(ring: &RingRef<F>) -> Result<Ideal<F>> {
    if ring.nvars() != 3 {
        return Err(Error::Structural("the Fermat ideal lives in three variables".into()));
    }
    let [x, y, z] = [0, 1, 2].map(|i| ring.vars()[i].clone());
    let gens = [
        format!("{x}*{y}^3 - {x}*{z}^3"),
        format!("{y}*{z}^3 - {y}*{x}^3"),
        format!("{z}*{x}^3 - {z}*{y}^3"),
    ];
    Ideal::parse(ring, &gens)
}

pub fn fermat_xyz<F: Field>(field: F) -> Result<Ideal<F>> {
    fermat(&Ring::xyz(field))
}

/// `(x1⋯x̂i⋯xv : i = 1..v)`, the intersection of all `(xi, xj)` with `i ≠ j`.
pub fn monomial_v<F: Field>(ring: &RingRef<F>) -> Result<Ideal<F>> {
    let v = ring.nvars();
    if v < 2 {
        return Err(Error::InvalidArgument("monomial-v needs at least two variables".into()));
    }
    let monos = (0..v).map(|skip| {
        let exps: Vec<u32> = (0..v).map(|i| u32::from(i != skip)).collect();
        Monomial::new(&exps)
    });
    Ok(Ideal::from_monomials(ring, monos.collect::<Result<Vec<_>>>()?))
}

pub fn monomial_v_indexed<F: Field>(v: usize, field: F) -> Result<Ideal<F>> {
    monomial_v(&Ring::indexed(v, field)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::PrimeField;
    use crate::symbolic::{classify, SymbolicKind};

    #[test]
    fn shapes() {
        let k = PrimeField::new(32003).unwrap();
        let f = fermat_xyz(k).unwrap();
        assert_eq!(f.gens().len(), 3);
        assert!(f.gens().iter().all(|g| g.is_homogeneous(&[1, 1, 1])));
        let m = monomial_v_indexed(4, k).unwrap();
        assert_eq!(m.to_string(), "(x2*x3*x4, x1*x3*x4, x1*x2*x4, x1*x2*x3)");
        let c = classify(&m).unwrap();
        assert_eq!((c.kind, c.big_height), (SymbolicKind::SquarefreeMonomial, Some(2)));
    }
}
