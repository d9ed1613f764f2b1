//! 2×3 matrices and their row/column variants.

use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::polyring::{parse_poly_list, Field, Polynomial, RingRef};

/// `[[a1, a2, a3], [b1, b2, b3]]` over a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveMatrix<F: Field> {
    ring: RingRef<F>,
    rows: [[Polynomial<F>; 3]; 2],
}

impl<F: Field> CurveMatrix<F> {
    pub fn new(ring: &RingRef<F>, rows: [[Polynomial<F>; 3]; 2]) -> Result<Self> {
        let rows = rows.try_map_rows(|p| p.with_ring(ring))?;
        Ok(CurveMatrix { ring: ring.clone(), rows })
    }

    /// Parses `a1, a2, a3 | b1, b2, b3`.
    pub fn parse(text: &str, ring: &RingRef<F>) -> Result<Self> {
        let halves: Vec<&str> = text.split('|').collect();
        if halves.len() != 2 {
            return Err(Error::InvalidArgument("a matrix needs two rows separated by '|'".into()));
        }
        let mut rows = Vec::with_capacity(2);
        for h in halves {
            let row = parse_poly_list(h, ring)?;
            let row: [Polynomial<F>; 3] = row
                .try_into()
                .map_err(|_| Error::InvalidArgument("each row needs three entries".into()))?;
            rows.push(row);
        }
        let [top, bottom]: [[Polynomial<F>; 3]; 2] = rows.try_into().expect("two rows");
        Ok(CurveMatrix { ring: ring.clone(), rows: [top, bottom] })
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn rows(&self) -> &[[Polynomial<F>; 3]; 2] {
        &self.rows
    }

    /// `a_i`, 1-based.
    pub fn a(&self, i: usize) -> &Polynomial<F> {
        &self.rows[0][i - 1]
    }

    /// `b_i`, 1-based.
    pub fn b(&self, i: usize) -> &Polynomial<F> {
        &self.rows[1][i - 1]
    }

    /// `(f1, f2, f3) = (a2b3 − a3b2, a3b1 − a1b3, a1b2 − a2b1)`.
    pub fn minors(&self) -> [Polynomial<F>; 3] {
        let m = |i: usize, j: usize| &(self.a(i) * self.b(j)) - &(self.a(j) * self.b(i));
        [m(2, 3), m(3, 1), m(1, 2)]
    }

    pub fn ideal(&self) -> Result<Ideal<F>> {
        Ideal::new(&self.ring, self.minors())
    }

    pub fn is_monomial(&self) -> bool {
        self.rows.iter().flatten().all(|p| p.is_monomial())
    }

    /// Rows swapped when `swap`, then column `j` taken from column `perm[j]`.
    pub fn variant(&self, swap: bool, perm: [usize; 3]) -> Self {
        let (top, bottom) = if swap { (1, 0) } else { (0, 1) };
        let pick = |r: usize| perm.map(|c| self.rows[r][c].clone());
        CurveMatrix { ring: self.ring.clone(), rows: [pick(top), pick(bottom)] }
    }

    /// The 12 row/column variants: identity, then column transpositions,
    /// then 3-cycles, each without and then with the rows swapped.
    pub fn variants(&self) -> Vec<Self> {
        const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
        let mut out = Vec::with_capacity(12);
        for p in PERMS {
            for swap in [false, true] {
                out.push(self.variant(swap, p));
            }
        }
        out
    }
}

trait TryMapRows<F: Field> {
    fn try_map_rows(self, f: impl Fn(&Polynomial<F>) -> Result<Polynomial<F>>) -> Result<[[Polynomial<F>; 3]; 2]>;
}

impl<F: Field> TryMapRows<F> for [[Polynomial<F>; 3]; 2] {
    fn try_map_rows(self, f: impl Fn(&Polynomial<F>) -> Result<Polynomial<F>>) -> Result<[[Polynomial<F>; 3]; 2]> {
        let [r0, r1] = self;
        let row = |r: [Polynomial<F>; 3]| -> Result<[Polynomial<F>; 3]> {
            let [p, q, s] = r;
            Ok([f(&p)?, f(&q)?, f(&s)?])
        };
        Ok([row(r0)?, row(r1)?])
    }
}

impl<F: Field> fmt::Display for CurveMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |r: &[Polynomial<F>; 3]| r.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
        write!(f, "{} | {}", row(&self.rows[0]), row(&self.rows[1]))
    }
}

/// Divisibility conditions on monomial entries that certify a containment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// `a1 | b2·a3`, giving `I^(3) ⊆ I^2`.
    ThreeTwo,
    /// `a1 | b2` and `a2 | b3`, giving `I^(5) ⊆ I^3`.
    FiveThree,
    /// `a1 | b2 | a1²`, `a2 | b3`, and `a3 | b1` or `b1 | a3`, giving `I^(4) ⊆ I^3`.
    FourThree,
}

impl Pattern {
    pub fn containment(self) -> (u32, u32) {
        match self {
            Pattern::ThreeTwo => (3, 2),
            Pattern::FiveThree => (5, 3),
            Pattern::FourThree => (4, 3),
        }
    }

    /// Characteristics in which the pattern's identity does not apply.
    pub fn excluded(self, p: u64) -> bool {
        match self {
            Pattern::ThreeTwo => p == 2 || p == 3,
            Pattern::FiveThree => p == 2 || p == 3,
            Pattern::FourThree => p == 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Pattern::ThreeTwo => "a1 | b2*a3",
            Pattern::FiveThree => "a1 | b2, a2 | b3",
            Pattern::FourThree => "a1 | b2 | a1^2, a2 | b3, a3 ~ b1",
        }
    }

    pub fn matches<F: Field>(self, m: &CurveMatrix<F>) -> bool {
        if !m.is_monomial() {
            return false;
        }
        let d = divides::<F>;
        match self {
            Pattern::ThreeTwo => d(m.a(1), &(m.b(2) * m.a(3))),
            Pattern::FiveThree => d(m.a(1), m.b(2)) && d(m.a(2), m.b(3)),
            Pattern::FourThree => {
                d(m.a(1), m.b(2))
                    && d(m.b(2), &(m.a(1) * m.a(1)))
                    && d(m.a(2), m.b(3))
                    && (d(m.a(3), m.b(1)) || d(m.b(1), m.a(3)))
            }
        }
    }
}

/// Divisibility of monomial entries; zero is divisible by everything.
fn divides<F: Field>(p: &Polynomial<F>, q: &Polynomial<F>) -> bool {
    match (p.leading_monomial(), q.leading_monomial()) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(a), Some(b)) => a.divides(b),
    }
}

/// First of the 12 variants meeting `pattern`.
pub fn normalize_matrix<F: Field>(m: &CurveMatrix<F>, pattern: Pattern) -> Option<CurveMatrix<F>> {
    m.variants().into_iter().find(|v| pattern.matches(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idealops::equal;
    use crate::polyring::{PrimeField, Ring};

    #[test]
    fn minors_and_variants() {
        let r = Ring::xyz(PrimeField::new(32003).unwrap());
        let m = CurveMatrix::parse("x^2, y, z | z, x, y", &r).unwrap();
        let f: Vec<String> = m.minors().iter().map(|p| p.to_string()).collect();
        assert_eq!(f, vec!["y^2 - x*z", "-x^2*y + z^2", "x^3 - y*z"]);
        let i = m.ideal().unwrap();
        for v in m.variants() {
            assert!(equal(&i, &v.ideal().unwrap()).unwrap());
        }
        assert_eq!(m.variants().len(), 12);
    }

    #[test]
    fn normalization_targets() {
        let r = Ring::xyz(PrimeField::new(32003).unwrap());
        let m = CurveMatrix::parse("x^2, y, z | z, x, y", &r).unwrap();
        let n = normalize_matrix(&m, Pattern::FourThree).unwrap();
        assert_eq!(n.to_string(), "x, z, y | y, x^2, z");
        let p = CurveMatrix::parse("z, y^3, x^3 | x, z^2, y^2", &r).unwrap();
        assert_eq!(normalize_matrix(&p, Pattern::ThreeTwo), Some(p.clone()));
        assert!(normalize_matrix(&p, Pattern::FiveThree).is_some());
        assert!(normalize_matrix(&p, Pattern::FourThree).is_none());
    }
}
