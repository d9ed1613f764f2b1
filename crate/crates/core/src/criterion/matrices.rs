//! The strand matrices `H_n` and the lift matrices `V_{n,m}`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyring::{format_monomial, Field, Monomial, Polynomial};

use super::CriterionContext;

/// Copy of the free module a column of `H_n` belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Alpha,
    Beta,
}

impl Tag {
    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Alpha => "a",
            Tag::Beta => "b",
        }
    }
}

/// Monomials of degree `d` in `T1, T2, T3`, lex-descending.
pub fn t_monomials(d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push(Monomial::new(&[i, j, d - i - j]).expect("small exponents"));
        }
    }
    out
}

fn t_names() -> [String; 3] {
    ["T1".into(), "T2".into(), "T3".into()]
}

/// `T1^2*T2`, or `1` for the empty monomial.
pub fn t_label(m: &Monomial) -> String {
    format_monomial(&t_names(), m)
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `H_n`: rows indexed by T-monomials of degree `n − 2`, columns by pairs
/// (T-monomial of degree `n − 1`, α or β).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrandMatrix<F: Field> {
    pub n: u32,
    pub rows: Vec<Monomial>,
    pub cols: Vec<(Monomial, Tag)>,
    pub entries: Vec<Vec<Polynomial<F>>>,
}

impl<F: Field> StrandMatrix<F> {
    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.cols.len())
    }

    pub fn entry(&self, row: usize, col: usize) -> &Polynomial<F> {
        &self.entries[row][col]
    }
}

pub fn build_h<F: Field>(ctx: &CriterionContext<F>, n: u32) -> Result<StrandMatrix<F>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("strand degree must be at least 2, got {n}")));
    }
    let rows = t_monomials(n - 2);
    let mut cols = Vec::new();
    for tag in [Tag::Alpha, Tag::Beta] {
        cols.extend(t_monomials(n - 1).into_iter().map(|m| (m, tag)));
    }
    debug_assert_eq!(rows.len() as u64, binomial(n as u64, 2));
    let zero = Polynomial::zero(ctx.matrix().ring());
    let entries = rows
        .iter()
        .map(|mu| {
            cols.iter()
                .map(|(nu, tag)| {
                    let l = (0..3).find(|&l| mu.mul(&Monomial::var(3, l, 1)) == *nu);
                    match (l, tag) {
                        (Some(l), Tag::Alpha) => ctx.matrix().a(l + 1).clone(),
                        (Some(l), Tag::Beta) => ctx.matrix().b(l + 1).clone(),
                        (None, _) => zero.clone(),
                    }
                })
                .collect()
        })
        .collect();
    Ok(StrandMatrix { n, rows, cols, entries })
}

impl<F: Field> fmt::Display for StrandMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let header: Vec<String> =
            self.cols.iter().map(|(m, t)| format!("{} {}", t_label(m), t.as_str())).collect();
        let body: Vec<Vec<String>> =
            self.entries.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
        let rows: Vec<String> = self.rows.iter().map(t_label).collect();
        write_grid(f, &header, &rows, &body)
    }
}

fn write_grid(f: &mut fmt::Formatter<'_>, header: &[String], rows: &[String], body: &[Vec<String>]) -> fmt::Result {
    let lead = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..header.len())
        .map(|c| body.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap_or(0))
        .collect();
    write!(f, "{:lead$}", "")?;
    for (h, w) in header.iter().zip(&widths) {
        write!(f, "  {h:>w$}")?;
    }
    writeln!(f)?;
    for (label, r) in rows.iter().zip(body) {
        write!(f, "{label:lead$}")?;
        for (e, w) in r.iter().zip(&widths) {
            write!(f, "  {e:>w$}")?;
        }
        writeln!(f)?;
    }
    Ok(())
}

/// Which lift of the inclusions `I^n ⊆ I^(n−1)` builds `V_{n,m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lift {
    /// `f1 D1 + f2 D2 + f3 D3` with `D_l` lowering the exponent of `T_l`.
    Multinomial,
    /// `f1 ∂/∂T1 + f2 ∂/∂T2 + f3 ∂/∂T3`.
    Derivation,
}

impl Lift {
    pub fn as_str(self) -> &'static str {
        match self {
            Lift::Multinomial => "multinomial",
            Lift::Derivation => "derivation",
        }
    }
}

/// `coeff · f1^u f2^v f3^w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftEntry {
    pub coeff: BigUint,
    pub u: u32,
    pub v: u32,
    pub w: u32,
}

impl fmt::Display for LiftEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.coeff.is_one() {
            parts.push(self.coeff.to_string());
        }
        for (name, e) in [("f1", self.u), ("f2", self.v), ("f3", self.w)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        f.write_str(&parts.join("*"))
    }
}

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

fn falling(top: u32, len: u32) -> BigUint {
    (0..len).fold(BigUint::one(), |acc, i| acc * (top - i))
}

/// `V_{n,m}`: columns indexed by T-monomials of degree `m − 2`, rows by
/// T-monomials of degree `n − 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftMatrix {
    pub n: u32,
    pub m: u32,
    pub lift: Lift,
    pub rows: Vec<Monomial>,
    pub cols: Vec<Monomial>,
    pub entries: Vec<Vec<Option<LiftEntry>>>,
}

impl LiftMatrix {
    pub fn column(&self, c: usize) -> Vec<Option<&LiftEntry>> {
        self.entries.iter().map(|r| r[c].as_ref()).collect()
    }

    pub fn column_sum(&self, c: usize) -> BigUint {
        self.entries.iter().filter_map(|r| r[c].as_ref()).fold(BigUint::zero(), |acc, e| acc + &e.coeff)
    }

    /// Column `c` as an element of `S` of T-degree `n − 2`.
    pub fn column_element<F: Field>(&self, ctx: &CriterionContext<F>, c: usize) -> Result<Polynomial<F>> {
        let mut acc = Polynomial::zero(ctx.s_ring());
        for (r, row) in self.entries.iter().enumerate() {
            if let Some(e) = &row[c] {
                let k = ctx.s_ring().field().from_biguint(&e.coeff);
                let term = ctx.target(&[e.u, e.v, e.w], &self.rows[r])?.scale(&k);
                acc = acc.try_add(&term)?;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for LiftMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let header: Vec<String> = self.cols.iter().map(t_label).collect();
        let rows: Vec<String> = self.rows.iter().map(t_label).collect();
        let body: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|e| e.as_ref().map_or("0".into(), |e| e.to_string())).collect())
            .collect();
        write_grid(f, &header, &rows, &body)
    }
}

pub fn build_v<F: Field>(ctx: &CriterionContext<F>, n: u32, m: u32) -> Result<LiftMatrix> {
    build_v_with(ctx, n, m, Lift::Multinomial)
}

pub fn build_v_with<F: Field>(_ctx: &CriterionContext<F>, n: u32, m: u32, lift: Lift) -> Result<LiftMatrix> {
    if !(n > m && m >= 2) {
        return Err(Error::InvalidArgument(format!("lift matrix needs n > m ≥ 2, got ({n}, {m})")));
    }
    let rows = t_monomials(n - 2);
    let cols = t_monomials(m - 2);
    let d = n - m;
    let mut entries = vec![vec![None; cols.len()]; rows.len()];
    for (c, col) in cols.iter().enumerate() {
        let [i, j, k] = [col.exps()[0], col.exps()[1], col.exps()[2]];
        for (r, row) in rows.iter().enumerate() {
            let e = row.exps();
            if e[0] < i || e[1] < j || e[2] < k {
                continue;
            }
            let (u, v, w) = (e[0] - i, e[1] - j, e[2] - k);
            let mut coeff = factorial(d) / (factorial(u) * factorial(v) * factorial(w));
            if lift == Lift::Derivation {
                coeff *= falling(e[0], u) * falling(e[1], v) * falling(e[2], w);
            }
            entries[r][c] = Some(LiftEntry { coeff, u, v, w });
        }
    }
    Ok(LiftMatrix { n, m, lift, rows, cols, entries })
}

/// One violation of `L(F·P) = F·L(P)` (or the same with `G`) for a
/// T-monomial `P` of degree `n − 2`.
#[derive(Clone, Debug)]
pub struct CommutationDefect<F: Field> {
    pub row: Monomial,
    pub tag: Tag,
    pub difference: Polynomial<F>,
}

/// Applies a lift operator to an element of `S`.
pub fn apply_lift<F: Field>(ctx: &CriterionContext<F>, p: &Polynomial<F>, lift: Lift) -> Result<Polynomial<F>> {
    let s = ctx.s_ring();
    let k = s.field();
    let mut acc = Polynomial::zero(s);
    for t in p.terms() {
        let e = t.mono.exps();
        for l in 0..3 {
            let el = e[3 + l];
            if el == 0 {
                continue;
            }
            let mut lowered = e.to_vec();
            lowered[3 + l] -= 1;
            let c = match lift {
                Lift::Multinomial => t.coeff.clone(),
                Lift::Derivation => k.mul(&t.coeff, &k.from_i64(el as i64)),
            };
            let piece = ctx.minor_in_s(l).mul_term(&c, &Monomial::new(&lowered)?)?;
            acc = acc.try_add(&piece)?;
        }
    }
    Ok(acc)
}

/// Checks `D_{n−1} ∘ φ(n) = φ(n−1) ∘ D_{n−2}` column by column; `φ(n)` sends
/// the basis element `P` to `(F·P, G·P)`.
pub fn commutation_defects<F: Field>(
    ctx: &CriterionContext<F>,
    n: u32,
    lift: Lift,
) -> Result<Vec<CommutationDefect<F>>> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("commutation needs n ≥ 3, got {n}")));
    }
    let mut out = Vec::new();
    for row in t_monomials(n - 2) {
        let p = ctx.t_monomial(&row)?;
        let lp = apply_lift(ctx, &p, lift)?;
        for (tag, rel) in [(Tag::Alpha, ctx.f()), (Tag::Beta, ctx.g())] {
            let lhs = apply_lift(ctx, &rel.try_mul(&p)?, lift)?;
            let rhs = rel.try_mul(&lp)?;
            let difference = lhs.try_sub(&rhs)?;
            if !difference.is_zero() {
                out.push(CommutationDefect { row: row.clone(), tag, difference });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_order() {
        let labels: Vec<String> = t_monomials(2).iter().map(t_label).collect();
        assert_eq!(labels, ["T1^2", "T1*T2", "T1*T3", "T2^2", "T2*T3", "T3^2"]);
        assert_eq!(t_monomials(0).len(), 1);
        assert_eq!(t_label(&t_monomials(0)[0]), "1");
        for d in 0..8 {
            assert_eq!(t_monomials(d).len() as u64, binomial(d as u64 + 2, 2));
        }
    }

    #[test]
    fn entry_text() {
        let e = LiftEntry { coeff: BigUint::from(2u32), u: 1, v: 1, w: 0 };
        assert_eq!(e.to_string(), "2*f1*f2");
        let e = LiftEntry { coeff: BigUint::one(), u: 0, v: 2, w: 0 };
        assert_eq!(e.to_string(), "f2^2");
    }
}
