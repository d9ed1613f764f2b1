//! Exponent-lattice arithmetic for monomial ideals.

use crate::polyring::Monomial;

pub(crate) use crate::groebner::minimalize_monomials as minimalize;

pub fn intersect(a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x.lcm(y));
        }
    }
    minimalize(out)
}

pub fn product(a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x.mul(y));
        }
    }
    minimalize(out)
}

pub fn power(a: &[Monomial], n: u32) -> Vec<Monomial> {
    let Some(first) = a.first() else {
        return Vec::new();
    };
    let mut acc = vec![Monomial::one(first.nvars())];
    for _ in 0..n {
        acc = product(&acc, a);
    }
    acc
}

/// `(A : m)`.
pub fn quotient(a: &[Monomial], m: &Monomial) -> Vec<Monomial> {
    let out = a
        .iter()
        .map(|g| {
            let exps: Vec<u32> = g
                .exps()
                .iter()
                .zip(m.exps())
                .map(|(&e, &f)| e.saturating_sub(f))
                .collect();
            Monomial::new(&exps).expect("bounded")
        })
        .collect();
    minimalize(out)
}

/// `(A : m^∞)`: the variables in the support of `m` are set to 1.
pub fn saturate(a: &[Monomial], m: &Monomial) -> Vec<Monomial> {
    let out = a
        .iter()
        .map(|g| {
            let exps: Vec<u32> = g
                .exps()
                .iter()
                .zip(m.exps())
                .map(|(&e, &f)| if f > 0 { 0 } else { e })
                .collect();
            Monomial::new(&exps).expect("bounded")
        })
        .collect();
    minimalize(out)
}

pub fn contains(a: &[Monomial], m: &Monomial) -> bool {
    a.iter().any(|g| g.divides(m))
}

/// `(x_i : i ∈ vars)^n`: all monomials of degree `n` in the listed variables.
pub fn prime_power(nvars: usize, vars: &[usize], n: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    fn rec(vars: &[usize], left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        match vars {
            [] => {}
            [last] => {
                exps[*last] = left;
                out.push(Monomial::new(exps).expect("bounded"));
                exps[*last] = 0;
            }
            [first, rest @ ..] => {
                for e in (0..=left).rev() {
                    exps[*first] = e;
                    rec(rest, left - e, exps, out);
                }
                exps[*first] = 0;
            }
        }
    }
    if vars.is_empty() {
        return out;
    }
    rec(vars, n, &mut exps, &mut out);
    out
}
