//! Text form of polynomials.
//!
//! ```text
//! poly    := ['-'] term (('+'|'-') term)*
//! term    := nat | nat '*' factors | factors
//! factors := factor ('*' factor)*
//! factor  := var ['^' nat]
//! var     := letter (letter|digit)*
//! ```
//!
//! Whitespace between tokens is ignored. Over ℚ a coefficient may also be
//! written `nat/nat`, which is what the printer emits for non-integers.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Num;

use crate::error::{Error, Result};

use super::field::Field;
use super::monomial::{Monomial, MAX_EXPONENT};
use super::poly::{Polynomial, RingRef};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Nat(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            d if d.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Nat(text[start..i].to_string())));
                continue;
            }
            a if a.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ring: &'a RingRef<F>,
}

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn nat(&mut self) -> Result<BigUint> {
        match self.peek() {
            Some(Tok::Nat(s)) => {
                let v = BigUint::from_str_radix(s, 10).expect("digits");
                self.pos += 1;
                Ok(v)
            }
            _ => self.err("expected a natural number"),
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        let at = self.offset();
        let v = self.nat()?;
        match u32::try_from(&v) {
            Ok(e) if e < MAX_EXPONENT => Ok(e),
            _ => Err(Error::Syntax {
                pos: at,
                msg: "exponent must be below 2^31".into(),
            }),
        }
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<()> {
        let name = match self.peek() {
            Some(Tok::Ident(s)) => s.clone(),
            _ => return self.err("expected a variable"),
        };
        let idx = self
            .ring
            .var_index(&name)
            .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
        self.pos += 1;
        let e = if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            self.exponent()?
        } else {
            1
        };
        let s = exps[idx] as u64 + e as u64;
        if s >= MAX_EXPONENT as u64 {
            return Err(Error::ExponentOverflow);
        }
        exps[idx] = s as u32;
        Ok(())
    }

    fn factors(&mut self, exps: &mut [u32]) -> Result<()> {
        self.factor(exps)?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            self.factor(exps)?;
        }
        Ok(())
    }

    fn term(&mut self) -> Result<(F::Elem, Monomial)> {
        let k = self.ring.field();
        let mut exps = vec![0u32; self.ring.nvars()];
        let coeff = if let Some(Tok::Nat(_)) = self.peek() {
            let at = self.offset();
            let num = self.nat()?;
            let c = if self.peek() == Some(&Tok::Slash) {
                self.pos += 1;
                let den = self.nat()?;
                k.from_fraction(&num, &den).ok_or(Error::Syntax {
                    pos: at,
                    msg: "fractions are only allowed over QQ with nonzero denominator".into(),
                })?
            } else {
                k.from_biguint(&num)
            };
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
                self.factors(&mut exps)?;
            }
            c
        } else {
            self.factors(&mut exps)?;
            k.one()
        };
        Ok((coeff, Monomial::new(&exps)?))
    }

    fn poly(&mut self) -> Result<Polynomial<F>> {
        let k = self.ring.field();
        let mut terms = Vec::new();
        let mut negative = false;
        if self.peek() == Some(&Tok::Minus) {
            negative = true;
            self.pos += 1;
        }
        loop {
            let (c, m) = self.term()?;
            terms.push((if negative { k.neg(&c) } else { c }, m));
            match self.peek() {
                None => break,
                Some(Tok::Plus) => negative = false,
                Some(Tok::Minus) => negative = true,
                Some(_) => return self.err("expected '+', '-' or end of input"),
            }
            self.pos += 1;
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }
}

/// Parses `text` into a polynomial of `ring`.
pub fn parse_poly<F: Field>(text: &str, ring: &RingRef<F>) -> Result<Polynomial<F>> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Syntax {
            pos: 0,
            msg: "empty polynomial".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        ring,
    };
    p.poly()
}

/// Parses a comma-separated generator list.
pub fn parse_poly_list<F: Field>(text: &str, ring: &RingRef<F>) -> Result<Vec<Polynomial<F>>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        let p = parse_poly(piece, ring).map_err(|e| match e {
            Error::Syntax { pos, msg } => Error::Syntax {
                pos: pos + offset,
                msg,
            },
            other => other,
        })?;
        out.push(p);
        offset += piece.len() + 1;
    }
    Ok(out)
}

fn write_monomial(f: &mut fmt::Formatter<'_>, names: &[String], m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (name, &e) in names.iter().zip(m.exps()) {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            f.write_str(name)?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let k = self.field();
        let names = self.ring().vars();
        for (i, t) in self.terms().iter().enumerate() {
            let (neg, mag) = k.render(&t.coeff);
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if t.mono.is_one() {
                f.write_str(&mag)?;
            } else {
                if mag != "1" {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, names, &t.mono)?;
            }
        }
        Ok(())
    }
}

/// Displays a bare monomial using the ring's variable names (`1` for the
/// empty product).
pub fn format_monomial(names: &[String], m: &Monomial) -> String {
    struct W<'a>(&'a [String], &'a Monomial);
    impl fmt::Display for W<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if self.1.is_one() {
                return f.write_str("1");
            }
            write_monomial(f, self.0, self.1)
        }
    }
    W(names, m).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::field::{PrimeField, Rationals};
    use crate::polyring::poly::Ring;

    #[test]
    fn parses_binomial() {
        let r = Ring::xyz(Rationals);
        let f = parse_poly("y^2 - x*z", &r).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.to_string(), "y^2 - x*z");
    }

    #[test]
    fn exponent_needs_caret() {
        let r = Ring::xyz(Rationals);
        assert_eq!(
            parse_poly("x3 - y*z", &r),
            Err(Error::UnknownVariable("x3".into()))
        );
    }

    #[test]
    fn canonical_order_grevlex() {
        let r = Ring::xyz(PrimeField::new(32003).unwrap());
        let f = parse_poly("z*x^3 - y^5", &r).unwrap();
        // degree 5 > degree 4
        assert_eq!(f.to_string(), "-y^5 + x^3*z");
    }

    #[test]
    fn syntax_errors_have_positions() {
        let r = Ring::xyz(Rationals);
        match parse_poly("x + * y", &r) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x $ y", &r), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("x^", &r), Err(Error::Syntax { pos: 2, .. })));
    }

    #[test]
    fn coefficients_and_constants() {
        let r = Ring::xyz(Rationals);
        let f = parse_poly("3*x^2*y + 2 - 7 * z", &r).unwrap();
        assert_eq!(f.to_string(), "3*x^2*y - 7*z + 2");
        let g = parse_poly("1/2*x - 3/6", &r).unwrap();
        assert_eq!(g.to_string(), "1/2*x - 1/2");
        assert_eq!(parse_poly(&g.to_string(), &r).unwrap(), g);
        let p = Ring::xyz(PrimeField::new(7).unwrap());
        assert!(matches!(parse_poly("1/2*x", &p), Err(Error::Syntax { .. })));
    }

    #[test]
    fn repeated_factors_accumulate() {
        let r = Ring::xyz(Rationals);
        assert_eq!(
            parse_poly("x*x*y", &r).unwrap(),
            parse_poly("x^2*y", &r).unwrap()
        );
        assert!(parse_poly("x - x", &r).unwrap().is_zero());
    }
}
