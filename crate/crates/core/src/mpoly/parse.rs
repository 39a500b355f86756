//! Expression grammar for polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INTEGER)?
//! atom   := INTEGER | IDENT | '(' expr ')'
//! ```
//!
//! Division is only accepted by a constant that divides every coefficient
//! exactly in the target ring. Implicit multiplication is rejected.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::MPoly;
use crate::error::{Error, Result};
use crate::ring::Ring;

/// Largest exponent literal the parser accepts.
pub const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer { src, toks: Vec::new() };
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            if c.is_ascii_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = lx.src[start..i].parse().expect("digits");
                lx.toks.push((Tok::Int(n), start));
            } else if c.is_ascii_alphabetic() || c == b'_' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                lx.toks.push((Tok::Ident(lx.src[start..i].to_string()), start));
            } else if b"+-*/^()".contains(&c) {
                lx.toks.push((Tok::Op(c as char), i));
                i += 1;
            } else {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(Error::SyntaxError { offset: i, message: format!("unexpected character '{ch}'") });
            }
        }
        lx.toks.push((Tok::End, src.len()));
        Ok(lx.toks)
    }
}

#[derive(Debug)]
enum Ast {
    Int(BigInt),
    Ident(String, usize),
    Neg(Box<Ast>),
    Bin(char, Box<Ast>, Box<Ast>, usize),
    Pow(Box<Ast>, u32),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn err<T>(&self, message: &str) -> Result<T> {
        Err(Error::SyntaxError { offset: self.offset(), message: message.to_string() })
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        while let Tok::Op(c @ ('+' | '-')) = *self.peek() {
            let at = self.offset();
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Ast::Bin(c, Box::new(lhs), Box::new(rhs), at);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        loop {
            match *self.peek() {
                Tok::Op(c @ ('*' | '/')) => {
                    let at = self.offset();
                    self.pos += 1;
                    let rhs = self.unary()?;
                    lhs = Ast::Bin(c, Box::new(lhs), Box::new(rhs), at);
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::Op('(') => {
                    return self.err("implicit multiplication is not allowed; use '*'");
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        if *self.peek() == Tok::Op('-') {
            self.pos += 1;
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.pos += 1;
        let Tok::Int(n) = self.peek().clone() else {
            return self.err("exponent must be a nonnegative integer literal");
        };
        self.pos += 1;
        let e = u32::try_from(&n).ok().filter(|&e| e <= MAX_EXPONENT).ok_or(Error::ExponentOverflow)?;
        if *self.peek() == Tok::Op('^') {
            return self.err("chained exponents are ambiguous; add parentheses");
        }
        Ok(Ast::Pow(Box::new(base), e))
    }

    fn atom(&mut self) -> Result<Ast> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(Ast::Int(n))
            }
            Tok::Ident(s) => {
                self.pos += 1;
                Ok(Ast::Ident(s, at))
            }
            Tok::Op('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if *self.peek() != Tok::Op(')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Tok::End => self.err("unexpected end of input"),
            Tok::Op(c) => self.err(&format!("unexpected '{c}'")),
        }
    }
}

fn parse_ast(text: &str) -> Result<Ast> {
    let toks = Lexer::run(text)?;
    let mut p = Parser { toks, pos: 0 };
    let ast = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(ast)
}

fn eval<R: Ring>(
    ast: &Ast,
    vars: &[String],
    r: &R,
    constants: &[(String, R::Elem)],
) -> Result<MPoly<R::Elem>> {
    let n = vars.len();
    Ok(match ast {
        Ast::Int(k) => MPoly::constant(r, r.from_int(k), n),
        Ast::Ident(name, at) => {
            if let Some(i) = vars.iter().position(|v| v == name) {
                MPoly::var(r, i, n)
            } else if let Some((_, c)) = constants.iter().find(|(k, _)| k == name) {
                MPoly::constant(r, c.clone(), n)
            } else {
                let _ = at;
                return Err(Error::UnknownVariable(name.clone()));
            }
        }
        Ast::Neg(a) => eval(a, vars, r, constants)?.neg(r),
        Ast::Pow(a, e) => eval(a, vars, r, constants)?.pow(r, *e),
        Ast::Bin(op, a, b, at) => {
            let x = eval(a, vars, r, constants)?;
            let y = eval(b, vars, r, constants)?;
            match op {
                '+' => x.add(r, &y),
                '-' => x.sub(r, &y),
                '*' => x.mul(r, &y),
                _ => {
                    let bad = || Error::SyntaxError {
                        offset: *at,
                        message: "division is only allowed by a constant dividing every coefficient".into(),
                    };
                    if !y.is_constant() || y.is_zero() {
                        return Err(bad());
                    }
                    let d = y.constant_term(r);
                    x.try_map(r, |c| r.div_exact(c, &d).ok_or_else(bad))?
                }
            }
        }
    })
}

/// Parses `text` as a polynomial in `vars` over `r`. Identifiers listed in
/// `constants` denote fixed ring elements (e.g. a number-field generator).
pub fn parse_poly<R: Ring>(
    text: &str,
    vars: &[String],
    r: &R,
    constants: &[(String, R::Elem)],
) -> Result<MPoly<R::Elem>> {
    eval(&parse_ast(text)?, vars, r, constants)
}

/// Parses a comma-separated list of polynomials.
pub fn parse_poly_list<R: Ring>(
    text: &str,
    vars: &[String],
    r: &R,
    constants: &[(String, R::Elem)],
) -> Result<Vec<MPoly<R::Elem>>> {
    let mut out = Vec::new();
    let mut start = 0;
    for piece in text.split(',') {
        let parsed = parse_poly(piece, vars, r, constants).map_err(|e| match e {
            Error::SyntaxError { offset, message } => Error::SyntaxError { offset: offset + start, message },
            other => other,
        })?;
        out.push(parsed);
        start += piece.len() + 1;
    }
    Ok(out)
}

/// Distinct identifiers occurring in `text`, sorted.
pub fn identifiers(text: &str) -> Result<Vec<String>> {
    let set: BTreeSet<String> = Lexer::run(text)?
        .into_iter()
        .filter_map(|(t, _)| match t {
            Tok::Ident(s) => Some(s),
            _ => None,
        })
        .collect();
    Ok(set.into_iter().collect())
}

fn is_simple(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    !body.is_empty() && body.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'/')
}

pub(super) fn render<R: Ring>(r: &R, p: &MPoly<R::Elem>, names: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().rev().enumerate() {
        let mono: Vec<String> = m
            .0
            .iter()
            .zip(names)
            .filter(|(e, _)| **e > 0)
            .map(|(&e, name)| if e == 1 { name.clone() } else { format!("{name}^{e}") })
            .collect();
        let mono = mono.join("*");
        let cs = r.render(c);
        let (neg, body) = if is_simple(&cs) {
            match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            }
        } else {
            (false, format!("({cs})"))
        };
        let term = match (mono.is_empty(), body == "1") {
            (true, _) => body,
            (false, true) => mono,
            (false, false) => format!("{body}*{mono}"),
        };
        match (idx, neg) {
            (0, false) => out.push_str(&term),
            (0, true) => {
                out.push('-');
                out.push_str(&term);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&term);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&term);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::Monomial;
    use crate::ring::{Integers, Rationals};
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn example_polynomials() {
        let v = names(&["T0", "T1", "T2"]);
        let f = parse_poly("T0^2 + 6*T1*T2", &v, &Integers, &[]).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.coeff(&Integers, &Monomial(vec![0, 1, 1])), BigInt::from(6));
        assert!(parse_poly("0", &v, &Integers, &[]).unwrap().is_zero());
        let cube = parse_poly("(T0+T1)^3", &v, &Integers, &[]).unwrap();
        let cs: Vec<i64> = cube.terms().rev().map(|(_, c)| i64::try_from(c).unwrap()).collect();
        assert_eq!(cs, vec![1, 3, 3, 1]);
        assert_eq!(cube.render(&Integers, &v), "T0^3 + 3*T0^2*T1 + 3*T0*T1^2 + T1^3");
    }

    #[test]
    fn precedence_and_unary_minus() {
        let v = names(&["x"]);
        let a = parse_poly("-x^2", &v, &Integers, &[]).unwrap();
        assert_eq!(a.render(&Integers, &v), "-x^2");
        let b = parse_poly("2 - -3*x", &v, &Integers, &[]).unwrap();
        assert_eq!(b.render(&Integers, &v), "3*x + 2");
    }

    #[test]
    fn errors_carry_offsets() {
        let v = names(&["x", "y"]);
        match parse_poly("x + * y", &v, &Integers, &[]) {
            Err(Error::SyntaxError { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        match parse_poly("2x", &v, &Integers, &[]) {
            Err(Error::SyntaxError { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        assert_eq!(parse_poly("z", &v, &Integers, &[]), Err(Error::UnknownVariable("z".into())));
        assert_eq!(parse_poly("x^99999999999", &v, &Integers, &[]), Err(Error::ExponentOverflow));
        assert!(matches!(parse_poly("(x", &v, &Integers, &[]), Err(Error::SyntaxError { offset: 2, .. })));
        assert!(matches!(parse_poly("x $ y", &v, &Integers, &[]), Err(Error::SyntaxError { offset: 2, .. })));
    }

    #[test]
    fn constants_and_division() {
        let v = names(&["x"]);
        let consts = vec![("a".to_string(), BigRational::new(1.into(), 2.into()))];
        let f = parse_poly("a*x + 3/4", &v, &Rationals, &consts).unwrap();
        assert_eq!(f.render(&Rationals, &v), "1/2*x + 3/4");
        assert!(parse_poly("x/2", &v, &Integers, &[]).is_err());
        assert_eq!(parse_poly("4*x/2", &v, &Integers, &[]).unwrap().render(&Integers, &v), "2*x");
    }

    #[test]
    fn list_and_identifiers() {
        let v = names(&["s", "t"]);
        let l = parse_poly_list("s^3, s^2*t, s*t^2, t^3", &v, &Integers, &[]).unwrap();
        assert_eq!(l.len(), 4);
        assert_eq!(identifiers("T2*T0 + T1 - T0").unwrap(), names(&["T0", "T1", "T2"]));
    }

    fn arb_poly() -> impl Strategy<Value = MPoly<BigInt>> {
        prop::collection::vec((prop::collection::vec(0u32..4, 3), -30i64..30), 0..8).prop_map(|ts| {
            MPoly::from_terms(&Integers, 3, ts.into_iter().map(|(e, c)| (Monomial(e), BigInt::from(c))))
        })
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(f in arb_poly()) {
            let v = names(&["x", "y", "z"]);
            let s = f.render(&Integers, &v);
            prop_assert_eq!(parse_poly(&s, &v, &Integers, &[]).unwrap(), f);
        }
    }
}
