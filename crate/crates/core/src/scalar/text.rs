//! Canonical text form of scalars and its parser.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Cyclotomic, Poly, Scalar};
use crate::error::{Error, Result};

/// (negative?, body, body == "1") for a coefficient placed in front of a power.
pub(crate) fn coefficient_parts(c: &Cyclotomic, conductor: u32) -> (bool, String, bool) {
    let text = c.to_text(conductor);
    if c.term_count(conductor) > 1 {
        return (false, format!("({text})"), false);
    }
    match text.strip_prefix('-') {
        Some(rest) => (true, rest.to_string(), rest == "1"),
        None => {
            let unit = text == "1";
            (false, text, unit)
        }
    }
}

fn power(var: &str, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

/// Terms `c_i t^{base + i}` in descending order.
fn render_terms(p: &Poly, base: i64, var: &str, conductor: u32) -> String {
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let (neg, body, unit) = coefficient_parts(c, conductor);
        let pw = power(var, base + i as i64);
        let term = match (pw.is_empty(), unit) {
            (true, _) => body,
            (false, true) => pw,
            (false, false) => format!("{body}*{pw}"),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub(crate) fn render(x: &Scalar, var: &str, conductor: u32) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let nonzero_terms = x.num.coeffs().iter().filter(|c| !c.is_zero()).count();
    if x.den.is_one() && (x.shift >= 0 || nonzero_terms == 1) {
        return render_terms(&x.num, x.shift, var, conductor);
    }
    let (ns, ds) = if x.shift >= 0 { (x.shift, 0) } else { (0, -x.shift) };
    format!(
        "({})/({})",
        render_terms(&x.num, ns, var, conductor),
        render_terms(&x.den, ds, var, conductor)
    )
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let b = src.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((s, Tok::Num(src[s..i].parse().unwrap())));
        } else if c.is_ascii_alphabetic() {
            let s = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((s, Tok::Ident(src[s..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Parse { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    var: &'a str,
    conductor: u32,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.at(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.checked_add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.checked_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.checked_mul(&self.unary()?)?;
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.checked_div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        if self.eat('-') {
            return Ok(self.unary()?.checked_neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let e = match self.peek() {
                Some(Tok::Num(n)) => {
                    let n: i64 = n.try_into().map_err(|_| Error::Parse {
                        pos: self.at(),
                        msg: "exponent too large".into(),
                    })?;
                    self.pos += 1;
                    n
                }
                _ => return self.err("expected integer exponent"),
            };
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Scalar::from_rational(BigRational::from_integer(n)))
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                if id == self.var {
                    Ok(Scalar::t())
                } else if id == "z" || id == "zeta" {
                    Ok(Scalar::cyclotomic_root(self.conductor))
                } else {
                    self.err(format!("unknown symbol `{id}`"))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(v)
            }
            _ => self.err("expected a number, symbol or `(`"),
        }
    }
}

pub(crate) fn parse(src: &str, var: &str, conductor: u32) -> Result<Scalar> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, end: src.len(), var, conductor };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for s in [
            "0",
            "1",
            "-3/2",
            "q^2 - 1",
            "(q^2 - 1)/(q)",
            "(q)/(q^2 - 1)",
            "q^-2",
            "-2*q^-1",
            "(z + 1)*q - z^3",
            "(z*q + 1)/(q^2 + 1/2)",
        ] {
            let x = parse(s, "q", 12).unwrap();
            let back = render(&x, "q", 12);
            assert_eq!(parse(&back, "q", 12).unwrap(), x, "{s} -> {back}");
        }
    }

    #[test]
    fn canonical_text_is_stable() {
        let x = parse("1/(q - q^-1)", "q", 1).unwrap();
        assert_eq!(render(&x, "q", 1), "(q)/(q^2 - 1)");
    }

    #[test]
    fn errors_carry_positions() {
        match parse("q + ?", "q", 1) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse("s", "q", 1).is_err());
    }
}
