//! Expression syntax for elements of Cl_q(n, k).
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? INT)?
//! atom   := INT | 'q' | 's' | 'zeta' | 'z' | NAME '(' INT ')' | SHORT | '(' expr ')'
//! ```
//!
//! NAME is one of psi, psid, phi, phid, w, winv, z, f, eps. SHORT is the
//! printed form `p3`, `d3`, `w3` (raising, lowering, ω of the current
//! presentation). A bare `z` or `zeta` is the root of unity ζ used in
//! coefficient text; `z(a)` is the central generator.

use std::fmt;

use num_bigint::BigInt;
use qclifford::algebra::{AlgebraContext, Convention, Element, GeneratorKind, QMode};
use qclifford::structure::{central_generator, standardized_coordinate, volume_element};
use qclifford::{Error, Result, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    Psi,
    Psid,
    Phi,
    Phid,
    W,
    Winv,
    Z,
    F,
    Eps,
    /// `pN`: raising generator of the context's presentation.
    Raise,
    /// `dN`: lowering generator of the context's presentation.
    Lower,
}

impl Gen {
    fn from_name(s: &str) -> Option<Gen> {
        Some(match s {
            "psi" => Gen::Psi,
            "psid" => Gen::Psid,
            "phi" => Gen::Phi,
            "phid" => Gen::Phid,
            "w" => Gen::W,
            "winv" => Gen::Winv,
            "z" => Gen::Z,
            "f" => Gen::F,
            "eps" => Gen::Eps,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Gen::Psi => "psi",
            Gen::Psid => "psid",
            Gen::Phi => "phi",
            Gen::Phid => "phid",
            Gen::W => "w",
            Gen::Winv => "winv",
            Gen::Z => "z",
            Gen::F => "f",
            Gen::Eps => "eps",
            Gen::Raise => "p",
            Gen::Lower => "d",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sym {
    Q,
    S,
    Zeta,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Sym(Sym),
    Gen { gen: Gen, index: i64, pos: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, i64, usize),
}

impl fmt::Display for Expr {
    /// Fully parenthesised source text that parses back to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Sym(Sym::Q) => f.write_str("q"),
            Expr::Sym(Sym::S) => f.write_str("s"),
            Expr::Sym(Sym::Zeta) => f.write_str("zeta"),
            Expr::Gen { gen: Gen::Raise, index, .. } => write!(f, "p{index}"),
            Expr::Gen { gen: Gen::Lower, index, .. } => write!(f, "d{index}"),
            Expr::Gen { gen, index, .. } => write!(f, "{}({index})", gen.name()),
            Expr::Neg(x) => write!(f, "-({x})"),
            Expr::Add(a, b) => write!(f, "({a}) + ({b})"),
            Expr::Sub(a, b) => write!(f, "({a}) - ({b})"),
            Expr::Mul(a, b) => write!(f, "({a})*({b})"),
            Expr::Div(a, b, _) => write!(f, "({a})/({b})"),
            Expr::Pow(a, e, _) => write!(f, "({a})^{e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
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
            out.push((s, Tok::Num(src[s..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let s = i;
            while i < b.len() && b[i].is_ascii_alphanumeric() {
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

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
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

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        match self.peek() {
            Some(Tok::Num(n)) => {
                let v: i64 = n.try_into().map_err(|_| Error::Parse { pos: self.at(), msg: "integer too large".into() })?;
                self.pos += 1;
                Ok(if neg { -v } else { v })
            }
            _ => self.err("expected an integer"),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Op('/')) {
                let pos = self.at();
                self.pos += 1;
                acc = Expr::Div(Box::new(acc), Box::new(self.unary()?), pos);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Op('^')) {
            let pos = self.at();
            self.pos += 1;
            let e = self.int()?;
            return Ok(Expr::Pow(Box::new(base), e, pos));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.at();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(v)
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                let called = self.peek() == Some(&Tok::Op('('));
                if let (Some(gen), true) = (Gen::from_name(&id), called) {
                    self.pos += 1;
                    let index = self.int()?;
                    if !self.eat(')') {
                        return self.err("expected `)`");
                    }
                    return Ok(Expr::Gen { gen, index, pos });
                }
                match id.as_str() {
                    "q" => return Ok(Expr::Sym(Sym::Q)),
                    "s" => return Ok(Expr::Sym(Sym::S)),
                    "z" | "zeta" => return Ok(Expr::Sym(Sym::Zeta)),
                    _ => {}
                }
                // Printed short forms p3, d3, w3.
                let (head, digits) = id.split_at(id.find(|c: char| c.is_ascii_digit()).unwrap_or(id.len()));
                if !digits.is_empty() && digits.bytes().all(|c| c.is_ascii_digit()) {
                    let gen = match head {
                        "p" => Some(Gen::Raise),
                        "d" => Some(Gen::Lower),
                        "w" => Some(Gen::W),
                        _ => None,
                    };
                    if let Some(gen) = gen {
                        let index = digits.parse().map_err(|_| Error::Parse { pos, msg: "index too large".into() })?;
                        return Ok(Expr::Gen { gen, index, pos });
                    }
                }
                Err(Error::Parse { pos, msg: format!("unknown symbol `{id}`") })
            }
            _ => self.err("expected a number, symbol, generator or `(`"),
        }
    }
}

/// Parse one expression (no `;`).
pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, pos: 0, end: src.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Split at top-level `;` and parse each piece; byte positions stay global.
pub fn parse_list(src: &str) -> Result<Vec<Expr>> {
    let mut out = Vec::new();
    let mut start = 0;
    for piece in src.split(';') {
        let e = parse(piece).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse { pos: pos + start, msg },
            other => other,
        })?;
        out.push(e);
        start += piece.len() + 1;
    }
    Ok(out)
}

fn index(ctx: &AlgebraContext, i: i64, max: usize, pos: usize) -> Result<usize> {
    if i < 1 || i as usize > max {
        return Err(Error::Parse { pos, msg: Error::IndexOutOfRange { index: i, max }.to_string() });
    }
    let _ = ctx;
    Ok(i as usize)
}

fn generator(ctx: &AlgebraContext, gen: Gen, i: i64, pos: usize) -> Result<Element> {
    let n = ctx.n();
    let at = |e: Error| match e {
        Error::Parse { .. } => e,
        other => Error::Parse { pos, msg: other.to_string() },
    };
    let run = || -> Result<Element> {
        match gen {
            Gen::Psi => Element::generator(ctx, GeneratorKind::Psi, index(ctx, i, n, pos)?),
            Gen::Psid => Element::generator(ctx, GeneratorKind::Psid, index(ctx, i, n, pos)?),
            Gen::Phi => Element::generator(ctx, GeneratorKind::Phi, index(ctx, i, n, pos)?),
            Gen::Phid => Element::generator(ctx, GeneratorKind::Phid, index(ctx, i, n, pos)?),
            Gen::Raise => Element::raising(ctx, index(ctx, i, n, pos)?),
            Gen::Lower => Element::lowering(ctx, index(ctx, i, n, pos)?),
            Gen::W => Element::generator(ctx, GeneratorKind::W, index(ctx, i, n, pos)?),
            Gen::Winv => {
                if ctx.convention() != Convention::Psi {
                    return Err(Error::ConventionMismatch("winv".into(), ctx.convention().to_string()));
                }
                Element::omega_power(ctx, index(ctx, i, n, pos)?, -1)
            }
            Gen::Z => central_generator(ctx, index(ctx, i, n, pos)?),
            Gen::F => {
                if i < 0 || i as usize > n {
                    return Err(Error::IndexOutOfRange { index: i, max: n });
                }
                volume_element(ctx, i as usize)
            }
            Gen::Eps => standardized_coordinate(ctx, index(ctx, i, 2 * n, pos)?),
        }
    };
    run().map_err(at)
}

fn symbol(ctx: &AlgebraContext, s: Sym) -> Result<Scalar> {
    match s {
        Sym::Q => Ok(ctx.q().clone()),
        Sym::S => match ctx.qmode() {
            QMode::FormalSqrt => Ok(Scalar::t()),
            _ => Err(Error::Config("`s` is only defined with the square-root base (q = s^2)".into())),
        },
        Sym::Zeta => Ok(Scalar::cyclotomic_root(ctx.conductor())),
    }
}

/// Evaluate to a normal-form element of `ctx`.
pub fn eval(ctx: &AlgebraContext, e: &Expr) -> Result<Element> {
    Ok(match e {
        Expr::Num(n) => Element::from_scalar(ctx, Scalar::from_rational(n.clone().into())),
        Expr::Sym(s) => Element::from_scalar(ctx, symbol(ctx, *s)?),
        Expr::Gen { gen, index, pos } => generator(ctx, *gen, *index, *pos)?,
        Expr::Neg(x) => eval(ctx, x)?.neg(),
        Expr::Add(a, b) => eval(ctx, a)?.checked_add(&eval(ctx, b)?)?,
        Expr::Sub(a, b) => eval(ctx, a)?.checked_sub(&eval(ctx, b)?)?,
        Expr::Mul(a, b) => eval(ctx, a)?.checked_mul(&eval(ctx, b)?)?,
        Expr::Div(a, b, pos) => {
            let d = eval(ctx, b)?
                .as_scalar()
                .ok_or_else(|| Error::Parse { pos: *pos, msg: "can only divide by a scalar".into() })?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            eval(ctx, a)?.scale(&d.inv()?)?
        }
        Expr::Pow(a, k, pos) => {
            if *k >= 0 {
                return eval(ctx, a)?.pow(*k as u32);
            }
            if let Expr::Gen { gen: Gen::W, index, pos: gp } = a.as_ref() {
                if ctx.convention() == Convention::Psi {
                    return Element::omega_power(ctx, self::index(ctx, *index, ctx.n(), *gp)?, *k);
                }
            }
            let base = eval(ctx, a)?;
            match base.as_scalar() {
                Some(s) if !s.is_zero() => Element::from_scalar(ctx, s.pow(*k)?),
                _ => {
                    return Err(Error::Parse {
                        pos: *pos,
                        msg: "negative powers are only defined for nonzero scalars and w(a) in the psi presentation".into(),
                    })
                }
            }
        }
    })
}

/// Parse and evaluate.
pub fn evaluate(ctx: &AlgebraContext, src: &str) -> Result<Element> {
    eval(ctx, &parse(src)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qclifford::algebra::Twist;

    fn ctx(n: usize, k: u32) -> AlgebraContext {
        AlgebraContext::psi(n, k).unwrap()
    }

    #[test]
    fn relation_evaluates_to_omega_inverse() {
        let c = ctx(1, 1);
        let x = evaluate(&c, "psi(1)*psid(1) + q^1*psid(1)*psi(1)").unwrap();
        assert_eq!(x, Element::omega_power(&c, 1, -1).unwrap());
        assert_eq!(x, evaluate(&c, "winv(1)").unwrap());
        assert_eq!(x, evaluate(&c, "w(1)^-1").unwrap());
    }

    #[test]
    fn central_square() {
        assert!(evaluate(&ctx(1, 1), "z(1)^2").unwrap().is_one());
    }

    #[test]
    fn errors() {
        let c = ctx(2, 1);
        assert!(matches!(evaluate(&c, "psi(3)"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(evaluate(&c, "psi(1) + psi(0)"), Err(Error::Parse { pos: 9, .. })));
        assert!(matches!(evaluate(&c, "psi(1) $"), Err(Error::Parse { pos: 7, .. })));
        assert!(matches!(evaluate(&c, "(psi(1)"), Err(Error::Parse { .. })));
        assert!(evaluate(&c, "phi(1)").is_err());
        assert!(evaluate(&c, "psi(1)^-1").is_err());
        assert!(evaluate(&c, "psi(1)/psi(2)").is_err());
        assert!(evaluate(&c, "s").is_err());
        let phi = AlgebraContext::phi(1, Twist::from_twice(3)).unwrap();
        assert!(evaluate(&phi, "winv(1)").is_err());
        assert!(evaluate(&phi, "phi(1)*phid(1)").is_ok());
    }

    #[test]
    fn printed_forms_parse_back() {
        let c = ctx(2, 2);
        for src in ["psid(1)*psi(1)", "z(1)", "f(2)*eps(3)", "(q + 1)/(q - 1)*psi(2)", "zeta*w(1)^3 - 1/2"] {
            let x = evaluate(&c, src).unwrap();
            assert_eq!(evaluate(&c, &x.to_text()).unwrap(), x, "{src} -> {}", x.to_text());
        }
        assert_eq!(evaluate(&ctx(1, 1), "psid(1)*psi(1)").unwrap().to_text(), "q*w1 - q*p1*d1");
    }

    #[test]
    fn display_round_trip() {
        let c = ctx(2, 1);
        let e = parse("-psi(1)*(q - 2)^2 + w(1)^-1/3 - p2*d2").unwrap();
        assert_eq!(eval(&c, &parse(&e.to_string()).unwrap()).unwrap(), eval(&c, &e).unwrap());
    }

    #[test]
    fn lists() {
        let v = parse_list("psi(1) ; 1 ; w(1)").unwrap();
        assert_eq!(v.len(), 3);
        assert!(matches!(parse_list("psi(1) ; $"), Err(Error::Parse { pos: 9, .. })));
    }
}
