//! Expression syntax.
//!
//! ```text
//! expr    := term { ("+" | "-") term }
//! term    := ["-"] factor { "*" factor }
//! factor  := primary [ "^" signed-integer ]
//! primary := "x" | "y" | "h" [digits] | rational [label] | label
//!          | "(" expr ")" | "conj" "(" expr ")"
//! rational := integer [ "/" positive-integer ]
//! ```
//!
//! Labels are the basis names of the algebra (`i`, `j`, `k`). A rational
//! directly followed by a label is a scaled basis element, so `1+2i-3j+1/2k`
//! is a quaternion literal. Negative exponents are only meaningful for
//! floating-point evaluation; lowering rejects them.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{AlgebraSpec, Element};
use crate::error::{Error, Result};
use crate::linear::{self, CoordMatrix};
use crate::numeric;
use crate::poly::{NcPoly, Var};
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Var(Var),
    Number(Scalar),
    /// Basis element by label.
    Basis(String),
    Conj(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "number {n}"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
    /// No whitespace between this token and the previous one.
    glued: bool,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    let mut glued = false;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            glued = false;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            glued = false;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            Tok::Int(s.parse().expect("digits"))
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            col += i - start;
            Tok::Ident(chars[start..i].iter().collect())
        } else {
            i += 1;
            col += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '/' => Tok::Slash,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => return Err(syntax(l0, c0, format!("unexpected character '{other}'"))),
            }
        };
        out.push(Token {
            tok,
            line: l0,
            column: c0,
            glued,
        });
        glued = true;
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
        glued: false,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> Error {
        let t = self.peek();
        syntax(t.line, t.column, message)
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.peek().tok == tok {
            self.next();
            Ok(())
        } else {
            Err(self.error_here(format!("expected {tok}, found {}", self.peek().tok)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.next();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        if self.peek().tok == Tok::Minus {
            self.next();
            return Ok(Expr::Neg(Box::new(self.term()?)));
        }
        let mut lhs = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.next();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.next();
        let negative = if self.peek().tok == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        let t = self.next();
        let Tok::Int(n) = t.tok else {
            return Err(syntax(
                t.line,
                t.column,
                format!("expected an exponent, found {}", t.tok),
            ));
        };
        let n: i64 = n
            .try_into()
            .map_err(|_| syntax(t.line, t.column, "exponent too large"))?;
        Ok(Expr::Pow(Box::new(base), if negative { -n } else { n }))
    }

    fn primary(&mut self) -> Result<Expr> {
        let t = self.next();
        match t.tok {
            Tok::Int(n) => {
                let mut value = Scalar::from_integer(n);
                if self.peek().tok == Tok::Slash {
                    self.next();
                    let d = self.next();
                    match d.tok {
                        Tok::Int(den) if !den.is_zero() => value /= Scalar::from_integer(den),
                        Tok::Int(_) => return Err(syntax(d.line, d.column, "zero denominator")),
                        other => {
                            return Err(syntax(
                                d.line,
                                d.column,
                                format!("expected a denominator, found {other}"),
                            ))
                        }
                    }
                }
                let next = self.peek().clone();
                if let (Tok::Ident(label), true) = (&next.tok, next.glued) {
                    if is_label(label) {
                        self.next();
                        return Ok(Expr::Mul(
                            Box::new(Expr::Number(value)),
                            Box::new(Expr::Basis(label.clone())),
                        ));
                    }
                }
                Ok(Expr::Number(value))
            }
            Tok::Ident(name) => self.ident(name, t.line, t.column),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            other => Err(syntax(t.line, t.column, format!("unexpected {other}"))),
        }
    }

    fn ident(&mut self, name: String, line: usize, column: usize) -> Result<Expr> {
        match name.as_str() {
            "x" => Ok(Expr::Var(Var::X)),
            "y" => Ok(Expr::Var(Var::Y)),
            "h" => Ok(Expr::Var(Var::H(1))),
            "conj" => {
                self.expect(Tok::LParen)?;
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(Expr::Conj(Box::new(e)))
            }
            s if is_label(s) => Ok(Expr::Basis(name)),
            s if s.starts_with('h') && s[1..].chars().all(|c| c.is_ascii_digit()) => {
                let n: usize = s[1..]
                    .parse()
                    .map_err(|_| syntax(line, column, "increment index too large"))?;
                Var::h(n)
                    .map(Expr::Var)
                    .map_err(|_| syntax(line, column, format!("increment index must be in 1..=32, got {n}")))
            }
            _ => Err(syntax(line, column, format!("unknown name '{name}'"))),
        }
    }
}

fn is_label(s: &str) -> bool {
    matches!(s, "i" | "j" | "k") || (s.starts_with('e') && s.len() > 1 && s[1..].chars().all(|c| c.is_ascii_digit()))
}

pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    if p.peek().tok == Tok::Eof {
        return Err(p.error_here("empty expression"));
    }
    let e = p.expr()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.error_here(format!("unexpected {}", p.peek().tok)));
    }
    Ok(e)
}

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Neg(_) => 2,
        Expr::Mul(..) => 3,
        Expr::Pow(..) => 4,
        _ => 5,
    }
}

/// Text that parses back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, e: &Expr, min: u8| {
            if precedence(e) < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Add(a, b) => {
                wrap(f, a, 1)?;
                f.write_str(" + ")?;
                wrap(f, b, 2)
            }
            Expr::Sub(a, b) => {
                wrap(f, a, 1)?;
                f.write_str(" - ")?;
                wrap(f, b, 2)
            }
            Expr::Neg(a) => {
                f.write_str("-")?;
                wrap(f, a, 2)
            }
            Expr::Mul(a, b) => {
                wrap(f, a, 3)?;
                f.write_str("*")?;
                wrap(f, b, 4)
            }
            Expr::Pow(a, n) => {
                wrap(f, a, 5)?;
                write!(f, "^{n}")
            }
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Number(r) => {
                if scalar::is_negative(r) {
                    write!(f, "(-{})", scalar::display(&-r.clone()))
                } else if r.is_integer() {
                    write!(f, "{}", scalar::display(r))
                } else {
                    write!(f, "({})", scalar::display(r))
                }
            }
            Expr::Basis(l) => f.write_str(l),
            Expr::Conj(a) => write!(f, "conj({a})"),
        }
    }
}

fn basis_index(label: &str, alg: &AlgebraSpec) -> Result<usize> {
    alg.labels()
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Error::Semantic(format!("{} has no basis element '{label}'", alg.name())))
}

/// The polynomial `Σ f^{ij} e_i p e_j` realizing conjugation on `alg`.
pub fn conjugation_poly(p: &NcPoly, alg: &AlgebraSpec) -> Result<NcPoly> {
    let inv = alg
        .involution()
        .ok_or_else(|| Error::UnsupportedOperation(format!("{} defines no conjugation", alg.name())))?;
    let f = linear::coord_to_std(&CoordMatrix(inv.clone()), alg).map_err(|e| match e {
        Error::NotRealizable { .. } => {
            Error::UnsupportedOperation(format!("conjugation is not a polynomial map over {}", alg.name()))
        }
        other => other,
    })?;
    let mut out = NcPoly::zero();
    let n = alg.dim();
    for i in 0..n {
        for j in 0..n {
            let c = &f.0[(i, j)];
            if c.is_zero() {
                continue;
            }
            out = out.add(&p.wrap(&alg.basis(i).scale(c), &alg.basis(j), alg));
        }
    }
    Ok(out)
}

/// Converts to a polynomial over `alg`.
pub fn lower(e: &Expr, alg: &AlgebraSpec) -> Result<NcPoly> {
    Ok(match e {
        Expr::Add(a, b) => lower(a, alg)?.add(&lower(b, alg)?),
        Expr::Sub(a, b) => lower(a, alg)?.sub(&lower(b, alg)?),
        Expr::Neg(a) => lower(a, alg)?.neg(),
        Expr::Mul(a, b) => lower(a, alg)?.mul(&lower(b, alg)?, alg),
        Expr::Pow(a, n) => {
            if *n < 0 {
                return Err(Error::Semantic(
                    "negative powers are only available to the numeric oracle".into(),
                ));
            }
            let n = u32::try_from(*n).map_err(|_| Error::Semantic("exponent too large".into()))?;
            lower(a, alg)?.pow(n, alg)
        }
        Expr::Var(v) => NcPoly::var(*v, alg),
        Expr::Number(r) => NcPoly::scalar(r.clone(), alg),
        Expr::Basis(l) => NcPoly::constant(alg.basis(basis_index(l, alg)?)),
        Expr::Conj(a) => conjugation_poly(&lower(a, alg)?, alg)?,
    })
}

pub fn parse_poly(text: &str, alg: &AlgebraSpec) -> Result<NcPoly> {
    lower(&parse(text)?, alg)
}

/// A constant expression such as `1+2i-3j+1/2k`, optionally prefixed by
/// `x=`.
pub fn parse_element(text: &str, alg: &AlgebraSpec) -> Result<Element> {
    let body = text.trim();
    let body = body.strip_prefix("x=").unwrap_or(body);
    let p = parse_poly(body, alg)?;
    if !p.variables().is_empty() {
        return Err(Error::Semantic(format!("'{text}' is not a constant")));
    }
    p.eval(&HashMap::new(), alg)
}

/// Floating-point evaluation, including negative powers.
pub fn eval_f64(e: &Expr, bindings: &HashMap<Var, Vec<f64>>, alg: &AlgebraSpec) -> Result<Vec<f64>> {
    Ok(match e {
        Expr::Add(a, b) => numeric::add(&eval_f64(a, bindings, alg)?, &eval_f64(b, bindings, alg)?),
        Expr::Sub(a, b) => numeric::sub(&eval_f64(a, bindings, alg)?, &eval_f64(b, bindings, alg)?),
        Expr::Neg(a) => numeric::scale(&eval_f64(a, bindings, alg)?, -1.0),
        Expr::Mul(a, b) => numeric::mul(alg, &eval_f64(a, bindings, alg)?, &eval_f64(b, bindings, alg)?),
        Expr::Pow(a, n) => {
            let base = eval_f64(a, bindings, alg)?;
            let base = if *n < 0 { numeric::inverse(alg, &base)? } else { base };
            let mut acc = alg.unit().to_f64();
            for _ in 0..n.unsigned_abs() {
                acc = numeric::mul(alg, &acc, &base);
            }
            acc
        }
        Expr::Var(v) => bindings.get(v).cloned().ok_or(Error::UnboundVariable(*v))?,
        Expr::Number(r) => alg.scalar(r.clone()).to_f64(),
        Expr::Basis(l) => alg.basis(basis_index(l, alg)?).to_f64(),
        Expr::Conj(a) => numeric::conj(alg, &eval_f64(a, bindings, alg)?)?,
    })
}

/// True when `e` contains a negative power.
pub fn has_negative_power(e: &Expr) -> bool {
    match e {
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => has_negative_power(a) || has_negative_power(b),
        Expr::Neg(a) | Expr::Conj(a) => has_negative_power(a),
        Expr::Pow(a, n) => *n < 0 || has_negative_power(a),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::semantic_eq;
    use crate::scalar::{int, rat};

    fn q() -> AlgebraSpec {
        AlgebraSpec::quaternion()
    }

    #[test]
    fn powers_and_products() {
        let alg = q();
        assert_eq!(parse("x^2").unwrap(), Expr::Pow(Box::new(Expr::Var(Var::X)), 2));
        let p = parse_poly("x^2", &alg).unwrap();
        let xx = NcPoly::var(Var::X, &alg).mul(&NcPoly::var(Var::X, &alg), &alg);
        assert_eq!(p, xx);
    }

    #[test]
    fn ode_right_hand_side() {
        let alg = q();
        let p = parse_poly("h*x^2 + x*h*x + x^2*h", &alg).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.degree_in(Var::H(1)), 1);
        assert_eq!(p.to_text(&alg), "h1*x^2 + x*h1*x + x^2*h1");
    }

    #[test]
    fn conj_lowering() {
        let alg = q();
        let p = parse_poly("conj(x)", &alg).unwrap();
        let expect = parse_poly("(-1/2)*(x + i*x*i + j*x*j + k*x*k)", &alg).unwrap();
        assert!(semantic_eq(&p, &expect, &alg));
        let e = Element::from_i64(&[1, 2, 3, 4]);
        let v = p.eval(&HashMap::from([(Var::X, e.clone())]), &alg).unwrap();
        assert_eq!(v, alg.conj(&e).unwrap());
        let c = AlgebraSpec::complex();
        assert!(matches!(parse_poly("conj(x)", &c), Err(Error::UnsupportedOperation(_))));
    }

    #[test]
    fn literals() {
        let alg = q();
        let e = parse_element("1+2i-3j+1/2k", &alg).unwrap();
        assert_eq!(e, Element::new(vec![int(1), int(2), int(-3), rat(1, 2)]));
        assert_eq!(parse_element("x=-1", &alg).unwrap(), alg.scalar(int(-1)));
        assert_eq!(parse_element("0", &alg).unwrap(), alg.zero());
        assert!(matches!(parse_element("x+1", &alg), Err(Error::Semantic(_))));
        let c = AlgebraSpec::complex();
        assert!(matches!(parse_element("j", &c), Err(Error::Semantic(_))));
        // whitespace breaks the implicit product
        assert!(matches!(parse("2 i"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn syntax_errors_have_positions() {
        match parse("x +\n  * x") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        match parse("x $ 1") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 3)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("(x"), Err(Error::Syntax { .. })));
        assert!(matches!(parse(""), Err(Error::Syntax { .. })));
        assert!(matches!(parse("h0"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("h33"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("1/0"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("z"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn negative_powers() {
        let alg = q();
        let e = parse("x^-1").unwrap();
        assert!(has_negative_power(&e));
        assert!(matches!(lower(&e, &alg), Err(Error::Semantic(_))));
        let v = eval_f64(&e, &HashMap::from([(Var::X, vec![0.0, 1.0, 0.0, 0.0])]), &alg).unwrap();
        assert_eq!(v, vec![0.0, -1.0, 0.0, 0.0]);
    }

    #[test]
    fn print_parse_fixed_point() {
        for text in [
            "x^2",
            "h*x^2 + x*h*x + x^2*h",
            "-(x - 1/2*i)*x",
            "conj(x*j) - -3",
            "(x + 1)^3*h2",
            "1+2i-3j+1/2k",
            "x - (h - x)",
            "-x^2",
        ] {
            let e = parse(text).unwrap();
            let printed = e.to_string();
            assert_eq!(parse(&printed).unwrap(), e, "{text} -> {printed}");
        }
    }

    #[test]
    fn canonical_text_round_trips() {
        let alg = q();
        for text in ["(1+2i)*x*(j)*x - 1/2*x", "x*h1 + h1*x", "x^3 + 3", "i*x*(-1/2+k)"] {
            let p = parse_poly(text, &alg).unwrap().simplified();
            let printed = p.to_text(&alg);
            let again = parse_poly(&printed, &alg).unwrap().simplified();
            assert_eq!(again.to_text(&alg), printed);
            assert!(semantic_eq(&p, &again, &alg));
        }
    }
}
