//! Polynomial expressions: `+ - * ^`, parentheses, integer and `a/b`
//! literals. Columns in errors are 1-based character positions.

use crate::algebra::field::{ratio, FieldElement};
use crate::algebra::poly::{Poly, X, Y};
use crate::error::{Error, Result};
use crate::germ::MapPair;
use crate::query::CurveGerm;

/// Identifiers the parser accepts.
#[derive(Clone, Debug)]
pub struct Context {
    pub vars: Vec<(String, usize)>,
    /// Name and value of the generator of a coefficient extension.
    pub generator: Option<(String, FieldElement)>,
}

impl Context {
    pub fn source() -> Self {
        Context { vars: vec![("x".into(), X), ("y".into(), Y)], generator: None }
    }

    pub fn curve() -> Self {
        Context { vars: vec![("t".into(), X)], generator: None }
    }

    pub fn with_generator(mut self, name: &str, value: FieldElement) -> Self {
        self.generator = Some((name.into(), value));
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn err(column: usize, message: impl Into<String>) -> Error {
    Error::Parse { column, message: message.into() }
}

fn lex(text: &str, offset: usize) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = offset + i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Num(chars[s..i].iter().collect()), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let s = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[s..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), col));
            i += 1;
        } else {
            return Err(err(col, format!("unexpected character '{}'", c)));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    ctx: &'a Context,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let e: u32 = n.parse().map_err(|_| err(col, "exponent too large"))?;
                Ok(base.pow(e))
            }
            Some(Tok::Op('-')) => Err(err(col, "negative exponent")),
            _ => Err(err(col, "expected a nonnegative integer exponent")),
        }
    }

    fn integer(&mut self, n: &str, col: usize) -> Result<i64> {
        n.parse().map_err(|_| err(col, "integer literal too large"))
    }

    fn atom(&mut self) -> Result<Poly> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let a = self.integer(&n, col)?;
                if self.eat('/') {
                    let dcol = self.col();
                    let Some(Tok::Num(d)) = self.peek().cloned() else {
                        return Err(err(dcol, "expected an integer denominator"));
                    };
                    self.pos += 1;
                    let b = self.integer(&d, dcol)?;
                    if b == 0 {
                        return Err(err(dcol, "zero denominator"));
                    }
                    return Ok(Poly::constant(FieldElement::from(ratio(a, b))));
                }
                Ok(Poly::int(a))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                if let Some((_, v)) = self.ctx.vars.iter().find(|(n, _)| *n == s) {
                    return Ok(Poly::var(*v));
                }
                match &self.ctx.generator {
                    Some((n, g)) if *n == s => Ok(Poly::constant(g.clone())),
                    _ => Err(err(col, format!("unknown identifier '{}'", s))),
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(err(self.col(), "expected ')'"));
                }
                Ok(e)
            }
            Some(Tok::Op(c)) => Err(err(col, format!("unexpected '{}'", c))),
            None => Err(err(col, "unexpected end of input")),
        }
    }
}

/// Parses `text`, reporting columns shifted by `offset`.
pub fn parse_with(text: &str, ctx: &Context, offset: usize) -> Result<Poly> {
    let toks = lex(text, offset)?;
    let end = offset + text.chars().count() + 1;
    let mut p = Parser { toks, pos: 0, end, ctx };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        let (t, col) = &p.toks[p.pos];
        let what = match t {
            Tok::Num(n) => n.clone(),
            Tok::Ident(s) => s.clone(),
            Tok::Op(c) => c.to_string(),
        };
        return Err(err(*col, format!("unexpected '{}'", what)));
    }
    Ok(e)
}

/// A polynomial in `x, y`.
pub fn parse_poly(text: &str) -> Result<Poly> {
    parse_with(text, &Context::source(), 0)
}

/// Splits at the commas outside parentheses, keeping the start column of
/// each piece.
fn split_top(text: &str) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut start_col = 0;
    for (col, (i, c)) in text.char_indices().enumerate() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((&text[start..i], start_col));
                start = i + 1;
                start_col = col + 1;
            }
            _ => {}
        }
    }
    out.push((&text[start..], start_col));
    out
}

fn parse_pair(text: &str, ctx: &Context) -> Result<(Poly, Poly)> {
    let parts = split_top(text);
    if parts.len() != 2 {
        let col = if parts.len() > 2 { parts[2].1 } else { text.chars().count() + 1 };
        return Err(err(col, format!("expected two components separated by a comma, found {}", parts.len())));
    }
    Ok((parse_with(parts[0].0, ctx, parts[0].1)?, parse_with(parts[1].0, ctx, parts[1].1)?))
}

/// `"f, g"` as a germ.
pub fn parse_map_with(text: &str, ctx: &Context) -> Result<MapPair> {
    let (f, g) = parse_pair(text, ctx)?;
    MapPair::new(f, g)
}

pub fn parse_map(text: &str) -> Result<MapPair> {
    parse_map_with(text, &Context::source())
}

/// `"p(t), q(t)"`; `"0"` or `"0, 0"` is the degenerate germ.
pub fn parse_curve_with(text: &str, ctx: &Context) -> Result<CurveGerm> {
    if split_top(text).len() == 1 {
        let p = parse_with(text, ctx, 0)?;
        return if p.is_zero() { Ok(CurveGerm::Degenerate) } else { Err(err(1, "expected two components")) };
    }
    let (p, q) = parse_pair(text, ctx)?;
    CurveGerm::new(p, q)
}

pub fn parse_curve(text: &str) -> Result<CurveGerm> {
    parse_curve_with(text, &Context::curve())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(r: Result<Poly>) -> usize {
        match r {
            Err(Error::Parse { column, .. }) => column,
            other => panic!("expected a parse error, got {:?}", other),
        }
    }

    #[test]
    fn examples() {
        assert_eq!(parse_poly("x^3*y^3").unwrap(), Poly::xy(1, 3, 3));
        assert_eq!(parse_poly("(x+y)^2 - x^2 - 2*x*y").unwrap(), Poly::xy(1, 0, 2));
        assert_eq!(col(parse_poly("x**2")), 3);
    }

    #[test]
    fn literals_and_signs() {
        let p = parse_poly("-1/2*x + -y").unwrap();
        let q = &Poly::x().scale(&FieldElement::from(ratio(-1, 2))) - &Poly::y();
        assert_eq!(p, q);
        assert_eq!(parse_poly(" 3 ").unwrap(), Poly::int(3));
    }

    #[test]
    fn errors() {
        assert_eq!(col(parse_poly("x + z")), 5);
        assert_eq!(col(parse_poly("x^-2")), 3);
        assert_eq!(col(parse_poly("x y")), 3);
        assert_eq!(col(parse_poly("(x")), 3);
        assert_eq!(col(parse_poly("1/0")), 3);
        assert_eq!(col(parse_poly("")), 1);
        assert_eq!(col(parse_poly("x $ y")), 3);
    }

    #[test]
    fn maps_and_curves() {
        let m = parse_map("x*y, y").unwrap();
        assert_eq!((m.f, m.g), (Poly::xy(1, 1, 1), Poly::y()));
        let m = parse_map("(x+y)^2, (x+y)^3").unwrap();
        assert_eq!(m.g.total_degree(), 3);
        assert!(parse_map("x, y, x").is_err());
        match parse_map("x, y + w") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 8),
            other => panic!("{:?}", other),
        }
        assert!(matches!(parse_map("x + 1, y"), Err(Error::InvalidGerm(_))));
        assert_eq!(parse_curve("t^2, t").unwrap(), CurveGerm::Param(Poly::xy(1, 2, 0), Poly::x()));
        assert_eq!(parse_curve("0").unwrap(), CurveGerm::Degenerate);
        assert_eq!(parse_curve("0, 0").unwrap(), CurveGerm::Degenerate);
        assert!(parse_curve("x, t").is_err());
    }

    #[test]
    fn generator() {
        let k = crate::algebra::field::NumberField::new(vec![crate::algebra::field::rat(-2), crate::algebra::field::rat(0), crate::algebra::field::rat(1)]).unwrap();
        let ctx = Context::source().with_generator("a", k.generator());
        let p = parse_with("a*x", &ctx, 0).unwrap();
        assert!(!p.is_rational());
        assert_eq!(&p * &p, Poly::xy(2, 2, 0));
    }
}
