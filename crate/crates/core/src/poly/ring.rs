use std::fmt;

use super::{Monomial, MultiPoly, MAX_VARS};
use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

/// A named block of consecutive variables `name1, name2, ...` inside a ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    name: String,
    offset: usize,
    len: usize,
}

impl Alphabet {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Global index of the `k`-th variable (0-based).
    pub fn var(&self, k: usize) -> usize {
        assert!(k < self.len, "variable index out of range");
        self.offset + k
    }

    pub fn vars(&self) -> Vec<usize> {
        (self.offset..self.offset + self.len).collect()
    }

    /// The variables `start..start+len` of this alphabet, named like `y[2..3]`.
    pub fn slice(&self, start: usize, len: usize) -> Alphabet {
        assert!(start + len <= self.len, "slice out of range");
        let name = match len {
            1 => format!("{}[{}]", self.name, start + 1),
            _ => format!("{}[{}..{}]", self.name, start + 1, start + len),
        };
        Alphabet { name, offset: self.offset + start, len }
    }
}

/// A polynomial ring over a field with variables grouped into alphabets.
///
/// Variables are ordered by declaration, which fixes the monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: FieldSpec,
    alphabets: Vec<Alphabet>,
    nvars: usize,
}

impl PolyRing {
    pub fn new(field: FieldSpec, spec: &[(&str, usize)]) -> Result<PolyRing> {
        let mut alphabets = Vec::new();
        let mut offset = 0;
        for (name, len) in spec {
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphabetic()) {
                return Err(Error::InvalidParameters(format!("bad alphabet name '{name}'")));
            }
            if alphabets.iter().any(|a: &Alphabet| a.name == *name) {
                return Err(Error::InvalidParameters(format!("duplicate alphabet '{name}'")));
            }
            alphabets.push(Alphabet { name: name.to_string(), offset, len: *len });
            offset += len;
        }
        if offset > MAX_VARS {
            return Err(Error::TooManyVariables(offset));
        }
        Ok(PolyRing { field, alphabets, nvars: offset })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn alphabets(&self) -> &[Alphabet] {
        &self.alphabets
    }

    /// Panics if no alphabet has this name.
    pub fn alphabet(&self, name: &str) -> &Alphabet {
        self.alphabets
            .iter()
            .find(|a| a.name == name)
            .unwrap_or_else(|| panic!("no alphabet '{name}'"))
    }

    pub fn var_name(&self, i: usize) -> String {
        let a = self
            .alphabets
            .iter()
            .find(|a| i >= a.offset && i < a.offset + a.len)
            .expect("variable out of range");
        format!("{}{}", a.name, i - a.offset + 1)
    }

    pub fn zero(&self) -> MultiPoly {
        MultiPoly::zero(self.field)
    }

    pub fn one(&self) -> MultiPoly {
        MultiPoly::one(self.field)
    }

    pub fn var(&self, i: usize) -> MultiPoly {
        MultiPoly::var(i, self.field)
    }

    pub fn scalar(&self, n: i64) -> Scalar {
        Scalar::from_i64(n, self.field)
    }

    pub fn render(&self, p: &MultiPoly) -> String {
        self.display(p).to_string()
    }

    pub fn display<'a>(&'a self, p: &'a MultiPoly) -> PolyDisplay<'a> {
        PolyDisplay { ring: self, poly: p }
    }

    fn render_monomial(&self, m: Monomial) -> String {
        let mut parts = Vec::new();
        for i in 0..self.nvars {
            match m.exp(i) {
                0 => {}
                1 => parts.push(self.var_name(i)),
                e => parts.push(format!("{}^{e}", self.var_name(i))),
            }
        }
        parts.join("*")
    }

    /// Parse an expression with `+ - * / ^` and parentheses.
    pub fn parse(&self, s: &str) -> Result<MultiPoly> {
        let toks = tokenize(s)?;
        let mut p = Parser { ring: self, toks, pos: 0 };
        let out = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse(format!("unexpected token at {}", p.pos)));
        }
        Ok(out)
    }

    fn lookup_var(&self, ident: &str) -> Result<usize> {
        let split = ident.find(|c: char| c.is_ascii_digit()).unwrap_or(ident.len());
        let (name, idx) = ident.split_at(split);
        let a = self
            .alphabets
            .iter()
            .find(|a| a.name == name)
            .ok_or_else(|| Error::Parse(format!("unknown variable '{ident}'")))?;
        let k: usize = if idx.is_empty() && a.len == 1 {
            1
        } else {
            idx.parse().map_err(|_| Error::Parse(format!("unknown variable '{ident}'")))?
        };
        if k == 0 || k > a.len {
            return Err(Error::Parse(format!("unknown variable '{ident}'")));
        }
        Ok(a.offset + k - 1)
    }
}

/// Canonical text form of a polynomial in a ring.
pub struct PolyDisplay<'a> {
    ring: &'a PolyRing,
    poly: &'a MultiPoly,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms().iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = self.ring.render_monomial(*m);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(chars[st..i].iter().collect()));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Ident(chars[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a PolyRing,
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.toks.get(self.pos) {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(Error::Parse("division by a non-constant".into()));
                    }
                    acc = acc.scale(&d.terms()[0].1.inv()?);
                }
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('(')) => acc = &acc * &self.unary()?,
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        if self.peek_op() == Some('+') {
            self.pos += 1;
            return self.unary();
        }
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.toks.get(self.pos) {
                Some(Tok::Num(n)) => {
                    let e: u32 = n.parse().map_err(|_| Error::Parse("bad exponent".into()))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(Error::Parse("expected exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(Scalar::parse(&n, self.ring.field)?))
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                Ok(self.ring.var(self.ring.lookup_var(&id)?))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(Error::Parse("expected ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_parse_round_trip() {
        let r = PolyRing::new(FieldSpec::Rationals, &[("x", 2), ("y", 1)]).unwrap();
        let p = r.parse("3*x1^2*y1 - x2 + 1/2 - (x1 - x2)").unwrap();
        let s = r.render(&p);
        assert_eq!(s, "3*x1^2*y1 - x1 + 1/2");
        assert_eq!(r.parse(&s).unwrap(), p);
        assert_eq!(r.render(&r.zero()), "0");
        assert_eq!(r.parse("y^2").unwrap(), r.var(2).pow(2));
        assert!(r.parse("w1").is_err());
        assert!(r.parse("x3").is_err());
        assert!(r.parse("x1 +").is_err());
    }

    #[test]
    fn ring_limits() {
        assert_eq!(
            PolyRing::new(FieldSpec::Rationals, &[("x", 10), ("y", 6)]),
            Err(Error::TooManyVariables(16))
        );
        let r = PolyRing::new(FieldSpec::Prime(3), &[("x", 2)]).unwrap();
        assert_eq!(r.render(&r.parse("-x1").unwrap()), "2*x1");
        assert_eq!(r.var_name(1), "x2");
    }
}
