//! Text grammar for potentials: `q1..qn`, `+ - * / ^`, the literal `i`,
//! integer and decimal literals, parentheses.

use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::exactnum::{parse_rat, GRat, MPoly, Rat, Scalar};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rat),
    Var(usize),
    I,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize, usize)>> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        let start = i;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' if b.get(i + 1) == Some(&b'*') => {
                i += 1;
                Tok::Caret
            }
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' | '.' => {
                while i + 1 < b.len() && (b[i + 1].is_ascii_digit() || b[i + 1] == b'.') {
                    i += 1;
                }
                Tok::Num(parse_rat(&src[start..=i])?)
            }
            'q' => {
                let mut j = i + 1;
                while j < b.len() && b[j].is_ascii_digit() {
                    j += 1;
                }
                if j == i + 1 {
                    return Err(Error::Parse(format!("expected variable index after 'q' at offset {i}")));
                }
                let idx: usize = src[i + 1..j]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad variable {:?}", &src[i..j])))?;
                if idx == 0 {
                    return Err(Error::Parse("variables are numbered from q1".into()));
                }
                i = j - 1;
                Tok::Var(idx)
            }
            'i' | 'I' => Tok::I,
            _ => {
                // multi-byte minus sign
                if src[i..].starts_with('\u{2212}') {
                    i += '\u{2212}'.len_utf8() - 1;
                    Tok::Minus
                } else {
                    let ch = src[i..].chars().next().unwrap();
                    return Err(Error::Parse(format!("unexpected character {ch:?} at offset {i}")));
                }
            }
        };
        i += 1;
        out.push((tok, start, i));
    }
    Ok(out)
}

/// Quotient of polynomials; denominators are kept as products, only
/// constant factors and common monomials are cancelled.
#[derive(Clone, Debug)]
pub(crate) struct Frac {
    pub num: MPoly,
    pub den: MPoly,
}

impl Frac {
    fn poly(p: MPoly) -> Frac {
        let n = p.nvars();
        Frac { num: p, den: MPoly::one(n) }
    }

    fn normalize(mut self) -> Frac {
        let n = self.num.nvars();
        if self.num.is_zero() {
            return Frac::poly(MPoly::zero(n));
        }
        // strip the common monomial factor
        let mut common: Option<Vec<u32>> = None;
        for (e, _) in self.num.terms().chain(self.den.terms()) {
            common = Some(match common {
                None => e.clone(),
                Some(c) => c.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        if let Some(c) = common.filter(|c| c.iter().any(|&x| x > 0)) {
            let shift = |p: &MPoly| {
                MPoly::from_terms(
                    n,
                    p.terms().map(|(e, v)| (e.iter().zip(&c).map(|(a, b)| a - b).collect(), v.clone())),
                )
            };
            self.num = shift(&self.num);
            self.den = shift(&self.den);
        }
        if self.den.len() == 1 && self.den.total_degree() == Some(0) {
            let inv = self.den.coeff(&vec![0; n]).inv().unwrap();
            return Frac::poly(self.num.scale(&inv));
        }
        self
    }

    fn add(&self, o: &Frac) -> Frac {
        if self.den == o.den {
            return Frac { num: self.num.add(&o.num), den: self.den.clone() }.normalize();
        }
        Frac {
            num: self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
        .normalize()
    }

    fn neg(&self) -> Frac {
        Frac { num: self.num.neg(), den: self.den.clone() }
    }

    fn mul(&self, o: &Frac) -> Frac {
        Frac { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }.normalize()
    }

    fn inv(&self) -> Result<Frac> {
        if self.num.is_zero() {
            return Err(Error::Parse("division by zero".into()));
        }
        Ok(Frac { num: self.den.clone(), den: self.num.clone() }.normalize())
    }

    /// Degree `deg num - deg den` when both parts are homogeneous.
    pub fn degree(&self) -> std::result::Result<i64, i64> {
        let tn = self.num.total_degree().unwrap_or(0) as i64;
        let td = self.den.total_degree().unwrap_or(0) as i64;
        match (self.num.homogeneous_degree(), self.den.homogeneous_degree()) {
            (Some(a), Some(b)) => Ok(a as i64 - b as i64),
            _ => Err(tn - td),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.src.len(), |t| t.1)
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.offset(), self.src))
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected {t:?}")))
        }
    }

    /// Top-level sum, keeping each summand with its source text.
    fn summands(&mut self) -> Result<Vec<(String, Frac)>> {
        let mut out = Vec::new();
        let mut sign_neg = false;
        match self.peek() {
            Some(Tok::Plus) => self.pos += 1,
            Some(Tok::Minus) => {
                sign_neg = true;
                self.pos += 1;
            }
            _ => {}
        }
        loop {
            let body_start = self.offset();
            let t = self.term()?;
            let end = self.toks.get(self.pos - 1).map_or(self.src.len(), |t| t.2);
            let text = self.src[body_start.min(end)..end].trim().to_string();
            out.push((text, if sign_neg { t.neg() } else { t }));
            match self.peek() {
                Some(Tok::Plus) => sign_neg = false,
                Some(Tok::Minus) => sign_neg = true,
                None => break,
                _ => return Err(self.err("unexpected token")),
            }
            self.pos += 1;
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<Frac> {
        let mut acc = match self.peek() {
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                self.term()?.neg()
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Frac> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?.inv()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Frac> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Frac> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let mut neg = false;
        if self.peek() == Some(&Tok::Minus) {
            neg = true;
            self.pos += 1;
        }
        let e = match self.peek() {
            Some(Tok::Num(r)) if r.is_integer() && !r.is_negative() => r.to_integer().to_u32(),
            _ => None,
        }
        .ok_or_else(|| self.err("expected a nonnegative integer exponent"))?;
        self.pos += 1;
        let mut acc = Frac::poly(MPoly::one(self.n));
        for _ in 0..e {
            acc = acc.mul(&base);
        }
        if neg {
            acc = acc.inv()?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Frac> {
        let n = self.n;
        let t = self.peek().cloned().ok_or_else(|| self.err("unexpected end of input"))?;
        self.pos += 1;
        match t {
            Tok::Num(r) => Ok(Frac::poly(MPoly::constant(n, GRat::real(r)))),
            Tok::I => Ok(Frac::poly(MPoly::constant(n, GRat::i()))),
            Tok::Var(k) => Ok(Frac::poly(MPoly::var(n, k - 1))),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            _ => {
                self.pos -= 1;
                Err(self.err("unexpected token"))
            }
        }
    }
}

/// Parses `src` into summands over `n` variables (`n` defaults to the
/// largest index used, at least 2).
pub(crate) fn parse_summands(src: &str, n: Option<usize>) -> Result<(usize, Vec<(String, Frac)>)> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let max_idx = toks
        .iter()
        .filter_map(|t| if let Tok::Var(k) = t.0 { Some(k) } else { None })
        .max()
        .unwrap_or(0);
    let n = match n {
        Some(n) if n < max_idx => {
            return Err(Error::Parse(format!("variable q{max_idx} exceeds declared n = {n}")))
        }
        Some(n) => n,
        None => max_idx.max(2),
    };
    let mut p = Parser { src, toks, pos: 0, n };
    let s = p.summands()?;
    Ok((n, s))
}

/// Sums the summands after checking they share one degree.
pub(crate) fn combine(summands: Vec<(String, Frac)>, n: usize) -> Result<(MPoly, MPoly)> {
    let mut expected: Option<i64> = None;
    let mut acc = Frac::poly(MPoly::zero(n));
    for (text, f) in summands {
        if f.num.is_zero() {
            continue;
        }
        match (f.degree(), expected) {
            (Ok(d), None) => expected = Some(d),
            (Ok(d), Some(e)) if d == e => {}
            (Ok(d), Some(e)) | (Err(d), Some(e)) => {
                return Err(Error::NonHomogeneous { term: text, expected: e, found: d })
            }
            (Err(d), None) => {
                return Err(Error::NonHomogeneous { term: text, expected: d, found: d })
            }
        }
        acc = acc.add(&f);
    }
    if acc.num.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok((acc.num, acc.den))
}

/// Sums the summands with no homogeneity requirement; the result must be a
/// polynomial.
pub(crate) fn parse_polynomial(src: &str, n: usize) -> Result<MPoly> {
    let (_, summands) = parse_summands(src, Some(n))?;
    let mut acc = Frac::poly(MPoly::zero(n));
    for (_, f) in summands {
        acc = acc.add(&f);
    }
    if acc.den != MPoly::one(n) {
        return Err(Error::Parse(format!("{src:?} is not a polynomial")));
    }
    Ok(acc.num)
}
