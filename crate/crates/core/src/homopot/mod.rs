//! Homogeneous rational potentials, their derivatives and exact evaluation.

mod parse;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{fmt_rat, parse_rat, GRat, MPoly, Mat, Scalar};

/// `V = num/den` with both parts homogeneous and `k = deg num - deg den != 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomoPotential {
    n: usize,
    k: i64,
    num: MPoly,
    den: Option<MPoly>,
}

/// `num / base^power`, the shape every derivative of a potential takes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MRat {
    pub num: MPoly,
    pub base: MPoly,
    pub power: u32,
}

impl MRat {
    pub fn poly(p: MPoly) -> MRat {
        let n = p.nvars();
        MRat { num: p, base: MPoly::one(n), power: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn derivative(&self, i: usize) -> MRat {
        if self.power == 0 {
            return MRat { num: self.num.derivative(i), base: self.base.clone(), power: 0 };
        }
        // (u/b^m)' = (u' b - m u b') / b^(m+1)
        let m = GRat::int(self.power as i64);
        let num = self
            .num
            .derivative(i)
            .mul(&self.base)
            .sub(&self.num.mul(&self.base.derivative(i)).scale(&m));
        MRat { num, base: self.base.clone(), power: self.power + 1 }
    }

    /// Degree of homogeneity, if homogeneous.
    pub fn degree(&self) -> Option<i64> {
        let dn = self.num.homogeneous_degree()? as i64;
        let db = if self.power == 0 { 0 } else { self.base.homogeneous_degree()? as i64 };
        Some(dn - db * self.power as i64)
    }

    pub fn eval<T: Scalar>(&self, c: &[T]) -> Result<T> {
        let v = self.num.eval(c);
        if self.power == 0 {
            return Ok(v);
        }
        let b = self.base.eval(c);
        let inv = b
            .inv()
            .ok_or_else(|| Error::Pole(format!("denominator {} vanishes at {}", self.base, fmt_point(c))))?;
        Ok(v * &inv.pow(self.power))
    }
}

impl fmt::Display for MRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.power {
            0 => write!(f, "{}", self.num),
            1 => write!(f, "({})/({})", self.num, self.base),
            m => write!(f, "({})/({})^{m}", self.num, self.base),
        }
    }
}

impl fmt::Debug for MRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses an arbitrary (not necessarily homogeneous) polynomial in
/// `q1..qn` with the potential grammar.
pub fn parse_polynomial(src: &str, n: usize) -> Result<MPoly> {
    parse::parse_polynomial(src, n)
}

pub fn fmt_point<T: fmt::Display>(c: &[T]) -> String {
    let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

impl HomoPotential {
    /// Validates homogeneity of both parts and the degree.
    pub fn new(num: MPoly, den: Option<MPoly>) -> Result<Self> {
        let n = num.nvars();
        if n < 2 {
            return Err(Error::Invalid("a potential needs at least two variables".into()));
        }
        let dn = homogeneous_or_err(&num)?;
        let den = match den {
            Some(d) if d.nvars() != n => {
                return Err(Error::Invalid("numerator and denominator variable counts differ".into()))
            }
            Some(d) if d.is_zero() => return Err(Error::ZeroPolynomial),
            Some(d) if d.total_degree() == Some(0) => {
                let inv = d.terms().next().unwrap().1.inv().unwrap();
                return HomoPotential::new(num.scale(&inv), None);
            }
            other => other,
        };
        let dd = match &den {
            Some(d) => homogeneous_or_err(d)?,
            None => 0,
        };
        let k = dn - dd;
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        Ok(HomoPotential { n, k, num, den })
    }

    pub fn polynomial(num: MPoly) -> Result<Self> {
        HomoPotential::new(num, None)
    }

    /// Text grammar or JSON document (detected by a leading `{`).
    pub fn parse(src: &str) -> Result<Self> {
        if src.trim_start().starts_with('{') {
            return HomoPotential::from_json(src);
        }
        HomoPotential::parse_text(src, None)
    }

    /// Text grammar with an optional explicit variable count.
    pub fn parse_text(src: &str, n: Option<usize>) -> Result<Self> {
        let (n, summands) = parse::parse_summands(src, n)?;
        let (num, den) = parse::combine(summands, n)?;
        let den = (den != MPoly::one(n)).then_some(den);
        HomoPotential::new(num, den)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> i64 {
        self.k
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn denominator(&self) -> Option<&MPoly> {
        self.den.as_ref()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_none()
    }

    pub fn as_mrat(&self) -> MRat {
        match &self.den {
            None => MRat::poly(self.num.clone()),
            Some(d) => MRat { num: self.num.clone(), base: d.clone(), power: 1 },
        }
    }

    pub fn eval<T: Scalar>(&self, c: &[T]) -> Result<T> {
        self.check_dim(c.len())?;
        self.as_mrat().eval(c)
    }

    pub fn gradient(&self) -> Vec<MRat> {
        let v = self.as_mrat();
        (0..self.n).map(|i| v.derivative(i)).collect()
    }

    pub fn gradient_at<T: Scalar>(&self, c: &[T]) -> Result<Vec<T>> {
        self.check_dim(c.len())?;
        self.gradient().iter().map(|g| g.eval(c)).collect()
    }

    /// `<q, grad V> - k V`, which vanishes identically for valid potentials.
    pub fn euler_residual(&self) -> MRat {
        self.euler_residual_with_degree(self.k)
    }

    /// Euler residual against an arbitrary claimed degree.
    #[doc(hidden)]
    pub fn euler_residual_with_degree(&self, k: i64) -> MRat {
        let n = self.n;
        let grad = self.gradient();
        let (base, power) = (grad[0].base.clone(), grad[0].power);
        let mut num = MPoly::zero(n);
        for (i, g) in grad.iter().enumerate() {
            num = num.add(&MPoly::var(n, i).mul(&g.num));
        }
        // k V over the common denominator base^power
        let kv = match &self.den {
            None => self.num.scale(&GRat::int(k)),
            Some(d) => self.num.mul(d).scale(&GRat::int(k)),
        };
        MRat { num: num.sub(&kv), base, power }
    }

    /// Symmetric matrix of second partials evaluated at `c`.
    pub fn hessian_at<T: Scalar>(&self, c: &[T]) -> Result<Mat<T>> {
        self.check_dim(c.len())?;
        let grad = self.gradient();
        let mut h = Mat::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in i..self.n {
                let v = grad[i].derivative(j).eval(c)?;
                h[(j, i)] = v.clone();
                h[(i, j)] = v;
            }
        }
        Ok(h)
    }

    fn check_dim(&self, m: usize) -> Result<()> {
        if m != self.n {
            return Err(Error::Invalid(format!("point has {m} coordinates, potential has {} variables", self.n)));
        }
        Ok(())
    }

    pub fn to_json_value(&self) -> PotentialJson {
        PotentialJson {
            n: self.n,
            k: self.k,
            numerator: terms_json(&self.num),
            denominator: self.den.as_ref().map(terms_json),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let doc: PotentialJson =
            serde_json::from_str(src).map_err(|e| Error::Parse(format!("potential JSON: {e}")))?;
        HomoPotential::from_json_value(&doc)
    }

    pub fn from_json_value(doc: &PotentialJson) -> Result<Self> {
        let num = terms_from_json(doc.n, &doc.numerator)?;
        let den = doc.denominator.as_ref().map(|d| terms_from_json(doc.n, d)).transpose()?;
        let v = HomoPotential::new(num, den)?;
        if v.k != doc.k {
            return Err(Error::Invalid(format!("declared k = {} but the terms have degree {}", doc.k, v.k)));
        }
        Ok(v)
    }
}

fn homogeneous_or_err(p: &MPoly) -> Result<i64> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if let Some(d) = p.homogeneous_degree() {
        return Ok(d as i64);
    }
    let names = crate::exactnum::mpoly::q_names(p.nvars());
    let mut terms: Vec<_> = p.terms().collect();
    let first: u32 = terms[0].0.iter().sum();
    terms.retain(|(e, _)| e.iter().sum::<u32>() != first);
    let (e, c) = terms[0];
    let bad = MPoly::monomial(p.nvars(), e.clone(), c.clone());
    Err(Error::NonHomogeneous {
        term: bad.display_with(&names),
        expected: first as i64,
        found: e.iter().sum::<u32>() as i64,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<u32>,
    pub re: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PotentialJson {
    pub n: usize,
    pub k: i64,
    pub numerator: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denominator: Option<Vec<TermJson>>,
}

pub(crate) fn terms_json(p: &MPoly) -> Vec<TermJson> {
    p.terms()
        .rev()
        .map(|(e, c)| TermJson {
            exps: e.clone(),
            re: fmt_rat(&c.re),
            im: (!c.is_real()).then(|| fmt_rat(&c.im)),
        })
        .collect()
}

pub(crate) fn terms_from_json(n: usize, terms: &[TermJson]) -> Result<MPoly> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        if t.exps.len() != n {
            return Err(Error::Parse(format!(
                "term exponent vector {:?} has length {}, expected {n}",
                t.exps,
                t.exps.len()
            )));
        }
        let re = parse_rat(&t.re)?;
        let im = t.im.as_deref().map(parse_rat).transpose()?.unwrap_or_default();
        out.push((t.exps.clone(), GRat::new(re, im)));
    }
    Ok(MPoly::from_terms(n, out))
}

impl fmt::Display for HomoPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.den {
            None => write!(f, "{}", self.num),
            Some(d) => write!(f, "({})/({})", self.num, d),
        }
    }
}

impl fmt::Debug for HomoPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomoPotential(n={}, k={}, {self})", self.n, self.k)
    }
}
