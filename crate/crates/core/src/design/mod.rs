//! Constructions around the Hessian map `V ↦ V''(c)`: dimension counts,
//! potentials with a prescribed Hessian at a prescribed Darboux point, trace
//! tests, isotropy, the planar `W` condition and Poisson brackets.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::darboux::verify_pdp;
use crate::error::{Error, Result};
use crate::exactnum::rat::binomial;
use crate::exactnum::{int, GRat, MPoly, Mat, Scalar};
use crate::homopot::{parse_polynomial, terms_from_json, terms_json, HomoPotential, TermJson};

/// `(dim R, dim R_c, dim Sym, dim Sym_c)` for degree-`k` forms in `n`
/// variables: `C(n+k-1, n-1)`, that minus `n`, `C(n+1, 2)`, that minus `n`.
pub fn dims(n: usize, k: usize) -> Result<(u64, u64, u64, u64)> {
    if n < 2 || k < 1 {
        return Err(Error::Precondition(format!("dims needs n >= 2 and k >= 1, got n = {n}, k = {k}")));
    }
    let (n64, k64) = (n as u64, k as u64);
    let r = binomial(n64 + k64 - 1, n64 - 1);
    let s = binomial(n64 + 1, 2);
    Ok((r, r.saturating_sub(n64), s, s - n64))
}

/// Exponent vectors of degree `k` in `n` variables, lexicographically
/// descending (`q1^k` first).
pub fn monomials(n: usize, k: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(k);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=k).rev() {
            prefix.push(e);
            rec(n, k - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::new(), &mut out);
    out
}

/// Largest number of column subsets tried by the sparsest-support search.
const SUPPORT_BUDGET: usize = 20_000;

/// A degree-`k` polynomial potential with `V'(c) = c` and `V''(c) = A`.
///
/// The monomial coefficients solve `n + n(n+1)/2` linear equations. Among
/// the solutions, the one with the fewest monomials is returned, ties broken
/// by the lexicographically first support in the order of [`monomials`].
/// Past a fixed search budget the basic solution of the full system is used.
pub fn design_potential(c: &[GRat], a: &Mat<GRat>, k: i64) -> Result<HomoPotential> {
    let n = c.len();
    if k < 3 {
        return Err(Error::Precondition(format!("design needs k >= 3, got {k}")));
    }
    if n < 2 || a.rows() != n || a.cols() != n {
        return Err(Error::Precondition(format!(
            "point has {n} coordinates, matrix is {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if c.iter().all(Scalar::is_zero) {
        return Err(Error::Precondition("c must be nonzero".into()));
    }
    if !a.is_symmetric() {
        return Err(Error::Invalid("matrix is not symmetric".into()));
    }
    let km1 = GRat::int(k - 1);
    let ac = a.mul_vec(c);
    if ac.iter().zip(c).any(|(x, y)| *x != km1.clone() * y) {
        return Err(Error::ConstraintViolation(format!(
            "A c = ({}) differs from (k - 1) c",
            ac.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        )));
    }

    let monos = monomials(n, k as u32);
    // one column per monomial: its gradient and upper Hessian at c
    let mut rhs: Vec<GRat> = c.to_vec();
    for i in 0..n {
        for j in i..n {
            rhs.push(a[(i, j)].clone());
        }
    }
    let columns: Vec<Vec<GRat>> = monos
        .iter()
        .map(|e| {
            let m = MPoly::monomial(n, e.clone(), GRat::one());
            let mut col: Vec<GRat> = (0..n).map(|i| m.derivative(i).eval(c)).collect();
            for i in 0..n {
                let di = m.derivative(i);
                for j in i..n {
                    col.push(di.derivative(j).eval(c));
                }
            }
            col
        })
        .collect();
    let system = |cols: &[usize]| -> Mat<GRat> {
        let mut m = Mat::zeros(rhs.len(), cols.len());
        for (jj, &j) in cols.iter().enumerate() {
            for i in 0..rhs.len() {
                m[(i, jj)] = columns[j][i].clone();
            }
        }
        m
    };
    let useful: Vec<usize> = (0..monos.len()).filter(|&j| columns[j].iter().any(|x| !x.is_zero())).collect();
    let full = system(&useful);
    let rank = full.rank();
    let basic = full
        .solve(&rhs)
        .ok_or_else(|| Error::Internal("Hessian-map system is inconsistent".into()))?;

    let mut best: Option<(Vec<usize>, Vec<GRat>)> = None;
    let mut tried = 0usize;
    'sizes: for size in 1..=rank.min(useful.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            tried += 1;
            if tried > SUPPORT_BUDGET {
                log::debug!("support search budget exhausted at size {size}");
                break 'sizes;
            }
            let cols: Vec<usize> = idx.iter().map(|&i| useful[i]).collect();
            if let Some(x) = system(&cols).solve(&rhs) {
                best = Some((cols, x));
                break 'sizes;
            }
            // next combination
            let mut i = size;
            while i > 0 && idx[i - 1] == useful.len() - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    let (cols, x) = best.unwrap_or((useful.clone(), basic));
    let poly = MPoly::from_terms(n, cols.iter().zip(x).map(|(&j, v)| (monos[j].clone(), v)));
    let v = HomoPotential::polynomial(poly)?;
    if !verify_pdp(&v, c)?.iter().all(Scalar::is_zero) || v.hessian_at(c)? != *a {
        return Err(Error::Internal("designed potential fails its constraints".into()));
    }
    Ok(v)
}

/// `tr(A^p) = n (k-1)^p` for `p = 1..n`, i.e. `k - 1` is the only eigenvalue.
pub fn spec_trace_check<T: Scalar>(a: &Mat<T>, k: i64) -> bool {
    if !a.is_square() {
        return false;
    }
    let n = a.rows();
    let km1 = T::from_grat(GRat::int(k - 1));
    let nn = T::from_grat(GRat::int(n as i64));
    let mut power = a.clone();
    let mut target = km1.clone();
    for p in 1..=n {
        if p > 1 {
            power = power.mul(a);
            target = target * &km1;
        }
        if power.trace() != nn.clone() * &target {
            return false;
        }
    }
    true
}

/// `⟨c, c⟩ = Σ cᵢ²`; zero exactly for isotropic `c`.
pub fn isotropy<T: Scalar>(c: &[T]) -> T {
    c.iter().fold(T::zero(), |acc, x| acc + &(x.clone() * x))
}

/// `i ∂W/∂q1(c0) + ∂W/∂q2(c0)` at `c0 = (1, i)`; a nonzero value shows that
/// `V = (q1² + q2²) W` is not integrable.
pub fn w_condition(w: &HomoPotential) -> Result<GRat> {
    let mut problems = Vec::new();
    if w.nvars() != 2 {
        problems.push(format!("W must be planar, got n = {}", w.nvars()));
    }
    let k = w.degree();
    if [-4, -2, -1, 0].contains(&k) {
        problems.push(format!("deg W = {k} is excluded"));
    }
    let c0 = [GRat::one(), GRat::i()];
    if problems.is_empty() {
        match w.eval(&c0) {
            Ok(val) if val.is_zero() => problems.push("W(1, i) = 0".into()),
            Ok(_) => {}
            Err(Error::Pole(_)) => problems.push("W has a pole at (1, i)".into()),
            Err(e) => return Err(e),
        }
    }
    if !problems.is_empty() {
        return Err(Error::Precondition(problems.join("; ")));
    }
    let g = w.gradient_at(&c0)?;
    Ok(GRat::i() * &g[0] + &g[1])
}

/// Polynomial in `q1..qn, p1..pn` (variables `0..n` and `n..2n`).
#[derive(Clone, PartialEq, Eq)]
pub struct PhaseFunction {
    n: usize,
    poly: MPoly,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PhaseFunctionJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermJson>>,
}

fn max_index(src: &str, var: char) -> usize {
    let mut best = 0;
    for (i, ch) in src.char_indices() {
        if ch != var {
            continue;
        }
        let digits: String = src[i + 1..].chars().take_while(char::is_ascii_digit).collect();
        if let Ok(v) = digits.parse::<usize>() {
            best = best.max(v);
        }
    }
    best
}

impl PhaseFunction {
    pub fn new(n: usize, poly: MPoly) -> Result<Self> {
        if poly.nvars() != 2 * n {
            return Err(Error::Invalid(format!(
                "phase function over n = {n} needs {} variables, got {}",
                2 * n,
                poly.nvars()
            )));
        }
        Ok(PhaseFunction { n, poly })
    }

    pub fn q(n: usize, i: usize) -> Self {
        PhaseFunction { n, poly: MPoly::var(2 * n, i) }
    }

    pub fn p(n: usize, i: usize) -> Self {
        PhaseFunction { n, poly: MPoly::var(2 * n, n + i) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &MPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        PhaseFunction { n: self.n, poly: self.poly.add(&o.poly) }
    }

    pub fn scale(&self, c: &GRat) -> Self {
        PhaseFunction { n: self.n, poly: self.poly.scale(c) }
    }

    /// Text over `q1..qn` and `p1..pn`; `n` defaults to the largest index.
    pub fn parse(src: &str, n: Option<usize>) -> Result<Self> {
        let found = max_index(src, 'q').max(max_index(src, 'p')).max(1);
        let n = match n {
            Some(n) if n < found => {
                return Err(Error::Parse(format!("index {found} exceeds declared n = {n}")))
            }
            Some(n) => n,
            None => found,
        };
        let mut text = String::with_capacity(src.len());
        let mut chars = src.char_indices().peekable();
        while let Some((i, ch)) = chars.next() {
            if ch != 'p' {
                text.push(ch);
                continue;
            }
            let digits: String = src[i + 1..].chars().take_while(char::is_ascii_digit).collect();
            let idx: usize = digits
                .parse()
                .map_err(|_| Error::Parse(format!("expected an index after 'p' at offset {i}")))?;
            if idx == 0 {
                return Err(Error::Parse("momenta are numbered from p1".into()));
            }
            text.push_str(&format!("q{}", n + idx));
            for _ in 0..digits.len() {
                chars.next();
            }
        }
        PhaseFunction::new(n, parse_polynomial(&text, 2 * n)?)
    }

    /// `{"n": .., "expr": ".."}` or `{"n": .., "terms": [..]}`; plain text is
    /// also accepted.
    pub fn from_json(src: &str) -> Result<Self> {
        if !src.trim_start().starts_with('{') {
            return PhaseFunction::parse(src.trim(), None);
        }
        let doc: PhaseFunctionJson =
            serde_json::from_str(src).map_err(|e| Error::Parse(format!("phase function JSON: {e}")))?;
        match (&doc.expr, &doc.terms) {
            (Some(e), None) => PhaseFunction::parse(e, Some(doc.n)),
            (None, Some(t)) => PhaseFunction::new(doc.n, terms_from_json(2 * doc.n, t)?),
            _ => Err(Error::Parse("phase function needs exactly one of \"expr\" and \"terms\"".into())),
        }
    }

    pub fn to_json_value(&self) -> PhaseFunctionJson {
        PhaseFunctionJson { n: self.n, expr: None, terms: Some(terms_json(&self.poly)) }
    }

    pub fn names(&self) -> Vec<String> {
        (1..=self.n)
            .map(|i| format!("q{i}"))
            .chain((1..=self.n).map(|i| format!("p{i}")))
            .collect()
    }
}

impl fmt::Display for PhaseFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        f.write_str(&self.poly.display_with(&self.names()))
    }
}

impl fmt::Debug for PhaseFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `{F, G} = Σ ∂F/∂qᵢ ∂G/∂pᵢ - ∂F/∂pᵢ ∂G/∂qᵢ`.
pub fn poisson_bracket(f: &PhaseFunction, g: &PhaseFunction) -> Result<PhaseFunction> {
    if f.n != g.n {
        return Err(Error::Invalid(format!("bracket of n = {} and n = {} functions", f.n, g.n)));
    }
    let n = f.n;
    let mut acc = MPoly::zero(2 * n);
    for i in 0..n {
        let a = f.poly.derivative(i).mul(&g.poly.derivative(n + i));
        let b = f.poly.derivative(n + i).mul(&g.poly.derivative(i));
        acc = acc.add(&a.sub(&b));
    }
    Ok(PhaseFunction { n, poly: acc })
}

/// `H = ½(p1² + p2²) + α(q1² + q2²)(q1 - i q2)` and
/// `F = i p1² + 6 p1 p2 - 5i p2² + 8α q2 (q1 - i q2)²`.
pub fn isotropic_cubic_pair(alpha: &GRat) -> (PhaseFunction, PhaseFunction) {
    let q1 = PhaseFunction::q(2, 0).poly;
    let q2 = PhaseFunction::q(2, 1).poly;
    let p1 = PhaseFunction::p(2, 0).poly;
    let p2 = PhaseFunction::p(2, 1).poly;
    let i = GRat::i();
    let w = q1.sub(&q2.scale(&i));
    let kinetic = p1.pow(2).add(&p2.pow(2)).scale(&GRat::real(crate::exactnum::rat(1, 2)));
    let h = kinetic.add(&q1.pow(2).add(&q2.pow(2)).mul(&w).scale(alpha));
    let f = p1
        .pow(2)
        .scale(&i)
        .add(&p1.mul(&p2).scale(&GRat::int(6)))
        .sub(&p2.pow(2).scale(&(GRat::int(5) * &i)))
        .add(&q2.mul(&w.pow(2)).scale(&(GRat::real(int(8)) * alpha)));
    (PhaseFunction { n: 2, poly: h }, PhaseFunction { n: 2, poly: f })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, QuadNum};
    use crate::verdict::{screen_hessian_gaussian, screen_potential, VerdictKind};

    fn g(re: i64, im: i64) -> GRat {
        GRat::new(int(re), int(im))
    }

    fn gm(rows: &[&[(i64, i64)]]) -> Mat<GRat> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&(a, b)| g(a, b)).collect()).collect())
    }

    fn nilpotent_plus_two() -> Mat<GRat> {
        gm(&[&[(2, 0), (0, 0), (1, 0)], &[(0, 0), (2, 0), (0, 1)], &[(1, 0), (0, 1), (2, 0)]])
    }

    #[test]
    fn dims_examples() {
        assert_eq!(dims(2, 3).unwrap(), (4, 2, 3, 1));
        assert_eq!(dims(3, 3).unwrap(), (10, 7, 6, 3));
        assert_eq!(dims(2, 1).unwrap(), (2, 0, 3, 1));
        assert!(dims(1, 3).is_err());
    }

    #[test]
    fn monomial_order() {
        assert_eq!(monomials(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials(3, 4).len(), 15);
    }

    #[test]
    fn design_examples() {
        let c = [GRat::one(), GRat::zero()];
        let v = design_potential(&c, &gm(&[&[(2, 0), (0, 0)], &[(0, 0), (5, 0)]]), 3).unwrap();
        let expect = HomoPotential::parse("q1^3/3 + 5/2*q1*q2^2").unwrap();
        assert_eq!(v, expect);
        assert!(matches!(
            design_potential(&c, &gm(&[&[(1, 0), (0, 0)], &[(0, 0), (5, 0)]]), 3),
            Err(Error::ConstraintViolation(_))
        ));
        let c3 = [GRat::one(), GRat::i(), GRat::zero()];
        let v = design_potential(&c3, &nilpotent_plus_two(), 3).unwrap();
        let h = v.hessian_at(&c3).unwrap();
        let (_, verdict) = screen_hessian_gaussian(3, &h).unwrap();
        assert_eq!(verdict.condition(), Some(2));
        let pts = vec![c3.iter().cloned().map(QuadNum::from_grat).collect::<Vec<_>>()];
        let r = screen_potential(&v, Some(&pts)).unwrap();
        assert_eq!(r.verdict.kind, VerdictKind::NonIntegrable);
    }

    #[test]
    fn trace_examples() {
        assert!(spec_trace_check(&nilpotent_plus_two(), 3));
        assert!(!spec_trace_check(&gm(&[&[(2, 0), (0, 0)], &[(0, 0), (3, 0)]]), 3));
        for k in [3i64, 4, -2] {
            let m: Mat<GRat> = Mat::identity(3).scale(&GRat::int(k - 1));
            assert!(spec_trace_check(&m, k));
        }
    }

    #[test]
    fn isotropy_examples() {
        assert_eq!(isotropy(&[GRat::one(), GRat::i()]), GRat::zero());
        assert_eq!(isotropy(&[GRat::one(), GRat::zero()]), GRat::one());
        assert_eq!(isotropy(&[GRat::one(), GRat::i(), GRat::zero()]), GRat::zero());
    }

    #[test]
    fn w_condition_examples() {
        let w = |s: &str| HomoPotential::parse_text(s, Some(2)).unwrap();
        assert_eq!(w_condition(&w("q1")).unwrap(), GRat::i());
        assert_eq!(w_condition(&w("q1 - i*q2")).unwrap(), GRat::zero());
        assert_eq!(w_condition(&w("q2")).unwrap(), GRat::one());
        assert!(w_condition(&w("q1 + i*q2")).is_err());
        assert!(w_condition(&w("1/q1")).is_err());
        assert!(w_condition(&w("q1^3/(q1^2+q2^2)")).is_err());
    }

    #[test]
    fn bracket_examples() {
        let q1 = PhaseFunction::q(2, 0);
        let p1 = PhaseFunction::p(2, 0);
        assert_eq!(poisson_bracket(&q1, &p1).unwrap().poly(), &MPoly::one(4));
        let (h, f) = isotropic_cubic_pair(&GRat::one());
        assert!(poisson_bracket(&h, &h).unwrap().is_zero());
        assert!(poisson_bracket(&h, &f).unwrap().is_zero());
        for a in [rat(1, 3), rat(-7, 2), rat(5, 1)] {
            let (h, f) = isotropic_cubic_pair(&GRat::real(a));
            assert!(poisson_bracket(&h, &f).unwrap().is_zero());
        }
    }

    #[test]
    fn phase_parse() {
        let h = PhaseFunction::parse("1/2*(p1^2 + p2^2) + (q1^2 + q2^2)*(q1 - i*q2)", None).unwrap();
        let f = PhaseFunction::parse("i*p1^2 + 6*p1*p2 - 5*i*p2^2 + 8*q2*(q1 - i*q2)^2", None).unwrap();
        let (h0, f0) = isotropic_cubic_pair(&GRat::one());
        assert_eq!(h, h0);
        assert_eq!(f, f0);
        let json = serde_json::to_string(&h.to_json_value()).unwrap();
        assert_eq!(PhaseFunction::from_json(&json).unwrap(), h);
        let doc = serde_json::json!({"n": 2, "expr": h.to_string()}).to_string();
        assert_eq!(PhaseFunction::from_json(&doc).unwrap(), h);
        assert!(PhaseFunction::parse("p0", None).is_err());
    }
}
