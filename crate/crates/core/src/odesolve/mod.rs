//! Rational solutions of first-order linear ODEs `f' + p f = q`, the
//! `J² = T(f)` test, Jacobi polynomials and Sturm root counting.

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exactnum::rat::to_i64;
use crate::exactnum::{
    int, resultant, upoly_rational_roots, GRat, MPoly, Mat, Rat, RatFn, Scalar, UPoly,
};

/// `f' + p f = q`.
#[derive(Clone, Debug, PartialEq)]
pub struct FirstOrderODE {
    pub p: RatFn,
    pub q: RatFn,
}

impl FirstOrderODE {
    pub fn new(p: RatFn, q: RatFn) -> Self {
        FirstOrderODE { p, q }
    }

    pub fn residual(&self, f: &RatFn) -> RatFn {
        f.derivative().add(&self.p.mul(f)).sub(&self.q)
    }

    pub fn solve(&self) -> Result<RationalSolutions> {
        rational_solve_first_order(&self.p, &self.q)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RationalSolutions {
    pub particular: Option<RatFn>,
    pub homogeneous: Option<RatFn>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiParams {
    pub n: u32,
    pub alpha: Rat,
    pub beta: Rat,
}

fn upoly_in(p: &UPoly, var: usize) -> MPoly {
    MPoly::from_terms(
        2,
        p.coeffs().iter().enumerate().map(|(i, c)| {
            let mut e = vec![0u32; 2];
            e[var] = i as u32;
            (e, c.clone())
        }),
    )
}

/// Residues of `a/b` (with `b` square-free, `deg a < deg b`) grouped as
/// `(ρ, g_ρ)` where `g_ρ` is the monic factor of `b` whose roots carry
/// residue `ρ`.
fn residue_split(a: &UPoly, b: &UPoly) -> Result<Vec<(GRat, UPoly)>> {
    if b.is_constant() {
        return Ok(Vec::new());
    }
    let db = b.derivative();
    // Res_z(b, a - y b')
    let y = MPoly::var(2, 1);
    let rhs = upoly_in(a, 0).sub(&y.mul(&upoly_in(&db, 0)));
    let res = resultant(&upoly_in(b, 0), &rhs, 0)?;
    let split = upoly_rational_roots(&res)?;
    if !split.residual.is_empty() {
        return Err(Error::Unsupported(
            "residues of p are not in Q(i)".into(),
        ));
    }
    let mut out = Vec::new();
    let mut covered = UPoly::one();
    for (rho, _) in split.roots {
        let g = b.gcd(&a.sub(&db.scale(&rho)));
        if g.degree().unwrap_or(0) > 0 {
            covered = covered.mul(&g);
            out.push((rho, g));
        }
    }
    if covered != b.monic() {
        return Err(Error::Internal("residue split does not cover the poles".into()));
    }
    Ok(out)
}

fn positive_integer(r: &GRat) -> Option<u32> {
    if !r.is_real() || !r.re.is_integer() || !r.re.is_positive() {
        return None;
    }
    to_i64(&r.re).and_then(|v| u32::try_from(v).ok())
}

fn lcm(a: &UPoly, b: &UPoly) -> UPoly {
    let g = a.gcd(b);
    a.mul(b).exact_div(&g).expect("gcd divides").monic()
}

/// Rational solutions of `f' + p f = q`.
///
/// Finite poles of `p` must be simple with residues in `Q(i)`. At such a pole
/// with residue `ρ` a solution has pole order at most `max(ord q - 1, ρ)` (the
/// second term only for positive integer `ρ`); elsewhere at most `ord q - 1`.
/// The numerator is then found by undetermined coefficients; free parameters
/// are set to zero.
pub fn rational_solve_first_order(p: &RatFn, q: &RatFn) -> Result<RationalSolutions> {
    let b = p.den().clone();
    let (poly_part, a) = p.num().div_rem(&b);
    if b.square_free().iter().any(|(_, m)| *m > 1) {
        return Err(Error::Unsupported("p has a pole of order > 1".into()));
    }
    let residues = residue_split(&a, &b)?;
    let ode = FirstOrderODE::new(p.clone(), q.clone());

    let homogeneous = if poly_part.is_zero() && residues.iter().all(|(r, _)| r.is_real() && r.re.is_integer()) {
        // f = prod g_ρ^(-ρ)
        let mut num = UPoly::one();
        let mut den = UPoly::one();
        for (r, g) in &residues {
            let e = to_i64(&r.re).ok_or_else(|| Error::Unsupported("residue too large".into()))?;
            if e > 0 {
                den = den.mul(&g.pow(e as u32));
            } else {
                num = num.mul(&g.pow((-e) as u32));
            }
        }
        let h = RatFn::new(num, den);
        if !FirstOrderODE::new(p.clone(), RatFn::zero()).residual(&h).is_zero() {
            return Err(Error::Internal("homogeneous solution failed resubstitution".into()));
        }
        Some(h)
    } else {
        None
    };

    if q.is_zero() {
        return Ok(RationalSolutions { particular: Some(RatFn::zero()), homogeneous });
    }

    let e = q.den();
    let mut denom = e.gcd(&e.derivative());
    for (r, g) in &residues {
        if let Some(m) = positive_integer(r) {
            denom = lcm(&denom, &g.pow(m));
        }
    }

    // growth at infinity
    let dq = q.degree().expect("q nonzero");
    let mut delta = match p.degree() {
        Some(pi) if pi >= 0 => dq - pi,
        Some(-1) => {
            let rho_inf = p.num().lc() * p.den().lc().inv().expect("nonzero leading coefficient");
            let mut d = dq + 1;
            if rho_inf.is_real() && rho_inf.re.is_integer() {
                if let Some(v) = to_i64(&-rho_inf.re) {
                    d = d.max(v);
                }
            }
            d
        }
        _ => (dq + 1).max(0),
    };
    delta = delta.max(-1);
    let nmax = delta + denom.deg_i();
    if nmax < 0 {
        return Ok(RationalSolutions { particular: None, homogeneous });
    }
    let nmax = nmax as usize;

    let basis: Vec<RatFn> = (0..=nmax)
        .map(|j| {
            let f = RatFn::new(UPoly::monomial(GRat::one(), j), denom.clone());
            f.derivative().add(&p.mul(&f))
        })
        .collect();
    let mut common = q.den().clone();
    for l in &basis {
        common = lcm(&common, l.den());
    }
    let lift = |f: &RatFn| -> UPoly {
        f.num().mul(&common.exact_div(f.den()).expect("common multiple"))
    };
    let cols: Vec<UPoly> = basis.iter().map(lift).collect();
    let rhs = lift(q);
    let rows = cols
        .iter()
        .chain(std::iter::once(&rhs))
        .map(|c| c.coeffs().len())
        .max()
        .unwrap_or(0);
    let mut m = Mat::<GRat>::zeros(rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for i in 0..rows {
            m[(i, j)] = c.coeff(i);
        }
    }
    let target: Vec<GRat> = (0..rows).map(|i| rhs.coeff(i)).collect();
    let particular = match m.solve(&target) {
        None => None,
        Some(x) => {
            let f = RatFn::new(UPoly::new(x), denom);
            if !ode.residual(&f).is_zero() {
                return Err(Error::Internal("particular solution failed resubstitution".into()));
            }
            Some(f)
        }
    };
    Ok(RationalSolutions { particular, homogeneous })
}

/// Solves `z(z-1) f' + 2((a+b)z - a) f = J²` for rational `f`.
pub fn gapoly_test(a: &Rat, b: &Rat, j: &UPoly) -> Result<Option<RatFn>> {
    if j.eval(&GRat::zero()).is_zero() || j.eval(&GRat::one()).is_zero() {
        return Err(Error::Precondition("J(0) J(1) must be nonzero".into()));
    }
    let zz1 = UPoly::from_ints(&[0, -1, 1]);
    let two = int(2);
    let lin = UPoly::new(vec![
        GRat::real(-(&two * a)),
        GRat::real(&two * (a + b)),
    ]);
    let p = RatFn::new(lin, zz1.clone());
    let q = RatFn::new(j.mul(j), zz1);
    Ok(rational_solve_first_order(&p, &q)?.particular)
}

fn falling(x: &Rat, j: u32) -> Rat {
    (0..j).fold(Rat::one(), |acc, i| acc * (x - int(i as i64)))
}

/// Jacobi polynomial from the Rodrigues formula
/// `(-1)^n/(2^n n!) (1-t)^(-α) (1+t)^(-β) dⁿ/dtⁿ[(1-t)^(α+n) (1+t)^(β+n)]`.
pub fn jacobi(params: &JacobiParams) -> UPoly {
    let n = params.n;
    let a = &params.alpha + int(n as i64);
    let b = &params.beta + int(n as i64);
    let one_minus = UPoly::from_ints(&[1, -1]);
    let one_plus = UPoly::from_ints(&[1, 1]);
    let mut acc = UPoly::zero();
    let mut binom = Rat::one();
    for j in 0..=n {
        if j > 0 {
            binom = binom * int((n - j + 1) as i64) / int(j as i64);
        }
        let sign = if j % 2 == 0 { Rat::one() } else { -Rat::one() };
        let c = &binom * sign * falling(&a, j) * falling(&b, n - j);
        let term = one_minus.pow(n - j).mul(&one_plus.pow(j));
        acc = acc.add(&term.scale(&GRat::real(c)));
    }
    let mut norm = Rat::one();
    for i in 1..=n {
        norm *= int(2 * i as i64);
    }
    if n % 2 == 1 {
        norm = -norm;
    }
    acc.scale(&GRat::real(Rat::one() / norm))
}

/// Jacobi ODE residual
/// `(1-t²)w'' + ((β-α) - (α+β+2)t)w' + n(α+β+n+1)w`.
pub fn jacobi_ode_residual(params: &JacobiParams, w: &UPoly) -> UPoly {
    let (a, b) = (&params.alpha, &params.beta);
    let n = int(params.n as i64);
    let d1 = w.derivative();
    let d2 = d1.derivative();
    let c2 = UPoly::from_ints(&[1, 0, -1]);
    let c1 = UPoly::new(vec![GRat::real(b - a), GRat::real(-(a + b + int(2)))]);
    let c0 = GRat::real(&n * (a + b + &n + int(1)));
    c2.mul(&d2).add(&c1.mul(&d1)).add(&w.scale(&c0))
}

/// Rational solution of
/// `ψ' + (1/k)(1/(1+t) + 1/(1-t)) ψ = (1/k) J_p(t)²` with `J_p` the Jacobi
/// polynomial for `(α, β) = (-1/k, 1/k)`.
pub fn psi_rational_test(k: i64, p_idx: u32) -> Result<Option<RatFn>> {
    if k < 3 {
        return Err(Error::Precondition("psi test needs k >= 3".into()));
    }
    let inv_k = Rat::one() / int(k);
    let jp = jacobi(&JacobiParams { n: p_idx, alpha: -inv_k.clone(), beta: inv_k.clone() });
    let gk = GRat::real(inv_k);
    let p = RatFn::simple_pole(&GRat::int(-1))
        .sub(&RatFn::simple_pole(&GRat::one()))
        .scale(&gk);
    let q = RatFn::poly(jp.mul(&jp).scale(&gk));
    Ok(rational_solve_first_order(&p, &q)?.particular)
}

fn real_coeffs(p: &UPoly) -> Result<Vec<Rat>> {
    if !p.is_real() {
        return Err(Error::Precondition("Sturm sequence needs real coefficients".into()));
    }
    Ok(p.coeffs().iter().map(|c| c.re.clone()).collect())
}

pub fn sturm_sequence(p: &UPoly) -> Vec<UPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]).neg();
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    seq.retain(|s| !s.is_zero());
    seq
}

fn sign_changes(seq: &[UPoly], x: &Rat) -> usize {
    let gx = GRat::real(x.clone());
    let signs: Vec<i32> = seq
        .iter()
        .map(|s| {
            let v = s.eval(&gx).re;
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `p` in the half-open interval `(lo, hi]`.
pub fn sturm_count(p: &UPoly, lo: &Rat, hi: &Rat) -> Result<usize> {
    real_coeffs(p)?;
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let seq = sturm_sequence(p);
    Ok(sign_changes(&seq, lo).saturating_sub(sign_changes(&seq, hi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn z() -> UPoly {
        UPoly::x()
    }

    #[test]
    fn trivial_equations() {
        let s = rational_solve_first_order(&RatFn::zero(), &RatFn::one()).unwrap();
        assert_eq!(s.particular, Some(RatFn::poly(z())));
        assert_eq!(s.homogeneous, Some(RatFn::one()));

        let minus = RatFn::simple_pole(&GRat::zero()).neg();
        let s = rational_solve_first_order(&minus, &RatFn::one()).unwrap();
        assert_eq!(s.particular, None);
        assert_eq!(s.homogeneous, Some(RatFn::poly(z())));

        let plus = RatFn::simple_pole(&GRat::zero());
        let s = rational_solve_first_order(&plus, &RatFn::one()).unwrap();
        let f = s.particular.unwrap();
        assert!(FirstOrderODE::new(plus.clone(), RatFn::one()).residual(&f).is_zero());
        assert_eq!(f, RatFn::poly(z().scale(&GRat::real(rat(1, 2)))));
        assert_eq!(s.homogeneous, Some(RatFn::simple_pole(&GRat::zero())));
    }

    #[test]
    fn unsupported_inputs() {
        let double = RatFn::simple_pole(&GRat::zero()).pow(2);
        assert!(matches!(
            rational_solve_first_order(&double, &RatFn::one()),
            Err(Error::Unsupported(_))
        ));
        // residue sqrt(2)/4 at ±sqrt(2)... 1/(z²-2) has irrational residues
        let irr = RatFn::new(UPoly::one(), UPoly::from_ints(&[-2, 0, 1]));
        assert!(matches!(
            rational_solve_first_order(&irr, &RatFn::one()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn irrational_poles_with_rational_residue() {
        // p = 2z/(z²-2) has residue 1 at both roots: f = (z³/3 - 2z + c)/(z²-2)
        let p = RatFn::new(UPoly::from_ints(&[0, 2]), UPoly::from_ints(&[-2, 0, 1]));
        let s = rational_solve_first_order(&p, &RatFn::one()).unwrap();
        let f = s.particular.unwrap();
        assert!(FirstOrderODE::new(p, RatFn::one()).residual(&f).is_zero());
        assert!(s.homogeneous.is_some());
    }

    #[test]
    fn gapoly_examples() {
        let one = UPoly::one();
        assert_eq!(gapoly_test(&rat(1, 3), &rat(1, 4), &one).unwrap(), None);
        assert_eq!(gapoly_test(&rat(0, 1), &rat(1, 4), &UPoly::from_ints(&[2, 1])).unwrap(), None);
        let f = gapoly_test(&int(1), &rat(3, 4), &one).unwrap().unwrap();
        let expect = RatFn::new(
            UPoly::from_ints(&[-4, -2, 6]),
            UPoly::from_ints(&[0, 0, -15, 15]),
        );
        assert_eq!(f, expect);
        assert!(matches!(
            gapoly_test(&int(1), &rat(3, 4), &z()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn gapoly_shape_for_a_equal_one() {
        // any solution is c(z^-2 + 2b z^-1) + polynomial
        for b in [rat(1, 4), rat(3, 4), rat(1, 3)] {
            let j = UPoly::from_ints(&[1, 1]);
            if let Some(f) = gapoly_test(&int(1), &b, &j).unwrap() {
                let num = f.num();
                let den = f.den();
                let z2 = UPoly::from_ints(&[0, 0, 1]);
                let (_, rem) = num.div_rem(den);
                let principal = RatFn::new(rem, den.clone());
                let c = principal.mul(&RatFn::poly(z2)).eval(&GRat::zero()).unwrap();
                let shape = RatFn::new(
                    UPoly::new(vec![c.clone(), c.scale(&(int(2) * &b))]),
                    UPoly::from_ints(&[0, 0, 1]),
                );
                assert_eq!(principal, shape, "b={b}");
            }
        }
    }

    #[test]
    fn jacobi_examples() {
        let p0 = jacobi(&JacobiParams { n: 0, alpha: rat(-1, 3), beta: rat(1, 3) });
        assert_eq!(p0, UPoly::one());
        let p1 = jacobi(&JacobiParams { n: 1, alpha: rat(-1, 3), beta: rat(1, 3) });
        assert_eq!(p1, UPoly::from_rats(&[rat(-1, 3), int(1)]));
        for k in 3..=7 {
            for n in 0..=8 {
                let params = JacobiParams { n, alpha: rat(-1, k), beta: rat(1, k) };
                let w = jacobi(&params);
                assert_eq!(w.degree(), Some(n as usize));
                assert!(jacobi_ode_residual(&params, &w).is_zero());
            }
        }
    }

    #[test]
    fn jacobi_roots_inside_interval() {
        for k in 3..=7 {
            for n in 1..=6 {
                let w = jacobi(&JacobiParams { n, alpha: rat(-1, k), beta: rat(1, k) });
                assert!(!w.eval(&GRat::one()).is_zero());
                assert_eq!(sturm_count(&w, &int(-1), &int(1)).unwrap(), n as usize);
            }
        }
    }

    #[test]
    fn sturm_counts() {
        let p = UPoly::from_rats(&[rat(1, 2), int(0), int(1)]);
        assert_eq!(sturm_count(&p, &int(-5), &int(5)).unwrap(), 0);
        let q = UPoly::from_rats(&[rat(-1, 2), int(1)])
            .mul(&UPoly::from_ints(&[2, 1]))
            .mul(&UPoly::from_ints(&[-3, 1]));
        // (t-1/2)(t+2)(t-3)
        assert_eq!(sturm_count(&q, &int(-5), &int(5)).unwrap(), 3);
        assert_eq!(sturm_count(&q, &int(0), &int(1)).unwrap(), 1);
        assert_eq!(sturm_count(&q.mul(&q), &int(-5), &int(5)).unwrap(), 3);
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_rational_test(3, 0).unwrap(), None);
        assert_eq!(psi_rational_test(3, 1).unwrap(), None);
        assert_eq!(psi_rational_test(5, 2).unwrap(), None);
        assert!(psi_rational_test(2, 0).is_err());
    }
}
