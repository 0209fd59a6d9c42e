//! Extraction of roots lying in `Q(i)`.
//!
//! Square-free factors of degree one and two are solved in closed form; for
//! higher degrees, candidates `α/β` come from the Gaussian-integer divisors of
//! the constant and leading coefficients (found by factoring their norms) and
//! are verified exactly.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::grat::GRat;
use super::rat::{factorize, rat_sqrt, Rat};
use super::scalar::Scalar;
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// Roots of a polynomial in `Q(i)` with multiplicities, plus the factors that
/// carry no such roots.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSplit {
    pub roots: Vec<(GRat, u32)>,
    pub residual: Vec<(UPoly, u32)>,
}

pub fn upoly_rational_roots(p: &UPoly) -> Result<RootSplit> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut roots = Vec::new();
    let mut residual = Vec::new();
    for (f, mult) in p.square_free() {
        let found = square_free_roots(&f);
        let mut rest = f.clone();
        for r in &found {
            rest = rest.exact_div(&UPoly::linear_root(r)).expect("verified root");
            roots.push((r.clone(), mult));
        }
        if rest.degree().unwrap_or(0) > 0 {
            residual.push((rest.monic(), mult));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(RootSplit { roots, residual })
}

/// Square root in `Q(i)` (one of the two), if it exists.
pub fn grat_sqrt(z: &GRat) -> Option<GRat> {
    if z.im.is_zero() {
        if !z.re.is_negative() {
            return rat_sqrt(&z.re).map(GRat::real);
        }
        return rat_sqrt(&-z.re.clone()).map(|r| GRat::new(Rat::zero(), r));
    }
    let m = rat_sqrt(&z.norm())?;
    let two = Rat::from_integer(2.into());
    let a = rat_sqrt(&((&m + &z.re) / &two))?;
    let b = rat_sqrt(&((&m - &z.re) / &two))?;
    let b = if z.im.is_negative() { -b } else { b };
    let r = GRat::new(a, b);
    debug_assert_eq!(&r * &r, *z);
    Some(r)
}

fn square_free_roots(f: &UPoly) -> Vec<GRat> {
    match f.degree() {
        None | Some(0) => Vec::new(),
        Some(1) => vec![-(f.coeff(0) * f.coeff(1).inv().unwrap())],
        Some(2) => {
            let (a, b, c) = (f.coeff(2), f.coeff(1), f.coeff(0));
            let disc = &b * &b - GRat::int(4) * &a * &c;
            match grat_sqrt(&disc) {
                Some(s) => {
                    let inv = (GRat::int(2) * &a).inv().unwrap();
                    let mut v = vec![(-&b + &s) * &inv, (-&b - &s) * &inv];
                    v.sort();
                    v.dedup();
                    v
                }
                None => Vec::new(),
            }
        }
        Some(_) => candidate_roots(f),
    }
}

type GInt = (BigInt, BigInt);

fn gmul(a: &GInt, b: &GInt) -> GInt {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

/// `a / b` in `Z[i]` when exact.
fn gdiv_exact(a: &GInt, b: &GInt) -> Option<GInt> {
    let n = &b.0 * &b.0 + &b.1 * &b.1;
    let re = &a.0 * &b.0 + &a.1 * &b.1;
    let im = &a.1 * &b.0 - &a.0 * &b.1;
    if re.is_multiple_of(&n) && im.is_multiple_of(&n) {
        Some((re / &n, im / &n))
    } else {
        None
    }
}

/// Gaussian primes (up to units) with multiplicities dividing `z != 0`.
fn gaussian_factor(z: &GInt) -> Vec<(GInt, u32)> {
    let norm = &z.0 * &z.0 + &z.1 * &z.1;
    let mut out = Vec::new();
    let mut rest = z.clone();
    for (p, _) in factorize(&norm) {
        let four = BigInt::from(4);
        let primes: Vec<GInt> = if p == BigInt::from(2) {
            vec![(BigInt::one(), BigInt::one())]
        } else if p.mod_floor(&four) == BigInt::from(3) {
            vec![(p.clone(), BigInt::zero())]
        } else {
            let mut a = BigInt::one();
            let mut pair = None;
            let lim = p.sqrt();
            while a <= lim {
                let b2 = &p - &a * &a;
                let b = b2.sqrt();
                if &b * &b == b2 {
                    pair = Some((a.clone(), b));
                    break;
                }
                a += 1;
            }
            let (a, b) = pair.expect("p = 1 mod 4 is a sum of two squares");
            vec![(a.clone(), b.clone()), (a, -b)]
        };
        for pi in primes {
            let mut e = 0;
            while let Some(q) = gdiv_exact(&rest, &pi) {
                rest = q;
                e += 1;
            }
            if e > 0 {
                out.push((pi, e));
            }
        }
    }
    out
}

fn gaussian_divisors(z: &GInt, with_units: bool) -> Vec<GInt> {
    let mut divs: Vec<GInt> = vec![(BigInt::one(), BigInt::zero())];
    for (pi, e) in gaussian_factor(z) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..e {
                acc = gmul(&acc, &pi);
                next.push(acc.clone());
            }
        }
        divs = next;
    }
    if with_units {
        let units: [GInt; 4] = [
            (BigInt::one(), BigInt::zero()),
            (BigInt::zero(), BigInt::one()),
            (-BigInt::one(), BigInt::zero()),
            (BigInt::zero(), -BigInt::one()),
        ];
        divs = divs
            .iter()
            .flat_map(|d| units.iter().map(move |u| gmul(d, u)))
            .collect();
    }
    divs
}

fn candidate_roots(f: &UPoly) -> Vec<GRat> {
    let mut found = BTreeSet::new();
    let mut f = f.clone();
    if Scalar::is_zero(&f.coeff(0)) {
        found.insert(GRat::zero());
        f = f.exact_div(&UPoly::x()).unwrap();
    }
    if f.degree().unwrap_or(0) == 0 {
        return found.into_iter().collect();
    }
    // clear denominators
    let mut l = BigInt::one();
    for c in f.coeffs() {
        l = l.lcm(c.re.denom()).lcm(c.im.denom());
    }
    let lr = Rat::from_integer(l);
    let gint = |c: &GRat| -> GInt {
        let s = c.scale(&lr);
        (s.re.to_integer(), s.im.to_integer())
    };
    let c0 = gint(&f.coeff(0));
    let cn = gint(&f.lc());
    let nums = gaussian_divisors(&c0, true);
    let dens = gaussian_divisors(&cn, false);
    let mut seen = BTreeSet::new();
    for b in &dens {
        let bq = GRat::new(Rat::from_integer(b.0.clone()), Rat::from_integer(b.1.clone()));
        let binv = bq.inv().unwrap();
        for a in &nums {
            let aq = GRat::new(Rat::from_integer(a.0.clone()), Rat::from_integer(a.1.clone()));
            let r = aq * &binv;
            if !seen.insert(r.clone()) {
                continue;
            }
            if Scalar::is_zero(&f.eval(&r)) {
                found.insert(r);
            }
        }
    }
    found.into_iter().collect()
}
