//! Quadratic surds.
//!
//! [`Surd`] is the real-coefficient form `u + v·√d` used for exponent data;
//! a negative radicand stands for `u + v·i·√|d|`. [`QuadNum`] is an element of
//! `Q(i)(√d)` with Gaussian-rational coordinates, used for Darboux points whose
//! coordinates are quadratic over `Q(i)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::grat::GRat;
use super::rat::{fmt_rat, serde_rat, square_free_split, Rat};
use super::scalar::{forward_ops, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Surd {
    #[serde(with = "serde_rat")]
    pub u: Rat,
    #[serde(with = "serde_rat")]
    pub v: Rat,
    #[serde(with = "serde_rat")]
    pub d: Rat,
}

/// Canonical form of `u + v·√d`: the radicand becomes a square-free integer
/// (sign kept), and perfect squares collapse into `u`.
pub fn surd_normalize(u: Rat, v: Rat, d: Rat) -> Surd {
    if v.is_zero() || d.is_zero() {
        return Surd::rational(u);
    }
    // sqrt(n/m) = sqrt(n*m)/m
    let m = d.denom().clone();
    let nm = d.numer() * &m;
    let (square, free) = square_free_split(&nm);
    let coef = v * Rat::new(square, m);
    if free.is_one() {
        return Surd::rational(u + coef);
    }
    Surd {
        u,
        v: coef,
        d: Rat::from_integer(free),
    }
}

impl Surd {
    pub fn rational(u: Rat) -> Self {
        Surd {
            u,
            v: Rat::zero(),
            d: Rat::zero(),
        }
    }

    /// Principal square root of a rational (`i·√|r|` for negative `r`).
    pub fn sqrt(r: &Rat) -> Self {
        surd_normalize(Rat::zero(), Rat::one(), r.clone())
    }

    pub fn is_rational(&self) -> bool {
        self.v.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.u)
    }

    pub fn is_real(&self) -> bool {
        !self.d.is_negative()
    }

    fn radicand_of(a: &Surd, b: &Surd) -> Rat {
        match (a.d.is_zero(), b.d.is_zero()) {
            (true, _) => b.d.clone(),
            (_, true) => a.d.clone(),
            _ => {
                assert_eq!(a.d, b.d, "surd arithmetic across radicands");
                a.d.clone()
            }
        }
    }

    pub fn add(&self, o: &Surd) -> Surd {
        let d = Self::radicand_of(self, o);
        surd_normalize(&self.u + &o.u, &self.v + &o.v, d)
    }

    pub fn sub(&self, o: &Surd) -> Surd {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Surd {
        Surd {
            u: -self.u.clone(),
            v: -self.v.clone(),
            d: self.d.clone(),
        }
    }

    pub fn mul(&self, o: &Surd) -> Surd {
        let d = Self::radicand_of(self, o);
        surd_normalize(
            &self.u * &o.u + &self.v * &o.v * &d,
            &self.u * &o.v + &self.v * &o.u,
            d,
        )
    }

    pub fn scale(&self, r: &Rat) -> Surd {
        surd_normalize(&self.u * r, &self.v * r, self.d.clone())
    }

    pub fn add_rat(&self, r: &Rat) -> Surd {
        surd_normalize(&self.u + r, self.v.clone(), self.d.clone())
    }

    pub fn square(&self) -> Surd {
        self.mul(self)
    }

    /// Absolute value for real surds; `None` when the value is not real.
    pub fn abs(&self) -> Option<Surd> {
        if !self.is_real() {
            return None;
        }
        match self.cmp_zero() {
            Ordering::Less => Some(self.neg()),
            _ => Some(self.clone()),
        }
    }

    /// Sign of a real surd, decided exactly.
    pub fn cmp_zero(&self) -> Ordering {
        assert!(self.is_real(), "sign of a non-real surd");
        if self.v.is_zero() {
            return self.u.cmp(&Rat::zero());
        }
        // u + v*sqrt(d), d > 0
        let su = self.u.cmp(&Rat::zero());
        let sv = self.v.cmp(&Rat::zero());
        if su == sv || su == Ordering::Equal {
            return sv;
        }
        // opposite signs: compare u^2 with v^2 d
        let lhs = &self.u * &self.u;
        let rhs = &self.v * &self.v * &self.d;
        match lhs.cmp(&rhs) {
            Ordering::Greater => su,
            Ordering::Less => sv,
            Ordering::Equal => Ordering::Equal,
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            return write!(f, "{}", fmt_rat(&self.u));
        }
        let root = if self.d.is_negative() {
            format!("i*sqrt({})", fmt_rat(&-self.d.clone()))
        } else {
            format!("sqrt({})", fmt_rat(&self.d))
        };
        let tail = if self.v.is_one() {
            root
        } else {
            format!("{}*{}", fmt_rat(&self.v), root)
        };
        if self.u.is_zero() {
            write!(f, "{tail}")
        } else if tail.starts_with('-') {
            write!(f, "{}{}", fmt_rat(&self.u), tail)
        } else {
            write!(f, "{}+{}", fmt_rat(&self.u), tail)
        }
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Element `a + b·√d` of `Q(i)(√d)`; `d` is a square-free integer `> 1`, or
/// `0` when `b = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadNum {
    pub a: GRat,
    pub b: GRat,
    pub d: BigInt,
}

impl QuadNum {
    pub fn from_grat(a: GRat) -> Self {
        QuadNum {
            a,
            b: GRat::zero(),
            d: BigInt::zero(),
        }
    }

    /// Builds `a + b·√r` for any nonzero rational `r`, normalizing the radicand.
    pub fn new(a: GRat, b: GRat, r: &Rat) -> Self {
        if Scalar::is_zero(&b) || r.is_zero() {
            return QuadNum::from_grat(a);
        }
        let m = r.denom().clone();
        let nm = r.numer() * &m;
        let (square, free) = square_free_split(&nm);
        let mut coef = b.scale(&Rat::new(square, m));
        let mut free = free;
        if free.is_negative() {
            coef = coef * GRat::i();
            free = -free;
        }
        if free.is_one() {
            return QuadNum::from_grat(a + coef);
        }
        QuadNum { a, b: coef, d: free }
    }

    pub fn is_grat(&self) -> bool {
        Scalar::is_zero(&self.b)
    }

    pub fn as_grat(&self) -> Option<&GRat> {
        self.is_grat().then_some(&self.a)
    }

    pub fn conj_root(&self) -> QuadNum {
        QuadNum {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }

    fn radicand(&self, o: &QuadNum) -> BigInt {
        match (self.d.is_zero(), o.d.is_zero()) {
            (true, _) => o.d.clone(),
            (_, true) => self.d.clone(),
            _ => {
                assert_eq!(self.d, o.d, "quadratic arithmetic across radicands");
                self.d.clone()
            }
        }
    }

    fn build(a: GRat, b: GRat, d: BigInt) -> QuadNum {
        if Scalar::is_zero(&b) {
            QuadNum::from_grat(a)
        } else {
            QuadNum { a, b, d }
        }
    }

    fn add_ref(&self, o: &QuadNum) -> QuadNum {
        let d = self.radicand(o);
        Self::build(&self.a + &o.a, &self.b + &o.b, d)
    }

    fn sub_ref(&self, o: &QuadNum) -> QuadNum {
        let d = self.radicand(o);
        Self::build(&self.a - &o.a, &self.b - &o.b, d)
    }

    fn mul_ref(&self, o: &QuadNum) -> QuadNum {
        let d = self.radicand(o);
        let dd = GRat::real(Rat::from_integer(d.clone()));
        Self::build(
            &self.a * &o.a + &self.b * &o.b * &dd,
            &self.a * &o.b + &self.b * &o.a,
            d,
        )
    }

    fn neg_ref(&self) -> QuadNum {
        QuadNum {
            a: -&self.a,
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    /// Checks that all values share one radicand and returns it (0 if none).
    pub fn common_radicand<'a>(vals: impl IntoIterator<Item = &'a QuadNum>) -> Result<BigInt> {
        let mut d = BigInt::zero();
        for v in vals {
            if v.d.is_zero() {
                continue;
            }
            if d.is_zero() {
                d = v.d.clone();
            } else if d != v.d {
                return Err(Error::MixedRadicands(d.to_string(), v.d.to_string()));
            }
        }
        Ok(d)
    }
}

forward_ops!(QuadNum);

impl Scalar for QuadNum {
    fn zero() -> Self {
        QuadNum::from_grat(GRat::zero())
    }

    fn one() -> Self {
        QuadNum::from_grat(GRat::one())
    }

    fn is_zero(&self) -> bool {
        Scalar::is_zero(&self.a) && Scalar::is_zero(&self.b)
    }

    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            return None;
        }
        if self.is_grat() {
            return self.a.inv().map(QuadNum::from_grat);
        }
        // (a - b√d)/(a^2 - d b^2); the norm is nonzero because √d ∉ Q(i).
        let dd = GRat::real(Rat::from_integer(self.d.clone()));
        let n = &self.a * &self.a - &self.b * &self.b * &dd;
        let ni = n.inv()?;
        Some(QuadNum {
            a: &self.a * &ni,
            b: -(&self.b * &ni),
            d: self.d.clone(),
        })
    }

    fn from_grat(g: GRat) -> Self {
        QuadNum::from_grat(g)
    }
}

impl From<GRat> for QuadNum {
    fn from(g: GRat) -> Self {
        QuadNum::from_grat(g)
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_grat() {
            return write!(f, "{}", self.a);
        }
        if Scalar::is_zero(&self.a) {
            write!(f, "({})*sqrt({})", self.b, self.d)
        } else {
            write!(f, "{}+({})*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl fmt::Debug for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat::{int, rat};

    #[test]
    fn normalize_examples() {
        assert_eq!(surd_normalize(int(0), int(1), int(4)), Surd::rational(int(2)));
        assert_eq!(surd_normalize(int(1), int(1), rat(9, 4)), Surd::rational(rat(5, 2)));
        assert_eq!(
            surd_normalize(int(0), rat(1, 6), int(121)),
            Surd::rational(rat(11, 6))
        );
        let s = surd_normalize(int(1), int(1), rat(8, 3));
        // sqrt(8/3) = sqrt(24)/3 = 2 sqrt(6)/3
        assert_eq!((s.u, s.v, s.d), (int(1), rat(2, 3), int(6)));
        let s = surd_normalize(int(0), int(1), int(-12));
        assert_eq!((s.v, s.d), (int(2), int(-3)));
    }

    #[test]
    fn sign_of_real_surds() {
        // 1 - sqrt(2) < 0, 2 - sqrt(3) > 0
        assert_eq!(surd_normalize(int(1), int(-1), int(2)).cmp_zero(), Ordering::Less);
        assert_eq!(surd_normalize(int(2), int(-1), int(3)).cmp_zero(), Ordering::Greater);
    }

    #[test]
    fn quad_field_ops() {
        let x = QuadNum::new(GRat::int(1), GRat::i(), &int(2));
        let y = x.inv().unwrap();
        assert_eq!(x * y, QuadNum::one());
        // sqrt(-2) = i sqrt(2)
        let z = QuadNum::new(GRat::zero(), GRat::one(), &int(-2));
        assert_eq!(z.d, BigInt::from(2));
        assert_eq!(z.b, GRat::i());
        assert_eq!(z.clone() * z, QuadNum::from_grat(GRat::int(-2)));
        // sqrt(-1) collapses into Q(i)
        let w = QuadNum::new(GRat::zero(), GRat::one(), &int(-1));
        assert_eq!(w, QuadNum::from_grat(GRat::i()));
    }
}
