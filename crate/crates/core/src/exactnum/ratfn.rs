use std::fmt;

use super::grat::GRat;
use super::scalar::Scalar;
use super::upoly::UPoly;

/// Reduced rational function `num/den` over `Q(i)` with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: UPoly,
    den: UPoly,
}

impl RatFn {
    /// Panics on a zero denominator.
    pub fn new(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFn::zero();
        }
        let g = num.gcd(&den);
        let mut n = num.exact_div(&g).unwrap();
        let mut d = den.exact_div(&g).unwrap();
        let inv = d.lc().inv().unwrap();
        n = n.scale(&inv);
        d = d.scale(&inv);
        RatFn { num: n, den: d }
    }

    pub fn zero() -> Self {
        RatFn { num: UPoly::zero(), den: UPoly::one() }
    }

    pub fn one() -> Self {
        RatFn::poly(UPoly::one())
    }

    pub fn poly(p: UPoly) -> Self {
        RatFn { num: p, den: UPoly::one() }
    }

    pub fn constant(c: GRat) -> Self {
        RatFn::poly(UPoly::constant(c))
    }

    /// `1/(x - a)`.
    pub fn simple_pole(a: &GRat) -> Self {
        RatFn::new(UPoly::one(), UPoly::linear_root(a))
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Constant value, if the function is constant.
    pub fn as_constant(&self) -> Option<GRat> {
        (self.den.is_constant() && self.num.degree().unwrap_or(0) == 0).then(|| self.num.coeff(0))
    }

    /// `deg num - deg den`; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.num.deg_i() - self.den.deg_i())
    }

    pub fn add(&self, o: &RatFn) -> RatFn {
        if self.den == o.den {
            return RatFn::new(self.num.add(&o.num), self.den.clone());
        }
        RatFn::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn sub(&self, o: &RatFn) -> RatFn {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RatFn {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &RatFn) -> RatFn {
        RatFn::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn scale(&self, c: &GRat) -> RatFn {
        if Scalar::is_zero(c) {
            return RatFn::zero();
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    /// `None` when dividing by zero.
    pub fn div(&self, o: &RatFn) -> Option<RatFn> {
        if o.is_zero() {
            return None;
        }
        Some(RatFn::new(self.num.mul(&o.den), self.den.mul(&o.num)))
    }

    pub fn pow(&self, e: u32) -> RatFn {
        RatFn { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn derivative(&self) -> RatFn {
        let n = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        RatFn::new(n, self.den.mul(&self.den))
    }

    /// Value at `x`; `None` at a pole.
    pub fn eval(&self, x: &GRat) -> Option<GRat> {
        let d = self.den.eval(x);
        d.inv().map(|i| self.num.eval(x) * i)
    }

    pub fn display_in(&self, var: &str) -> String {
        let n = self.num.display_in(var);
        if self.den.is_constant() {
            return n;
        }
        let wrap = |s: String, p: &UPoly| {
            if p.coeffs().iter().filter(|c| !Scalar::is_zero(*c)).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(n, &self.num), wrap(self.den.display_in(var), &self.den))
    }
}

impl From<UPoly> for RatFn {
    fn from(p: UPoly) -> Self {
        RatFn::poly(p)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("z"))
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn({self})")
    }
}
