use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rat::{fmt_rat, int, serde_rat, Rat};
use super::scalar::{forward_ops, Scalar};

/// Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GRat {
    #[serde(with = "serde_rat")]
    pub re: Rat,
    #[serde(with = "serde_rat", default = "Rat::zero")]
    pub im: Rat,
}

impl GRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GRat { re, im }
    }

    pub fn real(re: Rat) -> Self {
        GRat { re, im: Rat::zero() }
    }

    pub fn int(n: i64) -> Self {
        GRat::real(int(n))
    }

    pub fn i() -> Self {
        GRat::new(Rat::zero(), Rat::one())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GRat::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|^2 = re^2 + im^2`.
    pub fn norm(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, r: &Rat) -> Self {
        GRat::new(&self.re * r, &self.im * r)
    }

    fn add_ref(&self, o: &GRat) -> GRat {
        GRat::new(&self.re + &o.re, &self.im + &o.im)
    }

    fn sub_ref(&self, o: &GRat) -> GRat {
        GRat::new(&self.re - &o.re, &self.im - &o.im)
    }

    fn mul_ref(&self, o: &GRat) -> GRat {
        if self.im.is_zero() && o.im.is_zero() {
            return GRat::real(&self.re * &o.re);
        }
        GRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    fn neg_ref(&self) -> GRat {
        GRat::new(-self.re.clone(), -self.im.clone())
    }
}

forward_ops!(GRat);

impl Scalar for GRat {
    fn zero() -> Self {
        GRat::real(Rat::zero())
    }

    fn one() -> Self {
        GRat::real(Rat::one())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            return None;
        }
        let n = self.norm();
        Some(GRat::new(&self.re / &n, -&self.im / &n))
    }

    fn from_grat(g: GRat) -> Self {
        g
    }
}

impl From<Rat> for GRat {
    fn from(r: Rat) -> Self {
        GRat::real(r)
    }
}

impl From<i64> for GRat {
    fn from(n: i64) -> Self {
        GRat::int(n)
    }
}

impl fmt::Display for GRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |im: &Rat| -> String {
            if im.is_one() {
                "i".to_string()
            } else if (-im).is_one() {
                "-i".to_string()
            } else {
                format!("{}*i", fmt_rat(im))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rat(&self.re)),
            (true, false) => write!(f, "{}", im_part(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{}{}{}", fmt_rat(&self.re), sign, im_part(&self.im.abs()))
            }
        }
    }
}

impl fmt::Debug for GRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
