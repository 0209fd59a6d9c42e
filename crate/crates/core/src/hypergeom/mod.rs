//! Reduced variational equation in the `z` variable, its Riemann scheme,
//! exponent differences, and the affine-solution test for the fourth-order
//! operator `L4 = [z(z-1) L3]'` built on the symmetric square of `L2`.
//!
//! `L2 = d²/dz² - r(z)` is the reduced normal form of `η'' + p η' = λ s η`.

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::rat::floor;
use crate::exactnum::{int, rat, GRat, RatFn, Rat, Scalar, Surd, UPoly};

#[derive(Clone, Debug)]
pub struct VECoefficients {
    pub k: i64,
    pub lambda: Rat,
    pub rho: Rat,
    pub sigma: Rat,
    pub tau0: Rat,
    pub tau: Surd,
    pub p_z: RatFn,
    pub s_z: RatFn,
    pub r0_z: RatFn,
    pub r_z: RatFn,
    /// Tschirnhaus exponent at `z = 0`.
    pub a_pow: Rat,
    /// Tschirnhaus exponent at `z = 1`.
    pub b_pow: Rat,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RiemannScheme {
    pub at_zero: [Surd; 2],
    pub at_one: [Surd; 2],
    pub at_infinity: [Surd; 2],
}

impl RiemannScheme {
    pub fn fuchs_sum(&self) -> Surd {
        self.at_zero
            .iter()
            .chain(&self.at_one)
            .chain(&self.at_infinity)
            .fold(Surd::rational(Rat::zero()), |acc, e| acc.add(e))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExponentSet {
    pub at_zero: Vec<Surd>,
    pub at_one: Vec<Surd>,
    pub at_infinity: Vec<Surd>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExponentDifferences {
    pub delta0: Rat,
    pub delta1: Rat,
    /// `|τ|` for real `τ`; `τ` itself when it is purely imaginary.
    pub delta_inf: Surd,
    /// `Δ∞ mod 1` in `[0, 1)`, only when `τ` is rational.
    pub delta_inf_reduced: Option<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum L4Affine {
    NoSolution,
    /// `L4(z + d) = 0` with `z(z-1)(2r + r'(z+d)) = c`.
    Solution { d: GRat, c: GRat },
}

fn check_k(k: i64) -> Result<()> {
    if k == 0 {
        return Err(Error::Precondition("degree k must be nonzero".into()));
    }
    Ok(())
}

/// `τ² = ((k-2)² + 8kλ) / (4k²)`.
pub fn tau_squared(k: i64, lambda: &Rat) -> Rat {
    let kk = int(k);
    let km2 = int(k - 2);
    (&km2 * &km2 + int(8) * &kk * lambda) / (int(4) * &kk * &kk)
}

pub fn tau(k: i64, lambda: &Rat) -> Surd {
    Surd::sqrt(&tau_squared(k, lambda))
}

fn gr(r: Rat) -> GRat {
    GRat::real(r)
}

fn z_times_z1() -> UPoly {
    UPoly::from_ints(&[0, -1, 1])
}

/// `(ρ²-1)/(4z²) + (σ²-1)/(4(z-1)²) - ¼(1-ρ²-σ²+t²)(1/z + 1/(1-z))`.
fn normal_form_r(rho: &Rat, sigma: &Rat, t2: &Rat) -> RatFn {
    let one = Rat::one();
    let four = int(4);
    let z = RatFn::simple_pole(&GRat::zero());
    let z1 = RatFn::simple_pole(&GRat::one());
    let a = z.pow(2).scale(&gr((rho * rho - &one) / &four));
    let b = z1.pow(2).scale(&gr((sigma * sigma - &one) / &four));
    let mid = (&one - rho * rho - sigma * sigma + t2) / &four;
    // 1/z + 1/(1-z) = 1/z - 1/(z-1)
    let c = z.sub(&z1).scale(&gr(-mid));
    a.add(&b).add(&c)
}

pub fn ve_coeffs(k: i64, lambda: &Rat) -> Result<VECoefficients> {
    check_k(k)?;
    let kk = int(k);
    let rho = Rat::one() / &kk;
    let sigma = rat(1, 2);
    let tau0 = int(k - 2) / (int(2) * &kk);
    let zz1 = z_times_z1();
    // p = (2(k-1)(z-1) + kz) / (2kz(z-1))
    let p_num = UPoly::from_ints(&[-2 * (k - 1), 2 * (k - 1) + k]);
    let p_z = RatFn::new(p_num, zz1.scale(&GRat::int(2 * k)));
    let s_z = RatFn::new(UPoly::one(), zz1.scale(&GRat::int(2 * k)));
    let r0_z = normal_form_r(&rho, &sigma, &(&tau0 * &tau0));
    let r_z = r0_z.add(&s_z.scale(&gr(lambda.clone())));
    Ok(VECoefficients {
        k,
        lambda: lambda.clone(),
        tau: tau(k, lambda),
        rho,
        sigma,
        tau0,
        p_z,
        s_z,
        r0_z,
        r_z,
        a_pow: -(int(k - 1) / (int(2) * &kk)),
        b_pow: rat(-1, 4),
    })
}

pub fn riemann_scheme(k: i64, lambda: &Rat) -> Result<RiemannScheme> {
    check_k(k)?;
    let half = rat(1, 2);
    let e = Rat::one() / int(2 * k);
    let t = tau(k, lambda);
    let neg_half = -half.clone();
    let scheme = RiemannScheme {
        at_zero: [
            Surd::rational(&half - &e),
            Surd::rational(&half + &e),
        ],
        at_one: [Surd::rational(rat(1, 4)), Surd::rational(rat(3, 4))],
        at_infinity: [
            t.scale(&neg_half).add_rat(&neg_half),
            t.scale(&half).add_rat(&neg_half),
        ],
    };
    assert_eq!(
        scheme.fuchs_sum(),
        Surd::rational(Rat::one()),
        "Fuchs relation violated"
    );
    Ok(scheme)
}

pub fn exponent_differences(k: i64, lambda: &Rat) -> Result<ExponentDifferences> {
    check_k(k)?;
    let t = tau(k, lambda);
    let delta_inf = t.abs().unwrap_or_else(|| t.clone());
    let delta_inf_reduced = delta_inf.as_rational().map(|r| r - Rat::from_integer(floor(r)));
    Ok(ExponentDifferences {
        delta0: (Rat::one() / int(k)).abs(),
        delta1: rat(1, 2),
        delta_inf,
        delta_inf_reduced,
    })
}

pub fn l4_exponents(k: i64, lambda: &Rat) -> Result<ExponentSet> {
    let rs = riemann_scheme(k, lambda)?;
    let two = int(2);
    let build = |base: [i64; 2], eps: &[Surd; 2]| -> Vec<Surd> {
        let mut v: Vec<Surd> = base.iter().map(|&b| Surd::rational(int(b))).collect();
        v.extend(eps.iter().map(|e| e.scale(&two)));
        v
    };
    Ok(ExponentSet {
        at_zero: build([1, 2], &rs.at_zero),
        at_one: build([1, 2], &rs.at_one),
        at_infinity: build([-1, -1], &rs.at_infinity),
    })
}

/// Decides whether some `v = z + d` solves `L4 v = 0`.
///
/// `L4(z+d) = -2 [z(z-1) F]'` with `F = 2r + r'(z+d)`, so the question is
/// whether `G0 + d·G1` is constant for `G0 = z(z-1)(2r + z r')`,
/// `G1 = z(z-1) r'`.
pub fn l4_degree1_test(k: i64, lambda: &Rat) -> Result<L4Affine> {
    let ve = ve_coeffs(k, lambda)?;
    let r = &ve.r_z;
    let dr = r.derivative();
    let zz1 = RatFn::poly(z_times_z1());
    let zpoly = RatFn::poly(UPoly::x());
    let g0 = zz1.mul(&r.scale(&GRat::int(2)).add(&zpoly.mul(&dr)));
    let g1 = zz1.mul(&dr);
    let dg0 = g0.derivative();
    let dg1 = g1.derivative();
    let d = if dg1.is_zero() {
        if !dg0.is_zero() {
            return Ok(L4Affine::NoSolution);
        }
        GRat::zero()
    } else {
        match dg0.div(&dg1).and_then(|q| q.as_constant()) {
            Some(q) => -q,
            None => return Ok(L4Affine::NoSolution),
        }
    };
    let total = g0.add(&g1.scale(&d));
    match total.as_constant() {
        Some(c) => Ok(L4Affine::Solution { d, c }),
        None => Err(Error::Internal("affine L4 witness is not constant".into())),
    }
}

fn surd_list(v: &[Surd]) -> Value {
    Value::Array(v.iter().map(|s| Value::String(s.to_string())).collect())
}

/// Scheme, exponent differences and L4 exponent sets as one JSON object.
pub fn exponents_json(k: i64, lambda: &Rat) -> Result<Value> {
    let rs = riemann_scheme(k, lambda)?;
    let diff = exponent_differences(k, lambda)?;
    let l4 = l4_exponents(k, lambda)?;
    let affine = match l4_degree1_test(k, lambda)? {
        L4Affine::NoSolution => Value::Null,
        L4Affine::Solution { d, c } => json!({"d": d.to_string(), "c": c.to_string()}),
    };
    Ok(json!({
        "k": k,
        "lambda": crate::exactnum::fmt_rat(lambda),
        "tau": tau(k, lambda).to_string(),
        "scheme": {
            "0": surd_list(&rs.at_zero),
            "1": surd_list(&rs.at_one),
            "inf": surd_list(&rs.at_infinity),
        },
        "differences": {
            "0": crate::exactnum::fmt_rat(&diff.delta0),
            "1": crate::exactnum::fmt_rat(&diff.delta1),
            "inf": diff.delta_inf.to_string(),
            "inf_mod_1": diff.delta_inf_reduced.as_ref().map(crate::exactnum::fmt_rat),
        },
        "l4": {
            "0": surd_list(&l4.at_zero),
            "1": surd_list(&l4.at_one),
            "inf": surd_list(&l4.at_infinity),
        },
        "l4_affine_solution": affine,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mrtable::lambda_of;

    fn rs(v: &[Surd]) -> Vec<Rat> {
        let mut out: Vec<Rat> = v.iter().map(|s| s.as_rational().unwrap().clone()).collect();
        out.sort();
        out
    }

    /// Symmetric square of `d² - r` applied to `v`: `v''' - 4 r v' - 2 r' v`,
    /// then `L4 v = [z(z-1) L3 v]'`.
    fn l4_apply(r: &RatFn, v: &RatFn) -> RatFn {
        let d1 = v.derivative();
        let d3 = d1.derivative().derivative();
        let l3 = d3
            .sub(&r.mul(&d1).scale(&GRat::int(4)))
            .sub(&r.derivative().mul(v).scale(&GRat::int(2)));
        RatFn::poly(z_times_z1()).mul(&l3).derivative()
    }

    #[test]
    fn coefficients_examples() {
        let ve = ve_coeffs(3, &int(5)).unwrap();
        assert_eq!(ve.rho, rat(1, 3));
        assert_eq!(ve.sigma, rat(1, 2));
        assert_eq!(ve.tau, Surd::rational(rat(11, 6)));
        assert_eq!(ve.a_pow, rat(-1, 3));
        let ve = ve_coeffs(2, &rat(3, 7)).unwrap();
        assert!(ve.tau0.is_zero());
        assert_eq!(tau_squared(2, &rat(3, 7)), rat(3, 7));
        assert_eq!(ve_coeffs(-1, &int(-2)).unwrap().tau, Surd::rational(rat(5, 2)));
        assert!(ve_coeffs(0, &int(1)).is_err());
    }

    #[test]
    fn r_matches_tau_form() {
        for k in [-5i64, -3, -1, 1, 3, 4, 7] {
            for lam in [rat(-2, 3), int(0), rat(5, 11), int(4)] {
                let ve = ve_coeffs(k, &lam).unwrap();
                let direct = normal_form_r(&ve.rho, &ve.sigma, &tau_squared(k, &lam));
                assert_eq!(direct, ve.r_z, "k={k} λ={lam}");
            }
        }
    }

    #[test]
    fn normal_form_from_p_and_s() {
        // r = p'/2 + p²/4 + λ s
        for k in [-4i64, 3, 5] {
            let lam = rat(7, 9);
            let ve = ve_coeffs(k, &lam).unwrap();
            let expect = ve
                .p_z
                .derivative()
                .scale(&gr(rat(1, 2)))
                .add(&ve.p_z.pow(2).scale(&gr(rat(1, 4))))
                .add(&ve.s_z.scale(&gr(lam.clone())));
            assert_eq!(expect, ve.r_z);
        }
    }

    #[test]
    fn scheme_examples() {
        let s = riemann_scheme(3, &int(5)).unwrap();
        assert_eq!(rs(&s.at_infinity), vec![rat(-17, 12), rat(5, 12)]);
        assert_eq!(rs(&s.at_zero), vec![rat(1, 3), rat(2, 3)]);
        assert_eq!(rs(&s.at_one), vec![rat(1, 4), rat(3, 4)]);
        let s = riemann_scheme(3, &rat(1, 7)).unwrap();
        assert!(!s.at_infinity[0].is_rational());
    }

    #[test]
    fn differences_examples() {
        let d = exponent_differences(3, &int(5)).unwrap();
        assert_eq!(d.delta0, rat(1, 3));
        assert_eq!(d.delta1, rat(1, 2));
        assert_eq!(d.delta_inf, Surd::rational(rat(11, 6)));
        assert_eq!(d.delta_inf_reduced, Some(rat(5, 6)));
        assert_eq!(exponent_differences(1, &int(0)).unwrap().delta0, int(1));
        for k in [3i64, -3, 4, -7, 10] {
            for p in 0..=10 {
                let lam = lambda_of(7, k, p).unwrap();
                let d = exponent_differences(k, &lam).unwrap();
                assert_eq!(d.delta_inf, Surd::rational(int(p) + rat(1, 2)));
            }
        }
    }

    #[test]
    fn l4_exponent_examples() {
        let e = l4_exponents(3, &rat(1, 3)).unwrap();
        assert_eq!(rs(&e.at_zero), vec![rat(2, 3), int(1), rat(4, 3), int(2)]);
        assert_eq!(rs(&e.at_infinity), vec![rat(-3, 2), int(-1), int(-1), rat(-1, 2)]);
        assert_eq!(rs(&e.at_one), vec![rat(1, 2), int(1), rat(3, 2), int(2)]);
    }

    #[test]
    fn affine_l4_examples() {
        assert_eq!(l4_degree1_test(3, &rat(1, 3)).unwrap(), L4Affine::NoSolution);
        assert_eq!(l4_degree1_test(4, &rat(7, 72)).unwrap(), L4Affine::NoSolution);
    }

    #[test]
    fn affine_l4_agrees_with_direct_expansion() {
        // L4(z + d) = L4(z) + d·L4(1); solve for d independently.
        let cases: Vec<(i64, Rat)> = vec![
            (1, int(0)),
            (-1, int(1)),
            (3, rat(1, 3)),
            (4, rat(7, 72)),
            (2, int(5)),
            (-2, rat(1, 2)),
            (3, int(0)),
            (3, int(1)),
        ];
        for (k, lam) in cases {
            let r = ve_coeffs(k, &lam).unwrap().r_z;
            let a = l4_apply(&r, &RatFn::poly(UPoly::x()));
            let b = l4_apply(&r, &RatFn::one());
            let oracle = if b.is_zero() {
                a.is_zero().then(GRat::zero)
            } else {
                a.div(&b).and_then(|q| q.as_constant()).map(|q| -q)
            };
            match l4_degree1_test(k, &lam).unwrap() {
                L4Affine::NoSolution => assert!(oracle.is_none(), "k={k} λ={lam}"),
                L4Affine::Solution { d, .. } => {
                    let v = RatFn::poly(UPoly::new(vec![d.clone(), GRat::one()]));
                    assert!(l4_apply(&r, &v).is_zero(), "k={k} λ={lam}");
                    assert_eq!(oracle, Some(d));
                }
            }
        }
    }

    #[test]
    fn rows_seven_to_twenty_one_have_no_affine_solution() {
        for row in 7u8..=21 {
            for k in -5i64..=5 {
                for p in 0..=5 {
                    if let Ok(lam) = lambda_of(row, k, p) {
                        assert_eq!(
                            l4_degree1_test(k, &lam).unwrap(),
                            L4Affine::NoSolution,
                            "row {row} k={k} p={p}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn tau_symmetry() {
        for k in -10i64..=10 {
            if k == 0 {
                continue;
            }
            for n in -12..12 {
                let lam = rat(n, 7);
                assert_eq!(tau_squared(k, &lam), tau_squared(-k, &(Rat::one() - &lam)));
            }
        }
    }
}
