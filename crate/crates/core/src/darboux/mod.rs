//! Proper Darboux points `V'(c) = c` and Darboux directions `V'(d) = κ d`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::rat::rat_sqrt;
use crate::exactnum::json::CoordJson;
use crate::exactnum::{upoly_rational_roots, GRat, MPoly, Mat, QuadNum, Rat, Scalar, UPoly};
use crate::homopot::{fmt_point, HomoPotential};

/// A point with `V'(c) = c`.
#[derive(Clone, Debug, PartialEq)]
pub struct DarbouxPoint {
    pub coords: Vec<QuadNum>,
    pub residual_checked: bool,
}

/// A direction with `V'(d) = κ d`, `κ != 0`, and the points `μ d` on it
/// that could be written down exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct DarbouxDirection {
    pub coords: Vec<QuadNum>,
    pub kappa: QuadNum,
    /// Number of proper Darboux points `μ d` (roots of `μ^(k-2) κ = 1`).
    pub multiplicity: u32,
    pub points: Vec<DarbouxPoint>,
}

/// Outcome of the planar search.
#[derive(Clone, Debug, Default)]
pub struct PdpSearch {
    pub directions: Vec<DarbouxDirection>,
    /// Directions where the gradient vanishes.
    pub improper: Vec<Vec<QuadNum>>,
    /// Directions at a pole of the potential.
    pub poles: Vec<Vec<QuadNum>>,
    /// Factors of the direction polynomial `G(t, 1)` whose roots are neither
    /// in `Q(i)` nor single quadratic surds.
    pub unresolved: Vec<UPoly>,
    /// `q1 ∂V/∂q2 - q2 ∂V/∂q1` vanishes identically: every direction is a
    /// Darboux direction and the search cannot enumerate them.
    pub degenerate: bool,
}

impl PdpSearch {
    pub fn points(&self) -> Vec<DarbouxPoint> {
        self.directions.iter().flat_map(|d| d.points.iter().cloned()).collect()
    }
}

/// `V'(c) - c`; zero certifies a proper Darboux point.
pub fn verify_pdp<T: Scalar>(v: &HomoPotential, c: &[T]) -> Result<Vec<T>> {
    if c.iter().all(T::is_zero) {
        return Err(Error::Precondition("the zero vector is not a Darboux point".into()));
    }
    let g = v.gradient_at(c)?;
    Ok(g.into_iter().zip(c).map(|(a, b)| a - b).collect())
}

/// `(κ, V''(d)/κ)` for an eigen-direction `d` of the gradient. The matrix is
/// the Hessian at every proper Darboux point `μ d` with `μ^(k-2) κ = 1`.
pub fn hessian_at_direction<T: Scalar>(v: &HomoPotential, d: &[T]) -> Result<(T, Mat<T>)> {
    let kappa = direction_factor(v, d)?;
    let inv = kappa.inv().expect("nonzero factor");
    let h = v.hessian_at(d)?.scale(&inv);
    Ok((kappa, h))
}

/// `κ` with `V'(d) = κ d`.
pub fn direction_factor<T: Scalar>(v: &HomoPotential, d: &[T]) -> Result<T> {
    let j = d
        .iter()
        .position(|x| !x.is_zero())
        .ok_or_else(|| Error::Precondition("the zero vector is not a direction".into()))?;
    let g = v.gradient_at(d)?;
    if g.iter().all(T::is_zero) {
        return Err(Error::ImproperDarboux(fmt_point(d)));
    }
    let kappa = g[j].div(&d[j]).unwrap();
    let ok = g.iter().zip(d).all(|(gi, di)| *gi == kappa.clone() * di);
    if !ok {
        return Err(Error::NotEigenDirection(format!("V'{} = {}", fmt_point(d), fmt_point(&g))));
    }
    Ok(kappa)
}

/// Roots of `f` (degree 2, no roots in `Q(i)`) as quadratic surds, when the
/// discriminant is a rational multiple of a square in `Q(i)`.
fn quadratic_surd_roots(f: &UPoly) -> Option<[QuadNum; 2]> {
    let (a, b, c) = (f.coeff(2), f.coeff(1), f.coeff(0));
    let disc = &b * &b - GRat::int(4) * &a * &c;
    // disc = s^2 r with r rational: for disc = x + iy, m = |disc| rational,
    // r = (m + x)/2 and s = 1 + i y/(m + x).
    let (s, r) = if disc.is_real() {
        (GRat::one(), disc.re.clone())
    } else {
        let m = rat_sqrt(&disc.norm())?;
        let mx = &m + &disc.re;
        (GRat::new(Rat::from_integer(1.into()), &disc.im / &mx), mx / Rat::from_integer(2.into()))
    };
    let inv2a = (GRat::int(2) * &a).inv()?;
    let mid = -(b * &inv2a);
    let half = s * &inv2a;
    let r1 = QuadNum::new(mid.clone(), half.clone(), &r);
    let r2 = QuadNum::new(mid, -half, &r);
    (!r1.is_grat()).then_some([r1, r2])
}

/// Searches all Darboux directions of a planar potential.
pub fn find_pdp_2d(v: &HomoPotential) -> Result<PdpSearch> {
    if v.nvars() != 2 {
        return Err(Error::Precondition(format!(
            "planar search needs n = 2, got n = {}",
            v.nvars()
        )));
    }
    let grad = v.gradient();
    let (q1, q2) = (MPoly::var(2, 0), MPoly::var(2, 1));
    // both components share the denominator base^power
    let g = q1.mul(&grad[1].num).sub(&q2.mul(&grad[0].num));
    let mut out = PdpSearch::default();
    if g.is_zero() {
        out.degenerate = true;
        return Ok(out);
    }
    // directions (t, 1) from roots of G(t, 1); (1, 0) when G(1, 0) = 0
    let gt = g.eval_upoly(&[UPoly::x(), UPoly::one()]);
    let mut cands: Vec<Vec<QuadNum>> = Vec::new();
    if Scalar::is_zero(&g.eval(&[GRat::one(), GRat::zero()])) {
        cands.push(vec![QuadNum::one(), QuadNum::zero()]);
    }
    let split = upoly_rational_roots(&gt)?;
    let mut roots: Vec<QuadNum> = split.roots.iter().map(|(r, _)| QuadNum::from_grat(r.clone())).collect();
    for (f, _) in &split.residual {
        match (f.degree(), quadratic_surd_roots(f)) {
            (Some(2), Some(pair)) => roots.extend(pair),
            _ => out.unresolved.push(f.clone()),
        }
    }
    for t in roots {
        // normalize the first nonzero coordinate to 1
        let d = if t.is_zero() {
            vec![QuadNum::zero(), QuadNum::one()]
        } else {
            vec![QuadNum::one(), t.inv().unwrap()]
        };
        cands.push(d);
    }
    let k = v.degree();
    let evaluated: Vec<(Vec<QuadNum>, Result<QuadNum>)> =
        cands.into_par_iter().map(|d| { let r = direction_factor(v, &d); (d, r) }).collect();
    for (d, r) in evaluated {
        match r {
            Ok(kappa) => {
                let points = points_on_direction(v, &d, &kappa, k)?;
                out.directions.push(DarbouxDirection {
                    coords: d,
                    kappa,
                    multiplicity: (k - 2).unsigned_abs().max(1) as u32,
                    points,
                });
            }
            Err(Error::ImproperDarboux(_)) => out.improper.push(d),
            Err(Error::Pole(_)) => out.poles.push(d),
            Err(e) => return Err(Error::Internal(format!("direction {}: {e}", fmt_point(&d)))),
        }
    }
    Ok(out)
}

/// Points `μ d` with `μ^(k-2) κ = 1` and `μ ∈ Q(i)`.
fn points_on_direction(
    v: &HomoPotential,
    d: &[QuadNum],
    kappa: &QuadNum,
    k: i64,
) -> Result<Vec<DarbouxPoint>> {
    let Some(kap) = kappa.as_grat() else {
        return Ok(Vec::new());
    };
    let poly = match k.cmp(&2) {
        std::cmp::Ordering::Greater => UPoly::monomial(kap.clone(), (k - 2) as usize).sub(&UPoly::one()),
        std::cmp::Ordering::Less => UPoly::monomial(GRat::one(), (2 - k) as usize).sub(&UPoly::constant(kap.clone())),
        std::cmp::Ordering::Equal => {
            if *kap == GRat::one() {
                UPoly::linear_root(&GRat::one())
            } else {
                return Ok(Vec::new());
            }
        }
    };
    let mut pts = Vec::new();
    for (mu, _) in upoly_rational_roots(&poly)?.roots {
        let mu = QuadNum::from_grat(mu);
        let c: Vec<QuadNum> = d.iter().map(|x| x.clone() * &mu).collect();
        let res = verify_pdp(v, &c)?;
        if !res.iter().all(Scalar::is_zero) {
            return Err(Error::Internal(format!("scaled point {} fails V'(c) = c", fmt_point(&c))));
        }
        pts.push(DarbouxPoint { coords: c, residual_checked: true });
    }
    Ok(pts)
}

/// Reads a JSON array of coordinate vectors.
pub fn parse_points_json(src: &str) -> Result<Vec<Vec<QuadNum>>> {
    let raw: Vec<Vec<CoordJson>> =
        serde_json::from_str(src).map_err(|e| Error::Parse(format!("points JSON: {e}")))?;
    raw.into_iter()
        .map(|p| {
            let q = p.iter().map(CoordJson::to_quad).collect::<Result<Vec<_>>>()?;
            QuadNum::common_radicand(&q)?;
            Ok(q)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn g(re: i64, im: i64) -> QuadNum {
        QuadNum::from_grat(GRat::new(rat(re, 1), rat(im, 1)))
    }

    fn gq(re: (i64, i64), im: (i64, i64)) -> QuadNum {
        QuadNum::from_grat(GRat::new(rat(re.0, re.1), rat(im.0, im.1)))
    }

    fn pot(s: &str) -> HomoPotential {
        HomoPotential::parse(s).unwrap()
    }

    #[test]
    fn verify_examples() {
        let v = pot("(q1^3+q2^3)/3");
        assert!(verify_pdp(&v, &[g(1, 0), g(1, 0)]).unwrap().iter().all(Scalar::is_zero));
        assert_eq!(verify_pdp(&v, &[g(2, 0), g(0, 0)]).unwrap(), vec![g(2, 0), g(0, 0)]);
        let v = pot("(q1^2+q2^2)*q1");
        let c = [gq((1, 3), (0, 1)), g(0, 0)];
        assert!(verify_pdp(&v, &c).unwrap().iter().all(Scalar::is_zero));
    }

    #[test]
    fn direction_examples() {
        let v = pot("(q1^2+q2^2)*q1");
        let (kappa, h) = hessian_at_direction(&v, &[g(1, 0), g(0, 1)]).unwrap();
        assert_eq!(kappa, g(2, 0));
        assert_eq!(h, Mat::from_rows(vec![vec![g(3, 0), g(0, 1)], vec![g(0, 1), g(1, 0)]]));
        let v = pot("(q1^3+q2^3)/3");
        let (kappa, h) = hessian_at_direction(&v, &[g(1, 0), g(1, 0)]).unwrap();
        assert_eq!(kappa, g(1, 0));
        assert_eq!(h, Mat::diag(vec![g(2, 0), g(2, 0)]));
        let v = pot("q1^3/3");
        assert!(matches!(
            hessian_at_direction(&v, &[g(0, 0), g(1, 0)]),
            Err(Error::ImproperDarboux(_))
        ));
        assert!(matches!(
            hessian_at_direction(&pot("q1^2*q2"), &[g(1, 0), g(1, 0)]),
            Err(Error::NotEigenDirection(_))
        ));
    }

    fn point_set(s: &PdpSearch) -> Vec<Vec<QuadNum>> {
        s.points().into_iter().map(|p| p.coords).collect()
    }

    #[test]
    fn search_examples() {
        let s = find_pdp_2d(&pot("(q1^3+q2^3)/3")).unwrap();
        assert_eq!(point_set(&s), vec![vec![g(1, 0), g(0, 0)], vec![g(0, 0), g(1, 0)], vec![g(1, 0), g(1, 0)]]);
        let s = find_pdp_2d(&pot("(q1^2+q2^2)*q1")).unwrap();
        let pts = point_set(&s);
        assert_eq!(pts.len(), 3);
        assert!(pts.contains(&vec![gq((1, 3), (0, 1)), g(0, 0)]));
        assert!(pts.contains(&vec![gq((1, 2), (0, 1)), gq((0, 1), (1, 2))]));
        assert!(pts.contains(&vec![gq((1, 2), (0, 1)), gq((0, 1), (-1, 2))]));
        let s = find_pdp_2d(&pot("q1^3/3")).unwrap();
        assert_eq!(point_set(&s), vec![vec![g(1, 0), g(0, 0)]]);
        assert_eq!(s.improper, vec![vec![g(0, 0), g(1, 0)]]);
    }

    #[test]
    fn quadratic_directions() {
        // G = 3 q2 (q1^2 + 2 q1 q2 - q2^2): directions (1, 0) and (1, 1 ± sqrt 2)
        let v = pot("q1^3 + 3*q1*q2^2 + 2*q2^3");
        let s = find_pdp_2d(&v).unwrap();
        assert!(s.unresolved.is_empty());
        assert_eq!(s.directions.len(), 3);
        let surd = |sign: i64| QuadNum::new(GRat::int(1), GRat::int(sign), &rat(2, 1));
        let dirs: Vec<_> = s.directions.iter().map(|d| d.coords.clone()).collect();
        assert!(dirs.contains(&vec![g(1, 0), surd(1)]));
        assert!(dirs.contains(&vec![g(1, 0), surd(-1)]));
        for d in &s.directions {
            let (kappa, _) = hessian_at_direction(&v, &d.coords).unwrap();
            assert_eq!(kappa, d.kappa);
        }
    }

    #[test]
    fn radial_potential_is_degenerate() {
        let s = find_pdp_2d(&pot("(q1^2+q2^2)^2")).unwrap();
        assert!(s.degenerate);
    }

    #[test]
    fn points_file() {
        let src = r#"[[{"re":"1/2","im":"0"},{"re":"0","im":"1/2"}],[{"u":"0","v":"1","d":"2"},{"re":"1"}]]"#;
        let pts = parse_points_json(src).unwrap();
        assert_eq!(pts[0], vec![gq((1, 2), (0, 1)), gq((0, 1), (1, 2))]);
        assert_eq!(pts[1][0].d, 2.into());
        let bad = r#"[[{"u":"0","v":"1","d":"2"},{"u":"0","v":"1","d":"3"}]]"#;
        assert!(matches!(parse_points_json(bad), Err(Error::MixedRadicands(..))));
    }
}
