//! Obstruction engine: combines Hessian Jordan structure at proper Darboux
//! points with table membership.
//!
//! At a proper Darboux point of a potential of degree `k != ±2`, integrability
//! requires every Hessian eigenvalue `λ` to satisfy
//! 1. `(k, λ)` is in the table;
//! 2. no Jordan block of size `>= 3`;
//! 3. a block of size 2 only for `λ` in a row numbered 5 or more.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::darboux::{find_pdp_2d, hessian_at_direction, verify_pdp};
use crate::error::{Error, Result};
use crate::exactnum::json::quad_json;
use crate::exactnum::{GRat, Mat, QuadNum, Scalar};
use crate::homopot::{fmt_point, HomoPotential};
use crate::mrtable::{classify, lookup, GaloisType, TableMatch};
use crate::spectral::{jordan_structure_quad, EigenValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum VerdictKind {
    NonIntegrable,
    PassesNecessaryConditions,
    Inconclusive,
}

impl VerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::NonIntegrable => "NonIntegrable",
            VerdictKind::PassesNecessaryConditions => "PassesNecessaryConditions",
            VerdictKind::Inconclusive => "Inconclusive",
        }
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Why a verdict was reached. For `NonIntegrable` the failed condition, the
/// eigenvalue, its blocks and matching rows are always filled in.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub blocks: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn passes() -> Self {
        Verdict { kind: VerdictKind::PassesNecessaryConditions, witness: None }
    }

    pub fn inconclusive(reason: impl Into<String>) -> Self {
        Verdict {
            kind: VerdictKind::Inconclusive,
            witness: Some(Witness { reason: Some(reason.into()), ..Witness::default() }),
        }
    }

    fn fails(condition: u8, lambda: String, blocks: Vec<usize>, rows: Vec<u8>) -> Self {
        Verdict {
            kind: VerdictKind::NonIntegrable,
            witness: Some(Witness { condition: Some(condition), lambda: Some(lambda), blocks, rows, reason: None }),
        }
    }

    pub fn is_non_integrable(&self) -> bool {
        self.kind == VerdictKind::NonIntegrable
    }

    pub fn condition(&self) -> Option<u8> {
        self.witness.as_ref().and_then(|w| w.condition)
    }

    pub fn to_json(&self) -> Value {
        json!({"verdict": self.kind.as_str(), "witness": self.witness})
    }
}

fn check_degree(k: i64) -> Result<()> {
    if k == 0 {
        return Err(Error::ZeroDegree);
    }
    Ok(())
}

/// Decides the three conditions for one eigenvalue with Jordan blocks
/// `blocks` at a proper Darboux point of a degree-`k` potential.
pub fn screen_pair(k: i64, lambda: &GRat, blocks: &[usize]) -> Result<Verdict> {
    check_degree(k)?;
    if blocks.is_empty() {
        return Err(Error::Precondition("no Jordan blocks given".into()));
    }
    if k.abs() == 2 {
        return Ok(Verdict::passes());
    }
    let matches = lookup(k, lambda)?;
    let rows: Vec<u8> = matches.iter().map(|m| m.row).collect();
    let mut sorted = blocks.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let ty = classify(&matches)?;
    if ty == GaloisType::NotInTable {
        return Ok(Verdict::fails(1, lambda.to_string(), sorted, rows));
    }
    let max = sorted[0];
    if max >= 3 {
        return Ok(Verdict::fails(2, lambda.to_string(), sorted, rows));
    }
    if max == 2 && rows.iter().all(|&r| r < 5) {
        return Ok(Verdict::fails(3, lambda.to_string(), sorted, rows));
    }
    Ok(Verdict::passes())
}

/// Screening outcome for one eigenvalue class of a Hessian.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenRecord {
    pub value: EigenValue,
    pub multiplicity: usize,
    pub blocks: Option<Vec<usize>>,
    pub matches: Vec<TableMatch>,
    pub group: GaloisType,
    pub verdict: Verdict,
}

impl EigenRecord {
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self.matches.iter().map(|m| json!({"row": m.row, "p": m.p})).collect();
        json!({
            "lambda": self.value.to_string(),
            "mult": self.multiplicity,
            "blocks": self.blocks,
            "rows": rows,
            "group": self.group.to_string(),
            "verdict": self.verdict.kind.as_str(),
        })
    }
}

fn first_failure<'a>(vs: impl IntoIterator<Item = &'a Verdict>) -> Verdict {
    vs.into_iter()
        .find(|v| v.is_non_integrable())
        .cloned()
        .unwrap_or_else(Verdict::passes)
}

/// Screens every eigenvalue class of the Hessian `a` at a proper Darboux
/// point. Classes of eigenvalues outside `Q(i)` fail condition 1 when
/// `k != ±2`, since every table value is rational there.
pub fn screen_hessian(k: i64, a: &Mat<QuadNum>) -> Result<(Vec<EigenRecord>, Verdict)> {
    check_degree(k)?;
    if !a.is_symmetric() {
        return Err(Error::Invalid("Hessian is not symmetric".into()));
    }
    let js = jordan_structure_quad(a)?;
    let mut records = Vec::new();
    for class in js.classes {
        let (matches, group, verdict) = match &class.value {
            EigenValue::Exact(l) => {
                let blocks = class.blocks.clone().unwrap_or_else(|| vec![1]);
                let matches = lookup(k, l)?;
                let group = classify(&matches)?;
                (matches, group, screen_pair(k, l, &blocks)?)
            }
            EigenValue::Algebraic(m) => {
                let verdict = if k.abs() == 2 {
                    Verdict::passes()
                } else {
                    Verdict::fails(1, EigenValue::Algebraic(m.clone()).to_string(), class.blocks.clone().unwrap_or_default(), vec![])
                };
                (Vec::new(), if k.abs() == 2 { GaloisType::AnyK2Abelian } else { GaloisType::NotInTable }, verdict)
            }
        };
        records.push(EigenRecord {
            value: class.value,
            multiplicity: class.multiplicity,
            blocks: class.blocks,
            matches,
            group,
            verdict,
        });
    }
    let verdict = first_failure(records.iter().map(|r| &r.verdict));
    Ok((records, verdict))
}

pub fn screen_hessian_gaussian(k: i64, a: &Mat<GRat>) -> Result<(Vec<EigenRecord>, Verdict)> {
    screen_hessian(k, &a.map(|x| QuadNum::from_grat(x.clone())))
}

/// One screened proper Darboux point, or a Darboux direction standing for
/// all proper Darboux points on it.
#[derive(Clone, Debug, PartialEq)]
pub struct PointRecord {
    /// A proper Darboux point when one is known exactly, else the direction.
    pub c: Vec<QuadNum>,
    pub direction: Option<Vec<QuadNum>>,
    /// `V'(d) = κ d` for a direction, `1` for a point.
    pub kappa: QuadNum,
    pub hessian: Mat<QuadNum>,
    pub eigens: Vec<EigenRecord>,
    pub verdict: Verdict,
}

impl PointRecord {
    pub fn to_json(&self) -> Value {
        let hess: Vec<Value> = self
            .hessian
            .to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(quad_json).collect()))
            .collect();
        json!({
            "c": self.c.iter().map(quad_json).collect::<Vec<_>>(),
            "direction": self.direction.as_ref().map(|d| d.iter().map(quad_json).collect::<Vec<_>>()),
            "kappa": self.kappa.to_string(),
            "hessian": hess,
            "eigens": self.eigens.iter().map(EigenRecord::to_json).collect::<Vec<_>>(),
            "verdict": self.verdict.kind.as_str(),
            "witness": self.verdict.witness,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionReport {
    pub potential: String,
    pub k: i64,
    pub points: Vec<PointRecord>,
    pub notes: Vec<String>,
    pub verdict: Verdict,
}

impl ObstructionReport {
    pub fn to_json(&self) -> Value {
        json!({
            "potential": self.potential,
            "k": self.k,
            "verdict": self.verdict.kind.as_str(),
            "witness": self.verdict.witness,
            "notes": self.notes,
            "points": self.points.iter().map(PointRecord::to_json).collect::<Vec<_>>(),
        })
    }
}

fn screen_point(v: &HomoPotential, c: &[QuadNum]) -> Result<PointRecord> {
    QuadNum::common_radicand(c)?;
    let k = v.degree();
    let res = verify_pdp(v, c)?;
    let (kappa, hessian, direction) = if res.iter().all(Scalar::is_zero) {
        (QuadNum::one(), v.hessian_at(c)?, None)
    } else {
        let (kappa, h) = hessian_at_direction(v, c).map_err(|e| match e {
            Error::NotEigenDirection(m) => Error::Precondition(format!(
                "{} is neither a proper Darboux point nor a Darboux direction ({m})",
                fmt_point(c)
            )),
            e => e,
        })?;
        if k == 2 && kappa != QuadNum::one() {
            return Err(Error::Precondition(format!(
                "direction {} carries no proper Darboux point for k = 2",
                fmt_point(c)
            )));
        }
        (kappa, h, Some(c.to_vec()))
    };
    let (eigens, verdict) = screen_hessian(k, &hessian)?;
    Ok(PointRecord { c: c.to_vec(), direction, kappa, hessian, eigens, verdict })
}

/// Screens `v` at the supplied points (proper Darboux points or Darboux
/// directions), or at every Darboux direction found by the planar search.
pub fn screen_potential(v: &HomoPotential, points: Option<&[Vec<QuadNum>]>) -> Result<ObstructionReport> {
    let k = v.degree();
    let mut notes = Vec::new();
    let mut partial = false;
    let points: Vec<PointRecord> = match points {
        Some(ps) => ps.par_iter().map(|c| screen_point(v, c)).collect::<Result<Vec<_>>>()?,
        None if v.nvars() == 2 => {
            let search = find_pdp_2d(v)?;
            if search.degenerate {
                partial = true;
                notes.push("every direction is a Darboux direction; supply points".into());
            }
            for f in &search.unresolved {
                partial = true;
                notes.push(format!("unscreened Darboux directions: roots of {}", f.display_in("t")));
            }
            let dirs: Vec<_> = search
                .directions
                .iter()
                .filter(|d| k != 2 || d.kappa == QuadNum::one())
                .collect();
            dirs.par_iter()
                .map(|d| -> Result<PointRecord> {
                    let (kappa, hessian) = hessian_at_direction(v, &d.coords)?;
                    let (eigens, verdict) = screen_hessian(k, &hessian)?;
                    let c = d.points.first().map_or_else(|| d.coords.clone(), |p| p.coords.clone());
                    Ok(PointRecord { c, direction: Some(d.coords.clone()), kappa, hessian, eigens, verdict })
                })
                .collect::<Result<Vec<_>>>()?
        }
        None => {
            notes.push(format!("no points supplied and no automatic search for n = {}", v.nvars()));
            Vec::new()
        }
    };
    let verdict = if let Some(p) = points.iter().find(|p| p.verdict.is_non_integrable()) {
        p.verdict.clone()
    } else if points.is_empty() {
        Verdict::inconclusive("no proper Darboux point found")
    } else if partial {
        Verdict::inconclusive("unscreened Darboux points")
    } else {
        Verdict::passes()
    };
    log::info!("screened {} point(s): {}", points.len(), verdict.kind);
    Ok(ObstructionReport { potential: v.to_string(), k, points, notes, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, Rat};

    fn g(re: i64, im: i64) -> GRat {
        GRat::new(Rat::from_integer(re.into()), Rat::from_integer(im.into()))
    }

    fn gm(rows: &[&[(i64, i64)]]) -> Mat<GRat> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&(a, b)| g(a, b)).collect()).collect())
    }

    fn nilpotent_plus_two() -> Mat<GRat> {
        gm(&[&[(2, 0), (0, 0), (1, 0)], &[(0, 0), (2, 0), (0, 1)], &[(1, 0), (0, 1), (2, 0)]])
    }

    #[test]
    fn pair_examples() {
        let v = screen_pair(3, &GRat::int(2), &[2]).unwrap();
        assert_eq!(v.kind, VerdictKind::NonIntegrable);
        assert_eq!(v.condition(), Some(3));
        assert_eq!(v.witness.unwrap().rows, vec![2]);
        let v = screen_pair(3, &GRat::real(rat(1, 8)), &[2, 1]).unwrap();
        assert_eq!(v.kind, VerdictKind::PassesNecessaryConditions);
        let v = screen_pair(3, &GRat::real(rat(1, 8)), &[3]).unwrap();
        assert_eq!(v.condition(), Some(2));
        let v = screen_pair(2, &g(7, 3), &[5]).unwrap();
        assert_eq!(v.kind, VerdictKind::PassesNecessaryConditions);
        let v = screen_pair(3, &GRat::real(rat(2, 3)), &[1]).unwrap();
        assert_eq!(v.condition(), Some(1));
        assert!(screen_pair(0, &GRat::int(1), &[1]).is_err());
    }

    #[test]
    fn hessian_examples() {
        let (recs, v) = screen_hessian_gaussian(3, &gm(&[&[(3, 0), (0, 1)], &[(0, 1), (1, 0)]])).unwrap();
        assert_eq!(v.condition(), Some(3));
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].blocks, Some(vec![2]));
        let (_, v) = screen_hessian_gaussian(3, &nilpotent_plus_two()).unwrap();
        assert_eq!(v.condition(), Some(2));
        assert_eq!(v.witness.unwrap().blocks, vec![3]);
        let (_, v) = screen_hessian_gaussian(-2, &gm(&[&[(1, 0), (5, 0)], &[(5, 0), (1, 0)]])).unwrap();
        assert_eq!(v.kind, VerdictKind::PassesNecessaryConditions);
    }

    #[test]
    fn irrational_eigenvalues_fail_condition_one() {
        // eigenvalues 1 (row 2, p = 1) and 3 (not in the table)
        let (recs, v) = screen_hessian_gaussian(3, &gm(&[&[(2, 0), (1, 0)], &[(1, 0), (2, 0)]])).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(v.witness.unwrap().lambda.as_deref(), Some("3"));
        // eigenvalues (3 ± sqrt(5))/2
        let (recs, v) = screen_hessian_gaussian(3, &gm(&[&[(1, 0), (1, 0)], &[(1, 0), (2, 0)]])).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(v.condition(), Some(1));
        let (_, v) = screen_hessian_gaussian(2, &gm(&[&[(1, 0), (1, 0)], &[(1, 0), (2, 0)]])).unwrap();
        assert_eq!(v.kind, VerdictKind::PassesNecessaryConditions);
    }

    #[test]
    fn potential_examples() {
        let v = HomoPotential::parse("(q1^2 + q2^2)*q1").unwrap();
        let r = screen_potential(&v, None).unwrap();
        assert_eq!(r.verdict.kind, VerdictKind::NonIntegrable);
        let iso: Vec<&PointRecord> = r
            .points
            .iter()
            .filter(|p| p.verdict.condition() == Some(3))
            .collect();
        assert_eq!(iso.len(), 2);
        let half = GRat::real(rat(1, 2));
        for p in iso {
            assert_eq!(p.c[0], QuadNum::from_grat(half.clone()));
            assert_eq!(p.c[1].as_grat().unwrap().norm(), rat(1, 4));
            let w = p.verdict.witness.clone().unwrap();
            assert_eq!((w.lambda.as_deref(), w.blocks, w.rows), (Some("2"), vec![2], vec![2]));
        }

        let v = HomoPotential::parse("(q1^3 + q2^3)/3").unwrap();
        let r = screen_potential(&v, None).unwrap();
        assert_eq!(r.verdict.kind, VerdictKind::PassesNecessaryConditions);
        assert_eq!(r.points.len(), 3);

        let v = HomoPotential::parse("(q1^2 + q2^2)*(q1 - i*q2)").unwrap();
        let r = screen_potential(&v, None).unwrap();
        assert_eq!(r.verdict.kind, VerdictKind::PassesNecessaryConditions);
    }

    #[test]
    fn supplied_points_and_directions() {
        let v = HomoPotential::parse("(q1^2 + q2^2)*q1").unwrap();
        let half = QuadNum::from_grat(GRat::real(rat(1, 2)));
        let ihalf = QuadNum::from_grat(GRat::new(rat(0, 1), rat(1, 2)));
        let pt = vec![half, ihalf];
        let dir = vec![QuadNum::one(), QuadNum::from_grat(GRat::i())];
        let r = screen_potential(&v, Some(&[pt, dir])).unwrap();
        assert_eq!(r.points.len(), 2);
        assert_eq!(r.points[0].hessian, r.points[1].hessian);
        assert!(r.points[1].direction.is_some());
        let bad = vec![QuadNum::one(), QuadNum::one()];
        assert!(screen_potential(&v, Some(&[bad])).is_err());
    }

    #[test]
    fn inconclusive_paths() {
        // n = 3 without supplied points
        let v = HomoPotential::parse("q1*q2*q3").unwrap();
        let r = screen_potential(&v, None).unwrap();
        assert_eq!(r.verdict.kind, VerdictKind::Inconclusive);
        // only improper directions
        let v = HomoPotential::parse("(q1^2 + q2^2)^2").unwrap();
        let r = screen_potential(&v, None).unwrap();
        assert_eq!(r.verdict.kind, VerdictKind::Inconclusive);
    }

    #[test]
    fn symmetry_stability() {
        for k in -6i64..=6 {
            if k == 0 {
                continue;
            }
            for row in 1u8..=21 {
                for p in -3..=3 {
                    let Ok(lam) = crate::mrtable::lambda_of(row, k, p) else { continue };
                    let lam = GRat::real(lam);
                    let (k2, lam2) = crate::mrtable::symmetry_image(k, &lam);
                    for b in [1usize, 2, 3] {
                        assert_eq!(
                            screen_pair(k, &lam, &[b]).unwrap().kind,
                            screen_pair(k2, &lam2, &[b]).unwrap().kind,
                            "k={k} row={row} p={p} b={b}"
                        );
                    }
                }
            }
        }
    }
}
