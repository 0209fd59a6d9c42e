//! Property sweeps over a bounded `(k, p)` grid.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use hamscreen::exactnum::{rat, GRat, Rat, UPoly};
use hamscreen::hypergeom::{l4_degree1_test, riemann_scheme, tau_squared, L4Affine};
use hamscreen::mrtable::{classify, lambda_of, lookup, paired_row, symmetry_image, table_row, GroupType};
use hamscreen::odesolve::{gapoly_test, psi_rational_test};

/// Result of one suite: how many cases ran, which failed, which could not be
/// decided.
#[derive(Default)]
pub struct SuiteResult {
    pub checked: usize,
    pub violations: Vec<String>,
    pub undecided: Vec<String>,
}

impl SuiteResult {
    fn merge(mut self, o: SuiteResult) -> SuiteResult {
        self.checked += o.checked;
        self.violations.extend(o.violations);
        self.undecided.extend(o.undecided);
        self
    }

    fn one(case: String, outcome: Result<bool, String>) -> SuiteResult {
        let mut r = SuiteResult { checked: 1, ..Default::default() };
        match outcome {
            Ok(true) => {}
            Ok(false) => r.violations.push(case),
            Err(e) => r.undecided.push(format!("{case}: {e}")),
        }
        r
    }

    pub fn failures(&self, strict: bool) -> usize {
        self.violations.len() + if strict { self.undecided.len() } else { 0 }
    }

    fn to_json(&self) -> Value {
        let mut v = self.violations.clone();
        v.sort();
        let mut u = self.undecided.clone();
        u.sort();
        json!({"checked": self.checked, "violations": v, "undecided": u})
    }
}

fn ks(kmax: i64) -> Vec<i64> {
    (-kmax..=kmax).filter(|&k| k != 0).collect()
}

fn table_cases(kmax: i64, pmin: i64, pmax: i64) -> Vec<(u8, i64, i64, Rat)> {
    let mut out = Vec::new();
    for row in 2u8..=21 {
        let single = !table_row(row).expect("rows 2..21 exist").has_parameter();
        for k in ks(kmax) {
            for p in pmin..=pmax {
                if single && p != pmin {
                    break;
                }
                if let Ok(l) = lambda_of(row, k, p) {
                    out.push((row, k, p, l));
                }
            }
        }
    }
    out
}

fn roundtrip_and_symmetry(kmax: i64, pmax: i64) -> (SuiteResult, SuiteResult) {
    let cases = table_cases(kmax, -pmax, pmax);
    let rt = cases
        .par_iter()
        .map(|(row, k, p, l)| {
            let case = format!("row {row} k={k} p={p}");
            let out = lookup(*k, &GRat::real(l.clone())).map_err(|e| e.to_string()).map(|ms| {
                ms.iter().any(|m| m.row == *row && (m.p.is_none() || m.p == Some(*p)))
            });
            SuiteResult::one(case, out)
        })
        .reduce(SuiteResult::default, SuiteResult::merge);
    let sym = cases
        .par_iter()
        .map(|(row, k, p, l)| {
            let case = format!("row {row} k={k} p={p}");
            let (k2, l2) = symmetry_image(*k, &GRat::real(l.clone()));
            let (prow, pmap) = paired_row(*row).expect("rows 2..21 are paired");
            let out = lookup(k2, &l2).map_err(|e| e.to_string()).map(|ms| {
                ms.iter().any(|m| m.row == prow && (m.p.is_none() || m.p == Some(pmap(*p))))
            });
            SuiteResult::one(case, out)
        })
        .reduce(SuiteResult::default, SuiteResult::merge);
    (rt, sym)
}

fn disjointness(kmax: i64, pmax: i64) -> SuiteResult {
    table_cases(kmax, -pmax, pmax)
        .par_iter()
        .filter(|c| c.1.abs() >= 3)
        .map(|(row, k, p, l)| {
            let case = format!("row {row} k={k} p={p}");
            let out = lookup(*k, &GRat::real(l.clone())).map_err(|e| e.to_string()).map(|ms| {
                let ga = ms.iter().any(|m| m.group == GroupType::Ga);
                let fin = ms.iter().any(|m| m.group.is_finite());
                !(ga && fin) && classify(&ms).is_ok()
            });
            SuiteResult::one(case, out)
        })
        .reduce(SuiteResult::default, SuiteResult::merge)
}

fn exponents(kmax: i64, pmax: i64) -> SuiteResult {
    let lams: Vec<Rat> = (-pmax * 3..=pmax * 3).map(|n| rat(n, 7)).collect();
    ks(kmax)
        .par_iter()
        .map(|&k| {
            lams.iter()
                .map(|l| {
                    let case = format!("k={k} λ={l}");
                    let sym = tau_squared(k, l) == tau_squared(-k, &(Rat::from_integer(1.into()) - l));
                    let fuchs = riemann_scheme(k, l).map(|_| true).map_err(|e| e.to_string());
                    SuiteResult::one(case, fuchs.map(|f| f && sym))
                })
                .fold(SuiteResult::default(), SuiteResult::merge)
        })
        .reduce(SuiteResult::default, SuiteResult::merge)
}

fn l4(kmax: i64, pmax: i64) -> SuiteResult {
    table_cases(kmax, 0, pmax)
        .par_iter()
        .filter(|c| c.0 >= 7)
        .map(|(row, k, p, l)| {
            let case = format!("row {row} k={k} p={p}");
            let out = l4_degree1_test(*k, l).map(|r| r == L4Affine::NoSolution).map_err(|e| e.to_string());
            SuiteResult::one(case, out)
        })
        .reduce(SuiteResult::default, SuiteResult::merge)
}

fn psi(kmax: i64, pmax: i64) -> SuiteResult {
    let grid: Vec<(i64, u32)> = (3..=kmax.max(3)).flat_map(|k| (0..=pmax as u32).map(move |p| (k, p))).collect();
    grid.par_iter()
        .map(|&(k, p)| {
            let out = psi_rational_test(k, p).map(|r| r.is_none()).map_err(|e| e.to_string());
            SuiteResult::one(format!("k={k} p={p}"), out)
        })
        .reduce(SuiteResult::default, SuiteResult::merge)
}

fn gapoly(kmax: i64) -> SuiteResult {
    let js = [UPoly::one(), UPoly::from_ints(&[2, 1]), UPoly::from_ints(&[1, -3, 1])];
    let mut grid = Vec::new();
    for k in 3..=kmax.max(3) {
        for a in [rat(k - 1, 2 * k), rat(k + 1, 2 * k)] {
            for b in [rat(1, 4), rat(3, 4)] {
                for j in &js {
                    grid.push((k, a.clone(), b.clone(), j.clone()));
                }
            }
        }
    }
    grid.par_iter()
        .map(|(k, a, b, j)| {
            let out = gapoly_test(a, b, j).map(|r| r.is_none()).map_err(|e| e.to_string());
            SuiteResult::one(format!("k={k} a={a} b={b} J={j}"), out)
        })
        .reduce(SuiteResult::default, SuiteResult::merge)
}

/// Runs every suite; keys are sorted.
pub fn run(kmax: i64, pmax: i64) -> BTreeMap<&'static str, SuiteResult> {
    let (rt, sym) = roundtrip_and_symmetry(kmax, pmax);
    let mut out = BTreeMap::new();
    out.insert("table_roundtrip", rt);
    out.insert("table_symmetry", sym);
    out.insert("ga_finite_disjoint", disjointness(kmax, pmax));
    out.insert("exponent_symmetry", exponents(kmax, pmax));
    out.insert("l4_affine", l4(kmax, pmax));
    out.insert("psi_rational", psi(kmax, pmax));
    out.insert("gapoly", gapoly(kmax));
    out
}

pub fn to_json(results: &BTreeMap<&'static str, SuiteResult>) -> Value {
    Value::Object(results.iter().map(|(k, v)| (k.to_string(), v.to_json())).collect())
}
