//! Sylvester resultants of bivariate polynomials.

use super::mpoly::MPoly;
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// Coefficients (ascending in the eliminated variable) as polynomials in the
/// remaining variable.
fn as_nested(p: &MPoly, eliminate: usize) -> Vec<UPoly> {
    let keep = 1 - eliminate;
    let deg = p.terms().map(|(e, _)| e[eliminate] as usize).max().unwrap_or(0);
    let mut out = vec![UPoly::zero(); deg + 1];
    for (e, c) in p.terms() {
        let m = UPoly::monomial(c.clone(), e[keep] as usize);
        out[e[eliminate] as usize] = out[e[eliminate] as usize].add(&m);
    }
    out
}

/// `Res_x(P, Q)` for bivariate `P, Q`, eliminating variable index
/// `eliminate` (0 or 1); the result is a polynomial in the other variable.
///
/// Sign convention: the determinant of the Sylvester matrix whose first
/// `deg Q` rows hold the descending coefficients of `P`, so
/// `Res_x(x - a, x - b) = a - b`.
pub fn resultant(p: &MPoly, q: &MPoly, eliminate: usize) -> Result<UPoly> {
    if p.nvars() != 2 || q.nvars() != 2 || eliminate > 1 {
        return Err(Error::Invalid("resultant expects bivariate input".into()));
    }
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let a = as_nested(p, eliminate);
    let b = as_nested(q, eliminate);
    let (m, n) = (a.len() - 1, b.len() - 1);
    match (m, n) {
        (0, 0) => return Err(Error::ConstantResultant),
        (0, _) => return Ok(a[0].pow(n as u32)),
        (_, 0) => return Ok(b[0].pow(m as u32)),
        _ => {}
    }
    let size = m + n;
    let mut mat = vec![vec![UPoly::zero(); size]; size];
    for r in 0..n {
        for (j, c) in a.iter().rev().enumerate() {
            mat[r][r + j] = c.clone();
        }
    }
    for r in 0..m {
        for (j, c) in b.iter().rev().enumerate() {
            mat[n + r][r + j] = c.clone();
        }
    }
    Ok(bareiss_det(mat))
}

/// Fraction-free determinant over `Q(i)[y]`.
pub fn bareiss_det(mut m: Vec<Vec<UPoly>>) -> UPoly {
    let n = m.len();
    if n == 0 {
        return UPoly::one();
    }
    let mut sign_neg = false;
    let mut prev = UPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_neg = !sign_neg;
                }
                None => return UPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = UPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_neg {
        d.neg()
    } else {
        d
    }
}
