//! Rank computations over `Q(i)[t]/(m)` for eigenvalue classes whose
//! defining polynomial has no roots in `Q(i)`.

use crate::error::{Error, Result};
use crate::exactnum::{GRat, Mat, UPoly};

use super::blocks_from_ranks;

/// Rank of a matrix over `Q(i)[t]/(m)`. Pivots are units; a nonzero
/// non-unit entry yields `Err(g)` with `g` a proper monic factor of `m`.
pub fn rank_mod(rows: &[Vec<UPoly>], m: &UPoly) -> std::result::Result<usize, UPoly> {
    let mut a: Vec<Vec<UPoly>> = rows.iter().map(|r| r.iter().map(|x| x.rem(m)).collect()).collect();
    let nr = a.len();
    let nc = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (g, s, _) = a[r][c].ext_gcd(m);
        if g.degree() != Some(0) {
            return Err(g);
        }
        let inv = s.rem(m);
        for i in r + 1..nr {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].mul(&inv).rem(m);
            let (top, bottom) = a.split_at_mut(i);
            for (x, y) in bottom[0][c..nc].iter_mut().zip(&top[r][c..nc]) {
                *x = x.sub(&f.mul(y)).rem(m);
            }
        }
        r += 1;
    }
    Ok(r)
}

fn mat_mul_mod(x: &[Vec<UPoly>], y: &[Vec<UPoly>], m: &UPoly) -> Vec<Vec<UPoly>> {
    let n = x.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(UPoly::zero(), |acc, k| acc.add(&x[i][k].mul(&y[k][j]))).rem(m))
                .collect()
        })
        .collect()
}

/// Per-root block sizes for the roots of `m`, splitting `m` whenever a zero
/// divisor shows up. Each root has algebraic multiplicity `per_root`.
pub fn jordan_blocks_algebraic(a: &Mat<GRat>, m: &UPoly, per_root: usize) -> Result<Vec<(UPoly, Vec<usize>)>> {
    if m.degree().unwrap_or(0) == 0 {
        return Err(Error::Invalid("defining polynomial must have positive degree".into()));
    }
    let n = a.rows();
    let mut work = vec![m.monic()];
    let mut done = Vec::new();
    while let Some(f) = work.pop() {
        // A - tI with t the class of x modulo f
        let shifted: Vec<Vec<UPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = UPoly::constant(a[(i, j)].clone());
                        if i == j {
                            c.sub(&UPoly::x())
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect();
        let mut pow: Vec<Vec<UPoly>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { UPoly::one() } else { UPoly::zero() }).collect())
            .collect();
        let mut split = None;
        let res = blocks_from_ranks(n, per_root, |_| {
            pow = mat_mul_mod(&pow, &shifted, &f);
            match rank_mod(&pow, &f) {
                Ok(r) => Ok(r),
                Err(g) => {
                    split = Some(g);
                    Err(Error::Internal("split".into()))
                }
            }
        });
        match (res, split) {
            (_, Some(g)) => {
                let h = f.exact_div(&g).expect("factor divides");
                work.push(g.monic());
                work.push(h.monic());
            }
            (Ok(blocks), None) => done.push((f, blocks)),
            (Err(e), None) => return Err(e),
        }
    }
    done.sort_by_key(|(f, _)| f.degree());
    Ok(done)
}
