//! Characteristic polynomials, eigenvalue classes and Jordan block sizes of
//! exact symmetric matrices.

mod quotient;

use std::fmt;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::json::{quad_json, CoordJson};
use crate::exactnum::{upoly_rational_roots, GRat, Mat, QuadNum, Scalar, UPoly};

pub use quotient::{jordan_blocks_algebraic, rank_mod};

/// An eigenvalue in `Q(i)`, or the class of roots of a polynomial with no
/// roots in `Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum EigenValue {
    Exact(GRat),
    Algebraic(UPoly),
}

impl fmt::Display for EigenValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EigenValue::Exact(g) => write!(f, "{g}"),
            EigenValue::Algebraic(m) => write!(f, "root of {}", m.display_in("x")),
        }
    }
}

impl fmt::Debug for EigenValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl EigenValue {
    pub fn as_exact(&self) -> Option<&GRat> {
        match self {
            EigenValue::Exact(g) => Some(g),
            EigenValue::Algebraic(_) => None,
        }
    }
}

/// One eigenvalue class. `multiplicity` counts all eigenvalues of the
/// matrix in the class; `blocks` are the Jordan block sizes of each single
/// root (unknown for irrational classes of matrices with surd entries).
#[derive(Clone, Debug, PartialEq)]
pub struct EigenClass {
    pub value: EigenValue,
    pub multiplicity: usize,
    pub blocks: Option<Vec<usize>>,
}

impl EigenClass {
    /// Number of roots in the class.
    pub fn degree(&self) -> usize {
        match &self.value {
            EigenValue::Exact(_) => 1,
            EigenValue::Algebraic(m) => m.degree().unwrap_or(1).max(1),
        }
    }
}

/// Eigenvalue classes with their Jordan blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanStructure {
    pub classes: Vec<EigenClass>,
}

impl JordanStructure {
    pub fn max_block(&self) -> Option<usize> {
        self.classes.iter().filter_map(|c| c.blocks.as_ref()?.iter().max().copied()).max()
    }
}

/// Coefficients (ascending) of `det(xI - A)` by Faddeev-LeVerrier.
pub fn char_poly_coeffs<T: Scalar>(a: &Mat<T>) -> Vec<T> {
    assert!(a.is_square(), "characteristic polynomial of a non-square matrix");
    let n = a.rows();
    let mut c = vec![T::zero(); n + 1];
    c[n] = T::one();
    let mut m = Mat::<T>::zeros(n, n);
    for k in 1..=n {
        m = a.mul(&m).add(&Mat::identity(n).scale(&c[n - k + 1]));
        let tr = a.mul(&m).trace();
        let kk = T::from_grat(GRat::int(k as i64));
        c[n - k] = -(tr.div(&kk).unwrap());
    }
    c
}

pub fn char_poly(a: &Mat<GRat>) -> UPoly {
    UPoly::new(char_poly_coeffs(a))
}

/// Eigenvalue classes from the factorization of the characteristic
/// polynomial; blocks are not computed here.
pub fn eigen_classes(a: &Mat<GRat>) -> Result<Vec<EigenClass>> {
    let split = upoly_rational_roots(&char_poly(a))?;
    let mut out: Vec<EigenClass> = split
        .roots
        .into_iter()
        .map(|(r, m)| EigenClass { value: EigenValue::Exact(r), multiplicity: m as usize, blocks: None })
        .collect();
    for (f, e) in split.residual {
        let deg = f.degree().unwrap();
        out.push(EigenClass { value: EigenValue::Algebraic(f), multiplicity: deg * e as usize, blocks: None });
    }
    Ok(out)
}

/// Block sizes (descending) from the rank sequence of `(A - λI)^m`, stopping
/// once the rank reaches `n - mult`.
pub(crate) fn blocks_from_ranks(n: usize, mult: usize, mut rank: impl FnMut(u32) -> Result<usize>) -> Result<Vec<usize>> {
    let mut ranks = vec![n];
    let mut j = 1;
    loop {
        let r = rank(j)?;
        ranks.push(r);
        if r + mult == n {
            break;
        }
        if r + mult < n || j as usize > mult {
            return Err(Error::Internal(format!("rank sequence {ranks:?} inconsistent with multiplicity {mult}")));
        }
        j += 1;
    }
    // ge[j] = number of blocks of size >= j
    let ge: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut blocks = Vec::new();
    for (j, &c) in ge.iter().enumerate() {
        let next = ge.get(j + 1).copied().unwrap_or(0);
        for _ in 0..c - next {
            blocks.push(j + 1);
        }
    }
    blocks.sort_unstable_by(|a, b| b.cmp(a));
    Ok(blocks)
}

fn exact_blocks<T: Scalar>(a: &Mat<T>, lambda: &T, mult: usize) -> Result<Vec<usize>> {
    let shifted = a.shift(lambda);
    let mut pow = Mat::identity(a.rows());
    blocks_from_ranks(a.rows(), mult, |_| {
        pow = pow.mul(&shifted);
        Ok(pow.rank())
    })
}

/// Jordan block sizes of `A` at an eigenvalue in `Q(i)`.
pub fn jordan_blocks(a: &Mat<GRat>, lambda: &GRat) -> Result<Vec<usize>> {
    let mult = char_poly(a).root_multiplicity(lambda) as usize;
    if mult == 0 {
        return Err(Error::NotEigenvalue(lambda.to_string()));
    }
    exact_blocks(a, lambda, mult)
}

/// Full Jordan structure; algebraic classes are split further if their
/// defining polynomial turns out to be reducible during elimination.
pub fn jordan_structure(a: &Mat<GRat>) -> Result<JordanStructure> {
    let mut classes = Vec::new();
    for c in eigen_classes(a)? {
        match &c.value {
            EigenValue::Exact(l) => {
                let blocks = exact_blocks(a, l, c.multiplicity)?;
                classes.push(EigenClass { blocks: Some(blocks), ..c });
            }
            EigenValue::Algebraic(m) => {
                let per_root = c.multiplicity / c.degree();
                for (f, blocks) in jordan_blocks_algebraic(a, m, per_root)? {
                    let deg = f.degree().unwrap();
                    classes.push(EigenClass {
                        value: EigenValue::Algebraic(f),
                        multiplicity: deg * per_root,
                        blocks: Some(blocks),
                    });
                }
            }
        }
    }
    Ok(JordanStructure { classes })
}

/// Jordan structure of a matrix over `Q(i)(√d)`. Eigenvalues in `Q(i)` get
/// their blocks; the remaining ones form one class described by the norm of
/// the leftover characteristic factor, without blocks.
pub fn jordan_structure_quad(a: &Mat<QuadNum>) -> Result<JordanStructure> {
    let entries: Vec<QuadNum> = a.to_rows().into_iter().flatten().collect();
    let d = QuadNum::common_radicand(&entries)?;
    if d == 0.into() {
        return jordan_structure(&a.map(|x| x.a.clone()));
    }
    let n = a.rows();
    let coeffs = char_poly_coeffs(a);
    let p0 = UPoly::new(coeffs.iter().map(|c| c.a.clone()).collect());
    let p1 = UPoly::new(coeffs.iter().map(|c| c.b.clone()).collect());
    let common = if p1.is_zero() { p0.clone() } else { p0.gcd(&p1) };
    let mut classes = Vec::new();
    let mut counted = 0;
    if common.degree().unwrap_or(0) > 0 {
        for (r, _) in upoly_rational_roots(&common)?.roots {
            let mult = p0.root_multiplicity(&r).min(if p1.is_zero() { u32::MAX } else { p1.root_multiplicity(&r) }) as usize;
            let blocks = exact_blocks(a, &QuadNum::from_grat(r.clone()), mult)?;
            counted += mult;
            classes.push(EigenClass { value: EigenValue::Exact(r), multiplicity: mult, blocks: Some(blocks) });
        }
    }
    if counted < n {
        // leftover factor R = R0 + √d R1; its norm R0^2 - d R1^2 lies in Q(i)[x]
        let mut r = coeffs;
        for c in &classes {
            let lin = [-QuadNum::from_grat(c.value.as_exact().unwrap().clone()), QuadNum::one()];
            for _ in 0..c.multiplicity {
                r = quad_poly_div_monic_linear(&r, &lin);
            }
        }
        let r0 = UPoly::new(r.iter().map(|c| c.a.clone()).collect());
        let r1 = UPoly::new(r.iter().map(|c| c.b.clone()).collect());
        let dd = GRat::real(crate::exactnum::Rat::from_integer(d));
        let norm = r0.mul(&r0).sub(&r1.mul(&r1).scale(&dd));
        classes.push(EigenClass {
            value: EigenValue::Algebraic(norm.monic()),
            multiplicity: n - counted,
            blocks: None,
        });
    }
    Ok(JordanStructure { classes })
}

/// Synthetic division of an ascending coefficient list by `x - r`.
fn quad_poly_div_monic_linear(p: &[QuadNum], lin: &[QuadNum; 2]) -> Vec<QuadNum> {
    let root = -lin[0].clone();
    let n = p.len() - 1;
    let mut q = vec![QuadNum::zero(); n];
    let mut carry = QuadNum::zero();
    for i in (1..=n).rev() {
        carry = p[i].clone() + &(carry * &root);
        q[i - 1] = carry.clone();
    }
    q
}

#[derive(Deserialize)]
struct MatrixJson {
    n: usize,
    entries: Vec<Vec<CoordJson>>,
}

/// Reads `{"n": int, "entries": [[...]]}` and checks symmetry.
pub fn parse_matrix_json(src: &str) -> Result<Mat<QuadNum>> {
    let doc: MatrixJson = serde_json::from_str(src).map_err(|e| Error::Parse(format!("matrix JSON: {e}")))?;
    if doc.entries.len() != doc.n || doc.entries.iter().any(|r| r.len() != doc.n) {
        return Err(Error::Parse(format!("matrix entries are not {0}x{0}", doc.n)));
    }
    let rows = doc
        .entries
        .iter()
        .map(|r| r.iter().map(CoordJson::to_quad).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let m = Mat::from_rows(rows);
    let entries: Vec<QuadNum> = m.to_rows().into_iter().flatten().collect();
    QuadNum::common_radicand(&entries)?;
    if !m.is_symmetric() {
        return Err(Error::Invalid("matrix is not symmetric".into()));
    }
    Ok(m)
}

pub fn matrix_json(m: &Mat<QuadNum>) -> Value {
    let rows: Vec<Value> = m.to_rows().iter().map(|r| Value::Array(r.iter().map(quad_json).collect())).collect();
    json!({"n": m.rows(), "entries": rows})
}

/// Entries as Gaussian rationals, when every entry is one.
pub fn to_gaussian(m: &Mat<QuadNum>) -> Option<Mat<GRat>> {
    let all = m.to_rows().iter().flatten().all(QuadNum::is_grat);
    all.then(|| m.map(|x| x.a.clone()))
}
