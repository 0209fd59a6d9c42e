//! Shared oracles and random instance generators.
#![allow(dead_code)]

use hamscreen::exactnum::{int, rat, GRat, Mat, RatFn, Scalar, UPoly};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn gi(re: i64, im: i64) -> GRat {
    GRat::new(int(re), int(im))
}

pub fn small_rat<R: Rng>(r: &mut R, num: i64, den: i64) -> GRat {
    GRat::real(rat(r.gen_range(-num..=num), r.gen_range(1..=den)))
}

/// Largest numerator degree and pole order tried by [`brute_force_first_order`].
pub const ANSATZ_DEGREE: usize = 12;
pub const ANSATZ_POLE: u32 = 6;

/// Searches `f = N / prod (z - z_i)^6` with `deg N <= 12 + 6m` for
/// `f' + p f = q`, which covers every `N / prod (z - z_i)^(e_i)` with
/// `deg N <= 12`, `e_i <= 6`. With `p = a/b`, `q = c/e` the equation is the
/// polynomial identity `(N' D - N D') b e + a N D e = c b D²`, linear in the
/// coefficients of `N`.
pub fn brute_force_first_order(p: &RatFn, q: &RatFn, poles: &[GRat]) -> Option<RatFn> {
    let mut den = UPoly::one();
    for z in poles {
        den = den.mul(&UPoly::linear_root(z).pow(ANSATZ_POLE));
    }
    let dden = den.derivative();
    let (a, b) = (p.num(), p.den());
    let (c, e) = (q.num(), q.den());
    let be = b.mul(e);
    let unknowns = ANSATZ_DEGREE + ANSATZ_POLE as usize * poles.len() + 1;
    let columns: Vec<UPoly> = (0..unknowns)
        .map(|j| {
            let n = UPoly::monomial(GRat::one(), j);
            let lhs = n.derivative().mul(&den).sub(&n.mul(&dden)).mul(&be);
            lhs.add(&a.mul(&n).mul(&den).mul(e))
        })
        .collect();
    let target = c.mul(b).mul(&den).mul(&den);
    let rows = columns.iter().chain([&target]).filter_map(UPoly::degree).max().unwrap_or(0) + 1;
    let mut m = Mat::zeros(rows, unknowns);
    for (j, col) in columns.iter().enumerate() {
        for i in 0..rows {
            m[(i, j)] = col.coeff(i);
        }
    }
    let rhs: Vec<GRat> = (0..rows).map(|i| target.coeff(i)).collect();
    let coeffs = m.solve(&rhs)?;
    let f = RatFn::new(UPoly::new(coeffs), den);
    let residual = f.derivative().add(&p.mul(&f)).sub(q);
    assert!(residual.is_zero(), "coefficient system solved but resubstitution failed");
    Some(f)
}

/// A first-order equation `f' + p f = q` with simple poles of `p` at small
/// integers, together with those poles. About half of the instances are
/// built from a known rational solution.
pub fn random_ode_instance<R: Rng>(r: &mut R) -> (RatFn, RatFn, Vec<GRat>) {
    let mut sites: Vec<i64> = (-3..=3).collect();
    sites.shuffle(r);
    let m = r.gen_range(1..=3);
    let poles: Vec<GRat> = sites[..m].iter().map(|&z| GRat::int(z)).collect();
    let residues = [
        rat(1, 1),
        rat(2, 1),
        rat(3, 1),
        rat(-1, 1),
        rat(-2, 1),
        rat(1, 2),
        rat(-1, 3),
        rat(2, 3),
        rat(5, 4),
    ];
    let mut p = RatFn::zero();
    for z in &poles {
        let rho = residues.choose(r).unwrap().clone();
        p = p.add(&RatFn::simple_pole(z).scale(&GRat::real(rho)));
    }
    if r.gen_bool(0.2) {
        p = p.add(&RatFn::constant(small_rat(r, 2, 1)));
    }
    let q = if r.gen_bool(0.5) {
        let f0 = random_ratfn(r, &poles, 3, 2);
        f0.derivative().add(&p.mul(&f0))
    } else {
        random_ratfn(r, &poles, 4, 2)
    };
    (p, q, poles)
}

fn random_ratfn<R: Rng>(r: &mut R, poles: &[GRat], deg: usize, max_pole: u32) -> RatFn {
    let d = r.gen_range(0..=deg);
    let num = UPoly::new((0..=d).map(|_| small_rat(r, 4, 3)).collect());
    let mut den = UPoly::one();
    for z in poles {
        den = den.mul(&UPoly::linear_root(z).pow(r.gen_range(0..=max_pole)));
    }
    RatFn::new(num, den)
}

/// A random nonzero vector with small Gaussian integer entries; isotropic
/// vectors are included on purpose.
pub fn random_point<R: Rng>(r: &mut R, n: usize) -> Vec<GRat> {
    if r.gen_bool(0.2) {
        let mut c = vec![GRat::zero(); n];
        c[0] = GRat::one();
        c[1] = GRat::i();
        return c;
    }
    loop {
        let c: Vec<GRat> = (0..n).map(|_| gi(r.gen_range(-2..=2), if r.gen_bool(0.3) { r.gen_range(-1..=1) } else { 0 })).collect();
        if c.iter().any(|x| !x.is_zero()) {
            return c;
        }
    }
}

/// A random symmetric `A` with `A c = (k - 1) c`, drawn from the affine
/// space of solutions of these linear conditions.
pub fn random_valid_matrix<R: Rng>(r: &mut R, c: &[GRat], k: i64) -> Mat<GRat> {
    let n = c.len();
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut m: Mat<GRat> = Mat::zeros(n, slots.len());
    for (col, &(i, j)) in slots.iter().enumerate() {
        m[(i, col)] = m[(i, col)].clone() + c[j].clone();
        if i != j {
            m[(j, col)] = m[(j, col)].clone() + c[i].clone();
        }
    }
    let km1 = GRat::int(k - 1);
    let rhs: Vec<GRat> = c.iter().map(|x| km1.clone() * x).collect();
    let mut entries = m.solve(&rhs).expect("the multiple (k-1) I is a solution");
    for v in m.nullspace() {
        let t = gi(r.gen_range(-2..=2), if r.gen_bool(0.2) { 1 } else { 0 });
        for (e, x) in entries.iter_mut().zip(&v) {
            *e = e.clone() + t.clone() * x;
        }
    }
    let mut a = Mat::zeros(n, n);
    for (&(i, j), e) in slots.iter().zip(entries) {
        a[(i, j)] = e.clone();
        a[(j, i)] = e;
    }
    a
}

/// A random symmetric matrix over `Q(i)`; with probability 1/3 it is of the
/// form `μ I + N` with `N` a nonzero symmetric nilpotent, so not
/// diagonalizable.
pub fn random_symmetric<R: Rng>(r: &mut R, n: usize) -> Mat<GRat> {
    if r.gen_bool(1.0 / 3.0) {
        let mu = small_rat(r, 5, 2);
        let s = gi(r.gen_range(1..=3), 0);
        // (1, i) (1, i)^T is symmetric and squares to zero
        let mut a = Mat::identity(n).scale(&mu);
        let u = [GRat::one(), GRat::i()];
        for i in 0..2 {
            for j in 0..2 {
                a[(i, j)] = a[(i, j)].clone() + s.clone() * u[i].clone() * u[j].clone();
            }
        }
        return a;
    }
    let mut a = Mat::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let e = gi(r.gen_range(-4..=4), if r.gen_bool(0.3) { r.gen_range(-2..=2) } else { 0 });
            a[(i, j)] = e.clone();
            a[(j, i)] = e;
        }
    }
    a
}
