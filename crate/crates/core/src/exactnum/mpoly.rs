use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::grat::GRat;
use super::scalar::Scalar;
use super::upoly::UPoly;

/// Sparse multivariate polynomial over `Q(i)` keyed by exponent vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    n: usize,
    terms: BTreeMap<Vec<u32>, GRat>,
}

impl MPoly {
    pub fn zero(n: usize) -> Self {
        MPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: GRat) -> Self {
        MPoly::monomial(n, vec![0; n], c)
    }

    pub fn one(n: usize) -> Self {
        MPoly::constant(n, GRat::one())
    }

    /// The variable with index `i` (0-based).
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        MPoly::monomial(n, e, GRat::one())
    }

    pub fn monomial(n: usize, exps: Vec<u32>, c: GRat) -> Self {
        assert_eq!(exps.len(), n, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !Scalar::is_zero(&c) {
            terms.insert(exps, c);
        }
        MPoly { n, terms }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Vec<u32>, GRat)>) -> Self {
        let mut p = MPoly::zero(n);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: GRat) {
        assert_eq!(e.len(), self.n, "exponent vector length");
        if Scalar::is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = &*v + &c;
                if Scalar::is_zero(v) {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u32>, &GRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> GRat {
        self.terms.get(e).cloned().unwrap_or_else(GRat::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Common degree of all terms, or `None` if mixed or zero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        assert_eq!(self.n, o.n, "variable count mismatch");
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> MPoly {
        MPoly { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &GRat) -> MPoly {
        if Scalar::is_zero(c) {
            return MPoly::zero(self.n);
        }
        MPoly { n: self.n, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        assert_eq!(self.n, o.n, "variable count mismatch");
        let mut r = MPoly::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(self.n);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> MPoly {
        let mut r = MPoly::zero(self.n);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            r.add_term(e2, c * &GRat::int(e[i] as i64));
        }
        r
    }

    pub fn eval<T: Scalar>(&self, x: &[T]) -> T {
        assert_eq!(x.len(), self.n, "point dimension");
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut t = T::from_grat(c.clone());
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t = t * &xi.pow(k);
                }
            }
            acc = acc + &t;
        }
        acc
    }

    /// Substitutes a univariate polynomial for every variable.
    pub fn eval_upoly(&self, x: &[UPoly]) -> UPoly {
        assert_eq!(x.len(), self.n, "point dimension");
        let mut acc = UPoly::zero();
        for (e, c) in &self.terms {
            let mut t = UPoly::constant(c.clone());
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t = t.mul(&xi.pow(k));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitutes polynomials in `m` variables for the `n` variables.
    pub fn compose(&self, x: &[MPoly]) -> MPoly {
        assert_eq!(x.len(), self.n, "substitution length");
        let m = x.first().map_or(0, |p| p.n);
        let mut acc = MPoly::zero(m);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(m, c.clone());
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t = t.mul(&xi.pow(k));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Re-embeds into `m >= n` variables, placing variable `i` at `map[i]`.
    pub fn embed(&self, m: usize, map: &[usize]) -> MPoly {
        let mut r = MPoly::zero(m);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; m];
            for (i, &k) in e.iter().enumerate() {
                e2[map[i]] += k;
            }
            r.add_term(e2, c.clone());
        }
        r
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        // highest total degree first, then lexicographically largest
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (e, c) in keys {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{k}", names[i]) })
                .collect();
            let mono = mono.join("*");
            let complex = !c.re.is_zero() && !c.im.is_zero();
            let cs = if complex { format!("({c})") } else { c.to_string() };
            let body = if mono.is_empty() {
                cs
            } else if c.is_real() && c.re.is_one() {
                mono
            } else if c.is_real() && (-c.re.clone()).is_one() {
                format!("-{mono}")
            } else {
                format!("{cs}*{mono}")
            };
            if s.is_empty() {
                s = body;
            } else if let Some(rest) = body.strip_prefix('-') {
                s = format!("{s} - {rest}");
            } else {
                s = format!("{s} + {body}");
            }
        }
        s
    }
}


pub fn q_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("q{i}")).collect()
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&q_names(self.n)))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(i: usize) -> MPoly {
        MPoly::var(2, i)
    }

    #[test]
    fn product_rule_example() {
        // (q1^2 + q2^2) q1
        let v = q(0).pow(2).add(&q(1).pow(2)).mul(&q(0));
        assert_eq!(v.homogeneous_degree(), Some(3));
        let d1 = v.derivative(0);
        let d2 = v.derivative(1);
        assert_eq!(d1, q(0).pow(2).scale(&GRat::int(3)).add(&q(1).pow(2)));
        assert_eq!(d2, q(0).mul(&q(1)).scale(&GRat::int(2)));
        assert_eq!(v.to_string(), "q1^3 + q1*q2^2");
    }

    #[test]
    fn eval_gaussian() {
        let v = q(0).pow(2).add(&q(1).pow(2));
        assert!(Scalar::is_zero(&v.eval(&[GRat::one(), GRat::i()])));
    }

    #[test]
    fn mixed_degree() {
        assert_eq!(q(0).add(&q(1).pow(2)).homogeneous_degree(), None);
    }
}
