//! JSON forms of exact scalars shared by the file formats.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::grat::GRat;
use super::rat::{fmt_rat, parse_rat};
use crate::error::Result;
use super::surd::{QuadNum, Surd};

/// Coordinate in a points or matrix file: a Gaussian rational, a real surd
/// `{"u", "v", "d"}`, or `{"a", "b", "d"}` with Gaussian `a`, `b`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoordJson {
    Quad { a: GRat, b: GRat, d: String },
    Surd(Surd),
    Gauss(GRat),
}

impl CoordJson {
    pub fn to_quad(&self) -> Result<QuadNum> {
        Ok(match self {
            CoordJson::Quad { a, b, d } => QuadNum::new(a.clone(), b.clone(), &parse_rat(d)?),
            CoordJson::Gauss(g) => QuadNum::from_grat(g.clone()),
            CoordJson::Surd(s) => QuadNum::new(GRat::real(s.u.clone()), GRat::real(s.v.clone()), &s.d),
        })
    }
}

/// JSON for a value of `Q(i)(√d)`: the Gaussian form when possible, then
/// the real surd form, otherwise `{"a", "b", "d"}`.
pub fn quad_json(x: &QuadNum) -> Value {
    if let Some(g) = x.as_grat() {
        return serde_json::to_value(g).unwrap();
    }
    if x.a.is_real() && x.b.is_real() {
        return json!({"u": fmt_rat(&x.a.re), "v": fmt_rat(&x.b.re), "d": x.d.to_string()});
    }
    json!({
        "a": serde_json::to_value(&x.a).unwrap(),
        "b": serde_json::to_value(&x.b).unwrap(),
        "d": x.d.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat::rat;

    #[test]
    fn round_trip_forms() {
        let vals = [
            QuadNum::from_grat(GRat::new(rat(1, 2), rat(-3, 1))),
            QuadNum::new(GRat::int(1), GRat::int(2), &rat(3, 1)),
            QuadNum::new(GRat::i(), GRat::int(2), &rat(5, 1)),
        ];
        for v in vals {
            let c: CoordJson = serde_json::from_value(quad_json(&v)).unwrap();
            assert_eq!(c.to_quad().unwrap(), v);
        }
    }
}
