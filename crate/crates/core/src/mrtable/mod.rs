//! The 21-row table of admissible `(k, λ)` pairs and the group types of its
//! finite rows.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::rat::{rat_sqrt, to_i64};
use crate::exactnum::{int, rat, GRat, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupType {
    AnyAbelian,
    Ga,
    CyclicDihedral,
    Dihedral,
    Tetrahedral,
    Octahedral,
    Icosahedral,
}

impl GroupType {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupType::AnyAbelian => "any-abelian",
            GroupType::Ga => "Ga",
            GroupType::CyclicDihedral => "cyclic-dihedral",
            GroupType::Dihedral => "dihedral",
            GroupType::Tetrahedral => "tetrahedral",
            GroupType::Octahedral => "octahedral",
            GroupType::Icosahedral => "icosahedral",
        }
    }

    pub fn is_finite(self) -> bool {
        !matches!(self, GroupType::AnyAbelian | GroupType::Ga)
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for GroupType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Which degrees a row applies to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KConstraint {
    PlusMinusTwo,
    AtLeastThree,
    Fixed(i64),
}

impl KConstraint {
    pub fn admits(self, k: i64) -> bool {
        match self {
            KConstraint::PlusMinusTwo => k.abs() == 2,
            KConstraint::AtLeastThree => k.abs() >= 3,
            KConstraint::Fixed(f) => k == f,
        }
    }
}

/// `A + s·B·(a + b p)^2`.
#[derive(Clone, Copy, Debug)]
struct SquareFamily {
    a_num: i64,
    a_den: i64,
    sign: i64,
    b_num: i64,
    b_den: i64,
    shift: i64,
    step: i64,
}

#[derive(Clone, Copy, Debug)]
enum Family {
    Arbitrary,
    Constant(i64),
    RowTwo,
    RowThree,
    RowFour,
    RowSeven,
    Square(SquareFamily),
}

#[derive(Clone, Copy, Debug)]
pub struct TableRow {
    pub row: u8,
    pub k: KConstraint,
    family: Family,
    pub exclusions: &'static [i64],
    pub group: GroupType,
}

const fn sq(a: (i64, i64), sign: i64, b: (i64, i64), shift: i64, step: i64) -> Family {
    Family::Square(SquareFamily { a_num: a.0, a_den: a.1, sign, b_num: b.0, b_den: b.1, shift, step })
}

use GroupType::*;
use KConstraint::*;

pub static TABLE: [TableRow; 21] = [
    TableRow { row: 1, k: PlusMinusTwo, family: Family::Arbitrary, exclusions: &[], group: AnyAbelian },
    TableRow { row: 2, k: AtLeastThree, family: Family::RowTwo, exclusions: &[], group: Ga },
    TableRow { row: 3, k: Fixed(1), family: Family::RowThree, exclusions: &[-1, 0], group: Ga },
    TableRow { row: 4, k: Fixed(-1), family: Family::RowFour, exclusions: &[1, 2], group: Ga },
    TableRow { row: 5, k: Fixed(1), family: Family::Constant(0), exclusions: &[], group: CyclicDihedral },
    TableRow { row: 6, k: Fixed(-1), family: Family::Constant(1), exclusions: &[], group: CyclicDihedral },
    TableRow { row: 7, k: AtLeastThree, family: Family::RowSeven, exclusions: &[], group: Dihedral },
    TableRow { row: 8, k: Fixed(3), family: sq((-1, 24), 1, (1, 6), 1, 3), exclusions: &[], group: Tetrahedral },
    TableRow { row: 9, k: Fixed(3), family: sq((-1, 24), 1, (3, 32), 1, 4), exclusions: &[], group: Octahedral },
    TableRow { row: 10, k: Fixed(3), family: sq((-1, 24), 1, (3, 50), 1, 5), exclusions: &[], group: Icosahedral },
    TableRow { row: 11, k: Fixed(3), family: sq((-1, 24), 1, (3, 50), 2, 5), exclusions: &[], group: Icosahedral },
    TableRow { row: 12, k: Fixed(-3), family: sq((25, 24), -1, (1, 6), 1, 3), exclusions: &[], group: Tetrahedral },
    TableRow { row: 13, k: Fixed(-3), family: sq((25, 24), -1, (3, 32), 1, 4), exclusions: &[], group: Octahedral },
    TableRow { row: 14, k: Fixed(-3), family: sq((25, 24), -1, (3, 50), 1, 5), exclusions: &[], group: Icosahedral },
    TableRow { row: 15, k: Fixed(-3), family: sq((25, 24), -1, (3, 50), 2, 5), exclusions: &[], group: Icosahedral },
    TableRow { row: 16, k: Fixed(4), family: sq((-1, 8), 1, (2, 9), 1, 3), exclusions: &[], group: Octahedral },
    TableRow { row: 17, k: Fixed(-4), family: sq((9, 8), -1, (2, 9), 1, 3), exclusions: &[], group: Octahedral },
    TableRow { row: 18, k: Fixed(5), family: sq((-9, 40), 1, (5, 18), 1, 3), exclusions: &[], group: Icosahedral },
    TableRow { row: 19, k: Fixed(5), family: sq((-9, 40), 1, (1, 10), 2, 5), exclusions: &[], group: Icosahedral },
    TableRow { row: 20, k: Fixed(-5), family: sq((49, 40), -1, (5, 18), 1, 3), exclusions: &[], group: Icosahedral },
    TableRow { row: 21, k: Fixed(-5), family: sq((49, 40), -1, (1, 10), 2, 5), exclusions: &[], group: Icosahedral },
];

pub fn table_row(row: u8) -> Result<&'static TableRow> {
    TABLE
        .get((row as usize).wrapping_sub(1))
        .ok_or_else(|| Error::Invalid(format!("no row {row}; rows are numbered 1 to 21")))
}

impl TableRow {
    /// Whether the family is indexed by an integer `p`.
    pub fn has_parameter(&self) -> bool {
        !matches!(self.family, Family::Arbitrary | Family::Constant(_))
    }

    /// `λ = c2 p^2 + c1 p + c0` for the given `k`.
    fn coeffs(&self, k: i64) -> Option<(Rat, Rat, Rat)> {
        let half = rat(1, 2);
        let kk = int(k);
        Some(match self.family {
            Family::Arbitrary => return None,
            Family::Constant(c) => (int(0), int(0), int(c)),
            Family::RowTwo => (&kk * &half, int(1) - &kk * &half, int(0)),
            Family::RowThree => (half.clone(), half, int(0)),
            Family::RowFour => (-half, rat(3, 2), int(0)),
            Family::RowSeven => (&kk * &half, &kk * &half, rat(k - 1, 2 * k)),
            Family::Square(f) => {
                let b = rat(f.sign * f.b_num, f.b_den);
                let (a, s) = (int(f.shift), int(f.step));
                (&b * &s * &s, int(2) * &b * &a * &s, rat(f.a_num, f.a_den) + &b * &a * &a)
            }
        })
    }
}

/// The table value `λ(k, p)` of a row.
pub fn lambda_of(row: u8, k: i64, p: i64) -> Result<Rat> {
    let r = table_row(row)?;
    if !r.k.admits(k) {
        return Err(Error::IncompatibleRow { row, k });
    }
    if r.exclusions.contains(&p) {
        return Err(Error::ExcludedParameter { row, p });
    }
    let (c2, c1, c0) = r
        .coeffs(k)
        .ok_or_else(|| Error::Invalid("row 1 admits every λ and has no formula".into()))?;
    let pr = int(p);
    Ok(c2 * &pr * &pr + c1 * &pr + c0)
}

/// A certificate that `(k, λ)` belongs to a row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TableMatch {
    pub row: u8,
    pub p: Option<i64>,
    pub group: GroupType,
}

/// Every row containing `(k, λ)`; empty when the pair is not in the table.
pub fn lookup(k: i64, lambda: &GRat) -> Result<Vec<TableMatch>> {
    if k == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut out = Vec::new();
    for r in TABLE.iter().filter(|r| r.k.admits(k)) {
        let Some((c2, c1, c0)) = r.coeffs(k) else {
            out.push(TableMatch { row: r.row, p: None, group: r.group });
            continue;
        };
        if !lambda.is_real() {
            continue;
        }
        let lam = &lambda.re;
        if !r.has_parameter() {
            if c0 == *lam {
                out.push(TableMatch { row: r.row, p: None, group: r.group });
            }
            continue;
        }
        // c2 p^2 + c1 p + (c0 - λ) = 0 with c2 != 0 in every parametrized row
        let c = c0 - lam;
        let disc = &c1 * &c1 - int(4) * &c2 * &c;
        let Some(s) = rat_sqrt(&disc) else { continue };
        let mut ps = Vec::new();
        for root in [(-&c1 + &s) / (int(2) * &c2), (-&c1 - &s) / (int(2) * &c2)] {
            if !root.is_integer() {
                continue;
            }
            let p = to_i64(&root).ok_or_else(|| {
                Error::Unsupported(format!("table parameter {root} does not fit in 64 bits"))
            })?;
            if !r.exclusions.contains(&p) && !ps.contains(&p) {
                ps.push(p);
            }
        }
        ps.sort_unstable();
        out.extend(ps.into_iter().map(|p| TableMatch { row: r.row, p: Some(p), group: r.group }));
    }
    Ok(out)
}

/// `(k, λ) ↦ (-k, 1 - λ)`.
pub fn symmetry_image(k: i64, lambda: &GRat) -> (i64, GRat) {
    (-k, GRat::int(1) - lambda)
}

/// Coarse classification derived from the matching rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaloisType {
    AnyK2Abelian,
    Ga,
    Finite(GroupType),
    NotInTable,
}

impl fmt::Display for GaloisType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaloisType::AnyK2Abelian => f.write_str("any-abelian"),
            GaloisType::Ga => f.write_str("Ga"),
            GaloisType::Finite(g) => write!(f, "finite/{g}"),
            GaloisType::NotInTable => f.write_str("not-in-table"),
        }
    }
}

/// Group type of the matches; matches spanning different types are an
/// error rather than a silent choice.
pub fn classify(matches: &[TableMatch]) -> Result<GaloisType> {
    let Some(first) = matches.first() else {
        return Ok(GaloisType::NotInTable);
    };
    if let Some(other) = matches.iter().find(|m| m.group != first.group) {
        return Err(Error::ConflictingMatches(format!(
            "row {} ({}) and row {} ({})",
            first.row, first.group, other.row, other.group
        )));
    }
    Ok(match first.group {
        GroupType::AnyAbelian => GaloisType::AnyK2Abelian,
        GroupType::Ga => GaloisType::Ga,
        g => GaloisType::Finite(g),
    })
}

pub fn galois_type(k: i64, lambda: &GRat) -> Result<GaloisType> {
    classify(&lookup(k, lambda)?)
}

/// Parameter map between paired rows.
pub type ParamMap = fn(i64) -> i64;

/// The row that `row` maps to under `(k, λ) ↦ (-k, 1 - λ)`, with the
/// parameter map `p ↦ p'`.
pub fn paired_row(row: u8) -> Option<(u8, ParamMap)> {
    let same: ParamMap = |p| p;
    let flip: ParamMap = |p| 1 - p;
    Some(match row {
        2 => (2, flip),
        3 => (4, flip),
        4 => (3, flip),
        5 => (6, same),
        6 => (5, same),
        7 => (7, same),
        8..=11 => (row + 4, same),
        12..=15 => (row - 4, same),
        16 => (17, same),
        17 => (16, same),
        18 | 19 => (row + 2, same),
        20 | 21 => (row - 2, same),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> GRat {
        GRat::real(rat(n, d))
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_of(2, 3, -1).unwrap(), int(2));
        assert_eq!(lambda_of(8, 3, 0).unwrap(), rat(1, 8));
        assert_eq!(lambda_of(18, 5, 0).unwrap(), rat(19, 360));
        assert!(matches!(lambda_of(8, 4, 0), Err(Error::IncompatibleRow { row: 8, k: 4 })));
        assert!(matches!(lambda_of(3, 1, -1), Err(Error::ExcludedParameter { row: 3, p: -1 })));
    }

    #[test]
    fn lookup_examples() {
        assert_eq!(lookup(3, &r(2, 1)).unwrap(), vec![TableMatch { row: 2, p: Some(-1), group: Ga }]);
        assert_eq!(lookup(1, &r(0, 1)).unwrap(), vec![TableMatch { row: 5, p: None, group: CyclicDihedral }]);
        assert!(lookup(3, &r(1, 2)).unwrap().is_empty());
        let c = GRat::new(int(7), int(3));
        assert_eq!(lookup(2, &c).unwrap(), vec![TableMatch { row: 1, p: None, group: AnyAbelian }]);
        assert!(matches!(lookup(0, &r(1, 1)), Err(Error::ZeroDegree)));
        assert!(lookup(3, &GRat::i()).unwrap().is_empty());
    }

    #[test]
    fn row_seven_has_two_parameters() {
        let lam = lambda_of(7, 4, 2).unwrap();
        let ps: Vec<_> = lookup(4, &GRat::real(lam)).unwrap().iter().map(|m| m.p).collect();
        assert_eq!(ps, vec![Some(-3), Some(2)]);
    }

    #[test]
    fn symmetry_examples() {
        assert_eq!(symmetry_image(3, &r(2, 1)), (-3, r(-1, 1)));
        assert_eq!(symmetry_image(5, &r(19, 360)), (-5, r(341, 360)));
    }

    #[test]
    fn galois_examples() {
        assert_eq!(galois_type(3, &r(2, 1)).unwrap(), GaloisType::Ga);
        assert_eq!(galois_type(3, &r(1, 8)).unwrap(), GaloisType::Finite(Tetrahedral));
        assert_eq!(galois_type(3, &r(1, 2)).unwrap(), GaloisType::NotInTable);
        assert_eq!(galois_type(-2, &r(5, 1)).unwrap(), GaloisType::AnyK2Abelian);
    }

    #[test]
    fn conflicting_matches_are_reported() {
        let ms = [TableMatch { row: 2, p: Some(0), group: Ga }, TableMatch { row: 7, p: Some(0), group: Dihedral }];
        assert!(matches!(classify(&ms), Err(Error::ConflictingMatches(_))));
    }
}
