//! The reflexive Weyl polytopes over the root lattice of an irreducible
//! root system, one row per family.

use crate::error::{Error, Result};
use crate::roots::{build_root_system, Family, LatticeChoice};

use super::{weyl_polytope_from_fundamental, WeylPolytope};

/// Ranks a row admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankRule {
    AtLeast(usize),
    /// Odd ranks `2k + 1` with `k >= 1`.
    Odd,
    /// Even ranks `2k` with `k >= 2`.
    Even,
    Exactly(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub id: usize,
    pub family: Family,
    pub ranks: RankRule,
    /// The weight used, in Bourbaki numbering.
    pub weight: &'static str,
    /// The weight as usually printed for this row, where it differs.
    pub printed: Option<&'static str>,
    /// Toric variety name, where there is one.
    pub variety: Option<&'static str>,
    /// Whether the polytope is smooth (Delzant).
    pub smooth: bool,
}

const fn row(
    id: usize,
    family: Family,
    ranks: RankRule,
    weight: &'static str,
    printed: Option<&'static str>,
    variety: Option<&'static str>,
    smooth: bool,
) -> TableRow {
    TableRow { id, family, ranks, weight, printed, variety, smooth }
}

pub const TABLE: [TableRow; 13] = [
    row(1, Family::A, RankRule::AtLeast(1), "(n+1)ω1", None, Some("P^n"), true),
    row(2, Family::A, RankRule::AtLeast(2), "ω1+ωn", None, None, false),
    row(3, Family::A, RankRule::Odd, "2ω(k+1)", None, Some("V_(2k+1)"), false),
    row(4, Family::A, RankRule::Even, "ωk+ω(k+1)", Some("(2k+1)(ωk+ω(k+1))"), Some("V_(2k)"), true),
    row(5, Family::B, RankRule::AtLeast(2), "ω1", None, None, false),
    row(6, Family::B, RankRule::AtLeast(2), "2ωn", None, Some("(P^1)^n"), true),
    row(7, Family::C, RankRule::AtLeast(3), "2ω1", None, None, false),
    row(8, Family::C, RankRule::AtLeast(3), "ω2", None, None, false),
    row(9, Family::D, RankRule::AtLeast(4), "2ω1", None, None, false),
    row(10, Family::D, RankRule::AtLeast(4), "ω2", None, None, false),
    row(11, Family::E, RankRule::Exactly(6), "ω2", None, None, false),
    row(12, Family::F, RankRule::Exactly(4), "ω4", None, None, false),
    row(13, Family::G, RankRule::Exactly(2), "ω1", Some("ω2"), Some("V_2"), true),
];

pub fn table_row(id: usize) -> Option<&'static TableRow> {
    TABLE.iter().find(|r| r.id == id)
}

impl TableRow {
    pub fn admits(&self, n: usize) -> bool {
        match self.ranks {
            RankRule::AtLeast(k) => n >= k,
            RankRule::Odd => n >= 3 && n % 2 == 1,
            RankRule::Even => n >= 4 && n % 2 == 0,
            RankRule::Exactly(k) => n == k,
        }
    }

    /// The `count` smallest admissible ranks (a single one for exceptional rows).
    pub fn smallest_ranks(&self, count: usize) -> Vec<usize> {
        match self.ranks {
            RankRule::Exactly(k) => vec![k],
            _ => (1..).filter(|&n| self.admits(n)).take(count).collect(),
        }
    }

    /// Fundamental-weight coordinates of the row's weight at rank `n`.
    pub fn weight_coordinates(&self, n: usize) -> Option<Vec<i64>> {
        if !self.admits(n) {
            return None;
        }
        let mut a = vec![0i64; n];
        let top = n as i64;
        match self.id {
            1 => a[0] = top + 1,
            2 => {
                a[0] += 1;
                a[n - 1] += 1;
            }
            3 => a[(n - 1) / 2] = 2,
            // ωk + ω(k+1) already lies in the root lattice; the (2k+1)-fold
            // dilation has interior lattice points besides 0
            4 => {
                let k = n / 2;
                a[k - 1] = 1;
                a[k] = 1;
            }
            5 | 8 | 10 | 11 => a[if self.id == 5 { 0 } else { 1 }] = 1,
            6 => a[n - 1] = 2,
            7 | 9 => a[0] = 2,
            12 => a[3] = 1,
            // the hexagon of short roots; ω2 is the long highest root
            13 => a[0] = 1,
            _ => return None,
        }
        Some(a)
    }
}

/// The row's Weyl polytope at rank `n` over the root lattice. Fails with
/// [`Error::InternalTableViolation`] if it is not reflexive.
pub fn mr_family(row_id: usize, n: usize) -> Result<WeylPolytope> {
    let out_of_range = || Error::OutOfTableRange { row: row_id.to_string(), rank: n };
    let row = table_row(row_id).ok_or_else(out_of_range)?;
    let a = row.weight_coordinates(n).ok_or_else(out_of_range)?;
    let r = build_root_system(row.family, n, LatticeChoice::Root)?;
    let rec = weyl_polytope_from_fundamental(&r, &a)?;
    if !rec.polytope.is_reflexive() {
        return Err(Error::InternalTableViolation(format!("{}{n} {}", row.family, row.weight)));
    }
    Ok(rec)
}
