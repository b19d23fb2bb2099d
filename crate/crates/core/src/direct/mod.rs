//! Explicit SCHGDD families read from block tables.
//!
//! The tables live in `tables/*.tbl` and are evaluated at run time; this module only
//! decides which sections apply and how the initial blocks are developed over the rows.

pub mod starter;

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::design::{develop_rows, expected_base_block_count, BaseBlock, Design, DesignParams, GridPoint};
use crate::error::{ForgeError, Result};
use crate::expr::{env, Evaluated, Table};

pub use starter::{quasi_skew_starter, schgdd_n_1_4_from_starter, Starter, StarterOrigin};

/// Identifiers of the tabulated families, named by the shape they produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyId {
    /// `(4, 2^t)`, t even.
    #[serde(rename = "n4-m2")]
    FourTwo,
    /// `(5, m^4)`, m ≡ 1, 5 (mod 6).
    #[serde(rename = "n5-t4")]
    FiveFourHoles,
    /// `(5, 3^t)`, t even.
    #[serde(rename = "n5-m3")]
    FiveThree,
    /// `(5, 1^t)`, t ≡ 4 (mod 6), t ≥ 10.
    #[serde(rename = "n5-m1")]
    FiveOne,
    /// `(6, 2^8)`.
    #[serde(rename = "n6-m2-t8")]
    SixTwoEight,
    /// `(6, 4^8)`.
    #[serde(rename = "n6-m4-t8")]
    SixFourEight,
    /// `(6, m^3)`, m odd, m ≥ 5.
    #[serde(rename = "n6-t3")]
    SixThreeHoles,
    /// `(6, 2^t)`, t ≡ 2 (mod 4), t ≥ 6.
    #[serde(rename = "n6-m2")]
    SixTwo,
    /// `(n, 1^4)` from a quasi-skew starter, n odd, n ≥ 7.
    #[serde(rename = "m1-t4")]
    StarterOneFour,
    /// `(n, 3^4)`, n ≡ 5 (mod 6).
    #[serde(rename = "m3-t4")]
    ThreeFour,
}

impl FamilyId {
    pub const ALL: [FamilyId; 10] = [
        FamilyId::FourTwo,
        FamilyId::FiveFourHoles,
        FamilyId::FiveThree,
        FamilyId::FiveOne,
        FamilyId::SixTwoEight,
        FamilyId::SixFourEight,
        FamilyId::SixThreeHoles,
        FamilyId::SixTwo,
        FamilyId::StarterOneFour,
        FamilyId::ThreeFour,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::FourTwo => "n4-m2",
            FamilyId::FiveFourHoles => "n5-t4",
            FamilyId::FiveThree => "n5-m3",
            FamilyId::FiveOne => "n5-m1",
            FamilyId::SixTwoEight => "n6-m2-t8",
            FamilyId::SixFourEight => "n6-m4-t8",
            FamilyId::SixThreeHoles => "n6-t3",
            FamilyId::SixTwo => "n6-m2",
            FamilyId::StarterOneFour => "m1-t4",
            FamilyId::ThreeFour => "m3-t4",
        }
    }

    pub fn parse(s: &str) -> Option<FamilyId> {
        FamilyId::ALL.into_iter().find(|f| f.name() == s)
    }

    pub fn applies(self, n: u32, m: u32, t: u32) -> bool {
        match self {
            FamilyId::FourTwo => n == 4 && m == 2 && t >= 4 && t.is_multiple_of(2),
            FamilyId::FiveFourHoles => n == 5 && t == 4 && m >= 5 && matches!(m % 6, 1 | 5),
            FamilyId::FiveThree => n == 5 && m == 3 && t >= 4 && t.is_multiple_of(2),
            FamilyId::FiveOne => n == 5 && m == 1 && t >= 10 && t % 6 == 4,
            FamilyId::SixTwoEight => n == 6 && m == 2 && t == 8,
            FamilyId::SixFourEight => n == 6 && m == 4 && t == 8,
            FamilyId::SixThreeHoles => n == 6 && t == 3 && m >= 5 && m % 2 == 1,
            FamilyId::SixTwo => n == 6 && m == 2 && t >= 6 && t % 4 == 2,
            FamilyId::StarterOneFour => m == 1 && t == 4 && n >= 7 && n % 2 == 1,
            FamilyId::ThreeFour => m == 3 && t == 4 && n >= 5 && n % 6 == 5,
        }
    }

    /// The first family that covers `(n, m, t)`.
    pub fn for_params(n: u32, m: u32, t: u32) -> Option<FamilyId> {
        FamilyId::ALL.into_iter().find(|f| f.applies(n, m, t))
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

macro_rules! table {
    ($file:literal) => {{
        static CELL: OnceLock<Table> = OnceLock::new();
        CELL.get_or_init(|| Table::parse(include_str!(concat!("tables/", $file))).expect(concat!("table ", $file)))
    }};
}

fn four_two() -> &'static Table {
    table!("four_two.tbl")
}
fn five_m_four() -> &'static Table {
    table!("five_m_four.tbl")
}
fn five_t() -> &'static Table {
    table!("five_t.tbl")
}
fn six_eight() -> &'static Table {
    table!("six_eight.tbl")
}
fn six_three() -> &'static Table {
    table!("six_three.tbl")
}
fn six_two() -> &'static Table {
    table!("six_two.tbl")
}
fn n_three_four() -> &'static Table {
    table!("n_three_four.tbl")
}
pub(crate) fn starters() -> &'static Table {
    table!("starters.tbl")
}

/// Turn evaluated rows into blocks. `inf` becomes group `n - 1`; rows reduce mod `rows`.
fn to_blocks(rows_out: Vec<Evaluated>, rows: u32, n: u32, modulus: u32) -> Result<Vec<BaseBlock>> {
    rows_out
        .into_iter()
        .map(|e| match e {
            Evaluated::Points(pts) => Ok(BaseBlock::new(
                pts.into_iter()
                    .map(|(r, c)| {
                        let group = match r {
                            None => n - 1,
                            Some(r) => r.rem_euclid(rows as i64) as u32,
                        };
                        GridPoint::new(group, c.rem_euclid(modulus as i64) as u32)
                    })
                    .collect(),
            )),
            Evaluated::Scalars(_) => Err(ForgeError::Parse("expected points in a design table".into())),
        })
        .collect()
}

/// Build a member of a tabulated family.
pub fn direct_family(id: FamilyId, n: u32, m: u32, t: u32) -> Result<Design> {
    if !id.applies(n, m, t) {
        return Err(ForgeError::NotApplicable { family: id.name().into(), n, m, t });
    }
    if id == FamilyId::StarterOneFour {
        return schgdd_n_1_4_from_starter(n);
    }
    let l = m * t;
    let (mi, ti, ni) = (m as i64, t as i64, n as i64);
    let mut params = DesignParams::schgdd(n, m, t);
    let blocks = match id {
        FamilyId::FourTwo => to_blocks(four_two().expand(&["all"], &env(&[('t', ti)]))?, 4, n, l)?,
        FamilyId::FiveFourHoles => {
            let sections: Vec<&str> = if m == 5 {
                vec!["m5"]
            } else {
                let tail = match m % 12 {
                    7 | 11 => vec!["m7_11_mod12"],
                    1 => vec!["m1_5_mod12", "m1_mod12"],
                    _ => vec!["m1_5_mod12", "m5_mod12"],
                };
                std::iter::once("common").chain(tail).collect()
            };
            let init = to_blocks(five_m_four().expand(&sections, &env(&[('m', mi)]))?, 5, n, l)?;
            develop_rows(&init, 5, &[])?
        }
        FamilyId::FiveThree | FamilyId::FiveOne => {
            let sec = if id == FamilyId::FiveThree { "three" } else { "one" };
            let init = to_blocks(five_t().expand(&[sec], &env(&[('t', ti)]))?, 5, n, l)?;
            develop_rows(&init, 5, &[])?
        }
        FamilyId::SixTwoEight | FamilyId::SixFourEight => {
            params.infinity = true;
            let sec = if m == 2 { "m2" } else { "m4" };
            let init = to_blocks(six_eight().expand(&[sec], &env(&[]))?, 5, n, l)?;
            develop_rows(&init, 5, &[5])?
        }
        FamilyId::SixThreeHoles => {
            params.infinity = true;
            let sec = if m % 4 == 1 { "m1_mod4" } else { "m3_mod4" };
            let init = to_blocks(six_three().expand(&[sec], &env(&[('m', mi)]))?, 5, n, l)?;
            develop_rows(&init, 5, &[5])?
        }
        FamilyId::SixTwo => {
            params.infinity = true;
            let init = to_blocks(six_two().expand(&["all"], &env(&[('t', ti)]))?, 5, n, l)?;
            develop_rows(&init, 5, &[5])?
        }
        FamilyId::ThreeFour => {
            let sections: Vec<&str> = match n {
                5 => vec!["n5"],
                11 => vec!["n11"],
                _ if ((n - 5) / 6).is_multiple_of(2) => vec!["general", "s_even"],
                _ => vec!["general", "s_odd"],
            };
            let s = (ni - 5) / 6;
            let init = to_blocks(n_three_four().expand(&sections, &env(&[('s', s), ('n', ni)]))?, n, n, l)?;
            develop_rows(&init, n, &[])?
        }
        FamilyId::StarterOneFour => unreachable!(),
    };
    let want = expected_base_block_count(n, m, t);
    if blocks.len() as u64 != want {
        return Err(ForgeError::Verification {
            what: format!("family {id} at ({n},{m},{t})"),
            detail: format!("{} base blocks, expected {want}", blocks.len()),
        });
    }
    Ok(Design::new(params, blocks, format!("direct:{id}({n},{m},{t})")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::verify_schgdd;

    #[test]
    fn four_two_example() {
        let d = direct_family(FamilyId::FourTwo, 4, 2, 4).unwrap();
        assert_eq!(d.base_blocks.len(), 12);
        assert!(d.base_blocks.contains(&BaseBlock::from_pairs(&[(0, 0), (1, 7), (2, 1)])));
        assert!(verify_schgdd(&d).valid);
    }

    #[test]
    fn five_m_four_first_block() {
        let d = direct_family(FamilyId::FiveFourHoles, 5, 5, 4).unwrap();
        assert_eq!(d.base_blocks.len(), 50);
        assert!(d.base_blocks.contains(&BaseBlock::from_pairs(&[(0, 0), (1, 6), (2, 19)])));
        assert!(verify_schgdd(&d).valid);
    }

    #[test]
    fn three_four_eleven() {
        let d = direct_family(FamilyId::ThreeFour, 11, 3, 4).unwrap();
        assert_eq!(d.base_blocks.len(), 165);
        assert!(verify_schgdd(&d).valid);
    }

    #[test]
    fn inapplicable() {
        assert!(matches!(direct_family(FamilyId::FourTwo, 4, 2, 5), Err(ForgeError::NotApplicable { .. })));
        assert!(FamilyId::parse("n6-t3") == Some(FamilyId::SixThreeHoles));
    }
}
