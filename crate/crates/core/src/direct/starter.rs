//! Quasi-skew starters and the `(n, 1^4)` family built from them.

use serde::Serialize;

use crate::design::{develop_rows, BaseBlock, Design, DesignParams, GridPoint};
use crate::error::{invalid, ForgeError, Result};
use crate::expr::{env, Evaluated};
use crate::verify::verify_quasi_skew_starter;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StarterOrigin {
    /// Listed pairs for a single small `s`.
    SmallTable,
    /// The parametric family for `s mod 8`.
    GeneralTable,
    /// The tabulated pairs failed verification; found by backtracking instead.
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Starter {
    pub n: u32,
    pub pairs: Vec<(u32, u32)>,
    pub origin: StarterOrigin,
}

const SMALL: [u32; 10] = [3, 4, 5, 6, 7, 8, 10, 11, 13, 14];

/// Smallest `s` for which the general family of class `s mod 8` is stated.
const GENERAL_FROM: [u32; 8] = [16, 9, 18, 19, 12, 21, 22, 15];

/// The tabulated pairs for `n = 2s + 1`, unverified.
pub fn tabulated_starter(n: u32) -> Result<(Vec<(u32, u32)>, StarterOrigin)> {
    if n < 7 || n.is_multiple_of(2) {
        return invalid(format!("quasi-skew starters are tabulated for odd n >= 7, got {n}"));
    }
    let s = (n - 1) / 2;
    let (section, origin) = if SMALL.contains(&s) {
        (format!("s{s}"), StarterOrigin::SmallTable)
    } else if s >= GENERAL_FROM[(s % 8) as usize] {
        (format!("r{}", s % 8), StarterOrigin::GeneralTable)
    } else {
        return invalid(format!("no tabulated starter for s = {s}"));
    };
    let rows = super::starters().expand(&[section.as_str()], &env(&[('s', s as i64)]))?;
    let pairs = rows
        .into_iter()
        .map(|e| match e {
            Evaluated::Scalars(v) if v.len() == 2 => {
                Ok((v[0].rem_euclid(n as i64) as u32, v[1].rem_euclid(n as i64) as u32))
            }
            other => Err(ForgeError::Parse(format!("starter row must be a pair, got {other:?}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((pairs, origin))
}

/// Backtracking over pairs `{x, y}` with `x` the smallest unused element.
pub fn search_starter(n: u32) -> Option<Vec<(u32, u32)>> {
    fn go(n: u32, used: &mut [bool], sums: &mut [bool], acc: &mut Vec<(u32, u32)>) -> bool {
        let Some(x) = (1..n).find(|&x| !used[x as usize]) else { return true };
        used[x as usize] = true;
        for y in (x + 1..n).rev() {
            let s = (x + y) % n;
            if used[y as usize] || s == 0 || sums[s as usize] || sums[(n - s) as usize] {
                continue;
            }
            used[y as usize] = true;
            sums[s as usize] = true;
            sums[(n - s) as usize] = true;
            acc.push((x, y));
            if go(n, used, sums, acc) {
                return true;
            }
            acc.pop();
            used[y as usize] = false;
            sums[s as usize] = false;
            sums[(n - s) as usize] = false;
        }
        used[x as usize] = false;
        false
    }
    if n < 3 || n.is_multiple_of(2) {
        return None;
    }
    let mut used = vec![false; n as usize];
    let mut sums = vec![false; n as usize];
    let mut acc = Vec::new();
    go(n, &mut used, &mut sums, &mut acc).then_some(acc)
}

/// A verified quasi-skew starter in `Z_n` for odd `n >= 7`.
pub fn quasi_skew_starter(n: u32) -> Result<Starter> {
    let (pairs, origin) = tabulated_starter(n)?;
    if verify_quasi_skew_starter(&pairs, n).valid {
        return Ok(Starter { n, pairs, origin });
    }
    log::warn!("tabulated quasi-skew starter for n = {n} fails verification; searching");
    match search_starter(n) {
        Some(pairs) => Ok(Starter { n, pairs, origin: StarterOrigin::Search }),
        None => Err(ForgeError::NotFound(format!("quasi-skew starter in Z_{n}"))),
    }
}

/// `(n, 1^4)` with base blocks `{(i,0), (x+i,1), (x+y+i,2)}` over `I_n × Z_4`.
pub fn schgdd_n_1_4_from_starter(n: u32) -> Result<Design> {
    let st = quasi_skew_starter(n)?;
    let init: Vec<BaseBlock> = st
        .pairs
        .iter()
        .map(|&(x, y)| {
            BaseBlock::new(vec![GridPoint::new(0, 0), GridPoint::new(x % n, 1), GridPoint::new((x + y) % n, 2)])
        })
        .collect();
    let blocks = develop_rows(&init, n, &[])?;
    Ok(Design::new(DesignParams::schgdd(n, 1, 4), blocks, format!("direct:m1-t4({n},1,4) starter:{:?}", st.origin)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::verify_schgdd;

    #[test]
    fn small_examples() {
        let s = quasi_skew_starter(7).unwrap();
        assert_eq!(s.pairs, vec![(1, 5), (2, 3), (4, 6)]);
        assert!(quasi_skew_starter(33).unwrap().pairs.contains(&(8, 9)));
        assert!(quasi_skew_starter(5).is_err());
    }

    #[test]
    fn design_from_starter() {
        let d = schgdd_n_1_4_from_starter(7).unwrap();
        assert_eq!(d.base_blocks.len(), 21);
        assert!(d.base_blocks.contains(&BaseBlock::from_pairs(&[(0, 0), (1, 1), (6, 2)])));
        assert!(verify_schgdd(&d).valid);
        assert_eq!(schgdd_n_1_4_from_starter(9).unwrap().base_blocks.len(), 36);
        assert!(schgdd_n_1_4_from_starter(4).is_err());
    }

    #[test]
    fn searched_starters_verify() {
        for n in [7, 9, 41, 43] {
            let p = search_starter(n).unwrap();
            assert!(verify_quasi_skew_starter(&p, n).valid, "n = {n}");
        }
    }
}
