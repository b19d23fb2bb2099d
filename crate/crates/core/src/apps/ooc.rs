use serde::{Deserialize, Serialize};

use crate::design::{Design, DesignParams};
use crate::error::{invalid, ForgeError, Result};
use crate::recursive::{execute_plan, plan, ExecContext};
use crate::search::{search_ooc, Outcome};
use crate::verify::{johnson_bound, verify_ooc};

pub type Cell = (u32, u32);

/// A 2-D `(n×m, k, λ)` optical orthogonal code; codewords are sets of `(row, column)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OocCode {
    pub n: u32,
    pub m: u32,
    pub k: u32,
    pub lambda: u32,
    pub codewords: Vec<Vec<Cell>>,
}

impl OocCode {
    pub fn new(n: u32, m: u32, mut codewords: Vec<Vec<Cell>>) -> Self {
        for w in &mut codewords {
            w.sort_unstable();
        }
        codewords.sort();
        OocCode { n, m, k: 3, lambda: 1, codewords }
    }

    pub fn key(&self) -> String {
        format!("OOC2D-n{}-m{}", self.n, self.m)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<OocCode> {
        Ok(serde_json::from_str(text)?)
    }
}

/// The two codewords of the optimal `(2×4, 3, 1)` code.
pub fn two_by_four() -> OocCode {
    OocCode::new(2, 4, vec![vec![(0, 0), (0, 1), (1, 0)], vec![(1, 0), (1, 1), (0, 3)]])
}

fn checked(code: OocCode) -> Result<OocCode> {
    let rep = verify_ooc(&code);
    if !rep.valid {
        return Err(ForgeError::Verification { what: code.key(), detail: rep.summary() });
    }
    let bound = johnson_bound(code.n as u64, code.m as u64, code.k as u64, code.lambda as u64);
    if bound != Some(code.codewords.len() as u64) {
        return Err(ForgeError::Verification {
            what: code.key(),
            detail: format!("{} codewords, Johnson bound {bound:?}", code.codewords.len()),
        });
    }
    Ok(code)
}

fn rows_of(d: &Design) -> Vec<Vec<Cell>> {
    d.base_blocks.iter().map(|b| b.points().iter().map(|p| (p.group, p.coord)).collect()).collect()
}

/// A supplied, cached or searched `(n×m, 3, 1)` code of Johnson size.
fn obtain_code(n: u32, m: u32, ctx: &ExecContext) -> Result<OocCode> {
    let key = format!("OOC2D-n{n}-m{m}");
    if let Some(c) = ctx.codes.get(&key) {
        return Ok(c.clone());
    }
    if let Some(c) = ctx.cache.as_ref().and_then(|c| c.get_ooc(n, m)) {
        return Ok(c);
    }
    match search_ooc(n, m, ctx.budget)?.outcome {
        Outcome::Found(c) => {
            if let Some(cache) = &ctx.cache {
                cache.put_ooc(&c)?;
            }
            Ok(c)
        }
        _ => Err(ForgeError::ExternalRequired(key)),
    }
}

/// Optimal `(n×4, 3, 1)` code with `n(2n−1)/3` codewords, for `n ≡ 0, 2 (mod 6)`.
pub fn build_ooc_n4(n: u32, ctx: &ExecContext) -> Result<OocCode> {
    if n == 0 || !n.is_multiple_of(6) && n % 6 != 2 {
        return invalid(format!("(n x 4,3,1)-OOC needs n = 0,2 mod 6, got {n}"));
    }
    match n {
        2 => checked(two_by_four()),
        6 => checked(fold_ooc(&obtain_code(3, 8, ctx)?, 2)?),
        _ => {
            let h = n / 2;
            let gdd = ctx.obtain(&DesignParams::scgdd(h, 4, vec![3]))?.ok_or_else(|| ForgeError::ExternalRequired(format!("SCGDD-n{h}-g4-k3")))?;
            let mut words = Vec::new();
            for b in rows_of(&gdd) {
                let [a1, a2, a3] = [b[0], b[1], b[2]];
                let lift = |(r, c): Cell| (r + h, c);
                let (b1, b2, b3) = (lift(a1), lift(a2), lift(a3));
                words.extend([vec![a1, a2, a3], vec![a1, b2, b3], vec![b1, a2, b3], vec![b1, b2, a3]]);
            }
            for j in 0..h {
                let row = |r: u32| if r == 0 { j } else { j + h };
                words.extend(two_by_four().codewords.iter().map(|w| w.iter().map(|&(r, c)| (row(r), c)).collect()));
            }
            checked(OocCode::new(n, 4, words))
        }
    }
}

/// Optimal `(n×m, 3, 1)` code with `n(nm−2)/6` codewords, for `n ≡ 0, 2 (mod 6)` and
/// `m ≡ 4 (mod 12)`.
pub fn build_ooc_nm(n: u32, m: u32, ctx: &ExecContext) -> Result<OocCode> {
    if m % 12 != 4 {
        return invalid(format!("(n x m,3,1)-OOC needs m = 4 mod 12, got {m}"));
    }
    if m == 4 {
        return build_ooc_n4(n, ctx);
    }
    if n < 6 || !n.is_multiple_of(6) && n % 6 != 2 {
        return invalid(format!("(n x {m},3,1)-OOC needs n = 0,2 mod 6 and n >= 6, got {n}"));
    }
    let s = m / 4;
    let gdd = execute_plan(&plan(n, 4, s), ctx)?;
    let strict = ctx
        .obtain(&DesignParams::strict_gdd(s, 4, vec![3]))?
        .ok_or_else(|| ForgeError::ExternalRequired(DesignParams::strict_gdd(s, 4, vec![3]).key()))?;
    let small = build_ooc_n4(n, ctx)?;
    let mut words = rows_of(&gdd);
    let row_words = rows_of(&strict);
    for i in 0..n {
        words.extend(row_words.iter().map(|w| w.iter().map(|&(_, c)| (i, c)).collect()));
    }
    words.extend(small.codewords.iter().map(|w| w.iter().map(|&(r, c)| (r, c * s)).collect()));
    checked(OocCode::new(n, m, words))
}

/// Cell map of the fold: `(i, j) ↦ (i + n·(j mod m1), ⌊j/m1⌋)`.
pub fn fold_cell((i, j): Cell, n: u32, m1: u32) -> Cell {
    (i + n * (j % m1), j / m1)
}

/// `(n·m1 × m/m1)` code with `m1·|code|` codewords: every codeword and its first `m1`
/// column shifts, mapped by [`fold_cell`].
pub fn fold_ooc(code: &OocCode, m1: u32) -> Result<OocCode> {
    if m1 == 0 || !code.m.is_multiple_of(m1) {
        return invalid(format!("m1 = {m1} does not divide m = {}", code.m));
    }
    let rep = verify_ooc(code);
    if !rep.valid {
        return Err(ForgeError::Verification { what: code.key(), detail: rep.summary() });
    }
    let (n, m) = (code.n, code.m);
    let words = code
        .codewords
        .iter()
        .flat_map(|w| (0..m1).map(move |s| w.iter().map(|&(r, c)| fold_cell((r, (c + s) % m), n, m1)).collect()))
        .collect();
    let mut out = OocCode::new(n * m1, m / m1, words);
    out.k = code.k;
    out.lambda = code.lambda;
    let rep = verify_ooc(&out);
    if !rep.valid {
        return Err(ForgeError::Verification { what: out.key(), detail: rep.summary() });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_four_is_optimal() {
        let c = build_ooc_n4(2, &ExecContext::default()).unwrap();
        assert_eq!(c.codewords, vec![vec![(0, 0), (0, 1), (1, 0)], vec![(0, 3), (1, 0), (1, 1)]]);
        assert!(build_ooc_n4(5, &ExecContext::default()).is_err());
    }

    #[test]
    fn folds() {
        let f = fold_ooc(&two_by_four(), 2).unwrap();
        assert_eq!((f.n, f.m, f.codewords.len()), (4, 2, 4));
        assert_eq!(fold_ooc(&two_by_four(), 1).unwrap(), two_by_four());
        assert!(fold_ooc(&two_by_four(), 3).is_err());
    }

    #[test]
    fn eight_rows() {
        let ctx = ExecContext::default();
        assert_eq!(build_ooc_n4(8, &ctx).unwrap().codewords.len(), 40);
        assert_eq!(build_ooc_nm(8, 4, &ctx).unwrap().codewords.len(), 40);
        assert!(build_ooc_nm(2, 16, &ctx).is_err());
    }
}
