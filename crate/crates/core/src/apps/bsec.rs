//! Semi-cyclic 2-BSEC(n, m, 3, 1) on the torus `Z_n × Z_m`, developed along the columns.

use crate::design::{BaseBlock, Design, DesignParams, GridPoint};
use crate::error::{invalid, ForgeError, Result};
use crate::recursive::{execute_plan, plan, ExecContext};
use crate::verify::verify_bsec2;

fn obtain(ctx: &ExecContext, goal: DesignParams) -> Result<Design> {
    ctx.obtain(&goal)?.ok_or_else(|| ForgeError::ExternalRequired(goal.key()))
}

/// Base blocks: those of an SCHGDD `(n, 1^m)`, a cyclic 1-BSEC(m) on every row and a
/// 1-BSEC(n) on column 0. Requires `n, m ≡ 3 (mod 6)` and `n, m >= 9`.
pub fn build_bsec2(n: u32, m: u32, ctx: &ExecContext) -> Result<Design> {
    for (name, v) in [("n", n), ("m", m)] {
        if v < 9 || v % 6 != 3 {
            return invalid(format!("semi-cyclic 2-BSEC needs {name} >= 9 and {name} = 3 mod 6, got {v}"));
        }
    }
    let gdd = execute_plan(&plan(n, 1, m), ctx)?;
    let rows = obtain(ctx, DesignParams::cyclic_bsec1(m))?;
    let column = obtain(ctx, DesignParams::bsec1(n))?;
    let mut blocks = gdd.base_blocks.clone();
    for i in 0..n {
        blocks.extend(rows.base_blocks.iter().map(|b| BaseBlock::new(b.points().iter().map(|p| GridPoint::new(i, p.coord)).collect())));
    }
    blocks.extend(column.base_blocks.iter().map(|b| BaseBlock::new(b.points().iter().map(|p| GridPoint::new(p.coord, 0)).collect())));
    let d = Design::new(
        DesignParams::bsec2(n, m),
        blocks,
        format!("bsec2[{}, {}, {}]", gdd.provenance, rows.provenance, column.provenance),
    );
    let rep = verify_bsec2(&d, true);
    if !rep.valid {
        return Err(ForgeError::Verification { what: d.params.to_string(), detail: rep.summary() });
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_by_nine() {
        let d = build_bsec2(9, 9, &ExecContext::default()).unwrap();
        assert!(verify_bsec2(&d, true).valid);
        assert!(build_bsec2(7, 9, &ExecContext::default()).is_err());
    }
}
