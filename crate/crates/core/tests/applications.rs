use forge_core::apps::bsec::build_bsec2;
use forge_core::apps::ooc::{build_ooc_n4, build_ooc_nm, fold_ooc, OocCode};
use forge_core::recursive::ExecContext;
use forge_core::verify::{johnson_bound, verify_bsec2, verify_ooc};
use forge_core::ForgeError;

fn optimal(c: &OocCode) -> bool {
    verify_ooc(c).valid && johnson_bound(c.n as u64, c.m as u64, 3, 1) == Some(c.codewords.len() as u64)
}

/// Every 2-contiguous pair in no block and every other pair in exactly one, counted over all
/// developed blocks without the verifier.
fn brute_force_bsec(n: u32, m: u32) {
    let d = build_bsec2(n, m, &ExecContext::default()).unwrap();
    let mut count = std::collections::HashMap::new();
    for b in &d.base_blocks {
        let len = b.orbit_length(m);
        for s in 0..len {
            let pts: Vec<(u32, u32)> = b.translate(s, m).points().iter().map(|p| (p.group, p.coord)).collect();
            for x in 0..pts.len() {
                for y in x + 1..pts.len() {
                    *count.entry((pts[x], pts[y])).or_insert(0u32) += 1;
                }
            }
        }
    }
    let cells: Vec<(u32, u32)> = (0..n).flat_map(|r| (0..m).map(move |c| (r, c))).collect();
    for (i, &a) in cells.iter().enumerate() {
        for &b in &cells[i + 1..] {
            let adjacent = (a.0 == b.0 && ((a.1 + 1) % m == b.1 || (b.1 + 1) % m == a.1))
                || (a.1 == b.1 && ((a.0 + 1) % n == b.0 || (b.0 + 1) % n == a.0));
            let c = count.get(&(a, b)).copied().unwrap_or(0);
            assert_eq!(c, u32::from(!adjacent), "{a:?} {b:?}");
        }
    }
    assert!(verify_bsec2(&d, true).valid);
}

#[test]
fn bsec_grids() {
    brute_force_bsec(9, 9);
    brute_force_bsec(9, 15);
    brute_force_bsec(15, 9);
    assert!(matches!(build_bsec2(7, 9, &ExecContext::default()), Err(ForgeError::InvalidParams(_))));
}

#[test]
fn four_column_codes() {
    let ctx = ExecContext::default();
    for n in [2, 6, 8, 12, 14] {
        let c = build_ooc_n4(n, &ctx).unwrap();
        assert!(optimal(&c), "n = {n}");
        assert_eq!(c.codewords.len() as u32, n * (2 * n - 1) / 3);
    }
    assert!(build_ooc_n4(4, &ctx).is_err());
}

#[test]
fn wider_codes_and_folds() {
    let ctx = ExecContext::default();
    for (n, m) in [(6, 16), (8, 16), (8, 28)] {
        let c = build_ooc_nm(n, m, &ctx).unwrap();
        assert!(optimal(&c), "({n},{m})");
        assert_eq!(c.codewords.len() as u32, n * (n * m - 2) / 6);
        for m1 in [2, 4] {
            let f = fold_ooc(&c, m1).unwrap();
            assert_eq!(f.codewords.len(), m1 as usize * c.codewords.len());
            assert!(verify_ooc(&f).valid);
        }
    }
    assert!(build_ooc_nm(2, 16, &ctx).is_err());
    assert!(build_ooc_nm(8, 8, &ctx).is_err());
}
