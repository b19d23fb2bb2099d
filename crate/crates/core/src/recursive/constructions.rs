//! The recursive constructions as explicit coordinate maps. Every output is verified
//! before it is returned.

use std::collections::BTreeMap;

use crate::design::{BaseBlock, Design, DesignKind, DesignParams, GridPoint};
use crate::error::{invalid, ForgeError, Result};
use crate::search::dlx::{DlxOutcome, ExactCover};
use crate::verify::{verify, verify_cdm};

fn checked(d: Design) -> Result<Design> {
    let rep = verify(&d);
    if rep.valid {
        Ok(d)
    } else {
        Err(ForgeError::Verification { what: d.params.to_string(), detail: rep.summary() })
    }
}

fn expect_kind(d: &Design, kind: DesignKind, role: &str) -> Result<()> {
    if d.params.kind != kind {
        return invalid(format!("{role} must be {}, got {}", kind.name(), d.params));
    }
    Ok(())
}

fn block_sizes(d: &Design) -> Vec<u32> {
    let mut ks: Vec<u32> = d.base_blocks.iter().map(|b| b.len() as u32).collect();
    ks.sort_unstable();
    ks.dedup();
    ks
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The `x ∈ Z_{ab}` with `x ≡ p (mod a)` and `x ≡ q (mod b)`, for coprime `a`, `b`.
fn crt(p: u64, a: u64, q: u64, b: u64) -> u64 {
    (0..b).map(|j| p + a * j).find(|x| x % b == q).expect("moduli are coprime")
}

/// SCHGDD `(n, w^t)` from a strictly cyclic `K`-GDD of type `w^t` and an MGDD of type
/// `k^n` for each `k ∈ K`. Each GDD base block `{b_0 < ... < b_{k-1}}` carries a copy of the
/// MGDD whose column `c` is relabeled `b_c`.
pub fn from_strict_gdd_and_mgdd(g: &Design, mgdds: &BTreeMap<u32, Design>) -> Result<Design> {
    expect_kind(g, DesignKind::StrictCyclicGDD, "GDD")?;
    let (t, w) = (g.params.n, g.params.m);
    let mut n = None;
    for (&k, m) in mgdds {
        expect_kind(m, DesignKind::Mgdd, "MGDD")?;
        if m.params.t != k {
            return invalid(format!("MGDD supplied for k = {k} has type {}^{}", m.params.t, m.params.n));
        }
        if n.is_some_and(|n| n != m.params.n) {
            return invalid("MGDDs must share the number of rows");
        }
        n = Some(m.params.n);
    }
    let n = n.ok_or_else(|| ForgeError::InvalidParams("no MGDD supplied".into()))?;
    let mut out = Vec::new();
    for b in &g.base_blocks {
        let cols = b.coords();
        let k = cols.len() as u32;
        let mgdd = mgdds.get(&k).ok_or_else(|| ForgeError::InvalidParams(format!("missing MGDD of type {k}^{n}")))?;
        for blk in &mgdd.base_blocks {
            out.push(BaseBlock::new(blk.points().iter().map(|p| GridPoint::new(p.group, cols[p.coord as usize])).collect()));
        }
    }
    checked(Design::new(DesignParams::schgdd(n, w, t), out, "strict-gdd+mgdd"))
}

/// SCHGDD `(n, (gw)^t)` from a `K`-SCGDD of type `g^n` and an SCHGDD `(k, w^t)` for each
/// block size `k`. A block `{(i_r, a_r)}` of the SCGDD and a block `{(r, y)}` of the
/// ingredient give `{(i_r, y + wt·(a_r + κ_r))}` over `Z_{gwt}`. The lift `κ` is zero when that
/// is already valid; otherwise the CRT map is used when `gcd(g, wt) = 1`, else an exact
/// cover over the lifts.
pub fn from_scgdd_and_schgdd(s: &Design, ingredients: &BTreeMap<u32, Design>) -> Result<Design> {
    expect_kind(s, DesignKind::Scgdd, "SCGDD")?;
    let (n, g) = (s.params.n, s.params.m);
    let mut shape = None;
    for k in block_sizes(s) {
        let ing = ingredients
            .get(&k)
            .ok_or_else(|| ForgeError::InvalidParams(format!("missing SCHGDD ingredient with {k} groups")))?;
        expect_kind(ing, DesignKind::Schgdd, "ingredient")?;
        if ing.params.n != k {
            return invalid(format!("ingredient for k = {k} is {}", ing.params));
        }
        let sh = (ing.params.m, ing.params.t);
        if shape.is_some_and(|x| x != sh) {
            return invalid("ingredients must share the hole type w^t");
        }
        shape = Some(sh);
    }
    let (w, t) = shape.ok_or_else(|| ForgeError::InvalidParams("SCGDD has no blocks".into()))?;
    let (wt, l) = (w * t, g * w * t);
    let params = DesignParams::schgdd(n, g * w, t);
    let slots: Vec<(Vec<GridPoint>, &BaseBlock)> = s
        .base_blocks
        .iter()
        .flat_map(|b| {
            let rows = b.points().to_vec();
            ingredients[&(rows.len() as u32)].base_blocks.iter().map(move |a| (rows.clone(), a))
        })
        .collect();
    let place = |rows: &[GridPoint], a: &BaseBlock, lift: &dyn Fn(usize) -> u32| {
        BaseBlock::new(
            a.points()
                .iter()
                .map(|p| {
                    let r = p.group as usize;
                    GridPoint::new(rows[r].group, (p.coord + wt * ((rows[r].coord + lift(r)) % g)) % l)
                })
                .collect(),
        )
    };

    let naive: Vec<BaseBlock> = slots.iter().map(|(rows, a)| place(rows, a, &|_| 0)).collect();
    let d = Design::new(params.clone(), naive, "scgdd-fill");
    if verify(&d).valid || g == 1 {
        return checked(d);
    }
    if gcd(g as u64, wt as u64) == 1 {
        let blocks = slots
            .iter()
            .map(|(rows, a)| {
                BaseBlock::new(
                    a.points()
                        .iter()
                        .map(|p| {
                            let i = rows[p.group as usize];
                            GridPoint::new(i.group, crt(i.coord as u64, g as u64, p.coord as u64, wt as u64) as u32)
                        })
                        .collect(),
                )
            })
            .collect();
        return checked(Design::new(params, blocks, "scgdd-fill:crt"));
    }
    lift_search(params, &slots, g, wt, t, &place)
}

type Place<'a> = dyn Fn(&[GridPoint], &BaseBlock, &dyn Fn(usize) -> u32) -> BaseBlock + 'a;

/// Node budget of the lift search; past it the fill is reported as not constructible.
pub const LIFT_BUDGET: u64 = 3_000_000;

fn lift_search(params: DesignParams, slots: &[(Vec<GridPoint>, &BaseBlock)], g: u32, wt: u32, t: u32, place: &Place) -> Result<Design> {
    let (n, l) = (params.n, g * wt);
    let pair = |i: u32, j: u32| (i * (2 * n - i - 1) / 2 + (j - i - 1)) as usize;
    let mut index = vec![usize::MAX; (n * (n - 1) / 2 * l) as usize];
    let mut items = slots.len();
    for p in 0..(n * (n - 1) / 2) as usize {
        for d in (0..l).filter(|d| d % t != 0) {
            index[p * l as usize + d as usize] = items;
            items += 1;
        }
    }
    let mut ec = ExactCover::new(items, 0);
    let mut cands = Vec::new();
    for (si, (rows, a)) in slots.iter().enumerate() {
        let k = rows.len() as u32;
        for (shift, code) in (0..wt).flat_map(|s| (0..g.pow(k - 1)).map(move |c| (s, c))) {
            let lift = |r: usize| if r == 0 { 0 } else { (code / g.pow(r as u32 - 1)) % g };
            let b = place(rows, &a.translate(shift, wt), &lift);
            let pts = b.points();
            let mut its = vec![si];
            for x in 0..pts.len() {
                for y in x + 1..pts.len() {
                    let d = (pts[x].coord + l - pts[y].coord) % l;
                    its.push(index[pair(pts[x].group, pts[y].group) * l as usize + d as usize]);
                }
            }
            ec.add_option(its);
            cands.push(b);
        }
    }
    let (out, _) = ec.solve(LIFT_BUDGET);
    match out {
        DlxOutcome::Solution(sol) => {
            checked(Design::new(params, sol.into_iter().map(|o| cands[o].clone()).collect(), "scgdd-fill:lifted"))
        }
        _ => Err(ForgeError::NotConstructible(format!("no lift of the SCGDD fill for {params}"))),
    }
}

/// SCHGDD `(n, (wv)^t)` from an SCHGDD `(n, w^t)` and a `(k, v)`-CDM `D`: every base block
/// `{(i_r, y_r)}` yields `{(i_r, y_r + wt·d_{rj})}` for each column `j`.
pub fn inflate_by_cdm(d: &Design, cdm: &[Vec<u32>]) -> Result<Design> {
    expect_kind(d, DesignKind::Schgdd, "input")?;
    let v = cdm.first().map_or(0, |r| r.len() as u32);
    if v == 0 || !verify_cdm(cdm, v).valid {
        return invalid("not a valid CDM");
    }
    let (n, w, t) = (d.params.n, d.params.m, d.params.t);
    let (wt, l) = (w * t, w * v * t);
    let mut out = Vec::with_capacity(d.base_blocks.len() * v as usize);
    for b in &d.base_blocks {
        if b.len() > cdm.len() {
            return invalid(format!("CDM has {} rows but a block has {} points", cdm.len(), b.len()));
        }
        for j in 0..v as usize {
            out.push(BaseBlock::new(
                b.points().iter().enumerate().map(|(r, p)| GridPoint::new(p.group, (p.coord + wt * cdm[r][j]) % l)).collect(),
            ));
        }
    }
    checked(Design::new(DesignParams::schgdd(n, w * v, t), out, format!("cdm-inflate(v={v})")))
}

/// SCHGDD `(n, g^{wt})` from an outer `(n, (gw)^t)` and an inner `(n, g^w)`; the inner
/// coordinates are multiplied by `t`.
pub fn compose_fill(outer: &Design, inner: &Design) -> Result<Design> {
    expect_kind(outer, DesignKind::Schgdd, "outer")?;
    expect_kind(inner, DesignKind::Schgdd, "inner")?;
    let (n, gw, t) = (outer.params.n, outer.params.m, outer.params.t);
    let (g, w) = (inner.params.m, inner.params.t);
    if inner.params.n != n || g * w != gw {
        return invalid(format!("cannot compose {} with {}", outer.params, inner.params));
    }
    let mut out = outer.base_blocks.clone();
    out.extend(
        inner
            .base_blocks
            .iter()
            .map(|b| BaseBlock::new(b.points().iter().map(|p| GridPoint::new(p.group, p.coord * t)).collect())),
    );
    checked(Design::new(DesignParams::schgdd(n, g, w * t), out, "compose"))
}

/// Strictly cyclic `K`-GDD of type `2^t` on `Z_{2t}` from a `(2t-1, K, 1)`-PDF, reading its
/// blocks as subsets of `Z_{2t}`.
pub fn pdf_to_strict_gdd(pdf: &Design) -> Result<Design> {
    expect_kind(pdf, DesignKind::Pdf, "input")?;
    let v = pdf.params.n;
    if v.is_multiple_of(2) {
        return invalid(format!("PDF order must be odd, got {v}"));
    }
    let t = v.div_ceil(2);
    let blocks = pdf.base_blocks.iter().map(|b| BaseBlock::from_coords(&b.coords())).collect();
    checked(Design::new(DesignParams::strict_gdd(t, 2, pdf.params.k.clone()), blocks, "pdf"))
}

/// A `(v, K, 1)`-PBD read as a `K`-SCGDD of type `1^v`.
pub fn pbd_to_scgdd(pbd: &Design) -> Result<Design> {
    expect_kind(pbd, DesignKind::Pbd, "input")?;
    let blocks = pbd
        .base_blocks
        .iter()
        .map(|b| BaseBlock::new(b.coords().into_iter().map(|p| GridPoint::new(p, 0)).collect()))
        .collect();
    checked(Design::new(DesignParams::scgdd(pbd.params.n, 1, pbd.params.k.clone()), blocks, "pbd"))
}

/// SCGDD of type `(mt)^n` from an SCHGDD `(n, m^t)` and an SCGDD of type `m^n` whose
/// coordinates are multiplied by `t`.
pub fn schgdd_to_scgdd(h: &Design, s: &Design) -> Result<Design> {
    expect_kind(h, DesignKind::Schgdd, "SCHGDD")?;
    expect_kind(s, DesignKind::Scgdd, "SCGDD")?;
    let (n, m, t) = (h.params.n, h.params.m, h.params.t);
    if s.params.n != n || s.params.m != m {
        return invalid(format!("cannot combine {} with {}", h.params, s.params));
    }
    let mut out = h.base_blocks.clone();
    out.extend(
        s.base_blocks
            .iter()
            .map(|b| BaseBlock::new(b.points().iter().map(|p| GridPoint::new(p.group, p.coord * t)).collect())),
    );
    let mut ks = s.params.k.clone();
    if !ks.contains(&3) {
        ks.push(3);
        ks.sort_unstable();
    }
    checked(Design::new(DesignParams::scgdd(n, m * t, ks), out, "schgdd+scgdd"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::direct::{direct_family, FamilyId};
    use crate::search::{cdm, search_design, Budget};

    fn find(p: DesignParams) -> Design {
        search_design(p, Budget::default()).unwrap()
    }

    #[test]
    fn strict_gdd_with_mgdd() {
        let g = Design::new(DesignParams::strict_gdd(4, 2, vec![3]), vec![BaseBlock::from_coords(&[0, 1, 3])], "");
        let mgdd = find(DesignParams::mgdd(6, 3));
        let d = from_strict_gdd_and_mgdd(&g, &BTreeMap::from([(3, mgdd)])).unwrap();
        assert_eq!(d.params, DesignParams::schgdd(6, 2, 4));
        assert_eq!(d.base_blocks.len(), 30);
    }

    #[test]
    fn cdm_inflation_and_identity() {
        let d = direct_family(FamilyId::FourTwo, 4, 2, 6).unwrap();
        let big = inflate_by_cdm(&d, &cdm(3, 3).unwrap()).unwrap();
        assert_eq!(big.params, DesignParams::schgdd(4, 6, 6));
        let same = inflate_by_cdm(&d, &cdm(3, 1).unwrap()).unwrap();
        assert_eq!(same.base_blocks, d.base_blocks);
    }

    #[test]
    fn scgdd_fill_tiers() {
        let pbd = find(DesignParams::pbd(7, vec![3]));
        let s = pbd_to_scgdd(&pbd).unwrap();
        let ing = find(DesignParams::schgdd(3, 2, 4));
        let d = from_scgdd_and_schgdd(&s, &BTreeMap::from([(3, ing.clone())])).unwrap();
        assert_eq!(d.params, DesignParams::schgdd(7, 2, 4));
        for (g, t) in [(2, 4), (4, 6)] {
            let s = find(DesignParams::scgdd(4, g, vec![3]));
            let d = from_scgdd_and_schgdd(&s, &BTreeMap::from([(3, find(DesignParams::schgdd(3, 2, t)))])).unwrap();
            assert_eq!(d.params, DesignParams::schgdd(4, 2 * g, t));
        }
        let s = find(DesignParams::scgdd(3, 3, vec![3]));
        let d = from_scgdd_and_schgdd(&s, &BTreeMap::from([(3, ing)])).unwrap();
        assert_eq!(d.params, DesignParams::schgdd(3, 6, 4));
    }

    #[test]
    fn compose_and_pdf() {
        let pdf = Design::new(DesignParams::pdf(7, vec![3]), vec![BaseBlock::from_coords(&[0, 1, 3])], "");
        let g = pdf_to_strict_gdd(&pdf).unwrap();
        assert_eq!(g.params, DesignParams::strict_gdd(4, 2, vec![3]));
        let outer = find(DesignParams::schgdd(7, 4, 3));
        let inner = direct_family(FamilyId::StarterOneFour, 7, 1, 4).unwrap();
        let d = compose_fill(&outer, &inner).unwrap();
        assert_eq!(d.params, DesignParams::schgdd(7, 1, 12));
        assert_eq!(d.base_blocks.len(), 77);
    }

    #[test]
    fn scgdd_from_schgdd() {
        let h = direct_family(FamilyId::FourTwo, 4, 2, 4).unwrap();
        let s = find(DesignParams::scgdd(4, 2, vec![3]));
        let d = schgdd_to_scgdd(&h, &s).unwrap();
        assert_eq!(d.params, DesignParams::scgdd(4, 8, vec![3]));
    }
}
