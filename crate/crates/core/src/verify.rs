//! Verifiers. Each returns a report listing every defect class it found, with a witness.
//!
//! SCHGDDs are checked twice: once on the difference profile of the base blocks and once
//! by developing every block and counting point pairs.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::apps::ooc::OocCode;
use crate::design::{BaseBlock, Design, DesignKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Category {
    MissingPair,
    RepeatedPair,
    ForbiddenPair,
    WrongCount,
    BadOrbitLength,
    CorrelationExceeded,
    StarterCoverage,
    StarterSums,
    Malformed,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Category::MissingPair => "missing-pair",
            Category::RepeatedPair => "repeated-pair",
            Category::ForbiddenPair => "forbidden-pair",
            Category::WrongCount => "wrong-count",
            Category::BadOrbitLength => "bad-orbit-length",
            Category::CorrelationExceeded => "correlation-exceeded",
            Category::StarterCoverage => "starter-coverage",
            Category::StarterSums => "starter-sums",
            Category::Malformed => "malformed",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub category: Category,
    pub witness: String,
}

const KEEP: usize = 64;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub valid: bool,
    /// First violations found; `total` counts all of them.
    pub violations: Vec<Violation>,
    pub total: usize,
}

impl VerificationReport {
    pub fn ok() -> Self {
        VerificationReport { valid: true, violations: Vec::new(), total: 0 }
    }

    pub fn push(&mut self, category: Category, witness: impl Into<String>) {
        self.valid = false;
        self.total += 1;
        if self.violations.len() < KEEP {
            self.violations.push(Violation { category, witness: witness.into() });
        }
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.valid &= other.valid;
        self.total += other.total;
        for v in other.violations {
            if self.violations.len() < KEEP {
                self.violations.push(v);
            }
        }
    }

    pub fn has(&self, category: Category) -> bool {
        self.violations.iter().any(|v| v.category == category)
    }

    pub fn summary(&self) -> String {
        if self.valid {
            return "valid".into();
        }
        let first = &self.violations[0];
        format!("invalid: {} violation(s), first {} {}", self.total, first.category, first.witness)
    }
}

/// Symmetric pair counter, dense up to 10^4 points.
struct PairCounter {
    dense: Option<Vec<u8>>,
    sparse: HashMap<(u32, u32), u32>,
}

impl PairCounter {
    fn new(n: usize) -> Self {
        let dense = (n <= 10_000).then(|| vec![0u8; n * n.saturating_sub(1) / 2]);
        PairCounter { dense, sparse: HashMap::new() }
    }

    fn slot(p: usize, q: usize) -> usize {
        let (a, b) = if p > q { (p, q) } else { (q, p) };
        a * (a - 1) / 2 + b
    }

    fn add(&mut self, p: usize, q: usize) {
        match &mut self.dense {
            Some(v) => {
                let s = Self::slot(p, q);
                v[s] = v[s].saturating_add(1);
            }
            None => *self.sparse.entry((p.max(q) as u32, p.min(q) as u32)).or_default() += 1,
        }
    }

    fn get(&self, p: usize, q: usize) -> u32 {
        match &self.dense {
            Some(v) => v[Self::slot(p, q)] as u32,
            None => self.sparse.get(&(p.max(q) as u32, p.min(q) as u32)).copied().unwrap_or(0),
        }
    }
}

/// Count every pair of points in `blocks` and compare with `expected(p, q)` (0 or 1).
fn check_pairs<I, F, N, S>(blocks: I, npoints: usize, id: F, expected: N, name: S) -> VerificationReport
where
    I: IntoIterator<Item = BaseBlock>,
    F: Fn(u32, u32) -> Option<usize>,
    N: Fn(usize, usize) -> bool,
    S: Fn(usize) -> String,
{
    let mut rep = VerificationReport::ok();
    let mut pc = PairCounter::new(npoints);
    for b in blocks {
        let mut ids = Vec::with_capacity(b.len());
        for p in b.points() {
            match id(p.group, p.coord) {
                Some(i) => ids.push(i),
                None => {
                    rep.push(Category::Malformed, format!("point {p} outside the point set in {b}"));
                    return rep;
                }
            }
        }
        for x in 0..ids.len() {
            for y in 0..x {
                if ids[x] == ids[y] {
                    rep.push(Category::Malformed, format!("repeated point in {b}"));
                    continue;
                }
                pc.add(ids[x], ids[y]);
            }
        }
    }
    for p in 0..npoints {
        for q in 0..p {
            let c = pc.get(p, q);
            if expected(p, q) {
                if c == 0 {
                    rep.push(Category::MissingPair, format!("{} {} uncovered", name(p), name(q)));
                } else if c > 1 {
                    rep.push(Category::RepeatedPair, format!("{} {} covered {c} times", name(p), name(q)));
                }
            } else if c > 0 {
                rep.push(Category::ForbiddenPair, format!("{} {} covered {c} times", name(p), name(q)));
            }
        }
    }
    rep
}

fn check_sizes(d: &Design, rep: &mut VerificationReport) {
    if d.params.k.is_empty() {
        return;
    }
    for b in d.base_blocks.iter() {
        if !d.params.k.contains(&(b.len() as u32)) {
            rep.push(Category::Malformed, format!("block {b} has size {} outside {:?}", b.len(), d.params.k));
        }
    }
}

fn check_range(d: &Design, rows: u32, cols: u32, rep: &mut VerificationReport) -> bool {
    for b in &d.base_blocks {
        for p in b.points() {
            if p.group >= rows || p.coord >= cols {
                rep.push(Category::Malformed, format!("point {p} outside I_{rows} x Z_{cols} in {b}"));
                return false;
            }
        }
    }
    true
}

/// Dispatch on `design.params.kind`.
pub fn verify(design: &Design) -> VerificationReport {
    match design.params.kind {
        DesignKind::Schgdd => verify_schgdd(design),
        DesignKind::HgddDeveloped => verify_hgdd_developed(design),
        DesignKind::Scgdd => verify_scgdd(design, false),
        DesignKind::StrictCyclicGDD => verify_scgdd(design, true),
        DesignKind::Mgdd => verify_mgdd(design),
        DesignKind::Pdf => verify_pdf(design),
        DesignKind::Pbd => verify_pbd(design),
        DesignKind::Bsec1 | DesignKind::CyclicBSEC1 => verify_bsec1(design),
        DesignKind::Bsec2 => verify_bsec2(design, design.params.modulus.is_some()),
        DesignKind::QuasiSkewStarter => {
            let pairs: Vec<(u32, u32)> = design
                .base_blocks
                .iter()
                .map(|b| {
                    let c = b.coords();
                    (c.first().copied().unwrap_or(0), c.get(1).copied().unwrap_or(0))
                })
                .collect();
            let mut rep = VerificationReport::ok();
            if design.base_blocks.iter().any(|b| b.len() != 2) {
                rep.push(Category::Malformed, "starter entries must be pairs");
                return rep;
            }
            verify_quasi_skew_starter(&pairs, design.params.n)
        }
        DesignKind::Cdm => {
            let rows: Vec<Vec<u32>> = design.base_blocks.iter().map(|b| b.coords()).collect();
            verify_cdm(&rows, design.params.m)
        }
        DesignKind::Ooc2d => {
            let mut r = VerificationReport::ok();
            r.push(Category::Malformed, "OOC codes use the OOC JSON form");
            r
        }
    }
}

/// Profile check (a), developed check (b) and the base-block count.
pub fn verify_schgdd(design: &Design) -> VerificationReport {
    let p = &design.params;
    let mut rep = VerificationReport::ok();
    if p.modulus != Some(p.m * p.t) || p.n < 3 || p.t < 1 || p.m < 1 {
        rep.push(Category::Malformed, format!("parameters {p:?} are not those of a type (n,m^t) SCHGDD"));
        return rep;
    }
    check_sizes(design, &mut rep);
    let expected = crate::design::expected_base_block_count(p.n, p.m, p.t);
    if design.base_blocks.len() as u64 != expected && p.k == [3] {
        rep.push(Category::WrongCount, format!("{} base blocks, expected {expected}", design.base_blocks.len()));
    }
    if !rep.valid {
        return rep;
    }
    rep.merge(schgdd_profile_check(design));
    rep.merge(schgdd_developed_check(design));
    rep
}

/// Check (a): `Δ_ij = Z_mt \ tZ_mt` for `i ≠ j`, diagonal empty, no point pair in one hole.
pub fn schgdd_profile_check(design: &Design) -> VerificationReport {
    let p = &design.params;
    let (n, t, l) = (p.n, p.t, p.m * p.t);
    let mut rep = VerificationReport::ok();
    if !check_range(design, n, l, &mut rep) {
        return rep;
    }
    let mut counts = vec![0u32; (n * n * l) as usize];
    for b in &design.base_blocks {
        let pts = b.points();
        for (x, a) in pts.iter().enumerate() {
            for (y, c) in pts.iter().enumerate() {
                if x == y {
                    continue;
                }
                let d = (a.coord + l - c.coord) % l;
                if a.group == c.group {
                    rep.push(Category::ForbiddenPair, format!("(profile) block {b} meets group {} twice", a.group));
                } else if d % t == 0 {
                    rep.push(Category::ForbiddenPair, format!("(profile) block {b} meets hole {} twice", a.coord % t));
                } else {
                    counts[((a.group * n + c.group) * l + d) as usize] += 1;
                }
            }
        }
        if b.orbit_length(l) != l {
            rep.push(Category::BadOrbitLength, format!("(profile) {b} has orbit length {}", b.orbit_length(l)));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for d in (0..l).filter(|d| d % t != 0) {
                match counts[((i * n + j) * l + d) as usize] {
                    1 => {}
                    0 => rep.push(Category::MissingPair, format!("(profile) difference {d} missing from Δ_{i}{j}")),
                    c => rep.push(Category::RepeatedPair, format!("(profile) difference {d} appears {c} times in Δ_{i}{j}")),
                }
            }
        }
    }
    rep
}

/// Check (b): develop every base block and count pairs of points.
pub fn schgdd_developed_check(design: &Design) -> VerificationReport {
    let p = &design.params;
    let (n, t, l) = (p.n, p.t, p.m * p.t);
    let mut rep = VerificationReport::ok();
    if !check_range(design, n, l, &mut rep) {
        return rep;
    }
    let blocks = design.base_blocks.iter().flat_map(|b| crate::design::develop_orbit(b, l));
    let lsz = l as usize;
    let tsz = t as usize;
    rep.merge(check_pairs(
        blocks,
        (n * l) as usize,
        |g, c| (g < n && c < l).then_some(g as usize * lsz + c as usize),
        move |a, b| a / lsz != b / lsz && (a % lsz) % tsz != (b % lsz) % tsz,
        move |a| format!("({},{})", a / lsz, a % lsz),
    ));
    rep.violations.iter_mut().for_each(|v| v.witness = format!("(developed) {}", v.witness));
    rep
}

/// Every block listed: pairs in distinct groups and distinct holes exactly once.
pub fn verify_hgdd_developed(design: &Design) -> VerificationReport {
    let p = &design.params;
    let (n, t, l) = (p.n, p.t, p.m * p.t);
    let mut rep = VerificationReport::ok();
    check_sizes(design, &mut rep);
    if !check_range(design, n, l, &mut rep) {
        return rep;
    }
    let (lsz, tsz) = (l as usize, t as usize);
    rep.merge(check_pairs(
        design.base_blocks.iter().cloned(),
        (n * l) as usize,
        |g, c| Some(g as usize * lsz + c as usize),
        move |a, b| a / lsz != b / lsz && (a % lsz) % tsz != (b % lsz) % tsz,
        move |a| format!("({},{})", a / lsz, a % lsz),
    ));
    rep
}

/// SCGDD of type `g^n` on `I_n × Z_g`, or with `strict` a strictly cyclic GDD on `Z_{gn}`
/// whose groups are the classes mod `n`.
pub fn verify_scgdd(design: &Design, strict: bool) -> VerificationReport {
    let p = &design.params;
    let mut rep = VerificationReport::ok();
    check_sizes(design, &mut rep);
    if strict {
        let (groups, l) = (p.n, p.m * p.n);
        if p.modulus != Some(l) {
            rep.push(Category::Malformed, "modulus must be group size times group count");
            return rep;
        }
        if !check_range(design, 1, l, &mut rep) {
            return rep;
        }
        let mut counts = vec![0u32; l as usize];
        for b in &design.base_blocks {
            if b.orbit_length(l) != l {
                rep.push(Category::BadOrbitLength, format!("{b} has orbit length {}", b.orbit_length(l)));
            }
            let c = b.coords();
            for x in 0..c.len() {
                for y in 0..c.len() {
                    if x == y {
                        continue;
                    }
                    let d = (c[x] + l - c[y]) % l;
                    if d % groups == 0 {
                        rep.push(Category::ForbiddenPair, format!("{b} meets group {} twice", c[x] % groups));
                    } else {
                        counts[d as usize] += 1;
                    }
                }
            }
        }
        for d in (1..l).filter(|d| d % groups != 0) {
            match counts[d as usize] {
                1 => {}
                0 => rep.push(Category::MissingPair, format!("difference {d} missing")),
                c => rep.push(Category::RepeatedPair, format!("difference {d} appears {c} times")),
            }
        }
        if rep.valid {
            let gsz = groups as usize;
            rep.merge(check_pairs(
                design.developed_blocks(),
                l as usize,
                |_, c| Some(c as usize),
                move |a, b| a % gsz != b % gsz,
                |a| a.to_string(),
            ));
        }
        return rep;
    }
    let (n, g) = (p.n, p.m);
    if p.modulus != Some(g) {
        rep.push(Category::Malformed, "modulus must equal the group size");
        return rep;
    }
    if !check_range(design, n, g, &mut rep) {
        return rep;
    }
    let mut counts = vec![0u32; (n * n * g) as usize];
    for b in &design.base_blocks {
        let pts = b.points();
        for (x, a) in pts.iter().enumerate() {
            for (y, c) in pts.iter().enumerate() {
                if x == y {
                    continue;
                }
                if a.group == c.group {
                    rep.push(Category::ForbiddenPair, format!("{b} meets group {} twice", a.group));
                    continue;
                }
                let d = (a.coord + g - c.coord) % g;
                counts[((a.group * n + c.group) * g + d) as usize] += 1;
            }
        }
    }
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            for d in 0..g {
                match counts[((i * n + j) * g + d) as usize] {
                    1 => {}
                    0 => rep.push(Category::MissingPair, format!("difference {d} missing from Δ_{i}{j}")),
                    c => rep.push(Category::RepeatedPair, format!("difference {d} appears {c} times in Δ_{i}{j}")),
                }
            }
        }
    }
    rep
}

/// MGDD of type `k^n`: points `(row, col)`, each pair in distinct rows and columns once.
pub fn verify_mgdd(design: &Design) -> VerificationReport {
    let (n, k) = (design.params.n, design.params.t);
    let mut rep = VerificationReport::ok();
    check_sizes(design, &mut rep);
    if !check_range(design, n, k, &mut rep) {
        return rep;
    }
    let ksz = k as usize;
    rep.merge(check_pairs(
        design.base_blocks.iter().cloned(),
        (n * k) as usize,
        |g, c| Some(g as usize * ksz + c as usize),
        move |a, b| a / ksz != b / ksz && a % ksz != b % ksz,
        move |a| format!("({},{})", a / ksz, a % ksz),
    ));
    rep
}

/// Positive differences of the blocks cover `1..=(v-1)/2` exactly once.
pub fn verify_pdf(design: &Design) -> VerificationReport {
    let v = design.params.n;
    let mut rep = VerificationReport::ok();
    check_sizes(design, &mut rep);
    if v.is_multiple_of(2) {
        rep.push(Category::Malformed, format!("v = {v} must be odd"));
        return rep;
    }
    let half = (v - 1) / 2;
    let mut counts = vec![0u32; half as usize + 1];
    for b in &design.base_blocks {
        let c = b.coords();
        for x in 0..c.len() {
            for y in 0..x {
                let d = c[x].abs_diff(c[y]);
                if d == 0 || d > half {
                    rep.push(Category::ForbiddenPair, format!("{b} has difference {d} outside 1..={half}"));
                } else {
                    counts[d as usize] += 1;
                }
            }
        }
    }
    for d in 1..=half {
        match counts[d as usize] {
            1 => {}
            0 => rep.push(Category::MissingPair, format!("difference {d} missing")),
            c => rep.push(Category::RepeatedPair, format!("difference {d} appears {c} times")),
        }
    }
    rep
}

pub fn verify_pbd(design: &Design) -> VerificationReport {
    let v = design.params.n;
    let mut rep = VerificationReport::ok();
    check_sizes(design, &mut rep);
    if !check_range(design, 1, v, &mut rep) {
        return rep;
    }
    rep.merge(check_pairs(design.base_blocks.iter().cloned(), v as usize, |_, c| Some(c as usize), |_, _| true, |a| a.to_string()));
    rep
}

/// Every pair of rows has differences running through all of `Z_m`.
pub fn verify_cdm(rows: &[Vec<u32>], m: u32) -> VerificationReport {
    let mut rep = VerificationReport::ok();
    if m == 0 {
        rep.push(Category::Malformed, "modulus 0");
        return rep;
    }
    for (r, row) in rows.iter().enumerate() {
        if row.len() != m as usize || row.iter().any(|&x| x >= m) {
            rep.push(Category::Malformed, format!("row {r} is not a length-{m} vector over Z_{m}"));
            return rep;
        }
    }
    for r in 0..rows.len() {
        for s in 0..r {
            let mut seen = vec![false; m as usize];
            for j in 0..m as usize {
                seen[((rows[r][j] + m - rows[s][j]) % m) as usize] = true;
            }
            if let Some(d) = seen.iter().position(|&x| !x) {
                rep.push(Category::MissingPair, format!("rows {s},{r}: difference {d} absent"));
            }
        }
    }
    rep
}

/// `{x_r} ∪ {y_r} = Z_n \ {0}` and `{±(x_r + y_r)} = Z_n \ {0}`.
pub fn verify_quasi_skew_starter(pairs: &[(u32, u32)], n: u32) -> VerificationReport {
    let mut rep = VerificationReport::ok();
    if n.is_multiple_of(2) || n < 3 {
        rep.push(Category::Malformed, format!("n = {n} must be odd and at least 3"));
        return rep;
    }
    if pairs.len() != ((n - 1) / 2) as usize {
        rep.push(Category::WrongCount, format!("{} pairs, expected {}", pairs.len(), (n - 1) / 2));
    }
    let mut elems = vec![0u32; n as usize];
    let mut sums = vec![0u32; n as usize];
    for &(x, y) in pairs {
        elems[(x % n) as usize] += 1;
        elems[(y % n) as usize] += 1;
        let s = (x % n + y % n) % n;
        sums[s as usize] += 1;
        sums[((n - s) % n) as usize] += 1;
    }
    for z in 0..n as usize {
        let want = u32::from(z != 0);
        if elems[z] != want {
            rep.push(Category::StarterCoverage, format!("element {z} appears {} times", elems[z]));
        }
        if sums[z] != want {
            rep.push(Category::StarterSums, format!("±sum {z} appears {} times", sums[z]));
        }
    }
    rep
}

fn bsec_contiguous(a: (u32, u32), b: (u32, u32), n: u32, m: u32) -> bool {
    let near = |x: u32, y: u32, k: u32| k > 1 && ((x + 1) % k == y || (y + 1) % k == x);
    (a.1 == b.1 && near(a.0, b.0, n)) || (a.0 == b.0 && near(a.1, b.1, m))
}

/// 1-BSEC on the cycle `Z_v`; base blocks are developed when the design has a modulus.
pub fn verify_bsec1(design: &Design) -> VerificationReport {
    let v = design.params.n;
    let mut rep = VerificationReport::ok();
    check_sizes(design, &mut rep);
    if !check_range(design, 1, v, &mut rep) {
        return rep;
    }
    let vsz = v as usize;
    rep.merge(check_pairs(
        design.developed_blocks(),
        vsz,
        |_, c| Some(c as usize),
        move |a, b| !bsec_contiguous((0, a as u32), (0, b as u32), 1, vsz as u32),
        |a| a.to_string(),
    ));
    rep
}

/// 2-BSEC on the torus `Z_n × Z_m`. With `cyclic_columns` the base blocks are developed in
/// the column coordinate.
pub fn verify_bsec2(design: &Design, cyclic_columns: bool) -> VerificationReport {
    let (n, m) = (design.params.n, design.params.m);
    let mut rep = VerificationReport::ok();
    check_sizes(design, &mut rep);
    if !check_range(design, n, m, &mut rep) {
        return rep;
    }
    let blocks = if cyclic_columns {
        design
            .base_blocks
            .iter()
            .flat_map(|b| {
                let len = b.orbit_length(m);
                (0..len).map(move |s| b.translate(s, m))
            })
            .collect()
    } else {
        design.base_blocks.clone()
    };
    let msz = m as usize;
    rep.merge(check_pairs(
        blocks,
        (n * m) as usize,
        |g, c| Some(g as usize * msz + c as usize),
        move |a, b| {
            let pa = ((a / msz) as u32, (a % msz) as u32);
            let pb = ((b / msz) as u32, (b % msz) as u32);
            !bsec_contiguous(pa, pb, n, msz as u32)
        },
        move |a| format!("({},{})", a / msz, a % msz),
    ));
    rep
}

/// Auto- and cross-correlation of a 2-D code, up to `code.lambda`.
pub fn verify_ooc(code: &OocCode) -> VerificationReport {
    let (n, m) = (code.n, code.m);
    let mut rep = VerificationReport::ok();
    for (idx, w) in code.codewords.iter().enumerate() {
        if w.len() != code.k as usize {
            rep.push(Category::Malformed, format!("codeword {idx} has weight {}", w.len()));
        }
        let mut cells = w.clone();
        cells.sort_unstable();
        cells.dedup();
        if cells.len() != w.len() || w.iter().any(|&(r, c)| r >= n || c >= m) {
            rep.push(Category::Malformed, format!("codeword {idx} has repeated or out-of-range cells"));
        }
    }
    if !rep.valid {
        return rep;
    }
    let words = &code.codewords;
    let found: Vec<(usize, usize, u32, u32)> = (0..words.len())
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut out = Vec::new();
            let mut tally = vec![0u32; m as usize];
            for b in a..words.len() {
                tally.iter_mut().for_each(|x| *x = 0);
                for &(ra, ca) in &words[a] {
                    for &(rb, cb) in &words[b] {
                        if ra == rb {
                            tally[((ca + m - cb) % m) as usize] += 1;
                        }
                    }
                }
                for (r, &c) in tally.iter().enumerate() {
                    if (a != b || r != 0) && c > code.lambda {
                        out.push((a, b, r as u32, c));
                    }
                }
            }
            out
        })
        .collect();
    for (a, b, r, c) in found {
        let what = if a == b { "auto" } else { "cross" };
        rep.push(Category::CorrelationExceeded, format!("{what}-correlation of codewords {a},{b} at shift {r} is {c}"));
    }
    rep
}

/// Nested-floor Johnson bound `J(u×v, k, λ)`. `None` unless `1 <= λ < k`.
pub fn johnson_bound(u: u64, v: u64, k: u64, lambda: u64) -> Option<u64> {
    if lambda == 0 || lambda >= k || u == 0 || v == 0 {
        return None;
    }
    let uv = u.checked_mul(v)?;
    let mut x: u128 = 1;
    for i in (1..=lambda).rev() {
        x = (uv as u128 - i as u128) * x / (k - i) as u128;
    }
    Some((u as u128 * x / k as u128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{BaseBlock, DesignParams};

    #[test]
    fn johnson_examples() {
        assert_eq!(johnson_bound(2, 4, 3, 1), Some(2));
        assert_eq!(johnson_bound(8, 4, 3, 1), Some(40));
        assert_eq!(johnson_bound(3, 3, 3, 1), Some(4));
        assert_eq!(johnson_bound(8, 16, 3, 1), Some(168));
        assert_eq!(johnson_bound(2, 4, 3, 3), None);
    }

    #[test]
    fn pdf_examples() {
        let good = Design::new(DesignParams::pdf(7, vec![3]), vec![BaseBlock::from_coords(&[0, 1, 3])], "");
        assert!(verify_pdf(&good).valid);
        let bad = Design::new(DesignParams::pdf(7, vec![3]), vec![BaseBlock::from_coords(&[0, 1, 2])], "");
        assert!(!verify_pdf(&bad).valid);
    }

    #[test]
    fn starter_examples() {
        assert!(verify_quasi_skew_starter(&[(1, 5), (2, 3), (4, 6)], 7).valid);
        assert!(verify_quasi_skew_starter(&[(1, 5), (3, 4), (2, 8), (6, 7)], 9).valid);
        let r = verify_quasi_skew_starter(&[(1, 2), (3, 4), (5, 6)], 7);
        assert!(!r.valid && r.has(Category::StarterSums));
    }

    #[test]
    fn cdm_examples() {
        let rows: Vec<Vec<u32>> = (0..3).map(|r| (0..5).map(|j| r * j % 5).collect()).collect();
        assert!(verify_cdm(&rows, 5).valid);
        assert!(verify_cdm(&[vec![0, 1, 2]], 3).valid);
    }

    #[test]
    fn repeated_scgdd_block() {
        let b = BaseBlock::from_pairs(&[(0, 0), (1, 0), (2, 0)]);
        let d = Design::new(DesignParams::scgdd(3, 1, vec![3]), vec![b.clone(), b], "");
        let r = verify_scgdd(&d, false);
        assert!(!r.valid && r.has(Category::RepeatedPair));
        let single = Design::new(DesignParams::scgdd(3, 1, vec![3]), vec![BaseBlock::from_pairs(&[(0, 0), (1, 0), (2, 0)])], "");
        assert!(verify_scgdd(&single, false).valid);
    }

    #[test]
    fn bsec2_rejects_contiguous() {
        let d = Design::new(DesignParams::bsec2(9, 9), vec![BaseBlock::from_pairs(&[(0, 0), (1, 0), (4, 4)])], "");
        let r = verify_bsec2(&d, true);
        assert!(r.has(Category::ForbiddenPair));
    }

    #[test]
    fn cyclic_bsec1_nine() {
        let d = Design::new(DesignParams::cyclic_bsec1(9), vec![BaseBlock::from_coords(&[0, 2, 6])], "");
        assert!(verify_bsec1(&d).valid);
    }
}
