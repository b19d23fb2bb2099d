//! Point model, base blocks, difference profiles and the JSON form of a design.
//!
//! Points are pairs `(group, coord)` in `I_n × Z_L`. For semi-cyclic objects the
//! base blocks are developed by adding `1` to the coordinate modulo `L`; designs
//! without a modulus store every block explicitly.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, ForgeError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GridPoint {
    pub group: u32,
    pub coord: u32,
}

impl GridPoint {
    pub const fn new(group: u32, coord: u32) -> Self {
        GridPoint { group, coord }
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.group, self.coord)
    }
}

/// A block with its points kept sorted by `(group, coord)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BaseBlock {
    points: Vec<GridPoint>,
}

impl BaseBlock {
    pub fn new(mut points: Vec<GridPoint>) -> Self {
        points.sort_unstable();
        BaseBlock { points }
    }

    pub fn from_pairs(pairs: &[(u32, u32)]) -> Self {
        Self::new(pairs.iter().map(|&(g, c)| GridPoint::new(g, c)).collect())
    }

    /// One-row block `{(0, x)}` used by PDFs, PBDs and strictly cyclic GDDs.
    pub fn from_coords(coords: &[u32]) -> Self {
        Self::new(coords.iter().map(|&c| GridPoint::new(0, c)).collect())
    }

    pub fn points(&self) -> &[GridPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn coords(&self) -> Vec<u32> {
        self.points.iter().map(|p| p.coord).collect()
    }

    pub fn translate(&self, s: u32, modulus: u32) -> BaseBlock {
        BaseBlock::new(
            self.points
                .iter()
                .map(|p| GridPoint::new(p.group, ((p.coord as u64 + s as u64) % modulus as u64) as u32))
                .collect(),
        )
    }

    /// Translate so the first point sits at coordinate 0.
    pub fn anchored(&self, modulus: u32) -> BaseBlock {
        match self.points.first() {
            Some(p) => self.translate((modulus - p.coord % modulus) % modulus, modulus),
            None => self.clone(),
        }
    }

    /// Smallest translate in the block ordering; a canonical orbit representative.
    pub fn orbit_representative(&self, modulus: u32) -> BaseBlock {
        (0..modulus).map(|s| self.translate(s, modulus)).min().unwrap_or_else(|| self.clone())
    }

    /// Number of distinct translates under `+1 mod modulus`.
    pub fn orbit_length(&self, modulus: u32) -> u32 {
        (1..=modulus).find(|&s| modulus.is_multiple_of(s) && self.translate(s, modulus) == *self).unwrap_or(modulus)
    }
}

impl fmt::Display for BaseBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DesignKind {
    #[serde(rename = "SCHGDD")]
    Schgdd,
    /// Holey GDD with every block listed.
    #[serde(rename = "HGDD-developed")]
    HgddDeveloped,
    #[serde(rename = "SCGDD")]
    Scgdd,
    StrictCyclicGDD,
    #[serde(rename = "MGDD")]
    Mgdd,
    #[serde(rename = "PDF")]
    Pdf,
    #[serde(rename = "CDM")]
    Cdm,
    QuasiSkewStarter,
    #[serde(rename = "PBD")]
    Pbd,
    #[serde(rename = "BSEC1")]
    Bsec1,
    CyclicBSEC1,
    #[serde(rename = "BSEC2")]
    Bsec2,
    #[serde(rename = "OOC2D")]
    Ooc2d,
}

impl DesignKind {
    pub fn name(self) -> &'static str {
        match self {
            DesignKind::Schgdd => "SCHGDD",
            DesignKind::HgddDeveloped => "HGDD-developed",
            DesignKind::Scgdd => "SCGDD",
            DesignKind::StrictCyclicGDD => "StrictCyclicGDD",
            DesignKind::Mgdd => "MGDD",
            DesignKind::Pdf => "PDF",
            DesignKind::Cdm => "CDM",
            DesignKind::QuasiSkewStarter => "QuasiSkewStarter",
            DesignKind::Pbd => "PBD",
            DesignKind::Bsec1 => "BSEC1",
            DesignKind::CyclicBSEC1 => "CyclicBSEC1",
            DesignKind::Bsec2 => "BSEC2",
            DesignKind::Ooc2d => "OOC2D",
        }
    }
}

/// Parameters of a design. Field meaning depends on `kind`:
///
/// | kind | n | m | t | L |
/// |---|---|---|---|---|
/// | SCHGDD, HGDD | groups | hole size | holes | `mt` (None if developed) |
/// | SCGDD | groups | group size g | 1 | g |
/// | StrictCyclicGDD | groups | group size | 1 | `mn` |
/// | MGDD type k^n | rows | 1 | k | None |
/// | PDF, PBD, BSEC1 | v | - | - | None |
/// | CyclicBSEC1, QuasiSkewStarter | v | - | - | v |
/// | BSEC2 | rows | columns | - | columns |
/// | CDM | rows k | modulus | - | modulus |
///
/// `k` lists the admissible block sizes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DesignParams {
    pub kind: DesignKind,
    pub n: u32,
    #[serde(default)]
    pub m: u32,
    #[serde(default)]
    pub t: u32,
    #[serde(default)]
    pub k: Vec<u32>,
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u32>,
    #[serde(default = "one")]
    pub lambda: u32,
    /// Group `n-1` is the point row `∞`, fixed under row development.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub infinity: bool,
}

fn one() -> u32 {
    1
}

impl DesignParams {
    fn base(kind: DesignKind, n: u32, m: u32, t: u32, k: Vec<u32>, modulus: Option<u32>) -> Self {
        DesignParams { kind, n, m, t, k, modulus, lambda: 1, infinity: false }
    }

    pub fn schgdd(n: u32, m: u32, t: u32) -> Self {
        Self::base(DesignKind::Schgdd, n, m, t, vec![3], Some(m * t))
    }

    pub fn scgdd(n: u32, g: u32, sizes: Vec<u32>) -> Self {
        Self::base(DesignKind::Scgdd, n, g, 1, sizes, Some(g))
    }

    /// Strictly cyclic GDD of type `size^groups` on `Z_{size·groups}`, groups = classes mod `groups`.
    pub fn strict_gdd(groups: u32, size: u32, sizes: Vec<u32>) -> Self {
        Self::base(DesignKind::StrictCyclicGDD, groups, size, 1, sizes, Some(size * groups))
    }

    /// MGDD of type `k^n` stored as the developed HGDD `(n, 1^k)`.
    pub fn mgdd(n: u32, k: u32) -> Self {
        Self::base(DesignKind::Mgdd, n, 1, k, vec![3], None)
    }

    pub fn pdf(v: u32, sizes: Vec<u32>) -> Self {
        Self::base(DesignKind::Pdf, v, 0, 0, sizes, None)
    }

    pub fn pbd(v: u32, sizes: Vec<u32>) -> Self {
        Self::base(DesignKind::Pbd, v, 0, 0, sizes, None)
    }

    pub fn bsec1(v: u32) -> Self {
        Self::base(DesignKind::Bsec1, v, 0, 0, vec![3], None)
    }

    pub fn cyclic_bsec1(v: u32) -> Self {
        Self::base(DesignKind::CyclicBSEC1, v, 0, 0, vec![3], Some(v))
    }

    pub fn bsec2(n: u32, m: u32) -> Self {
        Self::base(DesignKind::Bsec2, n, m, 0, vec![3], Some(m))
    }

    pub fn cdm(k: u32, modulus: u32) -> Self {
        Self::base(DesignKind::Cdm, k, modulus, 0, vec![], Some(modulus))
    }

    pub fn starter(n: u32) -> Self {
        Self::base(DesignKind::QuasiSkewStarter, n, 0, 0, vec![2], Some(n))
    }

    pub fn with_infinity(mut self) -> Self {
        self.infinity = true;
        self
    }

    /// Stable key used by the ingredient cache and the `--ingredient` flag.
    pub fn key(&self) -> String {
        let sizes: Vec<String> = self.k.iter().map(|k| k.to_string()).collect();
        match self.kind {
            DesignKind::Schgdd | DesignKind::HgddDeveloped => {
                format!("{}-n{}-m{}-t{}", self.kind.name(), self.n, self.m, self.t)
            }
            DesignKind::Scgdd | DesignKind::StrictCyclicGDD => {
                format!("{}-n{}-g{}-k{}", self.kind.name(), self.n, self.m, sizes.join("_"))
            }
            DesignKind::Mgdd => format!("MGDD-n{}-k{}", self.n, self.t),
            DesignKind::Pdf | DesignKind::Pbd => {
                format!("{}-v{}-k{}", self.kind.name(), self.n, sizes.join("_"))
            }
            DesignKind::Bsec1 | DesignKind::CyclicBSEC1 | DesignKind::QuasiSkewStarter => {
                format!("{}-v{}", self.kind.name(), self.n)
            }
            DesignKind::Bsec2 => format!("BSEC2-n{}-m{}", self.n, self.m),
            DesignKind::Cdm => format!("CDM-k{}-m{}", self.n, self.m),
            DesignKind::Ooc2d => format!("OOC2D-n{}-m{}", self.n, self.m),
        }
    }
}

impl fmt::Display for DesignParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sizes: Vec<String> = self.k.iter().map(|k| k.to_string()).collect();
        let ks = sizes.join(",");
        match self.kind {
            DesignKind::Schgdd => write!(f, "SCHGDD ({},{}^{})", self.n, self.m, self.t),
            DesignKind::HgddDeveloped => write!(f, "HGDD ({},{}^{})", self.n, self.m, self.t),
            DesignKind::Scgdd => write!(f, "{{{ks}}}-SCGDD {}^{}", self.m, self.n),
            DesignKind::StrictCyclicGDD => write!(f, "strict {{{ks}}}-GDD {}^{}", self.m, self.n),
            DesignKind::Mgdd => write!(f, "MGDD {}^{}", self.t, self.n),
            DesignKind::Pdf => write!(f, "({},{{{ks}}},1)-PDF", self.n),
            DesignKind::Pbd => write!(f, "({},{{{ks}}},1)-PBD", self.n),
            DesignKind::Bsec1 => write!(f, "1-BSEC({},3,1)", self.n),
            DesignKind::CyclicBSEC1 => write!(f, "cyclic 1-BSEC({},3,1)", self.n),
            DesignKind::Bsec2 => write!(f, "2-BSEC({},{},3,1)", self.n, self.m),
            DesignKind::Cdm => write!(f, "({},{})-CDM", self.n, self.m),
            DesignKind::QuasiSkewStarter => write!(f, "quasi-skew starter in Z_{}", self.n),
            DesignKind::Ooc2d => write!(f, "OOC ({}x{},3,1)", self.n, self.m),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Design {
    pub params: DesignParams,
    pub base_blocks: Vec<BaseBlock>,
    pub provenance: String,
}

impl Design {
    pub fn new(params: DesignParams, mut base_blocks: Vec<BaseBlock>, provenance: impl Into<String>) -> Self {
        base_blocks.sort();
        Design { params, base_blocks, provenance: provenance.into() }
    }

    /// Blocks with every orbit replaced by its smallest translate, then sorted.
    pub fn canonical(&self) -> Design {
        let mut out = self.clone();
        if let Some(l) = self.params.modulus {
            out.base_blocks = self.base_blocks.iter().map(|b| b.orbit_representative(l)).collect();
        }
        out.base_blocks.sort();
        out
    }

    /// Every block, developing base blocks over distinct translates.
    pub fn developed_blocks(&self) -> Vec<BaseBlock> {
        match self.params.modulus {
            None => self.base_blocks.clone(),
            Some(l) => self
                .base_blocks
                .iter()
                .flat_map(|b| {
                    let len = b.orbit_length(l);
                    (0..len).map(move |s| b.translate(s, l))
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&DesignFile::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Design> {
        let file: DesignFile = serde_json::from_str(text)?;
        file.into_design()
    }
}

/// `Δ_ij` for every ordered pair of groups, as sorted multisets over `Z_L`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DifferenceProfile {
    pub table: BTreeMap<(u32, u32), Vec<u32>>,
    pub diagonal: BTreeMap<u32, Vec<u32>>,
}

impl DifferenceProfile {
    pub fn get(&self, i: u32, j: u32) -> &[u32] {
        let found = if i == j { self.diagonal.get(&i) } else { self.table.get(&(i, j)) };
        found.map(Vec::as_slice).unwrap_or(&[])
    }

    fn push(&mut self, a: GridPoint, b: GridPoint, modulus: u32) {
        let d = (a.coord as u64 + modulus as u64 - (b.coord % modulus) as u64) as u32 % modulus;
        let slot = if a.group == b.group {
            self.diagonal.entry(a.group).or_default()
        } else {
            self.table.entry((a.group, b.group)).or_default()
        };
        slot.push(d);
    }

    fn sort(&mut self) {
        self.table.values_mut().for_each(|v| v.sort_unstable());
        self.diagonal.values_mut().for_each(|v| v.sort_unstable());
    }
}

/// `Δ_ij(B) = {x - y (mod L) : (i,x),(j,y) ∈ B distinct}`.
pub fn delta_of_block(block: &BaseBlock, modulus: u32) -> DifferenceProfile {
    difference_profile(std::slice::from_ref(block), modulus)
}

pub fn difference_profile(blocks: &[BaseBlock], modulus: u32) -> DifferenceProfile {
    let mut prof = DifferenceProfile::default();
    for b in blocks {
        let pts = b.points();
        for (x, &a) in pts.iter().enumerate() {
            for (y, &c) in pts.iter().enumerate() {
                if x != y {
                    prof.push(a, c, modulus);
                }
            }
        }
    }
    prof.sort();
    prof
}

/// The `L` translates `B + s`, `s ∈ Z_L`, in order of `s`.
pub fn develop_orbit(block: &BaseBlock, modulus: u32) -> Vec<BaseBlock> {
    (0..modulus).map(|s| block.translate(s, modulus)).collect()
}

/// Apply `+l (mod rows)` to group labels for every `l ∈ Z_rows`, leaving the labels in
/// `fixed` untouched.
pub fn develop_rows(initial: &[BaseBlock], rows: u32, fixed: &[u32]) -> Result<Vec<BaseBlock>> {
    let mut out = Vec::with_capacity(initial.len() * rows as usize);
    for b in initial {
        for p in b.points() {
            if p.group >= rows && !fixed.contains(&p.group) {
                return invalid(format!("group {} outside Z_{rows} in {b}", p.group));
            }
        }
        for l in 0..rows {
            let moved = BaseBlock::new(
                b.points()
                    .iter()
                    .map(|p| {
                        if fixed.contains(&p.group) {
                            *p
                        } else {
                            GridPoint::new((p.group + l) % rows, p.coord)
                        }
                    })
                    .collect(),
            );
            if moved.points().windows(2).any(|w| w[0].group == w[1].group) {
                return Err(ForgeError::Collision(format!("translate {l} of {b} repeats a row")));
            }
            out.push(moved);
        }
    }
    Ok(out)
}

/// Divisibility conditions for a 3-SCHGDD of type `(n, m^t)`, with the first failing reason.
pub fn necessary_conditions(n: u32, m: u32, t: u32) -> (bool, String) {
    let (n, m, t) = (n as u64, m as u64, t as u64);
    if n < 3 || t < 3 || m == 0 {
        return (false, "requires n, t >= 3 and m >= 1".into());
    }
    if (t - 1) * (n - 1) * m % 2 != 0 {
        return (false, "parity: (t-1)(n-1)m must be even".into());
    }
    if (t - 1) * n * (n - 1) * m % 6 != 0 {
        return (false, "divisibility: (t-1)n(n-1)m must be divisible by 6".into());
    }
    (true, "necessary conditions hold".into())
}

pub fn expected_base_block_count(n: u32, m: u32, t: u32) -> u64 {
    let (n, m, t) = (n as u64, m as u64, t as u64);
    t.saturating_sub(1) * n * n.saturating_sub(1) * m / 6
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum GroupLabel {
    Index(u32),
    Named(String),
}

#[derive(Serialize, Deserialize)]
struct DesignFile {
    kind: DesignKind,
    params: DesignParams,
    base_blocks: Vec<Vec<(GroupLabel, u32)>>,
    #[serde(default)]
    provenance: String,
}

impl From<&Design> for DesignFile {
    fn from(d: &Design) -> Self {
        let inf = d.params.infinity.then(|| d.params.n - 1);
        let base_blocks = d
            .base_blocks
            .iter()
            .map(|b| {
                b.points()
                    .iter()
                    .map(|p| {
                        let g = if Some(p.group) == inf { GroupLabel::Named("inf".into()) } else { GroupLabel::Index(p.group) };
                        (g, p.coord)
                    })
                    .collect()
            })
            .collect();
        DesignFile { kind: d.params.kind, params: d.params.clone(), base_blocks, provenance: d.provenance.clone() }
    }
}

impl DesignFile {
    fn into_design(self) -> Result<Design> {
        let mut params = self.params;
        params.kind = self.kind;
        let mut blocks = Vec::with_capacity(self.base_blocks.len());
        for raw in self.base_blocks {
            let mut pts = Vec::with_capacity(raw.len());
            for (g, c) in raw {
                let group = match g {
                    GroupLabel::Index(i) => i,
                    GroupLabel::Named(s) if s == "inf" => {
                        params.infinity = true;
                        params.n.checked_sub(1).ok_or_else(|| ForgeError::Parse("inf with n = 0".into()))?
                    }
                    GroupLabel::Named(s) => return Err(ForgeError::Parse(format!("unknown group label {s:?}"))),
                };
                pts.push(GridPoint::new(group, c));
            }
            blocks.push(BaseBlock::new(pts));
        }
        Ok(Design::new(params, blocks, self.provenance))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_of_diagonal_block() {
        let b = BaseBlock::from_pairs(&[(0, 0), (1, 1), (2, 2)]);
        let p = delta_of_block(&b, 4);
        assert_eq!(p.get(1, 0), &[1]);
        assert_eq!(p.get(0, 1), &[3]);
        assert_eq!(p.get(2, 0), &[2]);
        assert_eq!(p.get(0, 2), &[2]);
        assert_eq!(p.get(2, 1), &[1]);
        assert!(p.diagonal.is_empty());
    }

    #[test]
    fn single_point_block_has_empty_profile() {
        let p = delta_of_block(&BaseBlock::from_pairs(&[(3, 1)]), 5);
        assert!(p.table.is_empty() && p.diagonal.is_empty());
    }

    #[test]
    fn orbit_translates() {
        let b = BaseBlock::from_pairs(&[(0, 0), (1, 1), (2, 2)]);
        let orbit = develop_orbit(&b, 4);
        assert_eq!(orbit.len(), 4);
        assert_eq!(orbit[2], BaseBlock::from_pairs(&[(0, 2), (1, 3), (2, 0)]));
        let two = BaseBlock::from_pairs(&[(0, 0), (1, 4)]);
        let mut o = develop_orbit(&two, 8);
        o.sort();
        o.dedup();
        assert_eq!(o.len(), 8);
    }

    #[test]
    fn orbit_length_detects_short_orbits() {
        let short = BaseBlock::from_coords(&[0, 3, 6]);
        assert_eq!(short.orbit_length(9), 3);
        assert_eq!(BaseBlock::from_coords(&[0, 2, 6]).orbit_length(9), 9);
    }

    #[test]
    fn row_development_with_fixed_row() {
        let b = BaseBlock::from_pairs(&[(0, 0), (1, 1), (5, 2)]);
        let dev = develop_rows(&[b], 5, &[5]).unwrap();
        assert_eq!(dev.len(), 5);
        assert_eq!(dev[4], BaseBlock::from_pairs(&[(4, 0), (0, 1), (5, 2)]));
        let bad = BaseBlock::from_pairs(&[(0, 0), (0, 1)]);
        assert!(matches!(develop_rows(&[bad], 5, &[]), Err(ForgeError::Collision(_))));
    }

    #[test]
    fn necessary_condition_examples() {
        assert!(necessary_conditions(5, 1, 4).0);
        let (ok, why) = necessary_conditions(4, 1, 4);
        assert!(!ok && why.contains("parity"));
        assert!(necessary_conditions(3, 1, 3).0);
        assert!(!necessary_conditions(8, 3, 4).0);
    }

    #[test]
    fn block_counts() {
        assert_eq!(expected_base_block_count(4, 2, 4), 12);
        assert_eq!(expected_base_block_count(5, 3, 4), 30);
        assert_eq!(expected_base_block_count(3, 1, 3), 2);
    }

    #[test]
    fn json_round_trip_with_infinity() {
        let params = DesignParams::schgdd(6, 2, 8).with_infinity();
        let d = Design::new(params, vec![BaseBlock::from_pairs(&[(0, 0), (3, 1), (5, 4)])], "test");
        let text = d.to_json().unwrap();
        assert!(text.contains("\"inf\""));
        assert_eq!(Design::from_json(&text).unwrap(), d);
    }
}
