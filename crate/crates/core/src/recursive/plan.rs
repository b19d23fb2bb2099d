//! The existence classification and the construction tree for each `(n, m, t)`.
//!
//! Planning is pure: no search is run and nothing is read from disk. Leaves that name a
//! cited but unconstructed ingredient become `Search` or `External` nodes and are resolved
//! by the executor.

use std::fmt;

use serde::Serialize;

use crate::design::{necessary_conditions, DesignParams};
use crate::direct::FamilyId;
use crate::search::Cache;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Direct(FamilyId),
    /// Strictly cyclic GDD blocks filled with MGDDs.
    GddMgdd,
    /// SCGDD blocks filled with smaller SCHGDDs.
    ScgddFill,
    /// Every base block spread over the columns of a `(3, v)`-CDM.
    CdmInflate { v: u32 },
    /// Outer SCHGDD plus an inner one scaled into its holes.
    Compose,
    PdfToGdd,
    PbdToScgdd,
    SchgddToScgdd,
    Search,
    Cache,
    External,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Direct(id) => write!(f, "direct {id}"),
            Rule::GddMgdd => f.write_str("strict-gdd+mgdd"),
            Rule::ScgddFill => f.write_str("scgdd-fill"),
            Rule::CdmInflate { v } => write!(f, "cdm-inflate v={v}"),
            Rule::Compose => f.write_str("compose"),
            Rule::PdfToGdd => f.write_str("pdf-to-gdd"),
            Rule::PbdToScgdd => f.write_str("pbd-to-scgdd"),
            Rule::SchgddToScgdd => f.write_str("schgdd-to-scgdd"),
            Rule::Search => f.write_str("search"),
            Rule::Cache => f.write_str("cache"),
            Rule::External => f.write_str("external"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "kebab-case")]
pub enum Status {
    Exists,
    NotExists(String),
    Open(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Exists,
    NotExists,
    Open,
}

impl Status {
    pub fn verdict(&self) -> Verdict {
        match self {
            Status::Exists => Verdict::Exists,
            Status::NotExists(_) => Verdict::NotExists,
            Status::Open(_) => Verdict::Open,
        }
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            Status::Exists => None,
            Status::NotExists(r) | Status::Open(r) => Some(r),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlanNode {
    pub goal: DesignParams,
    pub rule: Option<Rule>,
    pub children: Vec<PlanNode>,
    #[serde(flatten)]
    pub status: Status,
}

impl PlanNode {
    fn leaf(goal: DesignParams, rule: Rule) -> PlanNode {
        PlanNode { goal, rule: Some(rule), children: Vec::new(), status: Status::Exists }
    }

    fn verdict_only(goal: DesignParams, status: Status) -> PlanNode {
        PlanNode { goal, rule: None, children: Vec::new(), status }
    }

    /// A node built by `rule` from `children`, or a search for `goal` when some child has no
    /// construction.
    fn build(goal: DesignParams, rule: Rule, children: Vec<PlanNode>) -> PlanNode {
        if children.iter().all(|c| c.status == Status::Exists) {
            PlanNode { goal, rule: Some(rule), children, status: Status::Exists }
        } else {
            PlanNode::leaf(goal, Rule::Search)
        }
    }

    pub fn exists(&self) -> bool {
        self.status == Status::Exists
    }

    /// Every node below an `Exists` node is `Exists` too.
    pub fn is_consistent(&self) -> bool {
        !self.exists() || self.children.iter().all(|c| c.exists() && c.is_consistent())
    }

    pub fn nodes(&self) -> Vec<&PlanNode> {
        let mut out = vec![self];
        for c in &self.children {
            out.extend(c.nodes());
        }
        out
    }

    pub fn leaves_with(&self, rule: Rule) -> Vec<&DesignParams> {
        self.nodes().into_iter().filter(|n| n.rule == Some(rule)).map(|n| &n.goal).collect()
    }

    /// Indented tree, one node per line.
    pub fn render(&self) -> String {
        fn go(node: &PlanNode, depth: usize, out: &mut String) {
            let rule = node.rule.map_or_else(|| "-".to_string(), |r| r.to_string());
            let status = node.status.reason().unwrap_or("exists");
            out.push_str(&format!("{:indent$}{}  <- {rule}  [{status}]\n", "", node.goal, indent = 2 * depth));
            for c in &node.children {
                go(c, depth + 1, out);
            }
        }
        let mut out = String::new();
        go(self, 0, &mut out);
        out
    }
}

/// Replace every node whose goal is already cached by a `Cache` leaf.
pub fn annotate_cache(node: &mut PlanNode, cache: &Cache) {
    if node.exists() && cache.get(&node.goal).is_some() {
        node.rule = Some(Rule::Cache);
        node.children.clear();
        return;
    }
    for c in &mut node.children {
        annotate_cache(c, cache);
    }
}

pub fn classify(n: u32, m: u32, t: u32) -> Verdict {
    plan(n, m, t).status.verdict()
}

fn odd(x: u32) -> bool {
    x % 2 == 1
}

/// Nonexistence or undecided status from the classification alone.
fn settled(n: u32, m: u32, t: u32) -> Option<Status> {
    let (ok, why) = necessary_conditions(n, m, t);
    if !ok {
        return Some(Status::NotExists(format!("necessary conditions fail: {why}")));
    }
    let no = |r: &str| Some(Status::NotExists(r.to_string()));
    if matches!(n % 12, 3 | 7) && odd(m) && t % 4 == 2 {
        return no("nonexistent: n = 3, 7 (mod 12), m odd, t = 2 (mod 4) would give an SCGDD of type (mt)^n with mt = 2 (mod 4)");
    }
    if n == 3 && odd(m) && t.is_multiple_of(2) {
        return no("nonexistent: n = 3 with m odd and t even");
    }
    if n == 3 && t == 3 && !odd(m) {
        return no("nonexistent: n = t = 3 with m even");
    }
    if (n, m, t) == (5, 1, 4) {
        return no("nonexistent: no (5,1^4) by exhaustive base-block analysis");
    }
    if (n, m, t) == (6, 1, 3) {
        return no("nonexistent: no (6,1^3)");
    }
    let open = |r: &str| Some(Status::Open(r.to_string()));
    if n == 8 && matches!(m % 12, 2 | 10) && matches!(t % 12, 7 | 10) {
        return open("open: n = 8, m = 2, 10 (mod 12), t = 7, 10 (mod 12)");
    }
    if t == 8 && ((odd(m) && matches!(n % 6, 1 | 3) && n >= 7) || (m % 6 == 3 && n % 6 == 5 && n >= 11)) {
        return open("open: t = 8");
    }
    if matches!(n % 12, 1 | 9) && odd(m) && t % 4 == 2 {
        return open("open: n = 1, 9 (mod 12), m odd, t = 2 (mod 4)");
    }
    if n % 6 == 5 && n >= 11 && ((m % 6 == 3 && t % 4 == 2) || (matches!(m % 6, 1 | 5) && t % 12 == 10)) {
        return open("open: n = 5 (mod 6), n >= 11 with t = 2 (mod 4)");
    }
    None
}

/// The construction tree for an SCHGDD of type `(n, m^t)`.
pub fn plan(n: u32, m: u32, t: u32) -> PlanNode {
    let goal = DesignParams::schgdd(n, m, t);
    if let Some(status) = settled(n, m, t) {
        return PlanNode::verdict_only(goal, status);
    }
    if let Some(id) = FamilyId::for_params(n, m, t) {
        return PlanNode::leaf(goal, Rule::Direct(id));
    }
    let node = match n {
        3 => plan_three(m, t),
        4 => plan_four(m, t),
        5 => plan_five(m, t),
        6 => plan_six(m, t),
        8 => plan_eight(m, t),
        _ if n % 3 == 2 => plan_two_mod_three(n, m, t),
        _ => plan_zero_one_mod_three(n, m, t),
    };
    node.unwrap_or_else(|| PlanNode::leaf(goal, Rule::Search))
}

fn sch(n: u32, m: u32, t: u32) -> DesignParams {
    DesignParams::schgdd(n, m, t)
}

fn search(goal: DesignParams) -> PlanNode {
    PlanNode::leaf(goal, Rule::Search)
}

fn cdm_from(n: u32, m: u32, t: u32, v: u32) -> PlanNode {
    PlanNode::build(sch(n, m, t), Rule::CdmInflate { v }, vec![plan(n, m / v, t)])
}

fn compose(n: u32, g: u32, w: u32, t_outer: u32) -> PlanNode {
    PlanNode::build(sch(n, g, w * t_outer), Rule::Compose, vec![plan(n, g * w, t_outer), plan(n, g, w)])
}

/// Strictly cyclic `K`-GDD of type `m^t` filled with MGDDs of type `k^n`.
fn gdd_mgdd(n: u32, m: u32, t: u32, ks: Vec<u32>) -> PlanNode {
    let mut children = vec![search(DesignParams::strict_gdd(t, m, ks.clone()))];
    children.extend(ks.iter().map(|&k| search(DesignParams::mgdd(n, k))));
    PlanNode::build(sch(n, m, t), Rule::GddMgdd, children)
}

/// SCGDD of type `(m/w)^n` with `(k, w^t)` ingredients.
fn scgdd_fill(n: u32, m: u32, t: u32, w: u32, ks: Vec<u32>, source: PlanNode) -> PlanNode {
    let mut children = vec![source];
    children.extend(ks.iter().map(|&k| plan(k, w, t)));
    PlanNode::build(sch(n, m, t), Rule::ScgddFill, children)
}

fn scgdd_leaf(n: u32, g: u32, ks: Vec<u32>) -> PlanNode {
    search(DesignParams::scgdd(n, g, ks))
}

/// PBD on `n` points read as an SCGDD of type `1^n`.
fn pbd_source(n: u32) -> (PlanNode, Vec<u32>) {
    let ks = if matches!(n % 6, 1 | 3) {
        vec![3]
    } else if n % 3 == 2 {
        vec![3, 4, 5]
    } else {
        vec![3, 4]
    };
    let pbd = search(DesignParams::pbd(n, ks.clone()));
    (PlanNode::build(DesignParams::scgdd(n, 1, ks.clone()), Rule::PbdToScgdd, vec![pbd]), ks)
}

fn odd_part(m: u32) -> (u32, u32) {
    let a = m.trailing_zeros();
    (1 << a, m >> a)
}

/// Strictly cyclic 3-GDD of type `m^t`.
fn strict_gdd_exists(m: u32, t: u32) -> bool {
    t >= 4 && (m * (t - 1)).is_multiple_of(6) && !(m % 4 == 2 && matches!(t % 4, 2 | 3))
}

/// `t` odd: spread a smaller case by a CDM, else fill a strictly cyclic GDD, else break up
/// a PBD, else search.
fn odd_route(n: u32, m: u32, t: u32) -> Option<PlanNode> {
    let mut divisors: Vec<u32> = (3..=m).step_by(2).filter(|v| m.is_multiple_of(*v)).collect();
    divisors.reverse();
    for v in divisors {
        let node = cdm_from(n, m, t, v);
        if node.rule == Some(Rule::CdmInflate { v }) {
            return Some(node);
        }
    }
    if n >= 4 && strict_gdd_exists(m, t) {
        let node = gdd_mgdd(n, m, t, vec![3]);
        if node.rule == Some(Rule::GddMgdd) {
            return Some(node);
        }
    }
    // No PBD(8, {3,4,5}) exists.
    if n >= 7 && n != 8 {
        let (src, ks) = pbd_source(n);
        let node = scgdd_fill(n, m, t, m, ks, src);
        if node.rule == Some(Rule::ScgddFill) {
            return Some(node);
        }
    }
    None
}

fn plan_three(m: u32, t: u32) -> Option<PlanNode> {
    let (p2, u) = odd_part(m);
    if u > 1 {
        return Some(cdm_from(3, m, t, u));
    }
    Some(search(sch(3, p2, t)))
}

fn plan_four(m: u32, t: u32) -> Option<PlanNode> {
    if odd(t) {
        return odd_route(4, m, t);
    }
    match m % 4 {
        0 => Some(scgdd_fill(4, m, t, 2, vec![3], scgdd_leaf(4, m / 2, vec![3]))),
        2 if m > 2 => Some(cdm_from(4, m, t, m / 2)),
        _ => None,
    }
}

fn plan_five(m: u32, t: u32) -> Option<PlanNode> {
    if odd(t) {
        return odd_route(5, m, t);
    }
    if m.is_multiple_of(6) {
        return Some(scgdd_fill(5, m, t, 2, vec![3], scgdd_leaf(5, m / 2, vec![3])));
    }
    if m % 6 == 3 {
        return Some(cdm_from(5, m, t, m / 3));
    }
    match (m % 12, t % 12) {
        (2, 10) if m == 2 => {
            let pdf = search(DesignParams::pdf(2 * t - 1, vec![3, 4]));
            let gdd = PlanNode::build(DesignParams::strict_gdd(t, 2, vec![3, 4]), Rule::PdfToGdd, vec![pdf]);
            let children = vec![gdd, search(DesignParams::mgdd(5, 3)), search(DesignParams::mgdd(5, 4))];
            Some(PlanNode::build(sch(5, 2, t), Rule::GddMgdd, children))
        }
        (2 | 10, 10) => Some(cdm_from(5, m, t, m / 2)),
        (2 | 10, 4) => Some(gdd_mgdd(5, m, t, vec![3])),
        (4 | 8, _) if t % 6 == 4 => Some(gdd_mgdd(5, m, t, vec![3])),
        _ if odd(m) && m > 1 => Some(cdm_from(5, m, t, m)),
        _ => None,
    }
}

fn plan_six(m: u32, t: u32) -> Option<PlanNode> {
    if odd(t) {
        if matches!(m % 6, 1 | 5) && matches!(t % 18, 3 | 15) {
            return Some(if m == 1 { compose(6, 1, t / 3, 3) } else { cdm_from(6, m, t, m) });
        }
        return odd_route(6, m, t);
    }
    if m.is_multiple_of(8) {
        return Some(scgdd_fill(6, m, t, 2, vec![3], scgdd_leaf(6, m / 2, vec![3])));
    }
    if m % 8 == 4 {
        if m > 4 {
            return Some(cdm_from(6, m, t, m / 4));
        }
        let ks = if t % 6 == 4 { vec![3] } else { vec![3, 5] };
        return Some(gdd_mgdd(6, 4, t, ks));
    }
    if m > 2 {
        return Some(cdm_from(6, m, t, m / 2));
    }
    // m = 2, t = 0 (mod 4); t = 2 (mod 4) and t = 8 are direct.
    let (p2, u) = odd_part(t);
    if u > 1 {
        return Some(compose(6, 2, u, p2));
    }
    if p2 == 4 {
        return Some(gdd_mgdd(6, 2, 4, vec![3]));
    }
    let r = p2.trailing_zeros();
    let outer = gdd_mgdd(6, 1 << (r - 1), 4, vec![3]);
    let inner = plan(6, 2, 1 << (r - 2));
    Some(PlanNode::build(sch(6, 2, t), Rule::Compose, vec![outer, inner]))
}

fn plan_eight(m: u32, t: u32) -> Option<PlanNode> {
    if odd(t) {
        return odd_route(8, m, t);
    }
    match m % 12 {
        6 if t % 4 == 2 => {
            let ext = PlanNode::leaf(DesignParams::scgdd(8, 3, vec![4]), Rule::External);
            Some(scgdd_fill(8, m, t, m / 3, vec![4], ext))
        }
        0 | 6 => Some(gdd_mgdd(8, m, t, vec![3])),
        4 | 8 if t % 6 == 4 => Some(gdd_mgdd(8, m, t, vec![3])),
        2 | 10 if t % 12 == 4 => Some(gdd_mgdd(8, m, t, vec![3])),
        _ => None,
    }
}

fn plan_zero_one_mod_three(n: u32, m: u32, t: u32) -> Option<PlanNode> {
    if odd(t) {
        return odd_route(n, m, t);
    }
    if !odd(m) {
        let (src, ks) = pbd_source(n);
        return Some(scgdd_fill(n, m, t, m, ks, src));
    }
    if t.is_multiple_of(4) {
        if m > 1 {
            return Some(cdm_from(n, m, t, m));
        }
        return Some(compose(n, 1, 4, t / 4));
    }
    None
}

fn plan_two_mod_three(n: u32, m: u32, t: u32) -> Option<PlanNode> {
    if odd(t) {
        return odd_route(n, m, t);
    }
    if !odd(m) {
        let (src, ks) = pbd_source(n);
        return Some(scgdd_fill(n, m, t, m, ks, src));
    }
    if m % 6 == 3 && t.is_multiple_of(4) {
        if m > 3 {
            return Some(cdm_from(n, m, t, m / 3));
        }
        return Some(compose(n, 3, 4, t / 4));
    }
    if matches!(m % 6, 1 | 5) && t % 12 == 4 {
        if m > 1 {
            return Some(cdm_from(n, m, t, m));
        }
        return Some(compose(n, 1, 4, t / 4));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rule(n: u32, m: u32, t: u32) -> Option<Rule> {
        plan(n, m, t).rule
    }

    #[test]
    fn verdicts() {
        assert!(matches!(plan(5, 1, 4).status, Status::NotExists(_)));
        assert!(matches!(plan(8, 3, 4).status, Status::NotExists(_)));
        assert!(matches!(plan(8, 2, 7).status, Status::Open(_)));
        assert!(matches!(plan(7, 1, 8).status, Status::Open(_)));
        assert_eq!(classify(5, 3, 8), Verdict::Exists);
        assert_eq!(classify(11, 3, 8), Verdict::Open);
    }

    #[test]
    fn chosen_rules() {
        assert_eq!(rule(4, 2, 6), Some(Rule::Direct(FamilyId::FourTwo)));
        assert_eq!(rule(4, 6, 6), Some(Rule::CdmInflate { v: 3 }));
        assert_eq!(rule(5, 2, 10), Some(Rule::GddMgdd));
        assert_eq!(rule(6, 2, 16), Some(Rule::Compose));
        assert_eq!(rule(6, 1, 9), Some(Rule::Search));
        assert_eq!(rule(7, 1, 4), Some(Rule::Direct(FamilyId::StarterOneFour)));
        assert_eq!(rule(9, 1, 9), Some(Rule::ScgddFill));
        assert_eq!(rule(8, 6, 6), Some(Rule::ScgddFill));
        assert_eq!(plan(8, 6, 6).leaves_with(Rule::External), vec![&DesignParams::scgdd(8, 3, vec![4])]);
    }

    #[test]
    fn trees_are_consistent() {
        for n in 3..=20 {
            for m in 1..=8 {
                for t in 3..=20 {
                    let p = plan(n, m, t);
                    assert!(p.is_consistent(), "({n},{m},{t})");
                    if p.exists() {
                        assert!(necessary_conditions(n, m, t).0);
                    }
                }
            }
        }
    }
}
