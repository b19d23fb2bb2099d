//! Bounded exact-cover searches for the small ingredients that the recursive constructions
//! cite but do not build, plus the `(5, 1^4)` nonexistence certificate and a design cache.
//!
//! Every search is an instance of [`dlx::ExactCover`]. Difference-family targets use one
//! item per difference class and fix `0` in every base block; developed targets use one item
//! per point pair. Results are verified before they are returned.

pub mod cache;
pub mod dlx;
pub mod nonexist;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::apps::ooc::OocCode;
use crate::design::{necessary_conditions, BaseBlock, Design, DesignKind, DesignParams, GridPoint};
use crate::error::{invalid, ForgeError, Result};
use crate::verify::{verify, verify_cdm, verify_ooc};
use dlx::{DlxOutcome, ExactCover};

pub use cache::Cache;
pub use nonexist::{confirm_nonexistence_5_1_4, relaxed_5_1_4, NonexistenceCertificate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetry {
    None,
    Cyclic,
    SemiCyclic,
    StrictlyCyclic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub nodes: u64,
    pub time: Option<Duration>,
}

impl Budget {
    pub const fn nodes(nodes: u64) -> Self {
        Budget { nodes, time: None }
    }

    fn deadline(&self) -> Option<Instant> {
        self.time.map(|d| Instant::now() + d)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::nodes(20_000_000)
    }
}

#[derive(Clone, Debug)]
pub struct SearchProblem {
    pub target: DesignParams,
    pub symmetry: Symmetry,
    pub budget: Budget,
}

impl SearchProblem {
    /// The natural symmetry for the target kind.
    pub fn new(target: DesignParams, budget: Budget) -> Self {
        let symmetry = match target.kind {
            DesignKind::Schgdd | DesignKind::Scgdd | DesignKind::Mgdd => Symmetry::SemiCyclic,
            DesignKind::StrictCyclicGDD => Symmetry::StrictlyCyclic,
            DesignKind::Pdf | DesignKind::CyclicBSEC1 => Symmetry::Cyclic,
            _ => Symmetry::None,
        };
        SearchProblem { target, symmetry, budget }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T> {
    Found(T),
    /// The search space was exhausted: no object with the searched symmetry exists.
    NotFound,
    BudgetExhausted,
}

impl<T> Outcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Outcome::Found(x) => Some(x),
            _ => None,
        }
    }
}

pub type SearchOutcome = Outcome<Design>;

#[derive(Clone, Debug)]
pub struct SearchResult<T = Design> {
    pub outcome: Outcome<T>,
    pub nodes: u64,
}

impl<T> SearchResult<T> {
    fn of(outcome: Outcome<T>, nodes: u64) -> Self {
        SearchResult { outcome, nodes }
    }

    fn map<U>(self, f: impl FnOnce(T) -> U) -> SearchResult<U> {
        let outcome = match self.outcome {
            Outcome::Found(x) => Outcome::Found(f(x)),
            Outcome::NotFound => Outcome::NotFound,
            Outcome::BudgetExhausted => Outcome::BudgetExhausted,
        };
        SearchResult { outcome, nodes: self.nodes }
    }
}

/// Search for `problem.target`.
pub fn search(problem: &SearchProblem) -> Result<SearchResult> {
    let p = &problem.target;
    let budget = problem.budget;
    let sizes = if p.k.is_empty() { vec![3] } else { p.k.clone() };
    let res = match p.kind {
        DesignKind::Schgdd => {
            let (ok, why) = necessary_conditions(p.n, p.m, p.t);
            if !ok {
                return invalid(format!("{p}: {why}"));
            }
            let t = p.t;
            grid_search(p.n, p.m * p.t, &|d| d % t != 0, &sizes, budget)
                .map(|blocks| Design::new(p.clone(), blocks, format!("search:{}", p.key())))
        }
        DesignKind::Scgdd => grid_search(p.n, p.m, &|_| true, &sizes, budget)
            .map(|blocks| Design::new(p.clone(), blocks, format!("search:{}", p.key()))),
        DesignKind::StrictCyclicGDD => strict_gdd_search(p, &sizes, budget)?,
        DesignKind::Pdf => pdf_search(p, &sizes, budget)?,
        DesignKind::Mgdd => mgdd_search(p.n, p.t, problem.symmetry, budget)?,
        DesignKind::Pbd => pbd_search(p, &sizes, budget)?,
        DesignKind::Bsec1 => bsec1_search(p.n, budget)?,
        DesignKind::CyclicBSEC1 => cyclic_bsec1_search(p.n, budget)?,
        other => return invalid(format!("no search is defined for {}", other.name())),
    };
    if let Outcome::Found(d) = &res.outcome {
        let rep = verify(d);
        if !rep.valid {
            return Err(ForgeError::Verification { what: format!("searched {}", d.params), detail: rep.summary() });
        }
    }
    Ok(res)
}

/// Convenience wrapper returning the design or the outcome as an error.
pub fn search_design(target: DesignParams, budget: Budget) -> Result<Design> {
    let what = target.to_string();
    let res = search(&SearchProblem::new(target, budget))?;
    match res.outcome {
        Outcome::Found(d) => Ok(d),
        Outcome::NotFound => Err(ForgeError::NotFound(what)),
        Outcome::BudgetExhausted => Err(ForgeError::BudgetExhausted(what)),
    }
}

fn solve(ec: &ExactCover, budget: Budget) -> (Outcome<Vec<usize>>, u64) {
    let (out, nodes) = ec.solve_until(budget.nodes, budget.deadline());
    let outcome = match out {
        DlxOutcome::Solution(s) => Outcome::Found(s),
        DlxOutcome::Exhausted => Outcome::NotFound,
        DlxOutcome::Budget => Outcome::BudgetExhausted,
    };
    (outcome, nodes)
}

fn combinations(n: u32, k: u32) -> Vec<Vec<u32>> {
    fn go(start: u32, n: u32, k: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if acc.len() == k as usize {
            out.push(acc.clone());
            return;
        }
        for x in start..n {
            if n - x < k - acc.len() as u32 {
                break;
            }
            acc.push(x);
            go(x + 1, n, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Semi-cyclic difference family on `I_rows × Z_l`: for every pair of rows `i < j` each
/// allowed difference `x_i - x_j` occurs exactly once. The smallest row of every base
/// block carries coordinate 0.
fn grid_search(rows: u32, l: u32, allowed: &dyn Fn(u32) -> bool, sizes: &[u32], budget: Budget) -> SearchResult<Vec<BaseBlock>> {
    let pair = |i: u32, j: u32| (i * (2 * rows - i - 1) / 2 + (j - i - 1)) as usize;
    let npairs = (rows * rows.saturating_sub(1) / 2) as usize;
    let mut index = vec![usize::MAX; npairs * l as usize];
    let mut items = 0;
    for p in 0..npairs {
        for d in (0..l).filter(|&d| allowed(d)) {
            index[p * l as usize + d as usize] = items;
            items += 1;
        }
    }
    let mut ec = ExactCover::new(items, 0);
    let mut blocks: Vec<BaseBlock> = Vec::new();
    for &k in sizes {
        for rs in combinations(rows, k) {
            let mut coords = vec![0u32];
            let mut its = Vec::new();
            grid_options(&rs, l, allowed, &pair, &index, &mut coords, &mut its, &mut |c, it| {
                ec.add_option(it.to_vec());
                blocks.push(BaseBlock::new(rs.iter().zip(c).map(|(&r, &x)| GridPoint::new(r, x)).collect()));
            });
        }
    }
    let (out, nodes) = solve(&ec, budget);
    SearchResult::of(out, nodes).map(|sol| sol.into_iter().map(|o| blocks[o].clone()).collect())
}

#[allow(clippy::too_many_arguments)]
fn grid_options(
    rs: &[u32],
    l: u32,
    allowed: &dyn Fn(u32) -> bool,
    pair: &dyn Fn(u32, u32) -> usize,
    index: &[usize],
    coords: &mut Vec<u32>,
    items: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[u32], &[usize]),
) {
    let pos = coords.len();
    if pos == rs.len() {
        emit(coords, items);
        return;
    }
    'next: for x in 0..l {
        let before = items.len();
        for (a, &c) in coords.iter().enumerate() {
            let d = (c + l - x) % l;
            if !allowed(d) {
                items.truncate(before);
                continue 'next;
            }
            items.push(index[pair(rs[a], rs[pos]) * l as usize + d as usize]);
        }
        coords.push(x);
        grid_options(rs, l, allowed, pair, index, coords, items, emit);
        coords.pop();
        items.truncate(before);
    }
}

/// Sets `{0 = x_0 < x_1 < ... < x_{k-1} < limit}` whose pairwise differences map to
/// pairwise distinct classes. `class` returns `None` for a forbidden difference.
fn difference_sets(limit: u32, k: u32, class: &dyn Fn(u32, u32) -> Option<usize>, nclasses: usize) -> Vec<(Vec<u32>, Vec<usize>)> {
    fn go(
        limit: u32,
        k: u32,
        class: &dyn Fn(u32, u32) -> Option<usize>,
        used: &mut [bool],
        set: &mut Vec<u32>,
        its: &mut Vec<usize>,
        out: &mut Vec<(Vec<u32>, Vec<usize>)>,
    ) {
        if set.len() == k as usize {
            out.push((set.clone(), its.clone()));
            return;
        }
        let last = *set.last().unwrap();
        'next: for x in last + 1..limit {
            let before = its.len();
            for &p in set.iter() {
                match class(p, x) {
                    Some(c) if !used[c] => {
                        used[c] = true;
                        its.push(c);
                    }
                    _ => {
                        for &c in &its[before..] {
                            used[c] = false;
                        }
                        its.truncate(before);
                        continue 'next;
                    }
                }
            }
            set.push(x);
            go(limit, k, class, used, set, its, out);
            set.pop();
            for &c in &its[before..] {
                used[c] = false;
            }
            its.truncate(before);
        }
    }
    let mut out = Vec::new();
    let mut used = vec![false; nclasses];
    go(limit, k, class, &mut used, &mut vec![0], &mut Vec::new(), &mut out);
    out
}

fn cyclic_family(p: &DesignParams, sets: Vec<Vec<(Vec<u32>, Vec<usize>)>>, nclasses: usize, budget: Budget, tag: &str) -> SearchResult {
    let mut ec = ExactCover::new(nclasses, 0);
    let mut blocks = Vec::new();
    for (set, its) in sets.into_iter().flatten() {
        ec.add_option(its);
        blocks.push(BaseBlock::from_coords(&set));
    }
    let (out, nodes) = solve(&ec, budget);
    SearchResult::of(out, nodes).map(|sol| {
        Design::new(p.clone(), sol.into_iter().map(|o| blocks[o].clone()).collect(), format!("search:{tag}"))
    })
}

/// Strictly cyclic GDD on `Z_l`, groups the classes mod `p.n`; one item per class `±d`.
fn strict_gdd_search(p: &DesignParams, sizes: &[u32], budget: Budget) -> Result<SearchResult> {
    let groups = p.n;
    let l = p.n * p.m;
    if l < 2 {
        return invalid("strict GDD needs at least two points");
    }
    if l.is_multiple_of(2) && !(l / 2).is_multiple_of(groups) {
        // The pair {x, x + l/2} would be covered twice by a full orbit.
        return Ok(SearchResult::of(Outcome::NotFound, 0));
    }
    let reps: Vec<u32> = (1..=l / 2).filter(|d| d % groups != 0).collect();
    let mut slot = vec![usize::MAX; l as usize];
    for (i, &d) in reps.iter().enumerate() {
        slot[d as usize] = i;
        slot[(l - d) as usize] = i;
    }
    let class = |a: u32, b: u32| {
        let s = slot[(b - a) as usize];
        (s != usize::MAX).then_some(s)
    };
    let sets = sizes.iter().map(|&k| difference_sets(l, k, &class, reps.len())).collect();
    Ok(cyclic_family(p, sets, reps.len(), budget, &p.key()))
}

/// `(v, K, 1)`-PDF: positive differences cover `1..=(v-1)/2` once.
fn pdf_search(p: &DesignParams, sizes: &[u32], budget: Budget) -> Result<SearchResult> {
    let v = p.n;
    if v.is_multiple_of(2) || v < 3 {
        return invalid(format!("PDF needs odd v >= 3, got {v}"));
    }
    let half = (v - 1) / 2;
    let class = |a: u32, b: u32| Some((b - a - 1) as usize);
    let sets = sizes.iter().map(|&k| difference_sets(half + 1, k, &class, half as usize)).collect();
    Ok(cyclic_family(p, sets, half as usize, budget, &p.key()))
}

/// Cyclic 1-BSEC on `Z_v`: classes `±d` for `2 <= d <= (v-1)/2`, plus the short orbit
/// `{0, v/3, 2v/3}` which covers class `v/3` alone.
fn cyclic_bsec1_search(v: u32, budget: Budget) -> Result<SearchResult> {
    if v.is_multiple_of(2) || v < 5 {
        return invalid(format!("cyclic 1-BSEC needs odd v >= 5, got {v}"));
    }
    let reps: Vec<u32> = (2..=(v - 1) / 2).collect();
    let class = |a: u32, b: u32| {
        let d = (b - a).min(v - (b - a));
        (d >= 2).then(|| (d - 2) as usize)
    };
    let mut sets = vec![difference_sets(v, 3, &class, reps.len())];
    if v.is_multiple_of(3) {
        sets.push(vec![(vec![0, v / 3, 2 * v / 3], vec![(v / 3 - 2) as usize])]);
    }
    Ok(cyclic_family(&DesignParams::cyclic_bsec1(v), sets, reps.len(), budget, &format!("CyclicBSEC1-v{v}")))
}

fn pair_id(a: u32, b: u32, v: u32) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    (a * (2 * v - a - 1) / 2 + (b - a - 1)) as usize
}

/// Exact cover of `pairs` (a set of point pairs on `0..v`) by the given candidate blocks.
fn pair_cover(v: u32, wanted: &dyn Fn(u32, u32) -> bool, candidates: Vec<Vec<u32>>, budget: Budget) -> SearchResult<Vec<Vec<u32>>> {
    let mut index = vec![usize::MAX; (v * v.saturating_sub(1) / 2) as usize];
    let mut items = 0;
    for a in 0..v {
        for b in a + 1..v {
            if wanted(a, b) {
                index[pair_id(a, b, v)] = items;
                items += 1;
            }
        }
    }
    let mut ec = ExactCover::new(items, 0);
    let mut kept = Vec::new();
    'cand: for c in candidates {
        let mut its = Vec::with_capacity(c.len() * (c.len() - 1) / 2);
        for x in 0..c.len() {
            for y in x + 1..c.len() {
                let i = index[pair_id(c[x], c[y], v)];
                if i == usize::MAX {
                    continue 'cand;
                }
                its.push(i);
            }
        }
        ec.add_option(its);
        kept.push(c);
    }
    let (out, nodes) = solve(&ec, budget);
    SearchResult::of(out, nodes).map(|sol| sol.into_iter().map(|o| kept[o].clone()).collect())
}

fn pbd_search(p: &DesignParams, sizes: &[u32], budget: Budget) -> Result<SearchResult> {
    let v = p.n;
    if v > 40 {
        return invalid(format!("PBD search is limited to v <= 40, got {v}"));
    }
    let finish = |r: SearchResult<Vec<Vec<u32>>>| {
        r.map(|bs| Design::new(p.clone(), bs.iter().map(|b| BaseBlock::from_coords(b)).collect(), format!("search:{}", p.key())))
    };
    // With only 3- and 4-blocks the pair count must be 0 mod 3; otherwise some larger block
    // is needed, and one of them may be fixed as {0, ..., k-1} without loss of generality.
    let small: Vec<u32> = sizes.iter().copied().filter(|&k| k <= 4).collect();
    let forced = sizes.iter().copied().filter(|&k| k > 4).min();
    if let Some(k) = forced.filter(|_| !(v * (v - 1) / 2).is_multiple_of(3) && !small.is_empty() && v > 5) {
        let fixed: Vec<u32> = (0..k).collect();
        let cands = small.iter().flat_map(|&s| combinations(v, s)).filter(|c| c.iter().filter(|&&x| x < k).count() <= 1).collect();
        let wanted = move |a: u32, b: u32| a >= k || b >= k;
        let share = Budget { nodes: budget.nodes / 2, time: budget.time.map(|t| t / 2) };
        let mut r = pair_cover(v, &wanted, cands, share);
        if let Outcome::Found(bs) = &mut r.outcome {
            bs.push(fixed);
            return Ok(finish(r));
        }
        let spent = r.nodes;
        let rest = Budget { nodes: budget.nodes.saturating_sub(spent), time: budget.time };
        let cands = sizes.iter().flat_map(|&k| combinations(v, k)).collect();
        let mut r = finish(pair_cover(v, &|_, _| true, cands, rest));
        r.nodes += spent;
        return Ok(r);
    }
    let cands = sizes.iter().flat_map(|&k| combinations(v, k)).collect();
    Ok(finish(pair_cover(v, &|_, _| true, cands, budget)))
}

fn bsec1_search(v: u32, budget: Budget) -> Result<SearchResult> {
    if v < 3 {
        return invalid("1-BSEC needs v >= 3");
    }
    let near = move |a: u32, b: u32| (a + 1) % v == b || (b + 1) % v == a;
    let cands = combinations(v, 3)
        .into_iter()
        .filter(|c| !near(c[0], c[1]) && !near(c[0], c[2]) && !near(c[1], c[2]))
        .collect();
    let p = DesignParams::bsec1(v);
    Ok(pair_cover(v, &|a, b| !near(a, b), cands, budget).map(|bs| {
        Design::new(p, bs.iter().map(|b| BaseBlock::from_coords(b)).collect(), format!("search:BSEC1-v{v}"))
    }))
}

/// MGDD of type `k^n` on `I_n × I_k`. With semi-cyclic symmetry the SCHGDDs `(n, 1^k)` and
/// `(k, 1^n)` are tried first, each on a share of the budget, when the existence
/// classification allows them.
fn mgdd_search(n: u32, k: u32, symmetry: Symmetry, budget: Budget) -> Result<SearchResult> {
    if n < 3 || k < 3 {
        return invalid(format!("MGDD of type {k}^{n} needs n, k >= 3"));
    }
    let params = DesignParams::mgdd(n, k);
    let mut spent = 0;
    if symmetry == Symmetry::SemiCyclic {
        for (rows, cols, transpose) in [(n, k, false), (k, n, true)] {
            if crate::recursive::classify(rows, 1, cols) != crate::recursive::Verdict::Exists {
                continue;
            }
            let share = Budget { nodes: budget.nodes / 4, time: budget.time.map(|t| t / 4) };
            let r = grid_search(rows, cols, &|d| d != 0, &[3], share);
            spent += r.nodes;
            if let Outcome::Found(bs) = r.outcome {
                let hgdd = Design::new(DesignParams::schgdd(rows, 1, cols), bs, "");
                let blocks = hgdd
                    .developed_blocks()
                    .into_iter()
                    .map(|b| {
                        if transpose {
                            BaseBlock::new(b.points().iter().map(|p| GridPoint::new(p.coord, p.group)).collect())
                        } else {
                            b
                        }
                    })
                    .collect();
                let how = if transpose { "transposed developed" } else { "developed" };
                return Ok(SearchResult::of(
                    Outcome::Found(Design::new(params, blocks, format!("search:{how} SCHGDD ({rows},1^{cols})"))),
                    spent,
                ));
            }
        }
    }
    let v = n * k;
    let cands = combinations(v, 3)
        .into_iter()
        .filter(|c| {
            let rows = [c[0] / k, c[1] / k, c[2] / k];
            let cols = [c[0] % k, c[1] % k, c[2] % k];
            rows[0] != rows[1] && rows[0] != rows[2] && rows[1] != rows[2] && cols[0] != cols[1] && cols[0] != cols[2] && cols[1] != cols[2]
        })
        .collect();
    let rest = Budget { nodes: budget.nodes.saturating_sub(spent), time: budget.time };
    let wanted = move |a: u32, b: u32| a / k != b / k && a % k != b % k;
    let mut r = pair_cover(v, &wanted, cands, rest).map(|bs| {
        let blocks = bs
            .iter()
            .map(|b| BaseBlock::new(b.iter().map(|&x| GridPoint::new(x / k, x % k)).collect()))
            .collect();
        Design::new(params, blocks, format!("search:MGDD-n{n}-k{k}"))
    });
    r.nodes += spent;
    Ok(r)
}

/// `(3, m)`-CDM with entry `r·j mod m`.
pub fn cdm(k: u32, m: u32) -> Result<Vec<Vec<u32>>> {
    if k != 3 {
        return invalid(format!("only (3,m)-CDMs are provided, got k = {k}"));
    }
    if m == 0 || m.is_multiple_of(2) {
        return invalid(format!("a (3,m)-CDM is provided for odd m only, got {m}"));
    }
    let rows: Vec<Vec<u32>> = (0..k).map(|r| (0..m).map(|j| (r * j) % m).collect()).collect();
    debug_assert!(verify_cdm(&rows, m).valid);
    Ok(rows)
}

/// 2-D `(n×m, 3, 1)`-OOC meeting the Johnson bound, when `3·J` equals the number of
/// difference classes so that the code is an exact cover of them. A class is an ordered
/// row pair with a column difference, identified with its reverse; same-row difference
/// `m/2` is its own reverse and cannot occur.
pub fn search_ooc(n: u32, m: u32, budget: Budget) -> Result<SearchResult<OocCode>> {
    let j = crate::verify::johnson_bound(n as u64, m as u64, 3, 1).unwrap_or(0);
    let class_of = |(r1, c1): (u32, u32), (r2, c2): (u32, u32)| -> Option<usize> {
        let (r1, c1, r2, c2) = if r1 <= r2 { (r1, c1, r2, c2) } else { (r2, c2, r1, c1) };
        if r1 < r2 {
            let pairs_before = r1 * (2 * n - r1 - 1) / 2 + (r2 - r1 - 1);
            return Some((pairs_before * m + (c1 + m - c2) % m) as usize);
        }
        let d = (c1 + m - c2) % m;
        let d = d.min(m - d);
        if d == 0 || 2 * d == m {
            return None;
        }
        let per_row = (m - 1) / 2;
        Some((n * (n - 1) / 2 * m + r1 * per_row + d - 1) as usize)
    };
    let nclasses = (n * (n - 1) / 2 * m + n * ((m - 1) / 2)) as usize;
    if 3 * j as usize != nclasses {
        return invalid(format!("({n}x{m},3,1)-OOC is not an exact cover of its difference classes"));
    }
    let cells: Vec<(u32, u32)> = (0..n).flat_map(|r| (0..m).map(move |c| (r, c))).collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut ec = ExactCover::new(nclasses, 0);
    let mut words = Vec::new();
    for c in combinations(cells.len() as u32, 3) {
        let w: Vec<(u32, u32)> = c.iter().map(|&i| cells[i as usize]).collect();
        let canon = (0..m)
            .map(|s| {
                let mut x: Vec<(u32, u32)> = w.iter().map(|&(r, col)| (r, (col + s) % m)).collect();
                x.sort_unstable();
                x
            })
            .min()
            .unwrap();
        if !seen.insert(canon.clone()) {
            continue;
        }
        let its: Option<Vec<usize>> = [(0, 1), (0, 2), (1, 2)].iter().map(|&(a, b)| class_of(canon[a], canon[b])).collect();
        let Some(mut its) = its else { continue };
        its.sort_unstable();
        if its.windows(2).any(|p| p[0] == p[1]) {
            continue;
        }
        ec.add_option(its);
        words.push(canon);
    }
    let (out, nodes) = solve(&ec, budget);
    let res = SearchResult::of(out, nodes).map(|sol| OocCode {
        n,
        m,
        k: 3,
        lambda: 1,
        codewords: sol.into_iter().map(|o| words[o].clone()).collect(),
    });
    if let Outcome::Found(code) = &res.outcome {
        let rep = verify_ooc(code);
        if !rep.valid {
            return Err(ForgeError::Verification { what: format!("searched ({n}x{m},3,1)-OOC"), detail: rep.summary() });
        }
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{verify_bsec1, verify_schgdd};

    fn found(target: DesignParams) -> Design {
        search_design(target, Budget::default()).unwrap()
    }

    #[test]
    fn strict_gdd_two_four() {
        let d = found(DesignParams::strict_gdd(4, 2, vec![3]));
        assert_eq!(d.base_blocks.len(), 1);
        let none = search(&SearchProblem::new(DesignParams::strict_gdd(3, 2, vec![3]), Budget::default())).unwrap();
        assert_eq!(none.outcome, Outcome::NotFound);
    }

    #[test]
    fn pdf_nineteen() {
        let d = found(DesignParams::pdf(19, vec![3, 4]));
        assert!(d.base_blocks.iter().any(|b| b.len() == 4));
    }

    #[test]
    fn scgdd_small_cases() {
        let d = found(DesignParams::scgdd(4, 4, vec![3]));
        assert_eq!(d.base_blocks.len(), 8);
        let none = search(&SearchProblem::new(DesignParams::scgdd(3, 2, vec![3]), Budget::default())).unwrap();
        assert_eq!(none.outcome, Outcome::NotFound);
    }

    #[test]
    fn schgdd_small_and_impossible() {
        let d = found(DesignParams::schgdd(3, 1, 5));
        assert!(verify_schgdd(&d).valid);
        let none = search(&SearchProblem::new(DesignParams::schgdd(5, 1, 4), Budget::default())).unwrap();
        assert_eq!(none.outcome, Outcome::NotFound);
        assert!(search(&SearchProblem::new(DesignParams::schgdd(4, 1, 4), Budget::default())).is_err());
    }

    #[test]
    fn mgdd_and_bsec() {
        for (n, k) in [(5, 3), (5, 4), (6, 3)] {
            let d = found(DesignParams::mgdd(n, k));
            assert_eq!(d.base_blocks.len() as u32, n * (n - 1) * k * (k - 1) / 6, "{k}^{n}");
        }
        assert!(verify_bsec1(&found(DesignParams::bsec1(9))).valid);
        let c = found(DesignParams::cyclic_bsec1(9));
        assert_eq!(c.base_blocks.len(), 1);
        assert!(verify_bsec1(&c).valid);
        let short = Design::new(DesignParams::cyclic_bsec1(9), vec![BaseBlock::from_coords(&[0, 2, 6])], "");
        assert!(verify_bsec1(&short).valid);
    }

    #[test]
    fn ooc_three_by_eight() {
        let r = search_ooc(3, 8, Budget::default()).unwrap();
        assert_eq!(r.outcome.found().unwrap().codewords.len(), 11);
    }

    #[test]
    fn cdm_rows() {
        assert_eq!(cdm(3, 5).unwrap()[2], vec![0, 2, 4, 1, 3]);
        assert_eq!(cdm(3, 1).unwrap(), vec![vec![0], vec![0], vec![0]]);
        assert!(cdm(3, 4).is_err());
    }
}
