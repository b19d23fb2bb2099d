//! Exact cover by dancing links.
//!
//! Items `0..primary` must be covered exactly once, the remaining items at most once. The
//! search branches on the primary item with the fewest live options, breaking ties by the
//! lowest index, and tries options in insertion order, so runs are reproducible.

use std::time::Instant;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DlxOutcome {
    Solution(Vec<usize>),
    Exhausted,
    Budget,
}

pub struct ExactCover {
    primary: usize,
    items: usize,
    options: Vec<Vec<usize>>,
}

impl ExactCover {
    pub fn new(primary: usize, secondary: usize) -> Self {
        ExactCover { primary, items: primary + secondary, options: Vec::new() }
    }

    pub fn add_option(&mut self, items: Vec<usize>) -> usize {
        debug_assert!(items.iter().all(|&i| i < self.items));
        self.options.push(items);
        self.options.len() - 1
    }

    pub fn option_count(&self) -> usize {
        self.options.len()
    }

    /// First solution in search order, visiting at most `budget` nodes.
    pub fn solve(&self, budget: u64) -> (DlxOutcome, u64) {
        self.solve_until(budget, None)
    }

    /// As [`ExactCover::solve`], also giving up once `deadline` has passed.
    pub fn solve_until(&self, budget: u64, deadline: Option<Instant>) -> (DlxOutcome, u64) {
        let mut links = Links::build(self);
        let mut chosen = Vec::new();
        let mut nodes = 0u64;
        let out = links.search(&mut chosen, &mut nodes, Limits { budget, deadline });
        let outcome = match out {
            Step::Found => DlxOutcome::Solution(chosen.iter().map(|&node| links.option_of[node]).collect()),
            Step::Dead => DlxOutcome::Exhausted,
            Step::Budget => DlxOutcome::Budget,
        };
        (outcome, nodes)
    }
}

#[derive(Clone, Copy)]
struct Limits {
    budget: u64,
    deadline: Option<Instant>,
}

impl Limits {
    fn exceeded(&self, nodes: u64) -> bool {
        nodes > self.budget || (nodes.is_multiple_of(4096) && self.deadline.is_some_and(|d| Instant::now() >= d))
    }
}

enum Step {
    Found,
    Dead,
    Budget,
}

/// Headers are nodes `1..=items`; node 0 is the root. Option nodes follow.
struct Links {
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    top: Vec<usize>,
    len: Vec<usize>,
    option_of: Vec<usize>,
    span: Vec<(usize, usize)>,
    primary: usize,
}

impl Links {
    fn build(ec: &ExactCover) -> Links {
        let h = ec.items + 1;
        let total = h + ec.options.iter().map(Vec::len).sum::<usize>();
        let mut l = Links {
            left: vec![0; h],
            right: vec![0; h],
            up: (0..total).collect(),
            down: (0..total).collect(),
            top: vec![0; total],
            len: vec![0; h],
            option_of: vec![usize::MAX; total],
            span: Vec::with_capacity(ec.options.len()),
            primary: ec.primary,
        };
        // Root list holds the primary items only.
        let mut prev = 0;
        for i in 1..=ec.primary {
            l.right[prev] = i;
            l.left[i] = prev;
            prev = i;
        }
        l.right[prev] = 0;
        l.left[0] = prev;
        for i in ec.primary + 1..h {
            l.left[i] = i;
            l.right[i] = i;
        }
        let mut node = h;
        for (oi, opt) in ec.options.iter().enumerate() {
            let start = node;
            for &item in opt {
                let hdr = item + 1;
                l.top[node] = hdr;
                l.option_of[node] = oi;
                let last = l.up[hdr];
                l.up[node] = last;
                l.down[node] = hdr;
                l.down[last] = node;
                l.up[hdr] = node;
                l.len[hdr] += 1;
                node += 1;
            }
            l.span.push((start, node));
        }
        l
    }

    fn others(&self, p: usize) -> impl Iterator<Item = usize> {
        let (s, e) = self.span[self.option_of[p]];
        (p + 1..e).chain(s..p)
    }

    fn hide(&mut self, p: usize) {
        let (s, e) = self.span[self.option_of[p]];
        for q in (p + 1..e).chain(s..p) {
            let (u, d) = (self.up[q], self.down[q]);
            self.down[u] = d;
            self.up[d] = u;
            self.len[self.top[q]] -= 1;
        }
    }

    fn unhide(&mut self, p: usize) {
        let (s, e) = self.span[self.option_of[p]];
        for q in (s..p).rev().chain((p + 1..e).rev()) {
            let (u, d) = (self.up[q], self.down[q]);
            self.down[u] = q;
            self.up[d] = q;
            self.len[self.top[q]] += 1;
        }
    }

    fn cover(&mut self, i: usize) {
        let mut p = self.down[i];
        while p != i {
            self.hide(p);
            p = self.down[p];
        }
        let (l, r) = (self.left[i], self.right[i]);
        self.right[l] = r;
        self.left[r] = l;
    }

    fn uncover(&mut self, i: usize) {
        let (l, r) = (self.left[i], self.right[i]);
        self.right[l] = i;
        self.left[r] = i;
        let mut p = self.up[i];
        while p != i {
            self.unhide(p);
            p = self.up[p];
        }
    }

    fn choose(&self) -> usize {
        let mut best = self.right[0];
        let mut i = best;
        while i != 0 {
            if self.len[i] < self.len[best] {
                best = i;
                if self.len[i] == 0 {
                    break;
                }
            }
            i = self.right[i];
        }
        best
    }

    fn search(&mut self, chosen: &mut Vec<usize>, nodes: &mut u64, limits: Limits) -> Step {
        if self.right[0] == 0 {
            return Step::Found;
        }
        let i = self.choose();
        if self.len[i] == 0 {
            return Step::Dead;
        }
        debug_assert!(i <= self.primary);
        self.cover(i);
        let mut p = self.down[i];
        while p != i {
            *nodes += 1;
            if limits.exceeded(*nodes) {
                self.uncover(i);
                return Step::Budget;
            }
            chosen.push(p);
            let others: Vec<usize> = self.others(p).collect();
            for &q in &others {
                self.cover(self.top[q]);
            }
            let r = self.search(chosen, nodes, limits);
            if matches!(r, Step::Found) {
                return r;
            }
            for &q in others.iter().rev() {
                self.uncover(self.top[q]);
            }
            chosen.pop();
            if matches!(r, Step::Budget) {
                self.uncover(i);
                return r;
            }
            p = self.down[p];
        }
        self.uncover(i);
        Step::Dead
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn knuth_example() {
        // Items a..g, the classic 6-option instance; unique solution {0, 3, 4}.
        let mut ec = ExactCover::new(7, 0);
        ec.add_option(vec![2, 4]);
        ec.add_option(vec![0, 3, 6]);
        ec.add_option(vec![1, 2, 5]);
        ec.add_option(vec![0, 3, 5]);
        ec.add_option(vec![1, 6]);
        ec.add_option(vec![3, 4, 6]);
        let (out, _) = ec.solve(u64::MAX);
        let DlxOutcome::Solution(mut s) = out else { panic!("{out:?}") };
        s.sort();
        assert_eq!(s, vec![0, 3, 4]);
    }

    #[test]
    fn secondary_items_at_most_once() {
        let mut ec = ExactCover::new(2, 1);
        ec.add_option(vec![0, 2]);
        ec.add_option(vec![1, 2]);
        assert_eq!(ec.solve(u64::MAX).0, DlxOutcome::Exhausted);
        ec.add_option(vec![1]);
        assert!(matches!(ec.solve(u64::MAX).0, DlxOutcome::Solution(_)));
    }

    #[test]
    fn budget_is_reported() {
        let mut ec = ExactCover::new(1, 0);
        ec.add_option(vec![0]);
        assert_eq!(ec.solve(0).0, DlxOutcome::Budget);
    }
}
