//! Exhaustive confirmation that no SCHGDD of type `(5, 1^4)` exists.
//!
//! A base block meets three rows and each pair of rows needs three differences, so the row
//! triples of the ten base blocks form a `(5,3,3)`-BIBD, which is the full set of triples of
//! `I_5`. Each block is `{(a,0), (b,x), (c,y)}` with `a < b < c`, and `(x, y)` ranges over
//! the six ordered pairs of distinct nonzero elements of `Z_4`.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonexistenceCertificate {
    /// Number of assignments in the reduced space.
    pub space: u64,
    /// Partial assignments visited by the backtracking.
    pub nodes: u64,
    pub solutions: u64,
    /// First solution found, as `(x_l, y_l)` per triple; only the relaxed search stops early.
    pub witness: Option<Vec<(u32, u32)>>,
}

const L: u32 = 4;

fn triples() -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..5 {
        for b in a + 1..5 {
            for c in b + 1..5 {
                out.push([a, b, c]);
            }
        }
    }
    out
}

struct Run {
    triples: Vec<[usize; 3]>,
    choices: Vec<(u32, u32)>,
    /// `used[i][j][d]`: difference `d` already in `Δ_ij`.
    used: [[[bool; L as usize]; 5]; 5],
    allow_zero: bool,
    stop_at_first: bool,
    nodes: u64,
    solutions: u64,
    acc: Vec<(u32, u32)>,
    witness: Option<Vec<(u32, u32)>>,
}

impl Run {
    fn go(&mut self, l: usize) -> bool {
        if l == self.triples.len() {
            self.solutions += 1;
            if self.witness.is_none() {
                self.witness = Some(self.acc.clone());
            }
            return self.stop_at_first;
        }
        let [a, b, c] = self.triples[l];
        for ci in 0..self.choices.len() {
            let (x, y) = self.choices[ci];
            self.nodes += 1;
            let diffs = [(a, b, (L - x) % L), (a, c, (L - y) % L), (b, c, (x + L - y) % L)];
            if diffs.iter().any(|&(i, j, d)| (d == 0 && !self.allow_zero) || self.used[i][j][d as usize]) {
                continue;
            }
            for &(i, j, d) in &diffs {
                self.used[i][j][d as usize] = true;
            }
            self.acc.push((x, y));
            let stop = self.go(l + 1);
            self.acc.pop();
            for &(i, j, d) in &diffs {
                self.used[i][j][d as usize] = false;
            }
            if stop {
                return true;
            }
        }
        false
    }
}

fn run(choices: Vec<(u32, u32)>, allow_zero: bool, stop_at_first: bool) -> NonexistenceCertificate {
    let triples = triples();
    let space = (choices.len() as u64).pow(triples.len() as u32);
    let mut r = Run {
        triples,
        choices,
        used: [[[false; L as usize]; 5]; 5],
        allow_zero,
        stop_at_first,
        nodes: 0,
        solutions: 0,
        acc: Vec::new(),
        witness: None,
    };
    r.go(0);
    NonexistenceCertificate { space, nodes: r.nodes, solutions: r.solutions, witness: r.witness }
}

/// Count every solution of the reduced problem; zero certifies nonexistence.
pub fn confirm_nonexistence_5_1_4() -> NonexistenceCertificate {
    let choices = (1..L).flat_map(|x| (1..L).filter(move |&y| y != x).map(move |y| (x, y))).collect();
    run(choices, false, false)
}

/// The same reduction without the hole constraint: `(x, y)` ranges over `Z_4²` and the
/// differences in each `Δ_ij` only need to be distinct. Stops at the first solution.
pub fn relaxed_5_1_4() -> NonexistenceCertificate {
    let choices = (0..L).flat_map(|x| (0..L).map(move |y| (x, y))).collect();
    run(choices, true, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_solution_and_relaxed_has_one() {
        let c = confirm_nonexistence_5_1_4();
        assert_eq!((c.space, c.solutions), (60_466_176, 0));
        assert!(c.nodes > 0 && c.nodes < c.space);
        let r = relaxed_5_1_4();
        assert_eq!(r.solutions, 1);
        assert_eq!(r.witness.unwrap().len(), 10);
    }
}
