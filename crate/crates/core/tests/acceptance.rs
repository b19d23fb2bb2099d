//! Acceptance run: one PASS/FAIL line per criterion, with its timing and limit.
//!
//! A failure that a check recognises as the documented, unattainable case is reported as
//! FAIL but does not fail the run; every other failure does.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use forge_core::apps::bsec::build_bsec2;
use forge_core::apps::ooc::{build_ooc_n4, build_ooc_nm, fold_ooc};
use forge_core::design::expected_base_block_count;
use forge_core::direct::{direct_family, quasi_skew_starter, schgdd_n_1_4_from_starter, FamilyId};
use forge_core::recursive::{classify, execute_plan, plan, ExecContext, Rule, Verdict};
use forge_core::search::confirm_nonexistence_5_1_4;
use forge_core::verify::{johnson_bound, verify_bsec2, verify_ooc, verify_quasi_skew_starter, verify_schgdd};
use forge_core::{BaseBlock, Design, ForgeError, GridPoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
    /// Why a failure is expected, when it is exactly the documented one.
    documented: Option<&'static str>,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into(), documented: None }
}

fn family_cases() -> Vec<(FamilyId, u32, u32, u32)> {
    let mut v = Vec::new();
    v.extend([4, 6, 8, 10, 12].map(|t| (FamilyId::FourTwo, 4, 2, t)));
    v.extend([5, 7, 11, 13, 17, 19, 25].map(|m| (FamilyId::FiveFourHoles, 5, m, 4)));
    v.extend([4, 6, 8, 10].map(|t| (FamilyId::FiveThree, 5, 3, t)));
    v.extend([10, 16, 22].map(|t| (FamilyId::FiveOne, 5, 1, t)));
    v.push((FamilyId::SixTwoEight, 6, 2, 8));
    v.push((FamilyId::SixFourEight, 6, 4, 8));
    v.extend([5, 7, 9, 11, 13].map(|m| (FamilyId::SixThreeHoles, 6, m, 3)));
    v.extend([6, 10, 14].map(|t| (FamilyId::SixTwo, 6, 2, t)));
    v.extend([5, 11, 17, 23, 29].map(|n| (FamilyId::ThreeFour, n, 3, 4)));
    v
}

fn direct_designs() -> Vec<Design> {
    family_cases().into_iter().filter_map(|(f, n, m, t)| direct_family(f, n, m, t).ok()).collect()
}

fn direct_families() -> Outcome {
    let mut bad = Vec::new();
    let cases = family_cases();
    for &(f, n, m, t) in &cases {
        match direct_family(f, n, m, t) {
            Ok(d) => {
                let rep = verify_schgdd(&d);
                let count = d.base_blocks.len() as u64;
                if !rep.valid || count != expected_base_block_count(n, m, t) {
                    bad.push(format!("{f}({n},{m},{t}): {} with {count} base blocks", rep.summary()));
                }
            }
            Err(e) => bad.push(format!("{f}({n},{m},{t}): {e}")),
        }
    }
    outcome(bad.is_empty(), format!("{} designs, failures: {bad:?}", cases.len()))
}

fn starters() -> Outcome {
    let bad: Vec<u32> = (7..=301)
        .step_by(2)
        .filter(|&n| !quasi_skew_starter(n).is_ok_and(|s| verify_quasi_skew_starter(&s.pairs, n).valid))
        .collect();
    outcome(bad.is_empty(), format!("odd n in [7,301], failures: {bad:?}"))
}

fn starter_designs() -> Outcome {
    let bad: Vec<u32> = (7..=99)
        .step_by(2)
        .filter(|&n| !schgdd_n_1_4_from_starter(n).is_ok_and(|d| verify_schgdd(&d).valid))
        .collect();
    outcome(bad.is_empty(), format!("(n,1^4) for odd n in [7,99], failures: {bad:?}"))
}

fn nonexistence() -> Outcome {
    let c = confirm_nonexistence_5_1_4();
    outcome(c.solutions == 0 && c.nodes > 0, format!("space {}, nodes {}, solutions {}", c.space, c.nodes, c.solutions))
}

fn recursive_chains() -> Outcome {
    let ctx = ExecContext::default();
    let cases = [(4, 2, 6), (4, 6, 6), (5, 2, 10), (5, 3, 6), (6, 2, 16), (6, 4, 8), (6, 1, 9), (7, 1, 4), (9, 1, 9), (11, 3, 4), (8, 3, 4)];
    let (mut ok, mut fails, mut skips) = (Vec::new(), Vec::new(), Vec::new());
    for (n, m, t) in cases {
        let p = plan(n, m, t);
        match execute_plan(&p, &ctx) {
            Ok(d) if verify_schgdd(&d).valid => ok.push(format!("({n},{m},{t})")),
            Ok(d) => fails.push(format!("({n},{m},{t}) built but {}", verify_schgdd(&d).summary())),
            Err(ForgeError::ExternalRequired(what)) if !p.leaves_with(Rule::External).is_empty() => {
                skips.push(format!("({n},{m},{t}) needs external {what}"))
            }
            Err(e) => fails.push(format!("({n},{m},{t}) {e}")),
        }
    }
    for s in &skips {
        println!("        SKIP {s}");
    }
    let mut o = outcome(fails.is_empty(), format!("built {}; skipped {}; failed {fails:?}", ok.join(" "), skips.len()));
    if fails.len() == 1 && fails[0].starts_with("(8,3,4) not constructible") && fails[0].contains("parity") {
        o.documented = Some("(8,3^4) violates the parity condition (t-1)(n-1)m even, so no such design exists");
    }
    o
}

/// The classification read directly off the existence theorem. The `n >= 11` guards keep
/// `n = 5` out of two undecided classes that the tabulated `n = 5` families settle.
fn literal_verdict(n: u32, m: u32, t: u32) -> Verdict {
    let odd = |x: u32| x % 2 == 1;
    if n < 3 || t < 3 || !((t - 1) * (n - 1) * m).is_multiple_of(2) || !((t - 1) * n * (n - 1) * m).is_multiple_of(6) {
        return Verdict::NotExists;
    }
    let excluded = (matches!(n % 12, 3 | 7) && odd(m) && t % 4 == 2)
        || (n == 3 && odd(m) && t.is_multiple_of(2))
        || (n == 3 && t == 3 && m.is_multiple_of(2))
        || (n, m, t) == (5, 1, 4)
        || (n, m, t) == (6, 1, 3);
    if excluded {
        return Verdict::NotExists;
    }
    let undecided = (n == 8 && matches!(m % 12, 2 | 10) && matches!(t % 12, 7 | 10))
        || (t == 8 && ((odd(m) && matches!(n % 6, 1 | 3) && n >= 7) || (m % 6 == 3 && n % 6 == 5 && n >= 11)))
        || (matches!(n % 12, 1 | 9) && odd(m) && t % 4 == 2)
        || (n % 6 == 5 && n >= 11 && ((m % 6 == 3 && t % 4 == 2) || (matches!(m % 6, 1 | 5) && t % 12 == 10)));
    if undecided {
        Verdict::Open
    } else {
        Verdict::Exists
    }
}

fn classifier() -> Outcome {
    let mut bad = Vec::new();
    let mut total = 0;
    for n in 3..=30 {
        for t in 3..=30 {
            for m in 1..=12 {
                total += 1;
                let (got, want) = (classify(n, m, t), literal_verdict(n, m, t));
                if got != want {
                    bad.push(format!("({n},{m},{t}) {got:?} vs {want:?}"));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{total} triples, {} mismatches {:?}", bad.len(), &bad[..bad.len().min(5)]))
}

fn oocs() -> Outcome {
    let ctx = ExecContext::default();
    let mut notes = Vec::new();
    let mut pass = true;
    match build_ooc_n4(2, &ctx) {
        Ok(c) => {
            let mut listed = vec![vec![(0, 0), (0, 1), (1, 0)], vec![(0, 3), (1, 0), (1, 1)]];
            let mut got = c.codewords.clone();
            got.iter_mut().for_each(|w| w.sort_unstable());
            listed.sort();
            got.sort();
            let same = got == listed;
            pass &= same && verify_ooc(&c).valid && c.codewords.len() as u64 == johnson_bound(2, 4, 3, 1).unwrap();
            notes.push(format!("2x4: {} codewords, matches the listed code: {same}", c.codewords.len()));
        }
        Err(e) => {
            pass = false;
            notes.push(format!("2x4: {e}"));
        }
    }
    for (n, m, want) in [(8, 4, 40u64), (8, 16, 168)] {
        match build_ooc_nm(n, m, &ctx) {
            Ok(c) => {
                let size = c.codewords.len() as u64;
                pass &= verify_ooc(&c).valid && size == want && johnson_bound(n as u64, m as u64, 3, 1) == Some(want);
                notes.push(format!("{n}x{m}: {size} codewords"));
            }
            Err(e) => {
                pass = false;
                notes.push(format!("{n}x{m}: {e}"));
            }
        }
    }
    outcome(pass, notes.join(", "))
}

fn fold() -> Outcome {
    let ctx = ExecContext::default();
    match build_ooc_nm(8, 16, &ctx).and_then(|c| fold_ooc(&c, 2).map(|f| (c, f))) {
        Ok((c, f)) => {
            let pass = (f.n, f.m) == (16, 8) && f.codewords.len() == 2 * c.codewords.len() && f.codewords.len() == 336 && verify_ooc(&f).valid;
            outcome(pass, format!("{}x{} with {} codewords, {}", f.n, f.m, f.codewords.len(), verify_ooc(&f).summary()))
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn bsec() -> Outcome {
    match build_bsec2(9, 9, &ExecContext::default()) {
        Ok(d) => {
            let rep = verify_bsec2(&d, true);
            outcome(rep.valid, format!("{} base blocks, {}", d.base_blocks.len(), rep.summary()))
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn mutate(d: &Design, rng: &mut ChaCha8Rng) -> Design {
    let l = d.params.modulus.expect("semi-cyclic design");
    let mut out = d.clone();
    let bi = rng.gen_range(0..out.base_blocks.len());
    let mut pts: Vec<GridPoint> = out.base_blocks[bi].points().to_vec();
    let pi = rng.gen_range(0..pts.len());
    pts[pi].coord = (pts[pi].coord + rng.gen_range(1..l)) % l;
    out.base_blocks[bi] = BaseBlock::new(pts);
    out
}

fn mutations() -> Outcome {
    let designs = direct_designs();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let rejected = (0..100).filter(|_| !verify_schgdd(&mutate(&designs[rng.gen_range(0..designs.len())], &mut rng)).valid).count();
    outcome(rejected == 100, format!("{rejected}/100 mutations rejected over {} designs", designs.len()))
}

fn main() -> ExitCode {
    type Check = fn() -> Outcome;
    let criteria: [(u32, &str, Check, Option<u64>); 10] = [
        (1, "direct families verify with exact base-block counts", direct_families, Some(60)),
        (2, "quasi-skew starters for odd n in [7,301]", starters, Some(5)),
        (3, "(n,1^4) designs from starters", starter_designs, None),
        (4, "exhaustive nonexistence of (5,1^4)", nonexistence, Some(60)),
        (5, "recursive chains execute and verify", recursive_chains, None),
        (6, "classifier agrees with the existence theorem", classifier, None),
        (7, "optimal OOCs", oocs, Some(120)),
        (8, "OOC fold 8x16 -> 16x8", fold, None),
        (9, "semi-cyclic 2-BSEC(9,9,3,1)", bsec, Some(60)),
        (10, "mutation sensitivity", mutations, None),
    ];
    let mut unexpected = 0;
    for (id, name, check, limit) in criteria {
        let start = Instant::now();
        let mut o = check();
        let took = start.elapsed();
        if let Some(secs) = limit {
            if took > Duration::from_secs(secs) {
                o.pass = false;
                o.detail = format!("{}; over the {secs} s limit", o.detail);
            }
        }
        let limit = limit.map_or(String::new(), |s| format!(" (limit {s} s)"));
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("[{id:>2}] {tag} {name}: {} [{:.3} s{limit}]", o.detail, took.as_secs_f64());
        if !o.pass {
            match o.documented {
                Some(why) => println!("        documented: {why}"),
                None => unexpected += 1,
            }
        }
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed unexpectedly");
        return ExitCode::FAILURE;
    }
    ExitCode::SUCCESS
}
