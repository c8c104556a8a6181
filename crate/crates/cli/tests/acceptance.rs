//! One line per acceptance criterion. Failures marked known are printed as
//! `FAIL(known)` and do not fail the run; every other failure does.

use openbook_hfk::suites::{self, Context, Line, Suite, GENUS_TWO_SAMPLE, SMALL_BUDGET, SWEEP_BUDGET};
use openbook_hfk_core::floer::Options;
use std::collections::BTreeMap;
use std::process::ExitCode;

fn main() -> ExitCode {
    println!(
        "tolerances: single examples {}s, rank sweep {}s, genus-2 sample {} words, exact integer ranks",
        SMALL_BUDGET.as_secs(),
        SWEEP_BUDGET.as_secs(),
        GENUS_TWO_SAMPLE
    );
    let mut ctx = Context::new(Options::default(), 0, 0);
    let mut lines: Vec<Line> = Vec::new();
    for s in [Suite::Core, Suite::Corollaries, Suite::CorpusSmoke] {
        lines.extend(suites::run(s, &mut ctx));
    }
    let mut by_id: BTreeMap<(usize, &str), Vec<&Line>> = BTreeMap::new();
    for l in &lines {
        let num: usize = l.id.trim_start_matches('C').trim_end_matches(char::is_alphabetic).parse().unwrap_or(99);
        by_id.entry((num, l.id)).or_default().push(l);
    }
    let mut unexpected = 0;
    for ((_, id), ls) in &by_id {
        let pass = ls.iter().all(|l| l.pass);
        let known: Vec<&str> = ls.iter().filter(|l| !l.pass).filter_map(|l| l.known).collect();
        let all_known = ls.iter().all(|l| l.pass || l.known.is_some());
        let tag = if pass {
            "PASS"
        } else if all_known {
            "FAIL(known)"
        } else {
            unexpected += 1;
            "FAIL"
        };
        let detail: Vec<&str> = ls.iter().map(|l| l.detail.as_str()).collect();
        print!("{tag} {id}: {}", detail.join(" | "));
        if !known.is_empty() {
            print!(" [{}]", known.join("; "));
        }
        println!();
    }
    if unexpected > 0 {
        println!("{unexpected} criterion(s) failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
