//! Acceptance run: one line per criterion, nonzero exit if any fails.

use qav::liedata::{AlgType, AlgebraData};
use qav::report::{Status, SuiteReport};
use qav::rmatrix::RCatalog;
use qav::suites::{self, Options};
use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

const ORDER: usize = 10;

fn alg(t: AlgType, n: usize) -> AlgebraData {
    AlgebraData::new(t, n).expect("supported algebra")
}

fn main_algebras() -> Vec<AlgebraData> {
    vec![alg(AlgType::B, 1), alg(AlgType::B, 2), alg(AlgType::D, 2), alg(AlgType::D, 3)]
}

fn first_failure(reports: &[SuiteReport]) -> Result<(), String> {
    for r in reports {
        if let Some(c) = r.first_failure() {
            return Err(format!("{} [{}] {}: {}", r.suite, r.algebra, c.name, c.witness.clone().unwrap_or_default()));
        }
    }
    Ok(())
}

fn find<'a>(reports: &'a [SuiteReport], suite: &str, algebra: &str) -> &'a SuiteReport {
    reports.iter().find(|r| r.suite == suite && r.algebra == algebra).expect("suite was run")
}

fn has_pass(r: &SuiteReport, needle: &str) -> Result<(), String> {
    match r.checks.iter().find(|c| c.name.contains(needle)) {
        Some(c) if c.status == Status::Pass => Ok(()),
        Some(c) => Err(format!("{} [{}] '{}' is {}", r.suite, r.algebra, c.name, c.status.name())),
        None => Err(format!("{} [{}] has no check matching '{needle}'", r.suite, r.algebra)),
    }
}

fn no_skips(r: &SuiteReport) -> Result<(), String> {
    match r.checks.iter().find(|c| c.status == Status::Skipped) {
        None => Ok(()),
        Some(c) => Err(format!("{} [{}] skipped '{}'", r.suite, r.algebra, c.name)),
    }
}

fn all_ok(rs: impl IntoIterator<Item = Result<(), String>>) -> Result<(), String> {
    rs.into_iter().collect::<Result<Vec<()>, String>>().map(|_| ())
}

/// Branch labels of the a_ij(u) table hit by one algebra.
fn a_branches(a: &AlgebraData) -> BTreeSet<&'static str> {
    let mut out = BTreeSet::new();
    for i in 0..a.dim {
        for j in 0..a.dim {
            let paired = i == a.prime(j);
            out.insert(match (i.cmp(&j), paired) {
                (std::cmp::Ordering::Equal, false) => "diagonal",
                (std::cmp::Ordering::Equal, true) => "diagonal, fixed by the involution",
                (std::cmp::Ordering::Less, false) => "upper",
                (std::cmp::Ordering::Less, true) => "upper, i = j'",
                (std::cmp::Ordering::Greater, false) => "lower",
                (std::cmp::Ordering::Greater, true) => "lower, i = j'",
            });
        }
    }
    out
}

fn main() {
    let start = Instant::now();
    let opts = Options { order: ORDER, window: 3, m: None, max_n: 6 };
    let mut lines: Vec<(usize, String, Result<(), String>)> = Vec::new();

    // Everything for the four main algebras in one pass per algebra.
    let mut reports: Vec<SuiteReport> = Vec::new();
    for a in main_algebras() {
        let names = suites::select("all").expect("all");
        reports.extend(suites::run(&a, &names, &opts).expect("within resource bounds"));
    }
    let pick = |suite: &str| -> Vec<SuiteReport> { reports.iter().filter(|r| r.suite == suite).cloned().collect() };

    lines.push((1, "YBE exact for B1, B2, D2, D3".into(), first_failure(&pick("ybe"))));

    let mut r2 = pick("unitarity");
    r2.extend(pick("crossing"));
    lines.push((
        2,
        format!("unitarity, both crossing identities, R crossing scalar through order {ORDER}"),
        first_failure(&r2).and_then(|_| all_ok(pick("crossing").iter().map(|r| has_pass(r, "R crossing scalar")))),
    ));

    // Dual construction: RCatalog::build fails on any entrywise mismatch.
    let mut branches = BTreeSet::new();
    let dual = all_ok(main_algebras().iter().map(|a| {
        branches.extend(a_branches(a));
        RCatalog::build(a, 2).map(|_| ()).map_err(|e| format!("{}: {e}", a.name()))
    }));
    lines.push((
        3,
        format!("R-bar assembly equals the entry table, {} a_ij branches covered", branches.len()),
        dual.and_then(|_| if branches.len() == 6 { Ok(()) } else { Err(format!("branches hit: {branches:?}")) }),
    ));

    let f12: Vec<SuiteReport> = main_algebras().iter().map(|a| suites::check_f_series(a, 12)).collect();
    lines.push((
        4,
        "f(u) functional equation and freeness through order 12, q-adic product for k <= 4".into(),
        first_failure(&f12),
    ));

    let mut cartan = Vec::new();
    for n in 1..=4 {
        cartan.push(suites::check_cartan(&alg(AlgType::B, n)));
    }
    for n in 2..=4 {
        cartan.push(suites::check_cartan(&alg(AlgType::D, n)));
    }
    lines.push((5, "B-tilde(q) exact inverse equals closed forms, B1-B4 and D2-D4".into(), first_failure(&cartan)));

    let gauss = pick("gauss");
    lines.push((
        6,
        format!("F H E = L at order {ORDER} with uniqueness probe"),
        first_failure(&gauss).and_then(|_| all_ok(gauss.iter().map(|r| has_pass(r, "breaks F*H*E = L")))),
    ));

    let low: Vec<SuiteReport> = vec![find(&reports, "lowrank", "B1").clone(), find(&reports, "lowrank", "D2").clone()];
    lines.push((
        7,
        format!("low-rank relations for B1 and D2 at order {ORDER}"),
        first_failure(&low).and_then(|_| all_ok(low.iter().map(no_skips))).and_then(|_| {
            let d2 = &low[1];
            all_ok(["e23(u) = 0", "f32(u) = 0", "e14(u) = -e12(u) e13(u)", "e24(u) = -e13(u)"].map(|x| has_pass(d2, x)))
        }),
    ));

    let z = pick("zseries");
    lines.push((
        8,
        format!("central series scalar and equal to the h-product at order {ORDER}; B1 crossing scalar"),
        first_failure(&z).and_then(|_| has_pass(find(&reports, "zseries", "B1"), "expanded crossing scalar")),
    ));

    let psi = vec![find(&reports, "psi", "B2").clone(), find(&reports, "psi", "D3").clone()];
    lines.push((
        9,
        format!("psi_1 consistency for B2 and D3 at order {ORDER}, with the low-rank cross-check"),
        first_failure(&psi)
            .and_then(|_| all_ok(psi.iter().map(no_skips)))
            .and_then(|_| all_ok(psi.iter().map(|r| has_pass(r, "low-rank relations")))),
    ));

    let dr = pick("drinfeld-rep");
    lines.push((
        10,
        "Drinfeld relations in the vector representation, window 3, Serre r = 3 for B2".into(),
        first_failure(&dr).and_then(|_| has_pass(find(&reports, "drinfeld-rep", "B2"), "Serre relations (i, j) = (2, 1), r = 3")),
    ));

    let mut ms: Vec<SuiteReport> = ["B1", "B2", "D2"].iter().map(|a| find(&reports, "main-structure", a).clone()).collect();
    ms.push(find(&reports, "eiprei", "B2").clone());
    ms.push(find(&reports, "eiprei", "D3").clone());
    lines.push((
        11,
        format!("F, E and H patterns and closed forms at order {ORDER}; mirror relations for B2, D3"),
        first_failure(&ms).and_then(|_| all_ok(ms[3..].iter().map(no_skips))),
    ));

    let exe = env!("CARGO_BIN_EXE_qav");
    let run = || {
        Command::new(exe)
            .args(["check", "all", "--type", "D", "--rank", "2", "--order", "8", "--format", "json"])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    lines.push((
        12,
        "two check all --format json runs are byte-identical".into(),
        if !a.status.success() {
            Err(format!("exit status {}", a.status))
        } else if a.stdout != b.stdout {
            Err("outputs differ".into())
        } else {
            Ok(())
        },
    ));

    let mut failed = 0;
    for (id, name, r) in &lines {
        match r {
            Ok(()) => println!("criterion {id:>2}: pass  {name}"),
            Err(w) => {
                failed += 1;
                println!("criterion {id:>2}: FAIL  {name} :: {w}");
            }
        }
    }
    println!("acceptance: {} of {} criteria pass ({:.1} s)", lines.len() - failed, lines.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
