//! Acceptance run: one line per criterion.
//!
//! Run with `cargo test -p logclass-core --test acceptance`. Rows of the
//! stretch tier are skipped unless `LOGCLASS_STRETCH=1`. The process exits
//! nonzero if any criterion fails other than the known table discrepancies
//! listed in `KNOWN`.

mod support;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use logclass_core::corpus::{check_row, paper_rows, CorpusRow, Tier};
use logclass_core::logclass::{log_class_group_from, render_group, LogClassOptions};
use logclass_core::numberfield::{maximal_order, ClassGroup, ClassGroupOptions};

use support::checks::{self, Outcome, LOG_DIGITS, MIN_CASES, REGULATOR_TOL, STABILITY_OFFSETS};

/// Wall-clock budget for the whole run.
const BUDGET: Duration = Duration::from_secs(15 * 60);
/// Range of the quadratic class group sweep, `0 < |d| ≤ QUADRATIC_MAX`.
const QUADRATIC_MAX: i64 = 10_000;
/// Range of the regulator sweep, `2 ≤ d ≤ REGULATOR_MAX`.
const REGULATOR_MAX: i64 = 1000;
/// Random inputs per prime for the p-adic logarithm.
const LOG_INPUTS: usize = 50;

/// Table entries that are inconsistent with independently checkable facts.
/// Each is (field, ℓ, check, reason).
const KNOWN: &[(&str, u64, &str, &str)] = &[
    (
        "Q(sqrt(-521951))",
        2,
        "Cl' l-part",
        "a prime above 2 has order 512 in Cl = Z/1024 (binary forms), so Cl' = Z/2",
    ),
    (
        "Q(sqrt(1234577),sqrt(-3))",
        2,
        "group",
        "h = 273 is odd and (2) has two places, so the group is cyclic of order at most the bound 4",
    ),
];

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Known,
    Skip,
}

struct Report {
    lines: usize,
    unexpected: usize,
}

impl Report {
    fn line(&mut self, status: Status, name: &str, detail: &str) {
        let tag = match status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Known => "FAIL (known table discrepancy)",
            Status::Skip => "SKIP",
        };
        if status == Status::Fail {
            self.unexpected += 1;
        }
        self.lines += 1;
        println!("{tag:<32} {name}: {detail}");
    }

    fn outcome(&mut self, name: &str, o: Outcome, unit: &str) {
        match o {
            Ok(n) => self.line(Status::Pass, name, &format!("{n} {unit}")),
            Err(e) => self.line(Status::Fail, name, &e),
        }
    }
}

fn run_rows(report: &mut Report, rows: &[CorpusRow], grh: bool) -> bool {
    let mut by_field: BTreeMap<&'static str, Vec<&CorpusRow>> = BTreeMap::new();
    for r in rows {
        by_field.entry(r.field).or_default().push(r);
    }
    let mut theta_all = true;
    let opts = LogClassOptions {
        class_group: ClassGroupOptions { grh, ..ClassGroupOptions::default() },
        ..LogClassOptions::default()
    };
    for (field, rows) in by_field {
        let t = Instant::now();
        let computed = maximal_order(&rows[0].zpoly())
            .and_then(|ctx| ClassGroup::compute(&ctx, &opts.class_group).map(|cg| (ctx, cg)));
        let (ctx, cg) = match computed {
            Ok(x) => x,
            Err(e) => {
                for row in rows {
                    report.line(Status::Fail, &format!("table {field} ell={}", row.ell), &e.to_string());
                }
                theta_all = false;
                continue;
            }
        };
        let cg_time = t.elapsed();
        for row in rows {
            let name = format!("table {field} ell={}", row.ell);
            let t = Instant::now();
            let r = match log_class_group_from(&ctx, &cg, row.ell, &opts) {
                Ok(r) => r,
                Err(e) => {
                    report.line(Status::Fail, &name, &e.to_string());
                    theta_all = false;
                    continue;
                }
            };
            theta_all &= r.theta_consistent;
            let misses: Vec<_> = check_row(row, &ctx, &r).into_iter().filter(|c| !c.pass()).collect();
            let timing = format!("class group {:.2?}, ell-part {:.2?}", cg_time, t.elapsed());
            if misses.is_empty() {
                report.line(Status::Pass, &name, &format!("{} ({timing})", render_group(&r.cyclic)));
                continue;
            }
            let reasons: Vec<Option<&str>> = misses
                .iter()
                .map(|c| KNOWN.iter().find(|k| k.0 == field && k.1 == row.ell && k.2 == c.name).map(|k| k.3))
                .collect();
            let detail = misses
                .iter()
                .map(|c| format!("{} expected {} got {}", c.name, c.expected, c.actual))
                .collect::<Vec<_>>()
                .join("; ");
            if reasons.iter().all(|r| r.is_some()) {
                let why: Vec<&str> = reasons.into_iter().flatten().collect();
                report.line(Status::Known, &name, &format!("{detail} [{}] ({timing})", why.join("; ")));
            } else {
                report.line(Status::Fail, &name, &format!("{detail} ({timing})"));
            }
        }
    }
    theta_all
}

fn main() {
    let start = Instant::now();
    let mut report = Report { lines: 0, unexpected: 0 };
    let rows = paper_rows();
    let mandatory: Vec<CorpusRow> = rows.iter().filter(|r| r.tier == Tier::Mandatory).cloned().collect();
    let stretch: Vec<CorpusRow> = rows.iter().filter(|r| r.tier == Tier::Stretch).cloned().collect();

    let mut theta = run_rows(&mut report, &mandatory, false);
    if std::env::var("LOGCLASS_STRETCH").as_deref() == Ok("1") {
        theta &= run_rows(&mut report, &stretch, true);
    } else {
        for row in &stretch {
            report.line(Status::Skip, &format!("table {} ell={}", row.field, row.ell), "set LOGCLASS_STRETCH=1");
        }
    }
    report.line(
        if theta { Status::Pass } else { Status::Fail },
        "theta identity on every computed row",
        "|C(l)|·|Cl'| = |group|·|coker theta|",
    );

    report.outcome(
        "quadratic class groups vs binary forms",
        checks::quadratic_class_groups(QUADRATIC_MAX),
        &format!("fields, |d| <= {QUADRATIC_MAX}"),
    );
    report.outcome(
        "real quadratic regulators vs continued fractions",
        checks::quadratic_regulators(REGULATOR_MAX),
        &format!("fields, d <= {REGULATOR_MAX}, relative tolerance {REGULATOR_TOL:e}"),
    );
    report.outcome(
        "p-adic logarithm vs rational series",
        checks::padic_logs(LOG_INPUTS),
        &format!("inputs, p in {{2,3,5,7}}, {LOG_DIGITS} digits"),
    );
    let cases = format!("cases (minimum {MIN_CASES})");
    report.outcome("logarithmic valuation additivity", checks::log_valuation_additive(), &cases);
    report.outcome("principal divisors of degree zero", checks::principal_degree_zero(), &cases);
    report.outcome("e~f~ = ef, prime-to-p parts, lambda unit", checks::ramification_invariants(), &cases);
    report.outcome("Iwasawa logarithm identities", checks::iwasawa_log_identities(), &cases);
    report.outcome("Hermite and Smith transform identities", checks::matrix_identities(128), &cases);
    report.outcome(
        "precision stability and theta identity",
        checks::precision_stability(),
        &format!("{cases}, offsets {STABILITY_OFFSETS:?}"),
    );

    let elapsed = start.elapsed();
    report.line(
        if elapsed <= BUDGET { Status::Pass } else { Status::Fail },
        "total runtime",
        &format!("{:.1?} (budget {:?})", elapsed, BUDGET),
    );
    println!("{} criteria, {} unexpected failures", report.lines, report.unexpected);
    std::process::exit(if report.unexpected == 0 { 0 } else { 1 });
}
