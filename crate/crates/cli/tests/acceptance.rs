use std::io::Write;

use rootsign::verify::{self, Suite, VerifyOptions};

/// Criteria whose stated form does not hold. Each entry lists the checks
/// allowed to fail; every other check in the suite must still pass.
const KNOWN_FAILURES: &[(usize, &[&str])] = &[
    (8, &["generator signs match the F4 table", "kernel equals the group described in the F4 table"]),
    (9, &["stated norm values"]),
    (10, &["<v/w> = <v/w^k>"]),
];

#[test]
fn acceptance() {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let opts = VerifyOptions {
        threads,
        golden: Some(include_str!("golden/tables_all.txt").to_string()),
        ..VerifyOptions::default()
    };
    // written to the raw handle so the lines survive libtest's capture
    let mut out = std::io::stdout().lock();
    let mut unexpected = Vec::new();
    for suite in Suite::ALL {
        let report = verify::run(suite, &opts).expect("suite runs");
        let status = if report.ok() { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "criterion {:>2} {status}: {} ({} cases)",
            report.number,
            report.title,
            report.cases()
        )
        .unwrap();
        let allowed = KNOWN_FAILURES
            .iter()
            .find(|(n, _)| *n == report.number)
            .map_or(&[][..], |(_, names)| *names);
        for check in report.checks.iter().filter(|c| !c.ok()) {
            let known = allowed.contains(&check.name.as_str());
            writeln!(
                out,
                "    {} {} [{}/{}]",
                if known { "known failure:" } else { "FAILED:" },
                check.name,
                check.cases - check.failures,
                check.cases
            )
            .unwrap();
            for ex in check.examples.iter().take(3) {
                writeln!(out, "        {ex}").unwrap();
            }
            if !known {
                unexpected.push(format!("criterion {}: {}", report.number, check.name));
            }
        }
    }
    assert!(unexpected.is_empty(), "unexpected failures: {unexpected:?}");
}
