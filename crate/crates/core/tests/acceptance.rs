//! Acceptance criteria 1 to 10, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the summary lines always reach the
//! terminal; exits nonzero when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use weakcliff::verify::{run, Outcome, Suite, VerifyConfig};

struct Criterion {
    number: u32,
    title: &'static str,
    budget: Duration,
    suites: &'static [Suite],
    config: VerifyConfig,
}

fn is_diagnostic(o: &Outcome) -> bool {
    o.name.starts_with("diagnostic")
}

fn main() -> ExitCode {
    let base = VerifyConfig::default();
    let criteria = [
        Criterion {
            number: 1,
            title: "multipole eigen-relation, symmetry and contractionless, k <= 4",
            budget: Duration::from_secs(60),
            suites: &[Suite::Multipoles],
            config: VerifyConfig { kmax: 4, ..base.clone() },
        },
        Criterion {
            number: 2,
            title: "strong Clifford spin-1/2 structure",
            budget: Duration::from_secs(30),
            suites: &[Suite::CliffordSpinHalf],
            config: base.clone(),
        },
        Criterion {
            number: 3,
            title: "f-constraint solution family",
            budget: Duration::from_secs(60),
            suites: &[Suite::FConstraint],
            config: base.clone(),
        },
        Criterion {
            number: 4,
            title: "reflection identities, 200 draws in (3,0), (1,1), (1,3)",
            budget: Duration::from_secs(60),
            suites: &[Suite::Reflections],
            config: VerifyConfig { cases: 200, ..base.clone() },
        },
        Criterion {
            number: 5,
            title: "spinless weak Clifford algebra at D=6, H=2",
            budget: Duration::from_secs(300),
            suites: &[Suite::Weak],
            config: VerifyConfig { degree: Some(6), headroom: 2, ..base.clone() },
        },
        Criterion {
            number: 6,
            title: "spin-s weak Clifford algebras, s = 1/2 (D=6) and s = 1 (D=8)",
            budget: Duration::from_secs(900),
            suites: &[Suite::SpinHalf, Suite::SpinOne],
            config: base.clone(),
        },
        Criterion {
            number: 7,
            title: "extended metric values and Mon identities",
            budget: Duration::from_secs(30),
            suites: &[Suite::Metric],
            config: base.clone(),
        },
        Criterion {
            number: 8,
            title: "spin-0 algebra",
            budget: Duration::from_secs(10),
            suites: &[Suite::SpinZero],
            config: base.clone(),
        },
        Criterion {
            number: 9,
            title: "representation oracle, s = 0 .. 3",
            budget: Duration::from_secs(60),
            suites: &[Suite::Rep],
            config: base.clone(),
        },
        Criterion {
            number: 10,
            title: "symbolic and numeric cross-oracle, s = 1/2 and 1",
            budget: Duration::from_secs(300),
            suites: &[Suite::CrossOracle],
            config: base.clone(),
        },
    ];

    let mut summary = Vec::new();
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcomes: Vec<Outcome> = c.suites.iter().flat_map(|&s| run(s, &c.config)).collect();
        let elapsed = start.elapsed();
        let checks: Vec<&Outcome> = outcomes.iter().filter(|o| !is_diagnostic(o)).collect();
        let broken: Vec<&&Outcome> = checks.iter().filter(|o| !o.pass).collect();
        let in_time = elapsed <= c.budget;
        let pass = broken.is_empty() && in_time;
        for o in &outcomes {
            println!("  {o}");
        }
        let mut line = format!(
            "criterion {:>2} {}: {} ({} checks, {:.1?} of {:?})",
            c.number,
            if pass { "PASS" } else { "FAIL" },
            c.title,
            checks.len(),
            elapsed,
            c.budget
        );
        if !in_time {
            line.push_str(" over time budget");
        }
        for o in &broken {
            line.push_str(&format!("\n      failing: [{}] {}: {}", o.suite, o.name, o.value));
        }
        println!("{line}");
        if !pass {
            failed += 1;
        }
        summary.push(line);
    }
    println!("\nacceptance summary");
    for line in &summary {
        println!("{line}");
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
