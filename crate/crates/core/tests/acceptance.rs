//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nbase::par::Exec;
use nbase::random::Budget;
use nbase::selftest::{self, Tally};

const SEED: u64 = 20_241_018;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Option<Duration>,
    run: fn(Exec) -> Vec<Tally>,
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            name: "level-2 compose equals tree substitution",
            budget: secs(30),
            run: |e| vec![selftest::oracle(6, 3, e)],
        },
        Criterion {
            id: 2,
            name: "associativity",
            budget: secs(120),
            run: |e| {
                vec![
                    selftest::associativity_exhaustive(6, 3, e),
                    selftest::associativity_random(3, 10_000, SEED, Budget::SMALL, e),
                    selftest::associativity_random(4, 10_000, SEED, Budget::SMALL, e),
                ]
            },
        },
        Criterion {
            id: 3,
            name: "phi identities",
            budget: secs(120),
            run: |e| {
                vec![
                    selftest::phi_exhaustive(6, 3, e),
                    selftest::phi_random(3, 10_000, SEED, Budget::SMALL, e),
                    selftest::phi_random(4, 10_000, SEED, Budget::SMALL, e),
                ]
            },
        },
        Criterion {
            id: 4,
            name: "confluence of normalize",
            budget: None,
            run: |e| {
                vec![
                    selftest::confluence(2, 1_000, SEED, e),
                    selftest::confluence(3, 1_000, SEED, e),
                ]
            },
        },
        Criterion {
            id: 5,
            name: "binary counts are Catalan",
            budget: secs(10),
            run: |_| vec![selftest::catalan_table(8)],
        },
        Criterion {
            id: 6,
            name: "tree presentations present the symmetric group",
            budget: secs(60),
            run: |e| vec![selftest::tree_presentations(6, e), selftest::gi_checks()],
        },
        Criterion {
            id: 7,
            name: "symmetric presentation orders",
            budget: None,
            run: |_| vec![selftest::symmetric_orders(6)],
        },
        Criterion {
            id: 8,
            name: "ordinal round trip",
            budget: secs(30),
            run: |e| (1..=4).map(|n| selftest::ordinal_round_trip(n, 500, 5, SEED, e)).collect(),
        },
        Criterion {
            id: 9,
            name: "phi2 image sweep",
            budget: None,
            run: |_| vec![selftest::phi2_image()],
        },
        Criterion {
            id: 10,
            name: "cube-like squares",
            budget: None,
            run: |e| vec![selftest::cube_like(4, 2, e), selftest::cube_like(3, 3, e)],
        },
        Criterion {
            id: 11,
            name: "equivariance of composition",
            budget: None,
            run: |e| vec![selftest::equivariance(5, 3, e)],
        },
        Criterion {
            id: 12,
            name: "unit laws",
            budget: None,
            run: |e| vec![selftest::unit_laws(2, 4, 3, e), selftest::unit_laws(3, 3, 3, e)],
        },
    ]
}

fn main() -> ExitCode {
    let exec = Exec::default();
    let mut failed = 0;
    for c in criteria() {
        let start = Instant::now();
        let tallies = (c.run)(exec);
        let took = start.elapsed();
        let in_time = c.budget.is_none_or(|b| took <= b);
        let ok = in_time && tallies.iter().all(Tally::passed);
        let cases: u64 = tallies.iter().map(|t| t.cases).sum();
        println!(
            "{} {:>2} {} ({cases} cases, {:.2}s)",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            took.as_secs_f64()
        );
        if !ok {
            failed += 1;
            for t in &tallies {
                println!("     {t}");
            }
            if !in_time {
                println!("     over the {:?} budget", c.budget.unwrap());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
