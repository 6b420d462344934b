//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness so the lines always print.

mod common;

use std::cmp::Ordering;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hyperline::gen;
use hyperline::laws::{perturbed_mul, run_suite, FieldOps};
use hyperline::oracle::{direct_sum, eventual_order, summable_term, upper_bound};
use hyperline::svg::render_svg;
use hyperline_core::decimal::{
    extended_value, parse_extended, render_extended, render_lightstone, repeating_to_rational,
    RepeatingDecimal,
};
use hyperline_core::microscope::{render_ascii, Direction, Position};
use hyperline_core::{
    hyperfinite_sum, Classification, Hypernat, Hyperreal, Limit, Rational, SeqExpr,
};
use rayon::prelude::*;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn germ(s: &str) -> Hyperreal {
    s.parse().expect("valid germ")
}

fn tenth_h() -> Hyperreal {
    Hyperreal::pow_base(&Rational::new(1, 10), Hypernat::H).expect("positive base")
}

fn sum_identity() -> Outcome {
    let term = SeqExpr::parse("9*pow(1/10,n)").map_err(|e| e.to_string())?;
    let total = hyperfinite_sum(&term, Hypernat::H).map_err(|e| e.to_string())?;
    let expected = Hyperreal::one().sub(&tenth_h()).unwrap();
    ensure!(total == expected, "sum is {total}, expected {expected}");
    let gap = Hyperreal::one().sub(&total).unwrap();
    ensure!(
        gap.classify() == Classification::Infinitesimal,
        "1 - sum is {}",
        gap.classify()
    );
    ensure!(gap.signum() > 0, "1 - sum is not positive");
    ensure!(gap == tenth_h(), "shortfall is {gap}");
    let st = total.st().map_err(|e| e.to_string())?;
    ensure!(st == Rational::one(), "st(sum) = {st}");
    Ok(format!("sum = {total}, 1 - sum = {gap} > 0, st = 1"))
}

fn real_side_identity() -> Outcome {
    let nines: RepeatingDecimal = "0.(9)"
        .parse()
        .map_err(|e: hyperline_core::Error| e.to_string())?;
    ensure!(
        repeating_to_rational(&nines) == Rational::one(),
        "0.(9) is not 1"
    );
    let u = SeqExpr::parse("1 - pow(1/10,n)").unwrap();
    let limit = u.real_limit().map_err(|e| e.to_string())?;
    ensure!(
        limit == Limit::Converges(Rational::one()),
        "real_limit = {limit}"
    );
    let mut witnesses = Vec::new();
    for k in 0..=3 {
        let eps = Rational::new(1, 10).pow(k).unwrap();
        let close = |n: u64| (u.eval_at(n).unwrap() - Rational::one()).abs() < eps;
        let n = (0..=1_000_000u64)
            .find(|&n| (n + 1..=n + 10).all(close))
            .ok_or_else(|| format!("no N <= 10^6 for eps = {eps}"))?;
        witnesses.push(format!("eps={eps}: N={n}"));
    }
    Ok(format!("0.(9) = 1, limit = 1, {}", witnesses.join(", ")))
}

fn ultralimit_gap() -> Outcome {
    let u = SeqExpr::parse("1 - pow(1/10,n)").unwrap();
    let x = u.ultralimit().map_err(|e| e.to_string())?;
    let gap = Hyperreal::one().sub(&x).unwrap();
    ensure!(gap == tenth_h(), "1 - ultralimit = {gap}");
    ensure!(
        x.compare(&Hyperreal::one()) == Ordering::Less,
        "ultralimit is not below 1"
    );
    Ok(format!(
        "ultralimit = {x}, 1 - ultralimit = {gap}, Less than 1"
    ))
}

fn microscope_scene() -> Outcome {
    let placements = common::halo_of_one().place().map_err(|e| e.to_string())?;
    let expected = [
        Position::InView(Rational::integer(-1)),
        Position::InView(Rational::zero()),
        Position::OutOfView(Direction::Negative),
        Position::InView(Rational::zero()),
    ];
    for (p, want) in placements.iter().zip(&expected) {
        ensure!(
            &p.position == want,
            "{} placed at {}, expected {}",
            p.label,
            p.position,
            want
        );
    }
    common::check_golden(
        "halo_of_one.txt",
        render_ascii(&placements, common::SCENE_WIDTH).as_bytes(),
    )?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("scene.svg");
    render_svg(&placements, &path).map_err(|e| e.to_string())?;
    common::check_golden(
        "halo_of_one.svg",
        &std::fs::read(&path).map_err(|e| e.to_string())?,
    )?;
    Ok("placements -1, 0, out of view (-), 0; ASCII and SVG match golden files".into())
}

fn lightstone_round_trip() -> Outcome {
    let rendered =
        render_lightstone(&Hyperreal::one().sub(&tenth_h()).unwrap()).map_err(|e| e.to_string())?;
    ensure!(
        rendered == "0.9{1..H}0{H+1..}",
        "render_lightstone(1 - 10^-H) = {rendered}"
    );
    let mut notes = Vec::new();
    for text in ["0.9{1..H}0{H+1..}", "0.9{1..}", "0.9{1..H}(123){H+1..}"] {
        let parsed = parse_extended(text).map_err(|e| e.to_string())?;
        ensure!(
            render_extended(&parsed) == text,
            "{text} re-renders as {}",
            render_extended(&parsed)
        );
        let value = extended_value(&parsed).map_err(|e| e.to_string())?;
        let back = render_lightstone(&value).map_err(|e| e.to_string())?;
        if back == text {
            notes.push(format!("{text} -> {value} -> {back}"));
        } else {
            // The natural extension is the real number 1, whose expansion
            // renders in terminating form; the two strings name one value.
            ensure!(
                text == "0.9{1..}" && value == Hyperreal::one(),
                "{text} -> {value} -> {back}"
            );
            let again = extended_value(&parse_extended(&back).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            ensure!(again == value, "{back} does not denote {value}");
            notes.push(format!("{text} -> {value} -> {back} (same value)"));
        }
    }
    Ok(notes.join("; "))
}

fn law_suites() -> Outcome {
    let verdicts = run_suite(&FieldOps::exact(), 42, 10_000);
    for v in &verdicts {
        ensure!(v.passed(), "{v}");
    }
    let mutant = FieldOps {
        mul: perturbed_mul,
        ..FieldOps::exact()
    };
    let broken = run_suite(&mutant, 42, 200);
    let failing: Vec<_> = broken.iter().filter(|v| !v.passed()).collect();
    ensure!(
        !failing.is_empty(),
        "the perturbed multiplication passed every law"
    );
    for v in &failing {
        let report = v.to_string();
        let cx = v
            .first
            .as_ref()
            .expect("failing verdict has a counterexample");
        ensure!(
            report.contains("counterexample")
                && cx
                    .inputs
                    .iter()
                    .all(|(name, value)| report.contains(&format!("{name} = {value}"))),
            "report does not print the counterexample:\n{report}"
        );
    }
    let names: Vec<&str> = failing.iter().map(|v| v.law).collect();
    Ok(format!(
        "{} laws x 10000 cases pass; perturbed mul caught by {}",
        verdicts.len(),
        names.join(", ")
    ))
}

fn oracle_equivalence() -> Outcome {
    let mismatches: Vec<String> = (0..200)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = gen::case_rng(7, 1_000, i);
            let x = gen::germ(&mut rng);
            let y = gen::partner(&mut rng, &x);
            match eventual_order(&x, &y) {
                Some(o) if o == x.compare(&y) => None,
                other => Some(format!(
                    "pair {i}: compare({x}, {y}) = {:?}, numeric {other:?}",
                    x.compare(&y)
                )),
            }
        })
        .collect();
    ensure!(mismatches.is_empty(), "{}", mismatches.join("\n"));

    let sums: Vec<String> = (0..100)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = gen::case_rng(7, 2_000, i);
            let term = summable_term(&mut rng);
            let upper = upper_bound(&mut rng);
            let closed = match hyperfinite_sum(&term, upper) {
                Ok(c) => c,
                Err(e) => return Some(format!("sum {i}: {term} to {upper}: {e}")),
            };
            for n in [10u64, 100, 1000] {
                let top = upper.affine().at(n as i64);
                let direct = direct_sum(&term, top).expect("summands are defined");
                if closed.eval_at(n).ok() != Some(direct) {
                    return Some(format!("sum {i}: {term} to {upper} differs at H = {n}"));
                }
            }
            None
        })
        .collect();
    ensure!(sums.is_empty(), "{}", sums.join("\n"));
    Ok("200 comparisons and 100 closed sums agree with exact evaluation".into())
}

fn ordinal_contrast() -> Outcome {
    let pred = Hypernat::new(1, -1).map_err(|e| e.to_string())?;
    let succ = Hypernat::new(1, 1).map_err(|e| e.to_string())?;
    let (p, h, s) = (
        pred.to_hyperreal(),
        Hypernat::H.to_hyperreal(),
        succ.to_hyperreal(),
    );
    ensure!(
        p.classify() == Classification::Infinite,
        "H-1 is {}",
        p.classify()
    );
    ensure!(p < h && h < s, "H-1 < H < H+1 fails");
    ensure!(
        pred < Hypernat::H && Hypernat::H < succ,
        "hypernatural order fails"
    );
    ensure!(p.add(&Hyperreal::one()).unwrap() == h, "(H-1)+1 != H");
    ensure!(germ("H - 1") == p, "parsed H - 1 differs");
    Ok("H-1 exists, is infinite, H-1 < H < H+1 and (H-1)+1 = H; unlike an ordinal, H has a predecessor".into())
}

struct Criterion {
    number: u32,
    title: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

const CRITERIA: [Criterion; 8] = [
    Criterion {
        number: 1,
        title: "hyperfinite sum identity",
        budget: Duration::from_secs(1),
        run: sum_identity,
    },
    Criterion {
        number: 2,
        title: "real-side identity",
        budget: Duration::from_secs(1),
        run: real_side_identity,
    },
    Criterion {
        number: 3,
        title: "ultralimit gap",
        budget: Duration::from_secs(1),
        run: ultralimit_gap,
    },
    Criterion {
        number: 4,
        title: "microscope scene",
        budget: Duration::from_secs(1),
        run: microscope_scene,
    },
    Criterion {
        number: 5,
        title: "extended decimal round trip",
        budget: Duration::from_secs(1),
        run: lightstone_round_trip,
    },
    Criterion {
        number: 6,
        title: "ordered-field and st law suites",
        budget: Duration::from_secs(60),
        run: law_suites,
    },
    Criterion {
        number: 7,
        title: "oracle equivalence",
        budget: Duration::from_secs(120),
        run: oracle_equivalence,
    },
    Criterion {
        number: 8,
        title: "H-1 contrast",
        budget: Duration::from_secs(1),
        run: ordinal_contrast,
    },
];

fn main() -> ExitCode {
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(_) if elapsed > c.budget => {
                Err(format!("took {:.2?}, budget {:?}", elapsed, c.budget))
            }
            other => other,
        };
        match result {
            Ok(detail) => println!(
                "criterion {} {}: PASS ({:.2?}) {}",
                c.number, c.title, elapsed, detail
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "criterion {} {}: FAIL ({:.2?}) {}",
                    c.number, c.title, elapsed, why
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        CRITERIA.len() - failed,
        CRITERIA.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
