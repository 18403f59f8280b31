//! Acceptance run: one line per criterion, `PASS` or `FAIL`, with timing.
//! Exits nonzero when any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{tiling, N6_TILING, RAY_TILING};
use coredhex::exactnum::binomial;
use coredhex::formulas::{
    asymptotic_table, count_cored_formula, macmahon_box, rhs_omega_det, watson_pair, OmegaCase, WatsonVariant,
};
use coredhex::hypergeom::sample_rational;
use coredhex::lgv::build_B;
use coredhex::tilings::{cell_cap, count_tilings, statistic_n, statistic_n6, CoredHexagon};
use coredhex::verify::{run_suite, Status, Suite, VerificationReport};
use coredhex::Rational;

const SEED: u64 = 2024;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(started: Instant, limit: Duration) -> Result<(), String> {
    let spent = started.elapsed();
    ensure(spent <= limit, || format!("took {spent:.2?}, limit {limit:?}"))
}

/// Runs a suite at its default bounds and requires no failure, returning
/// the reports for further checks.
fn suite_clean(suite: Suite) -> Result<Vec<VerificationReport>, String> {
    let reports = run_suite(suite, &suite.default_bounds(), SEED);
    let failed: Vec<_> = reports.iter().filter(|r| r.status == Status::Fail).collect();
    if let Some(first) = failed.first() {
        return Err(format!(
            "{suite}: {} of {} cases failed, first {:?}: {} vs {} {}",
            failed.len(),
            reports.len(),
            first.case_params,
            first.lhs,
            first.rhs,
            first.note
        ));
    }
    Ok(reports)
}

fn tally(reports: &[VerificationReport]) -> String {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for r in reports {
        let key = match r.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
            Status::Reported => "reported",
        };
        *counts.entry(key).or_default() += 1;
    }
    counts.iter().map(|(k, v)| format!("{v} {k}")).collect::<Vec<_>>().join(", ")
}

fn no_skips(reports: &[VerificationReport]) -> Result<(), String> {
    match reports.iter().find(|r| r.status == Status::Skip) {
        Some(r) => Err(format!("skipped {:?}: {}", r.case_params, r.note)),
        None => Ok(()),
    }
}

fn triangle() -> Outcome {
    let t = Instant::now();
    let reports = suite_clean(Suite::TilingsVsFormula)?;
    no_skips(&reports)?;
    within(t, Duration::from_secs(600))?;
    Ok(tally(&reports))
}

fn macmahon() -> Outcome {
    let t = Instant::now();
    let mut n = 0;
    for a in 0..=6 {
        for b in 0..=6 {
            for c in 0..=6 {
                let f = count_cored_formula(&CoredHexagon::new(a, b, c, 0), false).map_err(|e| e.to_string())?;
                let expected = Rational::from_integer(macmahon_box(a, b, c));
                ensure(f == expected, || format!("({a},{b},{c}): {f} vs {expected}"))?;
                n += 1;
            }
        }
    }
    within(t, Duration::from_secs(1))?;
    Ok(format!("{n} boxes"))
}

fn omega_determinants() -> Outcome {
    let t = Instant::now();
    let mut n = 0;
    for a in 0..=8usize {
        for m in 0..=10i64 {
            for case in OmegaCase::ALL {
                let det = build_B(a, m)
                    .add_scalar_identity(&case.omega())
                    .and_then(|x| x.det())
                    .map_err(|e| e.to_string())?;
                let rhs = rhs_omega_det(a as u32, m as u32, case).map_err(|e| e.to_string())?;
                ensure(det == rhs, || format!("a={a} m={m} {}: {det} vs {rhs}", case.name()))?;
                n += 1;
            }
        }
    }
    within(t, Duration::from_secs(60))?;
    Ok(format!("{n} determinants"))
}

fn cyclic() -> Outcome {
    let t = Instant::now();
    let reports = suite_clean(Suite::CyclicWeights)?;
    no_skips(&reports)?;
    let stembridge = reports.iter().filter(|r| r.case_params.get("m").map(String::as_str) == Some("0")).count();
    ensure(stembridge > 0, || "no m = 0 cases".into())?;
    within(t, Duration::from_secs(300))?;
    Ok(tally(&reports))
}

fn case10() -> Outcome {
    let reports = suite_clean(Suite::Case10)?;
    no_skips(&reports)?;
    let mut branches = std::collections::BTreeSet::new();
    for r in &reports {
        let p = |k: &str| r.case_params[k].parse::<u32>().unwrap() % 2;
        branches.insert((p("a"), p("m")));
    }
    ensure(branches.len() == 4, || format!("parity branches covered: {branches:?}"))?;
    Ok(tally(&reports))
}

fn pinned() -> Outcome {
    let (region, t) = tiling(CoredHexagon::new(5, 3, 1, 2), &RAY_TILING);
    let n = statistic_n(&t, &region).map_err(|e| e.to_string())?;
    ensure(n == 2, || format!("n(T) = {n}"))?;
    let (region, t) = tiling(CoredHexagon::cyclic(3, 2), &N6_TILING);
    let n6 = statistic_n6(&t, &region).map_err(|e| e.to_string())?;
    ensure(n6 == 3, || format!("n6(T0) = {n6}"))?;
    let count = |h: CoredHexagon| count_tilings(&h, cell_cap()).map_err(|e| e.to_string());
    for a in 0..=5 {
        for m in 0..=4 {
            let c = count(CoredHexagon::new(a, 0, 0, m))?;
            ensure(c == BigInt::from(1), || format!("C_{{{a},0,0}}({m}) has {c} tilings"))?;
        }
    }
    for a in [1u32, 3, 5] {
        for m in [0u32, 2] {
            let c = count(CoredHexagon::new(a, 1, 1, m))?;
            let half = (a as i64 - 1) / 2;
            let expected = binomial(m as i64 + 1 + half, half) * 2;
            ensure(c == expected, || format!("C_{{{a},1,1}}({m}): {c} vs {expected}"))?;
        }
    }
    Ok("figure statistics and thin regions".into())
}

fn zn() -> Outcome {
    let reports = suite_clean(Suite::ZnFactorization)?;
    Ok(tally(&reports))
}

fn vw_and_blocks() -> Outcome {
    let vw = suite_clean(Suite::VWReduction)?;
    no_skips(&vw)?;
    let blocks = suite_clean(Suite::BlockFactorizations)?;
    no_skips(&blocks)?;
    Ok(format!("vw {}; blocks {}", tally(&vw), tally(&blocks)))
}

fn watson() -> Outcome {
    let reports = suite_clean(Suite::Watson)?;
    no_skips(&reports)?;
    let mut per_branch: BTreeMap<(String, u32, u32), usize> = BTreeMap::new();
    for r in reports.iter().filter(|r| r.status == Status::Pass) {
        let p = |k: &str| r.case_params[k].parse::<u32>().unwrap() % 2;
        *per_branch.entry((r.case_params["variant"].clone(), p("a"), p("M"))).or_default() += 1;
    }
    ensure(per_branch.len() == 12, || format!("branches covered: {}", per_branch.len()))?;
    if let Some((branch, n)) = per_branch.iter().find(|(_, &n)| n < 5) {
        return Err(format!("branch {branch:?} has only {n} samples"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut zeros = 0;
    for a in [1u32, 3] {
        for big_m in [1u32, 3, 5] {
            let mut found = 0;
            for _ in 0..1000 {
                if found == 5 {
                    break;
                }
                let (b, c) = (sample_rational(&mut rng), sample_rational(&mut rng));
                if let Ok((l, r)) = watson_pair(WatsonVariant::W1, a, big_m, &b, &c) {
                    let zero = Rational::from_integer(0.into());
                    ensure(l == zero && r == zero, || format!("W1 a={a} M={big_m} B={b} C={c}: {l} vs {r}"))?;
                    found += 1;
                }
            }
            ensure(found == 5, || format!("W1 a={a} M={big_m}: only {found} admissible draws"))?;
            zeros += found;
        }
    }
    Ok(format!("{}; {zeros} both-odd W1 draws vanish", tally(&reports)))
}

fn hypergeom() -> Outcome {
    let reports = suite_clean(Suite::HypergeomIdentities)?;
    no_skips(&reports)?;
    let mut per_id: BTreeMap<String, usize> = BTreeMap::new();
    for r in reports.iter().filter(|r| r.status == Status::Pass) {
        *per_id.entry(r.case_params["identity"].clone()).or_default() += 1;
    }
    ensure(per_id.len() == 5 && per_id.values().all(|&n| n >= 200), || format!("{per_id:?}"))?;
    Ok(tally(&reports))
}

fn conjectures() -> Outcome {
    let reports = suite_clean(Suite::Conjectures)?;
    let even_passes = reports
        .iter()
        .filter(|r| r.status == Status::Pass && r.case_params["m"].parse::<u32>().unwrap() % 2 == 0)
        .count();
    ensure(even_passes > 0, || "no even-m comparisons".into())?;
    if let Some(r) = reports.iter().find(|r| r.status == Status::Reported && r.case_params["m"].parse::<u32>().unwrap() % 2 == 0) {
        return Err(format!("even m reported instead of compared: {:?}", r.case_params));
    }
    Ok(tally(&reports))
}

fn polynomiality() -> Outcome {
    let reports = suite_clean(Suite::Polynomiality)?;
    no_skips(&reports)?;
    Ok(tally(&reports))
}

fn asymptotics() -> Outcome {
    let t = Instant::now();
    let (k, rows) = asymptotic_table(1, 1, 1, 1, &[4, 8, 16], 50).map_err(|e| e.to_string())?;
    let dev: Vec<f64> = rows.iter().map(|r| r.deviation.to_f64().value().abs()).collect();
    ensure(dev.windows(2).all(|w| w[1] < w[0]), || format!("deviations {dev:?}"))?;
    ensure(dev[2] < 0.1, || format!("deviation at n=16 is {}", dev[2]))?;
    let reports = suite_clean(Suite::Asymptotics)?;
    no_skips(&reports)?;
    within(t, Duration::from_secs(60))?;
    Ok(format!("k = {:.12}, deviations {dev:.4?}", k.to_f64().value()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("triangle: oracle = determinant = formula", triangle),
        ("box specialization", macmahon),
        ("root-of-unity determinants", omega_determinants),
        ("cyclic weighted counts", cyclic),
        ("n6-weighted cyclic count", case10),
        ("pinned statistics and thin regions", pinned),
        ("Z_n factorization and factorial determinant", zn),
        ("V/W reduction and block factorizations", vw_and_blocks),
        ("Watson-type multiple sums", watson),
        ("hypergeometric identities", hypergeom),
        ("conjecture sweeps", conjectures),
        ("polynomiality in m", polynomiality),
        ("asymptotic constant", asymptotics),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let spent = t.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({spent:.2?}): {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name} ({spent:.2?}): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
