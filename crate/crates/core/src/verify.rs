//! Named verification suites. Each suite expands its bounds into a fixed,
//! ordered list of cases, runs them (in parallel when a pool is available)
//! and returns one [`VerificationReport`] per case in generation order.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use dashu_float::DBig;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{binomial, int, CycloElement, CycloRing, ExactValue, Rational};
use crate::formulas::{
    asymptotic_k, conjecture_rhs, count_cored_formula, lemma_rhs, log_ratio, macmahon_box, rhs_case10,
    rhs_omega_det, watson_pair, ConjectureId, FormulaId, OmegaCase, WatsonVariant, DEFAULT_PRECISION,
};
use crate::hypergeom::{identity_pair, qbinom_neg1, sample_identity_params, sample_rational, IdentityId};
use crate::lgv::{
    build_B, build_VW, build_cored_matrix, build_n6_matrix, build_omega_shift, cored_det_transform,
    laplace_two_block, th10_pair, zn_factor_pair, ExactMatrix,
};
use crate::tilings::{
    all_tilings, build_region, cell_cap, count_cyclic_real, count_weighted, count_weighted_with_cap, m1,
    tiling_to_plane_partition, CoredHexagon, Weight,
};

/// Attempts allowed when drawing random parameters that avoid poles.
pub const SAMPLE_BUDGET: usize = 1000;

/// The verification suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Suite {
    TilingsVsFormula,
    DetsVsFormulas,
    CyclicWeights,
    Case10,
    ZnFactorization,
    VWReduction,
    Watson,
    HypergeomIdentities,
    Conjectures,
    Polynomiality,
    Asymptotics,
    PrefactorIdentity,
    BlockFactorizations,
}

/// The lattice-path matrix builders, tracked for coverage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Builder {
    CoredMatrix,
    B,
    OmegaShift,
    N6Matrix,
    CoredDetTransform,
    LaplaceTwoBlock,
    Zn,
    ZnFactorPair,
    VW,
    Th10Pair,
}

impl Builder {
    pub const ALL: [Builder; 10] = [
        Builder::CoredMatrix,
        Builder::B,
        Builder::OmegaShift,
        Builder::N6Matrix,
        Builder::CoredDetTransform,
        Builder::LaplaceTwoBlock,
        Builder::Zn,
        Builder::ZnFactorPair,
        Builder::VW,
        Builder::Th10Pair,
    ];
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::TilingsVsFormula,
        Suite::DetsVsFormulas,
        Suite::CyclicWeights,
        Suite::Case10,
        Suite::ZnFactorization,
        Suite::VWReduction,
        Suite::Watson,
        Suite::HypergeomIdentities,
        Suite::Conjectures,
        Suite::Polynomiality,
        Suite::Asymptotics,
        Suite::PrefactorIdentity,
        Suite::BlockFactorizations,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TilingsVsFormula => "tilings-vs-formula",
            Suite::DetsVsFormulas => "dets-vs-formulas",
            Suite::CyclicWeights => "cyclic-weights",
            Suite::Case10 => "case10",
            Suite::ZnFactorization => "zn-factorization",
            Suite::VWReduction => "vw-reduction",
            Suite::Watson => "watson",
            Suite::HypergeomIdentities => "hypergeom-identities",
            Suite::Conjectures => "conjectures",
            Suite::Polynomiality => "polynomiality",
            Suite::Asymptotics => "asymptotics",
            Suite::PrefactorIdentity => "prefactor-identity",
            Suite::BlockFactorizations => "block-factorizations",
        }
    }

    /// The closed forms and matrix builders the suite exercises.
    pub fn coverage(self) -> (&'static [FormulaId], &'static [Builder]) {
        use FormulaId as F;
        match self {
            Suite::TilingsVsFormula => {
                (&[F::Enum, F::Shifted, F::SignedEnum, F::SignedShifted], &[Builder::CoredMatrix])
            }
            Suite::DetsVsFormulas => (
                &[F::Box, F::Enum, F::Andrews, F::Zare1, F::Om3, F::Om6],
                &[Builder::B, Builder::OmegaShift],
            ),
            Suite::CyclicWeights => (&[F::Andrews, F::Zare1, F::Om3, F::Om6], &[]),
            Suite::Case10 => (&[F::Case10], &[Builder::N6Matrix]),
            Suite::ZnFactorization => (&[], &[Builder::Zn, Builder::ZnFactorPair, Builder::Th10Pair]),
            Suite::VWReduction => (&[], &[Builder::VW, Builder::B]),
            Suite::Watson => (&[F::WatsonLHS, F::WatsonRHS], &[]),
            Suite::HypergeomIdentities => (&[], &[]),
            Suite::Conjectures => (&[F::Conjecture1, F::Conjecture2], &[Builder::CoredMatrix]),
            Suite::Polynomiality => (&[], &[]),
            Suite::Asymptotics => (&[F::AsymptoticK, F::Enum], &[]),
            Suite::PrefactorIdentity => (
                &[F::LemmaRHS],
                &[Builder::CoredDetTransform, Builder::CoredMatrix, Builder::LaplaceTwoBlock],
            ),
            Suite::BlockFactorizations => (&[F::Andrews, F::Zare1, F::Om3, F::Om6], &[Builder::B]),
        }
    }

    /// Bounds used when the caller leaves a field unset.
    pub fn default_bounds(self) -> Bounds {
        let b = |a: u32, m: u32, samples: usize| Bounds { max_a: Some(a), max_m: Some(m), samples: Some(samples) };
        match self {
            Suite::TilingsVsFormula => b(3, 2, 0),
            Suite::DetsVsFormulas => b(8, 10, 0),
            Suite::CyclicWeights => b(4, 3, 0),
            Suite::Case10 => b(4, 3, 0),
            Suite::ZnFactorization => b(6, 4, 5),
            Suite::VWReduction => b(5, 6, 0),
            Suite::Watson => b(3, 6, 5),
            Suite::HypergeomIdentities => b(0, 0, 200),
            Suite::Conjectures => b(4, 4, 0),
            Suite::Polynomiality => b(0, 8, 0),
            Suite::Asymptotics => b(0, 0, 0),
            Suite::PrefactorIdentity => b(4, 3, 0),
            Suite::BlockFactorizations => b(6, 8, 0),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    /// Accepts the kebab-case name or the variant name, case-insensitively.
    fn from_str(s: &str) -> Result<Self> {
        let key = |x: &str| x.to_ascii_lowercase().replace(['-', '_'], "");
        let wanted = key(s);
        Suite::ALL
            .into_iter()
            .find(|suite| key(suite.name()) == wanted)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
                Error::domain(format!("unknown suite {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

/// The suite list, after checking that together the suites exercise every
/// closed form and every matrix builder.
pub fn suite_list() -> Vec<Suite> {
    let suites = Suite::ALL.to_vec();
    for id in FormulaId::ALL {
        assert!(
            suites.iter().any(|s| s.coverage().0.contains(&id)),
            "no suite exercises formula {id}"
        );
    }
    for b in Builder::ALL {
        assert!(suites.iter().any(|s| s.coverage().1.contains(&b)), "no suite exercises builder {b:?}");
    }
    suites
}

/// Sweep limits. What `max_a` and `max_m` bound depends on the suite (see
/// [`run_suite`]); `samples` is the number of random draws per cell.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub max_a: Option<u32>,
    pub max_m: Option<u32>,
    pub samples: Option<usize>,
}

impl Bounds {
    fn resolve(&self, suite: Suite) -> (u32, u32, usize) {
        let d = suite.default_bounds();
        (
            self.max_a.or(d.max_a).unwrap_or(0),
            self.max_m.or(d.max_m).unwrap_or(0),
            self.samples.or(d.samples).unwrap_or(0),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The case could not be decided (resource cap, formula undefined, no
    /// admissible sample). Never counted as a pass.
    Skip,
    /// Informational value with no claim attached.
    Reported,
}

/// How `lhs` and `rhs` are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Equal,
    #[serde(rename = "<")]
    Less,
}

/// The outcome of one case.
///
/// For `relation = "="`, `equal` is true iff `lhs` and `rhs` parse to the
/// same exact value. For `relation = "<"` (the asymptotic envelope checks),
/// `equal` records whether `lhs < rhs` holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub case_params: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
    pub relation: Relation,
    pub equal: bool,
    pub status: Status,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    /// The report with `elapsed_ms` cleared, which makes runs comparable
    /// byte for byte.
    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = 0;
        self
    }
}

/// What a case computed.
enum Check {
    Equal(ExactValue, ExactValue),
    Less(DBig, DBig),
    Reported(ExactValue, ExactValue),
    Skip(String),
}

type CaseFn = Box<dyn Fn() -> Result<Check> + Send + Sync>;

struct Case {
    params: BTreeMap<String, String>,
    run: CaseFn,
}

fn case(params: &[(&str, String)], run: impl Fn() -> Result<Check> + Send + Sync + 'static) -> Case {
    Case {
        params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        run: Box::new(run),
    }
}

fn eq(lhs: impl Into<ExactValue>, rhs: impl Into<ExactValue>) -> Result<Check> {
    Ok(Check::Equal(lhs.into(), rhs.into()))
}

fn execute(suite: Suite, c: &Case) -> VerificationReport {
    let start = Instant::now();
    let outcome = (c.run)();
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let mut report = VerificationReport {
        suite: suite.name().to_string(),
        case_params: c.params.clone(),
        lhs: String::new(),
        rhs: String::new(),
        relation: Relation::Equal,
        equal: false,
        status: Status::Fail,
        note: String::new(),
        elapsed_ms,
    };
    match outcome {
        Ok(Check::Equal(l, r)) => {
            report.equal = l == r;
            report.status = if report.equal { Status::Pass } else { Status::Fail };
            report.lhs = l.to_string();
            report.rhs = r.to_string();
        }
        Ok(Check::Less(l, r)) => {
            report.relation = Relation::Less;
            report.equal = l < r;
            report.status = if report.equal { Status::Pass } else { Status::Fail };
            report.lhs = l.to_string();
            report.rhs = r.to_string();
        }
        Ok(Check::Reported(l, r)) => {
            report.equal = l == r;
            report.status = Status::Reported;
            report.lhs = l.to_string();
            report.rhs = r.to_string();
        }
        Ok(Check::Skip(why)) => {
            report.status = Status::Skip;
            report.note = why;
        }
        Err(e @ Error::Resource { .. }) => {
            report.status = Status::Skip;
            report.note = e.to_string();
        }
        Err(e) => report.note = e.to_string(),
    }
    report
}

/// Runs a suite on the current rayon pool.
///
/// Bounds per suite (defaults in parentheses):
/// - `tilings-vs-formula`: `a, b, c ≤ max_a` (3), `m ≤ max_m` (2).
/// - `dets-vs-formulas`: `a ≤ max_a` (8), `m ≤ max_m` (10); the box sweep
///   runs over `a, b, c ≤ min(max_a, 6)`.
/// - `cyclic-weights`, `case10`: `a ≤ max_a` (4), `m ≤ max_m` (3).
/// - `zn-factorization`: `n ≤ max_a` (6) with `samples` (5) random `(x, μ)`;
///   the factorial determinant runs over `n ≤ min(max_a, 4)`, `x, y ≤ max_m` (4).
/// - `vw-reduction`: `n ≤ max_a` (5), even `m ≤ max_m` (6).
/// - `watson`: `a ≤ max_a` (3), `M ≤ max_m` (6), `samples` (5) per `(a, M)`.
/// - `hypergeom-identities`: `samples` (200) per identity.
/// - `conjectures`: `a, b, c ≤ max_a` (4), `m ≤ max_m` (4).
/// - `polynomiality`: degrees searched up to `max_m` (8).
/// - `asymptotics`: fixed tuples `(1,1,1,0)`, `(1,1,1,1)` at `n ∈ {4, 8, 16}`.
/// - `prefactor-identity`: `a, b, c ≤ max_a` (4), `m ≤ max_m` (3).
/// - `block-factorizations`: `a ≤ max_a` (6), `m ≤ max_m` (8).
pub fn run_suite(suite: Suite, bounds: &Bounds, seed: u64) -> Vec<VerificationReport> {
    let cases = build_cases(suite, bounds, seed);
    cases.par_iter().map(|c| execute(suite, c)).collect()
}

/// [`run_suite`] on a dedicated pool of `jobs` threads.
pub fn run_suite_with_jobs(suite: Suite, bounds: &Bounds, seed: u64, jobs: usize) -> Result<Vec<VerificationReport>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::domain(format!("cannot start {jobs} worker threads: {e}")))?;
    Ok(pool.install(|| run_suite(suite, bounds, seed)))
}

/// A suite fails iff some report has status `fail`.
pub fn suite_failed(reports: &[VerificationReport]) -> bool {
    reports.iter().any(|r| r.status == Status::Fail)
}

/// Writes one JSON object per line.
pub fn write_jsonl(mut out: impl Write, reports: &[VerificationReport]) -> Result<()> {
    for r in reports {
        let line = serde_json::to_string(r).map_err(|e| Error::Io(e.to_string()))?;
        writeln!(out, "{line}")?;
    }
    Ok(())
}

/// Per-suite totals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub reported: usize,
}

pub fn summarize(suite: Suite, reports: &[VerificationReport]) -> SuiteSummary {
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    SuiteSummary {
        suite: suite.name().to_string(),
        total: reports.len(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skip),
        reported: count(Status::Reported),
    }
}

/// CSV with header `suite,total,passed,failed,skipped,reported`.
pub fn write_summary_csv(out: impl Write, summaries: &[SuiteSummary]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for s in summaries {
        w.serialize(s).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

/// Random generator for case `index`: one ChaCha stream per case, so the
/// draws do not depend on execution order.
fn case_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn build_cases(suite: Suite, bounds: &Bounds, seed: u64) -> Vec<Case> {
    let (max_a, max_m, samples) = bounds.resolve(suite);
    match suite {
        Suite::TilingsVsFormula => tilings_vs_formula(max_a, max_m),
        Suite::DetsVsFormulas => dets_vs_formulas(max_a, max_m),
        Suite::CyclicWeights => cyclic_weights(max_a, max_m),
        Suite::Case10 => case10(max_a, max_m),
        Suite::ZnFactorization => zn_factorization(max_a, max_m, samples, seed),
        Suite::VWReduction => vw_reduction(max_a, max_m),
        Suite::Watson => watson(max_a, max_m, samples, seed),
        Suite::HypergeomIdentities => hypergeom_identities(samples, seed),
        Suite::Conjectures => conjectures(max_a, max_m),
        Suite::Polynomiality => polynomiality(max_m),
        Suite::Asymptotics => asymptotics(),
        Suite::PrefactorIdentity => prefactor_identity(max_a, max_m),
        Suite::BlockFactorizations => block_factorizations(max_a, max_m),
    }
}

fn s(x: impl ToString) -> String {
    x.to_string()
}

fn abcm(a: u32, b: u32, c: u32, m: u32) -> Vec<(&'static str, String)> {
    vec![("a", s(a)), ("b", s(b)), ("c", s(c)), ("m", s(m))]
}

fn with(mut p: Vec<(&'static str, String)>, k: &'static str, v: impl ToString) -> Vec<(&'static str, String)> {
    p.push((k, v.to_string()));
    p
}

/// `ε` for the unsigned/signed count of `C_{a,b,c}(m)` after normalization.
fn count_epsilon(h: &CoredHexagon) -> Rational {
    if (h.a + h.b).is_multiple_of(2) {
        int(0)
    } else {
        Rational::new(1.into(), 2.into())
    }
}

fn oracle_count(h: &CoredHexagon, signed: bool) -> Result<BigInt> {
    let w = if signed { Weight::MinusOneN } else { Weight::One };
    Ok(count_weighted(h, w)?.c0.to_integer())
}

fn tilings_vs_formula(max_a: u32, max_m: u32) -> Vec<Case> {
    let mut out = Vec::new();
    for a in 0..=max_a {
        for b in 0..=max_a {
            for c in 0..=max_a {
                for m in 0..=max_m {
                    let h = CoredHexagon::new(a, b, c, m);
                    let signed = m % 2 == 1;
                    let p = with(abcm(a, b, c, m), "weight", if signed { "minus-one" } else { "one" });
                    out.push(case(&with(p.clone(), "check", "oracle=determinant"), move || {
                        let d = build_cored_matrix(h.a, h.b, h.c, h.m, &count_epsilon(&h))?.det()?;
                        eq(oracle_count(&h, signed)?, d)
                    }));
                    out.push(case(&with(p.clone(), "check", "determinant=formula"), move || {
                        let d = build_cored_matrix(h.a, h.b, h.c, h.m, &count_epsilon(&h))?.det()?;
                        eq(d, count_cored_formula(&h, signed)?)
                    }));
                    if h.relabeling == crate::tilings::Relabeling::Identity && !(a == b && b == c) {
                        // the same region read with its side list rotated
                        out.push(case(&with(p, "check", "rotated-labeling"), move || {
                            let rotated = CoredHexagon::new(b, c, a, m);
                            eq(oracle_count(&h, false)?, count_cored_formula(&rotated, false)?)
                        }));
                    }
                }
            }
        }
    }
    out
}

fn dets_vs_formulas(max_a: u32, max_m: u32) -> Vec<Case> {
    let mut out = Vec::new();
    for a in 0..=max_a {
        for m in 0..=max_m {
            for w in OmegaCase::ALL {
                let p = vec![("a", s(a)), ("m", s(m)), ("omega", s(w.name()))];
                out.push(case(&p, move || {
                    let d = match w {
                        OmegaCase::One | OmegaCase::MinusOne => {
                            build_B(a as usize, m as i64).add_scalar_identity(&w.omega())?.det()?
                        }
                        OmegaCase::Third | OmegaCase::Sixth => {
                            let omega = w.omega().to_cyclo(cyclo_ring(w))?;
                            build_omega_shift(a as usize, m as i64, &omega).det()?
                        }
                    };
                    eq(d, rhs_omega_det(a, m, w)?)
                }));
            }
        }
    }
    let top = max_a.min(6);
    for a in 0..=top {
        for b in 0..=top {
            for c in 0..=top {
                let p = with(abcm(a, b, c, 0), "check", "box");
                out.push(case(&p, move || eq(count_cored_formula(&CoredHexagon::new(a, b, c, 0), false)?, macmahon_box(a, b, c))));
            }
        }
    }
    out
}

fn cyclo_ring(w: OmegaCase) -> CycloRing {
    match w {
        OmegaCase::Sixth => CycloRing::Sixth,
        _ => CycloRing::Third,
    }
}

fn cyclic_weights(max_a: u32, max_m: u32) -> Vec<Case> {
    let mut out = Vec::new();
    for a in 0..=max_a {
        for m in 0..=max_m {
            for w in OmegaCase::ALL {
                let p = vec![("a", s(a)), ("m", s(m)), ("omega", s(w.name()))];
                out.push(case(&p, move || {
                    let h = CoredHexagon::cyclic(a, m);
                    let oracle: ExactValue = match w {
                        OmegaCase::One => count_cyclic_real(&h, false, cell_cap())?.into(),
                        OmegaCase::MinusOne => count_cyclic_real(&h, true, cell_cap())?.into(),
                        OmegaCase::Third => count_weighted(&h, Weight::Omega3N)?.into(),
                        OmegaCase::Sixth => count_weighted(&h, Weight::Omega6N)?.into(),
                    };
                    eq(oracle, rhs_omega_det(a, m, w)?)
                }));
            }
        }
        let p = vec![("a", s(a)), ("m", s(0)), ("check", s("plane-partition-m1-sign"))];
        out.push(case(&p, move || {
            let region = build_region(&CoredHexagon::cyclic(a, 0))?;
            let mut total = BigInt::zero();
            for t in all_tilings(&region, true, cell_cap())? {
                let pp = tiling_to_plane_partition(&t, &region)?;
                total += if m1(&pp).is_multiple_of(2) { 1 } else { -1 };
            }
            eq(total, rhs_omega_det(a, 0, OmegaCase::MinusOne)?)
        }));
    }
    out
}

fn case10(max_a: u32, max_m: u32) -> Vec<Case> {
    let mut out = Vec::new();
    for a in 0..=max_a {
        for m in 0..=max_m {
            let p = vec![("a", s(a)), ("m", s(m))];
            out.push(case(&with(p.clone(), "check", "oracle=determinant"), move || {
                let oracle = count_weighted(&CoredHexagon::cyclic(a, m), Weight::MinusOneN6)?;
                eq(oracle, build_n6_matrix(a as usize, m).det()?)
            }));
            out.push(case(&with(p, "check", "determinant=formula"), move || {
                eq(build_n6_matrix(a as usize, m).det()?, rhs_case10(a, m)?)
            }));
        }
    }
    out
}

fn zn_factorization(max_n: u32, max_xy: u32, samples: usize, seed: u64) -> Vec<Case> {
    let mut out = Vec::new();
    for n in 1..=max_n as usize {
        for k in 0..samples {
            let index = out.len();
            let p = vec![("n", s(n)), ("sample", s(k))];
            out.push(case(&p, move || {
                let mut rng = case_rng(seed, index);
                for _ in 0..SAMPLE_BUDGET {
                    let (x, mu) = (sample_rational(&mut rng), sample_rational(&mut rng));
                    // the left entry is det(build_Zn(n, x, μ))
                    if let Ok((det, product)) = zn_factor_pair(n, &x, &mu) {
                        return Ok(Check::Equal(det, product));
                    }
                }
                Ok(Check::Skip(format!("no admissible (x, mu) in {SAMPLE_BUDGET} draws")))
            }));
        }
    }
    for n in 0..=max_n.min(4) as usize {
        for x in 0..=max_xy as i64 {
            for y in 0..=max_xy as i64 {
                let p = vec![("n", s(n)), ("x", s(x)), ("y", s(y)), ("check", s("factorial-determinant"))];
                out.push(case(&p, move || {
                    if n > 0 && x + y == 0 {
                        // the (0,0) entry would be (x+y−1)! = (−1)!
                        return Ok(Check::Skip(s("matrix undefined: (x+y-1)! at x = y = 0")));
                    }
                    let (l, r) = th10_pair(n, &int(x), &int(y))?;
                    eq(l, r)
                }));
            }
        }
    }
    out
}

/// `ω·V + W` over the ring of `ω`.
fn omega_v_plus_w(v: &ExactMatrix, w: &ExactMatrix, omega: &CycloElement) -> Result<ExactMatrix> {
    let n = v.rows();
    let ring = omega.ring;
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let x = v.get(i, j).to_cyclo(ring)?;
            let y = w.get(i, j).to_cyclo(ring)?;
            entries.push(&(omega * &x) + &y);
        }
    }
    Ok(ExactMatrix::from_cyclo(n, n, ring, |i, j| entries[i * n + j].clone()))
}

fn vw_reduction(max_n: u32, max_m: u32) -> Vec<Case> {
    let mut out = Vec::new();
    for n in 0..=max_n as usize {
        for m in (0..=max_m as i64).step_by(2) {
            for w in [OmegaCase::MinusOne, OmegaCase::Third, OmegaCase::Sixth] {
                let p = vec![("n", s(n)), ("m", s(m)), ("omega", s(w.name()))];
                out.push(case(&p, move || {
                    let omega = w.omega().to_cyclo(cyclo_ring(w))?;
                    let (v, wm) = build_VW(n, m);
                    let lhs = omega_v_plus_w(&v, &wm, &omega)?.det()?;
                    eq(lhs, build_omega_shift(n, m, &omega).det()?)
                }));
            }
        }
    }
    out
}

fn watson(max_a: u32, max_m: u32, samples: usize, seed: u64) -> Vec<Case> {
    let mut out = Vec::new();
    for variant in WatsonVariant::ALL {
        for a in 1..=max_a {
            for big_m in 0..=max_m {
                for k in 0..samples {
                    let index = out.len();
                    let p = vec![
                        ("variant", s(variant.name())),
                        ("a", s(a)),
                        ("M", s(big_m)),
                        ("sample", s(k)),
                    ];
                    out.push(case(&p, move || {
                        let mut rng = case_rng(seed, index);
                        for _ in 0..SAMPLE_BUDGET {
                            let (b, c) = (sample_rational(&mut rng), sample_rational(&mut rng));
                            if let Ok((l, r)) = watson_pair(variant, a, big_m, &b, &c) {
                                return eq(l, r);
                            }
                        }
                        Ok(Check::Skip(format!("no admissible (B, C) in {SAMPLE_BUDGET} draws")))
                    }));
                }
            }
        }
    }
    out
}

/// Coefficient of `z^k` in `(1+z)^⌈n/2⌉ (1−z)^⌊n/2⌋`, which is
/// `Π_{i<n} (1 + q^i z)` at `q = −1`.
fn q_minus_one_product_coefficient(n: u64, k: u64) -> BigInt {
    let (up, down) = (n.div_ceil(2), n / 2);
    (0..=k)
        .map(|j| {
            let sign = if (k - j) % 2 == 1 { -BigInt::one() } else { BigInt::one() };
            binomial(up as i64, j as i64) * binomial(down as i64, (k - j) as i64) * sign
        })
        .sum()
}

fn hypergeom_identities(samples: usize, seed: u64) -> Vec<Case> {
    let mut out = Vec::new();
    for id in IdentityId::ALL {
        for k in 0..samples {
            let index = out.len();
            let p = vec![("identity", format!("{id:?}")), ("sample", s(k))];
            out.push(case(&p, move || {
                let mut rng = case_rng(seed, index);
                match sample_identity_params(id, &mut rng, SAMPLE_BUDGET) {
                    Some((params, _)) => {
                        let (l, r) = identity_pair(id, &params)?;
                        eq(l, r)
                    }
                    None => Ok(Check::Skip(format!("no admissible parameters in {SAMPLE_BUDGET} draws"))),
                }
            }));
        }
    }
    for k in 0..samples {
        let index = out.len();
        let p = vec![("identity", s("QBinomialMinusOne")), ("sample", s(k))];
        out.push(case(&p, move || {
            use rand::Rng;
            let mut rng = case_rng(seed, index);
            let n = rng.gen_range(0u64..=24);
            let kk = rng.gen_range(0u64..=n + 1);
            // Π(1 + q^i z) = Σ q^{k(k−1)/2} [n choose k]_q z^k
            let tri = kk * kk.saturating_sub(1) / 2;
            let mut extracted = q_minus_one_product_coefficient(n, kk);
            if tri % 2 == 1 {
                extracted = -extracted;
            }
            eq(qbinom_neg1(n, kk), extracted)
        }));
    }
    out
}

fn conjectures(max_a: u32, max_m: u32) -> Vec<Case> {
    let mut out = Vec::new();
    for which in [ConjectureId::One, ConjectureId::ThreeHalves] {
        for a in 0..=max_a {
            for b in 0..=max_a {
                for c in 0..=max_a {
                    let same = a % 2 == b % 2 && b % 2 == c % 2;
                    let admissible = match which {
                        ConjectureId::One => same,
                        ConjectureId::ThreeHalves => !same && b % 2 == c % 2,
                    };
                    if !admissible {
                        continue;
                    }
                    for m in 0..=max_m {
                        let p = with(with(abcm(a, b, c, m), "which", which.name()), "status", "conjecture");
                        out.push(case(&p, move || {
                            let d = build_cored_matrix(a, b, c, m, &which.epsilon())?.det()?;
                            let rhs = match conjecture_rhs(which, a, b, c, m) {
                                Ok(v) => v,
                                Err(Error::Domain(why)) => {
                                    return Ok(Check::Skip(format!("formula undefined here: {why}")))
                                }
                                Err(e) => return Err(e),
                            };
                            if m % 2 == 0 {
                                eq(d, rhs)
                            } else {
                                Ok(Check::Reported(d, rhs.into()))
                            }
                        }));
                    }
                }
            }
        }
    }
    out
}

/// Tuples whose tiling counts are tested for polynomiality in `m`.
pub const POLYNOMIALITY_TUPLES: [(u32, u32, u32); 3] = [(1, 1, 1), (2, 2, 2), (1, 3, 1)];

fn oracle_in_m(a: u32, b: u32, c: u32, m: u32) -> Result<BigInt> {
    Ok(count_weighted_with_cap(&CoredHexagon::new(a, b, c, m), Weight::One, cell_cap())?.c0.to_integer())
}

/// Whether the `(len−1)`-th finite difference of `values` is zero.
fn top_difference_vanishes(values: &[BigInt]) -> bool {
    let mut diff = values.to_vec();
    while diff.len() > 1 {
        diff = diff.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    diff.first().is_some_and(|d| d.is_zero())
}

/// Smallest `D ≤ max_degree` whose `(D+1)`-th difference over the first
/// `D + 2` values vanishes.
#[cfg(test)]
fn detect_degree(values: &[BigInt], max_degree: usize) -> Option<usize> {
    (0..=max_degree).find(|&d| values.len() >= d + 2 && top_difference_vanishes(&values[..d + 2]))
}

/// Value at `x` of the polynomial of degree `≤ values.len() − 1` through
/// `(i, values[i])`, by Lagrange interpolation.
fn interpolate(values: &[BigInt], x: i64) -> Rational {
    let n = values.len() as i64;
    let mut total = Rational::zero();
    for (i, y) in values.iter().enumerate() {
        let i = i as i64;
        let mut term = Rational::from_integer(y.clone());
        for j in 0..n {
            if j != i {
                term = term * int(x - j) / int(i - j);
            }
        }
        total += term;
    }
    total
}

fn polynomiality(max_degree: u32) -> Vec<Case> {
    let mut out = Vec::new();
    for (a, b, c) in POLYNOMIALITY_TUPLES {
        for ahead in 0..2usize {
            let p = with(vec![("a", s(a)), ("b", s(b)), ("c", s(c))], "prediction", ahead + 1);
            out.push(case(&p, move || {
                // oracle counts for m = 0, 1, ..., computed only as far as needed
                let mut values = Vec::new();
                for d in 0..=max_degree as usize {
                    while values.len() < d + 2 {
                        values.push(oracle_in_m(a, b, c, values.len() as u32)?);
                    }
                    if top_difference_vanishes(&values[..d + 2]) {
                        let target = (d + 2 + ahead) as u32;
                        return eq(interpolate(&values[..=d], target as i64), oracle_in_m(a, b, c, target)?);
                    }
                }
                Ok(Check::Skip(format!("differences did not vanish up to degree {max_degree}")))
            }));
        }
    }
    out
}

/// Points `n` at which the asymptotic envelope is checked.
pub const ASYMPTOTIC_NS: [u32; 3] = [4, 8, 16];

/// Bound on `|log L / n² − k|` at the largest `n`.
pub const ASYMPTOTIC_ENVELOPE: f64 = 0.1;

fn abs(x: DBig) -> DBig {
    if x < DBig::ZERO {
        -x
    } else {
        x
    }
}

fn deviation(a: u32, b: u32, c: u32, m: u32, n: u32, k: &DBig) -> Result<DBig> {
    let h = CoredHexagon::new(a * n, b * n, c * n, m * n);
    let count = count_cored_formula(&h, false)?.to_integer();
    Ok(abs(log_ratio(&count, n, DEFAULT_PRECISION)? - k))
}

fn asymptotics() -> Vec<Case> {
    let mut out = Vec::new();
    for (a, b, c, m) in [(1, 1, 1, 0), (1, 1, 1, 1)] {
        for pair in ASYMPTOTIC_NS.windows(2) {
            let (n0, n1) = (pair[0], pair[1]);
            let p = with(with(abcm(a, b, c, m), "n", n1), "check", format!("deviation below n={n0}"));
            out.push(case(&p, move || {
                let k = asymptotic_k(a, b, c, m, DEFAULT_PRECISION)?;
                Ok(Check::Less(deviation(a, b, c, m, n1, &k)?, deviation(a, b, c, m, n0, &k)?))
            }));
        }
        let last = ASYMPTOTIC_NS[ASYMPTOTIC_NS.len() - 1];
        let p = with(with(abcm(a, b, c, m), "n", last), "check", "envelope");
        out.push(case(&p, move || {
            let k = asymptotic_k(a, b, c, m, DEFAULT_PRECISION)?;
            let bound = DBig::from_str(&ASYMPTOTIC_ENVELOPE.to_string()).expect("decimal literal");
            Ok(Check::Less(deviation(a, b, c, m, last, &k)?, bound))
        }));
        let p = with(abcm(a, b, c, m), "check", "precision-stability");
        out.push(case(&p, move || {
            let lo = asymptotic_k(a, b, c, m, DEFAULT_PRECISION)?;
            let hi = asymptotic_k(a, b, c, m, DEFAULT_PRECISION + 20)?;
            let diff = abs(hi.with_precision(DEFAULT_PRECISION).value() - &lo);
            let tol = abs(lo) * DBig::from_str("1e-30").expect("decimal literal") + DBig::from_str("1e-40").expect("decimal literal");
            Ok(Check::Less(diff, tol))
        }));
    }
    out
}

fn prefactor_identity(max_a: u32, max_m: u32) -> Vec<Case> {
    let mut out = Vec::new();
    for a in 0..=max_a {
        for b in 0..=max_a {
            for c in (b % 2..=max_a).step_by(2) {
                for m in 0..=max_m {
                    let shifted = (a + b) % 2 == 1;
                    let eps = if shifted { Rational::new(1.into(), 2.into()) } else { int(0) };
                    let p = abcm(a, b, c, m);
                    let e = eps.clone();
                    out.push(case(&with(p.clone(), "check", "prefactor*det(D)=det"), move || {
                        let (prefactor, d) = cored_det_transform(a, b, c, m, shifted)?;
                        let raw = build_cored_matrix(a, b, c, m, &e)?.det()?;
                        eq(ExactValue::from(prefactor).checked_mul(&d.det()?)?, raw)
                    }));
                    let e = eps.clone();
                    out.push(case(&with(p.clone(), "check", "prefactor*lemma=det"), move || {
                        let (prefactor, _) = cored_det_transform(a, b, c, m, shifted)?;
                        let raw = build_cored_matrix(a, b, c, m, &e)?.det()?;
                        eq(prefactor * lemma_rhs(a, b, c, m, shifted)?, raw)
                    }));
                    out.push(case(&with(p, "check", "laplace=det"), move || {
                        let raw = build_cored_matrix(a, b, c, m, &eps)?;
                        eq(laplace_two_block(&raw, a as usize)?, raw.det()?)
                    }));
                }
            }
        }
    }
    out
}

fn block_factorizations(max_a: u32, max_m: u32) -> Vec<Case> {
    let mut out = Vec::new();
    for a in 0..=max_a {
        for m in 0..=max_m {
            for (sign, w) in [(1i64, OmegaCase::Third), (-1, OmegaCase::Sixth)] {
                let p = vec![("a", s(a)), ("m", s(m)), ("omega", s(w.name()))];
                out.push(case(&p, move || {
                    let b = build_B(a as usize, m as i64);
                    let real = ExactValue::from(int(sign));
                    let lhs = b.pow(3)?.add_scalar_identity(&real)?.det()?;
                    let linear = b.add_scalar_identity(&real)?.det()?;
                    let omega = w.omega().to_cyclo(cyclo_ring(w))?;
                    let twisted = build_omega_shift(a as usize, m as i64, &omega).det()?.to_cyclo(omega.ring)?;
                    eq(lhs, linear.checked_mul(&ExactValue::from(twisted.norm()))?)
                }));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Bounds {
        Bounds { max_a: Some(2), max_m: Some(2), samples: Some(2) }
    }

    #[test]
    fn registry_covers_everything() {
        assert_eq!(suite_list().len(), 13);
    }

    #[test]
    fn names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
            assert_eq!(format!("{suite:?}").parse::<Suite>().unwrap(), suite);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn runs_are_deterministic() {
        for suite in [Suite::Watson, Suite::ZnFactorization, Suite::HypergeomIdentities] {
            let strip = |v: Vec<VerificationReport>| v.into_iter().map(|r| r.without_timing()).collect::<Vec<_>>();
            let x = strip(run_suite(suite, &small(), 7));
            let y = strip(run_suite_with_jobs(suite, &small(), 7, 1).unwrap());
            assert_eq!(x, y, "{suite}");
            let mut a = Vec::new();
            let mut b = Vec::new();
            write_jsonl(&mut a, &x).unwrap();
            write_jsonl(&mut b, &y).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn different_seeds_draw_different_parameters() {
        let x = run_suite(Suite::Watson, &small(), 1);
        let y = run_suite(Suite::Watson, &small(), 2);
        assert_ne!(
            x.iter().map(|r| &r.lhs).collect::<Vec<_>>(),
            y.iter().map(|r| &r.lhs).collect::<Vec<_>>()
        );
    }

    #[test]
    fn resource_cap_is_a_skip() {
        let h = CoredHexagon::new(6, 6, 6, 6);
        let c = case(&[], move || eq(oracle_count(&h, false)?, int(0)));
        let r = execute(Suite::TilingsVsFormula, &c);
        assert_eq!(r.status, Status::Skip);
        assert!(!r.equal);
    }

    #[test]
    fn domain_errors_fail() {
        let c = case(&[], || Err(Error::domain("broken")));
        let r = execute(Suite::Watson, &c);
        assert_eq!(r.status, Status::Fail);
        assert!(r.note.contains("broken"));
    }

    #[test]
    fn q_minus_one_extraction() {
        for n in 0..=12u64 {
            for k in 0..=n {
                let tri = k * k.saturating_sub(1) / 2;
                let mut e = q_minus_one_product_coefficient(n, k);
                if tri % 2 == 1 {
                    e = -e;
                }
                assert_eq!(qbinom_neg1(n, k), e, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn degree_detection() {
        let v: Vec<BigInt> = (0..8i64).map(|m| BigInt::from(m * m * m + 2)).collect();
        assert_eq!(detect_degree(&v, 6), Some(3));
        assert_eq!(interpolate(&v[..4], 9), int(731));
    }

    #[test]
    fn summary_csv_has_header() {
        let reports = run_suite(Suite::Case10, &small(), 0);
        let mut out = Vec::new();
        write_summary_csv(&mut out, &[summarize(Suite::Case10, &reports)]).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("suite,total,passed,failed,skipped,reported\n"), "{text}");
        assert!(text.contains("case10,18,18,0,0,0"), "{text}");
    }
}
