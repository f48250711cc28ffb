//! The acceptance criteria as functions, shared by `check-all` and the
//! acceptance test target. Every threshold is a named constant here.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use gradus_core::degrees::{main_example, DegreeFunction, DegreeLike, MaxDegree, PropertyReport, SubstitutedWeightedDegree};
use gradus_core::family::{
    extension_scan, instantiate_family, integrality_scan, validate_family, CoeffValue, EtaSource,
    FamilyInstance, FamilySpec,
};
use gradus_core::graded::{new_generator_counts, GeneratorTable, TruncationParams};
use gradus_core::hilbert::{hilbert_basis, verify_ri_generation};
use gradus_core::lifting::SContext;
use gradus_core::parse::parse_poly;
use gradus_core::sample::{sample_rng, PolySampler};
use gradus_core::{contexts, Degree, Poly};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::commands::{failure, property_reports, CliError, FamilyChecks, SAMPLE_DEGREE, SAMPLE_TERMS, SCAN_DEGREE, SCAN_OMEGA};
use crate::frozen::{self, Comparison};

pub const KEY_FORMS: [&str; 4] = ["u", "v", "v^2 - u^5", "v^2 - u^5 - 2*u^-1*v"];
pub const KEY_FORM_VALUES: [i64; 4] = [2, 5, 3, 2];
pub const SCAN_SAMPLES: u64 = 500;
pub const LIFT_SAMPLES: u64 = 100;
pub const PROPERTY_PAIRS: u64 = 500;
pub const EXTENSION_SAMPLES: u64 = 100;
pub const INTEGRALITY_SAMPLES: u64 = 100;
pub const HILBERT_BOUND: u32 = 12;
pub const GENERATION: (u32, u32, u32) = (12, 24, 10);
pub const GROWTH: (u32, u32, u32) = (20, 30, 10);
/// Windows of this many consecutive degrees are checked for generators.
pub const WINDOW: u32 = 5;
/// Windows start, and the finite initial segment of `delta_1` ends, here.
pub const BEYOND: u32 = 5;

/// The second family member: `p = 5`, `f = x^5 + x^-3`, weights `(1, 4)`.
pub fn extra_family() -> FamilySpec {
    FamilySpec {
        p: 5,
        coeffs: [(-3, CoeffValue::Int(1)), (5, CoeffValue::Int(1))].into(),
        w1: 1,
        w2: 4,
    }
}

#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub seed: u64,
    pub generation: TruncationParams,
    pub growth: TruncationParams,
    pub oracle_dir: PathBuf,
}

impl CheckConfig {
    pub fn standard(seed: u64) -> Self {
        let t = |(d, n, dn): (u32, u32, u32)| TruncationParams::new(d, n, dn).expect("valid");
        CheckConfig {
            seed,
            generation: t(GENERATION),
            growth: t(GROWTH),
            oracle_dir: frozen::default_dir(),
        }
    }

    pub fn is_standard_growth(&self) -> bool {
        (self.growth.d_max, self.growth.n, self.growth.delta_n) == GROWTH
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: Value,
}

fn outcome(id: u8, name: &'static str, passed: bool, detail: Value) -> Outcome {
    Outcome { id, name, passed, detail }
}

fn main_instance() -> FamilyInstance {
    instantiate_family(&FamilySpec::main_example()).expect("main example is valid")
}

fn summary(r: &PropertyReport) -> Value {
    json!({
        "count": r.count,
        "semidegree": r.semidegree,
        "p1Violations": r.p1_violations.len(),
        "p2Violations": r.p2_violations.len(),
        "strict": r.strict_subadditivity.len(),
        "firstStrict": r.strict_subadditivity.first(),
        "passed": r.passed(),
    })
}

pub fn key_forms() -> Result<Outcome, CliError> {
    let eta = main_example::eta();
    let uv = contexts::uv();
    let mut values = Vec::new();
    for text in KEY_FORMS {
        let h = parse_poly(text, &uv).map_err(failure)?;
        values.push(eta.degree(&h).map_err(failure)?);
    }
    let last = parse_poly(KEY_FORMS[3], &uv).map_err(failure)?;
    let image = eta.substitute(&last).map_err(failure)?;
    let negative: Vec<String> = image
        .terms()
        .filter(|(m, _)| m.0[0] < 0)
        .map(|(m, c)| format!("({c})*w^{}", m.0[0]))
        .collect();
    let expected: Vec<Degree> = KEY_FORM_VALUES.iter().map(|&v| Degree::Finite(v)).collect();
    let passed = values == expected && !negative.is_empty() && !last.is_polynomial();
    Ok(outcome(
        1,
        "key-form values of eta",
        passed,
        json!({
            "values": values,
            "expected": expected,
            "lastSubstitution": image.to_string(),
            "negativeExponentTerms": negative,
            "lastKeyFormIsPolynomial": last.is_polynomial(),
        }),
    ))
}

pub fn drop_equivalence(seed: u64) -> Result<Outcome, CliError> {
    let mut scans = Vec::new();
    for i in [1, 2] {
        let ctx = SContext::new(i).expect("valid index");
        scans.push(
            ctx.drop_equivalence_scan(SCAN_SAMPLES, SCAN_DEGREE, -SCAN_OMEGA..=SCAN_OMEGA, seed)
                .map_err(failure)?,
        );
    }
    let passed = scans.iter().all(|s| s.passed());
    Ok(outcome(2, "degree drop iff ideal membership", passed, json!({ "scans": scans })))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct LiftFailure {
    i: u8,
    index: u64,
    f: String,
    error: String,
}

pub fn lifting(seed: u64) -> Result<Outcome, CliError> {
    let sampler = PolySampler::new(contexts::xy(), SAMPLE_DEGREE, SAMPLE_TERMS);
    let mut failures = Vec::new();
    for i in [1u8, 2] {
        let ctx = SContext::new(i).expect("valid index");
        let rows: Vec<Option<LiftFailure>> = (0..LIFT_SAMPLES)
            .into_par_iter()
            .map(|k| {
                let f = sampler.sample_nonzero(&mut sample_rng(seed, k));
                let fail = |error: String| {
                    Some(LiftFailure { i, index: k, f: f.to_string(), error })
                };
                let lift = match ctx.descend_lift(&f, None) {
                    Ok(l) => l,
                    Err(e) => return fail(e.to_string()),
                };
                // Re-evaluate rather than trust the lift's own check.
                let image = ctx.apply_pi(&lift).ok();
                let target = ctx.delta().degree(&f).ok();
                if image.as_ref() != Some(&f) {
                    return fail("image differs from f".into());
                }
                if Some(ctx.omega_degree(&lift)) != target {
                    return fail(format!("omega {} != delta {:?}", ctx.omega_degree(&lift), target));
                }
                None
            })
            .collect();
        failures.extend(rows.into_iter().flatten());
    }
    Ok(outcome(
        3,
        "lifting reaches delta_i",
        failures.is_empty(),
        json!({ "samples": LIFT_SAMPLES, "degreeBound": SAMPLE_DEGREE, "failures": failures }),
    ))
}

/// `(y - f_1)(y - f_2)`: the strict witness for `max`.
fn strict_witness(inst: &FamilyInstance) -> Result<(bool, Value), CliError> {
    let xy = contexts::xy();
    let y = Poly::var(&xy, "y").map_err(failure)?;
    let f = &y - inst.delta1.shift();
    let g = &y - inst.delta2.shift();
    let d = &inst.delta;
    let (df, dg, dfg) = (
        d.degree(&f).map_err(failure)?,
        d.degree(&g).map_err(failure)?,
        d.degree(&(&f * &g)).map_err(failure)?,
    );
    Ok((
        dfg < df + dg,
        json!({ "f": f.to_string(), "g": g.to_string(), "deltaF": df, "deltaG": dg, "deltaFG": dfg }),
    ))
}

/// All four reports pass and `max` shows a strict product inequality.
fn property_outcome(
    inst: &FamilyInstance,
    reports: &[(&'static str, PropertyReport)],
) -> Result<(bool, Value), CliError> {
    let (strict, witness) = strict_witness(inst)?;
    let max = &reports[2].1;
    let passed = reports.iter().all(|(_, r)| r.passed())
        && (strict || !max.strict_subadditivity.is_empty());
    let props: serde_json::Map<String, Value> =
        reports.iter().map(|(k, r)| (k.to_string(), summary(r))).collect();
    Ok((passed, json!({ "properties": props, "strictWitness": witness })))
}

pub fn degree_axioms(seed: u64) -> Result<Outcome, CliError> {
    let inst = main_instance();
    let reports = property_reports(&inst, PROPERTY_PAIRS, seed)?;
    let (passed, detail) = property_outcome(&inst, &reports)?;
    Ok(outcome(4, "degree-like axioms", passed, detail))
}

pub fn extension(seed: u64) -> Result<Outcome, CliError> {
    let inst = main_instance();
    let eta = EtaSource::Series(main_example::eta());
    let r = extension_scan(&inst, &eta, EXTENSION_SAMPLES, SAMPLE_DEGREE, seed).map_err(failure)?;
    Ok(outcome(5, "delta_1 and delta_2 extend eta", r.passed(), serde_json::to_value(&r).unwrap()))
}

pub fn generation(cfg: &CheckConfig) -> Result<Outcome, CliError> {
    let (basis, certified, err) = match hilbert_basis(HILBERT_BOUND) {
        Ok(b) => (Some(b), true, None),
        Err(e) => (None, false, Some(e.to_string())),
    };
    let mut detail = json!({ "bound": HILBERT_BOUND, "certified": certified, "error": err });
    let Some(basis) = basis else {
        return Ok(outcome(6, "finite generation of R_i", false, detail));
    };
    let file = frozen::hilbert_file(HILBERT_BOUND);
    let cmp = frozen::compare(&cfg.oracle_dir, &file, &frozen::hilbert_text(HILBERT_BOUND, &basis.elements));
    let mut passed = cmp == Comparison::Match;
    let mut reports = Vec::new();
    for i in [1, 2] {
        let ctx = SContext::new(i).expect("valid index");
        let r = verify_ri_generation(&ctx, cfg.generation, &basis).map_err(failure)?;
        passed &= r.passed();
        reports.push(r);
    }
    detail["basisSize"] = json!(basis.elements.len());
    detail["oracle"] = cmp.to_json(&file);
    detail["generation"] = serde_json::to_value(&reports).unwrap();
    Ok(outcome(6, "finite generation of R_i", passed, detail))
}

/// Window verdicts for the `max` table.
pub fn window_analysis(t: &GeneratorTable) -> (bool, Vec<Value>) {
    let rows = &t.rows;
    let mut ok = true;
    let mut windows = Vec::new();
    for start in (BEYOND + 1)..=t.metadata.d_max {
        let end = start + WINDOW - 1;
        if end > t.metadata.d_max {
            break;
        }
        let slice = &rows[start as usize..=end as usize];
        let stable = slice.iter().all(|r| r.stable_flag);
        let has = slice.iter().any(|r| r.new_generators >= 1);
        if stable {
            ok &= has;
        }
        windows.push(json!({
            "start": start,
            "end": end,
            "status": if stable { "stable" } else { "unstable" },
            "hasGenerator": has,
        }));
    }
    (ok, windows)
}

/// Stable rows of the `delta_1` table past the initial segment with a
/// nonzero count.
pub fn tail_violations(t: &GeneratorTable) -> Vec<u32> {
    t.rows
        .iter()
        .filter(|r| r.d > BEYOND && r.stable_flag && r.new_generators != 0)
        .map(|r| r.d)
        .collect()
}

fn rows_json(t: &GeneratorTable) -> Value {
    json!(t
        .rows
        .iter()
        .map(|r| json!({
            "d": r.d,
            "newGenerators": r.new_generators,
            "newGeneratorsNext": r.new_generators_next,
            "status": if r.stable_flag { "stable" } else { "unstable" },
        }))
        .collect::<Vec<_>>())
}

pub fn generator_growth(cfg: &CheckConfig) -> Result<Outcome, CliError> {
    let inst = main_instance();
    let max = inst.delta_function();
    let d1 = DegreeFunction::Substituted(inst.delta1.clone());
    let tmax = new_generator_counts(&max, cfg.growth, None).map_err(failure)?;
    let td1 = new_generator_counts(&d1, cfg.growth, None).map_err(failure)?;
    let (windows_ok, windows) = window_analysis(&tmax);
    let tail = tail_violations(&td1);
    let mut passed = windows_ok && tail.is_empty();
    let mut oracles = Vec::new();
    for (name, t) in [("max", &tmax), ("delta1", &td1)] {
        let file = frozen::generator_file(name, cfg.growth);
        let cmp = frozen::compare(&cfg.oracle_dir, &file, &frozen::generator_text(t));
        passed &= match cmp {
            Comparison::Match => true,
            Comparison::Absent => !cfg.is_standard_growth(),
            Comparison::Mismatch(_) => false,
        };
        oracles.push(cmp.to_json(&file));
    }
    Ok(outcome(
        7,
        "generator growth",
        passed,
        json!({
            "dMax": cfg.growth.d_max,
            "N": cfg.growth.n,
            "deltaN": cfg.growth.delta_n,
            "max": { "rows": rows_json(&tmax), "windows": windows, "windowsPass": windows_ok },
            "delta1": { "rows": rows_json(&td1), "stableNonzeroBeyondSegment": tail },
            "oracles": oracles,
        }),
    ))
}

pub fn integrality(seed: u64) -> Result<Outcome, CliError> {
    let inst = main_instance();
    let eta = EtaSource::Series(main_example::eta());
    let r = integrality_scan(&inst, &eta, INTEGRALITY_SAMPLES, SAMPLE_DEGREE, seed).map_err(failure)?;
    Ok(outcome(8, "integrality bounds", r.passed(), serde_json::to_value(&r).unwrap()))
}

pub fn family_reproduction(seed: u64) -> Result<Outcome, CliError> {
    let main = main_instance();
    let xy = contexts::xy();
    let shift = |s: &str| parse_poly(s, &xy).expect("literal shift");
    let d1 = SubstitutedWeightedDegree::new(1, 3, shift("x^5 + x^-2")).map_err(failure)?;
    let d2 = SubstitutedWeightedDegree::new(1, 3, shift("-x^5 + x^-2")).map_err(failure)?;
    let max = MaxDegree::new(vec![
        DegreeFunction::Substituted(d1.clone()),
        DegreeFunction::Substituted(d2.clone()),
    ])
    .map_err(failure)?;
    let expected = [
        DegreeFunction::Substituted(d1).to_json(),
        DegreeFunction::Substituted(d2).to_json(),
        DegreeFunction::Max(max).to_json(),
    ];
    let reproduced = main.spec_json() == expected;

    let spec = extra_family();
    let violations = validate_family(&spec);
    let mut detail = json!({
        "mainSpecs": main.spec_json(),
        "mainReproduced": reproduced,
        "extra": spec,
        "extraViolations": violations,
    });
    if !violations.is_empty() {
        return Ok(outcome(9, "family reproduction", false, detail));
    }
    let inst = instantiate_family(&spec).map_err(|v| failure(format!("{v:?}")))?;
    let checks = FamilyChecks::run(&inst, PROPERTY_PAIRS, EXTENSION_SAMPLES, seed)?;
    let (props_ok, props) = property_outcome(&inst, &checks.properties)?;
    detail["extraProperties"] = props;
    detail["extraExtension"] = serde_json::to_value(&checks.extension).unwrap();
    let passed = reproduced && props_ok && checks.extension.passed();
    Ok(outcome(9, "family reproduction", passed, detail))
}

/// Reruns the seeded scans on one thread and compares them with the
/// multi-threaded results already in `done`.
pub fn replay(cfg: &CheckConfig, done: &[Outcome]) -> Result<Outcome, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(failure)?;
    let again = pool.install(|| -> Result<Vec<Outcome>, CliError> {
        Ok(vec![drop_equivalence(cfg.seed)?, extension(cfg.seed)?, integrality(cfg.seed)?])
    })?;
    let mut compared = Vec::new();
    let mut passed = true;
    for o in &again {
        let first = done.iter().find(|d| d.id == o.id);
        let same = first.map(|f| f.detail == o.detail && f.passed == o.passed).unwrap_or(false);
        passed &= same;
        compared.push(json!({ "criterion": o.id, "identical": same }));
    }
    Ok(outcome(
        10,
        "determinism",
        passed,
        json!({ "replayedSingleThreaded": compared }),
    ))
}

fn guarded(id: u8, name: &'static str, r: Result<Outcome, CliError>) -> Outcome {
    r.unwrap_or_else(|e| outcome(id, name, false, json!({ "error": e.to_string() })))
}

/// Runs criteria 1 to 10 in order; wall times are returned separately so
/// the outcomes stay reproducible.
pub fn run_all(cfg: &CheckConfig) -> (Vec<Outcome>, Vec<(u8, Duration)>) {
    let mut out = Vec::new();
    let mut times = Vec::new();
    let mut timed = |id: u8, name: &'static str, f: &dyn Fn() -> Result<Outcome, CliError>| {
        let t = Instant::now();
        let o = guarded(id, name, f());
        times.push((id, t.elapsed()));
        o
    };
    out.push(timed(1, "key-form values of eta", &key_forms));
    out.push(timed(2, "degree drop iff ideal membership", &|| drop_equivalence(cfg.seed)));
    out.push(timed(3, "lifting reaches delta_i", &|| lifting(cfg.seed)));
    out.push(timed(4, "degree-like axioms", &|| degree_axioms(cfg.seed)));
    out.push(timed(5, "delta_1 and delta_2 extend eta", &|| extension(cfg.seed)));
    out.push(timed(6, "finite generation of R_i", &|| generation(cfg)));
    out.push(timed(7, "generator growth", &|| generator_growth(cfg)));
    out.push(timed(8, "integrality bounds", &|| integrality(cfg.seed)));
    out.push(timed(9, "family reproduction", &|| family_reproduction(cfg.seed)));
    let done = out.clone();
    out.push(timed(10, "determinism", &|| replay(cfg, &done)));
    (out, times)
}
