use std::fmt::Display;
use std::path::Path;

use gradus_core::degrees::{check_degree_properties, main_example, DegreeFunction, PropertyReport};
use gradus_core::family::{
    extension_scan, instantiate_family, integrality_scan, DegreeLikeDyn, EtaSource,
    FamilyInstance, FamilySpec,
};
use gradus_core::graded::{intersection_check, new_generator_counts, ColumnOrder, PieceEngine, TruncationParams};
use gradus_core::lifting::SContext;
use gradus_core::parse::parse_poly;
use gradus_core::sample::PolySampler;
use gradus_core::{contexts, Ctx, Poly};
use serde_json::{json, Value};

use crate::args::Func;
use crate::output::{Report, Table};

/// Total degree bound for random polynomials in `Q[x,y]` and `Q[u,v]`.
pub const SAMPLE_DEGREE: u32 = 8;
/// Terms per random polynomial.
pub const SAMPLE_TERMS: usize = 4;
/// Monomials of `S` used by the drop scan have total degree at most this.
pub const SCAN_DEGREE: u32 = 6;
/// The drop scan draws omega-degrees from `-SCAN_OMEGA..=SCAN_OMEGA`.
pub const SCAN_OMEGA: i64 = 20;

#[derive(Debug)]
pub enum CliError {
    /// Bad input: exit 2.
    Usage(String),
    /// A computation failed outright: exit 1.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Failure(m) => write!(f, "error: {m}"),
        }
    }
}

pub fn usage(e: impl Display) -> CliError {
    CliError::Usage(e.to_string())
}

pub fn failure(e: impl Display) -> CliError {
    CliError::Failure(e.to_string())
}

pub fn load_family_spec(path: &Path) -> Result<FamilySpec, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    FamilySpec::from_json(&text).map_err(usage)
}

/// The main example, or the member described by `path`.
pub fn load_family(path: Option<&Path>) -> Result<FamilyInstance, CliError> {
    let spec = match path {
        Some(p) => load_family_spec(p)?,
        None => FamilySpec::main_example(),
    };
    instantiate_family(&spec).map_err(|v| {
        let msgs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        usage(format!("invalid family: {}", msgs.join("; ")))
    })
}

/// Ring and evaluator for `func`. Without a family file `eta` is the
/// Puiseux valuation; with one it is the pullback of `delta_1`.
pub fn evaluator(
    func: Func,
    family: Option<&FamilyInstance>,
) -> Result<(Ctx, Box<dyn DegreeLikeDyn>), CliError> {
    let main;
    let inst = match family {
        Some(f) => f,
        None => {
            main = load_family(None)?;
            &main
        }
    };
    Ok(match func {
        Func::Omega => (contexts::s_ring(), Box::new(main_example::omega())),
        Func::Delta1 => (contexts::xy(), Box::new(inst.delta1.clone())),
        Func::Delta2 => (contexts::xy(), Box::new(inst.delta2.clone())),
        Func::Max => (contexts::xy(), Box::new(inst.delta.clone())),
        Func::Eta if family.is_some() => (contexts::uv(), Box::new(inst.pullback_eta())),
        Func::Eta => (contexts::uv(), Box::new(main_example::eta())),
    })
}

/// A degree function with graded pieces on `Q[x,y]`.
pub fn plane_function(func: Func, inst: &FamilyInstance) -> Result<DegreeFunction, CliError> {
    match func {
        Func::Delta1 => Ok(DegreeFunction::Substituted(inst.delta1.clone())),
        Func::Delta2 => Ok(DegreeFunction::Substituted(inst.delta2.clone())),
        Func::Max => Ok(inst.delta_function()),
        Func::Omega | Func::Eta => Err(usage("graded pieces need --fn delta1, delta2 or max")),
    }
}

fn family_config(path: Option<&Path>) -> Value {
    match path {
        Some(p) => json!(p.display().to_string()),
        None => Value::Null,
    }
}

pub fn degree(func: Func, poly: &str, family_file: Option<&Path>, seed: u64) -> Result<Report, CliError> {
    let family = family_file.map(|p| load_family(Some(p))).transpose()?;
    let (ctx, eval) = evaluator(func, family.as_ref())?;
    let p: Poly = parse_poly(poly, &ctx).map_err(usage)?;
    let value = eval.eval(&p).map_err(failure)?;
    let mut table = Table::new(&["fn", "poly", "value"]);
    table.push(vec![
        serde_json::to_value(func).unwrap().as_str().unwrap().into(),
        p.to_string(),
        value.to_string(),
    ]);
    Ok(Report {
        command: "degree",
        config: json!({ "seed": seed, "fn": func, "poly": poly, "familyFile": family_config(family_file) }),
        result: json!({ "poly": p.to_string(), "value": value }),
        table,
        passed: true,
    })
}

pub fn lift(poly: &str, i: u8, seed: u64) -> Result<Report, CliError> {
    let ctx = SContext::new(i).ok_or_else(|| usage("--i must be 1 or 2"))?;
    let f: Poly = parse_poly(poly, &contexts::xy()).map_err(usage)?;
    if f.is_zero() {
        return Err(usage("the zero polynomial has no lift"));
    }
    let delta = ctx.delta().clone();
    let (lift, passed) = match ctx.descend_lift(&f, None) {
        Ok(lift) => (Some(lift), true),
        Err(gradus_core::error::LiftError::Verification(_)) => (None, false),
        Err(e) => return Err(failure(e)),
    };
    let omega = lift.as_ref().map(|l| ctx.omega_degree(l));
    let delta_f = DegreeLikeDyn::eval(&delta, &f).map_err(failure)?;
    let mut table = Table::new(&["i", "f", "lift", "omega", "delta"]);
    table.push(vec![
        i.to_string(),
        f.to_string(),
        lift.as_ref().map(|l| l.to_string()).unwrap_or_default(),
        omega.map(|d| d.to_string()).unwrap_or_default(),
        delta_f.to_string(),
    ]);
    Ok(Report {
        command: "lift",
        config: json!({ "seed": seed, "poly": poly, "i": i }),
        result: json!({
            "f": f.to_string(),
            "lift": lift.as_ref().map(|l| l.to_string()),
            "omegaOfLift": omega,
            "deltaOfF": delta_f,
            "verified": passed && omega == Some(delta_f),
        }),
        table,
        passed: passed && omega == Some(delta_f),
    })
}

pub fn verify_lemma(samples: u64, only: Option<u8>, seed: u64) -> Result<Report, CliError> {
    let indices: Vec<u8> = match only {
        Some(i) => vec![i],
        None => vec![1, 2],
    };
    let mut table = Table::new(&["i", "count", "members", "strictDrops", "disagreements", "boundViolations"]);
    let mut reports = Vec::new();
    for i in indices {
        let ctx = SContext::new(i).ok_or_else(|| usage("--i must be 1 or 2"))?;
        let r = ctx
            .drop_equivalence_scan(samples, SCAN_DEGREE, -SCAN_OMEGA..=SCAN_OMEGA, seed)
            .map_err(failure)?;
        table.push(vec![
            i.to_string(),
            r.count.to_string(),
            r.members.to_string(),
            r.strict_drops.to_string(),
            r.disagreements.len().to_string(),
            r.bound_violations.len().to_string(),
        ]);
        reports.push(r);
    }
    let passed = reports.iter().all(|r| r.passed());
    let disagreements: usize = reports.iter().map(|r| r.disagreements.len()).sum();
    Ok(Report {
        command: "verify-lemma",
        config: json!({
            "seed": seed,
            "samples": samples,
            "i": only,
            "monomialDegreeBound": SCAN_DEGREE,
            "omegaRange": [-SCAN_OMEGA, SCAN_OMEGA],
        }),
        result: json!({ "disagreements": disagreements, "scans": reports }),
        table,
        passed,
    })
}

pub fn generators(
    func: Func,
    trunc: TruncationParams,
    shuffle: Option<u64>,
    family_file: Option<&Path>,
    seed: u64,
) -> Result<Report, CliError> {
    let inst = load_family(family_file)?;
    let f = plane_function(func, &inst)?;
    let table = new_generator_counts(&f, trunc, shuffle).map_err(failure)?;
    let mut t = Table::new(&["d", "dim", "productSpanDim", "newGenerators", "stableFlag"]);
    for r in &table.rows {
        t.push(vec![
            r.d.to_string(),
            r.dim.to_string(),
            r.product_span_dim.to_string(),
            r.new_generators.to_string(),
            r.stable_flag.to_string(),
        ]);
    }
    Ok(Report {
        command: "generators",
        config: json!({
            "seed": seed,
            "fn": func,
            "dMax": trunc.d_max,
            "N": trunc.n,
            "deltaN": trunc.delta_n,
            "shuffle": shuffle,
            "familyFile": family_config(family_file),
        }),
        result: serde_json::to_value(&table).expect("table serializes"),
        table: t,
        passed: true,
    })
}

pub fn intersect_growth(d_max: u32, n: u32, family_file: Option<&Path>, seed: u64) -> Result<Report, CliError> {
    let inst = load_family(family_file)?;
    let max = inst.delta_function();
    let engines: Vec<PieceEngine> = [
        DegreeFunction::Substituted(inst.delta1.clone()),
        DegreeFunction::Substituted(inst.delta2.clone()),
    ]
    .iter()
    .map(|f| PieceEngine::new(f, ColumnOrder::canonical(n)))
    .collect::<Result<_, _>>()
    .map_err(failure)?;
    let mut t = Table::new(&["d", "dimDelta1", "dimDelta2", "dimMax", "dimIntersection", "equal"]);
    let mut rows = Vec::new();
    let mut passed = true;
    for d in 0..=d_max as i64 {
        let c = intersection_check(&max, d, n).map_err(failure)?;
        let (d1, d2) = (engines[0].piece(d).dim(), engines[1].piece(d).dim());
        let equal = c.dim_max == c.dim_intersection;
        passed &= equal;
        t.push(vec![
            d.to_string(),
            d1.to_string(),
            d2.to_string(),
            c.dim_max.to_string(),
            c.dim_intersection.to_string(),
            equal.to_string(),
        ]);
        rows.push(json!({
            "d": d,
            "dimDelta1": d1,
            "dimDelta2": d2,
            "dimMax": c.dim_max,
            "dimIntersection": c.dim_intersection,
            "equal": equal,
        }));
    }
    Ok(Report {
        command: "intersect-growth",
        config: json!({ "seed": seed, "dMax": d_max, "N": n, "familyFile": family_config(family_file) }),
        result: json!({ "rows": rows }),
        table: t,
        passed,
    })
}

/// Property, extension and integrality checks for one family member.
pub struct FamilyChecks {
    pub properties: Vec<(&'static str, PropertyReport)>,
    pub extension: gradus_core::family::ExtensionReport,
    pub integrality: gradus_core::family::IntegralityScan,
}

/// Axiom reports for `delta1`, `delta2`, `max` and `eta`, in that order.
pub fn property_reports(
    inst: &FamilyInstance,
    pairs: u64,
    seed: u64,
) -> Result<Vec<(&'static str, PropertyReport)>, CliError> {
    let xy = PolySampler::new(contexts::xy(), SAMPLE_DEGREE, SAMPLE_TERMS);
    let uv = PolySampler::new(contexts::uv(), SAMPLE_DEGREE, SAMPLE_TERMS);
    let eta = match EtaSource::for_instance(inst) {
        EtaSource::Series(p) => check_degree_properties(&p, &uv, pairs, seed),
        EtaSource::Pullback => check_degree_properties(&inst.pullback_eta(), &uv, pairs, seed),
    };
    Ok(vec![
        ("delta1", check_degree_properties(&inst.delta1, &xy, pairs, seed).map_err(failure)?),
        ("delta2", check_degree_properties(&inst.delta2, &xy, pairs, seed).map_err(failure)?),
        ("max", check_degree_properties(&inst.delta, &xy, pairs, seed).map_err(failure)?),
        ("eta", eta.map_err(failure)?),
    ])
}

impl FamilyChecks {
    pub fn run(inst: &FamilyInstance, pairs: u64, samples: u64, seed: u64) -> Result<Self, CliError> {
        let eta = EtaSource::for_instance(inst);
        Ok(FamilyChecks {
            properties: property_reports(inst, pairs, seed)?,
            extension: extension_scan(inst, &eta, samples, SAMPLE_DEGREE, seed).map_err(failure)?,
            integrality: integrality_scan(inst, &eta, samples, SAMPLE_DEGREE, seed).map_err(failure)?,
        })
    }

    pub fn passed(&self) -> bool {
        self.properties.iter().all(|(_, r)| r.passed())
            && self.extension.passed()
            && self.integrality.passed()
    }

    pub fn to_json(&self) -> Value {
        let props: serde_json::Map<String, Value> = self
            .properties
            .iter()
            .map(|(k, r)| (k.to_string(), serde_json::to_value(r).expect("serializes")))
            .collect();
        json!({
            "properties": props,
            "extension": self.extension,
            "integrality": self.integrality,
        })
    }
}

pub fn family(samples: u64, family_file: Option<&Path>, seed: u64) -> Result<Report, CliError> {
    let spec = match family_file {
        Some(p) => load_family_spec(p)?,
        None => FamilySpec::main_example(),
    };
    let config = json!({ "seed": seed, "samples": samples, "familyFile": family_config(family_file) });
    let mut t = Table::new(&["check", "passed", "detail"]);
    let inst = match instantiate_family(&spec) {
        Ok(inst) => inst,
        Err(violations) => {
            for v in &violations {
                t.push(vec!["validate".into(), "false".into(), v.to_string()]);
            }
            return Ok(Report {
                command: "family",
                config,
                result: json!({ "spec": spec, "violations": violations }),
                table: t,
                passed: false,
            });
        }
    };
    let checks = FamilyChecks::run(&inst, samples, samples, seed)?;
    for (name, r) in &checks.properties {
        t.push(vec![
            format!("properties:{name}"),
            r.passed().to_string(),
            format!("strict={}", r.strict_subadditivity.len()),
        ]);
    }
    t.push(vec![
        "extension".into(),
        checks.extension.passed().to_string(),
        format!("eta={}", checks.extension.eta_source),
    ]);
    t.push(vec![
        "integrality".into(),
        checks.integrality.passed().to_string(),
        format!("failures={}", checks.integrality.failures.len()),
    ]);
    let specs = inst.spec_json();
    let parsed: Vec<Value> = specs
        .iter()
        .map(|s| serde_json::from_str(s).expect("spec json"))
        .collect();
    Ok(Report {
        command: "family",
        config,
        result: json!({
            "spec": spec,
            "violations": [],
            "degenerate": inst.degenerate,
            "delta1": parsed[0],
            "delta2": parsed[1],
            "delta": parsed[2],
            "checks": checks.to_json(),
        }),
        table: t,
        passed: checks.passed(),
    })
}
