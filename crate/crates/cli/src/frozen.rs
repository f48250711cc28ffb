//! Frozen oracle tables: canonical text, lookup, comparison and regeneration.

use std::path::{Path, PathBuf};

use gradus_core::degrees::{DegreeFunction, DegreeSpec, SubstitutedWeightedDegree};
use gradus_core::graded::{GeneratorTable, TruncationParams};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use similar::TextDiff;

use crate::oracle::{self, OracleRow};

pub const FORMAT: &str = "gradus-oracle/1";

pub fn default_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/oracles/v1")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GeneratorOracle {
    pub format: String,
    pub degree_function: DegreeSpec,
    pub d_max: u32,
    pub n: u32,
    pub delta_n: u32,
    pub rows: Vec<OracleRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertOracle {
    pub format: String,
    pub bound: u32,
    pub elements: Vec<[u32; 5]>,
}

fn canonical<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("oracle serializes");
    s.push('\n');
    s
}

pub fn generator_file(name: &str, t: TruncationParams) -> String {
    format!("generators-{name}-d{}-N{}-dN{}.json", t.d_max, t.n, t.delta_n)
}

pub fn hilbert_file(bound: u32) -> String {
    format!("hilbert-basis-{bound}.json")
}

pub fn generator_text(table: &GeneratorTable) -> String {
    let m = &table.metadata;
    canonical(&GeneratorOracle {
        format: FORMAT.into(),
        degree_function: m.degree_function.clone(),
        d_max: m.d_max,
        n: m.n,
        delta_n: m.delta_n,
        rows: table
            .rows
            .iter()
            .map(|r| OracleRow {
                d: r.d,
                dim: r.dim,
                product_span_dim: r.product_span_dim,
                new_generators: r.new_generators,
                dim_next: r.dim_next,
                new_generators_next: r.new_generators_next,
                stable_flag: r.stable_flag,
            })
            .collect(),
    })
}

pub fn hilbert_text(bound: u32, elements: &[[u32; 5]]) -> String {
    canonical(&HilbertOracle {
        format: FORMAT.into(),
        bound,
        elements: elements.to_vec(),
    })
}

/// Outcome of comparing a computed table with its frozen file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    Match,
    Absent,
    Mismatch(String),
}

impl Comparison {
    pub fn to_json(&self, file: &str) -> Value {
        match self {
            Comparison::Match => json!({ "file": file, "status": "match" }),
            Comparison::Absent => json!({ "file": file, "status": "absent" }),
            Comparison::Mismatch(diff) => json!({ "file": file, "status": "mismatch", "diff": diff }),
        }
    }
}

/// Byte-for-byte comparison; a mismatch carries a unified diff.
pub fn compare(dir: &Path, file: &str, computed: &str) -> Comparison {
    match std::fs::read_to_string(dir.join(file)) {
        Err(_) => Comparison::Absent,
        Ok(frozen) if frozen == computed => Comparison::Match,
        Ok(frozen) => Comparison::Mismatch(
            TextDiff::from_lines(frozen.as_str(), computed)
                .unified_diff()
                .header(&format!("frozen/{file}"), "computed")
                .to_string(),
        ),
    }
}

fn components(f: &DegreeFunction) -> Vec<SubstitutedWeightedDegree> {
    match f {
        DegreeFunction::Substituted(s) => vec![s.clone()],
        DegreeFunction::Max(m) => m.components().iter().flat_map(components).collect(),
        _ => Vec::new(),
    }
}

/// Recomputes a generator table with the brute-force oracle and writes it.
pub fn regenerate_generators(
    dir: &Path,
    name: &str,
    f: &DegreeFunction,
    t: TruncationParams,
) -> std::io::Result<PathBuf> {
    let rows = oracle::generator_table(&components(f), t.d_max, t.n, t.delta_n);
    let text = canonical(&GeneratorOracle {
        format: FORMAT.into(),
        degree_function: f.to_spec(),
        d_max: t.d_max,
        n: t.n,
        delta_n: t.delta_n,
        rows,
    });
    std::fs::create_dir_all(dir)?;
    let path = dir.join(generator_file(name, t));
    std::fs::write(&path, text)?;
    Ok(path)
}

pub fn regenerate_hilbert(dir: &Path, bound: u32) -> std::io::Result<PathBuf> {
    let text = hilbert_text(bound, &oracle::hilbert_irreducibles(bound));
    std::fs::create_dir_all(dir)?;
    let path = dir.join(hilbert_file(bound));
    std::fs::write(&path, text)?;
    Ok(path)
}
