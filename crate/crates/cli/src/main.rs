//! `sumcrit`: exact sumset bounds and critical-pair classification.
//!
//! Every command reads point sets from JSON files (rationals as strings),
//! prints one `RunReport` JSON document (or a human-readable digest with
//! `--human`), and follows a fixed exit-code contract: 0 success, 1 property
//! violation, 2 input error.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use sumcrit_core::rat::{format_rat, parse_rat};
use sumcrit_core::{
    check_bound, classify, classify_shape, convex_hull,
    corollary_ka_bound, f_vector, freiman_bound, generate_family, h_from_f, h_from_shelling,
    find_shelling, is_k_critical, is_stacked, is_totally_stackable, is_unimodular, k_fold,
    minkowski_sum, mr_bound, placing_triangulation, refined_bound, Chart, Error, FamilyCase,
    FamilyParams, Point, PointSet, DEFAULT_SHELLING_BUDGET,
};

#[derive(Parser)]
#[command(
    name = "sumcrit",
    version,
    about = "Exact Minkowski sumset bounds and critical-pair classification"
)]
struct Cli {
    /// Human-readable output instead of the JSON report.
    #[arg(long, global = true)]
    human: bool,
    /// Seed for all randomized checks (overridden by SUMCRIT_SEED).
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Convex hull: dimension, vertices, facet count.
    Hull {
        /// Point-set JSON file.
        input: PathBuf,
        /// Include the vertex point list in the report.
        #[arg(long)]
        emit_points: bool,
    },
    /// Minkowski sumset A + kB with the Matolcsi-Ruzsa bound check.
    Sumset {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: i64,
        /// Include the sumset point list in the report.
        #[arg(long)]
        emit_points: bool,
    },
    /// Bound values and slack for a pair (plain and h-vector refined).
    Bound {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: i64,
    },
    /// Placing triangulation: cells and the induced shelling.
    Triangulate {
        input: PathBuf,
    },
    /// f-vector and h-vector of the placing triangulation.
    Hvector {
        input: PathBuf,
    },
    /// Stackedness, total stackability, and the shape classification.
    Stackable {
        input: PathBuf,
    },
    /// Criticality of (A, B): does |A+kB| meet the bound exactly?
    Critical {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: i64,
    },
    /// Structural classification of a critical pair with witness.
    Classify {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Additionally audit criticality by enumeration at this k.
        #[arg(long)]
        k_audit: Option<i64>,
    },
    /// Generate a critical family instance and write the pair to files.
    Generate {
        /// Case tag: i, ii, iii, iv, v, or vi.
        #[arg(long)]
        case: String,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Base dimension (case vi).
        #[arg(long, default_value_t = 0)]
        base_dim: usize,
        /// Progression length |D| (case ii).
        #[arg(long, default_value_t = 0)]
        ap_len: usize,
        /// Extra translate blocks (case ii) or interior points (case i).
        #[arg(long, default_value_t = 0)]
        translates: usize,
        /// Vertical edge heights, comma separated (case iii).
        #[arg(long, value_delimiter = ',')]
        heights: Vec<i64>,
        /// Extra boundary layers (cases iii and v).
        #[arg(long, default_value_t = 0)]
        offsets: usize,
        #[arg(long)]
        out_a: PathBuf,
        #[arg(long)]
        out_b: PathBuf,
    },
    /// Run the full property-verification suite.
    Verify {
        /// Cap on the exhaustive 2-D census.
        #[arg(long, default_value_t = 100_000)]
        census_cap: usize,
    },
}

/// On-disk point set: `{"dim": d, "points": [["p/q", ...], ...]}`.
#[derive(Serialize, Deserialize)]
struct PointSetFile {
    dim: usize,
    points: Vec<Vec<String>>,
}

enum CliError {
    /// Bad input: parse failure, dimension mismatch, invalid parameters.
    Input(String),
    /// Property violation: a theorem-guaranteed invariant failed.
    Violation(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::ClassifierDefect(_) | Error::TheoremViolation(_) | Error::EquivalenceViolation(_) => {
                CliError::Violation(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

fn load_points(path: &Path) -> Result<PointSet, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let file: PointSetFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let mut pts = Vec::with_capacity(file.points.len());
    for (i, coords) in file.points.iter().enumerate() {
        if coords.len() != file.dim {
            return Err(CliError::Input(format!(
                "{}: point {i} has {} coordinates, expected {}",
                path.display(),
                coords.len(),
                file.dim
            )));
        }
        let mut p = Vec::with_capacity(file.dim);
        for c in coords {
            p.push(parse_rat(c).ok_or_else(|| {
                CliError::Input(format!("{}: bad rational {c:?} in point {i}", path.display()))
            })?);
        }
        pts.push(Point(p));
    }
    let n = pts.len();
    let set = PointSet::new(file.dim, pts).map_err(|e| CliError::Input(e.to_string()))?;
    if set.len() != n {
        return Err(CliError::Input(format!(
            "{}: duplicate points in input",
            path.display()
        )));
    }
    if set.is_empty() {
        return Err(CliError::Input(format!("{}: empty point set", path.display())));
    }
    Ok(set)
}

fn save_points(path: &Path, set: &PointSet) -> Result<(), CliError> {
    let file = PointSetFile {
        dim: set.dim(),
        points: points_json_raw(set),
    };
    let text = serde_json::to_string_pretty(&file).expect("serializable");
    std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn points_json_raw(set: &PointSet) -> Vec<Vec<String>> {
    set.iter()
        .map(|p| p.0.iter().map(format_rat).collect())
        .collect()
}

fn points_json(set: &PointSet) -> Value {
    json!(points_json_raw(set))
}

/// FNV-1a 64-bit hash of a point set's canonical serialization.
fn input_hash(set: &PointSet) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let text = serde_json::to_string(&points_json_raw(set)).expect("serializable");
    for byte in format!("{}:{}", set.dim(), text).bytes() {
        h ^= u64::from(byte);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{h:016x}")
}

/// One report schema for every command; `data` carries the per-command
/// payload under the `command` discriminator.
#[derive(Serialize)]
struct RunReport {
    command: String,
    inputs: BTreeMap<String, String>,
    seed: u64,
    data: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = std::env::var("SUMCRIT_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(cli.seed);
    let start = Instant::now();
    let result = run(&cli.command, seed);
    match result {
        Ok((report, violation)) => {
            let mut report = report;
            report.seed = seed;
            if cli.human {
                report.elapsed_ms = Some(start.elapsed().as_millis());
                print_human(&report);
            } else {
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            }
            if violation {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(CliError::Input(msg)) => {
            eprintln!("input error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Violation(msg)) => {
            eprintln!("property violation: {msg}");
            ExitCode::from(1)
        }
    }
}

fn print_human(report: &RunReport) {
    println!("command: {}", report.command);
    for (name, hash) in &report.inputs {
        println!("input {name}: {hash}");
    }
    println!(
        "{}",
        serde_json::to_string_pretty(&report.data).expect("serializable")
    );
    if let Some(ms) = report.elapsed_ms {
        println!("elapsed: {ms} ms");
    }
}

fn report(command: &str, inputs: &[(&str, &PointSet)], data: Value) -> RunReport {
    RunReport {
        command: command.into(),
        inputs: inputs
            .iter()
            .map(|(n, s)| (n.to_string(), input_hash(s)))
            .collect(),
        seed: 0,
        data,
        elapsed_ms: None,
    }
}

/// Runs one command; the bool marks a property violation (exit code 1).
fn run(cmd: &Cmd, seed: u64) -> Result<(RunReport, bool), CliError> {
    match cmd {
        Cmd::Hull { input, emit_points } => {
            let set = load_points(input)?;
            let hull = convex_hull(&set)?;
            let vertex_set = hull.vertex_set();
            let mut data = json!({
                "ambient_dim": set.dim(),
                "intrinsic_dim": hull.dim,
                "point_count": set.len(),
                "vertex_count": hull.vertices.len(),
                "facet_count": hull.facets.len(),
                "vertex_indices": hull.vertices,
            });
            if *emit_points {
                data["vertices"] = points_json(&vertex_set);
            }
            Ok((report("hull", &[("input", &set)], data), false))
        }
        Cmd::Sumset { a, b, k, emit_points } => {
            let (a, b) = load_pair(a, b)?;
            let sum = if *k == 0 {
                a.clone()
            } else {
                minkowski_sum(&a, &k_fold(&b, *k)?)?
            };
            let bound = check_bound(&a, &b, *k)?;
            let mut data = json!({
                "k": k,
                "a_cardinality": a.len(),
                "b_cardinality": b.len(),
                "sum_cardinality": sum.len(),
                "bound": bound,
            });
            if *emit_points {
                data["points"] = points_json(&sum);
            }
            Ok((report("sumset", &[("a", &a), ("b", &b)], data), false))
        }
        Cmd::Bound { a, b, k } => {
            let (a, b) = load_pair(a, b)?;
            let plain = check_bound(&a, &b, *k)?;
            let hull = convex_hull(&b)?;
            let d = hull.dim as i64;
            let n = a.len() as i64;
            let (t, sh) = placing_triangulation(&b, None)?;
            let h = h_from_shelling(&t, &sh)?;
            let refined = refined_bound(d, *k, n, &h);
            let data = json!({
                "k": k,
                "intrinsic_dim": d,
                "a_cardinality": n,
                "mr_bound": mr_bound(d, *k, n),
                "freiman_bound": freiman_bound(d, n),
                "corollary_ka_bound": corollary_ka_bound(d, *k, n),
                "h_vector": h.entries,
                "refined_bound": refined,
                "check": plain,
            });
            Ok((report("bound", &[("a", &a), ("b", &b)], data), false))
        }
        Cmd::Triangulate { input } => {
            let set = load_points(input)?;
            let (t, sh) = placing_triangulation(&set, None)?;
            let cells: Vec<Vec<usize>> = t.cells.iter().map(|c| c.0.clone()).collect();
            let data = json!({
                "intrinsic_dim": t.dim,
                "cell_count": cells.len(),
                "cells": cells,
                "shelling_order": sh.order,
                "shelling_indices": sh.indices,
            });
            Ok((report("triangulate", &[("input", &set)], data), false))
        }
        Cmd::Hvector { input } => {
            let set = load_points(input)?;
            let (t, sh) = placing_triangulation(&set, None)?;
            let f = f_vector(&t);
            let h = h_from_shelling(&t, &sh)?;
            let h_alt = h_from_f(&f, t.dim);
            let data = json!({
                "intrinsic_dim": t.dim,
                "f_vector": f.entries,
                "h_vector": h.entries,
                "h_from_f": h_alt.entries,
            });
            Ok((report("hvector", &[("input", &set)], data), false))
        }
        Cmd::Stackable { input } => {
            let set = load_points(input)?;
            let (t, _) = placing_triangulation(&set, None)?;
            let stacked = is_stacked(&t)?;
            let totally = is_totally_stackable(&set)?;
            let shape = classify_shape(&set)?;
            let flat = intrinsic(&set);
            let lattice = sumcrit_core::difference_lattice(&flat);
            let unimodular = is_unimodular(&placing_triangulation(&flat, None)?.0, &lattice)?;
            let budget = std::env::var("SUMCRIT_BUDGET")
                .ok()
                .and_then(|s| s.parse().ok())
                .unwrap_or(DEFAULT_SHELLING_BUDGET);
            let shellable = find_shelling(&t, budget).is_some();
            let data = json!({
                "stacked": stacked,
                "totally_stackable": totally,
                "unimodular": unimodular,
                "shellable_within_budget": shellable,
                "shape": shape,
            });
            Ok((report("stackable", &[("input", &set)], data), false))
        }
        Cmd::Critical { a, b, k } => {
            let (a, b) = load_pair(a, b)?;
            let critical = is_k_critical(&a, &b, *k)?;
            let bound = check_bound(&a, &b, *k)?;
            let data = json!({
                "k": k,
                "critical": critical,
                "bound": bound,
            });
            Ok((report("critical", &[("a", &a), ("b", &b)], data), false))
        }
        Cmd::Classify { a, b, k_audit } => {
            let (a, b) = load_pair(a, b)?;
            let verdict = classify(&a, &b)?;
            let mut data = serde_json::to_value(&verdict).expect("serializable");
            if let Some(k) = k_audit {
                data["k_audit"] = json!({
                    "k": k,
                    "critical": is_k_critical(&a, &b, *k)?,
                });
            }
            Ok((report("classify", &[("a", &a), ("b", &b)], data), false))
        }
        Cmd::Generate {
            case,
            dim,
            base_dim,
            ap_len,
            translates,
            heights,
            offsets,
            out_a,
            out_b,
        } => {
            let case = match case.as_str() {
                "i" => FamilyCase::SimplexI,
                "ii" => FamilyCase::SimplexEdgeApII,
                "iii" => FamilyCase::PrismIII,
                "iv" => FamilyCase::TriangleMidpointsIV,
                "v" => FamilyCase::ParallelogramV,
                "vi" => FamilyCase::PyramidOverLowerVI,
                other => {
                    return Err(CliError::Input(format!(
                        "unknown case tag {other:?}; expected one of i, ii, iii, iv, v, vi"
                    )))
                }
            };
            let params = FamilyParams {
                case,
                dim: *dim,
                base_dim: *base_dim,
                ap_len: *ap_len,
                translates: *translates,
                heights: heights.clone(),
                offsets: *offsets,
            };
            let (a, b) = generate_family(&params)?;
            save_points(out_a, &a)?;
            save_points(out_b, &b)?;
            let data = json!({
                "params": params,
                "a_cardinality": a.len(),
                "b_cardinality": b.len(),
                "out_a": out_a.display().to_string(),
                "out_b": out_b.display().to_string(),
            });
            Ok((report("generate", &[("a", &a), ("b", &b)], data), false))
        }
        Cmd::Verify { census_cap } => {
            let outcomes = sumcrit_core::harness::run_all(seed, *census_cap);
            let mut violation = false;
            let mut reproducers: Vec<String> = Vec::new();
            for o in &outcomes {
                if !o.passed() {
                    violation = true;
                    reproducers.push(format!(
                        "sumcrit verify --census-cap {census_cap}   # SUMCRIT_SEED={seed}, suite {}",
                        o.name
                    ));
                }
            }
            let data = json!({
                "census_cap": census_cap,
                "suites": outcomes,
                "violations": outcomes.iter().map(|o| o.violations.len()).sum::<usize>(),
                "reproducers": reproducers,
            });
            Ok((report("verify", &[], data), violation))
        }
    }
}

fn load_pair(a: &Path, b: &Path) -> Result<(PointSet, PointSet), CliError> {
    let a = load_points(a)?;
    let b = load_points(b)?;
    if a.dim() != b.dim() {
        return Err(CliError::Input(format!(
            "ambient dimensions do not match: {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    Ok((a, b))
}

/// Re-expresses a configuration in the coordinates of its own affine hull,
/// so lattice computations see a full-rank difference lattice.
fn intrinsic(set: &PointSet) -> PointSet {
    let chart = Chart::from_set(set);
    if chart.dim() == set.dim() {
        return set.clone();
    }
    let pts: Vec<Point> = set
        .iter()
        .map(|p| Point(chart.to_local(p).expect("point lies in its own affine hull")))
        .collect();
    PointSet::new(chart.dim(), pts).expect("consistent dimensions")
}
