//! Command implementations behind the `barymorse` binary.
//!
//! Each command takes a [`RunConfig`], writes its output file (or returns it as stdout when no
//! `--out` is given) and reports a [`Status`]. Input problems surface as [`CliError`].

pub mod formats;
pub mod graph;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use barymorse_core::complex::alternating_sum;
use barymorse_core::oracle::{betti_gf2, chain_counts};
use barymorse_core::prelude::*;

use crate::formats::{ComplexFile, MatchingFile, OrderingsFile};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("missing required flag --{0}")]
    MissingFlag(&'static str),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    Failed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::Failed => 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub status: Status,
}

#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    pub complex: Option<PathBuf>,
    pub matching: Option<PathBuf>,
    pub orderings: Option<PathBuf>,
    /// A `Δ(F)` matching to check (verify only).
    pub delta: Option<PathBuf>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub parallel: bool,
    pub fill_default_orderings: bool,
    /// export-graph: draw `L` and `F` instead of the subdivision.
    pub base: bool,
    /// paths: list the gradient paths of `Δ(F)` instead of `F`.
    pub subdivided: bool,
}

impl RunConfig {
    fn exec(&self) -> Execution {
        if self.parallel {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn load_complex(cfg: &RunConfig) -> Result<SimplicialComplex, CliError> {
    let path = cfg.complex.as_deref().ok_or(CliError::MissingFlag("complex"))?;
    formats::read::<ComplexFile>(path)?.build()
}

fn load_field<'c>(
    cfg: &RunConfig,
    c: &'c SimplicialComplex,
) -> Result<DiscreteVectorField<'c>, CliError> {
    let path = cfg.matching.as_deref().ok_or(CliError::MissingFlag("matching"))?;
    formats::read::<MatchingFile>(path)?
        .field(c)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_orderings(cfg: &RunConfig, f: &DiscreteVectorField<'_>) -> Result<Orderings, CliError> {
    match cfg.orderings.as_deref() {
        None => Ok(default_orderings(f)),
        Some(path) => {
            let entries = formats::read::<OrderingsFile>(path)?
                .entries()
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let built = if cfg.fill_default_orderings {
                Orderings::fill_defaults(f, entries)
            } else {
                Orderings::for_field(f, entries)
            };
            built.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
        }
    }
}

fn write_out(path: &Path, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Writes `content` to `--out` and returns `summary` as stdout, or returns `content` as stdout
/// and `summary` as stderr when there is no `--out`.
fn emit(cfg: &RunConfig, content: String, summary: String, status: Status) -> Result<Output, CliError> {
    match &cfg.out {
        Some(p) => {
            write_out(p, &content)?;
            Ok(Output {
                stdout: summary,
                stderr: String::new(),
                status,
            })
        }
        None => Ok(Output {
            stdout: content,
            stderr: summary,
            status,
        }),
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join("/")
}

/// `Δ(L)` export: the simplex behind each `Δ`-vertex id, then every cell with its chain and
/// label.
pub fn cmd_subdivide(cfg: &RunConfig) -> Result<Output, CliError> {
    let c = load_complex(cfg)?;
    let sd = SubdividedComplex::new(&c, cfg.exec());
    let delta = sd.complex();
    let vertices: Vec<serde_json::Value> = c
        .simplices()
        .iter()
        .map(|s| serde_json::json!(s.vertices()))
        .collect();
    let cells: Vec<serde_json::Value> = delta
        .ids()
        .map(|id| {
            let chain: Vec<&[VertexId]> = sd
                .chain_of(id)
                .into_iter()
                .map(|s| c.simplex(s).vertices())
                .collect();
            serde_json::json!({
                "cell": delta.simplex(id).vertices(),
                "chain": chain,
                "label": sd.label_of(id).blocks(),
            })
        })
        .collect();
    let counts = delta.f_vector();
    let content = formats::render_arrays(&[
        ("counts", counts.iter().map(|&n| serde_json::json!(n)).collect()),
        ("vertices", vertices),
        ("cells", cells),
    ]);
    let summary = format!(
        "counts: {}\neuler: {}\n",
        join(&counts),
        delta.euler_characteristic()
    );
    emit(cfg, content, summary, Status::Success)
}

pub fn cmd_delta_morse(cfg: &RunConfig) -> Result<Output, CliError> {
    let c = load_complex(cfg)?;
    let f = load_field(cfg, &c)?;
    f.ensure_morse()
        .map_err(|e| CliError::Input(format!("input matching is not Morse: {e}")))?;
    let ord = load_orderings(cfg, &f)?;
    let sd = SubdividedComplex::new(&c, cfg.exec());
    let df = build_delta_morse(&f, &sd, &ord, cfg.exec()).map_err(input)?;
    let content = MatchingFile::from_field(&df).render();
    let summary = format!(
        "valid: true\nacyclic: {}\npairs F: {}\npairs ΔF: {}\ncritical F: {}\ncritical ΔF: {}\n",
        df.is_morse(),
        f.num_pairs(),
        df.num_pairs(),
        join(&f.critical_cells().counts()),
        join(&df.critical_cells().counts()),
    );
    emit(cfg, content, summary, Status::Success)
}

pub fn cmd_random_morse(cfg: &RunConfig) -> Result<Output, CliError> {
    let c = load_complex(cfg)?;
    let seed = cfg.seed.ok_or(CliError::MissingFlag("seed"))?;
    let f = DiscreteVectorField::random_morse(&c, seed);
    let summary = format!(
        "pairs: {}\ncritical: {}\n",
        f.num_pairs(),
        join(&f.critical_cells().counts())
    );
    emit(cfg, MatchingFile::from_field(&f).render(), summary, Status::Success)
}

pub fn cmd_paths(cfg: &RunConfig) -> Result<Output, CliError> {
    let c = load_complex(cfg)?;
    let f = load_field(cfg, &c)?;
    let exec = cfg.exec();
    let rows: Vec<serde_json::Value> = if cfg.subdivided {
        let ord = load_orderings(cfg, &f)?;
        let sd = SubdividedComplex::new(&c, exec);
        let df = build_delta_morse(&f, &sd, &ord, exec).map_err(input)?;
        df.gradient_paths(exec)
            .map_err(input)?
            .iter()
            .map(|p| {
                let cells: Vec<String> = p.cells.iter().map(|&x| sd.label_of(x).to_string()).collect();
                serde_json::json!(cells)
            })
            .collect()
    } else {
        f.gradient_paths(exec)
            .map_err(input)?
            .iter()
            .map(|p| {
                let cells: Vec<&[VertexId]> = p.simplices(&c).map(|s| s.vertices()).collect();
                serde_json::json!(cells)
            })
            .collect()
    };
    let summary = format!("paths: {}\n", rows.len());
    emit(cfg, formats::render_arrays(&[("paths", rows)]), summary, Status::Success)
}

pub fn cmd_export_graph(cfg: &RunConfig) -> Result<Output, CliError> {
    let c = load_complex(cfg)?;
    let f = match cfg.matching {
        Some(_) => Some(load_field(cfg, &c)?),
        None => None,
    };
    let dot = if cfg.base {
        graph::hasse_dot(&c, f.as_ref(), |id| c.simplex(id).to_string())
    } else {
        let sd = SubdividedComplex::new(&c, cfg.exec());
        let df = match &f {
            Some(f) => {
                f.ensure_morse().map_err(input)?;
                let ord = load_orderings(cfg, f)?;
                Some(build_delta_morse(f, &sd, &ord, cfg.exec()).map_err(input)?)
            }
            None => None,
        };
        graph::hasse_dot(sd.complex(), df.as_ref(), |id| sd.label_of(id).to_string())
    };
    emit(cfg, dot, String::new(), Status::Success)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EndpointRow {
    pub source: Vec<VertexId>,
    pub target: Vec<VertexId>,
    pub dimension: usize,
    pub f_paths: usize,
    pub delta_paths: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FailureRow {
    pub check: String,
    pub message: String,
    pub path: Vec<String>,
}

/// The verify report as written to disk.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub success: bool,
    pub checks: Vec<CheckResult>,
    pub f_paths: usize,
    pub delta_paths: usize,
    pub lift_round_trips: usize,
    pub project_round_trips: usize,
    pub endpoints: Vec<EndpointRow>,
    pub failures: Vec<FailureRow>,
}

impl VerifyReport {
    fn new() -> Self {
        VerifyReport {
            success: true,
            checks: Vec::new(),
            f_paths: 0,
            delta_paths: 0,
            lift_round_trips: 0,
            project_round_trips: 0,
            endpoints: Vec::new(),
            failures: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>) -> bool {
        let detail = detail.into();
        if !ok {
            self.success = false;
            self.failures.push(FailureRow {
                check: name.into(),
                message: detail.clone(),
                path: Vec::new(),
            });
        }
        self.checks.push(CheckResult {
            name: name.into(),
            ok,
            detail,
        });
        ok
    }

    fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Rebuilds `Δ(F)`, compares it with `--delta` when given, runs the structural oracles and
/// the path-bijection check. Any failed check gives [`Status::Failed`].
pub fn cmd_verify(cfg: &RunConfig) -> Result<Output, CliError> {
    let exec = cfg.exec();
    let c = load_complex(cfg)?;
    let mut report = VerifyReport::new();
    let finish = |report: VerifyReport| {
        let status = if report.success { Status::Success } else { Status::Failed };
        let mut summary = String::new();
        for ch in &report.checks {
            summary.push_str(&format!(
                "{} {}: {}\n",
                if ch.ok { "PASS" } else { "FAIL" },
                ch.name,
                ch.detail
            ));
        }
        summary.push_str(if report.success { "success\n" } else { "failure\n" });
        emit(cfg, report.render(), summary, status)
    };

    let mpath = cfg.matching.as_deref().ok_or(CliError::MissingFlag("matching"))?;
    let mfile: MatchingFile = formats::read(mpath)?;
    let f = match mfile.field(&c) {
        Ok(f) => f,
        Err(e) => {
            report.check("F-valid", false, e.to_string());
            return finish(report);
        }
    };
    report.check("F-valid", true, format!("{} pairs", f.num_pairs()));
    if let Err(e) = f.ensure_morse() {
        report.check("F-acyclic", false, e.to_string());
        return finish(report);
    }
    report.check("F-acyclic", true, "no closed paths");

    let ord = match load_orderings(cfg, &f) {
        Ok(o) => o,
        Err(e) => {
            report.check("orderings", false, e.to_string());
            return finish(report);
        }
    };
    report.check("orderings", true, format!("{} critical simplices", ord.len()));

    let sd = SubdividedComplex::new(&c, exec);
    let rebuilt = match build_delta_morse(&f, &sd, &ord, exec) {
        Ok(d) => d,
        Err(e) => {
            report.check("ΔF-construction", false, e.to_string());
            return finish(report);
        }
    };
    report.check("ΔF-construction", true, format!("{} pairs, acyclic", rebuilt.num_pairs()));

    let supplied = match cfg.delta.as_deref() {
        None => None,
        Some(path) => {
            let dfile: MatchingFile = formats::read(path)?;
            match dfile.field(sd.complex()) {
                Ok(d) => Some(d),
                Err(e) => {
                    report.check("ΔF-file-valid", false, describe_delta_error(&sd, &e));
                    return finish(report);
                }
            }
        }
    };
    if let Some(d) = &supplied {
        report.check("ΔF-file-valid", true, format!("{} pairs", d.num_pairs()));
        let want: BTreeSet<_> = rebuilt.pairs().into_iter().collect();
        let got: BTreeSet<_> = d.pairs().into_iter().collect();
        let name = |(a, b): (SimplexId, SimplexId)| format!("({}, {})", sd.label_of(a), sd.label_of(b));
        let detail = if let Some(&p) = want.difference(&got).next() {
            format!("pair {} missing from the supplied ΔF", name(p))
        } else if let Some(&p) = got.difference(&want).next() {
            format!("supplied ΔF has unexpected pair {}", name(p))
        } else {
            "identical to the rebuilt ΔF".into()
        };
        report.check("ΔF-file-matches-construction", want == got, detail);
        match d.ensure_morse() {
            Ok(()) => report.check("ΔF-file-acyclic", true, "no closed paths"),
            Err(e) => report.check("ΔF-file-acyclic", false, e.to_string()),
        };
    }
    let df = supplied.as_ref().unwrap_or(&rebuilt);

    // structural oracles
    let counts = sd.complex().f_vector();
    let oracle = chain_counts(&c);
    report.check(
        "subdivision-counts",
        counts == oracle,
        format!("Δ(L) {} vs chains {}", join(&counts), join(&oracle)),
    );
    let (chi_l, chi_d) = (c.euler_characteristic(), sd.complex().euler_characteristic());
    let crit_f = f.critical_cells().counts();
    let crit_d = df.critical_cells().counts();
    let (alt_f, alt_d) = (alternating_sum(&crit_f), alternating_sum(&crit_d));
    report.check(
        "euler",
        chi_l == chi_d && chi_l == alt_f && chi_l == alt_d,
        format!("χ(L)={chi_l} χ(Δ(L))={chi_d} Σcrit(F)={alt_f} Σcrit(ΔF)={alt_d}"),
    );
    report.check(
        "critical-counts",
        crit_f == crit_d,
        format!("F {} vs ΔF {}", join(&crit_f), join(&crit_d)),
    );
    let betti = betti_gf2(&c);
    let weak = betti
        .iter()
        .enumerate()
        .all(|(k, &b)| crit_f.get(k).copied().unwrap_or(0) >= b && crit_d.get(k).copied().unwrap_or(0) >= b);
    report.check(
        "weak-morse-inequalities",
        weak,
        format!("betti {} ≤ critical {}", join(&betti), join(&crit_d)),
    );

    if df.is_morse() {
        let b = verify_bijection(&f, &sd, df, &ord, exec);
        report.f_paths = b.f_path_count;
        report.delta_paths = b.delta_path_count;
        report.lift_round_trips = b.lift_round_trips;
        report.project_round_trips = b.project_round_trips;
        report.endpoints = b
            .endpoints
            .iter()
            .map(|e| EndpointRow {
                source: e.source.vertices().to_vec(),
                target: e.target.vertices().to_vec(),
                dimension: e.dimension,
                f_paths: e.f_paths,
                delta_paths: e.delta_paths,
            })
            .collect();
        let ok = b.success();
        let detail = match b.failures.first() {
            None => format!(
                "{} paths in F, {} in ΔF, round trips {}/{}",
                b.f_path_count, b.delta_path_count, b.lift_round_trips, b.project_round_trips
            ),
            Some(x) => format!("{}: {}", x.check, x.message),
        };
        report.check("path-bijection", ok, detail);
        if !ok {
            // replace the summary row with the detailed ones
            report.failures.pop();
            report.failures.extend(b.failures.into_iter().map(|x| FailureRow {
                check: x.check,
                message: x.message,
                path: x.path,
            }));
        }
    }
    finish(report)
}

fn describe_delta_error(sd: &SubdividedComplex<'_>, e: &barymorse_core::Error) -> String {
    let name = |s: &Simplex| {
        sd.label_of_simplex(s)
            .map(|l| l.to_string())
            .unwrap_or_else(|_| s.to_string())
    };
    match e {
        barymorse_core::Error::NotAFacet(a, b) => {
            format!("pair ({}, {}): first is not a facet of second", name(a), name(b))
        }
        barymorse_core::Error::MatchedTwice(a) => format!("cell {} is matched more than once", name(a)),
        other => other.to_string(),
    }
}

/// Writes the orderings in use (defaults included) as an orderings file.
pub fn render_orderings(o: &Orderings) -> String {
    OrderingsFile::from_orderings(o).render()
}
