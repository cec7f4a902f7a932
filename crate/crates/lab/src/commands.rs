//! The `rainbow-lab` command line.
//!
//! Exit codes: 0 success or no witness, 1 witness or violated invariant,
//! 2 input error, 3 budget exhausted.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rainbow_core::constructions::{self, GallaiConfig};
use rainbow_core::designs::{self, DesignError};
use rainbow_core::diagnostics;
use rainbow_core::gf2geom;
use rainbow_core::hypercore::Coloring;
use rainbow_core::patterns::{self, Family, PatternWitness};
use rainbow_core::solver::{self, Budget, Clock, SolveStatus};
use serde::Serialize;
use thiserror::Error;

use crate::format::{self, FormatError};
use crate::report::{
    plane_coloring_json, AccountingJson, ColoringJson, GallaiJson, GrassmannJson, SolveJson, StructureJson,
    TripleSystemJson, WitnessJson,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_WITNESS: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "rainbow-lab", version, about = "Anti-Ramsey colorings of complete hypergraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a lower-bound coloring, check it, and write it with a JSON sidecar.
    Construct(ConstructArgs),
    /// Look for a rainbow copy of a pattern in a coloring file.
    Verify(VerifyArgs),
    /// Compute ar(n, family) exactly by exhaustive search.
    Solve(SolveArgs),
    /// Report the accounting aggregates and bound checks of a coloring file.
    Diagnose(DiagnoseArgs),
    /// Build a maximum partial Steiner triple system.
    Packing(PackingArgs),
    /// Dump the plane graph of PG(s-1, 2) with an independent-set good coloring.
    Grassmann(GrassmannArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Cancellative,
    Mpsts,
    Pg,
    Gallai,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct SeedArg {
    /// Seed for every random choice.
    #[arg(long, env = "RAINBOW_LAB_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    pub kind: Kind,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 3)]
    pub p: usize,
    #[arg(long)]
    pub s: Option<u32>,
    #[command(flatten)]
    pub seed: SeedArg,
    /// Greedy independent-set restarts (pg).
    #[arg(long, default_value_t = gf2geom::DEFAULT_RESTARTS)]
    pub restarts: usize,
    /// Largest split in one substitution step (gallai).
    #[arg(long, default_value_t = 4)]
    pub max_parts: usize,
    /// Coloring file to write; the sidecar goes to `<out>.json`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub path: PathBuf,
    /// cancellative, f4, f5, h1, h2, t, o or star.
    #[arg(long)]
    pub family: String,
    /// Core size for `--family star`.
    #[arg(long)]
    pub q: Option<usize>,
    /// Petal count for `--family star`.
    #[arg(long)]
    pub r: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub p: usize,
    #[arg(long)]
    pub family: Family,
    /// Node budget; accepts forms like `1e9`.
    #[arg(long, value_parser = parse_count)]
    pub max_nodes: Option<u64>,
    #[arg(long)]
    pub max_seconds: Option<f64>,
    /// Refuse instances with more edges than this.
    #[arg(long, default_value_t = solver::DEFAULT_MAX_EDGES)]
    pub max_edges: usize,
    /// Where to write the best coloring found.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DiagnoseArgs {
    pub path: PathBuf,
}

#[derive(Debug, Args)]
pub struct PackingArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long, default_value_t = designs::DEFAULT_ITER_CAP)]
    pub iter_cap: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GrassmannArgs {
    #[arg(long)]
    pub s: u32,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long, default_value_t = gf2geom::DEFAULT_RESTARTS)]
    pub restarts: usize,
}

/// Parses a non-negative integer, also in float notation such as `1e9`.
pub fn parse_count(s: &str) -> Result<u64, String> {
    let s = s.trim().replace('_', "");
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let f: f64 = s.parse().map_err(|_| format!("not a count: {s:?}"))?;
    if !f.is_finite() || f < 0.0 || f.fract() != 0.0 || f > u64::MAX as f64 {
        return Err(format!("not a non-negative integer: {s:?}"));
    }
    Ok(f as u64)
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
    #[error("writing output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn input(e: impl std::fmt::Display) -> CliError {
        CliError::Input(e.to_string())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Budget(_) => EXIT_BUDGET,
            _ => EXIT_INPUT,
        }
    }
}

/// Runs one command, writing JSON to `out` and messages to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let result = match cli.command {
        Command::Construct(a) => construct(a, out, err),
        Command::Verify(a) => verify(a, out),
        Command::Solve(a) => solve(a, out),
        Command::Diagnose(a) => diagnose(a, out),
        Command::Packing(a) => packing(a, out),
        Command::Grassmann(a) => grassmann(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "rainbow-lab: {e}");
            e.exit_code()
        }
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(std::io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn path_string(p: &Path) -> String {
    p.display().to_string()
}

#[derive(Debug, Serialize)]
struct DetectorJson {
    detector: String,
    witness: Option<WitnessJson>,
}

#[derive(Debug, Serialize)]
struct ConstructSidecar {
    kind: Kind,
    seed: u64,
    n: usize,
    p: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    s: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    restarts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_parts: Option<usize>,
    colors: u32,
    detectors: Vec<DetectorJson>,
    all_absent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    independent_set: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    plane_classes: Option<usize>,
    coloring_path: String,
}

fn detector(name: &str, hit: Option<PatternWitness>) -> DetectorJson {
    DetectorJson {
        detector: name.into(),
        witness: hit.as_ref().map(WitnessJson::from),
    }
}

fn require<T>(v: Option<T>, flag: &str, kind: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Input(format!("construct {kind} needs --{flag}")))
}

fn construct(a: ConstructArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, CliError> {
    let seed = a.seed.seed;
    let mut s = None;
    let mut restarts = None;
    let mut max_parts = None;
    let mut independent_set = None;
    let mut plane_classes = None;
    let (coloring, detectors) = match a.kind {
        Kind::Cancellative => {
            let n = require(a.n, "n", "cancellative")?;
            let c = constructions::build_cancellative_extremal(n, a.p).map_err(CliError::input)?;
            let hit = patterns::find_rainbow_cancellative(&c);
            (c, vec![detector("cancellative", hit)])
        }
        Kind::Mpsts => {
            let n = require(a.n, "n", "mpsts")?;
            let c = constructions::build_mpsts_coloring(n, seed).map_err(CliError::input)?;
            let hit = patterns::find_rainbow_p3(&c, Family::F4).map_err(CliError::input)?;
            (c, vec![detector("f4", hit)])
        }
        Kind::Pg => {
            let sv = require(a.s, "s", "pg")?;
            let pg = constructions::build_pg_coloring_seeded(sv, seed, a.restarts).map_err(CliError::input)?;
            s = Some(sv);
            restarts = Some(a.restarts);
            independent_set = Some(pg.independent_set.clone());
            plane_classes = Some(pg.classes);
            let hit = patterns::find_rainbow_p3(&pg.coloring, Family::F4).map_err(CliError::input)?;
            (pg.coloring, vec![detector("f4", hit)])
        }
        Kind::Gallai => {
            let n = require(a.n, "n", "gallai")?;
            if n < 2 {
                return Err(CliError::Input("construct gallai needs --n >= 2".into()));
            }
            let config = GallaiConfig {
                max_parts: a.max_parts.max(2),
                ..GallaiConfig::default()
            };
            max_parts = Some(config.max_parts);
            let g = constructions::generate_gallai(n, seed, config);
            let c = g.to_coloring().map_err(CliError::input)?;
            // on pairs a rainbow cancellative triple is exactly a rainbow triangle
            let hit = patterns::find_rainbow_cancellative(&c);
            (c, vec![detector("rainbow-triangle", hit)])
        }
    };
    let all_absent = detectors.iter().all(|d| d.witness.is_none());
    let sidecar = ConstructSidecar {
        kind: a.kind,
        seed,
        n: coloring.n(),
        p: coloring.p(),
        s,
        restarts,
        max_parts,
        colors: coloring.k(),
        detectors,
        all_absent,
        independent_set,
        plane_classes,
        coloring_path: path_string(&a.out),
    };
    format::save_coloring(&a.out, &coloring)?;
    let sidecar_path = sidecar_path(&a.out);
    let mut text = serde_json::to_string_pretty(&sidecar).map_err(std::io::Error::from)?;
    text.push('\n');
    std::fs::write(&sidecar_path, &text).map_err(|source| FormatError::Io {
        path: path_string(&sidecar_path),
        source,
    })?;
    out.write_all(text.as_bytes())?;
    if all_absent {
        Ok(EXIT_OK)
    } else {
        writeln!(err, "rainbow-lab: construction produced a rainbow witness")?;
        Ok(EXIT_WITNESS)
    }
}

/// `<out>.json`, keeping the original extension.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

#[derive(Debug, Serialize)]
struct VerifyJson {
    path: String,
    family: String,
    n: usize,
    p: usize,
    colors: u32,
    witness: Option<WitnessJson>,
}

fn find(c: &Coloring, a: &VerifyArgs) -> Result<(String, Option<PatternWitness>), CliError> {
    if a.family.eq_ignore_ascii_case("star") {
        let (q, r) = match (a.q, a.r) {
            (Some(q), Some(r)) => (q, r),
            _ => return Err(CliError::Input("--family star needs --q and --r".into())),
        };
        let hit = patterns::find_rainbow_star(c, q, r).map_err(CliError::input)?;
        return Ok((format!("star({q},{r})"), hit));
    }
    let family: Family = a.family.parse().map_err(CliError::input)?;
    let hit = patterns::find_rainbow(c, family).map_err(CliError::input)?;
    Ok((family.to_string(), hit))
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let c = format::load_coloring(&a.path)?;
    let (family, hit) = find(&c, &a)?;
    let found = hit.is_some();
    emit(
        out,
        &VerifyJson {
            path: path_string(&a.path),
            family,
            n: c.n(),
            p: c.p(),
            colors: c.k(),
            witness: hit.as_ref().map(WitnessJson::from),
        },
    )?;
    Ok(if found { EXIT_WITNESS } else { EXIT_OK })
}

struct WallClock(Instant);

impl Clock for WallClock {
    fn elapsed(&self) -> Duration {
        self.0.elapsed()
    }
}

fn solve(a: SolveArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let max_time = match a.max_seconds {
        Some(s) if s.is_finite() && s >= 0.0 => Some(Duration::from_secs_f64(s)),
        Some(s) => return Err(CliError::Input(format!("bad --max-seconds {s}"))),
        None => None,
    };
    let budget = Budget {
        max_nodes: a.max_nodes,
        max_time,
        max_edges: a.max_edges,
    };
    let clock = WallClock(Instant::now());
    let r = solver::solve_anti_ramsey_with_clock(a.n, a.p, a.family, &budget, &clock).map_err(CliError::input)?;
    if let Some(path) = &a.out {
        format::save_coloring(path, &r.witness)?;
    }
    let report = SolveJson::new(a.n, a.p, a.family.name(), &r, a.out.as_deref().map(path_string));
    emit(out, &report)?;
    Ok(match r.status {
        SolveStatus::Proved => EXIT_OK,
        SolveStatus::TimedOut => EXIT_BUDGET,
    })
}

#[derive(Debug, Serialize)]
struct DiagnoseJson {
    path: String,
    n: usize,
    p: usize,
    colors: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    accounting: Option<AccountingJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gallai: Option<GallaiJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rainbow_triangle: Option<[usize; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cancellative_free: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cancellative_formula: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    structure: Option<StructureJson>,
    ok: bool,
}

fn diagnose(a: DiagnoseArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let c = format::load_coloring(&a.path)?;
    let mut report = DiagnoseJson {
        path: path_string(&a.path),
        n: c.n(),
        p: c.p(),
        colors: c.k(),
        accounting: None,
        gallai: None,
        rainbow_triangle: None,
        cancellative_free: None,
        cancellative_formula: None,
        structure: None,
        ok: true,
    };
    if c.p() == 2 {
        let g = rainbow_core::ColoredGraph::from_coloring(&c).expect("p = 2");
        match diagnostics::gallai_defect(&g) {
            Ok(d) => {
                report.ok = d.bound_ok;
                report.gallai = Some(d.into());
            }
            Err(_) => report.rainbow_triangle = g.has_rainbow_triangle(),
        }
    }
    if c.p() == 3 {
        let acc = diagnostics::f4_accounting(&c).map_err(CliError::input)?;
        report.ok &= acc.violations().is_empty();
        let bounds = diagnostics::f4_bounds(c.n()).ok();
        if acc.f4_free {
            if let Some(b) = bounds {
                report.ok &= b.contains(acc.k);
            }
        }
        report.accounting = Some(AccountingJson::new(&acc, bounds));
    }
    if c.p() >= 3 {
        report.cancellative_free = Some(patterns::find_rainbow_cancellative(&c).is_none());
        report.cancellative_formula = diagnostics::ar_cancellative_formula(c.n(), c.p()).ok();
        report.structure = Some(StructureJson::from(&diagnostics::check_extremal_structure(&c)));
    }
    let ok = report.ok;
    emit(out, &report)?;
    Ok(if ok { EXIT_OK } else { EXIT_WITNESS })
}

#[derive(Debug, Serialize)]
struct PackingJson {
    n: usize,
    seed: u64,
    blocks: usize,
    schonheim: usize,
    valid: bool,
    path: Option<String>,
    system: TripleSystemJson,
}

fn packing(a: PackingArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let seed = a.seed.seed;
    let target = designs::schonheim(a.n).map_err(CliError::input)?;
    let (system, code) = match designs::build_mpsts(a.n, seed, a.iter_cap) {
        Ok(t) => (t, EXIT_OK),
        Err(DesignError::Suboptimal { system, .. }) => (system, EXIT_BUDGET),
        Err(e) => return Err(CliError::input(e)),
    };
    if let Some(path) = &a.out {
        format::save_triple_system(path, &system)?;
    }
    emit(
        out,
        &PackingJson {
            n: a.n,
            seed,
            blocks: system.len(),
            schonheim: target,
            valid: designs::validate_psts(&system).valid,
            path: a.out.as_deref().map(path_string),
            system: TripleSystemJson::from(&system),
        },
    )?;
    Ok(code)
}

#[derive(Debug, Serialize)]
struct GrassmannReport {
    s: u32,
    seed: u64,
    restarts: usize,
    vertices: usize,
    edges: usize,
    independent_set: Vec<usize>,
    classes: usize,
    good: bool,
    plane_coloring: std::collections::BTreeMap<usize, u32>,
    graph: GrassmannJson,
}

fn grassmann(a: GrassmannArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let seed = a.seed.seed;
    let j = gf2geom::build_grassmann(a.s).map_err(CliError::input)?;
    let indep = gf2geom::best_independent_set(&j, seed, a.restarts);
    let phi = gf2geom::good_coloring_from_independent_set(&j, &indep).map_err(CliError::input)?;
    let good = gf2geom::is_good_coloring(&j, &phi).map_err(CliError::input)?.good;
    emit(
        out,
        &GrassmannReport {
            s: a.s,
            seed,
            restarts: a.restarts,
            vertices: j.vertex_count(),
            edges: j.edge_count(),
            classes: gf2geom::class_count(&phi),
            independent_set: indep,
            good,
            plane_coloring: plane_coloring_json(&phi),
            graph: GrassmannJson::from(&j),
        },
    )?;
    Ok(EXIT_OK)
}

/// Renders a coloring as JSON (same fields as the text format).
pub fn coloring_json(c: &Coloring) -> String {
    serde_json::to_string_pretty(&ColoringJson::from(c)).expect("serializable")
}
