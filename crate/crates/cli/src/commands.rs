//! Argument parsing and subcommand execution.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use tcorona_core::cospectral::{
    seed_pair, t_edge_cospectral_composition, t_edge_cospectral_pair, CoronaCospectralPair,
};
use tcorona_core::verify::{self, CheckId, GridEntry, Verdict, VerifyConfig, VerifyOutcome};
use tcorona_core::{corona, CoronaKind, Graph, Instance, MatrixKind, Spectrum};

use crate::format;
use crate::report;
use crate::resolve::{resolve, ResolveError, FAMILY_HELP};

/// Relative output paths are joined onto this directory when it is set.
pub const OUT_DIR_ENV: &str = "TCORONA_OUT_DIR";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Resolve(#[from] ResolveError),
    #[error("{what}")]
    Invalid { what: String },
    #[error("{path}: {err}")]
    Io { path: String, err: std::io::Error },
    #[error("{what}")]
    Numerics { what: String },
}

impl CliError {
    /// Usage problems exit 2; numeric failures (a certification that does
    /// not hold, an eigensolve that does not converge) exit 1.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Numerics { .. } => 1,
            _ => 2,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "tcorona",
    version,
    about = "Total-graph neighborhood coronas: construction, spectra, \
             verified characteristic polynomial forms, cospectral pairs",
    after_help = format!("Graphs are described as {FAMILY_HELP}.")
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    /// One copy of the second graph per vertex of the first.
    Tvn,
    /// One copy of the second graph per edge of the first.
    Ten,
}

impl KindArg {
    fn kind(self) -> CoronaKind {
        match self {
            KindArg::Tvn => CoronaKind::TVertex,
            KindArg::Ten => CoronaKind::TEdge,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MatrixArg {
    /// Adjacency matrix.
    #[value(name = "A", alias = "a", alias = "adjacency")]
    Adjacency,
    /// Laplacian matrix.
    #[value(name = "L", alias = "l", alias = "laplacian")]
    Laplacian,
}

impl MatrixArg {
    fn kind(self) -> MatrixKind {
        match self {
            MatrixArg::Adjacency => MatrixKind::Adjacency,
            MatrixArg::Laplacian => MatrixKind::Laplacian,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph as an edge list.
    Generate {
        /// Graph to write.
        #[arg(long)]
        graph: String,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a corona and write it as an edge list.
    Corona {
        /// Base graph.
        #[arg(long)]
        g1: String,
        /// Copy graph.
        #[arg(long)]
        g2: String,
        /// Which corona to build.
        #[arg(long, value_enum, default_value_t = KindArg::Tvn)]
        kind: KindArg,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print eigenvalues in ascending order, one per line.
    Spectrum {
        /// Graph to analyze; mutually exclusive with --g1/--g2.
        #[arg(long)]
        graph: Option<String>,
        /// Base graph of a corona to analyze.
        #[arg(long, requires = "g2")]
        g1: Option<String>,
        /// Copy graph of a corona to analyze.
        #[arg(long, requires = "g1")]
        g2: Option<String>,
        /// Which corona to build when --g1/--g2 are given.
        #[arg(long, value_enum, default_value_t = KindArg::Tvn)]
        kind: KindArg,
        /// Which matrix to take the spectrum of.
        #[arg(long, value_enum, default_value_t = MatrixArg::Adjacency)]
        matrix: MatrixArg,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every written form of the factored characteristic polynomials
    /// against determinant and eigensolver oracles at seeded random points.
    Verify {
        /// Base graph of a single instance; the full stock grid when omitted.
        #[arg(long, requires = "g2")]
        g1: Option<String>,
        /// Copy graph of a single instance.
        #[arg(long, requires = "g1")]
        g2: Option<String>,
        /// Comma-separated check keys (adj-tvn, lap-tvn, adj-ten, lap-ten,
        /// adj-ten-spectrum, adj-ten-spectrum-kpq, lap-ten-spectrum); all
        /// seven when omitted.
        #[arg(long)]
        checks: Option<String>,
        /// Base seed for the evaluation points.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Evaluation points per form and instance.
        #[arg(long, default_value_t = 20)]
        points: usize,
        /// Binding tolerance for formula and spectrum checks.
        #[arg(long)]
        tol: Option<f64>,
        /// Emit the full report as JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build certified cospectral, non-regular corona pairs from the two
    /// strongly regular seed graphs.
    CospectralDemo {
        /// Copy graph crossed with both seed graphs in the base slot.
        #[arg(long, default_value = "complete:2")]
        g2: String,
        /// Also cross this base graph with the seeds in the copy slot.
        #[arg(long)]
        composition: Option<String>,
        /// Certification tolerance for the corona spectra.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Directory receiving the graphs as edge lists; print-only when
        /// omitted.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

/// Parses the process arguments, runs the chosen command, and returns the
/// process exit code.
pub fn run() -> u8 {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Generate { graph, out } => {
            let g = resolve(&graph)?;
            emit(out.as_deref(), &format::to_text(&g))?;
            Ok(0)
        }
        Command::Corona { g1, g2, kind, out } => {
            let base = resolve(&g1)?;
            let copy = resolve(&g2)?;
            let c = corona(&base, &copy, kind.kind())
                .map_err(|e| CliError::Invalid { what: format!("{g1} with {g2}: {e}") })?;
            eprintln!(
                "{} corona of {} with {}: {} vertices, {} edges",
                kind.kind().key(),
                g1,
                g2,
                c.graph.vertex_count(),
                c.graph.edge_count()
            );
            emit(out.as_deref(), &format::to_text(&c.graph))?;
            Ok(0)
        }
        Command::Spectrum { graph, g1, g2, kind, matrix, out } => {
            let g = spectrum_target(graph, g1, g2, kind)?;
            let s = Spectrum::of(&g, matrix.kind())
                .map_err(|e| CliError::Numerics { what: format!("eigensolve failed: {e}") })?;
            let mut text = String::new();
            for v in s.ascending() {
                let v = if v == 0.0 { 0.0 } else { v };
                writeln!(text, "{v:.12}").unwrap();
            }
            emit(out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Verify { g1, g2, checks, seed, points, tol, json, out } => {
            run_verify(g1, g2, checks, seed, points, tol, json, out.as_deref())
        }
        Command::CospectralDemo { g2, composition, tol, out_dir } => {
            run_cospectral_demo(&g2, composition.as_deref(), tol, out_dir.as_deref())
        }
    }
}

fn spectrum_target(
    graph: Option<String>,
    g1: Option<String>,
    g2: Option<String>,
    kind: KindArg,
) -> Result<Graph, CliError> {
    match (graph, g1, g2) {
        (Some(spec), None, None) => Ok(resolve(&spec)?),
        (None, Some(a), Some(b)) => {
            let base = resolve(&a)?;
            let copy = resolve(&b)?;
            let c = corona(&base, &copy, kind.kind())
                .map_err(|e| CliError::Invalid { what: format!("{a} with {b}: {e}") })?;
            Ok(c.graph)
        }
        (Some(_), Some(_), _) => Err(CliError::Invalid {
            what: String::from("--graph and --g1/--g2 are mutually exclusive"),
        }),
        _ => Err(CliError::Invalid {
            what: String::from("spectrum needs either --graph or --g1 and --g2"),
        }),
    }
}

#[allow(clippy::too_many_arguments)]
fn run_verify(
    g1: Option<String>,
    g2: Option<String>,
    checks: Option<String>,
    seed: u64,
    points: usize,
    tol: Option<f64>,
    json: bool,
    out: Option<&Path>,
) -> Result<u8, CliError> {
    let grid = match (g1, g2) {
        (Some(a), Some(b)) => {
            let base = resolve(&a)?;
            let copy = resolve(&b)?;
            // The harness silently skips entries outside a formula's
            // hypotheses; an explicitly requested instance should be loud.
            Instance::new(&base, &copy)
                .map_err(|e| CliError::Invalid { what: format!("{a} with {b}: {e}") })?;
            vec![GridEntry::new(&a, base, &b, copy)]
        }
        (None, None) => verify::default_grid(),
        _ => unreachable!("clap keeps --g1 and --g2 together"),
    };
    let checks = match checks {
        None => CheckId::ALL.to_vec(),
        Some(s) => s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                CheckId::from_key(t).ok_or_else(|| CliError::Invalid {
                    what: format!(
                        "unknown check `{t}`; expected one of {}",
                        CheckId::ALL.map(CheckId::key).join(", ")
                    ),
                })
            })
            .collect::<Result<Vec<_>, _>>()?,
    };
    if checks.is_empty() {
        return Err(CliError::Invalid { what: String::from("--checks names no checks") });
    }

    let mut cfg = VerifyConfig { seed, points, ..VerifyConfig::default() };
    if let Some(t) = tol {
        cfg.formula_tolerance = t;
        cfg.spectrum_tolerance = t;
    }
    let outcome = verify::run(&cfg, &grid, &checks);
    let text = if json {
        report::to_json(&report::document(&cfg, &grid, &checks, &outcome))
    } else {
        render_outcome(&outcome)
    };
    emit(out, &text)?;
    Ok(if outcome.passed() { 0 } else { 1 })
}

fn render_outcome(outcome: &VerifyOutcome) -> String {
    let mut s = String::new();
    for r in &outcome.reports {
        writeln!(
            s,
            "{:<24} {:<18} {:<24} {:<28} max {:9.3e} tol {:7.1e}",
            r.verdict.key(),
            r.check.key(),
            r.variant,
            report::instance_key(&r.g1, &r.g2),
            r.max_deviation,
            r.tolerance
        )
        .unwrap();
        if r.verdict != Verdict::Pass {
            writeln!(s, "    {}", r.notes).unwrap();
        }
    }
    writeln!(
        s,
        "{} rows, {} binding failures: {}",
        outcome.reports.len(),
        outcome.binding_failures,
        if outcome.passed() { "PASS" } else { "FAIL" }
    )
    .unwrap();
    s
}

fn run_cospectral_demo(
    g2: &str,
    composition: Option<&str>,
    tol: f64,
    out_dir: Option<&Path>,
) -> Result<u8, CliError> {
    let seeds = seed_pair()
        .map_err(|e| CliError::Numerics { what: format!("seed certification failed: {e}") })?;
    println!(
        "seed pair {} / {}: {} vertices each, adjacency spectra within {:.3e}, \
         laplacian spectra within {:.3e}",
        seeds.left_key,
        seeds.right_key,
        seeds.left.vertex_count(),
        seeds.adjacency_deviation,
        seeds.laplacian_deviation
    );

    let copy = resolve(g2)?;
    let crossed = t_edge_cospectral_pair(&seeds, &copy, tol)
        .map_err(|e| CliError::Numerics { what: format!("pair certification failed: {e}") })?;
    describe_pair(&format!("edge corona with {g2} in the copy slot"), &crossed);

    let mut files = vec![
        (String::from("seed-left.edges"), format::to_text(&seeds.left)),
        (String::from("seed-right.edges"), format::to_text(&seeds.right)),
        (String::from("pair-left.edges"), format::to_text(&crossed.left.graph)),
        (String::from("pair-right.edges"), format::to_text(&crossed.right.graph)),
    ];

    if let Some(base) = composition {
        let g1 = resolve(base)?;
        let composed = t_edge_cospectral_composition(&g1, &seeds, tol).map_err(|e| {
            CliError::Numerics { what: format!("composition certification failed: {e}") }
        })?;
        describe_pair(&format!("edge corona over {base} with the seeds in the copy slot"), &composed);
        files.push((String::from("composition-left.edges"), format::to_text(&composed.left.graph)));
        files
            .push((String::from("composition-right.edges"), format::to_text(&composed.right.graph)));
    }

    if let Some(dir) = out_dir {
        let dir = resolve_out_path(dir);
        fs::create_dir_all(&dir)
            .map_err(|err| CliError::Io { path: dir.display().to_string(), err })?;
        for (name, text) in &files {
            let path = dir.join(name);
            fs::write(&path, text)
                .map_err(|err| CliError::Io { path: path.display().to_string(), err })?;
        }
        println!("wrote {} edge lists to {}", files.len(), dir.display());
    }
    Ok(0)
}

fn describe_pair(what: &str, pair: &CoronaCospectralPair) {
    println!(
        "{what}: {} vertices each, both non-regular, adjacency spectra within {:.3e}, \
         laplacian spectra within {:.3e}",
        pair.left.graph.vertex_count(),
        pair.adjacency_deviation,
        pair.laplacian_deviation
    );
}

fn resolve_out_path(p: &Path) -> PathBuf {
    if p.is_absolute() {
        return p.to_path_buf();
    }
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) => PathBuf::from(dir).join(p),
        None => p.to_path_buf(),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(p) => {
            let path = resolve_out_path(p);
            fs::write(&path, text)
                .map_err(|err| CliError::Io { path: path.display().to_string(), err })
        }
    }
}
