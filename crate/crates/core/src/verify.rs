//! Randomized verification of every written form against independent oracles.
//!
//! For each (base graph, copy graph) pair in a grid, the harness builds the
//! corona, then checks at seeded random points that each written form of the
//! characteristic polynomial reproduces `det(xI - M)` computed by dense LU,
//! and that copy-block Schur elimination reproduces the same determinant by a
//! third route. Spectrum predictions are checked as multisets against the
//! eigensolver. Derived forms and oracle cross-checks are binding: a miss is
//! a failure. Printed transcriptions that miss are reported as documented
//! discrepancies with a note explaining the known deviation.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::charpoly::{
    block_schur_det, eval, pole_set, variants, FormVariant, FormulaId, Instance, POLE_DELTA,
};
use crate::corona::{corona, Corona, CoronaKind};
use crate::eigen::symmetric_eigenvalues;
use crate::generators;
use crate::graph::Graph;
use crate::linalg::det_at;
use crate::matrix::{Mat, MatrixKind};
use crate::predict;
use crate::spectrum::multiset_equal;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Base seed; each (check, grid entry) derives its own stream from it.
    pub seed: u64,
    /// Random evaluation points per (check, grid entry).
    pub points: usize,
    /// Sampling keeps at least this distance from formula poles (clamped
    /// below at the evaluator's own guard distance).
    pub pole_delta: f64,
    /// Sampling keeps at least this distance from the corona's own
    /// eigenvalues, where the determinant vanishes and relative comparison
    /// is meaningless.
    pub zero_margin: f64,
    /// Binding tolerance for the block-elimination determinant route.
    pub block_tolerance: f64,
    /// Binding tolerance for derived forms; printed forms are reported
    /// against the same bar.
    pub formula_tolerance: f64,
    /// Binding tolerance for predicted spectra as multisets.
    pub spectrum_tolerance: f64,
}

impl Default for VerifyConfig {
    fn default() -> VerifyConfig {
        VerifyConfig {
            seed: 42,
            points: 20,
            pole_delta: POLE_DELTA,
            zero_margin: 1e-2,
            block_tolerance: 1e-9,
            formula_tolerance: 1e-6,
            spectrum_tolerance: 1e-6,
        }
    }
}

/// One verification activity. The four form checks compare every written
/// form of a factored characteristic polynomial (plus the block-elimination
/// determinant) against dense LU at random points; the three spectrum checks
/// compare a predicted eigenvalue multiset against the eigensolver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckId {
    AdjacencyTVertexForm,
    LaplacianTVertexForm,
    AdjacencyTEdgeForm,
    LaplacianTEdgeForm,
    AdjacencyTEdgeSpectrum,
    AdjacencyTEdgeSpectrumBipartite,
    LaplacianTEdgeSpectrum,
}

impl CheckId {
    pub const ALL: [CheckId; 7] = [
        CheckId::AdjacencyTVertexForm,
        CheckId::LaplacianTVertexForm,
        CheckId::AdjacencyTEdgeForm,
        CheckId::LaplacianTEdgeForm,
        CheckId::AdjacencyTEdgeSpectrum,
        CheckId::AdjacencyTEdgeSpectrumBipartite,
        CheckId::LaplacianTEdgeSpectrum,
    ];

    pub fn key(self) -> &'static str {
        match self {
            CheckId::AdjacencyTVertexForm => "adj-tvn",
            CheckId::LaplacianTVertexForm => "lap-tvn",
            CheckId::AdjacencyTEdgeForm => "adj-ten",
            CheckId::LaplacianTEdgeForm => "lap-ten",
            CheckId::AdjacencyTEdgeSpectrum => "adj-ten-spectrum",
            CheckId::AdjacencyTEdgeSpectrumBipartite => "adj-ten-spectrum-kpq",
            CheckId::LaplacianTEdgeSpectrum => "lap-ten-spectrum",
        }
    }

    pub fn from_key(key: &str) -> Option<CheckId> {
        CheckId::ALL.into_iter().find(|c| c.key() == key)
    }

    fn formula(self) -> Option<FormulaId> {
        match self {
            CheckId::AdjacencyTVertexForm => Some(FormulaId::AdjacencyTVertex),
            CheckId::LaplacianTVertexForm => Some(FormulaId::LaplacianTVertex),
            CheckId::AdjacencyTEdgeForm => Some(FormulaId::AdjacencyTEdge),
            CheckId::LaplacianTEdgeForm => Some(FormulaId::LaplacianTEdge),
            _ => None,
        }
    }
}

/// A (base graph, copy graph) pair under test, with the names the reports
/// should carry.
#[derive(Debug, Clone)]
pub struct GridEntry {
    pub g1_key: String,
    pub g1: Graph,
    pub g2_key: String,
    pub g2: Graph,
}

impl GridEntry {
    pub fn new(g1_key: &str, g1: Graph, g2_key: &str, g2: Graph) -> GridEntry {
        GridEntry { g1_key: String::from(g1_key), g1, g2_key: String::from(g2_key), g2 }
    }
}

/// The stock verification grid: every regular base graph family crossed with
/// copy graphs that exercise regular, bipartite, and unstructured cases.
pub fn default_grid() -> Vec<GridEntry> {
    let bases: [(&str, Graph); 8] = [
        ("cycle:3", generators::cycle(3).unwrap()),
        ("cycle:4", generators::cycle(4).unwrap()),
        ("cycle:5", generators::cycle(5).unwrap()),
        ("cycle:6", generators::cycle(6).unwrap()),
        ("complete:4", generators::complete(4).unwrap()),
        ("complete:5", generators::complete(5).unwrap()),
        ("petersen", generators::petersen()),
        ("hypercube:3", generators::hypercube(3).unwrap()),
    ];
    let copies: [(&str, Graph); 7] = [
        ("complete:1", generators::complete(1).unwrap()),
        ("complete:2", generators::complete(2).unwrap()),
        ("complete:3", generators::complete(3).unwrap()),
        ("cycle:4", generators::cycle(4).unwrap()),
        ("path:3", generators::path(3).unwrap()),
        ("kpq:1,2", generators::complete_bipartite(1, 2).unwrap()),
        ("kpq:2,3", generators::complete_bipartite(2, 3).unwrap()),
    ];
    let mut grid = Vec::with_capacity(bases.len() * copies.len());
    for (g1_key, g1) in &bases {
        for (g2_key, g2) in &copies {
            grid.push(GridEntry::new(g1_key, g1.clone(), g2_key, g2.clone()));
        }
    }
    grid
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// A printed transcription missed the oracle in the way its note
    /// documents. Expected for the known deviations; never binding.
    DocumentedDiscrepancy,
}

impl Verdict {
    pub fn key(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::DocumentedDiscrepancy => "documented-discrepancy",
        }
    }
}

/// One row of the verification report: a single written form (or oracle
/// cross-check, or spectrum prediction) on a single grid entry.
#[derive(Debug, Clone)]
pub struct Report {
    pub check: CheckId,
    pub g1: String,
    pub g2: String,
    pub mode: &'static str,
    pub variant: &'static str,
    pub tolerance: f64,
    pub seed: u64,
    pub deviations: Vec<f64>,
    pub max_deviation: f64,
    pub verdict: Verdict,
    /// Whether a miss on this row fails the run.
    pub binding: bool,
    pub notes: String,
}

#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub reports: Vec<Report>,
    pub binding_failures: usize,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.binding_failures == 0
    }
}

/// Runs the chosen checks over the grid. Grid entries that do not satisfy a
/// check's hypotheses (irregular base, copy graph of the wrong shape) are
/// skipped without a row; callers that want loud rejection should validate
/// entries up front with [`Instance::new`].
pub fn run(cfg: &VerifyConfig, grid: &[GridEntry], checks: &[CheckId]) -> VerifyOutcome {
    let mut reports = Vec::new();
    for entry in grid {
        let inst = match Instance::new(&entry.g1, &entry.g2) {
            Ok(inst) => inst,
            Err(_) => continue,
        };
        let mut cache = EntryCache::default();
        for &check in checks {
            match check.formula() {
                Some(id) => run_form_check(cfg, check, id, entry, &inst, &mut cache, &mut reports),
                None => run_spectrum_check(cfg, check, entry, &inst, &mut cache, &mut reports),
            }
        }
    }
    let binding_failures =
        reports.iter().filter(|r| r.binding && r.verdict == Verdict::Fail).count();
    VerifyOutcome { reports, binding_failures }
}

/// Corona, matrix, and eigenvalues shared by every check on one grid entry.
struct CoronaData {
    corona: Corona,
    matrix: Mat,
    /// Ascending.
    eigenvalues: Vec<f64>,
}

#[derive(Default)]
struct EntryCache {
    slots: [[Option<CoronaData>; 2]; 2],
}

impl EntryCache {
    fn get(&mut self, entry: &GridEntry, kind: CoronaKind, mk: MatrixKind) -> &CoronaData {
        let i = match kind {
            CoronaKind::TVertex => 0,
            CoronaKind::TEdge => 1,
        };
        let j = match mk {
            MatrixKind::Adjacency => 0,
            MatrixKind::Laplacian => 1,
        };
        if self.slots[i][j].is_none() {
            let c = corona(&entry.g1, &entry.g2, kind).expect("grid entry was validated");
            let matrix = c.matrix(mk);
            let eigenvalues = symmetric_eigenvalues(&matrix)
                .expect("eigensolver did not converge on a corona matrix");
            self.slots[i][j] = Some(CoronaData { corona: c, matrix, eigenvalues });
        }
        self.slots[i][j].as_ref().unwrap()
    }
}

fn rel_deviation(a: f64, b: f64) -> f64 {
    let denom = libm::fabs(a).max(libm::fabs(b));
    if denom == 0.0 {
        0.0
    } else {
        libm::fabs(a - b) / denom
    }
}

/// FNV-1a over the parts with a terminator after each, so that part
/// boundaries matter.
fn fnv1a64(parts: &[&str]) -> u64 {
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = 0xcbf2_9ce4_8422_2325_u64;
    for part in parts {
        for &b in part.as_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(PRIME);
        }
        h ^= 0xff;
        h = h.wrapping_mul(PRIME);
    }
    h
}

/// Uniform points in [lo, hi] staying `pole_delta` away from every pole and
/// `zero_margin` away from every eigenvalue, by rejection.
fn sample_points(
    rng: &mut ChaCha8Rng,
    count: usize,
    lo: f64,
    hi: f64,
    poles: &[f64],
    pole_delta: f64,
    eigenvalues: &[f64],
    zero_margin: f64,
) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    let span = hi - lo;
    let mut attempts = 0;
    while out.len() < count && attempts < count * 1000 {
        attempts += 1;
        let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        let x = lo + u * span;
        if poles.iter().any(|p| libm::fabs(x - p) < pole_delta) {
            continue;
        }
        if eigenvalues.iter().any(|e| libm::fabs(x - e) < zero_margin) {
            continue;
        }
        out.push(x);
    }
    out
}

fn run_form_check(
    cfg: &VerifyConfig,
    check: CheckId,
    id: FormulaId,
    entry: &GridEntry,
    inst: &Instance,
    cache: &mut EntryCache,
    reports: &mut Vec<Report>,
) {
    let data = cache.get(entry, id.corona_kind(), id.matrix_kind());
    let poles = pole_set(id, inst);
    let seed = cfg.seed ^ fnv1a64(&[check.key(), &entry.g1_key, &entry.g2_key]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = data.eigenvalues.first().copied().unwrap_or(0.0) - 2.0;
    let hi = data.eigenvalues.last().copied().unwrap_or(0.0) + 2.0;
    let guard = cfg.pole_delta.max(POLE_DELTA);
    let points = sample_points(
        &mut rng,
        cfg.points,
        lo,
        hi,
        &poles,
        guard,
        &data.eigenvalues,
        cfg.zero_margin,
    );

    let forms = variants(id);
    let mut form_devs: Vec<Vec<f64>> = vec![Vec::with_capacity(points.len()); forms.len()];
    let mut form_refusals = vec![0usize; forms.len()];
    let mut block_devs = Vec::with_capacity(points.len());
    let mut block_refusals = 0usize;
    for &x in &points {
        let oracle = det_at(&data.matrix, x);
        match block_schur_det(&data.matrix, &data.corona.layout, x, guard) {
            Ok(b) => block_devs.push(rel_deviation(b, oracle)),
            Err(_) => {
                block_devs.push(f64::INFINITY);
                block_refusals += 1;
            }
        }
        for (vi, &variant) in forms.iter().enumerate() {
            match eval(id, variant, inst, x) {
                Ok(v) => form_devs[vi].push(rel_deviation(v, oracle)),
                Err(_) => {
                    form_devs[vi].push(f64::INFINITY);
                    form_refusals[vi] += 1;
                }
            }
        }
    }

    let max_of = |devs: &[f64]| devs.iter().copied().fold(0.0_f64, f64::max);
    let block_max = max_of(&block_devs);
    let mut block_notes = String::from(
        "determinant via copy-block elimination against dense factorization",
    );
    if block_refusals > 0 {
        block_notes.push_str(&format!("; refused at {block_refusals} points"));
    }
    if points.len() < cfg.points {
        block_notes.push_str(&format!("; only {} of {} points sampled", points.len(), cfg.points));
    }
    reports.push(Report {
        check,
        g1: entry.g1_key.clone(),
        g2: entry.g2_key.clone(),
        mode: "point-evaluation",
        variant: "block-elimination",
        tolerance: cfg.block_tolerance,
        seed,
        max_deviation: block_max,
        verdict: if block_max <= cfg.block_tolerance { Verdict::Pass } else { Verdict::Fail },
        deviations: block_devs,
        binding: true,
        notes: block_notes,
    });

    for (vi, &variant) in forms.iter().enumerate() {
        let devs = core::mem::take(&mut form_devs[vi]);
        let max_dev = max_of(&devs);
        let binding = variant == FormVariant::Derived;
        let within = max_dev <= cfg.formula_tolerance;
        let verdict = if within {
            Verdict::Pass
        } else if binding {
            Verdict::Fail
        } else {
            Verdict::DocumentedDiscrepancy
        };
        let mut notes = String::from(variant_note(id, variant));
        if !within && id == FormulaId::AdjacencyTVertex && variant == FormVariant::PrintedStatement
        {
            if let Some(line) = copy_factor_isolation(inst, &points, &devs) {
                notes.push_str(&line);
            }
        }
        if form_refusals[vi] > 0 {
            notes.push_str(&format!("; refused at {} points", form_refusals[vi]));
        }
        reports.push(Report {
            check,
            g1: entry.g1_key.clone(),
            g2: entry.g2_key.clone(),
            mode: "point-evaluation",
            variant: variant.key(),
            tolerance: cfg.formula_tolerance,
            seed,
            max_deviation: max_dev,
            verdict,
            deviations: devs,
            binding,
            notes,
        });
    }
}

fn variant_note(id: FormulaId, variant: FormVariant) -> &'static str {
    match (id, variant) {
        (_, FormVariant::Derived) => "re-derived form, binding against the determinant oracle",
        (FormulaId::AdjacencyTVertex, _) => {
            "statement omits the copy characteristic polynomial factor (one copy per base vertex)"
        }
        (FormulaId::LaplacianTVertex, FormVariant::PrintedStatement) => {
            "statement transcribes the lower coupling block with a plus sign where the derivation has a minus"
        }
        (FormulaId::LaplacianTVertex, FormVariant::PrintedClosingLine) => {
            "closing line keeps the statement's coupling sign and also shifts the edge-block diagonal constant"
        }
        (FormulaId::AdjacencyTEdge, _) => "statement matches the derivation exactly",
        (FormulaId::LaplacianTEdge, FormVariant::PrintedStatement) => {
            "statement omits one scalar family per base edge and carries the coronal term on the squared shift with a plus sign"
        }
        (FormulaId::LaplacianTEdge, FormVariant::PrintedClosingLine) => {
            "closing line omits the same scalar family and flips the coronal sign on the squared shift"
        }
    }
}

/// For the vertex-indexed adjacency statement: at the worst sampled point,
/// restoring the omitted factor should reproduce the derived value. The
/// returned note records how exactly it does.
fn copy_factor_isolation(inst: &Instance, points: &[f64], devs: &[f64]) -> Option<String> {
    let (worst, _) = devs
        .iter()
        .enumerate()
        .filter(|(_, d)| d.is_finite())
        .max_by(|a, b| a.1.total_cmp(b.1))?;
    let x = points[worst];
    let derived = eval(FormulaId::AdjacencyTVertex, FormVariant::Derived, inst, x).ok()?;
    let printed = eval(FormulaId::AdjacencyTVertex, FormVariant::PrintedStatement, inst, x).ok()?;
    let copy_poly: f64 = inst.lam2.iter().map(|&l| x - l).product();
    let restored = printed * crate::matrix::powi(copy_poly, inst.n1);
    Some(format!(
        "; restoring the factor at the worst point x={x:.6} reproduces the derived value (rel gap {:.3e})",
        rel_deviation(restored, derived)
    ))
}

fn run_spectrum_check(
    cfg: &VerifyConfig,
    check: CheckId,
    entry: &GridEntry,
    inst: &Instance,
    cache: &mut EntryCache,
    reports: &mut Vec<Report>,
) {
    let (mk, prediction) = match check {
        CheckId::AdjacencyTEdgeSpectrum => {
            if inst.r2.is_none() {
                return;
            }
            (MatrixKind::Adjacency, predict::adjacency_spectrum_t_edge(inst))
        }
        CheckId::AdjacencyTEdgeSpectrumBipartite => {
            if inst.g2.complete_bipartite_parts().is_none() {
                return;
            }
            (MatrixKind::Adjacency, predict::adjacency_spectrum_t_edge_complete_bipartite(inst))
        }
        CheckId::LaplacianTEdgeSpectrum => {
            (MatrixKind::Laplacian, predict::laplacian_spectrum_t_edge(inst))
        }
        _ => unreachable!("form checks are dispatched elsewhere"),
    };
    let data = cache.get(entry, CoronaKind::TEdge, mk);
    let mut report = Report {
        check,
        g1: entry.g1_key.clone(),
        g2: entry.g2_key.clone(),
        mode: "spectrum-multiset",
        variant: "derived",
        tolerance: cfg.spectrum_tolerance,
        seed: cfg.seed,
        deviations: Vec::new(),
        max_deviation: f64::INFINITY,
        verdict: Verdict::Fail,
        binding: true,
        notes: String::new(),
    };
    match prediction {
        Ok(p) => {
            let m = multiset_equal(p.spectrum.values(), &data.eigenvalues, cfg.spectrum_tolerance);
            report.deviations = vec![m.max_deviation];
            report.max_deviation = m.max_deviation;
            report.verdict = if m.equal { Verdict::Pass } else { Verdict::Fail };
            let mut notes = String::from("predicted eigenvalue multiset against the eigensolver");
            for d in &p.discrepancies {
                notes.push_str(&format!(
                    "; printed deviation at {}: printed {} vs derived {}",
                    d.context, d.printed, d.derived
                ));
            }
            report.notes = notes;
        }
        Err(e) => {
            report.notes = format!("prediction failed: {e}");
        }
    }
    reports.push(report);
}
