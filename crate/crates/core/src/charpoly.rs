//! Factored characteristic polynomials of the two coronas.
//!
//! Each corona has a factored form for its adjacency and Laplacian
//! characteristic polynomial, built from the base graph's spectrum, the
//! incidence structure, and the coronal of the copy graph. Every formula is
//! kept in up to three written forms:
//!
//! * [`FormVariant::Derived`] is the self-consistent form this crate derives
//!   and expects to match the determinant and eigensolver oracles;
//! * [`FormVariant::PrintedStatement`] and [`FormVariant::PrintedClosingLine`]
//!   are transcriptions of the same result as it circulates in print (the
//!   boxed statement and the closing line of its derivation). Where a
//!   transcription deviates from the derivation, it is kept verbatim so the
//!   verifier can measure and document the deviation instead of silently
//!   correcting it.

use alloc::vec::Vec;

use crate::corona::{CoronaKind, CoronaLayout};
use crate::eigen::{symmetric_eigenvalues, EigenError};
use crate::graph::Graph;
use crate::linalg::{det, Lu};
use crate::matrix::{powi, Mat, MatrixKind};
use crate::spectrum::{coronal_with_spectrum, CoronalError, Spectrum};

/// Which factored characteristic polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulaId {
    /// Adjacency of the vertex-indexed corona.
    AdjacencyTVertex,
    /// Laplacian of the vertex-indexed corona.
    LaplacianTVertex,
    /// Adjacency of the edge-indexed corona.
    AdjacencyTEdge,
    /// Laplacian of the edge-indexed corona.
    LaplacianTEdge,
}

impl FormulaId {
    pub const ALL: [FormulaId; 4] = [
        FormulaId::AdjacencyTVertex,
        FormulaId::LaplacianTVertex,
        FormulaId::AdjacencyTEdge,
        FormulaId::LaplacianTEdge,
    ];

    pub fn key(self) -> &'static str {
        match self {
            FormulaId::AdjacencyTVertex => "adj-tvn",
            FormulaId::LaplacianTVertex => "lap-tvn",
            FormulaId::AdjacencyTEdge => "adj-ten",
            FormulaId::LaplacianTEdge => "lap-ten",
        }
    }

    pub fn matrix_kind(self) -> MatrixKind {
        match self {
            FormulaId::AdjacencyTVertex | FormulaId::AdjacencyTEdge => MatrixKind::Adjacency,
            FormulaId::LaplacianTVertex | FormulaId::LaplacianTEdge => MatrixKind::Laplacian,
        }
    }

    pub fn corona_kind(self) -> CoronaKind {
        match self {
            FormulaId::AdjacencyTVertex | FormulaId::LaplacianTVertex => CoronaKind::TVertex,
            FormulaId::AdjacencyTEdge | FormulaId::LaplacianTEdge => CoronaKind::TEdge,
        }
    }
}

/// Which written form of a formula to evaluate. See the module docs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormVariant {
    Derived,
    PrintedStatement,
    PrintedClosingLine,
}

impl FormVariant {
    pub fn key(self) -> &'static str {
        match self {
            FormVariant::Derived => "derived",
            FormVariant::PrintedStatement => "printed-statement",
            FormVariant::PrintedClosingLine => "printed-closing-line",
        }
    }
}

/// The written forms that exist for a formula. The edge-indexed adjacency
/// statement matches its derivation, so it has no separate closing-line
/// transcription; the two Laplacian formulas each circulate in two printed
/// forms that differ from each other as well as from the derivation.
pub fn variants(id: FormulaId) -> &'static [FormVariant] {
    match id {
        FormulaId::AdjacencyTVertex | FormulaId::AdjacencyTEdge => {
            &[FormVariant::Derived, FormVariant::PrintedStatement]
        }
        FormulaId::LaplacianTVertex | FormulaId::LaplacianTEdge => &[
            FormVariant::Derived,
            FormVariant::PrintedStatement,
            FormVariant::PrintedClosingLine,
        ],
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum InstanceError {
    BaseNotConnected,
    BaseNotRegular,
    /// The factored forms need at least as many edges as vertices in the
    /// base graph, i.e. regular degree at least 2.
    BaseDegreeTooSmall { degree: usize },
    EmptyCopyGraph,
    Eigen(EigenError),
}

impl core::fmt::Display for InstanceError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            InstanceError::BaseNotConnected => write!(f, "base graph must be connected"),
            InstanceError::BaseNotRegular => write!(f, "base graph must be regular"),
            InstanceError::BaseDegreeTooSmall { degree } => {
                write!(f, "base graph must have regular degree at least 2, got {degree}")
            }
            InstanceError::EmptyCopyGraph => write!(f, "copy graph needs at least one vertex"),
            InstanceError::Eigen(e) => write!(f, "{e}"),
        }
    }
}

/// A validated (base graph, copy graph) pair with everything the formulas
/// need precomputed: spectra of both factors and the incidence machinery of
/// the base graph.
#[derive(Debug, Clone)]
pub struct Instance {
    pub g1: Graph,
    pub g2: Graph,
    pub n1: usize,
    pub m1: usize,
    pub n2: usize,
    pub r1: usize,
    /// Regular degree of the copy graph, when it has one.
    pub r2: Option<usize>,
    /// Adjacency spectrum of the base graph, descending.
    pub lam1: Vec<f64>,
    /// Laplacian spectrum of the base graph, ascending.
    pub mu1: Vec<f64>,
    /// Adjacency spectrum of the copy graph, descending.
    pub lam2: Vec<f64>,
    /// Laplacian spectrum of the copy graph, ascending.
    pub mu2: Vec<f64>,
    pub a1: Mat,
    pub a1_squared: Mat,
    /// Incidence matrix of the base graph (vertices by edges).
    pub r: Mat,
    pub rtr: Mat,
    pub a2: Mat,
    pub l2: Mat,
}

impl Instance {
    pub fn new(g1: &Graph, g2: &Graph) -> Result<Instance, InstanceError> {
        if !g1.is_connected() {
            return Err(InstanceError::BaseNotConnected);
        }
        let r1 = g1.regular_degree().ok_or(InstanceError::BaseNotRegular)?;
        if r1 < 2 {
            return Err(InstanceError::BaseDegreeTooSmall { degree: r1 });
        }
        if g2.vertex_count() == 0 {
            return Err(InstanceError::EmptyCopyGraph);
        }
        let spectrum = |g: &Graph, kind| -> Result<Vec<f64>, InstanceError> {
            Ok(Spectrum::of(g, kind).map_err(InstanceError::Eigen)?.values().to_vec())
        };
        let a1 = g1.matrix(MatrixKind::Adjacency);
        let r = g1.incidence_matrix().to_mat();
        let instance = Instance {
            n1: g1.vertex_count(),
            m1: g1.edge_count(),
            n2: g2.vertex_count(),
            r1,
            r2: g2.regular_degree(),
            lam1: spectrum(g1, MatrixKind::Adjacency)?,
            mu1: spectrum(g1, MatrixKind::Laplacian)?,
            lam2: spectrum(g2, MatrixKind::Adjacency)?,
            mu2: spectrum(g2, MatrixKind::Laplacian)?,
            a1_squared: a1.mul(&a1),
            rtr: r.transpose().mul(&r),
            a1,
            r,
            a2: g2.matrix(MatrixKind::Adjacency),
            l2: g2.matrix(MatrixKind::Laplacian),
            g1: g1.clone(),
            g2: g2.clone(),
        };
        debug_assert!(instance.mu1[0].abs() < 1e-8);
        debug_assert!(instance.mu2[0].abs() < 1e-8);
        Ok(instance)
    }

    pub fn layout(&self, kind: CoronaKind) -> CoronaLayout {
        CoronaLayout { kind, n1: self.n1, m1: self.m1, n2: self.n2 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EvalError {
    /// The evaluation point sits within the guard distance of a pole of the
    /// formula (an eigenvalue of the copy graph, shifted, or a structural
    /// singularity of an internal block).
    NearPole { x: f64, pole: f64 },
    /// An internal block came out numerically singular.
    NearSingular { what: &'static str },
    Eigen(EigenError),
}

impl core::fmt::Display for EvalError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            EvalError::NearPole { x, pole } => {
                write!(f, "evaluation point {x} is within the guard distance of pole {pole}")
            }
            EvalError::NearSingular { what } => write!(f, "singular internal block: {what}"),
            EvalError::Eigen(e) => write!(f, "{e}"),
        }
    }
}

impl From<CoronalError> for EvalError {
    fn from(e: CoronalError) -> EvalError {
        match e {
            CoronalError::NearEigenvalue { x, eigenvalue } => {
                EvalError::NearPole { x, pole: eigenvalue }
            }
            CoronalError::Eigen(e) => EvalError::Eigen(e),
        }
    }
}

/// Guard distance around formula poles; evaluation refuses points closer
/// than this.
pub const POLE_DELTA: f64 = 1e-3;

/// Points where a formula's written form stops being a well-conditioned
/// product: coronal poles plus the structural singularities of the internal
/// edge block. Samplers must stay `POLE_DELTA` away from these.
pub fn pole_set(id: FormulaId, inst: &Instance) -> Vec<f64> {
    let r1 = inst.r1 as f64;
    let n2 = inst.n2 as f64;
    let mut poles: Vec<f64>;
    match id {
        FormulaId::AdjacencyTVertex | FormulaId::AdjacencyTEdge => {
            poles = inst.lam2.clone();
            poles.push(-2.0);
        }
        FormulaId::LaplacianTVertex => {
            poles = inst.mu2.iter().map(|mu| 2.0 * r1 + mu).collect();
            poles.push(2.0 + 2.0 * n2 + 2.0 * r1);
        }
        FormulaId::LaplacianTEdge => {
            poles = inst.mu2.iter().map(|mu| 2.0 + mu).collect();
            poles.push(2.0 + 2.0 * r1);
        }
    }
    poles
}

/// Evaluates the chosen written form of the characteristic polynomial of the
/// corona's matrix at `x`.
pub fn eval(id: FormulaId, variant: FormVariant, inst: &Instance, x: f64) -> Result<f64, EvalError> {
    debug_assert!(variants(id).contains(&variant), "{variant:?} is not a form of {id:?}");
    for pole in pole_set(id, inst) {
        if libm::fabs(x - pole) < POLE_DELTA {
            return Err(EvalError::NearPole { x, pole });
        }
    }
    match id {
        FormulaId::AdjacencyTVertex => adj_t_vertex(inst, variant, x),
        FormulaId::LaplacianTVertex => lap_t_vertex(inst, variant, x),
        FormulaId::AdjacencyTEdge => adj_t_edge(inst, x),
        FormulaId::LaplacianTEdge => lap_t_edge(inst, variant, x),
    }
}

/// Adjacency, vertex-indexed corona. The derived form carries one copy of
/// the copy graph's characteristic polynomial per base vertex; the printed
/// statement omits that factor (a degree deficit of n1*n2), which is the
/// only difference between the two forms.
fn adj_t_vertex(inst: &Instance, variant: FormVariant, x: f64) -> Result<f64, EvalError> {
    let r1 = inst.r1 as f64;
    let gamma = coronal_with_spectrum(&inst.a2, &inst.lam2, x, POLE_DELTA)?;

    let mut value = powi(x + 2.0, inst.m1 - inst.n1);
    for &lam in &inst.lam1 {
        value *= (x + 2.0) - (1.0 + gamma) * (lam + r1);
    }
    if variant == FormVariant::Derived {
        let copy_poly: f64 = inst.lam2.iter().map(|&l| x - l).product();
        value *= powi(copy_poly, inst.n1);
    }

    // Residual block: (xI - A1 - G A1^2) - (I + G A1) R B^(-1) R^T (I + G A1)
    // with B = (x+2)I - (1+G) R^T R, whose determinant is exactly the scalar
    // product above.
    let b = inst.rtr.scale(-(1.0 + gamma)).plus_scaled_identity(x + 2.0);
    let blu = Lu::factor(&b);
    if blu.is_singular() {
        return Err(EvalError::NearSingular { what: "edge block of the vertex-indexed form" });
    }
    let coupled = inst.a1.scale(gamma).plus_scaled_identity(1.0);
    let right = inst.r.transpose().mul(&coupled);
    let sub = coupled.mul(&inst.r).mul(&blu.solve_mat(&right));
    let residual = inst
        .a1
        .add(&inst.a1_squared.scale(gamma))
        .scale(-1.0)
        .plus_scaled_identity(x)
        .sub(&sub);
    Ok(value * det(&residual))
}

/// Laplacian, vertex-indexed corona. All written forms share the scalar
/// prefactors; they differ inside the residual block. The derived form
/// couples the blocks with (I - G A1) on both sides; the printed statement
/// transcribes the lower coupling with a flipped sign, and the printed
/// closing line additionally shifts the edge-block diagonal.
fn lap_t_vertex(inst: &Instance, variant: FormVariant, x: f64) -> Result<f64, EvalError> {
    let r1 = inst.r1 as f64;
    let n2 = inst.n2 as f64;
    let gamma = coronal_with_spectrum(&inst.l2, &inst.mu2, x - 2.0 * r1, POLE_DELTA)?;

    let edge_diag = 2.0 + 2.0 * n2 + 2.0 * r1;
    let mut value = powi(x - edge_diag, inst.m1 - inst.n1);
    for &mu in &inst.mu1 {
        value *= x * x - (edge_diag + mu) * x
            + 2.0 * r1 * edge_diag
            + (2.0 * r1 + n2) * (mu - 2.0 * r1);
    }
    for &mu in &inst.mu2[1..] {
        value *= powi(x - 2.0 * r1 - mu, inst.n1);
    }

    let diag = match variant {
        FormVariant::PrintedClosingLine => x - 4.0 - 2.0 * n2 - r1,
        _ => x - edge_diag,
    };
    let b = inst.rtr.scale(1.0 - gamma).plus_scaled_identity(diag);
    let blu = Lu::factor(&b);
    if blu.is_singular() {
        return Err(EvalError::NearSingular { what: "edge block of the vertex-indexed form" });
    }
    let minus = inst.a1.scale(-gamma).plus_scaled_identity(1.0); // I - G A1
    let plus = inst.a1.scale(gamma).plus_scaled_identity(1.0); // I + G A1
    let w12 = minus.mul(&inst.r);
    let s21 = match variant {
        FormVariant::Derived => inst.r.transpose().mul(&minus),
        _ => inst.r.transpose().mul(&plus),
    };
    let sub = w12.mul(&blu.solve_mat(&s21));
    let residual = inst
        .a1
        .sub(&inst.a1_squared.scale(gamma))
        .plus_scaled_identity(x - r1 * (2.0 + n2))
        .sub(&sub);
    Ok(value * det(&residual))
}

/// Adjacency, edge-indexed corona. Fully factored; the printed statement
/// matches the derivation, so all variants evaluate the same expression.
fn adj_t_edge(inst: &Instance, x: f64) -> Result<f64, EvalError> {
    let r1 = inst.r1 as f64;
    let gamma = coronal_with_spectrum(&inst.a2, &inst.lam2, x, POLE_DELTA)?;

    let mut value = powi(x + 2.0, inst.m1 - inst.n1);
    let copy_poly: f64 = inst.lam2.iter().map(|&l| x - l).product();
    value *= powi(copy_poly, inst.m1);
    for &lam in &inst.lam1 {
        value *= adj_t_edge_bracket(x, gamma, r1, lam);
    }
    Ok(value)
}

/// The per-base-eigenvalue factor of the edge-indexed adjacency form, with
/// the coronal left in place.
fn adj_t_edge_bracket(x: f64, gamma: f64, r1: f64, lam: f64) -> f64 {
    x * x
        + (2.0 - r1 * gamma - r1 - (gamma + 2.0) * lam) * x
        + (1.0 + gamma) * lam * lam
        + ((2.0 * r1 - 2.0) * gamma + r1 - 3.0) * lam
        + r1 * (r1 - 2.0) * gamma
        - r1
}

/// Laplacian, edge-indexed corona. The derived form is pole-free: one monic
/// cubic per base Laplacian eigenvalue plus scalar families. The printed
/// forms keep a quadratic-with-coronal family instead, omit one scalar
/// family entirely, and disagree with each other in the sign of the coronal
/// term on the quadratic's squared coefficient.
fn lap_t_edge(inst: &Instance, variant: FormVariant, x: f64) -> Result<f64, EvalError> {
    let r1 = inst.r1 as f64;
    let n2 = inst.n2 as f64;

    let mut value = powi(x - 2.0 - 2.0 * r1, inst.m1 - inst.n1);
    for &mu in &inst.mu2[1..] {
        value *= powi(x - 2.0 - mu, inst.m1);
    }
    match variant {
        FormVariant::Derived => {
            value *= powi(x - 2.0, inst.m1 - inst.n1);
            for &mu in &inst.mu1 {
                let eta = 2.0 * r1 - mu;
                let c = lap_t_edge_cubic(r1, n2, eta);
                value *= ((x + c[2]) * x + c[1]) * x + c[0];
            }
        }
        FormVariant::PrintedStatement | FormVariant::PrintedClosingLine => {
            let gamma = coronal_with_spectrum(&inst.l2, &inst.mu2, x - 2.0, POLE_DELTA)?;
            let plus_sign = variant == FormVariant::PrintedStatement;
            for &mu in &inst.mu1 {
                value *= lap_t_edge_quad_printed(x, gamma, r1, n2, r1 - mu, plus_sign);
            }
        }
    }
    Ok(value)
}

/// Coefficients (constant, linear, quadratic) of the monic cubic factor of
/// the derived edge-indexed Laplacian form, one per base Laplacian
/// eigenvalue mu, written in eta = 2 r1 - mu.
pub fn lap_t_edge_cubic(r1: f64, n2: f64, eta: f64) -> [f64; 3] {
    let a2 = -(5.0 * r1 + 4.0 + r1 * n2) + 2.0 * eta;
    let a1 = r1 * (3.0 + n2) * (2.0 * r1 + 2.0) + 10.0 * r1 + 4.0 + 2.0 * r1 * n2
        - (5.0 * r1 + 7.0 + r1 * n2 + n2) * eta
        + eta * eta;
    let a0 = -2.0 * r1 * (3.0 + n2) * (2.0 * r1 + 2.0)
        + (10.0 * r1 + 6.0 + 4.0 * r1 * n2 + 2.0 * n2) * eta
        - (2.0 + n2) * eta * eta;
    [a0, a1, a2]
}

/// The printed quadratic family of the edge-indexed Laplacian form, written
/// in s = r1 - mu with the coronal gamma in place. The two printed copies
/// differ only in the sign of the coronal term on s^2.
fn lap_t_edge_quad_printed(x: f64, gamma: f64, r1: f64, n2: f64, s: f64, plus_sign: bool) -> f64 {
    let sign = if plus_sign { 1.0 } else { -1.0 };
    let big = r1 * (7.0 + n2);
    x * x - (big + 2.0 - r1 * gamma + (2.0 - gamma) * s) * x
        + (1.0 + sign * gamma) * s * s
        + (big + 3.0 - (4.0 * r1 + 2.0) * gamma) * s
        + r1 * (3.0 + n2) * (2.0 * r1 + 2.0)
        + 4.0 * r1 * r1
        + 3.0 * r1
        + r1 * r1 * n2
        - r1 * (r1 + 2.0) * gamma
}

/// Coefficients of the monic cubic obtained by clearing the coronal from the
/// printed quadratic family (multiplying by the cleared pole factor). Used
/// to quote the printed prediction next to the derived one.
pub fn lap_t_edge_cubic_printed(r1: f64, n2: f64, mu: f64, plus_sign: bool) -> [f64; 3] {
    let s = r1 - mu;
    let sign = if plus_sign { 1.0 } else { -1.0 };
    let big = r1 * (7.0 + n2);
    let quad_const = r1 * (3.0 + n2) * (2.0 * r1 + 2.0) + 4.0 * r1 * r1 + 3.0 * r1 + r1 * r1 * n2;
    let a2 = -(big + 4.0 + 2.0 * s);
    let a1 = s * s + (big + 7.0 + n2) * s + quad_const + 2.0 * big + 4.0 + n2 * r1;
    let a0 = (-2.0 + sign * n2) * s * s
        - (2.0 * big + 6.0 + n2 * (4.0 * r1 + 2.0)) * s
        - 2.0 * quad_const
        - n2 * r1 * (r1 + 2.0);
    [a0, a1, a2]
}

/// Coefficients (ascending, monic) of the cubic factor of the edge-indexed
/// adjacency spectrum when the copy graph is r2-regular, one cubic per base
/// adjacency eigenvalue lam. Obtained by clearing the coronal pole from the
/// quadratic bracket.
pub fn adj_t_edge_cubic(r1: f64, n2: f64, r2: f64, lam: f64) -> [f64; 3] {
    let a2 = 2.0 - r1 - r2 - 2.0 * lam;
    let a1 = lam * lam + (r1 - 3.0 + 2.0 * r2 - n2) * lam + r1 * r2 - r1 * n2 - r1 - 2.0 * r2;
    let a0 = (n2 - r2) * lam * lam
        + (2.0 * r1 * n2 - 2.0 * n2 - r1 * r2 + 3.0 * r2) * lam
        + r1 * (r1 - 2.0) * n2
        + r1 * r2;
    [a0, a1, a2]
}

/// The same cubic as printed in the regular-copy spectrum corollary, which
/// substitutes r1 for r2 in two terms of the linear coefficient. Matches
/// [`adj_t_edge_cubic`] exactly when r1 == r2.
pub fn adj_t_edge_cubic_printed(r1: f64, n2: f64, r2: f64, lam: f64) -> [f64; 3] {
    let a2 = 2.0 - r1 - r2 - 2.0 * lam;
    let a1 = lam * lam - (n2 - 3.0 * r1 + 3.0) * lam + r1 * r2 - r1 * n2 - 3.0 * r1;
    let a0 = (n2 - r2) * lam * lam
        + (2.0 * r1 * n2 - 2.0 * n2 - r1 * r2 + 3.0 * r2) * lam
        + r1 * (r1 - 2.0) * n2
        + r1 * r2;
    [a0, a1, a2]
}

/// Coefficients (ascending, monic) of the quartic factor of the edge-indexed
/// adjacency spectrum when the copy graph is complete bipartite with part
/// sizes p and q, one quartic per base adjacency eigenvalue lam.
pub fn adj_t_edge_quartic_bipartite(r1: f64, p: f64, q: f64, lam: f64) -> [f64; 4] {
    let pq = p * q;
    let s = p + q;
    let a3 = 2.0 - r1 - 2.0 * lam;
    let a2 = -pq - s * (r1 + lam) + lam * lam + (r1 - 3.0) * lam - r1;
    let a1 = -2.0 * pq - r1 * pq
        + s * lam * lam
        + (2.0 * r1 - 2.0) * s * lam
        + r1 * (r1 - 2.0) * s;
    let a0 = pq * lam * lam
        + ((2.0 * r1 - 2.0) * 2.0 * pq - pq * (r1 - 3.0)) * lam
        + r1 * (r1 - 2.0) * 2.0 * pq
        + r1 * pq;
    [a0, a1, a2, a3]
}

/// `det(xI - M)` for a matrix in corona block layout, computed by Schur
/// elimination of each copy block and then of the leading block. This is an
/// independent determinant route (the other being plain LU on the whole
/// matrix) that exercises the same block structure the factored forms use.
/// Refuses `x` within `delta` of the copy-block spectrum, where the
/// elimination is ill-conditioned.
pub fn block_schur_det(
    m: &Mat,
    layout: &CoronaLayout,
    x: f64,
    delta: f64,
) -> Result<f64, EvalError> {
    let t = layout.total_graph_range().end;
    assert_eq!(m.rows(), layout.vertex_count(), "matrix does not match the layout");
    let copies = layout.copy_count();
    let n2 = layout.n2;

    let mut schur = m.slice(0, 0, t, t).scale(-1.0).plus_scaled_identity(x);
    let mut value = 1.0;
    if copies > 0 {
        // All copy diagonal blocks are identical; one spectrum check covers
        // every elimination step.
        let first = layout.copy_range(0);
        let block = m.slice(first.start, first.start, n2, n2);
        let eigenvalues = symmetric_eigenvalues(&block).map_err(EvalError::Eigen)?;
        for ev in eigenvalues {
            if libm::fabs(x - ev) < delta {
                return Err(EvalError::NearPole { x, pole: ev });
            }
        }
    }
    for k in 0..copies {
        let range = layout.copy_range(k);
        let w = m.slice(range.start, range.start, n2, n2).scale(-1.0).plus_scaled_identity(x);
        let lu = Lu::factor(&w);
        if lu.is_singular() {
            return Err(EvalError::NearSingular { what: "copy block elimination" });
        }
        value *= lu.det();
        let top = m.slice(0, range.start, t, n2).scale(-1.0);
        let bottom = m.slice(range.start, 0, n2, t).scale(-1.0);
        schur = schur.sub(&top.mul(&lu.solve_mat(&bottom)));
    }
    Ok(value * det(&schur))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corona::corona;
    use crate::generators;
    use crate::linalg::det_at;

    fn assert_rel_close(got: f64, want: f64, tol: f64, context: &str) {
        let denom = got.abs().max(want.abs()).max(1e-30);
        let rel = (got - want).abs() / denom;
        assert!(rel <= tol, "{context}: got {got}, want {want} (rel {rel:.3e})");
    }

    fn check_derived_matches_determinant(id: FormulaId, g1: &Graph, g2: &Graph, points: &[f64]) {
        let inst = Instance::new(g1, g2).unwrap();
        let c = corona(g1, g2, id.corona_kind()).unwrap();
        let m = c.matrix(id.matrix_kind());
        for &x in points {
            let formula = eval(id, FormVariant::Derived, &inst, x).unwrap();
            let oracle = det_at(&m, x);
            assert_rel_close(formula, oracle, 1e-9, &alloc::format!("{:?} at x={x}", id));
            let block = block_schur_det(&m, &c.layout, x, POLE_DELTA).unwrap();
            assert_rel_close(block, oracle, 1e-9, &alloc::format!("block {:?} at x={x}", id));
        }
    }

    #[test]
    fn vertex_adjacency_form_matches_determinant() {
        let g1 = generators::cycle(3).unwrap();
        let g2 = generators::complete(2).unwrap();
        // Poles: {1, -1, -2}.
        check_derived_matches_determinant(
            FormulaId::AdjacencyTVertex,
            &g1,
            &g2,
            &[0.3, 2.6, -3.4, 5.1],
        );
        // A copy graph with no regularity at all.
        let g2 = generators::path(3).unwrap();
        check_derived_matches_determinant(
            FormulaId::AdjacencyTVertex,
            &generators::complete(4).unwrap(),
            &g2,
            &[0.5, 3.3, -2.6],
        );
    }

    #[test]
    fn vertex_laplacian_form_matches_determinant() {
        let g1 = generators::cycle(3).unwrap();
        let g2 = generators::complete(2).unwrap();
        // Poles: {4, 6, 10}.
        check_derived_matches_determinant(
            FormulaId::LaplacianTVertex,
            &g1,
            &g2,
            &[0.7, 3.2, 8.4, 12.9],
        );
        check_derived_matches_determinant(
            FormulaId::LaplacianTVertex,
            &generators::cycle(4).unwrap(),
            &generators::path(3).unwrap(),
            &[1.3, 5.8, -0.9],
        );
    }

    #[test]
    fn edge_adjacency_form_matches_determinant() {
        let g1 = generators::cycle(3).unwrap();
        let g2 = generators::complete(1).unwrap();
        check_derived_matches_determinant(
            FormulaId::AdjacencyTEdge,
            &g1,
            &g2,
            &[0.9, 2.4, -1.4, 4.2],
        );
        check_derived_matches_determinant(
            FormulaId::AdjacencyTEdge,
            &generators::complete(4).unwrap(),
            &generators::path(3).unwrap(),
            &[0.4, 3.6, -2.8],
        );
    }

    #[test]
    fn edge_laplacian_form_matches_determinant() {
        let g1 = generators::cycle(3).unwrap();
        let g2 = generators::complete(1).unwrap();
        check_derived_matches_determinant(
            FormulaId::LaplacianTEdge,
            &g1,
            &g2,
            &[0.8, 3.1, 5.2, 9.7],
        );
        check_derived_matches_determinant(
            FormulaId::LaplacianTEdge,
            &generators::cycle(4).unwrap(),
            &generators::complete(2).unwrap(),
            &[1.6, 4.9, -1.1],
        );
    }

    #[test]
    fn vertex_adjacency_printed_form_omits_the_copy_polynomial() {
        let g1 = generators::cycle(4).unwrap();
        let g2 = generators::complete(2).unwrap();
        let inst = Instance::new(&g1, &g2).unwrap();
        for x in [0.4, 2.7, -3.2] {
            let derived = eval(FormulaId::AdjacencyTVertex, FormVariant::Derived, &inst, x).unwrap();
            let printed =
                eval(FormulaId::AdjacencyTVertex, FormVariant::PrintedStatement, &inst, x).unwrap();
            let copy_poly: f64 = inst.lam2.iter().map(|&l| x - l).product();
            let missing = powi(copy_poly, inst.n1);
            assert_rel_close(printed * missing, derived, 1e-12, "restored factor");
            assert!(
                (printed - derived).abs() > 1e-6 * derived.abs().max(1.0),
                "printed form should deviate at x={x}"
            );
        }
    }

    #[test]
    fn edge_adjacency_variants_agree() {
        let g1 = generators::cycle(5).unwrap();
        let g2 = generators::complete(3).unwrap();
        let inst = Instance::new(&g1, &g2).unwrap();
        for x in [0.6, 3.4, -1.7] {
            let derived = eval(FormulaId::AdjacencyTEdge, FormVariant::Derived, &inst, x).unwrap();
            let printed =
                eval(FormulaId::AdjacencyTEdge, FormVariant::PrintedStatement, &inst, x).unwrap();
            assert_eq!(derived, printed);
        }
    }

    #[test]
    fn laplacian_printed_forms_deviate_from_the_oracle() {
        let g1 = generators::cycle(3).unwrap();
        let g2 = generators::complete(2).unwrap();
        let inst = Instance::new(&g1, &g2).unwrap();
        for id in [FormulaId::LaplacianTVertex, FormulaId::LaplacianTEdge] {
            let c = corona(&g1, &g2, id.corona_kind()).unwrap();
            let m = c.matrix(id.matrix_kind());
            let x = 1.2345;
            let oracle = det_at(&m, x);
            for variant in [FormVariant::PrintedStatement, FormVariant::PrintedClosingLine] {
                let printed = eval(id, variant, &inst, x).unwrap();
                let denom = oracle.abs().max(printed.abs()).max(1e-30);
                assert!(
                    (printed - oracle).abs() / denom > 1e-6,
                    "{id:?} {variant:?} unexpectedly matches the oracle at x={x}"
                );
            }
        }
    }

    #[test]
    fn pole_guard_refuses_close_points() {
        let g1 = generators::cycle(3).unwrap();
        let g2 = generators::complete(2).unwrap();
        let inst = Instance::new(&g1, &g2).unwrap();
        // lam2 = {1, -1}; 1 + 1e-4 is inside the guard distance.
        match eval(FormulaId::AdjacencyTEdge, FormVariant::Derived, &inst, 1.0 + 1e-4) {
            Err(EvalError::NearPole { .. }) => {}
            other => panic!("expected pole refusal, got {other:?}"),
        }
        assert!(eval(FormulaId::AdjacencyTEdge, FormVariant::Derived, &inst, 1.0 + 0.1).is_ok());
    }

    #[test]
    fn instance_validates_the_base_graph() {
        let path = generators::path(4).unwrap();
        let k2 = generators::complete(2).unwrap();
        assert_eq!(
            Instance::new(&path, &k2).unwrap_err(),
            InstanceError::BaseNotRegular
        );
        assert_eq!(
            Instance::new(&k2, &k2).unwrap_err(),
            InstanceError::BaseDegreeTooSmall { degree: 1 }
        );
        let two_triangles = Graph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(
            Instance::new(&two_triangles, &k2).unwrap_err(),
            InstanceError::BaseNotConnected
        );
    }

    #[test]
    fn derived_edge_laplacian_cubic_has_the_structural_zero_root() {
        // The base graph's zero Laplacian eigenvalue (eta = 2 r1) must give a
        // cubic with constant term zero: the corona keeps one zero eigenvalue.
        for (r1, n2) in [(2.0, 1.0), (3.0, 4.0), (4.0, 2.0), (6.0, 5.0)] {
            let c = lap_t_edge_cubic(r1, n2, 2.0 * r1);
            assert!(c[0].abs() < 1e-12, "r1={r1}, n2={n2}: constant {}", c[0]);
        }
    }

    #[test]
    fn printed_cubics_match_derived_exactly_when_degrees_coincide() {
        // The regular-copy cubic transcription swaps r2 for r1 in two terms,
        // so it is exact precisely when the two degrees agree.
        let same = adj_t_edge_cubic(2.0, 3.0, 2.0, 1.5);
        let same_printed = adj_t_edge_cubic_printed(2.0, 3.0, 2.0, 1.5);
        assert_eq!(same, same_printed);
        let diff = adj_t_edge_cubic(3.0, 3.0, 2.0, 1.5);
        let diff_printed = adj_t_edge_cubic_printed(3.0, 3.0, 2.0, 1.5);
        assert_ne!(diff[1], diff_printed[1]);
        assert_eq!(diff[0], diff_printed[0]);
        assert_eq!(diff[2], diff_printed[2]);
    }

    #[test]
    fn block_elimination_refuses_points_near_copy_spectrum() {
        let g1 = generators::cycle(4).unwrap();
        let g2 = generators::complete(2).unwrap();
        let c = corona(&g1, &g2, CoronaKind::TEdge).unwrap();
        let m = c.matrix(MatrixKind::Adjacency);
        // Copy block spectrum is {1, -1}.
        match block_schur_det(&m, &c.layout, 1.0 + 1e-4, 1e-3) {
            Err(EvalError::NearPole { .. }) => {}
            other => panic!("expected refusal, got {other:?}"),
        }
    }
}
