//! Spectra of total-graph neighbourhood coronas.
//!
//! The total graph T(g) of a graph g has one vertex per vertex of g and one
//! vertex per edge of g; two of them are adjacent when the originals are
//! adjacent or incident. Two corona-style products are built on top of it:
//!
//! * the T-vertex neighbourhood corona `g1 [.] g2`: one copy of g2 per vertex
//!   v of g1, the copy joined to every T(g1)-neighbour of v;
//! * the T-edge neighbourhood corona `g1 [-] g2`: one copy of g2 per edge e
//!   of g1, the copy joined to the two endpoints of e.
//!
//! For a regular g1 the adjacency and Laplacian characteristic polynomials of
//! both products factor through the incidence structure of g1 and the
//! coronal of g2. This crate constructs the products, evaluates the factored
//! forms, and checks them against two independent routes: a dense symmetric
//! eigensolver and direct determinant evaluation with block elimination of
//! the copies. Known printed transcriptions of the factorizations that
//! deviate from the derivation are kept verbatim so the verification reports
//! can document exactly where and by how much they differ. On top of the
//! factorizations sits a small factory for certified cospectral pairs of
//! non-regular graphs.
//!
//! The crate is `no_std` (with `alloc`); everything that touches files,
//! processes, or terminals lives in the companion CLI crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod matrix;
pub mod linalg;
pub mod eigen;
pub mod roots;
pub mod graph;
pub mod generators;
pub mod spectrum;
pub mod corona;
pub mod charpoly;
pub mod predict;
pub mod verify;
pub mod cospectral;

pub use charpoly::{FormVariant, FormulaId, Instance};
pub use corona::{corona, t_edge_corona, t_vertex_corona, Corona, CoronaKind, CoronaLayout};
pub use graph::{Graph, GraphError};
pub use matrix::{IntMat, Mat, MatrixKind};
pub use spectrum::{multiset_equal, Spectrum, DEFAULT_SPECTRUM_TOL};
