//! Exact-arithmetic split-rank certificates for two-row intersection cuts.
//!
//! Given a two-row mixed-integer relaxation `P(R,f)` and a cut
//! `sum alpha_i s_i >= 1`, this crate classifies the cut's induced
//! lattice-free set, synthesizes an explicit finite sequence of split
//! disjunctions witnessing a split-rank upper bound, verifies every step by
//! exact polyhedral vertex checks, and probes rank lower bounds with a
//! bounded split-closure oracle. All arithmetic is exact rational.

pub mod classify;
pub mod engine;
pub mod error;
pub mod geom;
pub mod hpoly;
pub mod io;
pub mod linalg;
pub mod model;
pub mod num;
pub mod oracle;
pub mod render;
pub mod sweep;
pub mod synth;

pub use classify::{classify_body, standardize, BodyClass, StandardForm};
pub use engine::{
    check_cut_after_disjunction, diamond_construct, enumerate_piece_vertices, triangle_construct,
    wedge_construct, CutSystem, HalfspaceSide, PieceVertex, SplitDisjunction, VerificationRecord,
};
pub use error::{ClassifyError, EngineError, GeomError, IoError, ModelError, SynthError};
pub use geom::{AffineUnimodularMap, ConvexBody2, Direction2, Point2, PointLocation};
pub use model::{CutIneq, SparseRep, TwoRowModel};
pub use num::Rational;
pub use oracle::{closure_round, conv_union_cuts, rank_probe, ClosureApprox, ProbeOutcome};
pub use synth::{rank_two_var, synthesize, t2b_recursion_step, Certificate};
