//! Explicit isogenies between Jacobians of genus-2 hyperelliptic curves over
//! finite fields of large characteristic.
//!
//! Given two curves whose Jacobians are related by an `ell`-isogeny or, in
//! the real-multiplication case over `Q(sqrt 5)`, a cyclic `beta`-isogeny,
//! this crate computes the isogeny explicitly as a tuple of rational
//! fractions `(s, p, q, r)` — the rational representation at a base point.
//! The pipeline is: invariants -> curve models -> tangent-matrix candidates
//! from derivatives of modular equations through an explicit Kodaira-Spencer
//! matrix -> a power-series solution of the defining differential system ->
//! rational reconstruction.
//!
//! See the `book/` directory for a guided tour with runnable examples, and
//! the `isogeny2-cli` crate for the command-line interface.

pub mod covariants;
pub mod curves;
pub mod field;
pub mod fraction;
pub mod jacobian;
pub mod mat;
pub mod modeq;
pub mod pipeline;
pub mod poly;
pub mod reconstruct;
pub mod ring;
pub mod rm_q5;
pub mod rng;
pub mod series;
pub mod solver;
pub mod tangent;

pub use field::{Fe, FieldError, Fq};
pub use pipeline::{run, RunConfig, RunOutput};
