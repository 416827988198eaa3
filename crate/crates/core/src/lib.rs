//! Exact verification and classification toolkit for two-dimensional
//! self-distributive non-counital bialgebras.
//!
//! The crate is organised around structure constants: an algebra is a dense
//! `n^3` tensor of scalars, a coalgebra likewise, and every axiom check,
//! enumeration, and canonical-form computation works directly on those
//! tensors with exact arithmetic (big rationals, prime residues, or rational
//! functions in declared parameters).
//!
//! Module map:
//! - [`scalar`]: the three exact scalar domains and the expression grammar.
//! - [`tensor`]: algebras, coalgebras, bialgebras, elements, basis changes.
//! - [`axioms`]: identity checks with rendered counterexample witnesses.
//! - [`classify`]: canonical forms, catalogs, enumerations, completeness audits.
//! - [`quandle`]: Cayley tables, quandle rings, idempotent extraction.
//! - [`knot`]: PD codes and quandle coloring counts.
//! - [`io`]: JSON file schemas shared with the command-line tool.

mod linalg;
pub mod scalar;
pub mod axioms;
pub mod classify;
pub mod io;
pub mod knot;
pub mod quandle;
pub mod tensor;

pub use scalar::{arith, parse_scalar, ArithOp, FieldDescriptor, Scalar, ScalarError};
pub use axioms::{AxiomError, CheckReport, Witness};
pub use classify::{
    AuditReport, CanonicalClass, ClassifyError, DualizationReport, FamilyDescriptor,
    InstantiateError,
};
pub use io::IoError;
pub use knot::{Diagram, KnotError};
pub use quandle::{CayleyTable, ClosureOutcome, QuandleError};
pub use tensor::{Algebra, Bialgebra, Coalgebra, Element, SweedlerTerms, TensorError};
