//! Quivers with potential from triangulated decorated marked surfaces, with
//! exact flip/mutation calculus, Ginzburg dg algebra verification, the
//! angle-basis Ext algebra and its flip transport, and K0-level twists.

pub mod dg;
pub mod error;
pub mod ext;
pub mod fixtures;
pub mod ktheory;
pub mod mutation;
pub mod qp;
pub mod suites;
pub mod surface;
pub mod transport;

pub use error::{Error, Result};
pub use ext::{ExtAlgebraTable, ExtBasisElement};
pub use ktheory::{CentralCharge, K0Lattice, TwistWord};
pub use mutation::{check_flip_mutation, mutate, premutate, reduce, PremutationResult};
pub use qp::{classify_qp, Arrow, Coeff, Path, PathExpr, Potential, Qp, QpClass, Quiver};
pub use suites::{run_suite, Case, Status, SuiteConfig, VerificationReport, SUITES};
pub use surface::{DecoratedTriangulation, FlipDirection, MarkedSurface, Side};
pub use transport::TransportMap;
