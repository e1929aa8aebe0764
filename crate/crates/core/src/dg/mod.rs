//! Ginzburg dg algebras, twisted dg modules over them, and the verifiers
//! for the Keller–Yang morphism, the simple resolutions and the homotopy
//! identities.

pub mod algebra;
pub mod homotopy;
pub mod ky;
pub mod module;
pub mod resolution;

pub use algebra::{loop_name, star_name, GenKind, Generator, GinzburgPresentation};
pub use homotopy::{
    all_cases, homotopy_instance, HomotopyCase, HomotopyInstance, HomotopyOutcome, Transcription,
};
pub use ky::{mu_sharp, sign_twisted, KyFailure, KyTable};
pub use module::{ChainMap, DgContext, Gen, Matrix, ModulePresentation, SignConvention};
pub use resolution::{sharp_bundle, simple_resolution, Layout, SharpBundle};
