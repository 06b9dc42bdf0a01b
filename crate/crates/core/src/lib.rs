//! Cubical cycle calculus on `Y × □^n` with exact symbolic verification.
//!
//! Cycles are integer combinations of ideal-presented components. The crate
//! provides faces and boundaries, admissibility, bi-division and cubical
//! subdivision with their homotopies, face blow-up towers with strict
//! transforms, and support kernels with the Mayer–Vietoris gluing.

pub mod blowup;
pub mod cube;
pub mod cycle;
pub mod error;
pub mod fixtures;
pub mod morphism;
pub mod report;
pub mod sheaf;
pub mod subdivision;
pub mod suites;
pub mod tables;

pub use cycle::{Ambient, Component, ComponentSpec, Cycle, CycleJson};
pub use cube::{vertex_sign, vertices, CubeFace};
pub use error::{BlowupError, CycleError, MorphismError, SheafError, SubdivisionError, SuiteError};
pub use morphism::{BasicMorphism, CubeMorphism, MorphismKind, Scalar};
pub use report::{ReportEntry, VerificationReport};
