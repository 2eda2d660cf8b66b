//! Rigid C*-tensor categories of unitary corepresentations of finite-dimensional
//! Hopf *-algebras, computed with dense complex matrices.
//!
//! The layers, bottom up:
//!
//! * [`numkit`]: dense complex linear algebra with deterministic outputs.
//! * [`hopf`]: Hopf *-algebras from structure constants, Haar trace, duals.
//! * [`corep`]: corepresentations, intertwiner spaces, decomposition.
//! * [`catcore`]: words, standard pairs, traces, conditional expectations,
//!   Frobenius reciprocity and the registry of irreducibles.
//! * [`tower`]: towers of End-algebras, Jones projections, standard invariant,
//!   principal graphs.
//! * [`fixedpoint`]: adjoint actions of the dual algebra and their fixed points.
//! * [`equiv4`]: the bimodule maps between relative commutants.
//! * [`selftest`]: the acceptance checks, used by the test suite and the CLI.

pub mod catcore;
pub mod corep;
pub mod equiv4;
pub mod error;
pub mod fixedpoint;
pub mod hopf;
pub mod io;
pub mod numkit;
pub mod report;
pub mod selftest;
pub mod tower;

pub use error::{Error, Result};
pub use numkit::{ComplexMatrix, Tolerance};
