//! Geometrically nonlinear membrane finite elements with a wrinkling
//! material model.
//!
//! The constitutive core splits the plane-stress St. Venant-Kirchhoff
//! strain energy by the sign of the principal strains and scales the
//! compressive branch by a residual stiffness factor, so taut, wrinkled,
//! and slack regions emerge from the strain state itself instead of an
//! iterative stress correction. Around it sit tensor-product B-spline
//! membrane kinematics in a total-Lagrangian setting, dead and follower
//! loads, and an incremental-load Newton solver on a banded LDL^T.
//!
//! Typical flow: build a [`Patch`], wrap it in a [`Model`] with an
//! [`ElasticParams`] material plus constraints and loads, run
//! [`solve`], then inspect the state with [`snapshot_fields`].

pub mod assembly;
pub mod banded;
pub mod basis;
pub mod error;
pub mod frame;
pub mod material;
pub mod model;
pub mod patch;
pub mod quadrature;
pub mod solver;
pub mod tensor;

pub use assembly::{
    external_forces, internal_forces, internal_forces_and_tangent, snapshot_fields, strain_energy,
    QpSnapshot,
};
pub use banded::{BandedLdl, BandedSym};
pub use basis::KnotVector;
pub use error::CoreError;
pub use frame::LocalFrame;
pub use material::{
    classify, energy_split, evaluate, standard_svk, stress_split, tangent_split, ElasticParams,
    MaterialResponse, WrinkleState,
};
pub use model::{
    Constraint, DofMap, LoadCase, LoadKind, MaterialKind, Model, PatchEdge, Spring,
    TractionProfile,
};
pub use patch::{discretize, green_lagrange, surface_state, ElementGeom, Patch, QuadPoint};
pub use solver::{solve, SolveError, SolveOutcome, SolveTrace, SolverConfig, StepTrace};
pub use tensor::{Spectral2, SymTensor2, Tensor4};
