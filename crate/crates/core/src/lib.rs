//! Exact-arithmetic toolkit for Leonard systems.
//!
//! Starting from a parameter array `({theta_i}; {theta*_i}; {varphi_i};
//! {phi_i})` over the rationals, this crate
//!
//! - realizes the system as concrete `(d+1) x (d+1)` matrices in split
//!   coordinates, with all primitive idempotents and the invariant bilinear
//!   form ([`realization`]);
//! - constructs the Erdős–Ko–Rado basis `{w_t}` two independent ways, by
//!   closed transition formulas and by a subspace-intersection oracle, and
//!   compares them exactly ([`ekr`]);
//! - computes the second eigenmatrix, the unique LP-dual vector attached to
//!   each `t`, and the resulting Erdős–Ko–Rado bound, cross-checked against
//!   terminating (q-)hypergeometric closed forms for the dual Hahn,
//!   Krawtchouk, and q-Racah families ([`lp`]).
//!
//! All scalars are arbitrary-precision rationals; every identity is checked
//! with exact equality, never a tolerance.
//!
//! ```
//! use leonard_core::{johnson_preset, realize, EkrSystem, Scalar};
//! use leonard_core::lp::dual_vector;
//!
//! let array = johnson_preset(7, 3).unwrap().array().unwrap();
//! let realization = realize(&array).unwrap();
//! let sys = EkrSystem::new(&realization).unwrap();
//! let dv = dual_vector(&sys, 1).unwrap();
//! assert_eq!(dv.bound, Scalar::int(15)); // C(6, 2)
//! assert!(dv.feasible);
//! ```

// Index loops throughout mirror the index ranges of the transition formulas.
#![allow(clippy::needless_range_loop)]

pub mod d4;
pub mod ekr;
pub mod families;
pub mod lp;
pub mod matrix;
pub mod parameter_array;
pub mod realization;
pub mod report;
pub mod scalar;
pub mod subspace;
pub mod verify;

pub use d4::D4Element;
pub use ekr::{EkrError, EkrSystem};
pub use families::{
    dual_hahn, hamming_preset, johnson_preset, krawtchouk, q_racah, DualHahnParams, FamilyError,
    KrawtchoukParams, QRacahParams,
};
pub use lp::{DualVector, FamilyShape, SecondEigenmatrix};
pub use matrix::{LinAlgError, Matrix};
pub use parameter_array::{BaseClass, ParameterArray, ValidationReport};
pub use realization::{realize, Realization, RealizeError};
pub use report::{Check, CheckReport};
pub use scalar::Scalar;
pub use subspace::Subspace;
