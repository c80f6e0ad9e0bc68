//! Blocked fractional factorial plans for symmetric `s^m` experiments.
//!
//! Runs are points of `F_s^m`, factorial effects are pencils of parallel
//! hyperplanes, and a plan is a list of equal-size blocks of runs. The crate
//! covers:
//!
//! - [`field`]: prime-field vectors, canonical subspaces, orthocomplements and
//!   subspace enumeration;
//! - [`effects`]: pencils as named factorial effects (`A`, `BD^2`, ...);
//! - [`plan`] and [`catalog`]: the plan type and the built-in plans;
//! - [`incidence`]: replication vectors and incidence matrices;
//! - [`relations`]: aliasing, orthogonality through the block factor (OTB),
//!   proportional frequencies, block confounding;
//! - [`expansion`]: expanding a plan along a subspace, the closed-form
//!   incidence transforms, effect classes and the relation predictor;
//! - [`rational`] and [`linmodel`]: exact projectors, adjusted sums of squares
//!   and estimability by rank;
//! - [`search`]: exhaustive ranking of expansion subspaces.
//!
//! Everything is `no_std` with `alloc`; file formats and the command line live
//! in the companion `otb` crate.
#![no_std]

extern crate alloc;

pub mod catalog;
pub mod effects;
mod error;
pub mod expansion;
pub mod field;
pub mod incidence;
pub mod linmodel;
pub mod plan;
pub mod rational;
pub mod relations;
pub mod search;

pub use error::{Error, Result};
pub use effects::{EffectModel, Pencil};
pub use field::{Field, FieldVector, Subspace};
pub use plan::Plan;
