//! Constructions, searches and verifiers for 3-SCHGDDs and the objects built from them.
//!
//! A 3-SCHGDD of type `(n, m^t)` lives on `I_n × Z_mt`: the groups are the rows and the
//! holes are the coordinate classes mod `t`. Each pair of points in different rows and
//! different holes lies in exactly one block, and the block set is closed under `+1` on the
//! coordinate.

pub mod apps;
pub mod design;
pub mod direct;
pub mod error;
pub mod expr;
pub mod recursive;
pub mod search;
pub mod verify;

pub use design::{BaseBlock, Design, DesignKind, DesignParams, DifferenceProfile, GridPoint};
pub use error::{ForgeError, Result};
pub use verify::{verify, Category, VerificationReport, Violation};
