//! Contingency analysis for gas pipeline networks.
//!
//! Starting from a balanced baseline (normal operation), the engine
//! simulates line failures, propagates the resulting shortfalls, restores
//! consumption first from spare inlet capacity and then from storage, and
//! scores each reservoir by the share of the outage it can cover.
//!
//! All engine types are generic over [`Scalar`]; the aliases below fix the
//! usual `f64` instantiation.

pub mod dom;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod lexopt;
pub mod model;
pub mod preprocess;
pub mod restoration;
pub mod scalar;
pub mod significance;

pub use dom::{compute_dom, Disrupted, Scenario};
pub use error::{Error, Result};
pub use model::{CapacityOverrides, EdgeId, Mode, Network, NodeId, OperationState};
pub use preprocess::Nom;
pub use restoration::{compute_raom, compute_rrom, RestorationOptions};
pub use scalar::{Rational, Scalar};
pub use significance::{
    scenario_sweep, significance_measure, SignificanceReport, SweepOptions, ZeroOutagePolicy,
};

pub type NetworkF64 = Network<f64>;
pub type StateF64 = OperationState<f64>;
pub type ScenarioF64 = Scenario<f64>;
