//! Holomorphic calculus on the tube domain and numerical verification of
//! the bracket's analytic identities.

pub mod branch;
pub mod bracket_op;
pub mod checks;
pub mod group;
pub mod holo;
pub mod l2;
pub mod tube;

pub use branch::{log_det_over_i, BranchedPower};
pub use bracket_op::{apply_b, bracket_symbol};
pub use group::{coherent_state, phi_nu, pi_action, GroupGenerator};
pub use holo::{holo_derivative, CauchyOptions, HoloFunction};
pub use tube::TubePoint;
