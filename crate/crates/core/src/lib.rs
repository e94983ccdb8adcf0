//! Exact free-field realizations of the W_N algebra and its q-deformation.

pub mod cli;
pub mod climit;
pub mod coeff;
pub mod currents;
pub mod fock;
pub mod linalg;
pub mod relations;
pub mod singular;
pub mod symfun;
