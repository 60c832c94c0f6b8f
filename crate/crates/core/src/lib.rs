//! Distances between laws of random probability measures on the real line.
//!
//! Two distances are implemented between empirical laws of discrete measures:
//!
//! * [`wow::wow_distance`], the Wasserstein distance whose ground metric is
//!   itself the 1-Wasserstein distance, computed exactly as an assignment
//!   problem;
//! * [`hipm::hipm_lip_distance`], the hierarchical IPM over 1-Lipschitz test
//!   functions, approximated by projected gradient ascent on a grid.
//!
//! [`measures`] holds the data types and the samplers for the Dirichlet
//! process and its finite approximations, [`oracles`] the closed-form values
//! and analytic bounds used as ground truth, and [`experiment`] a seeded
//! harness regenerating the convergence and approximation studies.

pub mod cli;
pub mod error;
pub mod experiment;
pub mod hipm;
pub mod io;
pub mod measures;
pub mod oracles;
pub mod ot1d;
pub mod plot;
pub mod seed;
pub mod wow;

pub use error::{Error, Result};
pub use hipm::{hipm_lip_distance, mean_lower_bound, AscentConfig, LipschitzProfile};
pub use measures::{BaseMeasure, DiscreteMeasure, DpParams, EmpiricalLaw, Grid, GriddedLaw};
pub use seed::Seed;
pub use wow::wow_distance;
