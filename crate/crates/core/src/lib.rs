//! Simulation and exact drift certification for the hard-core PCA and its
//! envelope.

pub mod error;
pub mod drift;
pub mod game;
pub mod islands;
pub mod params;
pub mod pca;
pub mod report;
pub mod rng;
pub mod state;
pub mod symbolic;

pub use error::{Error, Result};
