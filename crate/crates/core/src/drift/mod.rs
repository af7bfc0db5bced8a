//! Boundary kernels, drift bounds, positivity certificates and the min-max
//! machinery for the drift of an island boundary.

mod bounds;
pub mod certificate;
mod grid;
mod kernel;
pub mod lemma;
pub mod reference;
mod tables;

pub use bounds::{
    drift1_n2_general, drift1_n3_1000, drift1_n3_s1, drift2_n2_00, drift2_n3_0000, drift2_n3_1000, i0, inf00,
    min_d0_d1_at, ClassBound,
};
pub use grid::{grid_scan, GridMin};
pub use kernel::{BoundaryClass, Delta, Drift, Kernel, KernelEntry};
pub use tables::{all_kernels, kernel_n2_00, kernel_n2_general, kernel_n3_0000, kernel_n3_1000, kernel_n3_s1};
