//! Association schemes, Fourier analysis, wavelets and codes on finite
//! Abelian groups carrying a chain of subgroups.
//!
//! The group `X` is filtered by `X = G_0 ⊃ G_1 ⊃ … ⊃ G_d = {0}`. The balls
//! `B(r) = G_{d−r}` induce an ultrametric, a metric translation scheme on
//! spheres and a finer nonmetric scheme on ball cosets. All tables are
//! computed in closed form and cross-checked against exhaustive oracles.

pub mod ball_scheme;
pub mod coding;
pub mod dual_fourier;
pub mod error;
pub mod group_core;
pub mod metric_scheme;
pub mod oracle;
pub mod par;
pub mod phase;
pub mod rational;
pub mod report;
pub mod spec;
pub mod verify;
pub mod wavelet_lp;

pub use dual_fourier::Carrier;
pub use error::{Error, Result};
pub use group_core::ChainedGroup;
pub use spec::GroupSpec;
