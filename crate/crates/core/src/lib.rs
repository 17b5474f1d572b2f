//! Exact symbolic algebra on (1|2)-dimensional supertime `(t, θ, θ̄)`.

pub mod actions;
pub mod constraints;
pub mod curvature;
pub mod grassmann;
pub mod parser;
pub mod ring;
pub mod superspace;
pub mod supermatrix;
