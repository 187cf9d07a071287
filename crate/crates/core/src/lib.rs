//! Exact construction and certification of the four-dimensional
//! scissors-congruence dissections behind Heron's formula.

pub mod cli;
pub mod cube;
pub mod expansion;
pub mod geometry;
pub mod heron;
pub mod poly;
pub mod pythag;
pub mod record;
pub mod report;
pub mod scalar;
