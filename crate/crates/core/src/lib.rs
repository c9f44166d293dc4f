//! Exact arithmetic for wavelet sets of L²(ℝ) and H²(ℝ).

pub mod accumulate;
pub mod classify;
pub mod cli;
pub mod error;
pub mod families;
pub mod h2_enum;
pub mod io;
pub mod polygonal;
pub mod profile;
pub mod rational;
pub mod sets;
pub mod tiling;

pub use error::{Error, Result};
pub use rational::Rational;
pub use sets::{Interval, IntervalSet};
