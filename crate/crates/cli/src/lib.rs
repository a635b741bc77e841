//! Command-line driver: single unfoldings and the randomized sweep.

pub mod args;
pub mod run;
pub mod svg;
pub mod sweep;
