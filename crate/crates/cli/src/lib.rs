//! Command-line front end and the replay suite.

pub mod app;
pub mod suite;
