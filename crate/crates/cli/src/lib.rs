//! Library side of the command-line driver: the compare harness and the
//! reference data it regenerates, shared with the acceptance tests.

pub mod compare;
pub mod tables;
