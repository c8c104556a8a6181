//! Driver for the `openbook-hfk` binary: pipeline, reports, corpus sweeps
//! and verification suites.

pub mod corpus;
pub mod error;
pub mod input;
pub mod pipeline;
pub mod report;
pub mod suites;
