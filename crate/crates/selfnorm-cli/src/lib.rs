//! IO companion for the finite-group membership deciders: file formats,
//! report documents, run drivers, sweeps and the CLI surface.

pub mod files;
pub mod report;
pub mod run;
pub mod sweep;
