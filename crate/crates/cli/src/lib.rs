//! Data loading, report rendering and the command-line front end for the
//! codegree verification pipeline.

pub mod commands;
pub mod data;
pub mod report;
