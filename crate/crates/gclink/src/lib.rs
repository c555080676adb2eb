//! Standard-library side of gclink: certificate documents and their
//! independent re-checker, projections to SVG, and the command line.
//!
//! All mathematics lives in [`gclink_core`]; this crate only moves it in
//! and out of files.

pub mod cli;
pub mod document;
pub mod pipeline;
pub mod projection;
pub mod recheck;
pub mod svg;
