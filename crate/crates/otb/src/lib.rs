//! File formats, reports and claim checks on top of `otb-core`.

pub mod claims;
pub mod planfile;
pub mod report;
