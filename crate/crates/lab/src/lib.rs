//! File formats, JSON reports and the command line of `rainbow-lab`.

pub mod commands;
pub mod format;
pub mod report;
