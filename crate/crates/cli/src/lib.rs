//! Batch front end for the `birkhoff` library: input documents, result
//! documents and one function per command.

pub mod commands;
pub mod format;
pub mod output;

pub use commands::{CliError, Input};
pub use format::{emit, parse, Document, FormatError, Kind};
pub use output::{OutputFormat, ResultDocument};
