//! Workspace format, resolver, command drivers and certificates for the
//! `rclkit` verifier.

pub mod ast;
pub mod canon;
pub mod certificate;
pub mod commands;
pub mod error;
pub mod lexer;
pub mod parser;
pub mod resolve;

pub use certificate::{Certificate, Format};
pub use commands::{run_file, run_source, Command, Options};
pub use error::CliError;
pub use parser::parse;
pub use resolve::{resolve, Resolved};
