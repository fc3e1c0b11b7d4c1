//! Front end for the Galilei verifier: expression syntax, algebra files,
//! the verification pipeline and its reports.

pub mod ast;
pub mod error;
pub mod eval;
pub mod parser;
pub mod report;
pub mod specfile;
pub mod suite;

pub use error::CliError;
pub use parser::parse;
