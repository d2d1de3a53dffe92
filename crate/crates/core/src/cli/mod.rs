//! Input-file format and command driver behind the `pnverify` binary.

mod run;
mod specfile;

pub use run::{execute, run_spec, Args, Command, OutputFormat, RunOptions, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
pub use specfile::{
    parse_specfile, CheckDecl, Decl, SpaceDecl, SpecError, SpecErrorKind, SpecFile, Suite, TensorDecl, TensorKind,
    TensorValue,
};
