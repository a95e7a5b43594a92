//! Command-line front end: expression grammar, instance registry and
//! subcommand dispatch. The binary is a thin wrapper around [`app::run`].

pub mod app;
pub mod expr;
pub mod registry;

pub use app::{run, Cli, Command, ExitCode, Outcome};
pub use expr::{parse_expr, Expr, Mode, SyntaxError};
