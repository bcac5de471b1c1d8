//! Command-line front end: argument parsing, one handler per verb, and the
//! scripted suite of worked examples.

/// Runs `$body` with the type alias `$k` bound to the field named by `$spec`.
macro_rules! with_field {
    ($spec:expr, |$k:ident| $body:expr) => {
        match $spec {
            leavitt::FieldSpec::Rationals => {
                type $k = leavitt::Q;
                $body
            }
            leavitt::FieldSpec::Prime(2) => {
                type $k = leavitt::F2;
                $body
            }
            leavitt::FieldSpec::Prime(3) => {
                type $k = leavitt::F3;
                $body
            }
            leavitt::FieldSpec::Prime(5) => {
                type $k = leavitt::F5;
                $body
            }
            leavitt::FieldSpec::Prime(7) => {
                type $k = leavitt::F7;
                $body
            }
            leavitt::FieldSpec::Prime(11) => {
                type $k = leavitt::F11;
                $body
            }
            leavitt::FieldSpec::Prime(13) => {
                type $k = leavitt::F13;
                $body
            }
            other => Err(anyhow::anyhow!(
                "unsupported field {other}; use one of F2, F3, F5, F7, F11, F13, Q"
            )),
        }
    };
}

pub mod args;
mod commands;
mod input;
pub mod report;
pub mod suite;

pub use args::{Cli, Command};
pub use report::Report;

/// Exit status for input and parse errors.
pub const EXIT_INPUT: i32 = 2;

/// Runs one command. `Err` means the input could not be used.
pub fn run(cli: &Cli) -> anyhow::Result<Report> {
    commands::dispatch(&cli.command)
}
