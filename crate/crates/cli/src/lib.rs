//! Command-line front end: argument handling, report documents and the
//! `--recheck` self-audit.

pub mod args;
pub mod audit;
pub mod commands;
pub mod problem;
pub mod report;

use clap::Parser;
use thiserror::Error;

use args::{Cli, Command, OutputFormat};
use report::{Report, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;
/// A certificate failed to verify where the construction guarantees it should.
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::CheckInvariant(_) => "check-invariant",
        Command::Cofactor(_) => "cofactor",
        Command::Dependence(_) => "dependence",
        Command::Logform(_) => "logform",
        Command::Tangency(_) => "tangency",
        Command::FirstIntegral(_) => "first-integral",
        Command::MultiplicativeIntegral(_) => "multiplicative-integral",
        Command::Nk(_) => "nk",
        Command::DimExact(_) => "dim-exact",
        Command::Search(_) => "search",
        Command::Residue(_) => "residue",
        Command::Parse(_) => "parse",
    }
}

fn dispatch(c: &Command) -> Result<Report, CliError> {
    match c {
        Command::CheckInvariant(a) => commands::check_invariant(a),
        Command::Cofactor(a) => commands::cofactor(a),
        Command::Dependence(a) => commands::dependence(a),
        Command::Logform(a) => commands::logform(a),
        Command::Tangency(a) => commands::tangency(a),
        Command::FirstIntegral(a) => commands::first_integral(a),
        Command::MultiplicativeIntegral(a) => commands::multiplicative(a),
        Command::Nk(a) => commands::nk(a),
        Command::DimExact(a) => commands::dim_exact(a),
        Command::Search(a) => commands::search(a),
        Command::Residue(a) => commands::residue(a),
        Command::Parse(a) => commands::parse(a),
    }
}

fn options(c: &Command) -> (OutputFormat, bool) {
    let common = match c {
        Command::CheckInvariant(a)
        | Command::Cofactor(a)
        | Command::Dependence(a)
        | Command::Logform(a)
        | Command::Tangency(a)
        | Command::MultiplicativeIntegral(a) => a,
        Command::FirstIntegral(a) => &a.common,
        Command::Search(a) => &a.common,
        Command::Residue(a) => &a.common,
        Command::Parse(a) => &a.common,
        Command::Nk(a) | Command::DimExact(a) => return (a.output, false),
    };
    (common.output, common.recheck)
}

/// Serializes the report, reads it back and rechecks every certificate.
fn self_audit(report: &mut Report) -> bool {
    let result = match Report::parse_machine(&report.to_machine()) {
        Ok(back) => audit::audit(&back),
        Err(e) => audit::AuditResult { checked: 0, failures: vec![format!("unreadable report: {e}")] },
    };
    report.put("audit.checked", result.checked);
    report.put("audit.passed", result.passed());
    report.put_list("audit.failures", result.failures.iter().cloned());
    result.passed()
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let (format, recheck) = options(&cli.command);
    let (mut report, mut code, mut stderr) = match dispatch(&cli.command) {
        Ok(r) => {
            let code = match r.status() {
                Status::Verified => EXIT_OK,
                Status::Negative => EXIT_NEGATIVE,
                Status::Error => EXIT_INTERNAL,
            };
            (r, code, String::new())
        }
        Err(e) => {
            let mut r = Report::new(command_name(&cli.command));
            r.set_status(Status::Error);
            r.put("error", e.to_string());
            (r, e.exit_code(), format!("{e}\n"))
        }
    };
    if recheck && !self_audit(&mut report) {
        report.set_status(Status::Error);
        stderr.push_str("internal error: certificate recheck failed\n");
        code = EXIT_INTERNAL;
    }
    let stdout = match format {
        OutputFormat::Text => report.to_text(),
        OutputFormat::Machine => report.to_machine(),
    };
    Outcome { code, stdout, stderr }
}
