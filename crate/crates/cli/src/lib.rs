//! Command-line front end for `tate-syzygy`: loads presentations and algebra
//! dumps, runs the analyses and renders their reports as tables or JSON.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use tate_syzygy::cohomology::AnalysisOptions;
use tate_syzygy::presentation::gamma_presentation;
use tate_syzygy::random::RandomMonomial;
use tate_syzygy::tensor_check::TensorCheckOptions;
use thiserror::Error;

pub mod args;
pub mod commands;
pub mod input;
pub mod report;

use args::{Cli, Command, Common, Generate};
use commands::{search_options, ModuleChoice};
use input::{common_field, Input};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CliError {
    #[error("unknown module `{0}` (expected regular-bimodule, simple <v> or projective <v>)")]
    BadModule(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("--bardzell applies to the regular bimodule only")]
    BardzellNeedsBimodule,
    #[error("--bardzell needs a presentation, not an algebra dump")]
    BardzellNeedsPresentation,
}

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    Error = 1,
    /// Nothing was found within the search bounds.
    Inconclusive = 2,
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    if path == Path::new("-") {
        std::io::stdout().write_all(text.as_bytes())?;
    } else {
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn emit<T: Serialize>(json: &Option<PathBuf>, human: &str, value: &T) -> Result<()> {
    match json {
        Some(p) if p == Path::new("-") => write_json(p, value),
        Some(p) => {
            print!("{human}");
            write_json(p, value)
        }
        None => {
            print!("{human}");
            Ok(())
        }
    }
}

fn checks_status(failed: &[&str]) -> Status {
    if failed.is_empty() {
        Status::Success
    } else {
        eprintln!("failed checks: {}", failed.join(", "));
        Status::Error
    }
}

fn inconclusive(e: &anyhow::Error) -> bool {
    matches!(
        e.downcast_ref::<tate_syzygy::Error>(),
        Some(tate_syzygy::Error::NoCertificate { .. } | tate_syzygy::Error::Hypothesis(_))
    )
}

fn analysis_options(c: &Common, bound: usize) -> AnalysisOptions {
    AnalysisOptions { search: search_options(c.seed, c.n_max, c.p_max, c.sequential), gorenstein_bound: bound }
}

fn output(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn run(cli: Cli) -> Result<Status> {
    match cli.command {
        Command::Analyze { input, common, range, bound } => {
            let input = Input::load(&input)?;
            let field = common_field(&[&input], common.field)?;
            let opts = analysis_options(&common, bound);
            let report = commands::analyze(&input, field, range.lo, range.hi, &opts, common.timings)?;
            emit(&common.json, &report.render(), &report)?;
            if report.periodicity.is_none() {
                return Ok(Status::Inconclusive);
            }
            Ok(checks_status(&report.failed_checks()))
        }
        Command::Tensor { a, b, out, field } => {
            let (a, b) = (Input::load(&a)?, Input::load(&b)?);
            let field = common_field(&[&a, &b], field)?;
            print!("{}", commands::write_tensor(&a, &b, field, &out)?);
            Ok(Status::Success)
        }
        Command::Resolve { input, module, length, bardzell, common } => {
            let input = Input::load(&input)?;
            let field = common_field(&[&input], common.field)?;
            let module = ModuleChoice::parse(&module)?;
            let exec = search_options(common.seed, common.n_max, common.p_max, common.sequential).exec;
            let report = commands::resolve(&input, field, &module, length, bardzell, exec, common.timings)?;
            emit(&common.json, &report.render(), &report)?;
            Ok(checks_status(&report::failed(&report.checks)))
        }
        Command::TensorCheck { a, b, length, bound, no_direct, common } => {
            let (a, b) = (Input::load(&a)?, Input::load(&b)?);
            let field = common_field(&[&a, &b], common.field)?;
            let opts = TensorCheckOptions {
                length,
                global_dimension_bound: bound,
                direct: !no_direct,
                search: search_options(common.seed, common.n_max, common.p_max, common.sequential),
            };
            match commands::tensor_check(&a, &b, field, &opts, common.timings) {
                Ok(report) => {
                    emit(&common.json, &report.render(), &report)?;
                    Ok(checks_status(&report::failed(&report.checks)))
                }
                Err(e) if inconclusive(&e) => {
                    eprintln!("inconclusive: {e:#}");
                    Ok(Status::Inconclusive)
                }
                Err(e) => Err(e),
            }
        }
        Command::Generate { what } => {
            match what {
                Generate::Gamma { n, field, out } => {
                    let field = field.unwrap_or(tate_syzygy::FieldSpec::Rationals).validate()?;
                    output(&out, &gamma_presentation(n, field).to_text())?;
                }
                Generate::Random { seed, out } => {
                    let text = format!(
                        "# random monomial algebra, seed {seed}\n{}",
                        RandomMonomial::default().sample(seed).to_text()
                    );
                    output(&out, &text)?;
                }
            }
            Ok(Status::Success)
        }
    }
}
