//! `bigraded`: cohomology tables and verification suites for bigraded
//! complexes.

mod checks;
mod config;
mod render;

use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use bigraded_core::models;

use config::{resolve_model, CheckSpec, FlavorSet, UsageError};

#[derive(Parser, Debug)]
#[command(name = "bigraded", version, about = "Exact cohomology of bigraded complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print cohomology tables of a model.
    Compute {
        /// Catalog name or path to a `.cplx` / `.vsm` file.
        model: String,
        /// Comma-separated: dolbeault, anti, derham, bc, aeppli, abc, all.
        #[arg(long, default_value = "dolbeault")]
        flavors: String,
        #[arg(long, value_enum, default_value_t = Output::Table)]
        output: Output,
    },
    /// Run verification checks on a model.
    Verify {
        /// Catalog name or path to a `.cplx` / `.vsm` file.
        model: String,
        /// Comma-separated: five-term, frolicher, duality, natural-maps,
        /// cone-les, theorem-crosscheck, cartan, action:<name>, random,
        /// structure, default.
        #[arg(long, default_value = "default")]
        checks: String,
        #[arg(long, value_enum, default_value_t = Output::Table)]
        output: Output,
        /// Seed for the randomized suite.
        #[arg(long, default_value_t = checks::DEFAULT_SEED)]
        seed: u64,
    },
    /// List catalog models.
    List {
        #[arg(long, value_enum, default_value_t = Output::Table)]
        output: Output,
    },
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Compute { model, flavors, output } => {
            let flavors: FlavorSet = flavors.parse()?;
            let loaded = resolve_model(&model)?;
            flavors.check_applicable(&loaded)?;
            let tables = render::compute_tables(&loaded, &flavors)?;
            print!("{}", render::render_compute(&loaded, &tables, output)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            model,
            checks: names,
            output,
            seed,
        } => {
            let specs = CheckSpec::parse_list(&names)?;
            let loaded = resolve_model(&model)?;
            let specs = config::expand_default(specs, &loaded);
            for spec in &specs {
                spec.check_applicable(&loaded)?;
            }
            let results = specs
                .iter()
                .map(|s| checks::run_check(s, &loaded, seed))
                .collect::<anyhow::Result<Vec<_>>>()?;
            print!("{}", render::render_verify(&loaded, &results, output)?);
            let failed = results.iter().any(|r| r.verdict == checks::Verdict::Fail);
            Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Command::List { output } => {
            let specs = models::catalog();
            print!("{}", render::render_list(&specs, output).context("rendering catalog")?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
