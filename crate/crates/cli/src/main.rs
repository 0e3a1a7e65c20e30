use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use fqcat::iso::DEFAULT_ISO_BUDGET;
use fqcat::pipeline::{run, split_list, split_sets, Command, IndexFilterSpec, Options, DEFAULT_MAX_MORPHISMS};

/// Verify model structures on finite categories and their filter quotients.
///
/// Exit status: 0 all checks pass, 1 some check failed, 2 input error,
/// 3 some check inconclusive and none failed.
#[derive(Parser, Debug)]
#[command(name = "fqcat", version)]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Node budget for isomorphism searches.
    #[arg(long, global = true, default_value_t = DEFAULT_ISO_BUDGET)]
    iso_budget: u64,
    /// Refuse inputs with more morphisms than this.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_MORPHISMS)]
    max_morphisms: usize,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Parse a presentation and check the category laws.
    Validate { file: PathBuf },
    /// Check the model category axioms.
    ModelCheck { file: PathBuf },
    /// List the discrete homotopically subterminal objects.
    Subterminals { file: PathBuf },
    /// Count, or with --enumerate list, the filters of subterminals.
    Filters {
        file: PathBuf,
        #[arg(long)]
        enumerate: bool,
    },
    /// Check that a filter is a model filter.
    CheckModelFilter {
        file: PathBuf,
        /// Comma-separated object names; defaults to the file's filter.
        #[arg(long)]
        filter: Option<String>,
    },
    /// Build the filter quotient and its model structure.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        filter: Option<String>,
        /// Also compare against the quotient computed at the minimum.
        #[arg(long)]
        oracle: bool,
        /// Write the quotient as a presentation file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Build a filter product over a finite index set.
    #[command(group(ArgGroup::new("index_filter").required(true).args(["filter_min", "filter_sets"])))]
    Product {
        file: PathBuf,
        /// Comma-separated index labels.
        #[arg(long)]
        index: String,
        /// Labels of the least set of a principal filter.
        #[arg(long)]
        filter_min: Option<String>,
        /// Sets of labels separated by `;`, e.g. `a;a,b`.
        #[arg(long)]
        filter_sets: Option<String>,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Check that a Quillen adjunction descends to filter quotients.
    Transfer {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        adjunction: PathBuf,
        #[arg(long)]
        left_filter: Option<String>,
        #[arg(long)]
        right_filter: Option<String>,
    },
}

fn command(cmd: Cmd) -> Command {
    let list = |s: Option<String>| s.map(|s| split_list(&s));
    match cmd {
        Cmd::Validate { file } => Command::Validate { file },
        Cmd::ModelCheck { file } => Command::ModelCheck { file },
        Cmd::Subterminals { file } => Command::Subterminals { file },
        Cmd::Filters { file, enumerate } => Command::Filters { file, enumerate },
        Cmd::CheckModelFilter { file, filter } => Command::CheckModelFilter {
            file,
            filter: list(filter),
        },
        Cmd::Quotient {
            file,
            filter,
            oracle,
            emit,
        } => Command::Quotient {
            file,
            filter: list(filter),
            oracle,
            emit,
        },
        Cmd::Product {
            file,
            index,
            filter_min,
            filter_sets,
            emit,
        } => Command::Product {
            file,
            index: split_list(&index),
            filter: match (filter_min, filter_sets) {
                (Some(m), _) => IndexFilterSpec::Minimum(split_list(&m)),
                (None, Some(s)) => IndexFilterSpec::Sets(split_sets(&s)),
                (None, None) => unreachable!("clap requires one of the two"),
            },
            emit,
        },
        Cmd::Transfer {
            left,
            right,
            adjunction,
            left_filter,
            right_filter,
        } => Command::Transfer {
            left,
            right,
            adjunction,
            left_filter: list(left_filter),
            right_filter: list(right_filter),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let opts = Options {
        json: cli.json,
        iso_budget: cli.iso_budget,
        max_morphisms: cli.max_morphisms,
    };
    let outcome = run(&command(cli.command), &opts);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
