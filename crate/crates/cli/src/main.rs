use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use eve_cli::tables::ALL_TABLES;
use eve_cli::{run_bounds, run_evaluate, run_paper_tables, Conversion, InputFormat, Outcome, OutputFormat, RunConfig};
use eve_core::MeasureSelection;

#[derive(Parser)]
#[command(name = "eve", version, about = "Eigenvalue-entropy and classical measures for confusion matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct InputArgs {
    /// Input file: CSV matrix (column = true class) or TSV labels.
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = InputFormat::Matrix)]
    format: InputFormat,
    /// The input has true classes on rows.
    #[arg(long)]
    transpose: bool,
    /// Add 1/n to every entry before evaluating.
    #[arg(long)]
    smooth: bool,
    /// Evaluate the class-size adjusted estimate matrix.
    #[arg(long)]
    use_estimate: bool,
    #[arg(long = "out", value_enum, default_value_t = OutputFormat::Table)]
    output: OutputFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Compute measures for one confusion matrix.
    Evaluate {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Conversion::None)]
        convert: Conversion,
        /// Comma-separated measure ids, `multiclass`, or `all`.
        #[arg(long, default_value = "all")]
        measures: MeasureSelection,
        /// With --convert pairs, also show the counts without the self-pair correction.
        #[arg(long)]
        paper_literal: bool,
        /// Print the numerical tolerances in use.
        #[arg(long)]
        echo_tolerance: bool,
    },
    /// Eigenvalues and Gershgorin bounds only.
    Bounds {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Recompute the published tables from the embedded matrices.
    PaperTables {
        /// Comma-separated table numbers (1-9).
        #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u8).range(1..=9))]
        tables: Vec<u8>,
    },
}

fn config(input: InputArgs) -> RunConfig {
    let mut cfg = RunConfig::new(input.file);
    cfg.input_format = input.format;
    cfg.transpose = input.transpose;
    cfg.smooth = input.smooth;
    cfg.use_estimate = input.use_estimate;
    cfg.output_format = input.output;
    cfg
}

fn emit(outcome: Outcome) -> ExitCode {
    if outcome.exit_code == 0 {
        print!("{}", outcome.text);
    } else {
        eprint!("{}", outcome.text);
    }
    ExitCode::from(outcome.exit_code as u8)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Evaluate { input, convert, measures, paper_literal, echo_tolerance } => {
            let mut cfg = config(input);
            cfg.convert = convert;
            cfg.measures = measures;
            cfg.paper_literal = paper_literal;
            cfg.echo_tolerance = echo_tolerance;
            emit(run_evaluate(&cfg))
        }
        Command::Bounds { input } => emit(run_bounds(&config(input))),
        Command::PaperTables { tables } => {
            let tables = if tables.is_empty() { ALL_TABLES.to_vec() } else { tables };
            print!("{}", run_paper_tables(&tables));
            ExitCode::SUCCESS
        }
    }
}
