use clap::{Parser, Subcommand, ValueEnum};
use lunacox_core::report::{emit, exit_code_for, parse, run, Format, ReportView, RunConfig};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

/// Luna stratifications of quotient spaces: strata, admissibility
/// certificates, divisor class groups and graded Cox presentations, for
/// quasitorus modules and finite matrix groups over cyclotomic fields.
#[derive(Parser)]
#[command(name = "lunacox", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(clap::Args)]
struct CommonArgs {
    /// problem description (JSON)
    spec: PathBuf,
    /// generator degree bound for invariant rings
    #[arg(long)]
    max_degree: Option<u32>,
    /// relation degree bound
    #[arg(long)]
    rel_degree: Option<u32>,
    /// recompute derived quantities with the slow independent oracles;
    /// mismatches abort with exit code 4
    #[arg(long)]
    oracle: bool,
    /// output format
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    /// cap on the group order during closure
    #[arg(long)]
    cap_order: Option<usize>,
    /// cap on the number of distinct weights
    #[arg(long)]
    cap_weights: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// enumerate the Luna strata with admissibility and class groups
    Strata(CommonArgs),
    /// strata plus graded Cox presentations
    Cox(CommonArgs),
    /// the full report: strata, Cox data, quotient cones, boundary scans
    /// and the invariant presentation of the quotient
    Report(CommonArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, view, config) = match &cli.command {
        Command::Strata(a) => (
            a,
            ReportView::Strata,
            RunConfig {
                compute_cox: false,
                compute_cones: false,
                compute_boundary: false,
                compute_quotient_presentation: false,
            },
        ),
        Command::Cox(a) => (
            a,
            ReportView::Cox,
            RunConfig {
                compute_cox: true,
                compute_cones: false,
                compute_boundary: false,
                compute_quotient_presentation: false,
            },
        ),
        Command::Report(a) => (a, ReportView::Full, RunConfig::default()),
    };

    let text = match std::fs::read_to_string(&args.spec) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.spec.display());
            return ExitCode::from(2);
        }
    };

    let mut spec = match parse(&text) {
        Ok(s) => s,
        Err(errors) => {
            eprintln!("schema errors in {}:", args.spec.display());
            for e in errors {
                eprintln!("  {e}");
            }
            return ExitCode::from(2);
        }
    };

    if let Some(d) = args.max_degree {
        spec.options.max_degree = Some(d);
    }
    if let Some(d) = args.rel_degree {
        spec.options.rel_degree = Some(d);
    }
    if args.oracle {
        spec.options.oracle = true;
    }
    if let Some(c) = args.cap_order {
        spec.options.cap_order = c;
    }
    if let Some(c) = args.cap_weights {
        spec.options.cap_weights = c;
    }

    let report = match run(&spec, config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code_for(&e));
        }
    };

    let format = match args.format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Text => Format::Text,
    };
    let bytes = emit(&report, format, view);
    std::io::stdout().write_all(&bytes).expect("stdout");
    ExitCode::SUCCESS
}
