mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{CliResult, Input, Output};

#[derive(Parser)]
#[command(name = "ozonelab", version, about = "Centers, normal elements and ozone groups of graded algebras")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(clap::Args)]
struct SpecArgs {
    /// Algebra spec file.
    spec: PathBuf,
    #[arg(long, default_value_t = 4)]
    max_degree: u32,
    /// File with further `[[autos]]` candidates.
    #[arg(long)]
    extra_autos: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Normal words and dimensions per degree.
    Basis {
        #[command(flatten)]
        args: SpecArgs,
        /// Generator precedence, largest first, e.g. `z,y,x`.
        #[arg(long)]
        order: Option<String>,
    },
    /// Center generators and relations.
    Center {
        #[command(flatten)]
        args: SpecArgs,
    },
    /// Lower and upper bounds for the ozone group.
    Ozone {
        #[command(flatten)]
        args: SpecArgs,
        #[arg(long)]
        conductor: Option<u32>,
    },
    /// Fixed ring of the spec's maps, or of the ozone group.
    Fixed {
        #[command(flatten)]
        args: SpecArgs,
        #[arg(long)]
        conductor: Option<u32>,
    },
    /// Center of the smash product with the spec's maps, or the ozone group.
    Smash {
        #[command(flatten)]
        args: SpecArgs,
        #[arg(long)]
        conductor: Option<u32>,
    },
    /// Rank `(h_A / h_Z)(1)`.
    Rank {
        #[arg(long)]
        ha: String,
        #[arg(long)]
        hz: String,
    },
    /// Runs the built-in corpus, or the named cases.
    Corpus {
        #[arg(long = "case")]
        cases: Vec<String>,
    },
    /// Built-in algebra families.
    Families {
        #[command(subcommand)]
        action: FamiliesAction,
    },
    /// Re-verifies a JSON report against its spec file.
    CheckReport { report: PathBuf, spec: PathBuf },
}

#[derive(Subcommand)]
enum FamiliesAction {
    List,
    /// Prints the spec file of a built-in case.
    Emit { id: String },
}

fn run(cli: &Cli) -> CliResult<Option<Output>> {
    let load = |a: &SpecArgs| Input::load(&a.spec, a.extra_autos.as_ref());
    let out = match &cli.command {
        Command::Basis { args, order } => commands::basis(&load(args)?, args.max_degree, order.as_deref())?,
        Command::Center { args } => commands::center_cmd(&load(args)?, args.max_degree)?,
        Command::Ozone { args, conductor } => commands::ozone(&load(args)?, args.max_degree, *conductor)?,
        Command::Fixed { args, conductor } => commands::fixed(&load(args)?, args.max_degree, *conductor)?,
        Command::Smash { args, conductor } => commands::smash(&load(args)?, args.max_degree, *conductor)?,
        Command::Rank { ha, hz } => commands::rank(ha, hz)?,
        Command::Corpus { cases } => commands::corpus(cases)?,
        Command::Families { action: FamiliesAction::List } => commands::families_list()?,
        Command::Families { action: FamiliesAction::Emit { id } } => {
            emit(&commands::families_emit(id)?);
            return Ok(None);
        }
        Command::CheckReport { report, spec } => commands::check_report(report, &Input::load(spec, None)?)?,
    };
    Ok(Some(out))
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(out)) => {
            match cli.format {
                Format::Json => emit(&format!("{}\n", out.report.to_json())),
                Format::Table => emit(&out.table),
            }
            ExitCode::from(out.status as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
