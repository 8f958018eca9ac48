mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use plateau_core::Target;

#[derive(Debug, Parser)]
#[command(
    name = "plateau",
    version,
    about = "Linear codes from plateaued functions over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build one of the codes attached to a function and print it as JSON.
    Construct {
        #[command(flatten)]
        input: FunctionInput,
        #[arg(long, value_enum, default_value_t = Which::Cbar)]
        which: Which,
    },
    /// Weight distribution and structural summary of a code file.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
    },
    /// Check the closed-form claims for one function.
    Verify {
        #[command(flatten)]
        input: FunctionInput,
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "walsh,table,dual,extended,lcd,selforth,counts"
        )]
        targets: Vec<Target>,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Classify and verify many quadratic functions, one JSON line each.
    Scan {
        #[command(flatten)]
        field: FieldArgs,
        /// Number of random coefficient vectors.
        #[arg(long, conflicts_with = "exhaustive")]
        count: Option<usize>,
        /// Visit every coefficient vector.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Only keep functions with this plateau level.
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "walsh,table,dual,extended,lcd,selforth,counts"
        )]
        targets: Vec<Target>,
    },
    /// Extend a self-orthogonal code to a self-dual one.
    Selfdual { file: PathBuf },
    /// Defining polynomial, primitive element and element order of a field.
    FieldInfo {
        #[command(flatten)]
        field: FieldArgs,
    },
}

#[derive(Debug, Clone, Args)]
struct FieldArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    m: u32,
    /// Monic defining polynomial, coefficients from the constant term up.
    #[arg(long, value_delimiter = ',')]
    poly: Option<Vec<u32>>,
    /// Primitive element as polynomial-basis coefficients, constant first.
    #[arg(long, value_delimiter = ',')]
    alpha: Option<Vec<u32>>,
}

#[derive(Debug, Clone, Args)]
struct FunctionInput {
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, value_delimiter = ',')]
    poly: Option<Vec<u32>>,
    #[arg(long, value_delimiter = ',')]
    alpha: Option<Vec<u32>>,
    /// Quadratic form coefficients `a_0..a_{ceil(m/2)}` as `aK` or `0`.
    #[arg(long, value_delimiter = ',', conflicts_with = "table")]
    coeffs: Option<Vec<String>>,
    /// Function file with a field and a value table in canonical order.
    #[arg(long)]
    table: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Cbar,
    Cstar,
    Cf,
    Extended,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::enum_cap().and_then(|cap| match cli.command {
        Command::Construct { input, which } => commands::construct(&input, which),
        Command::Analyze { file, format } => commands::analyze(&file, format, cap),
        Command::Verify {
            input,
            targets,
            format,
            seed,
        } => commands::verify(&input, &targets, format, seed, cap),
        Command::Scan {
            field,
            count,
            exhaustive,
            seed,
            s,
            workers,
            targets,
        } => commands::scan(&field, count, exhaustive, seed, s, workers, &targets, cap),
        Command::Selfdual { file } => commands::selfdual(&file),
        Command::FieldInfo { field } => commands::field_info(&field),
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
