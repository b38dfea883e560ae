use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use grinv_core::grassmann::{general_position, sample_config};
use grinv_core::orbit::{expected_quotient_dim, invariant_vector, jacobian_rank, same_orbit_test};
use grinv_core::{divisible, Config, Error, Verdict};

use crate::format::{read_json, to_json, write_atomic, ConfigFile, FormatError, InvariantFile, LettersFile};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_DISTINCT: u8 = 3;
pub const EXIT_DEGENERATE: u8 = 4;
pub const EXIT_INCONCLUSIVE: u8 = 5;

#[derive(Parser, Debug)]
#[command(name = "grinv", version, about = "Exact rational invariants of subspace configurations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a configuration in general position.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        bound: i64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute the trace-word invariant vector.
    Invariants {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare two configurations by their invariant vectors.
    OrbitTest {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Exact Jacobian rank of the invariant map against the expected dimension.
    Rank {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Extract the letter grid of a divisible-case configuration.
    Letters {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build the normal-form configuration for a divisible-case letter grid.
    Embed {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<FormatError> for Failure {
    fn from(err: FormatError) -> Self {
        match err {
            FormatError::Core(core) => core.into(),
            other => Failure { code: EXIT_INPUT, message: other.to_string() },
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Singular
            | Error::Degenerate { .. }
            | Error::WrongKernelDimension { .. }
            | Error::ZeroPatternViolation { .. }
            | Error::SamplingExhausted(_) => EXIT_DEGENERATE,
            _ => EXIT_INPUT,
        };
        Failure { code, message: err.to_string() }
    }
}

fn degenerate(message: &str) -> Failure {
    Failure { code: EXIT_DEGENERATE, message: message.to_owned() }
}

fn load_config(path: &Path) -> Result<Config, Failure> {
    let file: ConfigFile = read_json(path)?;
    let c = file.to_config()?;
    if c.case() == grinv_core::CaseTag::Unsupported {
        return Err(Error::UnsupportedCase { n: c.n(), d: c.d() }.into());
    }
    Ok(c)
}

fn load_generic(path: &Path) -> Result<Config, Failure> {
    let c = load_config(path)?;
    if !general_position(&c, c.case()) {
        return Err(degenerate("configuration is not in general position"));
    }
    Ok(c)
}

fn execute(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Gen { n, d, s, seed, bound, out } => {
            let c = sample_config(n, d, s, seed, bound)?;
            write_atomic(&out, &to_json(&ConfigFile::from_config(&c)))?;
            Ok(EXIT_OK)
        }
        Command::Invariants { input, max_len, out } => {
            let c = load_generic(&input)?;
            let v = invariant_vector(&c, max_len.unwrap_or(usize::MAX))?;
            write_atomic(&out, &to_json(&InvariantFile::from_vector(&v, c.s())))?;
            Ok(EXIT_OK)
        }
        Command::OrbitTest { a, b, max_len } => {
            let (a, b) = (load_config(&a)?, load_config(&b)?);
            let verdict = same_orbit_test(&a, &b, max_len.unwrap_or(usize::MAX))?;
            println!("{verdict:?}");
            Ok(match verdict {
                Verdict::Equivalent => EXIT_OK,
                Verdict::Distinct => EXIT_DISTINCT,
                Verdict::Inconclusive => EXIT_INCONCLUSIVE,
            })
        }
        Command::Rank { input, max_len } => {
            let c = load_generic(&input)?;
            let rank = jacobian_rank(&c, max_len.unwrap_or(usize::MAX))?;
            let expected = expected_quotient_dim(c.n(), c.d(), c.s())?;
            println!("rank {rank} / expected {expected}");
            Ok(EXIT_OK)
        }
        Command::Letters { input, out } => {
            let c = load_generic(&input)?;
            let data = divisible::matrix_data(&c)?;
            write_atomic(&out, &to_json(&LettersFile::from_data(&data)))?;
            Ok(EXIT_OK)
        }
        Command::Embed { input, out } => {
            let file: LettersFile = read_json(&input)?;
            let c = divisible::embed(&file.to_data()?)?;
            write_atomic(&out, &to_json(&ConfigFile::from_config(&c)))?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (including the program name) and runs the command, returning
/// the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}
