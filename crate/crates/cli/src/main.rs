//! `onesided`: continued fractions, one-sided best approximations of the
//! ℓ-th kind and lattice gap analysis from the command line.
//!
//! Every invocation prints one JSON document (schema "1") to stdout.
//! `--pretty` adds human-readable tables on stderr.

mod alpha;
mod commands;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Signed;

use alpha::{parse_exact_decimal, AlphaSpec, ParseError};
use commands::{exit, ClassifyRequest, GapsRequest, Outcome, Settings};
use onesided::classify::Side;

#[derive(Parser)]
#[command(
    name = "onesided",
    version,
    about = "One-sided best Diophantine approximations"
)]
struct Cli {
    /// Decimal places in rendered values.
    #[arg(long, global = true, default_value_t = 12)]
    digits: u32,
    /// Precision ceiling for interval evaluations involving pi.
    #[arg(long, global = true, default_value_t = onesided::spectral::DEFAULT_MAX_BITS,
          value_parser = clap::value_parser!(u32).range(64..))]
    precision_bits: u32,
    /// Human-readable tables on stderr.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Continued-fraction terms, periodicity and convergents.
    Expand {
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 20)]
        terms: usize,
    },
    /// Best lower/upper approximations via the enumerators.
    Classify {
        #[command(flatten)]
        query: QueryArgs,
        /// Cross-check against the definition scan (exit 3 on mismatch).
        #[arg(long)]
        check: bool,
    },
    /// Best lower/upper approximations by scanning every denominator.
    Oracle {
        #[command(flatten)]
        query: QueryArgs,
    },
    /// Spectral gaps of the rectangular lattice with edges a, b and coupling u.
    Gaps {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Coupling strength, as an exact decimal or p/q.
        #[arg(long)]
        u: String,
        #[arg(long)]
        m_max: u64,
    },
}

#[derive(Args)]
struct QueryArgs {
    #[arg(long)]
    alpha: String,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    kind: u32,
    #[arg(long, value_enum, default_value_t = SideArg::Both)]
    side: SideArg,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    q_max: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Lower,
    Upper,
    Both,
}

impl SideArg {
    fn sides(self) -> Vec<Side> {
        match self {
            SideArg::Lower => vec![Side::Lower],
            SideArg::Upper => vec![Side::Upper],
            SideArg::Both => vec![Side::Lower, Side::Upper],
        }
    }
}

enum Failure {
    Parse {
        flag: &'static str,
        text: String,
        err: ParseError,
    },
    Library(onesided::Error),
}

impl From<onesided::Error> for Failure {
    fn from(e: onesided::Error) -> Self {
        Failure::Library(e)
    }
}

fn parse_spec(flag: &'static str, text: &str) -> Result<AlphaSpec, Failure> {
    AlphaSpec::parse(text).map_err(|err| Failure::Parse {
        flag,
        text: text.to_string(),
        err,
    })
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let settings = Settings {
        digits: cli.digits,
        precision_bits: cli.precision_bits,
        pretty: cli.pretty,
    };
    match &cli.command {
        Command::Expand { alpha, terms } => {
            let spec = parse_spec("--alpha", alpha)?;
            Ok(commands::expand(alpha, &spec, *terms, &settings)?)
        }
        Command::Classify { query, check } => classify(query, *check, false, &settings),
        Command::Oracle { query } => classify(query, false, true, &settings),
        Command::Gaps { a, b, u, m_max } => {
            let a_spec = parse_spec("--a", a)?;
            let b_spec = parse_spec("--b", b)?;
            let u_value = parse_exact_decimal(u).map_err(|err| Failure::Parse {
                flag: "--u",
                text: u.clone(),
                err,
            })?;
            if !u_value.is_positive() {
                return Err(onesided::Error::InvalidArgument("u must be positive".into()).into());
            }
            let req = GapsRequest {
                a_text: a,
                b_text: b,
                u_text: u,
                a: commands::exact_of(&a_spec)?,
                b: commands::exact_of(&b_spec)?,
                u: u_value,
                m_max: *m_max,
            };
            Ok(commands::gaps(&req, &settings)?)
        }
    }
}

fn classify(
    query: &QueryArgs,
    check: bool,
    oracle_only: bool,
    settings: &Settings,
) -> Result<Outcome, Failure> {
    let spec = parse_spec("--alpha", &query.alpha)?;
    let req = ClassifyRequest {
        spec_text: &query.alpha,
        spec: &spec,
        kind: query.kind,
        sides: query.side.sides(),
        q_max: query.q_max,
        check,
        oracle_only,
    };
    Ok(commands::classify_cmd(&req, settings)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(outcome) => {
            let text = serde_json::to_string_pretty(&outcome.document).expect("serializable");
            println!("{text}");
            if let Some(note) = outcome.note {
                eprintln!("onesided: {note}");
            }
            outcome.code
        }
        Err(Failure::Parse { flag, text, err }) => {
            eprintln!("error: invalid value for {flag}: {}", err.message);
            eprintln!("  {text}");
            eprintln!(
                "  {}^ (column {})",
                " ".repeat(err.position),
                err.position + 1
            );
            exit::PARSE
        }
        Err(Failure::Library(e)) => {
            let code = commands::error_code(&e);
            let hint = match code {
                exit::EXACTNESS => " (the input is only known to finite precision; results are unknown beyond what it determines)",
                exit::BOUNDARY => " (raise --precision-bits to try again)",
                _ => "",
            };
            eprintln!("error: {e}{hint}");
            code
        }
    };
    ExitCode::from(code as u8)
}
