//! `csd`: convert integers to canonical signed-digit form, cross-check the
//! converters, list w-block numbers, and time the converters.
//!
//! Exit status: 0 on success, 1 when a check finds a mismatch, 2 on usage
//! or input errors.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use csd_bench::{BenchConfig, DEFAULT_EVALS, DEFAULT_INPUT_BITS, DEFAULT_SAMPLES, DEFAULT_SEED};
use csd_core::oracle::{cross_check, CheckDomain};
use csd_core::strsub::wblock_sequence;
use csd_core::{convert, BinaryWord, ConverterId, CsdRep, MAX_WORDLENGTH};
use serde_json::json;

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "csd",
    version,
    about = "Canonical signed-digit recoding toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convert one value and print its CSD form.
    Convert {
        value: u64,
        /// Wordlength n; the output has n + 1 digits. Defaults to the bit length.
        #[arg(short = 'n', long = "n")]
        wordlength: Option<u32>,
        #[arg(long, default_value = "bin2naf", value_parser = parse_algo)]
        algo: ConverterId,
        #[arg(long, value_enum, default_value_t = OutputFormat::CompactString)]
        format: OutputFormat,
    },
    /// Run every converter over a range or a random sample and compare them.
    Check {
        /// Half-open range START:END.
        #[arg(long, value_parser = parse_range, conflicts_with = "random", required_unless_present = "random")]
        range: Option<(u64, u64)>,
        /// Number of random values to draw.
        #[arg(long)]
        random: Option<usize>,
        /// Maximum bit length of random values.
        #[arg(long, default_value_t = MAX_WORDLENGTH)]
        bits: u32,
        #[arg(long, env = "CSD_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Also write the structured report to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the first COUNT w-block numbers, one per line.
    Wblock {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Time the converters on seeded random inputs.
    Bench {
        #[arg(long, env = "CSD_SAMPLES", default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, env = "CSD_EVALS", default_value_t = DEFAULT_EVALS)]
        evals: usize,
        #[arg(long, env = "CSD_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Bit width of the random inputs.
        #[arg(long, default_value_t = DEFAULT_INPUT_BITS)]
        bits: u32,
        /// Comma separated converter ids; all of them by default.
        #[arg(long, value_delimiter = ',', value_parser = parse_algo)]
        algos: Vec<ConverterId>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    /// MSB first over '0', '+', '-'
    #[value(alias = "compact")]
    CompactString,
    /// MSB first, space separated, "-1" for negative digits
    DigitList,
    /// y+ and y- masks in binary
    MaskPair,
    /// JSON document
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Structured,
}

fn parse_algo(s: &str) -> Result<ConverterId, String> {
    s.parse().map_err(|_| {
        format!(
            "unknown algorithm `{s}`; valid ids: {}",
            ConverterId::valid_names()
        )
    })
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected START:END, got `{s}`"))?;
    let start = a
        .trim()
        .parse::<u64>()
        .map_err(|e| format!("bad start: {e}"))?;
    let end = b
        .trim()
        .parse::<u64>()
        .map_err(|e| format!("bad end: {e}"))?;
    if end <= start {
        return Err(format!("empty range {start}:{end}"));
    }
    Ok((start, end))
}

fn render(rep: &CsdRep, x: BinaryWord, algo: ConverterId, format: OutputFormat) -> String {
    match format {
        OutputFormat::CompactString => rep.to_compact(),
        OutputFormat::DigitList => rep.to_digit_list(),
        OutputFormat::MaskPair => rep.to_mask_pair(),
        OutputFormat::Structured => {
            let msb_first: Vec<i8> = rep.digits().into_iter().rev().collect();
            let doc = json!({
                "command": "convert",
                "value": x.value(),
                "wordlength": x.wordlength(),
                "algorithm": algo,
                "compact": rep.to_compact(),
                "digits": msb_first,
                "plus_mask": rep.plus_mask(),
                "minus_mask": rep.minus_mask(),
                "weight": rep.weight(),
            });
            serde_json::to_string_pretty(&doc).expect("json")
        }
    }
}

/// Prints `body` plus a newline; a closed pipe downstream is not an error.
fn emit(body: &str) -> anyhow::Result<()> {
    let mut stdout = io::stdout().lock();
    match writeln!(stdout, "{body}").and_then(|_| stdout.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn write_out(path: &Path, body: &str) -> anyhow::Result<()> {
    fs::write(path, body).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Convert {
            value,
            wordlength,
            algo,
            format,
        } => {
            let x = match wordlength {
                Some(n) => BinaryWord::new(value, n),
                None => BinaryWord::from_value(value),
            }
            .context("invalid input")?;
            let rep = convert(algo, x);
            emit(&render(&rep, x, algo, format))?;
            Ok(0)
        }
        Command::Check {
            range,
            random,
            bits,
            seed,
            format,
            out,
        } => {
            let domain = match (range, random) {
                (Some((start, end)), _) => CheckDomain::Range { start, end },
                (None, Some(count)) => CheckDomain::Random { count, bits, seed },
                (None, None) => bail!("one of --range or --random is required"),
            };
            let report = cross_check(&domain).context("invalid check domain")?;
            let structured = serde_json::to_string_pretty(&json!({
                "command": "check",
                "passed": report.passed(),
                "report": report,
            }))?;
            match format {
                ReportFormat::Text => emit(&report.to_string())?,
                ReportFormat::Structured => emit(&structured)?,
            }
            if let Some(path) = out {
                write_out(&path, &structured)?;
            }
            if report.passed() {
                Ok(0)
            } else {
                for r in report
                    .results
                    .iter()
                    .filter(|r| r.mismatches + r.invalid > 0)
                {
                    eprintln!(
                        "mismatch: {} first fails at input {}",
                        r.converter,
                        r.first_failure.unwrap_or_default()
                    );
                }
                Ok(EXIT_MISMATCH)
            }
        }
        Command::Wblock { count, format } => {
            let terms = wblock_sequence(count as usize);
            match format {
                ReportFormat::Text => {
                    let lines: Vec<String> = terms.iter().map(u64::to_string).collect();
                    emit(&lines.join("\n"))?;
                }
                ReportFormat::Structured => {
                    let doc = json!({ "command": "wblock", "count": count, "terms": terms });
                    emit(&serde_json::to_string_pretty(&doc)?)?;
                }
            }
            Ok(0)
        }
        Command::Bench {
            samples,
            evals,
            seed,
            bits,
            algos,
            format,
            out,
        } => {
            let config = BenchConfig {
                sample_count: samples,
                evals_per_sample: evals,
                rng_seed: seed,
                input_bits: bits,
                converters: if algos.is_empty() {
                    ConverterId::ALL.to_vec()
                } else {
                    algos
                },
            };
            config.validate()?;
            let report = csd_bench::run_bench(&config)?;
            let structured = report.to_json();
            match format {
                ReportFormat::Text => emit(report.to_table().trim_end())?,
                ReportFormat::Structured => emit(&structured)?,
            }
            if let Some(path) = out {
                write_out(&path, &structured)?;
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
