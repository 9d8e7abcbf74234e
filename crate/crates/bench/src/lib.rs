//! Timing harness for the CSD converters.
//!
//! Every converter is fed the same seeded buffer of uniform random inputs.
//! One sample is a timed pass of `evals_per_sample` conversions; the
//! per-evaluation time of a sample is its elapsed time divided by that
//! count. Five statistics are reported per converter, rows sorted by mean.
//! Measurement runs on the calling thread only.

use std::fmt::Write as _;
use std::hint::black_box;
use std::time::Instant;

use csd_core::converters::{
    bin2naf, garner_arith, garner_logic, garner_masked, garner_revisited, naf, reitwiesner,
    reitwiesner_modified, ruiz_granda,
};
use csd_core::strsub::{string_0, string_1};
use csd_core::{BinaryWord, ConverterId, CsdRep, MAX_WORDLENGTH};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

pub const DEFAULT_SAMPLES: usize = 1000;
pub const DEFAULT_EVALS: usize = 1000;
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_INPUT_BITS: u32 = 32;

/// Name of the generator behind the input buffer.
pub const RNG_ALGORITHM: &str = "ChaCha8 (rand_chacha 0.9, seed_from_u64)";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BenchError {
    #[error("invalid bench configuration: {0}")]
    InvalidConfig(String),
    #[error("cannot summarize an empty list of timings")]
    EmptySamples,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchConfig {
    pub sample_count: usize,
    pub evals_per_sample: usize,
    pub rng_seed: u64,
    pub input_bits: u32,
    pub converters: Vec<ConverterId>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            sample_count: DEFAULT_SAMPLES,
            evals_per_sample: DEFAULT_EVALS,
            rng_seed: DEFAULT_SEED,
            input_bits: DEFAULT_INPUT_BITS,
            converters: ConverterId::ALL.to_vec(),
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), BenchError> {
        if self.sample_count == 0 {
            return Err(BenchError::InvalidConfig(
                "sample count must be at least 1".into(),
            ));
        }
        if self.evals_per_sample == 0 {
            return Err(BenchError::InvalidConfig(
                "evaluations per sample must be at least 1".into(),
            ));
        }
        if self.input_bits > MAX_WORDLENGTH {
            return Err(BenchError::InvalidConfig(format!(
                "input bits {} exceed {MAX_WORDLENGTH}",
                self.input_bits
            )));
        }
        if self.converters.is_empty() {
            return Err(BenchError::InvalidConfig("no converters selected".into()));
        }
        Ok(())
    }
}

/// The shared input buffer: `evals_per_sample` values uniform in
/// `[0, 2^input_bits - 1]`, each with wordlength `input_bits`.
pub fn generate_inputs(config: &BenchConfig) -> Vec<BinaryWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let bits = config.input_bits;
    (0..config.evals_per_sample)
        .map(|_| {
            let v = if bits == 0 {
                0
            } else {
                rng.random::<u64>() >> (64 - bits)
            };
            BinaryWord::new(v, bits).expect("value drawn within input_bits")
        })
        .collect()
}

// FNV-1a over 64-bit words.
fn fold_checksum(acc: u64, word: u64) -> u64 {
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    (acc ^ word).wrapping_mul(PRIME)
}

const CHECKSUM_SEED: u64 = 0xcbf2_9ce4_8422_2325;

pub fn input_checksum(inputs: &[BinaryWord]) -> u64 {
    inputs
        .iter()
        .fold(CHECKSUM_SEED, |acc, x| fold_checksum(acc, x.value()))
}

/// Five-number summary, in nanoseconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub min: f64,
    pub max: f64,
    pub median: f64,
    pub mean: f64,
    pub stddev: f64,
}

/// Minimum, maximum, median (mean of the central pair for even counts),
/// mean, and sample standard deviation (N - 1 divisor, 0 for a single
/// sample).
pub fn summarize(times: &[f64]) -> Result<Summary, BenchError> {
    if times.is_empty() {
        return Err(BenchError::EmptySamples);
    }
    let mut sorted = times.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    };
    let mean = sorted.iter().sum::<f64>() / n as f64;
    let stddev = if n == 1 {
        0.0
    } else {
        let ss: f64 = sorted.iter().map(|t| (t - mean).powi(2)).sum();
        (ss / (n - 1) as f64).sqrt()
    };
    Ok(Summary {
        min: sorted[0],
        max: sorted[n - 1],
        median,
        mean,
        stddev,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConverterTiming {
    pub converter: ConverterId,
    pub stats: Summary,
    /// Checksum of every output mask over the input buffer.
    pub output_checksum: u64,
    /// Checksum of the inputs this converter consumed.
    pub input_checksum: u64,
    pub mask_based: bool,
    /// False for converters kept out of the headline comparison.
    pub headline: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Environment {
    pub os: &'static str,
    pub arch: &'static str,
    pub optimized: bool,
    pub threads: usize,
}

impl Environment {
    fn current() -> Self {
        Self {
            os: std::env::consts::OS,
            arch: std::env::consts::ARCH,
            optimized: !cfg!(debug_assertions),
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub config: BenchConfig,
    pub rng: &'static str,
    pub unit: &'static str,
    pub input_checksum: u64,
    pub timer_resolution_ns: f64,
    pub environment: Environment,
    pub warnings: Vec<String>,
    /// Sorted by mean, ascending.
    pub rows: Vec<ConverterTiming>,
}

/// Smallest nonzero step observed between consecutive `Instant` readings.
pub fn timer_resolution_ns() -> f64 {
    let mut best = u128::MAX;
    for _ in 0..1000 {
        let a = Instant::now();
        let mut b = Instant::now();
        while b == a {
            b = Instant::now();
        }
        best = best.min((b - a).as_nanos());
    }
    best.max(1) as f64
}

#[inline(always)]
fn mix_rep(acc: u64, rep: &CsdRep) -> u64 {
    fold_checksum(fold_checksum(acc, rep.plus_mask()), rep.minus_mask())
}

struct Timed {
    times: Vec<f64>,
    input_checksum: u64,
    output_checksum: u64,
}

/// Times one converter over the buffer, `samples` times.
fn time_converter<F>(convert: F, inputs: &[BinaryWord], samples: usize) -> Timed
where
    F: Fn(BinaryWord) -> CsdRep,
{
    // warmup pass, also fixes both checksums
    let mut input_checksum = CHECKSUM_SEED;
    let mut output_checksum = CHECKSUM_SEED;
    for &x in inputs {
        input_checksum = fold_checksum(input_checksum, x.value());
        output_checksum = mix_rep(output_checksum, &convert(black_box(x)));
    }

    let evals = inputs.len() as f64;
    let mut times = Vec::with_capacity(samples);
    for _ in 0..samples {
        let mut sink = 0u64;
        let start = Instant::now();
        for &x in inputs {
            let rep = convert(black_box(x));
            sink ^= rep.plus_mask().wrapping_add(rep.minus_mask());
        }
        let elapsed = start.elapsed();
        black_box(sink);
        times.push(elapsed.as_nanos() as f64 / evals);
    }
    Timed {
        times,
        input_checksum,
        output_checksum,
    }
}

fn time_by_id(id: ConverterId, inputs: &[BinaryWord], samples: usize) -> Timed {
    // one arm per converter so each loop is monomorphized and inlined
    match id {
        ConverterId::Reitwiesner => time_converter(reitwiesner, inputs, samples),
        ConverterId::ReitwiesnerModified => time_converter(reitwiesner_modified, inputs, samples),
        ConverterId::GarnerArith => time_converter(garner_arith, inputs, samples),
        ConverterId::GarnerLogic => time_converter(garner_logic, inputs, samples),
        ConverterId::GarnerMasked => time_converter(garner_masked, inputs, samples),
        ConverterId::GarnerRevisited => time_converter(garner_revisited, inputs, samples),
        ConverterId::Naf => time_converter(naf, inputs, samples),
        ConverterId::Bin2naf => time_converter(bin2naf, inputs, samples),
        ConverterId::RuizGranda => time_converter(ruiz_granda, inputs, samples),
        ConverterId::String0 => time_converter(string_0, inputs, samples),
        ConverterId::String1 => time_converter(string_1, inputs, samples),
    }
}

pub fn run_bench(config: &BenchConfig) -> Result<BenchReport, BenchError> {
    config.validate()?;
    let inputs = generate_inputs(config);
    let in_sum = input_checksum(&inputs);
    let resolution = timer_resolution_ns();
    let mut warnings = Vec::new();

    let mut rows = Vec::with_capacity(config.converters.len());
    for &id in &config.converters {
        let timed = time_by_id(id, &inputs, config.sample_count);
        let stats = summarize(&timed.times)?;

        let batch_ns = stats.median * config.evals_per_sample as f64;
        if batch_ns < 100.0 * resolution {
            warnings.push(format!(
                "{id}: median batch time {batch_ns:.0} ns is under 100x the timer resolution \
                 ({resolution:.0} ns); raise --evals"
            ));
        }
        let headline = id != ConverterId::RuizGranda;
        rows.push(ConverterTiming {
            converter: id,
            stats,
            output_checksum: timed.output_checksum,
            input_checksum: timed.input_checksum,
            mask_based: id.is_mask_based(),
            headline,
            note: (!headline).then(|| "loop-bound, excluded from headline table".to_string()),
        });
    }
    rows.sort_by(|a, b| a.stats.mean.total_cmp(&b.stats.mean));

    Ok(BenchReport {
        config: config.clone(),
        rng: RNG_ALGORITHM,
        unit: "ns",
        input_checksum: in_sum,
        timer_resolution_ns: resolution,
        environment: Environment::current(),
        warnings,
        rows,
    })
}

/// Outcome of comparing mask-based against loop-based medians.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupingCheck {
    pub slowest_mask_based: Option<(ConverterId, f64)>,
    pub fastest_loop_based: Option<(ConverterId, f64)>,
    pub holds: Option<bool>,
}

const LOOP_GROUP: [ConverterId; 3] = [
    ConverterId::Reitwiesner,
    ConverterId::Naf,
    ConverterId::String0,
];
const MASK_GROUP: [ConverterId; 4] = [
    ConverterId::GarnerMasked,
    ConverterId::GarnerRevisited,
    ConverterId::Bin2naf,
    ConverterId::ReitwiesnerModified,
];

impl BenchReport {
    pub fn row(&self, id: ConverterId) -> Option<&ConverterTiming> {
        self.rows.iter().find(|r| r.converter == id)
    }

    /// Whether every mask-based converter has a smaller median than every
    /// loop-based one. Informational only.
    pub fn grouping(&self) -> GroupingCheck {
        let pick = |group: &[ConverterId]| {
            group
                .iter()
                .filter_map(|&id| self.row(id).map(|r| (id, r.stats.median)))
                .collect::<Vec<_>>()
        };
        let slowest_mask = pick(&MASK_GROUP)
            .into_iter()
            .max_by(|a, b| a.1.total_cmp(&b.1));
        let fastest_loop = pick(&LOOP_GROUP)
            .into_iter()
            .min_by(|a, b| a.1.total_cmp(&b.1));
        let holds = match (slowest_mask, fastest_loop) {
            (Some(m), Some(l)) => Some(m.1 < l.1),
            _ => None,
        };
        GroupingCheck {
            slowest_mask_based: slowest_mask,
            fastest_loop_based: fastest_loop,
            holds,
        }
    }

    /// Aligned text table, one row per converter.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<22} {:>10} {:>10} {:>10} {:>10} {:>10}",
            "Algorithm", "Minimum", "Maximum", "Median", "Mean", "Std dev"
        );
        for r in &self.rows {
            let name = if r.headline {
                r.converter.name().to_string()
            } else {
                format!("{}*", r.converter.name())
            };
            let s = r.stats;
            let _ = writeln!(
                out,
                "{:<22} {:>10.3} {:>10.3} {:>10.3} {:>10.3} {:>10.3}",
                name, s.min, s.max, s.median, s.mean, s.stddev
            );
        }
        let _ = writeln!(
            out,
            "times in ns per evaluation; {} samples x {} evaluations; {}-bit inputs; seed {}",
            self.config.sample_count,
            self.config.evals_per_sample,
            self.config.input_bits,
            self.config.rng_seed
        );
        if self.rows.iter().any(|r| !r.headline) {
            let _ = writeln!(out, "* loop-bound, excluded from headline table");
        }
        if !self.environment.optimized {
            let _ = writeln!(
                out,
                "note: unoptimized build, timings are not representative"
            );
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
