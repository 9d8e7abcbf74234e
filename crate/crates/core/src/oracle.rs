//! Brute-force ground truth.
//!
//! Nothing here calls a converter to compute its answer: representations
//! are enumerated digit by digit, minimal weight is found by dynamic
//! programming, and [`cross_check`] compares the converters against the
//! reference one.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::{
    bit_length, convert, BinaryWord, ConverterId, CsdError, CsdRep, Result, MAX_WORDLENGTH,
};

/// Longest digit string [`enumerate_sd_reps`] will explore.
pub const MAX_ENUM_LEN: u32 = 16;

/// Longest digit string [`min_weight`] accepts.
pub const MAX_DP_LEN: u32 = 63;

/// An arbitrary signed-digit representation, least significant digit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SdCandidate {
    pub digits: Vec<i8>,
}

impl SdCandidate {
    pub fn value(&self) -> i64 {
        self.digits
            .iter()
            .rev()
            .fold(0i64, |acc, &d| 2 * acc + d as i64)
    }

    pub fn weight(&self) -> usize {
        self.digits.iter().filter(|&&d| d != 0).count()
    }

    pub fn is_non_adjacent(&self) -> bool {
        self.digits.windows(2).all(|w| w[0] == 0 || w[1] == 0)
    }
}

fn guard(x: u64, max_len: u32, limit: u32) -> Result<()> {
    if max_len > limit {
        return Err(CsdError::Guard(format!(
            "length {max_len} exceeds the limit of {limit}"
        )));
    }
    if bit_length(x) > max_len {
        return Err(CsdError::Guard(format!(
            "{x} does not fit in {max_len} digits"
        )));
    }
    Ok(())
}

/// Every digit string of exactly `max_len` digits over {-1, 0, 1} whose
/// value is `x`, in lexicographic order (digit 0 first, -1 < 0 < 1).
pub fn enumerate_sd_reps(x: u64, max_len: u32) -> Result<Vec<SdCandidate>> {
    guard(x, max_len, MAX_ENUM_LEN)?;
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(max_len as usize);
    enumerate_into(x as i64, max_len, &mut prefix, &mut out);
    for cand in &out {
        assert_eq!(cand.value(), x as i64, "enumerator emitted a wrong value");
    }
    Ok(out)
}

// Digit i must match the parity of the remaining value; the tail has to
// stay within +/-(2^len - 1).
fn enumerate_into(rest: i64, len: u32, prefix: &mut Vec<i8>, out: &mut Vec<SdCandidate>) {
    if len == 0 {
        if rest == 0 {
            out.push(SdCandidate {
                digits: prefix.clone(),
            });
        }
        return;
    }
    if rest.unsigned_abs() > (1u64 << len) - 1 {
        return;
    }
    for d in [-1i8, 0, 1] {
        let r = rest - d as i64;
        if r % 2 != 0 {
            continue;
        }
        prefix.push(d);
        enumerate_into(r / 2, len - 1, prefix, out);
        prefix.pop();
    }
}

/// Minimum Hamming weight over all signed-digit strings of at most
/// `max_len` digits with value `x`.
pub fn min_weight(x: u64, max_len: u32) -> Result<u32> {
    guard(x, max_len, MAX_DP_LEN)?;
    let mut memo = HashMap::new();
    Ok(min_weight_dp(x as i64, max_len, &mut memo).expect("x fits, so plain binary is feasible"))
}

fn min_weight_dp(rest: i64, len: u32, memo: &mut HashMap<(i64, u32), Option<u32>>) -> Option<u32> {
    if rest == 0 {
        return Some(0);
    }
    if len == 0 {
        return None;
    }
    if let Some(&hit) = memo.get(&(rest, len)) {
        return hit;
    }
    let best = [-1i64, 0, 1]
        .into_iter()
        .filter(|d| (rest - d) % 2 == 0)
        .filter_map(|d| min_weight_dp((rest - d) / 2, len - 1, memo).map(|w| w + (d != 0) as u32))
        .min();
    memo.insert((rest, len), best);
    best
}

/// Number of non-adjacent strings among [`enumerate_sd_reps`]`(x, max_len)`.
pub fn count_naf_reps(x: u64, max_len: u32) -> Result<usize> {
    Ok(enumerate_sd_reps(x, max_len)?
        .iter()
        .filter(|c| c.is_non_adjacent())
        .count())
}

/// Inputs a cross-check runs over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CheckDomain {
    /// Every value in `start..end`, each with its tight wordlength.
    Range { start: u64, end: u64 },
    /// `count` values drawn from a ChaCha8 stream seeded with `seed`. Each
    /// draw picks a bit length in `0..=bits` and then a uniform value of
    /// that many bits.
    Random { count: usize, bits: u32, seed: u64 },
}

impl CheckDomain {
    pub fn len(&self) -> usize {
        match *self {
            CheckDomain::Range { start, end } => end.saturating_sub(start) as usize,
            CheckDomain::Random { count, .. } => count,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn validate(&self) -> Result<()> {
        match *self {
            CheckDomain::Range { start, end } => {
                if end <= start {
                    return Err(CsdError::EmptyDomain);
                }
                if bit_length(end - 1) > MAX_WORDLENGTH {
                    return Err(CsdError::ValueTooWide {
                        value: end - 1,
                        wordlength: MAX_WORDLENGTH,
                    });
                }
            }
            CheckDomain::Random { count, bits, .. } => {
                if count == 0 {
                    return Err(CsdError::EmptyDomain);
                }
                if bits > MAX_WORDLENGTH {
                    return Err(CsdError::WordlengthTooLarge(bits));
                }
            }
        }
        Ok(())
    }

    /// Seeded random inputs, identical for identical parameters.
    pub fn random_values(count: usize, bits: u32, seed: u64) -> Vec<u64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let len = rng.random_range(0..=bits);
                let raw: u64 = rng.random();
                if len == 0 {
                    0
                } else {
                    raw >> (64 - len)
                }
            })
            .collect()
    }
}

impl fmt::Display for CheckDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckDomain::Range { start, end } => write!(f, "range [{start}, {end})"),
            CheckDomain::Random { count, bits, seed } => {
                write!(f, "{count} random values, up to {bits} bits, seed {seed}")
            }
        }
    }
}

/// Outcome for a single converter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConverterResult {
    pub converter: ConverterId,
    /// Inputs whose masks differ from the reference converter.
    pub mismatches: u64,
    /// Inputs whose output breaks value preservation or a mask invariant.
    pub invalid: u64,
    /// Earliest input (in domain order) that mismatched or was invalid.
    pub first_failure: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub domain: CheckDomain,
    pub inputs: u64,
    pub reference: ConverterId,
    pub results: Vec<ConverterResult>,
}

impl CrossCheckReport {
    pub fn total_failures(&self) -> u64 {
        self.results.iter().map(|r| r.mismatches + r.invalid).sum()
    }

    pub fn passed(&self) -> bool {
        self.total_failures() == 0
    }
}

impl fmt::Display for CrossCheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "domain: {}", self.domain)?;
        writeln!(f, "inputs: {}", self.inputs)?;
        writeln!(f, "reference: {}", self.reference)?;
        for r in &self.results {
            write!(
                f,
                "{:<22} mismatches {:>8}  invalid {:>8}",
                r.converter.name(),
                r.mismatches,
                r.invalid
            )?;
            if let Some(x) = r.first_failure {
                write!(f, "  first failure at {x}")?;
            }
            writeln!(f)?;
        }
        write!(f, "{} mismatches", self.total_failures())
    }
}

#[derive(Clone)]
struct Tally {
    mismatches: Vec<u64>,
    invalid: Vec<u64>,
    first: Vec<Option<(usize, u64)>>,
}

impl Tally {
    fn new(k: usize) -> Self {
        Self {
            mismatches: vec![0; k],
            invalid: vec![0; k],
            first: vec![None; k],
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for i in 0..self.mismatches.len() {
            self.mismatches[i] += other.mismatches[i];
            self.invalid[i] += other.invalid[i];
            self.first[i] = match (self.first[i], other.first[i]) {
                (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
                (a, b) => a.or(b),
            };
        }
        self
    }
}

/// Checks that `rep` is a valid CSD of `x`.
pub fn is_valid_output(x: BinaryWord, rep: &CsdRep) -> bool {
    rep.check().is_ok() && rep.value() == x.value() as i64 && rep.wordlength() == x.wordlength()
}

/// Runs every converter over `domain` and compares each against
/// [`ConverterId::REFERENCE`]. Work is split across threads; the report is
/// independent of the split.
pub fn cross_check(domain: &CheckDomain) -> Result<CrossCheckReport> {
    cross_check_with(domain, &ConverterId::ALL)
}

pub fn cross_check_with(
    domain: &CheckDomain,
    converters: &[ConverterId],
) -> Result<CrossCheckReport> {
    domain.validate()?;
    let k = converters.len();

    let visit = |mut tally: Tally, (idx, v): (usize, u64)| {
        let x = BinaryWord::from_value(v).expect("domain validated");
        let reference = convert(ConverterId::REFERENCE, x);
        for (slot, &id) in converters.iter().enumerate() {
            let rep = convert(id, x);
            let mut failed = false;
            if !is_valid_output(x, &rep) {
                tally.invalid[slot] += 1;
                failed = true;
            }
            if rep != reference {
                tally.mismatches[slot] += 1;
                failed = true;
            }
            if failed && tally.first[slot].is_none_or(|(i, _)| idx < i) {
                tally.first[slot] = Some((idx, v));
            }
        }
        tally
    };

    let tally = match *domain {
        CheckDomain::Range { start, end } => (start..end)
            .into_par_iter()
            .map(|v| ((v - start) as usize, v))
            .fold(|| Tally::new(k), visit)
            .reduce(|| Tally::new(k), Tally::merge),
        CheckDomain::Random { count, bits, seed } => {
            let values = CheckDomain::random_values(count, bits, seed);
            values
                .into_par_iter()
                .enumerate()
                .fold(|| Tally::new(k), visit)
                .reduce(|| Tally::new(k), Tally::merge)
        }
    };

    let results = converters
        .iter()
        .enumerate()
        .map(|(slot, &converter)| ConverterResult {
            converter,
            mismatches: tally.mismatches[slot],
            invalid: tally.invalid[slot],
            first_failure: tally.first[slot].map(|(_, v)| v),
        })
        .collect();

    Ok(CrossCheckReport {
        domain: domain.clone(),
        inputs: domain.len() as u64,
        reference: ConverterId::REFERENCE,
        results,
    })
}
