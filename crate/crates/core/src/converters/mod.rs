//! Binary to CSD converters.
//!
//! Each algorithm keeps its classic structure: loop-based
//! converters visit positions `0..=n` one digit at a time, mask-based ones
//! work on whole words. They all return the same [`CsdRep`].
//!
//! Converters can optionally record their internal sequences into a
//! [`Trace`] (see [`traced`]) so the identities linking them can be checked.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{strsub, BinaryWord, CsdError, CsdRep, Result};

mod garner;
mod naf;
mod reitwiesner;
mod ruiz_granda;

pub use garner::{
    bin2naf, garner_arith, garner_logic, garner_masked, garner_revisited, garner_rule, GarnerRule,
    GARNER_RULES,
};
pub use naf::naf;
pub use reitwiesner::{reitwiesner, reitwiesner_modified};
pub use ruiz_granda::{get_hk, ruiz_granda, HkSequences};

pub(crate) use garner::{
    bin2naf_with, garner_arith_with, garner_logic_with, garner_masked_with, garner_revisited_with,
};
pub(crate) use reitwiesner::{reitwiesner_modified_with, reitwiesner_with};
pub(crate) use ruiz_granda::ruiz_granda_with;

/// Names every implemented conversion algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConverterId {
    Reitwiesner,
    ReitwiesnerModified,
    GarnerArith,
    GarnerLogic,
    GarnerMasked,
    GarnerRevisited,
    Naf,
    Bin2naf,
    RuizGranda,
    #[serde(rename = "string_0")]
    String0,
    #[serde(rename = "string_1")]
    String1,
}

impl ConverterId {
    pub const ALL: [ConverterId; 11] = [
        ConverterId::Reitwiesner,
        ConverterId::ReitwiesnerModified,
        ConverterId::GarnerArith,
        ConverterId::GarnerLogic,
        ConverterId::GarnerMasked,
        ConverterId::GarnerRevisited,
        ConverterId::Naf,
        ConverterId::Bin2naf,
        ConverterId::RuizGranda,
        ConverterId::String0,
        ConverterId::String1,
    ];

    /// The converter every other one is checked against.
    pub const REFERENCE: ConverterId = ConverterId::Bin2naf;

    pub fn name(self) -> &'static str {
        match self {
            ConverterId::Reitwiesner => "reitwiesner",
            ConverterId::ReitwiesnerModified => "reitwiesner_modified",
            ConverterId::GarnerArith => "garner_arith",
            ConverterId::GarnerLogic => "garner_logic",
            ConverterId::GarnerMasked => "garner_masked",
            ConverterId::GarnerRevisited => "garner_revisited",
            ConverterId::Naf => "naf",
            ConverterId::Bin2naf => "bin2naf",
            ConverterId::RuizGranda => "ruiz_granda",
            ConverterId::String0 => "string_0",
            ConverterId::String1 => "string_1",
        }
    }

    /// Whether the algorithm works on whole words rather than digit by digit.
    pub fn is_mask_based(self) -> bool {
        matches!(
            self,
            ConverterId::ReitwiesnerModified
                | ConverterId::GarnerMasked
                | ConverterId::GarnerRevisited
                | ConverterId::Bin2naf
        )
    }

    /// The plain function behind this id.
    pub fn function(self) -> fn(BinaryWord) -> CsdRep {
        match self {
            ConverterId::Reitwiesner => reitwiesner,
            ConverterId::ReitwiesnerModified => reitwiesner_modified,
            ConverterId::GarnerArith => garner_arith,
            ConverterId::GarnerLogic => garner_logic,
            ConverterId::GarnerMasked => garner_masked,
            ConverterId::GarnerRevisited => garner_revisited,
            ConverterId::Naf => naf,
            ConverterId::Bin2naf => bin2naf,
            ConverterId::RuizGranda => ruiz_granda,
            ConverterId::String0 => strsub::string_0,
            ConverterId::String1 => strsub::string_1,
        }
    }

    /// Comma separated list of every valid name.
    pub fn valid_names() -> String {
        let names: Vec<&str> = Self::ALL.iter().map(|id| id.name()).collect();
        names.join(", ")
    }
}

impl fmt::Display for ConverterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConverterId {
    type Err = CsdError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| CsdError::UnknownConverter(s.to_owned()))
    }
}

/// Runs the named converter.
#[inline]
pub fn convert(id: ConverterId, x: BinaryWord) -> CsdRep {
    (id.function())(x)
}

/// Internal sequences a converter produced, one mask per sequence with bit
/// `i` holding element `i`.
///
/// Which fields are filled depends on the converter:
///
/// | converter            | fields                                        |
/// |----------------------|-----------------------------------------------|
/// | reitwiesner          | `t` (x_i ^ x_{i-1}), `g`                      |
/// | reitwiesner_modified | `c` (carries of x + 2x), `g`                  |
/// | garner_arith/logic   | `c` (carries of x + x/2); logic also `d`      |
/// | garner_masked        | `h` (x/2), `c`, `d`                           |
/// | garner_revisited     | `h`, `t` (x + x/2)                            |
/// | bin2naf              | `h`, `t`, `d`                                 |
/// | ruiz_granda          | `h`, `k` (the parity recurrences), `d`        |
/// | string_0             | `f` (scanner flag, f_i before position i)     |
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub g: Option<u64>,
    pub t: Option<u64>,
    pub c: Option<u64>,
    pub d: Option<u64>,
    pub h: Option<u64>,
    pub k: Option<u64>,
    pub f: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Seq {
    G,
    T,
    C,
    D,
    H,
    K,
    F,
}

/// Receives internal sequences. The unit sink discards them and lets the
/// compiler drop the bookkeeping entirely.
pub(crate) trait Sink {
    const ENABLED: bool;
    fn record(&mut self, seq: Seq, mask: u64);
}

impl Sink for () {
    const ENABLED: bool = false;
    #[inline(always)]
    fn record(&mut self, _: Seq, _: u64) {}
}

impl Sink for Trace {
    const ENABLED: bool = true;
    fn record(&mut self, seq: Seq, mask: u64) {
        let slot = match seq {
            Seq::G => &mut self.g,
            Seq::T => &mut self.t,
            Seq::C => &mut self.c,
            Seq::D => &mut self.d,
            Seq::H => &mut self.h,
            Seq::K => &mut self.k,
            Seq::F => &mut self.f,
        };
        *slot = Some(mask);
    }
}

/// Runs a converter and captures its internal sequences.
pub fn traced(id: ConverterId, x: BinaryWord) -> (CsdRep, Trace) {
    let mut trace = Trace::default();
    let rep = match id {
        ConverterId::Reitwiesner => reitwiesner_with(x, &mut trace),
        ConverterId::ReitwiesnerModified => reitwiesner_modified_with(x, &mut trace),
        ConverterId::GarnerArith => garner_arith_with(x, &mut trace),
        ConverterId::GarnerLogic => garner_logic_with(x, &mut trace),
        ConverterId::GarnerMasked => garner_masked_with(x, &mut trace),
        ConverterId::GarnerRevisited => garner_revisited_with(x, &mut trace),
        ConverterId::Naf => naf(x),
        ConverterId::Bin2naf => bin2naf_with(x, &mut trace),
        ConverterId::RuizGranda => ruiz_granda_with(x, &mut trace),
        ConverterId::String0 => strsub::string_0_with(x, &mut trace),
        ConverterId::String1 => strsub::string_1(x),
    };
    (rep, trace)
}

/// Splits a digit of {-1, 0, 1} into `(y+_i, y-_i)` bits.
#[inline(always)]
pub(crate) fn split_digit(y: i64) -> (u64, u64) {
    ((y == 1) as u64, (y == -1) as u64)
}
