//! Canonical signed-digit (CSD) recoding.
//!
//! Every binary to CSD conversion here maps a [`BinaryWord`] (a nonnegative
//! value with an explicit wordlength `n`) onto a [`CsdRep`]: two disjoint bit
//! masks holding the `+1` and `-1` digit positions of an `(n + 1)`-digit
//! non-adjacent form. All converters return bit-identical masks; the
//! [`oracle`] module checks that claim against brute force.

mod error;
mod word;

pub mod converters;
pub mod oracle;
pub mod strsub;

pub use converters::{convert, traced, ConverterId, HkSequences, Trace};
pub use error::CsdError;
pub use word::{
    bit_length, carry_recurrence_oracle, get_carry, BinaryWord, CarrySeq, CsdRep, MAX_WORDLENGTH,
    WORD_BITS,
};

pub type Result<T, E = CsdError> = std::result::Result<T, E>;
