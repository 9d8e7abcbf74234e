//! String substitution view of the CSD conversion.
//!
//! A w-block is the bit pattern `00w11` where `w` is empty or starts with a
//! 1 and holds no two consecutive zeros. Converting to CSD amounts to
//! rewriting every w-block as `01[-w']0(-1)`, where `-w'` maps each digit
//! of `w` by `0 -> -1`, `1 -> 0`, and copying everything else.
//!
//! [`string_0`] scans with a two-bit window and a flag, [`string_1`]
//! rewrites runs of ones in place, and [`fsm_step`] is the transition
//! function both of them realize.

use serde::Serialize;

use crate::converters::{Seq, Sink};
use crate::word::bit;
use crate::{bit_length, BinaryWord, CsdError, CsdRep, Result};

/// Signed digits, least significant first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DigitString {
    digits: Vec<i8>,
}

impl DigitString {
    /// The digits of `x` as a plain binary string of length `n + 1`.
    pub fn from_word(x: BinaryWord) -> Self {
        let digits = (0..=x.wordlength())
            .map(|i| bit(x.value(), i) as i8)
            .collect();
        Self { digits }
    }

    pub fn digits(&self) -> &[i8] {
        &self.digits
    }

    pub fn value(&self) -> i64 {
        self.digits
            .iter()
            .rev()
            .fold(0i64, |acc, &d| 2 * acc + d as i64)
    }

    pub fn to_rep(&self) -> Result<CsdRep> {
        CsdRep::from_digits(&self.digits)
    }
}

/// Scanner state: the flag `f_i` and the window `(x_{i+1}, x_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FsmState {
    pub flag: bool,
    pub high: bool,
    pub low: bool,
}

impl FsmState {
    pub fn new(flag: bool, high: bool, low: bool) -> Self {
        Self { flag, high, low }
    }
}

/// Output of one scanner step: the digit `y_i` and the next flag `f_{i+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FsmOutput {
    pub digit: i8,
    pub next_flag: bool,
}

/// A row of the scanner's truth table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FsmRule {
    pub high: u8,
    pub low: u8,
    pub flag: u8,
    pub digit: i8,
    pub plus: u8,
    pub minus: u8,
    pub next_flag: u8,
}

const fn rule(
    high: u8,
    low: u8,
    flag: u8,
    digit: i8,
    plus: u8,
    minus: u8,
    next_flag: u8,
) -> FsmRule {
    FsmRule {
        high,
        low,
        flag,
        digit,
        plus,
        minus,
        next_flag,
    }
}

/// Columns `x_{i+1}, x_i, f_i, y_i, y+_i, y-_i, f_{i+1}`; rows sorted by
/// `(f_i, x_{i+1}, x_i)`.
pub const FSM_RULES: [FsmRule; 8] = [
    rule(0, 0, 0, 0, 0, 0, 0),
    rule(0, 1, 0, 1, 1, 0, 0),
    rule(1, 0, 0, 0, 0, 0, 0),
    rule(1, 1, 0, -1, 0, 1, 1),
    rule(0, 0, 1, 1, 1, 0, 0),
    rule(0, 1, 1, 0, 0, 0, 1),
    rule(1, 0, 1, -1, 0, 1, 1),
    rule(1, 1, 1, 0, 0, 0, 1),
];

/// Table-driven transition.
pub fn fsm_step(state: FsmState) -> FsmOutput {
    let row = FSM_RULES
        .iter()
        .find(|r| {
            r.high == state.high as u8 && r.low == state.low as u8 && r.flag == state.flag as u8
        })
        .expect("rule table covers all eight inputs");
    FsmOutput {
        digit: row.digit,
        next_flag: row.next_flag == 1,
    }
}

/// Transition from the closed forms `y+ = !x_{i+1} & (x_i ^ f)`,
/// `y- = x_{i+1} & (x_i ^ f)`, `f' = x_{i+1} & x_i | f & (x_{i+1} ^ x_i)`.
#[inline(always)]
pub fn fsm_step_closed_form(state: FsmState) -> FsmOutput {
    let FsmState { flag, high, low } = state;
    let d = low ^ flag;
    let plus = !high & d;
    let minus = high & d;
    FsmOutput {
        digit: plus as i8 - minus as i8,
        next_flag: (high & low) | (flag & (high ^ low)),
    }
}

/// Window-and-flag scanner over positions `0..=n`.
pub fn string_0(x: BinaryWord) -> CsdRep {
    string_0_with(x, &mut ())
}

pub(crate) fn string_0_with<S: Sink>(x: BinaryWord, sink: &mut S) -> CsdRep {
    let v = x.value();
    let n = x.wordlength();
    let (mut plus, mut minus, mut flags) = (0u64, 0u64, 0u64);
    let mut f = false;
    for i in 0..=n {
        if S::ENABLED {
            flags |= (f as u64) << i;
        }
        let p = (bit(v, i + 1), bit(v, i));
        let y: i8 = if !f {
            match p {
                (0, 1) => 1,
                (1, 1) => {
                    f = true;
                    -1
                }
                _ => 0,
            }
        } else {
            match p {
                (0, 0) => {
                    f = false;
                    1
                }
                (1, 0) => -1,
                _ => 0,
            }
        };
        plus |= ((y == 1) as u64) << i;
        minus |= ((y == -1) as u64) << i;
    }
    sink.record(Seq::F, flags);
    CsdRep::from_masks_unchecked(plus, minus, n)
}

/// In-place rewriter: every run of `j > 1` ones starting at `i` becomes
/// `+1` at `i + j`, zeros in between and `-1` at `i`.
pub fn string_1(x: BinaryWord) -> CsdRep {
    let n = x.wordlength() as usize;
    // one spare slot: a run ending at n carries into n + 1
    let mut y = vec![0i8; n + 2];
    for (i, d) in y.iter_mut().enumerate().take(n + 1) {
        *d = bit(x.value(), i as u32) as i8;
    }

    let mut i = 0usize;
    while i <= n {
        if y[i] == 0 {
            i += 1;
            continue;
        }
        let mut j = 1usize;
        while y[i + j] == 1 && y[i + j - 1] == 1 {
            j += 1;
        }
        if j > 1 {
            y[i + j] = 1;
            y[i + 1..i + j].fill(0);
            y[i] = -1;
        }
        i += j;
    }
    debug_assert_eq!(y[n + 1], 0);

    let (mut plus, mut minus) = (0u64, 0u64);
    for (i, &d) in y.iter().enumerate().take(n + 1) {
        plus |= ((d == 1) as u64) << i;
        minus |= ((d == -1) as u64) << i;
    }
    CsdRep::from_masks_unchecked(plus, minus, x.wordlength())
}

/// Whether `x` is a w-block `00w11`: `x = 4m + 3` with no two adjacent
/// zeros among the significant bits of `m`.
pub fn is_wblock(x: u64) -> bool {
    if x & 3 != 3 {
        return false;
    }
    let w = x >> 2;
    let zeros = !w & ((1u64 << bit_length(w)) - 1);
    zeros & (zeros >> 1) == 0
}

/// Iterator over w-block numbers in ascending order.
pub fn wblocks() -> impl Iterator<Item = u64> {
    (3u64..).step_by(4).filter(|&x| is_wblock(x))
}

/// The first `count` w-block numbers.
pub fn wblock_sequence(count: usize) -> Vec<u64> {
    wblocks().take(count).collect()
}

/// Rewrites a single isolated w-block by the substitution rule, returning
/// the `len + 2` digit result where `len` is the bit length of `block`.
pub fn substitute_wblock(block: u64) -> Result<CsdRep> {
    if !is_wblock(block) {
        return Err(CsdError::InvalidRep("not a w-block"));
    }
    let w_len = bit_length(block >> 2);
    let total = w_len + 4;
    // MSB first: 0 1 [-w'] 0 -1
    let mut msb_first: Vec<i8> = vec![0, 1];
    for i in (0..w_len).rev() {
        msb_first.push(if bit(block >> 2, i) == 1 { 0 } else { -1 });
    }
    msb_first.extend([0, -1]);
    debug_assert_eq!(msb_first.len(), total as usize);
    msb_first.reverse();
    CsdRep::from_digits(&msb_first)
}
