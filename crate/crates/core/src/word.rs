use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{CsdError, Result};

/// Width of the machine word every algorithm operates on.
pub const WORD_BITS: u32 = 64;

/// Largest accepted wordlength. Two bits of headroom keep `x + 2x` and
/// `x + x / 2` inside the machine word.
pub const MAX_WORDLENGTH: u32 = WORD_BITS - 2;

/// Number of significant binary digits of `value` (0 for 0).
#[inline]
pub fn bit_length(value: u64) -> u32 {
    WORD_BITS - value.leading_zeros()
}

/// Mask covering digit positions `0..=n`.
#[inline]
pub(crate) fn digit_mask(n: u32) -> u64 {
    debug_assert!(n <= MAX_WORDLENGTH);
    (1u64 << (n + 1)) - 1
}

#[inline(always)]
pub(crate) fn bit(value: u64, i: u32) -> u64 {
    if i >= WORD_BITS {
        0
    } else {
        (value >> i) & 1
    }
}

/// A nonnegative integer together with its wordlength `n`.
///
/// Bits at positions `n` and above are zero. Reading any digit outside
/// `0..n` yields 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinaryWord {
    value: u64,
    wordlength: u32,
}

impl BinaryWord {
    pub fn new(value: u64, wordlength: u32) -> Result<Self> {
        if wordlength > MAX_WORDLENGTH {
            return Err(CsdError::WordlengthTooLarge(wordlength));
        }
        if bit_length(value) > wordlength {
            return Err(CsdError::ValueTooWide { value, wordlength });
        }
        Ok(Self { value, wordlength })
    }

    /// Uses the tightest wordlength, `bit_length(value)`.
    pub fn from_value(value: u64) -> Result<Self> {
        if bit_length(value) > MAX_WORDLENGTH {
            return Err(CsdError::ValueTooWide {
                value,
                wordlength: MAX_WORDLENGTH,
            });
        }
        Self::new(value, bit_length(value))
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn wordlength(self) -> u32 {
        self.wordlength
    }

    /// Digit `x_i`, zero outside `0..n`.
    #[inline]
    pub fn bit(self, i: i64) -> u64 {
        if i < 0 {
            0
        } else {
            bit(self.value, i as u32)
        }
    }
}

/// A signed-digit number stored as two disjoint masks `y+` and `y-`
/// over digit positions `0..=n`.
///
/// Values of this type always satisfy the canonical form invariants:
/// disjoint masks, no two adjacent nonzero digits, and a `+1` as the most
/// significant nonzero digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CsdRep {
    plus: u64,
    minus: u64,
    wordlength: u32,
}

impl CsdRep {
    /// Builds a representation from its masks, checking every invariant.
    pub fn from_masks(plus: u64, minus: u64, wordlength: u32) -> Result<Self> {
        if wordlength > MAX_WORDLENGTH {
            return Err(CsdError::WordlengthTooLarge(wordlength));
        }
        let rep = Self {
            plus,
            minus,
            wordlength,
        };
        rep.check()?;
        Ok(rep)
    }

    #[inline]
    pub(crate) fn from_masks_unchecked(plus: u64, minus: u64, wordlength: u32) -> Self {
        let rep = Self {
            plus,
            minus,
            wordlength,
        };
        debug_assert_eq!(rep.check(), Ok(()), "{plus:#b} {minus:#b} n={wordlength}");
        rep
    }

    /// Splits LSB-first digits over {-1, 0, 1} into masks.
    pub fn from_digits(digits: &[i8]) -> Result<Self> {
        let Some(wordlength) = digits.len().checked_sub(1) else {
            return Err(CsdError::EmptyDigitString);
        };
        if wordlength > MAX_WORDLENGTH as usize {
            return Err(CsdError::WordlengthTooLarge(wordlength as u32));
        }
        let (mut plus, mut minus) = (0u64, 0u64);
        for (i, &d) in digits.iter().enumerate() {
            match d {
                1 => plus |= 1 << i,
                -1 => minus |= 1 << i,
                0 => {}
                _ => return Err(CsdError::InvalidRep("digit outside {-1, 0, 1}")),
            }
        }
        Self::from_masks(plus, minus, wordlength as u32)
    }

    /// Checks the canonical form invariants.
    pub fn check(&self) -> Result<()> {
        let outside = !digit_mask(self.wordlength);
        if (self.plus | self.minus) & outside != 0 {
            return Err(CsdError::InvalidRep("digit set above position n"));
        }
        if self.plus & self.minus != 0 {
            return Err(CsdError::InvalidRep("digit is both +1 and -1"));
        }
        let nonzero = self.plus | self.minus;
        if nonzero & (nonzero << 1) != 0 {
            return Err(CsdError::InvalidRep("adjacent nonzero digits"));
        }
        if self.minus != 0 && bit_length(self.minus) >= bit_length(self.plus) {
            return Err(CsdError::InvalidRep("leading nonzero digit is -1"));
        }
        Ok(())
    }

    /// The `y+` mask.
    #[inline]
    pub fn plus_mask(&self) -> u64 {
        self.plus
    }

    /// The `y-` mask.
    #[inline]
    pub fn minus_mask(&self) -> u64 {
        self.minus
    }

    #[inline]
    pub fn wordlength(&self) -> u32 {
        self.wordlength
    }

    /// Number of digit positions, `n + 1`.
    #[inline]
    pub fn len(&self) -> usize {
        self.wordlength as usize + 1
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sum of `2^i * (y+_i - y-_i)`.
    #[inline]
    pub fn value(&self) -> i64 {
        self.plus as i64 - self.minus as i64
    }

    /// Hamming weight: the count of nonzero digits.
    #[inline]
    pub fn weight(&self) -> u32 {
        self.plus.count_ones() + self.minus.count_ones()
    }

    /// Digit at position `i`; zero outside `0..=n`.
    #[inline]
    pub fn digit(&self, i: u32) -> i8 {
        bit(self.plus, i) as i8 - bit(self.minus, i) as i8
    }

    /// Digits least significant first, `n + 1` of them.
    pub fn digits(&self) -> Vec<i8> {
        (0..=self.wordlength).map(|i| self.digit(i)).collect()
    }

    /// MSB-first rendering over `{'0', '+', '-'}`, e.g. 7 -> `+00-`.
    pub fn to_compact(&self) -> String {
        (0..=self.wordlength)
            .rev()
            .map(|i| match self.digit(i) {
                1 => '+',
                -1 => '-',
                _ => '0',
            })
            .collect()
    }

    /// MSB-first space separated digits, e.g. 7 -> `1 0 0 -1`.
    pub fn to_digit_list(&self) -> String {
        let tokens: Vec<String> = (0..=self.wordlength)
            .rev()
            .map(|i| self.digit(i).to_string())
            .collect();
        tokens.join(" ")
    }

    /// Both masks as `n + 1` wide binary strings.
    pub fn to_mask_pair(&self) -> String {
        let width = self.len();
        format!("plus={:0width$b} minus={:0width$b}", self.plus, self.minus)
    }

    /// Parses the digit-list rendering (`1 0 0 -1`).
    pub fn parse_digit_list(s: &str) -> Result<Self> {
        let mut digits = s
            .split_whitespace()
            .map(|tok| match tok {
                "1" | "+1" => Ok(1),
                "0" => Ok(0),
                "-1" => Ok(-1),
                other => Err(CsdError::InvalidDigit(other.chars().next().unwrap_or(' '))),
            })
            .collect::<Result<Vec<i8>>>()?;
        digits.reverse();
        Self::from_digits(&digits)
    }
}

impl fmt::Display for CsdRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_compact())
    }
}

impl FromStr for CsdRep {
    type Err = CsdError;

    /// Parses the compact rendering produced by [`CsdRep::to_compact`].
    fn from_str(s: &str) -> Result<Self> {
        let mut digits = s
            .trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                '0' => Ok(0),
                other => Err(CsdError::InvalidDigit(other)),
            })
            .collect::<Result<Vec<i8>>>()?;
        digits.reverse();
        Self::from_digits(&digits)
    }
}

/// Carry-out sequence of a binary addition; bit `i` holds `c_i`, the carry
/// into position `i`. `c_0` is always 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CarrySeq(pub u64);

impl CarrySeq {
    #[inline]
    pub fn mask(self) -> u64 {
        self.0
    }

    /// `c_i`.
    #[inline]
    pub fn bit(self, i: u32) -> u64 {
        bit(self.0, i)
    }
}

/// Carries of `a + b` from the full-adder identity `c = a ^ b ^ (a + b)`.
///
/// The caller guarantees `a + b` fits in 64 bits; a carry out of bit 63 is
/// not representable and is dropped.
#[inline(always)]
pub fn get_carry(a: u64, b: u64) -> CarrySeq {
    debug_assert!(a.checked_add(b).is_some(), "carry chain overflows the word");
    let sum = a.wrapping_add(b);
    CarrySeq(a ^ b ^ sum)
}

/// Carries of `a + b` by running the ripple recurrence
/// `c_{i+1} = a_i & b_i | c_i & (a_i ^ b_i)` one bit at a time.
pub fn carry_recurrence_oracle(a: u64, b: u64) -> CarrySeq {
    let mut carries = 0u64;
    let mut c = 0u64;
    for i in 0..WORD_BITS - 1 {
        let (ai, bi) = (bit(a, i), bit(b, i));
        c = (ai & bi) | (c & (ai ^ bi));
        carries |= c << (i + 1);
    }
    CarrySeq(carries)
}
