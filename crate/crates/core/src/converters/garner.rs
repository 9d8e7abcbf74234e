//! Converters built on the carries of `x + x/2`.
//!
//! `garner_arith` and `garner_logic` walk the carry sequence digit by digit
//! (arithmetic and Boolean readings of the same rule table); `garner_masked`,
//! `bin2naf` and `garner_revisited` are whole-word forms that only differ in
//! how they express `d = c ^ x = h ^ t`.

use super::{split_digit, Seq, Sink};
use crate::word::bit;
use crate::{get_carry, BinaryWord, CsdRep};

/// One row of the carry-driven rule table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GarnerRule {
    pub carry: u8,
    pub next_bit: u8,
    pub bit: u8,
    pub next_carry: u8,
    pub plus: u8,
    pub minus: u8,
}

const fn row(carry: u8, next_bit: u8, bit: u8, next_carry: u8, plus: u8, minus: u8) -> GarnerRule {
    GarnerRule {
        carry,
        next_bit,
        bit,
        next_carry,
        plus,
        minus,
    }
}

/// Rule table over `(c_i, x_{i+1}, x_i)`, with `x_{i+1}` varying fastest.
pub const GARNER_RULES: [GarnerRule; 8] = [
    row(0, 0, 0, 0, 0, 0),
    row(0, 1, 0, 0, 0, 0),
    row(0, 0, 1, 0, 1, 0),
    row(0, 1, 1, 1, 0, 1),
    row(1, 0, 0, 0, 1, 0),
    row(1, 1, 0, 1, 0, 1),
    row(1, 0, 1, 1, 0, 0),
    row(1, 1, 1, 1, 0, 0),
];

/// Evaluates the rule table through its logic expressions:
/// `c_{i+1} = maj(c_i, x_{i+1}, x_i)`, `d_i = c_i ^ x_i`,
/// `y+_i = !x_{i+1} & d_i`, `y-_i = x_{i+1} & d_i`.
pub fn garner_rule(carry: u8, next_bit: u8, bit: u8) -> GarnerRule {
    let d = carry ^ bit;
    let next_carry = (next_bit & bit) | (carry & (next_bit ^ bit));
    GarnerRule {
        carry,
        next_bit,
        bit,
        next_carry,
        plus: (next_bit ^ 1) & d,
        minus: next_bit & d,
    }
}

/// `y_i = x_i + c_i - 2 c_{i+1}` with `c` the carries of `x + x/2`.
pub fn garner_arith(x: BinaryWord) -> CsdRep {
    garner_arith_with(x, &mut ())
}

pub(crate) fn garner_arith_with<S: Sink>(x: BinaryWord, sink: &mut S) -> CsdRep {
    let v = x.value();
    let n = x.wordlength();
    let c = get_carry(v, v >> 1).mask();
    sink.record(Seq::C, c);

    let (mut plus, mut minus) = (0u64, 0u64);
    for i in 0..=n {
        let y = bit(v, i) as i64 + bit(c, i) as i64 - 2 * bit(c, i + 1) as i64;
        let (p, m) = split_digit(y);
        plus |= p << i;
        minus |= m << i;
    }
    CsdRep::from_masks_unchecked(plus, minus, n)
}

/// Digit-wise logic form of the rule table.
pub fn garner_logic(x: BinaryWord) -> CsdRep {
    garner_logic_with(x, &mut ())
}

pub(crate) fn garner_logic_with<S: Sink>(x: BinaryWord, sink: &mut S) -> CsdRep {
    let v = x.value();
    let n = x.wordlength();
    let c = get_carry(v, v >> 1).mask();

    let (mut plus, mut minus, mut d_seq) = (0u64, 0u64, 0u64);
    for i in 0..=n {
        let d = bit(c, i) ^ bit(v, i);
        let next = bit(v, i + 1);
        plus |= ((next ^ 1) & d) << i;
        minus |= (next & d) << i;
        if S::ENABLED {
            d_seq |= d << i;
        }
    }
    sink.record(Seq::C, c);
    sink.record(Seq::D, d_seq);
    CsdRep::from_masks_unchecked(plus, minus, n)
}

/// Whole-word logic form: `h = x/2`, `d = c ^ x`, `y+ = !h & d`, `y- = h & d`.
pub fn garner_masked(x: BinaryWord) -> CsdRep {
    garner_masked_with(x, &mut ())
}

#[inline(always)]
pub(crate) fn garner_masked_with<S: Sink>(x: BinaryWord, sink: &mut S) -> CsdRep {
    let v = x.value();
    let h = v >> 1;
    let c = get_carry(v, h).mask();
    let d = c ^ v;
    sink.record(Seq::H, h);
    sink.record(Seq::C, c);
    sink.record(Seq::D, d);
    CsdRep::from_masks_unchecked(!h & d, h & d, x.wordlength())
}

/// `h = x/2`, `t = x + h`, `y+ = !h & t`, `y- = h & !t`.
pub fn garner_revisited(x: BinaryWord) -> CsdRep {
    garner_revisited_with(x, &mut ())
}

#[inline(always)]
pub(crate) fn garner_revisited_with<S: Sink>(x: BinaryWord, sink: &mut S) -> CsdRep {
    let v = x.value();
    let h = v >> 1;
    let t = v + h;
    sink.record(Seq::H, h);
    sink.record(Seq::T, t);
    CsdRep::from_masks_unchecked(!h & t, h & !t, x.wordlength())
}

/// `h = x/2`, `t = x + h`, `d = h ^ t`, `y+ = t & d`, `y- = h & d`.
///
/// This is the reference converter the others are checked against.
pub fn bin2naf(x: BinaryWord) -> CsdRep {
    bin2naf_with(x, &mut ())
}

#[inline(always)]
pub(crate) fn bin2naf_with<S: Sink>(x: BinaryWord, sink: &mut S) -> CsdRep {
    let v = x.value();
    let h = v >> 1;
    let t = v + h;
    let d = h ^ t;
    sink.record(Seq::H, h);
    sink.record(Seq::T, t);
    sink.record(Seq::D, d);
    CsdRep::from_masks_unchecked(t & d, h & d, x.wordlength())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Trace;

    fn word(v: u64, n: u32) -> BinaryWord {
        BinaryWord::new(v, n).unwrap()
    }

    fn tight(v: u64) -> BinaryWord {
        BinaryWord::from_value(v).unwrap()
    }

    #[test]
    fn rule_table_matches_logic() {
        for rule in GARNER_RULES {
            assert_eq!(garner_rule(rule.carry, rule.next_bit, rule.bit), rule);
        }
        // rows 4 and 5
        let r4 = garner_rule(0, 1, 1);
        assert_eq!((r4.plus, r4.minus, r4.next_carry), (0, 1, 1));
        let r5 = garner_rule(1, 0, 0);
        assert_eq!((r5.plus, r5.minus, r5.next_carry), (1, 0, 0));
    }

    #[test]
    fn arith_examples() {
        assert_eq!(garner_arith(word(3, 2)).to_compact(), "+0-");
        assert_eq!(garner_arith(word(0, 5)).to_compact(), "000000");
        assert_eq!(garner_arith(word(48, 6)).to_compact(), "+0-0000");
        assert_eq!(garner_arith(word(48, 7)).to_compact(), "0+0-0000");
    }

    #[test]
    fn logic_examples() {
        assert_eq!(garner_logic(word(56, 6)).to_compact(), "+00-000");
        assert_eq!(garner_logic(word(7, 3)).to_compact(), "+00-");
    }

    #[test]
    fn masked_examples() {
        assert_eq!(garner_masked(word(7, 3)).to_compact(), "+00-");
        for k in 0..=61u32 {
            let rep = garner_masked(tight(1 << k));
            assert_eq!(rep.plus_mask(), 1 << k);
            assert_eq!(rep.minus_mask(), 0);
        }
        assert_eq!(garner_masked(tight(569)), bin2naf(tight(569)));
        assert_eq!(garner_masked(tight(569)).to_compact(), "0+00+00-00+");
    }

    #[test]
    fn revisited_examples() {
        let mut trace = Trace::default();
        let rep = garner_revisited_with(word(7, 3), &mut trace);
        assert_eq!((trace.h, trace.t), (Some(3), Some(10)));
        assert_eq!((rep.plus_mask(), rep.minus_mask()), (0b1000, 0b0001));
        assert_eq!(garner_revisited(word(0, 3)).to_compact(), "0000");
        assert_eq!(garner_revisited(tight(696)), garner_masked(tight(696)));
    }

    #[test]
    fn bin2naf_examples() {
        assert_eq!(bin2naf(word(7, 3)).to_compact(), "+00-");
        assert_eq!(bin2naf(word(0, 2)).to_compact(), "000");
    }

    #[test]
    fn d_masks_agree() {
        for v in 0..4096u64 {
            let (mut a, mut b) = (Trace::default(), Trace::default());
            garner_masked_with(tight(v), &mut a);
            bin2naf_with(tight(v), &mut b);
            assert_eq!(a.d, b.d, "{v}");
        }
    }
}
