use super::{split_digit, Seq, Sink};
use crate::word::bit;
use crate::{get_carry, BinaryWord, CsdRep};

/// Reitwiesner's digit recurrence: `t_i = x_i ^ x_{i-1}`,
/// `g_i = !g_{i-1} & t_i`, `y_i = (1 - 2 x_{i+1}) g_i`.
pub fn reitwiesner(x: BinaryWord) -> CsdRep {
    reitwiesner_with(x, &mut ())
}

pub(crate) fn reitwiesner_with<S: Sink>(x: BinaryWord, sink: &mut S) -> CsdRep {
    let v = x.value();
    let n = x.wordlength();
    let (mut plus, mut minus) = (0u64, 0u64);
    let (mut g_seq, mut t_seq) = (0u64, 0u64);

    let mut g_prev = 0u64;
    let mut x_prev = 0u64;
    for i in 0..=n {
        let xi = bit(v, i);
        let t = xi ^ x_prev;
        let g = (g_prev ^ 1) & t;
        let y = (1 - 2 * bit(v, i + 1) as i64) * g as i64;

        let (p, m) = split_digit(y);
        plus |= p << i;
        minus |= m << i;
        if S::ENABLED {
            g_seq |= g << i;
            t_seq |= t << i;
        }
        g_prev = g;
        x_prev = xi;
    }

    sink.record(Seq::T, t_seq);
    sink.record(Seq::G, g_seq);
    CsdRep::from_masks_unchecked(plus, minus, n)
}

/// Reitwiesner's method with `g` taken from the carries of `x + 2x`:
/// `g_i = c_{i+1} ^ x_i`.
pub fn reitwiesner_modified(x: BinaryWord) -> CsdRep {
    reitwiesner_modified_with(x, &mut ())
}

#[inline(always)]
pub(crate) fn reitwiesner_modified_with<S: Sink>(x: BinaryWord, sink: &mut S) -> CsdRep {
    let v = x.value();
    let c = get_carry(v, v << 1).mask();
    let g = (c >> 1) ^ v;
    let next = v >> 1;
    sink.record(Seq::C, c);
    sink.record(Seq::G, g);
    CsdRep::from_masks_unchecked(!next & g, next & g, x.wordlength())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(v: u64, n: u32) -> BinaryWord {
        BinaryWord::new(v, n).unwrap()
    }

    #[test]
    fn reitwiesner_examples() {
        assert_eq!(reitwiesner(word(7, 3)).to_compact(), "+00-");
        assert_eq!(reitwiesner(word(0, 4)).to_compact(), "00000");
        assert_eq!(reitwiesner(word(696, 11)).to_compact(), "0+0-0-00-000");
    }

    #[test]
    fn modified_examples() {
        assert_eq!(reitwiesner_modified(word(7, 3)).to_compact(), "+00-");
        assert_eq!(reitwiesner_modified(word(1, 1)).to_compact(), "0+");
        let x = BinaryWord::from_value(571).unwrap();
        assert_eq!(reitwiesner_modified(x), super::super::bin2naf(x));
    }

    #[test]
    fn g_sequence_of_seven() {
        let mut trace = crate::Trace::default();
        reitwiesner_with(word(7, 3), &mut trace);
        assert_eq!(trace.g, Some(0b1001));
        assert_eq!(trace.t, Some(0b1001));
    }
}
