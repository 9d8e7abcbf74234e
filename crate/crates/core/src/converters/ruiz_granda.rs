use serde::Serialize;

use super::{Seq, Sink};
use crate::word::bit;
use crate::{BinaryWord, CsdRep};

/// The two parity-alternating recurrences behind the Ruiz-Granda method.
/// Bit `i` of each mask holds `h_i` / `k_i` for `i` in `0..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HkSequences {
    pub h_mask: u64,
    pub k_mask: u64,
}

/// Even `i`: `h_i = x_i | h_{i-1}`, `k_i = x_i & k_{i-1}`; odd `i` swaps
/// the operators. Both start from 0.
pub fn get_hk(x: BinaryWord) -> HkSequences {
    let v = x.value();
    let (mut h, mut k) = (0u64, 0u64);
    let (mut h_mask, mut k_mask) = (0u64, 0u64);
    for i in 0..=x.wordlength() {
        let xi = bit(v, i);
        if i % 2 == 0 {
            h |= xi;
            k &= xi;
        } else {
            h &= xi;
            k |= xi;
        }
        h_mask |= h << i;
        k_mask |= k << i;
    }
    HkSequences { h_mask, k_mask }
}

pub fn ruiz_granda(x: BinaryWord) -> CsdRep {
    ruiz_granda_with(x, &mut ())
}

pub(crate) fn ruiz_granda_with<S: Sink>(x: BinaryWord, sink: &mut S) -> CsdRep {
    let v = x.value();
    let n = x.wordlength();
    let HkSequences { h_mask, k_mask } = get_hk(x);

    let (mut plus, mut minus, mut d_seq) = (0u64, 0u64, 0u64);
    for i in 0..=n {
        let (h, k) = (bit(h_mask, i), bit(k_mask, i));
        let d = if i % 2 == 0 { h & (k ^ 1) } else { (h ^ 1) & k };
        let next = bit(v, i + 1);
        plus |= ((next ^ 1) & d) << i;
        minus |= (next & d) << i;
        if S::ENABLED {
            d_seq |= d << i;
        }
    }
    sink.record(Seq::H, h_mask);
    sink.record(Seq::K, k_mask);
    sink.record(Seq::D, d_seq);
    CsdRep::from_masks_unchecked(plus, minus, n)
}
