use super::split_digit;
use crate::{BinaryWord, CsdRep};

/// The textbook NAF loop: peel off `y_i = 2 - (x mod 4)` for odd `x`,
/// then halve, until `x` reaches zero.
pub fn naf(x: BinaryWord) -> CsdRep {
    let mut rest = x.value() as i64;
    let (mut plus, mut minus) = (0u64, 0u64);
    let mut i = 0u32;
    while rest >= 1 {
        let y = if rest & 1 == 1 {
            let y = 2 - rest.rem_euclid(4);
            rest -= y;
            y
        } else {
            0
        };
        let (p, m) = split_digit(y);
        plus |= p << i;
        minus |= m << i;
        rest /= 2;
        i += 1;
    }
    CsdRep::from_masks_unchecked(plus, minus, x.wordlength())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let seven = naf(BinaryWord::from_value(7).unwrap());
        assert_eq!(seven.digits(), vec![-1, 0, 0, 1]);
        assert_eq!(naf(BinaryWord::from_value(1).unwrap()).digits(), vec![1, 0]);
        assert_eq!(naf(BinaryWord::new(56, 6).unwrap()).to_compact(), "+00-000");
    }

    #[test]
    fn pads_to_wordlength() {
        let rep = naf(BinaryWord::new(3, 10).unwrap());
        assert_eq!(rep.len(), 11);
        assert_eq!(rep.to_compact(), "00000000+0-");
    }
}
