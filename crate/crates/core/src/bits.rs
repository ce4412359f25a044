//! Small-set helpers over `u64` masks.

pub type Mask = u64;

pub const MAX_BITS: usize = 64;

#[inline]
pub fn contains(mask: Mask, i: usize) -> bool {
    mask >> i & 1 == 1
}

#[inline]
pub fn is_subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

#[inline]
pub fn full(n: usize) -> Mask {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn iter(mask: Mask) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Mask {
    indices.into_iter().fold(0, |m, i| m | 1 << i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iterates_set_bits() {
        assert_eq!(iter(0b1011).collect::<Vec<_>>(), vec![0, 1, 3]);
        assert_eq!(from_indices([0, 1, 3]), 0b1011);
        assert!(is_subset(0b0011, 0b1011));
        assert!(!is_subset(0b0111, 0b1011));
        assert_eq!(full(3), 0b111);
        assert_eq!(full(64), u64::MAX);
    }
}
