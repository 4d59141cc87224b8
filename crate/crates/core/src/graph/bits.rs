//! Small helpers for `u64` vertex sets.

/// Mask with the lowest `n` bits set (`n <= 64`).
#[inline]
pub fn full_mask(n: usize) -> u64 {
    debug_assert!(n <= 64);
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Iterates the set bits of `set` in ascending order.
#[inline]
pub fn iter(set: u64) -> BitIter {
    BitIter(set)
}

#[derive(Clone, Copy, Debug)]
pub struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for BitIter {}

/// Builds a set from vertex ids.
pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> u64 {
    vs.into_iter().fold(0, |acc, v| acc | bit(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iterates_in_order() {
        let s = from_vertices([5, 0, 63, 17]);
        assert_eq!(iter(s).collect::<Vec<_>>(), vec![0, 5, 17, 63]);
        assert_eq!(iter(s).len(), 4);
        assert_eq!(full_mask(0), 0);
        assert_eq!(full_mask(64), u64::MAX);
        assert_eq!(full_mask(3), 0b111);
    }
}
