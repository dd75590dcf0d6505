//! Word-packed bitset helpers for the solver's inner loops.

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

pub(crate) fn set(words: &mut [u64], v: u32) {
    words[v as usize / 64] |= 1 << (v % 64);
}

pub(crate) fn clear(words: &mut [u64], v: u32) {
    words[v as usize / 64] &= !(1 << (v % 64));
}

pub(crate) fn count(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// Set bit positions in ascending order.
pub(crate) fn iter(words: &[u64]) -> BitIter<'_> {
    BitIter {
        words,
        idx: 0,
        cur: words.first().copied().unwrap_or(0),
    }
}

pub(crate) struct BitIter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for BitIter<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        while self.cur == 0 {
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
        let bit = self.cur.trailing_zeros();
        self.cur &= self.cur - 1;
        Some(self.idx as u32 * 64 + bit)
    }
}
