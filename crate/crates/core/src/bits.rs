//! Dense symmetric bit matrices used for adjacency and colour classes.

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS).max(1)
}

#[inline]
pub(crate) fn test_bit(row: &[u64], v: usize) -> bool {
    row[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
}

#[inline]
pub(crate) fn set_bit(row: &mut [u64], v: usize) {
    row[v / WORD_BITS] |= 1 << (v % WORD_BITS);
}

#[inline]
pub(crate) fn clear_bit(row: &mut [u64], v: usize) {
    row[v / WORD_BITS] &= !(1 << (v % WORD_BITS));
}

#[inline]
pub(crate) fn count(row: &[u64]) -> usize {
    row.iter().map(|w| w.count_ones() as usize).sum()
}

/// Fills `row` with the first `n` bits set.
pub(crate) fn fill_prefix(row: &mut [u64], n: usize) {
    for (i, w) in row.iter_mut().enumerate() {
        let lo = i * WORD_BITS;
        *w = if n >= lo + WORD_BITS {
            u64::MAX
        } else if n > lo {
            (1u64 << (n - lo)) - 1
        } else {
            0
        };
    }
}

/// Iterator over the set bits of a multi-word row, lowest index first.
pub(crate) struct Ones<'a> {
    row: &'a [u64],
    word: usize,
    current: u64,
}

impl<'a> Ones<'a> {
    pub(crate) fn new(row: &'a [u64]) -> Self {
        Ones {
            row,
            word: 0,
            current: row.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * WORD_BITS + bit);
            }
            self.word += 1;
            if self.word >= self.row.len() {
                return None;
            }
            self.current = self.row[self.word];
        }
    }
}

/// Square bit matrix over `n` vertices, one row of `words` u64 per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub(crate) fn new(n: usize) -> Self {
        let words = words_for(n);
        BitMatrix {
            n,
            words,
            data: vec![0; n * words],
        }
    }

    #[inline]
    pub(crate) fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.data[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub(crate) fn get(&self, u: usize, v: usize) -> bool {
        test_bit(self.row(u), v)
    }

    /// Sets the symmetric pair (u, v).
    pub(crate) fn set_pair(&mut self, u: usize, v: usize) {
        let w = self.words;
        set_bit(&mut self.data[u * w..(u + 1) * w], v);
        set_bit(&mut self.data[v * w..(v + 1) * w], u);
    }

    pub(crate) fn clear_pair(&mut self, u: usize, v: usize) {
        let w = self.words;
        clear_bit(&mut self.data[u * w..(u + 1) * w], v);
        clear_bit(&mut self.data[v * w..(v + 1) * w], u);
    }

    pub(crate) fn clear_all(&mut self) {
        self.data.fill(0);
    }

    #[inline]
    pub(crate) fn degree(&self, v: usize) -> usize {
        count(self.row(v))
    }

    pub(crate) fn order(&self) -> usize {
        self.n
    }
}
