//! Fixed-width vertex masks used by the graph searches.

/// Maximum number of vertices a [`VertexMask`] can address.
pub const MAX_GRAPH_VERTICES: usize = 128;

const WORDS: usize = MAX_GRAPH_VERTICES / 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct VertexMask([u64; WORDS]);

impl VertexMask {
    pub const EMPTY: VertexMask = VertexMask([0; WORDS]);

    /// `{0, 1, ..., len-1}`.
    pub fn first(len: usize) -> Self {
        let mut m = Self::EMPTY;
        for w in 0..WORDS {
            let lo = w * 64;
            if len >= lo + 64 {
                m.0[w] = u64::MAX;
            } else if len > lo {
                m.0[w] = (1u64 << (len - lo)) - 1;
            }
        }
        m
    }

    /// Every index strictly greater than `v`.
    pub fn above(v: usize) -> Self {
        Self::first(MAX_GRAPH_VERTICES).without_first(v + 1)
    }

    fn without_first(mut self, len: usize) -> Self {
        let cut = Self::first(len);
        for w in 0..WORDS {
            self.0[w] &= !cut.0[w];
        }
        self
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0[v / 64] |= 1u64 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0[v / 64] &= !(1u64 << (v % 64));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < MAX_GRAPH_VERTICES && self.0[v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn and(&self, other: &Self) -> Self {
        let mut out = *self;
        for w in 0..WORDS {
            out.0[w] &= other.0[w];
        }
        out
    }

    #[inline]
    pub fn and_not(&self, other: &Self) -> Self {
        let mut out = *self;
        for w in 0..WORDS {
            out.0[w] &= !other.0[w];
        }
        out
    }

    pub fn first_index(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Indices in increasing order.
    pub fn iter(&self) -> MaskIter {
        MaskIter { words: self.0, word: 0 }
    }
}

impl FromIterator<usize> for VertexMask {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut m = Self::EMPTY;
        for v in iter {
            m.insert(v);
        }
        m
    }
}

pub struct MaskIter {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for MaskIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = self.words[self.word];
            if w != 0 {
                self.words[self.word] = w & (w - 1);
                return Some(self.word * 64 + w.trailing_zeros() as usize);
            }
            self.word += 1;
        }
        None
    }
}
