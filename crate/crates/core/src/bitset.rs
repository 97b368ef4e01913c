//! Growable bit set over `usize` indices.
//!
//! Storage covers only the word range between the smallest and largest
//! inserted index, so sets whose members cluster far from zero stay small.

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct BitSet {
    /// Index of the first stored word.
    offset: usize,
    words: Vec<u64>,
}

const WORD: usize = 64;

impl BitSet {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub(crate) fn contains(&self, index: usize) -> bool {
        let word = index / WORD;
        match word.checked_sub(self.offset) {
            Some(w) => self
                .words
                .get(w)
                .is_some_and(|bits| bits & (1 << (index % WORD)) != 0),
            None => false,
        }
    }

    pub(crate) fn insert(&mut self, index: usize) {
        let word = index / WORD;
        if self.words.is_empty() {
            self.offset = word;
            self.words.push(0);
        } else if word < self.offset {
            let grow = self.offset - word;
            self.words.splice(0..0, std::iter::repeat_n(0, grow));
            self.offset = word;
        } else if word - self.offset >= self.words.len() {
            self.words.resize(word - self.offset + 1, 0);
        }
        self.words[word - self.offset] |= 1 << (index % WORD);
    }

    #[cfg(test)]
    pub(crate) fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(move |(w, &bits)| {
            let base = (self.offset + w) * WORD;
            (0..WORD).filter(move |b| bits & (1 << b) != 0).map(move |b| base + b)
        })
    }
}
