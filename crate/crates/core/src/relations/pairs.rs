use std::fmt;

/// A set of pairs over `0..size`, as a dense bit matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairSet {
    size: usize,
    bits: Vec<bool>,
}

impl PairSet {
    pub fn empty(size: usize) -> Self {
        PairSet { size, bits: vec![false; size * size] }
    }

    pub fn diagonal(size: usize) -> Self {
        let mut p = Self::empty(size);
        for a in 0..size {
            p.insert(a, a);
        }
        p
    }

    pub fn from_pairs(size: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut p = Self::empty(size);
        for (a, b) in pairs {
            p.insert(a, b);
        }
        p
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.size + b]
    }

    /// Returns true if the pair was new.
    pub fn insert(&mut self, a: usize, b: usize) -> bool {
        let slot = &mut self.bits[a * self.size + b];
        !std::mem::replace(slot, true)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.contains(&true)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.size;
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(move |(i, _)| (i / n, i % n))
    }

    pub fn is_subset(&self, other: &PairSet) -> bool {
        self.size == other.size && self.iter().all(|(a, b)| other.contains(a, b))
    }

    /// First `(a, b)` in the set whose reverse is missing.
    pub fn symmetry_failure(&self) -> Option<(usize, usize)> {
        self.iter().find(|&(a, b)| !self.contains(b, a))
    }

    /// First `(a, b, c)` with `(a, b)` and `(b, c)` present but `(a, c)` absent.
    pub fn transitivity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.size;
        for (a, b) in self.iter() {
            for c in 0..n {
                if self.contains(b, c) && !self.contains(a, c) {
                    return Some((a, b, c));
                }
            }
        }
        None
    }

    pub fn reflexivity_failure(&self) -> Option<usize> {
        (0..self.size).find(|&a| !self.contains(a, a))
    }
}

impl fmt::Display for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|(a, b)| format!("({a},{b})")).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}
