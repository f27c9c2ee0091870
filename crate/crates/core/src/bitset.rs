//! Packed bit vectors over edge ids.

/// A set of edge ids backed by 64-bit words.
///
/// The universe size is fixed at construction; all indices must be below it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSet {
    words: Vec<u64>,
    universe: usize,
}

impl EdgeSet {
    /// Empty set over `universe` edge ids.
    pub fn new(universe: usize) -> Self {
        Self {
            words: vec![0; words_for(universe)],
            universe,
        }
    }

    pub fn from_indices(universe: usize, indices: &[usize]) -> Self {
        let mut set = Self::new(universe);
        for &i in indices {
            set.insert(i);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, index: usize) {
        assert!(index < self.universe, "index {index} out of range");
        self.words[index / 64] |= 1 << (index % 64);
    }

    pub fn contains(&self, index: usize) -> bool {
        assert!(index < self.universe, "index {index} out of range");
        self.words[index / 64] >> (index % 64) & 1 == 1
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    /// Symmetric difference, i.e. addition over GF(2).
    pub fn xor_assign(&mut self, other: &EdgeSet) {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    pub fn intersection_len(&self, other: &EdgeSet) -> usize {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }
}

/// Number of 64-bit words needed to hold `bits` bits.
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// Parity of the population count of `bits & mask`.
pub(crate) fn masked_parity(bits: &[u64], mask: &[u64]) -> bool {
    debug_assert_eq!(bits.len(), mask.len());
    let mut ones = 0u32;
    for (b, m) in bits.iter().zip(mask) {
        ones ^= (b & m).count_ones();
    }
    ones & 1 == 1
}

pub(crate) fn get_bit(words: &[u64], index: usize) -> bool {
    words[index / 64] >> (index % 64) & 1 == 1
}

pub(crate) fn set_bit(words: &mut [u64], index: usize) {
    words[index / 64] |= 1 << (index % 64);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_iter() {
        let mut s = EdgeSet::new(130);
        for &i in &[0, 63, 64, 129] {
            s.insert(i);
        }
        assert_eq!(s.len(), 4);
        assert!(s.contains(64));
        assert!(!s.contains(1));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
    }

    #[test]
    fn xor_is_symmetric_difference() {
        let mut a = EdgeSet::from_indices(10, &[1, 2, 3]);
        let b = EdgeSet::from_indices(10, &[3, 4]);
        a.xor_assign(&b);
        assert_eq!(a, EdgeSet::from_indices(10, &[1, 2, 4]));
    }

    #[test]
    fn masked_parity_counts_shared_bits() {
        let bits = [0b1011u64];
        assert!(masked_parity(&bits, &[0b0001]));
        assert!(!masked_parity(&bits, &[0b0011]));
        assert!(masked_parity(&bits, &[0b1111]));
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn insert_out_of_range_panics() {
        EdgeSet::new(3).insert(3);
    }
}
