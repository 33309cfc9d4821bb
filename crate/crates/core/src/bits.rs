//! Minimal fixed-length bit vector over u64 words, used for GF(2) linear
//! algebra on term-indexed and element-indexed vectors.

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    pub fn zero(len: usize) -> Self {
        Bits {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.len);
        let w = &mut self.words[i / 64];
        if v {
            *w |= 1 << (i % 64);
        } else {
            *w &= !(1 << (i % 64));
        }
    }

    pub fn xor_assign(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn count_ones(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    /// Popcount of `self & other` without allocating.
    pub fn and_count(&self, other: &Bits) -> u32 {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit, if any.
    pub fn first_one(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }
}

/// Row-reduces `vectors` in place semantics-free: returns an independent
/// basis in echelon form (each with a unique pivot, pivots ascending).
pub fn gf2_row_reduce(vectors: &[Bits]) -> Vec<Bits> {
    let mut basis: Vec<Bits> = Vec::new();
    for v in vectors {
        let mut cur = v.clone();
        for b in &basis {
            let pivot = b.first_one().expect("basis vectors are non-zero");
            if cur.get(pivot) {
                cur.xor_assign(b);
            }
        }
        if !cur.is_zero() {
            basis.push(cur);
            basis.sort_by_key(|b| b.first_one());
            // Back-substitute so each pivot appears in exactly one vector.
            for i in (0..basis.len()).rev() {
                let (head, tail) = basis.split_at_mut(i);
                let pivot = tail[0].first_one().expect("non-zero");
                for h in head {
                    if h.get(pivot) {
                        h.xor_assign(&tail[0]);
                    }
                }
            }
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(len: usize, ones: &[usize]) -> Bits {
        let mut b = Bits::zero(len);
        for &i in ones {
            b.set(i, true);
        }
        b
    }

    #[test]
    fn basic_ops() {
        let mut b = Bits::zero(70);
        b.set(0, true);
        b.set(69, true);
        assert!(b.get(0) && b.get(69) && !b.get(35));
        assert_eq!(b.count_ones(), 2);
        assert_eq!(b.first_one(), Some(0));
        b.set(0, false);
        assert_eq!(b.first_one(), Some(69));
    }

    #[test]
    fn xor_and_count() {
        let a = bits(10, &[1, 3, 5]);
        let b = bits(10, &[3, 5, 7]);
        assert_eq!(a.and_count(&b), 2);
        let mut c = a.clone();
        c.xor_assign(&b);
        assert_eq!(c, bits(10, &[1, 7]));
    }

    #[test]
    fn row_reduce_rank() {
        let v1 = bits(6, &[0, 1]);
        let v2 = bits(6, &[1, 2]);
        let v3 = bits(6, &[0, 2]); // dependent on v1 ⊕ v2
        let basis = gf2_row_reduce(&[v1, v2, v3]);
        assert_eq!(basis.len(), 2);
        // Echelon: distinct ascending pivots.
        assert!(basis[0].first_one() < basis[1].first_one());
    }

    #[test]
    fn row_reduce_empty_and_zero() {
        assert!(gf2_row_reduce(&[]).is_empty());
        assert!(gf2_row_reduce(&[Bits::zero(5)]).is_empty());
    }
}
