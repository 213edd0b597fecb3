//! Fixed-length bit vectors over F2.
//!
//! `Bits` is the storage behind polynomials, matrix rows, syndromes and
//! error vectors. Bits past `len` in the last word are always zero.

use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut b = Bits {
            len,
            words: vec![!0; len.div_ceil(WORD)],
        };
        b.trim();
        b
    }

    /// Builds a vector with ones at the given positions. Repeated indices cancel.
    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, ones: I) -> Self {
        let mut b = Bits::zeros(len);
        for i in ones {
            b.flip(i);
        }
        b
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let v: Vec<bool> = bits.into_iter().collect();
        let mut b = Bits::zeros(v.len());
        for (i, &x) in v.iter().enumerate() {
            if x {
                b.set(i, true);
            }
        }
        b
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Bits) -> Bits {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &Bits) -> Bits {
        debug_assert_eq!(self.len, other.len);
        Bits {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// Inner product over F2.
    #[inline]
    pub fn dot(&self, other: &Bits) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones();
        }
        acc & 1 == 1
    }

    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn last_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(wi * WORD + 63 - w.leading_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let t = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD + t)
                }
            })
        })
    }

    pub fn ones_vec(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }

    /// Concatenation `(self | other)`.
    pub fn concat(&self, other: &Bits) -> Bits {
        let mut out = Bits::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Copy of positions `start..start + len`.
    pub fn slice(&self, start: usize, len: usize) -> Bits {
        assert!(start + len <= self.len);
        let mut out = Bits::zeros(len);
        for i in self.iter_ones() {
            if i >= start && i < start + len {
                out.set(i - start, true);
            }
        }
        out
    }

    /// Cyclic rotation towards higher indices: bit `i` moves to `(i + k) mod len`.
    pub fn rotate_up(&self, k: usize) -> Bits {
        let n = self.len;
        if n == 0 {
            return self.clone();
        }
        let k = k % n;
        if k == 0 {
            return self.clone();
        }
        if n <= WORD {
            let mask = if n == WORD { !0 } else { (1u64 << n) - 1 };
            let w = self.words[0];
            let r = ((w << k) | (w >> (n - k))) & mask;
            return Bits {
                len: n,
                words: vec![r],
            };
        }
        let mut out = Bits::zeros(n);
        for i in self.iter_ones() {
            let j = (i + k) % n;
            out.words[j / WORD] |= 1u64 << (j % WORD);
        }
        out
    }

    /// Applies a coordinate map: bit `i` moves to `f(i)`. Colliding targets cancel.
    pub fn map_indices<F: Fn(usize) -> usize>(&self, len: usize, f: F) -> Bits {
        let mut out = Bits::zeros(len);
        for i in self.iter_ones() {
            out.flip(f(i));
        }
        out
    }

    pub fn to_bitstring(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    pub fn from_bitstring(s: &str) -> Option<Bits> {
        let s = s.trim();
        let mut b = Bits::zeros(s.chars().count());
        for (i, c) in s.chars().enumerate() {
            match c {
                '1' => b.set(i, true),
                '0' => {}
                _ => return None,
            }
        }
        Some(b)
    }

    fn trim(&mut self) {
        let r = self.len % WORD;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits({})", self.to_bitstring())
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_matches_index_map() {
        for n in [1usize, 5, 63, 64, 65, 130] {
            let b = Bits::from_indices(n, (0..n).filter(|i| i % 3 == 0));
            for k in [0, 1, 7, n - 1] {
                let expect = b.map_indices(n, |i| (i + k) % n);
                assert_eq!(b.rotate_up(k), expect, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn ones_and_weight() {
        let b = Bits::ones(70);
        assert_eq!(b.weight(), 70);
        assert_eq!(b.last_one(), Some(69));
        let b = Bits::from_indices(10, [3, 3, 4]);
        assert_eq!(b.ones_vec(), vec![4]);
    }

    #[test]
    fn bitstring_round_trip() {
        let b = Bits::from_bitstring("10010").unwrap();
        assert_eq!(b.ones_vec(), vec![0, 3]);
        assert_eq!(b.to_bitstring(), "10010");
        assert!(Bits::from_bitstring("10x").is_none());
    }
}
