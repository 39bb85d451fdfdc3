//! Dense GF(2) matrix stored as one unpadded, row-major bit string.

use crate::pauli::WORD_BITS;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BitMatrix {
    rows: usize,
    cols: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows,
            cols,
            words: vec![0; (rows * cols).div_ceil(WORD_BITS)],
        }
    }

    pub fn storage_bytes(&self) -> usize {
        self.words.len() * std::mem::size_of::<u64>()
    }

    #[inline]
    fn locate(&self, r: usize, c: usize) -> (usize, u32) {
        debug_assert!(r < self.rows && c < self.cols);
        let bit = r * self.cols + c;
        (bit / WORD_BITS, (bit % WORD_BITS) as u32)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        let (w, b) = self.locate(r, c);
        (self.words[w] >> b) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let (w, b) = self.locate(r, c);
        self.words[w] = (self.words[w] & !(1 << b)) | ((v as u64) << b);
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        let (w, b) = self.locate(r, c);
        self.words[w] ^= 1 << b;
    }

    /// Copies `len` bits of row `r` starting at column `c0` into packed words.
    pub fn read(&self, r: usize, c0: usize, len: usize) -> Vec<u64> {
        let start = r * self.cols + c0;
        let mut out = vec![0u64; len.div_ceil(WORD_BITS)];
        for (i, slot) in out.iter_mut().enumerate() {
            let bit = start + i * WORD_BITS;
            let (w, s) = (bit / WORD_BITS, bit % WORD_BITS);
            let mut v = self.words[w] >> s;
            if s > 0 && w + 1 < self.words.len() {
                v |= self.words[w + 1] << (WORD_BITS - s);
            }
            let remaining = len - i * WORD_BITS;
            if remaining < WORD_BITS {
                v &= (1u64 << remaining) - 1;
            }
            *slot = v;
        }
        out
    }

    /// Overwrites `len` bits of row `r` starting at column `c0`.
    pub fn write(&mut self, r: usize, c0: usize, len: usize, src: &[u64]) {
        let start = r * self.cols + c0;
        for (i, &val) in src.iter().enumerate() {
            let remaining = len - i * WORD_BITS;
            let width = remaining.min(WORD_BITS);
            let mask = if width == WORD_BITS { !0 } else { (1u64 << width) - 1 };
            let val = val & mask;
            let bit = start + i * WORD_BITS;
            let (w, s) = (bit / WORD_BITS, bit % WORD_BITS);
            self.words[w] = (self.words[w] & !(mask << s)) | (val << s);
            if s > 0 && s + width > WORD_BITS {
                let hi = WORD_BITS - s;
                self.words[w + 1] = (self.words[w + 1] & !(mask >> hi)) | (val >> hi);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn storage_has_no_row_padding() {
        assert_eq!(BitMatrix::zeros(32, 33).storage_bytes(), 136);
        assert_eq!(BitMatrix::zeros(256, 257).storage_bytes(), 8224);
    }

    proptest! {
        #[test]
        fn read_write_agree_with_bitwise_access(
            rows in 1usize..6,
            cols in 1usize..150,
            seed_bits in proptest::collection::vec(any::<u64>(), 3),
            r_frac in 0.0f64..1.0,
            c0_frac in 0.0f64..1.0,
            len_frac in 0.0f64..1.0,
        ) {
            let mut m = BitMatrix::zeros(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    let k = r * cols + c;
                    m.set(r, c, (seed_bits[k % 3] >> (k % 64)) & 1 == 1);
                }
            }
            let r = ((rows as f64) * r_frac) as usize;
            let c0 = ((cols as f64) * c0_frac) as usize;
            let len = (((cols - c0) as f64) * len_frac) as usize;
            let words = m.read(r, c0, len);
            for i in 0..len {
                prop_assert_eq!((words[i / 64] >> (i % 64)) & 1 == 1, m.get(r, c0 + i));
            }
            let before = m.clone();
            let flipped: Vec<u64> = words.iter().map(|w| !w).collect();
            m.write(r, c0, len, &flipped);
            for rr in 0..rows {
                for c in 0..cols {
                    let inside = rr == r && c >= c0 && c < c0 + len;
                    prop_assert_eq!(m.get(rr, c), before.get(rr, c) ^ inside);
                }
            }
        }
    }
}
