//! Packed bit rows and dense matrices over the binary field.

use std::fmt;

use rand::Rng;

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A fixed-length bit vector packed into 64-bit words.
///
/// Bits past `len` in the last word are always zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitRow {
    len: usize,
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut row = Self::zeros(len);
        row.set(index, true);
        row
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut row = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                row.set(i, true);
            }
        }
        row
    }

    /// Parses a string of `0`/`1` characters.
    pub fn from_bitstring(s: &str) -> Option<Self> {
        let bits: Option<Vec<bool>> = s
            .chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect();
        bits.map(|b| Self::from_bools(&b))
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut row = Self::zeros(len);
        for w in row.words.iter_mut() {
            *w = rng.random();
        }
        row.mask_tail();
        row
    }

    fn mask_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
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
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn swap_bits(&mut self, a: usize, b: usize) {
        let (va, vb) = (self.get(a), self.get(b));
        if va != vb {
            self.flip(a);
            self.flip(b);
        }
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &BitRow) -> BitRow {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the bitwise AND with `other`.
    pub fn dot(&self, other: &BitRow) -> bool {
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let tz = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD + tz)
                }
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }
}

impl fmt::Debug for BitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitRow({self})")
    }
}

impl fmt::Display for BitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Dense row-major matrix over the binary field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitRow>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            cols,
            rows: vec![BitRow::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix {
            cols: n,
            rows: (0..n).map(|i| BitRow::unit(n, i)).collect(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitRow>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged bit matrix");
        BitMatrix { cols, rows }
    }

    /// Builds a matrix from `0`/`1` strings, one per row.
    pub fn from_strs(rows: &[&str]) -> Self {
        let parsed: Vec<BitRow> = rows
            .iter()
            .map(|s| BitRow::from_bitstring(s).expect("bit string"))
            .collect();
        let cols = parsed.first().map_or(0, BitRow::len);
        Self::from_rows(cols, parsed)
    }

    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        BitMatrix {
            cols,
            rows: (0..rows).map(|_| BitRow::random(cols, rng)).collect(),
        }
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.rows[r].set(c, v)
    }

    pub fn row(&self, r: usize) -> &BitRow {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[BitRow] {
        &self.rows
    }

    /// `row[target] ^= row[source]`.
    pub fn add_row(&mut self, source: usize, target: usize) {
        debug_assert_ne!(source, target);
        let src = self.rows[source].clone();
        self.rows[target].xor_assign(&src);
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.n_rows());
        let mut out = BitMatrix::zeros(self.rows.len(), other.cols);
        for (r, row) in self.rows.iter().enumerate() {
            for k in row.ones() {
                out.rows[r].xor_assign(&other.rows[k]);
            }
        }
        out
    }

    /// Rank over the binary field.
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.xor_assign(&pivot);
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    pub fn is_identity(&self) -> bool {
        self.rows.len() == self.cols
            && self
                .rows
                .iter()
                .enumerate()
                .all(|(i, r)| r.count_ones() == 1 && r.get(i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows.len() == self.cols && *self == self.transpose()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("]")
    }
}
