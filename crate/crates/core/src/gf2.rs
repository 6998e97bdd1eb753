//! Bit-packed linear algebra over the two-element field.
//!
//! A [`BitVec`] holds up to 64 coordinates in a single machine word; coordinate
//! `i` (1-based) lives in bit `i - 1`. A [`BitMatrix`] is a list of equal-width
//! rows. Elimination always picks the lowest-index row carrying a pivot, so
//! every routine is deterministic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign};

use crate::error::{Error, Result};

pub const MAX_BITS: usize = 64;

#[inline]
pub(crate) fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// A vector over GF(2) with at most 64 coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: u8,
    bits: u64,
}

impl BitVec {
    pub fn zero(len: usize) -> Self {
        assert!(len <= MAX_BITS, "BitVec length {len} above 64");
        BitVec {
            len: len as u8,
            bits: 0,
        }
    }

    /// Builds a vector from a packed word; bits above `len` are discarded.
    pub fn from_bits(len: usize, bits: u64) -> Self {
        assert!(len <= MAX_BITS, "BitVec length {len} above 64");
        BitVec {
            len: len as u8,
            bits: bits & low_mask(len),
        }
    }

    /// The `i`-th standard basis vector (1-based).
    pub fn unit(len: usize, i: usize) -> Self {
        assert!((1..=len).contains(&i), "unit index {i} outside 1..={len}");
        Self::from_bits(len, 1u64 << (i - 1))
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Coordinate `i` (1-based).
    pub fn get(&self, i: usize) -> bool {
        assert!((1..=self.len()).contains(&i), "index {i} out of range");
        self.bits >> (i - 1) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!((1..=self.len()).contains(&i), "index {i} out of range");
        if value {
            self.bits |= 1 << (i - 1);
        } else {
            self.bits &= !(1 << (i - 1));
        }
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        (self.bits & other.bits).count_ones() % 2 == 1
    }

    /// Parses a string of `'0'`/`'1'` characters, coordinate 1 first.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.len() > MAX_BITS {
            return Err(Error::TooWide(s.len()));
        }
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                other => {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!("unexpected character {other:?} in bit row"),
                    })
                }
            }
        }
        Ok(Self::from_bits(s.len(), bits))
    }
}

impl Add for BitVec {
    type Output = BitVec;
    fn add(self, rhs: BitVec) -> BitVec {
        debug_assert_eq!(self.len, rhs.len);
        BitVec {
            len: self.len,
            bits: self.bits ^ rhs.bits,
        }
    }
}

impl AddAssign for BitVec {
    fn add_assign(&mut self, rhs: BitVec) {
        debug_assert_eq!(self.len, rhs.len);
        self.bits ^= rhs.bits;
    }
}

/// Orders by length, then by the textual rendering (coordinate 1 most significant).
impl Ord for BitVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.bits.reverse_bits().cmp(&other.bits.reverse_bits()))
    }
}

impl PartialOrd for BitVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.bits >> i & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

/// A dense matrix over GF(2) stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    ncols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zero(nrows: usize, ncols: usize) -> Result<Self> {
        if ncols > MAX_BITS {
            return Err(Error::TooWide(ncols));
        }
        Ok(BitMatrix {
            ncols,
            rows: vec![BitVec::zero(ncols); nrows],
        })
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix {
            ncols: n,
            rows: (1..=n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    pub fn from_rows(ncols: usize, rows: Vec<BitVec>) -> Result<Self> {
        if ncols > MAX_BITS {
            return Err(Error::TooWide(ncols));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::ShapeMismatch(format!(
                "row of length {} in a matrix with {ncols} columns",
                bad.len()
            )));
        }
        Ok(BitMatrix { ncols, rows })
    }

    /// Builds a matrix from packed row words of the given width.
    pub fn from_row_bits(ncols: usize, rows: &[u64]) -> Result<Self> {
        if ncols > MAX_BITS {
            return Err(Error::TooWide(ncols));
        }
        Ok(BitMatrix {
            ncols,
            rows: rows.iter().map(|&b| BitVec::from_bits(ncols, b)).collect(),
        })
    }

    /// Builds a matrix whose columns are the given vectors, each of length `nrows`.
    pub fn from_columns(nrows: usize, columns: &[BitVec]) -> Result<Self> {
        if columns.len() > MAX_BITS {
            return Err(Error::TooWide(columns.len()));
        }
        let mut rows = vec![0u64; nrows];
        for (j, col) in columns.iter().enumerate() {
            if col.len() != nrows {
                return Err(Error::ShapeMismatch(format!(
                    "column of length {} in a matrix with {nrows} rows",
                    col.len()
                )));
            }
            for (i, row) in rows.iter_mut().enumerate() {
                *row |= (col.bits() >> i & 1) << j;
            }
        }
        Self::from_row_bits(columns.len(), &rows)
    }

    /// Parses rows of `'0'`/`'1'` characters.
    pub fn parse_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| BitVec::parse(r.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let ncols = parsed.first().map_or(0, BitVec::len);
        Self::from_rows(ncols, parsed)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    /// Row `i` (1-based).
    pub fn row(&self, i: usize) -> BitVec {
        self.rows[i - 1]
    }

    /// Column `j` (1-based) as a vector of length `nrows`.
    pub fn column(&self, j: usize) -> BitVec {
        assert!((1..=self.ncols).contains(&j), "column {j} out of range");
        let mut bits = 0u64;
        for (i, row) in self.rows.iter().enumerate() {
            bits |= (row.bits() >> (j - 1) & 1) << i;
        }
        BitVec::from_bits(self.nrows(), bits)
    }

    pub fn columns(&self) -> Vec<BitVec> {
        (1..=self.ncols).map(|j| self.column(j)).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i - 1].get(j)
    }

    pub fn transpose(&self) -> BitMatrix {
        let columns = self.columns();
        BitMatrix {
            ncols: self.nrows(),
            rows: columns,
        }
    }

    pub fn mul(&self, rhs: &BitMatrix) -> Result<BitMatrix> {
        if self.ncols != rhs.nrows() {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows(),
                self.ncols,
                rhs.nrows(),
                rhs.ncols()
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = 0u64;
                let mut bits = r.bits();
                while bits != 0 {
                    let k = bits.trailing_zeros() as usize;
                    acc ^= rhs.rows[k].bits();
                    bits &= bits - 1;
                }
                BitVec::from_bits(rhs.ncols, acc)
            })
            .collect();
        Ok(BitMatrix { ncols: rhs.ncols, rows })
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    /// Keeps the listed columns (1-based), in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> BitMatrix {
        let columns: Vec<BitVec> = cols.iter().map(|&j| self.column(j)).collect();
        BitMatrix::from_columns(self.nrows(), &columns).expect("selection fits")
    }

    /// Keeps the listed rows (1-based), in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> BitMatrix {
        BitMatrix {
            ncols: self.ncols,
            rows: rows.iter().map(|&i| self.rows[i - 1]).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        rank_of_words(self.rows.iter().map(BitVec::bits))
    }

    /// Basis of the right null space, returned as the columns of an
    /// `ncols x (ncols - rank)` matrix `K` with `self * K = 0`.
    pub fn kernel_basis(&self) -> BitMatrix {
        let n = self.ncols;
        let mut rows: Vec<u64> = self.rows.iter().map(BitVec::bits).collect();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let bit = 1u64 << c;
            let Some(found) = (r..rows.len()).find(|&i| rows[i] & bit != 0) else {
                continue;
            };
            rows.swap(r, found);
            let pivot = rows[r];
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && *row & bit != 0 {
                    *row ^= pivot;
                }
            }
            pivot_cols.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in (0..n).filter(|c| !pivot_cols.contains(c)) {
            let mut v = 1u64 << free;
            for (k, &pc) in pivot_cols.iter().enumerate() {
                if rows[k] >> free & 1 == 1 {
                    v |= 1 << pc;
                }
            }
            basis.push(BitVec::from_bits(n, v));
        }
        BitMatrix::from_columns(n, &basis).expect("kernel fits in 64 columns")
    }

    /// Left-multiplies by the invertible matrix that turns the pivot columns
    /// (1-based, in order) into the identity.
    pub fn reduce_to_identity(&self, pivots: &[usize]) -> Result<BitMatrix> {
        if pivots.len() != self.nrows() {
            return Err(Error::ShapeMismatch(format!(
                "{} pivots for {} rows",
                pivots.len(),
                self.nrows()
            )));
        }
        if let Some(&bad) = pivots.iter().find(|&&c| c == 0 || c > self.ncols) {
            return Err(Error::ShapeMismatch(format!("pivot column {bad} out of range")));
        }
        let mut rows: Vec<u64> = self.rows.iter().map(BitVec::bits).collect();
        for (t, &col) in pivots.iter().enumerate() {
            let bit = 1u64 << (col - 1);
            let found = (t..rows.len())
                .find(|&i| rows[i] & bit != 0)
                .ok_or(Error::SingularPivots)?;
            rows.swap(t, found);
            let pivot = rows[t];
            for (i, row) in rows.iter_mut().enumerate() {
                if i != t && *row & bit != 0 {
                    *row ^= pivot;
                }
            }
        }
        BitMatrix::from_row_bits(self.ncols, &rows)
    }

    /// Reorders columns so that old column `j` becomes column `new_of_old[j - 1]`.
    pub fn permute_columns(&self, new_of_old: &[usize]) -> BitMatrix {
        assert_eq!(new_of_old.len(), self.ncols);
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = 0u64;
                for (j, &nj) in new_of_old.iter().enumerate() {
                    out |= (r.bits() >> j & 1) << (nj - 1);
                }
                BitVec::from_bits(self.ncols, out)
            })
            .collect();
        BitMatrix {
            ncols: self.ncols,
            rows,
        }
    }
}

/// Lexicographic order on the row renderings.
impl Ord for BitMatrix {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.nrows(), self.ncols)
            .cmp(&(other.nrows(), other.ncols))
            .then_with(|| self.rows.cmp(&other.rows))
    }
}

impl PartialOrd for BitMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// One row per line, `'0'`/`'1'` characters, no separators.
impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{row}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}x{} [", self.nrows(), self.ncols)?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{row}")?;
        }
        f.write_str("]")
    }
}

pub(crate) fn rank_of_words(words: impl IntoIterator<Item = u64>) -> usize {
    // xor basis keyed by highest set bit
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for mut w in words {
        while w != 0 {
            let top = 63 - w.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = w;
                rank += 1;
                break;
            }
            w ^= basis[top];
        }
    }
    rank
}

/// True iff the vectors are linearly independent in GF(2)^dim.
pub fn is_independent(vectors: &[BitVec], dim: usize) -> bool {
    debug_assert!(vectors.iter().all(|v| v.len() == dim));
    vectors.len() <= dim && rank_of_words(vectors.iter().map(BitVec::bits)) == vectors.len()
}

/// Bitset over all of GF(2)^dim used to strike out subset sums.
#[derive(Clone, Debug)]
pub(crate) struct SpanSieve {
    words: Vec<u64>,
}

impl SpanSieve {
    pub fn new(dim: usize) -> Self {
        let size = 1usize << dim;
        SpanSieve {
            words: vec![0; size.div_ceil(64)],
        }
    }

    pub fn clear(&mut self) {
        self.words.fill(0);
    }

    pub fn mark(&mut self, x: u64) {
        self.words[(x >> 6) as usize] |= 1 << (x & 63);
    }

    pub fn contains(&self, x: u64) -> bool {
        self.words[(x >> 6) as usize] >> (x & 63) & 1 == 1
    }

    /// Marks every subset sum of `gens`, walking subsets in Gray-code order
    /// so each step costs one XOR.
    pub fn mark_subset_sums(&mut self, gens: &[u64]) {
        let mut acc = 0u64;
        self.mark(0);
        let count = 1u64 << gens.len();
        for step in 1..count {
            acc ^= gens[step.trailing_zeros() as usize];
            self.mark(acc);
        }
    }
}
