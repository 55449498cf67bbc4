//! Dense matrices over the min-plus semiring and over the Booleans.

use std::fmt;

/// The absorbing "no path" value. Finite entries stay far below it, so
/// `a + b` on two finite entries never reaches it.
pub const INF: i64 = i64::MAX;

/// Min-plus addition with `INF` absorbing.
#[inline]
pub fn add(a: i64, b: i64) -> i64 {
    if a == INF || b == INF {
        INF
    } else {
        a + b
    }
}

/// A row-major `rows × cols` matrix over `ℤ ∪ {+∞}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl WeightMatrix {
    pub fn filled(rows: usize, cols: usize, value: i64) -> Self {
        Self {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn infinite(rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, INF)
    }

    /// Identity of the min-plus semiring: 0 on the diagonal, `INF` elsewhere.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::infinite(n, n);
        for i in 0..n {
            m.set(i, i, 0);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<i64>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        Self { rows, cols, data }
    }

    /// Builds from nested rows; `None` is `INF`.
    pub fn from_rows(rows: &[Vec<Option<i64>>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|e| e.unwrap_or(INF)));
        }
        Self::from_vec(r, c, data)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Side length; panics on a non-square matrix.
    pub fn n(&self) -> usize {
        assert_eq!(self.rows, self.cols, "matrix is not square");
        self.rows
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.data
    }

    pub fn map(&self, f: impl Fn(i64) -> i64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&e| f(e)).collect(),
        }
    }

    /// Largest absolute value among finite entries, 0 if there are none.
    pub fn max_abs_finite(&self) -> i64 {
        self.data
            .iter()
            .filter(|&&e| e != INF)
            .map(|e| e.abs())
            .max()
            .unwrap_or(0)
    }

    /// The sub-matrix `self[row_ids, col_ids]`.
    pub fn select(&self, row_ids: &[usize], col_ids: &[usize]) -> Self {
        let mut data = Vec::with_capacity(row_ids.len() * col_ids.len());
        for &i in row_ids {
            let row = self.row(i);
            data.extend(col_ids.iter().map(|&j| row[j]));
        }
        Self::from_vec(row_ids.len(), col_ids.len(), data)
    }

    /// `self[row_ids, col_ids] ←min block`.
    pub fn min_assign_block(&mut self, row_ids: &[usize], col_ids: &[usize], block: &Self) {
        assert_eq!(block.rows, row_ids.len());
        assert_eq!(block.cols, col_ids.len());
        for (bi, &i) in row_ids.iter().enumerate() {
            for (bj, &j) in col_ids.iter().enumerate() {
                let v = block.get(bi, bj);
                if v < self.get(i, j) {
                    self.set(i, j, v);
                }
            }
        }
    }
}

impl fmt::Debug for WeightMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "WeightMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                match self.get(i, j) {
                    INF => write!(f, "{:>5}", "inf")?,
                    v => write!(f, "{v:>5}")?,
                }
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Square Boolean matrix stored as packed bit rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BoolMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        Self {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn full(n: usize) -> Self {
        let mut m = Self::new(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = Self::new(n);
        for i in 0..n {
            for j in 0..n {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.bits[i * self.words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub(crate) fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_full(&self) -> bool {
        self.count_ones() == self.n * self.n
    }

    /// `self |= other`
    pub fn or_assign(&mut self, other: &Self) {
        assert_eq!(self.n, other.n);
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    /// True iff every set entry of `self` is also set in `other`.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// Set entries as `(row, col)` pairs in row-major order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Entries set in `self` but not in `other`.
    pub fn difference(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            words: self.words,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BoolMatrix {0}x{0} [", self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                f.write_str(if self.get(i, j) { "1" } else { "." })?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
