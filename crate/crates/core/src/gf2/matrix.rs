//! Dense bit-packed matrices over the two-element field.
//!
//! Rows are stored as runs of `u64` words so that row additions are word-level
//! XORs. Every elimination picks the leftmost available pivot, which makes every
//! basis returned by this module a deterministic function of its input.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub(crate) const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

#[inline]
pub(crate) fn get_bit(words: &[u64], i: usize) -> bool {
    (words[i / WORD] >> (i % WORD)) & 1 == 1
}

#[inline]
pub(crate) fn set_bit(words: &mut [u64], i: usize, value: bool) {
    let mask = 1u64 << (i % WORD);
    if value {
        words[i / WORD] |= mask;
    } else {
        words[i / WORD] &= !mask;
    }
}

#[inline]
pub(crate) fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

#[inline]
fn first_set_from(words: &[u64], start: usize, len: usize) -> Option<usize> {
    let mut w = start / WORD;
    if w >= words.len() {
        return None;
    }
    let mut cur = words[w] & (!0u64 << (start % WORD));
    loop {
        if cur != 0 {
            let idx = w * WORD + cur.trailing_zeros() as usize;
            return (idx < len).then_some(idx);
        }
        w += 1;
        if w >= words.len() {
            return None;
        }
        cur = words[w];
    }
}

/// A row vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; words_for(len)] }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub(crate) fn from_words(len: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        BitVec { len, words }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        get_bit(&self.words, i)
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        set_bit(&mut self.words, i, value)
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn add_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len);
        xor_into(&mut self.words, &other.words);
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn first_one(&self) -> Option<usize> {
        first_set_from(&self.words, 0, self.len)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        let len = self.len;
        let mut next = 0;
        std::iter::from_fn(move || {
            let found = first_set_from(&self.words, next, len)?;
            next = found + 1;
            Some(found)
        })
    }

    /// `self · m`, the row vector times a matrix.
    pub fn mul_mat(&self, m: &BitMatrix) -> BitVec {
        assert_eq!(self.len, m.rows, "vector length must match matrix rows");
        let mut out = BitVec::zeros(m.cols);
        for i in self.ones() {
            xor_into(&mut out.words, m.row(i));
        }
        out
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A dense matrix over GF(2), bit-packed row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Parses rows written as strings of `0`/`1`.
    pub fn from_row_strings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let cols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        Self::from_row_strings_with_cols(rows, cols)
    }

    fn from_row_strings_with_cols<S: AsRef<str>>(rows: &[S], cols: usize) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Parse(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            for (j, ch) in r.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(i, j, true),
                    other => {
                        return Err(Error::Parse(format!("invalid matrix entry {other:?}")))
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn from_vectors(cols: usize, vectors: &[BitVec]) -> Self {
        let mut m = Self::zeros(vectors.len(), cols);
        for (i, v) in vectors.iter().enumerate() {
            assert_eq!(v.len(), cols);
            m.row_mut(i).copy_from_slice(v.words());
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for w in m.row_mut(i).iter_mut() {
                *w = rng.gen();
            }
            m.mask_row(i);
        }
        m
    }

    /// A uniformly random invertible matrix (rejection sampling).
    pub fn random_invertible<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        loop {
            let m = Self::random(n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    fn mask_row(&mut self, i: usize) {
        let rem = self.cols % WORD;
        if rem != 0 {
            let last = (i + 1) * self.stride - 1;
            self.data[last] &= (1u64 << rem) - 1;
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of bounds");
        get_bit(self.row(r), c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of bounds");
        set_bit(self.row_mut(r), c, value)
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row_vec(&self, r: usize) -> BitVec {
        BitVec::from_words(self.cols, self.row(r).to_vec())
    }

    pub fn row_vecs(&self) -> Vec<BitVec> {
        (0..self.rows).map(|r| self.row_vec(r)).collect()
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let s = self.stride;
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&mut lo[dst * s..(dst + 1) * s], &hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..(src + 1) * s])
        };
        xor_into(a, b);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        let mut out = self.clone();
        xor_into(&mut out.data, &other.data);
        out
    }

    pub fn add_assign(&mut self, other: &BitMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        xor_into(&mut self.data, &other.data);
    }

    /// `self + I`.
    pub fn plus_identity(&self) -> BitMatrix {
        assert!(self.is_square());
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = out.get(i, i);
            out.set(i, i, !v);
        }
        out
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let (lhs, dst) = (self.row(i), i * out.stride);
            let mut k = 0;
            while let Some(j) = first_set_from(lhs, k, self.cols) {
                xor_into(&mut out.data[dst..dst + out.stride], other.row(j));
                k = j + 1;
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> BitMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = BitMatrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            let row = self.row(i);
            let mut k = 0;
            while let Some(j) = first_set_from(row, k, self.cols) {
                out.set(j, i, true);
                k = j + 1;
            }
        }
        out
    }

    /// Reduced row echelon form with leftmost pivots. Returns the nonzero rows
    /// of the reduced matrix and their pivot columns.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c)) else { continue };
            if p != r {
                m.swap_rows(p, r);
            }
            for i in 0..m.rows {
                if i != r && m.get(i, c) {
                    m.xor_rows(i, r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate_rows(r);
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    fn truncate_rows(&mut self, r: usize) {
        self.rows = r;
        self.data.truncate(r * self.stride);
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        (0..self.rows).filter(|&i| e.insert(self.row_vec(i)).is_some()).count()
    }

    /// Rank and a basis of `{v : m·vᵀ = 0}` in reduced echelon form.
    pub fn rank_kernel(&self) -> (usize, BitMatrix) {
        let (r, pivots) = self.rref();
        let rank = pivots.len();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut kernel = BitMatrix::zeros(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            kernel.set(k, f, true);
            for (i, &p) in pivots.iter().enumerate() {
                if r.get(i, f) {
                    kernel.set(k, p, true);
                }
            }
        }
        // Free-column order makes this an echelon form; finish reduction.
        let (kernel, _) = kernel.rref();
        (rank, kernel)
    }

    /// Basis of `{u : u·m = 0}`.
    pub fn left_kernel(&self) -> BitMatrix {
        self.transpose().rank_kernel().1
    }

    pub fn inverse(&self) -> Option<BitMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = BitMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in self.row_vec(i).ones() {
                aug.set(i, j, true);
            }
            aug.set(i, n + i, true);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = BitMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if r.get(i, n + j) {
                    inv.set(i, j, true);
                }
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Kronecker product: entry ((i,k),(j,l)) = a[i][j]·b[k][l].
    pub fn kronecker(&self, other: &BitMatrix) -> BitMatrix {
        let (p, q) = (other.rows, other.cols);
        let mut out = BitMatrix::zeros(self.rows * p, self.cols * q);
        for i in 0..self.rows {
            for j in self.row_vec(i).ones() {
                for k in 0..p {
                    let dst = (i * p + k) * out.stride;
                    let row = &mut out.data[dst..dst + out.stride];
                    for l in other.row_vec(k).ones() {
                        set_bit(row, j * q + l, true);
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal sum of square or rectangular blocks.
    pub fn direct_sum(blocks: &[&BitMatrix]) -> BitMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = BitMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &BitMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in block.row_vec(i).ones() {
                self.set(r0 + i, c0 + j, true);
            }
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> BitMatrix {
        let mut out = BitMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if self.get(r0 + i, c0 + j) {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    pub fn vstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols);
        let mut out = self.clone();
        out.rows += other.rows;
        out.data.extend_from_slice(&other.data);
        out
    }

    pub fn row_strings(&self) -> Vec<String> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| if self.get(i, j) { '1' } else { '0' }).collect())
            .collect()
    }

    /// Entries as a flat bit vector, row-major, for treating matrices as
    /// points of an `rows·cols`-dimensional space.
    pub fn flatten(&self) -> BitVec {
        let mut v = BitVec::zeros(self.rows * self.cols);
        for i in 0..self.rows {
            for j in self.row_vec(i).ones() {
                v.set(i * self.cols + j, true);
            }
        }
        v
    }

    pub fn unflatten(rows: usize, cols: usize, v: &BitVec) -> BitMatrix {
        assert_eq!(v.len(), rows * cols);
        let mut m = BitMatrix::zeros(rows, cols);
        for k in v.ones() {
            m.set(k / cols, k % cols, true);
        }
        m
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in self.row_strings() {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    data: Vec<String>,
}

impl Serialize for BitMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson { rows: self.rows, cols: self.cols, data: self.row_strings() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BitMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(d)?;
        if raw.data.len() != raw.rows {
            return Err(serde::de::Error::custom(format!(
                "matrix declares {} rows but carries {}",
                raw.rows,
                raw.data.len()
            )));
        }
        BitMatrix::from_row_strings_with_cols(&raw.data, raw.cols)
            .map_err(serde::de::Error::custom)
    }
}

/// Incrementally built semi-echelon basis of a subspace.
///
/// Rows are kept reduced against every earlier pivot; reducing a vector by the
/// rows in insertion order therefore clears all pivot positions.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon { width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors<'a>(width: usize, vs: impl IntoIterator<Item = &'a BitVec>) -> Self {
        let mut e = Self::new(width);
        for v in vs {
            e.insert(v.clone());
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` in place; the result is zero iff `v` lay in the span.
    pub fn reduce(&self, v: &mut BitVec) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.add_assign(row);
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Inserts `v` if independent; returns the index of the new row.
    pub fn insert(&mut self, mut v: BitVec) -> Option<usize> {
        assert_eq!(v.len(), self.width);
        self.reduce(&mut v);
        let p = v.first_one()?;
        self.rows.push(v);
        self.pivots.push(p);
        Some(self.rows.len() - 1)
    }
}

/// Semi-echelon basis that also records how each stored row was formed from
/// the inserted vectors, so span members can be written in the inserted basis.
#[derive(Clone, Debug)]
pub struct TrackedEchelon {
    width: usize,
    rows: Vec<BitVec>,
    combos: Vec<BitVec>,
    pivots: Vec<usize>,
    capacity: usize,
}

impl TrackedEchelon {
    /// `capacity` bounds the number of independent vectors that will be inserted.
    pub fn new(width: usize, capacity: usize) -> Self {
        TrackedEchelon { width, rows: Vec::new(), combos: Vec::new(), pivots: Vec::new(), capacity }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce_tracked(&self, v: &mut BitVec, combo: &mut BitVec) {
        for ((row, c), &p) in self.rows.iter().zip(&self.combos).zip(&self.pivots) {
            if v.get(p) {
                v.add_assign(row);
                combo.add_assign(c);
            }
        }
    }

    /// Inserts `v`; returns false (and stores nothing) if `v` is dependent.
    pub fn insert(&mut self, v: BitVec) -> bool {
        let idx = self.rows.len();
        let mut w = v;
        let mut combo = BitVec::zeros(self.capacity);
        self.reduce_tracked(&mut w, &mut combo);
        match w.first_one() {
            None => false,
            Some(p) => {
                assert!(idx < self.capacity, "tracked echelon capacity exceeded");
                combo.set(idx, true);
                self.rows.push(w);
                self.combos.push(combo);
                self.pivots.push(p);
                true
            }
        }
    }

    /// Coefficients of `v` in the inserted vectors, or `None` if outside the span.
    pub fn coordinates(&self, v: &BitVec) -> Option<BitVec> {
        let mut w = v.clone();
        let mut combo = BitVec::zeros(self.capacity);
        self.reduce_tracked(&mut w, &mut combo);
        w.is_zero().then(|| {
            let mut c = BitVec::zeros(self.rows.len());
            for i in combo.ones() {
                c.set(i, true);
            }
            c
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> BitMatrix {
        BitMatrix::from_row_strings(rows).unwrap()
    }

    #[test]
    fn identity_has_full_rank_and_empty_kernel() {
        let (r, k) = BitMatrix::identity(3).rank_kernel();
        assert_eq!(r, 3);
        assert_eq!(k.rows(), 0);
    }

    #[test]
    fn zero_map_kernel_is_everything() {
        let (r, k) = BitMatrix::zeros(2, 5).rank_kernel();
        assert_eq!(r, 0);
        assert_eq!(k, BitMatrix::identity(5));
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = m(&["1101", "0111", "1010"]);
        let (r, k) = a.rank_kernel();
        assert_eq!(r + k.rows(), 4);
        for v in k.row_vecs() {
            assert!(a.mul(&BitMatrix::from_vectors(4, &[v]).transpose()).is_zero());
        }
    }

    #[test]
    fn inverse_round_trips() {
        let a = m(&["110", "011", "001"]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(m(&["11", "11"]).inverse().is_none());
    }

    #[test]
    fn wide_matrices_cross_word_boundaries() {
        let mut a = BitMatrix::zeros(3, 130);
        a.set(0, 129, true);
        a.set(1, 64, true);
        a.set(2, 0, true);
        assert_eq!(a.rank(), 3);
        assert_eq!(a.transpose().transpose(), a);
        let (_, p) = a.rref();
        assert_eq!(p, vec![0, 64, 129]);
    }

    #[test]
    fn tracked_echelon_coordinates() {
        let vs = [m(&["1100"]).row_vec(0), m(&["0110"]).row_vec(0), m(&["0011"]).row_vec(0)];
        let mut e = TrackedEchelon::new(4, 3);
        for v in &vs {
            assert!(e.insert(v.clone()));
        }
        let target = m(&["1001"]).row_vec(0);
        let c = e.coordinates(&target).unwrap();
        let mut sum = BitVec::zeros(4);
        for i in c.ones() {
            sum.add_assign(&vs[i]);
        }
        assert_eq!(sum, target);
        assert!(e.coordinates(&m(&["1000"]).row_vec(0)).is_none());
    }

    #[test]
    fn json_shape() {
        let a = m(&["01", "10"]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"rows":2,"cols":2,"data":["01","10"]}"#);
        let b: BitMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
        assert!(serde_json::from_str::<BitMatrix>(r#"{"rows":1,"cols":2,"data":["012"]}"#).is_err());
    }
}
