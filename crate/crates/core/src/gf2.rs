//! Exact linear algebra over the two-element field.
//!
//! Vectors are bit-packed, most significant bit first: coordinate 1 (index 0)
//! sits in the top bit of the first word. With that layout the derived `Ord`
//! on equal-length vectors is the lexicographic order of their bit-strings,
//! which is the order every enumeration in this crate uses.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(WORD)
}

#[inline]
fn mask(i: usize) -> u64 {
    1u64 << (WORD - 1 - i % WORD)
}

/// A vector in `(Z/2)^len`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vector {
    len: usize,
    words: SmallVec<[u64; 1]>,
}

impl Gf2Vector {
    pub fn zero(len: usize) -> Self {
        Gf2Vector {
            len,
            words: smallvec![0; word_count(len)],
        }
    }

    /// The standard basis vector with a one at coordinate `i` (0-based).
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zero(len);
        v.set(i, true);
        v
    }

    /// Builds the vector whose bit-string, read as a binary number, is `index`.
    /// So `from_index(3, 0b110)` is `110`.
    pub fn from_index(len: usize, index: u64) -> Self {
        assert!(
            len <= WORD,
            "from_index supports at most {WORD} coordinates"
        );
        let mut v = Self::zero(len);
        if len > 0 {
            debug_assert!(len == WORD || index < (1u64 << len));
            v.words[0] = index << (WORD - len);
        }
        v
    }

    /// Inverse of [`Gf2Vector::from_index`].
    pub fn to_index(&self) -> u64 {
        assert!(self.len <= WORD);
        if self.len == 0 {
            0
        } else {
            self.words[0] >> (WORD - self.len)
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zero(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] & mask(i) != 0
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "coordinate {i} out of range for length {}",
            self.len
        );
        if value {
            self.words[i / WORD] |= mask(i);
        } else {
            self.words[i / WORD] &= !mask(i);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the first nonzero coordinate.
    pub fn leading(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.leading_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn xor_assign(&mut self, other: &Gf2Vector) {
        assert_eq!(self.len, other.len, "vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Gf2Vector) -> Gf2Vector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// The standard pairing `sum a_i b_i mod 2`.
    pub fn dot(&self, other: &Gf2Vector) -> bool {
        assert_eq!(self.len, other.len, "vector length mismatch");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &Gf2Vector) -> Gf2Vector {
        let mut out = Gf2Vector::zero(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Coordinates `start..start + len`.
    pub fn slice(&self, start: usize, len: usize) -> Gf2Vector {
        let mut out = Gf2Vector::zero(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }

    /// All `2^len` vectors of the given length in lexicographic order.
    pub fn all(len: usize) -> impl Iterator<Item = Gf2Vector> {
        assert!(len < WORD);
        (0..1u64 << len).map(move |x| Gf2Vector::from_index(len, x))
    }

    /// All nonzero vectors of the given length in lexicographic order.
    pub fn nonzero(len: usize) -> impl Iterator<Item = Gf2Vector> {
        Self::all(len).skip(1)
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vector({self})")
    }
}

impl FromStr for Gf2Vector {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err("empty bit-string".into());
        }
        let mut v = Gf2Vector::zero(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                other => return Err(format!("invalid bit {other:?} in {s:?}")),
            }
        }
        Ok(v)
    }
}

/// A dense matrix over GF(2), stored by rows.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Matrix {
    n_cols: usize,
    rows: Vec<Gf2Vector>,
}

impl Gf2Matrix {
    pub fn from_rows(n_cols: usize, rows: Vec<Gf2Vector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != n_cols) {
            return Err(Error::Shape(format!(
                "row {bad} has length {}, expected {n_cols}",
                bad.len()
            )));
        }
        Ok(Gf2Matrix { n_cols, rows })
    }

    pub fn zero(n_rows: usize, n_cols: usize) -> Self {
        Gf2Matrix {
            n_cols,
            rows: vec![Gf2Vector::zero(n_cols); n_rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Gf2Matrix {
            n_cols: n,
            rows: (0..n).map(|i| Gf2Vector::unit(n, i)).collect(),
        }
    }

    /// Parses a square matrix from rows given as bit-strings, e.g. `["100", "010", "001"]`.
    pub fn from_bit_rows(rows: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.parse::<Gf2Vector>()
                    .map_err(|e| crate::error::parse_err(i + 1, e))
            })
            .collect::<Result<Vec<_>>>()?;
        let n_cols = parsed.first().map_or(0, Gf2Vector::len);
        Self::from_rows(n_cols, parsed)
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn rows(&self) -> &[Gf2Vector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &Gf2Vector {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    pub fn push_row(&mut self, row: Gf2Vector) -> Result<()> {
        if row.len() != self.n_cols {
            return Err(Error::Shape(format!(
                "row length {} does not match {} columns",
                row.len(),
                self.n_cols
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn is_square(&self) -> bool {
        self.n_rows() == self.n_cols
    }

    pub fn column(&self, j: usize) -> Gf2Vector {
        let mut c = Gf2Vector::zero(self.n_rows());
        for (i, r) in self.rows.iter().enumerate() {
            if r.get(j) {
                c.set(i, true);
            }
        }
        c
    }

    pub fn transpose(&self) -> Gf2Matrix {
        Gf2Matrix {
            n_cols: self.n_rows(),
            rows: (0..self.n_cols).map(|j| self.column(j)).collect(),
        }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.n_cols != other.n_rows() {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.n_rows(),
                self.n_cols,
                other.n_rows(),
                other.n_cols
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = Gf2Vector::zero(other.n_cols);
                for j in r.ones() {
                    acc.xor_assign(&other.rows[j]);
                }
                acc
            })
            .collect();
        Ok(Gf2Matrix {
            n_cols: other.n_cols,
            rows,
        })
    }

    /// Matrix-vector product `self * v` with `v` a column vector.
    pub fn mul_vec(&self, v: &Gf2Vector) -> Gf2Vector {
        assert_eq!(v.len(), self.n_cols, "vector length mismatch");
        let mut out = Gf2Vector::zero(self.n_rows());
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot(v) {
                out.set(i, true);
            }
        }
        out
    }

    /// Reduced row echelon form with zero rows dropped, plus the pivot columns.
    pub fn rref(&self) -> (Gf2Matrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.n_cols {
            if r == rows.len() {
                break;
            }
            let Some(found) = (r..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(r, found);
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            r += 1;
        }
        rows.truncate(r);
        (
            Gf2Matrix {
                n_cols: self.n_cols,
                rows,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.n_cols
    }

    pub fn inverse(&self) -> Option<Gf2Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.n_cols;
        let augmented = Gf2Matrix {
            n_cols: 2 * n,
            rows: self
                .rows
                .iter()
                .enumerate()
                .map(|(i, r)| r.concat(&Gf2Vector::unit(n, i)))
                .collect(),
        };
        let (reduced, pivots) = augmented.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(Gf2Matrix {
            n_cols: n,
            rows: reduced.rows.iter().map(|r| r.slice(n, n)).collect(),
        })
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows.iter().map(|r| r.to_string()).join(" ");
        write!(f, "Gf2Matrix[{rows}]")
    }
}

impl FromStr for Gf2Matrix {
    type Err = Error;

    /// One bit-string row per line; blank lines and `#` comments are skipped.
    fn from_str(s: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut width = None;
        for (idx, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let v: Gf2Vector = line
                .parse()
                .map_err(|e| crate::error::parse_err(idx + 1, e))?;
            match width {
                None => width = Some(v.len()),
                Some(w) if w != v.len() => {
                    return Err(crate::error::parse_err(
                        idx + 1,
                        format!("row width {} differs from {w}", v.len()),
                    ))
                }
                _ => {}
            }
            rows.push(v);
        }
        Gf2Matrix::from_rows(width.unwrap_or(0), rows)
    }
}

/// GF(2) row rank.
pub fn rank(m: &Gf2Matrix) -> usize {
    // Echelon basis kept sorted by leading coordinate.
    let mut basis: Vec<(usize, Gf2Vector)> = Vec::new();
    for row in &m.rows {
        let mut v = row.clone();
        for (lead, b) in &basis {
            if v.get(*lead) {
                v.xor_assign(b);
            }
        }
        if let Some(lead) = v.leading() {
            let pos = basis.partition_point(|(l, _)| *l < lead);
            basis.insert(pos, (lead, v));
        }
    }
    basis.len()
}

/// A subspace of `(Z/2)^ambient`, stored by its reduced row echelon basis.
///
/// Two `Subspace` values are equal exactly when they describe the same set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Gf2Vector>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| Gf2Vector::unit(ambient, i)).collect(),
        }
    }

    pub fn from_spanning(ambient: usize, vectors: &[Gf2Vector]) -> Result<Self> {
        let m = Gf2Matrix::from_rows(ambient, vectors.to_vec())?;
        let (reduced, _) = m.rref();
        Ok(Subspace {
            ambient,
            basis: reduced.rows,
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Gf2Vector] {
        &self.basis
    }

    pub fn contains(&self, v: &Gf2Vector) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut v = v.clone();
        for b in &self.basis {
            let lead = b.leading().expect("basis vectors are nonzero");
            if v.get(lead) {
                v.xor_assign(b);
            }
        }
        v.is_zero()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    /// Every element, in the order of binary counting over the basis.
    pub fn elements(&self) -> Vec<Gf2Vector> {
        assert!(self.dim() < 32, "subspace too large to enumerate");
        (0..1u64 << self.dim())
            .map(|mask| {
                let mut v = Gf2Vector::zero(self.ambient);
                for (i, b) in self.basis.iter().enumerate() {
                    if mask >> (self.dim() - 1 - i) & 1 == 1 {
                        v.xor_assign(b);
                    }
                }
                v
            })
            .collect()
    }

    /// `H^⊥ = {g : g·h = 0 for all h in H}`.
    pub fn orthogonal_complement(&self) -> Subspace {
        orthogonal_complement(self)
    }

    /// The basis as the rows of a matrix.
    pub fn to_matrix(&self) -> Gf2Matrix {
        Gf2Matrix {
            n_cols: self.ambient,
            rows: self.basis.clone(),
        }
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.basis.iter().map(|r| r.to_string()).join(",");
        write!(f, "Subspace<{}>{{{rows}}}", self.ambient)
    }
}

/// Right nullspace `{x : m x = 0}`.
pub fn nullspace(m: &Gf2Matrix) -> Subspace {
    let n = m.n_cols();
    let (reduced, pivots) = m.rref();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let spanning: Vec<Gf2Vector> = (0..n)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = Gf2Vector::unit(n, free);
            for (row, &p) in reduced.rows().iter().zip(&pivots) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect();
    Subspace::from_spanning(n, &spanning).expect("widths agree by construction")
}

pub fn orthogonal_complement(h: &Subspace) -> Subspace {
    nullspace(&h.to_matrix())
}

/// Largest `k` for which [`enumerate_gl`] will materialise `GL(k, 2)`.
pub const MAX_GL_RANK: usize = 5;

/// Every invertible `k x k` matrix, ordered lexicographically by the
/// sequence of row bit-strings.
pub fn enumerate_gl(k: usize) -> Result<Vec<Gf2Matrix>> {
    if k == 0 {
        return Err(Error::Shape("GL(0, 2) is not defined here".into()));
    }
    if k > MAX_GL_RANK {
        return Err(Error::ResourceLimit(format!(
            "GL({k}, 2) exceeds the supported rank {MAX_GL_RANK}"
        )));
    }
    let mut out = Vec::with_capacity(gl_order(k) as usize);
    let mut rows = Vec::with_capacity(k);
    extend_gl(k, &mut rows, &mut out);
    Ok(out)
}

fn extend_gl(k: usize, rows: &mut Vec<Gf2Vector>, out: &mut Vec<Gf2Matrix>) {
    if rows.len() == k {
        out.push(Gf2Matrix {
            n_cols: k,
            rows: rows.clone(),
        });
        return;
    }
    let span = Subspace::from_spanning(k, rows).expect("rows have width k");
    for candidate in Gf2Vector::nonzero(k) {
        if span.contains(&candidate) {
            continue;
        }
        rows.push(candidate);
        extend_gl(k, rows, out);
        rows.pop();
    }
}

/// `|GL(k, 2)| = prod_{i<k} (2^k - 2^i)`.
pub fn gl_order(k: usize) -> u64 {
    (0..k).map(|i| (1u64 << k) - (1u64 << i)).product()
}

/// Largest ambient rank accepted by [`enumerate_subspaces`].
pub const MAX_SUBSPACE_AMBIENT: usize = 6;

/// Every rank-`r` subspace of `(Z/2)^ambient`, each in canonical form.
///
/// Ordered by pivot columns (lexicographic), then by the free entries read
/// row by row as a binary number.
pub fn enumerate_subspaces(ambient: usize, r: usize) -> Result<Vec<Subspace>> {
    if ambient > MAX_SUBSPACE_AMBIENT {
        return Err(Error::ResourceLimit(format!(
            "subspace enumeration supports ambient rank at most {MAX_SUBSPACE_AMBIENT}"
        )));
    }
    if r > ambient {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for pivots in (0..ambient).combinations(r) {
        // free[t] lists the columns row t may fill: right of its pivot, not a pivot.
        let free: Vec<Vec<usize>> = pivots
            .iter()
            .map(|&p| (p + 1..ambient).filter(|c| !pivots.contains(c)).collect())
            .collect();
        let total: usize = free.iter().map(Vec::len).sum();
        for fill in 0..1u64 << total {
            let mut bit = total;
            let basis = pivots
                .iter()
                .zip(&free)
                .map(|(&p, cols)| {
                    let mut v = Gf2Vector::unit(ambient, p);
                    for &c in cols {
                        bit -= 1;
                        if fill >> bit & 1 == 1 {
                            v.set(c, true);
                        }
                    }
                    v
                })
                .collect();
            out.push(Subspace { ambient, basis });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn v(s: &str) -> Gf2Vector {
        s.parse().unwrap()
    }

    fn mat(rows: &[&str]) -> Gf2Matrix {
        Gf2Matrix::from_bit_rows(rows).unwrap()
    }

    #[test]
    fn bit_layout_and_order() {
        assert_eq!(Gf2Vector::from_index(3, 0b110).to_string(), "110");
        assert_eq!(v("110").to_index(), 6);
        assert!(v("011") < v("100"));
        assert_eq!(v("0010").leading(), Some(2));
        assert_eq!(Gf2Vector::zero(4).leading(), None);
        let long = Gf2Vector::unit(130, 129);
        assert_eq!(long.leading(), Some(129));
        assert_eq!(long.to_string().len(), 130);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Gf2Matrix::identity(3)), 3);
        assert_eq!(rank(&Gf2Matrix::zero(3, 3)), 0);
        assert_eq!(rank(&mat(&["110", "011", "101"])), 2);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace(&Gf2Matrix::identity(3)), Subspace::zero(3));
        assert_eq!(nullspace(&Gf2Matrix::zero(2, 3)), Subspace::full(3));
        let ns = nullspace(&mat(&["111"]));
        assert_eq!(ns.dim(), 2);
        let elems: BTreeSet<String> = ns.elements().iter().map(|e| e.to_string()).collect();
        let expected: BTreeSet<String> = ["000", "110", "011", "101"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(elems, expected);
    }

    #[test]
    fn complement_examples() {
        let e1 = Subspace::from_spanning(3, &[v("100")]).unwrap();
        let expected = Subspace::from_spanning(3, &[v("010"), v("001")]).unwrap();
        assert_eq!(e1.orthogonal_complement(), expected);
        assert_eq!(Subspace::full(3).orthogonal_complement(), Subspace::zero(3));

        let h = Subspace::from_spanning(5, &[v("01111"), v("11010"), v("11001")]).unwrap();
        let perp: BTreeSet<String> = h
            .orthogonal_complement()
            .elements()
            .iter()
            .map(|e| e.to_string())
            .collect();
        let expected: BTreeSet<String> = ["00000", "11100", "10011", "01111"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(perp, expected);
    }

    #[test]
    fn inverse_and_mul() {
        let a = mat(&["110", "010", "011"]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Gf2Matrix::identity(3));
        assert!(mat(&["110", "011", "101"]).inverse().is_none());
        assert!(mat(&["110", "011"]).inverse().is_none());
    }

    /// Brute force over all `2^(k^2)` matrices.
    fn brute_gl(k: usize) -> Vec<Gf2Matrix> {
        (0..1u64 << (k * k))
            .map(|bits| {
                let rows = (0..k)
                    .map(|i| Gf2Vector::from_index(k, (bits >> ((k - 1 - i) * k)) & ((1 << k) - 1)))
                    .collect();
                Gf2Matrix::from_rows(k, rows).unwrap()
            })
            .filter(Gf2Matrix::is_invertible)
            .collect()
    }

    #[test]
    fn gl_counts_match_brute_force() {
        assert_eq!(enumerate_gl(1).unwrap(), vec![Gf2Matrix::identity(1)]);
        for k in 1..=3 {
            let fast = enumerate_gl(k).unwrap();
            let brute = brute_gl(k);
            assert_eq!(fast, brute, "k = {k}");
        }
        assert_eq!(brute_gl(2).len(), 6);
        assert_eq!(brute_gl(3).len(), 168);
        assert_eq!(enumerate_gl(4).unwrap().len() as u64, gl_order(4));
        assert!(matches!(enumerate_gl(6), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn gl_elements_invert() {
        for a in enumerate_gl(3).unwrap() {
            let inv = a.inverse().unwrap();
            assert_eq!(a.mul(&inv).unwrap(), Gf2Matrix::identity(3));
            assert_eq!(inv.mul(&a).unwrap(), Gf2Matrix::identity(3));
        }
    }

    /// Every subspace generated by some r-subset of vectors, deduplicated.
    fn brute_subspaces(ambient: usize, r: usize) -> BTreeSet<Subspace> {
        Gf2Vector::nonzero(ambient)
            .combinations(r)
            .filter_map(|vs| {
                let s = Subspace::from_spanning(ambient, &vs).unwrap();
                (s.dim() == r).then_some(s)
            })
            .collect()
    }

    /// Gaussian binomial by direct counting of ordered independent tuples.
    fn gaussian_binomial(n: u32, r: u32) -> u64 {
        let num: u64 = (0..r).map(|i| (1u64 << n) - (1u64 << i)).product();
        let den: u64 = (0..r).map(|i| (1u64 << r) - (1u64 << i)).product();
        num / den
    }

    #[test]
    fn subspace_enumeration() {
        assert_eq!(enumerate_subspaces(3, 3).unwrap(), vec![Subspace::full(3)]);
        assert_eq!(enumerate_subspaces(3, 1).unwrap().len(), 7);
        let fast = enumerate_subspaces(5, 3).unwrap();
        assert_eq!(fast.len(), 155);
        assert_eq!(gaussian_binomial(5, 3), 155);
        let as_set: BTreeSet<Subspace> = fast.iter().cloned().collect();
        assert_eq!(as_set.len(), fast.len());
        assert_eq!(as_set, brute_subspaces(5, 3));
        for s in &fast {
            assert_eq!(&Subspace::from_spanning(5, s.basis()).unwrap(), s);
        }
        for (n, r) in [(4, 2), (6, 3), (6, 1), (4, 0)] {
            assert_eq!(
                enumerate_subspaces(n, r).unwrap().len() as u64,
                gaussian_binomial(n as u32, r as u32)
            );
        }
        assert!(enumerate_subspaces(7, 2).is_err());
    }

    #[test]
    fn matrix_text_round_trip() {
        let a = mat(&["101", "011"]);
        let text = a.to_string();
        assert_eq!(text, "101\n011\n");
        assert_eq!(text.parse::<Gf2Matrix>().unwrap(), a);
        assert!("10\n1\n".parse::<Gf2Matrix>().is_err());
    }
}
