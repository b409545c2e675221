//! Linear algebra over the two-element field.
//!
//! Matrices follow the column convention: a map `V → W` is stored as a
//! `dim W × dim V` matrix whose column `j` is the image of basis vector `j`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::label::BasisLabel;

const WORD: usize = 64;

/// Dense bit-packed matrix over F₂, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(WORD);
        Self {
            rows,
            cols,
            words_per_row,
            bits: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Build from 0/1 rows; any odd entry counts as 1.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::Shape {
                    context: "F2Matrix::from_rows",
                    expected: format!("{cols} columns"),
                    found: format!("{} in row {i}", row.len()),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v & 1 == 1);
            }
        }
        Ok(m)
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| u8::from(self.get(i, j))).collect())
            .collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.bits[r * self.words_per_row + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let word = &mut self.bits[r * self.words_per_row + c / WORD];
        let mask = 1u64 << (c % WORD);
        if value {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, r: usize, c: usize) {
        debug_assert!(r < self.rows && c < self.cols);
        self.bits[r * self.words_per_row + c / WORD] ^= 1u64 << (c % WORD);
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    fn xor_row_into(&mut self, dst: usize, src: &[u64]) {
        let start = dst * self.words_per_row;
        for (w, s) in self.bits[start..start + self.words_per_row].iter_mut().zip(src) {
            *w ^= s;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Positions `(row, col)` of the nonzero entries in row-major order.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.push((r, c));
                }
            }
        }
        out
    }

    /// `self · rhs`.
    pub fn mul(&self, rhs: &F2Matrix) -> Result<F2Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape {
                context: "F2Matrix::mul",
                expected: format!("{} rows on the right", self.cols),
                found: rhs.rows.to_string(),
            });
        }
        let mut out = F2Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    out.xor_row_into(i, rhs.row_words(k));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &F2Matrix) -> Result<F2Matrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::Shape {
                context: "F2Matrix::add",
                expected: format!("{}x{}", self.rows, self.cols),
                found: format!("{}x{}", rhs.rows, rhs.cols),
            });
        }
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(&rhs.bits) {
            *a ^= b;
        }
        Ok(out)
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut out = F2Matrix::zeros(self.cols, self.rows);
        for (r, c) in self.nonzero_entries() {
            out.set(c, r, true);
        }
        out
    }

    /// Kronecker product; rows and columns of `self` are the major index.
    pub fn kron(&self, rhs: &F2Matrix) -> F2Matrix {
        let mut out = F2Matrix::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        let right = rhs.nonzero_entries();
        for (i, j) in self.nonzero_entries() {
            for &(k, l) in &right {
                out.set(i * rhs.rows + k, j * rhs.cols + l, true);
            }
        }
        out
    }

    /// Rank by Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(pivot) = (rank..m.rows).find(|&r| m.get(r, col)) else {
                continue;
            };
            if pivot != rank {
                for w in 0..m.words_per_row {
                    m.bits
                        .swap(pivot * m.words_per_row + w, rank * m.words_per_row + w);
                }
            }
            let pivot_row = m.row_words(rank).to_vec();
            for r in 0..m.rows {
                if r != rank && m.get(r, col) {
                    m.xor_row_into(r, &pivot_row);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// The submatrix keeping the listed rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> F2Matrix {
        let mut out = F2Matrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    out.set(i, j, true);
                }
            }
        }
        out
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                f.write_str(if self.get(r, c) { "1" } else { "." })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn rank(m: &F2Matrix) -> usize {
    m.rank()
}

/// A vector over F₂ written as the set of basis labels with coefficient 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct F2Combination(BTreeSet<BasisLabel>);

impl F2Combination {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(label: BasisLabel) -> Self {
        let mut s = BTreeSet::new();
        s.insert(label);
        Self(s)
    }

    pub fn from_labels<I: IntoIterator<Item = BasisLabel>>(labels: I) -> Self {
        let mut out = Self::zero();
        for l in labels {
            out.add_label(l);
        }
        out
    }

    pub fn add_label(&mut self, label: BasisLabel) {
        if !self.0.remove(&label) {
            self.0.insert(label);
        }
    }

    pub fn add(&mut self, other: &F2Combination) {
        for l in &other.0 {
            self.add_label(l.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, label: &BasisLabel) -> bool {
        self.0.contains(label)
    }

    pub fn iter(&self) -> impl Iterator<Item = &BasisLabel> {
        self.0.iter()
    }

    /// Bilinear extension of label tensoring.
    pub fn tensor(&self, other: &F2Combination) -> F2Combination {
        let mut out = F2Combination::zero();
        for x in &self.0 {
            for y in &other.0 {
                out.add_label(x.tensor(y));
            }
        }
        out
    }
}

impl fmt::Display for F2Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for F2Combination {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(ToString::to_string))
    }
}

/// Ordered basis with unique labels and small nonnegative degrees.
///
/// The order is part of the data: matrices are always relative to it.
#[derive(Debug, Clone)]
pub struct GradedF2Space {
    basis: Vec<(BasisLabel, u8)>,
    index: HashMap<BasisLabel, usize>,
}

impl PartialEq for GradedF2Space {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl Eq for GradedF2Space {}

impl GradedF2Space {
    /// Degrees of a space whose labels have `k` tensor factors must lie in
    /// `0..=2k`; every factor is the homology of a surface or a circle.
    pub fn new(basis: Vec<(BasisLabel, u8)>) -> Result<Self> {
        let mut index = HashMap::with_capacity(basis.len());
        for (i, (label, degree)) in basis.iter().enumerate() {
            let cap = 2 * label.arity();
            if usize::from(*degree) > cap {
                return Err(Error::InvalidSpace(format!(
                    "label {label} has degree {degree}, above the cap {cap}"
                )));
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::InvalidSpace(format!("duplicate label {label}")));
            }
        }
        Ok(Self { basis, index })
    }

    pub fn empty() -> Self {
        Self {
            basis: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn label(&self, i: usize) -> &BasisLabel {
        &self.basis[i].0
    }

    pub fn degree(&self, i: usize) -> u8 {
        self.basis[i].1
    }

    pub fn index_of(&self, label: &BasisLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn contains(&self, label: &BasisLabel) -> bool {
        self.index.contains_key(label)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisLabel, u8)> {
        self.basis.iter().map(|(l, d)| (l, *d))
    }

    pub fn labels(&self) -> impl Iterator<Item = &BasisLabel> {
        self.basis.iter().map(|(l, _)| l)
    }

    /// Dimension of each degree, indexed by degree.
    pub fn dims_by_degree(&self) -> Vec<usize> {
        let top = self.basis.iter().map(|(_, d)| *d as usize).max().unwrap_or(0);
        let mut dims = vec![0; top + 1];
        for (_, d) in &self.basis {
            dims[*d as usize] += 1;
        }
        dims
    }

    /// Tensor product; the pair `(i, j)` sits at position `i * other.dim() + j`.
    pub fn tensor(&self, other: &GradedF2Space) -> GradedF2Space {
        let mut basis = Vec::with_capacity(self.dim() * other.dim());
        for (x, dx) in &self.basis {
            for (y, dy) in &other.basis {
                basis.push((x.tensor(y), dx + dy));
            }
        }
        GradedF2Space::new(basis).expect("tensor of valid spaces is valid")
    }

    /// Direct sum keeping `self` first; labels must stay distinct.
    pub fn direct_sum(&self, other: &GradedF2Space) -> Result<GradedF2Space> {
        let mut basis = self.basis.clone();
        basis.extend(other.basis.iter().cloned());
        GradedF2Space::new(basis)
    }

    pub fn to_column(&self, v: &F2Combination) -> Result<Vec<bool>> {
        let mut col = vec![false; self.dim()];
        for l in v.iter() {
            let i = self
                .index_of(l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
            col[i] = true;
        }
        Ok(col)
    }

    pub fn from_column(&self, col: impl IntoIterator<Item = bool>) -> F2Combination {
        F2Combination::from_labels(
            col.into_iter()
                .enumerate()
                .filter(|(_, b)| *b)
                .map(|(i, _)| self.label(i).clone()),
        )
    }
}

impl Serialize for GradedF2Space {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            label: &'a BasisLabel,
            degree: u8,
        }
        serializer.collect_seq(self.basis.iter().map(|(label, degree)| Entry {
            label,
            degree: *degree,
        }))
    }
}

/// A homogeneous linear map between graded spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2LinearMap {
    source: GradedF2Space,
    target: GradedF2Space,
    degree_shift: i32,
    matrix: F2Matrix,
}

impl F2LinearMap {
    /// Checks the matrix shape and that every nonzero entry shifts degree by
    /// exactly `degree_shift`.
    pub fn new(
        source: GradedF2Space,
        target: GradedF2Space,
        degree_shift: i32,
        matrix: F2Matrix,
    ) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Shape {
                context: "F2LinearMap::new",
                expected: format!("{}x{}", target.dim(), source.dim()),
                found: format!("{}x{}", matrix.rows(), matrix.cols()),
            });
        }
        for (r, c) in matrix.nonzero_entries() {
            let (sd, td) = (source.degree(c), target.degree(r));
            if i32::from(td) - i32::from(sd) != degree_shift {
                return Err(Error::Degree {
                    source_label: source.label(c).to_string(),
                    source_degree: sd,
                    target_label: target.label(r).to_string(),
                    target_degree: td,
                    shift: degree_shift,
                });
            }
        }
        Ok(Self {
            source,
            target,
            degree_shift,
            matrix,
        })
    }

    pub fn zero(source: GradedF2Space, target: GradedF2Space, degree_shift: i32) -> Self {
        let matrix = F2Matrix::zeros(target.dim(), source.dim());
        Self {
            source,
            target,
            degree_shift,
            matrix,
        }
    }

    pub fn identity(space: GradedF2Space) -> Self {
        let matrix = F2Matrix::identity(space.dim());
        Self {
            source: space.clone(),
            target: space,
            degree_shift: 0,
            matrix,
        }
    }

    /// Build a map from the image of each source basis label.
    pub fn from_fn<F>(
        source: GradedF2Space,
        target: GradedF2Space,
        degree_shift: i32,
        mut image: F,
    ) -> Result<Self>
    where
        F: FnMut(&BasisLabel) -> Result<F2Combination>,
    {
        let mut matrix = F2Matrix::zeros(target.dim(), source.dim());
        for (c, label) in source.labels().enumerate() {
            for l in image(label)?.iter() {
                let r = target
                    .index_of(l)
                    .ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
                matrix.toggle(r, c);
            }
        }
        Self::new(source, target, degree_shift, matrix)
    }

    pub fn source(&self) -> &GradedF2Space {
        &self.source
    }

    pub fn target(&self) -> &GradedF2Space {
        &self.target
    }

    pub fn degree_shift(&self) -> i32 {
        self.degree_shift
    }

    pub fn matrix(&self) -> &F2Matrix {
        &self.matrix
    }

    /// Image of the `j`-th source basis vector.
    pub fn column(&self, j: usize) -> F2Combination {
        self.target
            .from_column((0..self.target.dim()).map(|r| self.matrix.get(r, j)))
    }

    pub fn image_of(&self, label: &BasisLabel) -> Result<F2Combination> {
        let j = self
            .source
            .index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
        Ok(self.column(j))
    }

    pub fn apply(&self, v: &F2Combination) -> Result<F2Combination> {
        let mut out = F2Combination::zero();
        for l in v.iter() {
            out.add(&self.image_of(l)?);
        }
        Ok(out)
    }

    /// Restrict to a subset of source labels and project onto a subset of
    /// target labels; both subsets keep the order they are given in.
    pub fn restrict(&self, source: &GradedF2Space, target: &GradedF2Space) -> Result<F2LinearMap> {
        let lookup = |space: &GradedF2Space, sub: &GradedF2Space| -> Result<Vec<usize>> {
            sub.iter()
                .map(|(l, d)| match space.index_of(l) {
                    Some(i) if space.degree(i) == d => Ok(i),
                    _ => Err(Error::UnknownLabel(l.to_string())),
                })
                .collect()
        };
        let cols = lookup(&self.source, source)?;
        let rows = lookup(&self.target, target)?;
        F2LinearMap::new(
            source.clone(),
            target.clone(),
            self.degree_shift,
            self.matrix.select(&rows, &cols),
        )
    }

    /// First source label on which two maps with the same shapes differ.
    pub fn first_difference(
        &self,
        other: &F2LinearMap,
    ) -> Option<(BasisLabel, F2Combination, F2Combination)> {
        (0..self.source.dim()).find_map(|j| {
            let (a, b) = (self.column(j), other.column(j));
            (a != b).then(|| (self.source.label(j).clone(), a, b))
        })
    }
}

impl Serialize for F2LinearMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("F2LinearMap", 4)?;
        st.serialize_field("source", &self.source)?;
        st.serialize_field("target", &self.target)?;
        st.serialize_field("degree_shift", &self.degree_shift)?;
        st.serialize_field("matrix", &self.matrix.to_rows())?;
        st.end()
    }
}

/// `f ∘ g`.
pub fn compose(f: &F2LinearMap, g: &F2LinearMap) -> Result<F2LinearMap> {
    if g.target != f.source {
        return Err(Error::Shape {
            context: "compose",
            expected: format!("inner space of dimension {}", f.source.dim()),
            found: format!("dimension {}", g.target.dim()),
        });
    }
    let matrix = f.matrix.mul(&g.matrix)?;
    F2LinearMap::new(
        g.source.clone(),
        f.target.clone(),
        f.degree_shift + g.degree_shift,
        matrix,
    )
}

pub fn tensor(a: &F2LinearMap, b: &F2LinearMap) -> F2LinearMap {
    F2LinearMap::new(
        a.source.tensor(&b.source),
        a.target.tensor(&b.target),
        a.degree_shift + b.degree_shift,
        a.matrix.kron(&b.matrix),
    )
    .expect("Kronecker product of homogeneous maps is homogeneous")
}

/// The swap `V ⊗ W → W ⊗ V` for spaces whose labels are single factors.
pub fn swap_map(v: &GradedF2Space, w: &GradedF2Space) -> Result<F2LinearMap> {
    let source = v.tensor(w);
    let target = w.tensor(v);
    let (nv, nw) = (v.dim(), w.dim());
    let mut matrix = F2Matrix::zeros(target.dim(), source.dim());
    for i in 0..nv {
        for j in 0..nw {
            matrix.set(j * nv + i, i * nw + j, true);
        }
    }
    F2LinearMap::new(source, target, 0, matrix)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(spec: &[(&str, u8)]) -> GradedF2Space {
        GradedF2Space::new(
            spec.iter()
                .map(|(l, d)| (BasisLabel::named(*l), *d))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_composes_trivially() {
        let v = space(&[("p", 0), ("x", 1), ("y", 1)]);
        let f = F2LinearMap::new(
            v.clone(),
            v.clone(),
            0,
            F2Matrix::from_rows(&[[1u8, 0, 0], [0, 1, 1], [0, 0, 1]]).unwrap(),
        )
        .unwrap();
        let id = F2LinearMap::identity(v.clone());
        assert_eq!(compose(&id, &f).unwrap(), f);
        assert_eq!(compose(&f, &id).unwrap(), f);
        let zero = F2LinearMap::zero(v.clone(), v, 0);
        assert_eq!(compose(&f, &zero).unwrap(), zero);
    }

    #[test]
    fn degree_violation_is_rejected() {
        let v = space(&[("p", 0), ("x", 1)]);
        let m = F2Matrix::from_rows(&[[0u8, 1], [0, 0]]).unwrap();
        let err = F2LinearMap::new(v.clone(), v, 0, m).unwrap_err();
        assert!(matches!(err, Error::Degree { shift: 0, .. }));
    }

    #[test]
    fn shape_mismatch_in_compose() {
        let a = space(&[("p", 0)]);
        let b = space(&[("p", 0), ("q", 0)]);
        let f = F2LinearMap::identity(a);
        let g = F2LinearMap::identity(b);
        assert!(matches!(compose(&f, &g), Err(Error::Shape { .. })));
    }

    #[test]
    fn duplicate_labels_rejected() {
        let r = GradedF2Space::new(vec![
            (BasisLabel::named("x"), 0),
            (BasisLabel::named("x"), 1),
        ]);
        assert!(r.is_err());
        let r = GradedF2Space::new(vec![(BasisLabel::named("x"), 3)]);
        assert!(r.is_err());
    }

    #[test]
    fn identity_tensor_identity() {
        let a = space(&[("a", 0), ("b", 0)]);
        let b = space(&[("x", 0), ("y", 1), ("z", 1)]);
        let t = tensor(&F2LinearMap::identity(a.clone()), &F2LinearMap::identity(b.clone()));
        assert_eq!(t.matrix(), &F2Matrix::identity(6));
        assert_eq!(t.source(), &a.tensor(&b));
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(F2Matrix::identity(5).rank(), 5);
        assert_eq!(F2Matrix::zeros(4, 7).rank(), 0);
        let m = F2Matrix::from_rows(&[[1u8, 1, 0], [0, 1, 1], [1, 0, 1]]).unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn wide_matrices_cross_word_boundaries() {
        let mut m = F2Matrix::zeros(3, 130);
        m.set(0, 0, true);
        m.set(1, 64, true);
        m.set(2, 129, true);
        m.set(2, 0, true);
        assert_eq!(m.rank(), 3);
        assert_eq!(m.transpose().transpose(), m);
    }

    #[test]
    fn swap_is_an_involution() {
        let a = space(&[("a", 0), ("b", 1)]);
        let b = space(&[("x", 0), ("y", 1), ("z", 1)]);
        let s1 = swap_map(&a, &b).unwrap();
        let s2 = swap_map(&b, &a).unwrap();
        assert_eq!(compose(&s2, &s1).unwrap(), F2LinearMap::identity(a.tensor(&b)));
    }

    #[test]
    fn combination_addition_cancels() {
        let mut v = F2Combination::basis(BasisLabel::named("x"));
        v.add(&F2Combination::basis(BasisLabel::named("x")));
        assert!(v.is_zero());
        assert_eq!(v.to_string(), "0");
    }
}
