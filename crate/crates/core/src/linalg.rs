//! Exact linear algebra over a [`Field`]: dense matrices for module
//! computations and a column-sparse format for the bimodule complexes.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::field::Field;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols);
            data.extend(row);
        }
        Matrix { rows: r, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<F>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: F) {
        let k = i * self.cols + j;
        self.data[k] = self.data[k].clone() + v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, a.clone() * b.clone());
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut s = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s = s + a.clone() * b.clone();
                    }
                }
                s
            })
            .collect()
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv();
            for j in c..m.cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(r, j).clone();
                    if !v.is_zero() {
                        let nv = m.get(i, j).clone() - f.clone() * v;
                        m.set(i, j, nv);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.rref().1.len()
    }

    pub fn nullspace(&self) -> Nullspace<F> {
        Nullspace::of(self)
    }

    /// Some `x` with `self · x = b`, if the system is consistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn to_sparse(&self) -> SparseMatrix<F> {
        let mut s = SparseMatrix::new(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if !v.is_zero() {
                    s.push(i, j, v.clone());
                }
            }
        }
        s
    }
}

/// Basis of a kernel in the standard form: basis vector `k` has a `1` in free
/// column `free_cols[k]` and `0` in the other free columns.
#[derive(Clone, Debug)]
pub struct Nullspace<F> {
    pub basis: Vec<Vec<F>>,
    pub free_cols: Vec<usize>,
    pub ambient: usize,
}

impl<F: Field> Nullspace<F> {
    pub fn of(m: &Matrix<F>) -> Self {
        let n = m.cols();
        let (r, pivots) = if m.rows() == 0 {
            (m.clone(), Vec::new())
        } else {
            m.rref()
        };
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free_cols: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let basis = free_cols
            .iter()
            .map(|&f| {
                let mut v = vec![F::zero(); n];
                v[f] = F::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect();
        Nullspace {
            basis,
            free_cols,
            ambient: n,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a vector known to lie in the kernel.
    pub fn coords(&self, v: &[F]) -> Vec<F> {
        self.free_cols.iter().map(|&f| v[f].clone()).collect()
    }

    /// Vector with the given coordinates.
    pub fn combine(&self, c: &[F]) -> Vec<F> {
        let mut v = vec![F::zero(); self.ambient];
        for (b, x) in self.basis.iter().zip(c) {
            if x.is_zero() {
                continue;
            }
            for (vi, bi) in v.iter_mut().zip(b) {
                if !bi.is_zero() {
                    *vi = vi.clone() + x.clone() * bi.clone();
                }
            }
        }
        v
    }
}

/// A subspace given by spanning vectors, kept in reduced echelon form. Used
/// for quotients: vectors reduce to coordinates on the non-pivot positions.
#[derive(Clone, Debug)]
pub struct EchelonSpan<F> {
    rows: Vec<Vec<(usize, F)>>,
    pivot_of: HashMap<usize, usize>,
    ambient: usize,
}

impl<F: Field> EchelonSpan<F> {
    pub fn new(ambient: usize) -> Self {
        EchelonSpan {
            rows: Vec::new(),
            pivot_of: HashMap::new(),
            ambient,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_of.contains_key(&c)
    }

    /// Eliminates every pivot position from `v` (sparse, sorted by column).
    pub fn reduce(&self, v: &[(usize, F)]) -> Vec<(usize, F)> {
        let mut acc: std::collections::BTreeMap<usize, F> = v.iter().filter(|&(_, x)| !x.is_zero()).cloned().collect();
        loop {
            let hit = acc.iter().find(|(c, _)| self.pivot_of.contains_key(c)).map(|(c, x)| (*c, x.clone()));
            let Some((c, x)) = hit else { break };
            let row = &self.rows[self.pivot_of[&c]];
            for (j, r) in row {
                let e = acc.entry(*j).or_insert_with(F::zero);
                *e = e.clone() - x.clone() * r.clone();
                if e.is_zero() {
                    acc.remove(j);
                }
            }
        }
        acc.into_iter().collect()
    }

    /// Adds a vector; returns `false` if it was already in the span.
    ///
    /// `priority` decides which nonzero position becomes the pivot: the first
    /// position in `priority` order that is present.
    pub fn insert_with_priority(&mut self, v: &[(usize, F)], rank_of: &dyn Fn(usize) -> usize) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let (pc, px) = r
            .iter()
            .min_by_key(|(c, _)| rank_of(*c))
            .map(|(c, x)| (*c, x.clone()))
            .unwrap();
        let inv = px.inv();
        let new_row: Vec<(usize, F)> = r.into_iter().map(|(c, x)| (c, x * inv.clone())).collect();
        // keep rows fully reduced: clear the new pivot from existing rows
        for row in self.rows.iter_mut() {
            if let Some(pos) = row.iter().position(|(c, _)| *c == pc) {
                let f = row[pos].1.clone();
                let mut acc: std::collections::BTreeMap<usize, F> = row.drain(..).collect();
                for (j, x) in &new_row {
                    let e = acc.entry(*j).or_insert_with(F::zero);
                    *e = e.clone() - f.clone() * x.clone();
                    if e.is_zero() {
                        acc.remove(j);
                    }
                }
                *row = acc.into_iter().collect();
            }
        }
        self.pivot_of.insert(pc, self.rows.len());
        self.rows.push(new_row);
        true
    }

    pub fn insert(&mut self, v: &[(usize, F)]) -> bool {
        self.insert_with_priority(v, &|c| c)
    }
}

/// Column-sparse matrix used for complex differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<F> {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, F)>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Builds a matrix from per-column entry lists; duplicate rows are summed.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, F)>>) -> Self {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|c| {
                let mut acc: std::collections::BTreeMap<usize, F> = std::collections::BTreeMap::new();
                for (i, x) in c {
                    assert!(i < rows, "row index out of range");
                    let e = acc.entry(i).or_insert_with(F::zero);
                    *e = e.clone() + x;
                }
                acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
            })
            .collect();
        SparseMatrix { rows, cols, columns }
    }

    pub fn push(&mut self, i: usize, j: usize, v: F) {
        self.columns[j].push((i, v));
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, F)] {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.iter().all(|(_, x)| x.is_zero()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc: HashMap<usize, F> = HashMap::new();
                for (k, b) in col {
                    for (i, a) in &self.columns[*k] {
                        let e = acc.entry(*i).or_insert_with(F::zero);
                        *e = e.clone() + a.clone() * b.clone();
                    }
                }
                let mut v: Vec<(usize, F)> = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                v.sort_by_key(|(i, _)| *i);
                v
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            columns,
        }
    }

    pub fn to_dense(&self) -> Matrix<F> {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                m.add_at(*i, j, v.clone());
            }
        }
        m
    }

    /// Exact rank by sparse Gaussian elimination on the columns.
    pub fn rank(&self) -> usize {
        let mut span = EchelonSpan::new(self.rows);
        let mut rank = 0;
        for col in &self.columns {
            if span.insert_sparse(col) {
                rank += 1;
            }
        }
        rank
    }

    pub fn scale(&self, c: &F) -> Self {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .map(|col| col.iter().map(|(i, x)| (*i, x.clone() * c.clone())).filter(|(_, x)| !x.is_zero()).collect())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| {
                let mut v = a.clone();
                v.extend(b.iter().map(|(i, x)| (*i, -x.clone())));
                v
            })
            .collect();
        Self::from_columns(self.rows, columns)
    }

    /// Text dump: header `rows cols nnz`, then one `row col value` line per
    /// nonzero entry (0-based indices, column-major order).
    pub fn to_triplets(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} {}", self.rows, self.cols, self.nnz());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                let _ = writeln!(s, "{i} {j} {v}");
            }
        }
        s
    }
}

impl<F: Field> EchelonSpan<F> {
    /// Lightweight insertion used for rank: forward elimination only, pivot at
    /// the smallest remaining index.
    fn insert_sparse(&mut self, v: &[(usize, F)]) -> bool {
        let mut cur: Vec<(usize, F)> = v.iter().filter(|(_, x)| !x.is_zero()).cloned().collect();
        cur.sort_by_key(|(i, _)| *i);
        loop {
            let Some((lead, lx)) = cur.first().cloned() else {
                return false;
            };
            match self.pivot_of.get(&lead) {
                None => {
                    let inv = lx.inv();
                    let row: Vec<(usize, F)> = cur.into_iter().map(|(i, x)| (i, x * inv.clone())).collect();
                    self.pivot_of.insert(lead, self.rows.len());
                    self.rows.push(row);
                    return true;
                }
                Some(&r) => {
                    cur = axpy_sorted(&cur, &self.rows[r], &lx);
                }
            }
        }
    }
}

/// `a - f·b` for sorted sparse vectors.
fn axpy_sorted<F: Field>(a: &[(usize, F)], b: &[(usize, F)], f: &F) -> Vec<(usize, F)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = -(f.clone() * b[j].1.clone());
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = a[i].1.clone() - f.clone() * b[j].1.clone();
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
