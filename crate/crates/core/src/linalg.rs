//! Sparse exact linear algebra over `Rat`.
//!
//! Vectors are sorted `(index, value)` lists without explicit zeros; matrices
//! are stored by rows. Subspaces are passed around as matrices whose columns
//! form a basis.

use crate::rational::Rat;
use std::collections::BTreeMap;
use std::fmt;

pub type SparseVec = Vec<(usize, Rat)>;

/// `y + s * x`, merged.
pub fn axpy(y: &SparseVec, s: &Rat, x: &SparseVec) -> SparseVec {
    if s.is_zero() {
        return y.clone();
    }
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        let take_y = j >= x.len() || (i < y.len() && y[i].0 < x[j].0);
        let take_x = i >= y.len() || (j < x.len() && x[j].0 < y[i].0);
        if take_y {
            out.push(y[i].clone());
            i += 1;
        } else if take_x {
            out.push((x[j].0, s * &x[j].1));
            j += 1;
        } else {
            let v = &y[i].1 + &(s * &x[j].1);
            if !v.is_zero() {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(v: &SparseVec, s: &Rat) -> SparseVec {
    if s.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * s)).collect()
}

pub fn dot(x: &SparseVec, y: &SparseVec) -> Rat {
    let (mut i, mut j) = (0, 0);
    let mut acc = Rat::ZERO;
    while i < x.len() && j < y.len() {
        match x[i].0.cmp(&y[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += &x[i].1 * &y[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

pub fn lookup(v: &SparseVec, i: usize) -> Rat {
    match v.binary_search_by_key(&i, |e| e.0) {
        Ok(p) => v[p].1.clone(),
        Err(_) => Rat::ZERO,
    }
}

/// Builds a sorted vector from unsorted entries, summing repeats.
pub fn collect_vec<I: IntoIterator<Item = (usize, Rat)>>(it: I) -> SparseVec {
    let mut m: BTreeMap<usize, Rat> = BTreeMap::new();
    for (i, v) in it {
        if v.is_zero() {
            continue;
        }
        *m.entry(i).or_insert(Rat::ZERO) += v;
    }
    m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Dense scratch row for accumulating sparse sums.
struct Accum {
    vals: Vec<Rat>,
    hit: Vec<bool>,
    touched: Vec<usize>,
}

impl Accum {
    fn new(n: usize) -> Self {
        Accum { vals: vec![Rat::ZERO; n], hit: vec![false; n], touched: Vec::new() }
    }

    fn add(&mut self, i: usize, v: Rat) {
        if !self.hit[i] {
            self.hit[i] = true;
            self.touched.push(i);
            self.vals[i] = v;
        } else {
            self.vals[i] += v;
        }
    }

    fn drain(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.hit[i] = false;
            let v = std::mem::take(&mut self.vals[i]);
            if !v.is_zero() {
                out.push((i, v));
            }
        }
        self.touched.clear();
        out
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct SparseMat {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl fmt::Debug for SparseMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMat {}x{} [", self.nrows, self.ncols)?;
        for (i, r) in self.rows.iter().enumerate() {
            if !r.is_empty() {
                writeln!(f, "  {i}: {r:?}")?;
            }
        }
        write!(f, "]")
    }
}

impl SparseMat {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMat { nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Rat::ONE)
    }

    pub fn scalar(n: usize, s: &Rat) -> Self {
        let mut m = Self::zeros(n, n);
        if !s.is_zero() {
            for i in 0..n {
                m.rows[i].push((i, s.clone()));
            }
        }
        m
    }

    pub fn from_rows(ncols: usize, rows: Vec<SparseVec>) -> Self {
        debug_assert!(rows.iter().all(|r| r.last().is_none_or(|e| e.0 < ncols)));
        SparseMat { nrows: rows.len(), ncols, rows }
    }

    pub fn from_cols(nrows: usize, cols: &[SparseVec]) -> Self {
        Self::from_rows(nrows, cols.to_vec()).transpose()
    }

    pub fn from_entries<I: IntoIterator<Item = (usize, usize, Rat)>>(
        nrows: usize,
        ncols: usize,
        entries: I,
    ) -> Self {
        let mut per_row: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); nrows];
        for (i, j, v) in entries {
            assert!(i < nrows && j < ncols, "entry ({i},{j}) outside {nrows}x{ncols}");
            per_row[i].push((j, v));
        }
        let rows = per_row.into_iter().map(collect_vec).collect();
        SparseMat { nrows, ncols, rows }
    }

    pub fn from_dense(d: &[Vec<Rat>]) -> Self {
        let ncols = d.first().map_or(0, |r| r.len());
        let rows = d
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ncols);
                r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j, v.clone())).collect()
            })
            .collect();
        SparseMat { nrows: d.len(), ncols, rows }
    }

    pub fn from_i64(d: &[Vec<i64>]) -> Self {
        let d: Vec<Vec<Rat>> = d.iter().map(|r| r.iter().map(|&x| Rat::int(x)).collect()).collect();
        Self::from_dense(&d)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> Rat {
        lookup(&self.rows[i], j)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn to_dense(&self) -> Vec<Vec<Rat>> {
        let mut d = vec![vec![Rat::ZERO; self.ncols]; self.nrows];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                d[i][*j] = v.clone();
            }
        }
        d
    }

    pub fn transpose(&self) -> SparseMat {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                cols[*j].push((i, v.clone()));
            }
        }
        SparseMat { nrows: self.ncols, ncols: self.nrows, rows: cols }
    }

    pub fn col(&self, j: usize) -> SparseVec {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                let v = lookup(r, j);
                (!v.is_zero()).then_some((i, v))
            })
            .collect()
    }

    pub fn cols(&self) -> Vec<SparseVec> {
        self.transpose().rows
    }

    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.ncols, other.nrows, "matmul shape mismatch {:?} * {:?}", self.shape(), other.shape());
        let mut acc = Accum::new(other.ncols);
        let rows = self
            .rows
            .iter()
            .map(|r| {
                for (k, a) in r {
                    for (j, b) in &other.rows[*k] {
                        acc.add(*j, a * b);
                    }
                }
                acc.drain()
            })
            .collect();
        SparseMat { nrows: self.nrows, ncols: other.ncols, rows }
    }

    pub fn mul_vec(&self, x: &SparseVec) -> SparseVec {
        if let Some(last) = x.last() {
            assert!(last.0 < self.ncols, "vector longer than matrix width");
        }
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                let v = dot(r, x);
                (!v.is_zero()).then_some((i, v))
            })
            .collect()
    }

    fn zip(&self, other: &SparseMat, s: &Rat) -> SparseMat {
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| axpy(a, s, b)).collect();
        SparseMat { nrows: self.nrows, ncols: self.ncols, rows }
    }

    pub fn add(&self, other: &SparseMat) -> SparseMat {
        self.zip(other, &Rat::ONE)
    }

    pub fn sub(&self, other: &SparseMat) -> SparseMat {
        self.zip(other, &Rat::int(-1))
    }

    /// `self + s * other`
    pub fn add_scaled(&self, s: &Rat, other: &SparseMat) -> SparseMat {
        self.zip(other, s)
    }

    pub fn scale(&self, s: &Rat) -> SparseMat {
        SparseMat {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self.rows.iter().map(|r| scale(r, s)).collect(),
        }
    }

    pub fn hstack(blocks: &[&SparseMat]) -> SparseMat {
        let nrows = blocks.first().map_or(0, |b| b.nrows);
        let mut rows = vec![Vec::new(); nrows];
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.nrows, nrows, "hstack row mismatch");
            for (i, r) in b.rows.iter().enumerate() {
                rows[i].extend(r.iter().map(|(j, v)| (j + off, v.clone())));
            }
            off += b.ncols;
        }
        SparseMat { nrows, ncols: off, rows }
    }

    pub fn vstack(blocks: &[&SparseMat]) -> SparseMat {
        let ncols = blocks.first().map_or(0, |b| b.ncols);
        let mut rows = Vec::new();
        for b in blocks {
            assert_eq!(b.ncols, ncols, "vstack column mismatch");
            rows.extend(b.rows.iter().cloned());
        }
        SparseMat { nrows: rows.len(), ncols, rows }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(blocks: &[&SparseMat]) -> SparseMat {
        let ncols: usize = blocks.iter().map(|b| b.ncols).sum();
        let mut rows = Vec::new();
        let mut off = 0;
        for b in blocks {
            for r in &b.rows {
                rows.push(r.iter().map(|(j, v)| (j + off, v.clone())).collect());
            }
            off += b.ncols;
        }
        SparseMat { nrows: rows.len(), ncols, rows }
    }

    pub fn kron(&self, other: &SparseMat) -> SparseMat {
        let mut rows = Vec::with_capacity(self.nrows * other.nrows);
        for ra in &self.rows {
            for rb in &other.rows {
                let mut r = Vec::with_capacity(ra.len() * rb.len());
                for (ja, a) in ra {
                    for (jb, b) in rb {
                        r.push((ja * other.ncols + jb, a * b));
                    }
                }
                rows.push(r);
            }
        }
        SparseMat { nrows: self.nrows * other.nrows, ncols: self.ncols * other.ncols, rows }
    }

    pub fn select_rows(&self, idx: &[usize]) -> SparseMat {
        SparseMat { nrows: idx.len(), ncols: self.ncols, rows: idx.iter().map(|&i| self.rows[i].clone()).collect() }
    }

    /// Picks columns in the given order; `idx[k]` becomes column `k`.
    pub fn select_cols(&self, idx: &[usize]) -> SparseMat {
        let mut pos = vec![usize::MAX; self.ncols];
        for (k, &j) in idx.iter().enumerate() {
            pos[j] = k;
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out: SparseVec =
                    r.iter().filter(|(j, _)| pos[*j] != usize::MAX).map(|(j, v)| (pos[*j], v.clone())).collect();
                out.sort_unstable_by_key(|e| e.0);
                out
            })
            .collect();
        SparseMat { nrows: self.nrows, ncols: idx.len(), rows }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMat {
        self.select_rows(rows).select_cols(cols)
    }

    /// Re-embeds rows and columns into a larger index space.
    pub fn embed(&self, nrows: usize, ncols: usize, row_map: &[usize], col_map: &[usize]) -> SparseMat {
        let mut rows = vec![Vec::new(); nrows];
        for (i, r) in self.rows.iter().enumerate() {
            let mut out: SparseVec = r.iter().map(|(j, v)| (col_map[*j], v.clone())).collect();
            out.sort_unstable_by_key(|e| e.0);
            rows[row_map[i]] = out;
        }
        SparseMat { nrows, ncols, rows }
    }

    pub fn trace(&self) -> Rat {
        (0..self.nrows.min(self.ncols)).map(|i| self.get(i, i)).sum()
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.ncols);
        for r in &self.rows {
            e.insert(r.clone());
        }
        e.rank()
    }

    /// Basis of the null space, as columns.
    pub fn kernel(&self) -> SparseMat {
        let mut e = Echelon::new(self.ncols);
        for r in &self.rows {
            e.insert(r.clone());
        }
        e.reduce_fully();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !e.pivots.contains_key(c)).collect();
        let mut pos = vec![usize::MAX; self.ncols];
        for (k, &f) in free.iter().enumerate() {
            pos[f] = k;
        }
        let mut cols: Vec<SparseVec> = vec![Vec::new(); free.len()];
        for (&p, row) in &e.pivots {
            for (j, v) in row {
                if *j != p {
                    cols[pos[*j]].push((p, -v));
                }
            }
        }
        for (k, &f) in free.iter().enumerate() {
            cols[k].push((f, Rat::ONE));
            cols[k].sort_unstable_by_key(|e| e.0);
        }
        SparseMat::from_cols(self.ncols, &cols)
    }

    /// Reduced basis of the column space, as columns.
    pub fn column_space(&self) -> SparseMat {
        let mut e = Echelon::new(self.nrows);
        for c in self.cols() {
            e.insert(c);
        }
        e.reduce_fully();
        let cols: Vec<SparseVec> = e.pivots.into_values().collect();
        SparseMat::from_cols(self.nrows, &cols)
    }

    /// Indices of a maximal independent prefix-greedy set of columns.
    pub fn independent_cols(&self) -> Vec<usize> {
        let mut e = Echelon::new(self.nrows);
        let mut out = Vec::new();
        for (j, c) in self.cols().into_iter().enumerate() {
            if e.insert(c) {
                out.push(j);
            }
        }
        out
    }

    /// Some solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        let n = self.ncols;
        let mut e = Echelon::new(n + 1);
        for (i, r) in self.rows.iter().enumerate() {
            let mut row = r.clone();
            let bi = lookup(b, i);
            if !bi.is_zero() {
                row.push((n, bi));
            }
            e.insert(row);
        }
        if e.pivots.contains_key(&n) {
            return None;
        }
        e.reduce_fully();
        Some(
            e.pivots
                .iter()
                .filter_map(|(&p, row)| {
                    let v = lookup(row, n);
                    (!v.is_zero()).then_some((p, v))
                })
                .collect(),
        )
    }

    pub fn inverse(&self) -> Option<SparseMat> {
        if self.nrows != self.ncols {
            return None;
        }
        Coordinates::try_new(self).map(|c| c.transform)
    }
}

/// Incremental row echelon form.
///
/// Each stored row has a leading 1 at its key column and no entries before it.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduces `row` against the stored pivots.
    pub fn reduce(&self, mut row: SparseVec) -> SparseVec {
        let mut start = 0;
        while start < row.len() {
            let (lead, coef) = row[start].clone();
            match self.pivots.get(&lead) {
                Some(p) => row = axpy(&row, &-coef, p),
                None => start += 1,
            }
        }
        row
    }

    /// Returns whether the row was independent of those already inserted.
    pub fn insert(&mut self, row: SparseVec) -> bool {
        let mut row = row;
        loop {
            let Some((lead, coef)) = row.first().cloned() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(p) => row = axpy(&row, &-coef, p),
                None => {
                    let inv = coef.recip();
                    let row = scale(&row, &inv);
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    pub fn contains(&self, row: &SparseVec) -> bool {
        self.reduce(row.clone()).is_empty()
    }

    /// Back-substitutes so that pivot columns vanish from every other row.
    pub fn reduce_fully(&mut self) {
        let keys: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for &p in &keys {
            let prow = self.pivots[&p].clone();
            let others: Vec<usize> = self.pivots.range(..p).map(|(k, _)| *k).collect();
            for q in others {
                let c = lookup(&self.pivots[&q], p);
                if !c.is_zero() {
                    let r = axpy(&self.pivots[&q], &-c, &prow);
                    self.pivots.insert(q, r);
                }
            }
        }
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    pub fn basis_rows(&self) -> Vec<SparseVec> {
        self.pivots.values().cloned().collect()
    }
}

/// Coordinates with respect to a basis given as the columns of a matrix.
#[derive(Clone, Debug)]
pub struct Coordinates {
    basis: SparseMat,
    // coords = transform * v for v in the span
    transform: SparseMat,
}

impl Coordinates {
    /// Panics if the columns are dependent.
    pub fn new(basis: &SparseMat) -> Self {
        Self::try_new(basis).expect("basis columns are dependent")
    }

    pub fn try_new(basis: &SparseMat) -> Option<Self> {
        let (n, k) = basis.shape();
        // Row-reduce the rows of `basis`, tracking which original rows feed each pivot row.
        let mut pivots: BTreeMap<usize, (SparseVec, SparseVec)> = BTreeMap::new();
        for (i, r) in basis.rows.iter().enumerate() {
            if pivots.len() == k {
                break;
            }
            let mut row = r.clone();
            let mut track: SparseVec = vec![(i, Rat::ONE)];
            loop {
                let Some((lead, coef)) = row.first().cloned() else { break };
                match pivots.get(&lead) {
                    Some((p, t)) => {
                        row = axpy(&row, &-&coef, p);
                        track = axpy(&track, &-&coef, t);
                    }
                    None => {
                        let inv = coef.recip();
                        pivots.insert(lead, (scale(&row, &inv), scale(&track, &inv)));
                        break;
                    }
                }
            }
        }
        if pivots.len() != k {
            return None;
        }
        let keys: Vec<usize> = pivots.keys().rev().copied().collect();
        for &p in &keys {
            let (prow, ptrack) = pivots[&p].clone();
            let others: Vec<usize> = pivots.range(..p).map(|(q, _)| *q).collect();
            for q in others {
                let c = lookup(&pivots[&q].0, p);
                if !c.is_zero() {
                    let (r, t) = pivots[&q].clone();
                    pivots.insert(q, (axpy(&r, &-&c, &prow), axpy(&t, &-&c, &ptrack)));
                }
            }
        }
        let rows: Vec<SparseVec> = pivots.into_values().map(|(_, t)| t).collect();
        Some(Coordinates { basis: basis.clone(), transform: SparseMat::from_rows(n, rows) })
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn ambient(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &SparseMat {
        &self.basis
    }

    /// Coordinates of `v`, or `None` if `v` is outside the span.
    pub fn coords(&self, v: &SparseVec) -> Option<SparseVec> {
        let c = self.transform.mul_vec(v);
        (self.basis.mul_vec(&c) == *v).then_some(c)
    }

    /// Coordinates of every column of `m`; `None` if any column leaves the span.
    pub fn coords_of_cols(&self, m: &SparseMat) -> Option<SparseMat> {
        let c = self.transform.mul(m);
        (self.basis.mul(&c) == *m).then_some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(d: &[&[i64]]) -> SparseMat {
        SparseMat::from_i64(&d.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn kernel_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.ncols(), 1);
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), SparseMat::identity(2));
        let x = a.solve(&vec![(0, Rat::int(3)), (1, Rat::int(2))]).unwrap();
        assert_eq!(x, vec![(0, Rat::int(1)), (1, Rat::int(1))]);
        let s = m(&[&[1, 1], &[1, 1]]);
        assert!(s.solve(&vec![(0, Rat::ONE)]).is_none());
        assert!(s.inverse().is_none());
    }

    #[test]
    fn coordinates_reject_outside() {
        let b = m(&[&[1, 0], &[0, 1], &[1, 1]]);
        let c = Coordinates::new(&b);
        assert_eq!(c.coords(&vec![(0, Rat::int(2)), (1, Rat::int(3)), (2, Rat::int(5))]), Some(vec![(0, Rat::int(2)), (1, Rat::int(3))]));
        assert_eq!(c.coords(&vec![(2, Rat::ONE)]), None);
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..4, c), r))
    }

    proptest! {
        #[test]
        fn rank_nullity(d in small_matrix()) {
            let a = SparseMat::from_i64(&d);
            let k = a.kernel();
            prop_assert!(a.mul(&k).is_zero());
            prop_assert_eq!(k.rank(), k.ncols());
            prop_assert_eq!(a.rank() + k.ncols(), a.ncols());
            prop_assert_eq!(a.rank(), a.transpose().rank());
            let cs = a.column_space();
            prop_assert_eq!(cs.ncols(), a.rank());
            // every column of `a` lies in the computed column space
            let c = Coordinates::new(&cs);
            prop_assert!(c.coords_of_cols(&a).is_some());
        }

        #[test]
        fn solve_finds_solutions(d in small_matrix(), seed in prop::collection::vec(-3i64..4, 6)) {
            let a = SparseMat::from_i64(&d);
            let x: SparseVec = (0..a.ncols()).filter(|&j| seed[j] != 0).map(|j| (j, Rat::int(seed[j]))).collect();
            let b = a.mul_vec(&x);
            let y = a.solve(&b).expect("consistent system");
            prop_assert_eq!(a.mul_vec(&y), b);
        }
    }
}
