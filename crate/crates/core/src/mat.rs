//! Dense matrices over `F_q`, row spaces, Gaussian binomials and canonical
//! enumeration of subspaces.
//!
//! Vectors are rows and maps act on the right (`x -> xM`).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, PartialEq, Eq)]
pub struct MatFq {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
    field: FieldCtx,
}

/// Reduces `data` (row-major, `rows x cols`) to reduced row echelon form in
/// place and returns the pivot columns.
pub(crate) fn rref_in_place(f: &FieldCtx, data: &mut [u32], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(sel) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if sel != r {
            for j in 0..cols {
                data.swap(sel * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(data[r * cols + c]).expect("pivot is nonzero");
        if inv != 1 {
            for j in c..cols {
                data[r * cols + j] = f.mul(data[r * cols + j], inv);
            }
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = data[i * cols + c];
            if factor == 0 {
                continue;
            }
            let nf = f.neg(factor);
            for j in c..cols {
                let v = data[r * cols + j];
                if v != 0 {
                    data[i * cols + j] = f.add(data[i * cols + j], f.mul(nf, v));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl MatFq {
    pub fn zeros(field: &FieldCtx, rows: usize, cols: usize) -> Self {
        MatFq { rows, cols, data: vec![0; rows * cols], field: field.clone() }
    }

    pub fn identity(field: &FieldCtx, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_codes(field: &FieldCtx, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(&bad) = data.iter().find(|&&v| v >= field.order()) {
            return Err(Error::pre(format!("entry {bad} out of range")));
        }
        Ok(MatFq { rows, cols, data, field: field.clone() })
    }

    pub fn from_rows(field: &FieldCtx, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::shape("ragged rows"));
        }
        Self::from_codes(field, rows.len(), cols, rows.concat())
    }

    pub fn from_fn(field: &FieldCtx, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        MatFq { rows, cols, data, field: field.clone() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u32> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn elem(&self, i: usize, j: usize) -> FieldElem {
        self.field.elem(self.get(i, j)).expect("entries are in range")
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.shape() != other.shape() {
            return Err(Error::shape(format!("{:?} vs {:?}", self.shape(), other.shape())));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| self.field.add(a, b)).collect();
        Ok(MatFq { data, ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| self.field.sub(a, b)).collect();
        Ok(MatFq { data, ..self.clone() })
    }

    pub fn neg(&self) -> Self {
        self.map_codes(|v| self.field.neg(v))
    }

    pub fn scale(&self, c: u32) -> Self {
        self.map_codes(|v| self.field.mul(c, v))
    }

    pub fn map_codes(&self, mut f: impl FnMut(u32) -> u32) -> Self {
        MatFq { data: self.data.iter().map(|&v| f(v)).collect(), ..self.clone() }
    }

    /// Entrywise `x -> x^{p^j}`.
    pub fn frobenius(&self, j: u32) -> Self {
        self.map_codes(|v| self.field.frob(v, j))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::shape(format!(
                "cannot multiply {:?} by {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * other.cols + j;
                        out.data[idx] = f.add(out.data[idx], f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, x: &[u32]) -> Vec<u32> {
        assert_eq!(x.len(), self.rows, "vector length");
        let f = &self.field;
        let mut out = vec![0u32; self.cols];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = self.get(i, j);
                if b != 0 {
                    *o = f.add(*o, f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn rref(&self) -> (MatFq, Vec<usize>) {
        let mut m = self.clone();
        let piv = rref_in_place(&self.field, &mut m.data, self.rows, self.cols);
        (m, piv)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Left nullspace `{x : xM = 0}` as the rows of the result, or right
    /// nullspace `{y : My = 0}` as its columns.
    pub fn nullspace(&self, side: Side) -> MatFq {
        match side {
            Side::Left => self.transpose().nullspace(Side::Right).transpose(),
            Side::Right => {
                let (r, piv) = self.rref();
                let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
                let f = &self.field;
                let mut out = Self::zeros(f, self.cols, free.len());
                for (k, &fc) in free.iter().enumerate() {
                    out.set(fc, k, 1);
                    for (pi, &pc) in piv.iter().enumerate() {
                        out.set(pc, k, f.neg(r.get(pi, fc)));
                    }
                }
                out
            }
        }
    }

    /// Some `x` with `xM = b`, free variables set to zero.
    pub fn solve_row(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.cols, "right-hand side length");
        let (r, c) = (self.cols, self.rows + 1);
        let mut aug = Self::from_fn(&self.field, r, c, |i, j| if j < self.rows { self.get(j, i) } else { b[i] });
        let piv = rref_in_place(&self.field, &mut aug.data, r, c);
        if piv.last() == Some(&self.rows) {
            return None;
        }
        let mut x = vec![0; self.rows];
        for (k, &pc) in piv.iter().enumerate() {
            x[pc] = aug.get(k, self.rows);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<MatFq> {
        if !self.is_square() {
            return Err(Error::shape("inverse of a non-square matrix"));
        }
        let n = self.rows;
        let mut aug = Self::from_fn(&self.field, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j)
            } else {
                u32::from(j - n == i)
            }
        });
        let piv = rref_in_place(&self.field, &mut aug.data, n, 2 * n);
        if piv.len() < n || piv[n - 1] >= n {
            return Err(Error::Singular);
        }
        Ok(Self::from_fn(&self.field, n, n, |i, j| aug.get(i, n + j)))
    }

    /// Matrix over `F_p` of the same right action, with coordinates of
    /// `F_{p^e}` taken in `basis` (an `F_p`-basis).
    pub fn expand_prime(&self, basis: &[u32]) -> Result<MatFq> {
        let f = &self.field;
        let e = f.degree() as usize;
        let fp = f.prime_subfield();
        if basis.len() != e {
            return Err(Error::DependentBasis);
        }
        let bmat = MatFq::from_rows(&fp, &basis.iter().map(|&b| f.digits(b)).collect::<Vec<_>>())?;
        let binv = bmat.inverse().map_err(|_| Error::DependentBasis)?;
        // coordinates of y in the basis: digits(y) * B^{-1}
        let mut out = MatFq::zeros(&fp, self.rows * e, self.cols * e);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = self.get(r, c);
                for (i, &b) in basis.iter().enumerate() {
                    let v = binv.apply_row(&f.digits(f.mul(b, a)));
                    for (j, &x) in v.iter().enumerate() {
                        out.set(r * e + i, c * e + j, x);
                    }
                }
            }
        }
        Ok(out)
    }

    /// [`expand_prime`](Self::expand_prime) in the polynomial basis.
    pub fn expand_prime_poly(&self) -> MatFq {
        let f = &self.field;
        let e = f.degree() as usize;
        if e == 1 {
            return self.clone();
        }
        let fp = f.prime_subfield();
        let basis = f.polynomial_basis();
        let mut out = MatFq::zeros(&fp, self.rows * e, self.cols * e);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = self.get(r, c);
                if a == 0 {
                    continue;
                }
                for (i, &b) in basis.iter().enumerate() {
                    for (j, d) in f.digits(f.mul(b, a)).into_iter().enumerate() {
                        out.set(r * e + i, c * e + j, d);
                    }
                }
            }
        }
        out
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::shape("hstack row mismatch"));
        }
        Ok(Self::from_fn(&self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        }))
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::shape("vstack column mismatch"));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(MatFq { rows: self.rows + other.rows, cols: self.cols, data, field: self.field.clone() })
    }

    pub fn submatrix(&self, rows: core::ops::Range<usize>, cols: core::ops::Range<usize>) -> Self {
        Self::from_fn(&self.field, rows.len(), cols.len(), |i, j| self.get(rows.start + i, cols.start + j))
    }
}

impl fmt::Debug for MatFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// A subspace of `F_q^N` held as its reduced row echelon basis, which is a
/// canonical form: two row spaces are equal iff their bases are equal.
#[derive(Clone, PartialEq, Eq)]
pub struct RowSpace {
    field: FieldCtx,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(field: &FieldCtx, ambient: usize) -> Self {
        RowSpace { field: field.clone(), ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors<'a>(field: &FieldCtx, ambient: usize, vs: impl IntoIterator<Item = &'a [u32]>) -> Self {
        let mut s = Self::new(field, ambient);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection onto the span along the pivot coordinates.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient, "vector length");
        let f = &self.field;
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = w[pc];
            if c == 0 {
                continue;
            }
            let nc = f.neg(c);
            for (x, &r) in w.iter_mut().zip(row) {
                if r != 0 {
                    *x = f.add(*x, f.mul(nc, r));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let f = self.field.clone();
        let inv = f.inv(w[pc]).expect("nonzero");
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                let nc = f.neg(c);
                for (x, &y) in row.iter_mut().zip(&w) {
                    if y != 0 {
                        *x = f.add(*x, f.mul(nc, y));
                    }
                }
            }
        }
        let pos = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(pos, pc);
        self.rows.insert(pos, w);
        true
    }

    pub fn is_subspace_of(&self, other: &RowSpace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    pub fn sum(&self, other: &RowSpace) -> RowSpace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r);
        }
        s
    }

    pub fn intersection(&self, other: &RowSpace) -> RowSpace {
        let f = &self.field;
        let mut out = RowSpace::new(f, self.ambient);
        if self.rows.is_empty() || other.rows.is_empty() {
            return out;
        }
        // a A = b B  <=>  (a, -b) [A; B] = 0
        let neg: Vec<Vec<u32>> = other.rows.iter().map(|r| r.iter().map(|&x| f.neg(x)).collect()).collect();
        let stacked = MatFq::from_rows(f, &self.rows)
            .and_then(|a| a.vstack(&MatFq::from_rows(f, &neg)?))
            .expect("rectangular");
        let ns = stacked.nullspace(Side::Left);
        let a = MatFq::from_rows(f, &self.rows).expect("rectangular");
        for k in 0..ns.rows() {
            out.insert(&a.apply_row(&ns.row(k)[..self.rows.len()]));
        }
        out
    }

    /// Orthogonal complement under the standard dot product.
    pub fn orthogonal(&self) -> RowSpace {
        let f = &self.field;
        if self.rows.is_empty() {
            let mut s = RowSpace::new(f, self.ambient);
            for i in 0..self.ambient {
                let mut e = vec![0; self.ambient];
                e[i] = 1;
                s.insert(&e);
            }
            return s;
        }
        let m = MatFq::from_rows(f, &self.rows).expect("rectangular");
        let ns = m.nullspace(Side::Right).transpose();
        RowSpace::from_vectors(f, self.ambient, (0..ns.rows()).map(|i| ns.row(i)))
    }
}

impl fmt::Debug for RowSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RowSpace(dim {} in {}: {:?})", self.dim(), self.ambient, self.rows)
    }
}

/// `[m choose j]_q`.
pub fn gaussian_binomial(m: u32, j: u32, q: u64) -> Result<BigUint> {
    if j > m {
        return Err(Error::pre(format!("j = {j} exceeds m = {m}")));
    }
    if q < 2 {
        return Err(Error::pre("q must be at least 2"));
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..j {
        num *= q.pow(m - i) - BigUint::one();
        den *= q.pow(j - i) - BigUint::one();
    }
    Ok(num / den)
}

/// All `l`-dimensional subspaces of `F_q^m`, each emitted once as its RREF
/// basis matrix. Pivot sets come in lexicographic order; within a pivot set
/// the free entries count up like a base-`q` number, last entry fastest.
#[derive(Clone)]
pub struct SubspaceIter {
    field: FieldCtx,
    m: usize,
    l: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    counter: Vec<u32>,
    done: bool,
}

pub fn subspaces(m: usize, l: usize, field: &FieldCtx) -> Result<SubspaceIter> {
    SubspaceIter::new(m, l, field)
}

impl SubspaceIter {
    pub fn new(m: usize, l: usize, field: &FieldCtx) -> Result<Self> {
        if l == 0 || l > m {
            return Err(Error::pre(format!("subspace dimension {l} outside 1..={m}")));
        }
        let pivots: Vec<usize> = (0..l).collect();
        let free = Self::free_positions(m, &pivots);
        Ok(SubspaceIter {
            field: field.clone(),
            m,
            l,
            counter: vec![0; free.len()],
            free,
            pivots,
            done: false,
        })
    }

    fn free_positions(m: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &pc) in pivots.iter().enumerate() {
            for j in pc + 1..m {
                if !pivots.contains(&j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Total number of subspaces, `[m choose l]_q`.
    pub fn total(&self) -> BigUint {
        gaussian_binomial(self.m as u32, self.l as u32, self.field.order() as u64).expect("validated")
    }

    fn next_combination(&mut self) -> bool {
        let (m, l) = (self.m, self.l);
        let mut i = l;
        while i > 0 {
            i -= 1;
            if self.pivots[i] < m - l + i {
                self.pivots[i] += 1;
                for k in i + 1..l {
                    self.pivots[k] = self.pivots[k - 1] + 1;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for SubspaceIter {
    type Item = MatFq;

    fn next(&mut self) -> Option<MatFq> {
        if self.done {
            return None;
        }
        let mut mat = MatFq::zeros(&self.field, self.l, self.m);
        for (i, &pc) in self.pivots.iter().enumerate() {
            mat.set(i, pc, 1);
        }
        for (&(i, j), &v) in self.free.iter().zip(&self.counter) {
            mat.set(i, j, v);
        }
        // advance
        let q = self.field.order();
        let mut k = self.counter.len();
        let mut carried = true;
        while carried && k > 0 {
            k -= 1;
            self.counter[k] += 1;
            if self.counter[k] == q {
                self.counter[k] = 0;
            } else {
                carried = false;
            }
        }
        if carried {
            if self.next_combination() {
                self.free = Self::free_positions(self.m, &self.pivots);
                self.counter = vec![0; self.free.len()];
            } else {
                self.done = true;
            }
        }
        Some(mat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use alloc::collections::BTreeSet;

    fn f2() -> FieldCtx {
        make_field(2, 1, None).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f3 = make_field(3, 1, None).unwrap();
        assert_eq!(MatFq::identity(&f3, 4).rank(), 4);
        assert_eq!(MatFq::zeros(&f2(), 2, 4).rank(), 0);
        let m = MatFq::from_rows(&f2(), &[vec![1, 0, 1, 0], vec![0, 0, 0, 0]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn intersection_by_enumeration() {
        let f = make_field(3, 1, None).unwrap();
        let x = RowSpace::from_vectors(&f, 3, [&[1u32, 0, 1][..], &[0, 1, 1]]);
        let y = RowSpace::from_vectors(&f, 3, [&[1u32, 1, 0][..], &[0, 0, 1]]);
        let z = x.intersection(&y);
        let mut common = 0;
        for a in 0..27u32 {
            let v = [a % 3, a / 3 % 3, a / 9];
            if x.contains(&v) && y.contains(&v) {
                common += 1;
                assert!(z.contains(&v));
            }
        }
        assert_eq!(3usize.pow(z.dim() as u32), common);
        assert_eq!(z.dim() + x.sum(&y).dim(), 4);
    }

    #[test]
    fn rank_by_row_span_enumeration() {
        // oracle: the row span of an r x c matrix over F_2 has 2^rank elements
        let f = f2();
        let m = MatFq::from_rows(&f, &[vec![1, 1, 0, 1], vec![0, 1, 1, 0], vec![1, 0, 1, 1]]).unwrap();
        let mut span = BTreeSet::new();
        for mask in 0u32..8 {
            let mut v = [0u32; 4];
            for i in 0..3 {
                if mask >> i & 1 == 1 {
                    for j in 0..4 {
                        v[j] ^= m.get(i, j);
                    }
                }
            }
            span.insert(v);
        }
        assert_eq!(1usize << m.rank(), span.len());
    }

    #[test]
    fn nullspace_examples() {
        let f = make_field(3, 1, None).unwrap();
        assert_eq!(MatFq::identity(&f, 3).nullspace(Side::Right).cols(), 0);
        assert_eq!(MatFq::identity(&f, 3).nullspace(Side::Left).rows(), 0);
        let z = MatFq::zeros(&f, 2, 3);
        assert_eq!(z.nullspace(Side::Right).shape(), (3, 3));
        assert_eq!(z.nullspace(Side::Left).shape(), (2, 2));
        let m = MatFq::from_rows(&f, &[vec![1, 2, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        let ns = m.nullspace(Side::Right);
        assert_eq!(ns.cols(), 3 - m.rank());
        assert!(m.mul(&ns).unwrap().is_zero());
        let ln = m.nullspace(Side::Left);
        assert!(ln.mul(&m).unwrap().is_zero());
    }

    #[test]
    fn inverse_roundtrip() {
        let f = make_field(5, 1, None).unwrap();
        let m = MatFq::from_rows(&f, &[vec![1, 2], vec![3, 4]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), MatFq::identity(&f, 2));
        let s = MatFq::from_rows(&f, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(s.inverse().unwrap_err(), Error::Singular);
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(4, 3, 3).unwrap(), BigUint::from(40u32));
        assert_eq!(gaussian_binomial(7, 0, 5).unwrap(), BigUint::from(1u32));
        assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), BigUint::from(35u32));
        assert!(gaussian_binomial(2, 3, 2).is_err());
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for q in [2u32, 3, 4] {
            let f = if q == 4 { make_field(2, 2, None).unwrap() } else { make_field(q, 1, None).unwrap() };
            for m in 1..=5usize {
                if q == 4 && m == 5 {
                    continue;
                }
                for l in 1..=m {
                    let it = subspaces(m, l, &f).unwrap();
                    let total = it.total();
                    let mut seen = BTreeSet::new();
                    for mat in it {
                        let (r, _) = mat.rref();
                        assert_eq!(r, mat, "emitted matrix is in RREF");
                        assert_eq!(mat.rank(), l);
                        assert!(seen.insert(mat.data().to_vec()));
                    }
                    assert_eq!(BigUint::from(seen.len()), total, "q={q} m={m} l={l}");
                }
            }
        }
    }

    #[test]
    fn subspace_listing_m2_l1() {
        let mats: Vec<Vec<u32>> = subspaces(2, 1, &f2()).unwrap().map(|m| m.data().to_vec()).collect();
        assert_eq!(mats, vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
        assert_eq!(subspaces(3, 3, &f2()).unwrap().count(), 1);
        assert!(subspaces(3, 0, &f2()).is_err());
    }

    #[test]
    fn expand_prime_examples() {
        let f4 = make_field(2, 2, None).unwrap();
        let a = MatFq::from_codes(&f4, 1, 1, vec![2]).unwrap();
        let ex = a.expand_prime(&[1, 2]).unwrap();
        assert_eq!(ex.data(), &[0, 1, 1, 1]);
        assert_eq!(ex.rank(), 2);
        assert_eq!(a.expand_prime_poly(), ex);
        assert_eq!(a.expand_prime(&[1, 1]).unwrap_err(), Error::DependentBasis);
        let f3 = make_field(3, 1, None).unwrap();
        let m = MatFq::from_rows(&f3, &[vec![1, 2]]).unwrap();
        assert_eq!(m.expand_prime(&[1]).unwrap(), m);
    }

    #[test]
    fn row_space_canonical() {
        let f = f2();
        let a = RowSpace::from_vectors(&f, 3, [&[1u32, 1, 0][..], &[0, 1, 1][..]]);
        let b = RowSpace::from_vectors(&f, 3, [&[1u32, 0, 1][..], &[1, 1, 0][..], &[0, 1, 1][..]]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&[1, 0, 1]));
        assert!(!a.contains(&[1, 0, 0]));
        assert_eq!(a.orthogonal().basis(), &[vec![1, 1, 1]]);
    }
}
