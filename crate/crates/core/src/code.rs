//! Rank-metric codes and their metric data.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::enumerate::{self, Span};
use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::mat::{gaussian_binomial, MatFq, RowSpace};

/// Enumeration guards and sampling settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Most codewords, pairs, points or subspaces a sweep may visit.
    pub max_enum: u64,
    /// Largest algebra classified by visiting every element.
    pub exhaustive_bound: u64,
    /// Seed for sampled classification.
    pub seed: u64,
    /// Number of random elements tested in sampled classification.
    pub samples: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_enum: 1 << 24, exhaustive_bound: 1 << 20, seed: 0, samples: 4096 }
    }
}

impl Limits {
    pub fn with_max_enum(max_enum: u64) -> Self {
        Limits { max_enum, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeBody {
    /// An ordered `F_q`-basis; the order is the presentation used by the
    /// opposite operation.
    Linear(Vec<MatFq>),
    /// Pairwise distinct matrices.
    Explicit(Vec<MatFq>),
}

#[derive(Debug, Clone)]
pub struct RankCode {
    field: FieldCtx,
    m: usize,
    n: usize,
    body: CodeBody,
}

/// `A_0, ..., A_{min(m,n)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightTable {
    pub counts: Vec<BigUint>,
}

impl WeightTable {
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    pub fn get(&self, j: usize) -> BigUint {
        self.counts.get(j).cloned().unwrap_or_default()
    }

    /// Smallest nonzero rank that occurs.
    pub fn min_nonzero(&self) -> Option<usize> {
        (1..self.counts.len()).find(|&j| !self.counts[j].is_zero())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MrdReport {
    pub mrd: bool,
    pub d: usize,
    pub bound: BigUint,
    pub cardinality: BigUint,
}

fn check_shape(field: &FieldCtx, m: usize, n: usize, mats: &[MatFq]) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::shape("codes need m, n >= 1"));
    }
    for x in mats {
        if x.field() != field {
            return Err(Error::FieldMismatch);
        }
        if x.shape() != (m, n) {
            return Err(Error::shape(format!("expected {m}x{n}, got {:?}", x.shape())));
        }
    }
    Ok(())
}

impl RankCode {
    /// A linear code from an independent basis.
    pub fn linear(field: &FieldCtx, m: usize, n: usize, basis: Vec<MatFq>) -> Result<Self> {
        check_shape(field, m, n, &basis)?;
        let space = RowSpace::from_vectors(field, m * n, basis.iter().map(|b| b.data()));
        if space.dim() != basis.len() {
            return Err(Error::DependentBasis);
        }
        Ok(RankCode { field: field.clone(), m, n, body: CodeBody::Linear(basis) })
    }

    /// The span of `gens`, keeping (in order) those that enlarge it.
    pub fn from_span(field: &FieldCtx, m: usize, n: usize, gens: impl IntoIterator<Item = MatFq>) -> Result<Self> {
        let mut space = RowSpace::new(field, m * n);
        let mut basis = Vec::new();
        for g in gens {
            check_shape(field, m, n, core::slice::from_ref(&g))?;
            if space.insert(g.data()) {
                basis.push(g);
            }
        }
        Ok(RankCode { field: field.clone(), m, n, body: CodeBody::Linear(basis) })
    }

    pub fn explicit(field: &FieldCtx, m: usize, n: usize, mats: Vec<MatFq>) -> Result<Self> {
        check_shape(field, m, n, &mats)?;
        let mut seen = BTreeSet::new();
        for x in &mats {
            if !seen.insert(x.data()) {
                return Err(Error::DuplicateCodeword);
            }
        }
        Ok(RankCode { field: field.clone(), m, n, body: CodeBody::Explicit(mats) })
    }

    /// All of `F_q^{m x n}`, basis in row-major unit order.
    pub fn full_space(field: &FieldCtx, m: usize, n: usize) -> Self {
        let basis = (0..m * n)
            .map(|k| MatFq::from_fn(field, m, n, |i, j| u32::from(i * n + j == k)))
            .collect();
        RankCode { field: field.clone(), m, n, body: CodeBody::Linear(basis) }
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn body(&self) -> &CodeBody {
        &self.body
    }

    pub fn is_linear(&self) -> bool {
        matches!(self.body, CodeBody::Linear(_))
    }

    /// The stored matrices: basis for linear codes, elements otherwise.
    pub fn matrices(&self) -> &[MatFq] {
        match &self.body {
            CodeBody::Linear(b) | CodeBody::Explicit(b) => b,
        }
    }

    pub fn basis(&self) -> Option<&[MatFq]> {
        match &self.body {
            CodeBody::Linear(b) => Some(b),
            CodeBody::Explicit(_) => None,
        }
    }

    pub fn require_basis(&self) -> Result<&[MatFq]> {
        self.basis().ok_or(Error::NotLinear)
    }

    /// Dimension over `F_q` (linear codes only).
    pub fn dim(&self) -> Option<usize> {
        self.basis().map(<[MatFq]>::len)
    }

    pub fn cardinality(&self) -> BigUint {
        match &self.body {
            CodeBody::Linear(b) => BigUint::from(self.field.order()).pow(b.len() as u32),
            CodeBody::Explicit(x) => BigUint::from(x.len()),
        }
    }

    /// The span of a linear code as flattened row-major vectors.
    pub fn space(&self) -> Result<RowSpace> {
        let b = self.require_basis()?;
        Ok(RowSpace::from_vectors(&self.field, self.m * self.n, b.iter().map(|x| x.data())))
    }

    pub fn contains(&self, x: &MatFq) -> bool {
        if x.field() != &self.field || x.shape() != self.shape() {
            return false;
        }
        match &self.body {
            CodeBody::Linear(_) => self.space().expect("linear").contains(x.data()),
            CodeBody::Explicit(v) => v.iter().any(|y| y == x),
        }
    }

    /// Set equality.
    pub fn same_code(&self, other: &RankCode) -> bool {
        if self.field != other.field || self.shape() != other.shape() || self.cardinality() != other.cardinality() {
            return false;
        }
        match (&self.body, &other.body) {
            (CodeBody::Linear(_), CodeBody::Linear(_)) => self.space().ok() == other.space().ok(),
            (_, CodeBody::Explicit(v)) => v.iter().all(|x| self.contains(x)),
            (CodeBody::Explicit(v), _) => v.iter().all(|x| other.contains(x)),
        }
    }

    /// Every codeword; linear codes in lexicographic coefficient order.
    pub fn codewords(&self, limits: &Limits) -> Result<Vec<MatFq>> {
        match &self.body {
            CodeBody::Explicit(v) => Ok(v.clone()),
            CodeBody::Linear(b) => {
                let q = self.field.order();
                let total = enumerate::checked_count(q, b.len(), limits.max_enum)?;
                let mut out = Vec::with_capacity(total as usize);
                let mut coeffs = vec![0u32; b.len()];
                for _ in 0..total {
                    out.push(self.combine(&coeffs));
                    for c in coeffs.iter_mut().rev() {
                        *c += 1;
                        if *c < q {
                            break;
                        }
                        *c = 0;
                    }
                }
                Ok(out)
            }
        }
    }

    /// `sum c_i B_i` over the basis of a linear code.
    pub fn combine(&self, coeffs: &[u32]) -> MatFq {
        let b = self.basis().expect("linear code");
        let f = &self.field;
        let mut data = vec![0u32; self.m * self.n];
        for (x, &c) in b.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            for (a, &v) in data.iter_mut().zip(x.data()) {
                *a = f.add(*a, f.mul(c, v));
            }
        }
        MatFq::from_codes(f, self.m, self.n, data).expect("shape")
    }

    /// The linear code as a code over `F_p` (shape `me x ne`) with basis
    /// `g^j B_i`, `g` the generator of `F_{p^e}`.
    pub fn expand_prime(&self) -> Result<RankCode> {
        let b = self.require_basis()?;
        let f = &self.field;
        let fp = f.prime_subfield();
        let e = f.degree() as usize;
        let mut gens = Vec::with_capacity(b.len() * e);
        for x in b {
            for &g in &f.polynomial_basis() {
                gens.push(x.scale(g).expand_prime_poly());
            }
        }
        RankCode::linear(&fp, self.m * e, self.n * e, gens)
    }

    fn fp_span(&self) -> Result<(u32, usize, usize, Vec<Vec<u32>>)> {
        let ex = self.expand_prime()?;
        let gens = ex.matrices().iter().map(|x| x.data().to_vec()).collect();
        Ok((self.field.p(), ex.m, ex.n, gens))
    }

    pub fn weight_distribution(&self, limits: &Limits) -> Result<WeightTable> {
        let width = self.m.min(self.n) + 1;
        let mut counts = vec![BigUint::zero(); width];
        match &self.body {
            CodeBody::Linear(_) => {
                let (p, rows, cols, gens) = self.fp_span()?;
                let hist = enumerate::rank_histogram(&Span { p, rows, cols, gens: &gens }, limits.max_enum)?;
                let e = self.field.degree() as usize;
                for (r, c) in hist.into_iter().enumerate() {
                    if c > 0 {
                        counts[r / e] += c;
                    }
                }
            }
            CodeBody::Explicit(v) => {
                if v.len() as u64 > limits.max_enum {
                    return Err(Error::GuardExceeded { needed: BigUint::from(v.len()), limit: limits.max_enum });
                }
                for x in v {
                    counts[x.rank()] += 1u32;
                }
            }
        }
        Ok(WeightTable { counts })
    }

    pub fn min_distance(&self, limits: &Limits) -> Result<usize> {
        if self.cardinality() < BigUint::from(2u32) {
            return Err(Error::pre("minimum distance needs at least two codewords"));
        }
        match &self.body {
            CodeBody::Linear(_) => {
                Ok(self.weight_distribution(limits)?.min_nonzero().expect("nonzero codeword exists"))
            }
            CodeBody::Explicit(v) => {
                let pairs = (v.len() as u64) * (v.len() as u64 - 1) / 2;
                if pairs > limits.max_enum {
                    return Err(Error::GuardExceeded { needed: BigUint::from(pairs), limit: limits.max_enum });
                }
                let mut best = usize::MAX;
                for (i, a) in v.iter().enumerate() {
                    for b in &v[i + 1..] {
                        best = best.min(a.sub(b)?.rank());
                    }
                }
                Ok(best)
            }
        }
    }

    /// Singleton bound `q^{max(m,n)(min(m,n)-d+1)}` for distance `d`.
    pub fn singleton_bound(&self, d: usize) -> BigUint {
        let (lo, hi) = (self.m.min(self.n), self.m.max(self.n));
        BigUint::from(self.field.order()).pow((hi * (lo + 1 - d)) as u32)
    }

    pub fn is_mrd(&self, limits: &Limits) -> Result<MrdReport> {
        let d = self.min_distance(limits)?;
        let bound = self.singleton_bound(d);
        let cardinality = self.cardinality();
        Ok(MrdReport { mrd: cardinality == bound, d, bound, cardinality })
    }

    /// Whether `{xM : M in C} = F_q^n` for every nonzero `x`.
    pub fn covering_property(&self, limits: &Limits) -> Result<bool> {
        let f = &self.field;
        let q = f.order() as u64;
        let points = BigUint::from(q).pow(self.m as u32) - 1u32;
        match &self.body {
            CodeBody::Linear(b) => {
                let needed = &points / (q - 1);
                if needed > BigUint::from(limits.max_enum) {
                    return Err(Error::GuardExceeded { needed, limit: limits.max_enum });
                }
                // one representative per projective point: first nonzero entry 1
                for lead in 0..self.m {
                    let tail = self.m - lead - 1;
                    let count = q.pow(tail as u32);
                    for t in 0..count {
                        let mut x = vec![0u32; self.m];
                        x[lead] = 1;
                        let mut r = t;
                        for xi in x[lead + 1..].iter_mut() {
                            *xi = (r % q) as u32;
                            r /= q;
                        }
                        let imgs: Vec<Vec<u32>> = b.iter().map(|m| m.apply_row(&x)).collect();
                        let img = RowSpace::from_vectors(f, self.n, imgs.iter().map(Vec::as_slice));
                        if img.dim() < self.n {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            }
            CodeBody::Explicit(v) => {
                let needed = &points * BigUint::from(v.len());
                if needed > BigUint::from(limits.max_enum) {
                    return Err(Error::GuardExceeded { needed, limit: limits.max_enum });
                }
                let target = BigUint::from(q).pow(self.n as u32);
                if BigUint::from(v.len()) < target {
                    return Ok(false);
                }
                let points = points.to_u64().expect("bounded by guard");
                for t in 1..=points {
                    let mut x = vec![0u32; self.m];
                    let mut r = t;
                    for xi in x.iter_mut() {
                        *xi = (r % q) as u32;
                        r /= q;
                    }
                    let images: BTreeSet<Vec<u32>> = v.iter().map(|m| m.apply_row(&x)).collect();
                    if BigUint::from(images.len()) != target {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// `{A X^gamma B + C0}` where `X^gamma` raises every entry to `p^gamma`.
    pub fn apply_equivalence(&self, a: &MatFq, b: &MatFq, c0: &MatFq, gamma: u32, limits: &Limits) -> Result<RankCode> {
        if a.shape() != (self.m, self.m) || b.shape() != (self.n, self.n) || c0.shape() != self.shape() {
            return Err(Error::shape("equivalence factors do not match the code shape"));
        }
        a.inverse()?;
        b.inverse()?;
        let map = |x: &MatFq| -> Result<MatFq> { a.mul(&x.frobenius(gamma))?.mul(b) };
        if self.is_linear() && c0.is_zero() {
            let basis = self.matrices().iter().map(map).collect::<Result<Vec<_>>>()?;
            return RankCode::linear(&self.field, self.m, self.n, basis);
        }
        let words = self.codewords(limits)?;
        let out = words.iter().map(|x| map(x)?.add(c0)).collect::<Result<Vec<_>>>()?;
        RankCode::explicit(&self.field, self.m, self.n, out)
    }

    /// Subtracts the smallest codeword (row-major lexicographic) unless the
    /// zero matrix is already present.
    pub fn translate_to_zero(&self) -> RankCode {
        match &self.body {
            CodeBody::Linear(_) => self.clone(),
            CodeBody::Explicit(v) => {
                if v.is_empty() || v.iter().any(MatFq::is_zero) {
                    return self.clone();
                }
                let base = v.iter().min_by(|x, y| x.data().cmp(y.data())).expect("nonempty").clone();
                let out = v.iter().map(|x| x.sub(&base).expect("same shape")).collect();
                RankCode { body: CodeBody::Explicit(out), ..self.clone() }
            }
        }
    }

    /// `C^T`, every matrix transposed.
    pub fn transpose(&self) -> RankCode {
        let t: Vec<MatFq> = self.matrices().iter().map(MatFq::transpose).collect();
        let body = match &self.body {
            CodeBody::Linear(_) => CodeBody::Linear(t),
            CodeBody::Explicit(_) => CodeBody::Explicit(t),
        };
        RankCode { field: self.field.clone(), m: self.n, n: self.m, body }
    }

    /// `{L X : X in C}` for a linear code, re-spanned.
    pub fn left_mul(&self, l: &MatFq) -> Result<RankCode> {
        let b = self.require_basis()?;
        let prods = b.iter().map(|x| l.mul(x)).collect::<Result<Vec<_>>>()?;
        RankCode::from_span(&self.field, l.rows(), self.n, prods)
    }

    /// `{X R : X in C}` for a linear code, re-spanned.
    pub fn right_mul(&self, r: &MatFq) -> Result<RankCode> {
        let b = self.require_basis()?;
        let prods = b.iter().map(|x| x.mul(r)).collect::<Result<Vec<_>>>()?;
        RankCode::from_span(&self.field, self.m, r.cols(), prods)
    }
}

/// Weight distribution of an MRD code with `O` in it and minimum distance
/// `d`, for `m <= n`.
pub fn mrd_weight_formula(m: usize, n: usize, d: usize, q: u64) -> Result<WeightTable> {
    if !(n >= m && m >= d && d >= 1) {
        return Err(Error::pre(format!("need n >= m >= d >= 1, got m={m} n={n} d={d}")));
    }
    let gb = |a: usize, b: usize| -> BigInt { gaussian_binomial(a as u32, b as u32, q).expect("in range").into() };
    let qb = BigInt::from(q);
    let mut counts = vec![BigUint::zero(); m + 1];
    counts[0] = BigUint::one();
    for l in 0..=m - d {
        let mut sum = BigInt::zero();
        for t in 0..=l {
            let e = l - t;
            let mut term: BigInt = gb(l + d, e) * qb.pow((e * e.saturating_sub(1) / 2) as u32) * (qb.pow((n * (t + 1)) as u32) - BigInt::one());
            if e % 2 == 1 {
                term = -term;
            }
            sum += term;
        }
        let a = gb(m, d + l) * sum;
        if !a.is_positive() {
            return Err(Error::Invariant(format!("A_{} = {a} is not positive", d + l)));
        }
        counts[d + l] = a.to_biguint().expect("positive");
    }
    Ok(WeightTable { counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn f2() -> FieldCtx {
        make_field(2, 1, None).unwrap()
    }

    #[test]
    fn full_space_metrics() {
        let f = f2();
        let c = RankCode::full_space(&f, 2, 2);
        let lim = Limits::default();
        assert_eq!(c.min_distance(&lim).unwrap(), 1);
        let r = c.is_mrd(&lim).unwrap();
        assert!(r.mrd);
        assert_eq!(r.bound, BigUint::from(16u32));
        assert!(c.covering_property(&lim).unwrap());
        // A_1 = 9, A_2 = 6 in F_2^{2x2}
        let w = c.weight_distribution(&lim).unwrap();
        assert_eq!(w.counts, vec![1u32, 9, 6].into_iter().map(BigUint::from).collect::<Vec<_>>());
    }

    #[test]
    fn single_rank_one_matrix_is_not_mrd() {
        let f = f2();
        let x = MatFq::from_rows(&f, &[vec![1, 0], vec![0, 0]]).unwrap();
        let c = RankCode::linear(&f, 2, 2, vec![x]).unwrap();
        let r = c.is_mrd(&Limits::default()).unwrap();
        assert_eq!((r.mrd, r.d, r.cardinality), (false, 1, BigUint::from(2u32)));
    }

    #[test]
    fn zero_code_weight_table() {
        let f = f2();
        let c = RankCode::explicit(&f, 2, 3, vec![MatFq::zeros(&f, 2, 3)]).unwrap();
        let w = c.weight_distribution(&Limits::default()).unwrap();
        assert_eq!(w.counts, vec![BigUint::one(), BigUint::zero(), BigUint::zero()]);
        assert!(c.min_distance(&Limits::default()).is_err());
    }

    #[test]
    fn explicit_duplicates_rejected() {
        let f = f2();
        let z = MatFq::zeros(&f, 1, 1);
        assert_eq!(RankCode::explicit(&f, 1, 1, vec![z.clone(), z]).unwrap_err(), Error::DuplicateCodeword);
    }

    #[test]
    fn weight_formula_examples() {
        let w = mrd_weight_formula(4, 4, 3, 2).unwrap();
        assert_eq!(w.get(3), BigUint::from(225u32));
        assert_eq!(w.get(4), BigUint::from(30u32));
        assert_eq!(w.total(), BigUint::from(256u32));
        let w = mrd_weight_formula(2, 4, 2, 2).unwrap();
        assert_eq!(w.get(2), BigUint::from(15u32));
        for (m, n, q) in [(2usize, 3usize, 2u64), (3, 3, 3), (2, 2, 5)] {
            let w = mrd_weight_formula(m, n, 1, q).unwrap();
            assert_eq!(w.total(), BigUint::from(q).pow((m * n) as u32));
        }
        assert!(mrd_weight_formula(4, 3, 2, 2).is_err());
    }

    #[test]
    fn full_space_histogram_matches_formula_over_f4() {
        let f = make_field(2, 2, None).unwrap();
        let c = RankCode::full_space(&f, 2, 2);
        assert_eq!(c.weight_distribution(&Limits::default()).unwrap(), mrd_weight_formula(2, 2, 1, 4).unwrap());
    }

    #[test]
    fn translate_explicit_singleton() {
        let f = f2();
        let x = MatFq::from_rows(&f, &[vec![1, 1]]).unwrap();
        let c = RankCode::explicit(&f, 1, 2, vec![x]).unwrap().translate_to_zero();
        assert!(c.matrices()[0].is_zero());
    }

    #[test]
    fn guard_error_carries_count() {
        let f = f2();
        let c = RankCode::full_space(&f, 5, 5);
        match c.weight_distribution(&Limits::with_max_enum(1 << 10)) {
            Err(Error::GuardExceeded { needed, .. }) => assert_eq!(needed, BigUint::from(1u64 << 25)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
