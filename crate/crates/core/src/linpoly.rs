//! `q`-polynomials over `F_{q^n}` and their matrices over `F_q`.
//!
//! `F_{q^n}` is held as a [`FieldCtx`] of degree `e*n` over `F_p`, with
//! `F_q = F_{p^e}` embedded through a root `omega` of the modulus of the
//! small field. A [`QExtension`] also fixes an ordered `F_q`-basis, which
//! is what turns maps into matrices: row `i` of [`LinPoly::to_matrix`] is the
//! coordinate vector of `L(b_i)`, so the map acts on row vectors by `x -> xM`
//! and `to_matrix(L1 o L2) = to_matrix(L2) * to_matrix(L1)`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::mat::MatFq;

#[derive(Clone)]
pub struct QExtension(Arc<ExtInner>);

struct ExtInner {
    big: FieldCtx,
    small: FieldCtx,
    n: u32,
    omega: u32,
    basis: Vec<u32>,
    // F_p-matrix whose rows are digits of omega^j * b_i, inverted
    coord_inv: MatFq,
    // rows are digits of omega^j, j < e
    sub_rows: MatFq,
}

impl PartialEq for QExtension {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.big == other.0.big && self.0.small == other.0.small && self.0.basis == other.0.basis)
    }
}

impl Eq for QExtension {}

impl fmt::Debug for QExtension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "QExtension(F_{}^{} over F_{}^{}, basis {:?})",
            self.0.big.p(),
            self.0.big.degree(),
            self.0.small.p(),
            self.0.small.degree(),
            self.0.basis
        )
    }
}

fn eval_prime_poly(f: &FieldCtx, coeffs: &[u32], x: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

impl QExtension {
    /// `F_{q^n}` over `small = F_q`. The big field uses `big_modulus` (a
    /// polynomial over `F_p` of degree `e*n`) or the default one.
    pub fn new(small: &FieldCtx, n: u32, big_modulus: Option<&[u32]>) -> Result<Self> {
        if n == 0 {
            return Err(Error::pre("extension degree must be at least 1"));
        }
        let e = small.degree();
        let big = FieldCtx::new(small.p(), e * n, big_modulus)?;
        let omega = if e == 1 {
            0
        } else {
            big.elements()
                .find(|&x| eval_prime_poly(&big, small.modulus(), x) == 0)
                .ok_or_else(|| Error::Invariant("small modulus has no root in the big field".into()))?
        };
        let basis: Vec<u32> = (0..n as u64).map(|i| big.pow(big.generator(), i)).collect();
        Self::build(big, small.clone(), n, omega, basis)
    }

    /// `F_{p^n}` over its prime field.
    pub fn over_prime(p: u32, n: u32, big_modulus: Option<&[u32]>) -> Result<Self> {
        Self::new(&FieldCtx::prime(p)?, n, big_modulus)
    }

    fn build(big: FieldCtx, small: FieldCtx, n: u32, omega: u32, basis: Vec<u32>) -> Result<Self> {
        let e = small.degree() as usize;
        if basis.len() != n as usize {
            return Err(Error::DependentBasis);
        }
        let fp = big.prime_subfield();
        let omega_pows: Vec<u32> = (0..e as u64).map(|j| if j == 0 { 1 } else { big.pow(omega, j) }).collect();
        let mut rows = Vec::with_capacity(e * n as usize);
        for &b in &basis {
            for &w in &omega_pows {
                rows.push(big.digits(big.mul(w, b)));
            }
        }
        let coord_inv = MatFq::from_rows(&fp, &rows)?.inverse().map_err(|_| Error::DependentBasis)?;
        let sub_rows = MatFq::from_rows(&fp, &omega_pows.iter().map(|&w| big.digits(w)).collect::<Vec<_>>())?;
        Ok(QExtension(Arc::new(ExtInner { big, small, n, omega, basis, coord_inv, sub_rows })))
    }

    /// Same fields, different ordered `F_q`-basis.
    pub fn with_basis(&self, basis: &[u32]) -> Result<Self> {
        let i = &self.0;
        if basis.iter().any(|&b| b >= i.big.order()) {
            return Err(Error::pre("basis element out of range"));
        }
        Self::build(i.big.clone(), i.small.clone(), i.n, i.omega, basis.to_vec())
    }

    pub fn big(&self) -> &FieldCtx {
        &self.0.big
    }

    pub fn small(&self) -> &FieldCtx {
        &self.0.small
    }

    pub fn n(&self) -> u32 {
        self.0.n
    }

    /// `e`, with `q = p^e`.
    pub fn sub_degree(&self) -> u32 {
        self.0.small.degree()
    }

    pub fn basis(&self) -> &[u32] {
        &self.0.basis
    }

    /// Image of a small-field element in the big field.
    pub fn embed(&self, a: u32) -> u32 {
        let i = &self.0;
        if i.small.degree() == 1 {
            return a;
        }
        let digits = i.small.digits(a);
        i.big.from_digits(&i.sub_rows.apply_row(&digits))
    }

    /// Inverse of [`embed`](Self::embed); `None` if `a` is not in `F_q`.
    pub fn restrict(&self, a: u32) -> Option<u32> {
        let i = &self.0;
        if i.small.degree() == 1 {
            return (a < i.small.order()).then_some(a);
        }
        i.sub_rows.solve_row(&i.big.digits(a)).map(|d| i.small.from_digits(&d))
    }

    /// Coordinates over `F_q` in the current basis.
    pub fn coords(&self, y: u32) -> Vec<u32> {
        let i = &self.0;
        let e = i.small.degree() as usize;
        let flat = i.coord_inv.apply_row(&i.big.digits(y));
        flat.chunks(e).map(|c| i.small.from_digits(c)).collect()
    }

    pub fn from_coords(&self, c: &[u32]) -> u32 {
        assert_eq!(c.len(), self.0.n as usize, "coordinate length");
        let big = &self.0.big;
        c.iter().zip(&self.0.basis).fold(0, |acc, (&ci, &b)| big.add(acc, big.mul(self.embed(ci), b)))
    }

    /// `a^{q^i}`.
    pub fn frob_q(&self, a: u32, i: u32) -> u32 {
        let i = i % self.0.n;
        self.0.big.frob(a, self.sub_degree() * i)
    }

    pub fn trace(&self, a: u32) -> u32 {
        let big = &self.0.big;
        (0..self.0.n).fold(0, |acc, i| big.add(acc, self.frob_q(a, i)))
    }

    pub fn norm(&self, a: u32) -> u32 {
        let big = &self.0.big;
        (0..self.0.n).fold(1, |acc, i| big.mul(acc, self.frob_q(a, i)))
    }

    /// Gram matrix `Tr(b_i b_j)` over `F_q`.
    pub fn trace_gram(&self) -> MatFq {
        let b = &self.0.basis;
        let big = &self.0.big;
        MatFq::from_fn(&self.0.small, b.len(), b.len(), |i, j| {
            self.restrict(self.trace(big.mul(b[i], b[j]))).expect("trace lies in F_q")
        })
    }

    /// The basis `b*` with `Tr(b_i b*_j) = [i = j]`.
    pub fn trace_dual(&self) -> Result<Self> {
        let ginv = self.trace_gram().inverse()?;
        let dual: Vec<u32> = (0..self.0.n as usize).map(|i| self.from_coords(ginv.row(i))).collect();
        self.with_basis(&dual)
    }

    /// Matrix over `F_q` of right multiplication by a big-field element.
    pub fn mult_matrix(&self, a: u32) -> MatFq {
        LinPoly::monomial(self, a, 0).to_matrix()
    }
}

/// `x -> sum a_i x^{q^i}` on `F_{q^n}`.
#[derive(Clone, PartialEq, Eq)]
pub struct LinPoly {
    ext: QExtension,
    coeffs: Vec<u32>,
}

impl fmt::Debug for LinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinPoly{:?}", self.coeffs)
    }
}

impl LinPoly {
    /// Coefficients beyond index `n-1` wrap around (`x^{q^n} = x`).
    pub fn new(ext: &QExtension, coeffs: &[u32]) -> Result<Self> {
        let big = ext.big();
        let n = ext.n() as usize;
        let mut c = vec![0u32; n];
        for (i, &a) in coeffs.iter().enumerate() {
            if a >= big.order() {
                return Err(Error::pre(format!("coefficient {a} out of range")));
            }
            c[i % n] = big.add(c[i % n], a);
        }
        Ok(LinPoly { ext: ext.clone(), coeffs: c })
    }

    pub fn zero(ext: &QExtension) -> Self {
        LinPoly { ext: ext.clone(), coeffs: vec![0; ext.n() as usize] }
    }

    pub fn identity(ext: &QExtension) -> Self {
        Self::monomial(ext, 1, 0)
    }

    /// `a x^{q^i}`.
    pub fn monomial(ext: &QExtension, a: u32, i: u32) -> Self {
        let mut p = Self::zero(ext);
        p.coeffs[(i % ext.n()) as usize] = a;
        p
    }

    pub fn ext(&self) -> &QExtension {
        &self.ext
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn eval(&self, x: u32) -> u32 {
        let big = self.ext.big();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .fold(0, |acc, (i, &a)| big.add(acc, big.mul(a, self.ext.frob_q(x, i as u32))))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ext != other.ext {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let big = self.ext.big();
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| big.add(a, b)).collect();
        Ok(LinPoly { ext: self.ext.clone(), coeffs })
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let big = self.ext.big();
        let n = self.coeffs.len();
        let mut c = vec![0u32; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    let k = (i + j) % n;
                    c[k] = big.add(c[k], big.mul(a, self.ext.frob_q(b, i as u32)));
                }
            }
        }
        Ok(LinPoly { ext: self.ext.clone(), coeffs: c })
    }

    /// Adjoint under the trace form: `b_i = a_{n-i}^{q^i}`.
    pub fn adjoint(&self) -> Self {
        let n = self.coeffs.len();
        let coeffs = (0..n).map(|i| self.ext.frob_q(self.coeffs[(n - i) % n], i as u32)).collect();
        LinPoly { ext: self.ext.clone(), coeffs }
    }

    /// Matrix over `F_q` in the extension's basis; row `i` holds the
    /// coordinates of `L(b_i)`.
    pub fn to_matrix(&self) -> MatFq {
        self.to_matrix_in(&self.ext)
    }

    /// As [`to_matrix`](Self::to_matrix), with the basis of `ext` (same
    /// fields, possibly another basis).
    pub fn to_matrix_in(&self, ext: &QExtension) -> MatFq {
        assert!(ext.big() == self.ext.big() && ext.small() == self.ext.small(), "field mismatch");
        let rows: Vec<Vec<u32>> = ext.basis().iter().map(|&b| ext.coords(self.eval(b))).collect();
        MatFq::from_rows(ext.small(), &rows).expect("square")
    }

    /// Number of roots in `F_{q^n}`, i.e. `q^{n - rank}`.
    pub fn root_count_log(&self) -> u32 {
        self.ext.n() - self.to_matrix().rank() as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn ext(p: u32, e: u32, n: u32) -> QExtension {
        QExtension::new(&make_field(p, e, None).unwrap(), n, None).unwrap()
    }

    #[test]
    fn eval_examples() {
        let x = ext(2, 1, 2);
        let id = LinPoly::identity(&x);
        for a in x.big().elements() {
            assert_eq!(id.eval(a), a);
        }
        // x^q on F_4 at a gives a + 1
        assert_eq!(LinPoly::monomial(&x, 1, 1).eval(2), 3);
    }

    #[test]
    fn eval_matches_matrix_action() {
        let x = ext(2, 1, 4);
        let l = LinPoly::new(&x, &[7, 0, 11, 0]).unwrap();
        let m = l.to_matrix();
        for y in x.big().elements() {
            assert_eq!(m.apply_row(&x.coords(y)), x.coords(l.eval(y)));
        }
    }

    #[test]
    fn compose_examples() {
        let x = ext(2, 1, 3);
        let l1 = LinPoly::new(&x, &[3, 5, 1]).unwrap();
        let l2 = LinPoly::new(&x, &[6, 0, 2]).unwrap();
        let c = l1.compose(&l2).unwrap();
        for y in x.big().elements() {
            assert_eq!(c.eval(y), l1.eval(l2.eval(y)));
        }
        assert_eq!(LinPoly::identity(&x).compose(&l1).unwrap(), l1);
        let x2 = ext(3, 1, 2);
        let fr = LinPoly::monomial(&x2, 1, 1);
        assert_eq!(fr.compose(&fr).unwrap(), LinPoly::identity(&x2));
        assert_eq!(l2.compose(&l1).unwrap().to_matrix(), l1.to_matrix().mul(&l2.to_matrix()).unwrap());
    }

    #[test]
    fn to_matrix_examples() {
        let x = ext(3, 1, 3);
        assert_eq!(LinPoly::identity(&x).to_matrix(), MatFq::identity(x.small(), 3));
        assert_eq!(LinPoly::monomial(&x, 5, 0).to_matrix().rank(), 3);
        let big = x.big();
        let l = LinPoly::new(&x, &[big.neg(1), 1]).unwrap();
        assert_eq!(l.to_matrix().rank(), 2);
        assert_eq!(l.root_count_log(), 1);
        let roots: Vec<u32> = big.elements().filter(|&y| l.eval(y) == 0).collect();
        assert_eq!(roots, vec![0, 1, 2]);
    }

    #[test]
    fn adjoint_trace_identity_exhaustive() {
        let x = ext(2, 1, 3);
        let big = x.big().clone();
        for a in 1..8 {
            for i in 0..3 {
                let l = LinPoly::monomial(&x, a, i);
                let adj = l.adjoint();
                assert_eq!(adj, LinPoly::monomial(&x, x.frob_q(a, 3 - i), 3 - i));
                for u in big.elements() {
                    for v in big.elements() {
                        assert_eq!(x.trace(big.mul(l.eval(u), v)), x.trace(big.mul(u, adj.eval(v))));
                    }
                }
                assert_eq!(adj.adjoint(), l);
            }
        }
    }

    #[test]
    fn adjoint_matrix_is_transpose_in_dual_basis() {
        for (p, e, n) in [(2, 1, 4), (3, 1, 3), (2, 2, 3)] {
            let x = ext(p, e, n);
            let dual = x.trace_dual().unwrap();
            let l = LinPoly::new(&x, &(1..=n).map(|i| (i * 5 + 1) % x.big().order()).collect::<Vec<_>>()).unwrap();
            assert_eq!(l.adjoint().to_matrix_in(&dual), l.to_matrix().transpose());
        }
    }

    #[test]
    fn coordinates_roundtrip_over_nonprime_base() {
        let x = ext(2, 2, 2);
        for y in x.big().elements() {
            assert_eq!(x.from_coords(&x.coords(y)), y);
        }
        for a in x.small().elements() {
            assert_eq!(x.restrict(x.embed(a)), Some(a));
            let s = x.small();
            for b in s.elements() {
                assert_eq!(x.embed(s.mul(a, b)), x.big().mul(x.embed(a), x.embed(b)));
            }
        }
        let f = x.big();
        assert!(f.elements().filter(|&y| x.restrict(y).is_some()).count() == 4);
    }
}
