//! Exact arithmetic in `F_{p^e}`.
//!
//! Elements are encoded as integers `v < p^e` whose base-`p` digits
//! (little-endian) are the coordinates in the polynomial basis
//! `1, g, g^2, ...` where `g` is the root of the modulus. Hot loops work on
//! these raw codes through [`FieldCtx`]; [`FieldElem`] pairs a code with its
//! context for the checked public API.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Fields up to this order get log/antilog tables.
const TABLE_LIMIT: u64 = 1 << 16;
/// Fields up to this order get a full addition table (odd characteristic).
const ADD_TABLE_LIMIT: u64 = 256;
const MAX_ORDER: u64 = 1 << 31;

#[derive(Clone)]
pub struct FieldCtx(Arc<Inner>);

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    pow_p: Vec<u32>,
    tables: Option<Tables>,
    add_table: Option<Vec<u32>>,
}

struct Tables {
    /// `exp[i] = w^i` for `i < 2(q-1)`, doubled so sums of logs need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Field operation selector for [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---- polynomial helpers over F_p (coefficient vectors, low to high) ----

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap() as u64;
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let sub = (lead * c as u64) % p as u64;
            let slot = &mut r[shift + i];
            *slot = ((*slot as u64 + p as u64 - sub) % p as u64) as u32;
        }
        poly_trim(&mut r);
    }
    r
}

/// Exhaustive search for a monic divisor of degree `1..=deg/2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for t in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut x = t;
            for _ in 0..d {
                cand.push((x % p as u64) as u32);
                x /= p as u64;
            }
            cand.push(1);
            if poly_rem(m, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of degree `e`, comparing `(c_0, c_1, ...)`
/// lexicographically.
fn default_modulus(p: u32, e: u32) -> Vec<u32> {
    if e == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(e);
    for t in 0..count {
        // c_0 is the most significant digit of t
        let mut coeffs = vec![0u32; e as usize + 1];
        let mut x = t;
        for i in (0..e as usize).rev() {
            coeffs[i] = (x % p as u64) as u32;
            x /= p as u64;
        }
        coeffs[e as usize] = 1;
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Builds a validated field context. Without a modulus the
/// lexicographically smallest monic irreducible of degree `e` is used.
pub fn make_field(p: u32, e: u32, modulus: Option<&[u32]>) -> Result<FieldCtx> {
    FieldCtx::new(p, e, modulus)
}

impl FieldCtx {
    pub fn new(p: u32, e: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if e == 0 {
            return Err(Error::BadModulus("extension degree must be at least 1".into()));
        }
        let q = (p as u64)
            .checked_pow(e)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(Error::FieldTooLarge { p, e })?;
        let modulus = match modulus {
            None => default_modulus(p, e),
            Some(m) => {
                if m.len() != e as usize + 1 {
                    return Err(Error::BadModulus(format!(
                        "expected {} coefficients, got {}",
                        e + 1,
                        m.len()
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::BadModulus("coefficient out of range".into()));
                }
                if m[e as usize] != 1 {
                    return Err(Error::BadModulus("modulus must be monic".into()));
                }
                if e == 1 {
                    vec![0, 1]
                } else {
                    if !is_irreducible(m, p) {
                        return Err(Error::ReducibleModulus { p });
                    }
                    m.to_vec()
                }
            }
        };
        let mut pow_p = Vec::with_capacity(e as usize + 1);
        let mut acc = 1u32;
        for i in 0..=e {
            pow_p.push(acc);
            if i < e {
                acc = acc.wrapping_mul(p);
            }
        }
        let mut inner = Inner {
            p,
            e,
            q: q as u32,
            modulus,
            pow_p,
            tables: None,
            add_table: None,
        };
        if e > 1 && q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        if e > 1 && p != 2 && q <= ADD_TABLE_LIMIT {
            let mut tab = vec![0u32; (q * q) as usize];
            for a in 0..q as u32 {
                for b in 0..q as u32 {
                    tab[(a as usize) * q as usize + b as usize] = inner.add_digits(a, b);
                }
            }
            inner.add_table = Some(tab);
        }
        Ok(FieldCtx(Arc::new(inner)))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.e
    }

    /// Number of elements `p^e`.
    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.e == 1
    }

    /// `F_p` itself when `e = 1`, otherwise a fresh prime-field context.
    pub fn prime_subfield(&self) -> FieldCtx {
        if self.0.e == 1 {
            self.clone()
        } else {
            FieldCtx::prime(self.0.p).expect("p was validated")
        }
    }

    /// Codes of `1, g, ..., g^{e-1}`.
    pub fn polynomial_basis(&self) -> Vec<u32> {
        self.0.pow_p[..self.0.e as usize].to_vec()
    }

    /// Code of the modulus root `g` (equal to 1 in a prime field).
    pub fn generator(&self) -> u32 {
        if self.0.e == 1 {
            1
        } else {
            self.0.p
        }
    }

    pub fn elem(&self, code: u32) -> Result<FieldElem> {
        if code >= self.0.q {
            return Err(Error::pre(format!("code {code} out of range for field of order {}", self.0.q)));
        }
        Ok(FieldElem { field: self.clone(), code })
    }

    pub fn digits(&self, a: u32) -> Vec<u32> {
        self.0.digits(a)
    }

    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        digits
            .iter()
            .zip(&self.0.pow_p)
            .fold(0u32, |acc, (&d, &w)| acc + (d % self.0.p) * w)
    }

    /// Code of the prime-field element `c mod p`.
    pub fn from_int(&self, c: i64) -> u32 {
        c.rem_euclid(self.0.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let f = &*self.0;
        if f.p == 2 {
            a ^ b
        } else if f.e == 1 {
            let s = a + b;
            if s >= f.p {
                s - f.p
            } else {
                s
            }
        } else if let Some(tab) = &f.add_table {
            tab[a as usize * f.q as usize + b as usize]
        } else {
            f.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let f = &*self.0;
        if f.p == 2 {
            a
        } else if f.e == 1 {
            if a == 0 {
                0
            } else {
                f.p - a
            }
        } else {
            let mut out = 0u32;
            let mut x = a;
            for i in 0..f.e as usize {
                let d = x % f.p;
                x /= f.p;
                out += ((f.p - d) % f.p) * f.pow_p[i];
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let f = &*self.0;
        if f.e == 1 {
            ((a as u64 * b as u64) % f.p as u64) as u32
        } else if let Some(t) = &f.tables {
            t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
        } else {
            f.mul_poly(a, b)
        }
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let f = &*self.0;
        if let Some(t) = &f.tables {
            let l = (t.log[a as usize] as u128 * k as u128) % (f.q as u128 - 1);
            return t.exp[l as usize];
        }
        let mut base = a;
        let mut k = k;
        let mut acc = 1u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let f = &*self.0;
        if let Some(t) = &f.tables {
            let l = t.log[a as usize];
            return Some(t.exp[((f.q - 1 - l) % (f.q - 1)) as usize]);
        }
        Some(self.pow(a, f.q as u64 - 2))
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        let bi = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, bi))
    }

    /// `a^{p^j}`, with `j` reduced modulo `e`.
    pub fn frob(&self, a: u32, j: u32) -> u32 {
        let f = &*self.0;
        let j = j % f.e;
        if j == 0 || a <= 1 {
            return a;
        }
        if let Some(t) = &f.tables {
            let l = (t.log[a as usize] as u64 * f.pow_p[j as usize] as u64) % (f.q as u64 - 1);
            return t.exp[l as usize];
        }
        let mut x = a;
        for _ in 0..j {
            x = self.pow(x, f.p as u64);
        }
        x
    }

    /// Whether `a` lies in the subfield `F_{p^sub}` (`sub` must divide `e`).
    pub fn in_subfield(&self, a: u32, sub: u32) -> bool {
        self.frob(a, sub) == a
    }

    pub fn elements(&self) -> core::ops::Range<u32> {
        0..self.0.q
    }

    /// Whether `a` is a square (every element is a square in characteristic 2).
    pub fn is_square(&self, a: u32) -> bool {
        if a == 0 || self.0.p == 2 {
            return true;
        }
        self.pow(a, (self.0.q as u64 - 1) / 2) == 1
    }

    fn check_sub_degree(&self, sub_degree: u32) -> Result<()> {
        if sub_degree == 0 || self.0.e % sub_degree != 0 {
            return Err(Error::SubDegree { sub_degree, degree: self.0.e });
        }
        Ok(())
    }
}

impl Inner {
    fn digits(&self, a: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.e as usize);
        let mut x = a;
        for _ in 0..self.e {
            out.push(x % self.p);
            x /= self.p;
        }
        out
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let (mut x, mut y, mut out) = (a, b, 0u32);
        for i in 0..self.e as usize {
            let d = (x % self.p + y % self.p) % self.p;
            x /= self.p;
            y /= self.p;
            out += d * self.pow_p[i];
        }
        out
    }

    fn mul_poly(&self, a: u32, b: u32) -> u32 {
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * self.e as usize];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % self.p as u64;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        let r = poly_rem(&prod, &self.modulus, self.p);
        r.iter()
            .zip(&self.pow_p)
            .fold(0u32, |acc, (&d, &w)| acc + d * w)
    }

    fn pow_poly(&self, a: u32, mut k: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_poly(acc, base);
            }
            base = self.mul_poly(base, base);
            k >>= 1;
        }
        acc
    }
}

fn build_tables(f: &Inner) -> Tables {
    let q = f.q as u64;
    let factors = prime_factors(q - 1);
    let w = (2..f.q)
        .find(|&g| factors.iter().all(|&r| f.pow_poly(g, (q - 1) / r) != 1))
        .expect("multiplicative group is cyclic");
    let mut exp = vec![0u32; 2 * (q as usize - 1)];
    let mut log = vec![0u32; q as usize];
    let mut x = 1u32;
    for i in 0..(q as usize - 1) {
        exp[i] = x;
        exp[i + q as usize - 1] = x;
        log[x as usize] = i as u32;
        x = f.mul_poly(x, w);
    }
    Tables { exp, log }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} {:?}", self.0.p, self.0.e, self.0.modulus)
    }
}

/// A field element tagged with its context.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    field: FieldCtx,
    code: u32,
}

impl FieldElem {
    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    /// Polynomial-basis coordinates, low to high.
    pub fn coeffs(&self) -> Vec<u32> {
        self.field.digits(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn with(&self, code: u32) -> FieldElem {
        FieldElem { field: self.field.clone(), code }
    }

    pub fn inv(&self) -> Result<FieldElem> {
        self.field.inv(self.code).map(|c| self.with(c)).ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, k: u64) -> FieldElem {
        self.with(self.field.pow(self.code, k))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

/// Checked binary arithmetic.
pub fn arith(a: &FieldElem, b: &FieldElem, op: Op) -> Result<FieldElem> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    let f = &a.field;
    let code = match op {
        Op::Add => f.add(a.code, b.code),
        Op::Sub => f.sub(a.code, b.code),
        Op::Mul => f.mul(a.code, b.code),
        Op::Div => f.div(a.code, b.code)?,
    };
    Ok(a.with(code))
}

/// `a^{q^i}` with `q = p^{sub_degree}`; `i` is reduced modulo `e / sub_degree`.
pub fn frobenius(a: &FieldElem, i: u64, sub_degree: u32) -> Result<FieldElem> {
    let f = &a.field;
    f.check_sub_degree(sub_degree)?;
    let rel = (f.degree() / sub_degree) as u64;
    let j = ((i % rel) as u32) * sub_degree;
    Ok(a.with(f.frob(a.code, j)))
}

/// Norm and trace of `a` relative to the subfield `F_{p^sub_degree}`.
pub fn norm_trace(a: &FieldElem, sub_degree: u32) -> Result<(FieldElem, FieldElem)> {
    let f = &a.field;
    f.check_sub_degree(sub_degree)?;
    let rel = f.degree() / sub_degree;
    let mut norm = 1u32;
    let mut trace = 0u32;
    let mut x = a.code;
    for _ in 0..rel {
        norm = f.mul(norm, x);
        trace = f.add(trace, x);
        x = f.frob(x, sub_degree);
    }
    if !f.in_subfield(norm, sub_degree) || !f.in_subfield(trace, sub_degree) {
        return Err(Error::Invariant("norm/trace left the subfield".into()));
    }
    Ok((a.with(norm), a.with(trace)))
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:expr) => {
        impl core::ops::$tr for &FieldElem {
            type Output = FieldElem;
            /// Panics when the operands come from different fields; use
            /// [`arith`] for the checked form.
            fn $m(self, rhs: &FieldElem) -> FieldElem {
                arith(self, rhs, $op).expect("field arithmetic")
            }
        }
    };
}

binop!(Add, add, Op::Add);
binop!(Sub, sub, Op::Sub);
binop!(Mul, mul, Op::Mul);
binop!(Div, div, Op::Div);

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> FieldCtx {
        make_field(2, 2, None).unwrap()
    }

    #[test]
    fn default_modulus_of_f4_is_x2_x_1() {
        assert_eq!(f4().modulus(), &[1, 1, 1]);
        assert_eq!(make_field(2, 1, None).unwrap().modulus(), &[0, 1]);
    }

    #[test]
    fn user_modulus_x4_minus_x3_minus_1() {
        let f = make_field(3, 4, Some(&[2, 0, 0, 2, 1])).unwrap();
        assert_eq!(f.order(), 81);
        let g = f.generator();
        // g^4 = g^3 + 1
        let g4 = f.pow(g, 4);
        assert_eq!(g4, f.add(f.pow(g, 3), 1));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(make_field(4, 2, None).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(make_field(2, 2, Some(&[1, 0, 1])), Err(Error::ReducibleModulus { .. })));
        assert!(matches!(make_field(2, 3, Some(&[1, 1, 1])), Err(Error::BadModulus(_))));
        assert!(matches!(make_field(3, 2, Some(&[1, 0, 2])), Err(Error::BadModulus(_))));
    }

    #[test]
    fn f4_arithmetic() {
        let f = f4();
        let a = f.elem(2).unwrap();
        let a1 = f.elem(3).unwrap();
        let one = f.elem(1).unwrap();
        assert_eq!(arith(&a, &a1, Op::Mul).unwrap(), one);
        assert!(arith(&a, &a, Op::Add).unwrap().is_zero());
        assert_eq!(arith(&one, &a, Op::Div).unwrap(), a1);
        let zero = f.elem(0).unwrap();
        assert_eq!(arith(&a, &zero, Op::Div).unwrap_err(), Error::DivisionByZero);
        let other = make_field(2, 3, None).unwrap().elem(2).unwrap();
        assert_eq!(arith(&a, &other, Op::Add).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn f4_frobenius_norm_trace() {
        let f = f4();
        let a = f.elem(2).unwrap();
        assert_eq!(frobenius(&a, 1, 1).unwrap().code(), 3);
        assert_eq!(frobenius(&a, 2, 1).unwrap().code(), 2);
        assert_eq!(frobenius(&f.elem(0).unwrap(), 1, 1).unwrap().code(), 0);
        let codes = |x: u32| {
            let (n, t) = norm_trace(&f.elem(x).unwrap(), 1).unwrap();
            (n.code(), t.code())
        };
        assert_eq!(codes(2), (1, 1));
        assert_eq!(codes(1), (1, 0));
        assert_eq!(codes(0), (0, 0));
        assert!(matches!(frobenius(&a, 1, 3), Err(Error::SubDegree { .. })));
    }

    #[test]
    fn multiplicative_group_order_exhaustive() {
        for (p, e) in [(2, 1), (2, 4), (3, 4), (5, 2), (2, 8), (7, 1), (2, 16)] {
            let f = make_field(p, e, None).unwrap();
            let q = f.order() as u64;
            for a in 1..f.order() {
                assert_eq!(f.pow(a, q - 1), 1, "p={p} e={e} a={a}");
            }
        }
    }

    #[test]
    fn table_and_polynomial_multiplication_agree() {
        let f = make_field(3, 4, Some(&[2, 0, 0, 2, 1])).unwrap();
        for a in f.elements() {
            for b in f.elements().step_by(7) {
                assert_eq!(f.mul(a, b), f.0.mul_poly(a, b));
            }
        }
    }

    #[test]
    fn large_field_without_tables() {
        let f = make_field(2, 18, None).unwrap();
        assert!(f.0.tables.is_none());
        let a = 12345u32;
        let ai = f.inv(a).unwrap();
        assert_eq!(f.mul(a, ai), 1);
        assert_eq!(f.frob(a, 18), a);
    }
}
