//! Builders for the code families: Gabidulin and (generalized) twisted
//! Gabidulin codes, rectangular evaluation codes, field spread sets, the
//! Zhou-Pott semifield maps and codes from Gold APN functions, plus a few
//! small named examples.
//!
//! Square codes use the basis of the [`QExtension`] they are built on
//! (default `1, g, ..., g^{n-1}`); a different basis only changes the code up
//! to equivalence.

use alloc::format;
use alloc::vec::Vec;

use crate::code::RankCode;
use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::linpoly::{LinPoly, QExtension};
use crate::mat::MatFq;

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A linear code given by `q`-polynomials over `F_{q^n}`.
#[derive(Debug, Clone)]
pub struct QPolyCode {
    ext: QExtension,
    polys: Vec<LinPoly>,
    code: RankCode,
}

impl QPolyCode {
    pub fn new(ext: &QExtension, polys: Vec<LinPoly>) -> Result<Self> {
        let n = ext.n() as usize;
        let mats = polys.iter().map(LinPoly::to_matrix).collect();
        let code = RankCode::linear(ext.small(), n, n, mats)?;
        Ok(QPolyCode { ext: ext.clone(), polys, code })
    }

    pub fn ext(&self) -> &QExtension {
        &self.ext
    }

    pub fn polys(&self) -> &[LinPoly] {
        &self.polys
    }

    pub fn code(&self) -> &RankCode {
        &self.code
    }

    pub fn into_code(self) -> RankCode {
        self.code
    }

    /// `{(v(f(alpha_1)), ..., v(f(alpha_m)))^t}`; equals `L * C` where the
    /// rows of `L` are the coordinates of the `alpha_i`. The result is
    /// re-spanned, so its dimension shows any collapse.
    pub fn rectangular(&self, alphas: &[u32]) -> Result<RankCode> {
        let big = self.ext.big();
        if alphas.is_empty() || alphas.iter().any(|&a| a >= big.order()) {
            return Err(Error::pre("alphas must be nonempty field elements"));
        }
        let rows: Vec<Vec<u32>> = alphas.iter().map(|&a| self.ext.coords(a)).collect();
        let l = MatFq::from_rows(self.ext.small(), &rows)?;
        if l.rank() < alphas.len() {
            return Err(Error::DependentBasis);
        }
        self.code.left_mul(&l)
    }
}

/// Parameters of `G_{k,s}` and `H_{k,s}(eta, h)`; `eta` is a code in the big
/// field and `None` means the plain Gabidulin code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GabidulinParams {
    pub k: u32,
    pub s: u32,
    pub h: u32,
    pub eta: Option<u32>,
}

impl GabidulinParams {
    pub fn build(&self, ext: &QExtension) -> Result<QPolyCode> {
        match self.eta {
            None => gabidulin(ext, self.k, self.s),
            Some(eta) => generalized_twisted(ext, self.k, self.s, self.h, eta),
        }
    }
}

fn check_ks(ext: &QExtension, k: u32, s: u32) -> Result<()> {
    let n = ext.n();
    if k == 0 || k >= n {
        return Err(Error::pre(format!("k = {k} must satisfy 1 <= k < n = {n}")));
    }
    if gcd(n, s) != 1 {
        return Err(Error::pre(format!("gcd(n, s) = gcd({n}, {s}) != 1")));
    }
    Ok(())
}

/// `a x^{q^e}` for `a` over the basis and each exponent in `exps`.
pub fn qpoly_span(ext: &QExtension, exps: &[u32]) -> Result<QPolyCode> {
    let mut polys = Vec::new();
    for &e in exps {
        for &a in ext.basis() {
            polys.push(LinPoly::monomial(ext, a, e));
        }
    }
    QPolyCode::new(ext, polys)
}

/// `G_{k,s} = {a_0 x + a_1 x^{q^s} + ... + a_{k-1} x^{q^{s(k-1)}}}`.
pub fn gabidulin(ext: &QExtension, k: u32, s: u32) -> Result<QPolyCode> {
    check_ks(ext, k, s)?;
    let exps: Vec<u32> = (0..k).map(|i| (s * i) % ext.n()).collect();
    qpoly_span(ext, &exps)
}

/// `H_{k,s}(eta, h)`: `G_{k,s}` with the extra term `eta a_0^{q^h} x^{q^{sk}}`.
/// Rejects `eta` with `N(eta) = (-1)^{nk}`.
pub fn generalized_twisted(ext: &QExtension, k: u32, s: u32, h: u32, eta: u32) -> Result<QPolyCode> {
    check_ks(ext, k, s)?;
    let big = ext.big();
    if eta >= big.order() {
        return Err(Error::pre("eta out of range"));
    }
    if eta != 0 {
        let sign = if (ext.n() * k) % 2 == 0 { 1 } else { big.neg(1) };
        if ext.norm(eta) == sign {
            return Err(Error::NormCondition);
        }
    }
    generalized_twisted_unchecked(ext, k, s, h, eta)
}

/// [`generalized_twisted`] without the norm test (the result need not be
/// MRD).
pub fn generalized_twisted_unchecked(ext: &QExtension, k: u32, s: u32, h: u32, eta: u32) -> Result<QPolyCode> {
    check_ks(ext, k, s)?;
    let n = ext.n();
    let big = ext.big();
    let mut polys = Vec::new();
    for &a in ext.basis() {
        let mut c = alloc::vec![0u32; n as usize];
        c[0] = a;
        let top = ((s * k) % n) as usize;
        c[top] = big.add(c[top], big.mul(eta, ext.frob_q(a, h)));
        polys.push(LinPoly::new(ext, &c)?);
    }
    for i in 1..k {
        for &a in ext.basis() {
            polys.push(LinPoly::monomial(ext, a, (s * i) % n));
        }
    }
    QPolyCode::new(ext, polys)
}

/// Multiplication maps `x -> ax` of `F_{p^n}` over `F_p`.
pub fn field_spread_set(p: u32, n: u32) -> Result<RankCode> {
    let ext = QExtension::over_prime(p, n, None)?;
    field_spread_set_in(&ext)
}

/// Multiplication maps of `F_{q^n}` over `F_q`, in the basis of `ext`.
pub fn field_spread_set_in(ext: &QExtension) -> Result<RankCode> {
    let n = ext.n() as usize;
    let mats = ext.basis().iter().map(|&b| ext.mult_matrix(b)).collect();
    RankCode::linear(ext.small(), n, n, mats)
}

/// The lexicographically first basis `b_1 < ... < b_n` (by element code)
/// with `Tr(b_i b_j) = [i = j]`, if one exists.
pub fn self_dual_basis(ext: &QExtension) -> Option<Vec<u32>> {
    let big = ext.big();
    let n = ext.n() as usize;
    let tr = |a: u32, b: u32| ext.trace(big.mul(a, b));
    let unit: Vec<u32> = big.elements().filter(|&a| tr(a, a) == 1).collect();
    fn extend(unit: &[u32], from: usize, n: usize, acc: &mut Vec<u32>, tr: &dyn Fn(u32, u32) -> u32) -> bool {
        if acc.len() == n {
            return true;
        }
        for i in from..unit.len() {
            let b = unit[i];
            if acc.iter().all(|&a| tr(a, b) == 0) {
                acc.push(b);
                if extend(unit, i + 1, n, acc, tr) {
                    return true;
                }
                acc.pop();
            }
        }
        false
    }
    let mut acc = Vec::with_capacity(n);
    extend(&unit, 0, n, &mut acc, &tr).then_some(acc)
}

/// Smallest nonsquare of `field` by element code.
pub fn smallest_nonsquare(field: &FieldCtx) -> Option<u32> {
    field.elements().skip(1).find(|&a| !field.is_square(a))
}

/// The 2n x 2n matrices over `F_p` of
/// `(x, y) -> (x^{p^k} a + x a^{p^k} + alpha (y^{p^k} b + y b^{p^k})^sigma, ay + bx)`
/// for `(a, b)` over `F_{p^n}^2`. The nontrivial `sigma` is
/// `x -> x^{p^{n-1}}`.
#[derive(Debug, Clone)]
pub struct ZhouPott {
    pub ext: QExtension,
    pub code: RankCode,
}

pub fn zhou_pott(p: u32, n: u32, k: u32, sigma_trivial: bool, alpha: u32) -> Result<ZhouPott> {
    if p % 2 == 0 {
        return Err(Error::pre("p must be odd"));
    }
    if k == 0 {
        return Err(Error::pre("k must be positive"));
    }
    if (n / gcd(n, k)) % 2 == 0 {
        return Err(Error::pre(format!("n / gcd(n, k) = {} must be odd", n / gcd(n, k))));
    }
    let ext = QExtension::over_prime(p, n, None)?;
    let big = ext.big().clone();
    if alpha == 0 || alpha >= big.order() || big.is_square(alpha) {
        return Err(Error::pre("alpha must be a nonsquare"));
    }
    let sigma = |x: u32| if sigma_trivial { x } else { big.frob(x, n - 1) };
    let fp = big.prime_subfield();
    let nn = n as usize;
    let map_matrix = |a: u32, b: u32| -> MatFq {
        let mut rows = Vec::with_capacity(2 * nn);
        for (x, y) in ext.basis().iter().map(|&v| (v, 0)).chain(ext.basis().iter().map(|&v| (0, v))) {
            let first = big.add(
                big.add(big.mul(big.frob(x, k), a), big.mul(x, big.frob(a, k))),
                big.mul(alpha, sigma(big.add(big.mul(big.frob(y, k), b), big.mul(y, big.frob(b, k))))),
            );
            let second = big.add(big.mul(a, y), big.mul(b, x));
            let mut row = ext.coords(first);
            row.extend(ext.coords(second));
            rows.push(row);
        }
        MatFq::from_rows(&fp, &rows).expect("square")
    };
    let mut basis = Vec::with_capacity(2 * nn);
    for &v in ext.basis() {
        basis.push(map_matrix(v, 0));
    }
    for &v in ext.basis() {
        basis.push(map_matrix(0, v));
    }
    let code = RankCode::linear(&fp, 2 * nn, 2 * nn, basis)?;
    Ok(ZhouPott { ext, code })
}

impl ZhouPott {
    /// The maps followed by projection onto the second output component,
    /// `(x, y) -> ay + bx`, as `n x 2n` matrices acting on column vectors
    /// (rows indexed by output coordinates).
    pub fn projection(&self) -> Result<RankCode> {
        let n = self.ext.n() as usize;
        let fp = self.code.field().clone();
        let l = MatFq::from_fn(&fp, n, 2 * n, |i, j| u32::from(j == n + i));
        self.code.transpose().left_mul(&l)
    }
}

fn gold_map(ext: &QExtension, a: u32, k: u32) -> LinPoly {
    let mut c = alloc::vec![0u32; ext.n() as usize];
    let big = ext.big();
    c[0] = big.add(c[0], big.frob(a, k));
    let kk = (k % ext.n()) as usize;
    c[kk] = big.add(c[kk], a);
    LinPoly::new(ext, &c).expect("in range")
}

/// `{M_a}` with `M_a: x -> x^{2^k} a + x a^{2^k}`, the bilinear part of the
/// Gold function `x^{2^k+1}`, over `F_2`; presentation `M_{b_i}` over the
/// basis.
pub fn gold_apn_code(n: u32, k: u32) -> Result<RankCode> {
    if gcd(n, k) != 1 {
        return Err(Error::NotApn { n, k });
    }
    gold_apn_code_unchecked(n, k)
}

/// [`gold_apn_code`] without the `gcd(k, n) = 1` test.
pub fn gold_apn_code_unchecked(n: u32, k: u32) -> Result<RankCode> {
    let ext = QExtension::over_prime(2, n, None)?;
    let nn = n as usize;
    let mats = ext.basis().iter().map(|&a| gold_map(&ext, a, k).to_matrix()).collect();
    RankCode::linear(ext.small(), nn, nn, mats)
}

/// The 2 x 4 binary code `{(B_1 | B_2) : B_i in F_2[T]}` with `T` the
/// companion matrix of `x^2 + x + 1`.
pub fn example_2x4() -> RankCode {
    let f = FieldCtx::prime(2).expect("2 is prime");
    let i = [[1u32, 0], [0, 1]];
    let t = [[0u32, 1], [1, 1]];
    let block = |left: Option<[[u32; 2]; 2]>, right: Option<[[u32; 2]; 2]>| {
        MatFq::from_fn(&f, 2, 4, |r, c| {
            let blk = if c < 2 { left } else { right };
            blk.map_or(0, |b| b[r][c % 2])
        })
    };
    let basis = alloc::vec![block(Some(i), None), block(Some(t), None), block(None, Some(i)), block(None, Some(t))];
    RankCode::linear(&f, 2, 4, basis).expect("independent")
}

/// All `m x n` matrices over `field` whose last row and last column vanish.
pub fn example_3_6(field: &FieldCtx, m: usize, n: usize) -> Result<RankCode> {
    if m < 2 || n < 2 {
        return Err(Error::pre("need m, n >= 2"));
    }
    let mut basis = Vec::new();
    for i in 0..m - 1 {
        for j in 0..n - 1 {
            basis.push(MatFq::from_fn(field, m, n, |r, c| u32::from(r == i && c == j)));
        }
    }
    RankCode::linear(field, m, n, basis)
}

/// `{a_0 x + a_1 x^{q^2}}` over `F_{q^4}`.
pub fn kernel_larger(small: &FieldCtx) -> Result<QPolyCode> {
    let ext = QExtension::new(small, 4, None)?;
    qpoly_span(&ext, &[0, 2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::Limits;
    use crate::gf::make_field;
    use num_bigint::BigUint;

    fn ext(p: u32, n: u32) -> QExtension {
        QExtension::over_prime(p, n, None).unwrap()
    }

    #[test]
    fn self_dual_bases() {
        for (p, n) in [(2, 2), (2, 3), (2, 4), (3, 3)] {
            let e = ext(p, n);
            let b = self_dual_basis(&e).unwrap();
            let gram = e.with_basis(&b).unwrap().trace_gram();
            assert_eq!(gram, MatFq::identity(e.small(), n as usize));
        }
    }

    #[test]
    fn self_dual_spread_set_is_symmetric() {
        let e = ext(2, 3);
        let sd = e.with_basis(&self_dual_basis(&e).unwrap()).unwrap();
        for m in field_spread_set_in(&sd).unwrap().matrices() {
            assert_eq!(m.transpose(), *m);
        }
    }

    #[test]
    fn gabidulin_2_4_2_1() {
        let g = gabidulin(&ext(2, 4), 2, 1).unwrap();
        let c = g.code();
        assert_eq!(c.cardinality(), BigUint::from(256u32));
        let r = c.is_mrd(&Limits::default()).unwrap();
        assert!(r.mrd);
        assert_eq!(r.d, 3);
        assert_eq!(c.transpose().min_distance(&Limits::default()).unwrap(), 3);
    }

    #[test]
    fn gabidulin_preconditions() {
        assert!(gabidulin(&ext(2, 4), 4, 1).is_err());
        assert!(gabidulin(&ext(2, 4), 0, 1).is_err());
        assert!(gabidulin(&ext(2, 4), 2, 2).is_err());
    }

    #[test]
    fn gabidulin_nested() {
        let e = ext(3, 3);
        let g1 = gabidulin(&e, 1, 1).unwrap();
        let g2 = gabidulin(&e, 2, 1).unwrap();
        assert!(g1.code().matrices().iter().all(|x| g2.code().contains(x)));
    }

    #[test]
    fn twisted_with_zero_eta_is_gabidulin() {
        let e = ext(2, 5);
        let h = generalized_twisted(&e, 2, 2, 3, 0).unwrap();
        let g = gabidulin(&e, 2, 2).unwrap();
        assert!(h.code().same_code(g.code()));
    }

    #[test]
    fn twisted_norm_condition() {
        let e = ext(2, 4);
        assert_eq!(generalized_twisted(&e, 2, 1, 0, 1).unwrap_err(), Error::NormCondition);
    }

    #[test]
    fn twisted_q3_is_mrd() {
        let e = QExtension::over_prime(3, 4, Some(&[2, 0, 0, 2, 1])).unwrap();
        let eta = e.big().generator();
        let h = generalized_twisted(&e, 2, 1, 1, eta).unwrap();
        let r = h.code().is_mrd(&Limits::default()).unwrap();
        assert!(r.mrd);
        assert_eq!(r.d, 3);
    }

    #[test]
    fn rectangular_examples() {
        let e = ext(2, 4);
        let g = gabidulin(&e, 1, 1).unwrap();
        let r = g.rectangular(&[1, 2]).unwrap();
        assert_eq!(r.shape(), (2, 4));
        assert_eq!(r.cardinality(), BigUint::from(16u32));
        let rep = r.is_mrd(&Limits::default()).unwrap();
        assert!(rep.mrd && rep.d == 2);
        let sq = g.rectangular(e.basis()).unwrap();
        assert!(sq.same_code(g.code()));
        assert_eq!(g.rectangular(&[1, 1]).unwrap_err(), Error::DependentBasis);
    }

    #[test]
    fn field_spread_sets() {
        let c = field_spread_set(2, 2).unwrap();
        let w = c.weight_distribution(&Limits::default()).unwrap();
        assert_eq!(w.get(2), BigUint::from(3u32));
        for (p, n) in [(2, 3), (3, 2), (5, 2), (2, 5)] {
            assert_eq!(field_spread_set(p, n).unwrap().min_distance(&Limits::default()).unwrap(), n as usize);
        }
    }

    #[test]
    fn gold_ranks() {
        let c = gold_apn_code(4, 1).unwrap();
        let w = c.weight_distribution(&Limits::default()).unwrap();
        assert_eq!(w.get(3), BigUint::from(15u32));
        assert_eq!(gold_apn_code(5, 1).unwrap().min_distance(&Limits::default()).unwrap(), 4);
        assert_eq!(gold_apn_code(4, 2).unwrap_err(), Error::NotApn { n: 4, k: 2 });
        let bad = gold_apn_code_unchecked(4, 2).unwrap();
        assert!(bad.min_distance(&Limits::default()).unwrap() < 3);
    }

    #[test]
    fn example_2x4_is_mrd() {
        let r = example_2x4().is_mrd(&Limits::default()).unwrap();
        assert_eq!((r.mrd, r.d, r.bound), (true, 2, BigUint::from(16u32)));
    }

    #[test]
    fn example_3_6_fails_covering() {
        let f = make_field(2, 1, None).unwrap();
        let c = example_3_6(&f, 3, 3).unwrap();
        assert!(!c.covering_property(&Limits::default()).unwrap());
    }

    #[test]
    fn zhou_pott_preconditions() {
        assert!(zhou_pott(2, 3, 1, true, 1).is_err());
        let f = ext(3, 3);
        let alpha = smallest_nonsquare(f.big()).unwrap();
        assert!(zhou_pott(3, 2, 1, true, alpha).is_err());
        assert!(zhou_pott(3, 3, 1, true, 1).is_err());
        let z = zhou_pott(3, 3, 1, true, alpha).unwrap();
        assert_eq!(z.code.dim(), Some(6));
        assert_eq!(z.projection().unwrap().shape(), (3, 6));
        assert_eq!(z.code.min_distance(&Limits::default()).unwrap(), 6);
        let z2 = zhou_pott(3, 3, 1, false, alpha).unwrap();
        assert_eq!(z2.code.min_distance(&Limits::default()).unwrap(), 6);
    }
}
