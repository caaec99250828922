//! Kernel of the translation structure, middle and right nuclei, and the
//! classification of the resulting matrix algebras.
//!
//! Nuclei are solved over `F_q` (their defining conditions are
//! `F_q`-linear). The kernel consists of endomorphisms of the additive
//! group of `F_q^{m+n}`, which are only `F_p`-linear, so it is solved over
//! `F_p` on the prime-field expansion of the code.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::code::{Limits, RankCode};
use crate::construct::{generalized_twisted_unchecked, QPolyCode};
use crate::enumerate::{self, Span};
use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::linpoly::{LinPoly, QExtension};
use crate::mat::{gaussian_binomial, MatFq, RowSpace, Side, SubspaceIter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum AlgebraKind {
    Kernel,
    Middle,
    Right,
    Other,
}

impl AlgebraKind {
    pub fn name(self) -> &'static str {
        match self {
            AlgebraKind::Kernel => "kernel",
            AlgebraKind::Middle => "middle",
            AlgebraKind::Right => "right",
            AlgebraKind::Other => "algebra",
        }
    }
}

/// A finite algebra of `size x size` matrices over `field`, given by a basis,
/// with the outcome of its classification.
#[derive(Debug, Clone)]
pub struct AlgebraSummary {
    pub kind: AlgebraKind,
    pub field: FieldCtx,
    pub size: usize,
    pub p: u32,
    pub dim_fp: usize,
    pub cardinality: BigUint,
    pub contains_identity: bool,
    pub closed_under_mul: bool,
    pub all_nonzero_invertible: bool,
    pub commutative: bool,
    pub is_field: bool,
    pub field_order: Option<BigUint>,
    /// A nonzero non-invertible element, if one was found.
    pub singular: Option<MatFq>,
    /// Nonzero `(z, y)` with `z y = 0`.
    pub witness: Option<(MatFq, MatFq)>,
    /// Invertibility was only sampled, not checked on every element.
    pub sampled: bool,
    pub basis: Vec<MatFq>,
}

impl AlgebraSummary {
    /// Span of the basis as flattened matrices.
    pub fn space(&self) -> RowSpace {
        RowSpace::from_vectors(&self.field, self.size * self.size, self.basis.iter().map(|b| b.data()))
    }

    pub fn contains(&self, x: &MatFq) -> bool {
        x.shape() == (self.size, self.size) && self.space().contains(x.data())
    }

    /// `{Z^t}` as a row space.
    pub fn transposed_space(&self) -> RowSpace {
        let t: Vec<MatFq> = self.basis.iter().map(MatFq::transpose).collect();
        RowSpace::from_vectors(&self.field, self.size * self.size, t.iter().map(|b| b.data()))
    }

    /// Field order if a field, else `None`.
    pub fn order_if_field(&self) -> Option<&BigUint> {
        self.field_order.as_ref()
    }

    /// Number of invertible elements, by exhaustive sweep.
    pub fn count_invertible(&self, limits: &Limits) -> Result<BigUint> {
        let (gens, rows) = fp_generators(&self.field, &self.basis);
        let span = Span { p: self.p, rows, cols: rows, gens: &gens };
        let hist = enumerate::rank_histogram(&span, limits.max_enum)?;
        Ok(BigUint::from(hist[rows]))
    }

    pub fn describe(&self) -> String {
        match &self.field_order {
            Some(o) => format!("{} field of order {o}", self.kind.name()),
            None => format!("{} of cardinality {} (not a field)", self.kind.name(), self.cardinality),
        }
    }
}

/// Basis `g^j B_i` over `F_p`, expanded to `F_p` matrices.
fn fp_generators(field: &FieldCtx, basis: &[MatFq]) -> (Vec<Vec<u32>>, usize) {
    let e = field.degree() as usize;
    let rows = basis.first().map_or(0, |b| b.rows() * e);
    let mut gens = Vec::with_capacity(basis.len() * e);
    for b in basis {
        for &g in &field.polynomial_basis() {
            gens.push(b.scale(g).expand_prime_poly().into_data());
        }
    }
    (gens, rows)
}

fn combine(field: &FieldCtx, basis: &[MatFq], coeffs: &[u32]) -> MatFq {
    let n = basis[0].rows();
    let mut acc = MatFq::zeros(field, n, n);
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            acc = acc.add(&b.scale(c)).expect("same shape");
        }
    }
    acc
}

fn zero_divisor_partner(field: &FieldCtx, basis: &[MatFq], z: &MatFq) -> Option<MatFq> {
    let n = z.rows();
    let rows: Vec<Vec<u32>> = basis.iter().map(|b| z.mul(b).expect("square").into_data()).collect();
    let sys = MatFq::from_rows(field, &rows).ok()?;
    let ns = sys.nullspace(Side::Left);
    if ns.rows() == 0 {
        return None;
    }
    let y = combine(field, basis, ns.row(0));
    debug_assert!(z.mul(&y).expect("square").is_zero());
    (!y.is_zero() && n > 0).then_some(y)
}

/// Classifies the `F_q`-span of `basis` (independent square matrices over
/// `field`). Algebras with more than `limits.exhaustive_bound` elements get
/// their invertibility sampled and are flagged.
pub fn classify(kind: AlgebraKind, field: &FieldCtx, basis: Vec<MatFq>, limits: &Limits) -> Result<AlgebraSummary> {
    let size = match basis.first() {
        Some(b) if b.is_square() => b.rows(),
        Some(_) => return Err(Error::shape("algebra elements must be square")),
        None => return Err(Error::pre("empty algebra")),
    };
    let space = RowSpace::from_vectors(field, size * size, basis.iter().map(|b| b.data()));
    if space.dim() != basis.len() {
        return Err(Error::DependentBasis);
    }
    let e = field.degree() as usize;
    let dim_fp = basis.len() * e;
    let cardinality = BigUint::from(field.order()).pow(basis.len() as u32);

    let contains_identity = space.contains(MatFq::identity(field, size).data());
    let mut closed_under_mul = true;
    let mut commutative = true;
    for a in &basis {
        for b in &basis {
            let ab = a.mul(b)?;
            if closed_under_mul && !space.contains(ab.data()) {
                closed_under_mul = false;
            }
            if commutative && ab != b.mul(a)? {
                commutative = false;
            }
        }
    }

    let mut singular = basis.iter().find(|b| b.rank() < size).cloned();
    let mut sampled = false;
    if singular.is_none() {
        let exhaustive = cardinality <= BigUint::from(limits.exhaustive_bound.min(limits.max_enum));
        if exhaustive {
            let (gens, rows) = fp_generators(field, &basis);
            let span = Span { p: field.p(), rows, cols: rows, gens: &gens };
            if let Some(c) = enumerate::first_rank_below(&span, rows, u64::MAX)? {
                let coeffs: Vec<u32> = c.chunks(e).map(|d| field.from_digits(d)).collect();
                singular = Some(combine(field, &basis, &coeffs));
            }
        } else {
            sampled = true;
            let mut rng = ChaCha8Rng::seed_from_u64(limits.seed);
            let q = field.order();
            let zone = u32::MAX - u32::MAX % q;
            let mut draw = || loop {
                let v = rng.next_u32();
                if v < zone {
                    return v % q;
                }
            };
            for _ in 0..limits.samples {
                let coeffs: Vec<u32> = (0..basis.len()).map(|_| draw()).collect();
                let x = combine(field, &basis, &coeffs);
                if !x.is_zero() && x.rank() < size {
                    singular = Some(x);
                    sampled = false;
                    break;
                }
            }
        }
    }
    let all_nonzero_invertible = singular.is_none();
    let witness = singular
        .as_ref()
        .and_then(|z| zero_divisor_partner(field, &basis, z).map(|y| (z.clone(), y)));
    let is_field = contains_identity && closed_under_mul && all_nonzero_invertible && commutative;
    Ok(AlgebraSummary {
        kind,
        field: field.clone(),
        size,
        p: field.p(),
        dim_fp,
        field_order: is_field.then(|| cardinality.clone()),
        cardinality,
        contains_identity,
        closed_under_mul,
        all_nonzero_invertible,
        commutative,
        is_field,
        singular,
        witness,
        sampled,
        basis,
    })
}

/// Solutions `Z` (`size x size`) of `f(Z E) in span` for the unit matrices,
/// where `image(a, b, i)` is the flattened image of unit `E_ab` under the
/// `i`-th constraint map.
fn solve_stabilizer(
    field: &FieldCtx,
    size: usize,
    space: &RowSpace,
    constraints: usize,
    image: impl Fn(usize, usize, usize) -> Vec<u32>,
) -> Vec<MatFq> {
    let width = space.ambient();
    let mut eq = MatFq::zeros(field, size * size, constraints * width);
    for a in 0..size {
        for b in 0..size {
            let row = a * size + b;
            for i in 0..constraints {
                let r = space.reduce(&image(a, b, i));
                for (c, v) in r.into_iter().enumerate() {
                    eq.set(row, i * width + c, v);
                }
            }
        }
    }
    let ns = eq.nullspace(Side::Left);
    (0..ns.rows())
        .map(|k| MatFq::from_codes(field, size, size, ns.row(k).to_vec()).expect("shape"))
        .collect()
}

/// `{Z in F_q^{m x m} : Z C in C for all C}`.
pub fn middle_nucleus(code: &RankCode, limits: &Limits) -> Result<AlgebraSummary> {
    let basis = code.require_basis()?;
    let (m, n) = code.shape();
    let space = code.space()?;
    let sols = solve_stabilizer(code.field(), m, &space, basis.len(), |a, b, i| {
        // E_ab B_i: row b of B_i placed in row a
        let mut v = vec![0u32; m * n];
        v[a * n..(a + 1) * n].copy_from_slice(basis[i].row(b));
        v
    });
    classify(AlgebraKind::Middle, code.field(), sols, limits)
}

/// `{Y in F_q^{n x n} : C Y in C for all C}`.
pub fn right_nucleus(code: &RankCode, limits: &Limits) -> Result<AlgebraSummary> {
    let basis = code.require_basis()?;
    let (m, n) = code.shape();
    let space = code.space()?;
    let sols = solve_stabilizer(code.field(), n, &space, basis.len(), |a, b, i| {
        // B_i E_ab: column a of B_i placed in column b
        let mut v = vec![0u32; m * n];
        for r in 0..m {
            v[r * n + b] = basis[i].get(r, a);
        }
        v
    });
    classify(AlgebraKind::Right, code.field(), sols, limits)
}

/// The kernel of `T(C)`: endomorphisms `mu` of `F_p^{(m+n)e}` (acting on the
/// right) with `S(inf) mu` in `S(inf)` and `S(M) mu` in `S(M)` for every
/// codeword `M`. Codes without `O` are translated first.
pub fn kernel_translation(code: &RankCode, limits: &Limits) -> Result<AlgebraSummary> {
    let code = code.translate_to_zero();
    let f = code.field();
    let fp = f.prime_subfield();
    let e = f.degree() as usize;
    let (me, ne) = (code.m() * e, code.n() * e);
    let dd = me + ne;
    // matrices over F_p whose S(M) conditions, together with S(inf) and O,
    // imply all the others
    let mats: Vec<MatFq> = if code.is_linear() {
        let mut v = vec![MatFq::zeros(&fp, me, ne)];
        v.extend(code.expand_prime()?.matrices().iter().cloned());
        v
    } else {
        let words = code.matrices();
        if words.len() as u64 > limits.max_enum {
            return Err(Error::GuardExceeded { needed: BigUint::from(words.len()), limit: limits.max_enum });
        }
        words.iter().map(MatFq::expand_prime_poly).collect()
    };

    let unknown = |a: usize, b: usize| a * dd + b;
    let mut cons = RowSpace::new(&fp, dd * dd);
    // S(inf): the lower-left block vanishes
    for a in me..dd {
        for b in 0..me {
            let mut v = vec![0u32; dd * dd];
            v[unknown(a, b)] = 1;
            cons.insert(&v);
        }
    }
    // S(M): [I | M] mu [-M; I] = 0
    for mhat in &mats {
        let r = |i: usize, a: usize| -> u32 {
            if a < me {
                u32::from(a == i)
            } else {
                mhat.get(i, a - me)
            }
        };
        let qm = |b: usize, c: usize| -> u32 {
            if b < me {
                fp.neg(mhat.get(b, c))
            } else {
                u32::from(b - me == c)
            }
        };
        for i in 0..me {
            for c in 0..ne {
                let mut v = vec![0u32; dd * dd];
                for a in 0..dd {
                    let ra = r(i, a);
                    if ra == 0 {
                        continue;
                    }
                    for b in 0..dd {
                        let qb = qm(b, c);
                        if qb != 0 {
                            v[unknown(a, b)] = fp.add(v[unknown(a, b)], fp.mul(ra, qb));
                        }
                    }
                }
                cons.insert(&v);
            }
        }
    }
    let sols = cons.orthogonal();
    let basis: Vec<MatFq> = sols
        .basis()
        .iter()
        .map(|v| MatFq::from_codes(&fp, dd, dd, v.clone()).expect("shape"))
        .collect();
    for mu in &basis {
        let n3 = mu.submatrix(me..dd, 0..me);
        let n4 = mu.submatrix(0..me, me..dd);
        if !n3.is_zero() || !n4.is_zero() {
            return Err(Error::Invariant("kernel element with nonzero off-diagonal block".into()));
        }
        let n1 = mu.submatrix(0..me, 0..me);
        let n2 = mu.submatrix(me..dd, me..dd);
        for mhat in &mats {
            if n1.mul(mhat)? != mhat.mul(&n2)? {
                return Err(Error::Invariant("kernel element with N1 M != M N2".into()));
            }
        }
    }
    classify(AlgebraKind::Kernel, &fp, basis, limits)
}

/// One projection `L_U C` of a nuclei spectrum.
#[derive(Debug, Clone)]
pub struct SpectrumEntry {
    pub level: usize,
    pub subspace: MatFq,
    pub code_dim: usize,
    pub summary: AlgebraSummary,
}

fn spectrum_entry(code: &RankCode, side: Side, level: usize, lu: MatFq, limits: &Limits) -> Result<SpectrumEntry> {
    let proj = code.left_mul(&lu)?;
    let summary = match side {
        Side::Left => middle_nucleus(&proj, limits)?,
        Side::Right => right_nucleus(&proj, limits)?,
    };
    Ok(SpectrumEntry { level, subspace: lu, code_dim: proj.dim().unwrap_or(0), summary })
}

/// Middle (`Side::Left`) or right (`Side::Right`) nucleus of `L_U C` for
/// every `l`-dimensional subspace `U` of `F_q^m` and every `l` in `levels`,
/// in canonical subspace order.
pub fn nuclei_spectrum(code: &RankCode, side: Side, levels: &[usize], limits: &Limits) -> Result<Vec<SpectrumEntry>> {
    code.require_basis()?;
    let q = code.field().order() as u64;
    let mut jobs = Vec::new();
    for &l in levels {
        let count = gaussian_binomial(code.m() as u32, l as u32, q)?;
        if count > BigUint::from(limits.max_enum) {
            return Err(Error::GuardExceeded { needed: count, limit: limits.max_enum });
        }
        jobs.extend(SubspaceIter::new(code.m(), l, code.field())?.map(|lu| (l, lu)));
    }
    run_jobs(jobs, |(l, lu)| spectrum_entry(code, side, l, lu, limits))
}

#[cfg(feature = "parallel")]
pub(crate) fn run_jobs<J: Send, T: Send>(jobs: Vec<J>, f: impl Fn(J) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
    use rayon::prelude::*;
    jobs.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn run_jobs<J, T>(jobs: Vec<J>, f: impl Fn(J) -> Result<T>) -> Result<Vec<T>> {
    jobs.into_iter().map(f).collect()
}

/// Whether every element of `N_r(C)` lies in `N_r(L C)`.
pub fn projection_containment_check(code: &RankCode, l: &MatFq, limits: &Limits) -> Result<bool> {
    if l.rank() < l.rows() {
        return Err(Error::pre("L must have full row rank"));
    }
    let nr = right_nucleus(code, limits)?;
    let proj = code.left_mul(l)?;
    let space = proj.space()?;
    for y in &nr.basis {
        for b in proj.require_basis()? {
            if !space.contains(b.mul(y)?.data()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Both answers of the automorphism test for `H_{k,s}(eta, h)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HksCheck {
    /// `eta c^{q^h - 1} d^{q^{r+h} - q^{r+sk}} = eta^{rho q^r}`.
    pub formula: bool,
    /// `L_1 o f^rho o L_2` stays in the code for every basis polynomial `f`.
    pub direct: bool,
}

/// `x -> x^e` with `e` reduced mod `q^n - 1`; negative exponents allowed for
/// nonzero `x`.
fn pow_signed(big: &FieldCtx, x: u32, pos: u64, neg: u64) -> u32 {
    let ord = big.order() as u64 - 1;
    let e = (pos % ord + ord - neg % ord) % ord;
    big.pow(x, e)
}

/// Tests whether `f -> c (f^rho)^{q^r} o d x^{q^{n-r}}` maps
/// `H_{k,s}(eta, h)` onto itself, once through the closed-form condition and
/// once by applying the map to a basis. `rho` is `x -> x^{p^rho}` on the
/// coefficients.
pub fn check_hks_automorphism(
    ext: &QExtension,
    k: u32,
    s: u32,
    h: u32,
    eta: u32,
    c: u32,
    d: u32,
    r: u32,
    rho: u32,
) -> Result<HksCheck> {
    let big = ext.big();
    if c == 0 || d == 0 || c >= big.order() || d >= big.order() {
        return Err(Error::pre("c and d must be nonzero field elements"));
    }
    let n = ext.n();
    if r >= n {
        return Err(Error::pre("r must be below n"));
    }
    let q = ext.small().order() as u64;
    let qp = |i: u32| -> u64 {
        let ord = big.order() as u64 - 1;
        let mut acc = 1u64;
        for _ in 0..i % n {
            acc = (acc as u128 * q as u128 % ord as u128) as u64;
        }
        acc
    };
    let lhs = big.mul(
        big.mul(eta, pow_signed(big, c, qp(h), 1)),
        pow_signed(big, d, qp(r + h), qp(r + s * k)),
    );
    let rhs = ext.frob_q(big.frob(eta, rho), r);
    let formula = lhs == rhs;

    let hcode: QPolyCode = generalized_twisted_unchecked(ext, k, s, h, eta)?;
    let l1 = LinPoly::monomial(ext, c, r);
    let l2 = LinPoly::monomial(ext, d, (n - r) % n);
    let space = hcode.code().space()?;
    let mut direct = true;
    for f in hcode.polys() {
        let coeffs: Vec<u32> = f.coeffs().iter().map(|&a| big.frob(a, rho)).collect();
        let frho = LinPoly::new(ext, &coeffs)?;
        let g = l1.compose(&frho)?.compose(&l2)?;
        if !space.contains(g.to_matrix().data()) {
            direct = false;
            break;
        }
    }
    Ok(HksCheck { formula, direct })
}

/// Whether the algebras have equal spans.
pub fn same_algebra(a: &AlgebraSummary, b: &AlgebraSummary) -> bool {
    a.size == b.size && a.field == b.field && a.space() == b.space()
}

/// Whether `b` is `{Z^t : Z in a}`.
pub fn is_transpose_algebra(a: &AlgebraSummary, b: &AlgebraSummary) -> bool {
    a.size == b.size && a.field == b.field && a.transposed_space() == b.space()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{example_2x4, example_3_6, field_spread_set, gabidulin, kernel_larger};
    use crate::gf::make_field;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn scalar_algebra_is_prime_field() {
        let f = make_field(5, 1, None).unwrap();
        let s = classify(AlgebraKind::Other, &f, vec![MatFq::identity(&f, 3)], &lim()).unwrap();
        assert!(s.is_field);
        assert_eq!(s.field_order, Some(BigUint::from(5u32)));
    }

    #[test]
    fn regular_representation_of_f81() {
        let c = field_spread_set(3, 4).unwrap();
        let s = classify(AlgebraKind::Other, c.field(), c.matrices().to_vec(), &lim()).unwrap();
        assert!(s.is_field && !s.sampled);
        assert_eq!(s.field_order, Some(BigUint::from(81u32)));
    }

    #[test]
    fn gabidulin_nuclei_and_kernel() {
        let g = gabidulin(&QExtension::over_prime(2, 4, None).unwrap(), 2, 1).unwrap();
        let c = g.code();
        assert_eq!(middle_nucleus(c, &lim()).unwrap().field_order, Some(BigUint::from(16u32)));
        assert_eq!(right_nucleus(c, &lim()).unwrap().field_order, Some(BigUint::from(16u32)));
        assert_eq!(kernel_translation(c, &lim()).unwrap().field_order, Some(BigUint::from(2u32)));
    }

    #[test]
    fn full_space_middle_nucleus_is_matrix_ring() {
        let f = make_field(3, 1, None).unwrap();
        let c = RankCode::full_space(&f, 2, 3);
        let s = middle_nucleus(&c, &lim()).unwrap();
        assert_eq!(s.dim_fp, 4);
        assert!(!s.is_field && s.closed_under_mul && s.contains_identity);
        let (z, y) = s.witness.unwrap();
        assert!(z.mul(&y).unwrap().is_zero() && !z.is_zero() && !y.is_zero());
    }

    #[test]
    fn example_3_6_kernel_has_zero_divisors() {
        let f = make_field(2, 1, None).unwrap();
        let c = example_3_6(&f, 3, 3).unwrap();
        let k = kernel_translation(&c, &lim()).unwrap();
        assert!(!k.is_field);
        let (z, y) = k.witness.clone().expect("witness");
        assert!(k.contains(&z) && k.contains(&y));
        assert!(z.mul(&y).unwrap().is_zero());
    }

    #[test]
    fn kernel_larger_has_order_four() {
        let f = make_field(2, 1, None).unwrap();
        let c = kernel_larger(&f).unwrap();
        let k = kernel_translation(c.code(), &lim()).unwrap();
        assert_eq!(k.field_order, Some(BigUint::from(4u32)));
    }

    #[test]
    fn example_2x4_right_nucleus_has_rank_two_element() {
        let c = example_2x4();
        let nr = right_nucleus(&c, &lim()).unwrap();
        assert!(!nr.all_nonzero_invertible);
        let z = nr.singular.clone().unwrap();
        assert_eq!(z.rank(), 2);
        for b in c.matrices() {
            assert!(c.contains(&b.mul(&z).unwrap()));
        }
    }

    #[test]
    fn hks_gabidulin_always_passes() {
        let ext = QExtension::over_prime(2, 4, None).unwrap();
        for c in 1..16 {
            let chk = check_hks_automorphism(&ext, 2, 1, 1, 0, c, 3, 1, 0).unwrap();
            assert!(chk.formula && chk.direct);
        }
    }
}
