//! Dimensional dual hyperovals: DHO-sets over `F_2`, their component
//! collections, and kernels of subspace collections.
//!
//! A DHO-set is a table `beta(a)` of `n x r` matrices indexed by
//! `a in F_2^n`, written as a bitmask (bit `i` is coordinate `i`). Its
//! components are the row spaces `X(a) = {(x, x beta(a))}` of `[I | beta(a)]`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::code::{CodeBody, Limits, RankCode};
use crate::construct::{gcd, gold_apn_code};
use crate::duality::KnuthOp;
use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::invariant::{classify, kernel_translation, middle_nucleus, right_nucleus, run_jobs, AlgebraKind, AlgebraSummary};
use crate::mat::{MatFq, RowSpace, Side};

#[derive(Debug, Clone)]
pub struct DhoSet {
    field: FieldCtx,
    n: usize,
    r: usize,
    table: Vec<MatFq>,
    basis: Option<Vec<MatFq>>,
}

fn bits(a: usize, n: usize) -> Vec<u32> {
    (0..n).map(|i| ((a >> i) & 1) as u32).collect()
}

fn mask(v: &[u32]) -> usize {
    v.iter().enumerate().fold(0, |acc, (i, &b)| acc | ((b as usize & 1) << i))
}

fn guard(needed: u64, limits: &Limits) -> Result<()> {
    if needed > limits.max_enum {
        return Err(Error::GuardExceeded { needed: BigUint::from(needed), limit: limits.max_enum });
    }
    Ok(())
}

impl DhoSet {
    /// From a binary code: a linear code of dimension `n` in `F_2^{n x r}`
    /// gives the bilinear set `beta(a) = sum a_i B_i`; an explicit code of
    /// `2^n` matrices is taken as the table in the given order.
    pub fn from_code(code: &RankCode) -> Result<Self> {
        let f = code.field();
        if f.order() != 2 {
            return Err(Error::pre("DHO-sets are defined over F_2"));
        }
        let (n, r) = code.shape();
        match code.body() {
            CodeBody::Linear(basis) => {
                if basis.len() != n {
                    return Err(Error::pre("a bilinear DHO-set in F_2^{n x r} has dimension n"));
                }
                let mut table = vec![MatFq::zeros(f, n, r)];
                for a in 1usize..1 << n {
                    let low = a.trailing_zeros() as usize;
                    table.push(table[a & (a - 1)].add(&basis[low])?);
                }
                Ok(DhoSet { field: f.clone(), n, r, table, basis: Some(basis.clone()) })
            }
            CodeBody::Explicit(mats) => Self::from_table(n, r, mats.clone()),
        }
    }

    /// `table[a] = beta(a)`; needs `2^n` entries with `beta(0) = O`.
    pub fn from_table(n: usize, r: usize, table: Vec<MatFq>) -> Result<Self> {
        if n == 0 || n >= usize::BITS as usize || table.len() != 1 << n {
            return Err(Error::pre("a DHO-set table has 2^n entries"));
        }
        let field = table[0].field().clone();
        if field.order() != 2 {
            return Err(Error::pre("DHO-sets are defined over F_2"));
        }
        for t in &table {
            if t.shape() != (n, r) {
                return Err(Error::shape("table entries must be n x r"));
            }
        }
        if !table[0].is_zero() {
            return Err(Error::pre("beta(0) must be the zero matrix"));
        }
        Ok(DhoSet { field, n, r, table, basis: None })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn table(&self) -> &[MatFq] {
        &self.table
    }

    pub fn beta(&self, a: usize) -> &MatFq {
        &self.table[a]
    }

    /// Images of the unit vectors, when the set was built bilinearly.
    pub fn basis(&self) -> Option<&[MatFq]> {
        self.basis.as_deref()
    }

    pub fn to_code(&self) -> Result<RankCode> {
        match &self.basis {
            Some(b) => RankCode::linear(&self.field, self.n, self.r, b.clone()),
            None => RankCode::explicit(&self.field, self.n, self.r, self.table.clone()),
        }
    }
}

/// The bilinear DHO-set of the Gold function `x^{2^k+1}` on `F_{2^n}`.
pub fn gold_dho_set(n: u32, k: u32) -> Result<DhoSet> {
    DhoSet::from_code(&gold_apn_code(n, k)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum P2Witness {
    /// `ker(beta(a) - beta(b))` has dimension `dim`.
    KernelDim { a: usize, b: usize, dim: usize },
    /// `b` and `c` give the same kernel point for `a`.
    Repeated { a: usize, b: usize, c: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DhoCheck {
    pub p1: bool,
    pub p2: bool,
    /// `(a, b, rank)` with `rank(beta(a) - beta(b)) != n - 1`.
    pub p1_witness: Option<(usize, usize, usize)>,
    pub p2_witness: Option<P2Witness>,
}

impl DhoCheck {
    pub fn valid(&self) -> bool {
        self.p1 && self.p2
    }
}

/// Exhaustive check of P1 and P2. Witnesses are the first in order of `a`,
/// then `b`.
pub fn check_dho_set(d: &DhoSet, limits: &Limits) -> Result<DhoCheck> {
    let size = d.table.len();
    guard((size as u64).saturating_mul(size as u64), limits)?;
    let n = d.n;
    let per_a = run_jobs((0..size).collect(), |a| {
        let mut p1 = None;
        let mut p2 = None;
        let mut seen: Vec<Option<usize>> = vec![None; size];
        for b in (0..size).filter(|&b| b != a) {
            let diff = d.table[a].sub(&d.table[b])?;
            let rank = diff.rank();
            if rank != n - 1 && p1.is_none() {
                p1 = Some((a, b, rank));
            }
            if p2.is_some() {
                continue;
            }
            let ker = diff.nullspace(Side::Left);
            if ker.rows() != 1 {
                p2 = Some(P2Witness::KernelDim { a, b, dim: ker.rows() });
                continue;
            }
            let point = mask(ker.row(0));
            match seen[point] {
                Some(c) => p2 = Some(P2Witness::Repeated { a, b: c, c: b }),
                None => seen[point] = Some(b),
            }
        }
        Ok((p1, p2))
    })?;
    let p1_witness = per_a.iter().find_map(|x| x.0);
    let p2_witness = per_a.iter().find_map(|x| x.1);
    Ok(DhoCheck { p1: p1_witness.is_none(), p2: p2_witness.is_none(), p1_witness, p2_witness })
}

/// Subspaces of equal dimension in `F_q^ambient`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceCollection {
    field: FieldCtx,
    ambient: usize,
    dim: usize,
    members: Vec<RowSpace>,
}

impl SubspaceCollection {
    pub fn new(field: &FieldCtx, ambient: usize, members: Vec<RowSpace>) -> Result<Self> {
        let dim = members.first().map_or(0, RowSpace::dim);
        for x in &members {
            if x.field() != field {
                return Err(Error::FieldMismatch);
            }
            if x.ambient() != ambient {
                return Err(Error::shape("member in a different ambient space"));
            }
            if x.dim() != dim {
                return Err(Error::shape("members must have equal dimension"));
            }
        }
        Ok(SubspaceCollection { field: field.clone(), ambient, dim, members })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Common dimension of the members.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn members(&self) -> &[RowSpace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Span of all members.
    pub fn span(&self) -> RowSpace {
        self.members.iter().fold(RowSpace::new(&self.field, self.ambient), |acc, x| acc.sum(x))
    }

    pub fn spans_ambient(&self) -> bool {
        self.span().dim() == self.ambient
    }

    /// The same collection without member `i`.
    pub fn without(&self, i: usize) -> Self {
        let mut members = self.members.clone();
        members.remove(i);
        SubspaceCollection { members, ..self.clone() }
    }

    /// The collection with member `i` repeated at the end.
    pub fn with_duplicate(&self, i: usize) -> Self {
        let mut members = self.members.clone();
        members.push(self.members[i].clone());
        SubspaceCollection { members, ..self.clone() }
    }
}

/// `X(a)` for every `a`, in table order.
pub fn components(d: &DhoSet) -> SubspaceCollection {
    let (n, r) = (d.n, d.r);
    let members = d
        .table
        .iter()
        .map(|b| {
            let rows: Vec<Vec<u32>> = (0..n)
                .map(|i| {
                    let mut v = vec![0u32; n + r];
                    v[i] = 1;
                    v[n..].copy_from_slice(b.row(i));
                    v
                })
                .collect();
            RowSpace::from_vectors(&d.field, n + r, rows.iter().map(|v| v.as_slice()))
        })
        .collect();
    SubspaceCollection { field: d.field.clone(), ambient: n + r, dim: n, members }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DAxioms {
    pub d1: bool,
    pub d2: bool,
    pub d3: bool,
    /// `(i, j, dim(X_i ∩ X_j))` for a pair with intersection dimension `!= 1`.
    pub d1_witness: Option<(usize, usize, usize)>,
    /// Three members with a common nonzero vector.
    pub d2_witness: Option<(usize, usize, usize)>,
    pub count: usize,
    pub expected_count: BigUint,
}

impl DAxioms {
    pub fn valid(&self) -> bool {
        self.d1 && self.d2 && self.d3
    }
}

fn pairs(len: usize) -> Vec<(usize, usize)> {
    (0..len).flat_map(|i| (i + 1..len).map(move |j| (i, j))).collect()
}

/// D1 and D3 directly; D2 through the pairwise intersections when D1 holds
/// (for each `X`, the lines `X ∩ Y` must be distinct), otherwise over all
/// triples.
pub fn check_d_axioms(s: &SubspaceCollection, limits: &Limits) -> Result<DAxioms> {
    let len = s.members.len();
    let q = BigUint::from(s.field.order());
    let expected_count = (0..s.dim).fold(BigUint::from(1u32), |acc, i| acc + q.pow(i as u32));
    let len64 = len as u64;
    guard(len64.saturating_mul(len64), limits)?;
    let all_pairs = pairs(len);
    let meets = run_jobs(all_pairs.clone(), |(i, j)| Ok(s.members[i].intersection(&s.members[j])))?;
    let d1_witness = all_pairs
        .iter()
        .zip(&meets)
        .find(|(_, x)| x.dim() != 1)
        .map(|(&(i, j), x)| (i, j, x.dim()));
    let d2_witness = if d1_witness.is_none() {
        let mut lines: Vec<Vec<(usize, &RowSpace)>> = vec![Vec::new(); len];
        for (&(i, j), x) in all_pairs.iter().zip(&meets) {
            lines[i].push((j, x));
            lines[j].push((i, x));
        }
        let mut found = None;
        'outer: for (i, ls) in lines.iter().enumerate() {
            for (a, &(j, x)) in ls.iter().enumerate() {
                if let Some(&(k, _)) = ls[a + 1..].iter().find(|(_, y)| *y == x) {
                    let mut t = [i, j, k];
                    t.sort_unstable();
                    found = Some((t[0], t[1], t[2]));
                    break 'outer;
                }
            }
        }
        found
    } else {
        guard(len64.saturating_mul(len64).saturating_mul(len64) / 6, limits)?;
        let mut found = None;
        'triples: for (&(i, j), x) in all_pairs.iter().zip(&meets) {
            if x.dim() == 0 {
                continue;
            }
            for k in j + 1..len {
                if x.intersection(&s.members[k]).dim() > 0 {
                    found = Some((i, j, k));
                    break 'triples;
                }
            }
        }
        found
    };
    Ok(DAxioms {
        d1: d1_witness.is_none(),
        d2: d2_witness.is_none(),
        d3: BigUint::from(len) == expected_count,
        d1_witness,
        d2_witness,
        count: len,
        expected_count,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DoublyDualWitness {
    /// `X_i + X_j` has codimension `codim` in the span of the collection.
    Pair { i: usize, j: usize, codim: usize },
    /// `X_i + X_j + X_k` is a proper subspace of the span.
    Triple { i: usize, j: usize, k: usize },
}

/// Pairwise sums are hyperplanes of the span and triple sums are the span.
pub fn doubly_dual(s: &SubspaceCollection, limits: &Limits) -> Result<Option<DoublyDualWitness>> {
    let len = s.members.len() as u64;
    guard(len.saturating_mul(len).saturating_mul(len) / 6, limits)?;
    let u = s.span().dim();
    let all_pairs = pairs(s.members.len());
    let found = run_jobs(all_pairs, |(i, j)| {
        let sum = s.members[i].sum(&s.members[j]);
        if sum.dim() + 1 != u {
            return Ok(Some(DoublyDualWitness::Pair { i, j, codim: u - sum.dim() }));
        }
        for k in j + 1..s.members.len() {
            if sum.sum(&s.members[k]).dim() != u {
                return Ok(Some(DoublyDualWitness::Triple { i, j, k }));
            }
        }
        Ok(None)
    })?;
    Ok(found.into_iter().flatten().next())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Predicates {
    pub bilinear: bool,
    pub symmetric: bool,
    pub alternating: bool,
    pub doubly_dual: bool,
    /// `(a, b)` with `beta(a + b) != beta(a) + beta(b)`.
    pub bilinear_witness: Option<(usize, usize)>,
    /// `(x, a)` with `x beta(a) != a beta(x)`.
    pub symmetric_witness: Option<(usize, usize)>,
    /// `a` with `a beta(a) != 0`.
    pub alternating_witness: Option<usize>,
    pub doubly_dual_witness: Option<DoublyDualWitness>,
}

pub fn predicates(d: &DhoSet, limits: &Limits) -> Result<Predicates> {
    let size = d.table.len();
    guard((size as u64).saturating_mul(size as u64), limits)?;
    let mut bilinear_witness = None;
    'bil: for a in 0..size {
        for b in a + 1..size {
            if d.table[a ^ b] != d.table[a].add(&d.table[b])? {
                bilinear_witness = Some((a, b));
                break 'bil;
            }
        }
    }
    let images: Vec<Vec<Vec<u32>>> =
        (0..size).map(|x| d.table.iter().map(|m| m.apply_row(&bits(x, d.n))).collect()).collect();
    let mut symmetric_witness = None;
    'sym: for x in 0..size {
        for a in x + 1..size {
            if images[x][a] != images[a][x] {
                symmetric_witness = Some((x, a));
                break 'sym;
            }
        }
    }
    let alternating_witness = (0..size).find(|&a| images[a][a].iter().any(|&v| v != 0));
    let doubly_dual_witness = doubly_dual(&components(d), limits)?;
    let p = Predicates {
        bilinear: bilinear_witness.is_none(),
        symmetric: symmetric_witness.is_none(),
        alternating: alternating_witness.is_none(),
        doubly_dual: doubly_dual_witness.is_none(),
        bilinear_witness,
        symmetric_witness,
        alternating_witness,
        doubly_dual_witness,
    };
    if p.bilinear && p.alternating && !p.symmetric {
        return Err(Error::Invariant("bilinear alternating DHO-set that is not symmetric".into()));
    }
    Ok(p)
}

/// `{v : sigma(x, v) = 0 for x in X}` for each member, with
/// `sigma(u, v) = u G v^t`.
pub fn perp_collection(s: &SubspaceCollection, gram: &MatFq) -> Result<SubspaceCollection> {
    if gram.shape() != (s.ambient, s.ambient) {
        return Err(Error::shape("Gram matrix must match the ambient dimension"));
    }
    if gram.rank() != s.ambient {
        return Err(Error::pre("the form must be nondegenerate"));
    }
    let members = s
        .members
        .iter()
        .map(|x| {
            let perp = if x.dim() == 0 {
                RowSpace::new(&s.field, s.ambient).orthogonal()
            } else {
                let xg = MatFq::from_rows(&s.field, x.basis())?.mul(gram)?;
                RowSpace::from_vectors(&s.field, s.ambient, (0..xg.rows()).map(|i| xg.row(i))).orthogonal()
            };
            Ok(perp)
        })
        .collect::<Result<Vec<_>>>()?;
    SubspaceCollection::new(&s.field, s.ambient, members)
}

/// Gram matrix of `sigma((x, y), (x', y')) = x y'^t + y x'^t` on
/// `F_q^n x F_q^n`.
pub fn swap_form(field: &FieldCtx, n: usize) -> MatFq {
    MatFq::from_fn(field, 2 * n, 2 * n, |i, j| u32::from(i + n == j || j + n == i))
}

/// `F_p`-span of a member, as vectors of `F_p` digits.
fn prime_span(field: &FieldCtx, x: &RowSpace) -> RowSpace {
    let fp = field.prime_subfield();
    let e = field.degree() as usize;
    let mut out = RowSpace::new(&fp, x.ambient() * e);
    for v in x.basis() {
        for &g in &field.polynomial_basis() {
            let w: Vec<u32> = v.iter().flat_map(|&c| field.digits(field.mul(g, c))).collect();
            out.insert(&w);
        }
    }
    out
}

/// Endomorphisms `mu` of the additive group of `F_q^ambient` (as `F_p`
/// matrices acting on the right) with `X mu` in `X` for every member.
pub fn collection_kernel(s: &SubspaceCollection, limits: &Limits) -> Result<AlgebraSummary> {
    let fp = s.field.prime_subfield();
    let dd = s.ambient * s.field.degree() as usize;
    let mut cons = RowSpace::new(&fp, dd * dd);
    for x in &s.members {
        let w = prime_span(&s.field, x);
        // column c of the reduction map v -> v mod W
        let red: Vec<Vec<u32>> = (0..dd)
            .map(|b| {
                let mut e = vec![0u32; dd];
                e[b] = 1;
                w.reduce(&e)
            })
            .collect();
        for xv in w.basis() {
            for c in 0..dd {
                let mut v = vec![0u32; dd * dd];
                for (a, &xa) in xv.iter().enumerate() {
                    if xa == 0 {
                        continue;
                    }
                    for b in 0..dd {
                        let rb = red[b][c];
                        if rb != 0 {
                            v[a * dd + b] = fp.add(v[a * dd + b], fp.mul(xa, rb));
                        }
                    }
                }
                cons.insert(&v);
            }
        }
    }
    let basis = cons
        .orthogonal()
        .basis()
        .iter()
        .map(|v| MatFq::from_codes(&fp, dd, dd, v.clone()))
        .collect::<Result<Vec<_>>>()?;
    classify(AlgebraKind::Kernel, &fp, basis, limits)
}

#[derive(Debug, Clone)]
pub struct DhoInvariants {
    pub n: usize,
    pub alternating: bool,
    /// Kernel of the translation structure of the code.
    pub kernel: AlgebraSummary,
    /// Kernel of the component collection.
    pub collection_kernel: AlgebraSummary,
    pub right: Option<AlgebraSummary>,
    pub middle: Option<AlgebraSummary>,
    /// `l` with middle nucleus of order `2^l`.
    pub middle_ell: Option<u32>,
    pub kernel_ok: bool,
    pub collection_kernel_ok: bool,
    pub right_ok: bool,
    pub middle_ok: bool,
}

impl DhoInvariants {
    pub fn ok(&self) -> bool {
        self.kernel_ok && self.collection_kernel_ok && self.right_ok && self.middle_ok
    }
}

fn log2_order(s: &AlgebraSummary) -> Option<u32> {
    let o = s.field_order.as_ref()?;
    (o.count_ones() == 1).then(|| o.trailing_zeros().unwrap_or(0) as u32)
}

/// Kernel and nuclei of a DHO-set, with the expected orders: kernel and
/// right nucleus `F_2`, middle nucleus `F_{2^l}` with `l | n`, and `l` in
/// `{1, 2}` (`l = 2` only for even `n`) when alternating. Nuclei need a
/// bilinear set.
pub fn dho_invariants(d: &DhoSet, limits: &Limits) -> Result<DhoInvariants> {
    let code = d.to_code()?;
    let alternating = predicates(d, limits)?.alternating;
    let kernel = kernel_translation(&code, limits)?;
    let collection_kernel = collection_kernel(&components(d), limits)?;
    let (right, middle) = if code.is_linear() {
        (Some(right_nucleus(&code, limits)?), Some(middle_nucleus(&code, limits)?))
    } else {
        (None, None)
    };
    let two = BigUint::from(2u32);
    let order_two = |s: &AlgebraSummary| s.field_order.as_ref() == Some(&two);
    let middle_ell = middle.as_ref().and_then(log2_order);
    let n = d.n as u32;
    let middle_ok = match (&middle, middle_ell) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(_), Some(l)) => {
            let divides = l >= 1 && gcd(n, l) == l;
            let alt_ok = !alternating || l == 1 || (l == 2 && n % 2 == 0);
            divides && alt_ok
        }
    };
    Ok(DhoInvariants {
        n: d.n,
        alternating,
        kernel_ok: order_two(&kernel),
        collection_kernel_ok: order_two(&collection_kernel),
        right_ok: right.as_ref().is_none_or(order_two),
        middle_ok,
        kernel,
        collection_kernel,
        right,
        middle,
        middle_ell,
    })
}

#[derive(Debug, Clone)]
pub struct KnuthDho {
    pub op: KnuthOp,
    pub set: DhoSet,
    pub check: DhoCheck,
    /// Whether the set the final adjoint was applied to is doubly dual.
    pub pre_top_doubly_dual: Option<bool>,
    /// Whether the input set is doubly dual.
    pub base_doubly_dual: bool,
    /// Components of the result equal the perps of the components before
    /// the final adjoint under [`swap_form`].
    pub perp_matches: Option<bool>,
    /// Kernel of the component collection of the result.
    pub collection_kernel: AlgebraSummary,
    /// The outcome agrees with what the input forces: `id` and `∘` stay
    /// DHO-sets; a final adjoint gives a DHO-set exactly when the set
    /// before it is doubly dual; a doubly dual input makes every image a
    /// DHO-set.
    pub consistent: bool,
}

/// `D^k` as a DHO-set, checked against P1 and P2.
pub fn knuth_dho(d: &DhoSet, op: KnuthOp, limits: &Limits) -> Result<KnuthDho> {
    if d.basis.is_none() {
        return Err(Error::pre("Knuth operations need a bilinear DHO-set"));
    }
    if op != KnuthOp::Id && op != KnuthOp::Opp && d.r != d.n {
        return Err(Error::shape("adjoint operations need r = n"));
    }
    let code = d.to_code()?;
    let set = DhoSet::from_code(&op.apply(&code)?)?;
    let check = check_dho_set(&set, limits)?;
    let comps = components(&set);
    let base_doubly_dual = doubly_dual(&components(d), limits)?.is_none();
    let (pre_top_doubly_dual, perp_matches) = match op.strip_top() {
        Some(pre) => {
            let before = DhoSet::from_code(&pre.apply(&code)?)?;
            let bc = components(&before);
            let dd = doubly_dual(&bc, limits)?.is_none();
            let perps = perp_collection(&bc, &swap_form(&d.field, d.n))?;
            (Some(dd), Some(perps == comps))
        }
        None => (None, None),
    };
    let valid = check.valid();
    let consistent = match op {
        KnuthOp::Id | KnuthOp::Opp => valid,
        KnuthOp::Top | KnuthOp::OppTop => check.p1 && Some(valid) == pre_top_doubly_dual,
        KnuthOp::TopOpp => !base_doubly_dual || valid,
        KnuthOp::TopOppTop => (!base_doubly_dual || valid) && Some(valid) == pre_top_doubly_dual,
    } && perp_matches != Some(false);
    let collection_kernel = collection_kernel(&comps, limits)?;
    Ok(KnuthDho {
        op,
        set,
        check,
        pre_top_doubly_dual,
        base_doubly_dual,
        perp_matches,
        collection_kernel,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::gold_apn_code_unchecked;
    use crate::gf::make_field;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn gold_4_1_is_a_dho_set() {
        let d = gold_dho_set(4, 1).unwrap();
        let c = check_dho_set(&d, &lim()).unwrap();
        assert!(c.valid(), "{c:?}");
        let s = components(&d);
        assert_eq!(s.len(), 16);
        let ax = check_d_axioms(&s, &lim()).unwrap();
        assert!(ax.valid(), "{ax:?}");
        assert!(!check_d_axioms(&s.without(3), &lim()).unwrap().d3);
        let dup = check_d_axioms(&s.with_duplicate(5), &lim()).unwrap();
        assert_eq!(dup.d1_witness, Some((5, 16, 4)));
    }

    #[test]
    fn non_apn_gold_fails_p1() {
        let d = DhoSet::from_code(&gold_apn_code_unchecked(4, 2).unwrap()).unwrap();
        let c = check_dho_set(&d, &lim()).unwrap();
        let (a, b, rank) = c.p1_witness.unwrap();
        assert_eq!(d.beta(a).sub(d.beta(b)).unwrap().rank(), rank);
        assert!(rank < 3);
        assert!(!check_d_axioms(&components(&d), &lim()).unwrap().valid());
    }

    #[test]
    fn n2_toy_table() {
        // F_4 multiplication maps shifted into 2 x 1: beta(a) = column of a
        let f = make_field(2, 1, None).unwrap();
        let col = |a: u32, b: u32| MatFq::from_rows(&f, &[vec![a], vec![b]]).unwrap();
        let d = DhoSet::from_table(2, 1, vec![col(0, 0), col(1, 0), col(0, 1), col(1, 1)]).unwrap();
        let c = check_dho_set(&d, &lim()).unwrap();
        assert!(c.valid());
        assert_eq!(check_d_axioms(&components(&d), &lim()).unwrap().valid(), c.valid());
    }

    #[test]
    fn gold_predicates() {
        let d = gold_dho_set(5, 1).unwrap();
        let p = predicates(&d, &lim()).unwrap();
        assert!(p.bilinear && p.alternating && p.symmetric);
    }

    #[test]
    fn kernel_of_collection_and_perps() {
        let d = gold_dho_set(4, 1).unwrap();
        let s = components(&d);
        let k = collection_kernel(&s, &lim()).unwrap();
        assert_eq!(k.field_order, Some(BigUint::from(2u32)));
        let perps = perp_collection(&s, &swap_form(d.field(), 4)).unwrap();
        let kp = collection_kernel(&perps, &lim()).unwrap();
        assert_eq!(kp.field_order, Some(BigUint::from(2u32)));
    }

    #[test]
    fn opposite_of_gold_is_itself() {
        let d = gold_dho_set(4, 1).unwrap();
        let o = knuth_dho(&d, KnuthOp::Opp, &lim()).unwrap();
        assert!(o.check.valid() && o.consistent);
        assert_eq!(o.set.table(), d.table());
    }

    #[test]
    fn general_q_collection() {
        // the 4 lines of F_3^2 pairwise meet in 0, so D1 fails with dimension 0
        let f = make_field(3, 1, None).unwrap();
        let lines = [[1u32, 0], [0, 1], [1, 1], [1, 2]]
            .iter()
            .map(|v| RowSpace::from_vectors(&f, 2, [&v[..]]))
            .collect();
        let s = SubspaceCollection::new(&f, 2, lines).unwrap();
        let ax = check_d_axioms(&s, &lim()).unwrap();
        assert_eq!(ax.d1_witness, Some((0, 1, 0)));
        assert!(ax.d2);
        assert_eq!(ax.expected_count, BigUint::from(2u32));
        assert!(!ax.d3);
        let k = collection_kernel(&s, &lim()).unwrap();
        assert_eq!(k.field_order, Some(BigUint::from(3u32)));
    }
}
