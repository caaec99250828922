//! The acceptance suite: twelve self-contained, deterministic checks.

use num_bigint::BigUint;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rankcode_core::code::mrd_weight_formula;
use rankcode_core::construct::{
    example_2x4, example_3_6, field_spread_set, field_spread_set_in, gabidulin, generalized_twisted, kernel_larger,
    self_dual_basis, smallest_nonsquare, zhou_pott,
};
use rankcode_core::dho::{
    check_d_axioms, check_dho_set, components, dho_invariants, gold_dho_set, knuth_dho, predicates,
};
use rankcode_core::duality::{delsarte_dual, verify_six_relations, KnuthOp, RelationStatus};
use rankcode_core::gf::make_field;
use rankcode_core::invariant::{
    check_hks_automorphism, is_transpose_algebra, kernel_translation, middle_nucleus, nuclei_spectrum,
    projection_containment_check, right_nucleus,
};
use rankcode_core::{FieldCtx, Limits, MatFq, QExtension, RankCode, Side};

use crate::error::Result;

#[derive(Debug, Clone)]
pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
}

impl Criterion {
    fn new(id: u8) -> Self {
        Criterion { id, name: NAMES[id as usize - 1], passed: true, details: Vec::new() }
    }

    fn check(&mut self, ok: bool, msg: impl Into<String>) {
        let msg = msg.into();
        if ok {
            self.details.push(format!("ok: {msg}"));
        } else {
            self.passed = false;
            self.details.push(format!("FAILED: {msg}"));
        }
    }

    fn note(&mut self, msg: impl Into<String>) {
        self.details.push(format!("note: {}", msg.into()));
    }

    /// One summary line.
    pub fn line(&self) -> String {
        format!("criterion {:>2} {:<28} {}", self.id, self.name, if self.passed { "PASS" } else { "FAIL" })
    }
}

pub const NAMES: [&str; 12] = [
    "twisted-spectrum",
    "gabidulin-spectrum",
    "twisted-nuclei-formula",
    "weight-distribution",
    "delsarte-duality",
    "kernel-theorems",
    "nuclei-adjoint-dual",
    "right-nucleus-counterexample",
    "dho-suite",
    "zhou-pott-projection",
    "automorphism-checker",
    "equivalence-properties",
];

/// Runs criterion `id` (1 to 12). Errors count as failures.
pub fn run(id: u8, limits: &Limits) -> Criterion {
    let f = match id {
        1 => twisted_spectrum,
        2 => gabidulin_spectrum,
        3 => twisted_nuclei_formula,
        4 => weight_distribution,
        5 => delsarte_duality,
        6 => kernel_theorems,
        7 => nuclei_adjoint_dual,
        8 => right_nucleus_counterexample,
        9 => dho_suite,
        10 => zhou_pott_projection,
        11 => automorphism_checker,
        12 => equivalence_properties,
        _ => panic!("criteria are numbered 1 to 12"),
    };
    match f(limits) {
        Ok(c) => c,
        Err(e) => {
            let mut c = Criterion::new(id);
            c.check(false, format!("error: {e}"));
            c
        }
    }
}

/// Criteria whose id or name contains `filter`.
pub fn select(filter: Option<&str>) -> Vec<u8> {
    (1..=12u8)
        .filter(|&id| match filter {
            None => true,
            Some(f) => id.to_string() == f || NAMES[id as usize - 1].contains(f),
        })
        .collect()
}

/// `F_81` defined by `X^4 - X^3 - 1` over `F_3`.
pub fn f81_ext() -> Result<QExtension> {
    Ok(QExtension::over_prime(3, 4, Some(&[2, 0, 0, 2, 1]))?)
}

/// `H_{2,1}(eta, 1)` over `F_3` with `eta` a root of `X^4 - X^3 - 1`.
pub fn twisted_q3() -> Result<RankCode> {
    let ext = f81_ext()?;
    let eta = ext.big().generator();
    Ok(generalized_twisted(&ext, 2, 1, 1, eta)?.into_code())
}

fn order(o: &Option<BigUint>) -> String {
    o.as_ref().map_or("not a field".into(), |x| x.to_string())
}

fn is_order(o: &Option<BigUint>, v: u64) -> bool {
    o.as_ref() == Some(&BigUint::from(v))
}

fn spectrum_checks(
    c: &mut Criterion,
    label: &str,
    code: &RankCode,
    top_middle: u64,
    top_right: u64,
    limits: &Limits,
) -> Result<()> {
    let q = code.field().order() as u64;
    for (side, top, name) in [(Side::Left, top_middle, "middle"), (Side::Right, top_right, "right")] {
        let entries = nuclei_spectrum(code, side, &[1, 2, 3], limits)?;
        let at = |l: usize| entries.iter().filter(move |e| e.level == l);
        let top_count = at(3).count();
        let top_ok = at(3).all(|e| is_order(&e.summary.field_order, top));
        c.check(top_count == 40 && top_ok, format!("{label}: {top_count} level-3 {name} nuclei, all fields of order {top}: {top_ok}"));
        for l in [1usize, 2] {
            let size = if side == Side::Left { l } else { code.n() };
            let full_code = at(l).all(|e| e.code_dim == l * code.n());
            let full_ring = at(l).all(|e| e.summary.basis.len() == size * size);
            let count = at(l).count();
            c.check(
                full_code && full_ring,
                format!("{label}: level {l} ({count} subspaces) projects onto F_{q}^({l}x{}), {name} nucleus is the full {size}x{size} ring", code.n()),
            );
        }
    }
    Ok(())
}

fn twisted_spectrum(limits: &Limits) -> Result<Criterion> {
    let mut c = Criterion::new(1);
    let code = twisted_q3()?;
    let rep = code.is_mrd(limits)?;
    c.check(rep.mrd && rep.d == 3, format!("H_(2,1)(eta,1) over F_3: MRD {} with d = {}", rep.mrd, rep.d));
    spectrum_checks(&mut c, "H-code", &code, 3, 3, limits)?;
    Ok(c)
}

fn gabidulin_spectrum(limits: &Limits) -> Result<Criterion> {
    let mut c = Criterion::new(2);
    let code = gabidulin(&f81_ext()?, 2, 1)?.into_code();
    let rep = code.is_mrd(limits)?;
    c.check(rep.mrd && rep.d == 3, format!("G_(2,1) over F_3, n = 4: MRD {} with d = {}", rep.mrd, rep.d));
    spectrum_checks(&mut c, "G_(2,1)", &code, 3, 81, limits)?;
    Ok(c)
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `(n, s, h)` with `n` in 4..=6, `gcd(n, s) = 1`, `0 <= h < n`.
fn twisted_tuples() -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for n in 4..=6u32 {
        for s in (1..n).filter(|&s| gcd(n, s) == 1) {
            for h in 0..n {
                out.push((n, s, h));
            }
        }
    }
    out
}

fn twisted_nuclei_formula(limits: &Limits) -> Result<Criterion> {
    let mut c = Criterion::new(3);
    let k = 2u32;
    let mut missing = 0;
    for (n, s, h) in twisted_tuples() {
        let ext = QExtension::over_prime(2, n, None)?;
        let big = ext.big();
        let sign = if (n * k) % 2 == 0 { 1 } else { big.neg(1) };
        let valid = big.elements().skip(1).find(|&eta| ext.norm(eta) != sign);
        let mid_exp = gcd(n, (s * k).abs_diff(h));
        let right_exp = gcd(n, h);
        match valid {
            Some(eta) => {
                let code = generalized_twisted(&ext, k, s, h, eta)?.into_code();
                let m = middle_nucleus(&code, limits)?;
                let r = right_nucleus(&code, limits)?;
                c.check(
                    is_order(&m.field_order, 1 << mid_exp) && is_order(&r.field_order, 1 << right_exp),
                    format!("n={n} s={s} h={h} eta={eta}: middle {} (want {}), right {} (want {})", order(&m.field_order), 1u64 << mid_exp, order(&r.field_order), 1u64 << right_exp),
                );
            }
            None => missing += 1,
        }
        let g = generalized_twisted(&ext, k, s, h, 0)?.into_code();
        let m = middle_nucleus(&g, limits)?;
        let r = right_nucleus(&g, limits)?;
        let want = 1u64 << n;
        c.check(
            is_order(&m.field_order, want) && is_order(&r.field_order, want),
            format!("n={n} s={s} h={h} eta=0: middle {}, right {} (want {want})", order(&m.field_order), order(&r.field_order)),
        );
    }
    c.check(
        missing == 0,
        format!("{missing} of {} tuples have no eta != 0 in F_(2^n) with N(eta) != (-1)^(nk); over F_2 every nonzero norm is 1", twisted_tuples().len()),
    );
    // the same tuples with eta = x, ignoring the norm condition
    for (n, s, h) in twisted_tuples() {
        let ext = QExtension::over_prime(2, n, None)?;
        let eta = ext.big().generator();
        let code = rankcode_core::construct::generalized_twisted_unchecked(&ext, k, s, h, eta)?.into_code();
        let m = middle_nucleus(&code, limits)?;
        let r = right_nucleus(&code, limits)?;
        let (me, re) = (gcd(n, (s * k).abs_diff(h)), gcd(n, h));
        let agrees = is_order(&m.field_order, 1 << me) && is_order(&r.field_order, 1 << re);
        c.note(format!(
            "unchecked eta = x, n={n} s={s} h={h}: middle {} / {}, right {} / {}, {}",
            order(&m.field_order),
            1u64 << me,
            order(&r.field_order),
            1u64 << re,
            if agrees { "agrees" } else { "differs" }
        ));
    }
    Ok(c)
}

fn weight_distribution(limits: &Limits) -> Result<Criterion> {
    let mut c = Criterion::new(4);
    let codes = [
        ("G_(2,1) over F_2, n = 4", gabidulin(&QExtension::over_prime(2, 4, None)?, 2, 1)?.into_code()),
        ("G_(2,1) over F_3, n = 3", gabidulin(&QExtension::over_prime(3, 3, None)?, 2, 1)?.into_code()),
        ("2x4 binary code", example_2x4()),
    ];
    for (label, code) in &codes {
        let w = code.weight_distribution(limits)?;
        let d = w.min_nonzero().unwrap_or(0);
        let f = mrd_weight_formula(code.m(), code.n(), d, code.field().order() as u64)?;
        let counts: Vec<String> = w.counts.iter().map(|x| x.to_string()).collect();
        c.check(w == f, format!("{label}: d = {d}, A = [{}] matches the closed form", counts.join(", ")));
    }
    let a2 = codes[2].1.weight_distribution(limits)?.get(2);
    c.check(a2 == BigUint::from(15u32), format!("2x4 binary code: A_2 = {a2}"));
    Ok(c)
}

/// MRD codes of criteria 3 (eta = 0) and 4.
fn mrd_codes() -> Result<Vec<(String, RankCode)>> {
    let mut out = Vec::new();
    for n in 4..=6u32 {
        let ext = QExtension::over_prime(2, n, None)?;
        for s in (1..n).filter(|&s| gcd(n, s) == 1) {
            out.push((format!("G_(2,{s}) over F_2, n = {n}"), gabidulin(&ext, 2, s)?.into_code()));
        }
    }
    out.push(("G_(2,1) over F_3, n = 3".into(), gabidulin(&QExtension::over_prime(3, 3, None)?, 2, 1)?.into_code()));
    out.push(("2x4 binary code".into(), example_2x4()));
    Ok(out)
}

fn delsarte_duality(limits: &Limits) -> Result<Criterion> {
    let mut c = Criterion::new(5);
    for (label, code) in mrd_codes()? {
        let (m, n) = code.shape();
        let d = code.min_distance(limits)?;
        let dual = delsarte_dual(&code)?;
        let dim_ok = code.dim().unwrap_or(0) + dual.dim().unwrap_or(0) == m * n;
        let rep = dual.is_mrd(limits)?;
        let want = m.min(n) - d + 2;
        c.check(
            dim_ok && rep.mrd && rep.d == want,
            format!("{label} (d = {d}): dual has dim {}, MRD {}, d = {} (want {want})", dual.dim().unwrap_or(0), rep.mrd, rep.d),
        );
    }
    Ok(c)
}

fn kernel_theorems(limits: &Limits) -> Result<Criterion> {
    let mut c = Criterion::new(6);
    let mut codes = mrd_codes()?;
    codes.push(("H-code over F_3".into(), twisted_q3()?));
    codes.push(("G_(2,1) over F_3, n = 4".into(), gabidulin(&f81_ext()?, 2, 1)?.into_code()));
    let duals: Vec<(String, RankCode)> = codes
        .iter()
        .map(|(l, code)| Ok((format!("dual of {l}"), delsarte_dual(code)?)))
        .collect::<Result<_>>()?;
    codes.extend(duals);
    codes.push(("field spread set of F_8".into(), field_spread_set(2, 3)?));
    let zp_ext = QExtension::over_prime(3, 3, None)?;
    let alpha = smallest_nonsquare(zp_ext.big()).expect("odd order");
    codes.push(("commutative semifield code, p = 3, n = 3".into(), zhou_pott(3, 3, 1, true, alpha)?.code));

    for (label, code) in &codes {
        let rep = code.is_mrd(limits)?;
        if !rep.mrd {
            c.check(false, format!("{label} is not MRD"));
            continue;
        }
        let (m, n) = code.shape();
        let cover = code.covering_property(limits)?;
        c.check(cover, format!("{label}: covering property holds"));
        if rep.d < m.min(n) || gcd(m as u32, n as u32) == 1 {
            let k = kernel_translation(code, limits)?;
            let q = code.field().order() as u64;
            c.check(
                is_order(&k.field_order, q),
                format!("{label} (d = {} < {}): kernel {} (want {q})", rep.d, m.min(n), order(&k.field_order)),
            );
        }
    }

    let f2 = make_field(2, 1, None)?;
    let larger = kernel_larger(&f2)?.into_code();
    let k = kernel_translation(&larger, limits)?;
    let scalars_in = k.contains(&MatFq::identity(&k.field, k.size));
    c.check(
        k.cardinality == BigUint::from(4u32) && scalars_in,
        format!("span of a x + b x^(q^2) over F_2: kernel of cardinality {} containing the scalars: {scalars_in}", k.cardinality),
    );

    let f3 = make_field(3, 1, None)?;
    let zero_corner = example_3_6(&f3, 3, 3)?;
    let k = kernel_translation(&zero_corner, limits)?;
    let witness_ok = match &k.witness {
        Some((z, y)) => {
            !z.is_zero() && !y.is_zero() && z.mul(y)?.is_zero() && k.contains(z) && k.contains(y)
        }
        None => false,
    };
    c.check(!k.is_field && witness_ok, format!("3x3 codes with zero last row and column over F_3: kernel not a field, zero-divisor witness verified: {witness_ok}"));
    let cover = zero_corner.covering_property(limits)?;
    c.check(!cover, "3x3 codes with zero last row and column: covering property fails");
    Ok(c)
}

fn nuclei_adjoint_dual(limits: &Limits) -> Result<Criterion> {
    let mut c = Criterion::new(7);
    let codes = [
        ("G_(2,1) over F_2, n = 4", gabidulin(&QExtension::over_prime(2, 4, None)?, 2, 1)?.into_code()),
        ("H-code over F_3", twisted_q3()?),
    ];
    for (label, code) in &codes {
        let t = code.transpose();
        let d = delsarte_dual(code)?;
        let (nm, nr) = (middle_nucleus(code, limits)?, right_nucleus(code, limits)?);
        let (nm_t, nr_t) = (middle_nucleus(&t, limits)?, right_nucleus(&t, limits)?);
        let (nm_d, nr_d) = (middle_nucleus(&d, limits)?, right_nucleus(&d, limits)?);
        c.check(is_transpose_algebra(&nr, &nm_t), format!("{label}: N_m(C^T) = N_r(C)^T"));
        c.check(is_transpose_algebra(&nm, &nr_t), format!("{label}: N_r(C^T) = N_m(C)^T"));
        c.check(is_transpose_algebra(&nm, &nm_d), format!("{label}: N_m(C^perp) = N_m(C)^T"));
        c.check(is_transpose_algebra(&nr, &nr_d), format!("{label}: N_r(C^perp) = N_r(C)^T"));
    }
    Ok(c)
}

fn right_nucleus_counterexample(limits: &Limits) -> Result<Criterion> {
    let mut c = Criterion::new(8);
    let code = example_2x4();
    let rep = code.is_mrd(limits)?;
    c.check(rep.mrd && rep.d == 2, format!("2x4 binary code: MRD {} with d = {}", rep.mrd, rep.d));
    let nr = right_nucleus(&code, limits)?;
    let k = nr.basis.len();
    let mut witness = None;
    for mask in 1u32..1 << k {
        let mut z = MatFq::zeros(&nr.field, nr.size, nr.size);
        for (i, b) in nr.basis.iter().enumerate() {
            if mask >> i & 1 == 1 {
                z = z.add(b)?;
            }
        }
        if z.rank() == 2 {
            witness = Some(z);
            break;
        }
    }
    match witness {
        Some(z) => {
            let space = code.space()?;
            let mut stable = true;
            for b in code.require_basis()? {
                stable &= space.contains(b.mul(&z)?.data());
            }
            let rows: Vec<String> = (0..z.rows()).map(|i| format!("{:?}", z.row(i))).collect();
            c.check(stable, format!("rank-2 element Z = [{}] of the right nucleus; C Z in C for every basis element", rows.join(", ")));
        }
        None => c.check(false, "no rank-2 element in the right nucleus"),
    }
    Ok(c)
}

fn dho_suite(limits: &Limits) -> Result<Criterion> {
    let mut c = Criterion::new(9);
    for (n, k) in [(4u32, 1u32), (5, 1)] {
        let label = format!("gold({n},{k})");
        let d = gold_dho_set(n, k)?;
        let chk = check_dho_set(&d, limits)?;
        c.check(chk.p1 && chk.p2, format!("{label}: P1 {} P2 {}", chk.p1, chk.p2));
        let ax = check_d_axioms(&components(&d), limits)?;
        c.check(ax.valid(), format!("{label}: D1 {} D2 {} D3 {} ({} components)", ax.d1, ax.d2, ax.d3, ax.count));
        let p = predicates(&d, limits)?;
        c.check(!p.alternating || p.symmetric, format!("{label}: alternating {} symmetric {}", p.alternating, p.symmetric));
        c.note(format!("{label}: doubly dual {}", p.doubly_dual));
        let inv = dho_invariants(&d, limits)?;
        c.check(inv.kernel_ok, format!("{label}: kernel {}", order(&inv.kernel.field_order)));
        c.check(inv.collection_kernel_ok, format!("{label}: kernel of the component collection {}", order(&inv.collection_kernel.field_order)));
        let right = inv.right.as_ref().map(|r| order(&r.field_order)).unwrap_or_default();
        c.check(inv.right_ok, format!("{label}: right nucleus {right}"));
        let middle = inv.middle.as_ref().map(|m| order(&m.field_order)).unwrap_or_default();
        let mid_ok = inv.middle_ok && matches!(inv.middle_ell, Some(1) | Some(2)) && (inv.middle_ell != Some(2) || n % 2 == 0);
        c.check(mid_ok, format!("{label}: middle nucleus {middle}"));
        let opp = knuth_dho(&d, KnuthOp::Opp, limits)?;
        c.check(opp.set.table() == d.table() && opp.check.valid(), format!("{label}: D° = D"));
        for op in KnuthOp::ALL {
            let kd = knuth_dho(&d, op, limits)?;
            c.check(kd.consistent, format!("{label}: {op} is a DHO-set {} as forced by the input", kd.check.valid()));
            if matches!(op, KnuthOp::Top | KnuthOp::OppTop) {
                c.check(
                    is_order(&kd.collection_kernel.field_order, 2) && kd.perp_matches == Some(true),
                    format!("{label}: kernel of the {op} collection (perps of components) {}", order(&kd.collection_kernel.field_order)),
                );
            }
        }
        let six = verify_six_relations(&d.to_code()?, limits)?;
        for r in &six.relations {
            let orders: Vec<String> = r.orders.iter().map(order).collect();
            c.check(r.status != RelationStatus::Fails, format!("{label}: chain ({}) orders [{}] {}", r.label, orders.join(", "), r.status.name()));
        }
    }
    let ext = QExtension::over_prime(2, 3, None)?;
    for (label, e) in [("polynomial basis", ext.clone()), ("self-dual basis", ext.with_basis(&self_dual_basis(&ext).expect("F_8 has one"))?)] {
        let six = verify_six_relations(&field_spread_set_in(&e)?, limits)?;
        let all8 = six.relations.iter().all(|r| r.orders.iter().all(|o| is_order(o, 8)));
        c.check(six.all_hold() && all8, format!("field spread set of F_8 ({label}): all six chains hold with every order 8"));
    }
    Ok(c)
}

fn zhou_pott_projection(limits: &Limits) -> Result<Criterion> {
    let mut c = Criterion::new(10);
    let ext = QExtension::over_prime(3, 3, None)?;
    let alpha = smallest_nonsquare(ext.big()).expect("odd order");
    let zp = zhou_pott(3, 3, 1, true, alpha)?;
    let full = middle_nucleus(&zp.code, limits)?;
    let proj = middle_nucleus(&zp.projection()?, limits)?;
    c.check(is_order(&full.field_order, 9), format!("6x6 code: middle nucleus {}", order(&full.field_order)));
    c.check(is_order(&proj.field_order, 27), format!("projection to the last 3 rows: middle nucleus {}", order(&proj.field_order)));
    c.check(proj.cardinality > full.cardinality, "the projection has the larger middle nucleus");
    Ok(c)
}

fn automorphism_checker(_limits: &Limits) -> Result<Criterion> {
    let mut c = Criterion::new(11);
    let ext = QExtension::over_prime(2, 4, None)?;
    let big = ext.big().clone();
    let x = big.generator();
    for (k, s, h, eta) in [(2u32, 1u32, 1u32, x), (2, 3, 2, big.add(x, 1)), (2, 1, 1, 0)] {
        let (mut agree, mut total, mut passing) = (0u32, 0u32, 0u32);
        let mut first_mismatch = None;
        for cc in 1..big.order() {
            for d in 1..big.order() {
                for r in 0..ext.n() {
                    let res = check_hks_automorphism(&ext, k, s, h, eta, cc, d, r, 0)?;
                    total += 1;
                    if res.formula == res.direct {
                        agree += 1;
                    } else if first_mismatch.is_none() {
                        first_mismatch = Some((cc, d, r));
                    }
                    passing += u32::from(res.direct);
                }
            }
        }
        c.check(
            agree == total,
            format!("k={k} s={s} h={h} eta={eta}: formula and direct test agree on {agree}/{total} triples (first mismatch {first_mismatch:?}), {passing} stabilize"),
        );
        if eta == 0 {
            c.check(passing == total, format!("eta = 0: {passing}/{total} triples stabilize the code"));
        }
    }
    Ok(c)
}

fn random_invertible(rng: &mut ChaCha8Rng, f: &FieldCtx, n: usize) -> MatFq {
    loop {
        let q = f.order();
        let m = MatFq::from_fn(f, n, n, |_, _| rng.next_u32() % q);
        if m.rank() == n {
            return m;
        }
    }
}

fn equivalence_properties(limits: &Limits) -> Result<Criterion> {
    let mut c = Criterion::new(12);
    let mut rng = ChaCha8Rng::seed_from_u64(limits.seed);
    let f4 = make_field(2, 2, None)?;
    let codes = [
        ("G_(2,1) over F_2, n = 4", gabidulin(&QExtension::over_prime(2, 4, None)?, 2, 1)?.into_code()),
        ("G_(2,1) over F_3, n = 3", gabidulin(&QExtension::over_prime(3, 3, None)?, 2, 1)?.into_code()),
        ("G_(2,1) over F_4, n = 3", gabidulin(&QExtension::new(&f4, 3, None)?, 2, 1)?.into_code()),
        ("2x4 binary code", example_2x4()),
    ];
    for (label, code) in &codes {
        let (m, n) = code.shape();
        let f = code.field();
        let e = f.degree();
        let d = code.min_distance(limits)?;
        let k = kernel_translation(code, limits)?;
        let nm = middle_nucleus(code, limits)?;
        let nr = right_nucleus(code, limits)?;
        let translate = code.cardinality() <= BigUint::from(729u32);
        let mut failures = Vec::new();
        for i in 0..20 {
            let a = random_invertible(&mut rng, f, m);
            let b = random_invertible(&mut rng, f, n);
            let gamma = rng.next_u32() % e;
            let image = code.apply_equivalence(&a, &b, &MatFq::zeros(f, m, n), gamma, limits)?;
            let same = image.min_distance(limits)? == d
                && kernel_translation(&image, limits)?.cardinality == k.cardinality
                && middle_nucleus(&image, limits)?.cardinality == nm.cardinality
                && right_nucleus(&image, limits)?.cardinality == nr.cardinality;
            if !same {
                failures.push(i);
            }
            if translate {
                let q = f.order();
                let c0 = MatFq::from_fn(f, m, n, |_, _| rng.next_u32() % q);
                let shifted = code.apply_equivalence(&a, &b, &c0, gamma, limits)?;
                let ks = kernel_translation(&shifted, limits)?;
                if shifted.min_distance(limits)? != d || ks.cardinality != k.cardinality || ks.is_field != k.is_field {
                    failures.push(100 + i);
                }
            }
        }
        c.check(
            failures.is_empty(),
            format!("{label}: d, kernel, middle and right nuclei unchanged under 20 random equivalences{} (failures {failures:?})", if translate { " with and without translation" } else { "" }),
        );

        let kt = kernel_translation(&code.transpose(), limits)?;
        let (inv, inv_t) = (k.count_invertible(limits)?, kt.count_invertible(limits)?);
        c.check(inv == inv_t, format!("{label}: invertible kernel elements {inv} for C and {inv_t} for C^T"));

        let mut bad = 0;
        for _ in 0..20 {
            let l = 1 + (rng.next_u32() as usize) % (m - 1).max(1);
            let l = l.min(m - 1).max(1);
            let lm = loop {
                let q = f.order();
                let x = MatFq::from_fn(f, l, m, |_, _| rng.next_u32() % q);
                if x.rank() == l {
                    break x;
                }
            };
            if !projection_containment_check(code, &lm, limits)? {
                bad += 1;
            }
        }
        c.check(bad == 0, format!("{label}: N_r(C) inside N_r(L C) for 20 random full-rank L ({bad} failures)"));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection() {
        assert_eq!(select(None).len(), 12);
        assert_eq!(select(Some("7")), vec![7]);
        assert_eq!(select(Some("spectrum")), vec![1, 2]);
        assert!(select(Some("nothing-like-this")).is_empty());
    }
}
