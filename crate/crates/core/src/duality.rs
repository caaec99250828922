//! Delsarte dual, opposite code and the Knuth orbit.
//!
//! A linear code with ordered basis `B_1, ..., B_l` (each `n x r`) is read
//! as the tensor `T[i][row][col] = B_i[row][col]`. The opposite swaps the
//! index and row axes (`beta°(y)` has `i`-th row `y B_i`), the adjoint swaps
//! row and column. Presentations are carried through exactly, so `∘∘ = id`
//! and `∘⊤∘ = ⊤∘⊤` hold on the nose.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;

use crate::code::{Limits, RankCode};
use crate::error::{Error, Result};
use crate::invariant::{kernel_translation, middle_nucleus, right_nucleus, run_jobs, AlgebraSummary};
use crate::mat::MatFq;

/// `{M : Tr(M N^t) = 0 for all N in C}`.
pub fn delsarte_dual(code: &RankCode) -> Result<RankCode> {
    if !code.is_linear() {
        return Err(Error::NotLinear);
    }
    let (m, n) = code.shape();
    let f = code.field();
    let perp = code.space()?.orthogonal();
    let basis = perp
        .basis()
        .iter()
        .map(|v| MatFq::from_codes(f, m, n, v.clone()))
        .collect::<Result<Vec<_>>>()?;
    RankCode::linear(f, m, n, basis)
}

fn opposite_basis(code: &RankCode) -> Result<Vec<MatFq>> {
    let basis = code.require_basis()?;
    let (n, r) = code.shape();
    let l = basis.len();
    Ok((0..n)
        .map(|j| MatFq::from_fn(code.field(), l, r, |i, c| basis[i].get(j, c)))
        .collect())
}

/// `{beta°(y) : y in F_q^n}` for the code's basis presentation, where row
/// `i` of `beta°(y)` is `y B_i`. The result is `l x r` for an `l`-dimensional
/// code in `F_q^{n x r}`; dependent images are dropped from the presentation.
pub fn opposite(code: &RankCode) -> Result<RankCode> {
    let basis = opposite_basis(code)?;
    let l = code.require_basis()?.len();
    if l == 0 {
        return Err(Error::pre("opposite of the zero code"));
    }
    RankCode::from_span(code.field(), l, code.n(), basis)
}

/// [`opposite`], failing unless `beta°` is injective, so that the result
/// carries a full presentation of dimension `n`.
pub fn opposite_exact(code: &RankCode) -> Result<RankCode> {
    let basis = opposite_basis(code)?;
    let l = code.require_basis()?.len();
    if l == 0 {
        return Err(Error::pre("opposite of the zero code"));
    }
    RankCode::linear(code.field(), l, code.n(), basis)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KnuthOp {
    Id,
    Opp,
    Top,
    OppTop,
    TopOpp,
    TopOppTop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    Opp,
    Top,
}

impl KnuthOp {
    pub const ALL: [KnuthOp; 6] =
        [KnuthOp::Id, KnuthOp::Opp, KnuthOp::Top, KnuthOp::OppTop, KnuthOp::TopOpp, KnuthOp::TopOppTop];

    pub fn name(self) -> &'static str {
        match self {
            KnuthOp::Id => "id",
            KnuthOp::Opp => "opp",
            KnuthOp::Top => "top",
            KnuthOp::OppTop => "opp-top",
            KnuthOp::TopOpp => "top-opp",
            KnuthOp::TopOppTop => "top-opp-top",
        }
    }

    /// Superscript form, e.g. `∘⊤`.
    pub fn symbol(self) -> &'static str {
        match self {
            KnuthOp::Id => "id",
            KnuthOp::Opp => "∘",
            KnuthOp::Top => "⊤",
            KnuthOp::OppTop => "∘⊤",
            KnuthOp::TopOpp => "⊤∘",
            KnuthOp::TopOppTop => "⊤∘⊤",
        }
    }

    fn steps(self) -> &'static [Step] {
        match self {
            KnuthOp::Id => &[],
            KnuthOp::Opp => &[Step::Opp],
            KnuthOp::Top => &[Step::Top],
            KnuthOp::OppTop => &[Step::Opp, Step::Top],
            KnuthOp::TopOpp => &[Step::Top, Step::Opp],
            KnuthOp::TopOppTop => &[Step::Top, Step::Opp, Step::Top],
        }
    }

    /// Whether the operation ends with the adjoint.
    pub fn ends_with_top(self) -> bool {
        self.steps().last() == Some(&Step::Top)
    }

    /// The operation without its final adjoint, if it has one.
    pub fn strip_top(self) -> Option<KnuthOp> {
        match self {
            KnuthOp::Top => Some(KnuthOp::Id),
            KnuthOp::OppTop => Some(KnuthOp::Opp),
            KnuthOp::TopOppTop => Some(KnuthOp::TopOpp),
            _ => None,
        }
    }

    /// `C^k`, with every opposite required to be injective.
    pub fn apply(self, code: &RankCode) -> Result<RankCode> {
        let mut c = code.clone();
        for s in self.steps() {
            c = match s {
                Step::Opp => opposite_exact(&c)?,
                Step::Top => c.transpose(),
            };
        }
        Ok(c)
    }
}

impl fmt::Display for KnuthOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KnuthOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "id" => Ok(KnuthOp::Id),
            "opp" => Ok(KnuthOp::Opp),
            "top" => Ok(KnuthOp::Top),
            "opp-top" => Ok(KnuthOp::OppTop),
            "top-opp" => Ok(KnuthOp::TopOpp),
            "top-opp-top" | "opp-top-opp" => Ok(KnuthOp::TopOppTop),
            _ => Err(Error::pre(alloc::format!("unknown Knuth operation {s:?}"))),
        }
    }
}

/// The six codes `C^k`, with `classes[i]` the first entry equal to entry `i`.
#[derive(Debug, Clone)]
pub struct KnuthOrbit {
    pub entries: Vec<(KnuthOp, RankCode)>,
    pub classes: Vec<usize>,
}

impl KnuthOrbit {
    pub fn get(&self, op: KnuthOp) -> &RankCode {
        &self.entries.iter().find(|(o, _)| *o == op).expect("all six present").1
    }

    /// Number of pairwise distinct codes.
    pub fn distinct(&self) -> usize {
        self.classes.iter().enumerate().filter(|(i, c)| *i == **c).count()
    }

    pub fn same(&self, a: KnuthOp, b: KnuthOp) -> bool {
        let idx = |o| KnuthOp::ALL.iter().position(|&x| x == o).expect("listed");
        self.classes[idx(a)] == self.classes[idx(b)]
    }
}

/// All six Knuth images of a linear code whose presentation stays injective
/// along the orbit.
pub fn knuth_orbit(code: &RankCode) -> Result<KnuthOrbit> {
    let entries = KnuthOp::ALL
        .iter()
        .map(|&op| op.apply(code).map(|c| (op, c)))
        .collect::<Result<Vec<_>>>()?;
    let classes = (0..entries.len())
        .map(|i| (0..=i).find(|&j| entries[j].1.same_code(&entries[i].1)).expect("i matches itself"))
        .collect();
    Ok(KnuthOrbit { entries, classes })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationStatus {
    Holds,
    Fails,
    /// The kernel in the chain is not a field.
    HypothesisNotMet,
}

impl RelationStatus {
    pub fn name(self) -> &'static str {
        match self {
            RelationStatus::Holds => "holds",
            RelationStatus::Fails => "fails",
            RelationStatus::HypothesisNotMet => "hypothesis-not-met",
        }
    }
}

/// Kernel and nuclei of one orbit entry.
#[derive(Debug, Clone)]
pub struct EntryInvariants {
    pub op: KnuthOp,
    pub kernel: AlgebraSummary,
    pub middle: AlgebraSummary,
    pub right: AlgebraSummary,
}

/// `N_r(C^right) ≅ K(C^kernel) ≅ N_m(C^middle)`.
#[derive(Debug, Clone)]
pub struct Relation {
    pub label: char,
    pub right: KnuthOp,
    pub kernel: KnuthOp,
    pub middle: KnuthOp,
    /// Field orders of the three members, `None` where not a field.
    pub orders: [Option<BigUint>; 3],
    pub status: RelationStatus,
}

#[derive(Debug, Clone)]
pub struct SixRelationsReport {
    pub entries: Vec<EntryInvariants>,
    pub relations: Vec<Relation>,
    /// All six kernels are fields.
    pub hypothesis_met: bool,
}

impl SixRelationsReport {
    pub fn entry(&self, op: KnuthOp) -> &EntryInvariants {
        self.entries.iter().find(|e| e.op == op).expect("all six present")
    }

    pub fn any_failure(&self) -> bool {
        self.relations.iter().any(|r| r.status == RelationStatus::Fails)
    }

    pub fn all_hold(&self) -> bool {
        self.relations.iter().all(|r| r.status == RelationStatus::Holds)
    }
}

const CHAINS: [(char, KnuthOp, KnuthOp, KnuthOp); 6] = [
    ('a', KnuthOp::Id, KnuthOp::Opp, KnuthOp::Top),
    ('b', KnuthOp::Opp, KnuthOp::Id, KnuthOp::OppTop),
    ('c', KnuthOp::TopOpp, KnuthOp::Top, KnuthOp::TopOppTop),
    ('d', KnuthOp::TopOppTop, KnuthOp::OppTop, KnuthOp::TopOpp),
    ('e', KnuthOp::Top, KnuthOp::TopOpp, KnuthOp::Id),
    ('f', KnuthOp::OppTop, KnuthOp::TopOppTop, KnuthOp::Opp),
];

/// Kernels and nuclei of the six orbit entries of an `n`-dimensional code in
/// `F_q^{n x n}`, and the six chains compared by field order.
pub fn verify_six_relations(code: &RankCode, limits: &Limits) -> Result<SixRelationsReport> {
    let dim = code.require_basis()?.len();
    if code.m() != code.n() || dim != code.m() {
        return Err(Error::pre("six relations need an n-dimensional code of n x n matrices"));
    }
    let orbit = knuth_orbit(code)?;
    let entries = run_jobs(orbit.entries, |(op, c)| {
        Ok(EntryInvariants {
            op,
            kernel: kernel_translation(&c, limits)?,
            middle: middle_nucleus(&c, limits)?,
            right: right_nucleus(&c, limits)?,
        })
    })?;
    let find = |op: KnuthOp| entries.iter().find(|e| e.op == op).expect("all six present");
    let hypothesis_met = entries.iter().all(|e| e.kernel.is_field);
    let relations = CHAINS
        .iter()
        .map(|&(label, r, k, m)| {
            let orders = [
                find(r).right.field_order.clone(),
                find(k).kernel.field_order.clone(),
                find(m).middle.field_order.clone(),
            ];
            let status = if !find(k).kernel.is_field {
                RelationStatus::HypothesisNotMet
            } else if orders.iter().all(|o| o.is_some() && *o == orders[1]) {
                RelationStatus::Holds
            } else {
                RelationStatus::Fails
            };
            Relation { label, right: r, kernel: k, middle: m, orders, status }
        })
        .collect();
    Ok(SixRelationsReport { entries, relations, hypothesis_met })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{field_spread_set, field_spread_set_in, gabidulin, gold_apn_code, self_dual_basis};
    use crate::linpoly::QExtension;

    #[test]
    fn dual_of_full_space_is_zero() {
        let f = crate::gf::make_field(3, 1, None).unwrap();
        let c = RankCode::full_space(&f, 2, 3);
        let d = delsarte_dual(&c).unwrap();
        assert_eq!(d.dim(), Some(0));
        assert!(delsarte_dual(&d).unwrap().same_code(&c));
    }

    #[test]
    fn dual_of_gabidulin_is_mrd() {
        let ext = QExtension::over_prime(2, 4, None).unwrap();
        let g = gabidulin(&ext, 2, 1).unwrap().into_code();
        let d = delsarte_dual(&g).unwrap();
        assert_eq!(d.dim(), Some(8));
        let rep = d.is_mrd(&Limits::default()).unwrap();
        assert!(rep.mrd);
        assert_eq!(rep.d, 3);
        assert!(delsarte_dual(&d).unwrap().same_code(&g));
    }

    #[test]
    fn opposite_round_trips_presentation() {
        let ext = QExtension::over_prime(3, 3, None).unwrap();
        let g = gabidulin(&ext, 1, 1).unwrap().into_code();
        let back = opposite_exact(&opposite_exact(&g).unwrap()).unwrap();
        assert_eq!(back.basis(), g.basis());
    }

    #[test]
    fn opposite_of_field_spread_set() {
        let c = field_spread_set(2, 2).unwrap();
        assert!(opposite(&c).unwrap().same_code(&c));
    }

    #[test]
    fn gold_is_symmetric() {
        let d = gold_apn_code(4, 1).unwrap();
        assert!(opposite(&d).unwrap().same_code(&d));
    }

    #[test]
    fn orbit_is_closed() {
        let d = gold_apn_code(5, 2).unwrap();
        let orbit = knuth_orbit(&d).unwrap();
        for (_, c) in &orbit.entries {
            for next in [opposite_exact(c).unwrap(), c.transpose()] {
                assert!(orbit.entries.iter().any(|(_, e)| e.same_code(&next)));
            }
        }
        let a = KnuthOp::Opp.apply(&KnuthOp::Top.apply(&KnuthOp::Opp.apply(&d).unwrap()).unwrap()).unwrap();
        assert_eq!(a.basis(), orbit.get(KnuthOp::TopOppTop).basis());
    }

    #[test]
    fn spread_set_orbit_collapses() {
        let ext = QExtension::over_prime(2, 3, None).unwrap();
        let sd = ext.with_basis(&self_dual_basis(&ext).unwrap()).unwrap();
        let orbit = knuth_orbit(&field_spread_set_in(&sd).unwrap()).unwrap();
        assert_eq!(orbit.distinct(), 1);
        // in the polynomial basis the transpose is a different set
        let c = field_spread_set(2, 3).unwrap();
        assert!(knuth_orbit(&c).unwrap().distinct() > 1);
        let rep = verify_six_relations(&c, &Limits::default()).unwrap();
        assert!(rep.all_hold() && rep.hypothesis_met);
        for r in &rep.relations {
            assert!(r.orders.iter().all(|o| *o == Some(BigUint::from(8u32))));
        }
    }

    #[test]
    fn op_names_parse() {
        for op in KnuthOp::ALL {
            assert_eq!(op.name().parse::<KnuthOp>().unwrap(), op);
        }
        assert!("sideways".parse::<KnuthOp>().is_err());
    }
}
