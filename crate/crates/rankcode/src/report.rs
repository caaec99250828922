//! JSON views of results and the report envelope.
//!
//! Keys are sorted and nothing depends on the worker count, so identical
//! inputs and settings give byte-identical reports.

use num_bigint::BigUint;
use rankcode_core::code::{Limits, MrdReport, WeightTable};
use rankcode_core::dho::{DAxioms, DhoCheck, DhoInvariants, DoublyDualWitness, KnuthDho, P2Witness, Predicates};
use rankcode_core::duality::SixRelationsReport;
use rankcode_core::{AlgebraSummary, MatFq, SpectrumEntry};
use serde_json::{json, Map, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A number when it fits in `u64`, else a decimal string.
pub fn big(x: &BigUint) -> Value {
    match u64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn matrix(x: &MatFq) -> Value {
    json!((0..x.rows()).map(|i| x.row(i).to_vec()).collect::<Vec<_>>())
}

pub fn algebra(s: &AlgebraSummary) -> Value {
    json!({
        "kind": s.kind.name(),
        "size": s.size,
        "p": s.p,
        "dim_fp": s.dim_fp,
        "cardinality": big(&s.cardinality),
        "is_field": s.is_field,
        "field_order": s.field_order.as_ref().map(big),
        "contains_identity": s.contains_identity,
        "closed_under_mul": s.closed_under_mul,
        "commutative": s.commutative,
        "all_nonzero_invertible": s.all_nonzero_invertible,
        "sampled": s.sampled,
        "singular_element": s.singular.as_ref().map(matrix),
        "zero_divisor_witness": s.witness.as_ref().map(|(z, y)| json!([matrix(z), matrix(y)])),
    })
}

pub fn weights(w: &WeightTable) -> Value {
    json!(w.counts.iter().map(big).collect::<Vec<_>>())
}

pub fn mrd(r: &MrdReport) -> Value {
    json!({ "mrd": r.mrd, "d": r.d, "bound": big(&r.bound), "cardinality": big(&r.cardinality) })
}

pub fn spectrum(entries: &[SpectrumEntry]) -> Value {
    let mut levels: Map<String, Value> = Map::new();
    for e in entries {
        let key = e.level.to_string();
        let slot = levels.entry(key).or_insert_with(|| json!({ "subspaces": 0, "classes": {} }));
        slot["subspaces"] = json!(slot["subspaces"].as_u64().unwrap_or(0) + 1);
        let class = e.summary.describe();
        let n = slot["classes"][&class].as_u64().unwrap_or(0);
        slot["classes"][&class] = json!(n + 1);
    }
    let list: Vec<Value> = entries
        .iter()
        .map(|e| {
            json!({
                "level": e.level,
                "subspace": matrix(&e.subspace),
                "code_dim": e.code_dim,
                "cardinality": big(&e.summary.cardinality),
                "field_order": e.summary.field_order.as_ref().map(big),
            })
        })
        .collect();
    json!({ "levels": levels, "entries": list })
}

pub fn six_relations(r: &SixRelationsReport) -> Value {
    let entries: Vec<Value> = r
        .entries
        .iter()
        .map(|e| {
            json!({
                "op": e.op.name(),
                "kernel": e.kernel.describe(),
                "middle": e.middle.describe(),
                "right": e.right.describe(),
            })
        })
        .collect();
    let relations: Vec<Value> = r
        .relations
        .iter()
        .map(|c| {
            json!({
                "label": c.label.to_string(),
                "right_nucleus_of": c.right.name(),
                "kernel_of": c.kernel.name(),
                "middle_nucleus_of": c.middle.name(),
                "orders": c.orders.iter().map(|o| o.as_ref().map(big)).collect::<Vec<_>>(),
                "status": c.status.name(),
            })
        })
        .collect();
    json!({ "hypothesis_met": r.hypothesis_met, "entries": entries, "relations": relations })
}

pub fn dho_check(c: &DhoCheck) -> Value {
    let p2 = c.p2_witness.map(|w| match w {
        P2Witness::KernelDim { a, b, dim } => json!({ "a": a, "b": b, "kernel_dim": dim }),
        P2Witness::Repeated { a, b, c } => json!({ "a": a, "b": b, "c": c }),
    });
    json!({
        "p1": c.p1,
        "p2": c.p2,
        "p1_witness": c.p1_witness.map(|(a, b, r)| json!({ "a": a, "b": b, "rank": r })),
        "p2_witness": p2,
    })
}

pub fn d_axioms(a: &DAxioms) -> Value {
    json!({
        "d1": a.d1,
        "d2": a.d2,
        "d3": a.d3,
        "d1_witness": a.d1_witness.map(|(i, j, d)| json!({ "i": i, "j": j, "dim": d })),
        "d2_witness": a.d2_witness.map(|(i, j, k)| json!([i, j, k])),
        "count": a.count,
        "expected_count": big(&a.expected_count),
    })
}

pub fn predicates(p: &Predicates) -> Value {
    let dd = p.doubly_dual_witness.map(|w| match w {
        DoublyDualWitness::Pair { i, j, codim } => json!({ "pair": [i, j], "codim": codim }),
        DoublyDualWitness::Triple { i, j, k } => json!({ "triple": [i, j, k] }),
    });
    json!({
        "bilinear": p.bilinear,
        "symmetric": p.symmetric,
        "alternating": p.alternating,
        "doubly_dual": p.doubly_dual,
        "bilinear_witness": p.bilinear_witness,
        "symmetric_witness": p.symmetric_witness,
        "alternating_witness": p.alternating_witness,
        "doubly_dual_witness": dd,
    })
}

pub fn dho_invariants(i: &DhoInvariants) -> Value {
    json!({
        "n": i.n,
        "alternating": i.alternating,
        "kernel": algebra(&i.kernel),
        "collection_kernel": algebra(&i.collection_kernel),
        "right": i.right.as_ref().map(algebra),
        "middle": i.middle.as_ref().map(algebra),
        "middle_ell": i.middle_ell,
        "kernel_ok": i.kernel_ok,
        "collection_kernel_ok": i.collection_kernel_ok,
        "right_ok": i.right_ok,
        "middle_ok": i.middle_ok,
        "ok": i.ok(),
    })
}

pub fn knuth_dho(k: &KnuthDho) -> Value {
    json!({
        "op": k.op.name(),
        "check": dho_check(&k.check),
        "base_doubly_dual": k.base_doubly_dual,
        "pre_top_doubly_dual": k.pre_top_doubly_dual,
        "perp_matches": k.perp_matches,
        "collection_kernel": algebra(&k.collection_kernel),
        "consistent": k.consistent,
    })
}

pub fn limits(l: &Limits) -> Value {
    json!({
        "max_enum": l.max_enum,
        "exhaustive_bound": l.exhaustive_bound,
        "seed": l.seed,
        "samples": l.samples,
    })
}

/// The envelope printed on stdout.
pub struct Report {
    pub command: Vec<String>,
    pub limits: Limits,
    pub results: Value,
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "tool": "rankcode",
            "version": VERSION,
            "command": self.command,
            "settings": limits(&self.limits),
            "results": self.results,
        });
        if let Some(t) = self.timing_ms {
            v["timing_ms"] = json!(t);
        }
        v
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("reports serialize")
    }
}
