//! Rank-metric codes over finite fields.
//!
//! The crate builds rank-metric codes (Gabidulin, generalized twisted
//! Gabidulin, rectangular evaluation codes, field spread sets, projections of
//! commutative semifields, quadratic APN codes) and computes the invariants
//! that distinguish them up to equivalence: the kernel of the associated
//! translation structure, the middle nucleus and the right nucleus. Duality
//! operations (adjoint, Delsarte dual, opposite, the Knuth orbit) and
//! dimensional-dual-hyperoval checks sit on top of the same linear algebra.
//!
//! Everything is exact arithmetic in `F_{p^e}`. The crate is `no_std` with
//! `alloc`; the `parallel` feature (default) spreads exhaustive codeword and
//! subspace sweeps over a rayon pool without changing any result.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod code;
pub mod construct;
pub mod dho;
pub mod duality;
mod enumerate;
pub mod error;
pub mod gf;
pub mod invariant;
pub mod linpoly;
pub mod mat;

pub use code::{CodeBody, Limits, MrdReport, RankCode, WeightTable};
pub use construct::{GabidulinParams, QPolyCode, ZhouPott};
pub use dho::{DhoSet, SubspaceCollection};
pub use duality::{KnuthOp, KnuthOrbit};
pub use error::{Error, Result};
pub use gf::{FieldCtx, FieldElem, Op};
pub use invariant::{AlgebraKind, AlgebraSummary, SpectrumEntry};
pub use linpoly::{LinPoly, QExtension};
pub use mat::{MatFq, RowSpace, Side, SubspaceIter};
