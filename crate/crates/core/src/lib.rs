//! Exact continued fractions of square roots of polynomials over the Laurent
//! series field at infinity, the torsion order of the divisor at infinity of
//! hyperelliptic curves, a symbolic coefficient-matching search for curves of
//! prescribed torsion, and genus-2 Igusa invariants.
//!
//! All arithmetic is over exact rationals.

pub mod catalog;
pub mod cf;
pub mod error;
pub mod expr;
pub mod fixtures;
pub mod hseq;
pub mod igusa;
pub mod laurent;
pub mod linalg;
pub mod multipoly;
pub mod partitions;
pub mod poly;
pub mod rational;
pub mod report;
pub mod search;
pub mod symbolic;
pub mod symmetric;
pub mod torsion;

pub use catalog::{digest, read_catalog, record_curve, Catalog, CurveRecord, RecordKind};
pub use cf::{cf_expand, verify_period_form, CfExpansion, CfStatus, SurdState};
pub use error::{Error, Result};
pub use hseq::{continuants, h_property_check, h_sequence, verify_a0_lemma, ContinuantTable, HSequence, RatFunc};
pub use fixtures::run_fixtures;
pub use igusa::{distinguish_families, family_invariants, igusa_abcd, igusa_j, Distinction, DistinguishOptions, Family, FamilyVerdict, IgusaInvariants, JInvariants};
pub use laurent::{sqrt_series, LaurentSeries};
pub use multipoly::{Monomial, MultiPoly, Var};
pub use partitions::{enumerate_partitions, m_range, PartitionSpec};
pub use poly::{resultant, Poly};
pub use rational::Rational;
pub use report::Report;
pub use search::{run_search, SearchConfig};
pub use symbolic::{
    build_system, count_variables, eliminate, eliminate_with_budget, instantiate_curve, verify_trace, EliminationTrace, PivotPolicy, SymbolicSystem,
    Verdict,
};
pub use torsion::{degree_constraint_check, torsion_order, DegreeVector};


