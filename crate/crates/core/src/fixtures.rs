//! Built-in reference curves: the order-11 families G_u and F_t (Flynn), the
//! displayed data attached to them, and a self-check suite.

use crate::cf::{cf_expand, CfExpansion};
use crate::error::Result;
use crate::hseq::{h_property_check, h_sequence, tail_continuants, verify_a0_lemma};
use crate::igusa::{distinguish_families, igusa_abcd, DistinguishOptions, Family};
use crate::multipoly::Var;
use crate::partitions::PartitionSpec;
use crate::poly::Poly;
use crate::rational::{format_rational, frac, int, Rational};
use crate::report::Report;
use crate::symbolic::{build_system, eliminate, instantiate_curve, EliminationTrace, PivotPolicy, Verdict};
use crate::torsion::torsion_order;
use std::collections::HashMap;

pub const G_FAMILY: &str =
    "x^6 - 4*x^5 + 8*(1 + u)*x^4 - (10 + 32*u)*x^3 + 8*(1 + 6*u + 2*u^2)*x^2 - 4*(1 + 6*u + 16*u^2)*x + 64*u^2 + 1";
pub const FLYNN_FAMILY: &str = "x^6 + 2*x^5 + (2*t + 3)*x^4 + 2*x^3 + (t^2 + 1)*x^2 + 2*t*(1 - t)*x + t^2";

/// Sample parameters used throughout.
pub const G_SAMPLES: [(i64, i64); 5] = [(1, 1), (2, 1), (-1, 1), (1, 2), (3, 1)];
pub const FLYNN_SAMPLES: [(i64, i64); 5] = [(1, 1), (2, 1), (-1, 1), (1, 3), (5, 1)];

/// Pivot preference reproducing the published elimination order at
/// (g, N) = (2, 11).
pub const PUBLISHED_ORDER: [&str; 8] = ["b0", "k1", "r0", "r2", "l3", "k2", "r1", "c1"];

fn family(src: &str) -> Family {
    Family::parse(src).expect("built-in family")
}

pub fn g_family() -> Family {
    family(G_FAMILY)
}

pub fn flynn_family() -> Family {
    family(FLYNN_FAMILY)
}

pub fn g_u(u: &Rational) -> Poly {
    g_family().at(u)
}

pub fn flynn(t: &Rational) -> Poly {
    flynn_family().at(t)
}

fn p(s: &str) -> Poly {
    s.parse().expect("built-in polynomial")
}

/// The first quotient of G_u's expansion (x^2 - x + 1 + 4u)/(8u).
fn g_a1(u: &Rational, c: &Rational) -> Poly {
    Poly::new(vec![c.clone(), int(-1), int(1)]).scale(&(int(1) / (int(8) * u)))
}

fn quotients_with(u: &Rational, c: Rational) -> Vec<Poly> {
    let a0 = Poly::new(vec![-(int(8) * u + int(1)), int(4) * u + int(2), int(-2), int(1)]);
    let a1 = g_a1(u, &c);
    let a2 = p("-2*x + 2");
    let a3 = p("-x/2");
    let a4 = Poly::new(vec![int(0), -(int(1) / (int(2) * u))]);
    let a5 = a2.scale(u);
    let a6 = a1.scale(&(int(1) / u));
    let a7 = a0.scale(&(int(2) * u));
    vec![a0, a1, a2, a3, a4, a5, a6, a7]
}

/// a_0, ..., a_7 of the expansion of sqrt(g_u).
pub fn g_u_quotients(u: &Rational) -> Vec<Poly> {
    quotients_with(u, int(1) + int(4) * u)
}

/// a_0, ..., a_7 as displayed, with constant term 1 + u in a_1 and a_6.
pub fn g_u_printed_quotients(u: &Rational) -> Vec<Poly> {
    quotients_with(u, int(1) + u)
}

/// Displayed Flynn invariants A_t, B_t, C_t, D_t.
pub fn flynn_printed_invariants() -> [Poly; 4] {
    let n8 = int(-8);
    [
        Poly::from_ints(&[3, -16, 56, 4]).scale(&n8),
        Poly::from_ints(&[9, -120, 1045, -1120, 539, 448, 16]).scale(&int(4)),
        Poly::from_ints(&[27, -492, 4328, -21984, 71544, -115456, 60168, 29984, 2688, 64]).scale(&n8),
        &Poly::monomial(int(-4096), 7) * &Poly::from_ints(&[9, -104, 432, 16]),
    ]
}

/// Exact B_t of the Flynn family.
pub fn flynn_b() -> Poly {
    Poly::from_ints(&[9, -120, 640, -1120, 944, 448, 16]).scale(&int(4))
}

/// The published substitutions at partition (2,1,2,1,2), in elimination
/// order, followed by the published x^4 witness.
pub const PRINTED_IMPOSSIBLE: [(&str, &str); 5] = [
    ("b0", "-2*(c1 - r2*l1)/l1^2"),
    ("k1", "2*(r1*l1^2 - r2*c1*l1 + c1^2)/l1"),
    ("r0", "(-2*c1^2*l1*r2 - c1*l2*l1^2*r1 + c1*l2*l1^2*r2^2 - l2*l1^3*r2*r1 - l1^2 + l2*c1^3)/(l1^3*l2)"),
    ("r2", "(l2*c1 + l1*k2)/(l1*l2)"),
    ("witness", "-l2*l3^2"),
];

pub fn spec(g: usize, deltas: &[usize]) -> PartitionSpec {
    PartitionSpec::new(g, deltas.to_vec()).expect("admissible partition")
}

pub fn published_policy() -> PivotPolicy {
    PivotPolicy::Explicit(PUBLISHED_ORDER.iter().map(|s| s.to_string()).collect())
}

/// Runs the elimination for a (g = 2) partition with the published pivot
/// order.
pub fn published_trace(deltas: &[usize]) -> Result<EliminationTrace> {
    let sys = build_system(&spec(2, deltas))?;
    eliminate(&sys, &published_policy())
}

/// Instantiates the (2,1,1,1,1,2) family with l_2 = -2, k_3 = 0, kappa = u
/// and the given l_1.
pub fn instantiate_g(trace: &EliminationTrace, u: &Rational, l1: &Rational) -> Result<crate::symbolic::Instance> {
    let mut vals = HashMap::new();
    for (name, v) in [("l1", l1.clone()), ("l2", int(-2)), ("k3", int(0)), ("kappa", u.clone())] {
        vals.insert(trace_var(trace, name)?, v);
    }
    instantiate_curve(trace, &vals)
}

fn trace_var(trace: &EliminationTrace, name: &str) -> Result<Var> {
    trace
        .variables
        .iter()
        .find(|v| v.alias == name || v.var.name() == name)
        .map(|v| v.var)
        .ok_or_else(|| crate::error::Error::Invalid(format!("no variable {name}")))
}

fn expansion(f: &Poly) -> Result<CfExpansion> {
    cf_expand(f, 64)
}

fn curve_checks(rep: &mut Report, label: &str, f: &Poly, g: usize) -> Result<CfExpansion> {
    let e = expansion(f)?;
    rep.check(format!("{label} torsion order"), torsion_order(&e, g).ok() == Some(11), "N = 11");
    let t = tail_continuants(&e)?;
    let lemma = verify_a0_lemma(f, &e, &t)?;
    rep.check(format!("{label} first identity"), lemma.all_passed(), "f - a0^2 = q_{m-1}/(kappa p_{m-2})");
    let hs = h_sequence(&e, &t)?;
    let hp = h_property_check(&e, &t, &hs)?;
    rep.check(format!("{label} h-sequence"), hp.all_passed(), format!("{} checks", hp.checks.len()));
    Ok(e)
}

/// Checks every built-in fixture. Displayed values that differ from the
/// exact ones are reported as warnings.
pub fn run_fixtures() -> Result<Report> {
    let mut rep = Report::new("fixtures");
    for &(n, d) in &G_SAMPLES {
        let u = frac(n, d);
        let us = format_rational(&u);
        let f = g_u(&u);
        let e = curve_checks(&mut rep, &format!("G_{us}"), &f, 2)?;
        rep.check(format!("G_{us} quasi-period"), e.m == Some(7) && e.kappa.as_ref() == Some(&u), "m = 7, kappa = u");
        rep.check(format!("G_{us} partial quotients"), e.a.get(..8) == Some(&g_u_quotients(&u)[..]), "a_0..a_7");
        if e.a.get(..8) != Some(&g_u_printed_quotients(&u)[..]) {
            rep.warn(format!("G_{us}: displayed a_1, a_6 use 1 + u, the expansion has 1 + 4u"));
        }
    }
    let g1 = g_u(&int(1));
    let e1 = expansion(&g1)?;
    rep.check("G_1 period", e1.n == Some(7) && e1.kappa == Some(int(1)), "n = 7, kappa = 1");
    rep.check("G_1 minus a0^2", &g1 - &(&e1.a[0] * &e1.a[0]) == p("16*x - 16"), "16x - 16");
    for t in 1..=3 {
        let e = curve_checks(&mut rep, &format!("F_{t}"), &flynn(&int(t)), 2)?;
        rep.check(format!("F_{t} quasi-periodic"), e.is_periodic(), format!("m = {:?}", e.m));
    }

    let printed = flynn_printed_invariants();
    for &(n, d) in &FLYNN_SAMPLES {
        let t = frac(n, d);
        let inv = igusa_abcd(&flynn(&t))?;
        let ts = format_rational(&t);
        let ok = [&inv.a, &flynn_b().eval(&t), &inv.c, &inv.d] == [&printed[0].eval(&t), &inv.b, &printed[2].eval(&t), &printed[3].eval(&t)];
        rep.check(format!("F_{ts} invariants"), ok, "A, C, D displayed; B exact");
        if printed[1].eval(&t) != inv.b {
            rep.warn(format!("F_{ts}: displayed B_t gives {}, exact B = {}", format_rational(&printed[1].eval(&t)), format_rational(&inv.b)));
        }
    }

    let neg = published_trace(&[2, 1, 2, 1, 2])?;
    rep.check("partition (2,1,2,1,2)", matches!(neg.verdict, Verdict::Impossible { .. }), neg.verdict.label());
    let pos = published_trace(&[2, 1, 1, 1, 1, 2])?;
    rep.check("partition (2,1,1,1,1,2)", matches!(pos.verdict, Verdict::Family { .. }), pos.verdict.label());
    for &(n, d) in &G_SAMPLES[..3] {
        let u = frac(n, d);
        let us = format_rational(&u);
        let inst = instantiate_g(&pos, &u, &(int(1) / (int(8) * &u)))?;
        rep.check(format!("family at u = {us}"), inst.f == g_u(&u), "l1 = 1/(8 kappa) gives g_u");
        if let Ok(other) = instantiate_g(&pos, &u, &-(int(1) / (int(8) * &u))) {
            if other.f != g_u(&u) {
                rep.warn(format!("u = {us}: l1 = -1/(8 kappa) gives g_u(-x), not g_u(x)"));
            }
        }
    }

    let d = distinguish_families(&flynn_family(), &g_family(), &DistinguishOptions::default())?;
    let shift_identity = (1..=3).all(|k| {
        let u = int(k);
        flynn(&(int(4) * &u)).compose(&p("x - 1")) == g_u(&u)
    });
    rep.check("G_u(x) = F_{4u}(x - 1)", shift_identity, "u = 1, 2, 3");
    if d.checks.iter().any(|c| !c.witnesses.is_empty()) {
        let pairs: Vec<String> =
            d.checks.iter().flat_map(|c| c.witnesses.iter().map(move |w| format!("({}, {w})", format_rational(&c.t0)))).collect();
        rep.warn(format!("F_t and G_u share invariants at (t, u) = {}", pairs.join(", ")));
    }
    Ok(rep)
}
