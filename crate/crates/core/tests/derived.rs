//! Exact values where the published displays differ, checked against their
//! own oracles.

use cftorsion::fixtures::*;
use cftorsion::igusa::{family_invariants, igusa_abcd};
use cftorsion::rational::{frac, int};
use cftorsion::symbolic::{build_system, verify_trace};
use cftorsion::{cf_expand, expr, torsion_order, Poly, Verdict};

fn poly(s: &str) -> Poly {
    s.parse().unwrap()
}

#[test]
fn g_u_quotients_match_expansion() {
    for &(n, d) in &G_SAMPLES {
        let u = frac(n, d);
        let e = cf_expand(&g_u(&u), 32).unwrap();
        assert_eq!(e.a[..8], g_u_quotients(&u)[..]);
        assert_eq!(torsion_order(&e, 2), Ok(11));
    }
}

#[test]
fn a1_constant_term_is_one_plus_4u() {
    // q_{m-1}/(kappa p_{m-2}) must reproduce f - a_0^2; it does only with 1 + 4u.
    let u = int(2);
    let f = g_u(&u);
    let a = g_u_quotients(&u);
    let t = cftorsion::continuants(&a[1..8]);
    let rhs = t.q(6).div_exact(&t.p(5).scale(&u)).unwrap();
    assert_eq!(&f - &(&a[0] * &a[0]), rhs);
    let printed = g_u_printed_quotients(&u);
    let t = cftorsion::continuants(&printed[1..8]);
    let (_, r) = t.q(6).divrem(&t.p(5).scale(&u)).unwrap();
    assert!(!r.is_zero());
}

#[test]
fn impossible_partition_by_replay() {
    let sys = build_system(&spec(2, &[2, 1, 2, 1, 2])).unwrap();
    let trace = published_trace(&[2, 1, 2, 1, 2]).unwrap();
    assert!(verify_trace(&sys, &trace).unwrap().all_passed());
    assert_eq!(trace.solved("b0"), Some(expr::parse("-2*(c1 - r2*l1)/l1^2").unwrap()));
    assert_eq!(trace.solved("r2"), Some(expr::parse("(l2*c1 + l1*k2)/(l1*l2)").unwrap()));
    assert_eq!(trace.solved("k1"), Some(expr::parse("(c1^2 - c1*l1*r2 + l1^2*r1)/l1").unwrap()));
    let Verdict::Impossible { power, witness } = &trace.verdict else { panic!("{}", trace.verdict.label()) };
    assert_eq!(*power, 4);
    assert_eq!(trace.alias(witness), expr::parse("-l2^2*l3").unwrap());
}

#[test]
fn positive_l1_reproduces_g_u() {
    let trace = published_trace(&[2, 1, 1, 1, 1, 2]).unwrap();
    for u in [int(1), int(3), frac(-1, 2)] {
        let l1 = int(1) / (int(8) * &u);
        let inst = instantiate_g(&trace, &u, &l1).unwrap();
        assert_eq!(inst.f, g_u(&u));
        assert_eq!(torsion_order(&inst.expansion, 2), Ok(11));
    }
}

#[test]
fn negative_l1_reflects_x() {
    let trace = published_trace(&[2, 1, 1, 1, 1, 2]).unwrap();
    let u = int(2);
    let inst = instantiate_g(&trace, &u, &-(int(1) / int(16))).unwrap();
    assert_eq!(inst.f, g_u(&u).compose(&poly("-x")));
    assert_eq!(torsion_order(&inst.expansion, 2), Ok(11));
}

#[test]
fn flynn_invariants_exact() {
    let inv = family_invariants(&flynn_family()).unwrap();
    let printed = flynn_printed_invariants();
    assert_eq!(inv.a, printed[0]);
    assert_eq!(inv.b, flynn_b());
    assert_eq!(inv.c, printed[2]);
    assert_eq!(inv.d, printed[3]);
    let t2 = igusa_abcd(&flynn(&int(2))).unwrap();
    assert_eq!((t2.a, t2.b, t2.d), (int(-1816), int(95332), int(-868745216)));
}

#[test]
fn g_is_flynn_shifted() {
    let shift = poly("x - 1");
    for &(n, d) in &G_SAMPLES {
        let u = frac(n, d);
        assert_eq!(flynn(&(int(4) * &u)).compose(&shift), g_u(&u));
    }
    let fg = family_invariants(&g_family()).unwrap();
    let ff = family_invariants(&flynn_family()).unwrap();
    let four_u = poly("4*x");
    assert_eq!(fg.a, ff.a.compose(&four_u));
    assert_eq!(fg.d, ff.d.compose(&four_u));
}

#[test]
fn fixture_suite_passes() {
    let rep = run_fixtures().unwrap();
    assert!(rep.all_passed(), "{rep}");
    assert!(!rep.warnings.is_empty());
}
