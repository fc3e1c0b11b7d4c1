//! Exact Hopf axioms and presentation consistency for the four presets.

use std::time::{Duration, Instant};

use galilei_core::hopf::{Axiom, HopfSpec};
use galilei_core::normalize::verify_consistency;
use galilei_core::presets::*;
use galilei_core::{GaussRational, NCPoly, ParamSymbol, Presentation, Scalar, Word};

fn inv(p: ParamSymbol) -> Scalar {
    Scalar::param(p)
}

fn imag(num: i64, den: i64) -> Scalar {
    Scalar::constant(GaussRational::imag(num, den))
}

fn word(p: &Presentation, names: &[&str]) -> Word {
    Word(names.iter().map(|n| p.id(n).unwrap()).collect())
}

fn all_axioms_hold(spec: &HopfSpec, degree: Option<u32>) {
    let mut data = spec.expand(degree).unwrap();
    for check in data.check_all() {
        assert!(check.ok(), "{}: {:?} {:?}", spec.name(), check.axiom, check.failures);
    }
}

#[test]
fn group_a_axioms_are_exact_and_fast() {
    let start = Instant::now();
    let spec = hopf_group_a();
    all_axioms_hold(&spec, None);
    let p = spec.presentation();
    let data = spec.expand(None).unwrap();
    let a = p.id("a").unwrap();
    let expected = NCPoly::from_terms([
        (word(p, &["a"]), Scalar::from_int(-1)),
        (word(p, &["v", "tau"]), Scalar::one()),
    ]);
    assert_eq!(data.antipode_gen(a), &expected);
    assert!(start.elapsed() < Duration::from_secs(1));
}

#[test]
fn group_b_axioms_are_exact_and_fast() {
    let start = Instant::now();
    let spec = hopf_group_b();
    all_axioms_hold(&spec, None);
    let p = spec.presentation();
    let data = spec.expand(None).unwrap();
    // tau and v commute in family B, so S(a) = -a + v tau = -a + tau v.
    let expected = NCPoly::from_terms([
        (word(p, &["a"]), Scalar::from_int(-1)),
        (word(p, &["tau", "v"]), Scalar::one()),
    ]);
    assert_eq!(data.antipode_gen(p.id("a").unwrap()), &expected);
    assert!(start.elapsed() < Duration::from_secs(1));
}

#[test]
fn antipode_square_defects() {
    let spec = hopf_group_a();
    let p = spec.presentation();
    let mut data = spec.expand(None).unwrap();
    let defects = data.antipode_square_defect();
    let v = word(p, &["v"]);
    let expected = NCPoly::monomial(v, -(&imag(1, 1) * &inv(ParamSymbol::INV_KAPPA)));
    assert_eq!(defects, vec![(p.id("a").unwrap(), expected)]);

    let spec = hopf_group_b();
    let mut data = spec.expand(None).unwrap();
    assert!(data.antipode_square_defect().is_empty());

    let spec = hopf_dual_a();
    let p = spec.presentation();
    let mut data = spec.expand(Some(6)).unwrap();
    let expected = NCPoly::monomial(word(p, &["P"]), -(&imag(1, 1) * &inv(ParamSymbol::INV_KAPPA)));
    assert_eq!(data.antipode_square_defect(), vec![(p.id("K").unwrap(), expected)]);
}

#[test]
fn dual_presets_satisfy_the_axioms_at_six() {
    all_axioms_hold(&hopf_dual_a(), Some(6));
    all_axioms_hold(&hopf_dual_b(6), Some(6));
}

#[test]
fn printed_dual_a_antipode_violates_the_axiom() {
    let printed = hopf_dual_a()
        .with_antipode(dual_a_antipode(DualAAntipode::Printed))
        .unwrap();
    let mut data = printed.expand(Some(6)).unwrap();
    let check = data.check_antipode();
    assert_eq!(check.axiom, Axiom::Antipode);
    assert!(!check.ok());
    assert!(check.failures.iter().any(|f| f.subject.contains('P')));
}

#[test]
fn both_alpha_lambda_placements_are_hopf_algebras() {
    // The axioms cannot tell the placements apart; the pairing does.
    for kind in [DualBCoproduct::AlphaInH, DualBCoproduct::LambdaInH] {
        all_axioms_hold(&hopf_dual_b_with(6, kind), Some(6));
    }
}

#[test]
fn every_preset_is_consistent() {
    for preset in Preset::ALL {
        let p = preset.presentation(6);
        let report = verify_consistency(&p, preset.check_degree(6));
        assert!(report.ok(), "{preset}: {:?}", report.first_failure());
    }
}

#[test]
fn group_a_jacobi_terms_cancel_exactly() {
    let p = group_a();
    let report = verify_consistency(&p, None);
    assert_eq!(report.triples.len(), 1);
    let t = &report.triples[0];
    let vv = word(&p, &["v", "v"]);
    let k2 = inv(ParamSymbol::INV_KAPPA).pow(2);
    let half = Scalar::ratio(1, 2);
    let expected = [
        NCPoly::monomial(vv.clone(), &half * &k2),
        NCPoly::monomial(vv.clone(), &half * &k2),
        NCPoly::monomial(vv, -k2),
    ];
    assert_eq!(t.jacobi_terms, expected);
    assert!(t.jacobi_sum().is_zero());
    assert_eq!(t.left_path, t.right_path);
}

#[test]
fn plus_sign_group_b_is_still_a_hopf_algebra() {
    // Both sign choices are consistent; only the minus sign matches the
    // conjugation closed form and the dual.
    let spec = hopf_group_b_with(SigmaSign::Plus);
    all_axioms_hold(&spec, None);
    assert_eq!(GROUP_B_SIGMA_SIGN, SigmaSign::Minus);
}

#[test]
fn preset_names_round_trip() {
    for preset in Preset::ALL {
        assert_eq!(preset.name().parse::<Preset>().unwrap(), preset);
        assert_eq!(preset.partner().partner(), preset);
        assert_eq!(preset.is_dual(), preset.check_degree(6).is_some());
    }
    assert!("group_C".parse::<Preset>().is_err());
}

#[test]
fn normal_forms_match_the_independent_rewriter() {
    // Values from tests/oracle/pairing.py in the galilei crate.
    let p = group_a();
    let mut nz = p.normalizer(None);
    let k = inv(ParamSymbol::INV_KAPPA);
    let r = inv(ParamSymbol::INV_RHO);
    let got = nz.word(&word(&p, &["tau", "tau", "a"]));
    let expected = NCPoly::from_terms([
        (word(&p, &["a"]), -k.pow(2)),
        (word(&p, &["a", "tau"]), &imag(-2, 1) * &k),
        (word(&p, &["a", "tau", "tau"]), Scalar::one()),
        (word(&p, &["v"]), &Scalar::from_int(-2) * &(&k * &r)),
        (word(&p, &["v", "tau"]), &imag(-2, 1) * &r),
    ]);
    assert_eq!(got, expected);
    let got = nz.word(&word(&p, &["tau", "v", "a"]));
    let expected = NCPoly::from_terms([
        (word(&p, &["a", "v"]), &imag(-2, 1) * &k),
        (word(&p, &["a", "v", "tau"]), Scalar::one()),
        (word(&p, &["v", "v"]), &k.pow(2) - &(&imag(1, 1) * &r)),
        (word(&p, &["v", "v", "tau"]), &imag(1, 2) * &k),
    ]);
    assert_eq!(got, expected);
}
