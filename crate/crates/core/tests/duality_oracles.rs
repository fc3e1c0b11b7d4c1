//! The pairing-based dual against the independent Python rewriter
//! (galilei crate, tests/oracle/pairing.py) and against the dual presets.

use std::collections::BTreeMap;

use galilei_core::duality::{DualSpec, DualityEngine};
use galilei_core::hopf::HopfSpec;
use galilei_core::presets::*;
use galilei_core::{GaussRational, GeneratorId, NCPoly, ParamSymbol, Scalar, Word};

fn inv(p: ParamSymbol) -> Scalar {
    Scalar::param(p)
}

fn imag(n: i64) -> Scalar {
    Scalar::constant(GaussRational::imag(n, 1))
}

fn group_word(g: &HopfSpec, names: &str) -> Word {
    let p = g.presentation();
    Word(names.split('*').filter(|s| !s.is_empty()).map(|n| p.id(n).unwrap()).collect())
}

fn engine(g: &HopfSpec, family_a: bool, n: u32) -> DualityEngine<'_> {
    let spec = if family_a {
        DualSpec::family_a(g.presentation()).unwrap()
    } else {
        DualSpec::family_b(g.presentation()).unwrap()
    };
    DualityEngine::new(g, spec, n).unwrap()
}

fn dual_commutator_poly(e: &DualityEngine<'_>, x: &str, y: &str) -> NCPoly {
    let (x, y) = (e.dual_id(x).unwrap(), e.dual_id(y).unwrap());
    let xy = NCPoly::monomial(Word(vec![x, y]), Scalar::one());
    let yx = NCPoly::monomial(Word(vec![y, x]), Scalar::one());
    &xy - &yx
}

/// Checks `<[X,Y], m>` on every group PBW monomial of grade <= 4 against
/// the oracle's nonzero entries.
fn commutator_table(g: &HopfSpec, family_a: bool, table: &[(&str, &str, &str, Scalar)]) {
    let mut e = engine(g, family_a, 4);
    let basis = g.presentation().pbw_basis(4);
    for (x, y) in [("P", "H"), ("K", "H"), ("K", "P")] {
        let f = e.functional(&dual_commutator_poly(&e, x, y));
        for m in &basis {
            let got = e.evaluate(&f, &NCPoly::monomial(m.clone(), Scalar::one())).unwrap();
            let want = table
                .iter()
                .find(|(tx, ty, tm, _)| *tx == x && *ty == y && group_word(g, tm) == *m)
                .map(|t| t.3.clone())
                .unwrap_or_default();
            assert_eq!(got, want, "<[{x},{y}], {m:?}>");
        }
    }
}

/// Checks `<X, m1 m2>` for nonunit monomials of grade <= 2.
fn product_table(g: &HopfSpec, family_a: bool, table: &[(&str, &str, &str, Scalar)]) {
    let mut e = engine(g, family_a, 4);
    let small: Vec<Word> = g.presentation().pbw_basis(2).into_iter().filter(|w| !w.is_empty()).collect();
    let mut data = g.expand(None).unwrap();
    for x in ["H", "K"] {
        let f = e.generator_functional(e.dual_id(x).unwrap());
        for m1 in &small {
            for m2 in &small {
                let prod = data.mul(&NCPoly::monomial(m1.clone(), Scalar::one()), &NCPoly::monomial(m2.clone(), Scalar::one()));
                let got = e.evaluate(&f, &prod).unwrap();
                let want = table
                    .iter()
                    .find(|(tx, t1, t2, _)| *tx == x && group_word(g, t1) == *m1 && group_word(g, t2) == *m2)
                    .map(|t| t.3.clone())
                    .unwrap_or_default();
                assert_eq!(got, want, "<{x}, {m1:?} {m2:?}>");
            }
        }
    }
}

#[test]
fn family_a_pairing_tables() {
    let g = hopf_group_a();
    let k = inv(ParamSymbol::INV_KAPPA);
    let r = inv(ParamSymbol::INV_RHO);
    commutator_table(&g, true, &[("K", "H", "a", Scalar::from_int(-1)), ("K", "P", "a*a", &imag(1) * &k)]);
    product_table(
        &g,
        true,
        &[
            ("K", "tau", "a", r.clone()),
            ("K", "tau", "v", k.clone()),
            ("K", "tau*tau", "a", &imag(-2) * &(&k * &r)),
            ("K", "tau*tau", "v", &imag(-1) * &k.pow(2)),
        ],
    );
}

#[test]
fn family_b_pairing_tables() {
    let g = hopf_group_b();
    let s = inv(ParamSymbol::INV_SIGMA);
    commutator_table(&g, false, &[("K", "H", "a", Scalar::from_int(-1)), ("K", "H", "a*a", &imag(-2) * &s)]);
    product_table(
        &g,
        false,
        &[
            ("H", "tau", "a", -s.clone()),
            ("H", "v", "a", inv(ParamSymbol::INV_ALPHA)),
            ("K", "tau", "a", inv(ParamSymbol::INV_LAMBDA)),
            ("K", "v", "a", -s),
        ],
    );
}

/// Maps every coefficient of the reconstructed structure through `f` and
/// compares it with the preset at the given degree.
fn compare_with_preset(
    group: &HopfSpec,
    family_a: bool,
    preset: &HopfSpec,
    n: u32,
    f: impl Fn(&Scalar) -> Scalar,
) {
    let mut e = engine(group, family_a, n);
    assert!(e.gram().triangularity_violations().is_empty());
    let rec = e.reconstruct_hopf().unwrap();
    let data = preset.expand(Some(n)).unwrap();
    assert_eq!(rec.hopf.presentation().alphabet().names(), preset.presentation().alphabet().names());
    let grades = preset.presentation().grades().to_vec();
    for k in 0..3u8 {
        let x = GeneratorId(k);
        let want = data.delta_gen(x).truncate_graded(n, &grades);
        assert_eq!(rec.coproducts[k as usize].map_coefficients(&f), want, "coproduct {k}");
        let want = data.antipode_gen(x).truncate_graded(n, &grades);
        assert_eq!(rec.antipodes[k as usize].map_coefficients(&f), want, "antipode {k}");
        assert!(rec.counits[k as usize].is_zero());
    }
    let relations: BTreeMap<_, _> = rec.hopf.presentation().relations().into_iter().collect();
    for ((j, i), c) in preset.presentation().relations() {
        assert_eq!(
            relations[&(j, i)].map_coefficients(&f).truncate_graded(n, &grades),
            c.truncate_graded(n, &grades)
        );
    }
    let routes = rec.axiom_antipode().unwrap();
    assert_eq!(routes, rec.antipodes);
}

#[test]
fn family_a_reconstruction_equals_the_preset() {
    compare_with_preset(&hopf_group_a(), true, &hopf_dual_a(), 6, Scalar::clone);
}

#[test]
fn family_b_reconstruction_is_the_sigma_reflected_preset() {
    compare_with_preset(&hopf_group_b(), false, &hopf_dual_b(6), 6, |c| {
        c.reflect(&ParamSymbol::INV_SIGMA)
    });
}

#[test]
fn dual_stars() {
    let g = hopf_group_a();
    let mut e = engine(&g, true, 4);
    let (h, p, k) = (e.dual_id("H").unwrap(), e.dual_id("P").unwrap(), e.dual_id("K").unwrap());
    assert_eq!(e.dual_star(h).unwrap(), NCPoly::gen(h));
    assert_eq!(e.dual_star(p).unwrap(), NCPoly::gen(p));
    let expected = &NCPoly::gen(k) - &NCPoly::gen(p).scale(&(&imag(1) * &inv(ParamSymbol::INV_KAPPA)));
    assert_eq!(e.dual_star(k).unwrap(), expected);

    let g = hopf_group_b();
    let mut e = engine(&g, false, 4);
    for x in ["H", "P", "K"] {
        let id = e.dual_id(x).unwrap();
        assert_eq!(e.dual_star(id).unwrap(), NCPoly::gen(id), "{x}");
    }
}

#[test]
fn plus_sign_group_b_gives_no_quadratic_term() {
    let g = hopf_group_b_with(SigmaSign::Plus);
    let mut e = engine(&g, false, 4);
    let (k, h, p) = (e.dual_id("K").unwrap(), e.dual_id("H").unwrap(), e.dual_id("P").unwrap());
    assert_eq!(e.dual_commutator(k, h), NCPoly::gen(p).scale(&Scalar::i()));
}
