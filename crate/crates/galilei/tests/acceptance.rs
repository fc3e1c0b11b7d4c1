//! Acceptance criteria 1 to 10, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines are always printed.

use std::cell::RefCell;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use galilei::ast::{Ast, Func};
use galilei::eval::{Evaluator, Value};
use galilei::parse;
use galilei::suite::{self, Options, Target};
use galilei_core::duality::{DualSpec, DualStructure, DualityEngine};
use galilei_core::hopf::HopfSpec;
use galilei_core::lm::{is_antisymmetric, lm_coproduct, preset_input, LmInput};
use galilei_core::normalize::verify_consistency;
use galilei_core::presets::*;
use galilei_core::series::{equal_diagonal_closed_form, printed_closed_form, verify_conjugation_closed_form};
use galilei_core::{GaussRational, GeneratorId, NCPoly, ParamSymbol, Presentation, Scalar, TensorPoly, Word};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Outcome = Result<Vec<String>, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn value(p: &Presentation, src: &str) -> Value {
    let ast = parse(src).unwrap_or_else(|e| panic!("{src}: {e}"));
    Evaluator::new(p, 8).eval_normal(ast).unwrap_or_else(|e| panic!("{src}: {e}"))
}

fn poly(p: &Presentation, src: &str) -> NCPoly {
    match value(p, src) {
        Value::Poly(x) => x,
        Value::Scalar(s) => NCPoly::constant(s),
        Value::Tensor(_) => panic!("{src} is a tensor"),
    }
}

fn engine(group: &HopfSpec, family_a: bool, n: u32) -> DualityEngine<'_> {
    let spec = if family_a {
        DualSpec::family_a(group.presentation())
    } else {
        DualSpec::family_b(group.presentation())
    };
    DualityEngine::new(group, spec.unwrap(), n).unwrap()
}

fn sigma_reflected(t: &TensorPoly) -> TensorPoly {
    t.map_coefficients(|c| c.reflect(&ParamSymbol::INV_SIGMA))
}

fn axioms_hold(spec: &HopfSpec, degree: Option<u32>) -> Result<(), String> {
    let mut data = spec.expand(degree).map_err(|e| e.to_string())?;
    for c in data.check_all() {
        ensure!(c.ok(), "{}: {} fails: {:?}", spec.name(), c.axiom.label(), c.failures);
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let mut out = Vec::new();
    for spec in [hopf_group_a(), hopf_group_b()] {
        let t = Instant::now();
        axioms_hold(&spec, None)?;
        let p = spec.presentation();
        let data = spec.expand(None).unwrap();
        let s_a = data.antipode_gen(p.id("a").unwrap());
        ensure!(*s_a == poly(p, "-a + v*tau"), "{}: S(a) = {}", spec.name(), data.show(s_a));
        let dt = t.elapsed();
        ensure!(dt < Duration::from_secs(1), "{} took {dt:?}", spec.name());
        out.push(format!("{}: all axioms exact, S(a) = {}, {} ms", spec.name(), data.show(s_a), dt.as_millis()));
    }
    Ok(out)
}

fn criterion_2() -> Outcome {
    let mut out = Vec::new();
    for preset in Preset::ALL {
        let r = verify_consistency(&preset.presentation(6), preset.check_degree(6));
        ensure!(r.ok(), "{preset}: {:?}", r.first_failure());
        out.push(format!("{preset}: {} overlap triples resolve", r.triples.len()));
    }
    let p = group_a();
    let t = &verify_consistency(&p, None).triples[0];
    let expected = [
        poly(&p, "(1/(2*kappa^2))*v^2"),
        poly(&p, "(1/(2*kappa^2))*v^2"),
        poly(&p, "-(1/kappa^2)*v^2"),
    ];
    ensure!(t.jacobi_terms == expected, "group_A Jacobi terms {:?}", t.jacobi_terms);
    let shown: Vec<String> = t.jacobi_terms.iter().map(|x| p.alphabet().show(x).to_string()).collect();
    out.push(format!("group_A Jacobi: {} = 0", shown.join(" + ")));
    Ok(out)
}

fn compare_structure(
    rec: &DualStructure,
    preset: &HopfSpec,
    n: u32,
    map: impl Fn(&TensorPoly) -> TensorPoly,
) -> Result<(), String> {
    let data = preset.expand(Some(n)).unwrap();
    let p = preset.presentation();
    for k in 0..3u8 {
        let g = GeneratorId(k);
        let name = p.alphabet().name(g);
        let want = data.delta_gen(g).truncate_graded(n, p.grades());
        ensure!(map(&rec.coproducts[k as usize]) == want, "coproduct of {name} differs");
        let want = TensorPoly::from_poly(&data.antipode_gen(g).truncate_graded(n, p.grades()));
        ensure!(map(&TensorPoly::from_poly(&rec.antipodes[k as usize])) == want, "antipode of {name} differs");
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let group = hopf_group_a();
    let mut e = engine(&group, true, 6);
    let d = dual_a();
    let id = |x: &str| d.id(x).unwrap();
    ensure!(e.dual_commutator(id("P"), id("H")).is_zero(), "[H,P] != 0");
    let kp = e.dual_commutator(id("K"), id("P"));
    ensure!(kp == poly(&d, "-(i/(2*kappa))*P^2"), "[K,P] = {}", e.show(&kp));
    let kh = e.dual_commutator(id("K"), id("H"));
    ensure!(kh == poly(&d, "i*P"), "[K,H] = {}", e.show(&kh));
    let rec = e.reconstruct_hopf().map_err(|err| err.to_string())?;
    compare_structure(&rec, &hopf_dual_a(), 6, TensorPoly::clone)?;
    let printed = hopf_dual_a().with_antipode(dual_a_antipode(DualAAntipode::Printed)).unwrap();
    let printed_ok = printed.expand(Some(6)).unwrap().check_antipode().ok();
    Ok(vec![
        format!("[H,P] = 0, [K,P] = {}, [K,H] = {}", e.show(&kp), e.show(&kh)),
        "coproducts and antipode equal the preset at N=6".into(),
        format!("printed S(P) = -P e^(-H/kappa) satisfies the antipode axiom: {printed_ok} (documented)"),
    ])
}

fn criterion_4() -> Outcome {
    let group = hopf_group_b();
    let mut e = engine(&group, false, 6);
    let d = dual_b(6);
    let id = |x: &str| d.id(x).unwrap();
    ensure!(e.dual_commutator(id("P"), id("H")).is_zero(), "[H,P] != 0");
    ensure!(e.dual_commutator(id("K"), id("P")).is_zero(), "[K,P] != 0");
    let kh = e.dual_commutator(id("K"), id("H"));
    let derived = poly(&d, "i*P + i*(1/sigma)*P^2 + (2*i/3)*(1/sigma)^2*P^3");
    ensure!(kh == derived, "[K,H] = {}", e.show(&kh));
    let printed = dual_b_kh(6);
    ensure!(
        printed.map_coefficients(|c| c.reflect(&ParamSymbol::INV_SIGMA)) == kh,
        "[K,H] is not the sigma-reflected printed series"
    );
    let rec = e.reconstruct_hopf().map_err(|err| err.to_string())?;
    compare_structure(&rec, &hopf_dual_b_with(6, DualBCoproduct::LambdaInH), 6, sigma_reflected)?;
    let other = compare_structure(&rec, &hopf_dual_b_with(6, DualBCoproduct::AlphaInH), 6, sigma_reflected);
    ensure!(other.is_err(), "both alpha/lambda placements match");
    Ok(vec![
        format!("[H,P] = [K,P] = 0, [K,H] = {}", e.show(&kh)),
        "documented sign: derived = printed with sigma -> -sigma, every coefficient at N=6".into(),
        "alpha/lambda: Delta(H) carries -(1/alpha) K (x) P, Delta(K) carries -(1/lambda) H (x) P; the swapped placement fails".into(),
    ])
}

fn criterion_5() -> Outcome {
    let mut out = Vec::new();
    for (group, family_a) in [(hopf_group_a(), true), (hopf_group_b(), false)] {
        let mut e = engine(&group, family_a, 6);
        let rec = e.reconstruct_hopf().map_err(|err| err.to_string())?;
        axioms_hold(&rec.hopf, Some(6))?;
        let routes = rec.axiom_antipode().map_err(|err| err.to_string())?;
        ensure!(routes == rec.antipodes, "{}: antipode routes disagree", rec.hopf.name());
        out.push(format!("dual of {}: full suite passes, pairing and axiom antipodes agree", group.name()));
    }
    Ok(out)
}

fn criterion_6() -> Outcome {
    let r = verify_conjugation_closed_form(&group_b(), 8).map_err(|e| e.to_string())?;
    ensure!(r.passed(), "ODE {:?}, closed form {:?}", r.ode_mismatches, r.closed_form_mismatches);
    let mut out = vec![format!(
        "exp(i mu' A) solves the conjugation ODE through order 8; argument square {}",
        r.argument_square
    )];
    let m = &r.matrix;
    let minus_i = -Scalar::i();
    let rotated = [[m[0][0].clone(), &m[0][1] * &minus_i], [&m[1][0] * &minus_i, m[1][1].clone()]];
    ensure!(
        equal_diagonal_closed_form(&rotated, 8) == Some(printed_closed_form(8)),
        "printed closed form is not the off-diagonal rotation of the derived one"
    );
    out.push(format!(
        "{} printed closed-form coefficient deltas, all explained by off-diagonal entries times -i:",
        r.printed_closed_form_deltas.len()
    ));
    out.extend(r.printed_closed_form_deltas.iter().map(|d| format!("  {d}")));
    Ok(out)
}

fn criterion_7() -> Outcome {
    let mut out = Vec::new();
    for spec in [hopf_group_a(), hopf_group_b()] {
        let mut data = spec.expand(None).unwrap();
        let c = data.check_star_antipode(4);
        ensure!(c.ok(), "{}: {:?}", spec.name(), c.failures);
        out.push(format!("{}: S^-1(x) = [S(x*)]* on PBW monomials to degree 4", spec.name()));
    }
    let group = hopf_group_a();
    let mut e = engine(&group, true, 6);
    let d = dual_a();
    for (x, want) in [("H", "H"), ("P", "P"), ("K", "K - (i/kappa)*P")] {
        let got = e.dual_star(d.id(x).unwrap()).map_err(|err| err.to_string())?;
        ensure!(got == poly(&d, want), "family A {x}* = {}", e.show(&got));
    }
    out.push("family A: H* = H, P* = P, K* = K - (i/kappa)P (documented)".into());
    let group = hopf_group_b();
    let mut e = engine(&group, false, 6);
    for x in ["H", "P", "K"] {
        let g = e.dual_id(x).unwrap();
        ensure!(e.dual_star(g).unwrap() == NCPoly::gen(g), "family B {x} is not hermitian");
    }
    out.push("family B: H, P, K hermitian".into());
    Ok(out)
}

fn commuting_input(p: &Presentation, mu: [i64; 4], c0: i64, c1: i64) -> LmInput {
    let s = |n: i64| Scalar::from_int(n);
    let mu = vec![vec![s(mu[0]), s(mu[1])], vec![s(mu[2]), s(mu[3])]];
    let nu = (0..2)
        .map(|r| (0..2).map(|c| &s(if r == c { c0 } else { 0 }) + &(&s(c1) * &mu[r][c])).collect())
        .collect();
    LmInput {
        h: vec![p.id("H").unwrap()],
        x: vec![p.id("K").unwrap(), p.id("P").unwrap()],
        mu: vec![mu],
        nu: vec![nu],
    }
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config { cases, failure_persistence: None, ..Config::default() },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn criterion_8() -> Outcome {
    let mut out = Vec::new();
    for preset in [Preset::DualA, Preset::DualB] {
        let spec = preset.hopf(6);
        let p = spec.presentation();
        let lm = lm_coproduct(p, preset_input(preset, p).unwrap().unwrap(), 6).map_err(|e| e.to_string())?;
        let data = spec.expand(Some(6)).unwrap();
        for k in 0..3u8 {
            let g = GeneratorId(k);
            ensure!(
                lm.coproducts[k as usize] == data.delta_gen(g).truncate_graded(6, p.grades()),
                "{preset}: LM coproduct of {} differs",
                p.alphabet().name(g)
            );
        }
        let cocomm = lm.cocommutator().unwrap();
        ensure!(cocomm.iter().all(is_antisymmetric), "{preset}: cocommutator not antisymmetric");
        out.push(format!("{preset}: LM coproducts equal the preset at N=6, cocommutators antisymmetric"));
    }
    let p = dual_a();
    let strategy = (prop::array::uniform4(-4i64..=4), -3i64..=3, -3i64..=3);
    runner(20)
        .run(&strategy, |(mu, c0, c1)| {
            let lm = lm_coproduct(&p, commuting_input(&p, mu, c0, c1), 4).unwrap();
            prop_assert!(lm.coassociativity_defects(&p).unwrap().iter().all(|d| d.is_zero()));
            prop_assert!(lm.cocommutator().unwrap().iter().all(is_antisymmetric));
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    out.push("20 random commuting (mu, nu) pairs: coassociative at N=4".into());
    Ok(out)
}

fn criterion_9() -> Outcome {
    let mut out = Vec::new();
    let opts = Options::default();
    for preset in Preset::ALL {
        let r = suite::run_limits(&Target::Preset(preset), &opts).map_err(|e| e.to_string())?;
        let bad: Vec<&str> = r.failures().map(|f| f.check.as_str()).collect();
        ensure!(bad.is_empty(), "{preset}: {bad:?}");
        out.push(format!("{preset}: {} limit checks pass", r.records.len()));
    }
    let d = dual_b(6);
    let kh = dual_b_kh(6).limit(&ParamSymbol::INV_SIGMA);
    ensure!(kh == poly(&d, "i*P"), "printed [K,H] at 1/sigma = 0 is {}", d.alphabet().show(&kh));
    let group = hopf_group_b().take_limit(&ParamSymbol::INV_SIGMA);
    let mut e = engine(&group, false, 6);
    let kh = e.dual_commutator(d.id("K").unwrap(), d.id("H").unwrap());
    ensure!(kh == poly(&d, "i*P"), "derived [K,H] at 1/sigma = 0 is {}", e.show(&kh));
    out.push("dual_B with 1/sigma -> 0: [K,H] = i*P, printed and derived".into());
    Ok(out)
}

fn arb_scalar() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, -3i64..=3, prop::option::of(0usize..5)).prop_map(|(re, im, p)| {
        let c = &Scalar::from_int(re) + &Scalar::constant(GaussRational::imag(im, 1));
        match p {
            Some(k) => &c * &Scalar::param(ParamSymbol::BUILTIN[k].clone()),
            None => c,
        }
    })
}

fn arb_poly() -> impl Strategy<Value = NCPoly> {
    let word = prop::collection::vec((0u8..3).prop_map(GeneratorId), 0..=3).prop_map(Word);
    prop::collection::vec((word, arb_scalar()), 0..=3).prop_map(NCPoly::from_terms)
}

fn arb_ast() -> impl Strategy<Value = Ast> {
    let leaf = prop_oneof![
        (0u32..100).prop_map(|n| Ast::Num(n.to_string())),
        prop::sample::select(vec!["a", "v", "tau", "i", "I", "kappa"]).prop_map(|s| Ast::Ident(s.into())),
    ];
    leaf.prop_recursive(4, 32, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|x| Ast::Neg(Box::new(x))),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Ast::Add(Box::new(x), Box::new(y))),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Ast::Sub(Box::new(x), Box::new(y))),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Ast::Mul(Box::new(x), Box::new(y))),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Ast::Div(Box::new(x), Box::new(y))),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Ast::Commutator(Box::new(x), Box::new(y))),
            (inner.clone(), 0u32..5).prop_map(|(x, n)| Ast::Pow(Box::new(x), n)),
            inner.prop_map(|x| Ast::Call(Func::Antipode, vec![x])),
        ]
    })
}

const PROPERTY_CASES: u32 = 100;

fn criterion_10() -> Outcome {
    let mut out = Vec::new();
    let run = |name: &str, out: &mut Vec<String>, r: Result<(), String>| -> Result<(), String> {
        r.map_err(|e| format!("{name}: {e}"))?;
        out.push(format!("{name}: {PROPERTY_CASES} cases"));
        Ok(())
    };

    let groups = [hopf_group_a(), hopf_group_b()];
    let engines: Vec<RefCell<DualityEngine<'_>>> =
        vec![RefCell::new(engine(&groups[0], true, 6)), RefCell::new(engine(&groups[1], false, 6))];
    let deltas: Vec<Vec<TensorPoly>> = engines
        .iter()
        .map(|e| (0..3).map(|k| e.borrow_mut().dual_coproduct(GeneratorId(k)).unwrap()).collect())
        .collect();
    let bases: Vec<Vec<Word>> = groups.iter().map(|g| g.presentation().pbw_basis(6)).collect();

    let bilinear = (0usize..2, arb_poly(), arb_poly(), any::<[usize; 2]>(), arb_scalar());
    let r = runner(PROPERTY_CASES).run(&bilinear, |(fam, f, g, [i, j], c)| {
        let mut e = engines[fam].borrow_mut();
        let b = &bases[fam];
        let phi = NCPoly::monomial(b[i % b.len()].clone(), Scalar::one());
        let psi = NCPoly::monomial(b[j % b.len()].clone(), c.clone());
        let (ff, fg) = (e.functional(&f), e.functional(&g));
        let combo = e.functional(&(&f.scale(&c) + &g));
        let lhs = e.evaluate(&combo, &(&phi + &psi)).unwrap();
        let mut rhs = Scalar::zero();
        for x in [&phi, &psi] {
            rhs += &(&c * &e.evaluate(&ff, x).unwrap());
            rhs += &e.evaluate(&fg, x).unwrap();
        }
        prop_assert_eq!(lhs, rhs);
        Ok(())
    });
    run("pairing bilinearity", &mut out, r.map_err(|e| e.to_string()))?;

    let closure = (0usize..2, 0u8..3, any::<usize>(), any::<usize>());
    let r = runner(PROPERTY_CASES).run(&closure, |(fam, x, i, j)| {
        let mut e = engines[fam].borrow_mut();
        let grades = groups[fam].presentation().grades();
        let b = &bases[fam];
        let m1 = b[i % b.len()].clone();
        let fit: Vec<&Word> = b.iter().filter(|w| w.grade(grades) + m1.grade(grades) <= 6).collect();
        let m2 = fit[j % fit.len()].clone();
        let (p1, p2) = (NCPoly::monomial(m1, Scalar::one()), NCPoly::monomial(m2, Scalar::one()));
        let mut lhs = Scalar::zero();
        for (key, c) in deltas[fam][x as usize].terms() {
            lhs += &(&(c * &e.pair(&key[0], &p1).unwrap()) * &e.pair(&key[1], &p2).unwrap());
        }
        let prod = groups[fam].presentation().normalizer(None).mul(&p1, &p2);
        prop_assert_eq!(lhs, e.pair(&Word::gen(GeneratorId(x)), &prod).unwrap());
        Ok(())
    });
    run("closure <Delta X, u (x) w> = <X, u w> to degree 6", &mut out, r.map_err(|e| e.to_string()))?;

    let presentations = [group_a(), group_b(), dual_a(), dual_b(6)];
    let ring = (0usize..4, arb_poly(), arb_poly(), arb_poly());
    let r = runner(PROPERTY_CASES).run(&ring, |(k, x, y, z)| {
        let p = &presentations[k];
        let mut nz = p.normalizer(if k < 2 { None } else { Some(6) });
        let (xy, yz) = (nz.mul(&x, &y), nz.mul(&y, &z));
        prop_assert_eq!(nz.mul(&xy, &z), nz.mul(&x, &yz));
        let sum = nz.mul(&x, &(&y + &z));
        prop_assert_eq!(sum, &xy + &nz.mul(&x, &z));
        prop_assert_eq!(nz.mul(&NCPoly::one(), &x), nz.poly(&x));
        Ok(())
    });
    run("ring axioms", &mut out, r.map_err(|e| e.to_string()))?;

    let word = (0usize..4, prop::collection::vec((0u8..3).prop_map(GeneratorId), 0..=6));
    let r = runner(PROPERTY_CASES).run(&word, |(k, w)| {
        let p = &presentations[k];
        let w = Word(w);
        if let Some(next) = p.rewrite_step(&w) {
            for (v, _) in next {
                prop_assert!(p.measure(&v) < p.measure(&w));
            }
        }
        Ok(())
    });
    run("rewrite-measure monotonicity", &mut out, r.map_err(|e| e.to_string()))?;

    let r = runner(PROPERTY_CASES).run(&arb_ast(), |t| {
        let once = parse(&t.to_string()).unwrap();
        prop_assert_eq!(&once, &t);
        prop_assert_eq!(parse(&once.to_string()).unwrap(), once);
        Ok(())
    });
    run("parser round trip", &mut out, r.map_err(|e| e.to_string()))?;
    Ok(out)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("group Hopf axioms and S(a)", criterion_1),
        ("presentation consistency and Jacobi cancellation", criterion_2),
        ("dual A at N=6", criterion_3),
        ("dual B at N=6", criterion_4),
        ("reconstructed duals and antipode routes", criterion_5),
        ("conjugation closed form at N=8", criterion_6),
        ("star identities", criterion_7),
        ("LM construction", criterion_8),
        ("parameter limits", criterion_9),
        ("property suites", criterion_10),
    ];
    let mut failed = 0;
    for (k, (title, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into()))
        });
        let ms = t.elapsed().as_millis();
        match result {
            Ok(lines) => {
                println!("criterion {:>2}: PASS  {title} ({ms} ms)", k + 1);
                for l in lines {
                    println!("      {l}");
                }
            }
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {title} ({ms} ms)", k + 1);
                println!("      {msg}");
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
