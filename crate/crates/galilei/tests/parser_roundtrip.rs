//! `parse(print(t)) == t` on random syntax trees.

use galilei::ast::{Ast, Func};
use galilei::parse;
use proptest::prelude::*;

fn leaf() -> impl Strategy<Value = Ast> {
    prop_oneof![
        (0u32..1000).prop_map(|n| Ast::Num(n.to_string())),
        prop::sample::select(vec!["a", "v", "tau", "H", "P", "K", "i", "I", "kappa", "sigma", "alpha_2"])
            .prop_map(|s| Ast::Ident(s.into())),
    ]
}

fn tree() -> impl Strategy<Value = Ast> {
    leaf().prop_recursive(5, 48, 3, |inner| {
        let b = |x: Ast| Box::new(x);
        prop_oneof![
            inner.clone().prop_map(move |x| Ast::Neg(b(x))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Ast::Add(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Ast::Sub(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Ast::Mul(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Ast::Div(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Ast::Tensor(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Ast::Commutator(b(x), b(y))),
            (inner.clone(), 0u32..12).prop_map(move |(x, n)| Ast::Pow(b(x), n)),
            (prop::sample::select(Func::ALL.to_vec()), prop::collection::vec(inner, 2))
                .prop_map(|(f, mut args)| {
                    args.truncate(f.arity());
                    Ast::Call(f, args)
                }),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_then_parse_is_identity(t in tree()) {
        let printed = t.to_string();
        let back = parse(&printed).map_err(|e| TestCaseError::fail(format!("{printed}: {e}")))?;
        prop_assert_eq!(&back, &t, "printed as {}", printed);
        prop_assert_eq!(back.to_string(), printed);
    }

    #[test]
    fn parse_print_parse_is_stable(s in "[a-zA-Z0-9 +*/^()\\[\\],-]{0,24}") {
        if let Ok(t) = parse(&s) {
            let again = parse(&t.to_string()).unwrap();
            prop_assert_eq!(again, t);
        }
    }
}

#[test]
fn errors_carry_offsets() {
    let e = parse("[a").unwrap_err();
    assert!(e.to_string().contains("offset 2"), "{e}");
    assert!(parse("a +").is_err());
    assert!(parse("S(a, v)").is_err());
}
