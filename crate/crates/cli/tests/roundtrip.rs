use proptest::prelude::*;

use polystrata::Rational;
use polystrata_cli::expr::{parse_expr, Expr, Var, VarKind};

fn leaf() -> impl Strategy<Value = Expr> {
    let kinds = prop_oneof![
        Just(VarKind::LowerY),
        Just(VarKind::LowerX),
        Just(VarKind::UpperY),
        Just(VarKind::UpperX),
        Just(VarKind::Omega),
    ];
    prop_oneof![
        (0i64..1000, 1i64..50).prop_map(|(a, b)| Expr::Num(Rational::new(a, b))),
        (kinds, 0usize..20).prop_map(|(kind, index)| Expr::Var(Var { kind, index })),
    ]
}

fn ast() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(6, 64, 2, |inner| {
        let pair = (inner.clone(), inner.clone());
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            pair.clone().prop_map(|(a, b)| Expr::Sum(Box::new(a), Box::new(b))),
            pair.clone().prop_map(|(a, b)| Expr::Diff(Box::new(a), Box::new(b))),
            pair.clone().prop_map(|(a, b)| Expr::Product(Box::new(a), Box::new(b))),
            (inner.clone(), -6i64..=6).prop_map(|(a, k)| Expr::Power(Box::new(a), k)),
            pair.prop_map(|(a, b)| Expr::Bracket(Box::new(a), Box::new(b))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn parse_inverts_print(e in ast()) {
        let text = e.to_string();
        prop_assert_eq!(parse_expr(&text).unwrap(), e, "{}", text);
    }

    #[test]
    fn spacing_is_ignored(e in ast()) {
        let text = e.to_string();
        let spaced: String = text
            .chars()
            .flat_map(|c| if "+-*^(){},/".contains(c) { vec![' ', c, ' '] } else { vec![c] })
            .collect();
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        prop_assert_eq!(parse_expr(&spaced).unwrap(), e.clone());
        prop_assert_eq!(parse_expr(&compact).unwrap(), e);
    }
}
