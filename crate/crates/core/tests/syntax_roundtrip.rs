use proptest::prelude::*;

use rgkernel::automaton::SpecKind;
use rgkernel::program::{Command, Expr, Pred};
use rgkernel::syntax::{parse_expr, parse_pred, parse_program, parse_spec, Cond, RelExpr, SpecText};

fn name() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["x", "y", "iA", "f_2"]).prop_map(String::from)
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![(0u32..20).prop_map(Expr::Const), name().prop_map(Expr::Var)];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::add(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::sub(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::mul(a, b)),
        ]
    })
}

fn pred() -> impl Strategy<Value = Pred> {
    let leaf = prop_oneof![
        Just(Pred::True),
        Just(Pred::False),
        (expr(), expr()).prop_map(|(a, b)| Pred::Eq(a, b)),
        (expr(), expr()).prop_map(|(a, b)| Pred::Lt(a, b)),
        (expr(), expr()).prop_map(|(a, b)| Pred::Le(a, b)),
    ];
    leaf.prop_recursive(3, 10, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Pred::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Pred::or(a, b)),
            inner.prop_map(Pred::not),
        ]
    })
}

fn command() -> impl Strategy<Value = Command> {
    let leaf = prop_oneof![
        Just(Command::Skip),
        (name(), expr()).prop_map(|(x, e)| Command::Assign(x, e)),
        pred().prop_map(Command::Test),
    ];
    leaf.prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Command::seq(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Command::choice(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Command::par(a, b)),
            (pred(), inner.clone(), inner.clone()).prop_map(|(p, a, b)| Command::if_else(p, a, b)),
            (pred(), inner.clone()).prop_map(|(p, a)| Command::while_do(p, a)),
            inner.prop_map(Command::star),
        ]
    })
}

fn rel() -> impl Strategy<Value = RelExpr> {
    let leaf = prop_oneof![
        Just(RelExpr::Id),
        Just(RelExpr::Top),
        prop::collection::vec(name(), 0..3).prop_map(RelExpr::Unchanged),
        pred().prop_map(RelExpr::Preserves),
        name().prop_map(RelExpr::Increasing),
        name().prop_map(RelExpr::Decreasing),
    ];
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| RelExpr::And(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| RelExpr::Or(Box::new(a), Box::new(b))),
        ]
    })
}

fn cond() -> impl Strategy<Value = Cond> {
    (any::<bool>(), pred()).prop_map(|(end, pred)| Cond {
        kind: if end { SpecKind::End } else { SpecKind::Test },
        pred,
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn expressions_round_trip(e in expr()) {
        prop_assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn predicates_round_trip(p in pred()) {
        prop_assert_eq!(parse_pred(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn programs_round_trip(c in command()) {
        let text = c.to_string();
        prop_assert_eq!(parse_program(&text).unwrap(), c, "{}", text);
    }

    #[test]
    fn specs_round_trip(rely in rel(), guar in rel(), pre in cond(), post in cond()) {
        let s = SpecText { rely, guar, pre, post };
        prop_assert_eq!(parse_spec(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn garbage_is_rejected_not_panicking(text in "[a-z0-9:=;+|&!<(){} ]{0,30}") {
        let _ = parse_program(&text);
        let _ = parse_spec(&text);
    }
}
