use deform_core::expr::parse;
use proptest::prelude::*;

fn factor(depth: u32) -> BoxedStrategy<String> {
    let var = prop_oneof![
        (0i64..4).prop_map(|e| if e == 1 { "t".to_string() } else { format!("t^{e}") }),
        (-3i64..0).prop_map(|e| format!("t^{e}")),
        (0i64..4).prop_map(|e| format!("u^{e}")),
        Just("u".to_string()),
        Just("x".to_string()),
        Just("y".to_string()),
    ];
    if depth == 0 {
        var.boxed()
    } else {
        prop_oneof![3 => var, 1 => elem(depth - 1).prop_map(|e| format!("({e})"))].boxed()
    }
}

fn term(depth: u32) -> impl Strategy<Value = String> {
    let coeff = prop_oneof![Just(None), (1i64..20, 1i64..5).prop_map(|(n, d)| Some(if d == 1 { n.to_string() } else { format!("{n}/{d}") }))];
    (coeff, prop::collection::vec(factor(depth), 0..3)).prop_map(|(c, fs)| match (c, fs.is_empty()) {
        (Some(c), true) => c,
        (None, true) => "1".into(),
        (Some(c), false) => format!("{c}*{}", fs.join("*")),
        (None, false) => fs.join("*"),
    })
}

fn elem(depth: u32) -> impl Strategy<Value = String> {
    (any::<bool>(), term(depth), prop::collection::vec((any::<bool>(), term(depth)), 0..3)).prop_map(|(neg, first, rest)| {
        let mut s = if neg { format!("-{first}") } else { first };
        for (minus, t) in rest {
            s.push_str(if minus { " - " } else { " + " });
            s.push_str(&t);
        }
        s
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn printing_reparses_to_the_same_tree(text in elem(2)) {
        let ast = parse(&text).unwrap();
        let printed = ast.to_string();
        prop_assert_eq!(parse(&printed).unwrap(), ast, "{} printed as {}", text, printed);
    }

    #[test]
    fn whitespace_is_insignificant(text in elem(1)) {
        let spaced: String = text
            .chars()
            .map(|c| if "+-*/^()".contains(c) { format!(" {c} ") } else { c.to_string() })
            .collect();
        let squeezed: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        prop_assert_eq!(parse(&spaced).unwrap(), parse(&squeezed).unwrap());
    }
}
