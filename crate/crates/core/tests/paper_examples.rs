//! End-to-end goldens for the worked examples: full pipelines through the
//! frontend, compared by generator span.

use itlog_core::constfield::Const;
use itlog_core::frontend::{self, analyze_expr};
use itlog_core::parse;
use itlog_core::subfield::{
    combine_to_single_generator, iterlog_subfield, span_equal, LinearForm,
};
use itlog_core::symbol::SymId;
use std::collections::BTreeSet;

fn sym(text: &str) -> SymId {
    let u = parse::parse_iterlog(text).unwrap();
    let vars = u.vars();
    assert_eq!(vars.len(), 1, "expected a single symbol in {:?}", text);
    vars.into_iter().next().unwrap()
}

fn form(entries: &[(&str, Const)]) -> LinearForm {
    LinearForm::new(entries.iter().map(|(t, c)| (sym(t), c.clone())))
}

fn c(k: i64) -> Const {
    Const::from_integer(k)
}

const EXAMPLE_ONE: &str = "(5*x^3*ln(x+1) + ln(x+@e) + 27*x^3*ln(x+@sqrt2)) / (ln(x) + x*(ln(x+2) - 17*ln(x+3))^2)";

const EXAMPLE_TWO: &str = "(ln(x+i)^2*ln(x-i)*(ln(ln(ln(x-i)+2)+3)-ln(x+5/6))^5 + x^3*ln(x)*(ln(ln(x+i)+@sqrt3)-ln(x+@sqrt5))^2) / (ln(ln(x)+i)^2*(ln(x+@sqrt5)-ln(ln(ln(x)+i)))^7 + x*ln(x-i)^3*ln(ln(x-i)+2)^2*(ln(x+5+i)-ln(ln(x+1/2)+1/2))^12)";

#[test]
fn example_one_presentation() {
    let analysis = analyze_expr(EXAMPLE_ONE).unwrap();
    let expect = vec![
        form(&[("ln(x+@e)", c(1))]),
        form(&[("ln(x)", c(1))]),
        form(&[("ln(x+1)", c(5)), ("ln(x+@sqrt2)", c(27))]),
        form(&[("ln(x+2)", c(1)), ("ln(x+3)", c(-17))]),
    ];
    assert!(span_equal(&analysis.presentation.linear_forms, &expect));
    assert_eq!(
        analysis.presentation.base_symbols,
        [SymId::x()].into_iter().collect::<BTreeSet<_>>()
    );
}

#[test]
fn example_two_presentation() {
    let analysis = analyze_expr(EXAMPLE_TWO).unwrap();
    // pi-base: y1..y7 in the paper's numbering
    let y1 = "ln(ln(ln(x-i)+2)+3)";
    let y2 = "ln(ln(x+i)+@sqrt3)";
    let y3 = "ln(x+5/6)";
    let y4 = "ln(ln(x+1/2)+1/2)";
    let y5 = "ln(x+@sqrt5)";
    let y6 = "ln(x+5+i)";
    let y7 = "ln(ln(ln(x)+i))";
    let pi_base: BTreeSet<SymId> = [y1, y2, y3, y4, y5, y6, y7].iter().map(|t| sym(t)).collect();
    assert_eq!(
        analysis.presentation.form_vars.iter().cloned().collect::<BTreeSet<_>>(),
        pi_base
    );

    let expect = vec![
        form(&[(y1, c(1)), (y3, c(-1))]),
        form(&[(y2, c(1)), (y5, c(-1))]),
        form(&[(y6, c(1)), (y4, c(-1))]),
        form(&[(y5, c(1)), (y7, c(-1))]),
    ];
    assert!(span_equal(&analysis.presentation.linear_forms, &expect));

    let expect_base: BTreeSet<SymId> = [
        "ln(x-i)",
        "ln(x+i)",
        "ln(ln(x)+i)",
        "ln(x+1/2)",
        "ln(x)",
        "x",
        "ln(ln(x-i)+2)",
    ]
    .iter()
    .map(|t| sym(t))
    .collect();
    assert_eq!(analysis.presentation.base_symbols, expect_base);
}

#[test]
fn single_generator_round_trip_on_examples() {
    for text in [EXAMPLE_ONE, EXAMPLE_TWO] {
        let analysis = analyze_expr(text).unwrap();
        let single = combine_to_single_generator(&analysis.presentation).unwrap();
        let again = iterlog_subfield(&single).unwrap();
        assert!(span_equal(
            &analysis.presentation.linear_forms,
            &again.presentation.linear_forms
        ));
        assert_eq!(
            analysis.presentation.base_symbols,
            again.presentation.base_symbols
        );
    }
}

#[test]
fn towers_strict_inclusion_golden() {
    let doc = frontend::towers_document("ln(ln(x+@e)+5), ln(ln(x)), ln(x), ln(x+1)").unwrap();
    let t = doc.towers.unwrap();
    assert_eq!(t.levelled.len(), 3);
    assert_eq!(t.levelled[0], vec!["x".to_string()]);
    assert_eq!(
        t.levelled[1],
        vec!["x", "ln(x)", "ln(x+1)", "ln(x+@e)"]
            .into_iter()
            .map(String::from)
            .collect::<Vec<_>>()
    );
    assert_eq!(
        t.pi[1],
        vec!["x", "ln(x)", "ln(x+@e)"]
            .into_iter()
            .map(String::from)
            .collect::<Vec<_>>()
    );
    // P1 strictly inside K1
    assert!(!t.levelled[1].iter().all(|s| t.pi[1].contains(s)));
    assert_eq!(t.levelled[2], t.pi[2]);
}
