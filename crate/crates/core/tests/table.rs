use cmtwist::lseries::TwistKind;
use cmtwist::table::{evaluate_row, generator_consistent, range_rows, Over, TableRow};
use cmtwist::PrecisionContext;
use num_rational::Rational64;

fn row(kind: TwistKind, pi: Option<&str>, d: &str, l: i64, over: Over) -> TableRow {
    TableRow { kind, pi: pi.map(String::from), d: d.into(), l_alg: l, over }
}

#[test]
fn quadratic_row() {
    let r = evaluate_row(&row(TwistKind::Quadratic, Some("13+24*w"), "433", 48, Over::Q), &PrecisionContext::default());
    assert_eq!(r.matches, Some(true));
    assert_eq!((r.ord_p, r.bound, r.tight), (Some(4), 2, Some(false)));
    assert_eq!(r.predicted_sha, Some(Rational64::from_integer(2)));
}

#[test]
fn vanishing_row_has_no_valuation() {
    let r = evaluate_row(&row(TwistKind::Quadratic, None, "997", 0, Over::Q), &PrecisionContext::default());
    assert_eq!(r.matches, Some(true));
    assert_eq!((r.ord_p, r.tight, r.predicted_sha), (None, None, None));
}

#[test]
fn cubic_rows() {
    let ctx = PrecisionContext::default();
    let r = evaluate_row(&row(TwistKind::Cubic, Some("1+9*w"), "73", 9, Over::Q), &ctx);
    assert_eq!(r.matches, Some(true));
    assert_eq!(r.tight, Some(true));
    let k = evaluate_row(&row(TwistKind::Cubic, None, "-107+54*w", 27, Over::K), &ctx);
    assert_eq!(k.matches, Some(true), "{k:?}");
    assert!(k.predicted_sha.is_none());
}

#[test]
fn mismatch_and_bad_input() {
    let ctx = PrecisionContext::default();
    let r = evaluate_row(&row(TwistKind::Quadratic, None, "157", 13, Over::Q), &ctx);
    assert_eq!(r.matches, Some(false));
    let bad = evaluate_row(&row(TwistKind::Quadratic, None, "x7", 1, Over::Q), &ctx);
    assert!(bad.error.is_some());
}

#[test]
fn range_rows_list_qualifying_norms() {
    let q = range_rows(TwistKind::Quadratic, 500);
    let ds: Vec<&str> = q.iter().map(|r| r.d.as_str()).collect();
    assert!(ds.contains(&"157") && ds.contains(&"433") && ds.contains(&"397"));
    assert!(q.iter().all(|r| generator_consistent(r).unwrap()));
    let c = range_rows(TwistKind::Cubic, 2000);
    assert!(c.iter().all(|r| generator_consistent(r).unwrap()));
}
