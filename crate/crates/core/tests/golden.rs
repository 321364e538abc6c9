use rclab::bracket::compute_c;
use rclab::jordan::{algebra, Family};
use rclab::scalar::{q, qi, Q};
use rclab::symbolic::BracketPolynomial;
use rclab::tables::{bracket_table, Format};

#[test]
fn rank1_k2_json_matches_fixture() {
    let c = compute_c(&algebra(Family::Rank1), 2).unwrap();
    assert_eq!(bracket_table(&c, Format::Json), include_str!("fixtures/rank1_k2.json"));
}

#[test]
fn rank1_k2_fixture_matches_hand_expansion() {
    // (s+2)(s+1) y^2 - 2(s+2)(t+2) x y + (t+2)(t+1) x^2
    let v: serde_json::Value = serde_json::from_str(include_str!("fixtures/rank1_k2.json")).unwrap();
    let c = BracketPolynomial::from_json(&v).unwrap();
    let oracle = |s: &Q, t: &Q, x: &Q, y: &Q| -> Q {
        let two = qi(2);
        let one = qi(1);
        (s + &two) * (s + &one) * y * y - two.clone() * (s + &two) * (t + &two) * x * y + (t + &two) * (t + &one) * x * x
    };
    for (s, t, x, y) in [(q(1, 2), qi(3), qi(2), q(-1, 3)), (qi(-4), q(7, 5), qi(1), qi(1)), (qi(0), qi(0), q(3, 2), q(5, 7))] {
        assert_eq!(c.evaluate(std::slice::from_ref(&x), std::slice::from_ref(&y), &s, &t), oracle(&s, &t, &x, &y));
    }
}

#[test]
fn sym2_k1_latex_matches_fixture() {
    let c = compute_c(&algebra(Family::Sym(2)), 1).unwrap();
    let tex = bracket_table(&c, Format::Latex);
    assert_eq!(tex, include_str!("fixtures/sym2_k1.tex"));
    assert!(tex.starts_with("\\documentclass") && tex.trim_end().ends_with("\\end{document}"));
    assert_eq!(tex.matches("\\begin{").count(), tex.matches("\\end{").count());
}
