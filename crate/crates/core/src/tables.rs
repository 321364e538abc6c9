//! JSON, CSV and LaTeX tables for `c^{(k)}` and `C^{(k)}_{lambda,mu}`.
//! Rows follow the polynomial's term order, so output is byte-stable.

use std::fmt::Write;
use std::str::FromStr;

use crate::bracket::OrthoPoly;
use crate::error::Error;
use crate::jordan::{algebra, Algebra};
use crate::scalar::{format_q, Q};
use crate::symbolic::{BracketPolynomial, Monomial, ParamPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Latex,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "latex" | "tex" => Ok(Format::Latex),
            _ => Err(Error::Config(format!("unknown format `{s}`"))),
        }
    }
}

impl Format {
    pub fn extension(&self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Latex => "tex",
        }
    }
}

/// `x` slot keeps the algebra's labels; the `y` slot swaps the leading letter.
fn slot_names(alg: &Algebra) -> Vec<String> {
    let ys = alg.labels.iter().map(|l| format!("y{}", &l[1..]));
    alg.labels.iter().cloned().chain(ys).collect()
}

fn ortho_names(alg: &Algebra) -> Vec<String> {
    alg.labels.iter().map(|l| format!("v{}", &l[1..])).collect()
}

fn mono_plain(m: &Monomial, names: &[String]) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .zip(names)
        .filter(|(e, _)| **e > 0)
        .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn latex_var(v: &str) -> String {
    let (head, tail) = v.split_at(1);
    if tail.is_empty() {
        head.into()
    } else {
        format!("{head}_{{{tail}}}")
    }
}

fn mono_latex(m: &Monomial, names: &[String]) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .zip(names)
        .filter(|(e, _)| **e > 0)
        .map(|(e, v)| if *e == 1 { latex_var(v) } else { format!("{}^{{{e}}}", latex_var(v)) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

fn q_latex(c: &Q) -> String {
    if c.denom() == &1.into() {
        c.numer().to_string()
    } else if c.numer() < &0.into() {
        format!("-\\tfrac{{{}}}{{{}}}", -c.numer(), c.denom())
    } else {
        format!("\\tfrac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

fn param_plain(c: &ParamPoly) -> String {
    c.to_string()
}

fn param_latex(c: &ParamPoly) -> String {
    let mut out = String::new();
    let terms: Vec<_> = c.terms().collect();
    for (i, (&(a, b), coef)) in terms.iter().rev().enumerate() {
        let mut body = String::new();
        if a > 0 {
            body.push('s');
            if a > 1 {
                let _ = write!(body, "^{{{a}}}");
            }
        }
        if b > 0 {
            body.push('t');
            if b > 1 {
                let _ = write!(body, "^{{{b}}}");
            }
        }
        let neg = coef < &&Q::from_integer(0.into());
        let mag = if neg { -(*coef).clone() } else { (*coef).clone() };
        let num = if body.is_empty() || mag != Q::from_integer(1.into()) { q_latex(&mag) } else { String::new() };
        let sign = match (i, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        let _ = write!(out, "{sign}{num}{body}");
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn latex_document(caption: &str, rows: &[(String, String)]) -> String {
    let mut s = String::new();
    s.push_str("\\documentclass{article}\n\\usepackage{amsmath}\n\\begin{document}\n");
    s.push_str("\\begin{table}[h]\n\\centering\n\\begin{tabular}{ll}\n\\hline\nmonomial & coefficient \\\\\n\\hline\n");
    for (m, c) in rows {
        let _ = writeln!(s, "${m}$ & ${c}$ \\\\");
    }
    let _ = write!(s, "\\hline\n\\end{{tabular}}\n\\caption{{{caption}}}\n\\end{{table}}\n\\end{{document}}\n");
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.into()
    }
}

pub fn bracket_table(c: &BracketPolynomial, format: Format) -> String {
    let alg = algebra(c.family);
    let names = slot_names(&alg);
    match format {
        Format::Json => pretty(&c.to_json()),
        Format::Csv => {
            let mut s = String::from("monomial,exponents,coefficient\n");
            for (m, coef) in c.poly.terms() {
                let exps: Vec<String> = m.0.iter().map(u16::to_string).collect();
                let _ = writeln!(s, "{},{},{}", mono_plain(m, &names), exps.join(" "), csv_field(&param_plain(coef)));
            }
            s
        }
        Format::Latex => {
            let rows: Vec<(String, String)> = c.poly.terms().map(|(m, coef)| (mono_latex(m, &names), param_latex(coef))).collect();
            latex_document(&format!("$c^{{({})}}_{{s,t}}(x,y)$ on {}", c.k, alg.family), &rows)
        }
    }
}

pub fn ortho_table(p: &OrthoPoly, format: Format) -> String {
    let alg = algebra(p.family);
    let names = ortho_names(&alg);
    match format {
        Format::Json => pretty(&p.to_json()),
        Format::Csv => {
            let mut s = String::from("monomial,exponents,coefficient\n");
            for (m, coef) in p.poly.terms() {
                let exps: Vec<String> = m.0.iter().map(u16::to_string).collect();
                let _ = writeln!(s, "{},{},{}", mono_plain(m, &names), exps.join(" "), format_q(coef));
            }
            s
        }
        Format::Latex => {
            let rows: Vec<(String, String)> = p.poly.terms().map(|(m, coef)| (mono_latex(m, &names), q_latex(coef))).collect();
            let cap = format!(
                "$C^{{({})}}_{{\\lambda,\\mu}}(v)$ on {}, $\\lambda = {}$, $\\mu = {}$",
                p.k,
                alg.family,
                q_latex(&p.lambda),
                q_latex(&p.mu)
            );
            latex_document(&cap, &rows)
        }
    }
}

pub fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::compute_c;
    use crate::jordan::Family;

    #[test]
    fn rank1_csv_rows() {
        let c = compute_c(&algebra(Family::Rank1), 1).unwrap();
        let t = bracket_table(&c, Format::Csv);
        assert_eq!(t.lines().count(), 3);
        assert!(t.lines().all(|l| !l.is_empty()));
    }

    #[test]
    fn latex_coefficients() {
        let p = ParamPoly::s_plus(1) * ParamPoly::t_plus(-2);
        // (s+1)(t-2) = st - 2s + t - 2
        assert_eq!(param_latex(&p), "st - 2s + t - 2");
        let h = ParamPoly::constant(crate::scalar::q(-1, 2));
        assert_eq!(param_latex(&h), "-\\tfrac{1}{2}");
    }
}
