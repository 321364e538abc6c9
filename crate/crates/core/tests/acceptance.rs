//! Acceptance criteria 1-13. Each criterion prints one PASS/FAIL line to the
//! real stderr (bypassing libtest capture); the test fails if any criterion does.

use std::io::Write;
use std::time::{Duration, Instant};

use rclab::analytic::l2::isometry_constant_rank1;
use rclab::bracket::{compute_C, proportionality};
use rclab::jordan::{algebra, Family};
use rclab::report::{CheckReport, SuiteReport};
use rclab::scalar::{qi, Q};
use rclab::symbolic::{rodrigues, Monomial, Poly};
use statrs::function::beta::beta;
use statrs::function::gamma::gamma;

const POLY_RANGE: [(Family, u32); 4] = [(Family::Rank1, 6), (Family::Sym(2), 3), (Family::Sym(3), 2), (Family::Spin(4), 2)];

struct Outcome {
    lines: Vec<String>,
    all: bool,
}

impl Outcome {
    fn record(&mut self, n: u32, title: &str, ok: bool, detail: String) {
        let line = format!("{} criterion {n:>2} {title}: {detail}", if ok { "PASS" } else { "FAIL" });
        let _ = writeln!(std::io::stderr(), "{line}");
        self.lines.push(line);
        self.all &= ok;
    }
}

fn select<'a>(r: &'a SuiteReport, name: &str, alg: &str) -> Vec<&'a CheckReport> {
    r.checks.iter().filter(|c| c.name == name && c.algebra == alg).collect()
}

fn worst(cs: &[&CheckReport]) -> f64 {
    cs.iter().map(|c| c.max_residual).fold(0.0, f64::max)
}

/// All selected reports pass at a tolerance no looser than `tol`.
fn passes(cs: &[&CheckReport], tol: f64) -> bool {
    !cs.is_empty() && cs.iter().all(|c| c.passed && c.tolerance <= tol)
}

fn measured_k(c: &CheckReport) -> Option<u64> {
    c.measured.get("k").and_then(|v| v.as_u64())
}

fn binom(n: &Q, k: u32) -> Q {
    let mut out = qi(1);
    for j in 0..k {
        out = out * (n - qi(j as i64)) / qi(j as i64 + 1);
    }
    out
}

/// `P_k^{(a,b)}(x) = sum_s binom(k+a, k-s) binom(k+b, s) ((x-1)/2)^s ((x+1)/2)^{k-s}`
fn jacobi_explicit(k: u32, a: &Q, b: &Q) -> Poly<Q> {
    let half = Q::new(1.into(), 2.into());
    let mut lin_m = Poly::constant(1, -half.clone());
    lin_m.add_term(Monomial::var(1, 0), half.clone());
    let mut lin_p = Poly::constant(1, half.clone());
    lin_p.add_term(Monomial::var(1, 0), half);
    let mut out = Poly::zero(1);
    for s in 0..=k {
        let c = binom(&(qi(k as i64) + a), k - s) * binom(&(qi(k as i64) + b), s);
        let term = lin_m.pow(s).mul(&lin_p.pow(k - s));
        out.add_assign(&term.map_coef(|x| x * &c));
    }
    out
}

fn run_check_all() -> (i32, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = rclab::cli::run(["rc-lab", "check", "all"], &mut out, &mut err);
    (code, String::from_utf8(out).expect("utf-8 report"))
}

#[test]
fn acceptance() {
    let cache = tempfile::tempdir().unwrap();
    std::env::set_var(rclab::bracket::CACHE_ENV, cache.path());
    let mut o = Outcome { lines: Vec::new(), all: true };

    // 1: direct construction, no caches, timed.
    let t0 = Instant::now();
    let mut built = Vec::new();
    let mut errors = Vec::new();
    for (f, kmax) in POLY_RANGE {
        let a = algebra(f);
        for k in 0..=kmax {
            match rodrigues(&a, k) {
                Ok(c) => built.push((f, k, c)),
                Err(e) => errors.push(format!("{f} k={k}: {e}")),
            }
        }
    }
    let elapsed = t0.elapsed();

    let (code, json) = run_check_all();
    let report: SuiteReport = serde_json::from_str(&json).expect("check all emits a suite report");

    let poly_ok = POLY_RANGE.iter().all(|(f, kmax)| {
        let cs = select(&report, "polynomiality", &f.name());
        cs.len() == *kmax as usize + 1 && passes(&cs, 0.0)
    });
    o.record(
        1,
        "polynomiality",
        errors.is_empty() && poly_ok && elapsed < Duration::from_secs(600),
        format!("{} polynomials with zero remainder in {:.1?} (cap 600 s){}", built.len(), elapsed, if errors.is_empty() { String::new() } else { format!("; errors {errors:?}") }),
    );

    // 2
    let mut chi_ok = true;
    let mut chi_samples = 0;
    for (f, kmax) in POLY_RANGE {
        let cs = select(&report, "chi-covariance", &f.name());
        chi_ok &= cs.len() == kmax as usize && passes(&cs, 0.0) && cs.iter().all(|c| c.exact && c.samples.len() >= 50);
        chi_samples += cs.iter().map(|c| c.samples.len()).sum::<usize>();
    }
    o.record(2, "chi-covariance", chi_ok, format!("{chi_samples} exact rational samples"));

    // 3: degrees read off the monomials here.
    let bad: Vec<String> = built
        .iter()
        .filter(|(f, k, c)| {
            let rk = algebra(*f).r as u32 * k;
            c.poly.terms().any(|(m, _)| m.0.iter().map(|e| *e as u32).sum::<u32>() != rk)
        })
        .map(|(f, k, _)| format!("{f} k={k}"))
        .collect();
    o.record(3, "homogeneity", bad.is_empty() && !built.is_empty(), format!("every monomial of degree rk; violations {bad:?}"));

    // 4: explicit-sum Jacobi oracle alongside the suite's recurrence check.
    let a1 = algebra(Family::Rank1);
    let mut jac_ok = passes(&select(&report, "jacobi-reduction", "rank1"), 0.0);
    let mut consts = Vec::new();
    for (l, m) in [(0, 0), (1, 2), (3, 3)] {
        for k in 0..=6 {
            let big = compute_C(&a1, k, &qi(l), &qi(m)).unwrap();
            match proportionality(&big.poly, &jacobi_explicit(k, &qi(l), &qi(m))) {
                Some(c) if c != qi(0) => consts.push(c),
                _ => jac_ok = false,
            }
        }
    }
    o.record(4, "rank-1 Jacobi reduction", jac_ok, format!("{} exact rational constants", consts.len()));

    // 5
    let g1 = select(&report, "gram-orthogonality", "rank1");
    let g2 = select(&report, "gram-orthogonality", "sym2");
    o.record(
        5,
        "Gram orthogonality",
        passes(&g1, 1e-12) && passes(&g2, 1e-8),
        format!("rank1 {:.2e} (< 1e-12), sym2 {:.2e} (< 1e-8)", worst(&g1), worst(&g2)),
    );

    // 6
    let j1 = select(&report, "iota-jacobian", "rank1");
    let j2 = select(&report, "iota-jacobian", "sym2");
    let v1 = select(&report, "change-of-variables", "rank1");
    let v2 = select(&report, "change-of-variables", "sym2");
    let twenty = j1.iter().chain(&j2).all(|c| c.samples.len() == 20);
    o.record(
        6,
        "Jacobian and change of variables",
        twenty && passes(&j1, 1e-6) && passes(&j2, 1e-6) && passes(&v1, 1e-6) && passes(&v2, 1e-2),
        format!(
            "jacobian {:.2e}/{:.2e} (1e-6), varchange rank1 {:.2e} (1e-6), sym2 MC {:.2e} (1e-2)",
            worst(&j1),
            worst(&j2),
            worst(&v1),
            worst(&v2)
        ),
    );

    // 7: product formula recomputed here.
    let oracle = |f: Family, nu: f64| match f {
        Family::Rank1 => gamma(nu),
        _ => (2.0 * std::f64::consts::PI).sqrt() * gamma(nu) * gamma(nu - 0.5),
    };
    let gq1 = select(&report, "gamma-omega-quadrature", "rank1");
    let gq2 = select(&report, "gamma-omega-quadrature", "sym2");
    let gmc = select(&report, "gamma-omega-monte-carlo", "sym2");
    let closed_ok = [(Family::Rank1, &gq1), (Family::Sym(2), &gq2), (Family::Sym(2), &gmc)].iter().all(|(f, cs)| {
        cs.iter().all(|c| {
            let nu = c.measured["nu"].as_f64().unwrap();
            let closed = c.measured["closed"].as_f64().unwrap();
            (closed - oracle(*f, nu)).abs() < 1e-13 * closed
        })
    });
    let mc_setup = gmc.iter().all(|c| c.measured["rule"]["samples"] == 1_000_000 && c.measured["rule"]["seed"].is_u64());
    o.record(
        7,
        "Gamma_Omega",
        closed_ok && mc_setup && passes(&gq1, 1e-10) && passes(&gq2, 1e-6) && passes(&gmc, 1e-2),
        format!("rank1 {:.2e} (1e-10), sym2 quadrature {:.2e} (1e-6), sym2 MC N=1e6 {:.2e} (1e-2)", worst(&gq1), worst(&gq2), worst(&gmc)),
    );

    // 8
    let l1 = select(&report, "laplace-identity", "rank1");
    let l2 = select(&report, "laplace-identity", "sym2");
    let five = l1.iter().chain(&l2).all(|c| c.samples.len() == 5);
    o.record(
        8,
        "Laplace identity",
        five && passes(&l1, 1e-8) && passes(&l2, 1e-4),
        format!("5 tube points; rank1 {:.2e} (1e-8), sym2 {:.2e} (1e-4)", worst(&l1), worst(&l2)),
    );

    // 9
    let f1 = select(&report, "J-factorization", "rank1");
    let f2 = select(&report, "J-factorization", "sym2");
    o.record(
        9,
        "L2 factorization",
        passes(&f1, 1e-6) && passes(&f2, 1e-2),
        format!("rank1 {:.2e} (1e-6), sym2 MC {:.2e} (1e-2)", worst(&f1), worst(&f2)),
    );

    // 10
    let ad1 = select(&report, "adjoint-image", "rank1");
    let ad2: Vec<&CheckReport> = select(&report, "adjoint-image", "sym2").into_iter().filter(|c| measured_k(c) == Some(1)).collect();
    let ks: Vec<u64> = ad1.iter().filter_map(|c| measured_k(c)).collect();
    let phases: Vec<String> = ad1
        .iter()
        .chain(&ad2)
        .filter_map(|c| c.measured.get("measured_phase").and_then(|p| p.as_str()).map(String::from))
        .collect();
    let mut sorted_phases = phases.clone();
    sorted_phases.sort();
    sorted_phases.dedup();
    o.record(
        10,
        "adjoint image",
        ks == [0, 1, 2] && phases.len() == 4 && passes(&ad1, 1e-6) && passes(&ad2, 1e-3),
        format!("rank1 k<=2 {:.2e} (1e-6), sym2 k=1 {:.2e} (1e-3), measured phase {sorted_phases:?}", worst(&ad1), worst(&ad2)),
    );

    // 11
    let pi = select(&report, "partial-isometry", "rank1");
    let three = pi.iter().all(|c| c.samples.iter().filter(|s| s.label.starts_with("bump") && s.label.ends_with("vs c")).count() == 3);
    let (l, m) = (3.0, 2.5);
    let beta_ok = (isometry_constant_rank1(0, l, m).unwrap() - beta(l, m)).abs() < 1e-12 * beta(l, m);
    o.record(
        11,
        "partial isometry",
        three && beta_ok && passes(&pi, 1e-6),
        format!("{} degrees x 3 bumps, {:.2e} (1e-6); k=0 constant equals Beta", pi.len(), worst(&pi)),
    );

    // 12
    let mut cov_ok = true;
    let mut cov_worst = 0.0f64;
    for (alg, ks) in [("rank1", vec![0u64, 1, 2, 3]), ("sym2", vec![1])] {
        for g in ["translation", "dilation", "inversion"] {
            let cs = select(&report, &format!("covariance-{g}"), alg);
            let got: Vec<u64> = cs.iter().filter_map(|c| measured_k(c)).collect();
            cov_ok &= got == ks && passes(&cs, 1e-6);
            cov_worst = cov_worst.max(worst(&cs));
            for name in [format!("hua-cocycle-{g}"), format!("coherent-transform-{g}")] {
                let cs = select(&report, &name, alg);
                cov_ok &= passes(&cs, 1e-8);
            }
        }
    }
    o.record(12, "covariance", cov_ok, format!("bracket intertwining {cov_worst:.2e} (1e-6); Hua cocycle and coherent transform within 1e-8"));

    // 13
    let (code2, json2) = run_check_all();
    o.record(
        13,
        "determinism",
        code == 0 && code2 == 0 && json == json2,
        format!("two `check all` runs, {} bytes each, identical: {}", json.len(), json == json2),
    );

    assert!(o.all, "failed criteria:\n{}", o.lines.iter().filter(|l| l.starts_with("FAIL")).cloned().collect::<Vec<_>>().join("\n"));
}
