//! The verification batteries behind `check`: one list of jobs per suite and
//! algebra, run in parallel and reported in job order.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::analytic::checks as an;
use crate::analytic::l2::L2Method;
use crate::bracket::checks as br;
use crate::error::Error;
use crate::jordan::{algebra, Algebra, Family};
use crate::quadrature::checks as qc;
use crate::quadrature::GammaRule;
use crate::report::{CheckReport, SuiteReport};
use crate::sampling::DEFAULT_SEED;
use crate::scalar::qi;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Algebraic,
    Quadrature,
    Analytic,
    All,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "algebraic" => Ok(Suite::Algebraic),
            "quadrature" => Ok(Suite::Quadrature),
            "analytic" => Ok(Suite::Analytic),
            "all" => Ok(Suite::All),
            _ => Err(Error::Config(format!("unknown suite `{s}`"))),
        }
    }
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Algebraic => "algebraic",
            Suite::Quadrature => "quadrature",
            Suite::Analytic => "analytic",
            Suite::All => "all",
        }
    }

    fn includes(&self, other: Suite) -> bool {
        *self == Suite::All || *self == other
    }
}

/// Algebras checked when none is selected.
pub const DEFAULT_FAMILIES: [Family; 4] = [Family::Rank1, Family::Sym(2), Family::Sym(3), Family::Spin(4)];

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Monte Carlo sample count for the `Omega x Omega` integrals.
    pub mc_samples: usize,
    /// Monte Carlo sample count for `Gamma_Omega`.
    pub gamma_samples: usize,
    /// Nodes per axis of the cone rule.
    pub cone_nodes: usize,
    /// Per-check tolerance overrides keyed by check name.
    pub tolerances: BTreeMap<String, f64>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: DEFAULT_SEED,
            mc_samples: 4_000_000,
            gamma_samples: 1_000_000,
            cone_nodes: 40,
            tolerances: BTreeMap::new(),
        }
    }
}

impl SuiteOptions {
    fn tol(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }

    fn mc(&self) -> L2Method {
        L2Method::MonteCarlo {
            samples: self.mc_samples,
            seed: self.seed,
        }
    }
}

type Job = Box<dyn Fn() -> CheckReport + Send + Sync>;

fn k_range(family: Family) -> u32 {
    match family {
        Family::Rank1 => 6,
        Family::Sym(2) => 3,
        _ => 2,
    }
}

fn algebraic_jobs(alg: &Arc<Algebra>, o: &SuiteOptions, jobs: &mut Vec<Job>) {
    let fam = alg.family;
    let seed = o.seed;
    let k_max = if fam == Family::Rank1 || fam == Family::Sym(2) || fam == Family::Sym(3) || fam == Family::Spin(4) {
        k_range(fam)
    } else {
        1
    };
    for k in 0..=k_max {
        let a = alg.clone();
        jobs.push(Box::new(move || br::check_polynomiality(&a, k)));
    }
    for k in 1..=k_max {
        let a = alg.clone();
        jobs.push(Box::new(move || br::check_chi_covariance(&a, k, 50, seed)));
        let a = alg.clone();
        jobs.push(Box::new(move || br::check_iota_factorization(&a, k, 20, seed)));
        if matches!(fam, Family::Sym(_)) {
            let a = alg.clone();
            jobs.push(Box::new(move || br::check_aut_invariance(&a, k, 20, seed)));
        }
    }
    if fam == Family::Rank1 {
        jobs.push(Box::new(|| br::check_jacobi_reduction(6)));
    }
}

fn quadrature_jobs(alg: &Arc<Algebra>, o: &SuiteOptions, jobs: &mut Vec<Job>) {
    let fam = alg.family;
    let seed = o.seed;
    let a = alg.clone();
    let t = o.tol("iota-jacobian", 1e-6);
    jobs.push(Box::new(move || an::check_iota_jacobian(&a, 20, seed, t)));
    match fam {
        Family::Rank1 => {
            let a = alg.clone();
            let t = o.tol("gamma-omega-quadrature", 1e-10);
            jobs.push(Box::new(move || qc::check_gamma_omega(&a, 2.5, GammaRule::Quadrature { nodes: 60 }, t)));
            let a = alg.clone();
            let t = o.tol("gram-orthogonality", 1e-12);
            jobs.push(Box::new(move || qc::check_gram(&a, &qi(1), &qi(1), 4, t)));
            let a = alg.clone();
            let t = o.tol("change-of-variables", 1e-6);
            jobs.push(Box::new(move || an::check_change_of_variables(&a, L2Method::default_for(&a), t)));
        }
        Family::Sym(2) => {
            let a = alg.clone();
            let t = o.tol("gamma-omega-quadrature", 1e-6);
            jobs.push(Box::new(move || qc::check_gamma_omega(&a, 3.0, GammaRule::Quadrature { nodes: 60 }, t)));
            let a = alg.clone();
            let t = o.tol("gamma-omega-monte-carlo", 1e-2);
            let samples = o.gamma_samples;
            jobs.push(Box::new(move || qc::check_gamma_omega(&a, 3.0, GammaRule::MonteCarlo { samples, seed }, t)));
            let a = alg.clone();
            let t = o.tol("gram-orthogonality", 1e-8);
            jobs.push(Box::new(move || qc::check_gram(&a, &qi(3), &qi(3), 3, t)));
            let a = alg.clone();
            let t = o.tol("change-of-variables", 1e-2);
            let m = o.mc();
            jobs.push(Box::new(move || an::check_change_of_variables(&a, m, t)));
        }
        _ => {
            let a = alg.clone();
            let t = o.tol("gram-orthogonality", 1e-8);
            let km = k_range(fam).min(crate::bracket::max_k(fam));
            jobs.push(Box::new(move || qc::check_gram(&a, &qi(3), &qi(3), km, t)));
        }
    }
}

/// Pairs of tube points for the two-variable identities.
fn point_pairs(alg: &Algebra, count: usize, seed: u64) -> Vec<(Vec<Complex64>, Vec<Complex64>)> {
    let p = an::sample_points(alg, 2 * count, seed);
    p.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect()
}

fn analytic_jobs(alg: &Arc<Algebra>, o: &SuiteOptions, jobs: &mut Vec<Job>) {
    let fam = alg.family;
    let seed = o.seed;
    let pts = an::sample_points(alg, 5, seed);
    let pairs = point_pairs(alg, 3, seed ^ 0x7a11);
    let gens = an::standard_generators(alg);
    let cone = o.cone_nodes;

    {
        let (a, p) = (alg.clone(), pts.clone());
        let t = o.tol("branch-consistency", 1e-10);
        jobs.push(Box::new(move || an::check_branch_consistency(&a, &p, t)));
        let (a, p, g) = (alg.clone(), pts.clone(), gens.clone());
        let t = o.tol("cocycle-jacobian", 1e-6);
        jobs.push(Box::new(move || an::check_cocycles(&a, &g, &p, t)));
    }
    for g in &gens {
        let (a, pr, g1) = (alg.clone(), pairs.clone(), g.clone());
        let t = o.tol(&format!("hua-cocycle-{}", g.label()), 1e-8);
        jobs.push(Box::new(move || an::check_hua_cocycle(&a, &g1, &pr, t)));
        let (a, p, g1) = (alg.clone(), pts.clone(), g.clone());
        let ws: Vec<Vec<Complex64>> = pairs.iter().map(|p| p.0.clone()).collect();
        let t = o.tol(&format!("coherent-transform-{}", g.label()), 1e-8);
        jobs.push(Box::new(move || an::check_coherent_transform(&a, 2.5, &g1, &ws, &p, t)));
    }

    let (cov_k, laplace_tol, adj_k, adj_tol, jf_method, jf_tol): (Vec<u32>, f64, Vec<u32>, f64, L2Method, f64) = match fam {
        Family::Rank1 => (vec![0, 1, 2, 3], 1e-8, vec![0, 1, 2], 1e-6, L2Method::default_for(alg), 1e-6),
        Family::Sym(2) => (vec![1], 1e-4, vec![1, 2], 1e-3, o.mc(), 1e-2),
        _ => return,
    };

    let (a, p) = (alg.clone(), pts.clone());
    let t = o.tol("laplace-identity", laplace_tol);
    let nodes = if fam == Family::Rank1 { 80 } else { cone };
    jobs.push(Box::new(move || an::check_laplace_identity(&a, 3.5, &p, nodes, t)));

    for k in adj_k {
        let (a, pr) = (alg.clone(), pairs.clone());
        let t = o.tol("adjoint-image", adj_tol);
        jobs.push(Box::new(move || an::check_adjoint_image(&a, k, 3.0, 2.5, &pr, nodes, t)));
    }

    let (a, p) = (alg.clone(), pts[..3].to_vec());
    let t = o.tol("J-factorization", jf_tol);
    jobs.push(Box::new(move || an::check_j_factorization(&a, &p, jf_method, t)));

    if fam == Family::Rank1 {
        for k in 1..=3 {
            let a = alg.clone();
            let t = o.tol("partial-isometry", 1e-6);
            jobs.push(Box::new(move || an::check_partial_isometry(&a, k, 2.5, 1.5, t)));
        }
    }

    let ws = point_pairs(alg, 2, seed ^ 0xc0e);
    let zs = an::sample_points(alg, 3, seed ^ 0x2e);
    for g in &gens {
        for &k in &cov_k {
            let (a, g1, w, z) = (alg.clone(), g.clone(), ws.clone(), zs.clone());
            let t = o.tol(&format!("covariance-{}", g.label()), 1e-6);
            jobs.push(Box::new(move || an::check_covariance_b(&a, k, 3.0, 2.0, &g1, &w, &z, t)));
        }
    }
}

/// Jobs in a fixed order: algebras as given, then suites in the order
/// algebraic, quadrature, analytic.
pub fn jobs(suite: Suite, families: &[Family], o: &SuiteOptions) -> Vec<Job> {
    let mut out = Vec::new();
    for &f in families {
        let alg = algebra(f);
        if suite.includes(Suite::Algebraic) {
            algebraic_jobs(&alg, o, &mut out);
        }
        if suite.includes(Suite::Quadrature) {
            quadrature_jobs(&alg, o, &mut out);
        }
        if suite.includes(Suite::Analytic) {
            analytic_jobs(&alg, o, &mut out);
        }
    }
    out
}

pub fn run(suite: Suite, families: &[Family], o: &SuiteOptions) -> SuiteReport {
    let checks: Vec<CheckReport> = jobs(suite, families, o).par_iter().map(|j| j()).collect();
    SuiteReport::new(suite.name(), checks)
}
