//! Reports for `Gamma_Omega` and Gram orthogonality.

use super::gamma::{gamma_omega_closed, gamma_omega_numeric, GammaRule};
use super::gram::gram_matrix;
use crate::jordan::Algebra;
use crate::report::{rel_err, CheckReport};
use crate::scalar::Q;

pub fn check_gamma_omega(alg: &Algebra, nu: f64, rule: GammaRule, tol: f64) -> CheckReport {
    let label = match rule {
        GammaRule::Quadrature { .. } => "gamma-omega-quadrature",
        GammaRule::MonteCarlo { .. } => "gamma-omega-monte-carlo",
    };
    CheckReport::run(
        label,
        "int_Omega e^{-tr x} det(x)^{nu-n/r} dx = (2 pi)^{(n-r)/2} prod_j Gamma(nu - j d/2)",
        &alg.name(),
        tol,
        |rep| {
            let closed = gamma_omega_closed(alg, nu)?;
            let num = gamma_omega_numeric(alg, nu, rule)?;
            rep.measure("nu", nu);
            rep.measure("closed", closed);
            rep.measure("numeric", num);
            rep.measure("rule", serde_json::to_value(rule)?);
            rep.push(format!("nu={nu}"), rel_err(num, closed, 0.0));
            Ok(())
        },
    )
}

/// Off-diagonal Gram ratios of `C^{(k)}_{lambda,mu}`, `k <= k_max`.
pub fn check_gram(alg: &Algebra, lambda: &Q, mu: &Q, k_max: u32, tol: f64) -> CheckReport {
    CheckReport::run(
        "gram-orthogonality",
        "int C_k C_l det(e-v)^lambda det(e+v)^mu dv = 0 for k != l",
        &alg.name(),
        tol,
        |rep| {
            let g = gram_matrix(alg, lambda, mu, k_max, None)?;
            for (i, row) in g.matrix.iter().enumerate() {
                for (j, v) in row.iter().enumerate().skip(i + 1) {
                    rep.push(format!("G[{i}][{j}]"), v.abs() / (row[i] * g.matrix[j][j]).sqrt());
                }
            }
            rep.measure("lambda", g.lambda.clone());
            rep.measure("mu", g.mu.clone());
            rep.measure("nodes_per_axis", g.nodes_per_axis);
            rep.measure("estimated_error", g.estimated_error);
            rep.measure("above_threshold", g.above_threshold);
            Ok(())
        },
    )
}
