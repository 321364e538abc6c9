//! Gram matrices of the family `C^{(k)}_{lambda,mu}` under the weight
//! `det(e-v)^lambda det(e+v)^mu` on `]-e,e[`.

use serde::Serialize;

use super::weyl::WeylRule;
use crate::bracket::compute_C;
use crate::error::{Error, Result};
use crate::jordan::Algebra;
use crate::scalar::{format_q, q_to_f64, Q};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GramReport {
    pub schema: String,
    pub algebra: String,
    pub lambda: String,
    pub mu: String,
    pub k_max: u32,
    /// `1 + (r-1)d - n/r`; orthogonality is asserted above it.
    pub threshold: f64,
    pub above_threshold: bool,
    pub nodes_per_axis: usize,
    pub chamber_nodes: usize,
    pub matrix: Vec<Vec<f64>>,
    /// `|G[k][l]| / sqrt(G[k][k] G[l][l])` for `k != l`
    pub max_offdiag_ratio: f64,
    /// largest relative change when the node count doubles
    pub estimated_error: f64,
}

pub fn default_nodes(alg: &Algebra, k_max: u32, lambda: f64, mu: f64) -> usize {
    let deg = 2 * alg.r * k_max as usize + alg.r * alg.d + lambda.max(mu).max(0.0).ceil() as usize;
    deg / 2 + 4
}

pub fn gram_matrix(alg: &Algebra, lambda: &Q, mu: &Q, k_max: u32, nodes: Option<usize>) -> Result<GramReport> {
    let (lf, mf) = (q_to_f64(lambda), q_to_f64(mu));
    if lf <= -1.0 || mf <= -1.0 {
        return Err(Error::Divergent(format!("weight exponents {lf}, {mf}")));
    }
    let polys = (0..=k_max)
        .map(|k| compute_C(alg, k, lambda, mu).map(|c| c.poly.map_coef(q_to_f64)))
        .collect::<Result<Vec<_>>>()?;
    let nodes = nodes.unwrap_or_else(|| default_nodes(alg, k_max, lf, mf));
    let compute = |n: usize| -> Result<(Vec<Vec<f64>>, usize)> {
        let rule = WeylRule::new(alg, lf, mf, n)?;
        let m = k_max as usize + 1;
        let mut g = vec![vec![0.0; m]; m];
        for i in 0..m {
            for j in i..m {
                let v = rule.integrate(alg, |x| polys[i].eval_with(x, |c| *c) * polys[j].eval_with(x, |c| *c));
                g[i][j] = v;
                g[j][i] = v;
            }
        }
        Ok((g, rule.len()))
    };
    let (matrix, chamber_nodes) = compute(nodes)?;
    let (fine, _) = compute(2 * nodes)?;
    let mut max_ratio = 0.0f64;
    let mut est = 0.0f64;
    for (i, row) in matrix.iter().enumerate() {
        if row[i] <= 0.0 {
            return Err(Error::Quadrature(format!("non-positive diagonal G[{i}][{i}] = {}", row[i])));
        }
        for (j, v) in row.iter().enumerate() {
            if i != j {
                max_ratio = max_ratio.max(v.abs() / (row[i] * matrix[j][j]).sqrt());
            }
            let scale = (row[i] * matrix[j][j]).sqrt();
            est = est.max((v - fine[i][j]).abs() / scale);
        }
    }
    let threshold = 1.0 + (alg.r as f64 - 1.0) * alg.d as f64 - alg.n as f64 / alg.r as f64;
    Ok(GramReport {
        schema: crate::report::SCHEMA.into(),
        algebra: alg.name(),
        lambda: format_q(lambda),
        mu: format_q(mu),
        k_max,
        threshold,
        above_threshold: lf > threshold && mf > threshold,
        nodes_per_axis: nodes,
        chamber_nodes,
        matrix,
        max_offdiag_ratio: max_ratio,
        estimated_error: est,
    })
}

impl GramReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("GramReport serializes")
    }

    /// `k,l,value,ratio` rows (`ratio` normalized by the diagonal).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,l,value,ratio\n");
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let ratio = v / (row[i] * self.matrix[j][j]).sqrt();
                out.push_str(&format!("{i},{j},{v:.17e},{ratio:.6e}\n"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{algebra, Family};
    use crate::scalar::qi;

    #[test]
    fn rank1_jacobi_orthogonality() {
        let a = algebra(Family::Rank1);
        let g = gram_matrix(&a, &qi(1), &qi(1), 4, None).unwrap();
        assert!(g.max_offdiag_ratio < 1e-12, "{}", g.max_offdiag_ratio);
        assert!(g.above_threshold);
        for i in 0..5 {
            assert!(g.matrix[i][i] > 0.0);
            for j in 0..5 {
                assert_eq!(g.matrix[i][j], g.matrix[j][i]);
            }
        }
    }

    #[test]
    fn sym2_orthogonality() {
        let a = algebra(Family::Sym(2));
        let g = gram_matrix(&a, &qi(3), &qi(3), 3, None).unwrap();
        assert!(g.max_offdiag_ratio < 1e-8, "{}", g.max_offdiag_ratio);
        assert!(g.estimated_error < 1e-10);
    }

    #[test]
    fn csv_shape() {
        let a = algebra(Family::Rank1);
        let g = gram_matrix(&a, &qi(1), &qi(2), 2, None).unwrap();
        assert_eq!(g.to_csv().lines().count(), 10);
    }
}
