//! Gauss rules, cone and chamber integrals, `Gamma_Omega`, Gram matrices.

pub mod checks;
pub mod cone;
pub mod gamma;
pub mod gauss;
pub mod gram;
pub mod weyl;

pub use cone::{laplace_cone, ConeRule};
pub use gamma::{convergence_threshold, gamma_omega_closed, gamma_omega_numeric, GammaRule};
pub use gauss::{composite_legendre, gauss_jacobi, gauss_laguerre, gauss_legendre, trapezoid, QuadratureRule, RuleKind};
pub use gram::{gram_matrix, GramReport};
pub use weyl::{diag_element, spot_check_invariance, weyl_integral, WeylRule};
