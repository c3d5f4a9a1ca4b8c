//! Airy numerics, edge densities, quadrature checks and edge sampling.

pub mod airy;
pub mod density;
pub mod experiment;
pub mod gue;
pub mod identities;
pub mod quad;

pub use airy::{airy, airy_pair, airy_prime, AIRY_RANGE};
pub use density::{
    airy_kernel, edge_density, r_closed_form, r_printed_form, rho_laplace, rho_laplace2, two_point_density, RhoLaplace,
    DENSITY_RANGE, LAPLACE_XI_RANGE,
};
pub use experiment::{
    edge_moment_experiment, g_assembly, h_assembly, r_quadrature, set_partitions, EdgeMomentConfig, EdgeMomentReport,
    EdgeMomentRow,
};
pub use gue::{
    gue_eigenvalues, gue_eigenvalues_dense, gue_eigenvalues_tridiagonal, gue_matrix, sample_gue, sample_gue_with,
    sample_plancherel_edge, sample_plancherel_edge_with, scale_gue, tridiagonal_eigenvalues, EdgeSample, EdgeSource,
    GueModel,
};
pub use identities::{quadrature_identities, IdentityCheck, IDENTITY_TOL};
pub use quad::{integrate, integrate_to_infinity, Quadrature, QuadratureSpec};
