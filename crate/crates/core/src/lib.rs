//! Triangular q-Bernstein bases and q-Bézier patches.
//!
//! For a shape parameter `0 < q <= 1` the triangular q-Bernstein functions of
//! degree `n` generalize the classical triangular Bernstein polynomials (which
//! they equal at `q = 1`). Polynomials written in this basis are evaluated by a
//! corner-cutting scheme in which every step is a convex combination whenever
//! the evaluation point lies in the parameter triangle.
//!
//! The crate provides
//!
//! - q-integers, q-factorials and q-binomials ([`qcore`]),
//! - basis evaluation by three independent routes ([`tribasis`]),
//! - the corner-cutting evaluator for scalar and point nets ([`decasteljau`]),
//! - degree elevation and monomial conversion ([`elevation`]),
//! - the nonnegative change of basis to classical Bernstein form and
//!   condition-number comparison ([`stability`]),
//! - patch evaluation, boundary curves and tessellation ([`patch`]),
//! - JSON net files and the command implementations of the `qbezier` binary ([`cli`]).
//!
//! ```
//! use qbezier::{evaluate, CoefficientNet, DomainPoint, QParam};
//!
//! let q = QParam::new(0.5).unwrap();
//! let ones = CoefficientNet::constant(4, 1.0).unwrap();
//! let value = evaluate(&ones, DomainPoint::new(0.2, 0.3), q);
//! assert!((value - 1.0).abs() < 1e-15);
//! ```

pub mod cli;
pub mod decasteljau;
pub mod elevation;
pub mod error;
pub mod net;
pub mod patch;
pub mod qcore;
pub mod stability;
pub mod tribasis;

pub use decasteljau::{convex_weights, evaluate, evaluate_univariate, evaluate_with_tableau, NetValue, Tableau};
pub use elevation::{degree_elevate, elevate_to, monomial_to_qbernstein, Point2, TriangleGeometry};
pub use error::{Error, Result};
pub use net::{net_len, CoefficientNet, TriangularNet};
pub use patch::{boundary_curve, patch_eval, tessellate, ControlNet3D, Edge, Point3, TessellationMesh};
pub use qcore::{q_binomial, q_factorial, q_integer, QParam, MAX_DEGREE};
pub use stability::{
    compare_conditioning, condition_number, product_expansion, qbernstein_to_bernstein_matrix,
    sup_norm_estimate, BasisKind, BasisMatrix,
};
pub use tribasis::{
    barycentric_grid, basis_eval_all, basis_eval_direct, basis_eval_rec_a, basis_eval_rec_b,
    basis_sample_grid, DomainPoint, MultiIndex3,
};
