//! Conditioning of the q-Bernstein representation relative to the classical
//! Bernstein basis.
//!
//! The trailing product of every q-Bernstein function expands with
//! nonnegative coefficients in the classical basis:
//!
//! ```text
//! prod_{s<r} (1 - q^s u - q^s v) = sum_{i+j+k=r} c^r_ijk u^i v^j (1 - u - v)^k,   c^r_ijk >= 0
//! ```
//!
//! so the change-of-basis matrix from q-Bernstein to Bernstein is nonnegative,
//! and the Bernstein representation of any polynomial is never worse
//! conditioned than its q-Bernstein representation.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::decasteljau::evaluate;
use crate::error::{Error, Result};
use crate::net::{net_len, CoefficientNet, TriangularNet};
use crate::qcore::{binomial, check_degree, multinomial, qbinom, QParam};
use crate::tribasis::{barycentric_grid, basis_eval_all, DomainPoint, MultiIndex3};

/// Default grid resolution for the sup-norm surrogate.
pub const DEFAULT_SUP_RESOLUTION: usize = 64;

/// Ordering tolerance for conditioning comparisons.
pub const COND_ORDER_TOL: f64 = 1e-10;

/// Coefficients `c^r_ijk` of the trailing product in the classical basis.
pub type ProductExpansion = CoefficientNet;

/// Computes `c^r` level by level:
/// `c^{t+1}_ijk = c^t_{i,j,k-1} + (1 - q^t) c^t_{i-1,j,k} + (1 - q^t) c^t_{i,j-1,k}`.
///
/// Only sums and products of nonnegative numbers occur, so every coefficient is
/// nonnegative in floating point as well.
pub fn product_expansion(r: usize, q: QParam) -> Result<ProductExpansion> {
    check_degree(r)?;
    let pw = q.powers(r);
    let mut c = CoefficientNet::constant(0, 1.0)?;
    for (t, &qt) in pw.iter().enumerate().take(r) {
        let gap = 1.0 - qt;
        c = TriangularNet::from_fn(t + 1, |idx| {
            let mut acc = 0.0;
            if let Some(s) = idx.dec_k() {
                acc += c[s];
            }
            if let Some(s) = idx.dec_i() {
                acc += gap * c[s];
            }
            if let Some(s) = idx.dec_j() {
                acc += gap * c[s];
            }
            acc
        })?;
    }
    Ok(c)
}

/// Which basis a coefficient net is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisKind {
    /// Classical triangular Bernstein basis.
    Classical,
    /// Triangular q-Bernstein basis.
    Q,
}

/// Change-of-basis matrix `A` with `q-Bernstein = Bernstein * A`.
///
/// Rows are Bernstein indices and columns q-Bernstein indices, both in the
/// canonical order. Column `c` holds the Bernstein coefficients of the
/// q-Bernstein function `c`. All entries are nonnegative and every row sums
/// to one, since both bases sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisMatrix {
    degree: usize,
    entries: DMatrix<f64>,
}

impl BasisMatrix {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn get(&self, row: MultiIndex3, col: MultiIndex3) -> f64 {
        self.entries[(row.position(), col.position())]
    }

    /// Bernstein coefficients of the polynomial with q-Bernstein coefficients `net`.
    pub fn to_bernstein(&self, net: &CoefficientNet) -> CoefficientNet {
        assert_eq!(net.degree(), self.degree, "degree mismatch");
        let c = DVector::from_column_slice(net.values());
        let b = &self.entries * c;
        CoefficientNet::from_vec(self.degree, b.as_slice().to_vec()).expect("same degree")
    }

    /// q-Bernstein coefficients of the polynomial with Bernstein coefficients
    /// `net`, by LU solve. Fails with the 2-norm condition estimate when the
    /// system is numerically singular.
    pub fn to_qbernstein(&self, net: &CoefficientNet) -> Result<CoefficientNet> {
        assert_eq!(net.degree(), self.degree, "degree mismatch");
        let cond = self.condition_estimate();
        if !cond.is_finite() || cond > 1.0 / f64::EPSILON {
            return Err(Error::Singular { condition: cond });
        }
        let rhs = DVector::from_column_slice(net.values());
        let sol = self
            .entries
            .clone()
            .lu()
            .solve(&rhs)
            .ok_or(Error::Singular { condition: cond })?;
        CoefficientNet::from_vec(self.degree, sol.as_slice().to_vec())
    }

    /// Ratio of extreme singular values.
    pub fn condition_estimate(&self) -> f64 {
        let sv = self.entries.singular_values();
        let min = sv.min();
        if min == 0.0 {
            f64::INFINITY
        } else {
            sv.max() / min
        }
    }
}

/// Builds the change-of-basis matrix: the q-Bernstein function `(i, j, k)` has
/// Bernstein coefficient
/// `c^k_rst * qbinom(n,k) * binom(i+j,i) / multinomial(n; i+r, j+s, t)`
/// at Bernstein index `(i+r, j+s, t)` for each `r + s + t = k`.
pub fn qbernstein_to_bernstein_matrix(n: usize, q: QParam) -> Result<BasisMatrix> {
    check_degree(n)?;
    let dim = net_len(n);
    let mut entries = DMatrix::zeros(dim, dim);
    let expansions = (0..=n)
        .map(|k| product_expansion(k, q))
        .collect::<Result<Vec<_>>>()?;
    for col in MultiIndex3::triples(n) {
        let scale = qbinom(n, col.k, q) * binomial(col.i + col.j, col.i);
        for (rst, &c) in expansions[col.k].iter() {
            let row = MultiIndex3::new(col.i + rst.i, col.j + rst.j, rst.k);
            entries[(row.position(), col.position())] += c * scale / multinomial(row.i, row.j, row.k);
        }
    }
    Ok(BasisMatrix { degree: n, entries })
}

/// Relative condition number `sum_i |c_i| u_i(x) / ||f||_inf` of evaluating
/// `f = sum c_i u_i` at a point where the (nonnegative) basis values are
/// `basis_values`.
pub fn condition_number(basis_values: &[f64], coeffs: &[f64], sup_norm: f64) -> Result<f64> {
    if sup_norm.is_nan() || sup_norm <= 0.0 {
        return Err(Error::Domain(format!("sup-norm must be positive, got {sup_norm}")));
    }
    assert_eq!(basis_values.len(), coeffs.len(), "length mismatch");
    let s: f64 = basis_values
        .iter()
        .zip(coeffs)
        .map(|(b, c)| c.abs() * b)
        .sum();
    Ok(s / sup_norm)
}

/// Evaluates a coefficient net in the given basis.
pub fn evaluate_in(net: &CoefficientNet, basis: BasisKind, p: DomainPoint, q: QParam) -> f64 {
    match basis {
        BasisKind::Classical => evaluate(net, p, QParam::ONE),
        BasisKind::Q => evaluate(net, p, q),
    }
}

/// `max |f|` over [`barycentric_grid`]`(m)`. This is a lower bound of the true
/// sup-norm over the triangle; vertices are always on the grid.
pub fn sup_norm_estimate(net: &CoefficientNet, basis: BasisKind, q: QParam, m: usize) -> f64 {
    barycentric_grid(m)
        .into_par_iter()
        .map(|p| evaluate_in(net, basis, p, q).abs())
        .reduce(|| 0.0, f64::max)
}

/// Condition numbers of one polynomial in both bases at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointConditioning {
    pub point: DomainPoint,
    /// `None` when the polynomial vanishes identically.
    pub cond_bernstein: Option<f64>,
    pub cond_q: Option<f64>,
}

impl PointConditioning {
    /// `cond_bernstein / cond_q`; taken as 1 when both vanish.
    pub fn ratio(&self) -> Option<f64> {
        let (b, q) = (self.cond_bernstein?, self.cond_q?);
        Some(if q == 0.0 && b == 0.0 { 1.0 } else { b / q })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditioningReport {
    pub sup_norm: f64,
    pub points: Vec<PointConditioning>,
    /// Largest `cond_bernstein / cond_q` over the points; `None` for the zero polynomial.
    pub max_ratio: Option<f64>,
}

impl ConditioningReport {
    pub fn is_defined(&self) -> bool {
        self.max_ratio.is_some()
    }

    /// Whether the Bernstein representation is no worse conditioned at every
    /// point, up to `tol` relative slack.
    pub fn ordering_holds(&self, tol: f64) -> bool {
        self.max_ratio.is_some_and(|r| r <= 1.0 + tol)
    }
}

/// Compares the conditioning of `net` (q-Bernstein coefficients) with that of
/// its Bernstein representation at each of `points`. Both condition numbers
/// share one sup-norm estimate on a grid of resolution `m`.
pub fn compare_conditioning(
    net: &CoefficientNet,
    q: QParam,
    points: &[DomainPoint],
    m: usize,
) -> Result<ConditioningReport> {
    let n = net.degree();
    let matrix = qbernstein_to_bernstein_matrix(n, q)?;
    let classical = matrix.to_bernstein(net);
    let sup_norm = sup_norm_estimate(net, BasisKind::Q, q, m);
    let defined = sup_norm > 0.0;
    let points: Vec<PointConditioning> = points
        .par_iter()
        .map(|&p| {
            if !defined {
                return PointConditioning { point: p, cond_bernstein: None, cond_q: None };
            }
            let bq = basis_eval_all(n, p, q);
            let bc = basis_eval_all(n, p, QParam::ONE);
            PointConditioning {
                point: p,
                cond_bernstein: condition_number(bc.values(), classical.values(), sup_norm).ok(),
                cond_q: condition_number(bq.values(), net.values(), sup_norm).ok(),
            }
        })
        .collect();
    let max_ratio = if defined {
        points
            .iter()
            .filter_map(PointConditioning::ratio)
            .fold(None, |acc: Option<f64>, r| Some(acc.map_or(r, |a| a.max(r))))
    } else {
        None
    };
    Ok(ConditioningReport { sup_norm, points, max_ratio })
}
