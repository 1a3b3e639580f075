//! Triangular q-Bernstein basis functions.
//!
//! For `i + j + k = n` the basis function is
//!
//! ```text
//! B^n_ijk(u, v) = qbinom(n, k) * binom(i + j, i) * u^i * v^j * prod_{s<k} (1 - q^s u - q^s v)
//! ```
//!
//! Three independent evaluation routes are provided: the closed product form
//! and two degree-raising recurrences. They agree to rounding and are kept
//! separate so that each can be checked against the others.

use std::fmt;

use rayon::prelude::*;

use crate::net::{net_len, CoefficientNet, TriangularNet};
use crate::qcore::{binomial, qbinom, QParam, MAX_DEGREE};

/// An index triple `(i, j, k)`; its degree is `i + j + k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex3 {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl MultiIndex3 {
    #[inline]
    pub const fn new(i: usize, j: usize, k: usize) -> Self {
        MultiIndex3 { i, j, k }
    }

    #[inline]
    pub const fn degree(self) -> usize {
        self.i + self.j + self.k
    }

    /// Offset in the canonical (descending `i`, descending `j`) ordering.
    #[inline]
    pub const fn position(self) -> usize {
        let a = self.j + self.k;
        a * (a + 1) / 2 + self.k
    }

    /// All triples of degree `n` in canonical order.
    pub fn triples(n: usize) -> impl Iterator<Item = MultiIndex3> + Clone {
        (0..=n)
            .rev()
            .flat_map(move |i| (0..=n - i).rev().map(move |j| MultiIndex3::new(i, j, n - i - j)))
    }

    /// Shifts one component down by one, `None` if it would go negative.
    pub(crate) fn dec_i(self) -> Option<Self> {
        (self.i > 0).then(|| MultiIndex3::new(self.i - 1, self.j, self.k))
    }

    pub(crate) fn dec_j(self) -> Option<Self> {
        (self.j > 0).then(|| MultiIndex3::new(self.i, self.j - 1, self.k))
    }

    pub(crate) fn dec_k(self) -> Option<Self> {
        (self.k > 0).then(|| MultiIndex3::new(self.i, self.j, self.k - 1))
    }
}

impl fmt::Display for MultiIndex3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.k)
    }
}

/// A point of the parameter plane in barycentric coordinates `(u, v, 1 - u - v)`.
///
/// Any real pair is accepted; [`DomainPoint::in_triangle`] tells whether the
/// point lies in the closed parameter triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainPoint {
    pub u: f64,
    pub v: f64,
}

impl DomainPoint {
    #[inline]
    pub const fn new(u: f64, v: f64) -> Self {
        DomainPoint { u, v }
    }

    #[inline]
    pub fn w(self) -> f64 {
        1.0 - self.u - self.v
    }

    pub fn in_triangle(self) -> bool {
        self.u >= 0.0 && self.v >= 0.0 && self.u + self.v <= 1.0
    }
}

/// The uniform barycentric grid `{(a/m, b/m) : a + b <= m}`, `a` outer and `b`
/// inner, both ascending.
pub fn barycentric_grid(m: usize) -> Vec<DomainPoint> {
    assert!(m >= 1, "grid resolution must be at least 1");
    let mf = m as f64;
    (0..=m)
        .flat_map(|a| (0..=m - a).map(move |b| DomainPoint::new(a as f64 / mf, b as f64 / mf)))
        .collect()
}

fn assert_degree(n: usize) {
    assert!(n <= MAX_DEGREE, "degree {n} exceeds {MAX_DEGREE}");
}

/// Evaluates `B^n_ijk(u, v)` from the closed product form, with `n = i + j + k`.
///
/// # Panics
/// If the degree exceeds [`MAX_DEGREE`].
pub fn basis_eval_direct(idx: MultiIndex3, p: DomainPoint, q: QParam) -> f64 {
    let n = idx.degree();
    assert_degree(n);
    let mut value = qbinom(n, idx.k, q) * binomial(idx.i + idx.j, idx.i);
    value *= p.u.powi(idx.i as i32) * p.v.powi(idx.j as i32);
    let mut qs = 1.0;
    for _ in 0..idx.k {
        value *= 1.0 - qs * p.u - qs * p.v;
        qs *= q.value();
    }
    value
}

/// Raises all basis values from degree 0 to `n` with a three-term recurrence.
fn raise_by_recurrence(
    n: usize,
    mut step: impl FnMut(MultiIndex3, &CoefficientNet) -> f64,
) -> CoefficientNet {
    assert_degree(n);
    let mut layer = TriangularNet::constant(0, 1.0).expect("degree 0");
    for d in 1..=n {
        layer = TriangularNet::from_fn(d, |idx| step(idx, &layer)).expect("degree checked");
    }
    layer
}

fn lower(layer: &CoefficientNet, idx: Option<MultiIndex3>) -> f64 {
    idx.map_or(0.0, |t| layer[t])
}

/// All basis values of degree `n` through the recurrence whose third weight is
/// `q^(i+j) - q^(n-1) u - q^(n-1) v`.
///
/// The three weights of this recurrence do not sum to one; it is a cross-check
/// of the basis definition, not an evaluation scheme.
pub fn basis_all_rec_a(n: usize, p: DomainPoint, q: QParam) -> CoefficientNet {
    let pw = q.powers(n);
    raise_by_recurrence(n, |idx, prev| {
        let d = idx.degree();
        let third = pw[idx.i + idx.j] - pw[d - 1] * p.u - pw[d - 1] * p.v;
        p.u * lower(prev, idx.dec_i()) + p.v * lower(prev, idx.dec_j()) + third * lower(prev, idx.dec_k())
    })
}

/// All basis values of degree `n` through the recurrence with weights
/// `q^k u`, `q^k v` and `1 - q^(k-1) u - q^(k-1) v`.
pub fn basis_all_rec_b(n: usize, p: DomainPoint, q: QParam) -> CoefficientNet {
    let pw = q.powers(n);
    raise_by_recurrence(n, |idx, prev| {
        let qk = pw[idx.k];
        let mut value = qk * p.u * lower(prev, idx.dec_i()) + qk * p.v * lower(prev, idx.dec_j());
        if let Some(t) = idx.dec_k() {
            let qk1 = pw[idx.k - 1];
            value += (1.0 - qk1 * p.u - qk1 * p.v) * prev[t];
        }
        value
    })
}

pub fn basis_eval_rec_a(idx: MultiIndex3, p: DomainPoint, q: QParam) -> f64 {
    basis_all_rec_a(idx.degree(), p, q)[idx]
}

pub fn basis_eval_rec_b(idx: MultiIndex3, p: DomainPoint, q: QParam) -> f64 {
    basis_all_rec_b(idx.degree(), p, q)[idx]
}

/// All `(n+1)(n+2)/2` basis values at `p` in one pass, sharing powers of `u`
/// and `v` and building the trailing product one factor per level of `k`.
pub fn basis_eval_all(n: usize, p: DomainPoint, q: QParam) -> CoefficientNet {
    assert_degree(n);
    let mut upow = Vec::with_capacity(n + 1);
    let mut vpow = Vec::with_capacity(n + 1);
    let (mut a, mut b) = (1.0, 1.0);
    for _ in 0..=n {
        upow.push(a);
        vpow.push(b);
        a *= p.u;
        b *= p.v;
    }
    // lead[k] = qbinom(n, k) * prod_{s<k} (1 - q^s u - q^s v)
    let mut lead = Vec::with_capacity(n + 1);
    let mut prod = 1.0;
    let mut qs = 1.0;
    for k in 0..=n {
        lead.push(qbinom(n, k, q) * prod);
        prod *= 1.0 - qs * p.u - qs * p.v;
        qs *= q.value();
    }
    TriangularNet::from_fn(n, |t| lead[t.k] * binomial(t.i + t.j, t.i) * upow[t.i] * vpow[t.j])
        .expect("degree checked")
}

/// Classical triangular Bernstein values `n!/(i!j!k!) u^i v^j w^k` at `p`.
pub fn bernstein_eval_all(n: usize, p: DomainPoint) -> CoefficientNet {
    basis_eval_all(n, p, QParam::ONE)
}

/// One sample of a basis function on the barycentric grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisSample {
    pub u: f64,
    pub v: f64,
    pub value: f64,
}

/// Samples `B^n_ijk` over [`barycentric_grid`]`(m)`, in grid order.
pub fn basis_sample_grid(idx: MultiIndex3, q: QParam, m: usize) -> Vec<BasisSample> {
    barycentric_grid(m)
        .into_par_iter()
        .map(|p| BasisSample {
            u: p.u,
            v: p.v,
            value: basis_eval_direct(idx, p, q),
        })
        .collect()
}

/// Number of basis functions of degree `n`.
pub fn basis_len(n: usize) -> usize {
    net_len(n)
}
