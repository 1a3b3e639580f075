//! Corner-cutting evaluation of q-Bézier representations.
//!
//! A degree-`n` net is reduced to a single value in `n` layers. Every entry of
//! layer `r` is
//!
//! ```text
//! f(r)_ijk = q^k u f(r-1)_{i+1,j,k} + q^k v f(r-1)_{i,j+1,k} + (1 - q^k u - q^k v) f(r-1)_{i,j,k+1}
//! ```
//!
//! and inside the parameter triangle the three weights are nonnegative and sum
//! to one, so each step is a convex combination. At `q = 1` this is the
//! classical triangular de Casteljau algorithm.

use std::ops::{Add, Mul};

use crate::net::TriangularNet;
use crate::qcore::QParam;
use crate::tribasis::{DomainPoint, MultiIndex3};

/// Values that can be combined affinely: anything with addition and scaling by reals.
pub trait NetValue: Copy + Add<Output = Self> + Mul<f64, Output = Self> {}

impl<T: Copy + Add<Output = T> + Mul<f64, Output = T>> NetValue for T {}

/// The weights `(q^k u, q^k v, 1 - q^k u - q^k v)` used at level `k`.
#[inline]
pub fn convex_weights(k: usize, p: DomainPoint, q: QParam) -> (f64, f64, f64) {
    weights_from_power(q.pow(k), p)
}

#[inline]
fn weights_from_power(qk: f64, p: DomainPoint) -> (f64, f64, f64) {
    let wu = qk * p.u;
    let wv = qk * p.v;
    (wu, wv, 1.0 - wu - wv)
}

#[inline]
fn combine<T: NetValue>(a: T, b: T, c: T, (wu, wv, ww): (f64, f64, f64)) -> T {
    a * wu + b * wv + c * ww
}

/// Whether the convex-combination guarantee holds at `p`.
pub fn is_convex_at(p: DomainPoint) -> bool {
    p.in_triangle()
}

/// One reduction step from degree `d` to `d - 1`.
fn reduce<T: NetValue>(layer: &TriangularNet<T>, weights: &[(f64, f64, f64)]) -> TriangularNet<T> {
    TriangularNet::from_fn(layer.degree() - 1, |t| {
        combine(
            layer[MultiIndex3::new(t.i + 1, t.j, t.k)],
            layer[MultiIndex3::new(t.i, t.j + 1, t.k)],
            layer[MultiIndex3::new(t.i, t.j, t.k + 1)],
            weights[t.k],
        )
    })
    .expect("degree decreases")
}

fn level_weights(n: usize, p: DomainPoint, q: QParam) -> Vec<(f64, f64, f64)> {
    q.powers(n).into_iter().map(|qk| weights_from_power(qk, p)).collect()
}

/// Evaluates the q-Bézier representation with coefficients `net` at `p`.
///
/// Works for scalars and for points (componentwise). Points outside the
/// parameter triangle are accepted; there the weights may be negative.
pub fn evaluate<T: NetValue>(net: &TriangularNet<T>, p: DomainPoint, q: QParam) -> T {
    let n = net.degree();
    if n == 0 {
        return net.values()[0];
    }
    let weights = level_weights(n, p, q);
    let mut layer = reduce(net, &weights);
    while layer.degree() > 0 {
        layer = reduce(&layer, &weights);
    }
    layer.values()[0]
}

/// All intermediate layers `f(0), ..., f(n)` of an evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Tableau<T> {
    layers: Vec<TriangularNet<T>>,
}

impl<T: NetValue> Tableau<T> {
    /// Layer `r`, a net of degree `n - r`.
    pub fn layer(&self, r: usize) -> &TriangularNet<T> {
        &self.layers[r]
    }

    pub fn layers(&self) -> &[TriangularNet<T>] {
        &self.layers
    }

    /// Number of reduction steps `n`.
    pub fn steps(&self) -> usize {
        self.layers.len() - 1
    }

    /// The single entry of the last layer.
    pub fn result(&self) -> T {
        self.layers.last().expect("tableau has a first layer").values()[0]
    }
}

/// Like [`evaluate`], keeping every layer. The final entry is bit-identical to
/// the value returned by [`evaluate`].
pub fn evaluate_with_tableau<T: NetValue>(
    net: &TriangularNet<T>,
    p: DomainPoint,
    q: QParam,
) -> Tableau<T> {
    let weights = level_weights(net.degree(), p, q);
    let mut layers = Vec::with_capacity(net.degree() + 1);
    layers.push(net.clone());
    while layers.last().unwrap().degree() > 0 {
        let next = reduce(layers.last().unwrap(), &weights);
        layers.push(next);
    }
    Tableau { layers }
}

/// Evaluates a univariate q-Bézier polynomial `sum c_i qbinom(n,i) t^i prod_{s<n-i}(1 - q^s t)`
/// by running the triangular algorithm on an edge (`v = 0`). `coeffs[i]` is
/// the coefficient of the `i`-th univariate basis function.
///
/// # Panics
/// If `coeffs` is empty.
pub fn evaluate_univariate<T: NetValue>(coeffs: &[T], t: f64, q: QParam) -> T {
    assert!(!coeffs.is_empty(), "need at least one coefficient");
    let n = coeffs.len() - 1;
    // layer[k] holds the entry with k "w-steps"; i = degree - k
    let mut layer: Vec<T> = coeffs.iter().rev().copied().collect();
    let p = DomainPoint::new(t, 0.0);
    let weights = level_weights(n, p, q);
    for d in (1..=n).rev() {
        layer = (0..d)
            .map(|k| {
                let (wu, _, ww) = weights[k];
                layer[k] * wu + layer[k + 1] * ww
            })
            .collect();
    }
    layer[0]
}
