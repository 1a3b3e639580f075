//! Degree elevation and conversion of monomials `x^a y^b` into q-Bernstein nets.

use nalgebra::{DMatrix, DVector};

use crate::decasteljau::NetValue;
use crate::error::{Error, Result};
use crate::net::{net_len, CoefficientNet, TriangularNet};
use crate::qcore::{q_integer, QParam};
use crate::tribasis::DomainPoint;

/// A point of the Cartesian plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }
}

/// A nondegenerate triangle `<T1, T2, T3>` of the Cartesian plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleGeometry {
    vertices: [Point2; 3],
}

impl TriangleGeometry {
    pub fn new(t1: Point2, t2: Point2, t3: Point2) -> Result<Self> {
        let g = TriangleGeometry { vertices: [t1, t2, t3] };
        let area = g.signed_area();
        if area == 0.0 || !area.is_finite() {
            return Err(Error::Domain(format!(
                "degenerate triangle {t1:?}, {t2:?}, {t3:?}"
            )));
        }
        Ok(g)
    }

    /// `T1 = (1,0)`, `T2 = (0,1)`, `T3 = (0,0)`: here `x = u` and `y = v`.
    pub fn reference() -> Self {
        TriangleGeometry {
            vertices: [Point2::new(1.0, 0.0), Point2::new(0.0, 1.0), Point2::new(0.0, 0.0)],
        }
    }

    pub fn vertices(&self) -> [Point2; 3] {
        self.vertices
    }

    pub fn signed_area(&self) -> f64 {
        let [a, b, c] = self.vertices;
        0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y))
    }

    /// `u T1 + v T2 + (1 - u - v) T3`.
    pub fn to_cartesian(&self, p: DomainPoint) -> Point2 {
        let [a, b, c] = self.vertices;
        let w = p.w();
        Point2::new(p.u * a.x + p.v * b.x + w * c.x, p.u * a.y + p.v * b.y + w * c.y)
    }

    /// Barycentric coordinates of `point`, from the 2x2 system
    /// `point - T3 = u (T1 - T3) + v (T2 - T3)`.
    pub fn barycentric(&self, point: Point2) -> DomainPoint {
        let [a, b, c] = self.vertices;
        let (e1x, e1y) = (a.x - c.x, a.y - c.y);
        let (e2x, e2y) = (b.x - c.x, b.y - c.y);
        let (rx, ry) = (point.x - c.x, point.y - c.y);
        let det = e1x * e2y - e2x * e1y;
        DomainPoint::new((rx * e2y - e2x * ry) / det, (e1x * ry - rx * e1y) / det)
    }
}

/// `i / (i + j)`, taken as zero when both vanish.
#[inline]
fn share(a: usize, i: usize, j: usize) -> f64 {
    if i + j == 0 {
        0.0
    } else {
        a as f64 / (i + j) as f64
    }
}

/// Degree-raising step shared by elevation and monomial multiplication:
///
/// ```text
/// out_ijk = [n+1-k]/[n+1] * i/(i+j) * wu(k) * b_{i-1,j,k}
///         + [n+1-k]/[n+1] * j/(i+j) * wv(k) * b_{i,j-1,k}
///         + [k]/[n+1]     * ww      * b_{i,j,k-1}
/// ```
fn raise<T: NetValue>(
    net: &TriangularNet<T>,
    q: QParam,
    wu: impl Fn(usize) -> f64,
    wv: impl Fn(usize) -> f64,
    ww: f64,
) -> TriangularNet<T> {
    let n = net.degree();
    let qint: Vec<f64> = (0..=n + 1).map(|r| q_integer(r, q)).collect();
    let top = qint[n + 1];
    TriangularNet::from_fn(n + 1, |t| {
        let lead = qint[n + 1 - t.k] / top;
        let mut terms: Vec<T> = Vec::with_capacity(3);
        if let Some(s) = t.dec_i() {
            terms.push(net[s] * (lead * share(t.i, t.i, t.j) * wu(t.k)));
        }
        if let Some(s) = t.dec_j() {
            terms.push(net[s] * (lead * share(t.j, t.i, t.j) * wv(t.k)));
        }
        if let Some(s) = t.dec_k() {
            terms.push(net[s] * (qint[t.k] / top * ww));
        }
        let mut it = terms.into_iter();
        let first = it.next().expect("every triple has a nonnegative predecessor");
        it.fold(first, |acc, x| acc + x)
    })
    .expect("elevated degree within range")
}

/// Rewrites a degree-`n` representation in the degree-`n + 1` basis.
///
/// # Panics
/// If `n + 1` exceeds the maximum degree.
pub fn degree_elevate<T: NetValue>(net: &TriangularNet<T>, q: QParam) -> TriangularNet<T> {
    let pw = q.powers(net.degree() + 1);
    raise(net, q, |k| pw[k], |k| pw[k], 1.0)
}

/// Elevates `net` one degree at a time until it has degree `target`.
pub fn elevate_to<T: NetValue>(
    net: &TriangularNet<T>,
    target: usize,
    q: QParam,
) -> Result<TriangularNet<T>> {
    if target < net.degree() {
        return Err(Error::Range(format!(
            "cannot elevate degree {} to lower degree {target}",
            net.degree()
        )));
    }
    crate::qcore::check_degree(target)?;
    let mut out = net.clone();
    while out.degree() < target {
        out = degree_elevate(&out, q);
    }
    Ok(out)
}

/// Multiplies the represented polynomial by the coordinate function with
/// vertex values `c = (c1, c2, c3)`, i.e. by `c1 u + c2 v + c3 (1 - u - v)`,
/// raising the degree by one.
fn multiply_by_linear(net: &CoefficientNet, c: [f64; 3], q: QParam) -> CoefficientNet {
    let pw = q.powers(net.degree() + 1);
    let [c1, c2, c3] = c;
    raise(net, q, |k| c1 - c3 + pw[k] * c3, |k| c2 - c3 + pw[k] * c3, c3)
}

/// q-Bernstein net of degree `n` representing `x^alpha y^beta`, where `(x, y)`
/// is the Cartesian point with barycentric coordinates `(u, v)` in `geom`.
///
/// The net is grown from the constant 1 by multiplying by `x` `alpha` times
/// and then by `y` `beta` times, and is finally elevated to degree `n`.
pub fn monomial_to_qbernstein(
    alpha: usize,
    beta: usize,
    n: usize,
    geom: &TriangleGeometry,
    q: QParam,
) -> Result<CoefficientNet> {
    if alpha + beta > n {
        return Err(Error::Range(format!(
            "monomial degree {} exceeds target degree {n}",
            alpha + beta
        )));
    }
    crate::qcore::check_degree(n)?;
    let [t1, t2, t3] = geom.vertices();
    let xs = [t1.x, t2.x, t3.x];
    let ys = [t1.y, t2.y, t3.y];
    let mut net = CoefficientNet::constant(0, 1.0)?;
    for _ in 0..alpha {
        net = multiply_by_linear(&net, xs, q);
    }
    for _ in 0..beta {
        net = multiply_by_linear(&net, ys, q);
    }
    elevate_to(&net, n, q)
}

/// Exponent pairs `(alpha, beta)` with `alpha + beta <= n`, by total degree
/// then descending `alpha`.
pub fn monomial_exponents(n: usize) -> Vec<(usize, usize)> {
    (0..=n)
        .flat_map(|d| (0..=d).rev().map(move |a| (a, d - a)))
        .collect()
}

/// Square matrix whose columns are the q-Bernstein nets of every monomial of
/// total degree at most `n` (columns follow [`monomial_exponents`], rows the
/// canonical index order).
pub fn monomial_conversion_matrix(
    n: usize,
    geom: &TriangleGeometry,
    q: QParam,
) -> Result<DMatrix<f64>> {
    let exps = monomial_exponents(n);
    let mut m = DMatrix::zeros(net_len(n), exps.len());
    for (col, &(a, b)) in exps.iter().enumerate() {
        let net = monomial_to_qbernstein(a, b, n, geom, q)?;
        m.set_column(col, &DVector::from_column_slice(net.values()));
    }
    Ok(m)
}

/// Result of the spanning check for the monomial conversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpanningReport {
    pub degree: usize,
    pub dimension: usize,
    /// Smallest singular value after scaling every column to unit 2-norm.
    pub min_singular_value: f64,
    pub max_singular_value: f64,
}

impl SpanningReport {
    pub fn full_rank(&self, threshold: f64) -> bool {
        self.min_singular_value > threshold
    }
}

/// Singular-value margin of [`monomial_conversion_matrix`] with unit-norm columns.
/// A margin bounded away from zero shows that the degree-`n` q-Bernstein
/// functions span all polynomials of degree at most `n`.
pub fn spanning_check(n: usize, geom: &TriangleGeometry, q: QParam) -> Result<SpanningReport> {
    let mut m = monomial_conversion_matrix(n, geom, q)?;
    for mut col in m.column_iter_mut() {
        let norm = col.norm();
        if norm > 0.0 {
            col /= norm;
        }
    }
    let sv = m.singular_values();
    Ok(SpanningReport {
        degree: n,
        dimension: sv.len(),
        min_singular_value: sv.min(),
        max_singular_value: sv.max(),
    })
}
