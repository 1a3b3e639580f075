//! Reference implementations written independently of the library, plus
//! seeded sampling helpers.

#![allow(dead_code)]

use qbezier::{CoefficientNet, DomainPoint, MultiIndex3, Point3, QParam};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const Q_SWEEP: [f64; 4] = [0.1, 0.5, 0.9, 1.0];

pub fn qp(q: f64) -> QParam {
    QParam::new(q).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Uniform point in the closed parameter triangle.
pub fn random_point(rng: &mut StdRng) -> DomainPoint {
    let (mut u, mut v): (f64, f64) = (rng.gen(), rng.gen());
    if u + v > 1.0 {
        u = 1.0 - u;
        v = 1.0 - v;
    }
    DomainPoint::new(u, v)
}

pub fn random_points(rng: &mut StdRng, count: usize) -> Vec<DomainPoint> {
    (0..count).map(|_| random_point(rng)).collect()
}

pub fn random_net(rng: &mut StdRng, n: usize) -> CoefficientNet {
    CoefficientNet::from_fn(n, |_| rng.gen_range(-1.0..1.0)).unwrap()
}

pub fn random_point_net(rng: &mut StdRng, n: usize) -> qbezier::ControlNet3D {
    qbezier::ControlNet3D::from_fn(n, |_| {
        Point3::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
    })
    .unwrap()
}

/// Triples of degree `n` in descending-i, descending-j order.
pub fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in (0..=n).rev() {
        for j in (0..=n - i).rev() {
            out.push((i, j, n - i - j));
        }
    }
    out
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|x| x as f64).product()
}

/// Classical triangular Bernstein polynomial from factorials.
pub fn classical_bernstein(i: usize, j: usize, k: usize, u: f64, v: f64) -> f64 {
    let n = i + j + k;
    let w = 1.0 - u - v;
    factorial(n) / (factorial(i) * factorial(j) * factorial(k))
        * u.powi(i as i32)
        * v.powi(j as i32)
        * w.powi(k as i32)
}

/// Gaussian binomial by the q-Pascal rule `[n,k] = [n-1,k-1] + q^k [n-1,k]`.
pub fn gauss_binomial(n: usize, k: usize, q: f64) -> f64 {
    if k > n {
        return 0.0;
    }
    let mut row = vec![1.0];
    for m in 1..=n {
        let mut next = vec![1.0; m + 1];
        for r in 1..m {
            next[r] = row[r - 1] + q.powi(r as i32) * row[r];
        }
        row = next;
    }
    row[k]
}

fn pascal(n: usize, k: usize) -> f64 {
    gauss_binomial(n, k, 1.0)
}

/// Triangular q-Bernstein function from its product form, using the
/// q-Pascal binomial.
pub fn q_bernstein(i: usize, j: usize, k: usize, u: f64, v: f64, q: f64) -> f64 {
    let n = i + j + k;
    let mut tail = 1.0;
    for s in 0..k {
        let qs = q.powi(s as i32);
        tail *= 1.0 - qs * u - qs * v;
    }
    gauss_binomial(n, k, q) * pascal(i + j, i) * u.powi(i as i32) * v.powi(j as i32) * tail
}

/// Direct summation of a coefficient net against the q-Bernstein functions.
pub fn direct_sum(net: &CoefficientNet, p: DomainPoint, q: f64) -> f64 {
    net.iter()
        .map(|(t, &b)| b * q_bernstein(t.i, t.j, t.k, p.u, p.v, q))
        .sum()
}

/// Classical triangular de Casteljau; returns every layer as a map from
/// triples to values, in the same canonical order.
pub fn classical_de_casteljau(values: &[f64], n: usize, u: f64, v: f64) -> Vec<Vec<f64>> {
    let w = 1.0 - u - v;
    let at = |layer: &Vec<f64>, d: usize, i: usize, j: usize| {
        let pos = triples(d).iter().position(|&t| t == (i, j, d - i - j)).unwrap();
        layer[pos]
    };
    let mut layers = vec![values.to_vec()];
    for d in (0..n).rev() {
        let prev = layers.last().unwrap();
        let next: Vec<f64> = triples(d)
            .into_iter()
            .map(|(i, j, _)| u * at(prev, d + 1, i + 1, j) + v * at(prev, d + 1, i, j + 1) + w * at(prev, d + 1, i, j))
            .collect();
        layers.push(next);
    }
    layers
}

/// Classical degree elevation `b'_ijk = (i b_{i-1jk} + j b_{ij-1k} + k b_{ijk-1}) / (n + 1)`.
pub fn classical_elevate(values: &[f64], n: usize) -> Vec<f64> {
    let lookup = |i: usize, j: usize| {
        let pos = triples(n).iter().position(|&t| t == (i, j, n - i - j)).unwrap();
        values[pos]
    };
    let m = n + 1;
    triples(m)
        .into_iter()
        .map(|(i, j, k)| {
            let mut acc = 0.0;
            if i > 0 {
                acc += i as f64 * lookup(i - 1, j);
            }
            if j > 0 {
                acc += j as f64 * lookup(i, j - 1);
            }
            if k > 0 {
                acc += k as f64 * lookup(i, j);
            }
            acc / m as f64
        })
        .collect()
}

/// Univariate q-Bernstein sum `sum c_i [n,i] t^i prod_{s<n-i} (1 - q^s t)`.
pub fn univariate_q_bernstein(coeffs: &[f64], t: f64, q: f64) -> f64 {
    let n = coeffs.len() - 1;
    coeffs
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let tail: f64 = (0..n - i).map(|s| 1.0 - q.powi(s as i32) * t).product();
            c * gauss_binomial(n, i, q) * t.powi(i as i32) * tail
        })
        .sum()
}

pub fn idx(i: usize, j: usize, k: usize) -> MultiIndex3 {
    MultiIndex3::new(i, j, k)
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    if b == 0.0 { (a - b).abs() } else { (a - b).abs() / b.abs() }
}
