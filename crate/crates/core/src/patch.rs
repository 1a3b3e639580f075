//! q-Bézier triangular patches `Q(u, v) = sum P_ijk B^n_ijk(u, v)` with control
//! points in R^3, evaluated componentwise by corner cutting.

use std::fmt::{self, Write as _};
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decasteljau::evaluate;
use crate::elevation::{Point2, TriangleGeometry};
use crate::error::{Error, Result};
use crate::net::TriangularNet;
use crate::qcore::QParam;
use crate::tribasis::{barycentric_grid, DomainPoint, MultiIndex3};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, o: Point3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Point3) -> Point3 {
        Point3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }
}

impl From<[f64; 3]> for Point3 {
    fn from([x, y, z]: [f64; 3]) -> Self {
        Point3::new(x, y, z)
    }
}

impl From<Point3> for [f64; 3] {
    fn from(p: Point3) -> Self {
        p.to_array()
    }
}

impl Add for Point3 {
    type Output = Point3;
    fn add(self, o: Point3) -> Point3 {
        Point3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Point3 {
    type Output = Point3;
    fn sub(self, o: Point3) -> Point3 {
        Point3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Point3 {
    type Output = Point3;
    fn mul(self, s: f64) -> Point3 {
        Point3::new(self.x * s, self.y * s, self.z * s)
    }
}

/// Control points `P_ijk` of a patch.
pub type ControlNet3D = TriangularNet<Point3>;

/// Barycentric coordinates of `point` relative to `geom`.
pub fn barycentric_from_cartesian(geom: &TriangleGeometry, point: Point2) -> DomainPoint {
    geom.barycentric(point)
}

/// Evaluates the patch at `p`.
pub fn patch_eval(net: &ControlNet3D, p: DomainPoint, q: QParam) -> Point3 {
    evaluate(net, p, q)
}

/// A side of the parameter triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Edge {
    /// `v = 0`, from `P_00n` (t = 0) to `P_n00` (t = 1).
    V0,
    /// `u = 0`, from `P_00n` (t = 0) to `P_0n0` (t = 1).
    U0,
    /// `w = 0`, from `P_0n0` (t = 0) to `P_n00` (t = 1).
    W0,
}

impl Edge {
    pub fn point(self, t: f64) -> DomainPoint {
        match self {
            Edge::V0 => DomainPoint::new(t, 0.0),
            Edge::U0 => DomainPoint::new(0.0, t),
            Edge::W0 => DomainPoint::new(t, 1.0 - t),
        }
    }
}

impl FromStr for Edge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "v=0" | "v0" => Ok(Edge::V0),
            "u=0" | "u0" => Ok(Edge::U0),
            "w=0" | "w0" => Ok(Edge::W0),
            other => Err(Error::Domain(format!(
                "unknown edge {other:?} (expected v=0, u=0 or w=0)"
            ))),
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Edge::V0 => "v=0",
            Edge::U0 => "u=0",
            Edge::W0 => "w=0",
        })
    }
}

/// The boundary curve of the patch on `edge` at parameter `t`.
pub fn boundary_curve(net: &ControlNet3D, edge: Edge, t: f64, q: QParam) -> Point3 {
    patch_eval(net, edge.point(t), q)
}

/// A triangle mesh sampled from a patch.
#[derive(Debug, Clone, PartialEq)]
pub struct TessellationMesh {
    pub vertices: Vec<Point3>,
    /// Zero-based vertex indices.
    pub faces: Vec<[usize; 3]>,
    pub params: Vec<DomainPoint>,
}

impl TessellationMesh {
    /// Wavefront OBJ text: `v x y z` per vertex, then `f a b c` (1-based) per face.
    pub fn to_obj(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            writeln!(out, "v {} {} {}", v.x, v.y, v.z).unwrap();
        }
        for f in &self.faces {
            writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1).unwrap();
        }
        out
    }
}

/// Offset of grid node `(a, b)` in [`barycentric_grid`] order.
fn grid_offset(m: usize, a: usize, b: usize) -> usize {
    // rows a' < a contribute (m - a' + 1) nodes each
    a * (m + 1) - a * (a.saturating_sub(1)) / 2 + b
}

/// Faces of the resolution-`m` grid: per cell an upward triangle
/// `(a,b), (a+1,b), (a,b+1)` and, where it fits, a downward triangle
/// `(a+1,b), (a+1,b+1), (a,b+1)`.
pub fn grid_faces(m: usize) -> Vec<[usize; 3]> {
    let mut faces = Vec::with_capacity(m * m);
    for a in 0..m {
        for b in 0..m - a {
            faces.push([
                grid_offset(m, a, b),
                grid_offset(m, a + 1, b),
                grid_offset(m, a, b + 1),
            ]);
            if a + b + 2 <= m {
                faces.push([
                    grid_offset(m, a + 1, b),
                    grid_offset(m, a + 1, b + 1),
                    grid_offset(m, a, b + 1),
                ]);
            }
        }
    }
    faces
}

/// Samples the patch on the uniform barycentric grid of resolution `m`:
/// `(m+1)(m+2)/2` vertices and `m^2` faces.
///
/// # Panics
/// If `m == 0`.
pub fn tessellate(net: &ControlNet3D, q: QParam, m: usize) -> TessellationMesh {
    let params = barycentric_grid(m);
    let vertices = params.par_iter().map(|&p| patch_eval(net, p, q)).collect();
    TessellationMesh {
        vertices,
        faces: grid_faces(m),
        params,
    }
}

/// Whether `x` lies in the convex hull of `points`, allowing `slack` in the
/// direction of every candidate supporting plane.
///
/// Candidate normals are the facet normals of the hull (cross products of
/// point differences), and for planar or collinear point sets the normals of
/// the lower-dimensional hull's sides, so the test is exact up to `slack`.
pub fn convex_hull_contains(points: &[Point3], x: Point3, slack: f64) -> bool {
    let Some(&origin) = points.first() else {
        return false;
    };
    let scale = points
        .iter()
        .map(|p| (*p - origin).norm())
        .fold(0.0, f64::max);
    let tiny = 1e-12 * scale.max(1.0);

    let mut diffs: Vec<Point3> = Vec::new();
    for (a, &p) in points.iter().enumerate() {
        for &r in &points[a + 1..] {
            let d = r - p;
            if d.norm() > tiny {
                diffs.push(d);
            }
        }
    }

    let mut normals: Vec<Point3> = Vec::new();
    for (a, &d1) in diffs.iter().enumerate() {
        for &d2 in &diffs[a + 1..] {
            let c = d1.cross(d2);
            if c.norm() > tiny * tiny {
                normals.push(c);
            }
        }
    }
    let axes = [
        Point3::new(1.0, 0.0, 0.0),
        Point3::new(0.0, 1.0, 0.0),
        Point3::new(0.0, 0.0, 1.0),
    ];
    if let Some(&plane) = normals.first() {
        if normals.iter().all(|c| c.cross(plane).norm() <= 1e-9 * c.norm() * plane.norm()) {
            // planar set: sides of the polygon lie in planes containing `plane`
            let extra: Vec<_> = diffs.iter().map(|&d| plane.cross(d)).collect();
            normals.extend(extra);
        }
    } else {
        // collinear or single point
        for &d in &diffs {
            normals.push(d);
            normals.extend(axes.iter().map(|&e| d.cross(e)));
        }
    }
    normals.extend(axes);
    normals.extend(diffs);

    normals.into_iter().all(|nrm| {
        let len = nrm.norm();
        if len == 0.0 {
            return true;
        }
        let unit = nrm * (1.0 / len);
        let hi = points.iter().map(|p| unit.dot(*p)).fold(f64::NEG_INFINITY, f64::max);
        let lo = points.iter().map(|p| unit.dot(*p)).fold(f64::INFINITY, f64::min);
        let t = unit.dot(x);
        t <= hi + slack && t >= lo - slack
    })
}

/// Two cubic control nets used as running examples and regression fixtures.
pub mod samples {
    use super::*;

    fn cubic(points: [((usize, usize, usize), [f64; 3]); 10]) -> ControlNet3D {
        ControlNet3D::from_entries(
            3,
            points
                .into_iter()
                .map(|((i, j, k), p)| (MultiIndex3::new(i, j, k), Point3::from(p))),
        )
        .expect("complete cubic net")
    }

    /// A cubic net with two raised mid-edge points.
    pub fn cubic_patch_a() -> ControlNet3D {
        cubic([
            ((3, 0, 0), [0.0, 0.0, 0.0]),
            ((2, 1, 0), [0.0, 1.0 / 3.0, 0.0]),
            ((1, 2, 0), [0.0, 2.0 / 3.0, 0.5]),
            ((0, 3, 0), [0.0, 1.0, 1.0]),
            ((2, 0, 1), [1.0 / 3.0, 0.0, 0.0]),
            ((1, 1, 1), [1.0 / 3.0, 1.0 / 3.0, 0.0]),
            ((0, 2, 1), [1.0 / 3.0, 2.0 / 3.0, 0.0]),
            ((1, 0, 2), [2.0 / 3.0, 0.0, 0.5]),
            ((0, 1, 2), [2.0 / 3.0, 1.0 / 3.0, 0.0]),
            ((0, 0, 3), [1.0, 0.0, 1.0]),
        ])
    }

    /// A more strongly undulating cubic net.
    pub fn cubic_patch_b() -> ControlNet3D {
        cubic([
            ((3, 0, 0), [0.0, 0.0, 0.0]),
            ((2, 1, 0), [0.0, 1.0 / 3.0, 1.0]),
            ((1, 2, 0), [0.0, 2.0 / 3.0, 0.0]),
            ((0, 3, 0), [0.0, 1.0, 1.0]),
            ((2, 0, 1), [1.0 / 3.0, 0.0, 1.0]),
            ((1, 1, 1), [1.0 / 3.0, 1.0 / 3.0, 0.0]),
            ((0, 2, 1), [1.0 / 3.0, 2.0 / 3.0, 2.0]),
            ((1, 0, 2), [2.0 / 3.0, 0.0, 0.0]),
            ((0, 1, 2), [2.0 / 3.0, 1.0 / 3.0, 0.0]),
            ((0, 0, 3), [1.0, 0.0, 1.0]),
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::samples::cubic_patch_a;
    use super::*;
    use crate::decasteljau::evaluate_univariate;

    fn q(x: f64) -> QParam {
        QParam::new(x).unwrap()
    }

    #[test]
    fn corners_of_sample_net() {
        let net = cubic_patch_a();
        for &qv in &[0.1, 0.5, 1.0] {
            assert_eq!(patch_eval(&net, DomainPoint::new(0.0, 1.0), q(qv)), Point3::new(0.0, 1.0, 1.0));
            assert_eq!(patch_eval(&net, DomainPoint::new(1.0, 0.0), q(qv)), Point3::new(0.0, 0.0, 0.0));
            assert_eq!(patch_eval(&net, DomainPoint::new(0.0, 0.0), q(qv)), Point3::new(1.0, 0.0, 1.0));
        }
    }

    #[test]
    fn single_point_net() {
        let c = Point3::new(0.3, -2.0, 7.5);
        let net = ControlNet3D::constant(4, c).unwrap();
        for p in barycentric_grid(5) {
            let x = patch_eval(&net, p, q(0.4));
            assert!((x - c).norm() < 1e-14);
        }
    }

    #[test]
    fn edges() {
        let net = cubic_patch_a();
        let qp = q(0.5);
        assert_eq!(boundary_curve(&net, Edge::V0, 0.0, qp), net[MultiIndex3::new(0, 0, 3)]);
        assert_eq!(boundary_curve(&net, Edge::V0, 1.0, qp), net[MultiIndex3::new(3, 0, 0)]);
        assert_eq!(boundary_curve(&net, Edge::U0, 1.0, qp), net[MultiIndex3::new(0, 3, 0)]);
        assert_eq!(boundary_curve(&net, Edge::W0, 0.0, qp), net[MultiIndex3::new(0, 3, 0)]);
        let expect = evaluate_univariate(&net.edge_v0(), 0.5, qp);
        let got = boundary_curve(&net, Edge::V0, 0.5, qp);
        assert!((got - expect).norm() < 1e-15);
        assert_eq!(got, patch_eval(&net, DomainPoint::new(0.5, 0.0), qp));
        assert!("diagonal".parse::<Edge>().is_err());
        assert_eq!("w=0".parse::<Edge>().unwrap(), Edge::W0);
    }

    #[test]
    fn collinear_edge_stays_on_segment() {
        let net = ControlNet3D::from_fn(3, |t| {
            if t.j == 0 {
                Point3::new(t.i as f64, 2.0 * t.i as f64, -(t.i as f64))
            } else {
                Point3::new(5.0, t.j as f64, 1.0)
            }
        })
        .unwrap();
        for &t in &[0.1, 0.4, 0.8] {
            let x = boundary_curve(&net, Edge::V0, t, q(0.3));
            assert!((x.y - 2.0 * x.x).abs() < 1e-14 && (x.z + x.x).abs() < 1e-14);
            assert!(x.x >= 0.0 && x.x <= 3.0);
        }
    }

    #[test]
    fn mesh_counts() {
        let net = cubic_patch_a();
        let mesh = tessellate(&net, q(0.5), 1);
        assert_eq!(mesh.vertices.len(), 3);
        assert_eq!(mesh.faces, vec![[0, 2, 1]]);
        let mesh = tessellate(&net, q(0.5), 4);
        assert_eq!(mesh.vertices.len(), 15);
        assert_eq!(mesh.faces.len(), 16);
        for m in 1..12 {
            let faces = grid_faces(m);
            assert_eq!(faces.len(), m * m);
            let nv = (m + 1) * (m + 2) / 2;
            assert!(faces.iter().flatten().all(|&i| i < nv));
        }
    }

    #[test]
    fn grid_offsets_match_grid_order() {
        for m in 1..9 {
            let grid = barycentric_grid(m);
            for a in 0..=m {
                for b in 0..=m - a {
                    let p = grid[grid_offset(m, a, b)];
                    assert_eq!((p.u, p.v), (a as f64 / m as f64, b as f64 / m as f64));
                }
            }
        }
    }

    #[test]
    fn obj_text() {
        let net = ControlNet3D::from_vec(
            1,
            vec![Point3::new(1.0, 0.0, 0.0), Point3::new(0.0, 1.0, 0.0), Point3::new(0.0, 0.0, 0.5)],
        )
        .unwrap();
        let obj = tessellate(&net, q(0.5), 1).to_obj();
        assert_eq!(obj, "v 0 0 0.5\nv 0 1 0\nv 1 0 0\nf 1 3 2\n");
    }

    #[test]
    fn flat_net_gives_flat_mesh() {
        let net = ControlNet3D::from_fn(4, |t| Point3::new(t.i as f64 / 4.0, t.j as f64 / 4.0, 0.0)).unwrap();
        let mesh = tessellate(&net, QParam::ONE, 6);
        assert!(mesh.vertices.iter().all(|v| v.z == 0.0));
    }

    #[test]
    fn hull_membership() {
        let tet = [
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(0.0, 1.0, 0.0),
            Point3::new(0.0, 0.0, 1.0),
        ];
        assert!(convex_hull_contains(&tet, Point3::new(0.2, 0.2, 0.2), 1e-12));
        assert!(!convex_hull_contains(&tet, Point3::new(0.4, 0.4, 0.4), 1e-12));
        let tri = &tet[..3];
        assert!(convex_hull_contains(tri, Point3::new(0.3, 0.3, 0.0), 1e-12));
        assert!(!convex_hull_contains(tri, Point3::new(0.3, 0.3, 1e-6), 1e-12));
        assert!(!convex_hull_contains(tri, Point3::new(0.6, 0.6, 0.0), 1e-12));
        let seg = [Point3::new(0.0, 0.0, 0.0), Point3::new(1.0, 1.0, 1.0)];
        assert!(convex_hull_contains(&seg, Point3::new(0.5, 0.5, 0.5), 1e-12));
        assert!(!convex_hull_contains(&seg, Point3::new(0.5, 0.5, 0.6), 1e-12));
        assert!(!convex_hull_contains(&seg, Point3::new(1.1, 1.1, 1.1), 1e-12));
    }
}
