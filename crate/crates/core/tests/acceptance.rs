//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::*;
use qbezier::cli::{cmd_tessellate, LoadedNet};
use qbezier::elevation::{monomial_exponents, monomial_to_qbernstein, spanning_check};
use qbezier::patch::{convex_hull_contains, samples};
use qbezier::stability::product_expansion;
use qbezier::tribasis::{basis_all_rec_a, basis_all_rec_b, bernstein_eval_all};
use qbezier::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn partition_of_unity() -> Outcome {
    let mut r = rng(1);
    let mut worst = 0.0f64;
    for n in 1..=8 {
        for &q in &Q_SWEEP {
            for p in random_points(&mut r, 100) {
                let sum: f64 = basis_eval_all(n, p, qp(q)).values().iter().sum();
                worst = worst.max((sum - 1.0).abs());
            }
        }
    }
    outcome(worst <= 1e-12, format!("max |sum - 1| = {worst:.2e}"))
}

fn corner_cutting_correct() -> Outcome {
    let mut r = rng(2);
    let mut worst = 0.0f64;
    for n in 0..=8 {
        for &q in &Q_SWEEP {
            for _ in 0..20 {
                let net = random_net(&mut r, n);
                let p = random_point(&mut r);
                let got = evaluate(&net, p, qp(q));
                let want = direct_sum(&net, p, q);
                worst = worst.max(rel_err(got, want));
            }
        }
    }
    outcome(worst <= 1e-12, format!("max relative error = {worst:.2e}"))
}

fn three_paths_agree() -> Outcome {
    let mut r = rng(3);
    let mut worst = 0.0f64;
    for n in 0..=8 {
        for &q in &Q_SWEEP {
            for p in random_points(&mut r, 20) {
                let q = qp(q);
                let (a, b, c) = (basis_eval_all(n, p, q), basis_all_rec_a(n, p, q), basis_all_rec_b(n, p, q));
                for t in MultiIndex3::triples(n) {
                    let d = basis_eval_direct(t, p, q);
                    for x in [a[t], b[t], c[t]] {
                        worst = worst.max(rel_err(x, d));
                    }
                }
            }
        }
    }
    outcome(worst <= 1e-10, format!("max relative discrepancy = {worst:.2e}"))
}

fn weights_convex() -> Outcome {
    let mut r = rng(4);
    let points = random_points(&mut r, 1000);
    let mut worst_sum = 0.0f64;
    let mut negative = 0usize;
    for &q in &Q_SWEEP {
        for k in 0..=10 {
            for &p in &points {
                let (a, b, c) = convex_weights(k, p, qp(q));
                if a < 0.0 || b < 0.0 || c < 0.0 {
                    negative += 1;
                }
                worst_sum = worst_sum.max((a + b + c - 1.0).abs());
            }
        }
    }
    outcome(
        negative == 0 && worst_sum <= 1e-15,
        format!("negative weights = {negative}, max |sum - 1| = {worst_sum:.2e}"),
    )
}

fn elevation_invariant() -> Outcome {
    let mut r = rng(5);
    let mut worst = 0.0f64;
    for n in 0..=7 {
        for &q in &Q_SWEEP {
            let q = qp(q);
            for _ in 0..5 {
                let net = random_net(&mut r, n);
                let once = degree_elevate(&net, q);
                let thrice = elevate_to(&net, n + 3, q).unwrap();
                for p in random_points(&mut r, 10) {
                    let f = evaluate(&net, p, q);
                    for up in [&once, &thrice] {
                        worst = worst.max((evaluate(up, p, q) - f).abs() / (1.0 + f.abs()));
                    }
                }
            }
        }
    }
    outcome(worst <= 1e-11, format!("max scaled error = {worst:.2e}"))
}

fn elevation_weights() -> Outcome {
    let mut worst = 0.0f64;
    for &q in &Q_SWEEP {
        let q = qp(q);
        for m in 1..=12 {
            let n = m - 1;
            for k in 0..=m {
                let lhs = q_integer(k, q) + q.pow(k) * q_integer(n + 1 - k, q);
                worst = worst.max((lhs - q_integer(m, q)).abs());
            }
        }
    }
    outcome(worst <= 1e-14, format!("max identity error = {worst:.2e}"))
}

fn nonnegative_change_of_basis() -> Outcome {
    let mut negative = 0usize;
    for &q in &Q_SWEEP {
        for rdeg in 0..=12 {
            negative += product_expansion(rdeg, qp(q)).unwrap().values().iter().filter(|&&c| c < 0.0).count();
        }
    }
    let mut r = rng(7);
    let mut worst = 0.0f64;
    for n in 0..=6 {
        for &q in &Q_SWEEP {
            let a = qbernstein_to_bernstein_matrix(n, qp(q)).unwrap();
            negative += a.matrix().iter().filter(|&&x| x < 0.0).count();
            for p in random_points(&mut r, 20) {
                let classical = bernstein_eval_all(n, p);
                for col in MultiIndex3::triples(n) {
                    let via: f64 = MultiIndex3::triples(n).map(|row| a.get(row, col) * classical[row]).sum();
                    worst = worst.max((via - basis_eval_direct(col, p, qp(q))).abs());
                }
            }
        }
    }
    outcome(
        negative == 0 && worst <= 1e-12,
        format!("negative entries = {negative}, max column reproduction error = {worst:.2e}"),
    )
}

fn conditioning_order() -> Outcome {
    let mut r = rng(8);
    let mut worst = 0.0f64;
    let mut violations = 0usize;
    for &q in &[0.3, 0.7] {
        for _ in 0..20 {
            let net = random_net(&mut r, 4);
            let points = random_points(&mut r, 50);
            let report = compare_conditioning(&net, qp(q), &points, qbezier::stability::DEFAULT_SUP_RESOLUTION).unwrap();
            for pc in &report.points {
                let (b, qc) = (pc.cond_bernstein.unwrap(), pc.cond_q.unwrap());
                if b > qc * (1.0 + 1e-10) {
                    violations += 1;
                }
                worst = worst.max(pc.ratio().unwrap());
            }
        }
    }
    outcome(violations == 0, format!("violations = {violations}, max ratio = {worst:.17}"))
}

fn spanning_and_monomials() -> Outcome {
    let geom = TriangleGeometry::reference();
    let mut r = rng(9);
    let points = random_points(&mut r, 50);
    let mut min_sv = f64::INFINITY;
    let mut worst = 0.0f64;
    for n in 0..=5 {
        for &q in &Q_SWEEP {
            let q = qp(q);
            min_sv = min_sv.min(spanning_check(n, &geom, q).unwrap().min_singular_value);
            for (a, b) in monomial_exponents(n) {
                let net = monomial_to_qbernstein(a, b, n, &geom, q).unwrap();
                for &p in &points {
                    let xy = geom.to_cartesian(p);
                    let want = xy.x.powi(a as i32) * xy.y.powi(b as i32);
                    worst = worst.max((evaluate(&net, p, q) - want).abs());
                }
            }
        }
    }
    outcome(
        min_sv > 1e-8 && worst <= 1e-10,
        format!("min singular value = {min_sv:.3e}, max monomial error = {worst:.2e}"),
    )
}

fn classical_reduction() -> Outcome {
    let mut r = rng(10);
    let one = QParam::ONE;
    let mut worst = 0.0f64;
    for n in 0..=8 {
        let net = random_net(&mut r, n);
        let pnet = random_point_net(&mut r, n);
        let elevated = degree_elevate(&net, one);
        let reference_elevated = classical_elevate(net.values(), n);
        for (a, b) in elevated.values().iter().zip(&reference_elevated) {
            worst = worst.max((a - b).abs());
        }
        for p in random_points(&mut r, 20) {
            let basis = basis_eval_all(n, p, one);
            for (i, j, k) in triples(n) {
                worst = worst.max((basis[idx(i, j, k)] - classical_bernstein(i, j, k, p.u, p.v)).abs());
            }
            let tab = evaluate_with_tableau(&net, p, one);
            let reference = classical_de_casteljau(net.values(), n, p.u, p.v);
            for (layer, rl) in tab.layers().iter().zip(&reference) {
                for (a, b) in layer.values().iter().zip(rl) {
                    worst = worst.max((a - b).abs());
                }
            }
            let x = patch::patch_eval(&pnet, p, one);
            let sum = |f: fn(&Point3) -> f64| -> f64 {
                pnet.iter().map(|(t, c)| f(c) * classical_bernstein(t.i, t.j, t.k, p.u, p.v)).sum()
            };
            let want = Point3::new(sum(|c| c.x), sum(|c| c.y), sum(|c| c.z));
            worst = worst.max((x - want).norm());
        }
    }
    outcome(worst <= 1e-12, format!("max deviation from classical reference = {worst:.2e}"))
}

fn univariate_restriction() -> Outcome {
    let mut r = rng(11);
    let mut worst = 0.0f64;
    for n in 0..=8 {
        for &q in &Q_SWEEP {
            let net = random_net(&mut r, n);
            let edge = net.edge_v0();
            for s in 0..=20 {
                let t = s as f64 / 20.0;
                let got = evaluate(&net, DomainPoint::new(t, 0.0), qp(q));
                worst = worst.max((got - univariate_q_bernstein(&edge, t, q)).abs());
            }
        }
    }
    outcome(worst <= 1e-12, format!("max edge error = {worst:.2e}"))
}

fn obj_vertices(obj: &str) -> Vec<Point3> {
    obj.lines()
        .filter_map(|l| l.strip_prefix("v "))
        .map(|l| {
            let c: Vec<f64> = l.split_whitespace().map(|x| x.parse().unwrap()).collect();
            Point3::new(c[0], c[1], c[2])
        })
        .collect()
}

fn patch_meshes() -> Outcome {
    let m = 16;
    let mut worst = 0.0f64;
    let mut outside = 0usize;
    let mut total = 0usize;
    for net in [samples::cubic_patch_a(), samples::cubic_patch_b()] {
        let [a, b, c] = net.corners();
        for &q in &[0.1, 0.5, 1.0] {
            let obj = cmd_tessellate(&LoadedNet::points(net.clone(), qp(q)), m).unwrap();
            let verts = obj_vertices(&obj);
            // grid (a, b) with u = a/m: (0,0) -> w corner, (0,m) -> v corner, (m,0) -> u corner
            let corners = [verts[verts.len() - 1], verts[m], verts[0]];
            for (got, want) in corners.iter().zip([a, b, c]) {
                worst = worst.max((*got - want).norm());
            }
            for v in &verts {
                total += 1;
                if !convex_hull_contains(net.values(), *v, 1e-12) {
                    outside += 1;
                }
            }
        }
    }
    outcome(
        worst <= 1e-13 && outside == 0,
        format!("max corner error = {worst:.2e}, vertices outside hull = {outside}/{total}"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("partition of unity", partition_of_unity),
        ("corner cutting equals direct summation", corner_cutting_correct),
        ("three basis paths agree", three_paths_agree),
        ("corner-cutting weights are convex", weights_convex),
        ("degree elevation invariance", elevation_invariant),
        ("elevation weight identity", elevation_weights),
        ("nonnegative change of basis", nonnegative_change_of_basis),
        ("conditioning order", conditioning_order),
        ("monomial spanning and reproduction", spanning_and_monomials),
        ("classical reduction at q = 1", classical_reduction),
        ("univariate edge restriction", univariate_restriction),
        ("cubic patch meshes", patch_meshes),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let status = if o.pass { "PASS" } else { "FAIL" };
        if !o.pass {
            failed += 1;
        }
        println!("{status} {:>2} {name}: {} [{:.2?}]", n + 1, o.detail, start.elapsed());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
