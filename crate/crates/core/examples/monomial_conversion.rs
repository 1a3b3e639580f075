// Writing monomials x^a y^b over an arbitrary triangle in the q-Bernstein
// basis, and checking that the basis spans all polynomials of the degree.

use qbezier::elevation::{monomial_exponents, spanning_check};
use qbezier::{evaluate, monomial_to_qbernstein, DomainPoint, Point2, QParam, TriangleGeometry};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let q = QParam::new(0.4)?;
    let geom = TriangleGeometry::new(Point2::new(2.0, 0.0), Point2::new(0.0, 1.5), Point2::new(-0.5, -0.5))?;

    let net = monomial_to_qbernstein(2, 1, 4, &geom, q)?;
    let p = DomainPoint::new(0.3, 0.45);
    let xy = geom.to_cartesian(p);
    let want = xy.x * xy.x * xy.y;
    let got = evaluate(&net, p, q);
    println!("x^2 y at ({:.3}, {:.3}): {got} (expected {want})", xy.x, xy.y);
    assert!((got - want).abs() < 1e-12);

    println!("{} monomials of degree <= 3", monomial_exponents(3).len());
    for n in 0..=5 {
        let report = spanning_check(n, &geom, q)?;
        println!(
            "n = {n}: dimension {}, singular values in [{:.3e}, {:.3e}]",
            report.dimension, report.min_singular_value, report.max_singular_value
        );
        assert!(report.full_rank(1e-8));
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
