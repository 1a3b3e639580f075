// The nonnegative change of basis to the classical Bernstein basis and the
// resulting comparison of condition numbers.

use qbezier::stability::{product_expansion, DEFAULT_SUP_RESOLUTION};
use qbezier::{
    barycentric_grid, compare_conditioning, qbernstein_to_bernstein_matrix, CoefficientNet, QParam,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let q = QParam::new(0.3)?;
    let c = product_expansion(3, q)?;
    println!("expansion of the cubic product: {:?}", c.values());

    let a = qbernstein_to_bernstein_matrix(2, q)?;
    println!("change of basis for n = 2:\n{:.4}", a.matrix());
    assert!(a.matrix().iter().all(|&x| x >= 0.0));

    let net = CoefficientNet::from_fn(4, |t| ((t.i * 3 + t.j) as f64).sin() - 0.2 * t.k as f64)?;
    let a4 = qbernstein_to_bernstein_matrix(4, q)?;
    let classical = a4.to_bernstein(&net);
    let back = a4.to_qbernstein(&classical)?;
    let drift = back.values().iter().zip(net.values()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    println!("round trip through the classical basis: max drift {drift:e}");

    let report = compare_conditioning(&net, q, &barycentric_grid(6), DEFAULT_SUP_RESOLUTION)?;
    println!("sup-norm estimate {:.6}", report.sup_norm);
    for pc in report.points.iter().take(4) {
        println!(
            "({:.3}, {:.3}) bernstein {:.6} q {:.6}",
            pc.point.u,
            pc.point.v,
            pc.cond_bernstein.unwrap_or(f64::NAN),
            pc.cond_q.unwrap_or(f64::NAN)
        );
    }
    println!("max ratio {:?}", report.max_ratio);
    assert!(report.ordering_holds(1e-10));
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
