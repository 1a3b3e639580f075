// Degree elevation keeps the represented polynomial while the control net
// grows and converges toward the surface.

use qbezier::{barycentric_grid, degree_elevate, elevate_to, evaluate, CoefficientNet, QParam};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let q = QParam::new(0.6)?;
    let net = CoefficientNet::from_vec(2, vec![1.0, -1.0, 0.0, 2.0, 0.5, 3.0])?;
    let once = degree_elevate(&net, q);
    let many = elevate_to(&net, 12, q)?;
    println!("degree {} -> {} -> {}", net.degree(), once.degree(), many.degree());
    println!("elevated once: {:?}", once.values());

    let mut worst = 0.0f64;
    for p in barycentric_grid(10) {
        let f = evaluate(&net, p, q);
        worst = worst.max((evaluate(&once, p, q) - f).abs()).max((evaluate(&many, p, q) - f).abs());
    }
    println!("max deviation over the grid: {worst:e}");
    assert!(worst < 1e-12);
    assert_eq!(many.corners(), net.corners());
    assert!(elevate_to(&net, 1, q).is_err());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
