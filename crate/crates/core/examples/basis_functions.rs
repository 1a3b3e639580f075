// Triangular q-Bernstein basis functions: q-integers, the three evaluation
// routes, partition of unity and a sample grid for plotting.

use qbezier::tribasis::{basis_all_rec_a, basis_all_rec_b};
use qbezier::{
    basis_eval_all, basis_sample_grid, q_binomial, q_integer, DomainPoint, MultiIndex3, QParam,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let q = QParam::new(0.5)?;
    println!("[3] = {}, [4 choose 2] = {}", q_integer(3, q), q_binomial(4, 2, q)?);

    let n = 3;
    let p = DomainPoint::new(0.2, 0.3);
    let direct = basis_eval_all(n, p, q);
    let rec_a = basis_all_rec_a(n, p, q);
    let rec_b = basis_all_rec_b(n, p, q);
    for t in MultiIndex3::triples(n) {
        println!("B{t} = {:.15} {:.15} {:.15}", direct[t], rec_a[t], rec_b[t]);
        assert!((direct[t] - rec_a[t]).abs() < 1e-13 && (direct[t] - rec_b[t]).abs() < 1e-13);
    }
    let sum: f64 = direct.values().iter().sum();
    println!("sum = {sum}");
    assert!((sum - 1.0).abs() < 1e-14);

    // the function with k = n widens as q decreases
    for qv in [1.0, 0.5, 0.1] {
        let grid = basis_sample_grid(MultiIndex3::new(0, 0, 4), QParam::new(qv)?, 4);
        let peak = grid.iter().fold(0.0f64, |m, s| m.max(s.value));
        println!("q = {qv}: {} samples, value at (0.25,0) = {:.6}, max = {peak}", grid.len(), grid[5].value);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
