// Corner-cutting evaluation of a scalar net, its intermediate layers and the
// univariate algorithm on an edge.

use qbezier::{
    basis_eval_direct, evaluate, evaluate_univariate, evaluate_with_tableau, CoefficientNet,
    DomainPoint, QParam,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let q = QParam::new(0.7)?;
    let net = CoefficientNet::from_fn(3, |t| (t.i as f64) - 2.0 * (t.j as f64) + 0.5 * (t.k as f64))?;
    let p = DomainPoint::new(0.25, 0.4);

    let tableau = evaluate_with_tableau(&net, p, q);
    for (r, layer) in tableau.layers().iter().enumerate() {
        let row: Vec<String> = layer.iter().map(|(t, v)| format!("{t}={v:.6}")).collect();
        println!("layer {r}: {}", row.join(" "));
    }
    let value = evaluate(&net, p, q);
    let direct: f64 = net.iter().map(|(t, &b)| b * basis_eval_direct(t, p, q)).sum();
    println!("corner cutting {value}, direct sum {direct}");
    assert_eq!(value.to_bits(), tableau.result().to_bits());
    assert!((value - direct).abs() < 1e-12);

    // on the edge v = 0 only the entries (i, 0, n - i) matter
    let edge = net.edge_v0();
    for t in [0.0, 0.5, 1.0] {
        let on_edge = evaluate_univariate(&edge, t, q);
        assert_eq!(on_edge, evaluate(&net, DomainPoint::new(t, 0.0), q));
        println!("edge t = {t}: {on_edge}");
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
