// A cubic q-Bezier patch: boundary curves, tessellation and OBJ output for
// several values of q.

use qbezier::patch::{convex_hull_contains, samples};
use qbezier::{boundary_curve, tessellate, Edge, QParam};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let net = samples::cubic_patch_a();
    let out_dir = std::env::temp_dir().join("qbezier-patch-example");
    std::fs::create_dir_all(&out_dir)?;

    for qv in [0.1, 0.5, 1.0] {
        let q = QParam::new(qv)?;
        let mesh = tessellate(&net, q, 16);
        assert!(mesh.vertices.iter().all(|v| convex_hull_contains(net.values(), *v, 1e-12)));
        let mid = boundary_curve(&net, Edge::V0, 0.5, q);
        let path = out_dir.join(format!("cubic_q{qv}.obj"));
        std::fs::write(&path, mesh.to_obj())?;
        println!(
            "q = {qv}: {} vertices, {} faces, edge v=0 midpoint {mid:?} -> {}",
            mesh.vertices.len(),
            mesh.faces.len(),
            path.display()
        );
    }

    let edge: Edge = "u=0".parse()?;
    let q = QParam::new(0.5)?;
    println!("edge {edge} ends at {:?} and {:?}", boundary_curve(&net, edge, 0.0, q), boundary_curve(&net, edge, 1.0, q));
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
