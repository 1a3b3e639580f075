// Reading and writing JSON net files and driving the command layer from code.

use qbezier::cli::{cmd_basis_sample, cmd_convert, cmd_elevate, cmd_eval, parse_net, BasisLabel, LoadedNet};
use qbezier::{CoefficientNet, DomainPoint, MultiIndex3, QParam};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let net = CoefficientNet::from_vec(1, vec![1.0, 2.0, 4.0])?;
    let loaded = LoadedNet::scalar(net, QParam::new(0.5)?);
    let text = loaded.to_json();
    print!("{text}");
    assert_eq!(parse_net(&text)?, loaded);

    let raised = cmd_elevate(&loaded, 3)?;
    let classical = cmd_convert(&raised, BasisLabel::Bernstein)?;
    print!("{}", classical.to_json());

    let mut out = Vec::new();
    let mut diag = Vec::new();
    for net in [&loaded, &raised, &classical] {
        cmd_eval(net, DomainPoint::new(0.2, 0.2), false, &mut out, &mut diag)?;
    }
    print!("{}", String::from_utf8(out)?);

    let mut csv = Vec::new();
    cmd_basis_sample(2, MultiIndex3::new(1, 0, 1), QParam::new(0.5)?, 2, &mut csv)?;
    print!("{}", String::from_utf8(csv)?);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
