// Canonical decomposition of a few gates: interaction coefficients, the
// Bell-basis eigenphases, and a reconstruction check.

use twoq::circuit::named_gate;
use twoq::kak::{kak_decompose, lambdas, CLASSIFY_TOL};
use twoq::linalg::{haar_su4, phase_distance, su4_normalize};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut gates = vec![
        ("CNOT".to_string(), named_gate("CNOT", &[])?),
        ("SWAP".to_string(), named_gate("SWAP", &[])?),
        ("CPHASE(0.7)".to_string(), named_gate("CPHASE", &[0.7])?),
    ];
    gates.push(("haar(seed 1)".to_string(), haar_su4(1).into_inner()));

    for (name, u) in gates {
        let (su, phase) = su4_normalize(&u)?;
        let k = kak_decompose(&su)?;
        let l = lambdas(&k.params);
        let err = phase_distance(&k.to_matrix(), &u);
        println!(
            "{name:>13}: h = ({:.6}, {:.6}, {:.6})  class {}  input phase {phase:.4}",
            k.params.hx,
            k.params.hy,
            k.params.hz,
            k.class(CLASSIFY_TOL)
        );
        println!(
            "               lambda = ({:.4}, {:.4}, {:.4}, {:.4})  reconstruction {err:.1e}",
            l.l00, l.l01, l.l10, l.l11
        );
        assert!(err < 1e-9);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
