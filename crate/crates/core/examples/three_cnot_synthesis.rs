// Synthesize a Haar-random two-qubit gate with three CNOTs.

use twoq::linalg::{haar_su4, phase_distance};
use twoq::synth::synth;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let u = haar_su4(2024).into_inner();
    let result = synth(&u, 1e-9)?;
    print!("{}", result.circuit);
    println!(
        "class {}, self-check distance {:.1e}",
        result.class_used, result.verification_distance
    );
    assert_eq!(result.circuit.cnot_count(), 3);
    assert!(phase_distance(&result.circuit.evaluate(), &u) < 1e-9);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
