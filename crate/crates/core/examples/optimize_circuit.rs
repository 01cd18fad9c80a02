// Re-synthesize a deep circuit: six CNOTs with random local layers collapse
// to at most three.

use twoq::circuit::{optimize, Circuit, Gate, Qubit};
use twoq::linalg::{phase_distance, random_su2};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut deep = Circuit::new();
    for _ in 0..6 {
        deep.push(Gate::local(Qubit::A, random_su2(&mut rng)))
            .push(Gate::local(Qubit::B, random_su2(&mut rng)))
            .push(Gate::cnot());
    }
    let res = optimize(&deep, 1e-9)?;
    println!(
        "random circuit: {} CNOT -> {} CNOT (distance {:.1e})",
        deep.cnot_count(),
        res.circuit.cnot_count(),
        phase_distance(&res.circuit.evaluate(), &deep.evaluate())
    );
    assert!(res.circuit.cnot_count() <= 3);

    // CNOT is an involution, so back-to-back CNOTs vanish.
    let pair = Circuit::from_gates(vec![Gate::cnot(), Gate::cnot()]);
    let res = optimize(&pair, 1e-9)?;
    println!(
        "CNOT CNOT: {} CNOT -> {} CNOT",
        pair.cnot_count(),
        res.circuit.cnot_count()
    );
    assert_eq!(res.circuit.cnot_count(), 0);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
