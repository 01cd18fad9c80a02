// Minimal CNOT count of the named gates and of gates built from CNOTs.

use twoq::circuit::{named_gate, Circuit, Gate, Qubit};
use twoq::kak::{kak_decompose, GateClass, CLASSIFY_TOL};
use twoq::linalg::{random_su2, su4_normalize, Mat4};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn class_of(u: &Mat4) -> Result<GateClass, twoq::Error> {
    let (s, _) = su4_normalize(u)?;
    Ok(kak_decompose(&s)?.class(CLASSIFY_TOL))
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let table: [(&str, &[f64]); 7] = [
        ("ID", &[]),
        ("CNOT", &[]),
        ("CZ", &[]),
        ("CPHASE", &[0.5]),
        ("ISWAP", &[]),
        ("SWAP", &[]),
        ("CAN", &[0.5, 0.3, 0.1]),
    ];
    for (name, args) in table {
        let class = class_of(&named_gate(name, args)?)?;
        println!("{name:>8} {args:?}: {class} ({} CNOT)", class.cnot_count());
    }

    // Two CNOTs with arbitrary local gates in between never need a third.
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sandwich = Circuit::from_gates(vec![
        Gate::cnot(),
        Gate::local(Qubit::A, random_su2(&mut rng)),
        Gate::local(Qubit::B, random_su2(&mut rng)),
        Gate::cnot(),
    ]);
    let class = class_of(&sandwich.evaluate())?;
    println!("CNOT (u x v) CNOT: {class}");
    assert!(class.cnot_count() <= 2);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
