// Gates with no ZZ component (hz = 0) need only two CNOTs: controlled
// phases, iSWAP, and anything locally equivalent to them.

use twoq::circuit::named_gate;
use twoq::kak::{canonical_unitary, CanonicalParams};
use twoq::linalg::{kron, phase_distance, random_su2};
use twoq::synth::{synth, synth_canonical_2cnot};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // The bare two-CNOT circuit for exp(-i(hx XX + hy YY)).
    let p = CanonicalParams::new(0.6, 0.2, 0.0);
    let core = synth_canonical_2cnot(&p, 1e-8)?;
    print!("{core}");
    assert!(phase_distance(&core.evaluate(), &canonical_unitary(&p)) < 1e-12);

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let dressed = kron(&random_su2(&mut rng), &random_su2(&mut rng))
        * canonical_unitary(&CanonicalParams::new(0.4, 0.1, 0.0))
        * kron(&random_su2(&mut rng), &random_su2(&mut rng));

    for (name, u) in [
        ("CPHASE(0.7)", named_gate("CPHASE", &[0.7])?),
        ("ISWAP", named_gate("ISWAP", &[])?),
        ("dressed (0.4, 0.1, 0)", dressed),
    ] {
        let res = synth(&u, 1e-9)?;
        println!(
            "{name}: {} CNOT, distance {:.1e}",
            res.circuit.cnot_count(),
            res.verification_distance
        );
        assert_eq!(res.circuit.cnot_count(), 2);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
