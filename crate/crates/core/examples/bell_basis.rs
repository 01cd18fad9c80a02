// The interaction exp(-iH) is diagonal on the Bell states, and CNOT turns
// each Bell state into a product state.

use twoq::kak::{canonical_unitary, lambdas, CanonicalParams};
use twoq::linalg::{bell, cis, cnot, x_z_product};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = CanonicalParams::new(0.7, 0.4, -0.2);
    let u = canonical_unitary(&p);
    let l = lambdas(&p);
    for (m, n) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
        let g = bell(m, n);
        let eig = (u * g - g * cis(-l.get(m, n))).norm();
        let prod = (cnot() * g - x_z_product(m, n)).norm();
        println!(
            "gamma_{m}{n}: lambda = {:+.3}, eigen residual {eig:.1e}, CNOT -> |x{m}>|z{n}> residual {prod:.1e}",
            l.get(m, n)
        );
        assert!(eig < 1e-12 && prod < 1e-15);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
