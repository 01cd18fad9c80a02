// Matrix and circuit JSON documents, as read and written by the `twoq` binary.

use twoq::circuit::{named_gate, parse_circuit, parse_matrix, serialize_circuit, serialize_matrix};
use twoq::synth::synth;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let swap = named_gate("SWAP", &[])?;
    let matrix_json = serialize_matrix(&swap);
    println!("{matrix_json}");
    assert_eq!(parse_matrix(&matrix_json)?, swap);

    let circuit = synth(&swap, 1e-9)?.circuit;
    let circuit_json = serialize_circuit(&circuit);
    println!("{} bytes of circuit JSON", circuit_json.len());
    // numbers are written with shortest round-trip formatting
    assert_eq!(parse_circuit(&circuit_json)?, circuit);

    match parse_circuit(r#"{"qubits":["A","B"],"global_phase":0.0,"gatez":[]}"#) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!("unknown fields are rejected"),
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
