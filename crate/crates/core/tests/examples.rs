macro_rules! example_test {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example_test!(decompose_gate, "decompose_gate.rs");
example_test!(classify_gates, "classify_gates.rs");
example_test!(three_cnot_synthesis, "three_cnot_synthesis.rs");
example_test!(two_cnot_synthesis, "two_cnot_synthesis.rs");
example_test!(optimize_circuit, "optimize_circuit.rs");
example_test!(bell_basis, "bell_basis.rs");
example_test!(json_io, "json_io.rs");
