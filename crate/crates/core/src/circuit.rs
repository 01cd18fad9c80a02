//! Two-qubit circuit IR: evaluation, equivalence checks, named gates and the
//! JSON wire formats.
//!
//! Gates are stored in application order. Qubit A is the most significant
//! tensor factor, so basis index `2a + b` labels `|a>_A |b>_B`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kak::{canonical_unitary, CanonicalParams};
use crate::linalg::{
    c, cis, cnot, cnot_reversed, euler_decompose, is_unitary, kron, phase_distance, relative_phase,
    EulerConvention, Mat2, Mat4, I, ONE, STRUCTURAL_TOL, ZERO,
};
use crate::synth::{synth, SynthesisResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Qubit {
    A,
    B,
}

impl Qubit {
    pub fn other(self) -> Qubit {
        match self {
            Qubit::A => Qubit::B,
            Qubit::B => Qubit::A,
        }
    }
}

impl fmt::Display for Qubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Qubit::A => "A",
            Qubit::B => "B",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    SingleQubit { qubit: Qubit, u: Mat2 },
    Cnot { control: Qubit, target: Qubit },
}

impl Gate {
    pub fn local(qubit: Qubit, u: Mat2) -> Self {
        Gate::SingleQubit { qubit, u }
    }

    /// CNOT with A as control and B as target.
    pub fn cnot() -> Self {
        Gate::Cnot {
            control: Qubit::A,
            target: Qubit::B,
        }
    }

    pub fn is_cnot(&self) -> bool {
        matches!(self, Gate::Cnot { .. })
    }

    /// The gate as a 4x4 operator on both qubits.
    pub fn matrix(&self) -> Mat4 {
        match *self {
            Gate::SingleQubit { qubit: Qubit::A, u } => kron(&u, &Mat2::identity()),
            Gate::SingleQubit { qubit: Qubit::B, u } => kron(&Mat2::identity(), &u),
            Gate::Cnot {
                control: Qubit::A, ..
            } => cnot(),
            Gate::Cnot {
                control: Qubit::B, ..
            } => cnot_reversed(),
        }
    }

    fn validate(&self) -> std::result::Result<(), String> {
        match self {
            Gate::SingleQubit { u, .. } if !is_unitary(u, STRUCTURAL_TOL) => {
                Err("single-qubit gate is not unitary".into())
            }
            Gate::Cnot { control, target } if control == target => {
                Err("CNOT control and target must differ".into())
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Circuit {
    pub gates: Vec<Gate>,
    pub global_phase: f64,
}

impl Circuit {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_gates(gates: Vec<Gate>) -> Self {
        Self {
            gates,
            global_phase: 0.0,
        }
    }

    pub fn push(&mut self, gate: Gate) -> &mut Self {
        self.gates.push(gate);
        self
    }

    /// `c1 ++ c2`: `c1` runs first.
    pub fn then(&self, next: &Circuit) -> Circuit {
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&next.gates);
        Circuit {
            gates,
            global_phase: self.global_phase + next.global_phase,
        }
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn cnot_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_cnot()).count()
    }

    /// `e^{i phase} G_n ... G_2 G_1` for gates `G_1, ..., G_n` in application order.
    pub fn evaluate(&self) -> Mat4 {
        let mut acc = Mat4::identity();
        for g in &self.gates {
            acc = g.matrix() * acc;
        }
        acc * cis(self.global_phase)
    }

    pub fn verify(&self, target: &Mat4, tol: f64) -> VerificationReport {
        verify(self, target, tol)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.global_phase.is_finite() {
            return Err(parse_err("global_phase must be finite"));
        }
        for (i, g) in self.gates.iter().enumerate() {
            g.validate()
                .map_err(|m| parse_err(format!("gates[{i}]: {m}")))?;
        }
        Ok(())
    }

    /// One gate per line; local gates shown as ZXZ Euler angles.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "circuit: {} gates, {} CNOT, global phase {}\n",
            self.len(),
            self.cnot_count(),
            self.global_phase
        );
        for g in &self.gates {
            match g {
                Gate::Cnot { control, target } => {
                    out.push_str(&format!("  CNOT {control} -> {target}\n"));
                }
                Gate::SingleQubit { qubit, u } => {
                    let e = euler_decompose(u, EulerConvention::Zxz);
                    out.push_str(&format!(
                        "  {qubit}: Rz({:.6}) Rx({:.6}) Rz({:.6}) phase {:.6}\n",
                        e.c, e.theta, e.a, e.phase
                    ));
                }
            }
        }
        out
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub distance: f64,
    pub relative_phase: f64,
    pub passed: bool,
    pub tolerance: f64,
}

pub fn verify(c: &Circuit, target: &Mat4, tol: f64) -> VerificationReport {
    let m = c.evaluate();
    let distance = phase_distance(&m, target);
    VerificationReport {
        distance,
        relative_phase: relative_phase(&m, target),
        passed: distance <= tol,
        tolerance: tol,
    }
}

/// Gates understood by [`named_gate`], with their argument counts.
pub const NAMED_GATES: [(&str, usize); 7] = [
    ("ID", 0),
    ("CNOT", 0),
    ("CZ", 0),
    ("SWAP", 0),
    ("ISWAP", 0),
    ("CPHASE", 1),
    ("CAN", 3),
];

/// Exact matrices of common two-qubit gates. `CPHASE(phi)` applies `e^{-i phi}`
/// to `|11>`; `CAN(hx, hy, hz)` is `exp(-i(hx XX + hy YY + hz ZZ))`.
pub fn named_gate(name: &str, args: &[f64]) -> Result<Mat4> {
    let upper = name.to_ascii_uppercase();
    let arity = NAMED_GATES
        .iter()
        .find(|(n, _)| *n == upper)
        .map(|(_, a)| *a)
        .ok_or_else(|| Error::UnknownGate(name.to_string()))?;
    if args.len() != arity {
        return Err(Error::BadArity {
            name: upper,
            expected: arity,
            got: args.len(),
        });
    }
    let diag = |d: [crate::linalg::C64; 4]| Mat4::from_diagonal(&d.into());
    let perm = |p: [usize; 4], v: [crate::linalg::C64; 4]| {
        Mat4::from_fn(|r, col| if p[r] == col { v[r] } else { ZERO })
    };
    Ok(match upper.as_str() {
        "ID" => Mat4::identity(),
        "CNOT" => cnot(),
        "CZ" => diag([ONE, ONE, ONE, -ONE]),
        "SWAP" => perm([0, 2, 1, 3], [ONE; 4]),
        "ISWAP" => perm([0, 2, 1, 3], [ONE, I, I, ONE]),
        "CPHASE" => diag([ONE, ONE, ONE, cis(-args[0])]),
        "CAN" => canonical_unitary(&CanonicalParams::new(args[0], args[1], args[2])),
        _ => unreachable!("arity table and match arms list the same gates"),
    })
}

/// Re-synthesize a circuit with the minimal number of CNOTs. The input is
/// returned unchanged if it is already cheaper than the synthesized form.
pub fn optimize(c: &Circuit, tol: f64) -> Result<SynthesisResult> {
    c.validate()?;
    let target = c.evaluate();
    let result = synth(&target, tol)?;
    if result.circuit.cnot_count() > c.cnot_count() {
        let report = verify(c, &target, tol);
        return Ok(SynthesisResult {
            circuit: c.clone(),
            class_used: result.class_used,
            verification_distance: report.distance,
        });
    }
    Ok(result)
}

// ---- wire formats ----

type WireMat2 = [[[f64; 2]; 2]; 2];
type WireMat4 = [[[f64; 2]; 4]; 4];

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDoc {
    unitary: WireMat4,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitDoc {
    qubits: Vec<String>,
    global_phase: f64,
    gates: Vec<GateDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum GateDoc {
    Local { qubit: Qubit, u: WireMat2 },
    Cnot { control: Qubit, target: Qubit },
}

pub(crate) fn mat2_to_wire(m: &Mat2) -> WireMat2 {
    std::array::from_fn(|r| std::array::from_fn(|col| [m[(r, col)].re, m[(r, col)].im]))
}

fn mat2_from_wire(w: &WireMat2) -> Mat2 {
    Mat2::from_fn(|r, col| c(w[r][col][0], w[r][col][1]))
}

fn mat4_to_wire(m: &Mat4) -> WireMat4 {
    std::array::from_fn(|r| std::array::from_fn(|col| [m[(r, col)].re, m[(r, col)].im]))
}

fn parse_err(message: impl Into<String>) -> Error {
    Error::Parse {
        line: 0,
        column: 0,
        message: message.into(),
    }
}

fn from_json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// `{"unitary": [[[re, im] x 4] x 4]}`, row-major.
pub fn serialize_matrix(m: &Mat4) -> String {
    serde_json::to_string(&MatrixDoc {
        unitary: mat4_to_wire(m),
    })
    .expect("finite matrices serialize")
}

pub fn parse_matrix(text: &str) -> Result<Mat4> {
    let doc: MatrixDoc = serde_json::from_str(text).map_err(from_json_error)?;
    let w = doc.unitary;
    Ok(Mat4::from_fn(|r, col| c(w[r][col][0], w[r][col][1])))
}

pub fn serialize_circuit(c: &Circuit) -> String {
    let doc = CircuitDoc {
        qubits: vec!["A".into(), "B".into()],
        global_phase: c.global_phase,
        gates: c
            .gates
            .iter()
            .map(|g| match *g {
                Gate::SingleQubit { qubit, u } => GateDoc::Local {
                    qubit,
                    u: mat2_to_wire(&u),
                },
                Gate::Cnot { control, target } => GateDoc::Cnot { control, target },
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("finite circuits serialize")
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let doc: CircuitDoc = serde_json::from_str(text).map_err(from_json_error)?;
    if doc.qubits != ["A", "B"] {
        return Err(parse_err(format!(
            "field `qubits` must be [\"A\", \"B\"], got {:?}",
            doc.qubits
        )));
    }
    let circuit = Circuit {
        global_phase: doc.global_phase,
        gates: doc
            .gates
            .iter()
            .map(|g| match g {
                GateDoc::Local { qubit, u } => Gate::local(*qubit, mat2_from_wire(u)),
                GateDoc::Cnot { control, target } => Gate::Cnot {
                    control: *control,
                    target: *target,
                },
            })
            .collect(),
    };
    circuit.validate()?;
    Ok(circuit)
}

/// Hadamard as an exact-ish constant, used by examples and tests.
pub fn hadamard_gate(qubit: Qubit) -> Gate {
    let h = c(FRAC_1_SQRT_2, 0.0);
    Gate::local(qubit, Mat2::new(h, h, h, -h))
}
