//! Two-qubit gate compiler.
//!
//! Decomposes any 4x4 unitary into its canonical interaction parameters,
//! determines how many CNOTs it needs (0 to 3), and emits an equivalent
//! circuit of CNOTs and single-qubit gates with that many CNOTs.
//!
//! ```
//! use twoq::{circuit::named_gate, synth::synth};
//!
//! let swap = named_gate("SWAP", &[]).unwrap();
//! let result = synth(&swap, 1e-9).unwrap();
//! assert_eq!(result.circuit.cnot_count(), 3);
//! assert!(result.verification_distance < 1e-9);
//! ```

// `!(x < tol)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circuit;
pub mod cli;
pub mod error;
pub mod kak;
pub mod linalg;
pub mod synth;

pub use circuit::{Circuit, Gate, Qubit, VerificationReport};
pub use error::{Error, Result};
pub use kak::{CanonicalParams, GateClass, KakDecomposition, LambdaPhases};
pub use linalg::{Mat2, Mat4, SpecialUnitary4, Vec4, C64};
pub use synth::{SynthOptions, SynthesisResult};
