//! Minimal-CNOT circuit synthesis.
//!
//! Gates in the generic class use the universal three-CNOT circuit
//!
//! ```text
//! A: --u1--*--u2--*--u3--*--u4--
//! B: --v1--X--v2--X--v3--X--v4--
//! ```
//!
//! and gates with `hz = 0` use the two-CNOT circuit. Both realize the
//! canonical interaction `exp(-iH)` exactly; the surrounding KAK locals are
//! fused into the outer single-qubit layers.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::sync::OnceLock;

use crate::circuit::{Circuit, Gate, Qubit};
use crate::error::{Error, Result};
use crate::kak::{
    canonical_unitary, classify, kak_decompose, CanonicalParams, GateClass, KakDecomposition,
    CLASSIFY_TOL,
};
use crate::linalg::{
    c, cnot, pauli, phase_distance, relative_phase, rot, su4_normalize, w_gate, Axis, Mat2, Mat4,
};

/// Default bound on the final self-check distance.
pub const VERIFY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthOptions {
    /// Self-check bound on `phase_distance(evaluate(circuit), input)`.
    pub tol: f64,
    /// Tolerance, in radians, for choosing a cheaper class.
    pub classify_tol: f64,
    /// Use this construction instead of the minimal one.
    pub force_class: Option<GateClass>,
}

impl Default for SynthOptions {
    fn default() -> Self {
        Self {
            tol: VERIFY_TOL,
            classify_tol: CLASSIFY_TOL,
            force_class: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisResult {
    pub circuit: Circuit,
    pub class_used: GateClass,
    pub verification_distance: f64,
}

fn local_layer(a: Mat2, b: Mat2) -> [Gate; 2] {
    [Gate::local(Qubit::A, a), Gate::local(Qubit::B, b)]
}

/// Give `c` the global phase that makes it evaluate to `target` whenever the
/// two agree up to phase.
fn with_matching_phase(mut c: Circuit, target: &Mat4) -> Circuit {
    c.global_phase = 0.0;
    c.global_phase = relative_phase(&c.evaluate(), target);
    c
}

/// `(i/sqrt2)(X + Z)`: a Hadamard scaled into SU(2).
fn i_hadamard() -> Mat2 {
    (pauli(Axis::X) + pauli(Axis::Z)) * c(0.0, FRAC_1_SQRT_2)
}

/// Three-CNOT circuit for `exp(-iH)`, any triple.
///
/// Layers between the CNOTs are `u2 (x) v2` and `u3 (x) v3`, followed by
/// `w (x) w^dagger` with `w = (I - iX)/sqrt2`:
/// `u2 = (i/sqrt2)(X+Z) exp(-i(hx - pi/4)X)`, `v2 = exp(-i hz Z)`,
/// `u3 = (-i/sqrt2)(X+Z)`, `v3 = exp(+i hy Z)`.
pub fn synth_canonical_3cnot(p: &CanonicalParams) -> Circuit {
    let u2 = i_hadamard() * rot(Axis::X, p.hx - FRAC_PI_4);
    let v2 = rot(Axis::Z, p.hz);
    let u3 = -i_hadamard();
    let v3 = rot(Axis::Z, -p.hy);
    let w = w_gate();
    let mut gates = vec![Gate::cnot()];
    gates.extend(local_layer(u2, v2));
    gates.push(Gate::cnot());
    gates.extend(local_layer(u3, v3));
    gates.push(Gate::cnot());
    gates.extend(local_layer(w, w.adjoint()));
    with_matching_phase(Circuit::from_gates(gates), &canonical_unitary(p))
}

/// Two-CNOT circuit for `exp(-iH)` with `hz = 0`:
/// `w^dagger (x) w`, CNOT, `exp(-i hx X) (x) exp(+i hy Z)`, CNOT, `w (x) w^dagger`.
pub fn synth_canonical_2cnot(p: &CanonicalParams, tol: f64) -> Result<Circuit> {
    if !(p.hz.abs() < tol) {
        return Err(Error::HzNotZero { hz: p.hz });
    }
    let w = w_gate();
    let mut gates = Vec::with_capacity(8);
    gates.extend(local_layer(w.adjoint(), w));
    gates.push(Gate::cnot());
    gates.extend(local_layer(rot(Axis::X, p.hx), rot(Axis::Z, -p.hy)));
    gates.push(Gate::cnot());
    gates.extend(local_layer(w, w.adjoint()));
    let target = canonical_unitary(&CanonicalParams::new(p.hx, p.hy, 0.0));
    Ok(with_matching_phase(Circuit::from_gates(gates), &target))
}

/// KAK decomposition of CNOT, computed once by [`kak_decompose`] itself.
fn cnot_kak() -> &'static KakDecomposition {
    static CNOT_KAK: OnceLock<KakDecomposition> = OnceLock::new();
    CNOT_KAK.get_or_init(|| {
        let (s, _) = su4_normalize(&cnot()).expect("CNOT is unitary");
        kak_decompose(&s).expect("CNOT decomposes")
    })
}

/// One-CNOT circuit for a gate locally equivalent to CNOT, spliced from the
/// stored decomposition of CNOT: `exp(-iH) ~ (a (x) b)^dagger CNOT (c (x) d)^dagger`.
pub fn class1_synthesize(k: &KakDecomposition, tol: f64) -> Result<Circuit> {
    if classify(&k.params, tol) != GateClass::OneCnot {
        return Err(Error::WrongClass { expected: "1-cnot" });
    }
    let cx = cnot_kak();
    let mut gates = Vec::with_capacity(5);
    gates.extend(local_layer(
        cx.pre_a.adjoint() * k.pre_a,
        cx.pre_b.adjoint() * k.pre_b,
    ));
    gates.push(Gate::cnot());
    gates.extend(local_layer(
        k.post_a * cx.post_a.adjoint(),
        k.post_b * cx.post_b.adjoint(),
    ));
    Ok(with_matching_phase(
        Circuit::from_gates(gates),
        &k.to_matrix(),
    ))
}

/// Merge runs of single-qubit gates on the same wire. Between two CNOTs (and
/// at either end) each wire keeps at most one gate, A before B.
pub fn fuse_single_qubit_gates(c: &Circuit) -> Circuit {
    let mut out = Vec::with_capacity(c.gates.len());
    let mut pending: [Option<Mat2>; 2] = [None, None];
    let flush = |pending: &mut [Option<Mat2>; 2], out: &mut Vec<Gate>| {
        for (slot, qubit) in pending.iter_mut().zip([Qubit::A, Qubit::B]) {
            if let Some(u) = slot.take() {
                out.push(Gate::local(qubit, u));
            }
        }
    };
    for g in &c.gates {
        match *g {
            Gate::SingleQubit { qubit, u } => {
                let slot = &mut pending[qubit as usize];
                *slot = Some(match slot.take() {
                    Some(prev) => u * prev,
                    None => u,
                });
            }
            Gate::Cnot { .. } => {
                flush(&mut pending, &mut out);
                out.push(*g);
            }
        }
    }
    flush(&mut pending, &mut out);
    Circuit {
        gates: out,
        global_phase: c.global_phase,
    }
}

/// Wrap the canonical circuit in the decomposition's outer locals.
fn embed(k: &KakDecomposition, core: &Circuit) -> Circuit {
    let mut gates = Vec::with_capacity(core.len() + 4);
    gates.extend(local_layer(k.pre_a, k.pre_b));
    gates.extend_from_slice(&core.gates);
    gates.extend(local_layer(k.post_a, k.post_b));
    Circuit::from_gates(gates)
}

/// Synthesize `u` with the minimal number of CNOTs.
pub fn synth(u: &Mat4, tol: f64) -> Result<SynthesisResult> {
    synth_with(
        u,
        &SynthOptions {
            tol,
            ..SynthOptions::default()
        },
    )
}

pub fn synth_with(u: &Mat4, opts: &SynthOptions) -> Result<SynthesisResult> {
    let (s, _) = su4_normalize(u)?;
    let k = kak_decompose(&s)?;
    let class = opts
        .force_class
        .unwrap_or_else(|| classify(&k.params, opts.classify_tol));

    let raw = match class {
        GateClass::Local => {
            Circuit::from_gates(local_layer(k.post_a * k.pre_a, k.post_b * k.pre_b).to_vec())
        }
        GateClass::OneCnot => class1_synthesize(&k, opts.classify_tol)?,
        GateClass::TwoCnot => embed(&k, &synth_canonical_2cnot(&k.params, opts.classify_tol)?),
        GateClass::ThreeCnot => embed(&k, &synth_canonical_3cnot(&k.params)),
    };
    let circuit = with_matching_phase(fuse_single_qubit_gates(&raw), u);
    let distance = phase_distance(&circuit.evaluate(), u);
    if !(distance <= opts.tol) {
        return Err(Error::VerificationFailed {
            distance,
            tolerance: opts.tol,
        });
    }
    debug_assert_eq!(circuit.cnot_count(), class.cnot_count());
    Ok(SynthesisResult {
        circuit,
        class_used: class,
        verification_distance: distance,
    })
}
