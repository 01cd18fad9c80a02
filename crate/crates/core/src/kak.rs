//! Canonical (KAK) decomposition of two-qubit gates.
//!
//! Every `U` in SU(4) factors as
//! `U = e^{i phase} (post_a (x) post_b) exp(-iH) (pre_a (x) pre_b)` with
//! `H = hx XX + hy YY + hz ZZ` and `pi/4 >= hx >= hy >= |hz|`. The triple
//! `(hx, hy, hz)` labels the local-equivalence class and fixes the minimal
//! number of CNOTs needed to build the gate.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use nalgebra::{Matrix4, SymmetricEigen};

use crate::error::{Error, Result};
use crate::linalg::{
    bell, cis, factor_local, kron, magic_basis, pauli, phase_distance, rot, Axis, Mat2, Mat4,
    SpecialUnitary4, C64, I,
};

/// Default tolerance for [`classify`], in radians.
pub const CLASSIFY_TOL: f64 = 1e-8;
/// Slack allowed on the Weyl chamber inequalities.
pub const CHAMBER_SLACK: f64 = 1e-9;
/// Width of the `hx = pi/4` face on which `hz` is forced non-negative.
const BOUNDARY_TOL: f64 = 1e-9;
/// Entry-wise tolerance when splitting the orthogonal factors into locals.
const LOCAL_SPLIT_TOL: f64 = 1e-8;
/// Reconstruction bound enforced before returning a decomposition.
const RECONSTRUCTION_TOL: f64 = 1e-9;

/// Interaction coefficients of `H = hx XX + hy YY + hz ZZ`.
///
/// Values returned by [`kak_decompose`] lie in the Weyl chamber; other
/// triples are accepted wherever a raw interaction is meaningful.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CanonicalParams {
    pub hx: f64,
    pub hy: f64,
    pub hz: f64,
}

impl CanonicalParams {
    pub const fn new(hx: f64, hy: f64, hz: f64) -> Self {
        Self { hx, hy, hz }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.hx, self.hy, self.hz]
    }

    pub fn from_array(h: [f64; 3]) -> Self {
        Self::new(h[0], h[1], h[2])
    }

    /// `pi/4 + slack >= hx >= hy >= |hz| - slack`, all finite.
    pub fn in_weyl_chamber(&self, slack: f64) -> bool {
        let finite = self.as_array().iter().all(|v| v.is_finite());
        finite
            && FRAC_PI_4 + slack >= self.hx
            && self.hx + slack >= self.hy
            && self.hy + slack >= self.hz.abs()
    }
}

/// Eigenphases `lambda_mn` of `H` on the Bell states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaPhases {
    pub l00: f64,
    pub l01: f64,
    pub l10: f64,
    pub l11: f64,
}

impl LambdaPhases {
    pub fn get(&self, m: u8, n: u8) -> f64 {
        match (m, n) {
            (0, 0) => self.l00,
            (0, 1) => self.l01,
            (1, 0) => self.l10,
            (1, 1) => self.l11,
            _ => panic!("Bell labels are bits"),
        }
    }

    pub fn sum(&self) -> f64 {
        self.l00 + self.l01 + self.l10 + self.l11
    }

    /// Inverse of [`lambdas`]; the trace part of the phases is discarded.
    pub fn to_params(&self) -> CanonicalParams {
        let Self { l00, l01, l10, l11 } = *self;
        CanonicalParams {
            hx: (l00 + l01 - l10 - l11) / 4.0,
            hy: (-l00 + l01 + l10 - l11) / 4.0,
            hz: (l00 - l01 + l10 - l11) / 4.0,
        }
    }
}

pub fn lambdas(p: &CanonicalParams) -> LambdaPhases {
    let CanonicalParams { hx, hy, hz } = *p;
    LambdaPhases {
        l00: hx - hy + hz,
        l01: hx + hy - hz,
        l10: -hx + hy + hz,
        l11: -hx - hy - hz,
    }
}

/// `exp(-iH) = sum_mn e^{-i lambda_mn} |gamma_mn><gamma_mn|`.
pub fn canonical_unitary(p: &CanonicalParams) -> Mat4 {
    let l = lambdas(p);
    let mut out = Mat4::zeros();
    for m in 0..2u8 {
        for n in 0..2u8 {
            let g = bell(m, n);
            out += (g * g.adjoint()) * cis(-l.get(m, n));
        }
    }
    out
}

/// Minimal CNOT cost of a two-qubit gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateClass {
    Local,
    OneCnot,
    TwoCnot,
    ThreeCnot,
}

impl GateClass {
    pub fn cnot_count(self) -> usize {
        match self {
            GateClass::Local => 0,
            GateClass::OneCnot => 1,
            GateClass::TwoCnot => 2,
            GateClass::ThreeCnot => 3,
        }
    }

    pub fn from_cnot_count(n: usize) -> Option<Self> {
        match n {
            0 => Some(GateClass::Local),
            1 => Some(GateClass::OneCnot),
            2 => Some(GateClass::TwoCnot),
            3 => Some(GateClass::ThreeCnot),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            GateClass::Local => "local",
            GateClass::OneCnot => "1-cnot",
            GateClass::TwoCnot => "2-cnot",
            GateClass::ThreeCnot => "3-cnot",
        }
    }
}

impl std::fmt::Display for GateClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

pub fn classify(p: &CanonicalParams, tol: f64) -> GateClass {
    let CanonicalParams { hx, hy, hz } = *p;
    if hx.abs().max(hy.abs()).max(hz.abs()) < tol {
        GateClass::Local
    } else if (hx - FRAC_PI_4).abs() < tol && hy.abs() < tol && hz.abs() < tol {
        GateClass::OneCnot
    } else if hz.abs() < tol {
        GateClass::TwoCnot
    } else {
        GateClass::ThreeCnot
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KakDecomposition {
    /// `u_1`, applied first on qubit A.
    pub pre_a: Mat2,
    /// `v_1`, applied first on qubit B.
    pub pre_b: Mat2,
    pub params: CanonicalParams,
    /// `u_4'`, applied last on qubit A.
    pub post_a: Mat2,
    /// `v_4'`, applied last on qubit B.
    pub post_b: Mat2,
    pub global_phase: f64,
}

impl KakDecomposition {
    /// `e^{i phase} (post_a (x) post_b) exp(-iH) (pre_a (x) pre_b)`.
    pub fn to_matrix(&self) -> Mat4 {
        kron(&self.post_a, &self.post_b)
            * canonical_unitary(&self.params)
            * kron(&self.pre_a, &self.pre_b)
            * cis(self.global_phase)
    }

    pub fn class(&self, tol: f64) -> GateClass {
        classify(&self.params, tol)
    }

    /// `exp(-iH(h)) = e^{i alpha} (la (x) lb) exp(-iH(h')) (ra (x) rb)`
    fn apply(&mut self, mv: Move) {
        self.params = mv.params;
        self.post_a *= mv.la;
        self.post_b *= mv.lb;
        self.pre_a = mv.ra * self.pre_a;
        self.pre_b = mv.rb * self.pre_b;
        self.global_phase += mv.phase;
    }

    /// Move the parameters into the Weyl chamber, folding the compensating
    /// single-qubit gates into the locals.
    pub fn canonicalize(mut self) -> Self {
        // 1. every coordinate into [-pi/4, pi/4]
        for axis in Axis::ALL {
            let k = axis.index();
            let turns = (self.params.as_array()[k] / FRAC_PI_2).round() as i64;
            for _ in 0..turns.unsigned_abs() {
                self.apply(shift(&self.params, axis, turns > 0));
            }
        }
        // 2. sort by magnitude, descending
        for (j, k) in [(0, 1), (1, 2), (0, 1)] {
            let h = self.params.as_array();
            if h[j].abs() < h[k].abs() {
                self.apply(swap(&self.params, j, k));
            }
        }
        // 3. hx, hy non-negative
        let h = self.params;
        if h.hx < 0.0 && h.hy < 0.0 {
            self.apply(flip(&self.params, Axis::Z));
        } else if h.hx < 0.0 {
            self.apply(flip(&self.params, Axis::Y));
        } else if h.hy < 0.0 {
            self.apply(flip(&self.params, Axis::X));
        }
        // 4. on the hx = pi/4 face, (pi/4, hy, hz) ~ (pi/4, hy, -hz)
        if (self.params.hx - FRAC_PI_4).abs() < BOUNDARY_TOL && self.params.hz < 0.0 {
            self.apply(shift(&self.params, Axis::X, true));
            self.apply(flip(&self.params, Axis::Y));
        }
        self
    }
}

/// Canonicalize a raw interaction triple together with its surrounding locals
/// `[pre_a, pre_b, post_a, post_b]`.
pub fn canonicalize(raw: [f64; 3], locals: [Mat2; 4], global_phase: f64) -> KakDecomposition {
    let [pre_a, pre_b, post_a, post_b] = locals;
    KakDecomposition {
        pre_a,
        pre_b,
        params: CanonicalParams::from_array(raw),
        post_a,
        post_b,
        global_phase,
    }
    .canonicalize()
}

/// A symmetry of the interaction: `exp(-iH(h)) = e^{i phase} (la (x) lb) exp(-iH(params)) (ra (x) rb)`.
struct Move {
    params: CanonicalParams,
    la: Mat2,
    lb: Mat2,
    ra: Mat2,
    rb: Mat2,
    phase: f64,
}

/// Shift one coordinate by -pi/2 (`down`) or +pi/2, using
/// `exp(-i pi/2 sigma(x)sigma) = i (i sigma)(x)(i sigma)`.
fn shift(h: &CanonicalParams, axis: Axis, down: bool) -> Move {
    let mut arr = h.as_array();
    arr[axis.index()] += if down { -FRAC_PI_2 } else { FRAC_PI_2 };
    let isig = pauli(axis) * I;
    Move {
        params: CanonicalParams::from_array(arr),
        la: isig,
        lb: isig,
        ra: Mat2::identity(),
        rb: Mat2::identity(),
        phase: if down { FRAC_PI_2 } else { -FRAC_PI_2 },
    }
}

/// Negate the two coordinates other than `keep` by conjugating qubit A with
/// `i sigma_keep`.
fn flip(h: &CanonicalParams, keep: Axis) -> Move {
    let mut arr = h.as_array();
    for (k, v) in arr.iter_mut().enumerate() {
        if k != keep.index() {
            *v = -*v;
        }
    }
    let k = pauli(keep) * I;
    Move {
        params: CanonicalParams::from_array(arr),
        la: k.adjoint(),
        lb: Mat2::identity(),
        ra: k,
        rb: Mat2::identity(),
        phase: 0.0,
    }
}

/// Exchange coordinates `j` and `k` by conjugating both qubits with a quarter
/// turn about the remaining axis.
fn swap(h: &CanonicalParams, j: usize, k: usize) -> Move {
    let mut arr = h.as_array();
    arr.swap(j, k);
    let third = Axis::ALL[3 - j - k];
    let v = rot(third, FRAC_PI_4);
    Move {
        params: CanonicalParams::from_array(arr),
        la: v.adjoint(),
        lb: v.adjoint(),
        ra: v,
        rb: v,
        phase: 0.0,
    }
}

/// Mixing weights tried, in order, when splitting the real and imaginary
/// parts of `M^T M`.
#[allow(clippy::approx_constant)]
const MIXING_WEIGHTS: [f64; 6] = [
    0.0,
    0.577_350_269_189_625_8,
    1.414_213_562_373_095,
    -0.318_309_886_183_790_7,
    2.718_281_828_459_045,
    -1.732_050_807_568_877,
];

/// Real orthogonal `P` with `P^T (M^T M) P` diagonal.
fn joint_eigenbasis(mtm: &Mat4) -> Result<Matrix4<f64>> {
    let re = mtm.map(|z| z.re);
    let im = mtm.map(|z| z.im);
    let scale = 1.0 + mtm.norm();
    for &c in MIXING_WEIGHTS.iter() {
        let mix = re + im * c;
        let mix = (mix + mix.transpose()) * 0.5;
        let p = SymmetricEigen::new(mix).eigenvectors;
        let pc = p.map(|x| C64::new(x, 0.0));
        let d = pc.transpose() * mtm * pc;
        let mut off = 0.0f64;
        for r in 0..4 {
            for col in 0..4 {
                if r != col {
                    off = off.max(d[(r, col)].norm());
                }
            }
        }
        if off < 1e-10 * scale {
            return Ok(p);
        }
    }
    Err(Error::NumericalFailure(
        "could not diagonalize M^T M with a real orthogonal basis".into(),
    ))
}

/// Order columns by eigenphase (descending), ties by sign pattern, and pin
/// each column's sign so its largest entry is positive.
fn order_eigenbasis(p: &Matrix4<f64>, phases: &[f64; 4]) -> (Matrix4<f64>, [f64; 4]) {
    let mut cols: Vec<(f64, [f64; 4])> = (0..4)
        .map(|j| {
            let mut v: [f64; 4] = std::array::from_fn(|i| p[(i, j)]);
            let lead =
                v.iter().copied().fold(
                    0.0f64,
                    |acc, x| if x.abs() > acc.abs() + 1e-12 { x } else { acc },
                );
            if lead < 0.0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
            (phases[j], v)
        })
        .collect();
    let before = |a: &(f64, [f64; 4]), b: &(f64, [f64; 4])| -> bool {
        if (a.0 - b.0).abs() > 1e-12 {
            return a.0 > b.0;
        }
        let sa = a.1.map(|x| x >= 0.0);
        let sb = b.1.map(|x| x >= 0.0);
        sa > sb
    };
    // insertion sort: the tolerant comparison is not a total order
    for i in 1..cols.len() {
        let mut j = i;
        while j > 0 && before(&cols[j], &cols[j - 1]) {
            cols.swap(j, j - 1);
            j -= 1;
        }
    }
    let mut out = Matrix4::zeros();
    let mut ph = [0.0; 4];
    for (j, (phase, v)) in cols.into_iter().enumerate() {
        ph[j] = phase;
        for i in 0..4 {
            out[(i, j)] = v[i];
        }
    }
    (out, ph)
}

/// Extract `U = e^{i phase} (u4' (x) v4') exp(-iH) (u1 (x) v1)` via the magic
/// basis, then canonicalize.
pub fn kak_decompose(u: &SpecialUnitary4) -> Result<KakDecomposition> {
    let u = u.matrix();
    let q = magic_basis();
    let q_dag = q.adjoint();
    let m = q_dag * u * q;
    let mtm = m.transpose() * m;

    let p = joint_eigenbasis(&mtm)?;
    let pc = p.map(|x| C64::new(x, 0.0));
    let diag = pc.transpose() * mtm * pc;
    let args: [f64; 4] = std::array::from_fn(|k| diag[(k, k)].arg());
    let (mut p, args) = order_eigenbasis(&p, &args);
    if p.determinant() < 0.0 {
        for i in 0..4 {
            p[(i, 3)] = -p[(i, 3)];
        }
    }

    // half-angles on (-pi/2, pi/2]
    let mut lam: [f64; 4] = args.map(|a| {
        let l = -a / 2.0;
        if l <= -FRAC_PI_2 {
            l + PI
        } else {
            l
        }
    });
    // det(D) must be +1 so the left orthogonal factor lands in SO(4)
    let total: f64 = lam.iter().sum();
    let turns = (total / PI).round();
    if (turns as i64).rem_euclid(2) == 1 {
        lam[0] += PI;
    }
    let total: f64 = lam.iter().sum();
    lam[0] -= 2.0 * PI * (total / (2.0 * PI)).round();

    // magic columns are gamma_00, gamma_10, gamma_11, gamma_01
    let raw = LambdaPhases {
        l00: lam[0],
        l10: lam[1],
        l11: lam[2],
        l01: lam[3],
    };
    let raw_h = raw.to_params();

    let pc = p.map(|x| C64::new(x, 0.0));
    let k2 = q * pc.transpose() * q_dag;
    let k1 = u * k2.adjoint() * canonical_unitary(&raw_h).adjoint();
    let pre = factor_local(&k2, LOCAL_SPLIT_TOL)
        .map_err(|e| Error::NumericalFailure(format!("right factor not local: {e}")))?;
    let post = factor_local(&k1, LOCAL_SPLIT_TOL)
        .map_err(|e| Error::NumericalFailure(format!("left factor not local: {e}")))?;

    let kak = canonicalize(
        raw_h.as_array(),
        [pre.a, pre.b, post.a, post.b],
        pre.phase + post.phase,
    );
    let kak = KakDecomposition {
        global_phase: crate::linalg::wrap_angle(kak.global_phase),
        ..kak
    };
    let dist = phase_distance(&kak.to_matrix(), u);
    if !(dist < RECONSTRUCTION_TOL) {
        return Err(Error::NumericalFailure(format!(
            "reconstruction distance {dist:.3e}"
        )));
    }
    Ok(kak)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{cnot, haar_su4, max_abs_diff, random_su2, su4_normalize, ONE};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn swap_gate() -> Mat4 {
        Mat4::from_fn(|r, c| {
            if [0, 2, 1, 3][r] == c {
                ONE
            } else {
                crate::linalg::ZERO
            }
        })
    }

    /// Brute-force `exp(-iH)` via the eigenbasis of each commuting Pauli term.
    fn expm_oracle(p: &CanonicalParams) -> Mat4 {
        let xx = kron(&pauli(Axis::X), &pauli(Axis::X));
        let yy = kron(&pauli(Axis::Y), &pauli(Axis::Y));
        let zz = kron(&pauli(Axis::Z), &pauli(Axis::Z));
        // sigma(x)sigma squares to identity: exp(-i t P) = cos t - i sin t P
        let e = |t: f64, pp: &Mat4| {
            Mat4::identity() * C64::new(t.cos(), 0.0) - pp * C64::new(0.0, t.sin())
        };
        e(p.hx, &xx) * e(p.hy, &yy) * e(p.hz, &zz)
    }

    fn reconstructs(k: &KakDecomposition, target: &Mat4, tol: f64) -> bool {
        phase_distance(&k.to_matrix(), target) < tol && max_abs_diff(&k.to_matrix(), target) < 1e-7
    }

    #[test]
    fn lambdas_examples() {
        let l = lambdas(&CanonicalParams::default());
        assert_eq!((l.l00, l.l01, l.l10, l.l11), (0.0, 0.0, 0.0, 0.0));
        let l = lambdas(&CanonicalParams::new(FRAC_PI_4, 0.0, 0.0));
        assert_eq!(
            (l.l00, l.l01, l.l10, l.l11),
            (FRAC_PI_4, FRAC_PI_4, -FRAC_PI_4, -FRAC_PI_4)
        );
        let mut r = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let p = CanonicalParams::new(r.random(), r.random(), r.random());
            assert!(lambdas(&p).sum().abs() < 1e-12);
            let back = lambdas(&p).to_params();
            assert!(
                (back.hx - p.hx).abs() < 1e-15
                    && (back.hy - p.hy).abs() < 1e-15
                    && (back.hz - p.hz).abs() < 1e-15
            );
        }
    }

    #[test]
    fn canonical_unitary_examples() {
        assert!(
            max_abs_diff(
                &canonical_unitary(&CanonicalParams::default()),
                &Mat4::identity()
            ) < 1e-15
        );
        let s = canonical_unitary(&CanonicalParams::new(FRAC_PI_4, FRAC_PI_4, FRAC_PI_4));
        assert!(phase_distance(&s, &swap_gate()) < 1e-12);
        let mut r = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let p = CanonicalParams::new(
                r.random_range(-2.0..2.0),
                r.random_range(-2.0..2.0),
                r.random_range(-2.0..2.0),
            );
            let m = canonical_unitary(&p);
            assert!(crate::linalg::unitarity_residual(&m) < 1e-12);
            assert!(max_abs_diff(&m, &expm_oracle(&p)) < 1e-12);
            let l = lambdas(&p);
            for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                let g = bell(a, b);
                assert!((m * g - g * cis(-l.get(a, b))).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn magic_basis_diagonalizes_interaction() {
        let q = magic_basis();
        let mut r = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let p = CanonicalParams::new(r.random(), r.random(), r.random());
            let d = q.adjoint() * canonical_unitary(&p) * q;
            for i in 0..4 {
                for j in 0..4 {
                    if i != j {
                        assert!(d[(i, j)].norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn classify_examples() {
        let t = CLASSIFY_TOL;
        assert_eq!(classify(&CanonicalParams::default(), t), GateClass::Local);
        assert_eq!(
            classify(&CanonicalParams::new(FRAC_PI_4, 0.0, 0.0), t),
            GateClass::OneCnot
        );
        assert_eq!(
            classify(&CanonicalParams::new(0.2, 0.0, 0.0), t),
            GateClass::TwoCnot
        );
        assert_eq!(
            classify(&CanonicalParams::new(FRAC_PI_4, FRAC_PI_4, FRAC_PI_4), t),
            GateClass::ThreeCnot
        );
        for n in 0..4 {
            assert_eq!(GateClass::from_cnot_count(n).unwrap().cnot_count(), n);
        }
    }

    #[test]
    fn canonicalize_already_canonical() {
        let id = Mat2::identity();
        let k = canonicalize([0.3, 0.2, -0.1], [id; 4], 0.0);
        assert_eq!(k.params, CanonicalParams::new(0.3, 0.2, -0.1));
        assert_eq!(k.pre_a, id);
    }

    #[test]
    fn canonicalize_moves_preserve_the_operator() {
        let id = Mat2::identity();
        let cases = [
            ([FRAC_PI_2, 0.0, 0.0], [0.0, 0.0, 0.0]),
            ([0.1, 0.3, 0.0], [0.3, 0.1, 0.0]),
        ];
        for (raw, expect) in cases.iter() {
            let k = canonicalize(*raw, [id; 4], 0.0);
            let target = canonical_unitary(&CanonicalParams::from_array(*raw));
            assert!(max_abs_diff(&k.to_matrix(), &target) < 1e-12, "{raw:?}");
            for (a, b) in k.params.as_array().iter().zip(expect) {
                assert!((a - b).abs() < 1e-12, "{raw:?} -> {:?}", k.params);
            }
        }
        let mut r = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..500 {
            let raw: [f64; 3] = std::array::from_fn(|_| r.random_range(-4.0..4.0));
            let locals = [
                random_su2(&mut r),
                random_su2(&mut r),
                random_su2(&mut r),
                random_su2(&mut r),
            ];
            let before = KakDecomposition {
                pre_a: locals[0],
                pre_b: locals[1],
                params: CanonicalParams::from_array(raw),
                post_a: locals[2],
                post_b: locals[3],
                global_phase: 0.4,
            };
            let after = canonicalize(raw, locals, 0.4);
            assert!(after.params.in_weyl_chamber(1e-12), "{:?}", after.params);
            assert!(max_abs_diff(&after.to_matrix(), &before.to_matrix()) < 1e-11);
        }
    }

    #[test]
    fn decompose_named_gates() {
        let k = kak_decompose(&SpecialUnitary4::identity()).unwrap();
        assert!(k.params.as_array().iter().all(|v| v.abs() < 1e-12));
        assert!(reconstructs(&k, &Mat4::identity(), 1e-9));

        let (cx, _) = su4_normalize(&cnot()).unwrap();
        let k = kak_decompose(&cx).unwrap();
        let h = k.params;
        assert!(
            (h.hx - FRAC_PI_4).abs() < 1e-12 && h.hy.abs() < 1e-12 && h.hz.abs() < 1e-12,
            "{h:?}"
        );
        assert!(reconstructs(&k, cx.matrix(), 1e-9));
        assert_eq!(k.class(CLASSIFY_TOL), GateClass::OneCnot);

        let (sw, _) = su4_normalize(&swap_gate()).unwrap();
        let k = kak_decompose(&sw).unwrap();
        for v in k.params.as_array() {
            assert!((v - FRAC_PI_4).abs() < 1e-12, "{:?}", k.params);
        }
        assert!(reconstructs(&k, sw.matrix(), 1e-9));
    }

    #[test]
    fn decompose_local_gates() {
        let mut r = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let g = kron(&random_su2(&mut r), &random_su2(&mut r));
            let (s, _) = su4_normalize(&g).unwrap();
            let k = kak_decompose(&s).unwrap();
            assert!(
                k.params.as_array().iter().all(|v| v.abs() < 1e-7),
                "{:?}",
                k.params
            );
            assert_eq!(k.class(CLASSIFY_TOL), GateClass::Local);
            assert!(reconstructs(&k, s.matrix(), 1e-9));
        }
    }

    #[test]
    fn decompose_random_round_trip() {
        for seed in 0..300 {
            let u = haar_su4(seed);
            let k = kak_decompose(&u).unwrap();
            assert!(k.params.in_weyl_chamber(CHAMBER_SLACK), "{:?}", k.params);
            assert!(reconstructs(&k, u.matrix(), 1e-9));
            for m in [k.pre_a, k.pre_b, k.post_a, k.post_b] {
                assert!(crate::linalg::is_special_unitary(&m, 1e-10));
            }
        }
    }

    #[test]
    fn decompose_is_deterministic() {
        let u = haar_su4(77);
        let a = kak_decompose(&u).unwrap();
        let b = kak_decompose(&u).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn canonical_params_round_trip_through_decomposition() {
        let mut r = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..200 {
            let hx: f64 = r.random_range(0.0..FRAC_PI_4);
            let hy: f64 = r.random_range(0.0..hx);
            let hz: f64 = r.random_range(-hy..hy);
            let p = CanonicalParams::new(hx, hy, hz);
            let g = kron(&random_su2(&mut r), &random_su2(&mut r))
                * canonical_unitary(&p)
                * kron(&random_su2(&mut r), &random_su2(&mut r));
            let (s, _) = su4_normalize(&g).unwrap();
            let k = kak_decompose(&s).unwrap();
            for (a, b) in k.params.as_array().iter().zip(p.as_array()) {
                assert!((a - b).abs() < 1e-8, "{p:?} -> {:?}", k.params);
            }
        }
    }
}
