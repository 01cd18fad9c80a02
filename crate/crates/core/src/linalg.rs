//! Fixed-size complex linear algebra for one- and two-qubit operators.
//!
//! Basis order for two-qubit operators is `|00>, |01>, |10>, |11>` with qubit
//! A as the left (most significant) tensor factor. Rotations use the
//! convention `rot(axis, theta) = exp(-i theta sigma)`, without the factor 1/2
//! common in hardware gate sets.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use nalgebra::{Complex, Matrix2, Matrix4, Vector4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type Mat2 = Matrix2<C64>;
pub type Mat4 = Matrix4<C64>;
pub type Vec4 = Vector4<C64>;

/// Structural tolerance used for unitarity preconditions.
pub const STRUCTURAL_TOL: f64 = 1e-10;
/// Tolerance for identities that hold up to rounding.
pub const EXACT_TOL: f64 = 1e-12;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `e^{i theta}`
#[inline]
pub fn cis(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

pub fn pauli(axis: Axis) -> Mat2 {
    match axis {
        Axis::X => Mat2::new(ZERO, ONE, ONE, ZERO),
        Axis::Y => Mat2::new(ZERO, -I, I, ZERO),
        Axis::Z => Mat2::new(ONE, ZERO, ZERO, -ONE),
    }
}

/// `exp(-i theta sigma_axis) = cos(theta) I - i sin(theta) sigma_axis`.
pub fn rot(axis: Axis, theta: f64) -> Mat2 {
    let (s, co) = theta.sin_cos();
    Mat2::identity() * c(co, 0.0) - pauli(axis) * c(0.0, s)
}

/// The single-qubit gate `(I - i sigma_x)/sqrt(2) = rot(X, pi/4)`.
pub fn w_gate() -> Mat2 {
    rot(Axis::X, std::f64::consts::FRAC_PI_4)
}

/// Hadamard, `(sigma_x + sigma_z)/sqrt(2)`.
pub fn hadamard() -> Mat2 {
    (pauli(Axis::X) + pauli(Axis::Z)) * c(FRAC_1_SQRT_2, 0.0)
}

/// Tensor product with `a` on qubit A (most significant).
pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    Mat4::from_fn(|r, col| a[(r / 2, col / 2)] * b[(r % 2, col % 2)])
}

/// Controlled-NOT with qubit A as control and B as target.
pub fn cnot() -> Mat4 {
    let mut m = Mat4::zeros();
    m[(0, 0)] = ONE;
    m[(1, 1)] = ONE;
    m[(2, 3)] = ONE;
    m[(3, 2)] = ONE;
    m
}

/// Controlled-NOT with qubit B as control and A as target.
pub fn cnot_reversed() -> Mat4 {
    let mut m = Mat4::zeros();
    m[(0, 0)] = ONE;
    m[(1, 3)] = ONE;
    m[(2, 2)] = ONE;
    m[(3, 1)] = ONE;
    m
}

/// Largest absolute entry of `m^dagger m - 1`.
pub fn unitarity_residual<const N: usize>(m: &nalgebra::SMatrix<C64, N, N>) -> f64 {
    if m.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return f64::INFINITY;
    }
    let prod = m.adjoint() * m;
    let mut worst = 0.0f64;
    for r in 0..N {
        for col in 0..N {
            let target = if r == col { ONE } else { ZERO };
            worst = worst.max((prod[(r, col)] - target).norm());
        }
    }
    worst
}

pub fn is_unitary<const N: usize>(m: &nalgebra::SMatrix<C64, N, N>, tol: f64) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) && unitarity_residual(m) <= tol
}

/// Determinant access shared by the two operator sizes.
pub trait Determinant {
    fn det(&self) -> C64;
}

impl Determinant for Mat2 {
    fn det(&self) -> C64 {
        self.determinant()
    }
}

impl Determinant for Mat4 {
    fn det(&self) -> C64 {
        self.determinant()
    }
}

pub fn is_special_unitary<const N: usize>(m: &nalgebra::SMatrix<C64, N, N>, tol: f64) -> bool
where
    nalgebra::SMatrix<C64, N, N>: Determinant,
{
    is_unitary(m, tol) && (m.det() - ONE).norm() <= tol
}

/// Largest absolute entry of `a - b`.
pub fn max_abs_diff<const N: usize>(
    a: &nalgebra::SMatrix<C64, N, N>,
    b: &nalgebra::SMatrix<C64, N, N>,
) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// A 4x4 unitary with unit determinant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialUnitary4(Mat4);

impl SpecialUnitary4 {
    pub const UNITARY_TOL: f64 = 1e-12;
    pub const DET_TOL: f64 = 1e-10;

    pub fn new(m: Mat4) -> Result<Self> {
        let residual = unitarity_residual(&m);
        if !(residual < Self::UNITARY_TOL) {
            return Err(Error::NotUnitary { residual });
        }
        let det_err = (m.determinant() - ONE).norm();
        if !(det_err < Self::DET_TOL) {
            return Err(Error::NumericalFailure(format!(
                "determinant differs from 1 by {det_err:.3e}"
            )));
        }
        Ok(Self(m))
    }

    pub fn identity() -> Self {
        Self(Mat4::identity())
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    pub fn into_inner(self) -> Mat4 {
        self.0
    }
}

/// Split `u` into `e^{i phase} s` with `det(s) = 1`, choosing the fourth root of
/// `det(u)` whose argument lies in `(-pi/4, pi/4]`.
pub fn su4_normalize(u: &Mat4) -> Result<(SpecialUnitary4, f64)> {
    let residual = unitarity_residual(u);
    if !(residual <= STRUCTURAL_TOL) {
        return Err(Error::NotUnitary { residual });
    }
    let phase = principal_arg(u.determinant()) / 4.0;
    let mut s = u * cis(-phase);
    // Re-orthonormalize lightly perturbed inputs so the stricter SU(4) bound holds.
    if unitarity_residual(&s) >= SpecialUnitary4::UNITARY_TOL {
        s = polish_unitary(&s);
        s *= cis(-s.determinant().arg() / 4.0);
    }
    Ok((SpecialUnitary4::new(s)?, phase))
}

/// Argument in `(-pi, pi]`, mapping the `-pi` edge (e.g. `-1 - 0i`) to `pi`.
fn principal_arg(z: C64) -> f64 {
    let a = z.arg();
    if a <= -PI + 1e-12 {
        a + 2.0 * PI
    } else {
        a
    }
}

/// Newton iteration towards the nearest unitary: `(m + m^{-dagger}) / 2`. towards the nearest unitary: `(m + m^{-dagger}) / 2`.
fn polish_unitary(m: &Mat4) -> Mat4 {
    let mut cur = *m;
    for _ in 0..3 {
        match cur.adjoint().try_inverse() {
            Some(inv) => cur = (cur + inv) * c(0.5, 0.0),
            None => break,
        }
    }
    cur
}

/// Bell state `|gamma_mn>`.
///
/// `gamma_00 = (|00>+|11>)/sqrt2`, `gamma_01 = (|01>+|10>)/sqrt2`,
/// `gamma_10 = (|00>-|11>)/sqrt2`, `gamma_11 = (|01>-|10>)/sqrt2`.
pub fn bell(m: u8, n: u8) -> Vec4 {
    assert!(m < 2 && n < 2, "Bell labels are bits");
    let h = c(FRAC_1_SQRT_2, 0.0);
    let sign = if m == 0 { h } else { -h };
    if n == 0 {
        Vec4::new(h, ZERO, ZERO, sign)
    } else {
        Vec4::new(ZERO, h, sign, ZERO)
    }
}

/// Product state `|x m>_A (x) |z n>_B`, with `|x 0> = (|0>+|1>)/sqrt2`.
pub fn x_z_product(m: u8, n: u8) -> Vec4 {
    assert!(m < 2 && n < 2, "labels are bits");
    let h = c(FRAC_1_SQRT_2, 0.0);
    let a = [h, if m == 0 { h } else { -h }];
    let b = if n == 0 { [ONE, ZERO] } else { [ZERO, ONE] };
    Vec4::new(a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
}

/// Magic basis with columns `gamma_00, -i gamma_10, gamma_11, -i gamma_01`.
///
/// Conjugation `Q^dagger (a (x) b) Q` maps `SU(2) (x) SU(2)` onto `SO(4)`, and
/// `Q^dagger exp(-iH) Q = diag(e^{-i l00}, e^{-i l10}, e^{-i l11}, e^{-i l01})`.
pub fn magic_basis() -> Mat4 {
    let cols = [bell(0, 0), bell(1, 0) * -I, bell(1, 1), bell(0, 1) * -I];
    Mat4::from_columns(&cols)
}

/// `1 - |tr(a^dagger b)| / 4`, zero exactly when `a` equals `b` up to global phase.
pub fn phase_distance(a: &Mat4, b: &Mat4) -> f64 {
    let tr = (a.adjoint() * b).trace();
    (1.0 - tr.norm() / 4.0).clamp(0.0, 1.0)
}

/// Argument of `tr(a^dagger b)`: the phase that best maps `a` onto `b`.
pub fn relative_phase(a: &Mat4, b: &Mat4) -> f64 {
    (a.adjoint() * b).trace().arg()
}

/// A factorization `g = e^{i phase} (a (x) b)` with `a`, `b` in SU(2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalFactors {
    pub a: Mat2,
    pub b: Mat2,
    pub phase: f64,
}

impl LocalFactors {
    pub fn to_matrix(&self) -> Mat4 {
        kron(&self.a, &self.b) * cis(self.phase)
    }
}

fn block(g: &Mat4, i: usize, j: usize) -> Mat2 {
    Mat2::from_fn(|k, l| g[(2 * i + k, 2 * j + l)])
}

/// Recover `g = e^{i phase} (a (x) b)`. Fails with `NotAProduct` when the best
/// candidate misses `g` by more than `tol` in any entry.
pub fn factor_local(g: &Mat4, tol: f64) -> Result<LocalFactors> {
    let mut best = (0, 0);
    let mut best_norm = -1.0;
    for i in 0..2 {
        for j in 0..2 {
            let n = block(g, i, j).norm();
            if n > best_norm {
                best_norm = n;
                best = (i, j);
            }
        }
    }
    if !(best_norm > 0.0) {
        return Err(Error::NotAProduct {
            residual: f64::INFINITY,
        });
    }
    let pivot = block(g, best.0, best.1);
    let det = pivot.determinant();
    if det.norm() < 1e-300 {
        return Err(Error::NotAProduct {
            residual: f64::INFINITY,
        });
    }
    let b = pivot / det.sqrt();
    let b_dag = b.adjoint();
    let mut a = Mat2::from_fn(|i, j| (b_dag * block(g, i, j)).trace() * 0.5);
    let phase = a.determinant().arg() / 2.0;
    a *= cis(-phase);
    let factors = LocalFactors { a, b, phase };
    let residual = max_abs_diff(&factors.to_matrix(), g);
    if !(residual <= tol) {
        return Err(Error::NotAProduct { residual });
    }
    Ok(factors)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EulerConvention {
    /// `e^{-ia Z} e^{-i theta X} e^{-ic Z}`
    Zxz,
    /// `e^{-ia X} e^{-i theta Z} e^{-ic X}`
    Xzx,
}

impl EulerConvention {
    fn axes(self) -> (Axis, Axis) {
        match self {
            EulerConvention::Zxz => (Axis::Z, Axis::X),
            EulerConvention::Xzx => (Axis::X, Axis::Z),
        }
    }
}

/// `u = e^{i phase} rot(outer, a) rot(inner, theta) rot(outer, c)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerAngles {
    pub a: f64,
    pub theta: f64,
    pub c: f64,
    pub phase: f64,
    pub convention: EulerConvention,
}

impl EulerAngles {
    pub fn to_matrix(&self) -> Mat2 {
        let (outer, inner) = self.convention.axes();
        rot(outer, self.a) * rot(inner, self.theta) * rot(outer, self.c) * cis(self.phase)
    }
}

/// Below this magnitude an off-diagonal (or diagonal) entry is treated as
/// exactly zero and the outer angles collapse onto one with `c = 0`.
const EULER_DEGENERATE: f64 = 1e-14;

pub fn euler_decompose(u: &Mat2, convention: EulerConvention) -> EulerAngles {
    // XZX is ZXZ conjugated by the Hadamard.
    let src = match convention {
        EulerConvention::Zxz => *u,
        EulerConvention::Xzx => {
            let h = hadamard();
            h * u * h
        }
    };
    let phase = src.determinant().arg() / 2.0;
    let s = src * cis(-phase);
    // s = [[e^{-i(a+c)} cos t, -i e^{-i(a-c)} sin t], ...]
    let alpha = s[(0, 0)];
    let beta = s[(0, 1)];
    let theta = beta.norm().atan2(alpha.norm());
    let (a, cc) = if beta.norm() < EULER_DEGENERATE {
        (-alpha.arg(), 0.0)
    } else if alpha.norm() < EULER_DEGENERATE {
        (-(beta.arg() + FRAC_PI_2), 0.0)
    } else {
        let sum = -alpha.arg();
        let diff = -(beta.arg() + FRAC_PI_2);
        ((sum + diff) / 2.0, (sum - diff) / 2.0)
    };
    EulerAngles {
        a: wrap_angle(a),
        theta,
        c: wrap_angle(cc),
        phase,
        convention,
    }
}

/// Map an angle into `(-pi, pi]`.
pub fn wrap_angle(x: f64) -> f64 {
    let mut y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y -= 2.0 * PI;
    }
    y
}

/// Haar-random element of U(4) via QR of a complex Ginibre matrix with the
/// diagonal phase correction.
pub fn random_unitary4<R: Rng + ?Sized>(rng: &mut R) -> Mat4 {
    let g = Mat4::from_fn(|_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c(re, im) * FRAC_1_SQRT_2
    });
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    let mut out = q;
    for j in 0..4 {
        let d = r[(j, j)];
        let ph = if d.norm() > 0.0 { d / d.norm() } else { ONE };
        for i in 0..4 {
            out[(i, j)] *= ph;
        }
    }
    out
}

/// Haar-random element of SU(2) from a uniformly random unit quaternion.
pub fn random_su2<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    loop {
        let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n < 1e-12 {
            continue;
        }
        let [w, x, y, z] = q.map(|v| v / n);
        return Mat2::new(c(w, -z), c(-y, -x), c(y, -x), c(w, z));
    }
}

pub fn random_su4<R: Rng + ?Sized>(rng: &mut R) -> SpecialUnitary4 {
    loop {
        if let Ok((s, _)) = su4_normalize(&random_unitary4(rng)) {
            return s;
        }
    }
}

/// Deterministic Haar-random SU(4) gate for a given seed.
pub fn haar_su4(seed: u64) -> SpecialUnitary4 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_su4(&mut rng)
}
