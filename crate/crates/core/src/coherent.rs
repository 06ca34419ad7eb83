//! Collective spin operators, SU(2) rotations, and atomic coherent states.
//!
//! Conventions, fixed once for the whole crate:
//!
//! * spin up is |1⟩: S_z = (|1⟩⟨1| − |0⟩⟨0|)/2, so J_z on the Dicke state
//!   with k ones has eigenvalue m = k − N/2;
//! * the Bloch vector u makes polar angle θ with the **negative** z axis and
//!   azimuth φ with the positive x axis, u = (sinθ cosφ, sinθ sinφ, −cosθ);
//! * the stereographic parameter is τ = tan(θ/2) e^(−iφ), with τ = 0 at
//!   u = −ẑ and τ = ∞ at u = +ẑ.
//!
//! A coherent state |τ⟩ is R_θφ |0,...,0⟩ with
//! R_θφ = exp(−iθ(J_x sinφ − J_y cosφ)); equivalently the product state
//! (1+|τ|²)^(−N/2) (|0⟩ + τ|1⟩)^⊗N, equivalently the state with
//! unnormalized-basis coefficients c_k = τ^k (1+|τ|²)^(−N/2). It is the
//! eigenstate of J·u with the top eigenvalue N/2. The three constructions are
//! kept as separate code paths so they can check each other.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::state::{product_state, PureState, QubitFactor, MAX_QUBITS};
use crate::symmetric::{binomial, SymCoeffs};

/// Point on the Riemann sphere parametrizing a coherent state: a finite
/// stereographic parameter τ or the point at infinity (θ = π, the state
/// |1,...,1⟩).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CoherentParam {
    Finite(Complex64),
    Infinity,
}

/// Real unit 3-vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    /// Validate unit length within 1e-12.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::NonUnitAxis { norm });
        }
        Ok(Self { x, y, z })
    }
}

impl CoherentParam {
    pub fn from_tau(tau: Complex64) -> Self {
        Self::Finite(tau)
    }

    pub fn infinity() -> Self {
        Self::Infinity
    }

    /// From polar/azimuth angles; θ = π maps to the point at infinity.
    pub fn from_angles(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::AngleOutOfRange {
                name: "theta",
                value: theta,
                range: "[0, pi]",
            });
        }
        if !(0.0..TAU).contains(&phi) {
            return Err(Error::AngleOutOfRange {
                name: "phi",
                value: phi,
                range: "[0, 2*pi)",
            });
        }
        if theta == PI {
            return Ok(Self::Infinity);
        }
        let tau = (theta / 2.0).tan() * Complex64::new(0.0, -phi).exp();
        Ok(Self::Finite(tau))
    }

    /// From a Bloch vector; u = +ẑ maps to the point at infinity.
    pub fn from_bloch(u: BlochVector) -> Self {
        let theta = (-u.z).clamp(-1.0, 1.0).acos();
        if theta == PI {
            return Self::Infinity;
        }
        let phi = u.y.atan2(u.x).rem_euclid(TAU);
        let phi = if theta == 0.0 { 0.0 } else { phi };
        let tau = (theta / 2.0).tan() * Complex64::new(0.0, -phi).exp();
        Self::Finite(tau)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Self::Infinity)
    }

    pub fn tau(&self) -> Option<Complex64> {
        match self {
            Self::Finite(t) => Some(*t),
            Self::Infinity => None,
        }
    }

    /// Polar angle θ = 2 atan|τ| ∈ [0, π].
    pub fn theta(&self) -> f64 {
        match self {
            Self::Finite(t) => 2.0 * t.norm().atan(),
            Self::Infinity => PI,
        }
    }

    /// Azimuth φ = −arg τ ∈ [0, 2π), canonicalized to 0 at the poles where
    /// the parametrization degenerates.
    pub fn phi(&self) -> f64 {
        match self {
            Self::Finite(t) => {
                if t.norm_sqr() == 0.0 {
                    0.0
                } else {
                    (-t.arg()).rem_euclid(TAU)
                }
            }
            Self::Infinity => 0.0,
        }
    }

    /// Bloch vector (sinθ cosφ, sinθ sinφ, −cosθ); τ = 0 gives −ẑ and the
    /// point at infinity gives +ẑ.
    pub fn bloch(&self) -> BlochVector {
        let theta = self.theta();
        let phi = self.phi();
        BlochVector {
            x: theta.sin() * phi.cos(),
            y: theta.sin() * phi.sin(),
            z: -theta.cos(),
        }
    }
}

/// Rotation axis selector for collective spin operators.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Axis {
    X,
    Y,
    Z,
    /// J·u along an arbitrary unit vector.
    Dir(BlochVector),
}

/// A collective spin component J_α = Σ_n S_α^n, carried both as its
/// (N+1)×(N+1) restriction to the Dicke basis and as the per-qubit 2×2
/// action on the full space.
#[derive(Clone, Debug)]
pub struct CollectiveOp {
    n_qubits: usize,
    axis: Axis,
    sym_matrix: Vec<Complex64>,
}

/// Build J_α (or J·u) for N qubits.
///
/// The Dicke-basis restriction is assembled from the ladder elements
/// ⟨D_{k+1}| J_+ |D_k⟩ = sqrt((k+1)(N−k)); J_z is diagonal with entries
/// m = k − N/2.
pub fn collective_op(n_qubits: usize, axis: Axis) -> Result<CollectiveOp> {
    if !(1..=MAX_QUBITS).contains(&n_qubits) {
        return Err(Error::QubitCountOutOfRange {
            n: n_qubits,
            min: 1,
            max: MAX_QUBITS,
        });
    }
    let (wx, wy, wz) = match axis {
        Axis::X => (1.0, 0.0, 0.0),
        Axis::Y => (0.0, 1.0, 0.0),
        Axis::Z => (0.0, 0.0, 1.0),
        Axis::Dir(u) => {
            let norm = (u.x * u.x + u.y * u.y + u.z * u.z).sqrt();
            if (norm - 1.0).abs() > 1e-12 {
                return Err(Error::NonUnitAxis { norm });
            }
            (u.x, u.y, u.z)
        }
    };
    let dim = n_qubits + 1;
    let mut m = vec![Complex64::ZERO; dim * dim];
    for k in 0..dim {
        m[k * dim + k] += Complex64::new(wz * (k as f64 - n_qubits as f64 / 2.0), 0.0);
    }
    for k in 0..n_qubits {
        let ladder = ((k + 1) as f64 * (n_qubits - k) as f64).sqrt();
        // J_x = (J_+ + J_-)/2, J_y = (J_+ − J_-)/(2i).
        m[(k + 1) * dim + k] += Complex64::new(wx * ladder / 2.0, -wy * ladder / 2.0);
        m[k * dim + (k + 1)] += Complex64::new(wx * ladder / 2.0, wy * ladder / 2.0);
    }
    Ok(CollectiveOp {
        n_qubits,
        axis,
        sym_matrix: m,
    })
}

impl CollectiveOp {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    /// Dimension N+1 of the Dicke-basis restriction.
    pub fn dim(&self) -> usize {
        self.n_qubits + 1
    }

    /// Row-major (N+1)×(N+1) matrix in the Dicke basis.
    pub fn sym_matrix(&self) -> &[Complex64] {
        &self.sym_matrix
    }

    pub fn sym_element(&self, row: usize, col: usize) -> Complex64 {
        self.sym_matrix[row * self.dim() + col]
    }

    /// Apply the restricted matrix to a vector of Dicke coefficients.
    pub fn apply_sym(&self, dicke_coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
        let dim = self.dim();
        if dicke_coeffs.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: dicke_coeffs.len(),
            });
        }
        Ok((0..dim)
            .map(|r| {
                (0..dim)
                    .map(|c| self.sym_matrix[r * dim + c] * dicke_coeffs[c])
                    .sum()
            })
            .collect())
    }

    /// The single-qubit 2×2 component S_α (basis order |0⟩, |1⟩).
    pub fn single_qubit_matrix(&self) -> [[Complex64; 2]; 2] {
        let (wx, wy, wz) = match self.axis {
            Axis::X => (1.0, 0.0, 0.0),
            Axis::Y => (0.0, 1.0, 0.0),
            Axis::Z => (0.0, 0.0, 1.0),
            Axis::Dir(u) => (u.x, u.y, u.z),
        };
        // u·S = (1/2) [[−uz, ux + i uy], [ux − i uy, uz]] with spin up = |1⟩.
        [
            [
                Complex64::new(-wz / 2.0, 0.0),
                Complex64::new(wx / 2.0, wy / 2.0),
            ],
            [
                Complex64::new(wx / 2.0, -wy / 2.0),
                Complex64::new(wz / 2.0, 0.0),
            ],
        ]
    }

    /// Full-space action Σ_n S_α^n applied to a state; the result is a raw
    /// amplitude vector, not a normalized state.
    pub fn apply_full(&self, psi: &PureState) -> Vec<Complex64> {
        let m = self.single_qubit_matrix();
        let mut out = vec![Complex64::ZERO; psi.dim()];
        let mut scratch = vec![Complex64::ZERO; psi.dim()];
        for n in 1..=self.n_qubits {
            scratch.copy_from_slice(psi.amps());
            crate::state::apply_single_qubit_raw(&mut scratch, self.n_qubits, n, &m);
            for (o, s) in out.iter_mut().zip(&scratch) {
                *o += s;
            }
        }
        out
    }
}

/// Coherent state as the rotation R_θφ |0,...,0⟩, built as the N-fold product
/// of the identical single-qubit rotation (closed-form 2×2 exponential
/// cos(θ/2) I − 2i sin(θ/2) (S_x sinφ − S_y cosφ)), whose |0⟩ column is
/// (cos(θ/2), sin(θ/2) e^(−iφ)).
pub fn rotation_state(n_qubits: usize, theta: f64, phi: f64) -> Result<PureState> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::AngleOutOfRange {
            name: "theta",
            value: theta,
            range: "[0, pi]",
        });
    }
    if !(0.0..TAU).contains(&phi) {
        return Err(Error::AngleOutOfRange {
            name: "phi",
            value: phi,
            range: "[0, 2*pi)",
        });
    }
    let f = QubitFactor::new(
        (theta / 2.0).sin() * Complex64::new(0.0, -phi).exp(),
        Complex64::new((theta / 2.0).cos(), 0.0),
    )?;
    product_state(&vec![f; n_qubits])
}

/// Coherent state in the closed product form
/// (1+|τ|²)^(−N/2) (|0⟩ + τ|1⟩)^⊗N; the point at infinity gives |1,...,1⟩.
pub fn coherent_from_tau(n_qubits: usize, p: CoherentParam) -> Result<PureState> {
    match p {
        CoherentParam::Infinity => PureState::basis_state(n_qubits, (1 << n_qubits) - 1),
        CoherentParam::Finite(tau) => {
            // hypot keeps (1+|τ|²)^(−1/2) finite for any finite τ.
            let c = 1.0 / 1.0f64.hypot(tau.norm());
            let f = QubitFactor::new(tau * c, Complex64::new(c, 0.0))?;
            product_state(&vec![f; n_qubits])
        }
    }
}

/// Unnormalized-basis coefficients of a coherent state,
/// c_k = τ^k (1+|τ|²)^(−N/2).
///
/// For |τ| > 1 the powers are evaluated in factored form
/// (τ/|τ|)^k exp(k ln|τ| − N ln hypot(1,|τ|)) so that large parameters never
/// overflow.
pub fn coherent_sym_coeffs(n_qubits: usize, p: CoherentParam) -> Result<SymCoeffs> {
    let mut c = vec![Complex64::ZERO; n_qubits + 1];
    match p {
        CoherentParam::Infinity => {
            c[n_qubits] = Complex64::ONE;
        }
        CoherentParam::Finite(tau) => {
            let r = tau.norm();
            if r <= 1.0 {
                let scale = 1.0f64.hypot(r).powi(-(n_qubits as i32));
                let mut power = Complex64::new(scale, 0.0);
                for ck in c.iter_mut() {
                    *ck = power;
                    power *= tau;
                }
            } else {
                let phase = tau / r;
                let log_r = r.ln();
                let log_scale = -(n_qubits as f64) * 1.0f64.hypot(r).ln();
                let mut unit = Complex64::ONE;
                for (k, ck) in c.iter_mut().enumerate() {
                    *ck = unit * (k as f64 * log_r + log_scale).exp();
                    unit *= phase;
                }
            }
        }
    }
    SymCoeffs::new(n_qubits, c)
}

/// Residual |(J·u − N/2) |τ⟩| of the top-weight eigenvalue relation, where u
/// is the Bloch vector of the parameter. Evaluated with the full-space
/// operator action.
pub fn eigen_residual(p: CoherentParam, n_qubits: usize) -> Result<f64> {
    let psi = coherent_from_tau(n_qubits, p)?;
    let op = collective_op(n_qubits, Axis::Dir(p.bloch()))?;
    let applied = op.apply_full(&psi);
    let half_n = n_qubits as f64 / 2.0;
    let res_sq: f64 = applied
        .iter()
        .zip(psi.amps())
        .map(|(j, a)| (j - half_n * a).norm_sqr())
        .sum();
    Ok(res_sq.sqrt())
}

/// Result of fitting a geometric progression c_k = τ^k c_0 to symmetric-state
/// coefficients.
#[derive(Clone, Copy, Debug)]
pub enum CoherentFit {
    Coherent { param: CoherentParam, residual: f64 },
    NotCoherent { residual: f64 },
}

impl CoherentFit {
    pub fn is_coherent(&self) -> bool {
        matches!(self, Self::Coherent { .. })
    }

    pub fn residual(&self) -> f64 {
        match self {
            Self::Coherent { residual, .. } | Self::NotCoherent { residual } => *residual,
        }
    }

    pub fn param(&self) -> Option<CoherentParam> {
        match self {
            Self::Coherent { param, .. } => Some(*param),
            Self::NotCoherent { .. } => None,
        }
    }
}

/// Detect whether coefficients form a geometric progression c_k = τ^k c_0
/// (with the all-weight-on-c_N case read as τ = ∞).
///
/// The ratio is estimated by least squares over consecutive pairs,
/// τ = Σ conj(c_k) c_{k+1} / Σ |c_k|², which weights the estimate by the
/// dominant coefficients rather than anchoring on c_0 (useless near τ = ∞).
/// The verdict compares the reconstructed sequence against the input in the
/// state norm, relative to the input norm: residual =
/// |c − β g(τ)|_phys / |c|_phys with β the best rescaling.
pub fn fit_coherent(coeffs: &SymCoeffs, tol: f64) -> CoherentFit {
    let n = coeffs.n_qubits();
    let c = coeffs.coeffs();
    let input_norm = coeffs.physical_norm();

    // Candidate at infinity: everything except c_N is residual.
    let head_norm_sq: f64 = c[..n]
        .iter()
        .enumerate()
        .map(|(k, x)| binomial(n, k) * x.norm_sqr())
        .sum();
    let mut best_residual = head_norm_sq.sqrt() / input_norm;
    let mut best_param = CoherentParam::Infinity;

    let den: f64 = c[..n].iter().map(|x| x.norm_sqr()).sum();
    if den > 0.0 {
        let num: Complex64 = c.windows(2).map(|w| w[0].conj() * w[1]).sum();
        let tau = num / den;
        if tau.is_finite() {
            let param = CoherentParam::Finite(tau);
            if let Ok(g) = coherent_sym_coeffs(n, param) {
                // β = ⟨g, c⟩ in the state inner product; |g|_phys = 1.
                let beta: Complex64 = g
                    .coeffs()
                    .iter()
                    .zip(c)
                    .enumerate()
                    .map(|(k, (gk, ck))| binomial(n, k) * gk.conj() * ck)
                    .sum();
                let res_sq: f64 = g
                    .coeffs()
                    .iter()
                    .zip(c)
                    .enumerate()
                    .map(|(k, (gk, ck))| binomial(n, k) * (ck - beta * gk).norm_sqr())
                    .sum();
                let residual = res_sq.sqrt() / input_norm;
                if residual < best_residual {
                    best_residual = residual;
                    best_param = param;
                }
            }
        }
    }

    if best_residual <= tol {
        CoherentFit::Coherent {
            param: best_param,
            residual: best_residual,
        }
    } else {
        CoherentFit::NotCoherent {
            residual: best_residual,
        }
    }
}
