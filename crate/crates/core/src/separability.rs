//! Product-state detection and the Meyer–Wallach global-entanglement measure.
//!
//! The detector uses the per-qubit slice criterion: ψ is a product state iff
//! for every qubit `n` the slices u (qubit = 0) and v (qubit = 1) are
//! parallel. Parallelism is scored by the wedge defect
//! D(u, v) = Σ_{i<j} |u_i v_j − u_j v_i|², which is zero iff the slices are
//! parallel (including either slice vanishing); the pairwise ratio u_i/v_i is
//! undefined at zeros and never used here.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{decompose, inner, product_state, PureState, QubitFactor};

/// Default parallelism tolerance for [`is_product`].
pub const DEFAULT_TOL: f64 = 1e-10;

/// Guard added to the residual denominator so the tolerance stays scale-free
/// even when one slice is (numerically) zero.
const SCALE_GUARD: f64 = 1e-30;

/// Outcome of the per-qubit parallelism test.
#[derive(Clone, Debug)]
pub struct SeparabilityVerdict {
    /// True iff `residual <= tol`.
    pub is_product: bool,
    /// Per-qubit factors, present iff `is_product`. Their tensor product
    /// reproduces the input up to a global phase.
    pub factors: Option<Vec<QubitFactor>>,
    /// max over qubits of D(u, v) / max(|u|²|v|², guard).
    pub residual: f64,
}

/// Wedge defect D(u, v) = Σ_{i<j} |u_i v_j − u_j v_i|².
///
/// Evaluated as |u|² · |v − (⟨u,v⟩/|u|²) u|², which equals the pair sum by
/// the Lagrange identity but stays accurate near zero where the direct
/// closed form |u|²|v|² − |⟨u,v⟩|² cancels catastrophically. Both projection
/// directions are evaluated and the smaller residual wins; on parallel
/// inputs whose proportionality is exactly representable the result is an
/// exact zero in either argument order.
pub fn wedge_defect(u: &[Complex64], v: &[Complex64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            got: v.len(),
        });
    }
    let nu: f64 = u.iter().map(|x| x.norm_sqr()).sum();
    let nv: f64 = v.iter().map(|x| x.norm_sqr()).sum();
    if nu == 0.0 || nv == 0.0 {
        return Ok(0.0);
    }
    let overlap: Complex64 = u.iter().zip(v).map(|(x, y)| x.conj() * y).sum();
    let rho_v = overlap / nu;
    let against_u: f64 = u
        .iter()
        .zip(v)
        .map(|(x, y)| (y - rho_v * x).norm_sqr())
        .sum();
    let rho_u = overlap.conj() / nv;
    let against_v: f64 = u
        .iter()
        .zip(v)
        .map(|(x, y)| (x - rho_u * y).norm_sqr())
        .sum();
    Ok((nu * against_u).min(nv * against_v))
}

/// Run the parallelism test on every qubit.
///
/// The residual is the worst normalized defect D(u,v)/max(|u|²|v|², guard);
/// a slice pair with |u| = 0 or |v| = 0 counts as parallel. When the state
/// passes, per-qubit factors are recovered from the dominant slice: the
/// magnitudes are |b| = |u|, |a| = |v| and the relative phase comes from
/// ⟨u, v⟩.
pub fn is_product(psi: &PureState, tol: f64) -> SeparabilityVerdict {
    let n_qubits = psi.n_qubits();
    let mut residual = 0.0f64;
    let mut decomps = Vec::with_capacity(n_qubits);
    for n in 1..=n_qubits {
        let d = decompose(psi, n).expect("qubit index in range");
        let nu: f64 = d.u.iter().map(|x| x.norm_sqr()).sum();
        let nv: f64 = d.v.iter().map(|x| x.norm_sqr()).sum();
        let defect = wedge_defect(&d.u, &d.v).expect("equal slice lengths");
        residual = residual.max(defect / (nu * nv).max(SCALE_GUARD));
        decomps.push((d, nu, nv));
    }
    if residual > tol {
        return SeparabilityVerdict {
            is_product: false,
            factors: None,
            residual,
        };
    }
    let factors = decomps
        .iter()
        .map(|(d, nu, nv)| {
            let (a, b) = if nu >= nv {
                let b = nu.sqrt();
                let a: Complex64 =
                    d.u.iter()
                        .zip(&d.v)
                        .map(|(x, y)| x.conj() * y)
                        .sum::<Complex64>()
                        / b;
                (a, Complex64::new(b, 0.0))
            } else {
                let a = nv.sqrt();
                let b: Complex64 =
                    d.v.iter()
                        .zip(&d.u)
                        .map(|(x, y)| x.conj() * y)
                        .sum::<Complex64>()
                        / a;
                (Complex64::new(a, 0.0), b)
            };
            QubitFactor::normalized(a, b).expect("dominant slice has positive norm")
        })
        .collect();
    SeparabilityVerdict {
        is_product: true,
        factors: Some(factors),
        residual,
    }
}

/// Deterministic factorization of a product state.
///
/// Phase convention: in each factor the first nonzero component in basis
/// order (b, then a) is made real positive, and the residual global phase is
/// absorbed into qubit 1, so the returned product reconstructs ψ itself.
pub fn factorize(psi: &PureState, tol: f64) -> Result<Vec<QubitFactor>> {
    let verdict = is_product(psi, tol);
    let Some(factors) = verdict.factors else {
        return Err(Error::EntangledInput {
            residual: verdict.residual,
        });
    };
    let mut factors: Vec<QubitFactor> = factors.iter().map(canonical_phase).collect();
    let recon = product_state(&factors)?;
    let z = inner(&recon, psi)?;
    if z.norm() > 0.0 {
        let phase = z / z.norm();
        factors[0].a *= phase;
        factors[0].b *= phase;
    }
    Ok(factors)
}

fn canonical_phase(f: &QubitFactor) -> QubitFactor {
    let lead = if f.b.norm_sqr() > 0.0 { f.b } else { f.a };
    let phase = (lead / lead.norm()).conj();
    QubitFactor {
        a: f.a * phase,
        b: f.b * phase,
    }
}

/// Meyer–Wallach global entanglement Q = (4/N) Σ_n D(uⁿ, vⁿ).
///
/// Zero exactly on product states, 1 at the maximum (e.g. Bell pairs).
pub fn meyer_wallach_q(psi: &PureState) -> f64 {
    let n_qubits = psi.n_qubits();
    let sum: f64 = (1..=n_qubits)
        .map(|n| {
            let d = decompose(psi, n).expect("qubit index in range");
            wedge_defect(&d.u, &d.v).expect("equal slice lengths")
        })
        .sum();
    4.0 / n_qubits as f64 * sum
}
