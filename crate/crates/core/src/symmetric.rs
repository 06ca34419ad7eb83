//! Dicke basis, symmetrization, and the symmetric subspace S.
//!
//! For N qubits the symmetric subspace is spanned by the N+1 Dicke states,
//! one per occupation number k (count of 1s). Two layers are exposed:
//!
//! * normalized Dicke states |D_k⟩ with amplitude binom(N,k)^(-1/2) on every
//!   basis index with k set bits, and
//! * unnormalized symmetric vectors with unit amplitude on those indices
//!   (norm² = binom(N,k)), in which a symmetric state reads ψ = Σ_k c_k |N,k⟩
//!   with Σ_k binom(N,k)|c_k|² = 1.
//!
//! Everything is built by popcount enumeration over basis indices; summing
//! N! permutation operators gives the identical vectors and is kept to the
//! tests as a cross-check.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::state::{gaussian_vector, vec_norm, PureState, MAX_QUBITS};

/// binom(n, k) as an exact f64 (integral for n ≤ 20 well below 2^53).
pub fn binomial(n: usize, k: usize) -> f64 {
    num_integer::binomial(n as u64, k as u64) as f64
}

/// Index (N, k) of a Dicke state: k ones among N qubits, J_z eigenvalue
/// m = k − N/2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DickeIndex {
    n_qubits: usize,
    k: usize,
}

impl DickeIndex {
    pub fn new(n_qubits: usize, k: usize) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&n_qubits) {
            return Err(Error::QubitCountOutOfRange {
                n: n_qubits,
                min: 1,
                max: MAX_QUBITS,
            });
        }
        if k > n_qubits {
            return Err(Error::InvalidDickeIndex { k, n: n_qubits });
        }
        Ok(Self { n_qubits, k })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// J_z eigenvalue m = k − N/2.
    pub fn m(&self) -> f64 {
        self.k as f64 - self.n_qubits as f64 / 2.0
    }
}

/// Coefficients c_k of a symmetric state in the unnormalized basis,
/// ψ = Σ_k c_k |N,k⟩. For a normalized state Σ_k binom(N,k)|c_k|² = 1.
#[derive(Clone, Debug, PartialEq)]
pub struct SymCoeffs {
    n_qubits: usize,
    c: Vec<Complex64>,
}

impl SymCoeffs {
    /// Wrap N+1 coefficients; rejects wrong length and the zero vector.
    pub fn new(n_qubits: usize, c: Vec<Complex64>) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&n_qubits) {
            return Err(Error::QubitCountOutOfRange {
                n: n_qubits,
                min: 1,
                max: MAX_QUBITS,
            });
        }
        if c.len() != n_qubits + 1 {
            return Err(Error::DimensionMismatch {
                expected: n_qubits + 1,
                got: c.len(),
            });
        }
        if c.iter().all(|x| x.norm_sqr() == 0.0) {
            return Err(Error::ZeroVector);
        }
        Ok(Self { n_qubits, c })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.c
    }

    /// Norm of the represented state, sqrt(Σ_k binom(N,k)|c_k|²).
    pub fn physical_norm(&self) -> f64 {
        self.c
            .iter()
            .enumerate()
            .map(|(k, x)| binomial(self.n_qubits, k) * x.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Coefficients in the orthonormal Dicke basis, d_k = c_k binom(N,k)^(1/2).
    pub fn dicke_coeffs(&self) -> Vec<Complex64> {
        self.c
            .iter()
            .enumerate()
            .map(|(k, x)| x * binomial(self.n_qubits, k).sqrt())
            .collect()
    }

    /// Expand to the full 2^N space and normalize.
    pub fn to_state(&self) -> Result<PureState> {
        let n = self.n_qubits;
        let amps = (0..1usize << n)
            .map(|i| self.c[i.count_ones() as usize])
            .collect();
        PureState::from_amplitudes(n, amps)
    }
}

/// Normalized Dicke state: amplitude binom(N,k)^(-1/2) on every basis index
/// with exactly k set bits.
pub fn dicke_state(idx: DickeIndex) -> PureState {
    let n = idx.n_qubits();
    let amp = Complex64::new(1.0 / binomial(n, idx.k()).sqrt(), 0.0);
    let amps = (0..1usize << n)
        .map(|i| {
            if i.count_ones() as usize == idx.k() {
                amp
            } else {
                Complex64::ZERO
            }
        })
        .collect();
    PureState::new_unchecked(n, amps)
}

/// Unnormalized symmetric vector |N,k⟩: unit amplitude on every basis index
/// with exactly k set bits; norm² = binom(N,k).
pub fn unnormalized_sym(idx: DickeIndex) -> Vec<Complex64> {
    let n = idx.n_qubits();
    (0..1usize << n)
        .map(|i| {
            if i.count_ones() as usize == idx.k() {
                Complex64::ONE
            } else {
                Complex64::ZERO
            }
        })
        .collect()
}

/// The two (N−1)-qubit unnormalized symmetric vectors of the splitting
/// |N,k⟩ = |0⟩_n ⊗ |N−1,k⟩ + |1⟩_n ⊗ |N−1,k−1⟩, with the out-of-range pieces
/// |N−1,−1⟩ and |N−1,N⟩ defined as zero.
///
/// The returned pair does not depend on `n` — reassembling at any qubit
/// position reproduces |N,k⟩ exactly, mirroring binom(N,k) =
/// binom(N−1,k) + binom(N−1,k−1).
pub fn recurrence_split(idx: DickeIndex, n: usize) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let n_qubits = idx.n_qubits();
    if n_qubits < 2 {
        return Err(Error::QubitCountOutOfRange {
            n: n_qubits,
            min: 2,
            max: MAX_QUBITS,
        });
    }
    if n < 1 || n > n_qubits {
        return Err(Error::QubitIndexOutOfRange { n, n_qubits });
    }
    let k = idx.k();
    let zeros = || vec![Complex64::ZERO; 1 << (n_qubits - 1)];
    let lower = if k < n_qubits {
        unnormalized_sym(DickeIndex::new(n_qubits - 1, k)?)
    } else {
        zeros()
    };
    let upper = if k >= 1 {
        unnormalized_sym(DickeIndex::new(n_qubits - 1, k - 1)?)
    } else {
        zeros()
    };
    Ok((lower, upper))
}

/// Projection of a state onto the symmetric subspace.
#[derive(Clone, Debug)]
pub struct SymmetricProjection {
    /// Amplitudes of P_S ψ in the full space (not renormalized).
    pub sym_part: Vec<Complex64>,
    /// Overlaps ⟨D_k|ψ⟩ with the normalized Dicke states, k = 0..=N.
    pub dicke_overlaps: Vec<Complex64>,
    /// Coefficients of P_S ψ in the unnormalized basis, c_k = ⟨D_k|ψ⟩ binom^(-1/2).
    pub unnorm_coeffs: Vec<Complex64>,
    /// |P_S ψ|.
    pub norm_in_s: f64,
    /// |ψ − P_S ψ|, computed from the explicit difference.
    pub ortho_norm: f64,
}

/// Project onto S with a single popcount-bucketed pass over the amplitudes.
pub fn project_symmetric(psi: &PureState) -> SymmetricProjection {
    let n = psi.n_qubits();
    let mut buckets = vec![Complex64::ZERO; n + 1];
    for (i, a) in psi.amps().iter().enumerate() {
        buckets[i.count_ones() as usize] += a;
    }
    let mut dicke_overlaps = Vec::with_capacity(n + 1);
    let mut unnorm_coeffs = Vec::with_capacity(n + 1);
    for (k, b) in buckets.iter().enumerate() {
        let binom = binomial(n, k);
        dicke_overlaps.push(b / binom.sqrt());
        unnorm_coeffs.push(b / binom);
    }
    let mut sym_part = Vec::with_capacity(psi.dim());
    let mut ortho_sq = 0.0f64;
    for (i, a) in psi.amps().iter().enumerate() {
        let s = unnorm_coeffs[i.count_ones() as usize];
        sym_part.push(s);
        ortho_sq += (a - s).norm_sqr();
    }
    SymmetricProjection {
        sym_part,
        norm_in_s: vec_norm(&dicke_overlaps),
        ortho_norm: ortho_sq.sqrt(),
        dicke_overlaps,
        unnorm_coeffs,
    }
}

/// Read off the unnormalized-basis coefficients of a state lying in S.
///
/// Fails with `NotSymmetric` when |ψ − P_S ψ| exceeds `tol`.
pub fn to_sym_coeffs(psi: &PureState, tol: f64) -> Result<SymCoeffs> {
    let proj = project_symmetric(psi);
    if proj.ortho_norm > tol {
        return Err(Error::NotSymmetric {
            residual: proj.ortho_norm,
        });
    }
    SymCoeffs::new(psi.n_qubits(), proj.unnorm_coeffs)
}

/// Coefficient shift implementing the slice maps on S: bit 0 keeps
/// (c_0, ..., c_{N−1}), bit 1 keeps (c_1, ..., c_N). The result is the
/// coefficient sequence of the corresponding (N−1)-qubit slice for every
/// choice of the split qubit.
pub fn lowering_map(coeffs: &SymCoeffs, bit: u8) -> Result<SymCoeffs> {
    let n = coeffs.n_qubits();
    if n < 2 {
        return Err(Error::QubitCountOutOfRange {
            n,
            min: 2,
            max: MAX_QUBITS,
        });
    }
    let c = coeffs.coeffs();
    let kept: Vec<Complex64> = match bit {
        0 => c[..n].to_vec(),
        1 => c[1..].to_vec(),
        _ => panic!("bit must be 0 or 1"),
    };
    // The shifted sequence may be identically zero (e.g. bit 1 on |0...0⟩);
    // keep it representable by bypassing the zero-vector check.
    Ok(SymCoeffs {
        n_qubits: n - 1,
        c: kept,
    })
}

/// Haar-like random state inside S: independent complex Gaussian Dicke
/// coefficients, normalized. Deterministic per seed.
pub fn random_symmetric(n_qubits: usize, seed: u64) -> Result<PureState> {
    if !(1..=MAX_QUBITS).contains(&n_qubits) {
        return Err(Error::QubitCountOutOfRange {
            n: n_qubits,
            min: 1,
            max: MAX_QUBITS,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = gaussian_vector(n_qubits + 1, &mut rng);
    let amps = (0..1usize << n_qubits)
        .map(|i| {
            let k = i.count_ones() as usize;
            d[k] / binomial(n_qubits, k).sqrt()
        })
        .collect();
    PureState::from_amplitudes(n_qubits, amps)
}

/// Random state in the orthogonal complement of S: Gaussian vector with the
/// symmetric component projected out, renormalized. Requires N ≥ 2 (for one
/// qubit S is the whole space).
pub fn random_orthogonal(n_qubits: usize, seed: u64) -> Result<PureState> {
    if !(2..=MAX_QUBITS).contains(&n_qubits) {
        return Err(Error::QubitCountOutOfRange {
            n: n_qubits,
            min: 2,
            max: MAX_QUBITS,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let g = gaussian_vector(1 << n_qubits, &mut rng);
        let mut buckets = vec![Complex64::ZERO; n_qubits + 1];
        for (i, a) in g.iter().enumerate() {
            buckets[i.count_ones() as usize] += a;
        }
        let residual: Vec<Complex64> = g
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let k = i.count_ones() as usize;
                a - buckets[k] / binomial(n_qubits, k)
            })
            .collect();
        if vec_norm(&residual) >= 1e-6 {
            return PureState::from_amplitudes(n_qubits, residual);
        }
    }
}
