//! Dense N-qubit pure states in the computational basis.
//!
//! Basis convention: the basis index encodes qubit values left to right, with
//! qubit 1 in the most significant bit. Qubit `n` (1-based) therefore occupies
//! bit position `N - n`, and bit value 1 means the qubit is in |1⟩. For N = 3
//! the ket |0,0,1⟩ sits at index 1 and |1,0,0⟩ at index 4.
//!
//! States are stored normalized; constructors either scale to unit norm or
//! reject the input.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

/// Hard cap on the qubit count (2^20 amplitudes ≈ 16 MiB of complex doubles).
pub const MAX_QUBITS: usize = 20;

/// Tolerance on the unit-norm invariants of states and factors.
pub const NORM_TOL: f64 = 1e-12;

/// Tolerance accepted by [`recompose`] on |u|^2 + |v|^2; looser than
/// [`NORM_TOL`] because slice norms of a 2^20-amplitude state accumulate
/// summation rounding.
pub const RECOMPOSE_NORM_TOL: f64 = 1e-9;

/// Normalized vector of 2^N complex amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

/// One qubit of a product state, written `a|1⟩ + b|0⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitFactor {
    /// Amplitude of |1⟩.
    pub a: Complex64,
    /// Amplitude of |0⟩.
    pub b: Complex64,
}

/// The pair of 2^(N-1)-dimensional slices of a state with respect to one
/// qubit: ψ = |0⟩_n ⊗ u + |1⟩_n ⊗ v. The slices are not normalized
/// individually, but |u|^2 + |v|^2 = 1 for a normalized state.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitDecomposition {
    /// 1-based index of the split qubit.
    pub n: usize,
    /// Amplitudes where qubit `n` is 0.
    pub u: Vec<Complex64>,
    /// Amplitudes where qubit `n` is 1.
    pub v: Vec<Complex64>,
}

fn check_qubit_count(n_qubits: usize) -> Result<()> {
    if !(1..=MAX_QUBITS).contains(&n_qubits) {
        return Err(Error::QubitCountOutOfRange {
            n: n_qubits,
            min: 1,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

/// Bit position (from the least significant end) of 1-based qubit `n`.
#[inline]
pub fn bit_pos(n_qubits: usize, n: usize) -> usize {
    n_qubits - n
}

/// Value of qubit `n` in basis index `index`.
#[inline]
pub fn qubit_bit(index: usize, n_qubits: usize, n: usize) -> bool {
    index >> bit_pos(n_qubits, n) & 1 == 1
}

impl PureState {
    /// Build a state from raw amplitudes, scaling to unit norm.
    ///
    /// The global phase is preserved as given. Rejects wrong-length input and
    /// the zero vector.
    pub fn from_amplitudes(n_qubits: usize, mut amps: Vec<Complex64>) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        let dim = 1usize << n_qubits;
        if amps.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: amps.len(),
            });
        }
        let norm = vec_norm(&amps);
        if !norm.is_finite() {
            return Err(Error::NonFiniteAmplitude);
        }
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        // Scale factor 1.0 leaves the bits untouched.
        let scale = 1.0 / norm;
        for a in &mut amps {
            *a *= scale;
        }
        Ok(Self { n_qubits, amps })
    }

    /// Computational basis state |index⟩.
    pub fn basis_state(n_qubits: usize, index: usize) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::BasisIndexOutOfRange { index, n_qubits });
        }
        let mut amps = vec![Complex64::ZERO; dim];
        amps[index] = Complex64::ONE;
        Ok(Self { n_qubits, amps })
    }

    /// Wrap amplitudes that are unit-norm by construction.
    pub(crate) fn new_unchecked(n_qubits: usize, amps: Vec<Complex64>) -> Self {
        debug_assert_eq!(amps.len(), 1 << n_qubits);
        debug_assert!((vec_norm(&amps) - 1.0).abs() < 1e-9);
        Self { n_qubits, amps }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm(&self) -> f64 {
        vec_norm(&self.amps)
    }
}

impl QubitFactor {
    /// Validate |a|^2 + |b|^2 = 1 within [`NORM_TOL`].
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        let norm_sq = a.norm_sqr() + b.norm_sqr();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::UnnormalizedFactor { norm_sq });
        }
        Ok(Self { a, b })
    }

    /// Scale an arbitrary nonzero pair to a unit factor.
    pub fn normalized(a: Complex64, b: Complex64) -> Result<Self> {
        let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        if !norm.is_finite() {
            return Err(Error::NonFiniteAmplitude);
        }
        Ok(Self {
            a: a / norm,
            b: b / norm,
        })
    }

    /// |⟨self|other⟩|, the single-qubit overlap magnitude.
    pub fn fidelity(&self, other: &QubitFactor) -> f64 {
        (self.a.conj() * other.a + self.b.conj() * other.b).norm()
    }
}

pub(crate) fn vec_norm(amps: &[Complex64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Tensor product ⊗_n (a_n|1⟩ + b_n|0⟩) over the given factors, qubit 1 first.
///
/// The amplitude at basis index `i` is the product over qubits of `a_n` where
/// the qubit's bit is set and `b_n` where it is clear, multiplied in qubit
/// order; this reproduces an iterated Kronecker product bit for bit.
pub fn product_state(factors: &[QubitFactor]) -> Result<PureState> {
    if factors.is_empty() {
        return Err(Error::EmptyFactors);
    }
    let n_qubits = factors.len();
    check_qubit_count(n_qubits)?;
    for f in factors {
        let norm_sq = f.a.norm_sqr() + f.b.norm_sqr();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::UnnormalizedFactor { norm_sq });
        }
    }
    let dim = 1usize << n_qubits;
    let mut amps = vec![Complex64::ONE; dim];
    for (i, amp) in amps.iter_mut().enumerate() {
        for (n, f) in factors.iter().enumerate() {
            *amp *= if qubit_bit(i, n_qubits, n + 1) {
                f.a
            } else {
                f.b
            };
        }
    }
    Ok(PureState::new_unchecked(n_qubits, amps))
}

/// Split ψ into the slices u (qubit `n` = 0) and v (qubit `n` = 1), keeping
/// the induced ordering of the remaining qubits. Exact inverse of
/// [`recompose`].
pub fn decompose(psi: &PureState, n: usize) -> Result<QubitDecomposition> {
    let n_qubits = psi.n_qubits();
    if n < 1 || n > n_qubits {
        return Err(Error::QubitIndexOutOfRange { n, n_qubits });
    }
    let pos = bit_pos(n_qubits, n);
    let half = 1usize << (n_qubits - 1);
    let low_mask = (1usize << pos) - 1;
    let mut u = Vec::with_capacity(half);
    let mut v = Vec::with_capacity(half);
    for j in 0..half {
        let base = (j >> pos) << (pos + 1) | (j & low_mask);
        u.push(psi.amp(base));
        v.push(psi.amp(base | 1 << pos));
    }
    Ok(QubitDecomposition { n, u, v })
}

/// Reassemble ψ = |0⟩_n ⊗ u + |1⟩_n ⊗ v. Bit-exact inverse of [`decompose`];
/// the slices are interleaved without rescaling, so the combined norm must
/// already be 1 within [`RECOMPOSE_NORM_TOL`].
pub fn recompose(d: &QubitDecomposition) -> Result<PureState> {
    let half = d.u.len();
    if d.v.len() != half {
        return Err(Error::DimensionMismatch {
            expected: half,
            got: d.v.len(),
        });
    }
    if half == 0 || !half.is_power_of_two() {
        return Err(Error::DimensionMismatch {
            expected: half.next_power_of_two().max(1),
            got: half,
        });
    }
    let n_qubits = half.ilog2() as usize + 1;
    check_qubit_count(n_qubits)?;
    if d.n < 1 || d.n > n_qubits {
        return Err(Error::QubitIndexOutOfRange { n: d.n, n_qubits });
    }
    let total = d.u.iter().chain(&d.v).map(|a| a.norm_sqr()).sum::<f64>();
    if (total - 1.0).abs() > RECOMPOSE_NORM_TOL {
        return Err(Error::NormViolation { total });
    }
    let pos = bit_pos(n_qubits, d.n);
    let low_mask = (1usize << pos) - 1;
    let mut amps = vec![Complex64::ZERO; 1 << n_qubits];
    for j in 0..half {
        let base = (j >> pos) << (pos + 1) | (j & low_mask);
        amps[base] = d.u[j];
        amps[base | 1 << pos] = d.v[j];
    }
    Ok(PureState::new_unchecked(n_qubits, amps))
}

impl QubitDecomposition {
    /// Qubit count of the reassembled state.
    pub fn n_qubits(&self) -> usize {
        self.u.len().ilog2() as usize + 1
    }
}

/// Inner product ⟨ψ|φ⟩, conjugate-linear in the first argument.
pub fn inner(psi: &PureState, phi: &PureState) -> Result<Complex64> {
    if psi.n_qubits() != phi.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: psi.dim(),
            got: phi.dim(),
        });
    }
    Ok(psi
        .amps()
        .iter()
        .zip(phi.amps())
        .map(|(a, b)| a.conj() * b)
        .sum())
}

/// |⟨ψ|φ⟩|, insensitive to global phase.
pub fn fidelity(psi: &PureState, phi: &PureState) -> Result<f64> {
    Ok(inner(psi, phi)?.norm())
}

/// Haar-distributed random state: 2^N independent standard complex Gaussian
/// components, normalized. Deterministic for a fixed seed.
pub fn random_state(n_qubits: usize, seed: u64) -> Result<PureState> {
    check_qubit_count(n_qubits)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amps = gaussian_vector(1 << n_qubits, &mut rng);
    PureState::from_amplitudes(n_qubits, amps)
}

/// Vector of independent standard complex Gaussians.
pub(crate) fn gaussian_vector(len: usize, rng: &mut impl rand::Rng) -> Vec<Complex64> {
    (0..len)
        .map(|_| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
        .collect()
}

/// Apply a 2x2 matrix `m` (row-major, basis order |0⟩, |1⟩) to qubit `n`.
///
/// The result is renormalized only by the matrix itself: pass a unitary to
/// stay on the unit sphere.
pub fn apply_single_qubit(psi: &PureState, n: usize, m: &[[Complex64; 2]; 2]) -> Result<PureState> {
    let n_qubits = psi.n_qubits();
    if n < 1 || n > n_qubits {
        return Err(Error::QubitIndexOutOfRange { n, n_qubits });
    }
    let mut amps = psi.amps().to_vec();
    apply_single_qubit_raw(&mut amps, n_qubits, n, m);
    Ok(PureState::new_unchecked(n_qubits, amps))
}

pub(crate) fn apply_single_qubit_raw(
    amps: &mut [Complex64],
    n_qubits: usize,
    n: usize,
    m: &[[Complex64; 2]; 2],
) {
    let pos = bit_pos(n_qubits, n);
    let low_mask = (1usize << pos) - 1;
    for j in 0..amps.len() / 2 {
        let base = (j >> pos) << (pos + 1) | (j & low_mask);
        let hi = base | 1 << pos;
        let a0 = amps[base];
        let a1 = amps[hi];
        amps[base] = m[0][0] * a0 + m[0][1] * a1;
        amps[hi] = m[1][0] * a0 + m[1][1] * a1;
    }
}

/// Relabel qubits: qubit `n` of the input becomes qubit `perm[n-1]` of the
/// output. `perm` must be a permutation of 1..=N.
pub fn permute_qubits(psi: &PureState, perm: &[usize]) -> Result<PureState> {
    let n_qubits = psi.n_qubits();
    if perm.len() != n_qubits {
        return Err(Error::InvalidPermutation(perm.to_vec()));
    }
    let mut seen = vec![false; n_qubits];
    for &p in perm {
        if p < 1 || p > n_qubits || seen[p - 1] {
            return Err(Error::InvalidPermutation(perm.to_vec()));
        }
        seen[p - 1] = true;
    }
    let mut amps = vec![Complex64::ZERO; psi.dim()];
    for (i, &amp) in psi.amps().iter().enumerate() {
        let mut j = 0usize;
        for n in 1..=n_qubits {
            if qubit_bit(i, n_qubits, n) {
                j |= 1 << bit_pos(n_qubits, perm[n - 1]);
            }
        }
        amps[j] = amp;
    }
    Ok(PureState::new_unchecked(n_qubits, amps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn basis_state_indexing_convention() {
        // |0,0,1⟩ has qubit 3 set, which is the least significant bit.
        let psi = PureState::basis_state(3, 1).unwrap();
        assert_eq!(psi.amp(1), Complex64::ONE);
        let from_factors = product_state(&[
            QubitFactor::new(c(0.0, 0.0), c(1.0, 0.0)).unwrap(),
            QubitFactor::new(c(0.0, 0.0), c(1.0, 0.0)).unwrap(),
            QubitFactor::new(c(1.0, 0.0), c(0.0, 0.0)).unwrap(),
        ])
        .unwrap();
        assert_eq!(from_factors.amps(), psi.amps());
    }

    #[test]
    fn from_amplitudes_normalizes_three_four_five() {
        let psi = PureState::from_amplitudes(1, vec![c(3.0, 0.0), c(0.0, 4.0)]).unwrap();
        assert!((psi.amp(0) - c(0.6, 0.0)).norm() < 1e-15);
        assert!((psi.amp(1) - c(0.0, 0.8)).norm() < 1e-15);
    }

    #[test]
    fn from_amplitudes_rejects_bad_input() {
        assert!(matches!(
            PureState::from_amplitudes(2, vec![c(0.0, 0.0); 3]),
            Err(Error::DimensionMismatch {
                expected: 4,
                got: 3
            })
        ));
        assert!(matches!(
            PureState::from_amplitudes(1, vec![c(0.0, 0.0); 2]),
            Err(Error::ZeroVector)
        ));
        assert!(matches!(
            PureState::from_amplitudes(0, vec![c(1.0, 0.0)]),
            Err(Error::QubitCountOutOfRange { .. })
        ));
        assert!(matches!(
            PureState::from_amplitudes(MAX_QUBITS + 1, vec![]),
            Err(Error::QubitCountOutOfRange { .. })
        ));
    }

    #[test]
    fn product_state_two_qubit_basis() {
        // (a=0,b=1) ⊗ (a=1,b=0) = |0,1⟩ at index 1.
        let psi = product_state(&[
            QubitFactor::new(c(0.0, 0.0), c(1.0, 0.0)).unwrap(),
            QubitFactor::new(c(1.0, 0.0), c(0.0, 0.0)).unwrap(),
        ])
        .unwrap();
        assert_eq!(psi.amp(1), Complex64::ONE);
        assert_eq!(psi.amp(0), Complex64::ZERO);
    }

    #[test]
    fn product_state_uniform_superposition() {
        let h = QubitFactor::new(c(0.5f64.sqrt(), 0.0), c(0.5f64.sqrt(), 0.0)).unwrap();
        let psi = product_state(&[h, h]).unwrap();
        for i in 0..4 {
            assert!((psi.amp(i) - c(0.5, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn product_state_rejects_unnormalized_factor() {
        let bad = QubitFactor {
            a: c(1.0, 0.0),
            b: c(1.0, 0.0),
        };
        assert!(matches!(
            product_state(&[bad]),
            Err(Error::UnnormalizedFactor { .. })
        ));
        assert!(matches!(product_state(&[]), Err(Error::EmptyFactors)));
    }

    #[test]
    fn decompose_basis_state() {
        let psi = PureState::basis_state(2, 1).unwrap(); // |0,1⟩
        let d = decompose(&psi, 1).unwrap();
        assert_eq!(d.u, vec![Complex64::ZERO, Complex64::ONE]); // |1⟩
        assert_eq!(d.v, vec![Complex64::ZERO, Complex64::ZERO]);
        let d2 = decompose(&psi, 2).unwrap();
        assert_eq!(d2.u, vec![Complex64::ZERO, Complex64::ZERO]);
        assert_eq!(d2.v, vec![Complex64::ONE, Complex64::ZERO]); // |0⟩
    }

    #[test]
    fn decompose_bell_state() {
        let s = c(0.5f64.sqrt(), 0.0);
        let bell = PureState::from_amplitudes(2, vec![s, c(0.0, 0.0), c(0.0, 0.0), s]).unwrap();
        let d = decompose(&bell, 1).unwrap();
        assert_eq!(d.u, vec![s, Complex64::ZERO]);
        assert_eq!(d.v, vec![Complex64::ZERO, s]);
    }

    #[test]
    fn decompose_rejects_out_of_range() {
        let psi = PureState::basis_state(2, 0).unwrap();
        assert!(matches!(
            decompose(&psi, 0),
            Err(Error::QubitIndexOutOfRange { .. })
        ));
        assert!(matches!(
            decompose(&psi, 3),
            Err(Error::QubitIndexOutOfRange { .. })
        ));
    }

    #[test]
    fn recompose_inverts_decompose_bit_exactly() {
        for seed in 0..100 {
            let psi = random_state(4, seed).unwrap();
            for n in 1..=4 {
                let d = decompose(&psi, n).unwrap();
                let back = recompose(&d).unwrap();
                assert_eq!(back.amps(), psi.amps(), "n = {n}, seed = {seed}");
            }
        }
    }

    #[test]
    fn recompose_basis_examples() {
        let d = QubitDecomposition {
            n: 1,
            u: vec![Complex64::ZERO, Complex64::ONE], // |1⟩ on the remaining qubit
            v: vec![Complex64::ZERO, Complex64::ZERO],
        };
        assert_eq!(recompose(&d).unwrap().amp(1), Complex64::ONE); // |0,1⟩

        let d = QubitDecomposition {
            n: 2,
            u: vec![Complex64::ZERO, Complex64::ZERO],
            v: vec![Complex64::ONE, Complex64::ZERO], // |0⟩ on the remaining qubit
        };
        assert_eq!(recompose(&d).unwrap().amp(1), Complex64::ONE); // |0,1⟩
    }

    #[test]
    fn recompose_rejects_norm_violation() {
        let d = QubitDecomposition {
            n: 1,
            u: vec![c(1.0, 0.0)],
            v: vec![c(1.0, 0.0)],
        };
        assert!(matches!(recompose(&d), Err(Error::NormViolation { .. })));
    }

    #[test]
    fn slice_norms_sum_to_state_norm() {
        for seed in 0..20 {
            let psi = random_state(5, seed).unwrap();
            for n in 1..=5 {
                let d = decompose(&psi, n).unwrap();
                let total: f64 = d.u.iter().chain(&d.v).map(|a| a.norm_sqr()).sum();
                assert!((total - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn inner_product_basics() {
        let b01 = PureState::basis_state(2, 1).unwrap();
        let b00 = PureState::basis_state(2, 0).unwrap();
        let b11 = PureState::basis_state(2, 3).unwrap();
        assert_eq!(inner(&b01, &b01).unwrap(), Complex64::ONE);
        assert_eq!(inner(&b00, &b11).unwrap(), Complex64::ZERO);
        let s = c(0.5f64.sqrt(), 0.0);
        let bell = PureState::from_amplitudes(2, vec![s, c(0.0, 0.0), c(0.0, 0.0), s]).unwrap();
        assert!((inner(&bell, &bell).unwrap() - Complex64::ONE).norm() < 1e-15);
    }

    #[test]
    fn inner_is_conjugate_linear_in_first_argument() {
        let psi = random_state(3, 7).unwrap();
        let phi = random_state(3, 8).unwrap();
        let z = inner(&psi, &phi).unwrap();
        let z_rev = inner(&phi, &psi).unwrap();
        assert!((z - z_rev.conj()).norm() < 1e-14);
        assert!(z.norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn inner_rejects_dimension_mismatch() {
        let a = PureState::basis_state(2, 0).unwrap();
        let b = PureState::basis_state(3, 0).unwrap();
        assert!(inner(&a, &b).is_err());
    }

    #[test]
    fn random_state_deterministic_and_normalized() {
        let a = random_state(2, 42).unwrap();
        let b = random_state(2, 42).unwrap();
        assert_eq!(a.amps(), b.amps());
        assert!((a.norm() - 1.0).abs() < 1e-12);
        let other = random_state(2, 43).unwrap();
        assert_ne!(a.amps(), other.amps());
    }

    #[test]
    fn permute_qubits_moves_bits() {
        // |0,1,1⟩ with permutation sending qubit 1 -> 3, 2 -> 1, 3 -> 2
        // puts qubit values (0,1,1) at new positions: qubit 3 = 0, 1 = 1, 2 = 1,
        // i.e. |1,1,0⟩ = index 6.
        let psi = PureState::basis_state(3, 3).unwrap();
        let sigma = permute_qubits(&psi, &[3, 1, 2]).unwrap();
        assert_eq!(sigma.amp(6), Complex64::ONE);
        assert!(matches!(
            permute_qubits(&psi, &[1, 1, 2]),
            Err(Error::InvalidPermutation(_))
        ));
    }

    #[test]
    fn apply_single_qubit_flips() {
        let x = [
            [Complex64::ZERO, Complex64::ONE],
            [Complex64::ONE, Complex64::ZERO],
        ];
        let psi = PureState::basis_state(3, 0).unwrap();
        let flipped = apply_single_qubit(&psi, 2, &x).unwrap();
        assert_eq!(flipped.amp(2), Complex64::ONE); // |0,1,0⟩
    }
}
