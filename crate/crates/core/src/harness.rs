//! Randomized certification of the two global-entanglement statements:
//!
//! * **SYM_COHERENT** — inside the symmetric subspace, a state is a product
//!   state iff it is an atomic coherent state. Certified by running two
//!   independent detectors (the per-qubit parallelism test on the full space
//!   and the geometric-progression fit on symmetric coefficients) on
//!   coherent, random symmetric, and deliberately non-geometric inputs, and
//!   counting every disagreement as a failure.
//! * **ORTHO_ENTANGLED** — every state orthogonal to the symmetric subspace
//!   is globally entangled. Certified directly on random states of S⊥ and via
//!   the contrapositive on random product states, whose projection onto S
//!   must stay away from zero.
//!
//! Trials derive per-trial seeds from the master seed with a splitmix64 mix
//! of (suite, trial index), so reports are reproducible and order
//! independent.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::time::Instant;

use crate::coherent::{coherent_from_tau, coherent_sym_coeffs, fit_coherent, CoherentParam};
use crate::error::{Error, Result};
use crate::separability::is_product;
use crate::state::{
    decompose, gaussian_vector, inner, product_state, PureState, QubitFactor, MAX_QUBITS,
};
use crate::symmetric::{
    binomial, dicke_state, project_symmetric, random_orthogonal, random_symmetric, to_sym_coeffs,
    DickeIndex, SymCoeffs,
};

/// Default trial count per sub-suite.
pub const DEFAULT_TRIALS: usize = 500;
/// Default master seed.
pub const DEFAULT_SEED: u64 = 1;
/// Restart count for the factorization oracle.
pub const ORACLE_RESTARTS: usize = 200;
/// Distance below which the factorization oracle calls a state product.
/// Genuine products land near 1e-8 (square root of amplitude rounding);
/// entangled corpus states sit above 0.1.
pub const ORACLE_PRODUCT_DISTANCE: f64 = 1e-5;
/// Relative accuracy demanded when a fitted τ is compared to the τ that
/// generated the state.
pub const TAU_RECOVERY_TOL: f64 = 1e-10;

const EXHAUSTIVE_SEED: u64 = 0x5eed_0001;

/// Which statement a report certifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TheoremId {
    SymCoherent,
    OrthoEntangled,
    /// Agreement of the parallelism test with the brute-force factorization
    /// oracle on the small-N corpus.
    ProductOracle,
}

/// Outcome of one certification run. Reproducible for fixed
/// (theorem, n_qubits, trials, seed) in every field except `elapsed`.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub theorem_id: TheoremId,
    pub n_qubits: usize,
    /// Trials per sub-suite (total states examined for `ProductOracle`).
    pub trials: usize,
    pub failures: usize,
    /// Suite-specific margin: for `SymCoherent` the worst deviation among
    /// checks that must pass tightly; for `OrthoEntangled` the smallest
    /// S-projection norm seen over random product states; for
    /// `ProductOracle` the largest oracle distance on agreed product states.
    pub worst_residual: f64,
    pub seed: u64,
    /// Wall-clock seconds; not part of the reproducibility contract.
    pub elapsed: f64,
}

/// splitmix64 step; the standard finalizer used to derive per-trial seeds.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn trial_seed(master: u64, suite: u64, trial: u64) -> u64 {
    splitmix64(
        master
            ^ splitmix64(
                suite
                    .wrapping_mul(0x517c_c1b7_2722_0a95)
                    .wrapping_add(trial),
            ),
    )
}

/// τ drawn from the uniform (Haar) distribution on the sphere:
/// cosθ uniform on (−1, 1], φ uniform on [0, 2π).
fn sphere_tau(rng: &mut ChaCha8Rng) -> Complex64 {
    use rand::Rng;
    let z: f64 = 1.0 - 2.0 * rng.random::<f64>(); // cos θ, never exactly −1
    let phi: f64 = rng.random::<f64>() * std::f64::consts::TAU;
    let tan_half = ((1.0 - z) / (1.0 + z)).sqrt();
    tan_half * Complex64::new(0.0, -phi).exp()
}

fn random_product(n_qubits: usize, rng: &mut ChaCha8Rng) -> PureState {
    let factors: Vec<QubitFactor> = (0..n_qubits)
        .map(|_| {
            let g = gaussian_vector(2, rng);
            QubitFactor::normalized(g[0], g[1]).expect("Gaussian pair is nonzero")
        })
        .collect();
    product_state(&factors).expect("normalized factors")
}

fn check_harness_range(n_qubits: usize) -> Result<()> {
    if !(2..=MAX_QUBITS).contains(&n_qubits) {
        return Err(Error::QubitCountOutOfRange {
            n: n_qubits,
            min: 2,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

/// Certify that symmetric states are product states exactly when they are
/// coherent. Three sub-suites of `trials` each:
///
/// (a) random τ: the coherent state must pass the parallelism test and the
///     fit must recover τ;
/// (b) random symmetric states: both detectors must agree;
/// (c) geometric coefficient sequences with the dominant coefficient bumped
///     by 10%: both detectors must reject.
pub fn verify_sym_coherent(
    n_qubits: usize,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<TheoremReport> {
    check_harness_range(n_qubits)?;
    let start = Instant::now();
    let mut failures = 0usize;
    let mut worst = 0.0f64;

    // (a) coherent states are product and the parameter round-trips.
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, 0, t as u64));
        let tau = sphere_tau(&mut rng);
        let param = CoherentParam::from_tau(tau);
        let psi = coherent_from_tau(n_qubits, param)?;
        let verdict = is_product(&psi, tol);
        worst = worst.max(verdict.residual);
        if !verdict.is_product {
            failures += 1;
            continue;
        }
        let Ok(coeffs) = to_sym_coeffs(&psi, tol) else {
            failures += 1;
            continue;
        };
        let fit = fit_coherent(&coeffs, tol);
        worst = worst.max(fit.residual());
        match fit.param().and_then(|p| p.tau()) {
            Some(got) => {
                let rel = (got - tau).norm() / tau.norm().max(1.0);
                worst = worst.max(rel);
                if rel > TAU_RECOVERY_TOL {
                    failures += 1;
                }
            }
            None => failures += 1,
        }
    }

    // (b) detector agreement on random symmetric states.
    for t in 0..trials {
        let s = trial_seed(seed, 1, t as u64);
        let psi = random_symmetric(n_qubits, s)?;
        let product = is_product(&psi, tol).is_product;
        let coherent = match to_sym_coeffs(&psi, 1e-8) {
            Ok(coeffs) => fit_coherent(&coeffs, tol).is_coherent(),
            Err(_) => {
                failures += 1;
                continue;
            }
        };
        if product != coherent {
            failures += 1;
        }
    }

    // (c) spoiled geometric sequences must be rejected by both detectors.
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, 2, t as u64));
        let tau = sphere_tau(&mut rng);
        let base = coherent_sym_coeffs(n_qubits, CoherentParam::from_tau(tau))?;
        let mut c = base.coeffs().to_vec();
        let dominant = (0..=n_qubits)
            .max_by(|&i, &j| {
                let wi = binomial(n_qubits, i).sqrt() * c[i].norm();
                let wj = binomial(n_qubits, j).sqrt() * c[j].norm();
                wi.total_cmp(&wj)
            })
            .expect("nonempty coefficient list");
        c[dominant] *= 1.1;
        let spoiled = SymCoeffs::new(n_qubits, c)?;
        let psi = spoiled.to_state()?;
        if is_product(&psi, tol).is_product {
            failures += 1;
        }
        if fit_coherent(&spoiled, tol).is_coherent() {
            failures += 1;
        }
    }

    Ok(TheoremReport {
        theorem_id: TheoremId::SymCoherent,
        n_qubits,
        trials,
        failures,
        worst_residual: worst,
        seed,
        elapsed: start.elapsed().as_secs_f64(),
    })
}

/// Certify that everything orthogonal to the symmetric subspace is
/// entangled. Two sub-suites of `trials` each:
///
/// (a) random states of S⊥ must fail the parallelism test;
/// (b) contrapositive: random product states must keep a nonzero projection
///     onto S. `worst_residual` records the smallest projection norm seen.
pub fn verify_ortho_entangled(
    n_qubits: usize,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<TheoremReport> {
    check_harness_range(n_qubits)?;
    let start = Instant::now();
    let mut failures = 0usize;
    let mut min_projection = f64::INFINITY;

    for t in 0..trials {
        let s = trial_seed(seed, 3, t as u64);
        let psi = random_orthogonal(n_qubits, s)?;
        if is_product(&psi, tol).is_product {
            failures += 1;
        }
    }

    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, 4, t as u64));
        let phi = random_product(n_qubits, &mut rng);
        let norm_in_s = project_symmetric(&phi).norm_in_s;
        min_projection = min_projection.min(norm_in_s);
        if norm_in_s <= tol {
            failures += 1;
        }
    }

    Ok(TheoremReport {
        theorem_id: TheoremId::OrthoEntangled,
        n_qubits,
        trials,
        failures,
        worst_residual: if trials == 0 { 0.0 } else { min_projection },
        seed,
        elapsed: start.elapsed().as_secs_f64(),
    })
}

/// One overlap of an alternating basis pattern with a Dicke state.
#[derive(Clone, Debug)]
pub struct AlternatingEntry {
    /// Occupation number of the Dicke state.
    pub k: usize,
    /// For odd N, the value given to the last qubit before projecting.
    pub terminal_bit: Option<u8>,
    /// ⟨D_k|pattern⟩ (real by construction).
    pub overlap: f64,
}

/// Overlaps witnessing that the alternating product patterns 0101... cannot
/// be orthogonal to S.
#[derive(Clone, Debug)]
pub struct AlternatingProjections {
    pub n_qubits: usize,
    pub entries: Vec<AlternatingEntry>,
}

impl AlternatingProjections {
    pub fn min_overlap(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.overlap.abs())
            .fold(f64::INFINITY, f64::min)
    }
}

/// Compute the Dicke overlaps of the alternating pattern |0,1,0,1,...⟩.
///
/// For even N the pattern itself has N/2 ones and overlaps |D_{N/2}⟩ (the
/// m = 0 state) with value binom(N, N/2)^(−1/2). For odd N the first N−1
/// qubits alternate and the last qubit is completed with |1⟩ or |0⟩; the two
/// completions overlap |D_{(N±1)/2}⟩ (m = ±1/2). All overlaps are nonzero,
/// so any unit completion a|1⟩ + b|0⟩ keeps a nonzero projection onto S.
pub fn alternating_state_projections(n_qubits: usize) -> Result<AlternatingProjections> {
    check_harness_range(n_qubits)?;
    let alt_index = |qubits: usize| -> usize {
        // Qubit n (1-based) carries 1 when n is even.
        (2..=qubits)
            .step_by(2)
            .fold(0usize, |acc, n| acc | 1 << (n_qubits - n))
    };
    let mut entries = Vec::new();
    if n_qubits.is_multiple_of(2) {
        let pattern = PureState::basis_state(n_qubits, alt_index(n_qubits))?;
        let k = n_qubits / 2;
        let d = dicke_state(DickeIndex::new(n_qubits, k)?);
        let overlap = inner(&d, &pattern)?;
        assert!(overlap.norm() > 0.0, "even alternating pattern meets S");
        entries.push(AlternatingEntry {
            k,
            terminal_bit: None,
            overlap: overlap.re,
        });
    } else {
        let head = alt_index(n_qubits - 1);
        for (bit, k) in [(1u8, n_qubits / 2 + 1), (0u8, n_qubits / 2)] {
            let index = head | (bit as usize); // last qubit is the lowest bit
            let pattern = PureState::basis_state(n_qubits, index)?;
            let d = dicke_state(DickeIndex::new(n_qubits, k)?);
            let overlap = inner(&d, &pattern)?;
            assert!(overlap.norm() > 0.0, "odd alternating completion meets S");
            entries.push(AlternatingEntry {
                k,
                terminal_bit: Some(bit),
                overlap: overlap.re,
            });
        }
    }
    Ok(AlternatingProjections { n_qubits, entries })
}

/// Distance from ψ to the product-state manifold, estimated by multistart
/// alternating maximization of |⟨⊗factors|ψ⟩| over single-qubit factors.
///
/// Each restart updates one qubit at a time: with the other factors fixed,
/// the optimal factor is the (conjugated) environment vector, so the overlap
/// increases monotonically. Returns sqrt(2 − 2·best overlap), the minimum of
/// |ψ − Φ| over product states Φ with optimized global phase.
pub fn best_product_distance(psi: &PureState, restarts: usize, seed: u64) -> f64 {
    let n_qubits = psi.n_qubits();
    let slices: Vec<_> = (1..=n_qubits)
        .map(|n| decompose(psi, n).expect("qubit index in range"))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0.0f64;
    'restart: for _ in 0..restarts {
        let mut factors: Vec<QubitFactor> = (0..n_qubits)
            .map(|_| {
                let g = gaussian_vector(2, &mut rng);
                QubitFactor::normalized(g[0], g[1]).expect("Gaussian pair is nonzero")
            })
            .collect();
        let mut overlap = 0.0f64;
        for _ in 0..100 {
            let mut sweep_overlap = 0.0;
            for n in 1..=n_qubits {
                let d = &slices[n - 1];
                let half = d.u.len();
                let mut e0 = Complex64::ZERO;
                let mut e1 = Complex64::ZERO;
                for j in 0..half {
                    // Product of the other factors at reduced index j; the
                    // remaining qubits keep their order.
                    let mut rest = Complex64::ONE;
                    for t in 1..n_qubits {
                        let q = if t < n { t } else { t + 1 };
                        let f = &factors[q - 1];
                        let bit = j >> (n_qubits - 1 - t) & 1 == 1;
                        rest *= if bit { f.a } else { f.b };
                    }
                    e0 += rest.conj() * d.u[j];
                    e1 += rest.conj() * d.v[j];
                }
                let norm = (e0.norm_sqr() + e1.norm_sqr()).sqrt();
                if norm == 0.0 {
                    continue;
                }
                factors[n - 1] = QubitFactor {
                    a: e1 / norm,
                    b: e0 / norm,
                };
                sweep_overlap = norm;
            }
            if (sweep_overlap - overlap).abs() < 1e-14 {
                overlap = sweep_overlap;
                break;
            }
            overlap = sweep_overlap;
        }
        best = best.max(overlap);
        if best >= 1.0 - 1e-14 {
            break 'restart;
        }
    }
    (2.0 - 2.0 * best).max(0.0).sqrt()
}

fn bell() -> PureState {
    let s = Complex64::new(0.5f64.sqrt(), 0.0);
    PureState::from_amplitudes(2, vec![s, Complex64::ZERO, Complex64::ZERO, s])
        .expect("valid Bell amplitudes")
}

fn ghz3() -> PureState {
    let s = Complex64::new(0.5f64.sqrt(), 0.0);
    let mut amps = vec![Complex64::ZERO; 8];
    amps[0] = s;
    amps[7] = s;
    PureState::from_amplitudes(3, amps).expect("valid GHZ amplitudes")
}

fn w3() -> PureState {
    let s = Complex64::new((1.0f64 / 3.0).sqrt(), 0.0);
    let mut amps = vec![Complex64::ZERO; 8];
    amps[1] = s;
    amps[2] = s;
    amps[4] = s;
    PureState::from_amplitudes(3, amps).expect("valid W amplitudes")
}

/// Cross-check the parallelism test against the factorization oracle on a
/// fixed N ∈ {2, 3} corpus: every computational basis state, Bell, GHZ and W,
/// plus 100 random product and 100 random Haar states per N.
pub fn exhaustive_small_n(tol: f64) -> TheoremReport {
    let start = Instant::now();
    let mut failures = 0usize;
    let mut worst = 0.0f64;
    let mut total = 0usize;

    for n_qubits in [2usize, 3] {
        let mut corpus: Vec<PureState> = (0..1usize << n_qubits)
            .map(|i| PureState::basis_state(n_qubits, i).expect("index in range"))
            .collect();
        if n_qubits == 2 {
            corpus.push(bell());
        } else {
            corpus.push(ghz3());
            corpus.push(w3());
        }
        for t in 0..100u64 {
            let mut rng =
                ChaCha8Rng::seed_from_u64(trial_seed(EXHAUSTIVE_SEED, 10 + n_qubits as u64, t));
            corpus.push(random_product(n_qubits, &mut rng));
        }
        for t in 0..100u64 {
            let s = trial_seed(EXHAUSTIVE_SEED, 20 + n_qubits as u64, t);
            corpus.push(crate::state::random_state(n_qubits, s).expect("valid qubit count"));
        }

        for (i, psi) in corpus.iter().enumerate() {
            total += 1;
            let verdict = is_product(psi, tol).is_product;
            let dist = best_product_distance(
                psi,
                ORACLE_RESTARTS,
                trial_seed(EXHAUSTIVE_SEED, 30, (n_qubits * 1000 + i) as u64),
            );
            let oracle = dist < ORACLE_PRODUCT_DISTANCE;
            if verdict != oracle {
                failures += 1;
            } else if verdict {
                worst = worst.max(dist);
            }
        }
    }

    TheoremReport {
        theorem_id: TheoremId::ProductOracle,
        n_qubits: 3,
        trials: total,
        failures,
        worst_residual: worst,
        seed: EXHAUSTIVE_SEED,
        elapsed: start.elapsed().as_secs_f64(),
    }
}
