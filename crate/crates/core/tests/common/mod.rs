//! Independent oracles for cross-checking the library: everything here is
//! deliberately written from scratch against the definitions (pairwise sums,
//! Kronecker loops, permutation sums, series exponentials, partial traces)
//! and never calls the code paths it is used to verify.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;

use symcoh::state::qubit_bit;
use symcoh::{PureState, QubitFactor};

/// Direct pairwise wedge sum Σ_{i<j} |u_i v_j − u_j v_i|².
pub fn naive_wedge(u: &[Complex64], v: &[Complex64]) -> f64 {
    let mut total = 0.0;
    for i in 0..u.len() {
        for j in (i + 1)..u.len() {
            total += (u[i] * v[j] - u[j] * v[i]).norm_sqr();
        }
    }
    total
}

/// Slices of ψ with respect to qubit n, gathered by a plain bit loop.
pub fn naive_slices(psi: &PureState, n: usize) -> (Vec<Complex64>, Vec<Complex64>) {
    let n_qubits = psi.n_qubits();
    let mut u = Vec::new();
    let mut v = Vec::new();
    for i in 0..psi.dim() {
        if qubit_bit(i, n_qubits, n) {
            v.push(psi.amp(i));
        } else {
            u.push(psi.amp(i));
        }
    }
    (u, v)
}

/// Meyer–Wallach Q recomputed from the naive slices and the pairwise sum.
pub fn naive_meyer_wallach(psi: &PureState) -> f64 {
    let n_qubits = psi.n_qubits();
    let sum: f64 = (1..=n_qubits)
        .map(|n| {
            let (u, v) = naive_slices(psi, n);
            naive_wedge(&u, &v)
        })
        .sum();
    4.0 / n_qubits as f64 * sum
}

/// Meyer–Wallach Q in the purity form 2(1 − (1/N) Σ_n tr ρ_n²), with the
/// one-qubit reduced density matrices built by direct partial trace.
pub fn purity_meyer_wallach(psi: &PureState) -> f64 {
    let n_qubits = psi.n_qubits();
    let mut purity_sum = 0.0;
    for n in 1..=n_qubits {
        let pos = n_qubits - n;
        let mut rho = [[Complex64::ZERO; 2]; 2];
        for i in 0..psi.dim() {
            let s = usize::from(qubit_bit(i, n_qubits, n));
            for (t, row) in rho[s].iter_mut().enumerate() {
                let j = (i & !(1usize << pos)) | (t << pos);
                *row += psi.amp(i) * psi.amp(j).conj();
            }
        }
        let purity: f64 = (0..2)
            .flat_map(|s| (0..2).map(move |t| (s, t)))
            .map(|(s, t)| (rho[s][t] * rho[t][s]).re)
            .sum();
        purity_sum += purity;
    }
    2.0 * (1.0 - purity_sum / n_qubits as f64)
}

/// Iterated Kronecker product of the single-qubit vectors (b, a), qubit 1
/// outermost.
pub fn naive_kron(factors: &[QubitFactor]) -> Vec<Complex64> {
    let mut acc = vec![Complex64::ONE];
    for f in factors {
        let q = [f.b, f.a];
        let mut next = Vec::with_capacity(acc.len() * 2);
        for x in &acc {
            for y in &q {
                next.push(x * y);
            }
        }
        acc = next;
    }
    acc
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![0]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..n {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

/// Dicke state built the expensive way: sum all N! qubit permutations of
/// |0...01...1⟩ and normalize.
pub fn permutation_sum_dicke(n_qubits: usize, k: usize) -> Vec<Complex64> {
    let seed_index = (1usize << k) - 1; // k ones in the least significant bits
    let mut acc = vec![Complex64::ZERO; 1 << n_qubits];
    for perm in permutations(n_qubits) {
        // perm[q-1] is the 0-based new position of qubit q.
        let mut target = 0usize;
        for q in 1..=n_qubits {
            if qubit_bit(seed_index, n_qubits, q) {
                target |= 1 << (n_qubits - 1 - perm[q - 1]);
            }
        }
        acc[target] += Complex64::ONE;
    }
    let norm = acc.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    acc.iter().map(|x| x / norm).collect()
}

// Dense row-major complex matrix helpers for the series exponential.

pub fn mat_mul(a: &[Complex64], b: &[Complex64], dim: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::ZERO; dim * dim];
    for r in 0..dim {
        for inner in 0..dim {
            let x = a[r * dim + inner];
            if x == Complex64::ZERO {
                continue;
            }
            for c in 0..dim {
                out[r * dim + c] += x * b[inner * dim + c];
            }
        }
    }
    out
}

pub fn mat_vec(a: &[Complex64], v: &[Complex64], dim: usize) -> Vec<Complex64> {
    (0..dim)
        .map(|r| (0..dim).map(|c| a[r * dim + c] * v[c]).sum())
        .collect()
}

fn inf_norm(a: &[Complex64], dim: usize) -> f64 {
    (0..dim)
        .map(|r| (0..dim).map(|c| a[r * dim + c].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring of a plain Taylor series;
/// accurate far beyond 1e-12 for the small Hermitian generators used here.
pub fn expm(a: &[Complex64], dim: usize) -> Vec<Complex64> {
    let norm = inf_norm(a, dim);
    let s = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scale = Complex64::new(1.0 / (1u64 << s) as f64, 0.0);
    let scaled: Vec<Complex64> = a.iter().map(|x| x * scale).collect();

    let mut result = vec![Complex64::ZERO; dim * dim];
    for r in 0..dim {
        result[r * dim + r] = Complex64::ONE;
    }
    let mut term = result.clone();
    for order in 1..=60 {
        term = mat_mul(&term, &scaled, dim);
        let inv = Complex64::new(1.0 / order as f64, 0.0);
        for t in term.iter_mut() {
            *t *= inv;
        }
        for (res, t) in result.iter_mut().zip(&term) {
            *res += t;
        }
        if inf_norm(&term, dim) < 1e-20 {
            break;
        }
    }
    for _ in 0..s {
        result = mat_mul(&result, &result, dim);
    }
    result
}

/// Haar-ish random 2×2 unitary via Gram–Schmidt on Gaussian columns.
pub fn random_unitary_2x2(rng: &mut impl Rng) -> [[Complex64; 2]; 2] {
    use rand_distr::{Distribution, StandardNormal};
    let mut g = || Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng));
    let c0 = [g(), g()];
    let n0 = (c0[0].norm_sqr() + c0[1].norm_sqr()).sqrt();
    let c0 = [c0[0] / n0, c0[1] / n0];
    let c1 = [g(), g()];
    let overlap = c0[0].conj() * c1[0] + c0[1].conj() * c1[1];
    let c1 = [c1[0] - overlap * c0[0], c1[1] - overlap * c0[1]];
    let n1 = (c1[0].norm_sqr() + c1[1].norm_sqr()).sqrt();
    let c1 = [c1[0] / n1, c1[1] / n1];
    [[c0[0], c1[0]], [c0[1], c1[1]]]
}
