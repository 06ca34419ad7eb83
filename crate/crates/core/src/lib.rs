//! Global entanglement of N-qubit pure states through the symmetric
//! subspace.
//!
//! The crate provides, on dense 2^N state vectors:
//!
//! * the per-qubit parallelism test for product states, factor extraction,
//!   and the Meyer–Wallach measure Q ([`separability`]);
//! * the Dicke basis, symmetrization, and the unnormalized symmetric vectors
//!   with their splitting recurrence ([`symmetric`]);
//! * collective spin operators, SU(2) rotations, atomic coherent states in
//!   rotation / Dicke-expansion / closed product form, and the
//!   geometric-progression coherence detector ([`coherent`]);
//! * randomized certification suites for the two structural facts the crate
//!   is built around — a symmetric state is unentangled iff coherent, and
//!   everything orthogonal to the symmetric subspace is entangled
//!   ([`harness`]);
//! * a JSON state-file format shared with the command-line tool ([`io`]).
//!
//! Basis convention throughout: qubit 1 is the most significant bit of the
//! basis index, so |0,0,1⟩ for N = 3 sits at index 1, and bit value 1 means
//! the qubit is in |1⟩. All operations are pure functions on immutable
//! values and safe to call from multiple threads.

pub mod coherent;
pub mod error;
pub mod harness;
pub mod io;
pub mod separability;
pub mod state;
pub mod symmetric;

pub use coherent::{
    coherent_from_tau, coherent_sym_coeffs, collective_op, eigen_residual, fit_coherent,
    rotation_state, Axis, BlochVector, CoherentFit, CoherentParam, CollectiveOp,
};
pub use error::{Error, Result};
pub use harness::{
    alternating_state_projections, best_product_distance, exhaustive_small_n,
    verify_ortho_entangled, verify_sym_coherent, AlternatingProjections, TheoremId, TheoremReport,
};
pub use separability::{factorize, is_product, meyer_wallach_q, wedge_defect, SeparabilityVerdict};
pub use state::{
    decompose, fidelity, inner, permute_qubits, product_state, random_state, recompose, PureState,
    QubitDecomposition, QubitFactor, MAX_QUBITS,
};
pub use symmetric::{
    binomial, dicke_state, lowering_map, project_symmetric, random_orthogonal, random_symmetric,
    recurrence_split, to_sym_coeffs, unnormalized_sym, DickeIndex, SymCoeffs, SymmetricProjection,
};
