//! Dephasing dynamics of Majorana (topological) qubits in Ohmic-like
//! fermionic environments.
//!
//! The crate is organized bottom-up:
//!
//! * [`specfun`]: Γ, ₁F₁ and the ₂F₂ appearing in the influence functional.
//! * [`dephasing`]: β, I_Q(t) and the influence functional α(t).
//! * [`state`]: density matrices, the one- and two-qubit maps, trace distance
//!   and the Bloch affine map.
//! * [`correlations`]: concurrence, quantum discord, LQU, trace-norm discord
//!   and l1 coherence for X states.
//! * [`nonmarkov`]: BLP, LPP and coherence-based non-Markovianity measures.
//! * [`magnetometry`]: quantum Fisher information for estimating B.
//! * [`sweep`]: parameter sweeps producing CSV/JSON tables.

// index loops mirror the matrix algebra; negated comparisons reject NaN
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod correlations;
pub mod dephasing;
pub mod error;
pub mod linalg;
pub mod magnetometry;
pub mod nonmarkov;
pub mod specfun;
pub mod state;
pub mod sweep;

pub use dephasing::{kappa_to_q, AlphaPoint, DephasingChannel, OhmicEnvironment};
pub use error::{Error, Result};
pub use specfun::EvalOptions;
pub use state::{DensityMatrix, DensityMatrix2, DensityMatrix4, XState4};
