//! Quantum Fisher information for estimating the field B with the entangled
//! two-qubit probe.
//!
//! [`qfi_general`] is the spectral (SLD) formula for any state and derivative;
//! [`qfi_closed`] is the closed form for the ϑ = π/2 probe. The two are
//! independent routes to the same number and are cross-checked in tests.

use log::debug;
use rayon::prelude::*;
use serde::Serialize;

use crate::dephasing::DephasingChannel;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::nonmarkov::TimeWindow;
use crate::state::{self, DensityMatrix4};

pub const KERNEL_TOL: f64 = 1e-12;

/// ∂ρ/∂B of the evolved Bell-like state, by the chain rule through α.
pub fn drho_db(theta: f64, ch: &DephasingChannel, t: f64) -> Result<CMatrix<4>> {
    let a = ch.alpha(t)?;
    let da_db = ch.dalpha_db(t)?;
    Ok(linalg::scale(&state::evolved_x_state_dalpha(theta, a), da_db))
}

/// Spectral QFI with the pieces needed for diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QfiTerms {
    pub value: f64,
    /// Largest |⟨φ_i|∂ρ|φ_j⟩| over i ≠ j inside the support.
    pub max_offdiag: f64,
    /// Number of (i, j) pairs dropped because ω_i + ω_j ≤ kernel_tol.
    pub dropped: usize,
}

/// F = Σ 2/(ω_i+ω_j) |⟨φ_i|∂ρ|φ_j⟩|² over pairs with ω_i + ω_j > `kernel_tol`.
pub fn qfi_general_terms<const N: usize>(
    rho: &crate::state::DensityMatrix<N>,
    drho: &CMatrix<N>,
    kernel_tol: f64,
) -> Result<QfiTerms> {
    let herm = linalg::hermiticity_defect(drho);
    if herm > 1e-12 {
        return Err(Error::Domain(format!("derivative is not Hermitian (defect {herm:e})")));
    }
    let tr = linalg::trace(drho).norm();
    if tr > 1e-12 {
        return Err(Error::Domain(format!("derivative is not traceless (trace {tr:e})")));
    }
    let e = linalg::hermitian_eigen(rho.matrix());
    let rotated = linalg::mul(&linalg::adjoint(&e.vectors), &linalg::mul(drho, &e.vectors));
    let mut value = 0.0;
    let mut max_offdiag: f64 = 0.0;
    let mut dropped = 0;
    for i in 0..N {
        for j in 0..N {
            let s = e.values[i] + e.values[j];
            if s <= kernel_tol {
                dropped += 1;
                continue;
            }
            let m = rotated[i][j].norm();
            if i != j {
                max_offdiag = max_offdiag.max(m);
            }
            value += 2.0 * m * m / s;
        }
    }
    if dropped > 0 {
        debug!("QFI kernel dropped {dropped} pair(s) with ω_i + ω_j <= {kernel_tol:e}");
    }
    Ok(QfiTerms {
        value,
        max_offdiag,
        dropped,
    })
}

pub fn qfi_general(rho: &DensityMatrix4, drho: &CMatrix<4>) -> Result<f64> {
    Ok(qfi_general_terms(rho, drho, KERNEL_TOL)?.value)
}

/// F_B = 128 B²|β|² I_Q² α⁴ / (1 - α⁴) for the ϑ = π/2 probe; 0 at t = 0.
pub fn qfi_closed(ch: &DephasingChannel, t: f64) -> Result<f64> {
    let i_q = ch.env().i_q(t)?;
    let b = ch.field();
    if i_q == 0.0 || b == 0.0 {
        return Ok(0.0);
    }
    let exponent = 4.0 * 2.0 * b * b * ch.beta_abs() * i_q;
    let a4 = (-exponent).exp();
    let one_minus_a4 = -(-exponent).exp_m1();
    let beta = ch.beta_abs();
    Ok(128.0 * b * b * beta * beta * i_q * i_q * a4 / one_minus_a4)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QfiSample {
    pub t: f64,
    pub f_general: f64,
    pub f_closed: f64,
    pub rel_gap: f64,
}

/// Both QFI routes at one instant.
pub fn qfi_sample(ch: &DephasingChannel, theta: f64, t: f64) -> Result<QfiSample> {
    let rho = state::evolved_x_state(theta, ch.alpha(t)?)?.to_density();
    let f_general = qfi_general(&rho, &drho_db(theta, ch, t)?)?;
    let f_closed = qfi_closed(ch, t)?;
    Ok(QfiSample {
        t,
        f_general,
        f_closed,
        rel_gap: (f_general - f_closed).abs() / f_general.max(1e-30),
    })
}

/// QFI on the window's time grid, evaluated in parallel, returned in time order.
pub fn qfi_series(ch: &DephasingChannel, theta: f64, w: &TimeWindow) -> Result<Vec<QfiSample>> {
    let ts: Vec<f64> = w.grid().collect();
    ts.par_iter().map(|&t| qfi_sample(ch, theta, t)).collect()
}
