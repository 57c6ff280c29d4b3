//! Correlation quantifiers for two-qubit X states: concurrence, quantum
//! discord, local quantum uncertainty (LQU), trace-norm discord (TND) and
//! l1-norm coherence.
//!
//! Each quantity comes in a general form taking an [`XState4`] and, where a
//! closed form exists for the evolved Bell-like family, a `*_closed` or
//! `*_evolved` variant taking (ϑ, α). Entropies use log base 2 and
//! 0·log 0 = 0.

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::state::{self, DensityMatrix, XState4};

/// All five quantifiers evaluated at one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelationReport {
    pub concurrence: f64,
    pub discord: f64,
    pub lqu: f64,
    pub tnd: f64,
    pub coherence_l1: f64,
}

fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Binary entropy in bits.
pub fn binary_entropy(x: f64) -> f64 {
    -xlog2x(x) - xlog2x(1.0 - x)
}

/// Wootters concurrence of an X state.
pub fn concurrence_x(s: &XState4) -> f64 {
    let l1 = s.rho14.norm() - (s.rho22 * s.rho33).max(0.0).sqrt();
    let l2 = s.rho23.norm() - (s.rho11 * s.rho44).max(0.0).sqrt();
    2.0 * l1.max(l2).max(0.0)
}

/// Concurrence of the evolved Bell-like state.
pub fn concurrence_evolved(theta: f64, a: f64) -> f64 {
    let a2 = a * a;
    let a4 = a2 * a2;
    2.0 * (0.5 * a2 * theta.sin() - 0.25 * (a4 - 1.0).abs()).max(0.0)
}

/// Quantum discord with projective measurements on qubit B, via min(Q₁, Q₂).
pub fn discord_x(s: &XState4) -> f64 {
    let (r11, r22, r33, r44) = (s.rho11, s.rho22, s.rho33, s.rho44);
    let (c14, c23) = (s.rho14.norm(), s.rho23.norm());

    let root_a = ((r11 - r44).powi(2) + 4.0 * c14 * c14).sqrt();
    let root_b = ((r22 - r33).powi(2) + 4.0 * c23 * c23).sqrt();
    let lambdas = [
        0.5 * (r11 + r44 + root_a),
        0.5 * (r11 + r44 - root_a),
        0.5 * (r22 + r33 + root_b),
        0.5 * (r22 + r33 - root_b),
    ];
    let neg_entropy: f64 = lambdas.iter().map(|&l| xlog2x(l)).sum();
    let h_b = binary_entropy(r11 + r33);

    let d1 = {
        let z = 1.0 - 2.0 * (r33 + r44);
        let w = c14 + c23;
        binary_entropy(0.5 * (1.0 + (z * z + 4.0 * w * w).sqrt()))
    };
    let d2 = -s.diagonal().iter().map(|&p| xlog2x(p)).sum::<f64>() - h_b;

    let q1 = h_b + neg_entropy + d1;
    let q2 = h_b + neg_entropy + d2;
    q1.min(q2).max(0.0)
}

/// Closed-form discord of the evolved ϑ = π/2 state.
///
/// The printed expressions contain ln(α⁴ - 1) and ln(α² - 1), whose arguments
/// are non-positive for α ≤ 1; every logarithm argument is taken in absolute
/// value. α = 1 is the removable endpoint where both branches tend to 1.
pub fn discord_closed(a: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::Domain(format!("influence functional must lie in [0, 1], got {a}")));
    }
    if a == 1.0 {
        return Ok(1.0);
    }
    let a2 = a * a;
    let a4 = a2 * a2;
    let ln_1m_a4 = (-a4).ln_1p();
    let ln_1m_a2 = (-a2).ln_1p();
    let q1 = (ln_1m_a4 - a4 * ln_1m_a2 + a2 * ln_1m_a4 + a2 * (a2 - 2.0) * ln_1m_a2) / (2.0 * LN_2);
    let q2 = (ln_1m_a4 - (a4 + 1.0) * a4.ln_1p() + (a2 - 2.0) * a2 * ln_1m_a2 + (a2 + 2.0) * a2 * a2.ln_1p())
        / (2.0 * LN_2);
    Ok(q1.min(q2))
}

fn sqrt_psd(rho: &CMatrix<4>) -> CMatrix<4> {
    let e = linalg::hermitian_eigen(rho);
    // eigenvalues within a few ulps of zero are rounding noise, and √ noise
    // would be amplified to ~1e-8
    let floor = 4.0 * f64::EPSILON * e.values[3].abs();
    e.reconstruct(|x| if x <= floor { 0.0 } else { x.sqrt() })
}

/// LQU on qubit A: 1 - λ_max(W) with W_ij = Tr[√ρ (σ_i⊗I) √ρ (σ_j⊗I)].
pub fn lqu_x(s: &XState4) -> f64 {
    let root = sqrt_psd(&s.to_matrix());
    let id2 = linalg::identity::<2>();
    let sig = state::pauli().map(|p| linalg::kron2(&p, &id2));
    let half: [CMatrix<4>; 3] = std::array::from_fn(|i| linalg::mul(&root, &sig[i]));
    let mut w = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in i..3 {
            let v = linalg::trace(&linalg::mul(&half[i], &half[j])).re;
            w[i][j] = v;
            w[j][i] = v;
        }
    }
    let lmax = linalg::symmetric_eigenvalues(&w)[2];
    (1.0 - lmax).max(0.0)
}

/// Piecewise closed-form LQU of the evolved Bell-like state.
pub fn lqu_closed(theta: f64, a: f64) -> f64 {
    let a4 = a.powi(4);
    let root = (1.0 - a4).max(0.0).sqrt();
    if 2.0 + a4 * (2.0 * theta).cos() <= a4 + 2.0 * root {
        1.0 - root
    } else {
        a4 * theta.sin().powi(2)
    }
}

/// Trace-norm (geometric) discord of an X state.
///
/// The ratio under the square root is evaluated as the weighted mean of ξ₁²
/// and ξ_min with non-negative weights (ξ_max - ξ_min) and (ξ₁² - ξ₂²).
/// When both weights vanish the state lies on a degenerate face where the
/// ratio tends to ξ₁².
pub fn tnd_x(s: &XState4) -> Result<f64> {
    let (c14, c23) = (s.rho14.norm(), s.rho23.norm());
    let xi1_sq = 4.0 * (c23 + c14).powi(2);
    let xi3 = 1.0 - 2.0 * (s.rho22 + s.rho33);
    let x = 2.0 * (s.rho11 + s.rho22) - 1.0;
    let xi2_sq = 4.0 * (c23 - c14).powi(2);
    let xi_max = (xi3 * xi3).max(xi2_sq + x * x);
    let xi_min = xi1_sq.min(xi3 * xi3);

    let w_gap = (xi_max - xi_min).max(0.0);
    let w_coh = 16.0 * c14 * c23;
    let denom = w_gap + w_coh;
    let ratio = if denom == 0.0 {
        xi1_sq
    } else {
        (xi1_sq * w_gap + xi_min * w_coh) / denom
    };
    if !ratio.is_finite() || ratio < 0.0 {
        return Err(Error::Degenerate(format!("trace-norm discord ratio is {ratio}")));
    }
    Ok(0.5 * ratio.sqrt())
}

/// Sum of moduli of the off-diagonal entries in the computational basis.
pub fn coherence_l1<const N: usize>(rho: &DensityMatrix<N>) -> f64 {
    let m = rho.matrix();
    let mut total = 0.0;
    for i in 0..N {
        for j in 0..N {
            if i != j {
                total += m[i][j].norm();
            }
        }
    }
    total
}

/// l1 coherence of an X state without building the matrix.
pub fn coherence_l1_x(s: &XState4) -> f64 {
    2.0 * (s.rho14.norm() + s.rho23.norm())
}

pub fn report(s: &XState4) -> Result<CorrelationReport> {
    Ok(CorrelationReport {
        concurrence: concurrence_x(s),
        discord: discord_x(s),
        lqu: lqu_x(s),
        tnd: tnd_x(s)?,
        coherence_l1: coherence_l1_x(s),
    })
}
