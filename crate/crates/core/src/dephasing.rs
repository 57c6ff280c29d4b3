//! The dephasing kernel: β, the Ohmic-like integral I_Q(t) and the influence
//! functional α(t) = exp(-2B²|β| I_Q(t)) with its time and field derivatives.
//!
//! Units are natural (ħ = 1); t, Γ₀ and B are plain numbers and only the
//! product tΓ₀ sets the shape of I_Q.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::{self, EvalOptions};

/// Half-width of the band around Q = 1 where the Ohmic branch of I_Q is used.
///
/// For Q ≠ 1 the prefactor Γ((Q-1)/2) diverges while the bracket vanishes,
/// so between 1e-6 and roughly 1e-3 the general branch loses up to
/// `1e-16 / |Q-1|` relative accuracy once tΓ₀ > 2.
pub const OHMIC_BAND: f64 = 1e-6;

/// Reservoir parameters: Ohmicity Q and cutoff Γ₀.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OhmicEnvironment {
    q: f64,
    gamma0: f64,
    opts: EvalOptions,
}

impl OhmicEnvironment {
    pub fn new(q: f64, gamma0: f64) -> Result<Self> {
        if !(q >= 0.0) || !q.is_finite() {
            return Err(Error::Parameter(format!("Ohmicity Q must be finite and >= 0, got {q}")));
        }
        if !(gamma0 > 0.0) || !gamma0.is_finite() {
            return Err(Error::Parameter(format!("cutoff gamma0 must be finite and > 0, got {gamma0}")));
        }
        Ok(OhmicEnvironment {
            q,
            gamma0,
            opts: EvalOptions::default(),
        })
    }

    pub fn with_options(mut self, opts: EvalOptions) -> Self {
        self.opts = opts;
        self
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    pub fn options(&self) -> &EvalOptions {
        &self.opts
    }

    fn is_ohmic(&self) -> bool {
        (self.q - 1.0).abs() < OHMIC_BAND
    }

    /// Signed coupling β = -4π / Γ(Q+1) · Γ₀^{-(Q+1)}; always negative.
    pub fn beta(&self) -> f64 {
        // Γ(Q+1) has no poles for Q >= 0
        let g = specfun::gamma(self.q + 1.0).expect("Gamma(Q+1) is finite for Q >= 0");
        -4.0 * PI / g * self.gamma0.powf(-(self.q + 1.0))
    }

    fn z(&self, t: f64) -> f64 {
        -0.25 * t * t * self.gamma0 * self.gamma0
    }

    /// I_Q(t). Exactly zero at t = 0.
    pub fn i_q(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        if t == 0.0 {
            return Ok(0.0);
        }
        let z = self.z(t);
        if self.is_ohmic() {
            // the Q -> 1 limit of the general branch: (tΓ₀)² ₂F₂(1,1; 3/2,2; z)
            let f = specfun::hyp2f2_11_32_2(z, &self.opts)?;
            return Ok(-4.0 * z * f);
        }
        let a = 0.5 * (self.q - 1.0);
        let bracket = -specfun::hyp1f1_minus_one(a, 0.5, z, &self.opts)?;
        Ok(2.0 * self.gamma0.powf(self.q - 1.0) * specfun::gamma(a)? * bracket)
    }

    /// dI_Q/dt by term-wise differentiation of the hypergeometric factor.
    pub fn di_q_dt(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        if t == 0.0 {
            return Ok(0.0);
        }
        let g2 = self.gamma0 * self.gamma0;
        let z = self.z(t);
        let dz_dt = -0.5 * t * g2;
        if self.is_ohmic() {
            let f = specfun::hyp2f2_11_32_2(z, &self.opts)?;
            let df = specfun::dhyp2f2_11_32_2_dz(z, &self.opts)?;
            return Ok(2.0 * t * g2 * f + t * t * g2 * df * dz_dt);
        }
        let a = 0.5 * (self.q - 1.0);
        let dm = specfun::dhyp1f1_dz(a, 0.5, z, &self.opts)?;
        Ok(-2.0 * self.gamma0.powf(self.q - 1.0) * specfun::gamma(a)? * dm * dz_dt)
    }
}

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("time must be finite and >= 0, got {t}")));
    }
    Ok(())
}

/// β for the given environment (free-function form of [`OhmicEnvironment::beta`]).
pub fn beta(env: &OhmicEnvironment) -> f64 {
    env.beta()
}

/// Environment plus field strength B; the single source of α(t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DephasingChannel {
    env: OhmicEnvironment,
    b: f64,
    beta_abs: f64,
}

/// α and its time derivative at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaPoint {
    pub t: f64,
    pub i_q: f64,
    pub alpha: f64,
    pub dalpha_dt: f64,
}

impl DephasingChannel {
    pub fn new(env: OhmicEnvironment, b: f64) -> Result<Self> {
        if !(b >= 0.0) || !b.is_finite() {
            return Err(Error::Parameter(format!("field strength B must be finite and >= 0, got {b}")));
        }
        Ok(DephasingChannel {
            env,
            b,
            beta_abs: env.beta().abs(),
        })
    }

    /// Shorthand for `DephasingChannel::new(OhmicEnvironment::new(q, gamma0)?, b)`.
    pub fn from_params(q: f64, gamma0: f64, b: f64) -> Result<Self> {
        Self::new(OhmicEnvironment::new(q, gamma0)?, b)
    }

    pub fn env(&self) -> &OhmicEnvironment {
        &self.env
    }

    pub fn field(&self) -> f64 {
        self.b
    }

    pub fn beta_abs(&self) -> f64 {
        self.beta_abs
    }

    pub fn with_field(&self, b: f64) -> Result<Self> {
        Self::new(self.env, b)
    }

    fn rate(&self) -> f64 {
        2.0 * self.b * self.b * self.beta_abs
    }

    pub fn alpha(&self, t: f64) -> Result<f64> {
        if self.b == 0.0 {
            check_time(t)?;
            return Ok(1.0);
        }
        Ok((-self.rate() * self.env.i_q(t)?).exp())
    }

    pub fn dalpha_dt(&self, t: f64) -> Result<f64> {
        Ok(self.evaluate(t)?.dalpha_dt)
    }

    /// dα/dB = -4B|β| I_Q(t) α(t).
    pub fn dalpha_db(&self, t: f64) -> Result<f64> {
        if self.b == 0.0 {
            check_time(t)?;
            return Ok(0.0);
        }
        let i_q = self.env.i_q(t)?;
        let alpha = (-self.rate() * i_q).exp();
        Ok(-4.0 * self.b * self.beta_abs * i_q * alpha)
    }

    /// α(t) and dα/dt = -2B²|β| (dI_Q/dt) α in one pass.
    pub fn evaluate(&self, t: f64) -> Result<AlphaPoint> {
        if self.b == 0.0 {
            check_time(t)?;
            return Ok(AlphaPoint {
                t,
                i_q: self.env.i_q(t)?,
                alpha: 1.0,
                dalpha_dt: 0.0,
            });
        }
        let i_q = self.env.i_q(t)?;
        let alpha = (-self.rate() * i_q).exp();
        let dalpha_dt = -self.rate() * self.env.di_q_dt(t)? * alpha;
        Ok(AlphaPoint {
            t,
            i_q,
            alpha,
            dalpha_dt,
        })
    }
}

/// Ohmicity from the Luttinger-liquid interaction parameter: Q = 2κ - 1.
pub fn kappa_to_q(kappa: f64) -> Result<f64> {
    if !(kappa >= 0.5) || !kappa.is_finite() {
        return Err(Error::Parameter(format!("kappa must be >= 1/2, got {kappa}")));
    }
    Ok(2.0 * kappa - 1.0)
}
