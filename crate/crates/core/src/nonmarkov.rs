//! Non-Markovianity of the dephasing channel.
//!
//! Every measure here is the positive variation of some smooth function of
//! α(t) over a finite window: the sum of f(local max) - f(preceding local min)
//! over the intervals where f increases. The integral of a derivative
//! telescopes between extrema, so no quadrature is involved; the extrema are
//! located on a uniform grid and refined by bisection on the sign of df/dt.

use log::warn;
use rayon::prelude::*;
use serde::Serialize;

use crate::dephasing::DephasingChannel;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::specfun::CompensatedSum;
use crate::state::{self, DensityMatrix2};

/// Measures at or below this value classify the dynamics as Markovian.
pub const ZERO_THRESHOLD: f64 = 1e-10;

/// Finite integration horizon and the resolution used to find extrema.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimeWindow {
    pub t_max: f64,
    pub n_grid: usize,
    pub refine_tol: f64,
}

impl TimeWindow {
    pub const DEFAULT_N_GRID: usize = 4096;
    pub const DEFAULT_REFINE_TOL: f64 = 1e-10;

    pub fn new(t_max: f64, n_grid: usize, refine_tol: f64) -> Result<Self> {
        if !(t_max > 0.0) || !t_max.is_finite() {
            return Err(Error::Parameter(format!("t_max must be finite and > 0, got {t_max}")));
        }
        if n_grid < 16 {
            return Err(Error::Parameter(format!("n_grid must be >= 16, got {n_grid}")));
        }
        if !(refine_tol > 0.0) {
            return Err(Error::Parameter(format!("refine_tol must be > 0, got {refine_tol}")));
        }
        Ok(TimeWindow { t_max, n_grid, refine_tol })
    }

    /// Horizon 100/Γ₀ with default resolution.
    pub fn for_cutoff(gamma0: f64) -> Result<Self> {
        Self::new(100.0 / gamma0, Self::DEFAULT_N_GRID, Self::DEFAULT_REFINE_TOL)
    }

    pub fn with_n_grid(self, n_grid: usize) -> Result<Self> {
        Self::new(self.t_max, n_grid, self.refine_tol)
    }

    pub fn grid(&self) -> impl Iterator<Item = f64> + '_ {
        let step = self.t_max / (self.n_grid - 1) as f64;
        (0..self.n_grid).map(move |k| if k + 1 == self.n_grid { self.t_max } else { k as f64 * step })
    }
}

/// Result of [`positive_variation`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositiveVariation {
    pub value: f64,
    /// Disjoint, ordered (start, end) intervals on which df/dt > 0.
    pub intervals: Vec<(f64, f64)>,
    /// True when f was still increasing at the horizon.
    pub truncated: bool,
}

/// Positive variation of `f` on [0, t_max] given its derivative `df`.
pub fn positive_variation<F, D>(f: F, df: D, w: &TimeWindow) -> Result<PositiveVariation>
where
    F: Fn(f64) -> Result<f64>,
    D: Fn(f64) -> Result<f64>,
{
    let ts: Vec<f64> = w.grid().collect();
    let rising: Vec<bool> = ts.iter().map(|&t| df(t).map(|d| d > 0.0)).collect::<Result<_>>()?;

    let boundary = |lo: f64, hi: f64, lo_rising: bool| -> Result<f64> {
        let (mut lo, mut hi) = (lo, hi);
        for _ in 0..200 {
            if hi - lo <= w.refine_tol {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if (df(mid)? > 0.0) == lo_rising {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    };

    let mut intervals = Vec::new();
    let mut start = rising[0].then_some(ts[0]);
    for k in 1..ts.len() {
        match (rising[k - 1], rising[k]) {
            (false, true) => start = Some(boundary(ts[k - 1], ts[k], false)?),
            (true, false) => {
                let s = start.take().expect("a rising run always has a start");
                intervals.push((s, boundary(ts[k - 1], ts[k], true)?));
            }
            _ => {}
        }
    }
    let truncated = start.is_some();
    if let Some(s) = start {
        warn!("dynamics still reviving at the horizon t_max = {}; the measure is truncated", w.t_max);
        intervals.push((s, w.t_max));
    }

    let mut total = CompensatedSum::new();
    for &(a, b) in &intervals {
        total.add((f(b)? - f(a)?).max(0.0));
    }
    Ok(PositiveVariation {
        value: total.value(),
        intervals,
        truncated,
    })
}

/// BLP measure: positive variation of α²(t), the trace distance of the
/// evolved {|0⟩, |1⟩} pair.
pub fn blp_detail(ch: &DephasingChannel, w: &TimeWindow) -> Result<PositiveVariation> {
    positive_variation(
        |t| ch.alpha(t).map(|a| a * a),
        |t| ch.evaluate(t).map(|p| 2.0 * p.alpha * p.dalpha_dt),
        w,
    )
}

pub fn blp(ch: &DephasingChannel, w: &TimeWindow) -> Result<f64> {
    Ok(blp_detail(ch, w)?.value)
}

/// d det(M) = Σ_ij cof(M)_ij dM_ij.
fn det3_differential(m: &[[f64; 3]; 3], dm: &[[f64; 3]; 3]) -> f64 {
    let mut total = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let (r1, r2) = ((i + 1) % 3, (i + 2) % 3);
            let (c1, c2) = ((j + 1) % 3, (j + 2) % 3);
            let cof = m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1];
            total += cof * dm[i][j];
        }
    }
    total
}

/// LPP measure: positive variation of det M(t), with M the Bloch affine map
/// assembled from the channel.
pub fn lpp_detail(ch: &DephasingChannel, w: &TimeWindow) -> Result<PositiveVariation> {
    positive_variation(
        |t| Ok(state::bloch_affine_map(ch.alpha(t)?)?.det()),
        |t| {
            let p = ch.evaluate(t)?;
            let m = state::bloch_affine_map(p.alpha)?;
            let dm = state::bloch_affine_map_dalpha(p.alpha)?;
            Ok(det3_differential(&m.m, &dm) * p.dalpha_dt)
        },
        w,
    )
}

pub fn lpp(ch: &DephasingChannel, w: &TimeWindow) -> Result<f64> {
    Ok(lpp_detail(ch, w)?.value)
}

/// Coherence-based measure along the evolved Bell-like family at fixed ϑ.
pub fn cb_detail(theta: f64, ch: &DephasingChannel, w: &TimeWindow) -> Result<PositiveVariation> {
    positive_variation(
        |t| {
            let s = state::evolved_x_state(theta, ch.alpha(t)?)?;
            Ok(crate::correlations::coherence_l1_x(&s))
        },
        |t| {
            let p = ch.evaluate(t)?;
            let s = state::evolved_x_state(theta, p.alpha)?;
            let ds = state::evolved_x_state_dalpha(theta, p.alpha);
            // C = 2|ρ14| + 2|ρ23|; only ρ14 is populated on this family
            let z = s.rho14;
            let dz = ds[0][3];
            let dmod = if z.norm() > 0.0 { (z.conj() * dz).re / z.norm() } else { dz.norm() };
            Ok(2.0 * dmod * p.dalpha_dt)
        },
        w,
    )
}

pub fn cb(theta: f64, ch: &DephasingChannel, w: &TimeWindow) -> Result<f64> {
    Ok(cb_detail(theta, ch, w)?.value)
}

/// Best antipodal pair found by [`blp_pair_scan`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairScan {
    /// Polar and azimuthal Bloch angles of the first state of the pair.
    pub theta_b: f64,
    pub phi_b: f64,
    pub value: f64,
}

fn bloch_pure(theta: f64, phi: f64) -> Result<DensityMatrix2> {
    let (s, c) = (0.5 * theta).sin_cos();
    DensityMatrix2::pure([num_complex::Complex64::new(c, 0.0), num_complex::Complex64::from_polar(s, phi)])
}

/// Positive variation of the trace distance between the evolved antipodal
/// pair with Bloch angles (θ, φ) and (π - θ, φ + π).
pub fn pair_variation(ch: &DephasingChannel, w: &TimeWindow, theta_b: f64, phi_b: f64) -> Result<f64> {
    let r1 = bloch_pure(theta_b, phi_b)?;
    let r2 = bloch_pure(std::f64::consts::PI - theta_b, phi_b + std::f64::consts::PI)?;
    let diff0 = linalg::sub(r1.matrix(), r2.matrix());
    let distance = |t: f64| -> Result<f64> {
        let a = ch.alpha(t)?;
        Ok(state::trace_distance(&state::evolve_single(&r1, a)?, &state::evolve_single(&r2, a)?))
    };
    let rate = |t: f64| -> Result<f64> {
        let p = ch.evaluate(t)?;
        let d = linalg::sub(state::evolve_single(&r1, p.alpha)?.matrix(), state::evolve_single(&r2, p.alpha)?.matrix());
        let dd: CMatrix<2> = linalg::scale(&state::evolve_single_dalpha(&diff0, p.alpha), p.dalpha_dt);
        // d/dt ½Σ|λ_k| = ½Σ sign(λ_k) ⟨v_k|dΔ|v_k⟩
        let e = linalg::hermitian_eigen(&d);
        let mut total = 0.0;
        for k in 0..2 {
            let v = e.column(k);
            let mut quad = num_complex::Complex64::new(0.0, 0.0);
            for i in 0..2 {
                for j in 0..2 {
                    quad += v[i].conj() * dd[i][j] * v[j];
                }
            }
            total += e.values[k].signum() * quad.re;
        }
        Ok(0.5 * total)
    };
    Ok(positive_variation(distance, rate, w)?.value)
}

/// Scans antipodal pure-state pairs over an `n_angles × n_angles` grid of
/// polar angle in [0, π/2] and azimuth in [0, π), returning the maximizer.
/// Ties keep the first grid point in (θ, φ) order.
pub fn blp_pair_scan(ch: &DephasingChannel, w: &TimeWindow, n_angles: usize) -> Result<PairScan> {
    if n_angles < 2 {
        return Err(Error::Parameter(format!("pair scan needs n_angles >= 2, got {n_angles}")));
    }
    let points: Vec<(f64, f64)> = (0..n_angles)
        .flat_map(|i| {
            (0..n_angles).map(move |j| {
                let th = std::f64::consts::FRAC_PI_2 * i as f64 / (n_angles - 1) as f64;
                let ph = std::f64::consts::PI * j as f64 / n_angles as f64;
                (th, ph)
            })
        })
        .collect();
    let values: Vec<f64> = points
        .par_iter()
        .map(|&(th, ph)| pair_variation(ch, w, th, ph))
        .collect::<Result<_>>()?;
    let mut best = PairScan {
        theta_b: points[0].0,
        phi_b: points[0].1,
        value: values[0],
    };
    for (&(th, ph), &v) in points.iter().zip(&values).skip(1) {
        if v > best.value {
            best = PairScan { theta_b: th, phi_b: ph, value: v };
        }
    }
    Ok(best)
}

/// Smallest Q in `q_range` at which the BLP measure exceeds
/// [`ZERO_THRESHOLD`], resolved to 1e-3 by bisection after a coarse scan.
/// `None` when the indicator never fires on the range.
pub fn critical_q_scan(gamma0: f64, b: f64, q_range: (f64, f64), w: &TimeWindow) -> Result<Option<f64>> {
    const COARSE_STEP: f64 = 0.05;
    const RESOLUTION: f64 = 1e-3;
    let (lo, hi) = q_range;
    if !(lo >= 0.0) || !(hi > lo) {
        return Err(Error::Parameter(format!("invalid Q range ({lo}, {hi})")));
    }
    let fires = |q: f64| -> Result<bool> {
        let ch = DephasingChannel::from_params(q, gamma0, b)?;
        Ok(blp(&ch, w)? > ZERO_THRESHOLD)
    };
    let n = ((hi - lo) / COARSE_STEP).ceil() as usize;
    let qs: Vec<f64> = (0..=n).map(|k| (lo + k as f64 * COARSE_STEP).min(hi)).collect();
    let flags: Vec<bool> = qs.par_iter().map(|&q| fires(q)).collect::<Result<_>>()?;
    let Some(first) = flags.iter().position(|&f| f) else {
        return Ok(None);
    };
    if first == 0 {
        return Ok(Some(lo));
    }
    let (mut q_off, mut q_on) = (qs[first - 1], qs[first]);
    while q_on - q_off > RESOLUTION {
        let mid = 0.5 * (q_off + q_on);
        if fires(mid)? {
            q_on = mid;
        } else {
            q_off = mid;
        }
    }
    Ok(Some(q_on))
}

/// The three measures at one channel, with BLP's revival intervals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonMarkovReport {
    pub n_blp: f64,
    pub n_lpp: f64,
    pub n_cb: f64,
    pub revival_intervals: Vec<(f64, f64)>,
    pub truncated: bool,
}

impl NonMarkovReport {
    pub fn is_non_markovian(&self) -> bool {
        self.n_blp > ZERO_THRESHOLD
    }
}

/// BLP, LPP and CB (at ϑ = π/2) for one channel.
pub fn analyze(ch: &DephasingChannel, w: &TimeWindow) -> Result<NonMarkovReport> {
    let b = blp_detail(ch, w)?;
    Ok(NonMarkovReport {
        n_blp: b.value,
        n_lpp: lpp(ch, w)?,
        n_cb: cb(std::f64::consts::FRAC_PI_2, ch, w)?,
        revival_intervals: b.intervals,
        truncated: b.truncated,
    })
}
