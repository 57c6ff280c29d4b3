//! Real-argument special functions: Γ, Kummer's ₁F₁ and the ₂F₂ that shows
//! up in the Ohmic influence functional.
//!
//! Everything is double precision. Series are summed with term recurrences
//! (ratio form) and Neumaier compensation. Negative arguments beyond |z| = 1
//! go through a transform whose summed series has terms of one sign:
//!
//! * ₁F₁ uses Kummer's relation `M(a;b;z) = e^z M(b-a;b;-z)`, summed with
//!   power-of-two rescaling so that `e^{|z|}`-sized partial sums never
//!   overflow.
//! * ₂F₂({1,1};{3/2,2};-X) equals `E[h_K]/X` where `K ~ Poisson(X)` and
//!   `h_k = Σ_{n<k} 1/(2n+1)`, which is a positive-weight average.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Accuracy controls for the series evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            rel_tol: 1e-13,
            max_terms: 10_000,
        }
    }
}

impl EvalOptions {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0) || !rel_tol.is_finite() {
            return Err(Error::Parameter(format!("rel_tol must be positive, got {rel_tol}")));
        }
        if max_terms == 0 {
            return Err(Error::Parameter("max_terms must be at least 1".into()));
        }
        Ok(EvalOptions { rel_tol, max_terms })
    }
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    /// Multiplies the accumulated value by `factor` (exact for powers of two).
    fn scale(&mut self, factor: f64) {
        self.sum *= factor;
        self.comp *= factor;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl std::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

const POLE_TOL: f64 = 1e-12;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn nearest_nonpositive_integer(x: f64) -> Option<f64> {
    if x > POLE_TOL {
        return None;
    }
    let r = x.round();
    ((x - r).abs() < POLE_TOL).then_some(r)
}

/// sin(πx) with exact zeros at the integers.
fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).floor();
    let (r, sign) = if r > 1.0 { (r - 1.0, -1.0) } else { (r, 1.0) };
    let r = if r > 0.5 { 1.0 - r } else { r };
    sign * (PI * r).sin()
}

/// The Gamma function Γ(x) for real x away from the poles.
pub fn gamma(x: f64) -> Result<f64> {
    if let Some(pole) = nearest_nonpositive_integer(x) {
        return Err(Error::Pole(pole));
    }
    if x.is_nan() {
        return Err(Error::Parameter("gamma of NaN".into()));
    }
    if x == x.floor() && x <= 30.0 {
        return Ok((1..x as u64).fold(1.0, |acc, k| acc * k as f64));
    }
    if x < 0.5 {
        return Ok(PI / (sin_pi(x) * gamma(1.0 - x)?));
    }
    let x = x - 1.0;
    let series = LANCZOS_COEF[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS_COEF[0], |acc, (i, c)| acc + c / (x + i as f64 + 1.0));
    let t = x + LANCZOS_G + 0.5;
    Ok((2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * series)
}

fn check_denominator(b: f64) -> Result<()> {
    if let Some(pole) = nearest_nonpositive_integer(b) {
        return Err(Error::Parameter(format!(
            "denominator parameter b = {b} is (within {POLE_TOL:e} of) the non-positive integer {pole}"
        )));
    }
    Ok(())
}

const RESCALE_ABOVE: f64 = 4.149_515_568_880_993e180; // 2^600
const RESCALE_BY: f64 = 2.409_919_865_102_884_6e-181; // 2^-600
const LN_RESCALE: f64 = 600.0 * std::f64::consts::LN_2;

/// A value represented as `mantissa * exp(log_scale)`.
#[derive(Debug, Clone, Copy)]
struct Scaled {
    mantissa: f64,
    log_scale: f64,
}

/// Sums `Σ_{n≥skip} (a)_n/(b)_n x^n/n!` with rescaling. With `skip = 1` the
/// leading unit term is left out, which gives `M - 1` without cancellation.
fn kummer_series(a: f64, b: f64, x: f64, skip: usize, opts: &EvalOptions) -> Result<Scaled> {
    let mut sum = CompensatedSum::new();
    if skip == 0 {
        sum.add(1.0);
    }
    let mut term = 1.0;
    let mut log_scale = 0.0;
    for n in 0..opts.max_terms {
        let nf = n as f64;
        if a + nf == 0.0 {
            // (a)_n vanishes from here on: terminating polynomial
            return Ok(Scaled {
                mantissa: sum.value(),
                log_scale,
            });
        }
        term *= (a + nf) / (b + nf) * x / (nf + 1.0);
        sum.add(term);
        if term.abs() > RESCALE_ABOVE {
            term *= RESCALE_BY;
            sum.scale(RESCALE_BY);
            log_scale += LN_RESCALE;
        }
        let ratio = ((a + nf + 1.0) / (b + nf + 1.0) * x / (nf + 2.0)).abs();
        if ratio < 1.0 {
            let tail = term.abs() * ratio / (1.0 - ratio);
            if tail <= opts.rel_tol * sum.value().abs() {
                return Ok(Scaled {
                    mantissa: sum.value(),
                    log_scale,
                });
            }
        }
    }
    Err(Error::Convergence {
        what: "1F1 series",
        terms: opts.max_terms,
    })
}

/// Kummer's confluent hypergeometric function M(a; b; z) = ₁F₁(a; b; z).
pub fn hyp1f1(a: f64, b: f64, z: f64, opts: &EvalOptions) -> Result<f64> {
    check_denominator(b)?;
    if z == 0.0 {
        return Ok(1.0);
    }
    if z < -1.0 {
        let s = kummer_series(b - a, b, -z, 0, opts)?;
        Ok(s.mantissa * (z + s.log_scale).exp())
    } else {
        let s = kummer_series(a, b, z, 0, opts)?;
        Ok(s.mantissa * s.log_scale.exp())
    }
}

/// `M(a; b; z) - 1`, accurate when M is close to one (small |z| or small a).
pub fn hyp1f1_minus_one(a: f64, b: f64, z: f64, opts: &EvalOptions) -> Result<f64> {
    check_denominator(b)?;
    if z == 0.0 {
        return Ok(0.0);
    }
    if (-1.0..=1.0).contains(&z) {
        let s = kummer_series(a, b, z, 1, opts)?;
        Ok(s.mantissa * s.log_scale.exp())
    } else {
        Ok(hyp1f1(a, b, z, opts)? - 1.0)
    }
}

/// dM/dz through the contiguous relation dM/dz = (a/b) M(a+1; b+1; z).
pub fn dhyp1f1_dz(a: f64, b: f64, z: f64, opts: &EvalOptions) -> Result<f64> {
    check_denominator(b)?;
    if a == 0.0 {
        return Ok(0.0);
    }
    Ok(a / b * hyp1f1(a + 1.0, b + 1.0, z, opts)?)
}

/// Plain generalized hypergeometric series pFq, used only for |z| ≤ 1.
fn pfq_series(num: &[f64], den: &[f64], z: f64, opts: &EvalOptions, what: &'static str) -> Result<f64> {
    let mut sum = CompensatedSum::new();
    sum.add(1.0);
    let mut term = 1.0;
    for n in 0..opts.max_terms {
        let nf = n as f64;
        let up: f64 = num.iter().map(|a| a + nf).product();
        let down: f64 = den.iter().map(|b| b + nf).product::<f64>() * (nf + 1.0);
        term *= up / down * z;
        sum.add(term);
        if term.abs() <= opts.rel_tol * sum.value().abs() * 0.5 {
            return Ok(sum.value());
        }
    }
    Err(Error::Convergence {
        what,
        terms: opts.max_terms,
    })
}

/// ₂F₂({1,1}; {3/2,2}; -X) for X > 1 as the Poisson average E[h_K] / X.
///
/// Weights are kept relative to the Poisson mode and normalized by their
/// own sum, so no factorials or exponentials of X are ever formed.
fn hyp2f2_poisson(x: f64, opts: &EvalOptions) -> Result<f64> {
    let cut = opts.rel_tol * 1e-3;
    let mode = x.floor();

    // walk down to where the weights are negligible
    let mut k = mode;
    let mut w = 1.0;
    while k > 0.0 {
        w *= k / x;
        k -= 1.0;
        if w < cut {
            break;
        }
    }
    let k_lo = k as usize;

    let mut h: CompensatedSum = (0..k_lo).map(|n| 1.0 / (2 * n + 1) as f64).collect();
    let mut num = CompensatedSum::new();
    let mut den = CompensatedSum::new();
    let mut k = k_lo;
    for _ in 0..opts.max_terms {
        num.add(w * h.value());
        den.add(w);
        h.add(1.0 / (2 * k + 1) as f64);
        k += 1;
        w *= x / k as f64;
        if k as f64 > x && w < cut {
            return Ok(num.value() / den.value() / x);
        }
    }
    Err(Error::Convergence {
        what: "2F2 Poisson average",
        terms: opts.max_terms,
    })
}

/// ₂F₂({1,1}; {3/2,2}; z) for z ≤ 0.
///
/// Validated for |z| ≤ 1e4. Beyond that the Poisson average still converges
/// but needs more than the default `max_terms` once |z| is around 1e6.
pub fn hyp2f2_11_32_2(z: f64, opts: &EvalOptions) -> Result<f64> {
    if !(z <= 0.0) {
        return Err(Error::Domain(format!("2F2({{1,1}};{{3/2,2}};z) needs z <= 0, got {z}")));
    }
    if z == 0.0 {
        Ok(1.0)
    } else if z >= -1.0 {
        pfq_series(&[1.0, 1.0], &[1.5, 2.0], z, opts, "2F2 series")
    } else {
        hyp2f2_poisson(-z, opts)
    }
}

/// d/dz ₂F₂({1,1}; {3/2,2}; z).
///
/// Near the origin this is the shifted-parameter series (1/3)₂F₂({2,2};{5/2,3};z);
/// further out it uses `d(zF)/dz = M(1; 3/2; z)`.
pub fn dhyp2f2_11_32_2_dz(z: f64, opts: &EvalOptions) -> Result<f64> {
    if !(z <= 0.0) {
        return Err(Error::Domain(format!("2F2 derivative needs z <= 0, got {z}")));
    }
    if z >= -1.0 {
        Ok(pfq_series(&[2.0, 2.0], &[2.5, 3.0], z, opts, "2F2 derivative series")? / 3.0)
    } else {
        let m = hyp1f1(1.0, 1.5, z, opts)?;
        let f = hyp2f2_poisson(-z, opts)?;
        Ok((m - f) / z)
    }
}
