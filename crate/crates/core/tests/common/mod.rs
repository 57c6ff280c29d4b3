//! Shared test support: an arbitrary-precision series oracle and random
//! state generators.
#![allow(dead_code, clippy::needless_range_loop)]

use majorana_lab::linalg::CMatrix;
use majorana_lab::{DensityMatrix, DensityMatrix4};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;
use rand_distr::StandardNormal;

/// Exact rational p/q with q > 0.
#[derive(Debug, Clone, Copy)]
pub struct Ratio(pub i64, pub i64);

impl Ratio {
    pub fn value(self) -> f64 {
        self.0 as f64 / self.1 as f64
    }
}

/// Guard digits kept below the largest intermediate term.
const GUARD_DIGITS: u32 = 60;

fn digits_for(z: Ratio) -> u32 {
    // terms of an alternating series at |z| peak near e^{|z|}
    (z.value().abs() / std::f64::consts::LN_10).ceil() as u32 + GUARD_DIGITS + 20
}

fn to_f64(fixed: &BigInt, digits: u32) -> f64 {
    // correctly rounded decimal parse keeps tiny values intact
    format!("{fixed}e-{digits}").parse().expect("decimal literal")
}

/// Σ_n Π(num_i)_n / Π(den_j)_n · z^n / n! evaluated exactly in fixed point.
/// `skip_first` drops the n = 0 term (for M - 1).
pub fn pfq_oracle(num: &[Ratio], den: &[Ratio], z: Ratio, skip_first: bool) -> f64 {
    let digits = digits_for(z);
    let scale = BigInt::from(10u32).pow(digits);
    let mut term = scale.clone();
    let mut sum = if skip_first { BigInt::zero() } else { scale };
    let big = |x: i64| BigInt::from(x);
    let mut n: i64 = 0;
    loop {
        let mut up = big(z.0);
        let mut down = big(z.1) * big(n + 1);
        for r in num {
            up *= big(r.0 + n * r.1);
            down *= big(r.1);
        }
        for r in den {
            up *= big(r.1);
            down *= big(r.0 + n * r.1);
        }
        term = term * up / down;
        sum += &term;
        n += 1;
        if term.is_zero() && n as f64 > 2.0 * z.value().abs() + 10.0 {
            break;
        }
        assert!(n < 100_000, "oracle series did not terminate");
    }
    to_f64(&sum, digits)
}

pub fn hyp1f1_oracle(a: Ratio, b: Ratio, z: Ratio) -> f64 {
    pfq_oracle(&[a], &[b], z, false)
}

pub fn hyp1f1_minus_one_oracle(a: Ratio, b: Ratio, z: Ratio) -> f64 {
    pfq_oracle(&[a], &[b], z, true)
}

pub fn hyp2f2_oracle(z: Ratio) -> f64 {
    pfq_oracle(&[Ratio(1, 1), Ratio(1, 1)], &[Ratio(3, 2), Ratio(2, 1)], z, false)
}

/// z = -s²/4 for s = p/q.
pub fn z_of_s(s: Ratio) -> Ratio {
    Ratio(-s.0 * s.0, 4 * s.1 * s.1)
}

/// Scaled times covering the range visited by I_Q on default horizons.
pub fn s_grid() -> Vec<Ratio> {
    [
        (1, 20), (1, 10), (1, 4), (1, 2), (1, 1), (3, 2), (2, 1), (3, 1), (4, 1), (5, 1),
        (7, 1), (10, 1), (14, 1), (20, 1), (28, 1), (40, 1), (55, 1), (70, 1), (85, 1), (100, 1),
    ]
    .iter()
    .map(|&(p, q)| Ratio(p, q))
    .collect()
}

/// a = (Q-1)/2 for Q ∈ {0, 0.5, 1.5, 2, 2.5, 3, 3.5, 4}.
pub fn a_grid() -> Vec<Ratio> {
    [(-1, 2), (-1, 4), (1, 4), (1, 2), (3, 4), (1, 1), (5, 4), (3, 2)]
        .iter()
        .map(|&(p, q)| Ratio(p, q))
        .collect()
}

/// Forty scaled times for the ₂F₂ part of the grid.
pub fn s_grid_2f2() -> Vec<Ratio> {
    let mut v = Vec::new();
    for k in 1..=20 {
        v.push(Ratio(k, 10));
    }
    for k in [3, 4, 5, 6, 8, 10, 13, 16, 20, 25, 30, 36, 43, 50, 58, 66, 75, 84, 92, 100] {
        v.push(Ratio(k, 1));
    }
    v
}

/// Random mixed state from a complex Ginibre matrix: G G† / Tr.
pub fn random_state<const N: usize>(rng: &mut impl Rng) -> DensityMatrix<N> {
    let mut g = [[Complex64::new(0.0, 0.0); N]; N];
    for row in g.iter_mut() {
        for x in row.iter_mut() {
            *x = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
        }
    }
    let mut m: CMatrix<N> = [[Complex64::new(0.0, 0.0); N]; N];
    for i in 0..N {
        for j in 0..N {
            for k in 0..N {
                m[i][j] += g[i][k] * g[j][k].conj();
            }
        }
    }
    let tr: f64 = (0..N).map(|i| m[i][i].re).sum();
    for row in m.iter_mut() {
        for x in row.iter_mut() {
            *x /= tr;
        }
    }
    for i in 0..N {
        m[i][i].im = 0.0;
        for j in 0..i {
            m[i][j] = m[j][i].conj();
        }
    }
    DensityMatrix::new(m).expect("Ginibre construction is a valid state")
}

pub fn random_state4(rng: &mut impl Rng) -> DensityMatrix4 {
    random_state::<4>(rng)
}

/// Fourth-order central difference.
pub fn richardson(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}
