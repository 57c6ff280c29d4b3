//! Validated density matrices and the one- and two-qubit dephasing maps.
//!
//! Two-qubit matrices use the basis ordering {|00⟩, |01⟩, |10⟩, |11⟩},
//! i.e. indices 0..4 correspond to the states |1⟩..|4⟩ of the X-state
//! notation (ρ11, ρ14, ...).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, ONE, ZERO};

/// Tolerance for Hermiticity, trace and positivity checks.
pub const STATE_TOL: f64 = 1e-12;

/// A Hermitian, unit-trace, positive semidefinite N×N matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix<const N: usize> {
    m: CMatrix<N>,
}

pub type DensityMatrix2 = DensityMatrix<2>;
pub type DensityMatrix4 = DensityMatrix<4>;

impl<const N: usize> DensityMatrix<N> {
    /// Validates and wraps `m`. Invalid matrices are rejected, never projected.
    pub fn new(m: CMatrix<N>) -> Result<Self> {
        if m.iter().flatten().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
            return Err(Error::InvalidState("non-finite entry".into()));
        }
        let herm = linalg::hermiticity_defect(&m);
        if herm > STATE_TOL {
            return Err(Error::InvalidState(format!("not Hermitian (defect {herm:e})")));
        }
        let tr = linalg::trace(&m).re;
        if (tr - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidState(format!("trace is {tr}, expected 1")));
        }
        let min_eig = linalg::hermitian_eigen(&m).values[0];
        if min_eig < -STATE_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min_eig:e}")));
        }
        Ok(DensityMatrix { m })
    }

    /// Projector onto a normalized pure state.
    pub fn pure(psi: [Complex64; N]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|c| c.norm_sqr()).sum();
        if (norm - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidState(format!("state vector has norm² {norm}")));
        }
        let mut m = linalg::zeros();
        for i in 0..N {
            for j in 0..N {
                m[i][j] = psi[i] * psi[j].conj();
            }
        }
        Self::new(m)
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix {
            m: linalg::scale(&linalg::identity(), 1.0 / N as f64),
        }
    }

    pub fn matrix(&self) -> &CMatrix<N> {
        &self.m
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.m[i][j]
    }

    pub fn eigenvalues(&self) -> [f64; N] {
        linalg::hermitian_eigen(&self.m).values
    }
}

/// Two-qubit state with non-zero entries only on the diagonal and anti-diagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState4 {
    pub rho11: f64,
    pub rho22: f64,
    pub rho33: f64,
    pub rho44: f64,
    pub rho14: Complex64,
    pub rho23: Complex64,
}

impl XState4 {
    pub fn new(diag: [f64; 4], rho14: Complex64, rho23: Complex64) -> Result<Self> {
        let [rho11, rho22, rho33, rho44] = diag;
        if diag.iter().any(|p| !p.is_finite()) || !rho14.is_finite() || !rho23.is_finite() {
            return Err(Error::InvalidState("non-finite X-state entry".into()));
        }
        if diag.iter().any(|&p| p < -STATE_TOL) {
            return Err(Error::InvalidState(format!("negative population in {diag:?}")));
        }
        let tr: f64 = diag.iter().sum();
        if (tr - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidState(format!("populations sum to {tr}")));
        }
        if rho14.norm() > (rho11 * rho44).max(0.0).sqrt() + STATE_TOL {
            return Err(Error::InvalidState("|rho14| exceeds sqrt(rho11 rho44)".into()));
        }
        if rho23.norm() > (rho22 * rho33).max(0.0).sqrt() + STATE_TOL {
            return Err(Error::InvalidState("|rho23| exceeds sqrt(rho22 rho33)".into()));
        }
        Ok(XState4 {
            rho11,
            rho22,
            rho33,
            rho44,
            rho14,
            rho23,
        })
    }

    /// Reads the X entries of a density matrix, rejecting any other coherence.
    pub fn from_density(rho: &DensityMatrix4) -> Result<Self> {
        let m = rho.matrix();
        for (i, j) in [(0, 1), (0, 2), (1, 3), (2, 3)] {
            if m[i][j].norm() > STATE_TOL {
                return Err(Error::InvalidState(format!("entry ({}, {}) breaks the X structure", i + 1, j + 1)));
            }
        }
        Self::new([m[0][0].re, m[1][1].re, m[2][2].re, m[3][3].re], m[0][3], m[1][2])
    }

    pub fn diagonal(&self) -> [f64; 4] {
        [self.rho11, self.rho22, self.rho33, self.rho44]
    }

    pub fn to_matrix(&self) -> CMatrix<4> {
        let mut m = linalg::zeros();
        for (i, p) in self.diagonal().into_iter().enumerate() {
            m[i][i] = Complex64::new(p, 0.0);
        }
        m[0][3] = self.rho14;
        m[3][0] = self.rho14.conj();
        m[1][2] = self.rho23;
        m[2][1] = self.rho23.conj();
        m
    }

    pub fn to_density(&self) -> DensityMatrix4 {
        // the X-state constraints already guarantee positivity
        DensityMatrix { m: self.to_matrix() }
    }
}

fn check_alpha(a: f64) -> Result<()> {
    // α = 0 is the fully dephased limit; it is reached in floating point when
    // α(t) underflows for strong coupling.
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::Domain(format!("influence functional must lie in [0, 1], got {a}")));
    }
    Ok(())
}

/// The single-qubit map, extended linearly to arbitrary 2×2 operators.
fn apply_single(m: &CMatrix<2>, a: f64) -> CMatrix<2> {
    let keep = 0.5 * (1.0 + a * a);
    let swap = 0.5 * (1.0 - a * a);
    [
        [m[0][0] * keep + m[1][1] * swap, m[0][1] * a],
        [m[1][0] * a, m[1][1] * keep + m[0][0] * swap],
    ]
}

/// Derivative of the single-qubit map with respect to α (a linear map).
pub fn evolve_single_dalpha(m: &CMatrix<2>, a: f64) -> CMatrix<2> {
    let diff = m[0][0] - m[1][1];
    [[diff * a, m[0][1]], [m[1][0], -diff * a]]
}

/// ρ(t) for a single Majorana qubit: populations relax as α², coherences as α.
pub fn evolve_single(rho0: &DensityMatrix2, a: f64) -> Result<DensityMatrix2> {
    check_alpha(a)?;
    DensityMatrix::new(apply_single(rho0.matrix(), a))
}

/// Two independently dephasing qubits.
pub fn evolve_pair(rho0: &DensityMatrix4, a: f64) -> Result<DensityMatrix4> {
    check_alpha(a)?;
    let r = rho0.matrix();
    let a2 = a * a;
    let w_same = 0.25 * (1.0 + a2) * (1.0 + a2);
    let w_flip = 0.25 * (1.0 - a2) * (1.0 - a2);
    let w_mix = 0.25 * (1.0 - a2 * a2);
    let c_same = 0.5 * a * (1.0 + a2);
    let c_flip = 0.5 * a * (1.0 - a2);

    let mut m = linalg::zeros();
    m[0][0] = r[0][0] * w_same + r[3][3] * w_flip + (r[1][1] + r[2][2]) * w_mix;
    m[1][1] = r[1][1] * w_same + r[2][2] * w_flip + (r[0][0] + r[3][3]) * w_mix;
    m[2][2] = r[2][2] * w_same + r[1][1] * w_flip + (r[0][0] + r[3][3]) * w_mix;
    m[3][3] = r[3][3] * w_same + r[0][0] * w_flip + (r[1][1] + r[2][2]) * w_mix;

    m[0][1] = r[0][1] * c_same + r[2][3] * c_flip;
    m[0][2] = r[0][2] * c_same + r[1][3] * c_flip;
    m[1][3] = r[1][3] * c_same + r[0][2] * c_flip;
    m[2][3] = r[2][3] * c_same + r[0][1] * c_flip;

    m[0][3] = r[0][3] * a2;
    m[1][2] = r[1][2] * a2;

    for i in 0..4 {
        for j in 0..i {
            m[i][j] = m[j][i].conj();
        }
    }
    DensityMatrix::new(m)
}

/// |ψ⟩⟨ψ| for |ψ⟩ = cos(ϑ/2)|00⟩ + sin(ϑ/2)|11⟩.
pub fn bell_like(theta: f64) -> DensityMatrix4 {
    let (s, c) = (0.5 * theta).sin_cos();
    let mut m = linalg::zeros();
    m[0][0] = Complex64::new(c * c, 0.0);
    m[3][3] = Complex64::new(s * s, 0.0);
    m[0][3] = Complex64::new(c * s, 0.0);
    m[3][0] = m[0][3];
    DensityMatrix { m }
}

/// Closed form of `evolve_pair(bell_like(ϑ), α)`.
pub fn evolved_x_state(theta: f64, a: f64) -> Result<XState4> {
    check_alpha(a)?;
    let a2 = a * a;
    let a4 = a2 * a2;
    let rho11 = 0.25 * a4 + 0.5 * theta.cos() * a2 + 0.25;
    let rho22 = 0.25 * (1.0 - a4);
    let rho44 = 1.0 - rho11 - 2.0 * rho22;
    let rho14 = Complex64::new(0.5 * a2 * theta.sin(), 0.0);
    XState4::new([rho11, rho22, rho22, rho44], rho14, ZERO)
}

/// ∂ρ/∂α of [`evolved_x_state`], entrywise. Traceless and Hermitian.
pub fn evolved_x_state_dalpha(theta: f64, a: f64) -> CMatrix<4> {
    let a3 = a * a * a;
    let d11 = a3 + theta.cos() * a;
    let d22 = -a3;
    let d44 = -d11 - 2.0 * d22;
    let d14 = Complex64::new(a * theta.sin(), 0.0);
    let mut m = linalg::zeros();
    m[0][0] = Complex64::new(d11, 0.0);
    m[1][1] = Complex64::new(d22, 0.0);
    m[2][2] = Complex64::new(d22, 0.0);
    m[3][3] = Complex64::new(d44, 0.0);
    m[0][3] = d14;
    m[3][0] = d14;
    m
}

/// ½‖ρ₁ - ρ₂‖₁ from the eigenvalues of the Hermitian difference.
pub fn trace_distance<const N: usize>(r1: &DensityMatrix<N>, r2: &DensityMatrix<N>) -> f64 {
    trace_norm_half(&linalg::sub(r1.matrix(), r2.matrix()))
}

pub(crate) fn trace_norm_half<const N: usize>(d: &CMatrix<N>) -> f64 {
    let e = linalg::hermitian_eigen(d);
    0.5 * e.values.iter().map(|x| x.abs()).sum::<f64>()
}

/// Affine action r ↦ M r + c of a qubit channel on Bloch vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAffineMap {
    pub m: [[f64; 3]; 3],
    pub c: [f64; 3],
}

impl BlochAffineMap {
    pub fn det(&self) -> f64 {
        det3(&self.m)
    }
}

pub(crate) fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub(crate) fn pauli() -> [CMatrix<2>; 3] {
    let i = Complex64::new(0.0, 1.0);
    [[[ZERO, ONE], [ONE, ZERO]], [[ZERO, -i], [i, ZERO]], [[ONE, ZERO], [ZERO, -ONE]]]
}

/// [M]_ij = Tr[G_i Φ(G_j)] with normalized generators G = σ/√2, and
/// [c]_i = Tr[G_i Φ(I)]/2, for any linear map Φ on 2×2 operators.
fn assemble_affine(phi: impl Fn(&CMatrix<2>) -> CMatrix<2>) -> BlochAffineMap {
    let g = pauli().map(|s| linalg::scale(&s, std::f64::consts::FRAC_1_SQRT_2));
    let mut m = [[0.0; 3]; 3];
    for (j, gj) in g.iter().enumerate() {
        let out = phi(gj);
        for (i, gi) in g.iter().enumerate() {
            m[i][j] = linalg::trace(&linalg::mul(gi, &out)).re;
        }
    }
    let image_of_identity = phi(&linalg::identity());
    let c = std::array::from_fn(|i| linalg::trace(&linalg::mul(&g[i], &image_of_identity)).re / 2.0);
    BlochAffineMap { m, c }
}

/// The affine Bloch map of the single-qubit channel at α, assembled by
/// pushing the Pauli basis and the identity through the channel.
pub fn bloch_affine_map(a: f64) -> Result<BlochAffineMap> {
    check_alpha(a)?;
    Ok(assemble_affine(|op| apply_single(op, a)))
}

/// dM/dα, assembled the same way from the derivative of the channel.
pub fn bloch_affine_map_dalpha(a: f64) -> Result<[[f64; 3]; 3]> {
    check_alpha(a)?;
    Ok(assemble_affine(|op| evolve_single_dalpha(op, a)).m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn ket0() -> DensityMatrix2 {
        DensityMatrix::pure([ONE, ZERO]).unwrap()
    }

    fn ket1() -> DensityMatrix2 {
        DensityMatrix::pure([ZERO, ONE]).unwrap()
    }

    fn max_diff<const N: usize>(a: &CMatrix<N>, b: &CMatrix<N>) -> f64 {
        a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn validation_rejects_bad_matrices() {
        assert!(DensityMatrix::<2>::new([[c(0.6), c(0.1)], [c(0.2), c(0.4)]]).is_err());
        assert!(DensityMatrix::<2>::new([[c(0.6), ZERO], [ZERO, c(0.5)]]).is_err());
        assert!(DensityMatrix::<2>::new([[c(1.2), ZERO], [ZERO, c(-0.2)]]).is_err());
        assert!(DensityMatrix::<2>::new([[c(0.5), c(0.6)], [c(0.6), c(0.5)]]).is_err());
        assert!(XState4::new([0.5, 0.0, 0.0, 0.5], c(0.6), ZERO).is_err());
        assert!(XState4::new([0.5, 0.0, 0.0, 0.4], ZERO, ZERO).is_err());
    }

    #[test]
    fn single_qubit_examples() {
        let plus = DensityMatrix::pure([c(0.6), Complex64::new(0.0, 0.8)]).unwrap();
        assert_eq!(evolve_single(&plus, 1.0).unwrap(), plus);

        let a: f64 = 0.37;
        let out = evolve_single(&ket0(), a).unwrap();
        assert_relative_eq!(out.get(0, 0).re, (1.0 + a * a) / 2.0, max_relative = 1e-15);
        assert_relative_eq!(out.get(1, 1).re, (1.0 - a * a) / 2.0, max_relative = 1e-15);

        let mixed = DensityMatrix2::maximally_mixed();
        assert_eq!(evolve_single(&mixed, 0.2).unwrap(), mixed);

        assert!(matches!(evolve_single(&ket0(), 1.5), Err(Error::Domain(_))));
        assert!(matches!(evolve_single(&ket0(), -0.1), Err(Error::Domain(_))));
    }

    #[test]
    fn pair_examples() {
        let theta = 1.1;
        let rho = bell_like(theta);
        assert_eq!(evolve_pair(&rho, 1.0).unwrap(), rho);

        let a: f64 = 0.6;
        let a2 = a * a;
        let out = evolve_pair(&bell_like(0.0), a).unwrap();
        let expected = [0.25 * (1.0 + a2).powi(2), 0.25 * (1.0 - a2 * a2), 0.25 * (1.0 - a2 * a2), 0.25 * (1.0 - a2).powi(2)];
        for (i, e) in expected.iter().enumerate() {
            assert_relative_eq!(out.get(i, i).re, *e, max_relative = 1e-15);
        }
    }

    #[test]
    fn pair_map_is_tensor_product_of_single_maps() {
        // Φ⊗Φ acting on product operators |i⟩⟨j| ⊗ |k⟩⟨l|
        let rho = DensityMatrix4::new([
            [c(0.3), Complex64::new(0.05, 0.02), Complex64::new(0.01, -0.03), Complex64::new(0.1, 0.04)],
            [Complex64::new(0.05, -0.02), c(0.2), Complex64::new(0.03, 0.06), Complex64::new(-0.02, 0.01)],
            [Complex64::new(0.01, 0.03), Complex64::new(0.03, -0.06), c(0.25), Complex64::new(0.04, 0.0)],
            [Complex64::new(0.1, -0.04), Complex64::new(-0.02, -0.01), c(0.04), c(0.25)],
        ]);
        let rho = rho.unwrap();
        let a = 0.73;
        let mut oracle = linalg::zeros::<4>();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        let mut ea = linalg::zeros::<2>();
                        ea[i][j] = ONE;
                        let mut eb = linalg::zeros::<2>();
                        eb[k][l] = ONE;
                        let img = linalg::kron2(&apply_single(&ea, a), &apply_single(&eb, a));
                        let coeff = rho.get(2 * i + k, 2 * j + l);
                        for r in 0..4 {
                            for s in 0..4 {
                                oracle[r][s] += img[r][s] * coeff;
                            }
                        }
                    }
                }
            }
        }
        let out = evolve_pair(&rho, a).unwrap();
        assert!(max_diff(out.matrix(), &oracle) < 1e-15);
    }

    #[test]
    fn bell_like_examples() {
        let z = bell_like(0.0);
        assert_eq!(z.get(0, 0), ONE);
        assert_eq!(z.get(3, 3).norm(), 0.0);
        let bell = bell_like(std::f64::consts::FRAC_PI_2);
        assert_relative_eq!(bell.get(0, 0).re, 0.5, max_relative = 1e-15);
        assert_relative_eq!(bell.get(3, 3).re, 0.5, max_relative = 1e-15);
        assert_relative_eq!(bell.get(0, 3).re, 0.5, max_relative = 1e-15);
        let one = bell_like(std::f64::consts::PI);
        assert_relative_eq!(one.get(3, 3).re, 1.0, max_relative = 1e-15);
        assert!(one.get(0, 0).re < 1e-30);
    }

    #[test]
    fn evolved_x_state_examples() {
        let half_pi = std::f64::consts::FRAC_PI_2;
        let s = evolved_x_state(half_pi, 1.0).unwrap();
        assert_relative_eq!(s.rho11, 0.5, max_relative = 1e-15);
        assert_relative_eq!(s.rho44, 0.5, max_relative = 1e-15);
        assert_relative_eq!(s.rho14.re, 0.5, max_relative = 1e-15);
        assert_eq!(s.rho22, 0.0);

        let s = evolved_x_state(half_pi, 0.0).unwrap();
        for p in s.diagonal() {
            assert_relative_eq!(p, 0.25, max_relative = 1e-15);
        }
        assert_eq!(s.rho14, ZERO);
    }

    #[test]
    fn closed_form_matches_map_composition() {
        for ti in 0..=12 {
            let theta = std::f64::consts::PI * ti as f64 / 12.0;
            for ai in 0..=10 {
                let a = ai as f64 / 10.0;
                let via_map = evolve_pair(&bell_like(theta), a).unwrap();
                let closed = evolved_x_state(theta, a).unwrap().to_matrix();
                assert!(max_diff(via_map.matrix(), &closed) <= 1e-14, "ϑ={theta} α={a}");
            }
        }
        let s = evolved_x_state(std::f64::consts::FRAC_PI_3, 0.8).unwrap();
        let m = evolve_pair(&bell_like(std::f64::consts::FRAC_PI_3), 0.8).unwrap();
        assert!(max_diff(&s.to_matrix(), m.matrix()) <= 1e-14);
    }

    #[test]
    fn dalpha_matches_finite_difference() {
        let (theta, a, h) = (0.9, 0.55, 1e-6);
        let fd = linalg::scale(
            &linalg::sub(&evolved_x_state(theta, a + h).unwrap().to_matrix(), &evolved_x_state(theta, a - h).unwrap().to_matrix()),
            0.5 / h,
        );
        assert!(max_diff(&fd, &evolved_x_state_dalpha(theta, a)) < 1e-8);
        assert!(linalg::trace(&evolved_x_state_dalpha(theta, a)).norm() < 1e-15);
    }

    #[test]
    fn trace_distance_examples() {
        let rho = bell_like(0.7);
        assert!(trace_distance(&rho, &rho) < 1e-15);
        assert_relative_eq!(trace_distance(&ket0(), &ket1()), 1.0, max_relative = 1e-15);
        let a: f64 = 0.81;
        let d = trace_distance(&evolve_single(&ket0(), a).unwrap(), &evolve_single(&ket1(), a).unwrap());
        assert_relative_eq!(d, a * a, max_relative = 1e-14);
    }

    #[test]
    fn bloch_map_examples() {
        let id = bloch_affine_map(1.0).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((id.m[i][j] - e).abs() < 1e-15);
            }
            assert!(id.c[i].abs() < 1e-15);
        }
        let half = bloch_affine_map(0.5).unwrap();
        let expected = [0.5, 0.5, 0.25];
        for i in 0..3 {
            assert_relative_eq!(half.m[i][i], expected[i], max_relative = 1e-14);
        }
        for a in [0.1, 0.33, 0.9] {
            assert_relative_eq!(bloch_affine_map(a).unwrap().det(), a.powi(4), max_relative = 1e-13);
        }
    }

    #[test]
    fn bloch_map_derivative_matches_finite_difference() {
        let (a, h) = (0.42, 1e-6);
        let plus = bloch_affine_map(a + h).unwrap().m;
        let minus = bloch_affine_map(a - h).unwrap().m;
        let d = bloch_affine_map_dalpha(a).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!(((plus[i][j] - minus[i][j]) / (2.0 * h) - d[i][j]).abs() < 1e-8);
            }
        }
    }
}
