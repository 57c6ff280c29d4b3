//! Fixed-size complex matrices and a cyclic Jacobi eigensolver for the
//! Hermitian case. Dimensions here never exceed 4.

use num_complex::Complex64;

pub type CMatrix<const N: usize> = [[Complex64; N]; N];

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn zeros<const N: usize>() -> CMatrix<N> {
    [[ZERO; N]; N]
}

pub fn identity<const N: usize>() -> CMatrix<N> {
    let mut m = zeros();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = ONE;
    }
    m
}

pub fn from_real<const N: usize>(m: [[f64; N]; N]) -> CMatrix<N> {
    m.map(|row| row.map(|x| Complex64::new(x, 0.0)))
}

pub fn mul<const N: usize>(a: &CMatrix<N>, b: &CMatrix<N>) -> CMatrix<N> {
    let mut out = zeros();
    for i in 0..N {
        for k in 0..N {
            let aik = a[i][k];
            if aik == ZERO {
                continue;
            }
            for j in 0..N {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn adjoint<const N: usize>(a: &CMatrix<N>) -> CMatrix<N> {
    let mut out = zeros();
    for i in 0..N {
        for j in 0..N {
            out[j][i] = a[i][j].conj();
        }
    }
    out
}

pub fn sub<const N: usize>(a: &CMatrix<N>, b: &CMatrix<N>) -> CMatrix<N> {
    let mut out = *a;
    for i in 0..N {
        for j in 0..N {
            out[i][j] -= b[i][j];
        }
    }
    out
}

pub fn scale<const N: usize>(a: &CMatrix<N>, s: f64) -> CMatrix<N> {
    a.map(|row| row.map(|x| x * s))
}

pub fn trace<const N: usize>(a: &CMatrix<N>) -> Complex64 {
    (0..N).map(|i| a[i][i]).sum()
}

/// Kronecker product of two 2×2 matrices in the ordering {|00⟩,|01⟩,|10⟩,|11⟩}.
pub fn kron2(a: &CMatrix<2>, b: &CMatrix<2>) -> CMatrix<4> {
    let mut out = zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// Largest |a_ij - conj(a_ji)|.
pub fn hermiticity_defect<const N: usize>(a: &CMatrix<N>) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..N {
        for j in i..N {
            worst = worst.max((a[i][j] - a[j][i].conj()).norm());
        }
    }
    worst
}

/// Eigen-decomposition of a Hermitian matrix.
///
/// `vectors` holds the eigenvectors as columns; `values[k]` belongs to column k.
/// Values are sorted in ascending order.
#[derive(Debug, Clone, Copy)]
pub struct HermitianEigen<const N: usize> {
    pub values: [f64; N],
    pub vectors: CMatrix<N>,
}

impl<const N: usize> HermitianEigen<N> {
    pub fn column(&self, k: usize) -> [Complex64; N] {
        std::array::from_fn(|i| self.vectors[i][k])
    }

    /// Σ_k f(λ_k) |v_k⟩⟨v_k|.
    pub fn reconstruct(&self, f: impl Fn(f64) -> f64) -> CMatrix<N> {
        let mut out = zeros();
        for k in 0..N {
            let fk = f(self.values[k]);
            if fk == 0.0 {
                continue;
            }
            for i in 0..N {
                for j in 0..N {
                    out[i][j] += self.vectors[i][k] * self.vectors[j][k].conj() * fk;
                }
            }
        }
        out
    }
}

const MAX_SWEEPS: usize = 64;

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Each pivot first has its phase removed by a diagonal unitary, then a real
/// Givens rotation zeroes it. For N = 2 this is the closed form.
/// Only the upper triangle of `a` is read.
pub fn hermitian_eigen<const N: usize>(a: &CMatrix<N>) -> HermitianEigen<N> {
    let mut m = *a;
    for i in 0..N {
        m[i][i] = Complex64::new(m[i][i].re, 0.0);
        for j in 0..i {
            m[i][j] = m[j][i].conj();
        }
    }
    let mut v: CMatrix<N> = identity();
    let scale: f64 = m.iter().flatten().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if scale == 0.0 {
        return HermitianEigen {
            values: [0.0; N],
            vectors: v,
        };
    }

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..N)
            .flat_map(|i| (i + 1..N).map(move |j| (i, j)))
            .map(|(i, j)| m[i][j].norm_sqr())
            .sum();
        if off.sqrt() <= 1e-300_f64.max(f64::EPSILON * 1e-3 * scale) {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                let r = m[p][q].norm();
                if r == 0.0 {
                    continue;
                }
                // phase: column q times e^{-iφ}, row q times e^{iφ}
                let phase = m[p][q].conj() / r;
                for k in 0..N {
                    m[k][q] *= phase;
                    v[k][q] *= phase;
                }
                for k in 0..N {
                    m[q][k] *= phase.conj();
                }
                let app = m[p][p].re;
                let aqq = m[q][q].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..N {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = m[k][p];
                    let akq = m[k][q];
                    m[k][p] = akp * c - akq * s;
                    m[k][q] = akp * s + akq * c;
                    m[p][k] = m[k][p].conj();
                    m[q][k] = m[k][q].conj();
                }
                m[p][p] = Complex64::new(app - t * r, 0.0);
                m[q][q] = Complex64::new(aqq + t * r, 0.0);
                m[p][q] = ZERO;
                m[q][p] = ZERO;
                for k in 0..N {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = vkp * c - vkq * s;
                    v[k][q] = vkp * s + vkq * c;
                }
            }
        }
    }

    let mut order: [usize; N] = std::array::from_fn(|i| i);
    order.sort_by(|&i, &j| m[i][i].re.total_cmp(&m[j][j].re));
    HermitianEigen {
        values: order.map(|k| m[k][k].re),
        vectors: std::array::from_fn(|i| order.map(|k| v[i][k])),
    }
}

/// Eigenvalues of a real symmetric matrix, ascending.
pub fn symmetric_eigenvalues<const N: usize>(a: &[[f64; N]; N]) -> [f64; N] {
    hermitian_eigen(&from_real(*a)).values
}
