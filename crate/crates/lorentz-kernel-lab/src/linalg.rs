//! Small dense complex linear algebra: 2x2 matrices for the group layer
//! and a Jacobi eigensolver for Hermitian Gram matrices.

use num_complex::Complex64;

pub type C64 = Complex64;

/// Complex 2x2 matrix in row-major order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: [[C64; 2]; 2],
}

impl Mat2 {
    pub fn new(a11: C64, a12: C64, a21: C64, a22: C64) -> Mat2 {
        Mat2 { a: [[a11, a12], [a21, a22]] }
    }

    pub fn identity() -> Mat2 {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        Mat2::new(one, zero, zero, one)
    }

    pub fn det(&self) -> C64 {
        self.a[0][0] * self.a[1][1] - self.a[0][1] * self.a[1][0]
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let mut out = [[C64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.a[i][0] * rhs.a[0][j] + self.a[i][1] * rhs.a[1][j];
            }
        }
        Mat2 { a: out }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Mat2 {
        Mat2::new(
            self.a[0][0].conj(),
            self.a[1][0].conj(),
            self.a[0][1].conj(),
            self.a[1][1].conj(),
        )
    }

    /// Inverse assuming unit determinant.
    pub fn inv_unimodular(&self) -> Mat2 {
        Mat2::new(self.a[1][1], -self.a[0][1], -self.a[1][0], self.a[0][0])
    }

    pub fn max_abs_diff(&self, rhs: &Mat2) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                m = m.max((self.a[i][j] - rhs.a[i][j]).norm());
            }
        }
        m
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.mul(&self.dagger()).max_abs_diff(&Mat2::identity()) < tol
    }
}

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
/// Returns them sorted ascending. Intended for the small Gram matrices of
/// the kernel positivity checks.
pub fn hermitian_eigenvalues(mut a: Vec<Vec<C64>>) -> Vec<f64> {
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    for row in &a {
        assert_eq!(row.len(), n, "matrix must be square");
    }
    let off = |a: &Vec<Vec<C64>>| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i][j].norm_sqr();
                }
            }
        }
        s.sqrt()
    };
    let scale = (0..n).map(|i| a[i][i].re.abs()).fold(1e-300, f64::max).max(off(&a));
    for _sweep in 0..200 {
        if off(&a) <= 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq.norm() <= 1e-300 {
                    continue;
                }
                // Phase rotation makes the pivot real, then a real Jacobi angle.
                let phase = apq / apq.norm();
                let app = a[p][p].re;
                let aqq = a[q][q].re;
                let theta = 0.5 * (2.0 * apq.norm()).atan2(app - aqq);
                let c = theta.cos();
                let s = theta.sin();
                // Column update with u = [[c, -s*conj(phase)], [s*phase, c]].
                for i in 0..n {
                    let aip = a[i][p];
                    let aiq = a[i][q];
                    a[i][p] = aip * c + aiq * s * phase;
                    a[i][q] = -aip * s * phase.conj() + aiq * c;
                }
                for j in 0..n {
                    let apj = a[p][j];
                    let aqj = a[q][j];
                    a[p][j] = apj * c + aqj * s * phase.conj();
                    a[q][j] = -apj * s * phase + aqj * c;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i].re).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eig
}
