//! Symplectic-form utilities shared by the Gaussian machinery.
//!
//! Quadrature convention: x = (a + a^dag)/sqrt(2), p = (a - a^dag)/(i sqrt(2)),
//! vacuum covariance = 1/2 * Identity, ordering (x1, p1, x2, p2, ...).

use nalgebra::{Complex, ComplexField, DMatrix, Matrix2, Matrix4, Matrix6};

use crate::real::{real, Real};

/// Standard symplectic form on two modes.
pub fn omega4<T: Real>() -> Matrix4<T> {
    let mut om = Matrix4::zeros();
    for m in 0..2 {
        om[(2 * m, 2 * m + 1)] = T::one();
        om[(2 * m + 1, 2 * m)] = -T::one();
    }
    om
}

/// Standard symplectic form on three modes.
pub fn omega6<T: Real>() -> Matrix6<T> {
    let mut om = Matrix6::zeros();
    for m in 0..3 {
        om[(2 * m, 2 * m + 1)] = T::one();
        om[(2 * m + 1, 2 * m)] = -T::one();
    }
    om
}

pub fn is_symplectic_4<T: Real>(s: &Matrix4<T>, tol: f64) -> bool {
    let om = omega4::<T>();
    ((s * om * s.transpose()) - om).abs().max() < real(tol)
}

/// Quadrature-basis matrix of the two-mode linear map
/// a_i(out) = sum_j P_ij a_j + Q_ij a_j^dag.
pub fn quadrature_matrix_from_mode_map<T: Real>(
    p: &Matrix2<Complex<T>>,
    q: &Matrix2<Complex<T>>,
) -> Matrix4<T> {
    let mut s = Matrix4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            let u = p[(i, j)] + q[(i, j)].conj();
            let v = p[(i, j)] - q[(i, j)].conj();
            // x row
            s[(2 * i, 2 * j)] = u.re;
            s[(2 * i, 2 * j + 1)] = -u.im;
            // p row
            s[(2 * i + 1, 2 * j)] = v.im;
            s[(2 * i + 1, 2 * j + 1)] = v.re;
        }
    }
    s
}

/// Symplectic eigenvalues of a 2n x 2n covariance matrix: the moduli of the
/// eigenvalues of Omega*sigma, paired and averaged.
pub fn symplectic_eigenvalues<T: Real>(sigma: &DMatrix<T>, omega: &DMatrix<T>) -> Vec<T> {
    let prod = omega * sigma;
    let eigs = prod.complex_eigenvalues();
    let mut mags: Vec<T> = eigs.iter().map(|e| e.modulus()).collect();
    mags.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let half = real::<T>(0.5);
    mags.chunks(2).map(|c| (c[0] + c[1]) * half).collect()
}

pub fn symplectic_eigenvalues_4<T: Real>(sigma: &Matrix4<T>) -> [T; 2] {
    let s = DMatrix::from_fn(4, 4, |i, j| sigma[(i, j)]);
    let om = omega4::<T>();
    let omd = DMatrix::from_fn(4, 4, |i, j| om[(i, j)]);
    let v = symplectic_eigenvalues(&s, &omd);
    [v[0], v[1]]
}

pub fn symplectic_eigenvalues_6<T: Real>(sigma: &Matrix6<T>) -> [T; 3] {
    let s = DMatrix::from_fn(6, 6, |i, j| sigma[(i, j)]);
    let om = omega6::<T>();
    let omd = DMatrix::from_fn(6, 6, |i, j| om[(i, j)]);
    let v = symplectic_eigenvalues(&s, &omd);
    [v[0], v[1], v[2]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn vacuum_symplectic_eigenvalues_are_half() {
        let sigma = Matrix6::<f64>::identity() * 0.5;
        for nu in symplectic_eigenvalues_6(&sigma) {
            assert_relative_eq!(nu, 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn thermal_mixed_state_eigenvalues() {
        // n0 = 0.5 mechanics: symplectic eigenvalues {1/2, 1, 1/2}
        let mut sigma = Matrix6::<f64>::identity() * 0.5;
        sigma[(2, 2)] = 1.0;
        sigma[(3, 3)] = 1.0;
        let mut nus = symplectic_eigenvalues_6(&sigma).to_vec();
        nus.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_relative_eq!(nus[0], 0.5, epsilon = 1e-12);
        assert_relative_eq!(nus[1], 0.5, epsilon = 1e-12);
        assert_relative_eq!(nus[2], 1.0, epsilon = 1e-12);
    }
}
