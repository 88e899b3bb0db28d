//! Dense factorizations used by the direct solver paths and the spectral
//! diagnostics: LU with partial pivoting and a cyclic Jacobi eigensolver for
//! symmetric matrices.

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::scalar::{real, Real};

/// LU factorization with partial pivoting.
pub struct Lu<T> {
    lu: DenseMatrix<T>,
    perm: Vec<usize>,
}

impl<T: Real> Lu<T> {
    pub fn factor(a: &DenseMatrix<T>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.n_rows(),
                cols: a.n_cols(),
            });
        }
        let n = a.n_rows();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut p = k;
            let mut best = lu[(k, k)].abs();
            for i in k + 1..n {
                let v = lu[(i, k)].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best == T::zero() {
                return Err(Error::SingularFactorization { pivot: k });
            }
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
                perm.swap(k, p);
            }
            let piv = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / piv;
                lu[(i, k)] = f;
                if f == T::zero() {
                    continue;
                }
                for j in k + 1..n {
                    let s = lu[(k, j)];
                    lu[(i, j)] = lu[(i, j)] - f * s;
                }
            }
        }
        Ok(Self { lu, perm })
    }

    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.perm.len();
        assert_eq!(b.len(), n);
        let mut x: Vec<T> = self.perm.iter().map(|&p| b[p]).collect();
        // forward substitution with unit lower factor
        for i in 1..n {
            let mut acc = x[i];
            for j in 0..i {
                acc = acc - self.lu[(i, j)] * x[j];
            }
            x[i] = acc;
        }
        // backward substitution
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in i + 1..n {
                acc = acc - self.lu[(i, j)] * x[j];
            }
            x[i] = acc / self.lu[(i, i)];
        }
        x
    }
}

/// Convenience wrapper: factor and solve a single system.
pub fn lu_solve<T: Real>(a: &DenseMatrix<T>, b: &[T]) -> Result<Vec<T>> {
    Ok(Lu::factor(a)?.solve(b))
}

/// Eigendecomposition of a symmetric matrix.
pub struct SymEig<T> {
    /// Eigenvalues in ascending order.
    pub values: Vec<T>,
    /// Eigenvectors as columns, aligned with `values`.
    pub vectors: DenseMatrix<T>,
}

/// Cyclic Jacobi iteration for dense symmetric matrices. Robust and accurate
/// for the moderate sizes handled here (the diagnostics cap at a few hundred).
pub fn sym_eig<T: Real>(a: &DenseMatrix<T>) -> Result<SymEig<T>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.n_rows(),
            cols: a.n_cols(),
        });
    }
    let n = a.n_rows();
    let mut m = a.clone();
    let mut v = DenseMatrix::<T>::identity(n);
    let scale = a.frobenius_norm().max(T::one());
    let tol = T::epsilon() * scale * real::<T>(0.5);
    let max_sweeps = 64;

    for _ in 0..max_sweeps {
        let mut off = T::zero();
        for i in 0..n {
            for j in i + 1..n {
                off = off.max(m[(i, j)].abs());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq.abs() <= tol * real::<T>(1e-2) {
                    continue;
                }
                let app = m[(p, p)];
                let aqq = m[(q, q)];
                let theta = (aqq - app) / (real::<T>(2.0) * apq);
                let t = {
                    let s = if theta >= T::zero() { T::one() } else { -T::one() };
                    s / (theta.abs() + (theta * theta + T::one()).sqrt())
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<T> = (0..n).map(|i| m[(i, i)]).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());
    let values: Vec<T> = order.iter().map(|&i| diag[i]).collect();
    let vectors = DenseMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(SymEig { values, vectors })
}

impl<T: Real> SymEig<T> {
    /// Minimum-norm least-squares solve using the eigendecomposition,
    /// treating eigenvalues below `rank_tol` (absolute) as zero.
    pub fn pinv_solve(&self, b: &[T], rank_tol: T) -> Vec<T> {
        let n = self.values.len();
        assert_eq!(b.len(), n);
        let vt_b = self.vectors.tr_matvec(b);
        let mut coeff = vec![T::zero(); n];
        for i in 0..n {
            if self.values[i].abs() > rank_tol {
                coeff[i] = vt_b[i] / self.values[i];
            }
        }
        self.vectors.matvec(&coeff)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lu_solves_small_system() {
        let a = DenseMatrix::from_vec(3, 3, vec![2.0, 1.0, 1.0, 1.0, 3.0, 2.0, 1.0, 0.0, 0.0])
            .unwrap();
        let x_true = [1.0, -2.0, 3.0];
        let b = a.matvec(&x_true);
        let x = lu_solve(&a, &b).unwrap();
        for (xi, ti) in x.iter().zip(x_true.iter()) {
            assert!((xi - ti).abs() < 1e-13);
        }
    }

    #[test]
    fn lu_detects_singular() {
        let a = DenseMatrix::from_vec(2, 2, vec![1.0, 2.0, 2.0, 4.0]).unwrap();
        assert!(matches!(
            Lu::factor(&a),
            Err(Error::SingularFactorization { .. })
        ));
    }

    #[test]
    fn jacobi_recovers_known_spectrum() {
        // diag(1, 2, 5) conjugated by a rotation stays symmetric with the
        // same eigenvalues
        let a = DenseMatrix::from_vec(
            3,
            3,
            vec![2.0, 1.0, 0.0, 1.0, 2.0, 1.0, 0.0, 1.0, 2.0],
        )
        .unwrap();
        let eig = sym_eig(&a).unwrap();
        let sqrt2 = 2.0f64.sqrt();
        let expected = [2.0 - sqrt2, 2.0, 2.0 + sqrt2];
        for (v, e) in eig.values.iter().zip(expected.iter()) {
            assert!((v - e).abs() < 1e-12, "{v} vs {e}");
        }
        // residual A V - V diag(lambda)
        for j in 0..3 {
            let col: Vec<f64> = (0..3).map(|i| eig.vectors[(i, j)]).collect();
            let av = a.matvec(&col);
            for i in 0..3 {
                assert!((av[i] - eig.values[j] * col[i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn pinv_solve_handles_singular_consistent() {
        // rank-1 symmetric system with consistent rhs
        let a = DenseMatrix::from_vec(2, 2, vec![1.0, 1.0, 1.0, 1.0]).unwrap();
        let eig = sym_eig(&a).unwrap();
        let x = eig.pinv_solve(&[2.0, 2.0], 1e-12);
        // minimum-norm solution of [1 1; 1 1] x = [2; 2] is [1; 1]
        assert!((x[0] - 1.0).abs() < 1e-12);
        assert!((x[1] - 1.0).abs() < 1e-12);
    }
}
