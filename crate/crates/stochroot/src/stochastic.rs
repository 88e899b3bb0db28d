//! Stochastic matrices, probability vectors, matrix-power caches, stationary
//! distributions and residual metrics.

use crate::dense::{inf_norm, DenseMatrix};
use crate::error::{Error, Result};
use crate::linalg::Lu;
use crate::scalar::{real, Real};

/// Positivity classification of a stochastic matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Positivity {
    Nonnegative,
    StrictlyPositive,
}

/// Square row-stochastic matrix: rows sum to one within [`Real::row_sum_tol`]
/// and entries are nonnegative (strictly positive when classified so).
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMatrix<T> {
    data: DenseMatrix<T>,
    positivity: Positivity,
}

impl<T: Real> StochasticMatrix<T> {
    /// Validates and wraps a dense matrix, classifying its positivity.
    pub fn new(data: DenseMatrix<T>) -> Result<Self> {
        if !data.is_square() {
            return Err(Error::NotSquare {
                rows: data.n_rows(),
                cols: data.n_cols(),
            });
        }
        let n = data.n_rows();
        let tol = T::row_sum_tol();
        let mut min_entry = T::infinity();
        for i in 0..n {
            let mut sum = T::zero();
            for (j, &v) in data.row(i).iter().enumerate() {
                if v < T::zero() {
                    return Err(Error::Negative {
                        row: i,
                        col: j,
                        value: v.to_f64().unwrap_or(f64::NAN),
                    });
                }
                min_entry = min_entry.min(v);
                sum += v;
            }
            if (sum - T::one()).abs() > tol {
                return Err(Error::RowSum {
                    row: i,
                    sum: sum.to_f64().unwrap_or(f64::NAN),
                    tol: tol.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        let positivity = if min_entry > T::zero() {
            Positivity::StrictlyPositive
        } else {
            Positivity::Nonnegative
        };
        Ok(Self { data, positivity })
    }

    /// Row-normalizes an entrywise-positive matrix into a stochastic one.
    pub fn from_positive_rows(m: &DenseMatrix<T>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.n_rows(),
                cols: m.n_cols(),
            });
        }
        for (k, &v) in m.data().iter().enumerate() {
            if v <= T::zero() {
                return Err(Error::NonPositiveInput {
                    row: k / m.n_cols(),
                    col: k % m.n_cols(),
                });
            }
        }
        let sums = m.row_sums();
        let out = DenseMatrix::from_fn(m.n_rows(), m.n_cols(), |i, j| m[(i, j)] / sums[i]);
        Self::new(out)
    }

    pub fn n(&self) -> usize {
        self.data.n_rows()
    }

    pub fn matrix(&self) -> &DenseMatrix<T> {
        &self.data
    }

    pub fn into_matrix(self) -> DenseMatrix<T> {
        self.data
    }

    pub fn positivity(&self) -> Positivity {
        self.positivity
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.positivity == Positivity::StrictlyPositive
    }

    /// `max_i |sum_j S_ij - 1|`.
    pub fn row_sum_residual(&self) -> T {
        self.data
            .row_sums()
            .iter()
            .fold(T::zero(), |acc, &s| acc.max((s - T::one()).abs()))
    }
}

/// Strictly positive vector summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector<T> {
    entries: Vec<T>,
}

impl<T: Real> ProbabilityVector<T> {
    pub fn new(entries: Vec<T>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidProbabilityVector("empty".into()));
        }
        let mut sum = T::zero();
        for (i, &v) in entries.iter().enumerate() {
            if !v.is_finite() || v <= T::zero() {
                return Err(Error::InvalidProbabilityVector(format!(
                    "entry {i} = {v} is not strictly positive"
                )));
            }
            sum += v;
        }
        if (sum - T::one()).abs() > T::row_sum_tol() {
            return Err(Error::InvalidProbabilityVector(format!(
                "entries sum to {sum}"
            )));
        }
        Ok(Self { entries })
    }

    /// Normalizes a strictly positive vector to sum one.
    pub fn normalized(mut entries: Vec<T>) -> Result<Self> {
        let sum = entries.iter().fold(T::zero(), |a, &b| a + b);
        if !(sum > T::zero()) {
            return Err(Error::InvalidProbabilityVector(format!(
                "entries sum to {sum}"
            )));
        }
        for v in &mut entries {
            *v = *v / sum;
        }
        Self::new(entries)
    }

    /// Uniform distribution `(1/n) 1`.
    pub fn uniform(n: usize) -> Self {
        let v = T::one() / T::from_usize(n).unwrap();
        Self {
            entries: vec![v; n],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.entries
    }

    pub fn min(&self) -> T {
        self.entries
            .iter()
            .fold(T::infinity(), |acc, &v| acc.min(v))
    }

    pub fn max(&self) -> T {
        self.entries.iter().fold(T::zero(), |acc, &v| acc.max(v))
    }
}

impl<T> std::ops::Index<usize> for ProbabilityVector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.entries[i]
    }
}

/// Cache of the powers `X^1 .. X^p`, multiplied left-to-right.
#[derive(Debug, Clone)]
pub struct PowerCache<T> {
    powers: Vec<DenseMatrix<T>>,
}

impl<T: Real> PowerCache<T> {
    pub fn new(x: &DenseMatrix<T>, p: usize) -> Result<Self> {
        if !x.is_square() {
            return Err(Error::NotSquare {
                rows: x.n_rows(),
                cols: x.n_cols(),
            });
        }
        assert!(p >= 1, "power cache needs p >= 1");
        let mut powers = Vec::with_capacity(p);
        powers.push(x.clone());
        for k in 2..=p {
            let next = powers[k - 2].matmul(x)?;
            powers.push(next);
        }
        Ok(Self { powers })
    }

    /// Highest cached exponent.
    pub fn max_power(&self) -> usize {
        self.powers.len()
    }

    /// `X^k` for `1 <= k <= p`.
    pub fn power(&self, k: usize) -> &DenseMatrix<T> {
        &self.powers[k - 1]
    }
}

/// `||X^p - A||_F`.
pub fn residual_fro<T: Real>(x: &DenseMatrix<T>, a: &DenseMatrix<T>, p: usize) -> Result<T> {
    x.same_shape(a)?;
    let xp = PowerCache::new(x, p)?;
    Ok(xp.power(p).sub(a)?.frobenius_norm())
}

/// Stationary distribution of an irreducible stochastic matrix.
///
/// For `n <= 2000` solves the augmented system `(A^T - I) pi = 0`,
/// `1^T pi = 1` directly, replacing the last equation with the normalization
/// row; above that it falls back to power iteration on `A^T`. The returned
/// vector satisfies `||pi^T A - pi^T||_inf <= tol`.
pub fn stationary_distribution<T: Real>(
    a: &StochasticMatrix<T>,
    tol: T,
    max_iter: usize,
) -> Result<ProbabilityVector<T>> {
    let n = a.n();
    let m = a.matrix();
    let pi = if n <= 2000 {
        let mut sys = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                // (A^T - I) with row n-1 replaced by 1^T
                sys[(i, j)] = if i + 1 == n {
                    T::one()
                } else {
                    let v = m[(j, i)];
                    if i == j {
                        v - T::one()
                    } else {
                        v
                    }
                };
            }
        }
        let mut rhs = vec![T::zero(); n];
        rhs[n - 1] = T::one();
        let lu = Lu::factor(&sys).map_err(|_| Error::NotConverged {
            what: "stationary distribution (augmented solve)",
            iterations: 0,
            residual: f64::NAN,
        })?;
        lu.solve(&rhs)
    } else {
        let mut v = vec![T::one() / T::from_usize(n).unwrap(); n];
        let mut it = 0;
        loop {
            let mut w = m.tr_matvec(&v);
            let s = w.iter().fold(T::zero(), |acc, &x| acc + x);
            for x in &mut w {
                *x = *x / s;
            }
            let delta = w
                .iter()
                .zip(v.iter())
                .fold(T::zero(), |acc, (&x, &y)| acc.max((x - y).abs()));
            v = w;
            it += 1;
            if delta <= tol * real::<T>(0.1) || it >= max_iter {
                break;
            }
        }
        v
    };

    for &x in &pi {
        if x <= T::zero() {
            return Err(Error::NonPositive);
        }
    }
    let pi = ProbabilityVector::normalized(pi)?;
    let res = stationary_residual(m, &pi);
    if res > tol {
        return Err(Error::NotConverged {
            what: "stationary distribution",
            iterations: max_iter,
            residual: res.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(pi)
}

/// `||pi^T A - pi^T||_inf`.
pub fn stationary_residual<T: Real>(a: &DenseMatrix<T>, pi: &ProbabilityVector<T>) -> T {
    let mut r = a.tr_matvec(pi.as_slice());
    for (ri, &pi_i) in r.iter_mut().zip(pi.as_slice()) {
        *ri = *ri - pi_i;
    }
    inf_norm(&r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stoch(n: usize, v: &[f64]) -> StochasticMatrix<f64> {
        StochasticMatrix::new(DenseMatrix::from_vec(n, n, v.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn row_sum_validation() {
        let bad = DenseMatrix::from_vec(2, 2, vec![0.6, 0.6, 0.5, 0.5]).unwrap();
        assert!(matches!(
            StochasticMatrix::new(bad),
            Err(Error::RowSum { row: 0, .. })
        ));
    }

    #[test]
    fn positivity_classification() {
        let a = stoch(2, &[0.5, 0.5, 1.0, 0.0]);
        assert_eq!(a.positivity(), Positivity::Nonnegative);
        let b = stoch(2, &[0.5, 0.5, 0.25, 0.75]);
        assert_eq!(b.positivity(), Positivity::StrictlyPositive);
    }

    #[test]
    fn power_cache_trivial_cases() {
        let id = DenseMatrix::<f64>::identity(3);
        let cache = PowerCache::new(&id, 5).unwrap();
        for k in 1..=5 {
            assert_eq!(cache.power(k), &id);
        }
        let x = DenseMatrix::from_vec(2, 2, vec![0.2, 0.8, 0.4, 0.6]).unwrap();
        let single = PowerCache::new(&x, 1).unwrap();
        assert_eq!(single.max_power(), 1);
        assert_eq!(single.power(1), &x);
    }

    #[test]
    fn power_cache_matches_naive_product() {
        let x = DenseMatrix::from_vec(
            4,
            4,
            vec![
                0.1, 0.2, 0.3, 0.4, 0.25, 0.25, 0.25, 0.25, 0.4, 0.3, 0.2, 0.1, 0.05, 0.15,
                0.35, 0.45,
            ],
        )
        .unwrap();
        let cache = PowerCache::new(&x, 3).unwrap();
        let naive = x.matmul(&x).unwrap().matmul(&x).unwrap();
        let diff = cache.power(3).sub(&naive).unwrap().max_abs();
        assert!(diff <= 1e-13);
    }

    #[test]
    fn power_cache_semigroup_consistency() {
        let x = DenseMatrix::from_vec(
            3,
            3,
            vec![0.5, 0.3, 0.2, 0.1, 0.6, 0.3, 0.25, 0.25, 0.5],
        )
        .unwrap();
        let cache = PowerCache::new(&x, 6).unwrap();
        for j in 1..=3 {
            for k in 1..=3 {
                let prod = cache.power(j).matmul(cache.power(k)).unwrap();
                let target = cache.power(j + k);
                let rel =
                    prod.sub(target).unwrap().frobenius_norm() / target.frobenius_norm();
                assert!(rel <= 1e-10, "j={j} k={k} rel={rel}");
            }
        }
    }

    #[test]
    fn residual_identity_case() {
        let a = stoch(2, &[0.3, 0.7, 0.6, 0.4]);
        let r = residual_fro(a.matrix(), a.matrix(), 1).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn residual_matches_scalar_oracle() {
        let x = DenseMatrix::from_vec(2, 2, vec![0.2, 0.8, 0.7, 0.3]).unwrap();
        let a = DenseMatrix::from_vec(2, 2, vec![0.5, 0.5, 0.45, 0.55]).unwrap();
        let r = residual_fro(&x, &a, 2).unwrap();
        let x2 = x.matmul(&x).unwrap();
        let mut acc = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let d = x2[(i, j)] - a[(i, j)];
                acc += d * d;
            }
        }
        assert!((r * r - acc).abs() <= 1e-13 * acc.max(1.0));
    }

    #[test]
    fn stationary_of_doubly_stochastic_is_uniform() {
        let a = stoch(3, &[0.2, 0.3, 0.5, 0.5, 0.2, 0.3, 0.3, 0.5, 0.2]);
        let pi = stationary_distribution(&a, 1e-12, 1000).unwrap();
        for &v in pi.as_slice() {
            assert!((v - 1.0 / 3.0).abs() < 1e-13);
        }
    }

    #[test]
    fn stationary_detects_reducible_zero_entries() {
        // absorbing chain: stationary is e_2, which has zero entries
        let a = stoch(2, &[0.5, 0.5, 0.0, 1.0]);
        assert!(matches!(
            stationary_distribution(&a, 1e-12, 1000),
            Err(Error::NonPositive)
        ));
    }

    #[test]
    fn probability_vector_validation() {
        assert!(ProbabilityVector::new(vec![0.5, 0.5]).is_ok());
        assert!(ProbabilityVector::new(vec![0.5, 0.6]).is_err());
        assert!(ProbabilityVector::new(vec![1.0, 0.0]).is_err());
        assert!(ProbabilityVector::<f64>::new(vec![]).is_err());
    }
}
