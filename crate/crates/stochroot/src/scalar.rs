//! Scalar abstraction: all numerical code in this crate is generic over a
//! floating-point type implementing [`Real`].

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FromPrimitive, NumAssign};

/// Floating-point scalar usable by every algorithm in the crate.
///
/// Default tolerances are provided per type since a fixed literal such as
/// `1e-12` is meaningless below the epsilon of narrower formats.
pub trait Real:
    Float + FromPrimitive + NumAssign + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Validation tolerance on row sums of stochastic matrices.
    fn row_sum_tol() -> Self;
    /// Default relative residual tolerance for the projection-system solvers.
    fn solver_tol() -> Self;
    /// Default marginal tolerance for Sinkhorn balancing.
    fn sinkhorn_tol() -> Self;
    /// Default gradient-norm stopping tolerance for the optimizers.
    fn gradnorm_tol() -> Self;
}

impl Real for f64 {
    fn row_sum_tol() -> Self {
        1e-12
    }
    fn solver_tol() -> Self {
        1e-10
    }
    fn sinkhorn_tol() -> Self {
        1e-12
    }
    fn gradnorm_tol() -> Self {
        1e-7
    }
}

impl Real for f32 {
    fn row_sum_tol() -> Self {
        1e-5
    }
    fn solver_tol() -> Self {
        1e-5
    }
    fn sinkhorn_tol() -> Self {
        1e-6
    }
    fn gradnorm_tol() -> Self {
        1e-4
    }
}

/// Converts an `f64` literal into the working scalar type.
#[inline]
pub fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}
