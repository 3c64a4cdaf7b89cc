//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! All core math is written against [`Scalar`], which is `num_traits::Float`
//! plus a handful of tolerances and a dense symmetric eigensolver hook. The
//! hook is the only place where a concrete linear-algebra backend is touched.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::str::FromStr;

use faer::{Mat, Side};
use num_traits::{Float, FromPrimitive, NumAssign};

/// Real floating-point scalar usable by the simulator.
pub trait Scalar:
    Float
    + FromPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + FromStr
    + Default
    + Send
    + Sync
    + 'static
{
    /// Entrywise tolerance for `UᵀU = I` checks on 2×2 gates.
    const ORTHO_TOL: f64;
    /// Width of the window (in units of the energy scale) used to group
    /// eigenvalues into the degenerate ground set.
    const DEGENERACY_TOL: f64;
    /// Lanczos residual tolerance per unit energy scale, before the
    /// `sqrt(dim)` factor.
    const RESIDUAL_TOL: f64;

    /// Full eigendecomposition of a dense symmetric `n × n` matrix stored
    /// row-major. Returns eigenvalues ascending and the matching orthonormal
    /// eigenvectors as columns of a column-major `n × n` buffer.
    fn symmetric_eigen(n: usize, row_major: &[Self]) -> (Vec<Self>, Vec<Self>);

    /// Lossless-enough conversion of an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }
}

macro_rules! impl_scalar {
    ($t:ty, $ortho:expr, $degen:expr, $resid:expr) => {
        impl Scalar for $t {
            const ORTHO_TOL: f64 = $ortho;
            const DEGENERACY_TOL: f64 = $degen;
            const RESIDUAL_TOL: f64 = $resid;

            fn symmetric_eigen(n: usize, row_major: &[Self]) -> (Vec<Self>, Vec<Self>) {
                assert_eq!(row_major.len(), n * n, "dense buffer must be n*n");
                if n == 0 {
                    return (Vec::new(), Vec::new());
                }
                let mat = Mat::<$t>::from_fn(n, n, |i, j| row_major[i * n + j]);
                let eig = mat
                    .self_adjoint_eigen(Side::Lower)
                    .expect("self-adjoint eigendecomposition of a finite matrix");
                let (s, u) = (eig.S().column_vector(), eig.U());
                let mut order: Vec<usize> = (0..n).collect();
                order.sort_by(|&a, &b| s[a].total_cmp(&s[b]));
                let values = order.iter().map(|&k| s[k]).collect();
                let mut vectors = Vec::with_capacity(n * n);
                for &k in &order {
                    vectors.extend(u.col(k).iter().copied());
                }
                (values, vectors)
            }
        }
    };
}

impl_scalar!(f64, 1e-12, 1e-8, 1e-9);
impl_scalar!(f32, 1e-5, 1e-3, 1e-4);
