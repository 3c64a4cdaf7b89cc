use super::EigenPairs;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sparse::SparseSymMatrix;

pub const DEFAULT_DENSE_LIMIT: usize = 4096;

/// Full spectrum through the scalar type's dense symmetric eigensolver.
pub fn solve_dense<T: Scalar>(h: &SparseSymMatrix<T>, limit: usize) -> Result<EigenPairs<T>> {
    let n = h.dim();
    if n > limit {
        return Err(Error::DenseLimit { dim: n, limit });
    }
    let (values, flat) = T::symmetric_eigen(n, &h.to_dense());
    let vectors: Vec<Vec<T>> = flat.chunks(n.max(1)).take(n).map(<[T]>::to_vec).collect();
    let residuals = super::residuals(h, &values, &vectors)?;
    Ok(EigenPairs {
        values,
        vectors,
        residuals,
    })
}
