//! Real symmetric sparse matrices.
//!
//! Assembly pushes upper-triangle coordinates into a [`CooBuilder`];
//! [`CooBuilder::finalize`] merges duplicates and produces a
//! [`SparseSymMatrix`] that keeps the canonical upper triangle (for dumps and
//! dense conversion) alongside a full compressed-row copy used by `matvec`.

use std::fmt::Write as _;
use std::io;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dimension at which `matvec` switches to rayon; smaller products run serially.
const PAR_THRESHOLD: usize = 8192;

#[derive(Clone, Debug)]
pub struct CooBuilder<T> {
    dim: usize,
    entries: Vec<(u32, u32, T)>,
}

impl<T: Scalar> CooBuilder<T> {
    pub fn new(dim: usize) -> Self {
        CooBuilder {
            dim,
            entries: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Add `value` at logical position `(i, j)` and its mirror `(j, i)`.
    /// Only the upper-triangle coordinate is recorded.
    #[inline]
    pub fn push(&mut self, i: usize, j: usize, value: T) {
        debug_assert!(i < self.dim && j < self.dim);
        let (r, c) = if i <= j { (i, j) } else { (j, i) };
        self.entries.push((r as u32, c as u32, value));
    }

    pub fn extend_from(&mut self, other: &CooBuilder<T>) -> Result<()> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        self.entries.extend_from_slice(&other.entries);
        Ok(())
    }

    /// Merge duplicates by summation in push order and drop entries with
    /// `|value| < drop_tol`.
    pub fn finalize(mut self, drop_tol: T) -> SparseSymMatrix<T> {
        // stable: duplicates keep push order, so sums are reproducible
        self.entries.sort_by_key(|&(i, j, _)| (i, j));
        let mut upper: Vec<(u32, u32, T)> = Vec::with_capacity(self.entries.len());
        for (i, j, v) in self.entries {
            match upper.last_mut() {
                Some(last) if last.0 == i && last.1 == j => last.2 += v,
                _ => upper.push((i, j, v)),
            }
        }
        upper.retain(|e| e.2.abs() >= drop_tol);
        SparseSymMatrix::from_upper(self.dim, upper)
    }
}

#[derive(Clone, Debug)]
pub struct SparseSymMatrix<T> {
    dim: usize,
    upper: Vec<(u32, u32, T)>,
    row_ptr: Vec<usize>,
    col_idx: Vec<u32>,
    values: Vec<T>,
}

impl<T: Scalar> SparseSymMatrix<T> {
    fn from_upper(dim: usize, upper: Vec<(u32, u32, T)>) -> Self {
        let mut counts = vec![0usize; dim + 1];
        for &(i, j, _) in &upper {
            counts[i as usize + 1] += 1;
            if i != j {
                counts[j as usize + 1] += 1;
            }
        }
        for k in 0..dim {
            counts[k + 1] += counts[k];
        }
        let nnz = counts[dim];
        let mut col_idx = vec![0u32; nnz];
        let mut values = vec![T::zero(); nnz];
        let mut fill = counts.clone();
        // upper is sorted by (row, col); filling lower mirrors first keeps
        // every row's columns ascending
        for &(i, j, v) in &upper {
            if i != j {
                let slot = &mut fill[j as usize];
                col_idx[*slot] = i;
                values[*slot] = v;
                *slot += 1;
            }
        }
        for &(i, j, v) in &upper {
            let slot = &mut fill[i as usize];
            col_idx[*slot] = j;
            values[*slot] = v;
            *slot += 1;
        }
        debug_assert!((0..dim).all(|r| col_idx[counts[r]..counts[r + 1]]
            .windows(2)
            .all(|w| w[0] < w[1])));
        SparseSymMatrix {
            dim,
            upper,
            row_ptr: counts,
            col_idx,
            values,
        }
    }

    /// Build directly from a dense row-major symmetric matrix (upper triangle
    /// is read). Mostly useful in tests.
    pub fn from_dense(dim: usize, row_major: &[T]) -> Result<Self> {
        if row_major.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: row_major.len(),
            });
        }
        let mut b = CooBuilder::new(dim);
        for i in 0..dim {
            for j in i..dim {
                let v = row_major[i * dim + j];
                if v != T::zero() {
                    b.push(i, j, v);
                }
            }
        }
        Ok(b.finalize(T::zero()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Stored upper-triangle entries, sorted by `(row, col)`.
    pub fn upper_entries(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        self.upper
            .iter()
            .map(|&(i, j, v)| (i as usize, j as usize, v))
    }

    pub fn nnz_upper(&self) -> usize {
        self.upper.len()
    }

    /// Logical entry `(i, j)`; zero when not stored.
    pub fn get(&self, i: usize, j: usize) -> T {
        let (lo, hi) = self
            .row_ptr
            .get(i)
            .zip(self.row_ptr.get(i + 1))
            .map_or((0, 0), |(a, b)| (*a, *b));
        match self.col_idx[lo..hi].binary_search(&(j as u32)) {
            Ok(k) => self.values[lo + k],
            Err(_) => T::zero(),
        }
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    /// `y = H x`. Each output row sums its stored columns in ascending column
    /// order, so results are identical with and without parallelism.
    pub fn matvec(&self, x: &[T]) -> Result<Vec<T>> {
        let mut y = vec![T::zero(); self.dim];
        self.matvec_into(x, &mut y)?;
        Ok(y)
    }

    pub fn matvec_into(&self, x: &[T], y: &mut [T]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        if y.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: y.len(),
            });
        }
        let row = |r: usize| -> T {
            let (lo, hi) = (self.row_ptr[r], self.row_ptr[r + 1]);
            let mut acc = T::zero();
            for k in lo..hi {
                acc += self.values[k] * x[self.col_idx[k] as usize];
            }
            acc
        };
        if self.dim >= PAR_THRESHOLD {
            y.par_iter_mut()
                .enumerate()
                .for_each(|(r, out)| *out = row(r));
        } else {
            y.iter_mut().enumerate().for_each(|(r, out)| *out = row(r));
        }
        Ok(())
    }

    /// `xᵀ H x`.
    pub fn quadratic_form(&self, x: &[T]) -> Result<T> {
        let y = self.matvec(x)?;
        Ok(crate::hilbert::dot(x, &y))
    }

    /// Full symmetric matrix, row-major.
    pub fn to_dense(&self) -> Vec<T> {
        let n = self.dim;
        let mut d = vec![T::zero(); n * n];
        for &(i, j, v) in &self.upper {
            let (i, j) = (i as usize, j as usize);
            d[i * n + j] = v;
            d[j * n + i] = v;
        }
        d
    }

    /// Text dump: one `i j value` line per stored upper-triangle entry,
    /// sorted by `(i, j)`, values in shortest round-trip scientific notation.
    pub fn dump(&self) -> String {
        let mut out = String::with_capacity(self.upper.len() * 32);
        for &(i, j, v) in &self.upper {
            writeln!(out, "{i} {j} {v:e}").unwrap();
        }
        out
    }

    pub fn write_dump<W: io::Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(self.dump().as_bytes())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_merge_and_zeros_drop() {
        let mut b = CooBuilder::<f64>::new(3);
        b.push(0, 1, 1.0);
        b.push(1, 0, 2.0);
        b.push(2, 2, 1e-20);
        b.push(1, 1, 0.5);
        let h = b.finalize(1e-15);
        assert_eq!(h.nnz_upper(), 2);
        assert_eq!(h.get(0, 1), 3.0);
        assert_eq!(h.get(1, 0), 3.0);
        assert_eq!(h.get(2, 2), 0.0);
        assert_eq!(h.dump(), "0 1 3e0\n1 1 5e-1\n");
    }

    #[test]
    fn matvec_matches_dense() {
        let dense = [2.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 2.0];
        let h = SparseSymMatrix::<f64>::from_dense(3, &dense).unwrap();
        let y = h.matvec(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(y, vec![0.0, 0.0, 4.0]);
        assert_eq!(h.to_dense(), dense.to_vec());
        assert!(h.matvec(&[1.0]).is_err());
    }

    #[test]
    fn zero_vector_maps_to_zero() {
        let h = SparseSymMatrix::<f64>::from_dense(2, &[1.0, 2.0, 2.0, 1.0]).unwrap();
        assert_eq!(h.matvec(&[0.0, 0.0]).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn parallel_path_matches_serial_sum_order() {
        let n = PAR_THRESHOLD + 7;
        let mut b = CooBuilder::<f64>::new(n);
        for i in 0..n {
            b.push(i, i, 1.0 + i as f64 * 1e-3);
            if i + 3 < n {
                b.push(i, i + 3, -0.25);
            }
        }
        let h = b.finalize(0.0);
        let x: Vec<f64> = (0..n).map(|i| ((i * 7919) % 101) as f64 / 13.0).collect();
        let y = h.matvec(&x).unwrap();
        for r in [0, 1, n / 2, n - 1] {
            let mut acc = 0.0;
            if r >= 3 {
                acc += -0.25 * x[r - 3];
            }
            acc += (1.0 + r as f64 * 1e-3) * x[r];
            if r + 3 < n {
                acc += -0.25 * x[r + 3];
            }
            assert_eq!(y[r], acc);
        }
    }
}
