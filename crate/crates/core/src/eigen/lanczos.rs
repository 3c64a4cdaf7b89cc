//! Lanczos with full reorthogonalization, explicit restarts and locking.
//!
//! Each cycle builds a Krylov basis orthogonal to every locked eigenvector,
//! so the operator it sees is `H` deflated on the locked span. When the
//! lowest Ritz pair of a cycle converges, it and any consecutive converged
//! pairs above it are locked; otherwise the cycle restarts from its lowest
//! Ritz vector. A single Krylov space holds only one direction per
//! eigenvalue, so degenerate copies are found by later cycles started from
//! fresh random vectors. The solver stops once a fresh cycle fails to find
//! anything below the current `k`-th locked value.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::EigenPairs;
use crate::error::{Error, Result};
use crate::hilbert::{dot, norm};
use crate::scalar::Scalar;
use crate::sparse::SparseSymMatrix;

pub const MAX_EIGENPAIRS: usize = 32;
const DEFAULT_BASIS: usize = 250;
const ITER_CAP: usize = 200_000;

#[derive(Clone, Debug)]
pub struct LanczosOptions {
    pub k: usize,
    pub seed: u64,
    /// Energy unit for tolerances.
    pub energy_scale: f64,
    /// Residual tolerance; default `RESIDUAL_TOL · scale · sqrt(dim)`.
    pub residual_tol: Option<f64>,
    /// Total matvec budget; default `min(10·dim, 200000)`.
    pub max_iter: Option<usize>,
    /// Krylov basis size per cycle.
    pub basis_size: usize,
}

impl LanczosOptions {
    pub fn new(k: usize) -> Self {
        LanczosOptions {
            k,
            seed: 0x6753_5143,
            energy_scale: 1.0,
            residual_tol: None,
            max_iter: None,
            basis_size: DEFAULT_BASIS,
        }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn energy_scale(mut self, scale: f64) -> Self {
        self.energy_scale = scale;
        self
    }
}

struct Locked<T> {
    values: Vec<T>,
    vectors: Vec<Vec<T>>,
    residuals: Vec<T>,
}

impl<T: Scalar> Locked<T> {
    /// k-th smallest locked value (1-based `k`).
    fn kth(&self, k: usize) -> Option<T> {
        if self.values.len() < k {
            return None;
        }
        let mut v = self.values.clone();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Some(v[k - 1])
    }
}

fn random_unit<T: Scalar>(rng: &mut ChaCha8Rng, n: usize) -> Vec<T> {
    let v: Vec<T> = (0..n).map(|_| T::lit(rng.random::<f64>() - 0.5)).collect();
    let s = norm(&v);
    v.into_iter().map(|x| x / s).collect()
}

/// Remove components along `basis` (two Gram-Schmidt passes).
fn orthogonalize<T: Scalar>(w: &mut [T], basis: &[&[T]]) {
    for _ in 0..2 {
        for b in basis {
            let c = dot(w, b);
            if c != T::zero() {
                w.iter_mut().zip(b.iter()).for_each(|(x, &y)| *x -= c * y);
            }
        }
    }
}

pub fn solve_lanczos<T: Scalar>(
    h: &SparseSymMatrix<T>,
    opts: &LanczosOptions,
) -> Result<EigenPairs<T>> {
    let n = h.dim();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "Lanczos needs dim > 1, got {n}"
        )));
    }
    let k = opts.k;
    if k == 0 || k > MAX_EIGENPAIRS || k > n {
        return Err(Error::InvalidArgument(format!(
            "requested {k} eigenpairs; allowed 1..={}",
            MAX_EIGENPAIRS.min(n)
        )));
    }
    let scale = T::lit(opts.energy_scale);
    let tol = T::lit(
        opts.residual_tol
            .unwrap_or(T::RESIDUAL_TOL * opts.energy_scale * (n as f64).sqrt()),
    );
    let max_iter = opts.max_iter.unwrap_or((10 * n).min(ITER_CAP));
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let mut locked = Locked {
        values: Vec::new(),
        vectors: Vec::new(),
        residuals: Vec::new(),
    };
    let mut iterations = 0usize;
    let mut start: Option<Vec<T>> = None;
    let mut best_residuals: Vec<f64> = Vec::new();
    // k-th locked value before the current sweep began
    let mut kth_at_sweep_start: Option<T> = None;

    loop {
        if locked.values.len() == n {
            break;
        }
        let fresh = start.is_none();
        let mut v0 = start.take().unwrap_or_else(|| random_unit(&mut rng, n));
        {
            let lv: Vec<&[T]> = locked.vectors.iter().map(Vec::as_slice).collect();
            orthogonalize(&mut v0, &lv);
        }
        let mut s = norm(&v0);
        if s.is_nan() || s <= T::lit(1e-8) {
            v0 = random_unit(&mut rng, n);
            let lv: Vec<&[T]> = locked.vectors.iter().map(Vec::as_slice).collect();
            orthogonalize(&mut v0, &lv);
            s = norm(&v0);
        }
        v0.iter_mut().for_each(|x| *x /= s);
        if fresh {
            kth_at_sweep_start = locked.kth(k);
        }

        let m_max = opts.basis_size.max(2).min(n - locked.values.len());
        let mut basis: Vec<Vec<T>> = vec![v0];
        let mut alphas: Vec<T> = Vec::with_capacity(m_max);
        let mut betas: Vec<T> = Vec::with_capacity(m_max);
        let mut w = vec![T::zero(); n];
        let mut anorm = T::zero();
        let mut invariant = false;
        while alphas.len() < m_max {
            let i = alphas.len();
            h.matvec_into(&basis[i], &mut w)?;
            iterations += 1;
            let alpha = dot(&w, &basis[i]);
            w.iter_mut()
                .zip(&basis[i])
                .for_each(|(x, &y)| *x -= alpha * y);
            if i > 0 {
                let b = betas[i - 1];
                w.iter_mut()
                    .zip(&basis[i - 1])
                    .for_each(|(x, &y)| *x -= b * y);
            }
            {
                let all: Vec<&[T]> = locked
                    .vectors
                    .iter()
                    .chain(basis.iter())
                    .map(Vec::as_slice)
                    .collect();
                orthogonalize(&mut w, &all);
            }
            alphas.push(alpha);
            let beta = norm(&w);
            anorm = anorm.max(alpha.abs() + beta);
            betas.push(beta);
            if beta <= T::epsilon() * T::lit(64.0) * anorm.max(scale) {
                invariant = true;
                break;
            }
            if alphas.len() < m_max {
                basis.push(w.iter().map(|&x| x / beta).collect());
            }
        }

        // Ritz pairs of the tridiagonal projection
        let m = alphas.len();
        let mut t = vec![T::zero(); m * m];
        for i in 0..m {
            t[i * m + i] = alphas[i];
            if i + 1 < m {
                t[i * m + i + 1] = betas[i];
                t[(i + 1) * m + i] = betas[i];
            }
        }
        let (theta, svecs) = T::symmetric_eigen(m, &t);
        let last_beta = if invariant { T::zero() } else { betas[m - 1] };
        let estimate = |i: usize| (last_beta * svecs[i * m + m - 1]).abs();
        let ritz = |i: usize| -> Vec<T> {
            let mut y = vec![T::zero(); n];
            for (j, b) in basis.iter().enumerate() {
                let c = svecs[i * m + j];
                y.iter_mut().zip(b).for_each(|(x, &v)| *x += c * v);
            }
            let s = norm(&y);
            y.into_iter().map(|x| x / s).collect()
        };

        let mut newly_locked = 0;
        let mut first_value: Option<T> = None;
        for (i, &value) in theta.iter().enumerate().take(m) {
            if estimate(i) > tol {
                break;
            }
            let y = ritz(i);
            let hy = h.matvec(&y)?;
            let r: Vec<T> = hy.iter().zip(&y).map(|(&a, &b)| a - value * b).collect();
            let res = norm(&r);
            if res > tol {
                break;
            }
            first_value.get_or_insert(value);
            locked.values.push(value);
            locked.vectors.push(y);
            locked.residuals.push(res);
            newly_locked += 1;
            // enough candidates above the k-th for this sweep
            if newly_locked > k {
                break;
            }
        }

        if newly_locked == 0 {
            best_residuals = (0..m.min(k))
                .map(|i| estimate(i).to_f64().unwrap_or(f64::NAN))
                .collect();
            if iterations >= max_iter {
                return Err(Error::NonConvergence {
                    iterations,
                    residuals: best_residuals,
                });
            }
            start = Some(ritz(0));
            continue;
        }

        // a fresh sweep that found nothing below the previous k-th value
        // confirms the k lowest
        if let (Some(prev), Some(low)) = (kth_at_sweep_start, first_value) {
            let guard = T::lit(T::DEGENERACY_TOL) * scale;
            if low >= prev - guard {
                break;
            }
        }
        if iterations >= max_iter {
            if locked.values.len() >= k {
                break;
            }
            return Err(Error::NonConvergence {
                iterations,
                residuals: best_residuals,
            });
        }
        start = None;
    }

    let mut order: Vec<usize> = (0..locked.values.len()).collect();
    order.sort_by(|&a, &b| locked.values[a].partial_cmp(&locked.values[b]).unwrap());
    order.truncate(k);
    Ok(EigenPairs {
        values: order.iter().map(|&i| locked.values[i]).collect(),
        vectors: order.iter().map(|&i| locked.vectors[i].clone()).collect(),
        residuals: order.iter().map(|&i| locked.residuals[i]).collect(),
    })
}
