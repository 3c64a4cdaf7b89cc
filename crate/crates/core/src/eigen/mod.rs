//! Low-lying spectrum: dense and Lanczos solvers, ground-space grouping and
//! gap scans.

mod dense;
mod lanczos;

use std::fmt;
use std::str::FromStr;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::hamiltonian::{assemble_with, HamiltonianForm};
use crate::hilbert::{dot, norm, Layout, StateVector};
use crate::scalar::Scalar;
use crate::sparse::SparseSymMatrix;

pub use dense::{solve_dense, DEFAULT_DENSE_LIMIT};
pub use lanczos::{solve_lanczos, LanczosOptions, MAX_EIGENPAIRS};

/// Eigenpairs in ascending order with their residual norms `‖Hv − λv‖`.
#[derive(Clone, Debug)]
pub struct EigenPairs<T> {
    pub values: Vec<T>,
    pub vectors: Vec<Vec<T>>,
    pub residuals: Vec<T>,
}

pub(crate) fn residuals<T: Scalar>(
    h: &SparseSymMatrix<T>,
    values: &[T],
    vectors: &[Vec<T>],
) -> Result<Vec<T>> {
    values
        .iter()
        .zip(vectors)
        .map(|(&l, v)| {
            let hv = h.matvec(v)?;
            Ok(norm(
                &hv.iter()
                    .zip(v)
                    .map(|(&a, &b)| a - l * b)
                    .collect::<Vec<_>>(),
            ))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SolverChoice {
    /// Dense up to the dense limit, Lanczos above.
    #[default]
    Auto,
    Dense,
    Lanczos,
}

impl FromStr for SolverChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(SolverChoice::Auto),
            "dense" => Ok(SolverChoice::Dense),
            "lanczos" => Ok(SolverChoice::Lanczos),
            other => Err(Error::InvalidArgument(format!("unknown solver '{other}'"))),
        }
    }
}

impl fmt::Display for SolverChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverChoice::Auto => "auto",
            SolverChoice::Dense => "dense",
            SolverChoice::Lanczos => "lanczos",
        })
    }
}

#[derive(Clone, Debug)]
pub struct GroundSpaceOptions {
    pub solver: SolverChoice,
    pub expected_degeneracy: Option<usize>,
    pub energy_scale: f64,
    pub seed: u64,
    pub dense_limit: usize,
    /// Grouping window; default `DEGENERACY_TOL · scale`.
    pub degeneracy_tol: Option<f64>,
}

impl Default for GroundSpaceOptions {
    fn default() -> Self {
        GroundSpaceOptions {
            solver: SolverChoice::Auto,
            expected_degeneracy: None,
            energy_scale: 1.0,
            seed: LanczosOptions::new(1).seed,
            dense_limit: DEFAULT_DENSE_LIMIT,
            degeneracy_tol: None,
        }
    }
}

impl GroundSpaceOptions {
    pub fn solver(mut self, solver: SolverChoice) -> Self {
        self.solver = solver;
        self
    }

    pub fn expect(mut self, degeneracy: usize) -> Self {
        self.expected_degeneracy = Some(degeneracy);
        self
    }

    pub fn energy_scale(mut self, scale: f64) -> Self {
        self.energy_scale = scale;
        self
    }
}

#[derive(Clone, Debug)]
pub struct GroundSpace<T> {
    /// Every computed eigenvalue, ascending.
    pub eigenvalues: Vec<T>,
    /// Orthonormal basis of the ground set.
    pub eigenvectors: Vec<Vec<T>>,
    pub residuals: Vec<T>,
    pub degeneracy: usize,
    /// First eigenvalue above the ground set minus the ground energy; `None`
    /// when the whole computed spectrum is degenerate.
    pub gap: Option<T>,
    /// Solver actually used.
    pub solver: SolverChoice,
}

impl<T: Scalar> GroundSpace<T> {
    pub fn ground_energy(&self) -> T {
        self.eigenvalues[0]
    }

    /// First ground vector wrapped as a state.
    pub fn ground_state(&self, layout: Layout) -> Result<StateVector<T>> {
        StateVector::from_amplitudes(layout, self.eigenvectors[0].clone())
    }

    /// `‖v − Π v‖ / ‖v‖` with `Π` the projector onto the ground set.
    pub fn projection_residual(&self, v: &[T]) -> T {
        let mut r = v.to_vec();
        for g in &self.eigenvectors {
            let c = dot(&r, g);
            r.iter_mut().zip(g).for_each(|(x, &y)| *x -= c * y);
        }
        let n = norm(v);
        if n > T::zero() {
            norm(&r) / n
        } else {
            T::zero()
        }
    }
}

fn group<T: Scalar>(pairs: EigenPairs<T>, tol: T, solver: SolverChoice) -> GroundSpace<T> {
    let min = pairs.values[0];
    let degeneracy = pairs.values.iter().take_while(|&&v| v - min <= tol).count();
    let gap = pairs.values.get(degeneracy).map(|&v| v - min);
    GroundSpace {
        eigenvectors: pairs.vectors.into_iter().take(degeneracy).collect(),
        residuals: pairs.residuals,
        eigenvalues: pairs.values,
        degeneracy,
        gap,
        solver,
    }
}

/// Ground set of `h` and the gap above it.
pub fn ground_space<T: Scalar>(
    h: &SparseSymMatrix<T>,
    opts: &GroundSpaceOptions,
) -> Result<GroundSpace<T>> {
    let n = h.dim();
    let tol = T::lit(
        opts.degeneracy_tol
            .unwrap_or(T::DEGENERACY_TOL * opts.energy_scale),
    );
    let use_dense = match opts.solver {
        SolverChoice::Dense => true,
        SolverChoice::Lanczos => n < 2,
        SolverChoice::Auto => n <= opts.dense_limit,
    };
    let space = if use_dense {
        let limit = if opts.solver == SolverChoice::Dense {
            opts.dense_limit
        } else {
            opts.dense_limit.max(n)
        };
        group(solve_dense(h, limit)?, tol, SolverChoice::Dense)
    } else {
        let cap = MAX_EIGENPAIRS.min(n);
        let mut k = opts.expected_degeneracy.map_or(2, |d| d + 1).clamp(1, cap);
        loop {
            let lopts = LanczosOptions::new(k)
                .seed(opts.seed)
                .energy_scale(opts.energy_scale);
            let space = group(solve_lanczos(h, &lopts)?, tol, SolverChoice::Lanczos);
            if space.gap.is_some() || k == cap {
                break space;
            }
            k = (2 * k).min(cap);
        }
    };
    if let Some(expected) = opts.expected_degeneracy {
        if expected != space.degeneracy {
            return Err(Error::DegeneracyMismatch {
                expected,
                observed: space.degeneracy,
            });
        }
    }
    Ok(space)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GapRow<T> {
    pub num_stages: usize,
    pub dim: usize,
    pub degeneracy: usize,
    pub gap: Option<T>,
}

/// Assemble and solve each member of a circuit family.
pub fn spectral_gap_scan<T, F>(
    family: F,
    stage_counts: &[usize],
    form: HamiltonianForm,
    opts: &GroundSpaceOptions,
) -> Result<Vec<GapRow<T>>>
where
    T: Scalar,
    F: Fn(usize) -> Circuit<T>,
{
    stage_counts
        .iter()
        .map(|&n| {
            let c = family(n);
            let h = assemble_with(&c, form, None)?;
            let mut o = opts.clone();
            o.energy_scale = c.epsilon.to_f64().unwrap_or(1.0);
            let gs = ground_space(&h, &o)?;
            Ok(GapRow {
                num_stages: c.num_stages(),
                dim: h.dim(),
                degeneracy: gs.degeneracy,
                gap: gs.gap,
            })
        })
        .collect()
}

/// Family member with `n` stages: the circuit's stages taken in order,
/// cycling when `n` exceeds its length.
pub fn cyclic_family<T: Scalar>(circuit: &Circuit<T>) -> impl Fn(usize) -> Circuit<T> + '_ {
    move |n| {
        let stages = if circuit.stages.is_empty() {
            Vec::new()
        } else {
            circuit.stages.iter().cycle().take(n).cloned().collect()
        };
        Circuit {
            num_qubits: circuit.num_qubits,
            stages,
            epsilon: circuit.epsilon,
        }
    }
}
