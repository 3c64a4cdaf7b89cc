//! Product basis for one electron per qubit chain.
//!
//! Each qubit owns `2(N+1)` sites, ordinal `2·row + bit`. A basis state picks
//! one site per qubit; its global index is the mixed-radix number with radix
//! `2(N+1)` and qubit 0 as the least significant digit.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest dimension the crate will index.
pub const MAX_DIM: usize = u32::MAX as usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SiteIndex {
    pub qubit: usize,
    pub row: usize,
    pub bit: usize,
}

impl SiteIndex {
    pub fn new(qubit: usize, row: usize, bit: usize) -> Self {
        SiteIndex { qubit, row, bit }
    }

    /// Per-qubit site ordinal `2·row + bit`.
    pub fn ordinal(&self) -> usize {
        site(self.row, self.bit)
    }
}

#[inline]
pub fn site(row: usize, bit: usize) -> usize {
    2 * row + bit
}

/// Shape of the product space: `M` qubits, `N` stages.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Layout {
    num_qubits: usize,
    num_stages: usize,
    dim: usize,
}

/// `(2(N+1))^M`, or an error if it does not fit the index type.
pub fn dim(num_qubits: usize, num_stages: usize) -> Result<usize> {
    if num_qubits == 0 {
        return Err(Error::InvalidArgument("at least one qubit required".into()));
    }
    let too_large = || Error::TooLarge(format!("M={num_qubits}, N={num_stages}"));
    let radix = num_stages
        .checked_add(1)
        .and_then(|r| r.checked_mul(2))
        .ok_or_else(too_large)?;
    let mut d: usize = 1;
    for _ in 0..num_qubits {
        d = d
            .checked_mul(radix)
            .filter(|&d| d <= MAX_DIM)
            .ok_or_else(too_large)?;
    }
    Ok(d)
}

impl Layout {
    pub fn new(num_qubits: usize, num_stages: usize) -> Result<Self> {
        Ok(Layout {
            num_qubits,
            num_stages,
            dim: dim(num_qubits, num_stages)?,
        })
    }

    pub fn of<T: Scalar>(circuit: &crate::circuit::Circuit<T>) -> Result<Self> {
        Layout::new(circuit.num_qubits, circuit.num_stages())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn num_stages(&self) -> usize {
        self.num_stages
    }

    pub fn num_rows(&self) -> usize {
        self.num_stages + 1
    }

    pub fn sites_per_qubit(&self) -> usize {
        2 * self.num_rows()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of bit configurations `2^M`.
    pub fn register_dim(&self) -> usize {
        1 << self.num_qubits
    }

    /// Place value of qubit `q`'s digit.
    #[inline]
    pub fn stride(&self, qubit: usize) -> usize {
        self.sites_per_qubit().pow(qubit as u32)
    }

    /// Site ordinal of `qubit` in basis state `index`.
    #[inline]
    pub fn digit(&self, index: usize, qubit: usize) -> usize {
        (index / self.stride(qubit)) % self.sites_per_qubit()
    }

    pub fn encode(&self, sites: &[usize]) -> Result<usize> {
        if sites.len() != self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits,
                got: sites.len(),
            });
        }
        let radix = self.sites_per_qubit();
        let mut index = 0;
        for &s in sites.iter().rev() {
            if s >= radix {
                return Err(Error::OutOfRange {
                    what: "site ordinal",
                    value: s,
                    limit: radix,
                });
            }
            index = index * radix + s;
        }
        Ok(index)
    }

    pub fn decode(&self, mut index: usize) -> Result<Vec<usize>> {
        if index >= self.dim {
            return Err(Error::OutOfRange {
                what: "basis index",
                value: index,
                limit: self.dim,
            });
        }
        let radix = self.sites_per_qubit();
        let mut sites = Vec::with_capacity(self.num_qubits);
        for _ in 0..self.num_qubits {
            sites.push(index % radix);
            index /= radix;
        }
        Ok(sites)
    }

    /// Basis index with every qubit on `row`, bits taken from `config`
    /// (bit `a` of `config` is qubit `a`).
    pub fn joint_row_index(&self, row: usize, config: usize) -> usize {
        (0..self.num_qubits)
            .map(|q| site(row, (config >> q) & 1) * self.stride(q))
            .sum()
    }
}

/// Real amplitudes over the product basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T> {
    layout: Layout,
    amplitudes: Vec<T>,
}

impl<T: Scalar> StateVector<T> {
    pub fn zeros(layout: Layout) -> Self {
        StateVector {
            layout,
            amplitudes: vec![T::zero(); layout.dim()],
        }
    }

    pub fn from_amplitudes(layout: Layout, amplitudes: Vec<T>) -> Result<Self> {
        if amplitudes.len() != layout.dim() {
            return Err(Error::DimensionMismatch {
                expected: layout.dim(),
                got: amplitudes.len(),
            });
        }
        Ok(StateVector { layout, amplitudes })
    }

    pub fn basis(layout: Layout, index: usize) -> Result<Self> {
        let mut v = StateVector::zeros(layout);
        if index >= layout.dim() {
            return Err(Error::OutOfRange {
                what: "basis index",
                value: index,
                limit: layout.dim(),
            });
        }
        v.amplitudes[index] = T::one();
        Ok(v)
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &[T] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [T] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<T> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().map(|&a| a * a).sum()
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn dot(&self, other: &Self) -> T {
        dot(&self.amplitudes, &other.amplitudes)
    }

    pub fn is_finite(&self) -> bool {
        self.amplitudes.iter().all(|a| a.is_finite())
    }

    /// Scale to unit norm; fails on the zero vector.
    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm();
        if n.is_nan() || n <= T::zero() {
            return Err(Error::ZeroState);
        }
        self.amplitudes.iter_mut().for_each(|a| *a /= n);
        Ok(self)
    }

    pub fn project_row(&self, row: usize) -> Result<Vec<T>> {
        project_row(self, row)
    }
}

/// Amplitudes of the components with every qubit on `row`, indexed by bit
/// configuration (qubit 0 least significant). Not normalized.
pub fn project_row<T: Scalar>(state: &StateVector<T>, row: usize) -> Result<Vec<T>> {
    let layout = state.layout();
    if row > layout.num_stages() {
        return Err(Error::OutOfRange {
            what: "row",
            value: row,
            limit: layout.num_rows(),
        });
    }
    Ok((0..layout.register_dim())
        .map(|config| state.amplitudes[layout.joint_row_index(row, config)])
        .collect())
}

pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub(crate) fn norm<T: Scalar>(a: &[T]) -> T {
    dot(a, a).sqrt()
}
