//! Reference constructions the Hamiltonian is checked against.
//!
//! [`gate_oracle_run`] is an ordinary register simulator on `2^M` real
//! amplitudes. [`recursion_state`] builds the zero-energy state directly in
//! the product basis by pushing each qubit forward one row per stage. Neither
//! touches the Hamiltonian.

use crate::circuit::{apply_mat, Assignment, Circuit, Mat2};
use crate::error::{Error, Result};
use crate::hamiltonian::RowReachability;
use crate::hilbert::{dot, norm, project_row, Layout, StateVector};
use crate::scalar::Scalar;

/// Real amplitudes over bit configurations, qubit 0 least significant.
#[derive(Clone, Debug, PartialEq)]
pub struct RegisterState<T> {
    num_qubits: usize,
    amplitudes: Vec<T>,
}

impl<T: Scalar> RegisterState<T> {
    pub fn basis(num_qubits: usize, n: usize) -> Result<Self> {
        let size = 1usize
            .checked_shl(num_qubits as u32)
            .ok_or_else(|| Error::TooLarge(format!("{num_qubits} qubits")))?;
        if n >= size {
            return Err(Error::OutOfRange {
                what: "input",
                value: n,
                limit: size,
            });
        }
        let mut amplitudes = vec![T::zero(); size];
        amplitudes[n] = T::one();
        Ok(RegisterState {
            num_qubits,
            amplitudes,
        })
    }

    pub fn from_amplitudes(num_qubits: usize, amplitudes: Vec<T>) -> Result<Self> {
        if amplitudes.len() != 1 << num_qubits {
            return Err(Error::DimensionMismatch {
                expected: 1 << num_qubits,
                got: amplitudes.len(),
            });
        }
        Ok(RegisterState {
            num_qubits,
            amplitudes,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[T] {
        &self.amplitudes
    }

    pub fn norm(&self) -> T {
        norm(&self.amplitudes)
    }

    /// Configuration with the largest squared amplitude, and that value.
    pub fn argmax(&self) -> (usize, T) {
        self.amplitudes.iter().map(|a| *a * *a).enumerate().fold(
            (0, T::neg_infinity()),
            |best, (i, p)| if p > best.1 { (i, p) } else { best },
        )
    }

    fn apply(&mut self, m: &Mat2<T>, qubit: usize, select: impl Fn(usize) -> bool) {
        let bit = 1 << qubit;
        for x in (0..self.amplitudes.len()).filter(|x| x & bit == 0 && select(*x)) {
            let y = x | bit;
            let [a0, a1] = apply_mat(m, [self.amplitudes[x], self.amplitudes[y]]);
            self.amplitudes[x] = a0;
            self.amplitudes[y] = a1;
        }
    }
}

/// Squared overlap `⟨a|b⟩² / (‖a‖²‖b‖²)`; zero if either vector vanishes.
pub fn fidelity<T: Scalar>(a: &[T], b: &[T]) -> T {
    let (na, nb) = (dot(a, a), dot(b, b));
    if na <= T::zero() || nb <= T::zero() {
        return T::zero();
    }
    let o = dot(a, b);
    (o * o / (na * nb)).min(T::one())
}

/// Input `n` evolved through stages `1..=upto`.
pub fn gate_oracle_run<T: Scalar>(
    circuit: &Circuit<T>,
    input: usize,
    upto: usize,
) -> Result<RegisterState<T>> {
    if upto > circuit.num_stages() {
        return Err(Error::OutOfRange {
            what: "stage",
            value: upto,
            limit: circuit.num_stages() + 1,
        });
    }
    let mut state = RegisterState::basis(circuit.num_qubits, input)?;
    for stage in &circuit.stages[..upto] {
        for a in &stage.assignments {
            match a {
                Assignment::Single { qubit, gate } => state.apply(&gate.matrix(), *qubit, |_| true),
                Assignment::Controlled(g) => {
                    let c = 1 << g.control;
                    state.apply(&g.u_on_0.matrix(), g.target, |x| x & c == 0);
                    state.apply(&g.u_on_1.matrix(), g.target, |x| x & c != 0);
                }
            }
        }
    }
    Ok(state)
}

/// `w += U` moving qubit `q` from row `j-1` to row `j`, bit `b'` to `b` with
/// weight `U[b][b']`.
fn add_shift<T: Scalar>(layout: &Layout, v: &[T], w: &mut [T], q: usize, j: usize, u: &Mat2<T>) {
    let stride = layout.stride(q);
    for (x, &a) in v.iter().enumerate() {
        let d = layout.digit(x, q);
        if a == T::zero() || d / 2 != j - 1 {
            continue;
        }
        let (bp, base) = (d % 2, x - d * stride);
        for (b, row) in u.iter().enumerate() {
            w[base + (2 * j + b) * stride] += row[bp] * a;
        }
    }
}

/// `w += ` qubit `q` moved from site `(j-1, b)` to `(j, b)`.
fn add_move<T: Scalar>(layout: &Layout, v: &[T], w: &mut [T], q: usize, j: usize, b: usize) {
    let stride = layout.stride(q);
    let from = 2 * (j - 1) + b;
    for (x, &a) in v.iter().enumerate() {
        if a != T::zero() && layout.digit(x, q) == from {
            w[x + 2 * stride] += a;
        }
    }
}

/// Unnormalized recursion over arbitrary row-0 initial data.
pub fn recursion_amplitudes<T: Scalar>(
    circuit: &Circuit<T>,
    initial: &RegisterState<T>,
) -> Result<Vec<T>> {
    let layout = Layout::of(circuit)?;
    if initial.num_qubits != circuit.num_qubits {
        return Err(Error::DimensionMismatch {
            expected: circuit.num_qubits,
            got: initial.num_qubits,
        });
    }
    let mut v = vec![T::zero(); layout.dim()];
    for (config, &a) in initial.amplitudes.iter().enumerate() {
        v[layout.joint_row_index(0, config)] = a;
    }
    for (idx, stage) in circuit.stages.iter().enumerate() {
        let j = idx + 1;
        // single-gate factors commute with the controlled ones; apply them first
        for (q, gate) in stage.singles() {
            let mut w = v.clone();
            add_shift(&layout, &v, &mut w, q, j, &gate.matrix());
            v = w;
        }
        for g in stage.controlled() {
            let mut w = v.clone();
            for b in 0..2 {
                let mut inner = v.clone();
                add_shift(
                    &layout,
                    &v,
                    &mut inner,
                    g.target,
                    j,
                    &g.gate_for(b).matrix(),
                );
                add_move(&layout, &inner, &mut w, g.control, j, b);
            }
            v = w;
        }
    }
    Ok(v)
}

/// Zero-energy state of the literal Hamiltonian for input `n`, normalized.
pub fn recursion_state<T: Scalar>(circuit: &Circuit<T>, input: usize) -> Result<StateVector<T>> {
    let init = RegisterState::basis(circuit.num_qubits, input)?;
    StateVector::from_amplitudes(Layout::of(circuit)?, recursion_amplitudes(circuit, &init)?)?
        .normalized()
}

/// [`recursion_state`] with the stranded row configurations removed; the
/// zero-energy state of the confined Hamiltonian.
pub fn confined_recursion_state<T: Scalar>(
    circuit: &Circuit<T>,
    input: usize,
) -> Result<StateVector<T>> {
    let layout = Layout::of(circuit)?;
    let reach = RowReachability::of(circuit);
    let init = RegisterState::basis(circuit.num_qubits, input)?;
    let mut v = recursion_amplitudes(circuit, &init)?;
    for (x, a) in v.iter_mut().enumerate() {
        if !reach.is_reachable_basis(x) {
            *a = T::zero();
        }
    }
    StateVector::from_amplitudes(layout, v)?.normalized()
}

/// Fidelity of the row-`j` projection of `state` with the gate oracle after
/// `j` stages, for `j = 0..=N`.
pub fn stage_fidelities<T: Scalar>(
    circuit: &Circuit<T>,
    input: usize,
    state: &StateVector<T>,
) -> Result<Vec<T>> {
    (0..=circuit.num_stages())
        .map(|j| {
            let expected = gate_oracle_run(circuit, input, j)?;
            Ok(fidelity(&project_row(state, j)?, expected.amplitudes()))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct IdentityCheck<T> {
    pub fidelity: T,
    /// Gate-oracle output after all stages.
    pub expected: RegisterState<T>,
    /// Row-N projection of the recursion state, normalized, sign aligned
    /// with `expected`.
    pub projected: Vec<T>,
}

/// Compare the recursion state's row-N projection with the gate oracle.
pub fn final_state_identity_check<T: Scalar>(
    circuit: &Circuit<T>,
    input: usize,
) -> Result<IdentityCheck<T>> {
    let n = circuit.num_stages();
    let expected = gate_oracle_run(circuit, input, n)?;
    let mut projected = project_row(&recursion_state(circuit, input)?, n)?;
    let scale = norm(&projected);
    if scale > T::zero() {
        let sign = if dot(&projected, expected.amplitudes()) < T::zero() {
            -T::one()
        } else {
            T::one()
        };
        projected.iter_mut().for_each(|a| *a = *a * sign / scale);
    }
    Ok(IdentityCheck {
        fidelity: fidelity(&projected, expected.amplitudes()),
        expected,
        projected,
    })
}
