//! Hamiltonian assembly.
//!
//! Every term is a product of one-particle operators acting on the site
//! spaces of one or two qubits, identity elsewhere. The single-gate block on
//! rows `j-1, j` is
//!
//! ```text
//! h^j(U) = ε [ n(j-1) + n(j) − Σ_{b,b'} U[b][b'] (c†_{j,b} c_{j-1,b'} + h.c.) ]
//! ```
//!
//! and a controlled gate `(A, B, u0, u1)` contributes
//! `ε n_A(j-1) n_B(j) + h_A^j(I) n_B(j-1) + n_{A,j,0} h_B^j(u0) + n_{A,j,1} h_B^j(u1)`.

mod reach;

use crate::circuit::{Circuit, ControlledGate, Mat2, SingleGate};
use crate::error::{Error, Result};
use crate::hilbert::{site, Layout};
use crate::scalar::Scalar;
use crate::sparse::{CooBuilder, SparseSymMatrix};

pub use reach::RowReachability;

/// Entries with `|value| < DROP_TOL · ε` are removed at finalization.
pub const DROP_TOL: f64 = 1e-15;

/// Default input bias in units of ε.
pub const DEFAULT_BIAS: f64 = 0.1;

/// Symmetric operator on one qubit's `2(N+1)` sites, stored by column.
#[derive(Clone, Debug)]
pub struct LocalOp<T> {
    columns: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> LocalOp<T> {
    pub fn zeros(sites: usize) -> Self {
        LocalOp {
            columns: vec![Vec::new(); sites],
        }
    }

    /// Add `value` at `(to, from)`; callers add the mirror themselves.
    fn add(&mut self, to: usize, from: usize, value: T) {
        let col = &mut self.columns[from];
        match col.iter_mut().find(|(r, _)| *r == to) {
            Some(e) => e.1 += value,
            None => col.push((to, value)),
        }
    }

    fn add_sym(&mut self, a: usize, b: usize, value: T) {
        self.add(a, b, value);
        if a != b {
            self.add(b, a, value);
        }
    }

    pub fn entry(&self, to: usize, from: usize) -> T {
        self.columns[from]
            .iter()
            .find(|(r, _)| *r == to)
            .map_or(T::zero(), |e| e.1)
    }

    /// Number operator on both bits of `row`.
    pub fn row_number(sites: usize, row: usize) -> Self {
        let mut op = LocalOp::zeros(sites);
        op.add(site(row, 0), site(row, 0), T::one());
        op.add(site(row, 1), site(row, 1), T::one());
        op
    }

    /// Number operator on one site.
    pub fn site_number(sites: usize, row: usize, bit: usize) -> Self {
        let mut op = LocalOp::zeros(sites);
        op.add(site(row, bit), site(row, bit), T::one());
        op
    }

    /// `h^j(U)` without the ε prefactor.
    pub fn gate_block(sites: usize, stage: usize, u: &Mat2<T>) -> Self {
        let mut op = LocalOp::zeros(sites);
        for b in 0..2 {
            op.add(site(stage - 1, b), site(stage - 1, b), T::one());
            op.add(site(stage, b), site(stage, b), T::one());
        }
        for (b, row) in u.iter().enumerate() {
            for (bp, &v) in row.iter().enumerate() {
                if v != T::zero() {
                    op.add_sym(site(stage, b), site(stage - 1, bp), -v);
                }
            }
        }
        op
    }
}

/// Add `scale · ⊗_q factors[q]` (identity on the other qubits) to `builder`.
fn add_product_term<T: Scalar>(
    builder: &mut CooBuilder<T>,
    layout: &Layout,
    factors: &[(usize, &LocalOp<T>)],
    scale: T,
) {
    let strides: Vec<usize> = factors.iter().map(|(q, _)| layout.stride(*q)).collect();
    let mut stack: Vec<(usize, T)> = Vec::with_capacity(16);
    for x in 0..layout.dim() {
        stack.clear();
        stack.push((x, scale));
        for ((q, op), &stride) in factors.iter().zip(&strides) {
            let s = layout.digit(x, *q);
            let col = &op.columns[s];
            if col.is_empty() {
                stack.clear();
                break;
            }
            let n = stack.len();
            for k in 0..n {
                let (y, v) = stack[k];
                for &(to, w) in col {
                    stack.push((y + to * stride - s * stride, v * w));
                }
            }
            stack.drain(..n);
        }
        for &(y, v) in &stack {
            // each unordered pair is visited from both ends
            if y >= x {
                builder.push(x, y, v);
            }
        }
    }
}

fn check_stage(layout: &Layout, stage: usize) -> Result<()> {
    if stage == 0 || stage > layout.num_stages() {
        return Err(Error::OutOfRange {
            what: "stage",
            value: stage,
            limit: layout.num_stages() + 1,
        });
    }
    Ok(())
}

fn check_qubit(layout: &Layout, qubit: usize) -> Result<()> {
    if qubit >= layout.num_qubits() {
        return Err(Error::OutOfRange {
            what: "qubit",
            value: qubit,
            limit: layout.num_qubits(),
        });
    }
    Ok(())
}

pub fn add_single_gate_block<T: Scalar>(
    builder: &mut CooBuilder<T>,
    layout: &Layout,
    qubit: usize,
    stage: usize,
    gate: &SingleGate<T>,
    epsilon: T,
) -> Result<()> {
    check_stage(layout, stage)?;
    check_qubit(layout, qubit)?;
    let op = LocalOp::gate_block(layout.sites_per_qubit(), stage, &gate.matrix());
    add_product_term(builder, layout, &[(qubit, &op)], epsilon);
    Ok(())
}

pub fn add_controlled_gate_block<T: Scalar>(
    builder: &mut CooBuilder<T>,
    layout: &Layout,
    gate: &ControlledGate<T>,
    stage: usize,
    epsilon: T,
) -> Result<()> {
    check_stage(layout, stage)?;
    let (a, b) = (gate.control, gate.target);
    check_qubit(layout, a)?;
    check_qubit(layout, b)?;
    if a == b {
        return Err(Error::InvalidArgument(format!(
            "controlled gate at stage {stage}: control = target = {a}"
        )));
    }
    let sites = layout.sites_per_qubit();
    let n_row = |r| LocalOp::row_number(sites, r);
    let identity = SingleGate::<T>::Identity.matrix();

    // control waits on row j-1 while the target is already on row j
    add_product_term(
        builder,
        layout,
        &[(a, &n_row(stage - 1)), (b, &n_row(stage))],
        epsilon,
    );
    // control passes with the identity while the target sits on row j-1
    let h_id = LocalOp::gate_block(sites, stage, &identity);
    add_product_term(
        builder,
        layout,
        &[(a, &h_id), (b, &n_row(stage - 1))],
        epsilon,
    );
    // target follows with u_on_b once the control reads b on row j
    for (bit, u) in [(0, &gate.u_on_0), (1, &gate.u_on_1)] {
        let n_ctrl = LocalOp::site_number(sites, stage, bit);
        let h_u = LocalOp::gate_block(sites, stage, &u.matrix());
        add_product_term(builder, layout, &[(a, &n_ctrl), (b, &h_u)], epsilon);
    }
    Ok(())
}

fn drop_tol<T: Scalar>(epsilon: T) -> T {
    T::lit(DROP_TOL) * epsilon
}

/// `h^j(U)` on one qubit as a standalone matrix over the full product space.
pub fn single_gate_block<T: Scalar>(
    layout: &Layout,
    qubit: usize,
    stage: usize,
    gate: &SingleGate<T>,
    epsilon: T,
) -> Result<SparseSymMatrix<T>> {
    let mut b = CooBuilder::new(layout.dim());
    add_single_gate_block(&mut b, layout, qubit, stage, gate, epsilon)?;
    Ok(b.finalize(drop_tol(epsilon)))
}

/// The four controlled-gate terms as a standalone matrix.
pub fn controlled_gate_block<T: Scalar>(
    layout: &Layout,
    gate: &ControlledGate<T>,
    stage: usize,
    epsilon: T,
) -> Result<SparseSymMatrix<T>> {
    let mut b = CooBuilder::new(layout.dim());
    add_controlled_gate_block(&mut b, layout, gate, stage, epsilon)?;
    Ok(b.finalize(drop_tol(epsilon)))
}

/// Input selection: each qubit's row-0 site holding the wrong bit is raised
/// by `delta`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiasSpec<T> {
    pub input_bits: Vec<usize>,
    pub delta: T,
}

impl<T: Scalar> BiasSpec<T> {
    /// Bits of `input` (qubit 0 least significant).
    pub fn new(num_qubits: usize, input: usize, delta: T) -> Result<Self> {
        if num_qubits < usize::BITS as usize && input >> num_qubits != 0 {
            return Err(Error::OutOfRange {
                what: "input",
                value: input,
                limit: 1 << num_qubits,
            });
        }
        let spec = BiasSpec {
            input_bits: (0..num_qubits).map(|q| (input >> q) & 1).collect(),
            delta,
        };
        spec.check(num_qubits)?;
        Ok(spec)
    }

    pub fn input(&self) -> usize {
        self.input_bits
            .iter()
            .enumerate()
            .map(|(q, &b)| b << q)
            .sum()
    }

    fn check(&self, num_qubits: usize) -> Result<()> {
        if !self.delta.is_finite() || self.delta <= T::zero() {
            return Err(Error::InvalidArgument(format!(
                "bias delta must be positive, got {}",
                self.delta
            )));
        }
        if self.input_bits.len() != num_qubits {
            return Err(Error::DimensionMismatch {
                expected: num_qubits,
                got: self.input_bits.len(),
            });
        }
        if let Some(b) = self.input_bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidArgument(format!(
                "input bit {b} is not 0 or 1"
            )));
        }
        Ok(())
    }
}

/// Which Hamiltonian to build.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum HamiltonianForm {
    /// Gate blocks only.
    Literal,
    /// Gate blocks plus ε on every stranded row configuration (see
    /// [`RowReachability`]). Without it a circuit where the same qubits meet
    /// in more than one controlled stage has zero modes beyond the `2^M`
    /// input states.
    #[default]
    Confined,
}

/// `ε · Σ` over basis states whose row configuration is stranded.
pub fn add_confinement<T: Scalar>(
    builder: &mut CooBuilder<T>,
    layout: &Layout,
    reach: &RowReachability,
    epsilon: T,
) {
    for x in 0..layout.dim() {
        if !reach.is_reachable_basis(x) {
            builder.push(x, x, epsilon);
        }
    }
}

pub fn add_bias<T: Scalar>(
    builder: &mut CooBuilder<T>,
    layout: &Layout,
    bias: &BiasSpec<T>,
) -> Result<()> {
    bias.check(layout.num_qubits())?;
    let sites = layout.sites_per_qubit();
    for (q, &bit) in bias.input_bits.iter().enumerate() {
        let op = LocalOp::site_number(sites, 0, 1 - bit);
        add_product_term(builder, layout, &[(q, &op)], bias.delta);
    }
    Ok(())
}

/// Sum of all stage blocks (stages ascending; single gates by qubit, then
/// controlled gates by control), then confinement, then bias.
pub fn assemble_with<T: Scalar>(
    circuit: &Circuit<T>,
    form: HamiltonianForm,
    bias: Option<&BiasSpec<T>>,
) -> Result<SparseSymMatrix<T>> {
    circuit.validate().map_err(Error::Validation)?;
    let layout = Layout::of(circuit)?;
    let eps = circuit.epsilon;
    let mut b = CooBuilder::new(layout.dim());
    for (idx, stage) in circuit.stages.iter().enumerate() {
        let j = idx + 1;
        let mut singles: Vec<_> = stage.singles().collect();
        singles.sort_by_key(|(q, _)| *q);
        for (q, gate) in singles {
            add_single_gate_block(&mut b, &layout, q, j, gate, eps)?;
        }
        let mut controlled: Vec<_> = stage.controlled().collect();
        controlled.sort_by_key(|g| g.control);
        for g in controlled {
            add_controlled_gate_block(&mut b, &layout, g, j, eps)?;
        }
    }
    if form == HamiltonianForm::Confined {
        add_confinement(&mut b, &layout, &RowReachability::of(circuit), eps);
    }
    if let Some(bias) = bias {
        add_bias(&mut b, &layout, bias)?;
    }
    Ok(b.finalize(drop_tol(eps)))
}

/// [`assemble_with`] using the default (confined) form.
pub fn assemble<T: Scalar>(
    circuit: &Circuit<T>,
    bias: Option<&BiasSpec<T>>,
) -> Result<SparseSymMatrix<T>> {
    assemble_with(circuit, HamiltonianForm::default(), bias)
}
