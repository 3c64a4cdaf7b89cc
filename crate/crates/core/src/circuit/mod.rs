//! Circuit intermediate representation.
//!
//! A circuit acts on `M` qubits through `N` stages. Stage `j` (1-based) moves
//! every qubit from row `j-1` to row `j` of its dot chain, so a circuit with
//! `N` stages needs `N+1` rows per qubit. Only real orthogonal gates are
//! representable.

mod format;
pub mod random;

use std::fmt;

use crate::scalar::Scalar;

pub use format::{parse_circuit, serialize_circuit};

/// A real 2×2 matrix, row-major: `m[row][col]`.
pub type Mat2<T> = [[T; 2]; 2];

/// Single-qubit orthogonal gate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SingleGate<T> {
    Identity,
    Not,
    /// `[[cos θ, sin θ], [−sin θ, cos θ]]`, angle in radians.
    Rotation(T),
    /// Arbitrary real matrix, expected orthogonal.
    Orthogonal(Mat2<T>),
}

impl<T: Scalar> SingleGate<T> {
    pub fn matrix(&self) -> Mat2<T> {
        let (zero, one) = (T::zero(), T::one());
        match *self {
            SingleGate::Identity => [[one, zero], [zero, one]],
            SingleGate::Not => [[zero, one], [one, zero]],
            SingleGate::Rotation(theta) => {
                let (s, c) = theta.sin_cos();
                [[c, s], [-s, c]]
            }
            SingleGate::Orthogonal(m) => m,
        }
    }

    /// Largest entrywise deviation of `UᵀU` from the identity.
    pub fn orthogonality_defect(&self) -> T {
        let m = self.matrix();
        let mut worst = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                let dot = m[0][i] * m[0][j] + m[1][i] * m[1][j];
                let target = if i == j { T::one() } else { T::zero() };
                worst = worst.max((dot - target).abs());
            }
        }
        if worst.is_nan() {
            T::infinity()
        } else {
            worst
        }
    }

    pub fn is_orthogonal(&self) -> bool {
        self.orthogonality_defect() <= T::lit(T::ORTHO_TOL)
    }

    pub fn determinant(&self) -> T {
        let m = self.matrix();
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// Apply to a column `(amp0, amp1)`.
    pub fn apply(&self, amp: [T; 2]) -> [T; 2] {
        apply_mat(&self.matrix(), amp)
    }
}

pub(crate) fn apply_mat<T: Scalar>(m: &Mat2<T>, amp: [T; 2]) -> [T; 2] {
    [
        m[0][0] * amp[0] + m[0][1] * amp[1],
        m[1][0] * amp[0] + m[1][1] * amp[1],
    ]
}

/// Gate on `target` selected by the value of `control`: `u_on_0` when the
/// control bit is 0, `u_on_1` when it is 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ControlledGate<T> {
    pub control: usize,
    pub target: usize,
    pub u_on_0: SingleGate<T>,
    pub u_on_1: SingleGate<T>,
}

impl<T> ControlledGate<T> {
    /// NOT on `target` when `control` reads 1.
    pub fn cnot(control: usize, target: usize) -> Self {
        ControlledGate {
            control,
            target,
            u_on_0: SingleGate::Identity,
            u_on_1: SingleGate::Not,
        }
    }

    /// NOT on `target` when `control` reads 0.
    pub fn zero_controlled_not(control: usize, target: usize) -> Self {
        ControlledGate {
            control,
            target,
            u_on_0: SingleGate::Not,
            u_on_1: SingleGate::Identity,
        }
    }

    pub fn gate_for(&self, control_bit: usize) -> &SingleGate<T> {
        if control_bit == 0 {
            &self.u_on_0
        } else {
            &self.u_on_1
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Assignment<T> {
    Single { qubit: usize, gate: SingleGate<T> },
    Controlled(ControlledGate<T>),
}

impl<T> Assignment<T> {
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Assignment::Single { qubit, .. } => vec![*qubit],
            Assignment::Controlled(c) => vec![c.control, c.target],
        }
    }
}

/// One layer of gates; every qubit must be covered by exactly one assignment.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Stage<T> {
    pub assignments: Vec<Assignment<T>>,
}

impl<T: Copy> Stage<T> {
    pub fn new(assignments: Vec<Assignment<T>>) -> Self {
        Stage { assignments }
    }

    /// Same gate on every qubit.
    pub fn uniform(num_qubits: usize, gate: SingleGate<T>) -> Self {
        Stage::from_singles((0..num_qubits).map(|_| gate))
    }

    /// Gate `k` on qubit `k`.
    pub fn from_singles(gates: impl IntoIterator<Item = SingleGate<T>>) -> Self {
        Stage {
            assignments: gates
                .into_iter()
                .enumerate()
                .map(|(qubit, gate)| Assignment::Single { qubit, gate })
                .collect(),
        }
    }

    pub fn singles(&self) -> impl Iterator<Item = (usize, &SingleGate<T>)> {
        self.assignments.iter().filter_map(|a| match a {
            Assignment::Single { qubit, gate } => Some((*qubit, gate)),
            Assignment::Controlled(_) => None,
        })
    }

    pub fn controlled(&self) -> impl Iterator<Item = &ControlledGate<T>> {
        self.assignments.iter().filter_map(|a| match a {
            Assignment::Controlled(c) => Some(c),
            Assignment::Single { .. } => None,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit<T> {
    pub num_qubits: usize,
    pub stages: Vec<Stage<T>>,
    pub epsilon: T,
}

impl<T: Scalar> Circuit<T> {
    pub fn new(num_qubits: usize, stages: Vec<Stage<T>>) -> Self {
        Circuit {
            num_qubits,
            stages,
            epsilon: T::one(),
        }
    }

    pub fn with_epsilon(mut self, epsilon: T) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn num_stages(&self) -> usize {
        self.stages.len()
    }

    pub fn num_rows(&self) -> usize {
        self.stages.len() + 1
    }

    /// Stage `j` in 1-based row numbering: the stage that fills row `j`.
    pub fn stage(&self, j: usize) -> &Stage<T> {
        &self.stages[j - 1]
    }

    pub fn validate(&self) -> Result<(), ValidationReport> {
        validate(self)
    }
}

/// Where a violation was found. `stage` is 1-based (the row it fills).
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub stage: Option<usize>,
    pub qubit: Option<usize>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.stage {
            write!(f, "stage {s}: ")?;
        }
        if let Some(q) = self.qubit {
            write!(f, "qubit {q}: ")?;
        }
        f.write_str(&self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, stage: Option<usize>, qubit: Option<usize>, message: impl Into<String>) {
        self.violations.push(Violation {
            stage,
            qubit,
            message: message.into(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

/// Check every structural invariant and collect all violations.
pub fn validate<T: Scalar>(circuit: &Circuit<T>) -> Result<(), ValidationReport> {
    let mut report = ValidationReport::default();
    let m = circuit.num_qubits;
    if m == 0 {
        report.push(None, None, "circuit needs at least one qubit");
    }
    if !circuit.epsilon.is_finite() || circuit.epsilon <= T::zero() {
        report.push(
            None,
            None,
            format!("epsilon must be positive, got {}", circuit.epsilon),
        );
    }

    let check_gate =
        |report: &mut ValidationReport, stage, qubit, gate: &SingleGate<T>, what: &str| {
            if !gate.is_orthogonal() {
                report.push(
                    Some(stage),
                    Some(qubit),
                    format!(
                        "{what}not orthogonal (max |UᵀU - I| = {:e})",
                        gate.orthogonality_defect()
                    ),
                );
            }
        };

    for (idx, stage) in circuit.stages.iter().enumerate() {
        let j = idx + 1;
        let mut cover = vec![0usize; m];
        let mut mark = |report: &mut ValidationReport, q: usize| {
            if q >= m {
                report.push(
                    Some(j),
                    Some(q),
                    format!("qubit index out of range (M = {m})"),
                );
            } else {
                cover[q] += 1;
            }
        };
        for a in &stage.assignments {
            match a {
                Assignment::Single { qubit, gate } => {
                    mark(&mut report, *qubit);
                    check_gate(&mut report, j, *qubit, gate, "");
                }
                Assignment::Controlled(c) => {
                    if c.control == c.target {
                        report.push(Some(j), Some(c.control), "control = target");
                        mark(&mut report, c.control);
                    } else {
                        mark(&mut report, c.control);
                        mark(&mut report, c.target);
                    }
                    check_gate(&mut report, j, c.target, &c.u_on_0, "u0 ");
                    check_gate(&mut report, j, c.target, &c.u_on_1, "u1 ");
                }
            }
        }
        for (q, &n) in cover.iter().enumerate() {
            match n {
                0 => report.push(Some(j), None, format!("qubit {q} unassigned")),
                1 => {}
                _ => report.push(Some(j), None, format!("qubit {q} assigned {n} times")),
            }
        }
    }

    if report.is_empty() {
        Ok(())
    } else {
        Err(report)
    }
}

/// The two-qubit Grover search laid out as W, C, W, P, W over 12 stages.
///
/// W is a π/4 rotation stage then a NOT stage on both qubits. C rotates
/// qubit 1 by π/4, applies NOT to qubit 1 when qubit 0 reads 1, then rotates
/// back by −π/4. P is the mirror image with the NOT firing when qubit 0
/// reads 0. Qubit 0 idles with explicit identities during C and P.
pub fn build_grover_circuit<T: Scalar>() -> Circuit<T> {
    let quarter = T::lit(std::f64::consts::FRAC_PI_4);
    let rot = |t: T| SingleGate::Rotation(t);
    let w = || {
        vec![
            Stage::uniform(2, rot(quarter)),
            Stage::uniform(2, SingleGate::Not),
        ]
    };
    let conditional = |pre: T, gate: ControlledGate<T>, post: T| {
        vec![
            Stage::from_singles([SingleGate::Identity, rot(pre)]),
            Stage::new(vec![Assignment::Controlled(gate)]),
            Stage::from_singles([SingleGate::Identity, rot(post)]),
        ]
    };
    let c = conditional(quarter, ControlledGate::cnot(0, 1), -quarter);
    let p = conditional(-quarter, ControlledGate::zero_controlled_not(0, 1), quarter);

    let stages = [w(), c, w(), p, w()].concat();
    Circuit::new(2, stages)
}
