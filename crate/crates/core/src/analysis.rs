//! Readout and end-to-end verification reports.

use std::fmt::{self, Write as _};

use crate::circuit::Circuit;
use crate::eigen::{ground_space, GroundSpaceOptions, SolverChoice};
use crate::error::{Error, Result};
use crate::hamiltonian::{assemble_with, BiasSpec, HamiltonianForm, DEFAULT_BIAS};
use crate::hilbert::{norm, project_row, Layout, StateVector};
use crate::oracle::{
    confined_recursion_state, gate_oracle_run, recursion_state, stage_fidelities, RegisterState,
};
use crate::scalar::Scalar;

/// `config` as an `M`-character bit string, qubit 0 last.
pub fn format_bits(config: usize, num_qubits: usize) -> String {
    (0..num_qubits)
        .rev()
        .map(|q| if (config >> q) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Plain decimal for moderate magnitudes, exponent form otherwise.
pub fn format_num<T: Scalar>(x: T) -> String {
    let a = x.abs();
    if a == T::zero() || (a >= T::lit(1e-4) && a < T::lit(1e6)) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Inverse of [`format_bits`]; the string must have exactly `M` characters.
pub fn parse_bits(s: &str, num_qubits: usize) -> Result<usize> {
    if s.len() != num_qubits || !s.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(Error::InvalidArgument(format!(
            "input '{s}' is not a {num_qubits}-bit string"
        )));
    }
    Ok(s.bytes()
        .fold(0, |acc, b| (acc << 1) | usize::from(b == b'1')))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReadoutReport<T> {
    /// Probability that every qubit sits on row `j`, for `j = 0..=N`.
    pub row_occupancy: Vec<T>,
    /// Distribution over bit configurations given all qubits on row `N`;
    /// `None` when that event has probability zero.
    pub conditional_output: Option<Vec<T>>,
    pub top_outcome: Option<(usize, T)>,
}

pub fn readout<T: Scalar>(state: &StateVector<T>) -> Result<ReadoutReport<T>> {
    let total = state.norm_sqr();
    if total.is_nan() || total <= T::zero() {
        return Err(Error::ZeroState);
    }
    let n = state.layout().num_stages();
    let row_occupancy = (0..=n)
        .map(|j| Ok(project_row(state, j)?.iter().map(|a| *a * *a).sum::<T>() / total))
        .collect::<Result<Vec<T>>>()?;
    let last = project_row(state, n)?;
    let weight: T = last.iter().map(|a| *a * *a).sum();
    let conditional_output: Option<Vec<T>> =
        (weight > T::zero()).then(|| last.iter().map(|a| *a * *a / weight).collect());
    let top_outcome = conditional_output.as_ref().map(|p| {
        p.iter()
            .copied()
            .enumerate()
            .fold((0, T::neg_infinity()), |best, (i, x)| {
                if x > best.1 {
                    (i, x)
                } else {
                    best
                }
            })
    });
    Ok(ReadoutReport {
        row_occupancy,
        conditional_output,
        top_outcome,
    })
}

/// Half the L1 distance; `None` if either side is missing.
pub fn total_variation<T: Scalar>(a: &ReadoutReport<T>, b: &ReadoutReport<T>) -> Option<T> {
    let (p, q) = (
        a.conditional_output.as_ref()?,
        b.conditional_output.as_ref()?,
    );
    Some(p.iter().zip(q).map(|(x, y)| (*x - *y).abs()).sum::<T>() / T::lit(2.0))
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Bias in units of ε.
    pub delta: f64,
    pub form: HamiltonianForm,
    pub ground: GroundSpaceOptions,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            delta: DEFAULT_BIAS,
            form: HamiltonianForm::default(),
            ground: GroundSpaceOptions::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport<T> {
    pub num_qubits: usize,
    pub input: usize,
    pub dim: usize,
    pub solver: SolverChoice,
    pub ground_energy: T,
    pub degeneracy: usize,
    pub gap: Option<T>,
    /// Against the gate oracle, `j = 0..=N`.
    pub per_stage_fidelity: Vec<T>,
    /// `‖Hψ‖` for the normalized recursion state.
    pub hamiltonian_residual: T,
    pub readout: ReadoutReport<T>,
    /// Gate-oracle output after the last stage.
    pub oracle_output: RegisterState<T>,
    /// Total variation between the ground-state and recursion-state readouts.
    pub readout_distance: Option<T>,
}

/// Biased assembly, unique ground state, and every cross-check against the
/// oracles.
pub fn verify<T: Scalar>(
    circuit: &Circuit<T>,
    input: usize,
    opts: &VerifyOptions,
) -> Result<VerificationReport<T>> {
    circuit.validate().map_err(Error::Validation)?;
    let m = circuit.num_qubits;
    let eps = circuit.epsilon;
    let bias = BiasSpec::new(m, input, T::lit(opts.delta) * eps)?;
    let h = assemble_with(circuit, opts.form, Some(&bias))?;
    let layout = Layout::of(circuit)?;

    let mut gopts = opts.ground.clone();
    gopts.expected_degeneracy = Some(1);
    gopts.energy_scale = eps.to_f64().unwrap_or(1.0);
    let gs = ground_space(&h, &gopts)?;
    let ground = gs.ground_state(layout)?;

    let recursion = match opts.form {
        HamiltonianForm::Literal => recursion_state(circuit, input)?,
        HamiltonianForm::Confined => confined_recursion_state(circuit, input)?,
    };
    let hamiltonian_residual = norm(&h.matvec(recursion.amplitudes())?);
    let readout_report = readout(&ground)?;
    let readout_distance = total_variation(&readout_report, &readout(&recursion)?);

    Ok(VerificationReport {
        num_qubits: m,
        input,
        dim: h.dim(),
        solver: gs.solver,
        ground_energy: gs.ground_energy(),
        degeneracy: gs.degeneracy,
        gap: gs.gap,
        per_stage_fidelity: stage_fidelities(circuit, input, &ground)?,
        hamiltonian_residual,
        readout: readout_report,
        oracle_output: gate_oracle_run(circuit, input, circuit.num_stages())?,
        readout_distance,
    })
}

impl<T: Scalar> VerificationReport<T> {
    pub fn min_fidelity(&self) -> T {
        self.per_stage_fidelity
            .iter()
            .copied()
            .fold(T::one(), T::min)
    }

    /// Summary metrics, one `key=value` per line.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let bits = |c| format_bits(c, self.num_qubits);
        let _ = writeln!(s, "input={}", bits(self.input));
        let _ = writeln!(s, "dim={}", self.dim);
        let _ = writeln!(s, "solver={}", self.solver);
        let _ = writeln!(s, "ground_energy={}", format_num(self.ground_energy));
        let _ = writeln!(s, "degeneracy={}", self.degeneracy);
        match self.gap {
            Some(g) => writeln!(s, "gap={}", format_num(g)),
            None => writeln!(s, "gap=none"),
        }
        .ok();
        let _ = writeln!(s, "min_stage_fidelity={}", format_num(self.min_fidelity()));
        let _ = writeln!(
            s,
            "hamiltonian_residual={}",
            format_num(self.hamiltonian_residual)
        );
        let (k, _) = self.oracle_output.argmax();
        let _ = writeln!(s, "oracle_output={}", bits(k));
        if let Some(d) = self.readout_distance {
            let _ = writeln!(s, "readout_distance={}", format_num(d));
        }
        s.push_str(&self.readout.metrics(self.num_qubits));
        s
    }

    /// Per-stage fidelity table followed by the summary.
    pub fn table(&self) -> String {
        let mut s = String::from("# stage  fidelity\n");
        for (j, f) in self.per_stage_fidelity.iter().enumerate() {
            let _ = writeln!(s, "fidelity_{j}={}", format_num(*f));
        }
        s + &self.summary()
    }
}

impl<T: Scalar> ReadoutReport<T> {
    pub fn metrics(&self, num_qubits: usize) -> String {
        let mut s = String::new();
        for (j, p) in self.row_occupancy.iter().enumerate() {
            let _ = writeln!(s, "row_occupancy_{j}={}", format_num(*p));
        }
        if let Some(p) = &self.conditional_output {
            for (c, x) in p.iter().enumerate() {
                let _ = writeln!(s, "p_out_{}={}", format_bits(c, num_qubits), format_num(*x));
            }
        }
        if let Some((c, p)) = self.top_outcome {
            let _ = writeln!(s, "top_outcome={}", format_bits(c, num_qubits));
            let _ = writeln!(s, "top_probability={}", format_num(p));
        }
        s
    }
}

impl<T: Scalar> fmt::Display for VerificationReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary())
    }
}
