//! Line-oriented circuit text format.
//!
//! ```text
//! qubits <M>
//! epsilon <float>            # optional, default 1.0
//! stage <assignment> [; <assignment>]...
//! ```
//!
//! Assignments are `I q`, `N q`, `R q theta`, `O q m00 m01 m10 m11`,
//! `CNOT control=a target=b on=0|1`, `CU control=a target=b u0=G u1=G` with
//! `G` one of `I`, `N`, `R:theta`, `O:m00,m01,m10,m11`. `I *` fills every
//! qubit the stage leaves unassigned with an identity.

use std::fmt::Write as _;

use super::{Assignment, Circuit, ControlledGate, SingleGate, Stage};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

struct Line {
    number: usize,
}

impl Line {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            message: message.into(),
        }
    }

    fn number<T: Scalar>(&self, token: &str) -> Result<T> {
        token
            .parse::<T>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| self.err(format!("malformed number '{token}'")))
    }

    fn index(&self, token: &str) -> Result<usize> {
        token
            .parse::<usize>()
            .map_err(|_| self.err(format!("malformed qubit index '{token}'")))
    }
}

pub fn parse_circuit<T: Scalar>(text: &str) -> Result<Circuit<T>> {
    let mut num_qubits: Option<usize> = None;
    let mut epsilon: Option<T> = None;
    let mut stages = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let line = Line { number: k + 1 };
        let (keyword, rest) = match body.split_once(char::is_whitespace) {
            Some((kw, rest)) => (kw, rest.trim()),
            None => (body, ""),
        };
        match keyword {
            "qubits" => {
                if num_qubits.is_some() {
                    return Err(line.err("duplicate 'qubits' directive"));
                }
                let args: Vec<&str> = rest.split_whitespace().collect();
                if args.len() != 1 {
                    return Err(line.err(format!("'qubits' takes 1 argument, got {}", args.len())));
                }
                num_qubits = Some(line.index(args[0])?);
            }
            "epsilon" => {
                if epsilon.is_some() {
                    return Err(line.err("duplicate 'epsilon' directive"));
                }
                let args: Vec<&str> = rest.split_whitespace().collect();
                if args.len() != 1 {
                    return Err(line.err(format!("'epsilon' takes 1 argument, got {}", args.len())));
                }
                epsilon = Some(line.number(args[0])?);
            }
            "stage" => {
                let m = num_qubits.ok_or_else(|| line.err("'stage' before 'qubits'"))?;
                stages.push(parse_stage(&line, rest, m)?);
            }
            other => return Err(line.err(format!("unknown directive '{other}'"))),
        }
    }

    let num_qubits = num_qubits.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        message: "missing 'qubits' directive".into(),
    })?;
    Ok(Circuit {
        num_qubits,
        stages,
        epsilon: epsilon.unwrap_or_else(T::one),
    })
}

fn parse_stage<T: Scalar>(line: &Line, rest: &str, num_qubits: usize) -> Result<Stage<T>> {
    if rest.is_empty() {
        return Err(line.err("empty stage"));
    }
    let mut assignments = Vec::new();
    let mut fill_identity = false;
    for part in rest.split(';') {
        let tokens: Vec<&str> = part.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(line.err("empty assignment"));
        }
        let arity = |n: usize| -> Result<()> {
            if tokens.len() == n + 1 {
                Ok(())
            } else {
                Err(line.err(format!(
                    "'{}' takes {} argument(s), got {}",
                    tokens[0],
                    n,
                    tokens.len() - 1
                )))
            }
        };
        let single = |gate| -> Result<Assignment<T>> {
            Ok(Assignment::Single {
                qubit: line.index(tokens[1])?,
                gate,
            })
        };
        let assignment = match tokens[0] {
            "I" => {
                arity(1)?;
                if tokens[1] == "*" {
                    fill_identity = true;
                    continue;
                }
                single(SingleGate::Identity)?
            }
            "N" => {
                arity(1)?;
                single(SingleGate::Not)?
            }
            "R" => {
                arity(2)?;
                single(SingleGate::Rotation(line.number(tokens[2])?))?
            }
            "O" => {
                arity(5)?;
                let m: Vec<T> = tokens[2..]
                    .iter()
                    .map(|t| line.number(t))
                    .collect::<Result<_>>()?;
                single(SingleGate::Orthogonal([[m[0], m[1]], [m[2], m[3]]]))?
            }
            "CNOT" => {
                arity(3)?;
                let kv = KeyValues::parse(line, &tokens[1..], &["control", "target", "on"])?;
                let control = line.index(kv.get("control"))?;
                let target = line.index(kv.get("target"))?;
                let gate = match kv.get("on") {
                    "1" => ControlledGate::cnot(control, target),
                    "0" => ControlledGate::zero_controlled_not(control, target),
                    other => return Err(line.err(format!("'on' must be 0 or 1, got '{other}'"))),
                };
                Assignment::Controlled(gate)
            }
            "CU" => {
                arity(4)?;
                let kv = KeyValues::parse(line, &tokens[1..], &["control", "target", "u0", "u1"])?;
                Assignment::Controlled(ControlledGate {
                    control: line.index(kv.get("control"))?,
                    target: line.index(kv.get("target"))?,
                    u_on_0: parse_gatespec(line, kv.get("u0"))?,
                    u_on_1: parse_gatespec(line, kv.get("u1"))?,
                })
            }
            other => return Err(line.err(format!("unknown gate mnemonic '{other}'"))),
        };
        assignments.push(assignment);
    }

    if fill_identity {
        let mut covered = vec![false; num_qubits];
        for q in assignments.iter().flat_map(|a| a.qubits()) {
            if q < num_qubits {
                covered[q] = true;
            }
        }
        for (qubit, _) in covered.iter().enumerate().filter(|(_, c)| !**c) {
            assignments.push(Assignment::Single {
                qubit,
                gate: SingleGate::Identity,
            });
        }
    }
    Ok(Stage { assignments })
}

struct KeyValues<'a> {
    keys: &'static [&'static str],
    values: Vec<&'a str>,
}

impl<'a> KeyValues<'a> {
    fn parse(line: &Line, tokens: &[&'a str], keys: &'static [&'static str]) -> Result<Self> {
        let mut values: Vec<Option<&'a str>> = vec![None; keys.len()];
        for tok in tokens {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| line.err(format!("expected key=value, got '{tok}'")))?;
            let slot = keys
                .iter()
                .position(|key| *key == k)
                .ok_or_else(|| line.err(format!("unknown key '{k}'")))?;
            if values[slot].replace(v).is_some() {
                return Err(line.err(format!("duplicate key '{k}'")));
            }
        }
        let values = values
            .into_iter()
            .zip(keys)
            .map(|(v, k)| v.ok_or_else(|| line.err(format!("missing key '{k}'"))))
            .collect::<Result<_>>()?;
        Ok(KeyValues { keys, values })
    }

    fn get(&self, key: &str) -> &'a str {
        let k = self
            .keys
            .iter()
            .position(|k| *k == key)
            .expect("declared key");
        self.values[k]
    }
}

fn parse_gatespec<T: Scalar>(line: &Line, spec: &str) -> Result<SingleGate<T>> {
    match spec.split_once(':') {
        None => match spec {
            "I" => Ok(SingleGate::Identity),
            "N" => Ok(SingleGate::Not),
            "R" | "O" => Err(line.err(format!("gate spec '{spec}' needs parameters"))),
            other => Err(line.err(format!("unknown gate mnemonic '{other}'"))),
        },
        Some(("R", theta)) => Ok(SingleGate::Rotation(line.number(theta)?)),
        Some(("O", entries)) => {
            let m: Vec<T> = entries
                .split(',')
                .map(|t| line.number(t))
                .collect::<Result<_>>()?;
            if m.len() != 4 {
                return Err(line.err(format!("'O' takes 4 entries, got {}", m.len())));
            }
            Ok(SingleGate::Orthogonal([[m[0], m[1]], [m[2], m[3]]]))
        }
        Some((other, _)) => Err(line.err(format!("unknown gate mnemonic '{other}'"))),
    }
}

/// Render a circuit in the text format. Numbers use the shortest
/// representation that parses back to the same value.
pub fn serialize_circuit<T: Scalar>(circuit: &Circuit<T>) -> String {
    let mut out = String::new();
    writeln!(out, "qubits {}", circuit.num_qubits).unwrap();
    writeln!(out, "epsilon {}", circuit.epsilon).unwrap();
    for stage in &circuit.stages {
        let parts: Vec<String> = stage.assignments.iter().map(assignment_text).collect();
        writeln!(out, "stage {}", parts.join(" ; ")).unwrap();
    }
    out
}

fn assignment_text<T: Scalar>(a: &Assignment<T>) -> String {
    match a {
        Assignment::Single { qubit, gate } => match gate {
            SingleGate::Identity => format!("I {qubit}"),
            SingleGate::Not => format!("N {qubit}"),
            SingleGate::Rotation(t) => format!("R {qubit} {t}"),
            SingleGate::Orthogonal(m) => {
                format!("O {qubit} {} {} {} {}", m[0][0], m[0][1], m[1][0], m[1][1])
            }
        },
        Assignment::Controlled(c) => match (&c.u_on_0, &c.u_on_1) {
            (SingleGate::Identity, SingleGate::Not) => {
                format!("CNOT control={} target={} on=1", c.control, c.target)
            }
            (SingleGate::Not, SingleGate::Identity) => {
                format!("CNOT control={} target={} on=0", c.control, c.target)
            }
            (u0, u1) => format!(
                "CU control={} target={} u0={} u1={}",
                c.control,
                c.target,
                gatespec(u0),
                gatespec(u1)
            ),
        },
    }
}

fn gatespec<T: Scalar>(g: &SingleGate<T>) -> String {
    match g {
        SingleGate::Identity => "I".into(),
        SingleGate::Not => "N".into(),
        SingleGate::Rotation(t) => format!("R:{t}"),
        SingleGate::Orthogonal(m) => format!("O:{},{},{},{}", m[0][0], m[0][1], m[1][0], m[1][1]),
    }
}
