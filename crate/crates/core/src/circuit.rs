//! Gate sequences, peephole cancellation and circuit statistics.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A gate over numbered qubits.
///
/// `Rz(q, θ)` is `diag(e^{iθ}, e^{-iθ})`, i.e. `exp(iθσ_z)`.
/// `CRz` applies that rotation to `target` when `control` is set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    H(usize),
    S(usize),
    Sdg(usize),
    X(usize),
    Cx(usize, usize),
    Cz(usize, usize),
    Rz(usize, f64),
    CRz {
        control: usize,
        target: usize,
        angle: f64,
    },
}

impl Gate {
    pub fn qubits(&self) -> GateQubits {
        match *self {
            Gate::H(q) | Gate::S(q) | Gate::Sdg(q) | Gate::X(q) | Gate::Rz(q, _) => {
                GateQubits::One(q)
            }
            Gate::Cx(a, b) | Gate::Cz(a, b) => GateQubits::Two(a, b),
            Gate::CRz {
                control, target, ..
            } => GateQubits::Two(control, target),
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self.qubits(), GateQubits::Two(..))
    }

    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::S(q) => Gate::Sdg(q),
            Gate::Sdg(q) => Gate::S(q),
            Gate::Rz(q, t) => Gate::Rz(q, -t),
            Gate::CRz {
                control,
                target,
                angle,
            } => Gate::CRz {
                control,
                target,
                angle: -angle,
            },
            g => g,
        }
    }

    /// Whether `other` undoes `self` when applied immediately after it.
    pub fn cancels(&self, other: &Gate) -> bool {
        match (*self, *other) {
            (Gate::Cz(a, b), Gate::Cz(c, d)) => (a, b) == (c, d) || (a, b) == (d, c),
            _ => self.inverse() == *other,
        }
    }

    /// Applies `f` to every qubit index.
    pub fn map_qubits(&self, f: impl Fn(usize) -> usize) -> Gate {
        match *self {
            Gate::H(q) => Gate::H(f(q)),
            Gate::S(q) => Gate::S(f(q)),
            Gate::Sdg(q) => Gate::Sdg(f(q)),
            Gate::X(q) => Gate::X(f(q)),
            Gate::Rz(q, t) => Gate::Rz(f(q), t),
            Gate::Cx(a, b) => Gate::Cx(f(a), f(b)),
            Gate::Cz(a, b) => Gate::Cz(f(a), f(b)),
            Gate::CRz {
                control,
                target,
                angle,
            } => Gate::CRz {
                control: f(control),
                target: f(target),
                angle,
            },
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "h",
            Gate::S(_) => "s",
            Gate::Sdg(_) => "sdg",
            Gate::X(_) => "x",
            Gate::Cx(..) => "cx",
            Gate::Cz(..) => "cz",
            Gate::Rz(..) => "rz",
            Gate::CRz { .. } => "crz",
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::Rz(q, t) => write!(f, "RZ({q}, {t})"),
            Gate::CRz {
                control,
                target,
                angle,
            } => write!(f, "CRZ({control}, {target}, {angle})"),
            g => match g.qubits() {
                GateQubits::One(q) => write!(f, "{}({q})", g.name().to_uppercase()),
                GateQubits::Two(a, b) => write!(f, "{}({a},{b})", g.name().to_uppercase()),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateQubits {
    One(usize),
    Two(usize, usize),
}

impl GateQubits {
    pub fn as_slice(&self) -> ([usize; 2], usize) {
        match *self {
            GateQubits::One(q) => ([q, q], 1),
            GateQubits::Two(a, b) => ([a, b], 2),
        }
    }
}

/// An ordered gate list over `n_qubits` qubits.
///
/// When `uses_ancilla` is set the last qubit is the parity ancilla and is
/// assumed to start (and end) in `|0⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    pub n_qubits: usize,
    pub gates: Vec<Gate>,
    pub uses_ancilla: bool,
    pub global_phase: f64,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit {
            n_qubits,
            gates: Vec::new(),
            uses_ancilla: false,
            global_phase: 0.0,
        }
    }

    pub fn with_ancilla(n_system: usize) -> Self {
        Circuit {
            n_qubits: n_system + 1,
            gates: Vec::new(),
            uses_ancilla: true,
            global_phase: 0.0,
        }
    }

    pub fn ancilla(&self) -> Option<usize> {
        self.uses_ancilla.then(|| self.n_qubits - 1)
    }

    /// Appends a gate. Panics on an out-of-range or repeated qubit index.
    pub fn push(&mut self, gate: Gate) {
        if let Err(e) = self.check(&gate) {
            panic!("{e}");
        }
        self.gates.push(gate);
    }

    pub fn try_push(&mut self, gate: Gate) -> Result<()> {
        self.check(&gate)?;
        self.gates.push(gate);
        Ok(())
    }

    fn check(&self, gate: &Gate) -> Result<()> {
        let (qs, k) = gate.qubits().as_slice();
        for &q in &qs[..k] {
            if q >= self.n_qubits {
                return Err(Error::IndexOutOfRange {
                    index: q,
                    size: self.n_qubits,
                });
            }
        }
        if k == 2 && qs[0] == qs[1] {
            return Err(Error::InvalidArgument(format!("{gate}: repeated qubit")));
        }
        Ok(())
    }

    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) {
        for g in gates {
            self.push(g);
        }
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// The adjoint circuit.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            uses_ancilla: self.uses_ancilla,
            global_phase: -self.global_phase,
        }
    }

    pub fn stats(&self) -> CircuitStats {
        circuit_stats(self)
    }
}

/// Removes adjacent inverse pairs until none remain.
///
/// Two gates are adjacent when no gate between them touches any of their
/// qubits. Each qubit keeps a stack of live gates; an incoming gate that
/// sits on top of every one of its qubits' stacks and undoes that gate
/// removes both, which exposes the next gate down for later matches.
pub fn peephole_cancel(c: &Circuit) -> Circuit {
    let mut alive = vec![true; c.gates.len()];
    let mut stacks: Vec<Vec<usize>> = vec![Vec::new(); c.n_qubits];
    for (idx, gate) in c.gates.iter().enumerate() {
        let (qs, k) = gate.qubits().as_slice();
        let qs = &qs[..k];
        let top = stacks[qs[0]].last().copied();
        let matched = top.filter(|&p| {
            let (pq, pk) = c.gates[p].qubits().as_slice();
            pk == k
                && qs.iter().all(|&q| stacks[q].last() == Some(&p))
                && pq[..pk].iter().all(|q| qs.contains(q))
                && c.gates[p].cancels(gate)
        });
        match matched {
            Some(p) => {
                alive[p] = false;
                alive[idx] = false;
                for &q in qs {
                    stacks[q].pop();
                }
            }
            None => {
                for &q in qs {
                    stacks[q].push(idx);
                }
            }
        }
    }
    Circuit {
        n_qubits: c.n_qubits,
        gates: c
            .gates
            .iter()
            .zip(&alive)
            .filter(|(_, &a)| a)
            .map(|(g, _)| *g)
            .collect(),
        uses_ancilla: c.uses_ancilla,
        global_phase: c.global_phase,
    }
}

/// Gate counts and depth.
///
/// `cnot_count` counts every two-qubit Clifford gate (CX and CZ alike);
/// `cz_count` reports how many of those are CZ. A controlled rotation is
/// costed by its expansion into 2 CX and 2 single-qubit gates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CircuitStats {
    pub cnot_count: usize,
    pub cz_count: usize,
    pub single_qubit_count: usize,
    pub depth: usize,
    /// Two-qubit gates touching the parity ancilla.
    pub cnot_exp: usize,
}

impl std::ops::Add for CircuitStats {
    type Output = CircuitStats;

    fn add(self, o: CircuitStats) -> CircuitStats {
        CircuitStats {
            cnot_count: self.cnot_count + o.cnot_count,
            cz_count: self.cz_count + o.cz_count,
            single_qubit_count: self.single_qubit_count + o.single_qubit_count,
            depth: self.depth + o.depth,
            cnot_exp: self.cnot_exp + o.cnot_exp,
        }
    }
}

impl std::iter::Sum for CircuitStats {
    fn sum<I: Iterator<Item = CircuitStats>>(iter: I) -> Self {
        iter.fold(CircuitStats::default(), |a, b| a + b)
    }
}

pub fn circuit_stats(c: &Circuit) -> CircuitStats {
    let ancilla = c.ancilla();
    let mut stats = CircuitStats::default();
    let mut layer = vec![0usize; c.n_qubits];
    for gate in &c.gates {
        let (qs, k) = gate.qubits().as_slice();
        let qs = &qs[..k];
        let span = match gate {
            Gate::CRz { .. } => {
                stats.cnot_count += 2;
                stats.single_qubit_count += 2;
                4
            }
            Gate::Cx(..) | Gate::Cz(..) => {
                stats.cnot_count += 1;
                if matches!(gate, Gate::Cz(..)) {
                    stats.cz_count += 1;
                }
                1
            }
            _ => {
                stats.single_qubit_count += 1;
                1
            }
        };
        if k == 2 && ancilla.is_some_and(|a| qs.contains(&a)) {
            stats.cnot_exp += if matches!(gate, Gate::CRz { .. }) {
                2
            } else {
                1
            };
        }
        let start = qs.iter().map(|&q| layer[q]).max().unwrap_or(0);
        for &q in qs {
            layer[q] = start + span;
        }
    }
    stats.depth = layer.into_iter().max().unwrap_or(0);
    stats
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hadamard_pair_cancels() {
        let mut c = Circuit::new(1);
        c.extend([Gate::H(0), Gate::H(0)]);
        assert!(peephole_cancel(&c).is_empty());
    }

    #[test]
    fn cancels_past_disjoint_gates() {
        let mut c = Circuit::new(3);
        c.extend([Gate::Cx(0, 1), Gate::Rz(2, 0.4), Gate::Cx(0, 1)]);
        assert_eq!(peephole_cancel(&c).gates, vec![Gate::Rz(2, 0.4)]);
    }

    #[test]
    fn blocked_by_gate_on_shared_qubit() {
        let mut c = Circuit::new(2);
        c.extend([Gate::Cx(0, 1), Gate::H(1), Gate::Cx(0, 1)]);
        assert_eq!(peephole_cancel(&c).len(), 3);
        let mut c = Circuit::new(2);
        c.extend([Gate::Cx(0, 1), Gate::Cx(1, 0)]);
        assert_eq!(peephole_cancel(&c).len(), 2);
    }

    #[test]
    fn nested_cancellation_reaches_fixpoint() {
        let mut c = Circuit::new(2);
        c.extend([
            Gate::Cx(0, 1),
            Gate::H(0),
            Gate::Sdg(0),
            Gate::S(0),
            Gate::H(0),
            Gate::Cx(0, 1),
            Gate::Cz(1, 0),
            Gate::Cz(0, 1),
        ]);
        let out = peephole_cancel(&c);
        assert!(out.is_empty(), "{:?}", out.gates);
        assert_eq!(peephole_cancel(&out), out);
    }

    #[test]
    fn stats_of_small_circuits() {
        assert_eq!(Circuit::new(2).stats(), CircuitStats::default());
        let mut c = Circuit::new(2);
        c.extend([Gate::H(0), Gate::H(1), Gate::Cx(0, 1)]);
        let s = c.stats();
        assert_eq!((s.depth, s.cnot_count, s.single_qubit_count), (2, 1, 2));
    }

    #[test]
    fn exp_cnots_counted_on_ancilla() {
        let mut c = Circuit::with_ancilla(2);
        c.extend([
            Gate::Cx(0, 1),
            Gate::Cx(1, 2),
            Gate::Rz(2, 0.1),
            Gate::Cx(1, 2),
        ]);
        let s = c.stats();
        assert_eq!((s.cnot_count, s.cnot_exp), (3, 2));
    }

    #[test]
    fn inverse_reverses_and_adjoints() {
        let mut c = Circuit::new(2);
        c.extend([Gate::S(0), Gate::Cx(0, 1), Gate::Rz(1, 0.5)]);
        let inv = c.inverse();
        assert_eq!(
            inv.gates,
            vec![Gate::Rz(1, -0.5), Gate::Cx(0, 1), Gate::Sdg(0)]
        );
    }

    #[test]
    #[should_panic]
    fn push_rejects_bad_index() {
        Circuit::new(2).push(Gate::Cx(0, 2));
    }
}
