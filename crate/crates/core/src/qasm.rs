//! OpenQASM 2.0 output.
//!
//! `qelib1.inc` defines `rz(λ)` as `u1(λ) = diag(1, e^{iλ})`, so the
//! internal `RZ(θ)` becomes `rz(-2θ)` times `e^{iθ}`. `crz(λ)` there is the
//! phase-free controlled rotation and needs no correction. The total dropped
//! phase goes in a comment.

use std::fmt::Write;

use crate::circuit::{Circuit, Gate};

/// Phase `φ` with `U = e^{iφ}·(emitted circuit)`.
pub fn qasm_global_phase(c: &Circuit) -> f64 {
    c.global_phase
        + c.gates
            .iter()
            .map(|g| match g {
                Gate::Rz(_, t) => *t,
                _ => 0.0,
            })
            .sum::<f64>()
}

pub fn emit_qasm(c: &Circuit) -> String {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    writeln!(out, "// global phase: {}", qasm_global_phase(c)).unwrap();
    if let Some(a) = c.ancilla() {
        writeln!(out, "// ancilla: q[{a}]").unwrap();
    }
    writeln!(out, "qreg q[{}];", c.n_qubits).unwrap();
    for g in &c.gates {
        match *g {
            Gate::H(q) | Gate::S(q) | Gate::Sdg(q) | Gate::X(q) => {
                writeln!(out, "{} q[{q}];", g.name()).unwrap()
            }
            Gate::Cx(a, b) | Gate::Cz(a, b) => {
                writeln!(out, "{} q[{a}],q[{b}];", g.name()).unwrap()
            }
            Gate::Rz(q, t) => writeln!(out, "rz({}) q[{q}];", -2.0 * t).unwrap(),
            Gate::CRz {
                control,
                target,
                angle,
            } => writeln!(out, "crz({}) q[{control}],q[{target}];", -2.0 * angle).unwrap(),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{circuit_to_unitary, equal_up_to_global_phase, DenseUnitary};
    use num_complex::Complex64;

    #[test]
    fn single_h() {
        let mut c = Circuit::new(1);
        c.push(Gate::H(0));
        let q = emit_qasm(&c);
        assert_eq!(q.matches("h q[0];").count(), 1);
        assert!(q.starts_with("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n"));
    }

    #[test]
    fn rz_sign_and_phase() {
        let mut c = Circuit::new(1);
        c.push(Gate::Rz(0, 0.3));
        let q = emit_qasm(&c);
        assert!(q.contains("rz(-0.6) q[0];"), "{q}");
        assert!(q.contains("// global phase: 0.3"));
    }

    #[test]
    fn rz_phase_algebra() {
        // e^{iθ}·u1(-2θ) reproduces the internal rotation.
        let t = 0.37;
        let mut c = Circuit::new(1);
        c.push(Gate::Rz(0, t));
        let ours = circuit_to_unitary(&c).unwrap();
        let u1 = DenseUnitary::from_fn(1, |r, col| match (r, col) {
            (0, 0) => Complex64::new(1.0, 0.0),
            (1, 1) => Complex64::from_polar(1.0, -2.0 * t),
            _ => Complex64::new(0.0, 0.0),
        })
        .unwrap();
        let phase = qasm_global_phase(&c);
        let mut scaled = u1.clone();
        scaled.scale(Complex64::from_polar(1.0, phase));
        assert!(ours.max_abs_diff(&scaled) < 1e-12);
        assert!(equal_up_to_global_phase(&ours, &u1, 1e-12));
    }

    #[test]
    fn byte_stable() {
        let mut c = Circuit::with_ancilla(2);
        c.extend([
            Gate::Cx(0, 2),
            Gate::Cz(0, 1),
            Gate::Sdg(1),
            Gate::Rz(2, -0.125),
            Gate::CRz {
                control: 0,
                target: 1,
                angle: 0.5,
            },
        ]);
        let a = emit_qasm(&c);
        assert_eq!(a, emit_qasm(&c.clone()));
        assert!(a.contains("qreg q[3];"));
        assert!(a.contains("cx q[0],q[2];"));
        assert!(a.contains("crz(-1) q[0],q[1];"));
    }
}
