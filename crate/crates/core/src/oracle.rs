//! Dense reference matrices for small qubit counts.
//!
//! Basis index bit `n-1-q` holds qubit `q`, so qubit 0 is the most
//! significant tensor factor and an ancilla at qubit `n-1` is the least
//! significant bit.

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate};
use crate::diagonalize::DiagResult;
use crate::error::{Error, Result};
use crate::pauli::{PauliRow, PauliTerm};
use crate::tableau::Tableau;

pub const MATRIX_CAP: usize = 12;
pub const EVOLUTION_CAP: usize = 11;
pub const VERIFY_CAP: usize = 10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn cap(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::SizeCap { qubits: n, limit })
    } else {
        Ok(())
    }
}

/// A dense `2^n × 2^n` complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseUnitary {
    n_qubits: usize,
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseUnitary {
    pub fn identity(n_qubits: usize) -> Result<Self> {
        cap(n_qubits, MATRIX_CAP)?;
        let dim = 1 << n_qubits;
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = ONE;
        }
        Ok(DenseUnitary {
            n_qubits,
            dim,
            data,
        })
    }

    pub fn from_fn(n_qubits: usize, f: impl Fn(usize, usize) -> Complex64) -> Result<Self> {
        cap(n_qubits, MATRIX_CAP)?;
        let dim = 1 << n_qubits;
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Ok(DenseUnitary {
            n_qubits,
            dim,
            data,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn dagger(&self) -> DenseUnitary {
        let d = self.dim;
        let mut data = vec![ZERO; d * d];
        for r in 0..d {
            for c in 0..d {
                data[c * d + r] = self.data[r * d + c].conj();
            }
        }
        DenseUnitary {
            n_qubits: self.n_qubits,
            dim: d,
            data,
        }
    }

    pub fn scale(&mut self, s: Complex64) {
        for v in &mut self.data {
            *v *= s;
        }
    }

    pub fn matmul(&self, other: &DenseUnitary) -> DenseUnitary {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut data = vec![ZERO; d * d];
        for r in 0..d {
            for k in 0..d {
                let a = self.data[r * d + k];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * d..(k + 1) * d];
                for (out, &b) in data[r * d..(r + 1) * d].iter_mut().zip(row) {
                    *out += a * b;
                }
            }
        }
        DenseUnitary {
            n_qubits: self.n_qubits,
            dim: d,
            data,
        }
    }

    pub fn max_abs_diff(&self, other: &DenseUnitary) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        (0..self.dim).all(|r| (0..self.dim).all(|c| r == c || self.get(r, c).norm() <= tol))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let p = self.matmul(&self.dagger());
        p.max_abs_diff(&DenseUnitary::identity(self.n_qubits).expect("within cap")) <= tol
    }

    #[inline]
    fn bit(&self, q: usize) -> usize {
        1 << (self.n_qubits - 1 - q)
    }

    fn rows_mut(&mut self, a: usize, b: usize) -> (&mut [Complex64], &mut [Complex64]) {
        debug_assert!(a < b);
        let d = self.dim;
        let (lo, hi) = self.data.split_at_mut(b * d);
        (&mut lo[a * d..(a + 1) * d], &mut hi[..d])
    }

    fn apply_2x2(&mut self, q: usize, m: [[Complex64; 2]; 2]) {
        let bit = self.bit(q);
        for i in 0..self.dim {
            if i & bit != 0 {
                continue;
            }
            let (r0, r1) = self.rows_mut(i, i | bit);
            for (x, y) in r0.iter_mut().zip(r1.iter_mut()) {
                let (a, b) = (*x, *y);
                *x = m[0][0] * a + m[0][1] * b;
                *y = m[1][0] * a + m[1][1] * b;
            }
        }
    }

    fn scale_rows(&mut self, pred: impl Fn(usize) -> Option<Complex64>) {
        let d = self.dim;
        for i in 0..d {
            if let Some(s) = pred(i) {
                for v in &mut self.data[i * d..(i + 1) * d] {
                    *v *= s;
                }
            }
        }
    }

    /// Left-multiplies by the matrix of `gate`.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        let (qs, k) = gate.qubits().as_slice();
        for &q in &qs[..k] {
            if q >= self.n_qubits {
                return Err(Error::IndexOutOfRange {
                    index: q,
                    size: self.n_qubits,
                });
            }
        }
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        match *gate {
            Gate::H(q) => self.apply_2x2(q, [[h, h], [h, -h]]),
            Gate::S(q) => {
                let b = self.bit(q);
                self.scale_rows(|i| (i & b != 0).then_some(I));
            }
            Gate::Sdg(q) => {
                let b = self.bit(q);
                self.scale_rows(|i| (i & b != 0).then_some(-I));
            }
            Gate::X(q) => self.apply_2x2(q, [[ZERO, ONE], [ONE, ZERO]]),
            Gate::Rz(q, t) => {
                let b = self.bit(q);
                let (p, m) = (
                    Complex64::from_polar(1.0, t),
                    Complex64::from_polar(1.0, -t),
                );
                self.scale_rows(|i| Some(if i & b == 0 { p } else { m }));
            }
            Gate::Cz(a, c) => {
                let (ba, bc) = (self.bit(a), self.bit(c));
                self.scale_rows(|i| (i & ba != 0 && i & bc != 0).then_some(-ONE));
            }
            Gate::Cx(c, t) => {
                let (bc, bt) = (self.bit(c), self.bit(t));
                for i in 0..self.dim {
                    if i & bc != 0 && i & bt == 0 {
                        let (r0, r1) = self.rows_mut(i, i | bt);
                        r0.swap_with_slice(r1);
                    }
                }
            }
            Gate::CRz {
                control,
                target,
                angle,
            } => {
                let (bc, bt) = (self.bit(control), self.bit(target));
                let (p, m) = (
                    Complex64::from_polar(1.0, angle),
                    Complex64::from_polar(1.0, -angle),
                );
                self.scale_rows(|i| (i & bc != 0).then_some(if i & bt == 0 { p } else { m }));
            }
        }
        Ok(())
    }

    /// Left-multiplies by a signed Pauli operator.
    pub fn apply_pauli(&mut self, p: &PauliRow) -> Result<()> {
        if p.n_qubits() != self.n_qubits {
            return Err(Error::LengthMismatch {
                expected: self.n_qubits,
                found: p.n_qubits(),
            });
        }
        let (xm, zm, ny) = masks(p);
        let phase = pauli_phase(p.neg, ny);
        let d = self.dim;
        let mut out = vec![ZERO; d * d];
        for b in 0..d {
            let s = if (b & zm).count_ones() % 2 == 1 {
                -phase
            } else {
                phase
            };
            let dst = b ^ xm;
            for (o, &v) in out[dst * d..(dst + 1) * d]
                .iter_mut()
                .zip(&self.data[b * d..(b + 1) * d])
            {
                *o = s * v;
            }
        }
        self.data = out;
        Ok(())
    }

    /// The block acting on states where the last qubit is `|0⟩`.
    pub fn ancilla_block(&self) -> DenseUnitary {
        let n = self.n_qubits - 1;
        let dim = 1 << n;
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(self.get(2 * r, 2 * c));
            }
        }
        DenseUnitary {
            n_qubits: n,
            dim,
            data,
        }
    }
}

fn masks(p: &PauliRow) -> (usize, usize, usize) {
    let n = p.n_qubits();
    let (mut xm, mut zm, mut ny) = (0usize, 0usize, 0usize);
    for q in 0..n {
        let bit = 1 << (n - 1 - q);
        let (x, z) = (p.x.get(q), p.z.get(q));
        if x {
            xm |= bit;
        }
        if z {
            zm |= bit;
        }
        if x && z {
            ny += 1;
        }
    }
    (xm, zm, ny)
}

fn pauli_phase(neg: bool, n_y: usize) -> Complex64 {
    // Y = iXZ
    let base = match n_y % 4 {
        0 => ONE,
        1 => I,
        2 => -ONE,
        _ => -I,
    };
    if neg {
        -base
    } else {
        base
    }
}

/// Dense matrix of a signed Pauli row.
pub fn pauli_to_matrix(p: &PauliRow) -> Result<DenseUnitary> {
    let n = p.n_qubits();
    cap(n, MATRIX_CAP)?;
    let (xm, zm, ny) = masks(p);
    let phase = pauli_phase(p.neg, ny);
    DenseUnitary::from_fn(n, |r, c| {
        if r != c ^ xm {
            ZERO
        } else if (c & zm).count_ones() % 2 == 1 {
            -phase
        } else {
            phase
        }
    })
}

/// Dense matrix of a weighted term's Pauli string (coefficient ignored).
pub fn term_to_matrix(t: &PauliTerm) -> Result<DenseUnitary> {
    pauli_to_matrix(&t.to_row())
}

/// The unitary of a circuit, including its global phase.
pub fn circuit_to_unitary(c: &Circuit) -> Result<DenseUnitary> {
    let mut u = DenseUnitary::identity(c.n_qubits)?;
    for g in &c.gates {
        u.apply_gate(g)?;
    }
    if c.global_phase != 0.0 {
        u.scale(Complex64::from_polar(1.0, c.global_phase));
    }
    Ok(u)
}

/// `U M U†` where `U` is the circuit's unitary (global phase cancels).
pub fn conjugate(c: &Circuit, m: &DenseUnitary) -> Result<DenseUnitary> {
    if c.n_qubits != m.n_qubits {
        return Err(Error::LengthMismatch {
            expected: m.n_qubits,
            found: c.n_qubits,
        });
    }
    let mut a = m.clone();
    for g in &c.gates {
        a.apply_gate(g)?;
    }
    let mut b = a.dagger();
    for g in &c.gates {
        b.apply_gate(g)?;
    }
    Ok(b.dagger())
}

/// `∏ exp(iθ_j P_j)` for pairwise commuting rows.
pub fn exact_evolution(rows: &[PauliRow], angles: &[f64]) -> Result<DenseUnitary> {
    if rows.len() != angles.len() {
        return Err(Error::LengthMismatch {
            expected: rows.len(),
            found: angles.len(),
        });
    }
    let Some(first) = rows.first() else {
        return Err(Error::InvalidArgument(
            "empty term list has no qubit count".into(),
        ));
    };
    let n = first.n_qubits();
    cap(n, EVOLUTION_CAP)?;
    for (i, a) in rows.iter().enumerate() {
        if a.n_qubits() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: a.n_qubits(),
            });
        }
        for (j, b) in rows.iter().enumerate().skip(i + 1) {
            if !a.commutes_with(b) {
                return Err(Error::NotCommuting(i, j));
            }
        }
    }
    let mut u = DenseUnitary::identity(n)?;
    for (p, &theta) in rows.iter().zip(angles) {
        let mut pu = u.clone();
        pu.apply_pauli(p)?;
        let (c, s) = (theta.cos(), theta.sin());
        for (a, b) in u.data.iter_mut().zip(&pu.data) {
            *a = *a * c + I * s * *b;
        }
    }
    Ok(u)
}

/// Evolution under weighted terms, using each coefficient as its angle.
pub fn exact_evolution_terms(terms: &[PauliTerm], time: f64) -> Result<DenseUnitary> {
    let rows: Vec<PauliRow> = terms.iter().map(PauliTerm::to_row).collect();
    let angles: Vec<f64> = terms.iter().map(|t| t.coeff * time).collect();
    exact_evolution(&rows, &angles)
}

/// Whether `a = c·b` for some unit `c`, with `c` fixed by the
/// largest-magnitude entry of `b`.
pub fn equal_up_to_global_phase(a: &DenseUnitary, b: &DenseUnitary, tol: f64) -> bool {
    phase_distance(a, b).is_some_and(|d| d <= tol)
}

/// `max |a - c·b|` for the phase `c` used by [`equal_up_to_global_phase`].
pub fn phase_distance(a: &DenseUnitary, b: &DenseUnitary) -> Option<f64> {
    if a.dim != b.dim {
        return None;
    }
    let (k, bk) = b
        .data
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))?;
    let c = if bk.norm() == 0.0 {
        ONE
    } else {
        let r = a.data[k] / bk;
        if r.norm() == 0.0 {
            ONE
        } else {
            r / r.norm()
        }
    };
    Some(
        a.data
            .iter()
            .zip(&b.data)
            .map(|(x, y)| (x - c * y).norm())
            .fold(0.0, f64::max),
    )
}

/// Checks that the diagonalizing circuit maps every original row to its
/// recorded diagonal term.
pub fn verify_diagonalization(result: &DiagResult, original: &Tableau) -> Result<bool> {
    let n = original.n_qubits();
    cap(n, VERIFY_CAP)?;
    if result.diag.len() != original.n_rows() || result.circuit.n_qubits != n {
        return Ok(false);
    }
    for (row, d) in original.rows().iter().zip(&result.diag) {
        let got = conjugate(&result.circuit, &pauli_to_matrix(row)?)?;
        let want = pauli_to_matrix(&d.to_row())?;
        if !got.is_diagonal(1e-10) || got.max_abs_diff(&want) > 1e-10 {
            return Ok(false);
        }
    }
    Ok(true)
}
