//! Binary tableau `[X | Z | s]` over a list of Pauli operators.
//!
//! Rows are stored as packed [`PauliRow`]s, so row sweeps are word-parallel.
//! Qubit (column) swaps are recorded in a label vector instead of being
//! emitted as gates: position `p` of the tableau holds original qubit
//! `labels()[p]`.

use std::fmt;

use crate::bits::{BitMatrix, BitRow};
use crate::circuit::Gate;
use crate::error::{Error, Result};
use crate::pauli::{PauliRow, PauliTerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    Rows,
    Qubits,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Tableau {
    n: usize,
    rows: Vec<PauliRow>,
    labels: Vec<usize>,
}

impl Tableau {
    /// An empty tableau over `n` qubits.
    pub fn new(n: usize) -> Self {
        Tableau {
            n,
            rows: Vec::new(),
            labels: (0..n).collect(),
        }
    }

    pub fn from_rows(n: usize, rows: Vec<PauliRow>) -> Result<Self> {
        for r in &rows {
            if r.n_qubits() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: r.n_qubits(),
                });
            }
        }
        Ok(Tableau {
            n,
            rows,
            labels: (0..n).collect(),
        })
    }

    /// Unsigned rows from weighted terms (their signs live in the coefficients).
    pub fn from_terms(terms: &[PauliTerm]) -> Result<Self> {
        let n = terms.first().map_or(0, PauliTerm::n_qubits);
        Self::from_rows(n, terms.iter().map(PauliTerm::to_row).collect())
    }

    /// Builds a tableau from strings such as `["XZIY", "-ZYXZ"]`.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|s| s.parse::<PauliRow>())
            .collect::<Result<Vec<_>>>()?;
        let n = rows.first().map_or(0, PauliRow::n_qubits);
        Self::from_rows(n, rows)
    }

    /// Builds a tableau from its X and Z blocks and sign vector.
    pub fn from_blocks(x: &BitMatrix, z: &BitMatrix, signs: &[bool]) -> Result<Self> {
        if x.n_rows() != z.n_rows() || x.n_cols() != z.n_cols() || signs.len() != x.n_rows() {
            return Err(Error::InvalidArgument("tableau block shapes differ".into()));
        }
        let rows = (0..x.n_rows())
            .map(|i| PauliRow {
                x: x.row(i).clone(),
                z: z.row(i).clone(),
                neg: signs[i],
            })
            .collect();
        Self::from_rows(x.n_cols(), rows)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[PauliRow] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &PauliRow {
        &self.rows[i]
    }

    pub fn push_row(&mut self, row: PauliRow) -> Result<()> {
        if row.n_qubits() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: row.n_qubits(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    /// Original qubit label held at each tableau position.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    #[inline]
    pub fn x(&self, i: usize, j: usize) -> bool {
        self.rows[i].x.get(j)
    }

    #[inline]
    pub fn z(&self, i: usize, j: usize) -> bool {
        self.rows[i].z.get(j)
    }

    #[inline]
    pub fn sign(&self, i: usize) -> bool {
        self.rows[i].neg
    }

    pub fn set_sign(&mut self, i: usize, neg: bool) {
        self.rows[i].neg = neg;
    }

    pub fn x_block(&self) -> BitMatrix {
        BitMatrix::from_rows(self.n, self.rows.iter().map(|r| r.x.clone()).collect())
    }

    pub fn z_block(&self) -> BitMatrix {
        BitMatrix::from_rows(self.n, self.rows.iter().map(|r| r.z.clone()).collect())
    }

    pub fn signs(&self) -> Vec<bool> {
        self.rows.iter().map(|r| r.neg).collect()
    }

    /// Rank of `[X, Z]` over the binary field.
    pub fn rank(&self) -> usize {
        let joined = self
            .rows
            .iter()
            .map(|r| {
                let mut bits = BitRow::zeros(2 * self.n);
                for j in r.x.ones() {
                    bits.set(j, true);
                }
                for j in r.z.ones() {
                    bits.set(self.n + j, true);
                }
                bits
            })
            .collect();
        BitMatrix::from_rows(2 * self.n, joined).rank()
    }

    fn check_row(&self, i: usize) -> Result<()> {
        if i >= self.rows.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                size: self.rows.len(),
            });
        }
        Ok(())
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::IndexOutOfRange {
                index: q,
                size: self.n,
            });
        }
        Ok(())
    }

    /// Whether rows `i` and `j` commute (their symplectic product vanishes).
    pub fn commutes(&self, i: usize, j: usize) -> Result<bool> {
        self.check_row(i)?;
        self.check_row(j)?;
        Ok(self.rows[i].commutes_with(&self.rows[j]))
    }

    /// Returns the first anticommuting pair of rows, if any.
    pub fn find_anticommuting_pair(&self) -> Option<(usize, usize)> {
        for i in 0..self.rows.len() {
            for j in i + 1..self.rows.len() {
                if !self.rows[i].commutes_with(&self.rows[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Replaces row `target` by its product with row `source`.
    pub fn row_sweep(&mut self, target: usize, source: usize) -> Result<()> {
        self.check_row(target)?;
        self.check_row(source)?;
        if target == source {
            return Err(Error::Precondition("cannot sweep a row with itself".into()));
        }
        let src = self.rows[source].clone();
        self.rows[target]
            .mul_assign(&src)
            .map_err(|()| Error::AnticommutingSweep {
                target,
                other: source,
            })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_row(a)?;
        self.check_row(b)?;
        self.rows.swap(a, b);
        Ok(())
    }

    /// Swaps two qubit columns in both blocks and records the relabeling.
    pub fn swap_qubits(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_qubit(a)?;
        self.check_qubit(b)?;
        if a != b {
            for r in &mut self.rows {
                r.swap_qubits(a, b);
            }
            self.labels.swap(a, b);
        }
        Ok(())
    }

    pub fn permute(&mut self, axis: Axis, a: usize, b: usize) -> Result<()> {
        match axis {
            Axis::Rows => self.swap_rows(a, b),
            Axis::Qubits => self.swap_qubits(a, b),
        }
    }

    /// Exchanges column `q` of the X and Z blocks without touching signs.
    pub fn exchange_xz(&mut self, q: usize) -> Result<()> {
        self.check_qubit(q)?;
        for r in &mut self.rows {
            let (x, z) = (r.x.get(q), r.z.get(q));
            r.x.set(q, z);
            r.z.set(q, x);
        }
        Ok(())
    }

    /// Conjugates every row by a Clifford gate: `P ← G P G†`.
    ///
    /// Gate indices refer to tableau positions. Signs are updated before the
    /// block update.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        match *gate {
            Gate::H(a) => {
                self.check_qubit(a)?;
                for r in &mut self.rows {
                    let (x, z) = (r.x.get(a), r.z.get(a));
                    r.neg ^= x & z;
                    r.x.set(a, z);
                    r.z.set(a, x);
                }
            }
            Gate::S(a) => {
                self.check_qubit(a)?;
                for r in &mut self.rows {
                    let (x, z) = (r.x.get(a), r.z.get(a));
                    r.neg ^= x & z;
                    r.z.set(a, z ^ x);
                }
            }
            Gate::Sdg(a) => {
                self.check_qubit(a)?;
                for r in &mut self.rows {
                    let (x, z) = (r.x.get(a), r.z.get(a));
                    r.neg ^= x & !z;
                    r.z.set(a, z ^ x);
                }
            }
            Gate::Cx(a, b) => {
                self.check_two(a, b)?;
                for r in &mut self.rows {
                    let (xa, za, xb, zb) = (r.x.get(a), r.z.get(a), r.x.get(b), r.z.get(b));
                    r.neg ^= xa & zb & !(xb ^ za);
                    r.z.set(a, za ^ zb);
                    r.x.set(b, xb ^ xa);
                }
            }
            Gate::Cz(a, b) => {
                self.check_two(a, b)?;
                for r in &mut self.rows {
                    let (xa, za, xb, zb) = (r.x.get(a), r.z.get(a), r.x.get(b), r.z.get(b));
                    r.neg ^= xa & xb & (za ^ zb);
                    r.z.set(a, za ^ xb);
                    r.z.set(b, zb ^ xa);
                }
            }
            Gate::X(_) | Gate::Rz(..) | Gate::CRz { .. } => {
                return Err(Error::NonClifford(gate.to_string()));
            }
        }
        Ok(())
    }

    fn check_two(&self, a: usize, b: usize) -> Result<()> {
        self.check_qubit(a)?;
        self.check_qubit(b)?;
        if a == b {
            return Err(Error::InvalidArgument("two-qubit gate on one qubit".into()));
        }
        Ok(())
    }
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Tableau[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("]")
    }
}
