//! Pauli letters, weighted Pauli terms and packed signed Pauli rows.
//!
//! Qubit 0 is the leftmost letter of a Pauli string and the most significant
//! tensor factor everywhere in this crate.

use std::fmt;
use std::str::FromStr;

use crate::bits::BitRow;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// Symplectic encoding `(x, z)`.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// One weighted Pauli string. Any sign is folded into `coeff`.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliTerm {
    pub letters: Vec<Pauli>,
    pub coeff: f64,
}

impl PauliTerm {
    pub fn new(letters: Vec<Pauli>, coeff: f64) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidArgument("empty Pauli string".into()));
        }
        if !coeff.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "non-finite coefficient {coeff}"
            )));
        }
        Ok(PauliTerm { letters, coeff })
    }

    /// Parses `"XYZ"` or `"-XYZ"`; a leading minus negates `coeff`.
    pub fn parse(s: &str, coeff: f64) -> Result<Self> {
        let row: PauliRow = s.parse()?;
        let c = if row.neg { -coeff } else { coeff };
        PauliTerm::new(row.letters(), c)
    }

    pub fn n_qubits(&self) -> usize {
        self.letters.len()
    }

    pub fn to_row(&self) -> PauliRow {
        PauliRow::from_letters(&self.letters, false)
    }

    pub fn is_identity(&self) -> bool {
        self.letters.iter().all(|&p| p == Pauli::I)
    }

    pub fn label(&self) -> String {
        self.letters.iter().map(|p| p.as_char()).collect()
    }
}

/// Signed Pauli operator in binary symplectic form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliRow {
    pub x: BitRow,
    pub z: BitRow,
    /// True for a leading minus sign.
    pub neg: bool,
}

impl PauliRow {
    pub fn identity(n: usize) -> Self {
        PauliRow {
            x: BitRow::zeros(n),
            z: BitRow::zeros(n),
            neg: false,
        }
    }

    pub fn from_letters(letters: &[Pauli], neg: bool) -> Self {
        let mut row = Self::identity(letters.len());
        for (q, p) in letters.iter().enumerate() {
            let (x, z) = p.bits();
            row.x.set(q, x);
            row.z.set(q, z);
        }
        row.neg = neg;
        row
    }

    pub fn n_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn letter(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn letters(&self) -> Vec<Pauli> {
        (0..self.n_qubits()).map(|q| self.letter(q)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn is_diagonal(&self) -> bool {
        self.x.is_zero()
    }

    /// Symplectic product: true when the two operators commute.
    pub fn commutes_with(&self, other: &PauliRow) -> bool {
        self.x.dot(&other.z) == other.x.dot(&self.z)
    }

    /// Replaces `self` by the product `self · other`.
    ///
    /// The phase is accumulated modulo 4 in powers of `i`; the product of two
    /// commuting Hermitian Paulis is `±` a Hermitian Pauli, so an odd
    /// accumulator means the operands anticommute and the row is left as is.
    #[allow(clippy::result_unit_err)]
    pub fn mul_assign(&mut self, other: &PauliRow) -> std::result::Result<(), ()> {
        let phase = self.product_phase(other);
        if phase % 2 == 1 {
            return Err(());
        }
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
        self.neg = phase == 2;
        Ok(())
    }

    /// Exponent `e` (mod 4) such that `self · other = i^e · P` with `P` the
    /// unsigned Hermitian Pauli of the XOR-ed bits.
    pub fn product_phase(&self, other: &PauliRow) -> u8 {
        let mut plus: u32 = 0;
        let mut minus: u32 = 0;
        let words = self
            .x
            .words()
            .iter()
            .zip(self.z.words())
            .zip(other.x.words().iter().zip(other.z.words()));
        for ((&x1, &z1), (&x2, &z2)) in words {
            // +i: YZ, XY, ZX;  -i: YX, XZ, ZY
            let p = (x1 & z1 & !x2 & z2) | (x1 & !z1 & x2 & z2) | (!x1 & z1 & x2 & !z2);
            let m = (x1 & z1 & x2 & !z2) | (x1 & !z1 & !x2 & z2) | (!x1 & z1 & x2 & z2);
            plus += p.count_ones();
            minus += m.count_ones();
        }
        let mut acc = (plus as i64 - minus as i64).rem_euclid(4) as u8;
        if self.neg {
            acc = (acc + 2) % 4;
        }
        if other.neg {
            acc = (acc + 2) % 4;
        }
        acc
    }

    pub fn swap_qubits(&mut self, a: usize, b: usize) {
        self.x.swap_bits(a, b);
        self.z.swap_bits(a, b);
    }
}

impl FromStr for PauliRow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        if body.is_empty() {
            return Err(Error::InvalidArgument("empty Pauli string".into()));
        }
        let letters = body
            .chars()
            .map(|c| {
                Pauli::from_char(c)
                    .ok_or_else(|| Error::InvalidArgument(format!("invalid Pauli letter '{c}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliRow::from_letters(&letters, neg))
    }
}

impl fmt::Display for PauliRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.neg {
            f.write_str("-")?;
        }
        for q in 0..self.n_qubits() {
            write!(f, "{}", self.letter(q).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliRow({self})")
    }
}
