//! Random commuting Pauli sets and their canonical form.
//!
//! A maximal commuting set on `n` qubits is generated by `n` rows in a
//! fixed canonical shape: X is the identity and Z symmetric, except that
//! some columns have X and Z exchanged. Sampling that shape uniformly and
//! multiplying by a random full-rank binary matrix gives a uniform random
//! basis of the group.

use rand::Rng;

use crate::bits::{BitMatrix, BitRow};
use crate::circuit::Gate;
use crate::error::{Error, Result};
use crate::pauli::PauliRow;
use crate::tableau::Tableau;

/// Rejection sampling gives up after this many draws.
pub const MAX_ATTEMPTS: usize = 1000;

/// How row `i` of a generator tableau is filled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowChoice {
    /// Exchange column `i` of X and Z.
    Exchange,
    /// Set `Z[i,j] = Z[j,i]` for `j ≥ i` from the bits (bit 0 goes to `j = i`).
    Fill(BitRow),
}

/// Builds the unsigned generator tableau for one choice per row.
pub fn generator_from_choices(n: usize, choices: &[RowChoice]) -> Result<Tableau> {
    if choices.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: choices.len(),
        });
    }
    let mut x = BitMatrix::zeros(n, n);
    let mut z = BitMatrix::zeros(n, n);
    for (i, choice) in choices.iter().enumerate() {
        x.set(i, i, true);
        match choice {
            RowChoice::Exchange => {
                for r in 0..n {
                    let (a, b) = (x.get(r, i), z.get(r, i));
                    x.set(r, i, b);
                    z.set(r, i, a);
                }
            }
            RowChoice::Fill(bits) => {
                if bits.len() != n - i {
                    return Err(Error::LengthMismatch {
                        expected: n - i,
                        found: bits.len(),
                    });
                }
                for (o, b) in bits.iter().enumerate() {
                    z.set(i, i + o, b);
                    z.set(i + o, i, b);
                }
            }
        }
    }
    Tableau::from_blocks(&x, &z, &vec![false; n])
}

/// Draws the choice for a row with `k` fill bits: one of `2^k + 1`
/// outcomes, uniformly, the last being the exchange.
fn draw_choice<R: Rng + ?Sized>(k: usize, rng: &mut R) -> RowChoice {
    loop {
        let bits = BitRow::random(k + 1, rng);
        let top = bits.get(k);
        let low = BitRow::from_bools(&bits.iter().take(k).collect::<Vec<_>>());
        if !top {
            return RowChoice::Fill(low);
        }
        if low.is_zero() {
            return RowChoice::Exchange;
        }
    }
}

/// A uniformly random generator tableau of a maximal commuting set, with
/// random signs.
pub fn sample_generators<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Tableau> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one qubit".into()));
    }
    let choices: Vec<RowChoice> = (0..n).map(|i| draw_choice(n - i, rng)).collect();
    let mut t = generator_from_choices(n, &choices)?;
    for i in 0..n {
        t.set_sign(i, rng.random());
    }
    Ok(t)
}

/// Rejection-samples an `m × n` binary matrix of rank `n`. Returns the
/// matrix and the number of draws used.
pub fn sample_full_rank_binary<R: Rng + ?Sized>(
    m: usize,
    n: usize,
    rng: &mut R,
) -> Result<(BitMatrix, usize)> {
    if m < n {
        return Err(Error::InvalidArgument(format!(
            "need m >= n, got {m} x {n}"
        )));
    }
    for attempt in 1..=MAX_ATTEMPTS {
        let b = BitMatrix::random(m, n, rng);
        if b.rank() == n {
            return Ok((b, attempt));
        }
    }
    Err(Error::SamplingExhausted(MAX_ATTEMPTS))
}

/// Row `i` of the result is the product of the generator rows selected by
/// row `i` of `b`, in increasing order. With `rng`, signs are then drawn
/// uniformly.
pub fn compose_basis<R: Rng + ?Sized>(
    gen: &Tableau,
    b: &BitMatrix,
    rng: Option<&mut R>,
) -> Result<Tableau> {
    let n = gen.n_rows();
    if b.n_cols() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: b.n_cols(),
        });
    }
    if b.rank() != n {
        return Err(Error::NotFullRank);
    }
    let rows = b
        .rows()
        .iter()
        .map(|sel| {
            let mut acc = PauliRow::identity(gen.n_qubits());
            for g in sel.ones() {
                acc.mul_assign(gen.row(g))
                    .map_err(|()| Error::NotCommuting(g, g))?;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut t = Tableau::from_rows(gen.n_qubits(), rows)?;
    if let Some(rng) = rng {
        for i in 0..t.n_rows() {
            t.set_sign(i, rng.random());
        }
    }
    Ok(t)
}

/// A uniformly random commuting set of `m ≥ n` Paulis spanning a maximal
/// commuting group, with random signs.
pub fn sample_basis<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Result<Tableau> {
    let gen = sample_generators(n, rng)?;
    let (b, _) = sample_full_rank_binary(m, n, rng)?;
    compose_basis(&gen, &b, Some(rng))
}

/// Normal form of a full-rank commuting tableau.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub z: BitMatrix,
    /// Columns whose X and Z parts were exchanged, ascending.
    pub hadamard_set: Vec<usize>,
    pub signs: Vec<bool>,
}

impl CanonicalForm {
    pub fn n_qubits(&self) -> usize {
        self.z.n_cols()
    }

    /// Equality of `(Z, 𝓘)`, ignoring signs.
    pub fn same_group(&self, other: &CanonicalForm) -> bool {
        self.z == other.z && self.hadamard_set == other.hadamard_set
    }

    /// The generator tableau this form describes.
    pub fn to_tableau(&self) -> Result<Tableau> {
        let n = self.n_qubits();
        let mut t = Tableau::from_blocks(&BitMatrix::identity(n), &self.z, &self.signs)?;
        for &k in &self.hadamard_set {
            t.apply_gate(&Gate::H(k))?;
        }
        Ok(t)
    }

    /// `n × (n + 2)` bit rows: `Z`, then the 𝓘 indicator, then the sign.
    pub fn to_bit_rows(&self) -> Vec<BitRow> {
        let n = self.n_qubits();
        (0..n)
            .map(|i| {
                let mut r = BitRow::zeros(n + 2);
                for j in self.z.row(i).ones() {
                    r.set(j, true);
                }
                r.set(n, self.hadamard_set.contains(&i));
                r.set(n + 1, self.signs[i]);
                r
            })
            .collect()
    }
}

/// Reduces a full-rank commuting tableau to its canonical generators.
///
/// Column by column, a row with X set is moved up and swept out of every
/// other row. When the X column is empty the column is exchanged with Z by
/// a Hadamard (keeping signs consistent) and recorded in 𝓘.
pub fn normalize_full_rank(t: &Tableau) -> Result<CanonicalForm> {
    let n = t.n_qubits();
    let m = t.n_rows();
    if m < n {
        return Err(Error::NotFullRank);
    }
    let mut t = t.clone();
    let mut hadamard_set = Vec::new();
    for k in 0..n {
        let mut pivot = (k..m).find(|&i| t.x(i, k));
        if pivot.is_none() {
            hadamard_set.push(k);
            t.apply_gate(&Gate::H(k))?;
            pivot = (k..m).find(|&i| t.x(i, k));
        }
        let p = pivot.ok_or(Error::NotFullRank)?;
        t.swap_rows(p, k)?;
        for i in 0..m {
            if i != k && t.x(i, k) {
                t.row_sweep(i, k).map_err(|e| match e {
                    Error::AnticommutingSweep { target, other } => {
                        Error::NotCommuting(other, target)
                    }
                    e => e,
                })?;
            }
        }
    }
    let rows: Vec<BitRow> = (0..n).map(|i| t.row(i).z.clone()).collect();
    Ok(CanonicalForm {
        z: BitMatrix::from_rows(n, rows),
        hadamard_set,
        signs: (0..n).map(|i| t.sign(i)).collect(),
    })
}

/// Whether two full-rank commuting sets generate the same group, up to
/// signs.
pub fn canonical_equal(a: &Tableau, b: &Tableau) -> Result<bool> {
    Ok(normalize_full_rank(a)?.same_group(&normalize_full_rank(b)?))
}

/// Like [`canonical_equal`], also comparing generator signs.
pub fn canonical_equal_signed(a: &Tableau, b: &Tableau) -> Result<bool> {
    Ok(normalize_full_rank(a)? == normalize_full_rank(b)?)
}
