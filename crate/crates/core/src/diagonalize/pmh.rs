//! Block-partitioned Gaussian elimination for CX-only circuits.
//!
//! A CX circuit on `n` qubits acts on basis states as an invertible linear
//! map `x ↦ Lx` over the binary field; `CX(c, t)` adds row `c` of the map
//! into row `t`. Elimination works column section by column section,
//! first removing duplicate row patterns inside a section so that each
//! pattern costs one row addition instead of several.

use std::collections::HashMap;

use crate::bits::{BitMatrix, BitRow};
use crate::circuit::Gate;
use crate::error::{Error, Result};

/// The linear map of a CX-only gate list.
pub fn linear_map_of(n: usize, gates: &[Gate]) -> Result<BitMatrix> {
    let mut m = BitMatrix::identity(n);
    for g in gates {
        match *g {
            Gate::Cx(c, t) if c < n && t < n && c != t => m.add_row(c, t),
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "{g} is not a CX on {n} qubits"
                )))
            }
        }
    }
    Ok(m)
}

/// Row operations `(source, target)` reducing `a` to upper-triangular form.
fn lower_pass(a: &mut BitMatrix, section: usize) -> Result<Vec<(usize, usize)>> {
    let n = a.n_rows();
    let mut ops = Vec::new();
    let mut lo = 0;
    while lo < n {
        let hi = (lo + section).min(n);
        let mut seen: HashMap<BitRow, usize> = HashMap::new();
        for row in lo..n {
            let sub = BitRow::from_bools(&(lo..hi).map(|c| a.get(row, c)).collect::<Vec<_>>());
            if sub.is_zero() {
                continue;
            }
            if let Some(&first) = seen.get(&sub) {
                a.add_row(first, row);
                ops.push((first, row));
            } else {
                seen.insert(sub, row);
            }
        }
        for col in lo..hi {
            let mut diag = a.get(col, col);
            for row in col + 1..n {
                if a.get(row, col) {
                    if !diag {
                        a.add_row(row, col);
                        ops.push((row, col));
                        diag = true;
                    }
                    a.add_row(col, row);
                    ops.push((col, row));
                }
            }
            if !diag {
                return Err(Error::Singular);
            }
        }
        lo = hi;
    }
    Ok(ops)
}

/// Synthesizes a CX circuit implementing `l` with column sections of
/// `block_size`.
pub fn pmh_resynthesize(l: &BitMatrix, block_size: usize) -> Result<Vec<Gate>> {
    let n = l.n_rows();
    if l.n_cols() != n {
        return Err(Error::InvalidArgument("linear map is not square".into()));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    if block_size == 0 || block_size > n {
        return Err(Error::InvalidArgument(format!(
            "block size {block_size} outside 1..={n}"
        )));
    }
    let mut a = l.clone();
    let lower = lower_pass(&mut a, block_size)?;
    let mut a = a.transpose();
    let upper = lower_pass(&mut a, block_size)?;
    if !a.is_identity() {
        return Err(Error::Internal("elimination did not reach identity".into()));
    }
    let mut gates: Vec<Gate> = upper.iter().map(|&(s, t)| Gate::Cx(t, s)).collect();
    gates.extend(lower.iter().rev().map(|&(s, t)| Gate::Cx(s, t)));
    Ok(gates)
}

/// The shortest synthesis over all block sizes, with its block size.
/// Ties go to the smallest block size.
pub fn pmh_best(l: &BitMatrix) -> Result<(Vec<Gate>, usize)> {
    let n = l.n_rows();
    if n == 0 {
        return Ok((Vec::new(), 1));
    }
    let mut best: Option<(Vec<Gate>, usize)> = None;
    for b in 1..=n {
        let g = pmh_resynthesize(l, b)?;
        if best.as_ref().is_none_or(|(bg, _)| g.len() < bg.len()) {
            best = Some((g, b));
        }
    }
    Ok(best.expect("n >= 1"))
}

/// `⌈log₂ n⌉`, at least 1.
pub(crate) fn log2_block(n: usize) -> usize {
    if n <= 2 {
        1
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}
