use crate::circuit::Gate;
use crate::error::{Error, Result};
use crate::tableau::Tableau;

use super::apply_mapped;

/// Outcome of X-block diagonalization.
#[derive(Clone, Debug)]
pub struct XBlock {
    /// Hadamard and CX gates in label space.
    pub gates: Vec<Gate>,
    /// Number of pivots found in the X block.
    pub k_x: usize,
    /// Total number of pivots (the rank).
    pub k: usize,
}

fn find_pivot(t: &Tableau, k: usize, in_x: bool) -> Option<(usize, usize)> {
    // column-major, first hit
    for j in k..t.n_qubits() {
        for i in k..t.n_rows() {
            let bit = if in_x { t.x(i, j) } else { t.z(i, j) };
            if bit {
                return Some((i, j));
            }
        }
    }
    None
}

fn eliminate(t: &mut Tableau, k: &mut usize, in_x: bool) -> Result<()> {
    while let Some((i, j)) = find_pivot(t, *k, in_x) {
        t.swap_rows(i, *k)?;
        t.swap_qubits(j, *k)?;
        for r in 0..t.n_rows() {
            let bit = if in_x { t.x(r, *k) } else { t.z(r, *k) };
            if r != *k && bit {
                t.row_sweep(r, *k).map_err(|e| match e {
                    Error::AnticommutingSweep { target, other } => {
                        Error::NotCommuting(other, target)
                    }
                    e => e,
                })?;
            }
        }
        *k += 1;
    }
    Ok(())
}

/// Brings the X block to diagonal form with ones in the first `rank`
/// positions.
///
/// Pivots are searched column by column, then row by row; the first hit is
/// moved to the diagonal by a row and a qubit swap. After the X and Z
/// stages, Hadamards move the Z pivots into X and CX gates clear the
/// entries to the right of the diagonal block.
pub fn diagonalize_x(t: &mut Tableau) -> Result<XBlock> {
    let mut k = 0;
    eliminate(t, &mut k, true)?;
    let k_x = k;
    eliminate(t, &mut k, false)?;

    let mut gates = Vec::new();
    for j in k_x..k {
        gates.push(apply_mapped(t, Gate::H(j))?);
    }
    for i in 0..k {
        for j in k..t.n_qubits() {
            if t.x(i, j) {
                gates.push(apply_mapped(t, Gate::Cx(i, j))?);
            }
        }
    }
    Ok(XBlock { gates, k_x, k })
}
