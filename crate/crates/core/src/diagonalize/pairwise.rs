use crate::circuit::Gate;
use crate::error::Result;
use crate::tableau::Tableau;

use super::{apply_mapped, check_x_diagonal};

/// Clears the Z block pairwise with CZ gates, then X with S and H.
///
/// Each lower-triangular one `Z[i,j]` is removed together with its mirror
/// `Z[j,i]` by a single `CZ(i,j)`. With `phase_first` the phase gates are
/// emitted before the CZ stage; they commute, so the tableau is unchanged.
pub fn clear_z_pairwise(t: &mut Tableau, k: usize, phase_first: bool) -> Result<Vec<Gate>> {
    check_x_diagonal(t, k)?;
    let mut cz = Vec::new();
    for i in 1..k {
        for j in 0..i {
            if t.z(i, j) {
                cz.push(apply_mapped(t, Gate::Cz(i, j))?);
            }
        }
    }
    let mut phase = Vec::new();
    let mut hadamard = Vec::new();
    for i in 0..k {
        if t.z(i, i) {
            phase.push(apply_mapped(t, Gate::S(i))?);
        }
        hadamard.push(apply_mapped(t, Gate::H(i))?);
    }
    let mut gates = Vec::with_capacity(cz.len() + phase.len() + hadamard.len());
    if phase_first {
        gates.extend(phase);
        gates.extend(cz);
    } else {
        gates.extend(cz);
        gates.extend(phase);
    }
    gates.extend(hadamard);
    Ok(gates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn single_off_diagonal_pair() {
        // X = I, Z = [[0,1],[1,0]]
        let mut t = Tableau::from_strs(&["XZ", "ZX"]).unwrap();
        let gates = clear_z_pairwise(&mut t, 2, false).unwrap();
        assert_eq!(gates, vec![Gate::Cz(1, 0), Gate::H(0), Gate::H(1)]);
        assert!(t.rows().iter().all(|r| r.is_diagonal()));
    }

    #[test]
    fn zero_z_needs_only_hadamards() {
        let mut t = Tableau::from_strs(&["XI", "IX"]).unwrap();
        let gates = clear_z_pairwise(&mut t, 2, false).unwrap();
        assert_eq!(gates, vec![Gate::H(0), Gate::H(1)]);
    }

    #[test]
    fn phase_first_reorders_only() {
        let rows = ["YZ", "ZY"];
        let mut a = Tableau::from_strs(&rows).unwrap();
        let mut b = a.clone();
        let ga = clear_z_pairwise(&mut a, 2, false).unwrap();
        let gb = clear_z_pairwise(&mut b, 2, true).unwrap();
        assert_eq!(a, b);
        assert_eq!(ga[0], Gate::Cz(1, 0));
        assert_eq!(gb[0], Gate::S(0));
        assert_eq!(ga.len(), gb.len());
    }

    #[test]
    fn requires_diagonal_x() {
        let mut t = Tableau::from_strs(&["XX"]).unwrap();
        assert!(matches!(
            clear_z_pairwise(&mut t, 1, false),
            Err(Error::Precondition(_))
        ));
    }
}
