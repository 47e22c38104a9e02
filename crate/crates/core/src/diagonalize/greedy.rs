use crate::circuit::Gate;
use crate::error::Result;
use crate::tableau::Tableau;

use super::{apply_mapped, check_x_diagonal};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GreedyVariant {
    /// Minimize two-qubit gates only.
    Greedy1,
    /// Break two-qubit ties by single-qubit gates.
    Greedy2,
}

#[derive(Clone, Copy, Debug)]
struct Choice {
    target: usize,
    source: Option<usize>,
    two: usize,
    one: usize,
}

fn choose(t: &Tableau, active: &[usize], variant: GreedyVariant) -> Choice {
    let key = |c: &Choice| match variant {
        GreedyVariant::Greedy1 => (c.two, 0),
        GreedyVariant::Greedy2 => (c.two, c.one),
    };
    let mut best: Option<Choice> = None;
    let mut consider = |c: Choice| {
        if best.as_ref().is_none_or(|b| key(&c) < key(b)) {
            best = Some(c);
        }
    };
    for &i in active {
        let two = active.iter().filter(|&&r| r != i && t.z(r, i)).count();
        consider(Choice {
            target: i,
            source: None,
            two,
            one: usize::from(t.z(i, i)) + 1,
        });
    }
    for &i in active {
        for &j in active {
            if i == j {
                continue;
            }
            let dist = active
                .iter()
                .filter(|&&r| r != i && r != j && t.z(r, i) != t.z(r, j))
                .count();
            let fix = t.z(j, j) != t.z(j, i);
            let diag = t.z(i, i) != t.z(i, j);
            consider(Choice {
                target: i,
                source: Some(j),
                two: dist + 1,
                one: usize::from(fix) + usize::from(diag) + 1,
            });
        }
    }
    best.expect("active set is non-empty")
}

/// Clears Z one column at a time, choosing greedily between plain CZ
/// elimination of a column and first sweeping it with another active
/// column by a CX. The first minimum in scan order wins; single columns
/// are scanned before pairs.
pub fn clear_z_greedy(t: &mut Tableau, k: usize, variant: GreedyVariant) -> Result<Vec<Gate>> {
    check_x_diagonal(t, k)?;
    let mut active: Vec<usize> = (0..k).collect();
    let mut gates = Vec::new();
    while !active.is_empty() {
        let c = choose(t, &active, variant);
        let i = c.target;
        if let Some(j) = c.source {
            if t.z(j, j) != t.z(j, i) {
                gates.push(apply_mapped(t, Gate::S(j))?);
            }
            gates.push(apply_mapped(t, Gate::Cx(i, j))?);
            t.row_sweep(i, j)?;
        }
        for &r in &active {
            if r != i && t.z(r, i) {
                gates.push(apply_mapped(t, Gate::Cz(i, r))?);
            }
        }
        if t.z(i, i) {
            gates.push(apply_mapped(t, Gate::S(i))?);
        }
        gates.push(apply_mapped(t, Gate::H(i))?);
        active.retain(|&r| r != i);
    }
    Ok(gates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagonalize::clear_z_pairwise;

    fn two_qubit(gates: &[Gate]) -> usize {
        gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    #[test]
    fn near_identical_columns_use_one_sweep() {
        // Columns 0 and 1 of Z are identical, as are columns 2 and 3.
        let rows = ["XIZZ", "IXZZ", "ZZXI", "ZZIX"];
        let mut t = Tableau::from_strs(&rows).unwrap();
        let g = clear_z_greedy(&mut t, 4, GreedyVariant::Greedy1).unwrap();
        assert!(t.rows().iter().all(|r| r.is_diagonal()));
        let mut p = Tableau::from_strs(&rows).unwrap();
        let pw = clear_z_pairwise(&mut p, 4, false).unwrap();
        assert!(two_qubit(&g) < two_qubit(&pw), "{g:?} vs {pw:?}");
    }

    #[test]
    fn zero_z_matches_pairwise() {
        let rows = ["XII", "IXI", "IIX"];
        for v in [GreedyVariant::Greedy1, GreedyVariant::Greedy2] {
            let mut t = Tableau::from_strs(&rows).unwrap();
            let mut p = t.clone();
            let g = clear_z_greedy(&mut t, 3, v).unwrap();
            let pw = clear_z_pairwise(&mut p, 3, false).unwrap();
            assert_eq!(g, pw);
        }
    }
}
