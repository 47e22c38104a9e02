use crate::circuit::Gate;
use crate::error::{Error, Result};
use crate::tableau::Tableau;

use super::pmh::{linear_map_of, log2_block, pmh_best, pmh_resynthesize};
use super::{apply_mapped, check_x_diagonal, Method};

struct Stages {
    pre_s: Vec<Gate>,
    /// CX gates in tableau positions `0..k`.
    cx: Vec<Gate>,
    post: Vec<Gate>,
}

fn run_stages(t: &mut Tableau, k: usize) -> Result<Stages> {
    check_x_diagonal(t, k)?;
    let mut pre_s = Vec::new();
    let mut cx = Vec::new();
    for i in 0..k {
        let parity = (0..=i).filter(|&j| t.z(i, j)).count();
        if parity % 2 == 0 {
            pre_s.push(apply_mapped(t, Gate::S(i))?);
        }
        for j in 0..i {
            if t.z(i, j) {
                t.apply_gate(&Gate::Cx(i, j))?;
                cx.push(Gate::Cx(i, j));
                t.row_sweep(i, j)?;
            }
        }
    }
    let mut post = Vec::with_capacity(2 * k);
    for i in 0..k {
        post.push(apply_mapped(t, Gate::S(i))?);
    }
    for i in 0..k {
        post.push(apply_mapped(t, Gate::H(i))?);
    }
    Ok(Stages { pre_s, cx, post })
}

fn assemble(t: &Tableau, stages: Stages) -> Vec<Gate> {
    let labels = t.labels();
    let mut gates = stages.pre_s;
    gates.extend(stages.cx.iter().map(|g| g.map_qubits(|p| labels[p])));
    gates.extend(stages.post);
    gates
}

/// Clears Z with CX gates and row sweeps, then X with S and H.
///
/// Row `i` starts with a phase gate when the number of ones in
/// `Z[i, 0..=i]` is even: every CX on row `i` flips `Z[i,i]` once, and
/// the final value has to be one. Those phase gates commute with the CX
/// gates of earlier rows, so all of them are emitted first, giving the
/// stage order H, S, CX, S, H.
pub fn clear_z_cnot(t: &mut Tableau, k: usize) -> Result<Vec<Gate>> {
    let stages = run_stages(t, k)?;
    Ok(assemble(t, stages))
}

/// Like [`clear_z_cnot`], with the CX stage re-synthesized by block
/// elimination. The re-synthesized stage replaces the original only when
/// it has fewer gates.
pub fn clear_z_cnot_with(t: &mut Tableau, k: usize, method: Method) -> Result<Vec<Gate>> {
    let mut stages = run_stages(t, k)?;
    if k > 0 && !stages.cx.is_empty() {
        let l = linear_map_of(k, &stages.cx)?;
        let candidate = match method {
            Method::CnotLog2 => pmh_resynthesize(&l, log2_block(k))?,
            Method::CnotBest => pmh_best(&l)?.0,
            Method::CnotBlock(b) => pmh_resynthesize(&l, b.clamp(1, k))?,
            Method::Cnot => stages.cx.clone(),
            m => return Err(Error::InvalidArgument(format!("{m} is not a CX method"))),
        };
        if candidate.len() < stages.cx.len() {
            stages.cx = candidate;
        }
    }
    Ok(assemble(t, stages))
}
