//! Time-evolution circuits for sets of Pauli terms.
//!
//! Two constructions are provided. The diagonalization route conjugates a
//! ladder of diagonal exponentials by one Clifford `U`; the direct route
//! changes basis per term. Both compute parities onto an ancilla at qubit
//! `n` and rotate it with `RZ(θ) = exp(iθσ_z)`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;

use crate::bits::BitRow;
use crate::circuit::{peephole_cancel, Circuit, Gate};
use crate::diagonalize::{diagonalize, DiagConfig, DiagonalTerm};
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::pauli::{Pauli, PauliTerm};
use crate::rng::stream_rng;
use crate::tableau::Tableau;

pub const DEFAULT_TRIALS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderingStrategy {
    /// Input order.
    Base,
    /// Deterministic optimized order.
    Opt,
    /// Best of `trials` randomized optimizations; trial 0 is the canonical one.
    Rnd { trials: usize, seed: u64 },
}

impl OrderingStrategy {
    pub fn rnd(trials: usize, seed: u64) -> Self {
        OrderingStrategy::Rnd { trials, seed }
    }

    pub fn name(&self) -> &'static str {
        match self {
            OrderingStrategy::Base => "base",
            OrderingStrategy::Opt => "opt",
            OrderingStrategy::Rnd { .. } => "rnd",
        }
    }

    fn trials(&self) -> Result<usize> {
        match *self {
            OrderingStrategy::Rnd { trials: 0, .. } => Err(Error::InvalidArgument(
                "at least one trial is required".into(),
            )),
            OrderingStrategy::Rnd { trials, .. } => Ok(trials),
            _ => Ok(1),
        }
    }
}

impl fmt::Display for OrderingStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrderingStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "base" => Ok(OrderingStrategy::Base),
            "opt" => Ok(OrderingStrategy::Opt),
            "rnd" => Ok(OrderingStrategy::rnd(DEFAULT_TRIALS, 0)),
            _ => Err(Error::InvalidArgument(format!("unknown ordering '{s}'"))),
        }
    }
}

fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(Error::InvalidArgument(format!(
            "qubit order has {} entries, expected {n}",
            order.len()
        )));
    }
    for &q in order {
        if q >= n || std::mem::replace(&mut seen[q], true) {
            return Err(Error::InvalidArgument(format!(
                "{order:?} is not a permutation"
            )));
        }
    }
    Ok(())
}

fn check_lengths(terms: &[DiagonalTerm]) -> Result<usize> {
    let n = terms.first().map_or(0, DiagonalTerm::n_qubits);
    for t in terms {
        if t.n_qubits() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: t.n_qubits(),
            });
        }
    }
    Ok(n)
}

/// Stable reflected ordering along `qubit_order`.
///
/// Terms are split on the first qubit with `I` before `Z`; within the `I`
/// half the next qubit again puts `I` first, within the `Z` half `Z`
/// first, and so on. Level `l` of that recursion sorts on the parity of
/// the mask over the first `l + 1` qubits of the order.
pub fn order_terms(terms: &[DiagonalTerm], qubit_order: &[usize]) -> Result<Vec<DiagonalTerm>> {
    let n = check_lengths(terms)?;
    check_permutation(qubit_order, n)?;
    let mut keyed: Vec<(BitRow, &DiagonalTerm)> = terms
        .iter()
        .map(|t| {
            let mut key = BitRow::zeros(n);
            let mut parity = false;
            for (l, &q) in qubit_order.iter().enumerate() {
                parity ^= t.zmask.get(q);
                key.set(l, parity);
            }
            (key, t)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.iter().cmp(b.0.iter()));
    Ok(keyed.into_iter().map(|(_, t)| t.clone()).collect())
}

/// CX count of the cancelled parity ladders for terms in the given order.
/// Identity masks contribute nothing.
pub fn exp_cx_cost(terms: &[DiagonalTerm]) -> usize {
    let masks: Vec<&BitRow> = terms
        .iter()
        .map(|t| &t.zmask)
        .filter(|m| !m.is_zero())
        .collect();
    let (Some(first), Some(last)) = (masks.first(), masks.last()) else {
        return 0;
    };
    first.count_ones()
        + masks
            .windows(2)
            .map(|w| w[0].xor(w[1]).count_ones())
            .sum::<usize>()
        + last.count_ones()
}

/// Parity-ladder circuit on `n` system qubits plus the ancilla `n`.
///
/// Between consecutive rotations only the qubits where the masks differ
/// are toggled. Identity masks become global phase.
pub fn build_exponentiation_circuit(n: usize, terms: &[DiagonalTerm]) -> Result<Circuit> {
    let m = check_lengths(terms)?;
    if !terms.is_empty() && m != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: m,
        });
    }
    let mut c = Circuit::with_ancilla(n);
    let anc = n;
    let mut current = BitRow::zeros(n);
    for t in terms {
        if t.zmask.is_zero() {
            c.global_phase += t.signed_angle();
            continue;
        }
        for q in current.xor(&t.zmask).ones() {
            c.push(Gate::Cx(q, anc));
        }
        c.push(Gate::Rz(anc, t.signed_angle()));
        current = t.zmask.clone();
    }
    for q in current.ones() {
        c.push(Gate::Cx(q, anc));
    }
    Ok(c)
}

fn canonical_order(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn random_order(n: usize, seed: u64, trial: usize) -> Vec<usize> {
    let mut order = canonical_order(n);
    if trial > 0 {
        order.shuffle(&mut stream_rng(seed, trial as u64));
    }
    order
}

/// Orders diagonal terms for the exponentiation core.
///
/// `Opt` keeps the canonical reflected order unless the input order is
/// strictly cheaper; `Rnd` additionally tries random qubit orders and keeps
/// the first cheapest.
pub fn choose_order(
    terms: &[DiagonalTerm],
    strategy: OrderingStrategy,
    exec: Execution,
) -> Result<Vec<DiagonalTerm>> {
    let n = check_lengths(terms)?;
    let trials = strategy.trials()?;
    let candidates: Vec<Vec<DiagonalTerm>> = match strategy {
        OrderingStrategy::Base => return Ok(terms.to_vec()),
        OrderingStrategy::Opt => vec![order_terms(terms, &canonical_order(n))?],
        OrderingStrategy::Rnd { seed, .. } => exec
            .map_range(trials, |t| order_terms(terms, &random_order(n, seed, t)))
            .into_iter()
            .collect::<Result<_>>()?,
    };
    let mut best = terms.to_vec();
    let mut best_cost = exp_cx_cost(&best);
    for cand in candidates.into_iter().rev() {
        let cost = exp_cx_cost(&cand);
        if cost <= best_cost {
            best = cand;
            best_cost = cost;
        }
    }
    Ok(best)
}

fn term_lengths(terms: &[PauliTerm]) -> Result<usize> {
    let n = terms.first().map_or(0, PauliTerm::n_qubits);
    for t in terms {
        if t.n_qubits() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: t.n_qubits(),
            });
        }
    }
    Ok(n)
}

/// Evolution circuit `U† · ladders · U` for a commuting set, where `U`
/// diagonalizes every term. Coefficients are the rotation angles.
pub fn build_simulation_circuit(
    terms: &[PauliTerm],
    config: impl Into<DiagConfig>,
    strategy: OrderingStrategy,
) -> Result<Circuit> {
    build_simulation_circuit_with(terms, config, strategy, Execution::default())
}

pub fn build_simulation_circuit_with(
    terms: &[PauliTerm],
    config: impl Into<DiagConfig>,
    strategy: OrderingStrategy,
    exec: Execution,
) -> Result<Circuit> {
    let n = term_lengths(terms)?;
    if terms.is_empty() {
        return Ok(Circuit::with_ancilla(0));
    }
    let tableau = Tableau::from_terms(terms)?;
    let angles: Vec<f64> = terms.iter().map(|t| t.coeff).collect();
    let diag = diagonalize(&tableau, config)?.with_angles(&angles)?;
    let ordered = choose_order(&diag.diag, strategy, exec)?;
    let core = build_exponentiation_circuit(n, &ordered)?;

    let mut c = Circuit::with_ancilla(n);
    c.extend(diag.circuit.gates.iter().copied());
    c.extend(core.gates.iter().copied());
    c.extend(diag.circuit.inverse().gates);
    c.global_phase = core.global_phase;
    Ok(peephole_cancel(&c))
}

fn all_commute(terms: &[PauliTerm]) -> bool {
    let rows: Vec<_> = terms.iter().map(PauliTerm::to_row).collect();
    rows.iter()
        .enumerate()
        .all(|(i, a)| rows[i + 1..].iter().all(|b| a.commutes_with(b)))
}

fn basis_cost(p: Pauli) -> usize {
    match p {
        Pauli::X => 2,
        Pauli::Y => 4,
        _ => 0,
    }
}

fn shared(a: &PauliTerm, b: &PauliTerm, q: usize) -> bool {
    a.letters[q] != Pauli::I && a.letters[q] == b.letters[q]
}

/// Greedy term order: each step appends the unused term adding the fewest
/// CX gates after cancellation against the previous term, breaking ties by
/// added single-qubit gates and then by position.
fn greedy_direct_order(terms: &[PauliTerm], start: &[usize]) -> Vec<usize> {
    let mut remaining = start.to_vec();
    let mut order = Vec::with_capacity(start.len());
    let mut last: Option<usize> = None;
    while !remaining.is_empty() {
        let mut best: Option<((usize, usize), usize)> = None;
        for (pos, &r) in remaining.iter().enumerate() {
            let t = &terms[r];
            let (mut cx, mut one) = (0, 1);
            for (q, &p) in t.letters.iter().enumerate() {
                if p == Pauli::I {
                    continue;
                }
                if last.is_some_and(|l| shared(&terms[l], t, q)) {
                    continue;
                }
                cx += 2;
                one += basis_cost(p);
            }
            if best.is_none_or(|(k, _)| (cx, one) < k) {
                best = Some(((cx, one), pos));
            }
        }
        let (_, pos) = best.expect("remaining is non-empty");
        let r = remaining.remove(pos);
        order.push(r);
        last = Some(r);
    }
    order
}

/// Basis change, parity ladder and rotation per term, followed by
/// peephole cancellation. Ladders start with the qubits shared with the
/// previous term and end with those shared with the next, so that adjacent
/// ladders cancel.
fn direct_circuit_in_order(n: usize, terms: &[&PauliTerm]) -> Circuit {
    let anc = n;
    let mut c = Circuit::with_ancilla(n);
    for (idx, t) in terms.iter().enumerate() {
        let support: Vec<usize> = (0..n).filter(|&q| t.letters[q] != Pauli::I).collect();
        if support.is_empty() {
            c.global_phase += t.coeff;
            continue;
        }
        let prev = idx.checked_sub(1).map(|i| terms[i]);
        let next = terms.get(idx + 1).copied();
        let with_prev = |q: &usize| prev.is_some_and(|p| shared(p, t, *q));
        let with_next = |q: &usize| next.is_some_and(|p| shared(p, t, *q));

        for &q in &support {
            match t.letters[q] {
                Pauli::X => c.push(Gate::H(q)),
                Pauli::Y => c.extend([Gate::S(q), Gate::H(q)]),
                _ => {}
            }
        }
        let compute = support
            .iter()
            .filter(|q| with_prev(q))
            .chain(support.iter().filter(|q| !with_prev(q)));
        for &q in compute {
            c.push(Gate::Cx(q, anc));
        }
        let n_y = support
            .iter()
            .filter(|&&q| t.letters[q] == Pauli::Y)
            .count();
        let angle = if n_y % 2 == 1 { -t.coeff } else { t.coeff };
        c.push(Gate::Rz(anc, angle));
        let uncompute = support
            .iter()
            .filter(|q| !with_next(q))
            .chain(support.iter().rev().filter(|q| with_next(q)));
        for &q in uncompute {
            c.push(Gate::Cx(q, anc));
        }
        for &q in &support {
            match t.letters[q] {
                Pauli::X => c.push(Gate::H(q)),
                Pauli::Y => c.extend([Gate::H(q), Gate::Sdg(q)]),
                _ => {}
            }
        }
    }
    peephole_cancel(&c)
}

fn direct_for(terms: &[PauliTerm], order: &[usize]) -> Circuit {
    let n = terms[0].n_qubits();
    let refs: Vec<&PauliTerm> = order.iter().map(|&i| &terms[i]).collect();
    direct_circuit_in_order(n, &refs)
}

/// Direct exponentiation of each term in turn.
///
/// Term order is only changed when all terms commute. `Opt` runs the
/// greedy order from the input sequence; `Rnd` runs it from shuffled
/// sequences (trial 0 unshuffled). The input order is kept whenever it is
/// strictly cheaper.
pub fn build_direct_circuit(terms: &[PauliTerm], strategy: OrderingStrategy) -> Result<Circuit> {
    build_direct_circuit_with(terms, strategy, Execution::default())
}

pub fn build_direct_circuit_with(
    terms: &[PauliTerm],
    strategy: OrderingStrategy,
    exec: Execution,
) -> Result<Circuit> {
    let n = term_lengths(terms)?;
    let trials = strategy.trials()?;
    if terms.is_empty() {
        return Ok(Circuit::with_ancilla(n));
    }
    let identity: Vec<usize> = (0..terms.len()).collect();
    let base = direct_for(terms, &identity);
    if strategy == OrderingStrategy::Base || !all_commute(terms) {
        return Ok(base);
    }
    let seed = match strategy {
        OrderingStrategy::Rnd { seed, .. } => seed,
        _ => 0,
    };
    let candidates = exec.map_range(trials, |t| {
        let mut start = identity.clone();
        if t > 0 {
            start.shuffle(&mut stream_rng(seed, t as u64));
        }
        direct_for(terms, &greedy_direct_order(terms, &start))
    });
    let mut best = base;
    let mut best_cx = best.stats().cnot_count;
    for cand in candidates.into_iter().rev() {
        let cx = cand.stats().cnot_count;
        if cx <= best_cx {
            best = cand;
            best_cx = cx;
        }
    }
    Ok(best)
}

/// Makes every rotation conditional on a new control qubit 0; all other
/// qubits shift up by one. Global phase becomes a rotation on the control
/// so the result is the exact controlled operation.
pub fn make_controlled(c: &Circuit) -> Circuit {
    let mut out = Circuit {
        n_qubits: c.n_qubits + 1,
        gates: Vec::with_capacity(c.gates.len() + 1),
        uses_ancilla: c.uses_ancilla,
        global_phase: 0.0,
    };
    for g in &c.gates {
        let g = g.map_qubits(|q| q + 1);
        out.push(match g {
            Gate::Rz(q, angle) => Gate::CRz {
                control: 0,
                target: q,
                angle,
            },
            g => g,
        });
    }
    if c.global_phase != 0.0 {
        // diag(1, e^{iφ}) = e^{iφ/2} RZ(-φ/2)
        out.push(Gate::Rz(0, -c.global_phase / 2.0));
        out.global_phase = c.global_phase / 2.0;
    }
    out
}
