//! Grouping Pauli terms into mutually commuting sets.
//!
//! The coloring strategies color the non-commutation graph, so each color
//! class is a commuting set. All strategies are deterministic.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::Execution;
use crate::pauli::{PauliRow, PauliTerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartitionStrategy {
    Sequential,
    LargestFirst,
    IndependentSet,
}

impl PartitionStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            PartitionStrategy::Sequential => "sequential",
            PartitionStrategy::LargestFirst => "largest-first",
            PartitionStrategy::IndependentSet => "independent-set",
        }
    }
}

impl fmt::Display for PartitionStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PartitionStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "sequential" => Ok(PartitionStrategy::Sequential),
            "largest-first" => Ok(PartitionStrategy::LargestFirst),
            "independent-set" => Ok(PartitionStrategy::IndependentSet),
            _ => Err(Error::InvalidArgument(format!(
                "unknown partition strategy '{s}'"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    /// Index sets into the input term list, each in ascending order.
    pub sets: Vec<Vec<usize>>,
    pub strategy: PartitionStrategy,
}

impl Serialize for PartitionStrategy {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl Partition {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.sets.iter().map(Vec::len).collect()
    }
}

/// Adjacency lists of the non-commutation graph, each ascending.
pub fn commutation_graph(rows: &[PauliRow], exec: Execution) -> Vec<Vec<usize>> {
    exec.map_range(rows.len(), |i| {
        (0..rows.len())
            .filter(|&j| j != i && !rows[i].commutes_with(&rows[j]))
            .collect()
    })
}

fn rows_of(terms: &[PauliTerm]) -> Result<Vec<PauliRow>> {
    let n = terms.first().map_or(0, PauliTerm::n_qubits);
    terms
        .iter()
        .map(|t| {
            if t.n_qubits() == n {
                Ok(t.to_row())
            } else {
                Err(Error::LengthMismatch {
                    expected: n,
                    found: t.n_qubits(),
                })
            }
        })
        .collect()
}

/// First-fit in input order; no graph is built.
pub fn partition_sequential(terms: &[PauliTerm]) -> Result<Partition> {
    let rows = rows_of(terms)?;
    let mut sets: Vec<Vec<usize>> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        match sets
            .iter_mut()
            .find(|s| s.iter().all(|&j| rows[j].commutes_with(r)))
        {
            Some(s) => s.push(i),
            None => sets.push(vec![i]),
        }
    }
    finish(&rows, sets, PartitionStrategy::Sequential)
}

fn largest_first(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..adj.len()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].len()), v));
    let mut color = vec![usize::MAX; adj.len()];
    let mut n_colors = 0;
    for v in order {
        let mut used = vec![false; n_colors + 1];
        for &u in &adj[v] {
            if color[u] != usize::MAX {
                used[color[u]] = true;
            }
        }
        let c = used
            .iter()
            .position(|&b| !b)
            .expect("one color is always free");
        color[v] = c;
        n_colors = n_colors.max(c + 1);
    }
    let mut sets = vec![Vec::new(); n_colors];
    for (v, &c) in color.iter().enumerate() {
        sets[c].push(v);
    }
    sets
}

/// Repeatedly removes a maximal independent set, built by taking the
/// vertex of lowest degree among the remaining candidates (ties by index)
/// and discarding its neighbors.
fn independent_sets(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut uncolored = vec![true; n];
    let mut left = n;
    let mut sets = Vec::new();
    while left > 0 {
        let mut candidate = uncolored.clone();
        let mut set = Vec::new();
        loop {
            let pick = (0..n)
                .filter(|&v| candidate[v])
                .min_by_key(|&v| (adj[v].iter().filter(|&&u| candidate[u]).count(), v));
            let Some(v) = pick else { break };
            set.push(v);
            candidate[v] = false;
            for &u in &adj[v] {
                candidate[u] = false;
            }
        }
        for &v in &set {
            uncolored[v] = false;
        }
        left -= set.len();
        set.sort_unstable();
        sets.push(set);
    }
    sets
}

/// Greedy coloring of the non-commutation graph.
pub fn partition_coloring(
    terms: &[PauliTerm],
    strategy: PartitionStrategy,
    exec: Execution,
) -> Result<Partition> {
    let rows = rows_of(terms)?;
    let adj = commutation_graph(&rows, exec);
    let sets = match strategy {
        PartitionStrategy::LargestFirst => largest_first(&adj),
        PartitionStrategy::IndependentSet => independent_sets(&adj),
        PartitionStrategy::Sequential => return partition_sequential(terms),
    };
    finish(&rows, sets, strategy)
}

pub fn partition(
    terms: &[PauliTerm],
    strategy: PartitionStrategy,
    exec: Execution,
) -> Result<Partition> {
    match strategy {
        PartitionStrategy::Sequential => partition_sequential(terms),
        s => partition_coloring(terms, s, exec),
    }
}

fn finish(
    rows: &[PauliRow],
    sets: Vec<Vec<usize>>,
    strategy: PartitionStrategy,
) -> Result<Partition> {
    for s in &sets {
        for (a, &i) in s.iter().enumerate() {
            for &j in &s[a + 1..] {
                if !rows[i].commutes_with(&rows[j]) {
                    return Err(Error::Internal(format!(
                        "partition set holds anticommuting terms {i} and {j}"
                    )));
                }
            }
        }
    }
    Ok(Partition { sets, strategy })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn terms(s: &[&str]) -> Vec<PauliTerm> {
        s.iter()
            .map(|x| PauliTerm::parse(x, 1.0).unwrap())
            .collect()
    }

    const ALL: [PartitionStrategy; 3] = [
        PartitionStrategy::Sequential,
        PartitionStrategy::LargestFirst,
        PartitionStrategy::IndependentSet,
    ];

    #[test]
    fn graph_edges() {
        let rows: Vec<_> = terms(&["X", "Z"]).iter().map(PauliTerm::to_row).collect();
        assert_eq!(
            commutation_graph(&rows, Execution::Sequential),
            vec![vec![1], vec![0]]
        );
        let rows: Vec<_> = terms(&["XX", "ZZ", "XZ"])
            .iter()
            .map(PauliTerm::to_row)
            .collect();
        assert_eq!(
            commutation_graph(&rows, Execution::Parallel),
            vec![vec![2], vec![2], vec![0, 1]]
        );
        let rows: Vec<_> = terms(&["ZZ", "ZI", "IZ"])
            .iter()
            .map(PauliTerm::to_row)
            .collect();
        assert!(commutation_graph(&rows, Execution::Sequential)
            .iter()
            .all(Vec::is_empty));
    }

    #[test]
    fn sequential_first_fit() {
        let p = partition_sequential(&terms(&["X", "Z", "Y"])).unwrap();
        assert_eq!(p.sets, vec![vec![0], vec![1], vec![2]]);
        let p = partition_sequential(&terms(&["ZI", "IZ", "XX"])).unwrap();
        assert_eq!(p.sets, vec![vec![0, 1], vec![2]]);
        let p = partition_sequential(&terms(&["ZZ", "XX", "YY"])).unwrap();
        assert_eq!(p.sets, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn triangle_and_empty_graph() {
        for s in ALL {
            let p = partition(&terms(&["X", "Y", "Z"]), s, Execution::Sequential).unwrap();
            assert_eq!(p.len(), 3, "{s}");
            let p = partition(&terms(&["ZI", "IZ", "ZZ"]), s, Execution::Sequential).unwrap();
            assert_eq!(p.len(), 1, "{s}");
            assert!(partition(&[], s, Execution::Sequential).unwrap().is_empty());
        }
    }

    #[test]
    fn strategy_names_round_trip() {
        for s in ALL {
            assert_eq!(s.name().parse::<PartitionStrategy>().unwrap(), s);
        }
    }
}
