use proptest::prelude::*;
use rand::Rng;

use paulisim::bits::BitRow;
use paulisim::diagonalize::DiagConfig;
use paulisim::exponentiate::{
    build_direct_circuit_with, build_simulation_circuit_with, make_controlled,
};
use paulisim::oracle::{
    circuit_to_unitary, equal_up_to_global_phase, exact_evolution_terms, verify_diagonalization,
    DenseUnitary,
};
use paulisim::partition::partition;
use paulisim::rng::stream_rng;
use paulisim::sample::{
    canonical_equal, compose_basis, sample_full_rank_binary, sample_generators,
};
use paulisim::{
    choose_order, diagonalize, emit_qasm, parse_hamiltonian, peephole_cancel, Circuit,
    DiagonalTerm, Execution, Gate, Method, OrderingStrategy, PartitionStrategy, PauliRow,
    PauliTerm, Tableau,
};

fn commuting_set(seed: u64, n: usize, m: usize) -> Vec<PauliTerm> {
    let mut rng = stream_rng(seed, 0);
    let gen = sample_generators(n, &mut rng).unwrap();
    (0..m)
        .map(|_| {
            let mut row = PauliRow::identity(n);
            for g in BitRow::random(n, &mut rng).ones() {
                row.mul_assign(gen.row(g)).unwrap();
            }
            let angle: f64 = rng.random_range(-1.0..1.0);
            PauliTerm::new(row.letters(), if row.neg { -angle } else { angle }).unwrap()
        })
        .collect()
}

fn any_terms(seed: u64, n: usize, m: usize) -> Vec<PauliTerm> {
    let mut rng = stream_rng(seed, 1);
    (0..m)
        .map(|_| {
            let row = PauliRow {
                x: BitRow::random(n, &mut rng),
                z: BitRow::random(n, &mut rng),
                neg: false,
            };
            PauliTerm::new(row.letters(), rng.random_range(-1.0..1.0)).unwrap()
        })
        .collect()
}

fn random_circuit(seed: u64, n: usize, len: usize) -> Circuit {
    let mut rng = stream_rng(seed, 2);
    let mut c = Circuit::new(n);
    for _ in 0..len {
        let a = rng.random_range(0..n);
        let b = (a + rng.random_range(1..n)) % n;
        c.push(match rng.random_range(0..7) {
            0 => Gate::H(a),
            1 => Gate::S(a),
            2 => Gate::Sdg(a),
            3 => Gate::X(a),
            4 => Gate::Cx(a, b),
            5 => Gate::Cz(a, b),
            _ => Gate::Rz(a, 0.25),
        });
    }
    c
}

fn system(c: &Circuit) -> DenseUnitary {
    let u = circuit_to_unitary(c).unwrap();
    if c.uses_ancilla {
        u.ancilla_block()
    } else {
        u
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn diagonalization_maps_rows_to_recorded_terms(seed: u64, n in 1usize..=5, m in 1usize..=8) {
        let t = Tableau::from_terms(&commuting_set(seed, n, m)).unwrap();
        for method in Method::ALL.into_iter().chain([Method::CnotBlock(2)]) {
            let r = diagonalize(&t, method).unwrap();
            prop_assert!(verify_diagonalization(&r, &t).unwrap(), "{}", method);
            prop_assert!(r.rank <= n);
        }
    }

    #[test]
    fn phase_first_variant_is_exact(seed: u64, n in 1usize..=4, m in 1usize..=6) {
        let t = Tableau::from_terms(&commuting_set(seed, n, m)).unwrap();
        let r = diagonalize(&t, DiagConfig { method: Method::Cz, phase_first: true }).unwrap();
        prop_assert!(verify_diagonalization(&r, &t).unwrap());
    }

    #[test]
    fn anticommuting_input_is_rejected(seed: u64, n in 1usize..=4) {
        let mut ts = commuting_set(seed, n, 2);
        let mut letters = vec![paulisim::Pauli::I; n];
        letters[0] = paulisim::Pauli::X;
        ts.push(PauliTerm::new(letters.clone(), 1.0).unwrap());
        letters[0] = paulisim::Pauli::Z;
        ts.push(PauliTerm::new(letters, 1.0).unwrap());
        let t = Tableau::from_terms(&ts).unwrap();
        prop_assert!(diagonalize(&t, Method::Cz).is_err());
    }

    #[test]
    fn peephole_is_idempotent_and_exact(seed: u64, n in 2usize..=4, len in 0usize..40) {
        let c = random_circuit(seed, n, len);
        let once = peephole_cancel(&c);
        prop_assert_eq!(&peephole_cancel(&once), &once);
        prop_assert!(once.len() <= c.len());
        prop_assert!(system(&once).max_abs_diff(&system(&c)) < 1e-12);
    }

    #[test]
    fn controlled_circuits_are_exact(seed: u64, n in 1usize..=3, m in 1usize..=4) {
        let ts = commuting_set(seed, n, m);
        let c = build_simulation_circuit_with(&ts, Method::Greedy2, OrderingStrategy::Opt, Execution::Sequential).unwrap();
        let cc = make_controlled(&c);
        let u = system(&cc);
        let v = exact_evolution_terms(&ts, 1.0).unwrap();
        let d = v.dim();
        for r in 0..2 * d {
            for col in 0..2 * d {
                let want = match (r < d, col < d) {
                    (true, true) if r == col => num_complex::Complex64::new(1.0, 0.0),
                    (false, false) => v.get(r - d, col - d),
                    _ => num_complex::Complex64::new(0.0, 0.0),
                };
                prop_assert!((u.get(r, col) - want).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn execution_modes_agree(seed: u64, n in 1usize..=6, m in 1usize..=10) {
        let ts = commuting_set(seed, n, m);
        let rnd = OrderingStrategy::rnd(16, seed);
        let a = build_direct_circuit_with(&ts, rnd, Execution::Sequential).unwrap();
        let b = build_direct_circuit_with(&ts, rnd, Execution::Parallel).unwrap();
        prop_assert_eq!(a, b);
        let a = build_simulation_circuit_with(&ts, Method::Cnot, rnd, Execution::Sequential).unwrap();
        let b = build_simulation_circuit_with(&ts, Method::Cnot, rnd, Execution::Parallel).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn ordering_never_worse_than_input(seed: u64, n in 1usize..=8, m in 0usize..=12) {
        let mut rng = stream_rng(seed, 3);
        let ts: Vec<DiagonalTerm> = (0..m)
            .map(|_| DiagonalTerm::new(BitRow::random(n, &mut rng), rng.random(), 0.1))
            .collect();
        let base = paulisim::exp_cx_cost(&ts);
        let opt = choose_order(&ts, OrderingStrategy::Opt, Execution::Sequential).unwrap();
        prop_assert!(paulisim::exp_cx_cost(&opt) <= base);
        let masks = |v: &[DiagonalTerm]| {
            let mut m: Vec<BitRow> = v.iter().map(|t| t.zmask.clone()).collect();
            m.sort();
            m
        };
        prop_assert_eq!(masks(&opt), masks(&ts));
    }

    #[test]
    fn partitions_cover_and_commute(seed: u64, n in 1usize..=5, m in 0usize..=16) {
        let ts = any_terms(seed, n, m);
        for s in [PartitionStrategy::Sequential, PartitionStrategy::LargestFirst, PartitionStrategy::IndependentSet] {
            let p = partition(&ts, s, Execution::Parallel).unwrap();
            let mut seen: Vec<usize> = p.sets.iter().flatten().copied().collect();
            seen.sort_unstable();
            prop_assert_eq!(seen, (0..m).collect::<Vec<_>>());
            for set in &p.sets {
                for &i in set {
                    for &j in set {
                        prop_assert!(ts[i].to_row().commutes_with(&ts[j].to_row()));
                    }
                }
            }
        }
    }

    #[test]
    fn same_group_from_different_bases(seed: u64, n in 1usize..=8) {
        let mut rng = stream_rng(seed, 4);
        let gen = sample_generators(n, &mut rng).unwrap();
        let (b1, _) = sample_full_rank_binary(n, n, &mut rng).unwrap();
        let (b2, _) = sample_full_rank_binary(n + 2, n, &mut rng).unwrap();
        let t1 = compose_basis(&gen, &b1, Some(&mut rng)).unwrap();
        let t2 = compose_basis(&gen, &b2, Some(&mut rng)).unwrap();
        prop_assert!(canonical_equal(&t1, &t2).unwrap());
    }

    #[test]
    fn hamiltonian_text_round_trip(seed: u64, n in 1usize..=6, m in 0usize..=10) {
        let ts = any_terms(seed, n, m);
        let text: String = ts.iter().map(|t| format!("{} {}\n", t.coeff, t.label())).collect();
        let h = parse_hamiltonian(&text).unwrap();
        prop_assert_eq!(h.terms, ts);
    }

    #[test]
    fn qasm_is_stable_and_well_formed(seed: u64, n in 2usize..=5, len in 0usize..30) {
        let c = random_circuit(seed, n, len);
        let q = emit_qasm(&c);
        prop_assert_eq!(&q, &emit_qasm(&c));
        let mut lines = q.lines();
        prop_assert_eq!(lines.next(), Some("OPENQASM 2.0;"));
        prop_assert_eq!(lines.next(), Some("include \"qelib1.inc\";"));
        let gates = q.lines().filter(|l| !l.starts_with("//") && !l.starts_with("OPENQASM") && !l.starts_with("include") && !l.starts_with("qreg")).count();
        prop_assert_eq!(gates, c.len());
    }
}

#[test]
fn simulation_of_random_sets_matches_evolution() {
    for seed in 0..20 {
        let ts = commuting_set(seed, 4, 6);
        let want = exact_evolution_terms(&ts, 1.0).unwrap();
        for method in Method::ALL {
            let c = build_simulation_circuit_with(
                &ts,
                method,
                OrderingStrategy::Opt,
                Execution::Parallel,
            )
            .unwrap();
            assert!(
                equal_up_to_global_phase(&system(&c), &want, 1e-9),
                "{method}"
            );
        }
    }
}
