use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use paulisim::exponentiate::DEFAULT_TRIALS;
use paulisim::hamiltonian::read_hamiltonian;
use paulisim::oracle::{
    circuit_to_unitary, equal_up_to_global_phase, exact_evolution_terms, verify_diagonalization,
    VERIFY_CAP,
};
use paulisim::rng::stream_rng;
use paulisim::sample::{normalize_full_rank, sample_basis};
use paulisim::{
    diagonalize, emit_qasm, partition, run_pipeline, Circuit, DiagConfig, Error, Execution,
    HamiltonianFile, Method, OrderingStrategy, PartitionStrategy, PauliRow, PipelineConfig,
    Synthesis, Tableau,
};

const USAGE: u8 = 1;
const DATA: u8 = 2;
const INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "paulisim",
    version,
    about = "Circuits for sums of commuting Pauli operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Run on a single thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Split a Hamiltonian into commuting sets.
    Partition {
        file: PathBuf,
        #[arg(long, default_value = "sequential")]
        partition: String,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Diagonalize one commuting set and print the Clifford circuit.
    Diagonalize {
        file: PathBuf,
        #[arg(long, default_value = "cz")]
        method: String,
        /// Block size for CX re-synthesis; implies the cnot-block method.
        #[arg(long)]
        block_size: Option<usize>,
        /// Emit phase gates before the CZ stage.
        #[arg(long)]
        phase_first: bool,
        #[arg(long)]
        qasm_out: Option<PathBuf>,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Build the evolution circuit through diagonalization.
    Simulate(RunArgs),
    /// Build the evolution circuit term by term.
    Direct(RunArgs),
    /// Draw a random commuting set.
    Sample {
        #[arg(long)]
        qubits: usize,
        /// Number of terms; defaults to the number of qubits.
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Canonical form of a full-rank commuting set.
    Normalize {
        file: PathBuf,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Check synthesized circuits against dense matrices.
    Verify {
        file: PathBuf,
        #[arg(long, default_value = "cz")]
        method: String,
        #[arg(long)]
        block_size: Option<usize>,
        #[arg(long, default_value = "opt")]
        order: String,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Gate counts of every method on each commuting set.
    Stats {
        file: PathBuf,
        #[arg(long, default_value = "sequential")]
        partition: String,
        #[arg(long, default_value = "opt")]
        order: String,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Args)]
struct RunArgs {
    file: PathBuf,
    /// A diagonalization method, `auto` or `direct`.
    #[arg(long, default_value = "cz")]
    method: String,
    #[arg(long)]
    block_size: Option<usize>,
    #[arg(long, default_value = "sequential")]
    partition: String,
    /// base, opt or rnd.
    #[arg(long, default_value = "opt")]
    order: String,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Evolution time multiplying every coefficient.
    #[arg(long, default_value_t = 1.0)]
    time: f64,
    /// Condition the whole evolution on an extra control qubit.
    #[arg(long)]
    controlled: bool,
    #[arg(long)]
    phase_first: bool,
    #[arg(long)]
    qasm_out: Option<PathBuf>,
    #[arg(long)]
    json_out: Option<PathBuf>,
    /// Print per-partition statistics as CSV.
    #[arg(long)]
    csv: bool,
}

/// A failure together with its exit code.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let mut inner = &e;
        while let Error::InPartition { source, .. } = inner {
            inner = source;
        }
        let code = if e.is_internal() {
            INTERNAL
        } else if matches!(inner, Error::InvalidArgument(_)) {
            USAGE
        } else {
            DATA
        };
        Failure(code, e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn write_file(path: &Path, text: &str) -> Outcome {
    std::fs::write(path, text)
        .map_err(|e| Failure(USAGE, format!("cannot write {}: {e}", path.display())))
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn parse_method(method: &str, block_size: Option<usize>) -> Result<Method, Error> {
    match block_size {
        Some(0) => Err(Error::InvalidArgument("block size must be positive".into())),
        Some(b) => Ok(Method::CnotBlock(b)),
        None => method.parse(),
    }
}

fn parse_order(order: &str, trials: usize, seed: u64) -> Result<OrderingStrategy, Error> {
    match order.parse()? {
        OrderingStrategy::Rnd { .. } => Ok(OrderingStrategy::rnd(trials, seed)),
        o => Ok(o),
    }
}

fn single_set(file: &HamiltonianFile) -> Result<Tableau, Error> {
    Tableau::from_terms(&file.terms)
}

fn gate_list(c: &Circuit) -> Vec<String> {
    c.gates.iter().map(|g| g.to_string()).collect()
}

fn cmd_partition(file: &Path, strategy: &str, json_out: Option<&Path>, exec: Execution) -> Outcome {
    let h = read_hamiltonian(file)?;
    let strategy: PartitionStrategy = strategy.parse()?;
    let p = partition(&h.terms, strategy, exec)?;
    for (i, set) in p.sets.iter().enumerate() {
        let labels: Vec<String> = set.iter().map(|&t| h.terms[t].label()).collect();
        println!("{i}: {}", labels.join(" "));
    }
    if let Some(path) = json_out {
        let v = json!({
            "schema_version": paulisim::report::SCHEMA_VERSION,
            "strategy": strategy.name(),
            "sets": p.sets,
        });
        write_file(path, &pretty(&v))?;
    }
    Ok(())
}

fn cmd_diagonalize(
    file: &Path,
    method: Method,
    phase_first: bool,
    qasm_out: Option<&Path>,
    json_out: Option<&Path>,
) -> Outcome {
    let h = read_hamiltonian(file)?;
    let t = single_set(&h)?;
    let angles: Vec<f64> = h.terms.iter().map(|t| t.coeff).collect();
    let r = diagonalize(
        &t,
        DiagConfig {
            method,
            phase_first,
        },
    )?
    .with_angles(&angles)?;
    let s = r.circuit.stats();
    println!("method {method}, rank {}", r.rank);
    println!(
        "cnot {} (cz {}), single-qubit {}, depth {}",
        s.cnot_count, s.cz_count, s.single_qubit_count, s.depth
    );
    for (term, d) in h.terms.iter().zip(&r.diag) {
        println!("{} -> {d}", term.label());
    }
    if let Some(path) = qasm_out {
        write_file(path, &emit_qasm(&r.circuit))?;
    }
    if let Some(path) = json_out {
        let v = json!({
            "schema_version": paulisim::report::SCHEMA_VERSION,
            "method": method.name(),
            "rank": r.rank,
            "stats": s,
            "diagonal": r.diag.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "gates": gate_list(&r.circuit),
        });
        write_file(path, &pretty(&v))?;
    }
    Ok(())
}

fn cmd_run(args: &RunArgs, direct: bool, exec: Execution) -> Outcome {
    let h = read_hamiltonian(&args.file)?;
    let synthesis = if direct {
        Synthesis::Direct
    } else {
        match args.block_size {
            Some(_) => Synthesis::Diagonalize(parse_method(&args.method, args.block_size)?),
            None => args.method.parse()?,
        }
    };
    let config = PipelineConfig {
        partition: args.partition.parse()?,
        synthesis,
        ordering: parse_order(&args.order, args.trials, args.seed)?,
        phase_first: args.phase_first,
        time: args.time,
        controlled: args.controlled,
        exec,
    };
    let out = run_pipeline(&h, &config)?;
    let r = &out.report;
    if args.csv {
        print!("{}", r.to_csv());
    } else {
        let a = &r.aggregate;
        println!(
            "{} partitions (median size {}, max {}), method {}",
            r.summary.count, r.summary.median_size, r.summary.max_size, r.provenance.method
        );
        println!(
            "cnot {} (cz {}), single-qubit {}, depth {}, cnot-exp {}",
            a.cnot_count, a.cz_count, a.single_qubit_count, a.depth, a.cnot_exp
        );
    }
    if let Some(path) = &args.qasm_out {
        write_file(path, &emit_qasm(&out.combined(h.n)))?;
    }
    if let Some(path) = &args.json_out {
        write_file(path, &r.to_json())?;
    }
    Ok(())
}

fn cmd_sample(qubits: usize, rows: Option<usize>, seed: u64, out: Option<&Path>) -> Outcome {
    let m = rows.unwrap_or(qubits);
    let mut rng = stream_rng(seed, 0);
    let t = sample_basis(m, qubits, &mut rng)?;
    let text: String = t.rows().iter().map(|r| format!("1.0 {r}\n")).collect();
    match out {
        Some(path) => write_file(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_normalize(file: &Path, json_out: Option<&Path>) -> Outcome {
    let h = read_hamiltonian(file)?;
    let rows: Vec<PauliRow> = h
        .terms
        .iter()
        .map(|t| PauliRow {
            neg: t.coeff < 0.0,
            ..t.to_row()
        })
        .collect();
    let cf = normalize_full_rank(&Tableau::from_rows(h.n, rows)?)?;
    println!("# Z block | Hadamard | sign");
    for r in cf.to_bit_rows() {
        let s = r.to_string();
        let (z, rest) = s.split_at(h.n);
        let (had, sign) = rest.split_at(1);
        println!("{z} | {had} | {sign}");
    }
    if let Some(path) = json_out {
        let v = json!({
            "schema_version": paulisim::report::SCHEMA_VERSION,
            "z": (0..h.n).map(|i| cf.z.row(i).to_string()).collect::<Vec<_>>(),
            "hadamard_set": cf.hadamard_set,
            "signs": cf.signs,
        });
        write_file(path, &pretty(&v))?;
    }
    Ok(())
}

fn cmd_verify(file: &Path, method: Method, ordering: OrderingStrategy, exec: Execution) -> Outcome {
    let h = read_hamiltonian(file)?;
    if h.n > VERIFY_CAP {
        return Err(Error::SizeCap {
            qubits: h.n,
            limit: VERIFY_CAP,
        }
        .into());
    }
    let t = single_set(&h)?;
    let r = diagonalize(&t, method)?;
    if !verify_diagonalization(&r, &t)? {
        return Err(Failure(
            INTERNAL,
            format!("{method}: diagonalization check failed"),
        ));
    }
    let want = exact_evolution_terms(&h.terms, 1.0)?;
    let config = PipelineConfig {
        synthesis: Synthesis::Diagonalize(method),
        ordering,
        exec,
        ..Default::default()
    };
    let sim = run_pipeline(&h, &config)?.combined(h.n);
    let direct = run_pipeline(
        &h,
        &PipelineConfig {
            synthesis: Synthesis::Direct,
            ..config
        },
    )?
    .combined(h.n);
    for (label, c) in [(method.name(), sim), ("direct".to_string(), direct)] {
        let u = circuit_to_unitary(&c)?.ancilla_block();
        if !equal_up_to_global_phase(&u, &want, 1e-9) {
            return Err(Failure(
                INTERNAL,
                format!("{label}: circuit differs from exact evolution"),
            ));
        }
        println!("{label}: ok");
    }
    Ok(())
}

fn cmd_stats(
    file: &Path,
    strategy: &str,
    ordering: OrderingStrategy,
    csv: bool,
    exec: Execution,
) -> Outcome {
    let h = read_hamiltonian(file)?;
    let strategy: PartitionStrategy = strategy.parse()?;
    let syntheses = Method::ALL
        .iter()
        .map(|&m| Synthesis::Diagonalize(m))
        .chain([Synthesis::Direct, Synthesis::Auto]);
    if csv {
        println!("method,partitions,cnot,cz,single_qubit,depth,cnot_exp");
    } else {
        println!(
            "{:<12} {:>6} {:>8} {:>8} {:>8} {:>8}",
            "method", "sets", "cnot", "1-qubit", "depth", "cnot-exp"
        );
    }
    for synthesis in syntheses {
        let config = PipelineConfig {
            partition: strategy,
            synthesis,
            ordering,
            exec,
            ..Default::default()
        };
        let r = run_pipeline(&h, &config)?.report;
        let a = r.aggregate;
        if csv {
            println!(
                "{synthesis},{},{},{},{},{},{}",
                r.summary.count,
                a.cnot_count,
                a.cz_count,
                a.single_qubit_count,
                a.depth,
                a.cnot_exp
            );
        } else {
            println!(
                "{:<12} {:>6} {:>8} {:>8} {:>8} {:>8}",
                synthesis.name(),
                r.summary.count,
                a.cnot_count,
                a.single_qubit_count,
                a.depth,
                a.cnot_exp
            );
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match cli.command {
        Command::Partition {
            file,
            partition,
            json_out,
        } => cmd_partition(&file, &partition, json_out.as_deref(), exec),
        Command::Diagonalize {
            file,
            method,
            block_size,
            phase_first,
            qasm_out,
            json_out,
        } => cmd_diagonalize(
            &file,
            parse_method(&method, block_size)?,
            phase_first,
            qasm_out.as_deref(),
            json_out.as_deref(),
        ),
        Command::Simulate(args) => cmd_run(&args, false, exec),
        Command::Direct(args) => cmd_run(&args, true, exec),
        Command::Sample {
            qubits,
            rows,
            seed,
            out,
        } => cmd_sample(qubits, rows, seed, out.as_deref()),
        Command::Normalize { file, json_out } => cmd_normalize(&file, json_out.as_deref()),
        Command::Verify {
            file,
            method,
            block_size,
            order,
            trials,
            seed,
        } => cmd_verify(
            &file,
            parse_method(&method, block_size)?,
            parse_order(&order, trials, seed)?,
            exec,
        ),
        Command::Stats {
            file,
            partition,
            order,
            trials,
            seed,
            csv,
        } => cmd_stats(
            &file,
            &partition,
            parse_order(&order, trials, seed)?,
            csv,
            exec,
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
