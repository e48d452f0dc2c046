//! `stabnet`: run the relation suite, simulate circuit files, and analyze
//! truth tables.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use stabnet::generators::GeneratorSet;
use stabnet::logic::{polarity_vector, verify_hadamard_column_indexing};
use stabnet::oracles::{crosscheck, MAX_DENSE_WIDTH};
use stabnet::verify::{canonical_suite, suite_passes};
use stabnet::{
    compile, delta_entropy, delta_entropy_distinct, is_reversible, BooleanLinearForm, Circuit,
    RelationReport, TruthTable, DEFAULT_TOL,
};

const EXIT_OK: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;

/// Random Pauli strings drawn per cross-check, on top of the stabilizer
/// generators and single-qubit Paulis.
const CROSSCHECK_RANDOM_PAULIS: usize = 32;

#[derive(Parser, Debug)]
#[command(name = "stabnet", version, about = "Stabilizer tensor networks from copy, XOR, Hadamard and phase generators")]
struct Cli {
    /// Tolerance for identity and agreement checks.
    #[arg(long, global = true, env = "STABNET_TOL", default_value_t = DEFAULT_TOL)]
    tol: f64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Aligned table for reading.
    Human,
    /// One JSON object per line, stable field order.
    Records,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the full relation suite.
    Verify {
        /// Flip one entry of the copy tensor before verifying.
        #[arg(long, hide = true, value_name = "FLAT_INDEX")]
        fault_flip_copy: Option<usize>,
    },
    /// Contract a circuit file and print its output amplitudes.
    Simulate {
        file: PathBuf,
        /// Compare against the dense and tableau oracles.
        #[arg(long)]
        crosscheck: bool,
        /// Seed for the random Pauli strings used by --crosscheck.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Entropy change and reversibility of a truth-table file.
    Entropy { file: PathBuf },
    /// Polarity vectors of all linear forms on n bits, checked against H^⊗n.
    Polarity {
        #[arg(long)]
        n: usize,
    },
}

/// A failure to read or parse input; maps to exit code 2.
struct InputError(String);

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn bits(k: usize, n: usize) -> String {
    format!("{:0n$b}", k, n = n)
}

fn print_reports(reports: &[RelationReport], format: Format) {
    match format {
        Format::Records => {
            for r in reports {
                println!("{}", r.to_record_line());
            }
        }
        Format::Human => {
            for r in reports {
                println!("{r}");
            }
        }
    }
}

fn cmd_verify(tol: f64, format: Format, fault: Option<usize>) -> Result<u8, InputError> {
    let mut gens = GeneratorSet::standard();
    if let Some(flat) = fault {
        if flat >= 8 {
            return Err(InputError(format!("copy tensor has 8 entries, got index {flat}")));
        }
        gens = gens.with_copy_entry_flipped(flat);
    }
    let reports = canonical_suite(&gens, tol);
    print_reports(&reports, format);
    let passed = suite_passes(&reports);
    if format == Format::Human {
        let unexpected = reports.iter().filter(|r| r.is_unexpected_failure()).count();
        println!(
            "{} relations, {} unexpected failures: {}",
            reports.len(),
            unexpected,
            if passed { "PASS" } else { "FAIL" }
        );
    }
    Ok(if passed { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_simulate(path: &Path, crosscheck_on: bool, seed: u64, tol: f64, format: Format) -> Result<u8, InputError> {
    let mut circuit: Circuit = read(path)?
        .parse()
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    if circuit.input().is_none() {
        circuit.set_input(vec![false; circuit.width()]).expect("width matches");
    }
    let n = circuit.width();
    let state = compile(&circuit)
        .contract()
        .map_err(|e| InputError(format!("contraction failed: {e}")))?;
    for (k, a) in state.data().iter().enumerate() {
        match format {
            Format::Records => println!("{}", json!({ "basis": bits(k, n), "re": a.re, "im": a.im })),
            Format::Human => println!("|{}⟩  {:+.6} {:+.6}i", bits(k, n), a.re, a.im),
        }
    }
    if !crosscheck_on {
        return Ok(EXIT_OK);
    }
    if n > MAX_DENSE_WIDTH {
        return Err(InputError(format!("--crosscheck supports at most {MAX_DENSE_WIDTH} wires")));
    }
    let check = crosscheck(&circuit, seed, CROSSCHECK_RANDOM_PAULIS)
        .map_err(|e| InputError(format!("crosscheck failed: {e}")))?;
    let agrees = check.agrees(tol);
    match format {
        Format::Records => println!(
            "{}",
            json!({
                "crosscheck": if agrees { "agree" } else { "disagree" },
                "amplitude_deviation": check.amplitude_deviation,
                "scalar_magnitude": check.scalar_magnitude,
                "expectation_deviation": check.expectation_deviation,
                "paulis_checked": check.paulis_checked,
            })
        ),
        Format::Human => {
            println!("dense vs network (up to global phase): {:.3e}", check.amplitude_deviation);
            println!("global scalar magnitude: {:.12}", check.scalar_magnitude);
            println!(
                "tableau expectations ({} Pauli strings): {:.3e}",
                check.paulis_checked, check.expectation_deviation
            );
            println!("crosscheck: {}", if agrees { "agree" } else { "DISAGREE" });
        }
    }
    Ok(if agrees { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_entropy(path: &Path, format: Format) -> Result<u8, InputError> {
    let table: TruthTable = read(path)?
        .parse()
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let ds = delta_entropy(&table);
    let distinct = delta_entropy_distinct(&table);
    let reversible = is_reversible(&table);
    let hist = table.preimage_histogram();
    match format {
        Format::Records => {
            let hist: Vec<_> = hist.iter().map(|(k, v)| json!([k, v])).collect();
            println!(
                "{}",
                json!({
                    "bits": table.bits(),
                    "delta_s": ds,
                    "delta_s_distinct": distinct,
                    "reversible": reversible,
                    "preimage_histogram": hist,
                })
            );
        }
        Format::Human => {
            println!("bits: {}", table.bits());
            println!("ΔS (sum over inputs, sign as written): {ds:.12}");
            println!("n − H(output) (distinct outputs): {distinct:.12}");
            println!("reversible: {}", if reversible { "yes" } else { "no" });
            let hist: Vec<String> = hist.iter().map(|(k, v)| format!("{k}:{v}")).collect();
            println!("preimage histogram (count:outputs): {}", hist.join(" "));
        }
    }
    Ok(EXIT_OK)
}

fn cmd_polarity(n: usize, tol: f64, format: Format) -> Result<u8, InputError> {
    let h = stabnet::generators::hadamard();
    let report = verify_hadamard_column_indexing(&h, n, tol).map_err(|e| InputError(e.to_string()))?;
    for c in 0..1usize << n {
        let form = BooleanLinearForm::from_index(n, c);
        let signs: Vec<i8> = polarity_vector(&form)
            .data()
            .iter()
            .map(|a| if a.re < 0.0 { -1 } else { 1 })
            .collect();
        match format {
            Format::Records => println!("{}", json!({ "c": bits(c, n), "polarity": signs })),
            Format::Human => {
                let s: String = signs.iter().map(|&v| if v < 0 { '-' } else { '+' }).collect();
                println!("c={}  {}", bits(c, n), s);
            }
        }
    }
    print_reports(std::slice::from_ref(&report), format);
    Ok(if report.status.holds() { EXIT_OK } else { EXIT_FAIL })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_OK });
        }
    };
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        eprintln!("error: tolerance must be a positive number, got {}", cli.tol);
        return ExitCode::from(EXIT_INPUT);
    }
    let result = match &cli.command {
        Command::Verify { fault_flip_copy } => cmd_verify(cli.tol, cli.format, *fault_flip_copy),
        Command::Simulate { file, crosscheck, seed } => {
            cmd_simulate(file, *crosscheck, *seed, cli.tol, cli.format)
        }
        Command::Entropy { file } => cmd_entropy(file, cli.format),
        Command::Polarity { n } => cmd_polarity(*n, cli.tol, cli.format),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
