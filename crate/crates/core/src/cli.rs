//! Command-line front end. Exit codes: 0 success, 1 failed check or I/O
//! error, 2 usage or dimension error, 3 simulator cap exceeded.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::gms::{GmsConfig, GmsError};
use crate::report::{gms_report, synth_report, synth_stem, to_pretty, write_atomic, RunManifest, SCHEMA};
use crate::sim::SimError;
use crate::synth::SynthKind;
use crate::verify::{run_suite, DeferredOptions, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "qgms", version, about = "Reversible GF(2) elimination circuits and a Grover-meets-Simon reanalysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a circuit and write its netlist and resource profile.
    Synth {
        kind: Kind,
        #[arg(long)]
        n: usize,
        /// Row count for echelon and rref (defaults to n).
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run a self-checking suite.
    Verify {
        suite: SuiteArg,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate the deferred-measurement attack and the hybrid baseline.
    Gms {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 20)]
        t_max: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Plaintexts checked by the classifier.
        #[arg(long, value_delimiter = ',', default_values_t = [0u64, 1])]
        plaintexts: Vec<u64>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Qge,
    Qgje,
    Echelon,
    Rref,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Gf2,
    Circuits,
    Counting,
    Deferred,
    Gms,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Gf2 => Suite::Gf2,
            SuiteArg::Circuits => Suite::Circuits,
            SuiteArg::Counting => Suite::Counting,
            SuiteArg::Deferred => Suite::Deferred,
            SuiteArg::Gms => Suite::Gms,
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match cli.command {
        Command::Synth { kind, n, m, out } => synth(kind, n, m, out),
        Command::Verify { suite, n, l, out } => verify(suite.into(), DeferredOptions { n, l }, out),
        Command::Gms { m, n, l, t_max, seed, plaintexts, out } => gms(m, n, l, t_max, seed, plaintexts, out),
    }
}

fn io_fail(path: &std::path::Path, e: std::io::Error) -> i32 {
    eprintln!("error: cannot write {}: {e}", path.display());
    EXIT_FAIL
}

fn synth(kind: Kind, n: usize, m: Option<usize>, out: PathBuf) -> i32 {
    let kind = match (kind, m) {
        (Kind::Qge, _) => SynthKind::Qge(n),
        (Kind::Qgje, _) => SynthKind::Qgje(n),
        (Kind::Echelon, m) => SynthKind::RowEchelon(m.unwrap_or(n), n),
        (Kind::Rref, None) => SynthKind::RrefSquare(n),
        (Kind::Rref, Some(m)) if m == n => SynthKind::RrefSquare(n),
        (Kind::Rref, Some(m)) => SynthKind::RrefRect(m, n),
    };
    let manifest = RunManifest::new("synth", json!({ "kind": kind }), vec![]);
    let (circuit, report) = match synth_report(kind, manifest) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let stem = synth_stem(kind);
    for (path, body) in [(out.join(format!("{stem}.txt")), circuit.to_text()), (out.join(format!("{stem}.json")), to_pretty(&report))] {
        if let Err(e) = write_atomic(&path, body.as_bytes()) {
            return io_fail(&path, e);
        }
        println!("wrote {}", path.display());
    }
    EXIT_OK
}

fn verify(suite: Suite, opts: DeferredOptions, out: Option<PathBuf>) -> i32 {
    let report = run_suite(suite, opts);
    for c in &report.checks {
        println!("{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
    }
    let config = json!({ "suite": suite.name(), "n": opts.n, "l": opts.l });
    let body = json!({ "schema": SCHEMA, "manifest": RunManifest::new("verify", config, vec![]), "report": report });
    if let Some(path) = out {
        if let Err(e) = write_atomic(&path, to_pretty(&body).as_bytes()) {
            return io_fail(&path, e);
        }
    }
    println!("{} {}", suite.name(), if report.passed { "passed" } else { "FAILED" });
    if report.passed {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn gms(m: usize, n: usize, l: usize, t_max: usize, seed: u64, plaintexts: Vec<u64>, out: PathBuf) -> i32 {
    let cfg = GmsConfig::from_seed(m, n, l, t_max, seed).and_then(|c| c.with_plaintexts(plaintexts));
    let cfg = match cfg {
        Ok(c) => c,
        Err(e) => return gms_error(e),
    };
    let config = json!({ "m": m, "n": n, "l": l, "t_max": t_max, "plaintexts": cfg.plaintexts });
    let report = match gms_report(&cfg, RunManifest::new("gms", config, vec![seed])) {
        Ok(r) => r,
        Err(e) => return gms_error(e),
    };
    let stem = format!("gms_m{m}_n{n}_l{l}_seed{seed}");
    for (path, body) in [(out.join(format!("{stem}.json")), to_pretty(&report.json)), (out.join(format!("{stem}.csv")), report.csv)] {
        if let Err(e) = write_atomic(&path, body.as_bytes()) {
            return io_fail(&path, e);
        }
        println!("wrote {}", path.display());
    }
    println!(
        "p_max {:.6}  max success {:.6}  qaa max {:.6}  hybrid {:.6} at t = {}",
        report.run.stats.p_max,
        report.run.max_p_marked(),
        report.json["qaa_max_success"].as_f64().unwrap_or(f64::NAN),
        report.hybrid.best_p,
        report.hybrid.best_t
    );
    EXIT_OK
}

fn gms_error(e: GmsError) -> i32 {
    eprintln!("error: {e}");
    match e {
        GmsError::Sim(SimError::QubitCapExceeded { .. }) => EXIT_CAP,
        GmsError::Config(_) | GmsError::Synth(_) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}
