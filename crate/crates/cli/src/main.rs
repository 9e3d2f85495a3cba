//! Command-line driver: runs, exact probabilities, space measurement,
//! sweeps, bound fits, audits and padding.
//!
//! Exit codes: 0 accept / pass, 1 reject / fail, 2 usage or input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};

use rtspace::analysis::{
    equivalence_audit, fit_bound_with_offset, space_sweep, Bound, Generator, LengthSpec, SweepReport,
};
use rtspace::constructions::{builtin, builtin_names, pad_machine};
use rtspace::machine::{parse_machine, render_word, serialize_machine, tokenize, Alphabet, Mode};
use rtspace::metering::{default_cap, measure};
use rtspace::{Budget, Decision, Executor, LanguageId, Machine, Ratio, SpaceMode, Verdict};

#[derive(Parser)]
#[command(name = "rtspace", version, about = "Simulate and meter real-time and one-way automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a machine on one input (branching machines are decided exhaustively)
    Run {
        /// Built-in name or path to a machine file
        machine: String,
        /// Input, e.g. `a^8` or `a0a1a10a11`
        input: String,
        /// Print every configuration as a JSON line
        #[arg(long)]
        trace: bool,
    },
    /// Exact acceptance probability of a probabilistic machine
    Prob { machine: String, input: String },
    /// Measure strong, middle or weak space on one input
    Measure {
        machine: String,
        input: String,
        #[arg(long, value_parser = parse_mode)]
        mode: SpaceMode,
        /// Space cap; defaults to 4·(⌈log2(n+2)⌉+2)
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Measure space over a family of inputs and write a report
    Sweep {
        machine: String,
        #[arg(long, value_parser = parse_mode)]
        mode: SpaceMode,
        /// unary:<sym>, ld, erb, lj<j>, gcm, jk or jk-padded
        #[arg(long)]
        generator: String,
        /// members:<count>, range:<lo>:<hi>:<step> or pow2:<lo>:<hi>
        #[arg(long)]
        lengths: String,
        /// Report file; `.json` selects the JSON mirror, anything else CSV
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Fit space ≤ c·f(n) + offset to a report
    Fit {
        report: PathBuf,
        /// log, loglog, sqrt, root:<j> or linear
        #[arg(long)]
        bound: String,
        #[arg(long, default_value_t = 0.0)]
        offset: f64,
        #[arg(long)]
        json: bool,
    },
    /// Compare a machine with a membership oracle on every short string
    Audit {
        machine: String,
        #[arg(long)]
        lang: String,
        #[arg(long)]
        maxlen: usize,
        /// Comma-separated alphabet; defaults to the language's own
        #[arg(long, value_delimiter = ',')]
        alphabet: Option<Vec<String>>,
    },
    /// Decide membership with a simulation-free oracle
    Oracle { lang: String, input: String },
    /// Write the κ-padded real-time version of a one-way machine
    Pad {
        machinefile: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// List the built-in machines
    ListMachines,
}

fn parse_mode(s: &str) -> Result<SpaceMode, String> {
    s.parse()
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(msg.into())
}

fn load_machine(spec: &str) -> Result<Machine> {
    if let Some(m) = builtin(spec) {
        return Ok(m);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(usage(format!("unknown machine {spec:?}: not a built-in name (see list-machines) or a file")));
    }
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_machine(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_input(text: &str, alphabet: &Alphabet) -> Result<Vec<String>> {
    tokenize(text, alphabet).map_err(|e| usage(format!("input {text:?}: {e}")))
}

fn code(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn verdict_name(accept: bool) -> &'static str {
    if accept {
        "accept"
    } else {
        "reject"
    }
}

fn execute(cmd: Command) -> Result<ExitCode> {
    match cmd {
        Command::Run { machine, input, trace } => {
            let m = load_machine(&machine)?;
            let ex = Executor::new(&m)?;
            let w = parse_input(&input, &m.input_alphabet)?;
            if m.mode == Mode::Deterministic {
                let r = ex.run(&w, trace)?;
                for c in r.trace.iter().flatten() {
                    println!("{}", serde_json::to_string(c)?);
                }
                let accept = r.verdict == Verdict::Accept;
                println!("{}, steps={}", verdict_name(accept), r.steps);
                Ok(code(accept))
            } else {
                if trace {
                    bail!("--trace needs a deterministic machine");
                }
                let accept = ex.decide(&w, Budget::Unbounded)? == Decision::Accept;
                println!("{}", verdict_name(accept));
                Ok(code(accept))
            }
        }
        Command::Prob { machine, input } => {
            let m = load_machine(&machine)?;
            let ex = Executor::new(&m)?;
            let w = parse_input(&input, &m.input_alphabet)?;
            let p = ex.acceptance_probability(&w)?;
            println!("{p}");
            Ok(code(p > Ratio::new(1.into(), 2.into())))
        }
        Command::Measure { machine, input, mode, cap } => {
            let m = load_machine(&machine)?;
            let ex = Executor::new(&m)?;
            let w = parse_input(&input, &m.input_alphabet)?;
            let cap = cap.unwrap_or_else(|| default_cap(w.len()));
            let r = measure(&ex, mode, &w, cap)?;
            let space = r.space.map_or_else(|| "none".to_string(), |s| s.to_string());
            println!("{} space={space} cap={cap}{}", mode.name(), if r.truncated { " truncated" } else { "" });
            Ok(code(r.space.is_some()))
        }
        Command::Sweep { machine, mode, generator, lengths, out, cap } => {
            let m = load_machine(&machine)?;
            let g: Generator = generator.parse().map_err(usage)?;
            let spec: LengthSpec = lengths.parse().map_err(usage)?;
            let inputs = g.inputs(&spec).map_err(usage)?;
            let report = space_sweep(&m, mode, &format!("{g} {spec}"), &inputs, cap)?;
            let text = if out.extension().is_some_and(|e| e == "json") { report.to_json() } else { report.to_csv() };
            std::fs::write(&out, text).with_context(|| format!("writing {}", out.display()))?;
            println!("{} rows written to {}", report.rows.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Fit { report, bound, offset, json } => {
            let b: Bound = bound.parse().map_err(usage)?;
            let text = std::fs::read_to_string(&report).with_context(|| format!("reading {}", report.display()))?;
            let r = if text.trim_start().starts_with('{') {
                SweepReport::from_json(&text)
            } else {
                SweepReport::from_csv(&text)
            }
            .map_err(|e| usage(format!("{}: {e}", report.display())))?;
            let fit = fit_bound_with_offset(&r, b, offset)?;
            if json {
                print!("{}", fit.to_json());
            } else {
                println!(
                    "bound={} max_ratio={} at n={} input={} ({} rows used)",
                    fit.bound, fit.max_ratio, fit.arg_max.n, fit.arg_max.input, fit.rows_used
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Audit { machine, lang, maxlen, alphabet } => {
            let m = load_machine(&machine)?;
            let lang: LanguageId = lang.parse().map_err(usage)?;
            let alphabet = alphabet.unwrap_or_else(|| lang.alphabet());
            let ex = Executor::new(&m)?;
            let out = equivalence_audit(&ex, lang, &alphabet, maxlen)?;
            match &out.counterexample {
                None => println!("pass: {} strings agree", out.checked),
                Some(w) => println!("counterexample: {} (after {} strings)", render_word(w), out.checked),
            }
            Ok(code(out.passed()))
        }
        Command::Oracle { lang, input } => {
            let lang: LanguageId = lang.parse().map_err(usage)?;
            let w = parse_input(&input, &Alphabet::new(lang.alphabet()))?;
            let member = lang.is_member(&w);
            println!("{}", if member { "member" } else { "non-member" });
            Ok(code(member))
        }
        Command::Pad { machinefile, out } => {
            let m = load_machine(&machinefile)?;
            let pm = pad_machine(&m).map_err(|e| usage(e.to_string()))?;
            std::fs::write(&out, serialize_machine(&pm)).with_context(|| format!("writing {}", out.display()))?;
            println!("{} written to {}", pm.name, out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::ListMachines => {
            for (name, about) in builtin_names() {
                println!("{name:<14} {about}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
