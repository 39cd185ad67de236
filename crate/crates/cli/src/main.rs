use std::fmt::Write as _;
use std::io::{Read, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use equitable::io::{action_to_json, hw_to_json, module_from_json, module_to_json, normal_form_to_json, pbw_to_json};
use equitable::present::{reduce_with, rules, DEFAULT_STEP_CAP};
use equitable::{
    build_l, build_l_eps, enumerate_allowed, extract_highest_weight, normalize, parse_expr, parse_translated,
    run_suite, Alphabet, Bounds, Eps, Gen, ModuleRep, QValue, Status, Strategy, SuiteName,
};

#[derive(Parser)]
#[command(name = "equitable", version, about = "Exact computations in U_q(sl2) and its positive even subalgebra")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Write an expression in x, y, z (and nx, ny, nz, x2, y2, z2) as a
    /// combination of x^r y^s z^t.
    Normalize {
        /// Expression; read from stdin when absent or `-`.
        expr: Option<String>,
    },
    /// Rewrite an expression in nx, ny, nz, x2, y2, z2 into allowed words.
    Reduce {
        expr: Option<String>,
        #[arg(long, default_value = "leftmost")]
        strategy: Strategy,
    },
    /// List the reduction rules.
    Rules {
        /// Check each rule against the PBW normal form.
        #[arg(long)]
        check: bool,
    },
    /// Matrices of L(d) or, with --eps, of L(d, eps).
    Module {
        #[arg(long)]
        d: usize,
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<Eps>,
        /// Emit only this generator's matrix.
        #[arg(long)]
        gen: Option<String>,
        /// Evaluate entries at this rational q.
        #[arg(long)]
        q: Option<QValue>,
    },
    /// Highest-weight data of a module read from JSON.
    Classify {
        /// JSON file `{dim, actions: {gen: [[entry]]}, q?}`; `-` for stdin.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        q: Option<QValue>,
    },
    /// Run a verification suite; exits nonzero if any check fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: SuiteName,
        #[arg(long, default_value_t = 5)]
        max_len: usize,
        #[arg(long, default_value_t = 8)]
        max_d: usize,
        #[arg(long)]
        q: Option<QValue>,
    },
    /// List allowed words up to a length.
    Enumerate {
        #[arg(long)]
        max_len: usize,
    },
}

fn read_arg(expr: Option<String>) -> Result<String> {
    match expr.as_deref() {
        Some(s) if s != "-" => Ok(s.to_string()),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
    }
}

fn print_json<T: serde::Serialize + ?Sized>(out: &mut String, v: &T) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(())
}

fn print_module(out: &mut String, m: &ModuleRep, gen: Option<Gen>, format: Format) -> Result<()> {
    match (format, gen) {
        (Format::Json, Some(g)) => print_json(out, &action_to_json(m, g)?),
        (Format::Json, None) => print_json(out, &module_to_json(m)),
        (Format::Text, Some(g)) => {
            write!(out, "{}", m.action(g)?)?;
            Ok(())
        }
        (Format::Text, None) => {
            for (g, a) in m.actions() {
                writeln!(out, "{g}:")?;
                write!(out, "{a}")?;
            }
            Ok(())
        }
    }
}

fn run(cli: Cli, out: &mut String) -> Result<ExitCode> {
    let format = cli.format;
    match cli.command {
        Command::Normalize { expr } => {
            let p = parse_translated(&read_arg(expr)?)?;
            let n = normalize(&p);
            match format {
                Format::Text => writeln!(out, "{n}")?,
                Format::Json => print_json(out, &pbw_to_json(&n))?,
            }
        }
        Command::Reduce { expr, strategy } => {
            let p = parse_expr(&read_arg(expr)?, Alphabet::A)?;
            let n = reduce_with(&p, strategy, DEFAULT_STEP_CAP)?;
            match format {
                Format::Text => writeln!(out, "{n}")?,
                Format::Json => print_json(out, &normal_form_to_json(&n))?,
            }
        }
        Command::Rules { check } => {
            let table = rules();
            let status: Vec<Option<bool>> = table
                .iter()
                .map(|r| check.then(|| normalize(&(&equitable::NCPoly::word(r.lhs.clone()) - &r.rhs)).is_zero()))
                .collect();
            match format {
                Format::Text => {
                    for (r, s) in table.iter().zip(&status) {
                        match s {
                            Some(true) => writeln!(out, "{r}    [sound]")?,
                            Some(false) => writeln!(out, "{r}    [UNSOUND]")?,
                            None => writeln!(out, "{r}")?,
                        }
                    }
                }
                Format::Json => {
                    let rows: Vec<_> = table
                        .iter()
                        .zip(&status)
                        .map(|(r, s)| {
                            let mut v = json!({
                                "lhs": r.lhs.to_string(),
                                "rhs": r.rhs.to_string(),
                                "pivot": r.pivot.to_string(),
                                "swap": r.swap,
                            });
                            if let Some(s) = s {
                                v["sound"] = json!(s);
                            }
                            v
                        })
                        .collect();
                    print_json(out, &rows)?;
                }
            }
            if status.contains(&Some(false)) {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Module { d, eps, gen, q } => {
            let mut m = match eps {
                Some(e) => build_l_eps(d, e),
                None => build_l(d),
            };
            if let Some(q) = &q {
                m = m.specialize(q)?;
            }
            let gen = match gen {
                Some(s) => {
                    let g = Gen::from_symbol(&s).with_context(|| format!("unknown generator `{s}`"))?;
                    if g.alphabet() != m.alphabet() {
                        bail!("generator `{g}` does not act on this module; use --eps for x, y, z");
                    }
                    Some(g)
                }
                None => None,
            };
            print_module(out, &m, gen, format)?;
        }
        Command::Classify { input, q } => {
            let src = if input.as_os_str() == "-" {
                read_arg(None)?
            } else {
                std::fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?
            };
            let m = module_from_json(&src, q)?;
            let h = extract_highest_weight(&m)?;
            match format {
                Format::Json => print_json(out, &hw_to_json(&h))?,
                Format::Text => {
                    writeln!(out, "d = {}", h.d)?;
                    writeln!(out, "lambda = {}", h.lambda)?;
                    for (i, a) in h.alpha.iter().enumerate() {
                        writeln!(out, "alpha_{i} = {a}")?;
                    }
                }
            }
        }
        Command::Verify { suite, max_len, max_d, q } => {
            let report = run_suite(suite, &Bounds { max_word_len: max_len, max_d, q });
            match format {
                Format::Json => print_json(out, &report)?,
                Format::Text => {
                    for c in &report.checks {
                        writeln!(out, "{:<8} {}  {}", c.status.to_string(), c.id, c.reference)?;
                        if c.status != Status::Pass {
                            if let Some(w) = &c.witness {
                                writeln!(out, "         witness: {w}")?;
                            }
                        }
                        for (label, r) in [("literal", &c.literal), ("corrected", &c.corrected)] {
                            if let Some(r) = r {
                                let holds = if r.holds { "holds" } else { "does not hold" };
                                writeln!(out, "         {label}: {} ({holds})", r.statement)?;
                            }
                        }
                        if let Some(n) = &c.note {
                            writeln!(out, "         note: {n}")?;
                        }
                    }
                    writeln!(
                        out,
                        "{}: {} pass, {} flagged, {} fail",
                        report.suite,
                        report.passed(),
                        report.flagged(),
                        report.failed()
                    )?;
                }
            }
            if !report.is_success() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Enumerate { max_len } => {
            let words = enumerate_allowed(max_len);
            let names: Vec<String> = words.iter().map(ToString::to_string).collect();
            match format {
                Format::Text => {
                    for w in &names {
                        writeln!(out, "{w}")?;
                    }
                }
                Format::Json => print_json(out, &names)?,
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let mut out = String::new();
    let code = match run(Cli::parse(), &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    };
    match std::io::stdout().lock().write_all(out.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        _ => code,
    }
}
