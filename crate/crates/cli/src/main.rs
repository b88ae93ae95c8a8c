use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use semidual::config::{parse_config_with, parse_element, Diagnostic, Overrides, ProblemConfig};
use semidual::dual::{check_dual, transfer_local_equiv};
use semidual::examples::{run_suite, suite_json, suite_table};
use semidual::l1::{convolve, module_action_left, module_action_right, L1Elem, LInfElem};
use semidual::report::{render_text, report_json, to_pretty, transfer_json};
use semidual::semigroup::{Side, SideSel};
use semidual::verdict::{Level, Verdict};

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_FAILURE: u8 = 4;

/// Decide whether a weighted semigroup algebra ℓ¹(S,ω) is a dual Banach
/// algebra with predual c₀(S).
#[derive(Parser)]
#[command(name = "semidual", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CheckFlags {
    /// Explicit pairs, e.g. "(1,1) (2,3)".
    #[arg(long)]
    pairs: Option<String>,
    /// Largest coordinate sampled when validating tail annotations.
    #[arg(long)]
    tail_budget: Option<u64>,
    /// Thresholds for exceptional sets, e.g. "0.1,0.001".
    #[arg(long)]
    epsilons: Option<String>,
    /// Exact rational arithmetic (default).
    #[arg(long, conflicts_with = "float")]
    exact: bool,
    /// Floating-point arithmetic for weights.
    #[arg(long)]
    float: bool,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SideFlag {
    #[arg(long)]
    left: bool,
    #[arg(long)]
    right: bool,
}

impl SideFlag {
    fn side(&self) -> Side {
        if self.left {
            Side::Left
        } else {
            Side::Right
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide one-sided and two-sided duality.
    Check {
        config: PathBuf,
        #[command(flatten)]
        flags: CheckFlags,
        /// Write the full JSON report to this path ("-" for standard output).
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Include wall-clock timings in the JSON report.
        #[arg(long)]
        timings: bool,
    },
    /// Print t⁻¹s (--left) or st⁻¹ (--right).
    Quotient {
        config: PathBuf,
        #[command(flatten)]
        side: SideFlag,
        s: String,
        t: String,
    },
    /// Print the convolution f * g.
    Convolve { config: PathBuf, f: String, g: String },
    /// Print φ·f (--right, arguments φ f) or f·φ (--left, arguments f φ).
    Action {
        config: PathBuf,
        #[command(flatten)]
        side: SideFlag,
        a: String,
        b: String,
    },
    /// Decide weak cancellativity.
    Cancellative {
        config: PathBuf,
        #[arg(long, value_enum)]
        side: Option<SideArg>,
    },
    /// Run the built-in example suite.
    Examples {
        #[arg(long)]
        json: bool,
        #[arg(long, hide = true, value_name = "ROW")]
        inject_failure: Option<String>,
    },
}

enum Failure {
    Input(String),
    Other(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Other(_) => EXIT_FAILURE,
        }
    }
}

fn diagnostics(path: &Path, d: &[Diagnostic]) -> Failure {
    let lines: Vec<String> = d
        .iter()
        .map(|x| if x.line == 0 { format!("command line: [{}] {}", x.code, x.message) } else { format!("{}:{x}", path.display()) })
        .collect();
    Failure::Input(lines.join("\n"))
}

fn load(path: &Path, flags: Option<&CheckFlags>) -> Result<ProblemConfig, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes).map_err(|e| {
        let valid = &e.as_bytes()[..e.utf8_error().valid_up_to()];
        let line = valid.iter().filter(|b| **b == b'\n').count() + 1;
        Failure::Input(format!("{}:{line}: [utf8] input is not valid UTF-8", path.display()))
    })?;
    let mut ov = Overrides::default();
    if let Some(f) = flags {
        if let Some(p) = &f.pairs {
            ov.set("pairs", p.clone());
        }
        if let Some(t) = f.tail_budget {
            ov.set("tail_budget", t.to_string());
        }
        if let Some(e) = &f.epsilons {
            ov.set("epsilons", e.clone());
        }
        if f.float {
            ov.set("arithmetic", "float");
        } else if f.exact {
            ov.set("arithmetic", "exact");
        }
    }
    let cfg = parse_config_with(&text, &ov).map_err(|d| diagnostics(path, &d))?;
    let has_budget = cfg.echo().get("check").is_some_and(|c| c.contains_key("budget"));
    match std::env::var("SEMIDUAL_BUDGET") {
        Ok(b) if !has_budget => {
            ov.set("budget", b);
            parse_config_with(&text, &ov).map_err(|d| diagnostics(path, &d))
        }
        _ => Ok(cfg),
    }
}

fn verdict_code(v: &Verdict) -> u8 {
    match v.level {
        Level::YesUniversal | Level::YesSampled => EXIT_YES,
        Level::No => EXIT_NO,
        Level::Unknown => EXIT_UNKNOWN,
    }
}

fn other<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Other(e.to_string())
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn write_json(path: &Path, text: &str) -> Result<(), Failure> {
    if path.as_os_str() == "-" {
        print!("{text}");
        Ok(())
    } else {
        fs::write(path, text).map_err(|e| Failure::Other(format!("{}: {e}", path.display())))
    }
}

fn cmd_check(config: &Path, flags: &CheckFlags, json: Option<&Path>, timings: bool) -> Result<u8, Failure> {
    let start = Instant::now();
    let cfg = load(config, Some(flags))?;
    let loaded = start.elapsed().as_secs_f64();
    let spec = &cfg.check;
    let (report, transfer) = match &cfg.weight2 {
        Some(w2) => {
            let t = transfer_local_equiv(&cfg.semigroup, &cfg.weight, w2, spec).map_err(other)?;
            (t.first.clone(), Some(t))
        }
        None => (check_dual(&cfg.semigroup, &cfg.weight, spec).map_err(other)?, None),
    };
    let mut times = BTreeMap::new();
    times.insert("load_seconds".to_string(), loaded);
    times.insert("total_seconds".to_string(), start.elapsed().as_secs_f64());
    let to_stdout = json.is_some_and(|p| p.as_os_str() == "-");
    if !to_stdout {
        print!("{}", render_text(&report));
        if let Some(t) = &transfer {
            println!("second weight: {}", t.second.weight);
            println!("locally equivalent: {}", t.local_equivalence.summary());
            println!("second weight both: {}", t.second.both.summary());
        }
    }
    if let Some(path) = json {
        let j = match &transfer {
            Some(t) => transfer_json(t, Some(&cfg), spec),
            None => report_json(&report, Some(&cfg), spec, timings.then_some(&times)),
        };
        write_json(path, &to_pretty(&j))?;
    }
    Ok(verdict_code(&report.both))
}

fn cmd_quotient(config: &Path, side: Side, s: &str, t: &str) -> Result<u8, Failure> {
    let cfg = load(config, None)?;
    let carrier = cfg.semigroup.carrier();
    let s = parse_element(s, carrier).map_err(Failure::Input)?;
    let t = parse_element(t, carrier).map_err(Failure::Input)?;
    let q = cfg.semigroup.quotient(side, &s, &t).map_err(input)?;
    println!("{}", q.fmt_in(carrier));
    Ok(EXIT_YES)
}

fn cmd_convolve(config: &Path, f: &str, g: &str) -> Result<u8, Failure> {
    let cfg = load(config, None)?;
    let carrier = cfg.semigroup.carrier();
    let f = L1Elem::parse(f, carrier).map_err(input)?;
    let g = L1Elem::parse(g, carrier).map_err(input)?;
    println!("{}", convolve(&cfg.semigroup, &f, &g).map_err(other)?);
    Ok(EXIT_YES)
}

fn cmd_action(config: &Path, side: Side, a: &str, b: &str) -> Result<u8, Failure> {
    let cfg = load(config, None)?;
    let (s, carrier) = (&cfg.semigroup, cfg.semigroup.carrier());
    let combo = match side {
        Side::Right => {
            let phi = LInfElem::parse(a, carrier).map_err(input)?;
            let f = L1Elem::parse(b, carrier).map_err(input)?;
            module_action_right(s, &phi, &f).map_err(other)?
        }
        Side::Left => {
            let f = L1Elem::parse(a, carrier).map_err(input)?;
            let phi = LInfElem::parse(b, carrier).map_err(input)?;
            module_action_left(s, &f, &phi).map_err(other)?
        }
    };
    println!("{}", combo.fmt_in(carrier));
    Ok(EXIT_YES)
}

fn cmd_cancellative(config: &Path, side: Option<SideArg>) -> Result<u8, Failure> {
    let cfg = load(config, None)?;
    let sel = match side {
        None => SideSel::Both,
        Some(SideArg::Left) => SideSel::Left,
        Some(SideArg::Right) => SideSel::Right,
    };
    let v = cfg.semigroup.is_weakly_cancellative(sel, cfg.check.budget);
    println!("{}", v.summary());
    Ok(verdict_code(&v))
}

fn cmd_examples(json: bool, inject: Option<&str>) -> Result<u8, Failure> {
    let rows = run_suite(inject);
    if json {
        print!("{}", to_pretty(&suite_json(&rows)));
    } else {
        print!("{}", suite_table(&rows));
    }
    Ok(if rows.iter().all(|r| r.pass()) { EXIT_YES } else { EXIT_NO })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_YES };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Check { config, flags, json, timings } => cmd_check(config, flags, json.as_deref(), *timings),
        Command::Quotient { config, side, s, t } => cmd_quotient(config, side.side(), s, t),
        Command::Convolve { config, f, g } => cmd_convolve(config, f, g),
        Command::Action { config, side, a, b } => cmd_action(config, side.side(), a, b),
        Command::Cancellative { config, side } => cmd_cancellative(config, *side),
        Command::Examples { json, inject_failure } => cmd_examples(*json, inject_failure.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let (Failure::Input(m) | Failure::Other(m)) = &f;
            eprintln!("error: {m}");
            ExitCode::from(f.code())
        }
    }
}
