use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use badred::analyzer::{
    analyze_curve, analyze_hypersurface, cayley_report, constants_report, height_report, scan_report, to_json,
    write_report, Options, DEFAULT_SCAN_BOUND, DEFAULT_SEED,
};
use badred::cayley::CurveParam;
use badred::ffalg::DEFAULT_BUDGET;
use badred::mpoly::{identifiers, parse_poly, MPoly};
use badred::numfield::{NFElem, NumberField};
use clap::{Args, Parser, Subcommand};

/// Bad reduction of hypersurfaces and parametrized curves over number fields.
#[derive(Parser, Debug)]
#[command(name = "badred", version)]
struct Cli {
    /// Plain-text key=value file; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct Common {
    /// Minimal polynomial of the field generator, e.g. "i^2+1"; Q if omitted.
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Work budget for factoring and finite-field searches.
    #[arg(long)]
    budget: Option<u64>,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bad primes and the bound for a hypersurface.
    Analyze {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        poly: Option<String>,
        /// Comma-separated variable order; default: identifiers sorted.
        #[arg(long)]
        vars: Option<String>,
        #[arg(long)]
        scan_bound: Option<u64>,
    },
    /// Bad primes and the bound for a parametrized curve.
    Curve {
        #[command(flatten)]
        common: Common,
        /// Comma-separated binary forms in s, t.
        #[arg(long)]
        param: Option<String>,
        #[arg(long)]
        scan_bound: Option<u64>,
    },
    /// Classify the reduction at every prime of norm up to a bound.
    Scan {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        vars: Option<String>,
        #[arg(long)]
        bound: Option<u64>,
    },
    /// The Cayley form of a parametrized curve.
    Cayley {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        param: Option<String>,
    },
    /// Naive height of a polynomial.
    Height {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        vars: Option<String>,
    },
    /// The explicit constants for given dimensions and degree.
    Constants {
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long)]
        delta: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Res<T> = std::result::Result<T, Failure>;

struct Config(BTreeMap<String, String>);

impl Config {
    fn load(path: Option<&Path>) -> Res<Config> {
        let mut map = BTreeMap::new();
        let Some(path) = path else { return Ok(Config(map)) };
        let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Failure(format!("{}:{}: expected key=value", path.display(), i + 1)))?;
            map.insert(k.trim().replace('_', "-"), v.trim().to_string());
        }
        Ok(Config(map))
    }

    fn str(&self, flag: &Option<String>, key: &str) -> Option<String> {
        flag.clone().or_else(|| self.0.get(key).cloned())
    }

    fn num(&self, flag: Option<u64>, key: &str, default: u64) -> Res<u64> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.0.get(key) {
            Some(v) => v.parse().map_err(|_| Failure(format!("config key {key}: not a number: {v}"))),
            None => Ok(default),
        }
    }

    fn required(&self, flag: &Option<String>, key: &str) -> Res<String> {
        self.str(flag, key).ok_or_else(|| Failure(format!("missing --{key}")))
    }

    fn field(&self, c: &Common) -> Res<NumberField> {
        Ok(match self.str(&c.field, "field") {
            Some(text) => NumberField::parse(&text)?,
            None => NumberField::rationals(),
        })
    }

    fn options(&self, c: &Common, scan_bound: Option<u64>) -> Res<Options> {
        Ok(Options {
            scan_bound: self.num(scan_bound, "scan-bound", DEFAULT_SCAN_BOUND)?,
            seed: self.num(c.seed, "seed", DEFAULT_SEED)?,
            budget: self.num(c.budget, "budget", DEFAULT_BUDGET)?,
        })
    }

    fn out(&self, c: &Common) -> Option<PathBuf> {
        c.out.clone().or_else(|| self.0.get("out").map(PathBuf::from))
    }
}

/// Identifiers sort by prefix, then numerically, so T10 follows T9.
fn natural_key(s: &str) -> (String, u64) {
    let digits = s.len() - s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (head, tail) = s.split_at(s.len() - digits);
    (head.to_string(), tail.parse().unwrap_or(0))
}

fn parse_input(k: &NumberField, text: &str, vars: Option<String>) -> Res<(MPoly<NFElem>, Vec<String>)> {
    let consts = if k.is_rational() { vec![] } else { vec![(k.var().to_string(), k.generator())] };
    let names: Vec<String> = match vars {
        Some(v) => v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
        None => {
            let mut ids: Vec<String> = identifiers(text)?.into_iter().filter(|s| k.is_rational() || s != k.var()).collect();
            ids.sort_by_key(|s| natural_key(s));
            ids
        }
    };
    if names.is_empty() {
        return Err(Failure("the polynomial has no variables".into()));
    }
    Ok((parse_poly(text, &names, k, &consts)?, names))
}

fn emit(text: &str, out: Option<PathBuf>) -> Res<()> {
    match out {
        Some(path) => std::fs::write(&path, text).map_err(|e| Failure(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Res<u8> {
    let cfg = Config::load(cli.config.as_deref())?;
    match cli.command {
        Command::Analyze { common, poly, vars, scan_bound } => {
            let k = cfg.field(&common)?;
            let (f, names) = parse_input(&k, &cfg.required(&poly, "poly")?, cfg.str(&vars, "vars"))?;
            let report = analyze_hypersurface(&k, &f, &names, &cfg.options(&common, scan_bound)?)?;
            finish(&report, cfg.out(&common))
        }
        Command::Curve { common, param, scan_bound } => {
            let k = cfg.field(&common)?;
            let c = CurveParam::parse(&k, &cfg.required(&param, "param")?)?;
            let (report, _) = analyze_curve(&k, &c, &cfg.options(&common, scan_bound)?)?;
            finish(&report, cfg.out(&common))
        }
        Command::Scan { common, poly, vars, bound } => {
            let k = cfg.field(&common)?;
            let (f, names) = parse_input(&k, &cfg.required(&poly, "poly")?, cfg.str(&vars, "vars"))?;
            let opts = cfg.options(&common, None)?;
            let bound = cfg.num(bound, "bound", opts.scan_bound)?;
            let r = scan_report(&k, &f, &names, bound, opts.budget)?;
            emit(&to_json(&r)?, cfg.out(&common))?;
            Ok(if r.undecided.is_empty() { 0 } else { 3 })
        }
        Command::Cayley { common, param } => {
            let k = cfg.field(&common)?;
            let c = CurveParam::parse(&k, &cfg.required(&param, "param")?)?;
            let r = cayley_report(&k, &c, cfg.num(common.seed, "seed", DEFAULT_SEED)?)?;
            emit(&to_json(&r)?, cfg.out(&common))?;
            Ok(0)
        }
        Command::Height { common, poly, vars } => {
            let k = cfg.field(&common)?;
            let (f, names) = parse_input(&k, &cfg.required(&poly, "poly")?, cfg.str(&vars, "vars"))?;
            emit(&to_json(&height_report(&k, &f, &names)?)?, cfg.out(&common))?;
            Ok(0)
        }
        Command::Constants { n, d, delta, out } => {
            let n = n.or_else(|| cfg.0.get("n").and_then(|v| v.parse().ok())).ok_or(Failure("missing --n".into()))?;
            let d = d.or_else(|| cfg.0.get("d").and_then(|v| v.parse().ok()));
            let delta = delta
                .or_else(|| cfg.0.get("delta").and_then(|v| v.parse().ok()))
                .ok_or(Failure("missing --delta".into()))?;
            emit(&to_json(&constants_report(n, d, delta)?)?, out.or_else(|| cfg.0.get("out").map(PathBuf::from)))?;
            Ok(0)
        }
    }
}

fn finish(report: &badred::analyzer::AnalysisReport, out: Option<PathBuf>) -> Res<u8> {
    match out {
        Some(path) => {
            write_report(report, &path)?;
            println!("{:?}: {} bad prime(s), verdict {}", path, report.bad_primes.len(), verdict_word(report));
        }
        None => print!("{}", to_json(report)?),
    }
    Ok(report.exit_code() as u8)
}

fn verdict_word(r: &badred::analyzer::AnalysisReport) -> &'static str {
    match r.exit_code() {
        0 => "PASS",
        2 => "FAIL",
        _ => "CONDITIONAL",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
