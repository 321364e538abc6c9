//! `rc-lab` command line: polynomial tables, Gram matrices, `Gamma_Omega`,
//! the verification suites and the disk cache.
//!
//! Settings resolve as flags, then the `--config` file (`key = value` lines,
//! `#` comments), then defaults.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand};

use crate::bracket::{compute_C, compute_c_with, max_k, Cache};
use crate::error::{Error, Result};
use crate::jordan::{algebra, Family};
use crate::quadrature::gamma::{gamma_omega_closed, gamma_omega_numeric, GammaRule};
use crate::quadrature::gram::gram_matrix;
use crate::report::SCHEMA;
use crate::sampling::DEFAULT_SEED;
use crate::scalar::{parse_q, Q};
use crate::suites::{self, Suite, SuiteOptions, DEFAULT_FAMILIES};
use crate::tables::{bracket_table, ortho_table, pretty, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "rc-lab", version, about = "Rankin-Cohen bracket polynomials on Euclidean Jordan algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// key = value settings file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// rank1, sym2..sym4, spin3..spin8
    #[arg(long, global = true)]
    algebra: Option<String>,
    /// degree `k` or range `a..b`
    #[arg(long, global = true)]
    k: Option<String>,
    #[arg(long, global = true)]
    kmax: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long, global = true)]
    nu: Option<String>,
    /// closed, quadrature or monte-carlo
    #[arg(long, global = true)]
    rule: Option<String>,
    #[arg(long, global = true)]
    nodes: Option<String>,
    #[arg(long, global = true)]
    samples: Option<String>,
    #[arg(long, global = true)]
    seed: Option<String>,
    /// json, csv or latex
    #[arg(long, global = true)]
    format: Option<String>,
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// tolerance override `check-name=value`, repeatable
    #[arg(long = "tol", global = true)]
    tol: Vec<String>,
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coefficient tables of c(k), or of C(k) when lambda and mu are given.
    Polys,
    /// Gram matrix of C(0..kmax) under the interval weight.
    Gram,
    /// Gamma function of the cone: closed form and optional numeric value.
    Gamma,
    /// Run a verification suite: algebraic, quadrature, analytic or all.
    Check { suite: String },
    /// Inspect or clear the bracket polynomial cache.
    Cache { action: String },
}

/// Fully resolved settings.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub algebra: Option<Family>,
    pub k_lo: u32,
    pub k_hi: u32,
    pub lambda: Option<Q>,
    pub mu: Option<Q>,
    pub nu: f64,
    pub rule: String,
    pub nodes: Option<usize>,
    pub samples: Option<usize>,
    pub seed: u64,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub tolerances: BTreeMap<String, f64>,
    pub cache_dir: Option<PathBuf>,
}

pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
        out.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(out)
}

const KNOWN_KEYS: [&str; 13] = [
    "algebra", "k", "kmax", "lambda", "mu", "nu", "rule", "nodes", "samples", "seed", "format", "output", "cache_dir",
];

fn parse_val<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Config(format!("invalid value `{v}` for {key}")))
}

fn parse_k(s: &str) -> Result<(u32, u32)> {
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse_val("k", a.trim())?, parse_val("k", b.trim().trim_start_matches('='))?);
            if a > b {
                return Err(Error::Config(format!("empty k range {s}")));
            }
            Ok((a, b))
        }
        None => {
            let k = parse_val("k", s.trim())?;
            Ok((k, k))
        }
    }
}

fn parse_q_cfg(key: &str, v: &str) -> Result<Q> {
    parse_q(v).map_err(|_| Error::Config(format!("invalid value `{v}` for {key}")))
}

impl RunConfig {
    fn resolve(cli: &Cli) -> Result<RunConfig> {
        let file = match &cli.config {
            Some(p) => parse_config_file(&std::fs::read_to_string(p)?)?,
            None => BTreeMap::new(),
        };
        for key in file.keys() {
            if !KNOWN_KEYS.contains(&key.as_str()) && !key.starts_with("tol.") {
                return Err(Error::Config(format!("unknown config key `{key}`")));
            }
        }
        let pick = |flag: &Option<String>, key: &str| flag.clone().or_else(|| file.get(key).cloned());

        let algebra = pick(&cli.algebra, "algebra").map(|s| s.parse::<Family>()).transpose()?;
        let (k_lo, k_hi) = match (pick(&cli.k, "k"), pick(&cli.kmax, "kmax")) {
            (Some(k), _) => parse_k(&k)?,
            (None, Some(m)) => (0, parse_val("kmax", &m)?),
            (None, None) => (0, 0),
        };
        if let Some(f) = algebra {
            if k_hi > max_k(f) {
                return Err(Error::Config(format!("k = {k_hi} exceeds the cap {} for {f}", max_k(f))));
            }
        }
        let mut tolerances = BTreeMap::new();
        for (key, v) in &file {
            if let Some(name) = key.strip_prefix("tol.") {
                tolerances.insert(name.to_string(), parse_val(key, v)?);
            }
        }
        for t in &cli.tol {
            let (name, v) = t
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("--tol expects name=value, got `{t}`")))?;
            tolerances.insert(name.to_string(), parse_val("tol", v)?);
        }
        Ok(RunConfig {
            algebra,
            k_lo,
            k_hi,
            lambda: pick(&cli.lambda, "lambda").map(|v| parse_q_cfg("lambda", &v)).transpose()?,
            mu: pick(&cli.mu, "mu").map(|v| parse_q_cfg("mu", &v)).transpose()?,
            nu: pick(&cli.nu, "nu").map(|v| parse_val("nu", &v)).transpose()?.unwrap_or(3.0),
            rule: pick(&cli.rule, "rule").unwrap_or_else(|| "closed".into()),
            nodes: pick(&cli.nodes, "nodes").map(|v| parse_val("nodes", &v)).transpose()?,
            samples: pick(&cli.samples, "samples").map(|v| parse_val("samples", &v)).transpose()?,
            seed: pick(&cli.seed, "seed").map(|v| parse_val("seed", &v)).transpose()?.unwrap_or(DEFAULT_SEED),
            format: pick(&cli.format, "format").map(|v| v.parse()).transpose()?.unwrap_or(Format::Json),
            output: cli.output.clone().or_else(|| file.get("output").map(PathBuf::from)),
            tolerances,
            cache_dir: cli.cache_dir.clone().or_else(|| file.get("cache_dir").map(PathBuf::from)),
        })
    }

    fn require_algebra(&self) -> Result<Family> {
        self.algebra.ok_or_else(|| Error::Config("--algebra is required".into()))
    }

    fn cache(&self) -> Cache {
        match &self.cache_dir {
            Some(d) => Cache::at(d),
            None => Cache::from_env(),
        }
    }
}

fn emit(cfg: &RunConfig, text: &str, out: &mut dyn Write) -> Result<()> {
    match &cfg.output {
        Some(p) => write_file(p, text),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn write_file(p: &Path, text: &str) -> Result<()> {
    if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    Ok(std::fs::write(p, text)?)
}

pub fn cmd_polys(cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let fam = cfg.require_algebra()?;
    let alg = algebra(fam);
    let cache = cfg.cache();
    let multi = cfg.k_hi > cfg.k_lo;
    for k in cfg.k_lo..=cfg.k_hi {
        let text = match (&cfg.lambda, &cfg.mu) {
            (Some(l), Some(m)) => {
                compute_c_with(&alg, k, &cache)?;
                ortho_table(&compute_C(&alg, k, l, m)?, cfg.format)
            }
            (None, None) => bracket_table(&*compute_c_with(&alg, k, &cache)?, cfg.format),
            _ => return Err(Error::Config("give both --lambda and --mu, or neither".into())),
        };
        match (&cfg.output, multi) {
            (Some(dir), true) => write_file(&dir.join(format!("{}_k{k}.{}", fam.name(), cfg.format.extension())), &text)?,
            _ => emit(cfg, &text, out)?,
        }
    }
    Ok(())
}

pub fn cmd_gram(cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let fam = cfg.require_algebra()?;
    let alg = algebra(fam);
    let one = Q::from_integer(1.into());
    let l = cfg.lambda.clone().unwrap_or_else(|| one.clone());
    let m = cfg.mu.clone().unwrap_or(one);
    compute_c_with(&alg, cfg.k_hi, &cfg.cache())?;
    let g = gram_matrix(&alg, &l, &m, cfg.k_hi, cfg.nodes)?;
    let text = match cfg.format {
        Format::Json => pretty(&serde_json::to_value(&g)?),
        Format::Csv => g.to_csv(),
        Format::Latex => return Err(Error::Config("gram supports json and csv".into())),
    };
    emit(cfg, &text, out)
}

pub fn cmd_gamma(cfg: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let fam = cfg.require_algebra()?;
    let alg = algebra(fam);
    let closed = gamma_omega_closed(&alg, cfg.nu)?;
    let mut v = serde_json::json!({
        "schema": SCHEMA,
        "algebra": fam.name(),
        "nu": cfg.nu,
        "closed": closed,
    });
    let rule = match cfg.rule.as_str() {
        "closed" => None,
        "quadrature" => Some(GammaRule::Quadrature { nodes: cfg.nodes.unwrap_or(60) }),
        "monte-carlo" => Some(GammaRule::MonteCarlo {
            samples: cfg.samples.unwrap_or(1_000_000),
            seed: cfg.seed,
        }),
        r => return Err(Error::Config(format!("unknown rule `{r}`"))),
    };
    if let Some(rule) = rule {
        let num = gamma_omega_numeric(&alg, cfg.nu, rule)?;
        v["rule"] = serde_json::to_value(rule)?;
        v["numeric"] = num.into();
        v["relative_error"] = ((num - closed).abs() / closed.abs()).into();
    }
    let text = match cfg.format {
        Format::Json => pretty(&v),
        Format::Csv => {
            let num = v.get("numeric").map(|x| x.to_string()).unwrap_or_default();
            format!("algebra,nu,closed,numeric\n{},{},{closed:e},{num}\n", fam.name(), cfg.nu)
        }
        Format::Latex => return Err(Error::Config("gamma supports json and csv".into())),
    };
    emit(cfg, &text, out)
}

pub fn suite_options(cfg: &RunConfig) -> SuiteOptions {
    let mut o = SuiteOptions {
        seed: cfg.seed,
        tolerances: cfg.tolerances.clone(),
        ..SuiteOptions::default()
    };
    if let Some(s) = cfg.samples {
        o.mc_samples = s;
        o.gamma_samples = s;
    }
    if let Some(n) = cfg.nodes {
        o.cone_nodes = n;
    }
    o
}

/// Returns whether every check passed.
pub fn cmd_check(cfg: &RunConfig, suite: Suite, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    let families: Vec<Family> = match cfg.algebra {
        Some(f) => vec![f],
        None => DEFAULT_FAMILIES.to_vec(),
    };
    let report = suites::run(suite, &families, &suite_options(cfg));
    for c in &report.checks {
        writeln!(err, "{}", c.summary_line())?;
    }
    let text = match cfg.format {
        Format::Json => pretty(&serde_json::to_value(&report)?),
        Format::Csv => {
            let mut s = String::from("name,algebra,passed,max_residual,tolerance\n");
            for c in &report.checks {
                s.push_str(&format!("{},{},{},{:e},{:e}\n", c.name, c.algebra, c.passed, c.max_residual, c.tolerance));
            }
            s
        }
        Format::Latex => return Err(Error::Config("check supports json and csv".into())),
    };
    emit(cfg, &text, out)?;
    Ok(report.passed)
}

pub fn cmd_cache(cfg: &RunConfig, action: &str, out: &mut dyn Write) -> Result<()> {
    let cache = cfg.cache();
    let dir = cache.dir().map(|d| d.display().to_string());
    let v = match action {
        "inspect" => serde_json::json!({ "schema": SCHEMA, "dir": dir, "entries": cache.inspect()? }),
        "clear" => serde_json::json!({ "schema": SCHEMA, "dir": dir, "removed": cache.clear()? }),
        a => return Err(Error::Config(format!("unknown cache action `{a}`"))),
    };
    Ok(out.write_all(pretty(&v).as_bytes())?)
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let result = RunConfig::resolve(&cli).and_then(|cfg| match &cli.command {
        Command::Polys => cmd_polys(&cfg, out).map(|_| true),
        Command::Gram => cmd_gram(&cfg, out).map(|_| true),
        Command::Gamma => cmd_gamma(&cfg, out).map(|_| true),
        Command::Check { suite } => cmd_check(&cfg, suite.parse()?, out, err),
        Command::Cache { action } => cmd_cache(&cfg, action, out).map(|_| true),
    });
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_CONFIG
        }
    }
}
