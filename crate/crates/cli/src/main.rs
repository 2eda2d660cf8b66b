//! `tensorcat`: validate input files, build towers and principal graphs, run the self-test.
//!
//! Exit codes: `0` success, `1` mathematical failure or unsupported input,
//! `2` I/O or parse failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use tensorcat::catcore::{Category, DEFAULT_CAP};
use tensorcat::io::{load, load_corep, SpecDocument};
use tensorcat::report::{envelope, real, Check, CheckReport};
use tensorcat::selftest::{self, Level, SelftestConfig, SelftestReport};
use tensorcat::tower::{check_jones, check_markov, principal_graph, standard_invariant, Tower, TowerMode};
use tensorcat::{Error, Tolerance};

#[derive(Parser)]
#[command(name = "tensorcat", version, about = "Tensor categories of Hopf algebra corepresentations")]
struct Cli {
    /// Tower depth for `invariant` (default 3) or maximal depth for `graph` (default 10).
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Largest vector dimension realized as matrices.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long, global = true, default_value_t = 1e-9)]
    rank_eps: f64,
    #[arg(long, global = true, default_value_t = 1e-8)]
    check_eps: f64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Alternating)]
    mode: Mode,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check Hopf algebra, group and corepresentation files.
    Validate {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Tower, standard invariant and Jones/Markov residuals for a corepresentation.
    Invariant { sigma: PathBuf },
    /// Principal graph of a corepresentation.
    Graph { sigma: PathBuf },
    /// Run the acceptance criteria.
    Selftest {
        #[arg(long, value_enum, default_value_t = LevelArg::Full)]
        level: LevelArg,
        /// Run only these criteria (repeatable); overrides the level's selection.
        #[arg(long = "criterion", value_parser = clap::value_parser!(u64).range(1..=11))]
        criteria: Vec<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Alternating,
    SigmaOnly,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Fast,
    Full,
}

impl From<Mode> for TowerMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Alternating => TowerMode::Alternating,
            Mode::SigmaOnly => TowerMode::SigmaOnly,
        }
    }
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Self {
        match l {
            LevelArg::Fast => Level::Fast,
            LevelArg::Full => Level::Full,
        }
    }
}

/// Outcome of a command: text for standard output and the exit code.
struct Output {
    stdout: String,
    code: u8,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Io { .. } => 2,
        _ => 1,
    }
}

fn threads() -> usize {
    std::env::var("TENSORCAT_THREADS").ok().and_then(|v| v.parse().ok()).filter(|&n| n >= 1).unwrap_or(1)
}

impl Cli {
    fn tol(&self) -> Result<Tolerance, Error> {
        Tolerance::new(self.rank_eps, self.check_eps)
    }

    fn depth_or(&self, default: usize) -> Result<usize, Error> {
        match self.depth.unwrap_or(default) {
            0 => Err(Error::InvalidInput("--depth must be at least 1".into())),
            d => Ok(d),
        }
    }

    fn params(&self, inputs: &[&Path], depth: Option<usize>) -> Map<String, Value> {
        let mut p = Map::new();
        p.insert("inputs".into(), json!(inputs.iter().map(|p| p.display().to_string()).collect::<Vec<_>>()));
        if let Some(d) = depth {
            p.insert("depth".into(), json!(d));
        }
        p.insert("cap".into(), json!(self.cap));
        p.insert("rank_eps".into(), real(self.rank_eps));
        p.insert("check_eps".into(), real(self.check_eps));
        p.insert("seed".into(), json!(self.seed));
        p.insert("mode".into(), json!(TowerMode::from(self.mode).to_string()));
        p.insert("threads".into(), json!(threads()));
        p
    }

    fn category(&self, sigma: &Path) -> Result<Arc<Category>, Error> {
        if self.cap == 0 {
            return Err(Error::InvalidInput("--cap must be at least 1".into()));
        }
        let tol = self.tol()?;
        let s = load_corep(sigma)?;
        s.validate(&tol)?;
        Ok(Arc::new(Category::generated_by(s, tol, self.cap)?))
    }
}

fn json_out(v: &Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("json"))
}

fn checks_text(r: &CheckReport) -> String {
    let mut out = String::new();
    for c in &r.checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        out.push_str(&format!("  {mark} {} (residual {:e}, threshold {:e})\n", c.name, c.residual, c.threshold));
    }
    out
}

fn validate(cli: &Cli, paths: &[PathBuf]) -> Result<Output, Error> {
    let tol = cli.tol()?;
    let mut files = Vec::new();
    let mut text = String::new();
    let mut code = 0u8;
    for path in paths {
        let (kind, report, error) = match load(path) {
            Ok(doc) => {
                let mut r = CheckReport::new();
                match &doc {
                    SpecDocument::Hopf(h) => {
                        for c in h.check_axioms(&tol).checks {
                            r.push(Check {
                                name: c.name,
                                residual: c.residual,
                                threshold: tol.check_eps,
                                passed: c.passed,
                            });
                        }
                    }
                    SpecDocument::Group(_) => r.flag("multiplication table is a group", true),
                    SpecDocument::Corep(s) => {
                        let c = s.check();
                        r.residual("coassociativity", c.coassociativity, tol.check_eps);
                        r.residual("counit", c.counit, tol.check_eps);
                        r.residual("unitarity", c.unitarity, tol.check_eps);
                    }
                }
                (doc.kind(), r, None)
            }
            Err(e) => {
                code = code.max(exit_code(&e));
                ("unknown", CheckReport::new(), Some(e.to_string()))
            }
        };
        if error.is_none() && !report.passed() {
            code = code.max(1);
        }
        let passed = error.is_none() && report.passed();
        text.push_str(&format!("{} [{kind}]: {}\n", path.display(), if passed { "valid" } else { "INVALID" }));
        if let Some(e) = &error {
            text.push_str(&format!("  error: {e}\n"));
        }
        text.push_str(&checks_text(&report));
        files.push(json!({
            "path": path.display().to_string(),
            "kind": kind,
            "passed": passed,
            "error": error,
            "checks": report.to_json()["checks"],
        }));
    }
    let body = json!({ "passed": code == 0, "files": files });
    let inputs: Vec<&Path> = paths.iter().map(PathBuf::as_path).collect();
    let stdout = match cli.format {
        Format::Text => text,
        _ => json_out(&envelope("validate", cli.params(&inputs, None), body)),
    };
    Ok(Output { stdout, code })
}

fn invariant(cli: &Cli, sigma: &Path) -> Result<Output, Error> {
    let depth = cli.depth_or(3)?;
    let mode = TowerMode::from(cli.mode);
    let cat = cli.category(sigma)?;
    let si = standard_invariant(&cat, depth, mode)?;
    let t = Tower::build(cat.clone(), depth + 1, mode)?;
    let mut checks = CheckReport::new();
    checks.flag("rows agree with the tower recomputation", si.tower_rows_agree);
    checks.residual("trace weights are consistent", t.trace_consistency(), cat.tol().check_eps);
    let mut jones_m = None;
    for m in (0..=depth.min(2)).rev() {
        match check_jones(&cat, m) {
            Ok(r) => {
                checks.extend_prefixed("Jones", r);
                jones_m = Some(m);
                break;
            }
            Err(Error::CapExceeded { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    let mut markov_levels = Vec::new();
    for n in 1..=depth {
        match check_markov(&t, n) {
            Ok(r) => {
                checks.extend_prefixed(&format!("Markov at level {n}"), r);
                markov_levels.push(n);
            }
            Err(Error::CapExceeded { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    let code = if checks.passed() { 0 } else { 1 };
    let stdout = match cli.format {
        Format::Dot => t.to_dot(),
        Format::Text => {
            let mut s = format!("index {}\nirreducible {}\n", si.index, si.irreducible);
            let row = |r: Vec<Vec<(usize, usize)>>| -> String {
                r.iter()
                    .map(|lev| {
                        lev.iter()
                            .map(|(l, m)| format!("{}:{m}", cat.registry().entry(*l).label))
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect::<Vec<_>>()
                    .join(" | ")
            };
            s.push_str(&format!("upper row {}\nlower row {}\n", row(si.top_row()), row(si.bottom_row())));
            s.push_str(&checks_text(&checks));
            s
        }
        Format::Json => {
            let body = json!({
                "index": real(si.index),
                "registry": cat.registry().to_json(cat.letters()),
                "standard_invariant": si.to_json(&cat),
                "tower": t.to_json(),
                "jones_max_m": jones_m,
                "markov_levels": markov_levels,
                "checks": checks.to_json(),
            });
            json_out(&envelope("invariant", cli.params(&[sigma], Some(depth)), body))
        }
    };
    Ok(Output { stdout, code })
}

fn graph(cli: &Cli, sigma: &Path) -> Result<Output, Error> {
    let max_depth = cli.depth_or(10)?;
    let cat = cli.category(sigma)?;
    let g = principal_graph(&cat, max_depth)?;
    if !g.stabilized {
        eprintln!("tensorcat: {}", Error::NoStabilization(max_depth));
    }
    let stdout = match cli.format {
        Format::Dot => g.to_dot(&cat),
        Format::Text => {
            let reg = cat.registry();
            let mut s = format!("stabilized {}\ndepth {}\n", g.stabilized, g.depth);
            for (i, &p) in g.even_vertices.iter().enumerate() {
                for (j, &q) in g.odd_vertices.iter().enumerate() {
                    if g.adjacency[i][j] > 0 {
                        s.push_str(&format!(
                            "e{} -- o{} x{}\n",
                            reg.entry(p).label,
                            reg.entry(q).label,
                            g.adjacency[i][j]
                        ));
                    }
                }
            }
            s
        }
        Format::Json => json_out(&envelope("graph", cli.params(&[sigma], Some(max_depth)), g.to_json(&cat))),
    };
    Ok(Output { stdout, code: if g.stabilized { 0 } else { 1 } })
}

fn run_selftest(cli: &Cli, level: Level, only: &[u64]) -> Result<Output, Error> {
    let cfg = SelftestConfig { level, seed: cli.seed, tol: cli.tol()?, cap: cli.cap, threads: threads() };
    let report = if only.is_empty() {
        selftest::run(&cfg)
    } else {
        let ids: Vec<usize> = only.iter().map(|&k| k as usize).collect();
        SelftestReport { config: cfg.clone(), outcomes: selftest::run_criteria(&ids, &cfg) }
    };
    let failing = report.failing();
    if !failing.is_empty() {
        let ids: Vec<String> = failing.iter().map(usize::to_string).collect();
        eprintln!("tensorcat: failing criteria: {}", ids.join(", "));
    }
    let stdout = match cli.format {
        Format::Text => {
            let mut s = String::new();
            for o in &report.outcomes {
                s.push_str(&format!(
                    "criterion {}: {} ({})\n",
                    o.id,
                    if o.passed() { "PASS" } else { "FAIL" },
                    o.title
                ));
                if let Some(e) = &o.error {
                    s.push_str(&format!("  error: {e}\n"));
                }
                for c in o.report.failures() {
                    s.push_str(&format!(
                        "  FAIL {} (residual {:e}, threshold {:e})\n",
                        c.name, c.residual, c.threshold
                    ));
                }
            }
            s
        }
        _ => {
            let mut params = cli.params(&[], None);
            params.insert("level".into(), json!(level.to_string()));
            params.insert("criteria".into(), json!(only));
            json_out(&envelope("selftest", params, report.to_json()))
        }
    };
    Ok(Output { stdout, code: if failing.is_empty() { 0 } else { 1 } })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { paths } => validate(&cli, paths),
        Command::Invariant { sigma } => invariant(&cli, sigma),
        Command::Graph { sigma } => graph(&cli, sigma),
        Command::Selftest { level, criteria } => run_selftest(&cli, Level::from(*level), criteria),
    };
    match result {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("tensorcat: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
