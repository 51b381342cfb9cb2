//! Command-line front end for the `seqdual` library.

use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use seqdual::json;
use seqdual::opideal::{adjoint_duality_report, summing_norm, DualityReport};
use seqdual::schema::{self, Manifest, TaskKind};
use seqdual::seqnorm::class_norm;
use seqdual::verify::{run_suite, suite_names, SuiteReport, SuiteSpec};
use seqdual::{ClassId, Method, NormCert, OptConfig};

#[derive(Parser)]
#[command(
    name = "seqdual",
    version,
    about = "Norms of vector sequences, dual sequence classes and summing operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand)]
enum Command {
    /// Norm of a sequence in a sequence class.
    Norm {
        /// Class descriptor such as `lp:2`, `lpw:4/3` or `dual(linf)`.
        class: String,
        /// Sequence object: a file path, inline JSON, or `-` for stdin.
        input: String,
    },
    /// Norm of a sequence in the dual of a sequence class.
    Dualnorm { class: String, input: String },
    /// Summing norm `‖T‖_{X;Y}` of an operator over sequences of length `--k`.
    Opnorm {
        x: String,
        y: String,
        /// Operator object: a file path, inline JSON, or `-` for stdin.
        input: String,
    },
    /// Compares the summing norms of an operator and of its adjoint.
    AdjointReport { x: String, y: String, input: String },
    /// Runs a property suite, or `all` of them.
    Verify {
        suite: String,
        /// Instances per class.
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Runs every task of a manifest.
    Report {
        /// Manifest: a file path, inline JSON, or `-` for stdin.
        manifest: String,
    },
}

#[derive(Args)]
struct Flags {
    /// auto, exact, ascent or bruteforce.
    #[arg(long, global = true, default_value = "auto")]
    method: String,
    /// Relative convergence threshold of the optimizers.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for random starts and suite instances.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of ascent starts.
    #[arg(long, global = true)]
    restarts: Option<usize>,
    /// Iteration cap of each ascent run.
    #[arg(long, global = true)]
    max_iter: Option<usize>,
    /// Grid resolution of the brute-force oracle.
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Sequence length for operator norms.
    #[arg(long, global = true, default_value_t = 1)]
    k: usize,
    /// Largest functional-sequence length tried for mid norms.
    #[arg(long, global = true)]
    mid_max_m: Option<usize>,
    /// Sample count for Rademacher averages of long sequences.
    #[arg(long, global = true)]
    rad_mc: Option<usize>,
    /// Also write the result as JSON to this path (`-` for stdout only).
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Print witnesses.
    #[arg(long, global = true)]
    witness: bool,
}

/// An error together with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<seqdual::Error> for Failure {
    fn from(e: seqdual::Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

impl Flags {
    fn config(&self) -> Result<OptConfig, Failure> {
        let mut cfg = OptConfig {
            method: self.method.parse::<Method>()?,
            ..OptConfig::default()
        };
        if let Some(t) = self.tol {
            cfg.tol = t;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(r) = self.restarts {
            cfg.restarts = r;
        }
        if let Some(m) = self.max_iter {
            cfg.max_iter = m;
        }
        if let Some(g) = self.grid {
            cfg.grid_resolution = g;
        }
        if let Some(m) = self.mid_max_m {
            cfg.mid_max_m = m;
        }
        cfg.rad_mc = self.rad_mc;
        cfg.validate()?;
        if self.k == 0 {
            return Err(usage("--k must be at least 1"));
        }
        Ok(cfg)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let flags = &cli.flags;
    let cfg = flags.config()?;
    let (text, doc, code) = match &cli.command {
        Command::Norm { class, input } => norm(class, input, false, flags, &cfg)?,
        Command::Dualnorm { class, input } => norm(class, input, true, flags, &cfg)?,
        Command::Opnorm { x, y, input } => opnorm(x, y, input, flags, &cfg)?,
        Command::AdjointReport { x, y, input } => adjoint(x, y, input, flags, &cfg)?,
        Command::Verify { suite, trials } => verify(suite, *trials, flags, &cfg)?,
        Command::Report { manifest } => report(manifest, flags, &cfg)?,
    };
    emit(&text, &doc, flags)?;
    Ok(code)
}

fn emit(text: &str, doc: &Value, flags: &Flags) -> Result<(), Failure> {
    match &flags.json {
        Some(p) if p.as_os_str() == "-" => print!("{}", json::render(doc)),
        Some(p) => {
            print!("{text}");
            fs::write(p, json::render(doc))
                .map_err(|e| usage(format!("cannot write {}: {e}", p.display())))?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

/// Reads JSON from stdin (`-`), inline text, or a file.
fn load(input: &str) -> Result<Value, Failure> {
    let trimmed = input.trim_start();
    let (text, origin) = if input == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("cannot read stdin: {e}")))?;
        (s, "stdin".to_string())
    } else if trimmed.starts_with('{') || trimmed.starts_with('[') {
        (input.to_string(), "inline JSON".to_string())
    } else {
        let s =
            fs::read_to_string(input).map_err(|e| usage(format!("cannot read {input}: {e}")))?;
        (s, input.to_string())
    };
    schema::parse_json(&text).map_err(|e| usage(format!("{origin}: {e}")))
}

fn class(s: &str) -> Result<ClassId, Failure> {
    Ok(s.parse::<ClassId>()?)
}

fn cert_lines(name: &str, c: &NormCert, witness: bool) -> String {
    let mut out = format!(
        "{name}: {}  [{}, {}]\n",
        json::format_g17(c.value),
        c.method.as_str(),
        c.bound.as_str()
    );
    if let Some(u) = c.upper {
        out += &format!("  upper bound: {}\n", json::format_g17(u));
    }
    if witness {
        out += &format!("  witness: {}\n", json::witness(&c.witness));
    }
    out
}

type Outcome = (String, Value, u8);

fn norm(
    class_s: &str,
    input: &str,
    dual: bool,
    flags: &Flags,
    cfg: &OptConfig,
) -> Result<Outcome, Failure> {
    let mut c = class(class_s)?;
    if dual {
        c = ClassId::dual(c)?;
    }
    let x = Manifest::default().sequence(&load(input)?, "$")?;
    let cert = class_norm(&c, &x, cfg)?;
    let doc = json::object([
        (
            "command",
            Value::String(if dual { "dualnorm" } else { "norm" }.into()),
        ),
        ("class", Value::String(c.to_string())),
        ("sequence", schema::seq_to_value(&x)),
        ("config", json::config(cfg)),
        ("result", json::cert(&cert, flags.witness)),
    ]);
    let mut text = cert_lines(&c.to_string(), &cert, flags.witness);
    if let Some(caveat) = c.finite_length_caveat() {
        text.push_str(&format!("note: {caveat}\n"));
    }
    Ok((text, doc, 0))
}

fn opnorm(
    x: &str,
    y: &str,
    input: &str,
    flags: &Flags,
    cfg: &OptConfig,
) -> Result<Outcome, Failure> {
    let (x, y) = (class(x)?, class(y)?);
    let t = Manifest::default().operator(&load(input)?, "$")?;
    let cert = summing_norm(&x, &y, &t, flags.k, cfg)?;
    let doc = json::object([
        ("command", Value::String("opnorm".into())),
        ("x", Value::String(x.to_string())),
        ("y", Value::String(y.to_string())),
        ("k", Value::from(flags.k)),
        ("operator", schema::op_to_value(&t)),
        ("config", json::config(cfg)),
        ("result", json::cert(&cert, flags.witness)),
    ]);
    let name = format!("‖T‖_{{{x};{y}}} (k = {})", flags.k);
    Ok((cert_lines(&name, &cert, flags.witness), doc, 0))
}

fn report_lines(r: &DualityReport, witness: bool) -> String {
    let mut out = cert_lines(&r.left.0, &r.left.1, witness);
    out += &cert_lines(&r.right.0, &r.right.1, witness);
    for h in &r.hypotheses {
        out += &format!("assumes: {h}\n");
    }
    for c in &r.checks {
        out += &format!(
            "{}  {}: {} vs {}  margin {}  tol {}\n",
            if c.pass { "PASS" } else { "FAIL" },
            c.label,
            json::format_g17(c.lhs),
            json::format_g17(c.rhs),
            json::format_g17(c.margin),
            json::format_g17(c.tol)
        );
    }
    out
}

fn adjoint(
    x: &str,
    y: &str,
    input: &str,
    flags: &Flags,
    cfg: &OptConfig,
) -> Result<Outcome, Failure> {
    let (x, y) = (class(x)?, class(y)?);
    let t = Manifest::default().operator(&load(input)?, "$")?;
    let r = adjoint_duality_report(&x, &y, &t, flags.k, cfg)?;
    let doc = json::object([
        ("command", Value::String("adjoint-report".into())),
        ("operator", schema::op_to_value(&t)),
        ("config", json::config(cfg)),
        ("report", json::duality_report(&r, flags.witness)),
    ]);
    Ok((report_lines(&r, flags.witness), doc, u8::from(!r.pass())))
}

fn suite_lines(r: &SuiteReport) -> String {
    let mut out = format!(
        "suite {} ({}): {}  records {}  failures {}  min margin {}\n",
        r.spec.name,
        r.result,
        if r.pass() { "PASS" } else { "FAIL" },
        r.records.len(),
        r.failures(),
        json::format_g17(if r.records.is_empty() {
            0.0
        } else {
            r.min_margin()
        })
    );
    for rec in &r.records {
        out += &format!(
            "  #{:<4} {} {}  {}  margin {}\n",
            rec.index,
            if rec.pass() { "pass" } else { "FAIL" },
            rec.class,
            rec.instance,
            json::format_g17(rec.margin())
        );
        if !rec.pass() {
            if let Some(e) = &rec.error {
                out += &format!("        error: {e}\n");
            }
            for c in rec.checks.iter().filter(|c| !c.pass) {
                out += &format!(
                    "        {}: {} vs {}  margin {}  tol {}\n",
                    c.label,
                    json::format_g17(c.lhs),
                    json::format_g17(c.rhs),
                    json::format_g17(c.margin),
                    json::format_g17(c.tol)
                );
            }
            out += &format!(
                "        record: {}\n",
                serde_json::to_string(&rec.to_json()).unwrap_or_default()
            );
        }
    }
    out
}

fn verify(
    suite: &str,
    trials: Option<usize>,
    flags: &Flags,
    cfg: &OptConfig,
) -> Result<Outcome, Failure> {
    let names: Vec<String> = if suite == "all" {
        suite_names().iter().map(|s| s.to_string()).collect()
    } else {
        vec![suite.to_string()]
    };
    let mut text = String::new();
    let mut reports = Vec::new();
    let mut pass = true;
    for name in names {
        let mut spec = SuiteSpec::new(&name).map_err(|e| {
            usage(format!(
                "{e}; available suites: all, {}",
                suite_names().join(", ")
            ))
        })?;
        if let Some(n) = trials {
            if n == 0 {
                return Err(usage("--trials must be at least 1"));
            }
            spec = spec.with_trials(n);
        }
        if let Some(seed) = flags.seed {
            spec = spec.with_seed(seed);
        }
        spec.config = cfg.clone();
        let r = run_suite(&spec)?;
        pass &= r.pass();
        text += &suite_lines(&r);
        reports.push(r.to_json());
    }
    let doc = if reports.len() == 1 {
        reports.pop().unwrap_or(Value::Null)
    } else {
        json::object([
            ("pass", Value::Bool(pass)),
            ("suites", Value::Array(reports)),
        ])
    };
    Ok((text, doc, u8::from(!pass)))
}

fn report(input: &str, flags: &Flags, cfg: &OptConfig) -> Result<Outcome, Failure> {
    let m = Manifest::from_value(&load(input)?)?;
    let mut text = String::new();
    let mut results = Vec::new();
    let mut code = 0u8;
    for task in &m.tasks {
        let (lines, result) = match &task.kind {
            TaskKind::Norm { class, sequence } => match class_norm(class, sequence, cfg) {
                Ok(c) => (
                    cert_lines(&format!("{} {class}", task.name), &c, flags.witness),
                    json::object([
                        ("kind", Value::String("norm".into())),
                        ("class", Value::String(class.to_string())),
                        ("result", json::cert(&c, flags.witness)),
                    ]),
                ),
                Err(e) => task_error(&task.name, e, &mut code),
            },
            TaskKind::OpNorm { x, y, operator, k } => match summing_norm(x, y, operator, *k, cfg) {
                Ok(c) => (
                    cert_lines(
                        &format!("{} ‖T‖_{{{x};{y}}} (k = {k})", task.name),
                        &c,
                        flags.witness,
                    ),
                    json::object([
                        ("kind", Value::String("opnorm".into())),
                        ("x", Value::String(x.to_string())),
                        ("y", Value::String(y.to_string())),
                        ("k", Value::from(*k)),
                        ("result", json::cert(&c, flags.witness)),
                    ]),
                ),
                Err(e) => task_error(&task.name, e, &mut code),
            },
            TaskKind::AdjointReport { x, y, operator, k } => {
                match adjoint_duality_report(x, y, operator, *k, cfg) {
                    Ok(r) => {
                        if !r.pass() && code == 0 {
                            code = 1;
                        }
                        (
                            format!("{}:\n{}", task.name, report_lines(&r, flags.witness)),
                            json::object([
                                ("kind", Value::String("adjoint-report".into())),
                                ("report", json::duality_report(&r, flags.witness)),
                            ]),
                        )
                    }
                    Err(e) => task_error(&task.name, e, &mut code),
                }
            }
        };
        text += &lines;
        let mut entries = vec![("name".to_string(), Value::String(task.name.clone()))];
        if let Value::Object(map) = result {
            entries.extend(map);
        }
        results.push(json::object(entries));
    }
    let doc = json::object([
        ("version", Value::from(m.version)),
        ("config", json::config(cfg)),
        ("tasks", Value::Array(results)),
    ]);
    Ok((text, doc, code))
}

fn task_error(name: &str, e: seqdual::Error, code: &mut u8) -> (String, Value) {
    *code = 2;
    (
        format!("{name}: error: {e}\n"),
        json::object([("error", Value::String(e.to_string()))]),
    )
}
