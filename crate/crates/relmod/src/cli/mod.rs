//! Command-line front end.

pub mod suite;

use crate::braiding::{check_quasitriangular, twist_op, ybe_residual3};
use crate::error::RelResult;
use crate::fusion::{envelope_dim, tensor_decompose_zero};
use crate::invariants::{delta_pm_sl21, hopf_value_sl21, kirby_color_sl21, twist_scalar, DeltaMode, Ideal, InvariantContext, Sign};
use crate::repr::{check_relations, make_epsilon, make_sigma, make_standard, make_trivial, make_typical, WeightModule};
use crate::rootdata::{RootDatum, Weight, WeightJson};
use crate::scalars::{c64, Tolerance};
use crate::tangles::{cgp_invariant, evaluate, f_prime, DiagramFile};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use serde_json::{json, Value};
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(name = "relmod", version, about = "Quantum sl(m|n) invariants at odd roots of unity")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    #[arg(long, global = true, default_value_t = 2)]
    pub m: usize,
    #[arg(long, global = true, default_value_t = 1)]
    pub n: usize,
    #[arg(long, global = true, default_value_t = 5)]
    pub ell: u32,
    #[arg(long, global = true, value_enum, default_value_t = IdealArg::Proj)]
    pub ideal: IdealArg,
    /// Overrides the numeric tolerances.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, default_value_t = 20240601)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Significant digits for printed numbers.
    #[arg(long, global = true, default_value_t = 12)]
    pub precision: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IdealArg {
    Proj,
    Pert,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DeltaModeArg {
    Closed,
    Sum,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModuleType {
    Typical,
    Standard,
    Sigma,
    Trivial,
    Epsilon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BraidCheck {
    Ybe,
    Hexagon,
    Twist,
}

/// A weight given as JSON or as `--c` and `--a`.
#[derive(Debug, Clone, Args)]
pub struct WeightArgs {
    /// Weight as JSON, e.g. '{"c":[1],"a":{"re":0.3,"im":0.1}}'.
    #[arg(long)]
    pub weight: Option<String>,
    /// Comma-separated integer labels.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub c: Vec<i64>,
    /// Complex number such as 0.3, 0.3+0.1i or -2i.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Typicality of a weight.
    Typical(WeightArgs),
    /// Alcove membership of a weight.
    Alcove {
        #[command(flatten)]
        w: WeightArgs,
        #[arg(long)]
        strict: bool,
    },
    /// Modified dimension.
    Mdim(WeightArgs),
    /// Twist scalar.
    Twist(WeightArgs),
    /// S' of a circle around a strand.
    Sprime {
        #[command(flatten)]
        strand: WeightArgs,
        /// Circle weight as JSON.
        #[arg(long)]
        circle: String,
    },
    /// Hopf link value for two sl(2|1) typical colors.
    Hopf {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value_t = 0)]
        c: i64,
        #[arg(long, allow_hyphen_values = true)]
        a2: String,
        #[arg(long, default_value_t = 0)]
        c2: i64,
    },
    /// Summands of V(a) (x) V(b) for zero labels.
    Fuse {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Delta_+ and Delta_- for sl(2|1).
    Delta {
        #[arg(long, value_enum, default_value_t = DeltaModeArg::Both)]
        mode: DeltaModeArg,
        /// Grading used by the finite sum.
        #[arg(long, allow_hyphen_values = true, default_value = "0.3+0.1i")]
        a: String,
    },
    /// Terms of the Kirby color of grading a.
    Kirby {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Dump an sl(2|1) module.
    Module {
        #[arg(long = "type", value_enum)]
        kind: ModuleType,
        #[arg(long, allow_hyphen_values = true, default_value = "0.3+0.1i")]
        a: String,
        #[arg(long, default_value_t = 0)]
        c: usize,
        #[arg(long)]
        odd: bool,
        /// Weight coordinates of a sigma module.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coords: Vec<f64>,
    },
    /// Braiding checks on sl(2|1) modules.
    Braid {
        /// Comma-separated list: standard, or typical:<a>:<c>.
        #[arg(long, value_delimiter = ',', default_value = "standard,standard,standard")]
        modules: Vec<String>,
        #[arg(long, value_enum, default_value_t = BraidCheck::Ybe)]
        check: BraidCheck,
    },
    /// Matrix of a diagram.
    Eval {
        #[arg(long)]
        diagram: String,
    },
    /// Renormalized invariant of a (1,1)-tangle.
    Fprime {
        #[arg(long)]
        diagram: String,
    },
    /// Surgery invariant.
    Cgp {
        #[arg(long)]
        diagram: String,
    },
    /// Run the acceptance suite.
    Verify {
        /// Comma-separated criterion numbers.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

/// Parses `x`, `x+yi`, `x-yi`, `yi`.
pub fn parse_complex(s: &str) -> Result<C64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse complex number '{s}'");
    if t.is_empty() {
        return Err(bad());
    }
    if let Some(body) = t.strip_suffix('i') {
        let split = body.char_indices().skip(1).filter(|&(k, ch)| (ch == '+' || ch == '-') && !body[..k].ends_with(['e', 'E'])).map(|(k, _)| k).last();
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            x => x,
        };
        let re: f64 = re.parse().map_err(|_| bad())?;
        let im: f64 = im.trim_start_matches('+').parse().map_err(|_| bad())?;
        Ok(c64(re, im))
    } else {
        Ok(c64(t.parse().map_err(|_| bad())?, 0.0))
    }
}

fn weight_of(rd: &RootDatum, w: &WeightArgs) -> Result<Weight, String> {
    if let Some(j) = &w.weight {
        let wj: WeightJson = serde_json::from_str(j).map_err(|e| e.to_string())?;
        return Weight::from_json(rd.m, rd.n, &wj).map_err(|e| e.to_string());
    }
    let a = parse_complex(w.a.as_deref().ok_or("either --weight or --a is required")?)?;
    let c = if w.c.is_empty() { vec![0; rd.r - 1] } else { w.c.clone() };
    rd.weight(&c, a).map_err(|e| e.to_string())
}

fn cj(z: C64) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    let s = format!("{:.*e}", digits.saturating_sub(1), x);
    let r: f64 = s.parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn round_value(v: &mut Value, digits: usize) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64() {
                *v = json!(round_sig(x, digits));
            }
        }
        Value::Array(a) => a.iter_mut().for_each(|x| round_value(x, digits)),
        Value::Object(o) => o.values_mut().for_each(|x| round_value(x, digits)),
        _ => {}
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(o) if o.len() == 2 && o.contains_key("re") && o.contains_key("im") => {
            out.push((prefix.into(), format!("{} {:+}i", o["re"], o["im"].as_f64().unwrap_or(0.0))));
        }
        Value::Object(o) => {
            for (k, x) in o {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            out.push((prefix.into(), serde_json::to_string(v).unwrap_or_default()));
        }
        Value::Array(a) => {
            for (k, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{k}]"), x, out);
            }
        }
        _ => out.push((prefix.into(), v.to_string())),
    }
}

/// Renders a JSON value in the chosen format.
pub fn render(v: &Value, g: &GlobalArgs) -> String {
    let mut v = v.clone();
    round_value(&mut v, g.precision);
    match g.format {
        Format::Json => serde_json::to_string_pretty(&v).unwrap_or_default(),
        Format::Table => {
            let mut rows = Vec::new();
            flatten("", &v, &mut rows);
            let w = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            rows.iter().map(|(k, x)| format!("{k:<w$}  {x}")).collect::<Vec<_>>().join("\n")
        }
    }
}

fn datum(g: &GlobalArgs) -> Result<RootDatum, String> {
    let tol = match g.tol {
        Some(t) => Tolerance::new(t, t).map_err(|e| e.to_string())?,
        None => Tolerance::default(),
    };
    RootDatum::with_tol(g.m, g.n, g.ell, tol).map_err(|e| e.to_string())
}

fn ideal(g: &GlobalArgs) -> Ideal {
    match g.ideal {
        IdealArg::Proj => Ideal::Projective,
        IdealArg::Pert => Ideal::Perturbative,
    }
}

fn meta(g: &GlobalArgs) -> Value {
    json!({"m": g.m, "n": g.n, "ell": g.ell, "ideal": format!("{:?}", g.ideal).to_lowercase()})
}

fn module_of(rd: &RootDatum, spec: &str) -> Result<WeightModule, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    let r = match parts.as_slice() {
        ["standard"] => make_standard(rd),
        ["trivial"] => Ok(make_trivial(rd)),
        ["typical", a, c] => make_typical(rd, parse_complex(a)?, c.parse().map_err(|_| format!("bad label in '{spec}'"))?),
        _ => return Err(format!("unknown module '{spec}'")),
    };
    r.map_err(|e| e.to_string())
}

fn read_diagram(path: &str) -> Result<DiagramFile, String> {
    let s = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    serde_json::from_str(&s).map_err(|e| format!("{path}: {e}"))
}


/// Outer error is a usage error, inner error a domain error.
fn compute(cmd: &Command, g: &GlobalArgs, rd: &RootDatum) -> Result<RelResult<Value>, String> {
    let ctx = InvariantContext::new(rd.clone(), ideal(g));
    let out = |v: Value| Ok(Ok(json!({"value": v, "meta": meta(g)})));
    macro_rules! tryd {
        ($e:expr) => {
            match $e {
                Ok(x) => x,
                Err(o) => return Ok(Err(o)),
            }
        };
    }
    match cmd {
        Command::Typical(w) => {
            let l = weight_of(rd, w)?;
            let rep = rd.is_typical(&l);
            out(json!({"typical": rep.typical, "witness": rep.witness, "near_wall": rep.near_wall, "arithmetic": rd.is_typical_arith(&l)}))
        }
        Command::Alcove { w, strict } => {
            let l = weight_of(rd, w)?;
            out(json!({"in_alcove": tryd!(rd.in_alcove(&l, *strict)), "strict": strict}))
        }
        Command::Mdim(w) => {
            let l = weight_of(rd, w)?;
            out(cj(tryd!(ctx.mdim(&l))))
        }
        Command::Twist(w) => {
            let l = weight_of(rd, w)?;
            out(cj(tryd!(twist_scalar(rd, &l))))
        }
        Command::Sprime { strand, circle } => {
            let l = weight_of(rd, strand)?;
            let cw = weight_of(rd, &WeightArgs { weight: Some(circle.clone()), c: vec![], a: None })?;
            out(cj(tryd!(ctx.s_prime(&cw, &l))))
        }
        Command::Hopf { a, c, a2, c2 } => out(cj(tryd!(hopf_value_sl21(rd, parse_complex(a)?, *c, parse_complex(a2)?, *c2)))),
        Command::Fuse { a, b } => {
            let ws = tryd!(tensor_decompose_zero(rd, parse_complex(a)?, parse_complex(b)?));
            let mut list = Vec::new();
            for w in ws {
                let c = w.c_nat(rd.tol.zero_tol).unwrap_or_default();
                let md = match ctx.mdim(&w) {
                    Ok(z) => cj(z),
                    Err(e) => json!({"error": e.to_string()}),
                };
                list.push(json!({"weight": w.to_json(), "dim": envelope_dim(rd, &c).ok(), "mdim": md}));
            }
            out(json!(list))
        }
        Command::Delta { mode, a } => {
            let a = parse_complex(a)?;
            let mut v = serde_json::Map::new();
            for (name, sign) in [("plus", Sign::Plus), ("minus", Sign::Minus)] {
                let mut e = serde_json::Map::new();
                let closed = tryd!(delta_pm_sl21(rd, sign, DeltaMode::ClosedForm));
                if *mode != DeltaModeArg::Sum {
                    e.insert("closed".into(), cj(closed));
                }
                if *mode != DeltaModeArg::Closed {
                    let s = tryd!(delta_pm_sl21(rd, sign, DeltaMode::NumericSum(a)));
                    e.insert("sum".into(), cj(s));
                    if *mode == DeltaModeArg::Both {
                        e.insert("diff".into(), json!((s - closed).norm()));
                    }
                }
                v.insert(name.into(), Value::Object(e));
            }
            out(Value::Object(v))
        }
        Command::Kirby { a } => {
            let k = tryd!(kirby_color_sl21(rd, parse_complex(a)?));
            let terms: Vec<Value> = k.terms.iter().map(|(w, d)| json!({"weight": w.to_json(), "coefficient": cj(*d)})).collect();
            let nonzero = k.terms.iter().filter(|(_, d)| d.norm() > rd.tol.zero_tol).count();
            out(json!({"terms": terms, "nonzero": nonzero}))
        }
        Command::Module { kind, a, c, odd, coords } => {
            let m = match kind {
                ModuleType::Typical => tryd!(make_typical(rd, parse_complex(a)?, *c)),
                ModuleType::Standard => tryd!(make_standard(rd)),
                ModuleType::Trivial => make_trivial(rd),
                ModuleType::Epsilon => make_epsilon(rd),
                ModuleType::Sigma => {
                    let w = Weight { m: rd.m, n: rd.n, coords: coords.iter().map(|&x| c64(x, 0.0)).collect() };
                    tryd!(make_sigma(rd, *odd, &w))
                }
            };
            let rep = check_relations(rd, &m);
            out(json!({"module": m.to_json(), "relation_residual": rep.max_residual}))
        }
        Command::Braid { modules, check } => {
            let ms = modules.iter().map(|s| module_of(rd, s)).collect::<Result<Vec<_>, _>>()?;
            match check {
                BraidCheck::Ybe | BraidCheck::Hexagon => {
                    if ms.len() != 3 {
                        return Err("three modules are required".into());
                    }
                    if *check == BraidCheck::Ybe {
                        out(json!({"ybe": ybe_residual3(rd, &ms[0], &ms[1], &ms[2])}))
                    } else {
                        let r = check_quasitriangular(rd, &ms[0], &ms[1], &ms[2]);
                        out(json!({"coproduct_left": r.coproduct_left, "coproduct_right": r.coproduct_right, "intertwining": r.intertwining}))
                    }
                }
                BraidCheck::Twist => {
                    let list: Vec<Value> = ms
                        .iter()
                        .map(|m| {
                            let t = twist_op(rd, m);
                            json!({"module": m.label, "scalar": crate::braiding::is_scalar(&t, 1e-9), "value": cj(t[(0, 0)])})
                        })
                        .collect();
                    out(json!(list))
                }
            }
        }
        Command::Eval { diagram } => {
            let d = tryd!(read_diagram(diagram)?.build(rd));
            let m = tryd!(evaluate(rd, &d));
            let rows: Vec<Vec<Value>> = (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| cj(m[(i, j)])).collect()).collect();
            out(json!({"rows": m.nrows(), "cols": m.ncols(), "matrix": rows}))
        }
        Command::Fprime { diagram } => {
            let d = tryd!(read_diagram(diagram)?.build(rd));
            out(cj(tryd!(f_prime(&ctx, &d))))
        }
        Command::Cgp { diagram } => {
            let p = tryd!(read_diagram(diagram)?.build_surgery(rd));
            out(cj(tryd!(cgp_invariant(&ctx, &p))))
        }
        Command::Verify { .. } => unreachable!("handled by run"),
    }
}

/// Runs a parsed command line, printing to stdout and returning the exit code.
pub fn run(cli: &Cli) -> ExitCode {
    let g = &cli.global;
    let rd = match datum(g) {
        Ok(rd) => rd,
        Err(e) => {
            eprintln!("configuration error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Command::Verify { only } = &cli.command {
        if let Some(t) = g.tol {
            if !(t.is_finite() && t >= 0.0) {
                eprintln!("configuration error: tolerance must be finite and nonnegative");
                return ExitCode::from(2);
            }
        }
        let cfg = suite::SuiteConfig { ell: rd.ell, seed: g.seed, tol: g.tol, only: only.clone() };
        let report = suite::run_suite(&cfg);
        let v = serde_json::to_value(&report).unwrap_or(Value::Null);
        println!("{}", render(&v, g));
        for c in &report.criteria {
            if !c.pass {
                let names: Vec<&str> = c.checks.iter().filter(|k| !k.pass).map(|k| k.name.as_str()).collect();
                eprintln!("FAIL criterion {} ({}): {}", c.id, c.name, names.join("; "));
            }
        }
        return ExitCode::from(if report.pass { 0 } else { 1 });
    }
    match compute(&cli.command, g, &rd) {
        Ok(Ok(v)) => {
            println!("{}", render(&v, g));
            ExitCode::SUCCESS
        }
        Ok(Err(e)) => {
            println!("{}", render(&json!({"error": format!("{e:?}"), "message": e.to_string(), "meta": meta(g)}), g));
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Entry point for the binary.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let _ = e.print();
            ExitCode::from(if e.use_stderr() { 2 } else { 0 })
        }
    }
}
