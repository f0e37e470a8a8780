//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand and returns the exit code with everything meant for stdout
//! and stderr, so the binary is a thin wrapper and tests can drive it
//! in-process.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::covariant::{
    certify_semistable, eval_covariant, is_semistable_mplus, search_certificate, validate_chi_data,
    CertificateSearch, ChiData, SearchOptions,
};
use crate::error::{Error, Result};
use crate::field::{Field, Fp, Q, QI};
use crate::path::lusztig_invariants;
use crate::quiver::{
    dominance, parse_int_list, variety_dimension, Quiver, RootVec, WeightVec, WeylWord,
};
use crate::reflection::{
    check_coxeter, reduce_to_dominant, reflect_point, reflect_word, verify_z_conditions,
    ReflectionResult, Side,
};
use crate::rep::{assemble_ab, in_level_set, moment_map, sample_fiber, DimData, FramedPoint, SampleOptions};
use crate::strata::{codim_report, count_points_fq, v_plus, CountOptions, DEFAULT_BUDGET};
use crate::with_prime;

/// Environment variable overriding the point-count budget.
pub const BUDGET_VAR: &str = "QUIVERLAB_BUDGET";

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "quiverlab", version, about = "Exact computations with Nakajima quiver varieties")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Cap on worker threads for parallel enumerations.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Space {
    /// Quiver file, or a builtin name such as A3, D4, kronecker, cycle3, A1+A1.
    #[arg(long)]
    quiver: String,
    #[arg(long, allow_hyphen_values = true)]
    d: String,
    #[arg(long, allow_hyphen_values = true)]
    v: String,
}

#[derive(Args, Debug, Clone)]
struct PointArgs {
    /// Point file.
    point: PathBuf,
    /// Quiver, when the point file does not embed one.
    #[arg(long)]
    quiver: Option<String>,
    /// λ, overriding the value stored in the point file.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// m, overriding the value stored in the point file.
    #[arg(long, allow_hyphen_values = true)]
    m: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cartan data, dimension and dominance of (d, v).
    Info {
        #[arg(long)]
        quiver: String,
        #[arg(long, allow_hyphen_values = true)]
        d: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
    },
    /// Sample a point of the level set μ = λ·Id.
    Sample {
        #[command(flatten)]
        space: Space,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        m: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Q, Q(i) or Fp:<p>.
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long, default_value_t = 20)]
        retries: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Apply the reflection functor at one vertex.
    Reflect {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long)]
        vertex: i64,
        #[arg(long, default_value = "auto")]
        side: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Transport a point along a Weyl word (last letter applied first).
    ReflectWord {
        #[command(flatten)]
        point: PointArgs,
        /// Comma-separated vertex labels.
        #[arg(long)]
        word: String,
        #[arg(long, default_value = "auto")]
        side: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Traces and framed entries of path evaluations.
    Invariants {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Validate chi-data and evaluate its covariant on a point.
    Covariant {
        #[command(flatten)]
        point: PointArgs,
        /// Chi-data file; without it a certificate is searched for.
        #[arg(long)]
        chi: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check Coxeter relations and kernel/cokernel agreement on samples.
    CheckCoxeter {
        #[command(flatten)]
        space: Space,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        m: Option<String>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Reduce (d, v) to the dominant case.
    Reduce {
        #[command(flatten)]
        space: Space,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        m: Option<String>,
    },
    /// Stratum dimensions and point counts.
    Strata {
        #[command(subcommand)]
        command: StrataCommand,
    },
    /// Count points over F_p, split by stratum.
    Count(CountArgs),
    /// Check the moment equation, or the reflection conditions against a
    /// reflected point.
    Verify {
        #[command(flatten)]
        point: PointArgs,
        /// Reflected point to check against.
        #[arg(long)]
        against: Option<PathBuf>,
        #[arg(long)]
        vertex: Option<i64>,
        #[arg(long, default_value = "kernel")]
        side: String,
    },
}

#[derive(Subcommand, Debug)]
enum StrataCommand {
    /// Dimension and codimension of every stratum.
    Dims {
        #[command(flatten)]
        space: Space,
    },
    /// Count points over F_p, split by stratum.
    Count(CountArgs),
}

#[derive(Args, Debug)]
struct CountArgs {
    #[command(flatten)]
    space: Space,
    #[arg(long)]
    prime: u64,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
}

macro_rules! with_field {
    ($tag:expr, $F:ident => $body:expr) => {
        match $tag {
            "Q" => {
                type $F = Q;
                $body
            }
            "Q(i)" => {
                type $F = QI;
                $body
            }
            other => match other.strip_prefix("Fp:").and_then(|p| p.parse::<u64>().ok()) {
                Some(p) => with_prime!(p, P => {
                    type $F = Fp<P>;
                    $body
                }),
                None => Err(Error::Parse(format!("unknown field {other:?}"))),
            },
        }
    };
}

/// What a command produced: a value to render, plus whether the check it
/// performed passed.
struct Report {
    value: Value,
    csv: Option<String>,
    ok: bool,
}

impl Report {
    fn new(value: Value) -> Self {
        Report {
            value,
            csv: None,
            ok: true,
        }
    }
}

/// Run the command line `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let format = cli.format;
    match execute(cli) {
        Ok(report) => match render(&report, format) {
            Ok(stdout) => Outcome {
                code: if report.ok { 0 } else { 1 },
                stdout,
                stderr: String::new(),
            },
            Err(msg) => Outcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
            },
        },
        Err(e) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn render(report: &Report, format: Format) -> std::result::Result<String, String> {
    match format {
        Format::Json => Ok(format!(
            "{}\n",
            serde_json::to_string_pretty(&report.value).expect("reports serialize")
        )),
        Format::Csv => report
            .csv
            .clone()
            .ok_or_else(|| "this command has no CSV output".to_string()),
        Format::Text => Ok(match &report.value {
            Value::Object(map) => map
                .iter()
                .map(|(k, v)| format!("{k}: {v}\n"))
                .collect(),
            Value::Null => String::new(),
            other => format!("{other}\n"),
        }),
    }
}

fn builtin_quiver(name: &str) -> Option<Quiver> {
    if let Some((a, b)) = name.split_once('+') {
        return Some(builtin_quiver(a)?.disjoint_union(&builtin_quiver(b)?));
    }
    let num = |prefix: &str| name.strip_prefix(prefix).and_then(|n| n.parse::<usize>().ok());
    if name == "kronecker" {
        Some(Quiver::kronecker())
    } else if let Some(n) = num("cycle").filter(|&n| n >= 2) {
        Some(Quiver::cycle(n))
    } else if let Some(n) = num("A").filter(|&n| n >= 1) {
        Some(Quiver::dynkin_a(n))
    } else if let Some(n) = num("D").filter(|&n| n >= 4) {
        Some(Quiver::dynkin_d(n))
    } else {
        None
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write_json(path: &Path, value: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("values serialize");
    fs::write(path, text + "\n")
        .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))
}

fn load_quiver(name: &str) -> Result<Quiver> {
    let path = Path::new(name);
    if path.exists() {
        let value = read_json(path)?;
        return Quiver::from_json(value.get("quiver").unwrap_or(&value));
    }
    builtin_quiver(name).ok_or_else(|| Error::Parse(format!("no quiver file or builtin named {name:?}")))
}

fn int_list(s: &str, n: usize, what: &str) -> Result<Vec<i64>> {
    let xs = parse_int_list(s)?;
    if xs.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "{what} has {} entries for {n} vertices",
            xs.len()
        )));
    }
    Ok(xs)
}

fn scalar_list<F: Field>(s: &str, n: usize, what: &str) -> Result<Vec<F>> {
    let xs: Vec<F> = if s.trim().is_empty() {
        Vec::new()
    } else {
        s.split(',')
            .map(|t| F::from_json(&Value::String(t.trim().to_string())))
            .collect::<Result<_>>()?
    };
    if xs.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "{what} has {} entries for {n} vertices",
            xs.len()
        )));
    }
    Ok(xs)
}

fn space(s: &Space) -> Result<(Arc<Quiver>, DimData)> {
    let q = load_quiver(&s.quiver)?;
    let n = q.n();
    let dims = DimData::from_signed(&int_list(&s.d, n, "d")?, &int_list(&s.v, n, "v")?)?;
    Ok((Arc::new(q), dims))
}

/// A point file: the point plus the quiver, λ and m stored beside it.
struct Loaded<F> {
    point: FramedPoint<F>,
    lam: Vec<F>,
    m: WeightVec<i64>,
}

fn field_tag(value: &Value) -> String {
    value
        .get("field")
        .and_then(Value::as_str)
        .unwrap_or("Q")
        .to_string()
}

fn load_point<F: Field>(args: &PointArgs, value: &Value) -> Result<Loaded<F>> {
    let quiver = match (&args.quiver, value.get("quiver")) {
        (Some(name), _) => load_quiver(name)?,
        (None, Some(q)) => Quiver::from_json(q)?,
        (None, None) => return Err(Error::Parse("point file has no quiver; pass --quiver".into())),
    };
    let n = quiver.n();
    let point = FramedPoint::from_json(Arc::new(quiver), value)?;
    let lam = match (&args.lambda, value.get("lambda")) {
        (Some(s), _) => scalar_list(s, n, "lambda")?,
        (None, Some(Value::Array(xs))) => xs.iter().map(F::from_json).collect::<Result<_>>()?,
        _ => vec![F::zero(); n],
    };
    let m = match (&args.m, value.get("m")) {
        (Some(s), _) => int_list(s, n, "m")?,
        (None, Some(Value::Array(xs))) => xs
            .iter()
            .map(|x| x.as_i64().ok_or_else(|| Error::Parse("m entries are integers".into())))
            .collect::<Result<_>>()?,
        _ => vec![0; n],
    };
    if lam.len() != n || m.len() != n {
        return Err(Error::ShapeMismatch("lambda and m need one entry per vertex".into()));
    }
    Ok(Loaded {
        point,
        lam,
        m: WeightVec(m),
    })
}

fn point_file<F: Field>(s: &FramedPoint<F>, lam: &[F], m: &WeightVec<i64>) -> Value {
    let mut obj = match s.to_json() {
        Value::Object(o) => o,
        _ => Map::new(),
    };
    obj.insert("quiver".into(), s.quiver().to_json());
    obj.insert("lambda".into(), Value::Array(lam.iter().map(F::to_json).collect()));
    obj.insert("m".into(), json!(m.0));
    Value::Object(obj)
}

fn emit_point(value: Value, out: &Option<PathBuf>) -> Result<Report> {
    match out {
        Some(path) => {
            write_json(path, &value)?;
            Ok(Report::new(json!({ "written": path.display().to_string() })))
        }
        None => Ok(Report::new(value)),
    }
}

fn side(s: &str) -> Result<Side> {
    s.parse()
}

fn count_options(jobs: Option<usize>) -> Result<CountOptions> {
    let budget = match std::env::var(BUDGET_VAR) {
        Ok(s) => s
            .trim()
            .parse::<u128>()
            .map_err(|_| Error::Parse(format!("{BUDGET_VAR} must be a nonnegative integer")))?,
        Err(_) => DEFAULT_BUDGET,
    };
    Ok(CountOptions { budget, jobs })
}

fn count(args: &CountArgs, jobs: Option<usize>) -> Result<Report> {
    let (q, dims) = space(&args.space)?;
    let lam = match &args.lambda {
        Some(s) => int_list(s, q.n(), "lambda")?,
        None => vec![0; q.n()],
    };
    let r = count_points_fq(q, &dims, &lam, args.prime, count_options(jobs)?)?;
    Ok(Report {
        csv: Some(r.to_csv()),
        value: r.to_json(),
        ok: true,
    })
}

fn execute(cli: Cli) -> Result<Report> {
    let jobs = cli.jobs;
    match cli.command {
        Command::Info { quiver, d, v } => {
            let q = load_quiver(&quiver)?;
            let c = q.cartan_data();
            let mut out = json!({
                "vertices": q.vertices(),
                "arrows": q.arrows().len(),
                "cartan": c.cartan,
                "finite_type": c.is_finite_type(),
            });
            if let (Some(d), Some(v)) = (d, v) {
                let n = q.n();
                let (d, v) = (WeightVec(int_list(&d, n, "d")?), RootVec(int_list(&v, n, "v")?));
                let dims = DimData::from_signed(&d.0, &v.0)?;
                out["dim"] = json!(variety_dimension(&c, &d, &v));
                out["space_dimension"] = json!(dims.space_dimension(&q));
                out["dominance"] = serde_json::to_value(dominance(&c, &d, &v)).expect("flags serialize");
            }
            Ok(Report::new(out))
        }
        Command::Sample {
            space: sp,
            lambda,
            m,
            seed,
            field,
            retries,
            out,
        } => {
            let (q, dims) = space(&sp)?;
            let n = q.n();
            let m = WeightVec(match m {
                Some(s) => int_list(&s, n, "m")?,
                None => vec![0; n],
            });
            let opts = SampleOptions {
                retries,
                ..SampleOptions::default()
            };
            let value = with_field!(field.as_str(), F => {
                let lam: Vec<F> = match &lambda {
                    Some(s) => scalar_list(s, n, "lambda")?,
                    None => vec![F::zero(); n],
                };
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let s = sample_fiber(q.clone(), dims.clone(), &lam, &mut rng, opts)?;
                Ok::<Value, Error>(point_file(&s, &lam, &m))
            })?;
            emit_point(value, &out)
        }
        Command::Reflect {
            point,
            vertex,
            side: sd,
            out,
        } => {
            let value = read_json(&point.point)?;
            let sd = side(&sd)?;
            let result = with_field!(field_tag(&value).as_str(), F => {
                let l = load_point::<F>(&point, &value)?;
                let i = l.point.quiver().vertex_index(vertex)?;
                let r = reflect_point(&l.point, i, &l.lam, &l.m, sd)?;
                let mut file = point_file(&r.point, &r.lam, &r.m);
                file["side"] = json!(r.side.to_string());
                Ok::<Value, Error>(file)
            })?;
            emit_point(result, &out)
        }
        Command::ReflectWord {
            point,
            word,
            side: sd,
            out,
        } => {
            let value = read_json(&point.point)?;
            let sd = side(&sd)?;
            let result = with_field!(field_tag(&value).as_str(), F => {
                let l = load_point::<F>(&point, &value)?;
                let q = l.point.quiver();
                let letters = parse_int_list(&word)?
                    .into_iter()
                    .map(|label| q.vertex_index(label))
                    .collect::<Result<Vec<_>>>()?;
                let t = reflect_word(&l.point, &WeylWord(letters), &l.lam, &l.m, sd)?;
                Ok::<Value, Error>(point_file(&t.point, &t.lam, &t.m))
            })?;
            emit_point(result, &out)
        }
        Command::Invariants { point, max_len } => {
            let value = read_json(&point.point)?;
            let list = with_field!(field_tag(&value).as_str(), F => {
                let l = load_point::<F>(&point, &value)?;
                let items: Vec<Value> = lusztig_invariants(&l.point, max_len)
                    .into_iter()
                    .map(|inv| json!({"invariant": inv.descriptor, "value": inv.value.to_json()}))
                    .collect();
                Ok::<Vec<Value>, Error>(items)
            })?;
            let csv = std::iter::once("invariant,value\n".to_string())
                .chain(list.iter().map(|x| {
                    format!("{},{}\n", x["invariant"].as_str().unwrap_or(""), x["value"])
                }))
                .collect();
            Ok(Report {
                value: json!({ "invariants": list }),
                csv: Some(csv),
                ok: true,
            })
        }
        Command::Covariant {
            point,
            chi,
            budget,
            seed,
        } => {
            let value = read_json(&point.point)?;
            let chi_value = chi.as_deref().map(read_json).transpose()?;
            let m_override = point.m.is_some();
            with_field!(field_tag(&value).as_str(), F => {
                let l = load_point::<F>(&point, &value)?;
                let q = l.point.quiver();
                let mplus = is_semistable_mplus(&l.point);
                match &chi_value {
                    Some(cv) => {
                        let delta = ChiData::from_json(q, cv)?;
                        let m = if m_override {
                            l.m.clone()
                        } else {
                            WeightVec(delta.m_plus.iter().zip(&delta.m_minus)
                                .map(|(&p, &n)| p as i64 - n as i64).collect())
                        };
                        let violations = validate_chi_data(&delta, &m, l.point.dims());
                        let f = eval_covariant(&delta, &l.point)?;
                        let certified = certify_semistable(&l.point, &delta, &m)?;
                        Ok(Report::new(json!({
                            "m": m.0,
                            "violations": serde_json::to_value(&violations).expect("violations serialize"),
                            "value": f.to_json(),
                            "certified": certified,
                            "mplus_semistable": mplus,
                        })))
                    }
                    None => {
                        let opts = SearchOptions { budget, seed, ..SearchOptions::default() };
                        let found = search_certificate(&l.point, &l.m, opts);
                        let (status, delta) = match found {
                            CertificateSearch::Certified(d) => ("certified", d.to_json(q)),
                            CertificateSearch::Unknown { .. } => ("unknown", Value::Null),
                        };
                        Ok::<Report, Error>(Report::new(json!({
                            "m": l.m.0,
                            "status": status,
                            "chi": delta,
                            "budget": budget,
                            "mplus_semistable": mplus,
                        })))
                    }
                }
            })
        }
        Command::CheckCoxeter {
            space: sp,
            lambda,
            m,
            trials,
            seed,
        } => {
            let (q, dims) = space(&sp)?;
            let n = q.n();
            let lam: Vec<Q> = match &lambda {
                Some(s) => scalar_list(s, n, "lambda")?,
                None => vec![Q::from(0); n],
            };
            let m = WeightVec(match m {
                Some(s) => int_list(&s, n, "m")?,
                None => vec![0; n],
            });
            let report = check_coxeter(q.clone(), &dims, &lam, &m, trials, seed)?;
            let mut value = serde_json::to_value(&report).expect("report serializes");
            for r in value["relations"].as_array_mut().into_iter().flatten() {
                let labels: Vec<i64> = r["vertices"]
                    .as_array()
                    .into_iter()
                    .flatten()
                    .filter_map(Value::as_u64)
                    .map(|i| q.vertices()[i as usize])
                    .collect();
                r["vertices"] = json!(labels);
            }
            value["all_yes"] = json!(report.all_yes());
            Ok(Report {
                value,
                csv: None,
                ok: report.all_yes(),
            })
        }
        Command::Reduce {
            space: sp,
            lambda,
            m,
        } => {
            let q = load_quiver(&sp.quiver)?;
            let n = q.n();
            let d = WeightVec(int_list(&sp.d, n, "d")?);
            let v = RootVec(int_list(&sp.v, n, "v")?);
            let lam: Vec<Q> = match &lambda {
                Some(s) => scalar_list(s, n, "lambda")?,
                None => vec![Q::from(0); n],
            };
            let m = m.map(|s| int_list(&s, n, "m")).transpose()?.map(WeightVec);
            let trace = reduce_to_dominant(&q.cartan_data(), &d, &v, &lam, m.as_ref())?;
            Ok(Report::new(trace.to_json(&q)))
        }
        Command::Strata { command } => match command {
            StrataCommand::Dims { space: sp } => {
                let (q, dims) = space(&sp)?;
                let r = codim_report(&q, &dims)?;
                Ok(Report {
                    value: serde_json::to_value(&r).expect("report serializes"),
                    csv: Some(r.to_csv()),
                    ok: true,
                })
            }
            StrataCommand::Count(args) => count(&args, jobs),
        },
        Command::Count(args) => count(&args, jobs),
        Command::Verify {
            point,
            against,
            vertex,
            side: sd,
        } => {
            let value = read_json(&point.point)?;
            let other = against.as_deref().map(read_json).transpose()?;
            let sd = side(&sd)?;
            with_field!(field_tag(&value).as_str(), F => {
                let l = load_point::<F>(&point, &value)?;
                match &other {
                    None => {
                        let ok = in_level_set(&l.point, &l.lam);
                        let mu: Vec<Value> = moment_map(&l.point).iter().map(|m| m.to_json()).collect();
                        Ok::<Report, Error>(Report {
                            value: json!({
                                "in_level_set": ok,
                                "moment_map": mu,
                                "v_plus": v_plus(&l.point).v_prime,
                            }),
                            csv: None,
                            ok,
                        })
                    }
                    Some(ov) => {
                        let label = vertex.ok_or_else(|| Error::Parse("--vertex is required with --against".into()))?;
                        let i = l.point.quiver().vertex_index(label)?;
                        let t_args = PointArgs {
                            point: PathBuf::new(),
                            quiver: point.quiver.clone(),
                            lambda: None,
                            m: None,
                        };
                        let t = load_point::<F>(&t_args, ov)?;
                        let ab = assemble_ab(&t.point, i);
                        let result = ReflectionResult {
                            point: t.point,
                            lam: t.lam,
                            m: t.m,
                            side: if sd == Side::Auto { Side::Kernel } else { sd },
                            a_new: ab.a,
                            b_new: ab.b,
                        };
                        let report = verify_z_conditions(&l.point, &result, i, &l.lam);
                        let ok = report.all_passed();
                        Ok(Report {
                            value: serde_json::to_value(&report).expect("report serializes"),
                            csv: None,
                            ok,
                        })
                    }
                }
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("quiverlab").chain(args.iter().copied()))
    }

    #[test]
    fn info_a2() {
        let out = run_args(&["info", "--quiver", "A2", "--d", "1,1", "--v", "1,1"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["dim"], json!(2));
        assert_eq!(v["cartan"], json!([[2, -1], [-1, 2]]));
    }

    #[test]
    fn usage_and_domain_errors() {
        assert_eq!(run_args(&["frobnicate"]).code, 2);
        assert_eq!(run_args(&["info"]).code, 2);
        let out = run_args(&["info", "--quiver", "nonsense"]);
        assert_eq!(out.code, 1);
        let out = run_args(&["sample", "--quiver", "A1", "--d", "0", "--v", "1", "--lambda", "1"]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("sample"));
    }

    #[test]
    fn sample_reflect_pipeline() {
        let dir = tempfile::tempdir().unwrap();
        let pt = dir.path().join("pt.json");
        let pts = pt.to_str().unwrap();
        let out = run_args(&[
            "sample", "--quiver", "A1", "--d", "2", "--v", "1", "--lambda", "1", "--seed", "42", "-o", pts,
        ]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let out = run_args(&["reflect", "--vertex", "1", pts]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["lambda"], json!(["-1"]));
    }

    #[test]
    fn csv_only_where_supported() {
        let out = run_args(&["--format", "csv", "strata", "dims", "--quiver", "A1", "--d", "2", "--v", "1"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.starts_with("v_prime,dimension,codimension"));
        let out = run_args(&["--format", "csv", "info", "--quiver", "A1"]);
        assert_eq!(out.code, 2);
    }
}
