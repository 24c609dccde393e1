use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use ordtri::bounds::{self, BoundError, BoundParameters};
use ordtri::constructions::{generate, BlockerLines, ConstructionSpec};
use ordtri::geometry::{parse_rational, CanonicalLine, Point, PointSet};
use ordtri::incidence::{spanned_lines_with, summarize};
use ordtri::lemmas::check_all;
use ordtri::ordinary::{find_triangle, Method, OrdinaryError};
use ordtri::Execution;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "ordtri", version, about = "Exact analysis of c-ordinary lines and triangles")]
struct Cli {
    /// Run single-threaded.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Brute,
    Case1,
    Auto,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Brute => Method::Brute,
            MethodArg::Case1 => Method::Case1,
            MethodArg::Auto => Method::Auto,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Blocker,
    KLineBlocker,
    Grid,
    RandomRational,
    TwoLineConfig,
    NearPencil,
    CubicFamily,
}

#[derive(Subcommand)]
enum Command {
    /// Incidence summary of a point-set file.
    Analyze { file: PathBuf },

    /// Search for a c-ordinary triangle.
    FindTriangle {
        file: PathBuf,
        #[arg(long)]
        c: usize,
        #[arg(long, value_enum, default_value = "brute")]
        method: MethodArg,
    },

    /// Check the incidence lemmas, one JSON verdict per line.
    VerifyLemmas {
        file: PathBuf,
        /// Thresholds for the rich-lines check (default 2..=12).
        #[arg(long = "k", num_args = 1..)]
        k: Vec<usize>,
    },

    /// Generate a point set and write it in the point-set text format.
    Construct {
        #[arg(long, value_enum)]
        kind: Kind,
        /// key=value pairs, e.g. `width=3 height=3` or `values=-3,-2,1`.
        #[arg(long, num_args = 1..)]
        params: Vec<String>,
        /// Base set for the blocker kinds.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Blocker line as `a,b,c` for ax + by + c = 0; repeatable.
        #[arg(long, allow_hyphen_values = true)]
        line: Vec<String>,
        /// Extra point `x y` for two_line_config; repeatable.
        #[arg(long, allow_hyphen_values = true)]
        extra: Vec<String>,
        #[arg(long)]
        out: PathBuf,
    },

    /// Evaluate the bound chain, or the threshold on n for a given c.
    Bound {
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        c: Option<u64>,
        #[arg(long = "B", allow_hyphen_values = true)]
        b: Option<String>,
        /// Degree l of the anchor point.
        #[arg(long)]
        l: Option<u64>,
        /// Number of spanned lines |L|.
        #[arg(long)]
        lines: Option<u64>,
        #[arg(long)]
        threshold: bool,
        #[arg(long, default_value_t = bounds::DEFAULT_DIGITS)]
        precision: u32,
    },

    /// Run find-triangle over every file in a directory, appending JSON lines.
    Search {
        dir: PathBuf,
        #[arg(long)]
        c: usize,
        #[arg(long, value_enum, default_value = "brute")]
        method: MethodArg,
        #[arg(long)]
        results: PathBuf,
    },
}

#[derive(Debug, Serialize, Deserialize)]
struct RunRecord {
    command: String,
    inputs: Value,
    outputs: Value,
    timestamp: chrono::DateTime<chrono::Utc>,
    tool_version: String,
}

/// Exit status 0 or 1; errors map to 2.
#[derive(Debug)]
enum Outcome {
    Found,
    NotFound,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential { Execution::Sequential } else { Execution::default() };
    match run(cli.command, exec) {
        Ok(Outcome::Found) => ExitCode::SUCCESS,
        Ok(Outcome::NotFound) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn print_json(v: &impl Serialize) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn load(path: &Path) -> anyhow::Result<PointSet> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    PointSet::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn run(command: Command, exec: Execution) -> anyhow::Result<Outcome> {
    match command {
        Command::Analyze { file } => {
            let set = load(&file)?;
            let lines = spanned_lines_with(&set, exec)?;
            print_json(&summarize(&set, &lines).report())?;
            Ok(Outcome::Found)
        }
        Command::FindTriangle { file, c, method } => {
            let set = load(&file)?;
            let (out, found) = triangle_json(&set, c, method.into(), exec)?;
            print_json(&out)?;
            Ok(if found { Outcome::Found } else { Outcome::NotFound })
        }
        Command::VerifyLemmas { file, k } => {
            let set = load(&file)?;
            let ks = if k.is_empty() { (2..=12).collect() } else { k };
            let summary = summarize(&set, &spanned_lines_with(&set, exec)?);
            let verdicts = check_all(&summary, &ks)?;
            for v in &verdicts {
                println!("{}", serde_json::to_string(v)?);
            }
            Ok(if verdicts.iter().all(|v| v.ok()) { Outcome::Found } else { Outcome::NotFound })
        }
        Command::Construct { kind, params, input, line, extra, out } => {
            let spec = construction_spec(kind, &params, input.as_deref(), &line, &extra)?;
            let set = generate(&spec)?;
            fs::write(&out, set.to_text()).with_context(|| format!("writing {}", out.display()))?;
            Ok(Outcome::Found)
        }
        Command::Bound { n, c, b, l, lines, threshold, precision } => {
            if precision == 0 {
                bail!("--precision must be positive");
            }
            if threshold {
                let c = c.ok_or_else(|| anyhow!("--threshold needs --c"))?;
                return match bounds::threshold_report(c, precision) {
                    Ok(report) => {
                        print_json(&report)?;
                        Ok(Outcome::Found)
                    }
                    Err(e @ BoundError::Unreachable { .. }) => {
                        print_json(&json!({ "c": c, "threshold_n": "none", "reason": e.to_string() }))?;
                        Ok(Outcome::NotFound)
                    }
                    Err(e) => Err(e.into()),
                };
            }
            let n = n.ok_or_else(|| anyhow!("bound needs --n (or --threshold --c)"))?;
            let params = BoundParameters { n, c, l, line_count: lines, b };
            print_json(&bounds::evaluate(&params, precision)?)?;
            Ok(Outcome::Found)
        }
        Command::Search { dir, c, method, results } => search(&dir, c, method.into(), &results, exec),
    }
}

/// The find-triangle payload and whether a certificate was found.
fn triangle_json(set: &PointSet, c: usize, method: Method, exec: Execution) -> anyhow::Result<(Value, bool)> {
    if set.len() < 2 {
        // nothing spans a line, so there is no triangle
        return Ok((json!({ "c": c, "method": method, "certificate": "none" }), false));
    }
    let lines = spanned_lines_with(set, exec)?;
    match find_triangle(set, &lines, c, method, exec) {
        Ok(search) => {
            let found = search.certificate.is_some();
            let certificate = match &search.certificate {
                Some(cert) => serde_json::to_value(cert.report(set))?,
                None => json!("none"),
            };
            Ok((
                json!({ "c": c, "method": method, "used": search.used, "certificate": certificate }),
                found,
            ))
        }
        Err(e @ (OrdinaryError::NoRichLine | OrdinaryError::Unsatisfied)) => Ok((
            json!({ "c": c, "method": method, "certificate": "none", "reason": e.to_string() }),
            false,
        )),
        Err(e) => Err(e.into()),
    }
}

fn search(dir: &Path, c: usize, method: Method, results: &Path, exec: Execution) -> anyhow::Result<Outcome> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    files.retain(|p| p.is_file());
    files.sort();

    // files run in parallel; each search inside is sequential
    let run_one = |path: &PathBuf| -> (Value, bool) {
        let outcome = load(path).and_then(|set| triangle_json(&set, c, method, Execution::Sequential));
        match outcome {
            Ok((v, _)) => (v, true),
            Err(e) => (json!({ "error": format!("{e:#}") }), false),
        }
    };
    let outputs: Vec<(Value, bool)> = if exec.is_parallel() {
        files.par_iter().map(run_one).collect()
    } else {
        files.iter().map(run_one).collect()
    };

    let mut sink = OpenOptions::new()
        .create(true)
        .append(true)
        .open(results)
        .with_context(|| format!("opening {}", results.display()))?;
    let mut failures = 0;
    for (path, (output, ok)) in files.iter().zip(outputs) {
        failures += usize::from(!ok);
        let record = RunRecord {
            command: "find-triangle".into(),
            inputs: json!({ "file": path.display().to_string(), "c": c, "method": method }),
            outputs: output,
            timestamp: chrono::Utc::now(),
            tool_version: VERSION.into(),
        };
        writeln!(sink, "{}", serde_json::to_string(&record)?)?;
    }
    if failures > 0 {
        bail!("{failures} of {} files could not be processed", files.len());
    }
    Ok(Outcome::Found)
}

fn parse_params(params: &[String]) -> anyhow::Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for p in params {
        let (k, v) = p.split_once('=').ok_or_else(|| anyhow!("parameter {p:?} is not key=value"))?;
        if map.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            bail!("parameter {k:?} given twice");
        }
    }
    Ok(map)
}

struct Params(BTreeMap<String, String>);

impl Params {
    fn get<T: std::str::FromStr>(&mut self, key: &str, default: Option<T>) -> anyhow::Result<T>
    where
        T::Err: std::fmt::Display,
    {
        match self.0.remove(key) {
            Some(v) => v.parse().map_err(|e| anyhow!("parameter {key}={v}: {e}")),
            None => default.ok_or_else(|| anyhow!("missing parameter {key}")),
        }
    }

    fn finish(self) -> anyhow::Result<()> {
        match self.0.keys().next() {
            Some(k) => bail!("unknown parameter {k:?}"),
            None => Ok(()),
        }
    }
}

fn parse_point(s: &str) -> anyhow::Result<Point> {
    let parts: Vec<&str> = s.split_whitespace().collect();
    let [x, y] = parts[..] else {
        bail!("point {s:?} must be \"x y\"");
    };
    Ok(Point::new(parse_rational(x).map_err(|e| anyhow!(e))?, parse_rational(y).map_err(|e| anyhow!(e))?))
}

fn parse_lines(lines: &[String]) -> anyhow::Result<Vec<CanonicalLine>> {
    lines.iter().map(|l| l.parse().map_err(|e: String| anyhow!("line {l:?}: {e}"))).collect()
}

fn construction_spec(
    kind: Kind,
    params: &[String],
    input: Option<&Path>,
    line: &[String],
    extra: &[String],
) -> anyhow::Result<ConstructionSpec> {
    let mut p = Params(parse_params(params)?);
    let base = |input: Option<&Path>| -> anyhow::Result<PointSet> {
        load(input.ok_or_else(|| anyhow!("this kind needs --input"))?)
    };
    let spec = match kind {
        Kind::Blocker => {
            let mut lines = parse_lines(line)?;
            if lines.len() > 1 {
                bail!("blocker takes at most one --line");
            }
            ConstructionSpec::Blocker { base: base(input)?, line: lines.pop() }
        }
        Kind::KLineBlocker => {
            let lines = parse_lines(line)?;
            let lines = if lines.is_empty() { BlockerLines::Auto(p.get("count", Some(1))?) } else { BlockerLines::Given(lines) };
            ConstructionSpec::KLineBlocker { base: base(input)?, lines }
        }
        Kind::Grid => ConstructionSpec::Grid { width: p.get("width", None)?, height: p.get("height", None)? },
        Kind::RandomRational => ConstructionSpec::RandomRational {
            n: p.get("n", None)?,
            seed: p.get("seed", Some(0))?,
            range: p.get("range", Some(100))?,
            max_den: p.get("max_den", Some(10))?,
        },
        Kind::TwoLineConfig => ConstructionSpec::TwoLineConfig {
            on_x: p.get("on_x", None)?,
            on_y: p.get("on_y", None)?,
            extras: extra.iter().map(|e| parse_point(e)).collect::<anyhow::Result<_>>()?,
        },
        Kind::NearPencil => ConstructionSpec::NearPencil { k: p.get("k", None)? },
        Kind::CubicFamily => {
            let values: String = p.get("values", None)?;
            let params = values
                .split(',')
                .map(|t| parse_rational(t.trim()).map_err(|e| anyhow!(e)))
                .collect::<anyhow::Result<_>>()?;
            ConstructionSpec::CubicFamily { params }
        }
    };
    p.finish()?;
    Ok(spec)
}
