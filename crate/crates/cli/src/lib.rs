//! Command-line front end for the `giambelli` crate.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use giambelli::gmatrix::{
    canonical_form, determinant, dual_jacobi_trudi, evaluate, evaluate_with, giambelli_matrix, jacobi_trudi, SymMatrix,
};
use giambelli::replay::{default_vars, verify_chain, ChainReport};
use giambelli::shapes::enumerate_skew_shapes;
use giambelli::stabeq::{chain, twist_step, OpLog};
use giambelli::strips::{enumerate_decompositions, parse_steps, BorderStrip, Step, TwistCase};
use giambelli::symfun::{check_glue_identity, schur_expansion, SchurCache, SymPoly};
use giambelli::{Error, OutsideDecomposition, SkewShape};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Ascii,
    Json,
    Tex,
}

#[derive(Debug, Parser)]
#[command(name = "giambelli", version, about = "Outside decompositions, Giambelli type matrices and their stable equivalence")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Ascii, global = true)]
    pub format: Format,

    /// Number of variables used for evaluation.
    #[arg(long, global = true)]
    pub vars: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw a skew diagram.
    Diagram { shape: String },
    /// List outside decompositions, or show the one given by --directions.
    Decompose {
        shape: String,
        /// Cutting-strip steps, e.g. RRU.
        #[arg(long)]
        directions: Option<String>,
    },
    /// Print a Giambelli type matrix (the horizontal decomposition by default).
    Matrix {
        shape: String,
        #[arg(long)]
        directions: Option<String>,
        /// Print the Jacobi–Trudi matrix instead.
        #[arg(long, conflicts_with_all = ["dual", "directions"])]
        jacobi_trudi: bool,
        /// Print the dual Jacobi–Trudi matrix instead.
        #[arg(long, conflicts_with = "directions")]
        dual: bool,
        /// Also evaluate the determinant and compare it with the skew Schur function.
        #[arg(long)]
        det: bool,
    },
    /// Print the canonical form of a Giambelli type matrix.
    Canonical {
        shape: String,
        #[arg(long)]
        directions: Option<String>,
    },
    /// Apply one twist and print the operations it takes.
    Twist {
        shape: String,
        /// Content of the twisted diagonal.
        #[arg(long, allow_hyphen_values = true)]
        at: i64,
        #[arg(long)]
        directions: Option<String>,
    },
    /// Run the chain from the horizontal to the vertical decomposition.
    Chain {
        shape: String,
        /// Also print every operation.
        #[arg(long)]
        trace: bool,
        /// State the log for the Jacobi–Trudi matrix rather than its transpose.
        #[arg(long)]
        transpose: bool,
        /// Write one file per stage into this directory.
        #[arg(long)]
        golden: Option<PathBuf>,
        /// Compare the stages with files written by --golden.
        #[arg(long)]
        check_golden: Option<PathBuf>,
    },
    /// Exhaustive checks over all small shapes, or a replayed chain for one shape.
    Verify {
        shape: Option<String>,
        #[arg(long, default_value_t = 6)]
        max_boxes: usize,
        /// Restrict the chain check to edgewise connected shapes.
        #[arg(long)]
        connected: bool,
    },
    /// Expand a skew Schur function by listing semistandard tableaux.
    Oracle { shape: String },
}

/// Errors split by exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad input: exit code 2.
    Usage(String),
    /// A check did not pass: exit code 1.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<String, Failure>;

/// Parses `args` and runs the command, writing to `out` and `err`. Returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Check(text)) => {
            let _ = out.write_all(text.as_bytes());
            let _ = writeln!(err, "verification failed");
            1
        }
    }
}

fn parse_shape(text: &str) -> std::result::Result<SkewShape, Failure> {
    text.parse().map_err(|e: Error| Failure::Usage(e.to_string()))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

/// The decomposition named by `--directions`, or the horizontal one. A word
/// of `d - 1` steps is read over the occupied diagonals of a connected
/// shape, a word of `c_max - c_min` steps over the full content range.
pub fn select_decomposition(shape: &SkewShape, directions: Option<&str>) -> giambelli::Result<OutsideDecomposition> {
    let Some(word) = directions else {
        return Ok(OutsideDecomposition::horizontal(shape));
    };
    let steps = parse_steps(word)?;
    let (lo, hi) = shape.content_range().ok_or_else(|| Error::EmptyShape(shape.to_string()))?;
    let frame = (hi - lo) as usize;
    let pi = if steps.len() == frame {
        OutsideDecomposition::from_directions(shape, steps)?
    } else if shape.is_edgewise_connected() && steps.len() + 1 == shape.diagonal_count() {
        let first = *shape.occupied_contents().iter().next().unwrap();
        OutsideDecomposition::from_cutting_strip(shape, &BorderStrip::new(first, steps))?
    } else {
        return Err(Error::LengthMismatch {
            what: "direction steps",
            expected: frame,
            found: steps.len(),
        });
    };
    pi.validate()?;
    Ok(pi)
}

fn check_vars(vars: Option<usize>, degree: usize) -> std::result::Result<usize, Failure> {
    match vars {
        Some(n) if n < degree => Err(Error::TooFewVars { vars: n, degree }.into()),
        Some(n) => Ok(n),
        None => Ok(degree.max(1)),
    }
}

fn render_matrix(m: &SymMatrix, format: Format) -> String {
    match format {
        Format::Ascii => m.render_ascii(),
        Format::Tex => m.render_tex(),
        Format::Json => pretty(&m.to_json()),
    }
}

/// The diagram with each box marked by the letter of its strip.
pub fn render_decomposition(pi: &OutsideDecomposition) -> String {
    let shape = pi.shape();
    let mut grid: Vec<Vec<char>> = (1..=shape.outer().len())
        .map(|i| {
            (1..=shape.outer().part(i))
                .map(|j| if j <= shape.inner().part(i) { '·' } else { '?' })
                .collect()
        })
        .collect();
    for (k, (_, boxes)) in pi.strip_boxes().iter().enumerate() {
        let mark = char::from_digit((k % 26 + 10) as u32, 36).unwrap();
        for b in boxes {
            grid[b.row - 1][b.col - 1] = mark;
        }
    }
    grid.into_iter().map(|r| r.into_iter().collect::<String>() + "\n").collect()
}

fn decomposition_text(pi: &OutsideDecomposition, format: Format) -> String {
    match format {
        Format::Json => pretty(&pi.to_json()),
        Format::Tex => format!("\\{{{}\\}}\n", pi.sorted_strips().iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")),
        Format::Ascii => format!(
            "{}\ndirections {}\n{}",
            pi.bracket_notation(),
            pi.directions(),
            render_decomposition(pi)
        ),
    }
}

fn execute(cli: &Cli) -> Outcome {
    let format = cli.format;
    match &cli.command {
        Command::Diagram { shape } => {
            let s = parse_shape(shape)?;
            Ok(match format {
                Format::Ascii => s.render_ascii(),
                Format::Json => pretty(&json!({
                    "shape": s.to_string(),
                    "outer": s.outer().parts(),
                    "inner": s.inner().parts(),
                    "boxes": s.boxes().iter().map(|b| [b.row, b.col]).collect::<Vec<_>>(),
                    "content_range": s.content_range().map(|(a, b)| [a, b]),
                    "connected": s.is_edgewise_connected(),
                    "diagonals": s.diagonal_count(),
                })),
                Format::Tex => {
                    let rows: Vec<String> = (1..=s.outer().len())
                        .map(|i| {
                            (1..=s.outer().part(i))
                                .map(|j| if j <= s.inner().part(i) { "\\cdot" } else { "\\square" })
                                .collect::<Vec<_>>()
                                .join(" & ")
                        })
                        .collect();
                    format!("\\begin{{array}}{{l}}\n{}\n\\end{{array}}\n", rows.join(" \\\\\n"))
                }
            })
        }
        Command::Decompose { shape, directions } => {
            let s = parse_shape(shape)?;
            if directions.is_some() {
                let pi = select_decomposition(&s, directions.as_deref())?;
                return Ok(decomposition_text(&pi, format));
            }
            let all: Vec<OutsideDecomposition> = enumerate_decompositions(&s)?.collect();
            Ok(match format {
                Format::Json => pretty(&Value::Array(all.iter().map(|p| p.to_json()).collect())),
                _ => {
                    let mut text = String::new();
                    for pi in &all {
                        let word = pi.occupied_cutting_strip().map(|c| c.steps().iter().map(|s| s.letter()).collect::<String>());
                        let _ = writeln!(text, "{:<8} {}", word.unwrap_or_default(), pi.bracket_notation());
                    }
                    text
                }
            })
        }
        Command::Matrix { shape, directions, jacobi_trudi: jt, dual, det } => {
            let s = parse_shape(shape)?;
            let m = if *jt {
                jacobi_trudi(&s)
            } else if *dual {
                dual_jacobi_trudi(&s)
            } else {
                giambelli_matrix(&select_decomposition(&s, directions.as_deref())?)
            };
            let mut text = render_matrix(&m, format);
            if *det {
                let n = check_vars(cli.vars, m.max_degree().max(s.len()))?;
                let d = determinant(&evaluate(&m, n)?)?;
                let s_poly = SchurCache::new(n).get(&s);
                let same = d == s_poly;
                if format == Format::Json {
                    text = pretty(&json!({"matrix": m.to_json(), "determinant": d.to_json(), "equals_schur": same}));
                } else {
                    let _ = writeln!(text, "det = {d}\nequals s[{s}]: {same}");
                }
                if !same {
                    return Err(Failure::Check(text));
                }
            }
            Ok(text)
        }
        Command::Canonical { shape, directions } => {
            let s = parse_shape(shape)?;
            let pi = select_decomposition(&s, directions.as_deref())?;
            let c = canonical_form(&pi);
            Ok(match format {
                Format::Json => pretty(&json!({
                    "decomposition": pi.to_json(),
                    "matrix": c.matrix.to_json(),
                    "row_perm": c.row_perm,
                    "col_perm": c.col_perm,
                    "sign": c.sign(),
                })),
                _ => format!(
                    "{}\n{}sign {}\n",
                    pi.bracket_notation(),
                    render_matrix(&c.matrix, format),
                    c.sign()
                ),
            })
        }
        Command::Twist { shape, at, directions } => {
            let s = parse_shape(shape)?;
            let pi = select_decomposition(&s, directions.as_deref())?;
            let (outcome, log) = twist_step(&pi, *at)?;
            Ok(match format {
                Format::Json => pretty(&json!({
                    "before": pi.to_json(),
                    "after": outcome.decomposition.to_json(),
                    "rule": outcome.rule.label(),
                    "case": outcome.case.letter(),
                    "log": log.to_json(),
                })),
                _ => {
                    let mut text = String::new();
                    let _ = writeln!(text, "before {} ({})", pi.bracket_notation(), pi.directions());
                    let _ = writeln!(
                        text,
                        "after  {} ({})",
                        outcome.decomposition.bracket_notation(),
                        outcome.decomposition.directions()
                    );
                    let _ = writeln!(text, "rule {}, case {}", outcome.rule.label(), outcome.case.letter());
                    text.push_str(&render_matrix(&log.start.matrix, format));
                    text.push_str("->\n");
                    text.push_str(&render_matrix(&log.end.matrix, format));
                    text.push_str(&log.render_trace());
                    text
                }
            })
        }
        Command::Chain { shape, trace, transpose, golden, check_golden } => {
            let s = parse_shape(shape)?;
            let mut log = chain(&s)?;
            if *transpose {
                log = log.transposed();
            }
            let files = stage_files(&log);
            if let Some(dir) = golden {
                write_golden(dir, &files)?;
            }
            let mut text = match format {
                Format::Json => pretty(&chain_json(&log)),
                _ => render_chain(&log, format, *trace),
            };
            if let Some(dir) = check_golden {
                let diffs = compare_golden(dir, &files)?;
                if !diffs.is_empty() {
                    text.push_str(&diffs.join("\n"));
                    text.push('\n');
                    return Err(Failure::Check(text));
                }
                if format != Format::Json {
                    let _ = writeln!(text, "golden files match ({} files)", files.len());
                }
            }
            Ok(text)
        }
        Command::Verify { shape: Some(shape), .. } => {
            let s = parse_shape(shape)?;
            let n = check_vars(cli.vars, default_vars(&s)?)?;
            let report = verify_chain(&s, n)?;
            let text = match format {
                Format::Json => pretty(&serde_json::to_value(&report).expect("report serializes")),
                _ => render_report(&report),
            };
            if report.passed() {
                Ok(text)
            } else {
                Err(Failure::Check(text))
            }
        }
        Command::Verify { shape: None, max_boxes, connected } => {
            let seed = seed_from_env()?;
            let results = run_suites(*max_boxes, *connected, seed, cli.vars);
            let text = match format {
                Format::Json => pretty(&json!(results
                    .iter()
                    .map(|r| json!({"suite": r.name, "checked": r.checked, "failures": r.failures}))
                    .collect::<Vec<_>>())),
                _ => {
                    let mut t = String::new();
                    for r in &results {
                        let status = if r.failures.is_empty() { "ok" } else { "FAIL" };
                        let _ = writeln!(t, "{:<12} {:<4} {} checked", r.name, status, r.checked);
                        for f in r.failures.iter().take(10) {
                            let _ = writeln!(t, "    {f}");
                        }
                    }
                    t
                }
            };
            if results.iter().all(|r| r.failures.is_empty()) {
                Ok(text)
            } else {
                Err(Failure::Check(text))
            }
        }
        Command::Oracle { shape } => {
            let s = parse_shape(shape)?;
            let n = check_vars(cli.vars, s.len())?;
            let p = schur_expansion(&s, n);
            Ok(match format {
                Format::Json => pretty(&p.to_json()),
                _ => {
                    let sym = SymPoly::from_poly(&p)?;
                    format!("{sym}\n{} monomials, {} tableaux\n", p.len(), p.terms().values().sum::<num_bigint::BigInt>())
                }
            })
        }
    }
}

/// One text file per chain stage: the decomposition and its canonical matrix.
pub fn stage_files(log: &OpLog) -> Vec<(String, String)> {
    log.stages()
        .iter()
        .enumerate()
        .map(|(k, (c, st))| {
            let name = format!("stage-{:02}.txt", k + 1);
            let mut body = String::new();
            let _ = writeln!(body, "{}", st.decomposition.bracket_notation());
            body.push_str(&c.expected.render_ascii());
            (name, body)
        })
        .collect()
}

fn write_golden(dir: &Path, files: &[(String, String)]) -> std::result::Result<(), Failure> {
    fs::create_dir_all(dir)?;
    for (name, body) in files {
        fs::write(dir.join(name), body)?;
    }
    Ok(())
}

fn compare_golden(dir: &Path, files: &[(String, String)]) -> std::result::Result<Vec<String>, Failure> {
    let mut diffs = Vec::new();
    for (name, body) in files {
        match fs::read_to_string(dir.join(name)) {
            Ok(old) if old == *body => {}
            Ok(old) => {
                let line = old
                    .lines()
                    .zip(body.lines())
                    .position(|(a, b)| a != b)
                    .unwrap_or(old.lines().count().min(body.lines().count()));
                diffs.push(format!("{name}: differs at line {}", line + 1));
            }
            Err(_) => diffs.push(format!("{name}: missing")),
        }
    }
    let expected: Vec<&str> = files.iter().map(|f| f.0.as_str()).collect();
    if let Ok(entries) = fs::read_dir(dir) {
        let mut extra: Vec<String> = entries
            .filter_map(|e| e.ok())
            .map(|e| e.file_name().to_string_lossy().into_owned())
            .filter(|n| n.starts_with("stage-") && !expected.contains(&n.as_str()))
            .collect();
        extra.sort();
        diffs.extend(extra.into_iter().map(|n| format!("{n}: unexpected stage file")));
    }
    Ok(diffs)
}

fn chain_json(log: &OpLog) -> Value {
    let stages: Vec<Value> = log
        .stages()
        .iter()
        .enumerate()
        .map(|(k, (c, st))| {
            json!({
                "index": k + 1,
                "twist": st.twist_at,
                "case": st.case,
                "decomposition": st.decomposition.to_json(),
                "matrix": c.expected.to_json(),
            })
        })
        .collect();
    json!({"stages": stages, "log": log.to_json()})
}

fn render_chain(log: &OpLog, format: Format, trace: bool) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "shape {}", log.start.shape);
    for (k, (c, st)) in log.stages().iter().enumerate() {
        let how = match (&st.twist_at, &st.case) {
            (Some(i), Some(case)) => format!("after ω_{i} ({case})"),
            _ => "start".to_string(),
        };
        let _ = writeln!(text, "\nstage {} {how}", k + 1);
        let _ = writeln!(text, "{}", st.decomposition.bracket_notation());
        text.push_str(&render_matrix(&c.expected, format));
    }
    let counts: Vec<String> = log.op_counts().iter().map(|(k, v)| format!("{k} {v}")).collect();
    let _ = writeln!(text, "\n{} operations: {}", log.len(), counts.join(", "));
    if trace {
        text.push('\n');
        text.push_str(&log.render_trace());
    }
    text
}

fn render_report(r: &ChainReport) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "shape {} in {} variables, {} operations", r.shape, r.nvars, r.ops);
    for c in &r.checkpoints {
        let det = match (c.det_ok, c.det_sign) {
            (Some(true), Some(sign)) => format!(" det = {}s", if sign < 0 { "-" } else { "+" }),
            (Some(false), _) => " det WRONG".to_string(),
            _ => String::new(),
        };
        let _ = writeln!(
            text,
            "  after {:>4} ops  {}x{}  {}{}  {}",
            c.after,
            c.size,
            c.size,
            if c.matches { "match" } else { "MISMATCH" },
            det,
            c.label
        );
    }
    let _ = writeln!(text, "end matrix matches: {}", r.endpoint_match);
    let _ = writeln!(text, "determinant factor: {}", r.det_factor);
    for e in &r.errors {
        let _ = writeln!(text, "error: {e}");
    }
    text
}

fn seed_from_env() -> std::result::Result<u64, Failure> {
    match std::env::var("GIAMBELLI_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("GIAMBELLI_SEED must be an unsigned integer, got `{v}`"))),
        Err(_) => Ok(0),
    }
}

/// Random segment pairs: a random cutting strip, then two segments of at most
/// `max_len` boxes each.
pub fn random_segment_pairs(seed: u64, count: usize, max_len: usize) -> Vec<(SkewShape, SkewShape)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = 2 * max_len;
            let steps: Vec<Step> = (0..len - 1).map(|_| if rng.gen_bool(0.5) { Step::Up } else { Step::Right }).collect();
            let phi = BorderStrip::new(0, steps);
            let segment = |rng: &mut ChaCha8Rng| {
                let size = rng.gen_range(1..=max_len) as i64;
                let p = rng.gen_range(0..=(len as i64 - size));
                match phi.segment(p, p + size - 1).expect("inside the strip") {
                    giambelli::strips::Segment::Strip(s) => s.to_skew_shape(),
                    _ => unreachable!("nonempty segment"),
                }
            };
            let i = segment(&mut rng);
            let j = segment(&mut rng);
            (i, j)
        })
        .collect()
}

#[derive(Debug)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

fn per_shape<F>(shapes: &[SkewShape], name: &'static str, check: F) -> SuiteResult
where
    F: Fn(&SkewShape) -> (usize, Vec<String>) + Sync + Send,
{
    let results: Vec<(usize, Vec<String>)> = shapes.par_iter().map(check).collect();
    SuiteResult {
        name,
        checked: results.iter().map(|r| r.0).sum(),
        failures: results.into_iter().flat_map(|r| r.1).collect(),
    }
}

/// Determinants of every Giambelli type matrix against the tableau expansion.
pub fn determinant_suite(shapes: &[SkewShape]) -> SuiteResult {
    per_shape(shapes, "determinant", |s| {
        let n = s.len();
        let want = match SymPoly::from_poly(&schur_expansion(s, n)) {
            Ok(p) => p,
            Err(e) => return (0, vec![format!("{s}: {e}")]),
        };
        let mut cache = SchurCache::new(n);
        let mut failures = Vec::new();
        let mut count = 0;
        for pi in enumerate_decompositions(s).into_iter().flatten() {
            count += 1;
            let m = evaluate_with(&giambelli_matrix(&pi), &mut cache);
            if determinant(&m).ok().as_ref() != Some(&want) {
                failures.push(format!("{s} {pi}: determinant differs"));
            }
        }
        (count, failures)
    })
}

/// Decomposition to cutting strip and back.
pub fn round_trip_suite(shapes: &[SkewShape]) -> SuiteResult {
    per_shape(shapes, "round-trip", |s| {
        let mut failures = Vec::new();
        let mut count = 0;
        for pi in enumerate_decompositions(s).into_iter().flatten() {
            count += 1;
            let back = pi
                .occupied_cutting_strip()
                .ok_or_else(|| Error::EmptyShape(s.to_string()))
                .and_then(|c| OutsideDecomposition::from_cutting_strip(s, &c));
            if back.as_ref() != Ok(&pi) || pi.validate().is_err() {
                failures.push(format!("{s} {pi}: round trip failed"));
            }
        }
        (count, failures)
    })
}

/// Init/Term change of every twist against the diagonal type.
pub fn twist_suite(shapes: &[SkewShape]) -> SuiteResult {
    per_shape(shapes, "twist-cases", |s| {
        let mut failures = Vec::new();
        let mut count = 0;
        let Some((lo, hi)) = s.content_range() else { return (0, failures) };
        for pi in enumerate_decompositions(s).into_iter().flatten() {
            for i in lo..hi {
                if !s.has_content(i) || !s.has_content(i + 1) {
                    continue;
                }
                count += 1;
                let ok = pi.twist(i).is_ok_and(|out| {
                    let expected = s
                        .diagonal_type(i)
                        .map(|t| TwistCase::expected(t, pi.cutting_strip().step_at(i).unwrap_or(Step::Right)));
                    TwistCase::classify(&pi.init_term(), &out.decomposition.init_term(), i) == Some(out.case)
                        && expected == Ok(out.case)
                        && out.decomposition.twist(i).is_ok_and(|b| b.decomposition == pi)
                });
                if !ok {
                    failures.push(format!("{s} {pi}: twist at {i}"));
                }
            }
        }
        (count, failures)
    })
}

/// `det C(Π)` against the signs of the sorting permutations.
pub fn sign_suite(shapes: &[SkewShape]) -> SuiteResult {
    per_shape(shapes, "sign", |s| {
        let n = s.len();
        let mut cache = SchurCache::new(n);
        let target = cache.get(s);
        let mut failures = Vec::new();
        let mut count = 0;
        for pi in enumerate_decompositions(s).into_iter().flatten() {
            count += 1;
            let c = canonical_form(&pi);
            let d = determinant(&evaluate_with(&c.matrix, &mut cache));
            let want = if c.sign() == 1 { target.clone() } else { -&target };
            if d.as_ref().ok() != Some(&want) {
                failures.push(format!("{s} {pi}: det C has the wrong sign"));
            }
        }
        (count, failures)
    })
}

/// Replayed chains with every checkpoint compared.
pub fn chain_suite(shapes: &[SkewShape], vars: Option<usize>) -> SuiteResult {
    per_shape(shapes, "chain", |s| {
        let run = || -> giambelli::Result<ChainReport> {
            let n = default_vars(s)?.max(vars.unwrap_or(0));
            verify_chain(s, n)
        };
        match run() {
            Ok(r) if r.passed() => (1, Vec::new()),
            Ok(r) => (1, vec![format!("{s}: {}", r.errors.join("; "))]),
            Err(e) => (1, vec![format!("{s}: {e}")]),
        }
    })
}

/// `s_I s_J = s_{I▶J} + s_{I↑J}` on seeded random segment pairs.
pub fn glue_suite(seed: u64, count: usize) -> SuiteResult {
    let pairs = random_segment_pairs(seed, count, 5);
    let failures = pairs
        .par_iter()
        .filter_map(|(i, j)| match check_glue_identity(i, j, i.len() + j.len()) {
            Ok(true) => None,
            Ok(false) => Some(format!("{i} and {j}: identity fails")),
            Err(e) => Some(format!("{i} and {j}: {e}")),
        })
        .collect();
    SuiteResult {
        name: "glue",
        checked: pairs.len(),
        failures,
    }
}

pub fn run_suites(max_boxes: usize, connected_only: bool, seed: u64, vars: Option<usize>) -> Vec<SuiteResult> {
    let connected = enumerate_skew_shapes(max_boxes, true);
    let chain_shapes = if connected_only {
        connected.clone()
    } else {
        enumerate_skew_shapes(max_boxes, false)
    };
    vec![
        determinant_suite(&connected),
        round_trip_suite(&connected),
        twist_suite(&connected),
        sign_suite(&connected),
        chain_suite(&chain_shapes, vars),
        glue_suite(seed, 100),
    ]
}
