//! The `eqpart` command line.
//!
//! ```text
//! eqpart info <m> <n>
//! eqpart verify <file> [--quotient "<rows>"] [--crc] [--mu <mu>]
//! eqpart construct [-o <path>] bc <b> <c> [--spec <m> <n>]
//! eqpart construct [-o <prefix>] multifold <m> <n>
//! eqpart construct [-o <path>] rad2 <m> <n> --b <b>
//! eqpart construct [-o <path>] recipe <file>
//! eqpart construct [-o <path>] <recipe leaf, e.g. `mds 1 0`>
//! eqpart admissible <b> <c>
//! eqpart search code <m> <n> --mu <mu>
//! eqpart search coloring <m> <n> --quotient "<rows>"
//! eqpart search cover <ec1 file>
//! ```
//!
//! Exit status: 0 ok, 1 verification failure or no solution, 2 bad
//! parameters or input, 3 search budget exhausted. `EQPART_THREADS` bounds
//! the worker threads.

use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};

use crate::construct::recipe::Recipe;
use crate::construct::{
    bc_routes, build_bc_coloring, multifold_partition, rad2_code, Built, SpecPreference, DESK_LIMIT,
};
use crate::error::{Error, Result};
use crate::graph::GraphSpec;
use crate::partition::io::{self, format_code1, format_pc1, write_atomic, Object};
use crate::partition::{
    admissibility, completely_regular_check, compute_quotient, mu_fold_on, necessary_conditions, verify_quotient,
    ColorFn, Coloring, QuotientMatrix,
};
use crate::search::{exact_cover, find_perfect_code, find_perfect_coloring, ColoringConstraints, ExactCoverInstance, SearchBudget};

#[derive(Parser, Debug)]
#[command(name = "eqpart", version, about = "Perfect colorings and codes in Doob and quaternary Hamming graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parameters of D(m, n).
    Info { m: u32, n: u32 },
    /// Checks a pc1 or code1 file.
    Verify(VerifyArgs),
    /// Builds and verifies a coloring or code and writes it.
    Construct(ConstructArgs),
    /// Classifies a pair (b, c).
    Admissible { b: u32, c: u32 },
    /// Runs a search.
    Search(SearchArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub file: PathBuf,
    /// Expected quotient matrix, rows separated by `;`.
    #[arg(long)]
    pub quotient: Option<String>,
    /// Check that the code (color 1 of a coloring) is completely regular.
    #[arg(long)]
    pub crc: bool,
    /// Check that the code (color 1 of a coloring) is mu-fold 1-perfect.
    #[arg(long)]
    pub mu: Option<u32>,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    /// Output path; for `multifold`, a prefix.
    #[arg(short, long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub what: Construct,
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// Perfect (b, c)-coloring, on the smallest supported graph unless given.
    Bc {
        b: u32,
        c: u32,
        #[arg(long, num_args = 2, value_names = ["M", "N"])]
        spec: Option<Vec<u32>>,
    },
    /// Partition into multifold 1-perfect codes, one code1 file per code.
    Multifold { m: u32, n: u32 },
    /// Completely regular code of covering radius 2.
    Rad2 {
        m: u32,
        n: u32,
        #[arg(long)]
        b: u32,
    },
    /// Evaluates a recipe file.
    Recipe { file: PathBuf },
    /// A single recipe node, e.g. `mds 1 0` or `three_j 0 4`.
    #[command(external_subcommand)]
    Named(Vec<String>),
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    /// Node limit.
    #[arg(long, global = true, default_value_t = 50_000_000)]
    pub nodes: u64,
    /// Time limit in seconds.
    #[arg(long, global = true)]
    pub seconds: Option<u64>,
    /// Output path.
    #[arg(short, long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub what: Search,
}

#[derive(Subcommand, Debug)]
pub enum Search {
    /// A mu-fold 1-perfect code by exact cover.
    Code {
        m: u32,
        n: u32,
        #[arg(long)]
        mu: u32,
    },
    /// A perfect coloring with the given quotient matrix.
    Coloring {
        m: u32,
        n: u32,
        #[arg(long)]
        quotient: String,
    },
    /// An exact cover instance in ec1 format.
    Cover { file: PathBuf },
}

/// Outcome of one command.
#[derive(Clone, Debug)]
pub struct CommandReport {
    pub ok: bool,
    pub exit_code: i32,
    pub summary: String,
    /// `key: value` lines.
    pub result: Vec<(String, String)>,
    pub files: Vec<PathBuf>,
    pub duration: Duration,
}

impl CommandReport {
    fn ok(summary: impl Into<String>) -> Self {
        CommandReport {
            ok: true,
            exit_code: 0,
            summary: summary.into(),
            result: Vec::new(),
            files: Vec::new(),
            duration: Duration::ZERO,
        }
    }

    fn fail(e: &Error) -> Self {
        let mut r = CommandReport::ok(e.to_string());
        r.ok = false;
        r.exit_code = exit_code(e);
        if let Error::NotEquitable(w) = e {
            r.push("witness", w.vertex);
        }
        r
    }

    fn push(&mut self, key: &str, value: impl fmt::Display) {
        self.result.push((key.to_string(), value.to_string()));
    }

    /// Value of the first result line with this key.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.result.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for CommandReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "status: {}", if self.ok { "ok" } else { "fail" })?;
        writeln!(f, "summary: {}", self.summary)?;
        for (k, v) in &self.result {
            writeln!(f, "{k}: {v}")?;
        }
        for p in &self.files {
            writeln!(f, "wrote: {}", p.display())?;
        }
        write!(f, "time: {:.3}s", self.duration.as_secs_f64())
    }
}

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotEquitable(_)
        | Error::Verification(_)
        | Error::NotCompletelyRegular(_)
        | Error::WrongColorCount { .. }
        | Error::InvalidColoring(_)
        | Error::Unsatisfiable
        | Error::NotFound(_) => 1,
        Error::BudgetExhausted { .. } => 3,
        _ => 2,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> std::result::Result<CommandReport, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = Cli::try_parse_from(&args)?;
    let line: Vec<String> =
        std::iter::once("eqpart".to_string()).chain(args.iter().skip(1).map(|a| a.to_string_lossy().into_owned())).collect();
    Ok(execute(cli.command, &line.join(" ")))
}

/// Runs a parsed command; `invocation` goes into output file headers.
pub fn execute(cmd: Command, invocation: &str) -> CommandReport {
    let start = Instant::now();
    let mut report = match dispatch(cmd, invocation) {
        Ok(r) => r,
        Err(e) => CommandReport::fail(&e),
    };
    report.duration = start.elapsed();
    report
}

/// Entry point of the binary: sizes the thread pool, runs, prints the report
/// and returns the exit status.
pub fn main() -> i32 {
    if let Some(t) = std::env::var("EQPART_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    match run(std::env::args_os()) {
        Ok(r) => {
            println!("{r}");
            r.exit_code
        }
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            code
        }
    }
}

fn spec(m: u32, n: u32) -> Result<GraphSpec> {
    GraphSpec::new(m, n)
}

fn dispatch(cmd: Command, invocation: &str) -> Result<CommandReport> {
    match cmd {
        Command::Info { m, n } => info(spec(m, n)?),
        Command::Verify(a) => verify(&a),
        Command::Construct(a) => construct(a, invocation),
        Command::Admissible { b, c } => Ok(admissible(b, c)),
        Command::Search(a) => search(a, invocation),
    }
}

fn info(s: GraphSpec) -> Result<CommandReport> {
    let mut r = CommandReport::ok(format!("{s}: {} vertices, degree {}", s.num_vertices(), s.degree()));
    r.push("vertices", s.num_vertices());
    r.push("degree", s.degree());
    r.push("diameter", s.diameter());
    let ev: Vec<String> = s
        .eigenvalues()
        .iter()
        .enumerate()
        .map(|(i, e)| format!("{e}^{}", s.eigenvalue_multiplicity(i as u32)))
        .collect();
    r.push("eigenvalues", ev.join(" "));
    Ok(r)
}

fn verify(a: &VerifyArgs) -> Result<CommandReport> {
    let text = std::fs::read_to_string(&a.file)?;
    let (coloring, code) = match io::parse(&text)? {
        Object::Coloring(c) => {
            let code = c.class(0)?;
            (c, code)
        }
        Object::Code(c) => (Coloring::from_code(&c)?, c),
    };
    let s = coloring.spec();
    let mut r = CommandReport::ok(format!("{} on {s}", a.file.display()));
    let mut checked = false;
    if let Some(q) = &a.quotient {
        let q = QuotientMatrix::parse(q)?;
        verify_quotient(&coloring, &q)?;
        r.push("quotient", &q);
        checked = true;
    }
    if a.crc {
        let rep = completely_regular_check(&code)?;
        r.push("intersection-array", &rep.array);
        r.push("distance-quotient", &rep.quotient);
        checked = true;
    }
    if let Some(mu) = a.mu {
        let all: Vec<u64> = (0..s.num_vertices()).collect();
        if let Some(v) = mu_fold_on(s, |v| code.contains(v), mu, &all) {
            let mut f = CommandReport::fail(&Error::Verification(format!(
                "the ball around vertex {v} does not hold exactly {mu} codewords"
            )));
            f.push("witness", v);
            return Ok(f);
        }
        r.push("mu", mu);
        checked = true;
    }
    if !checked {
        r.push("quotient", compute_quotient(&coloring)?);
    }
    r.push("colors", coloring.k());
    Ok(r)
}

fn header(invocation: &str, b: &Built) -> Vec<String> {
    vec![
        invocation.to_string(),
        format!("builder: {}", b.name),
        format!("quotient: {}", b.quotient),
        format!("verification: {}", b.check),
    ]
}

fn write_built(b: &Built, path: &Path, invocation: &str) -> Result<()> {
    if b.spec().num_vertices() > DESK_LIMIT {
        return Err(Error::DeskScaleExceeded {
            spec: b.spec(),
            vertices: b.spec().num_vertices(),
            hint: "too large to write as a file".into(),
        });
    }
    write_atomic(path, &format_pc1(&b.to_coloring()?, &header(invocation, b)))
}

fn built_report(b: &Built) -> CommandReport {
    let mut r = CommandReport::ok(format!("{} on {}", b.name, b.spec()));
    r.push("spec", b.spec());
    r.push("quotient", &b.quotient);
    r.push("verification", b.check);
    r
}

fn slug(words: &[String]) -> String {
    words.join("_")
}

fn construct(a: ConstructArgs, invocation: &str) -> Result<CommandReport> {
    let out = a.out;
    let path = |default: String| out.clone().unwrap_or_else(|| PathBuf::from(default));
    match a.what {
        Construct::Bc { b, c, spec: sp } => {
            let pref = match sp.as_deref() {
                Some([m, n]) => SpecPreference::Exact(spec(*m, *n)?),
                _ => SpecPreference::Minimal,
            };
            let built = build_bc_coloring(b, c, pref)?;
            let p = path(format!("bc_{b}_{c}.pc1"));
            write_built(&built, &p, invocation)?;
            let mut r = built_report(&built);
            r.files.push(p);
            Ok(r)
        }
        Construct::Multifold { m, n } => {
            let part = multifold_partition(spec(m, n)?)?;
            let prefix = path(format!("multifold_{m}_{n}"));
            let mut r = built_report(&part.parts);
            r.push("alpha", part.alpha);
            r.push("codes", part.num_codes());
            for i in 0..part.num_codes() {
                let code = part.code(i)?;
                let mut head = header(invocation, &part.parts);
                head.push(format!("code {} of {}, {}-fold 1-perfect", i + 1, part.num_codes(), part.alpha));
                let p = PathBuf::from(format!("{}.{}.code1", prefix.display(), i + 1));
                write_atomic(&p, &format_code1(&code, &head))?;
                r.files.push(p);
            }
            Ok(r)
        }
        Construct::Rad2 { m, n, b } => {
            let code = rad2_code(spec(m, n)?, b)?;
            let s = code.coloring.spec();
            let mut r = built_report(&code.coloring);
            r.push("intersection-array", &code.array);
            r.push("representatives", code.representatives.len());
            let p = path(format!("rad2_{m}_{n}_{b}.{}", if s.num_vertices() <= DESK_LIMIT { "code1" } else { "txt" }));
            let mut head = header(invocation, &code.coloring);
            head.push(format!("intersection array {}", code.array));
            let text = if s.num_vertices() <= DESK_LIMIT {
                format_code1(&code.coloring.class(0)?, &head)
            } else {
                rad2_summary(&code.coloring, &code.representatives, &head)
            };
            write_atomic(&p, &text)?;
            r.files.push(p);
            Ok(r)
        }
        Construct::Recipe { file } => {
            let recipe = Recipe::parse(&std::fs::read_to_string(&file)?)?;
            let built = recipe.evaluate()?;
            let stem = file.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "recipe".into());
            let p = path(format!("{stem}.pc1"));
            let mut head = header(invocation, &built);
            head.extend(recipe.to_string().lines().map(|l| format!("recipe: {l}")));
            write_atomic(&p, &format_pc1(&built.to_coloring()?, &head))?;
            let mut r = built_report(&built);
            r.files.push(p);
            Ok(r)
        }
        Construct::Named(words) => {
            let built = Recipe::parse(&words.join(" "))?.evaluate()?;
            let p = path(format!("{}.pc1", slug(&words)));
            write_built(&built, &p, invocation)?;
            let mut r = built_report(&built);
            r.files.push(p);
            Ok(r)
        }
    }
}

/// Text summary of a coloring too large to list: its checked rows.
fn rad2_summary(b: &Built, reps: &[u64], head: &[String]) -> String {
    let s = b.spec();
    let mut out: String = head.iter().map(|h| format!("# {h}\n")).collect();
    out.push_str(&format!("# {} vertices; listed: coset representatives and their distance to the code\n", s.num_vertices()));
    out.push_str(&format!("rad2 m={} n={} representatives={}\n", s.m(), s.n(), reps.len()));
    for &v in reps {
        out.push_str(&format!("{v} {}\n", b.color(v)));
    }
    out
}

fn admissible(b: u32, c: u32) -> CommandReport {
    let a = admissibility(b, c);
    let class = match (a.infinity, a.a) {
        (true, Some(x)) => format!("infinity-admissible and {x}-admissible"),
        (true, None) => "infinity-admissible".into(),
        _ => "not admissible".into(),
    };
    let mut r = CommandReport::ok(format!("({b},{c}) is {class}: {}", a.reason));
    r.push("infinity-admissible", a.infinity);
    r.push("a", a.a.map_or("none".to_string(), |x| x.to_string()));
    let items: Vec<String> = a.items.iter().map(|i| i.to_string()).collect();
    r.push("items", items.join(" "));
    if a.infinity {
        match bc_routes(b, c) {
            Ok(routes) => {
                if let Some(route) = routes.first() {
                    r.push("smallest-construction", format!("diameter {}: {}", route.diameter(), route.description));
                }
            }
            Err(e) => r.push("smallest-construction", e),
        }
    } else if b >= 1 && c >= 1 {
        let probe = GraphSpec::new(0, ((b + c) / 4).max(1)).ok();
        if let Some(p) = probe {
            let rep = necessary_conditions(b, c, p);
            let v: Vec<String> = rep.violations.iter().map(|v| v.to_string()).collect();
            if !v.is_empty() {
                r.push("violations", v.join("; "));
            }
        }
    }
    r
}

fn search(a: SearchArgs, invocation: &str) -> Result<CommandReport> {
    let budget = SearchBudget {
        node_limit: a.nodes,
        time_limit: a.seconds.map(Duration::from_secs),
        ..SearchBudget::default()
    };
    let head = vec![invocation.to_string()];
    match a.what {
        Search::Code { m, n, mu } => {
            let code = find_perfect_code(spec(m, n)?, mu, &budget)?;
            let p = a.out.unwrap_or_else(|| PathBuf::from(format!("code_{m}_{n}_mu{mu}.code1")));
            write_atomic(&p, &format_code1(&code, &head))?;
            let mut r = CommandReport::ok(format!("{mu}-fold 1-perfect code of {} with {} codewords", code.spec(), code.len()));
            r.push("size", code.len());
            r.files.push(p);
            Ok(r)
        }
        Search::Coloring { m, n, quotient } => {
            let q = QuotientMatrix::parse(&quotient)?;
            let c = find_perfect_coloring(spec(m, n)?, &q, &ColoringConstraints::default(), &budget)?;
            let p = a.out.unwrap_or_else(|| PathBuf::from(format!("coloring_{m}_{n}.pc1")));
            write_atomic(&p, &format_pc1(&c, &head))?;
            let mut r = CommandReport::ok(format!("perfect coloring of {} with quotient [{q}]", c.spec()));
            r.push("quotient", &q);
            r.push("class-sizes", c.class_sizes().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
            r.files.push(p);
            Ok(r)
        }
        Search::Cover { file } => {
            let inst = ExactCoverInstance::parse(&std::fs::read_to_string(&file)?)?;
            let chosen = exact_cover(&inst, &budget)?;
            let line: Vec<String> = chosen.iter().map(|i| i.to_string()).collect();
            let mut r = CommandReport::ok(format!("exact cover with {} subsets", chosen.len()));
            r.push("subsets", line.join(" "));
            if let Some(p) = a.out {
                write_atomic(&p, &format!("# {invocation}\n{}\n", line.join("\n")))?;
                r.files.push(p);
            }
            Ok(r)
        }
    }
}
