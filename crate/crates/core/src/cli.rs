//! Command-line front end.
//!
//! Exit codes: 0 ok or certified, 1 not certified, 2 unreadable or malformed
//! document, 3 validation failure, 4 unknown edge/piece/cycle, 5 bad cycle,
//! 6 bad parameter.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use num_traits::Zero;

use crate::construct::{build_family, certify_distinct, sparse_index_set, Verdict};
use crate::document::{parse_cycle, Pair};
use crate::surface::{
    cycle_rank, governor, slope, spirality, spirality_image_generators, validate_surface,
    SurfaceError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_CERTIFIED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_UNKNOWN_ID: i32 = 4;
pub const EXIT_BAD_CYCLE: i32 = 5;
pub const EXIT_BAD_PARAMETER: i32 = 6;

pub const MAX_SPARSE_K: u64 = 24;

#[derive(Debug, Parser)]
#[command(
    name = "spirality",
    version,
    about = "Slopes, spirality and governors of horizontal surfaces in simple graph manifolds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a pair document and summarize its invariants.
    Inspect { file: PathBuf },
    /// Print the slope of an oriented edge.
    Slope {
        file: PathBuf,
        #[arg(long)]
        edge: String,
        /// Piece the edge leaves from.
        #[arg(long)]
        from: String,
    },
    /// Print the spirality of a closed walk.
    Spirality {
        file: PathBuf,
        /// `EDGE:+,EDGE:-,...` or the name of a cycle stored in the document.
        #[arg(long, allow_hyphen_values = true)]
        cycle: String,
    },
    /// Decide separability from the spirality of a cycle basis.
    Separable { file: PathBuf },
    /// Emit the closed family pair (N, S_n) with its curve `gamma`.
    Family {
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        /// Output path; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether the family pairs n and m are certified distinct.
    Certify {
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        /// Print the certificate as a JSON record.
        #[arg(long)]
        json: bool,
    },
    /// Print the first K members of the sparse index set, one per line.
    Sparse {
        #[arg(long, allow_hyphen_values = true)]
        k: String,
    },
}

/// What a command printed and how it exits.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Self {
        let mut stderr = stderr.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome::fail(EXIT_PARSE, text)
            } else {
                Outcome::ok(text)
            }
        }
    }
}

pub fn execute(cmd: Command) -> Outcome {
    let result = match cmd {
        Command::Inspect { file } => inspect(&file),
        Command::Slope { file, edge, from } => slope_cmd(&file, &edge, &from),
        Command::Spirality { file, cycle } => spirality_cmd(&file, &cycle),
        Command::Separable { file } => separable_cmd(&file),
        Command::Family { n, out } => family_cmd(&n, out.as_deref()),
        Command::Certify { n, m, json } => certify_cmd(&n, &m, json),
        Command::Sparse { k } => sparse_cmd(&k),
    };
    result.unwrap_or_else(|e| e)
}

fn load(file: &Path) -> Result<Pair, Outcome> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Outcome::fail(EXIT_PARSE, format!("{}: {e}", file.display())))?;
    Pair::parse(&text).map_err(|e| Outcome::fail(EXIT_PARSE, format!("{}: {e}", file.display())))
}

fn load_valid(file: &Path) -> Result<Pair, Outcome> {
    let pair = load(file)?;
    let report = validate_surface(&pair.surface);
    if !report.is_valid() {
        return Err(Outcome {
            code: EXIT_INVALID,
            stdout: report.to_string(),
            stderr: format!("{}: invalid pair\n", file.display()),
        });
    }
    Ok(pair)
}

fn surface_failure(e: SurfaceError) -> Outcome {
    let code = match e {
        SurfaceError::UnknownEdge(_)
        | SurfaceError::UnknownPiece(_)
        | SurfaceError::UnknownCircle(_)
        | SurfaceError::NotEndpoint { .. } => EXIT_UNKNOWN_ID,
        SurfaceError::BrokenCycle { .. } => EXIT_BAD_CYCLE,
        _ => EXIT_INVALID,
    };
    Outcome::fail(code, e.to_string())
}

fn inspect(file: &Path) -> Result<Outcome, Outcome> {
    let pair = load(file)?;
    let s = &pair.surface;
    let m = &s.manifold;
    let report = validate_surface(s);
    let mut out = String::new();
    let closed = |c: bool| if c { "closed" } else { "with boundary" };
    writeln!(
        out,
        "manifold: {} blocks, {} tori, {}",
        m.blocks.len(),
        m.tori.len(),
        closed(m.closed)
    )
    .unwrap();
    writeln!(
        out,
        "surface: {} pieces, {} circles, {} edges, {}, euler characteristic {}",
        s.pieces.len(),
        s.circles.len(),
        s.edges.len(),
        closed(s.is_closed()),
        s.euler_sum()
    )
    .unwrap();
    out.push_str(&report.to_string());
    if !report.is_valid() {
        return Err(Outcome {
            code: EXIT_INVALID,
            stdout: out,
            stderr: format!("{}: invalid pair\n", file.display()),
        });
    }
    if !pair.cycles.is_empty() {
        let names: Vec<&str> = pair.cycles.keys().map(String::as_str).collect();
        writeln!(out, "cycles: {}", names.join(", ")).unwrap();
    }
    let gov = match governor(s) {
        Ok(g) => g.to_string(),
        Err(SurfaceError::NoEdges) => "undefined".to_string(),
        Err(e) => return Err(surface_failure(e)),
    };
    let gens = spirality_image_generators(s).map_err(surface_failure)?;
    let verdict = if gens.iter().all(|g| g.is_one()) {
        "separable"
    } else {
        "non-separable"
    };
    writeln!(out, "governor {gov}; {verdict}; rank {}", cycle_rank(s)).unwrap();
    Ok(Outcome::ok(out))
}

fn slope_cmd(file: &Path, edge: &str, from: &str) -> Result<Outcome, Outcome> {
    let pair = load_valid(file)?;
    let dir = pair
        .surface
        .direction_from(edge, from)
        .map_err(surface_failure)?;
    let v = slope(&pair.surface, edge, dir).map_err(surface_failure)?;
    Ok(Outcome::ok(format!("{v}\n")))
}

fn spirality_cmd(file: &Path, cycle: &str) -> Result<Outcome, Outcome> {
    let pair = load_valid(file)?;
    let walk = if cycle.contains(':') || cycle.trim().is_empty() {
        parse_cycle(cycle).map_err(|e| Outcome::fail(EXIT_BAD_CYCLE, e.to_string()))?
    } else {
        pair.cycles
            .get(cycle.trim())
            .cloned()
            .ok_or_else(|| Outcome::fail(EXIT_UNKNOWN_ID, format!("no cycle named {cycle}")))?
    };
    let w = spirality(&pair.surface, &walk).map_err(surface_failure)?;
    Ok(Outcome::ok(format!("{w}\n")))
}

fn separable_cmd(file: &Path) -> Result<Outcome, Outcome> {
    let pair = load_valid(file)?;
    let gens = spirality_image_generators(&pair.surface).map_err(surface_failure)?;
    if gens.iter().all(|g| g.is_one()) {
        Ok(Outcome::ok("separable\n".into()))
    } else {
        let list: Vec<String> = gens.iter().map(ToString::to_string).collect();
        Ok(Outcome::ok(format!(
            "non-separable: generators = {{{}}}\n",
            list.join(", ")
        )))
    }
}

fn positive(name: &str, text: &str) -> Result<BigUint, Outcome> {
    match text.trim().parse::<BigUint>() {
        Ok(v) if !v.is_zero() => Ok(v),
        _ => Err(Outcome::fail(
            EXIT_BAD_PARAMETER,
            format!("--{name} must be a positive integer, got {text:?}"),
        )),
    }
}

fn small_positive(name: &str, text: &str) -> Result<u64, Outcome> {
    let v = positive(name, text)?;
    u64::try_from(&v)
        .map_err(|_| Outcome::fail(EXIT_BAD_PARAMETER, format!("--{name} {v} is too large")))
}

fn family_cmd(n: &str, out: Option<&Path>) -> Result<Outcome, Outcome> {
    let n = small_positive("n", n)?;
    let family = build_family(n).map_err(|e| Outcome::fail(EXIT_BAD_PARAMETER, e.to_string()))?;
    let pair = Pair {
        surface: family.surface,
        cycles: [("gamma".to_string(), family.gamma)].into(),
    };
    let text = pair.to_json();
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| {
                Outcome::fail(EXIT_BAD_PARAMETER, format!("{}: {e}", path.display()))
            })?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

fn certify_cmd(n: &str, m: &str, json: bool) -> Result<Outcome, Outcome> {
    let n = positive("n", n)?;
    let m = positive("m", m)?;
    let cert = certify_distinct(&n, &m);
    let stdout = if json {
        let mut s = serde_json::to_string_pretty(&cert).expect("serializable");
        s.push('\n');
        s
    } else {
        format!("{cert}\n")
    };
    Ok(Outcome {
        code: match cert.verdict {
            Verdict::Certified => EXIT_OK,
            Verdict::NotCertified => EXIT_NOT_CERTIFIED,
        },
        stdout,
        stderr: String::new(),
    })
}

fn sparse_cmd(k: &str) -> Result<Outcome, Outcome> {
    let k = small_positive("k", k)?;
    if k > MAX_SPARSE_K {
        return Err(Outcome::fail(
            EXIT_BAD_PARAMETER,
            format!("--k {k} exceeds {MAX_SPARSE_K}; members roughly double in length each step"),
        ));
    }
    let k = k as usize;
    let mut out = String::new();
    for tau in sparse_index_set(k) {
        writeln!(out, "{tau}").unwrap();
    }
    Ok(Outcome::ok(out))
}
