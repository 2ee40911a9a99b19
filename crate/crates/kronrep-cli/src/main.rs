//! Command-line front end. Every subcommand is deterministic given its
//! flags: fixed seed, sorted output, stable formats. Each command builds
//! its entire output as one string and writes it in a single call.
//!
//! Exit codes: 0 success, 1 negative domain verdict (no module exists,
//! verification failed), 2 usage error, 3 budget exceeded.

use clap::{Args, Parser, Subcommand, ValueEnum};
use kronrep::cover::{
    canonical_construction, construct_for_root, enumerate_subtrees, Composition,
    LabelPermutation, LabeledSubtree,
};
use kronrep::export::{
    coefficient_quiver_dot, module_to_json, region_csv, subtree_to_json, JsonEntries,
};
use kronrep::field::{FieldSpec, PrimeField, Rationals};
use kronrep::hom::end_is_local;
use kronrep::module::KroneckerModule;
use kronrep::root_system::{
    classify, cover_thin_exists, in_fundamental_domain, tits_form, ArrowCount, DimVector,
    RootKind,
};
use kronrep::verify::verify_theorem_window;
use kronrep::Error;
use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "kronrep",
    about = "Exact workbench for modules over n-arrow Kronecker quivers",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args)]
struct Common {
    /// Number of parallel arrows of the quiver
    #[arg(short = 'n', long = "arrows")]
    arrows: u32,
    /// Coefficient field: f<p> for a prime field, q for the rationals
    #[arg(long, default_value = "f2")]
    field: String,
    /// Seed for every randomized step
    #[arg(long, default_value_t = 0xC0FFEE)]
    seed: u64,
    /// Cap on total dimension x + y during enumeration and verification
    #[arg(long, env = "KRONREP_BUDGET", default_value_t = 12)]
    budget: i64,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a dimension vector against the root system
    Classify {
        #[command(flatten)]
        common: Common,
        x: i64,
        y: i64,
    },
    /// Build the canonical cover-thin module for a dimension vector
    Construct {
        #[command(flatten)]
        common: Common,
        x: i64,
        y: i64,
        /// Zigzag composition of y as comma-separated parts, e.g. "1,2"
        #[arg(long)]
        composition: Option<String>,
        /// Label permutation as the comma-separated images of 1..n
        #[arg(long)]
        perm: Option<String>,
    },
    /// List the deck-equivalence classes of subtrees for a dimension vector
    Enumerate {
        #[command(flatten)]
        common: Common,
        x: i64,
        y: i64,
    },
    /// Check the existence bound on every imaginary root in a window
    Verify {
        #[command(flatten)]
        common: Common,
        /// Largest total dimension x + y to check
        #[arg(long)]
        max: i64,
    },
    /// Emit the root-region table around the origin as CSV
    Region {
        #[command(flatten)]
        common: Common,
        /// Largest coordinate per axis
        #[arg(long)]
        max: i64,
    },
}

/// Output of one command: everything destined for stdout plus the exit code.
struct Outcome {
    stdout: String,
    code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = stdout.write_all(out.stdout.as_bytes()) {
                // A closed pipe (e.g. `kronrep region | head`) is not our error.
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::NotPositiveImaginaryRoot { .. } => 1,
        _ => 2,
    }
}

fn run(cmd: Cmd) -> kronrep::Result<Outcome> {
    match cmd {
        Cmd::Classify { common, x, y } => cmd_classify(&common, x, y),
        Cmd::Construct { common, x, y, composition, perm } => {
            cmd_construct(&common, x, y, composition.as_deref(), perm.as_deref())
        }
        Cmd::Enumerate { common, x, y } => cmd_enumerate(&common, x, y),
        Cmd::Verify { common, max } => cmd_verify(&common, max),
        Cmd::Region { common, max } => cmd_region(&common, max),
    }
}

fn arrows(common: &Common) -> kronrep::Result<ArrowCount> {
    ArrowCount::new(common.arrows)
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn cmd_classify(common: &Common, x: i64, y: i64) -> kronrep::Result<Outcome> {
    let n = arrows(common)?;
    let v = DimVector::new(x, y);
    let class = classify(n, v)?;
    let q = tits_form(n, v)?;
    let in_f = in_fundamental_domain(n, v)?;
    let thin = cover_thin_exists(n, v);
    let kind = match class.kind {
        RootKind::Real => "real",
        RootKind::Imaginary => "imaginary",
        RootKind::NotARoot => "not_a_root",
    };
    let out = match common.format {
        Format::Json => pretty(&serde_json::json!({
            "n": n.get(),
            "dim": [x, y],
            "q": q,
            "class": kind,
            "in_fundamental_domain": in_f,
            "cover_thin_exists": thin,
        })),
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "({x}, {y}) at n = {}: {kind} (q = {q})", n.get());
            let _ = writeln!(s, "fundamental domain: {in_f}");
            let _ = writeln!(s, "cover-thin exists: {thin}");
            s
        }
    };
    Ok(Outcome::ok(out))
}

fn parse_composition(s: &str) -> kronrep::Result<Composition> {
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| Error::InvalidComposition(format!("cannot parse parts from {s:?}")))?;
    Ok(Composition::new(parts))
}

fn parse_perm(s: &str, n: ArrowCount) -> kronrep::Result<LabelPermutation> {
    let image = s
        .split(',')
        .map(|p| p.trim().parse::<u8>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| Error::InvalidPermutation(format!("cannot parse images from {s:?}")))?;
    LabelPermutation::new(image, n)
}

fn build_subtree(
    n: ArrowCount,
    v: DimVector,
    composition: Option<&str>,
    perm: Option<&str>,
) -> kronrep::Result<LabeledSubtree> {
    let t = match composition {
        Some(c) => {
            let c = parse_composition(c)?;
            if v.x > v.y {
                canonical_construction(n, v.y, v.x, &c)?.dualize()
            } else {
                canonical_construction(n, v.x, v.y, &c)?
            }
        }
        None => construct_for_root(n, v, None)?,
    };
    match perm {
        Some(p) => t.permute_labels(&parse_perm(p, n)?),
        None => Ok(t),
    }
}

fn render_construct<F: JsonEntries>(
    common: &Common,
    t: &LabeledSubtree,
    field: F,
) -> kronrep::Result<String> {
    let m = KroneckerModule::pushdown(t, field)?;
    let report = m.coefficient_quiver_report();
    Ok(match common.format {
        Format::Json => pretty(&serde_json::json!({
            "subtree": subtree_to_json(t),
            "module": module_to_json(&m),
            "coefficient_quiver": report,
        })),
        Format::Dot => coefficient_quiver_dot(&m),
        Format::Text => {
            let mut s = String::new();
            let d = m.dim();
            let _ = writeln!(s, "dimension vector: ({}, {})", d.x, d.y);
            let _ = writeln!(s, "field: {}", m.field().name());
            let _ = writeln!(s, "code: {}", t.canonical_code().to_hex());
            for e in t.edges() {
                let _ = writeln!(s, "edge: {} -{}-> {}", e.source, e.label, e.sink);
            }
            let _ = writeln!(s, "nonzeros: {}", m.nonzero_count());
            let _ = writeln!(
                s,
                "coefficient quiver: connected = {}, acyclic = {}, tree presentation = {}",
                report.connected, report.acyclic, report.is_tree_presentation
            );
            let end = end_is_local(&m, common.seed)?;
            let _ = writeln!(s, "dim End = {}, verdict: {:?}", end.dim_end, end.verdict);
            s
        }
    })
}

fn cmd_construct(
    common: &Common,
    x: i64,
    y: i64,
    composition: Option<&str>,
    perm: Option<&str>,
) -> kronrep::Result<Outcome> {
    let n = arrows(common)?;
    let v = DimVector::new(x, y);
    if !cover_thin_exists(n, v) {
        let k = n.get() as i64 - 1;
        let bound = if y >= x {
            format!("y > (n-1)x+1 = {}", k * x + 1)
        } else {
            format!("x > (n-1)y+1 = {}", k * y + 1)
        };
        eprintln!("no cover-thin module in dimension ({x}, {y}) at n = {}: {bound}", n.get());
        return Ok(Outcome { stdout: String::new(), code: 1 });
    }
    let t = build_subtree(n, v, composition, perm)?;
    let out = match FieldSpec::parse(&common.field)? {
        FieldSpec::Prime(p) => render_construct(common, &t, PrimeField::new(p)?)?,
        FieldSpec::Rationals => render_construct(common, &t, Rationals)?,
    };
    Ok(Outcome::ok(out))
}

fn cmd_enumerate(common: &Common, x: i64, y: i64) -> kronrep::Result<Outcome> {
    let n = arrows(common)?;
    let classes = enumerate_subtrees(n, x, y, common.budget)?;
    let out = match common.format {
        Format::Json => pretty(&serde_json::json!({
            "n": n.get(),
            "dim": [x, y],
            "count": classes.len(),
            "codes": classes.iter().map(|t| t.canonical_code().to_hex()).collect::<Vec<_>>(),
        })),
        _ => {
            let mut s = String::new();
            let _ =
                writeln!(s, "{} classes in dimension ({x}, {y}) at n = {}", classes.len(), n.get());
            for t in &classes {
                let _ = writeln!(s, "{}", t.canonical_code().to_hex());
            }
            s
        }
    };
    Ok(Outcome::ok(out))
}

fn cmd_verify(common: &Common, max: i64) -> kronrep::Result<Outcome> {
    let n = arrows(common)?;
    let report = verify_theorem_window(n, max, common.seed, common.budget)?;
    let out = match common.format {
        Format::Json => pretty(&serde_json::to_value(&report).expect("serializable")),
        _ => {
            let mut s = String::new();
            for r in &report.roots {
                let _ = writeln!(
                    s,
                    "({}, {}): {} classes, tree presentations = {}, indecomposable = {} -> {}",
                    r.root.x,
                    r.root.y,
                    r.classes_found,
                    r.all_tree_presentations,
                    r.all_indecomposable,
                    if r.pass { "PASS" } else { "FAIL" }
                );
            }
            let _ = writeln!(
                s,
                "window n = {}, max total dimension {}: {}",
                report.n,
                report.max_total_dim,
                if report.all_pass { "PASS" } else { "FAIL" }
            );
            s
        }
    };
    Ok(Outcome { stdout: out, code: if report.all_pass { 0 } else { 1 } })
}

fn cmd_region(common: &Common, max: i64) -> kronrep::Result<Outcome> {
    let n = arrows(common)?;
    Ok(Outcome::ok(region_csv(n, max)?))
}
