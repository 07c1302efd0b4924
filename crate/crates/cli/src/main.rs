use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use pbb::biquandle::{enumerate_colorings, Biquandle, BiquandleFile};
use pbb::bracket::{bracket, certify_minimality, BracketValue};
use pbb::diagram::{parse_pd, OrientedDiagram};
use pbb::fuzz::invariance_fuzz;
use pbb::ideals::{build_ideal_with, cache_dir, DeltaSpec, IdealBasis, R3Reading};
use pbb::poly::{is_prime, MonomialOrder};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "pbb", version, about = "Parity-biquandle brackets and minimality certificates")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0, global = true)]
    threads: usize,
    /// Gröbner basis cache directory (default: $PBB_CACHE_DIR or .pbb-cache).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Always recompute Gröbner bases.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the biquandle axioms of a table file.
    CheckBiquandle {
        #[arg(long)]
        biquandle: String,
    },
    /// Count and list colourings of a diagram.
    Colorings {
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        biquandle: String,
    },
    /// Bracket values, one per colouring.
    Bracket {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        diagram: String,
        /// Keep δ as a variable; no reduction is done.
        #[arg(long, conflicts_with = "delta")]
        symbolic_delta: bool,
        /// Reduce coefficients modulo the Gröbner basis over GF(prime).
        #[arg(long)]
        reduce: bool,
        /// Only this colouring (index into the sorted list).
        #[arg(long)]
        coloring: Option<usize>,
    },
    /// Build (and cache) the Gröbner basis of I_j.
    Groebner {
        #[command(flatten)]
        ideal: IdealArgs,
        /// Include the basis polynomials in the output.
        #[arg(long)]
        print_basis: bool,
    },
    /// Certify minimality through leading terms.
    Certify {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        diagram: String,
    },
    /// Bracket invariance under random Reidemeister moves.
    InvarianceFuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = 6)]
        max_crossings: usize,
        #[arg(long, default_value_t = 32003)]
        prime: u32,
    },
}

#[derive(Args, Debug)]
struct IdealArgs {
    #[arg(long)]
    biquandle: String,
    /// Relation variant j (1 or 2).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    variant: u8,
    #[arg(long)]
    delta: Option<i64>,
    #[arg(long, default_value_t = 32003)]
    prime: u32,
    #[arg(long, default_value = "degrevlex", value_parser = parse_order)]
    order: MonomialOrder,
    /// Reading of the two third-move templates with mixed subscripts.
    #[arg(long, value_enum, default_value_t = Reading::Consistent)]
    reading: Reading,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Reading {
    Consistent,
    Literal,
}

fn parse_order(s: &str) -> Result<MonomialOrder, String> {
    MonomialOrder::parse(s).ok_or_else(|| format!("unknown monomial order `{s}`"))
}

/// Usage problems exit with 2, domain errors with 1.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn read_input(arg: &str) -> anyhow::Result<Option<String>> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok(Some(text));
    }
    Ok(None)
}

fn load_diagram(arg: &str) -> anyhow::Result<OrientedDiagram> {
    let text = match read_input(arg)? {
        Some(t) => t,
        None if arg.ends_with(".gauss") || arg.ends_with(".pd") => return Err(usage(format!("no such file: {arg}"))),
        None => arg.to_string(),
    };
    let body: String = text.lines().filter(|l| !l.trim_start().starts_with('#')).collect::<Vec<_>>().join(" ");
    let d = if body.contains("X[") { parse_pd(&body)? } else { OrientedDiagram::parse(&body)? };
    Ok(d)
}

fn load_biquandle(arg: &str) -> anyhow::Result<Biquandle> {
    match read_input(arg)? {
        Some(text) => Ok(BiquandleFile::parse(&text)?.build()?),
        None => match arg.to_ascii_lowercase().as_str() {
            "x1" => Ok(Biquandle::x1()),
            "x2" => Ok(Biquandle::x2()),
            s => match s.strip_prefix("trivial").and_then(|m| m.parse::<usize>().ok()) {
                Some(m) if m >= 1 => Ok(Biquandle::trivial(m)),
                _ => Err(usage(format!("no such biquandle file: {arg}"))),
            },
        },
    }
}

struct Ctx {
    format: Format,
    cache: Option<PathBuf>,
}

impl Ctx {
    fn basis(&self, b: &Biquandle, j: u8, delta: DeltaSpec, prime: u32, order: MonomialOrder, reading: R3Reading) -> anyhow::Result<IdealBasis> {
        if !is_prime(prime) {
            return Err(usage(format!("{prime} is not a prime")));
        }
        let spec = build_ideal_with(b, j, delta, reading)?;
        let progress = |s: &pbb::poly::GroebnerStats, pending: usize| {
            log::info!("basis {} pairs {} pending {} degree {}", s.basis_size, s.pairs_processed, pending, s.max_degree);
        };
        let out = match &self.cache {
            Some(dir) => IdealBasis::load_or_compute(&spec, prime, order, dir, Some(&progress))?,
            None => IdealBasis::compute(&spec, prime, order, Some(&progress))?,
        };
        log::info!(
            "Groebner basis: {} elements, {} ms{}",
            out.basis.len(),
            out.basis.stats().millis,
            if out.from_cache { " (cached)" } else { "" }
        );
        Ok(out)
    }

    fn emit(&self, value: serde_json::Value, text: impl FnOnce() -> String) -> anyhow::Result<()> {
        let mut out = std::io::stdout().lock();
        match self.format {
            Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?,
            Format::Text => write!(out, "{}", text())?,
        }
        Ok(())
    }
}

fn delta_of(a: &IdealArgs) -> DeltaSpec {
    DeltaSpec::Value(a.delta.unwrap_or(1))
}

fn reading_of(a: &IdealArgs) -> R3Reading {
    match a.reading {
        Reading::Consistent => R3Reading::Consistent,
        Reading::Literal => R3Reading::Literal,
    }
}

fn value_text(v: &BracketValue, reduced: Option<&std::collections::BTreeMap<pbb::graphs::CanonicalCode, pbb::poly::Polynomial>>) -> String {
    let mut s = format!("coloring {:?}\n", v.provenance.coloring.0);
    let terms: Vec<(String, String)> = match reduced {
        Some(r) => r.iter().map(|(c, p)| (c.to_string(), p.to_string())).collect(),
        None => v.terms.iter().map(|(c, p)| (c.to_string(), p.to_string())).collect(),
    };
    if terms.is_empty() {
        s.push_str("  0\n");
    }
    for (c, p) in terms {
        s.push_str(&format!("  {c} : {p}\n"));
    }
    s
}

fn run(cli: Cli) -> anyhow::Result<()> {
    if cli.threads > 0 {
        rayon_threads(cli.threads)?;
    }
    let cache = if cli.no_cache { None } else { Some(cli.cache_dir.clone().unwrap_or_else(|| cache_dir(".pbb-cache"))) };
    let ctx = Ctx { format: cli.format, cache };
    match cli.command {
        Command::CheckBiquandle { biquandle } => {
            let text = read_input(&biquandle)?.ok_or_else(|| usage(format!("no such file: {biquandle}")))?;
            let file = BiquandleFile::parse(&text)?;
            let report = file.report()?;
            let hash = if report.passed() { Some(file.build()?.hash()) } else { None };
            ctx.emit(json!({ "report": report, "valid": report.passed(), "hash": hash }), || {
                let mut s = String::new();
                for c in &report.checks {
                    let w = c.witness.as_ref().map(|w| format!(" at {w:?}")).unwrap_or_default();
                    s.push_str(&format!("{:<8} {}{}\n", c.axiom, if c.pass { "ok" } else { "FAIL" }, w));
                }
                s.push_str(if report.passed() { "valid biquandle\n" } else { "not a biquandle\n" });
                s
            })?;
            if !report.passed() {
                let f = report.first_failure().expect("a failing check");
                anyhow::bail!("axiom {} fails", f.axiom);
            }
            Ok(())
        }
        Command::Colorings { diagram, biquandle } => {
            let d = load_diagram(&diagram)?;
            let b = load_biquandle(&biquandle)?;
            let cols = enumerate_colorings(&d, &b);
            ctx.emit(json!({ "diagram": d.to_string(), "count": cols.len(), "colorings": cols }), || {
                let mut s = format!("{}\n", cols.len());
                for c in &cols {
                    s.push_str(&format!("{:?}\n", c.0));
                }
                s
            })
        }
        Command::Bracket { ideal, diagram, symbolic_delta, reduce, coloring } => {
            let d = load_diagram(&diagram)?;
            let b = load_biquandle(&ideal.biquandle)?;
            let delta = if symbolic_delta { DeltaSpec::Symbolic } else { delta_of(&ideal) };
            if symbolic_delta && reduce {
                return Err(usage("--reduce needs a numeric δ"));
            }
            let mut cols = enumerate_colorings(&d, &b);
            if let Some(i) = coloring {
                if i >= cols.len() {
                    return Err(usage(format!("colouring index {i} out of range ({} colourings)", cols.len())));
                }
                cols = vec![cols[i].clone()];
            }
            let basis = if reduce {
                Some(ctx.basis(&b, ideal.variant, delta, ideal.prime, ideal.order, reading_of(&ideal))?)
            } else {
                None
            };
            let mut values = Vec::new();
            let mut text = String::new();
            for f in &cols {
                let v = bracket(&d, f, &b, ideal.variant, delta)?;
                let reduced = basis.as_ref().map(|g| v.reduce(g)).transpose()?;
                text.push_str(&value_text(&v, reduced.as_ref()));
                values.push(json!({ "value": v, "reduced": reduced }));
            }
            ctx.emit(json!({ "diagram": d.to_string(), "variant": ideal.variant, "delta": delta, "values": values }), || text)
        }
        Command::Groebner { ideal, print_basis } => {
            let b = load_biquandle(&ideal.biquandle)?;
            let g = ctx.basis(&b, ideal.variant, delta_of(&ideal), ideal.prime, ideal.order, reading_of(&ideal))?;
            let stats = g.basis.stats();
            let polys: Vec<String> = g.basis.generators().iter().map(|p| p.to_string()).collect();
            let doc = json!({
                "manifest": g.manifest,
                "manifest_key": g.manifest.key(),
                "prime": g.basis.prime(),
                "order": g.basis.order(),
                "size": g.basis.len(),
                "unit_ideal": g.basis.is_unit_ideal(),
                "pairs_processed": stats.pairs_processed,
                "max_degree": stats.max_degree,
                "basis": if print_basis { Some(&polys) } else { None },
            });
            ctx.emit(doc, || {
                let mut s = format!(
                    "I_{} over GF({}), {}: {} generators -> basis of {} elements\n",
                    ideal.variant,
                    g.basis.prime(),
                    g.basis.order().name(),
                    g.manifest.generator_count,
                    g.basis.len()
                );
                if print_basis {
                    for p in &polys {
                        s.push_str(&format!("  {p}\n"));
                    }
                }
                s
            })
        }
        Command::Certify { ideal, diagram } => {
            let d = load_diagram(&diagram)?;
            let b = load_biquandle(&ideal.biquandle)?;
            let g = ctx.basis(&b, ideal.variant, delta_of(&ideal), ideal.prime, ideal.order, reading_of(&ideal))?;
            let cert = certify_minimality(&d, &b, &g)?;
            ctx.emit(serde_json::to_value(&cert)?, || cert.summary())
        }
        Command::InvarianceFuzz { seed, cases, max_crossings, prime } => {
            if !is_prime(prime) {
                return Err(usage(format!("{prime} is not a prime")));
            }
            let mut bases: HashMap<(String, u8), Arc<IdealBasis>> = HashMap::new();
            let report = invariance_fuzz(seed, cases, max_crossings, prime, |b, j| {
                let key = (b.hash(), j);
                if let Some(g) = bases.get(&key) {
                    return Ok(g.clone());
                }
                let g = Arc::new(
                    ctx.basis(b, j, DeltaSpec::Value(1), prime, MonomialOrder::DegRevLex, R3Reading::Consistent)
                        .map_err(|e| pbb::Error::Unsupported(e.to_string()))?,
                );
                bases.insert(key, g.clone());
                Ok(g)
            })?;
            let failed = report.failed;
            ctx.emit(serde_json::to_value(&report)?, || {
                let mut s = String::new();
                for c in &report.cases {
                    if !c.passed() {
                        s.push_str(&format!("FAIL case {}: {} j={} {} -> {}\n", c.index, c.biquandle, c.variant, c.before, c.after));
                    }
                }
                s.push_str(&format!("{} passed, {} failed (seed {})\n", report.passed, report.failed, report.seed));
                s
            })?;
            if failed > 0 {
                anyhow::bail!("{failed} invariance cases failed");
            }
            Ok(())
        }
    }
}

fn rayon_threads(n: usize) -> anyhow::Result<()> {
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring worker threads")
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
