use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde_json::{json, Value};

use galois_census::asymptotics::{chela_constant_c, fit_reducible_counts};
use galois_census::census::{run_census, CensusRequest, OutputFormat, Strategy};
use galois_census::constructions::{
    classify_members, cross_validate_with, default_delta, family_dump, gen_a3_family, gen_a4_family,
    gen_d4vc_family, gen_v4_biquadratic, Family,
};
use galois_census::eisenstein::parametrize_cubic_witness;
use galois_census::galois::{
    disc_cubic, disc_quartic, invariants_cubic, invariants_quartic,
};
use galois_census::identities::{
    verify_disc_f, verify_invariants, verify_star, verify_surface, verify_symmetry, VerificationReport,
};
use galois_census::{classify_cubic, classify_quartic, CubicClass, GaloisClass, MonicCubic, MonicQuartic};

#[derive(Parser, Debug)]
#[command(name = "galcensus", version, about = "Galois groups of monic integer cubics and quartics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify one polynomial.
    Classify {
        #[arg(long)]
        degree: u32,
        /// Comma-separated lower coefficients, highest first.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Count Galois groups over the box [-H, H]^degree.
    Census {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        height: u32,
        #[arg(long, value_enum, default_value = "direct")]
        strategy: StrategyArg,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Stripe journal; an interrupted run resumes from it.
        #[arg(long)]
        journal: Option<PathBuf>,
        /// Memory cap for the table strategy, in MiB.
        #[arg(long, default_value_t = 2048)]
        table_cap_mib: u64,
        /// Suppress per-stripe progress on stderr.
        #[arg(long)]
        quiet: bool,
    },
    /// Check the exact identities over finite windows.
    VerifyIdentities {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Window half-width; each suite has its own default.
        #[arg(long)]
        window: Option<i128>,
        /// Seed for the random cases of the star suite.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generate a polynomial family and cross-check it against the classifier.
    Family {
        #[arg(long, value_parser = parse_family)]
        name: Family,
        /// Height bound (d4vc, v4-biquadratic), parameter bound (a4) or |t| bound (a3).
        #[arg(long)]
        height: u64,
        /// Range constant for d4vc, as P/Q.
        #[arg(long, value_parser = parse_ratio)]
        delta: Option<Ratio<i64>>,
        /// Write one JSON line per member here.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Parametrization witness for a cyclic cubic.
    ParamWitness {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
    },
    /// Reducible-count asymptotics.
    Asym {
        #[arg(long)]
        n: u32,
        /// Heights to run a census at.
        #[arg(long, value_delimiter = ',')]
        heights: Vec<u32>,
        /// Known reducible counts as H:R pairs, used without a census.
        #[arg(long, value_delimiter = ',')]
        counts: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
            Format::Text => OutputFormat::Text,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Direct,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
enum Suite {
    Invariants,
    Symmetry,
    Star,
    #[value(name = "discF")]
    #[serde(rename = "discF")]
    DiscF,
    Surface,
    All,
}

fn parse_family(s: &str) -> Result<Family, String> {
    Family::parse(s).ok_or_else(|| format!("unknown family {s:?} (d4vc, v4-biquadratic, a4, a3)"))
}

fn parse_ratio(s: &str) -> Result<Ratio<i64>, String> {
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p: i64 = p.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
    let q: i64 = q.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
    if q == 0 {
        return Err("zero denominator".into());
    }
    Ok(Ratio::new(p, q))
}

enum Failure {
    /// Bad arguments or inputs outside a precondition: exit 2.
    Usage(String),
    /// A check ran and found a mismatch, or a computation failed: exit 1.
    Check(String),
}

impl From<galois_census::Error> for Failure {
    fn from(e: galois_census::Error) -> Self {
        use galois_census::Error as E;
        match e {
            E::InvalidInput(_) | E::ZeroInput(_) | E::UnsupportedDegree(_) | E::MemoryCap { .. } | E::JournalMismatch(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Check(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Check(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Check(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn parse_coeffs(s: &str, want: usize) -> Result<Vec<i128>, Failure> {
    let coeffs: Vec<i128> = s
        .split(',')
        .map(|c| c.trim().parse::<i128>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Usage(format!("--coeffs {s:?}: {e}")))?;
    if coeffs.len() != want {
        return Err(Failure::Usage(format!("--coeffs needs {want} values, got {}", coeffs.len())));
    }
    Ok(coeffs)
}

fn emit_json(v: &Value) -> Result<(), Failure> {
    println!("{}", serde_json::to_string(v)?);
    Ok(())
}

fn classify(degree: u32, coeffs: &str, format: Format) -> Outcome {
    let (poly, class, disc, inv, degree_echo) = match degree {
        3 => {
            let c = parse_coeffs(coeffs, 3)?;
            let f = MonicCubic::checked(c[0], c[1], c[2])?;
            (f.to_string(), GaloisClass::from(classify_cubic(&f)?), disc_cubic(&f)?, invariants_cubic(&f)?, c)
        }
        4 => {
            let c = parse_coeffs(coeffs, 4)?;
            let f = MonicQuartic::checked(c[0], c[1], c[2], c[3])?;
            (f.to_string(), classify_quartic(&f)?.into(), disc_quartic(&f)?, invariants_quartic(&f)?, c)
        }
        d => return Err(Failure::Usage(format!("--degree must be 3 or 4, got {d}"))),
    };
    match format {
        Format::Json => emit_json(&json!({
            "command": "classify",
            "degree": degree,
            "coeffs": degree_echo,
            "polynomial": poly,
            "class": class,
            "disc": disc,
            "invariants": {"I": inv.i, "J": inv.j},
        }))?,
        Format::Csv => {
            println!("degree,coeffs,class,disc,I,J");
            let joined: Vec<String> = degree_echo.iter().map(|c| c.to_string()).collect();
            println!("{degree},\"{}\",{class},{disc},{},{}", joined.join(","), inv.i, inv.j);
        }
        Format::Text => {
            println!("{class}");
            println!("polynomial: {poly}");
            println!("disc: {disc}");
            println!("I: {}", inv.i);
            println!("J: {}", inv.j);
        }
    }
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
fn census(
    degree: u32,
    height: u32,
    strategy: StrategyArg,
    threads: usize,
    out: Option<PathBuf>,
    format: Format,
    journal: Option<PathBuf>,
    table_cap_mib: u64,
    quiet: bool,
) -> Outcome {
    let mut req = CensusRequest::new(degree, height)
        .with_strategy(match strategy {
            StrategyArg::Direct => Strategy::Direct,
            StrategyArg::Table => Strategy::Table,
        })
        .with_workers(threads);
    req.table_cap_bytes = table_cap_mib.saturating_mul(1 << 20);
    req.journal = journal;
    req.progress = !quiet;
    req.emit.format = format.into();
    req.emit.path = out.clone();
    let report = run_census(&req)?;
    let text = report.render(format.into())?;
    match out {
        Some(path) => {
            let mut body = text;
            if !body.ends_with('\n') {
                body.push('\n');
            }
            std::fs::write(path, body)?
        }
        None => print!("{text}{}", if text.ends_with('\n') { "" } else { "\n" }),
    }
    Ok(true)
}

fn verify(suite: Suite, window: Option<i128>, seed: u64) -> Outcome {
    if window.is_some_and(|w| !(0..=200).contains(&w)) {
        return Err(Failure::Usage("--window must lie in [0, 200]".into()));
    }
    let pick = |s: Suite| suite == Suite::All || suite == s;
    let mut reports: Vec<VerificationReport> = Vec::new();
    if pick(Suite::Invariants) {
        let (c, q) = window.map_or((5, 3), |w| (w, w));
        reports.push(verify_invariants(c, q));
    }
    if pick(Suite::Symmetry) {
        reports.push(verify_symmetry(window.unwrap_or(6)));
    }
    if pick(Suite::Star) {
        reports.push(verify_star(window.unwrap_or(6), 1000, seed));
    }
    if pick(Suite::DiscF) {
        reports.push(verify_disc_f(window.unwrap_or(50)));
    }
    if pick(Suite::Surface) {
        reports.push(verify_surface(window.unwrap_or(6)));
    }
    let failures: usize = reports.iter().map(|r| r.failures.len()).sum();
    emit_json(&json!({
        "command": "verify-identities",
        "suite": suite,
        "window": window,
        "seed": seed,
        "reports": reports,
        "failures": failures,
    }))?;
    Ok(failures == 0)
}

fn family(name: Family, height: u64, delta: Option<Ratio<i64>>, dump: Option<PathBuf>) -> Outcome {
    if delta.is_some() && name != Family::D4vc {
        return Err(Failure::Usage("--delta only applies to d4vc".into()));
    }
    let limit = match name {
        Family::D4vc => 100_000_000,
        Family::V4Biquadratic | Family::A3 => 10_000_000,
        Family::A4 => 3_000,
    };
    if height > limit {
        return Err(Failure::Usage(format!("--height for {} is limited to {limit}", name.name())));
    }
    let delta = delta.unwrap_or_else(default_delta);
    eprintln!("family {}: generating", name.name());
    let members = match name {
        Family::D4vc => gen_d4vc_family(height, delta)?,
        Family::V4Biquadratic => gen_v4_biquadratic(height),
        Family::A4 => gen_a4_family(height),
        Family::A3 => {
            let t = i128::from(height);
            gen_a3_family(-t, t)
        }
    };
    eprintln!("family {}: classifying {} members", name.name(), members.len());
    let classes = classify_members(&members)?;
    let report = cross_validate_with(&members, &classes)?;
    if let Some(path) = dump {
        std::fs::write(path, family_dump(&members, &classes)?)?;
    }
    emit_json(&json!({
        "command": "family",
        "name": name,
        "height": height,
        "delta": (name == Family::D4vc).then(|| delta.to_string()),
        "report": report,
    }))?;
    Ok(report.mismatch_count == 0)
}

fn param_witness(coeffs: &str) -> Outcome {
    let c = parse_coeffs(coeffs, 3)?;
    let f = MonicCubic::checked(c[0], c[1], c[2])?;
    let class = classify_cubic(&f)?;
    if class != CubicClass::A3 {
        return Err(Failure::Usage(format!("{f} has group {}, not A3", GaloisClass::from(class))));
    }
    let w = parametrize_cubic_witness(&f)?;
    emit_json(&json!({"command": "param-witness", "coeffs": c, "witness": w}))?;
    Ok(true)
}

fn asym(n: u32, heights: Vec<u32>, counts: Vec<String>) -> Outcome {
    if n != 3 && n != 4 {
        return Err(Failure::Usage(format!("--n must be 3 or 4, got {n}")));
    }
    let mut pairs: Vec<(u32, u64)> = Vec::new();
    for c in &counts {
        let parsed = c.split_once(':').and_then(|(h, r)| Some((h.trim().parse().ok()?, r.trim().parse().ok()?)));
        pairs.push(parsed.ok_or_else(|| Failure::Usage(format!("--counts entry {c:?} is not H:R")))?);
    }
    let max_h = if n == 3 { 2000 } else { 150 };
    for &h in &heights {
        if h == 0 || h > max_h {
            return Err(Failure::Usage(format!("--heights entries must lie in [1, {max_h}] for n = {n}")));
        }
        eprintln!("asym: census degree {n} height {h}");
        let report = run_census(&CensusRequest::new(n, h))?;
        pairs.push((h, report.count(GaloisClass::Reducible)));
    }
    let chela = chela_constant_c(n, 1e-12)?;
    let fit = if pairs.is_empty() { None } else { Some(fit_reducible_counts(n, &pairs)?) };
    emit_json(&json!({
        "command": "asym",
        "n": n,
        "heights": heights,
        "counts": counts,
        "chela": chela,
        "fit": fit,
    }))?;
    Ok(chela.agree)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Classify { degree, coeffs, format } => classify(degree, &coeffs, format),
        Command::Census { degree, height, strategy, threads, out, format, journal, table_cap_mib, quiet } => {
            census(degree, height, strategy, threads, out, format, journal, table_cap_mib, quiet)
        }
        Command::VerifyIdentities { suite, window, seed } => verify(suite, window, seed),
        Command::Family { name, height, delta, dump } => family(name, height, delta, dump),
        Command::ParamWitness { coeffs } => param_witness(&coeffs),
        Command::Asym { n, heights, counts } => asym(n, heights, counts),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
