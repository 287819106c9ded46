//! Command-line front end: analyze a matrix or polynomial, run the full
//! certification pipeline, reproduce the built-in example table, or search
//! companion matrices.
//!
//! Exit codes: 0 success (certify: Applicable), 2 parse/config error,
//! 3 Inapplicable, 4 Indeterminate. `reproduce-paper` exits 1 when any row
//! fails.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anosovcert::certifier::{
    self, certificate_json, render_paper_rows, render_report, CertifyOptions, ReportFormat,
    Verdict,
};
use anosovcert::intmat::IntMatrix;
use anosovcert::numfield::{FieldTable, PrecisionPolicy};
use anosovcert::periodic;
use anosovcert::polyalg::{self, IntPoly};

/// Decide whether the fixed-point or odd-prime periodic-point criterion
/// certifies an open set of trivial-centralizer diffeomorphisms near a
/// hyperbolic toral automorphism.
#[derive(Parser)]
#[command(name = "anosovcert", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact analysis without field data: characteristic polynomial,
    /// irreducibility, hyperbolicity, signature, periodic-point counts.
    Analyze(AnalyzeArgs),
    /// Run the full certification pipeline and emit a certificate.
    Certify(CertifyArgs),
    /// Certify the nine built-in examples and compare every reported value.
    ReproducePaper(ReproduceArgs),
    /// Certify every companion matrix in a coefficient box.
    Search(SearchArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Inline matrix, rows separated by `;`: "0 1; 1 5"
    #[arg(long, allow_hyphen_values = true)]
    matrix: Option<String>,
    /// Polynomial, either "x^2-5x-1" or a coefficient list "1,-5,-1"
    /// (highest degree first); the companion matrix is used.
    #[arg(long, allow_hyphen_values = true)]
    poly: Option<String>,
    /// File in the matrix text format (first line n, then n rows).
    #[arg(long)]
    file: Option<PathBuf>,
}

impl InputArgs {
    fn resolve(&self) -> Result<IntMatrix, String> {
        let sources = [
            self.matrix.is_some(),
            self.poly.is_some(),
            self.file.is_some(),
        ]
        .iter()
        .filter(|&&b| b)
        .count();
        if sources != 1 {
            return Err("provide exactly one of --matrix, --poly, --file".into());
        }
        if let Some(m) = &self.matrix {
            return IntMatrix::parse_inline(m).map_err(|e| e.to_string());
        }
        if let Some(p) = &self.poly {
            let poly = IntPoly::parse(p).map_err(|e| e.to_string())?;
            return IntMatrix::companion(&poly).map_err(|e| e.to_string());
        }
        let path = self.file.as_ref().unwrap();
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {}", path.display(), e))?;
        IntMatrix::parse_text(&text).map_err(|e| e.to_string())
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Periods to count, e.g. `--per 1,3,5`.
    #[arg(long, value_delimiter = ',')]
    per: Vec<u64>,
    /// Output format.
    #[arg(long, default_value = "human")]
    format: Format,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Extra field data file, consulted before the bundled table.
    #[arg(long)]
    field_data: Option<PathBuf>,
    /// Largest odd prime tried by the periodic-point criterion.
    #[arg(long, default_value_t = 101)]
    prime_cap: u64,
    /// Largest fundamental-unit power scanned for an integral image.
    #[arg(long, default_value_t = 64)]
    s_max: u64,
    #[arg(long, default_value = "human")]
    format: Format,
    /// Also write the report to this path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReproduceArgs {
    #[arg(long, default_value = "human")]
    format: Format,
    /// Deliberately corrupt one bundled field record (harness self-test).
    #[arg(long, hide = true)]
    corrupt_table: bool,
}

#[derive(Args)]
struct SearchArgs {
    /// Dimension of the companion matrices, 2..=4.
    #[arg(long)]
    n: usize,
    /// Bound on the absolute value of the middle coefficients.
    #[arg(long)]
    bound: i64,
    #[arg(long)]
    field_data: Option<PathBuf>,
    #[arg(long, default_value_t = 101)]
    prime_cap: u64,
    #[arg(long, default_value_t = 64)]
    s_max: u64,
    /// Write one structured certificate per candidate (JSON lines).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Human,
    Structured,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> ReportFormat {
        match f {
            Format::Human => ReportFormat::Human,
            Format::Structured => ReportFormat::Structured,
        }
    }
}

fn precision_from_env() -> PrecisionPolicy {
    let mut policy = PrecisionPolicy::default();
    if let Ok(v) = std::env::var("CERT_PRECISION_CAP_BITS") {
        match v.parse::<u32>() {
            Ok(bits) if bits >= 16 => policy.cap_bits = bits,
            _ => eprintln!("ignoring invalid CERT_PRECISION_CAP_BITS = {:?}", v),
        }
    }
    policy
}

fn load_field_table(path: &Option<PathBuf>) -> Result<Option<FieldTable>, String> {
    match path {
        None => Ok(None),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| format!("cannot read {}: {}", p.display(), e))?;
            FieldTable::parse(&text)
                .map(Some)
                .map_err(|e| e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Certify(args) => cmd_certify(args),
        Command::ReproducePaper(args) => cmd_reproduce(args),
        Command::Search(args) => cmd_search(args),
    };
    match code {
        Ok(c) => ExitCode::from(c),
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<u8, String> {
    let a = args.input.resolve()?;
    let p = a.char_poly();
    let deg = p.degree().unwrap();

    let irreducible: Option<bool> = if (1..=4).contains(&deg) && !p.has_zero_constant_term() {
        polyalg::is_irreducible(&p).ok()
    } else {
        None
    };
    let hyperbolic: Option<bool> = if p.has_zero_constant_term() {
        Some(false) // eigenvalue 0 means the matrix is not even invertible
    } else {
        polyalg::has_unimodular_root(&p).ok().map(|b| !b)
    };
    let signature = polyalg::signature(&p).ok();

    let mut per_counts: BTreeMap<u64, String> = BTreeMap::new();
    let mut bf: BTreeMap<u64, Vec<String>> = BTreeMap::new();
    let mut per_errors: BTreeMap<u64, String> = BTreeMap::new();
    for &k in &args.per {
        if k == 0 {
            return Err("periods must be positive".into());
        }
        match periodic::per_count(&a, k) {
            Ok(c) => {
                per_counts.insert(k, c.to_string());
                let inv = periodic::bf_invariants(&a, k).map_err(|e| e.to_string())?;
                bf.insert(k, inv.iter().map(|d| d.to_string()).collect());
            }
            Err(e) => {
                per_errors.insert(k, e.to_string());
            }
        }
    }

    match args.format {
        Format::Human => {
            println!("matrix (n = {}): {}", a.n(), a.to_inline());
            println!("characteristic polynomial: {}", p);
            println!("unimodular: {}", a.is_unimodular());
            match irreducible {
                Some(b) => println!("irreducible over Q: {}", b),
                None => println!("irreducible over Q: (not computed for this degree)"),
            }
            match hyperbolic {
                Some(true) => println!("hyperbolic: true (no eigenvalue of modulus one)"),
                Some(false) => println!("hyperbolic: false"),
                None => println!("hyperbolic: (not computed)"),
            }
            match signature {
                Some(s) => println!("signature: ({}, {})", s.r1, s.r2),
                None => println!("signature: (undefined: repeated roots)"),
            }
            for (k, c) in &per_counts {
                let factors = bf.get(k).map(|v| v.join(", ")).unwrap_or_default();
                println!("|Per^{}| = {}  (invariant factors: [{}])", k, c, factors);
            }
            for (k, e) in &per_errors {
                println!("|Per^{}|: {}", k, e);
            }
        }
        Format::Structured => {
            let sig = signature.map(|s| json!([s.r1, s.r2])).unwrap_or(Value::Null);
            let doc = json!({
                "schema_version": 1,
                "input_matrix": a.to_inline(),
                "char_poly": p.to_string(),
                "unimodular": a.is_unimodular(),
                "irreducible": irreducible,
                "hyperbolic": hyperbolic,
                "signature": sig,
                "per_counts": per_counts,
                "bf_invariants": bf,
                "per_errors": per_errors,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
    }
    Ok(0)
}

fn cmd_certify(args: CertifyArgs) -> Result<u8, String> {
    let a = args.input.resolve()?;
    let table = load_field_table(&args.field_data)?;
    let opts = CertifyOptions {
        prime_cap: args.prime_cap,
        s_max: args.s_max,
        precision: precision_from_env(),
    };
    let cert = certifier::certify(&a, table.as_ref(), &opts).map_err(|e| e.to_string())?;
    let report = render_report(&cert, args.format.into());
    println!("{}", report);
    if let Some(path) = &args.out {
        std::fs::write(path, &report)
            .map_err(|e| format!("cannot write {}: {}", path.display(), e))?;
    }
    Ok(match cert.verdict {
        Verdict::Applicable { .. } => 0,
        Verdict::Inapplicable { .. } => 3,
        Verdict::Indeterminate { .. } => 4,
    })
}

fn cmd_reproduce(args: ReproduceArgs) -> Result<u8, String> {
    let opts = CertifyOptions {
        precision: precision_from_env(),
        ..CertifyOptions::default()
    };
    let rows = certifier::reproduce_paper(&opts, args.corrupt_table);
    println!("{}", render_paper_rows(&rows, args.format.into()));
    Ok(if rows.iter().all(|r| r.pass) { 0 } else { 1 })
}

fn cmd_search(args: SearchArgs) -> Result<u8, String> {
    if !(2..=4).contains(&args.n) {
        return Err(format!("search supports n in 2..=4, got {}", args.n));
    }
    if args.bound < 0 {
        return Err("bound must be nonnegative".into());
    }
    let table = load_field_table(&args.field_data)?;
    let opts = CertifyOptions {
        prime_cap: args.prime_cap,
        s_max: args.s_max,
        precision: precision_from_env(),
    };
    let mut out_file: Option<std::fs::File> = match &args.out {
        Some(path) => Some(
            std::fs::File::create(path)
                .map_err(|e| format!("cannot write {}: {}", path.display(), e))?,
        ),
        None => None,
    };

    let mut counts: BTreeMap<&'static str, usize> = BTreeMap::new();
    let mut applicable: Vec<String> = Vec::new();
    let mut total = 0usize;
    for (poly, cert) in certifier::search(args.n, args.bound, table.as_ref(), &opts) {
        total += 1;
        *counts.entry(cert.verdict.kind()).or_insert(0) += 1;
        if let Verdict::Applicable { approaches } = &cert.verdict {
            let sets: Vec<String> = approaches.iter().map(|ap| ap.open_set()).collect();
            applicable.push(format!("{} -> {}", poly, sets.join(", ")));
        }
        if let Some(f) = out_file.as_mut() {
            use std::io::Write;
            let line = serde_json::to_string(&certificate_json(&cert)).unwrap();
            writeln!(f, "{}", line).map_err(|e| e.to_string())?;
        }
    }
    println!(
        "searched {} monic degree-{} polynomials with constant term +-1, |middle coefficients| <= {}",
        total, args.n, args.bound
    );
    for (kind, count) in &counts {
        println!("  {}: {}", kind, count);
    }
    if !applicable.is_empty() {
        println!("applicable candidates:");
        for line in &applicable {
            println!("  {}", line);
        }
    }
    if let Some(path) = &args.out {
        println!("wrote {} structured certificates to {}", total, path.display());
    }
    Ok(0)
}
