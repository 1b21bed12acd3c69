mod bfile;
mod syntax;

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use qcore::harness::registry::{Claim, IdentityRecord, Tier};
use qcore::harness::{exit_code, Census, Fault, Harness};
use qcore::oracle::CoreOracle;
use qcore::report::Summary;
use qcore::series::TruncatedSeries;
use qcore::theta::Seq;

use bfile::BFile;

const ORDER_ENV: &str = "QCORE_DEFAULT_ORDER";

#[derive(Parser)]
#[command(name = "qcore", version, about = "Exact q-series expansions and identity checks for c5, a5bar and b5bar")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TierArg {
    Core,
    Extended,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficients of q^0..q^N of a series
    Expand {
        /// c5, a5bar, b5bar, phi(-q^5), psi, f(-q), chi(q), R(q^5), f(q,q^4), f5^5/f1, (q;q^5)^-1, ...
        name: String,
        /// Truncation order (default 100)
        n: Option<usize>,
        #[arg(short = 'N', long, conflicts_with = "n")]
        order: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Verify registered identities: an id, `core`, `extended` or `all`
    Verify {
        selector: Option<String>,
        #[arg(long, value_enum, conflicts_with = "selector")]
        tier: Option<TierArg>,
        /// Truncation order (default 1000)
        #[arg(short = 'N', long)]
        order: Option<usize>,
        /// Largest k checked in the 5^k families
        #[arg(long, default_value_t = qcore::harness::DEFAULT_KMAX, value_parser = clap::value_parser!(u32).range(2..=27))]
        kmax: u32,
        /// Worker threads (0 picks one per core)
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Add 1 to every right-hand side at this index (harness self-test)
        #[arg(long, value_name = "INDEX")]
        inject_fault: Option<u64>,
        /// Include elapsed times (output is then not reproducible)
        #[arg(long)]
        timing: bool,
        /// List the selected records instead of verifying them
        #[arg(long)]
        list: bool,
    },
    /// Count the t-cores of n by hook numbers
    Oracle {
        n: u32,
        t: u32,
        #[arg(long, default_value_t = qcore::oracle::DEFAULT_CEILING)]
        ceiling: u32,
        /// Print every t-core partition of n
        #[arg(long)]
        list: bool,
    },
    /// Exact sign counts of a sequence over 1..N
    Census {
        #[arg(default_value = "b5bar")]
        seq: String,
        /// Truncation order (default 10000)
        #[arg(short = 'N', long)]
        order: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Export or check OEIS b-files
    Bfile {
        #[command(subcommand)]
        action: BfileAction,
    },
}

#[derive(Subcommand)]
enum BfileAction {
    /// Write "n a(n)" lines for n = 0..N
    Export {
        name: String,
        path: PathBuf,
        /// Truncation order (default 100)
        n: Option<usize>,
        #[arg(short = 'N', long, conflicts_with = "n")]
        order: Option<usize>,
    },
    /// Compare a b-file against generated coefficients
    Check { name: String, path: PathBuf },
}

enum Failure {
    Usage(String),
    Io(String),
    Malformed(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
            Failure::Malformed(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Io(m) | Failure::Malformed(m) => f.write_str(m),
        }
    }
}

/// Collected stdout and the exit status for a successful run.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn new() -> Self {
        Output { text: String::new(), code: 0 }
    }

    fn line(&mut self, line: impl AsRef<str>) {
        self.text.push_str(line.as_ref());
        self.text.push('\n');
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(3);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}

fn default_order(fallback: usize) -> Result<usize, Failure> {
    match std::env::var(ORDER_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{ORDER_ENV}={v:?} is not a non-negative integer"))),
        Err(_) => Ok(fallback),
    }
}

fn pick_order(explicit: Option<usize>, fallback: usize) -> Result<usize, Failure> {
    explicit.map_or_else(|| default_order(fallback), Ok)
}

fn run(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Expand { name, n, order, format } => expand(&name, pick_order(n.or(order), 100)?, format),
        Command::Verify { selector, tier, order, kmax, jobs, format, inject_fault, timing, list } => {
            let order = pick_order(order, 1000)?;
            let harness = Harness::default().with_kmax(kmax);
            let records = select(&harness, selector.as_deref(), tier)?;
            if list {
                return Ok(list_records(&records));
            }
            let fault = inject_fault.map(|index| Fault { index, delta: 1 });
            verify(&harness, &records, order, jobs, fault, format, timing)
        }
        Command::Oracle { n, t, ceiling, list } => oracle(n, t, ceiling, list),
        Command::Census { seq, order, format } => census(&seq, pick_order(order, 10_000)?, format),
        Command::Bfile { action: BfileAction::Export { name, path, n, order } } => {
            bfile_export(&name, &path, pick_order(n.or(order), 100)?)
        }
        Command::Bfile { action: BfileAction::Check { name, path } } => bfile_check(&name, &path),
    }
}

fn series(name: &str, order: usize) -> Result<TruncatedSeries, Failure> {
    let spec = syntax::parse(name).map_err(|e| Failure::Usage(e.to_string()))?;
    spec.eval(order).map_err(|e| Failure::Usage(format!("{name}: {e}")))
}

fn expand(name: &str, order: usize, format: Format) -> Result<Output, Failure> {
    let s = series(name, order)?;
    let mut out = Output::new();
    match format {
        Format::Text => out.line(s.to_string()),
        Format::Json => {
            let coeffs: Vec<String> = s.coeffs().iter().map(BigInt::to_string).collect();
            out.line(json!({ "name": name, "order": order, "coefficients": coeffs }).to_string());
        }
    }
    Ok(out)
}

fn select<'h>(
    harness: &'h Harness,
    selector: Option<&str>,
    tier: Option<TierArg>,
) -> Result<Vec<&'h IdentityRecord>, Failure> {
    let reg = harness.registry();
    let tier = match (selector, tier) {
        (None, None) | (Some("core"), _) => TierArg::Core,
        (Some("extended"), _) => TierArg::Extended,
        (Some("all"), _) => TierArg::All,
        (None, Some(t)) => t,
        (Some(id), _) => {
            return reg
                .get(id)
                .map(|r| vec![r])
                .ok_or_else(|| Failure::Usage(format!("unknown identity {id:?} (try `qcore verify all --list`)")));
        }
    };
    Ok(match tier {
        TierArg::Core => reg.tier(Tier::Core).collect(),
        TierArg::Extended => reg.tier(Tier::Extended).collect(),
        TierArg::All => reg.records().iter().collect(),
    })
}

fn list_records(records: &[&IdentityRecord]) -> Output {
    let mut out = Output::new();
    for r in records {
        out.line(format!("{} [{}, {}] {}", r.id, r.tier.name(), r.kind(), r.statement));
    }
    out
}

fn verify(
    harness: &Harness,
    records: &[&IdentityRecord],
    order: usize,
    jobs: usize,
    fault: Option<Fault>,
    format: Format,
    timing: bool,
) -> Result<Output, Failure> {
    let reports = harness.verify_records(records, order, jobs, fault);
    let summary = Summary::of(&reports);
    let mut out = Output::new();
    for r in &reports {
        match format {
            Format::Text => out.line(r.to_line(timing)),
            Format::Json => {
                let mut v = serde_json::to_value(r).expect("report serializes");
                if !timing {
                    v.as_object_mut().expect("object").remove("elapsed");
                }
                out.line(v.to_string());
            }
        }
    }
    match format {
        Format::Text => out.line(format!("summary: {summary}")),
        Format::Json => out.line(json!({ "summary": summary }).to_string()),
    }
    out.code = exit_code(&reports) as u8;
    Ok(out)
}

fn oracle(n: u32, t: u32, ceiling: u32, list: bool) -> Result<Output, Failure> {
    if t == 0 {
        return Err(Failure::Usage("t must be positive".into()));
    }
    let oracle = CoreOracle::with_ceiling(ceiling);
    let count = oracle.count_t_cores(n, t).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut out = Output::new();
    if list {
        for p in oracle.t_cores(n, t).map_err(|e| Failure::Usage(e.to_string()))? {
            out.line(p.to_string());
        }
    }
    out.line(format!("c_{t}({n}) = {count}"));
    let gf = series(&format!("f{t}^{t}/f1"), n as usize)?;
    let coeff = gf.coeff(n as i64);
    if coeff == BigInt::from(count) {
        out.line(format!("f{t}^{t}/f1 at q^{n}: {coeff} (agrees)"));
    } else {
        out.line(format!("f{t}^{t}/f1 at q^{n}: {coeff} (DISAGREES)"));
        out.code = 1;
    }
    Ok(out)
}

fn census(name: &str, order: usize, format: Format) -> Result<Output, Failure> {
    let seq = Seq::from_name(name)
        .ok_or_else(|| Failure::Usage(format!("census needs c5, a5bar or b5bar, got {name:?}")))?;
    if order == 0 {
        return Err(Failure::Usage("census needs N >= 1".into()));
    }
    let harness = Harness::default();
    let c: Census = harness.sign_census(seq, order);
    let bounds = harness.registry().records().iter().find_map(|r| match &r.claim {
        Claim::Census { seq: s, bounds } if *s == seq => Some(*bounds),
        _ => None,
    });
    let violation = bounds.as_ref().and_then(|b| c.violation(b));
    let mut out = Output::new();
    match format {
        Format::Text => {
            out.line(c.to_string());
            if let Some(b) = &bounds {
                for (label, seen, bound) in [
                    ("zero", c.zero_fraction(), b.zero),
                    ("positive", c.positive_fraction(), b.positive),
                    ("negative", c.negative_fraction(), b.negative),
                ] {
                    let verdict = if seen >= bound { "ok" } else { "VIOLATED" };
                    out.line(format!("{label}: {seen} >= {bound} {verdict}"));
                }
            }
        }
        Format::Json => {
            let mut v = serde_json::to_value(&c).expect("census serializes");
            let obj = v.as_object_mut().expect("object");
            obj.insert("zero_fraction".into(), json!(c.zero_fraction().to_string()));
            obj.insert("positive_fraction".into(), json!(c.positive_fraction().to_string()));
            obj.insert("negative_fraction".into(), json!(c.negative_fraction().to_string()));
            if bounds.is_some() {
                obj.insert("bounds_met".into(), json!(violation.is_none()));
            }
            out.line(v.to_string());
        }
    }
    if violation.is_some() {
        out.code = 1;
    }
    Ok(out)
}

fn bfile_export(name: &str, path: &PathBuf, order: usize) -> Result<Output, Failure> {
    let s = series(name, order)?;
    let b = BFile::from_series(&s);
    fs::write(path, b.render()).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let mut out = Output::new();
    out.line(format!("wrote {} terms of {name} to {}", order + 1, path.display()));
    Ok(out)
}

fn bfile_check(name: &str, path: &PathBuf) -> Result<Output, Failure> {
    // Validate the name before touching the file.
    series(name, 0)?;
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let b = BFile::parse(&text).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
    let s = series(name, b.last() as usize)?;
    let (checked, d) = b.compare(&s);
    let mut out = Output::new();
    match d {
        None => out.line(format!(
            "{name}: {checked} terms checked (n = {}..{}), no discrepancies",
            b.first(),
            b.last()
        )),
        Some(d) => {
            out.line(format!(
                "{name}: first discrepancy at n = {}: file has {}, expected {}",
                d.index, d.found, d.expected
            ));
            out.code = 1;
        }
    }
    Ok(out)
}
