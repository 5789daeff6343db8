//! Command-line workbench for Collatz-style dynamics on polynomial rings,
//! rational power-series forms, and 2-adic rationals.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 budget exhausted
//! (inconclusive), 3 verification failure.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use collatz_rings::census;
use collatz_rings::dyadic::{self, DyadicRational};
use collatz_rings::parity;
use collatz_rings::poly::{self, Poly};
use collatz_rings::ring::{make_ring, Ring, RingElem};
use collatz_rings::series::{self, ParityMap, RationalSeries};
use collatz_rings::valuation;
use collatz_rings::verify;
use collatz_rings::Error;

mod render;

use render::{elem_vec_json, poly_json, series_json};

const EXIT_USAGE: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_VERIFY: u8 = 3;

/// Work-budget ceiling consulted when no --budget flag is given.
const BUDGET_ENV: &str = "COLLATZ_WORK_BUDGET";

#[derive(Parser)]
#[command(name = "collatz", version, about = "Collatz dynamics on rings workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Iterate the map with cycle detection
    Orbit(OrbitArgs),
    /// Exact period of a periodic polynomial
    Period(PolyArgs),
    /// Decide periodicity (binomial-sum criterion; classification over Z)
    IsPeriodic(PolyArgs),
    /// Closed-form cycle counts, optionally verified against enumeration
    #[command(subcommand)]
    Count(CountCmd),
    /// Cycle census over a finite ring
    Census(CensusArgs),
    /// Build a periodic point from a parity vector
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Parity vector of an orbit
    Parity(ParityArgs),
    /// p-adic valuation toolbox
    #[command(subcommand)]
    Valuation(ValuationCmd),
    /// Run a named verification suite (or `all`)
    Verify(VerifyArgs),
}

#[derive(Args)]
struct OrbitArgs {
    /// Ring spec: Z/<N> | F<q> | F<q>=F<p>[y]/(<poly>) | F<p>[t] | Z
    #[arg(long)]
    ring: Option<String>,
    /// Polynomial, little-endian: [c0,c1,...]
    #[arg(long)]
    poly: Option<String>,
    /// Series numerator u of u(1+xv)^{-1}
    #[arg(long)]
    series_u: Option<String>,
    /// Series v part of u(1+xv)^{-1}
    #[arg(long)]
    series_v: Option<String>,
    /// 2-adic rational num/den (odd den)
    #[arg(long)]
    z2: Option<String>,
    /// Use the condensed map (z2 only)
    #[arg(long)]
    condensed: bool,
    /// Detection-phase step budget
    #[arg(long)]
    budget: Option<u64>,
    /// Keep and print the orbit prefix
    #[arg(long)]
    trace: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PolyArgs {
    #[arg(long)]
    ring: String,
    #[arg(long)]
    poly: String,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum CountCmd {
    /// Cycles of length 2p^k over F_q
    Fq(CountFqArgs),
    /// Series cycle counts (depend only on q = |R|)
    Series(CountSeriesArgs),
    /// 2-adic cycle counts
    Z2(CountZ2Args),
}

#[derive(Args)]
struct CountFqArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    k: u32,
    /// Cross-check against a census
    #[arg(long)]
    verify: bool,
    /// Unverifiable rows become failures
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CountSeriesArgs {
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    ring: Option<String>,
    /// n or a..b (inclusive)
    #[arg(long)]
    n: String,
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct CountZ2Args {
    /// n or a..b (inclusive)
    #[arg(long)]
    n: String,
    /// Count condensed-map cycles instead of full-map ones
    #[arg(long)]
    condensed: bool,
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long)]
    ring: String,
    /// Brute-force scan up to this degree
    #[arg(long)]
    max_deg: Option<usize>,
    /// Use the matrix enumeration over a field instead of a full scan
    #[arg(long)]
    matrix: bool,
    /// Matrix size exponent: covers degrees < p^k
    #[arg(long)]
    k: Option<u32>,
    /// Print the signed/unsigned Pascal matrix pair as JSON and exit
    #[arg(long)]
    dump_matrices: bool,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// From a bit string like 1000 (full map; --condensed for any bits)
    Z2(ConstructZ2Args),
    /// From a ring-valued vector like [1,0] (full map; --condensed allows any)
    Series(ConstructSeriesArgs),
}

#[derive(Args)]
struct ConstructZ2Args {
    /// Parity bits, e.g. 1000
    #[arg(long)]
    bits: String,
    /// Treat the bits as a condensed-map parity vector (no density needed)
    #[arg(long)]
    condensed: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ConstructSeriesArgs {
    #[arg(long)]
    ring: String,
    /// Parity vector over the ring, e.g. [1,0]
    #[arg(long)]
    vec: String,
    #[arg(long)]
    condensed: bool,
    /// Also dump the first M series coefficients
    #[arg(long)]
    truncate: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ParityArgs {
    #[arg(long)]
    ring: Option<String>,
    #[arg(long)]
    poly: Option<String>,
    #[arg(long)]
    series_u: Option<String>,
    #[arg(long)]
    series_v: Option<String>,
    #[arg(long)]
    z2: Option<String>,
    /// Window length
    #[arg(short, long)]
    n: usize,
    #[arg(long)]
    condensed: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum ValuationCmd {
    /// v_p(n)
    Vp {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        n: BigUint,
    },
    /// Sum of base-p digits
    DigitSum {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        n: BigUint,
    },
    /// v_p(C(n, m)) by the digit formula
    Binom {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        n: BigUint,
        #[arg(short)]
        m: BigUint,
    },
    /// v_p(C(a, n)) = v_p(a) - v_p(n) under the large-valuation hypothesis
    Shortcut {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        a: BigUint,
        #[arg(short)]
        n: BigUint,
    },
    /// K(n) for the characteristic given by --modulus
    Threshold {
        #[arg(long)]
        modulus: u64,
        #[arg(short)]
        n: u64,
    },
    /// Both sides of the K(n) | k divisibility equivalence
    Equiv {
        #[arg(long)]
        modulus: u64,
        #[arg(short)]
        n: u64,
        #[arg(short)]
        k: BigUint,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name or `all`
    suite: String,
    /// Seed for sampled checks
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::BudgetExceeded(_) => EXIT_BUDGET,
                _ => EXIT_USAGE,
            };
            ExitCode::from(code)
        }
    }
}

fn env_budget() -> Option<u64> {
    std::env::var(BUDGET_ENV).ok().and_then(|v| v.parse().ok())
}

fn parse_range(text: &str) -> Result<(u64, u64), Error> {
    let bad = || Error::Parse {
        what: "range",
        text: text.to_string(),
    };
    if let Some((a, b)) = text.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if a == 0 || b < a {
            return Err(bad());
        }
        Ok((a, b))
    } else {
        let n: u64 = text.trim().parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        Ok((n, n))
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Orbit(args) => cmd_orbit(args),
        Command::Period(args) => cmd_period(args),
        Command::IsPeriodic(args) => cmd_is_periodic(args),
        Command::Count(cmd) => match cmd {
            CountCmd::Fq(args) => cmd_count_fq(args),
            CountCmd::Series(args) => cmd_count_series(args),
            CountCmd::Z2(args) => cmd_count_z2(args),
        },
        Command::Census(args) => cmd_census(args),
        Command::Construct(cmd) => match cmd {
            ConstructCmd::Z2(args) => cmd_construct_z2(args),
            ConstructCmd::Series(args) => cmd_construct_series(args),
        },
        Command::Parity(args) => cmd_parity(args),
        Command::Valuation(cmd) => cmd_valuation(cmd),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn require_ring(spec: &Option<String>) -> Result<Ring, Error> {
    let spec = spec
        .as_deref()
        .ok_or_else(|| Error::Precondition("--ring is required for this input".into()))?;
    make_ring(spec)
}

fn cmd_orbit(args: OrbitArgs) -> Result<ExitCode, Error> {
    if let Some(z2_text) = &args.z2 {
        let f = DyadicRational::parse(z2_text)?;
        let budget = args.budget.or_else(env_budget).unwrap_or(10_000);
        let which = if args.condensed {
            ParityMap::Condensed
        } else {
            ParityMap::Full
        };
        let report = dyadic::dyadic_orbit(&f, budget, which);
        if args.json {
            let out = serde_json::json!({
                "start": f.to_string(),
                "map": if args.condensed { "condensed" } else { "full" },
                "cycle_found": report.cycle_found(),
                "preperiod": report.preperiod,
                "cycle": report.cycle.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                "steps": report.steps_taken,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        } else if report.cycle_found() {
            println!("preperiod: {}", report.preperiod);
            println!("cycle length: {}", report.cycle.len());
            let members: Vec<String> = report.cycle.iter().map(|g| g.to_string()).collect();
            println!("cycle: {}", members.join(" -> "));
        } else {
            println!(
                "no cycle within budget {budget} ({} steps taken); inconclusive",
                report.steps_taken
            );
        }
        return Ok(if report.cycle_found() {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(EXIT_BUDGET)
        });
    }

    if args.series_u.is_some() || args.series_v.is_some() {
        let ring = require_ring(&args.ring)?;
        let u = Poly::parse(&ring, args.series_u.as_deref().unwrap_or("[]"))?;
        let v = Poly::parse(&ring, args.series_v.as_deref().unwrap_or("[]"))?;
        let f = RationalSeries::new(ring.clone(), u, v)?;
        let budget = args.budget.or_else(env_budget).unwrap_or(100_000);
        let report = series::series_orbit(&f, budget)?;
        if args.json {
            let out = serde_json::json!({
                "start": series_json(&f),
                "preperiod": report.preperiod,
                "cycle": report.cycle.iter().map(series_json).collect::<Vec<_>>(),
                "parity_trace": elem_vec_json(&ring, &report.parity_trace),
                "steps": report.steps_taken,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        } else {
            println!("preperiod: {}", report.preperiod);
            println!("cycle length: {}", report.cycle.len());
            for (i, g) in report.cycle.iter().enumerate() {
                println!("  cycle[{i}] = u {} / (1 + x*{})", g.numerator(), g.v_part());
            }
        }
        return Ok(ExitCode::SUCCESS);
    }

    let ring = require_ring(&args.ring)?;
    let f = Poly::parse(
        &ring,
        args.poly
            .as_deref()
            .ok_or_else(|| Error::Precondition("one of --poly, --series-u, --z2 required".into()))?,
    )?;
    let budget = match args.budget.or_else(env_budget) {
        Some(b) => b,
        None if ring.characteristic() > 0 => poly::default_orbit_budget(&f)?,
        None => 1000,
    };
    let report = poly::orbit(&f, budget, args.trace);
    if args.json {
        let out = serde_json::json!({
            "ring": ring.spec_string(),
            "start": poly_json(&f),
            "cycle_found": report.cycle_found(),
            "preperiod": report.preperiod,
            "cycle": report.cycle.iter().map(poly_json).collect::<Vec<_>>(),
            "steps": report.steps_taken,
            "budget": budget,
            "trace": report.trace.as_ref().map(|t| t.iter().map(poly_json).collect::<Vec<_>>()),
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else if report.cycle_found() {
        println!("preperiod: {}", report.preperiod);
        println!("cycle length: {}", report.cycle.len());
        let members: Vec<String> = report.cycle.iter().map(|g| g.to_string()).collect();
        println!("cycle: {}", members.join(" -> "));
        if let Some(trace) = &report.trace {
            let path: Vec<String> = trace.iter().map(|g| g.to_string()).collect();
            println!("trace: {}", path.join(" -> "));
        }
    } else {
        println!(
            "no cycle within budget {budget} ({} steps taken); inconclusive",
            report.steps_taken
        );
    }
    Ok(if report.cycle_found() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_BUDGET)
    })
}

fn cmd_period(args: PolyArgs) -> Result<ExitCode, Error> {
    let ring = make_ring(&args.ring)?;
    let f = Poly::parse(&ring, &args.poly)?;
    let period = poly::exact_period(&f)?;
    if args.json {
        let bound = if f.is_odd() && f.degree() > Some(0) && ring.characteristic() > 0 {
            Some(poly::period_divisor_bound(&f)?.to_string())
        } else {
            None
        };
        let out = serde_json::json!({
            "ring": ring.spec_string(),
            "poly": poly_json(&f),
            "period": period,
            "divisor_bound": bound,
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("{period}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_is_periodic(args: PolyArgs) -> Result<ExitCode, Error> {
    let ring = make_ring(&args.ring)?;
    let f = Poly::parse(&ring, &args.poly)?;
    if ring.characteristic() == 0 {
        let class = poly::char_zero_classify(&f)?;
        let label = match class {
            poly::CharZeroClass::OnZeroCycle => "periodic (zero cycle)",
            poly::CharZeroClass::OnConstantCycle => "periodic (constant two-cycle)",
            poly::CharZeroClass::NotPeriodic => "not periodic (eventual periodicity undecided)",
        };
        if args.json {
            let out = serde_json::json!({
                "ring": "Z",
                "poly": poly_json(&f),
                "classification": label,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        } else {
            println!("{label}");
        }
        return Ok(ExitCode::SUCCESS);
    }
    let periodic = poly::is_periodic(&f)?;
    if args.json {
        let out = serde_json::json!({
            "ring": ring.spec_string(),
            "poly": poly_json(&f),
            "periodic": periodic,
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("{periodic}");
    }
    Ok(ExitCode::SUCCESS)
}

fn first_prime_factor(q: u64) -> Result<u64, Error> {
    if q < 2 {
        return Err(Error::Precondition(format!("{q} is not a prime power")));
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            return Ok(p);
        }
        p += 1;
    }
    Ok(q)
}

fn cmd_count_fq(args: CountFqArgs) -> Result<ExitCode, Error> {
    let p = first_prime_factor(args.q)?;
    let count = census::count_cycles_formula(args.q, p, args.k)?;
    let len = if args.k == 0 { 2 } else { 2 * p.pow(args.k) };
    let mut verified: Option<bool> = None;
    if args.verify {
        let ring = make_ring(&format!("F{}", args.q))?;
        verified = match census::matrix_census(&ring, args.k.max(1)) {
            Ok(table) => {
                Some(BigUint::from(table.counts.get(&len).copied().unwrap_or(0)) == count)
            }
            Err(Error::BudgetExceeded(_)) => None,
            Err(e) => return Err(e),
        };
    }
    if args.json {
        let out = serde_json::json!({
            "q": args.q,
            "k": args.k,
            "cycle_length": len,
            "count": count.to_string(),
            "verified": verified,
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        match verified {
            Some(true) => println!("{count} (verified)"),
            Some(false) => println!("{count} (MISMATCH against census)"),
            None if args.verify => println!("{count} (unverified: census budget exceeded)"),
            None => println!("{count}"),
        }
    }
    if verified == Some(false) {
        return Ok(ExitCode::from(EXIT_VERIFY));
    }
    if args.strict && args.verify && verified.is_none() {
        return Ok(ExitCode::from(EXIT_BUDGET));
    }
    Ok(ExitCode::SUCCESS)
}

struct CountRow {
    n: u64,
    count: BigUint,
    verified: Option<bool>,
}

fn render_count_rows(
    domain: &str,
    q: Option<u64>,
    rows: &[CountRow],
    json: bool,
    csv: bool,
    strict: bool,
) -> ExitCode {
    let mismatch = rows.iter().any(|r| r.verified == Some(false));
    let unverified = strict && rows.iter().any(|r| r.verified.is_none());
    if json {
        let out = serde_json::json!({
            "domain": domain,
            "q": q,
            "rows": rows.iter().map(|r| serde_json::json!({
                "n": r.n,
                "count": r.count.to_string(),
                "verified": r.verified,
            })).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else if csv {
        println!("n,count");
        for r in rows {
            println!("{},{}", r.n, r.count);
        }
    } else {
        for r in rows {
            match r.verified {
                Some(true) => println!("n={}: {} (verified)", r.n, r.count),
                Some(false) => println!("n={}: {} (MISMATCH)", r.n, r.count),
                None => println!("n={}: {}", r.n, r.count),
            }
        }
    }
    if mismatch {
        ExitCode::from(EXIT_VERIFY)
    } else if unverified {
        ExitCode::from(EXIT_BUDGET)
    } else {
        ExitCode::SUCCESS
    }
}

/// Some finite ring of the requested size, for count verification: a field
/// when q is a prime power, Z/q otherwise.
fn field_or_zmod(q: u64) -> Result<Ring, Error> {
    make_ring(&format!("F{q}")).or_else(|_| make_ring(&format!("Z/{q}")))
}

fn cmd_count_series(args: CountSeriesArgs) -> Result<ExitCode, Error> {
    let (ring, q) = match (&args.ring, args.q) {
        (Some(spec), _) => {
            let ring = make_ring(spec)?;
            let q: u64 = ring
                .cardinality()
                .ok_or(Error::InfiniteRing)?
                .try_into()
                .map_err(|_| Error::Precondition("ring too large".into()))?;
            (Some(ring), q)
        }
        (None, Some(q)) => (None, q),
        (None, None) => {
            return Err(Error::Precondition("give --q or --ring".into()));
        }
    };
    let (lo, hi) = parse_range(&args.n)?;
    let budget = env_budget().unwrap_or(census::DEFAULT_WORK_BUDGET);
    let ledger = parity::CountLedger::compute(q, hi)?;
    let mut rows = Vec::new();
    for n in lo..=hi {
        let count = parity::z_count(q, n)?;
        let verified = if args.verify {
            let ring = match &ring {
                Some(r) => r.clone(),
                None => field_or_zmod(q)?,
            };
            match series::omega_census_budgeted(&ring, n as usize, budget) {
                Ok((omega, cycles)) => {
                    Some(omega == parity::j_count(q, n)? && BigUint::from(cycles.len()) == count)
                }
                Err(Error::BudgetExceeded(_)) => None,
                Err(e) => return Err(e),
            }
        } else {
            None
        };
        rows.push(CountRow { n, count, verified });
    }
    if args.csv {
        // full ledger: n,e,j,i,Z
        let mut trimmed = ledger;
        trimmed.rows.retain(|r| r.n >= lo);
        print!("{}", trimmed.to_csv());
        return Ok(ExitCode::SUCCESS);
    }
    if args.json {
        let out = serde_json::json!({
            "domain": "series",
            "q": q,
            "rows": ledger.rows.iter().filter(|r| r.n >= lo).map(|r| serde_json::json!({
                "n": r.n,
                "zero_dense": r.e.to_string(),
                "period_dividing": r.j.to_string(),
                "primitive": r.i.to_string(),
                "cycles": r.z.to_string(),
                "verified": rows.iter().find(|row| row.n == r.n).and_then(|row| row.verified),
            })).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
        let mismatch = rows.iter().any(|r| r.verified == Some(false));
        return Ok(if mismatch {
            ExitCode::from(EXIT_VERIFY)
        } else {
            ExitCode::SUCCESS
        });
    }
    Ok(render_count_rows(
        "series",
        Some(q),
        &rows,
        false,
        false,
        args.strict,
    ))
}

fn cmd_count_z2(args: CountZ2Args) -> Result<ExitCode, Error> {
    let (lo, hi) = parse_range(&args.n)?;
    let mut rows = Vec::new();
    for n in lo..=hi {
        let count = if args.condensed {
            dyadic::condensed_cycle_count(n)?
        } else {
            dyadic::z2_cycle_count(n)?
        };
        let verified = if args.verify {
            if args.condensed {
                if n <= 22 {
                    let vectors: Vec<Vec<u64>> = (0u64..1 << n)
                        .map(|mask| (0..n).map(|i| (mask >> i) & 1).collect())
                        .collect();
                    let classes = parity::rotation_orbits(&vectors)?;
                    let exact = classes
                        .iter()
                        .filter(|c| c.primitive_period == n as usize)
                        .count();
                    Some(BigUint::from(exact) == count)
                } else {
                    None
                }
            } else if n <= 24 {
                let cycles = dyadic::enumerate_z2_cycles(n as usize)?;
                Some(BigUint::from(cycles.len()) == count)
            } else {
                None
            }
        } else {
            None
        };
        rows.push(CountRow { n, count, verified });
    }
    let domain = if args.condensed { "z2-condensed" } else { "z2" };
    Ok(render_count_rows(
        domain,
        Some(2),
        &rows,
        args.json,
        args.csv,
        args.strict,
    ))
}

fn cmd_census(args: CensusArgs) -> Result<ExitCode, Error> {
    let ring = make_ring(&args.ring)?;
    let budget = env_budget().unwrap_or(census::DEFAULT_WORK_BUDGET);
    if args.dump_matrices {
        let k = args
            .k
            .ok_or_else(|| Error::Precondition("--dump-matrices needs --k".into()))?;
        let (b, a) = census::build_matrices(&ring, k)?;
        let dump = |m: &census::TriangularMatrix| -> serde_json::Value {
            serde_json::Value::Array(
                (0..m.size())
                    .map(|i| {
                        serde_json::Value::Array(
                            (0..m.size())
                                .map(|j| render::elem_json(&ring, m.entry(i, j)))
                                .collect(),
                        )
                    })
                    .collect(),
            )
        };
        let out = serde_json::json!({
            "ring": ring.spec_string(),
            "size": b.size(),
            "B": dump(&b),
            "A": dump(&a),
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
        return Ok(ExitCode::SUCCESS);
    }
    let table = if args.matrix {
        let k = args
            .k
            .ok_or_else(|| Error::Precondition("--matrix needs --k".into()))?;
        census::matrix_census_capped(&ring, k, census::DEFAULT_MATRIX_CAP, budget)?
    } else {
        let cap = args
            .max_deg
            .ok_or_else(|| Error::Precondition("give --max-deg or --matrix --k".into()))?;
        census::brute_force_census_budgeted(&ring, cap, budget)?
    };
    if args.json {
        let counts: serde_json::Map<String, serde_json::Value> = table
            .counts
            .iter()
            .map(|(k, v)| (k.to_string(), serde_json::json!(v)))
            .collect();
        let out = serde_json::json!({
            "ring": table.ring_spec,
            "degree_cap": table.degree_cap,
            "counts": counts,
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else if args.csv {
        print!("{}", table.to_csv());
    } else {
        println!("ring {}, degrees <= {}", table.ring_spec, table.degree_cap);
        for (len, count) in &table.counts {
            println!("  length {len}: {count} cycle(s)");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_construct_z2(args: ConstructZ2Args) -> Result<ExitCode, Error> {
    let bits: Vec<u64> = args
        .bits
        .chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::Parse {
                what: "bit string",
                text: args.bits.clone(),
            }),
        })
        .collect::<Result<_, _>>()?;
    let n = bits.len();
    let f = if args.condensed {
        dyadic::periodic_from_parity_z2(&bits)?
    } else {
        if !parity::is_cyclically_zero_dense(&bits)? {
            return Err(Error::Precondition(
                "bits are not cyclically zero dense; pass --condensed to build a \
                 condensed-map periodic point from arbitrary bits"
                    .into(),
            ));
        }
        dyadic::periodic_from_cyclic_parity_z2(&bits)?
    };
    let which = if args.condensed {
        ParityMap::Condensed
    } else {
        ParityMap::Full
    };
    let rederived = dyadic::parity_vector_z2(&f, n, which);
    let verified = rederived == bits;
    // the full cycle through the constructed point
    let full_cycle = dyadic::dyadic_orbit(&f, 10 * (n as u64 + 2), ParityMap::Full).cycle;
    if args.json {
        let out = serde_json::json!({
            "point": f.to_string(),
            "map": if args.condensed { "condensed" } else { "full" },
            "parity_rederived": rederived,
            "verified": verified,
            "cycle": full_cycle.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "cycle_length": full_cycle.len(),
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("{f}");
        println!(
            "parity vector re-derived: {} ({})",
            rederived.iter().map(u64::to_string).collect::<String>(),
            if verified { "matches" } else { "MISMATCH" }
        );
        let members: Vec<String> = full_cycle.iter().map(|g| g.to_string()).collect();
        println!(
            "full-map cycle (length {}): {}",
            full_cycle.len(),
            members.join(" -> ")
        );
    }
    Ok(if verified {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY)
    })
}

/// Parse `[a,b,c]` into elements without dropping trailing zeros.
fn parse_elem_vector(ring: &Ring, text: &str) -> Result<Vec<RingElem>, Error> {
    let bad = || Error::Parse {
        what: "element vector",
        text: text.to_string(),
    };
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(bad)?;
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in inner.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(ring.parse_elem(inner[start..i].trim())?);
                start = i + 1;
            }
            _ => {}
        }
    }
    let last = inner[start..].trim();
    if !last.is_empty() {
        out.push(ring.parse_elem(last)?);
    }
    Ok(out)
}

fn cmd_construct_series(args: ConstructSeriesArgs) -> Result<ExitCode, Error> {
    let ring = make_ring(&args.ring)?;
    let v = parse_elem_vector(&ring, &args.vec)?;
    let n = v.len();
    if n == 0 {
        return Err(Error::Precondition("empty parity vector".into()));
    }
    let f = if args.condensed {
        series::periodic_from_parity(&ring, &v)?
    } else {
        series::periodic_from_cyclic_parity(&ring, &v)?
    };
    let which = if args.condensed {
        ParityMap::Condensed
    } else {
        ParityMap::Full
    };
    let rederived = series::parity_vector(&f, n, which);
    let verified = rederived == v;
    let truncated = args.truncate.map(|m| f.truncate(m));
    if args.json {
        let out = serde_json::json!({
            "ring": ring.spec_string(),
            "point": series_json(&f),
            "map": if args.condensed { "condensed" } else { "full" },
            "parity_rederived": elem_vec_json(&ring, &rederived),
            "verified": verified,
            "coefficients": truncated.as_ref().map(|t| elem_vec_json(&ring, t)),
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("u = {}, v = {}", f.numerator(), f.v_part());
        let parts: Vec<String> = rederived.iter().map(|e| ring.format_elem(e)).collect();
        println!(
            "parity vector re-derived: [{}] ({})",
            parts.join(","),
            if verified { "matches" } else { "MISMATCH" }
        );
        if let Some(t) = &truncated {
            let parts: Vec<String> = t.iter().map(|e| ring.format_elem(e)).collect();
            println!("coefficients: [{}]", parts.join(","));
        }
    }
    Ok(if verified {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY)
    })
}

fn cmd_parity(args: ParityArgs) -> Result<ExitCode, Error> {
    let which = if args.condensed {
        ParityMap::Condensed
    } else {
        ParityMap::Full
    };
    if let Some(z2_text) = &args.z2 {
        let f = DyadicRational::parse(z2_text)?;
        let bits = dyadic::parity_vector_z2(&f, args.n, which);
        if args.json {
            println!("{}", serde_json::json!({ "parity": bits }));
        } else {
            println!("{}", bits.iter().map(u64::to_string).collect::<String>());
        }
        return Ok(ExitCode::SUCCESS);
    }
    let ring = require_ring(&args.ring)?;
    let f = if let Some(poly_text) = &args.poly {
        RationalSeries::from_poly(Poly::parse(&ring, poly_text)?)?
    } else {
        let u = Poly::parse(&ring, args.series_u.as_deref().unwrap_or("[]"))?;
        let v = Poly::parse(&ring, args.series_v.as_deref().unwrap_or("[]"))?;
        RationalSeries::new(ring.clone(), u, v)?
    };
    let trace = series::parity_vector(&f, args.n, which);
    if args.json {
        println!(
            "{}",
            serde_json::json!({
                "ring": ring.spec_string(),
                "parity": elem_vec_json(&ring, &trace),
            })
        );
    } else {
        let parts: Vec<String> = trace.iter().map(|e| ring.format_elem(e)).collect();
        println!("[{}]", parts.join(","));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_valuation(cmd: ValuationCmd) -> Result<ExitCode, Error> {
    let value = match cmd {
        ValuationCmd::Vp { p, n } => valuation::vp(p, &n)?.to_string(),
        ValuationCmd::DigitSum { p, n } => valuation::digit_sum(p, &n).to_string(),
        ValuationCmd::Binom { p, n, m } => valuation::binom_valuation(p, &n, &m)?.to_string(),
        ValuationCmd::Shortcut { p, a, n } => {
            valuation::binom_valuation_by_difference(p, &a, &n)?.to_string()
        }
        ValuationCmd::Threshold { modulus, n } => {
            let cf = collatz_rings::ring::factorize(modulus);
            valuation::threshold_constant(&cf, n)?.to_string()
        }
        ValuationCmd::Equiv { modulus, n, k } => {
            let cf = collatz_rings::ring::factorize(modulus);
            let (s1, s2) = valuation::divisibility_equivalence_check(&cf, n, &k)?;
            format!("K(n) divides k: {s1}; prod p^alpha divides all C(k,j): {s2}")
        }
    };
    println!("{value}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let reports = if args.suite == "all" {
        verify::run_all(args.seed)
    } else {
        vec![verify::run_suite(&args.suite, args.seed)?]
    };
    let all_passed = reports.iter().all(|r| r.passed());
    if args.json {
        let out: Vec<_> = reports
            .iter()
            .map(|r| {
                serde_json::json!({
                    "suite": r.suite,
                    "passed": r.passed(),
                    "checks": r.checks.iter().map(|c| serde_json::json!({
                        "name": c.name,
                        "passed": c.passed,
                        "detail": c.detail,
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        for r in &reports {
            for c in &r.checks {
                let status = if c.passed { "pass" } else { "FAIL" };
                println!("[{status}] {}: {} ({})", r.suite, c.name, c.detail);
            }
        }
        println!(
            "{}: {} suite(s)",
            if all_passed { "PASS" } else { "FAIL" },
            reports.len()
        );
    }
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY)
    })
}
