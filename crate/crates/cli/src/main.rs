//! `hermlcd`: command-line front end.
//!
//! Exit status is 0 on success, 1 on a domain error (an error object is
//! written to stderr as JSON) and 2 on a usage error.

mod report;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use hermlcd::constructions::{construct_g1, construct_g2, construct_hop, enumerate_hlcd, Family};
use hermlcd::cosets::CosetTable;
use hermlcd::cyclic::{DistanceMethod, DistanceReport, DEFAULT_BUDGET};
use hermlcd::gf::Elem;
use hermlcd::poly::{factor_split, Factor};
use hermlcd::{BigFieldContext, ConstructionReport, CyclicCode, Matrix, OdsmInstance, Poly};
use serde::Serialize;

use report::*;

#[derive(Parser, Debug)]
#[command(name = "hermlcd", version, about = "Cyclic Hermitian LCD codes over GF(q^2) and orthogonal direct sum masking")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cyclotomic cosets of `base` modulo n.
    Cosets {
        #[arg(long)]
        n: usize,
        #[arg(long = "base-q")]
        base_q: u64,
    },
    /// Split x^n - 1 over GF(q^2) into conjugate-reciprocal classes.
    Factor {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
    },
    /// Build one code from a family.
    Construct {
        #[command(flatten)]
        family: FamilyArgs,
        /// auto, message-enum, low-weight, macwilliams or off.
        #[arg(long, default_value = "off")]
        distance: String,
    },
    /// Count (and optionally list) every Hermitian LCD cyclic code of length n.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        /// Include every code in the report.
        #[arg(long)]
        list: bool,
    },
    /// CSV table of a family over a range of designed distances.
    Survey {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        e: Option<u64>,
        /// Inclusive range `a:b`.
        #[arg(long = "delta-range")]
        delta_range: String,
        #[arg(long, default_value = "off")]
        distance: String,
    },
    /// Operations on a single code.
    Code {
        #[command(subcommand)]
        action: CodeCommand,
    },
    /// Orthogonal direct sum masking on a Hermitian LCD code.
    Odsm {
        #[command(subcommand)]
        action: OdsmCommand,
    },
}

#[derive(Subcommand, Debug)]
enum CodeCommand {
    /// Parameters, Hermitian LCD status, BCH bound and distance.
    Describe {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value = "auto")]
        distance: String,
    },
}

#[derive(Subcommand, Debug)]
enum OdsmCommand {
    /// Print the generator matrix G and mask matrix H.
    Setup {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// z = xG + yH, with y given or drawn from --seed.
    Mask {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_delimiter = ',')]
        x: Vec<Elem>,
        #[arg(long, value_delimiter = ',', conflicts_with = "seed")]
        y: Option<Vec<Elem>>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Inject a fault into z and compare the recovered mask with y.
    Check {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_delimiter = ',')]
        z: Vec<Elem>,
        #[arg(long, value_delimiter = ',')]
        epsilon: Vec<Elem>,
        #[arg(long, value_delimiter = ',')]
        y: Vec<Elem>,
    },
    /// Detection counts per fault weight.
    Sweep {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 1)]
        min_weight: usize,
        #[arg(long)]
        max_weight: usize,
        /// Faults drawn per weight when a weight is too large to exhaust.
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug, Clone)]
struct FamilyArgs {
    /// hop, g1 or g2.
    #[arg(long)]
    family: Option<Family>,
    #[arg(long)]
    t: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    delta: Option<usize>,
    #[arg(long)]
    e: Option<u64>,
    #[arg(long)]
    q: Option<u64>,
}

#[derive(Args, Debug, Clone)]
struct CodeArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    n: Option<usize>,
    /// Generator coefficients, constant term first.
    #[arg(long, value_delimiter = ',')]
    coeffs: Option<Vec<Elem>>,
    /// Generator as a one-row matrix file (`1 cols p k` header).
    #[arg(long)]
    generator: Option<PathBuf>,
    /// Defining set; each entry is closed under its coset.
    #[arg(long = "defining-set", value_delimiter = ',')]
    defining_set: Option<Vec<i128>>,
}

enum Failure {
    Usage(String),
    Domain(hermlcd::Error),
    Io(std::io::Error),
}

impl From<hermlcd::Error> for Failure {
    fn from(e: hermlcd::Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> Outcome<T> {
    Err(Failure::Usage(msg.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            let r = ErrorReport { error: e.code(), message: e.to_string() };
            eprintln!("{}", serde_json::to_string(&r).expect("serializable"));
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) => {
            let r = ErrorReport { error: "Io", message: e.to_string() };
            eprintln!("{}", serde_json::to_string(&r).expect("serializable"));
            ExitCode::from(1)
        }
    }
}

fn budget() -> Outcome<u128> {
    match std::env::var("HERMLCD_BUDGET") {
        Ok(s) => s.trim().parse().or_else(|_| usage(format!("HERMLCD_BUDGET={s:?} is not a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn distance_method(s: &str) -> Outcome<Option<DistanceMethod>> {
    if s == "off" {
        return Ok(None);
    }
    s.parse().map(Some).or_else(|_| usage(format!("unknown distance method {s:?}")))
}

fn run(cli: &Cli) -> Outcome<()> {
    budget()?;
    let text = match &cli.command {
        Command::Cosets { n, base_q } => cosets(*n, *base_q, cli.json)?,
        Command::Factor { n, q } => factor(*n, *q, cli.json)?,
        Command::Construct { family, distance } => {
            let method = distance_method(distance)?;
            let mut r = build_family(family)?;
            if let Some(method) = method {
                r = r.with_distance(method, budget()?)?;
            }
            construct_output(&r, cli.json)
        }
        Command::Enumerate { n, q, list } => enumerate(*n, *q, *list, cli.json)?,
        Command::Survey { family, q, m, e, delta_range, distance } => {
            survey(*family, *q, *m, *e, delta_range, distance_method(distance)?)?
        }
        Command::Code { action: CodeCommand::Describe { code, distance } } => {
            describe(code, distance_method(distance)?, cli.json)?
        }
        Command::Odsm { action } => odsm(action, cli.json)?,
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(Failure::Io),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable") + "\n"
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn cosets(n: usize, base: u64, json: bool) -> Outcome<String> {
    let table = CosetTable::new(n, base)?;
    let r = CosetsReport {
        n,
        base,
        m: table.m(),
        cosets: table.cosets().map(|(leader, members)| CosetEntry { leader, members: members.to_vec() }).collect(),
    };
    if json {
        return Ok(json_line(&r));
    }
    let mut s = format!("n = {n}, base = {base}, m = {}, {} cosets\n", r.m, r.cosets.len());
    for c in &r.cosets {
        let _ = writeln!(s, "C_{}: {{{}}}", c.leader, join(&c.members));
    }
    Ok(s)
}

fn context(n: usize, q: u64) -> Outcome<Arc<BigFieldContext>> {
    Ok(BigFieldContext::for_q(q, n)?)
}

fn factor(n: usize, q: u64, json: bool) -> Outcome<String> {
    let ctx = context(n, q)?;
    let split = factor_split(&ctx)?;
    let entry = |f: &Factor| FactorEntry { leader: f.leader, coeffs: f.poly.coeffs().to_vec() };
    let r = FactorReport {
        field: FieldHeader::of(ctx.small()),
        n,
        q,
        u: split.u(),
        v: split.v(),
        self_conjugate: split.self_conjugate.iter().map(entry).collect(),
        paired: split.paired.iter().map(|(a, b)| [entry(a), entry(b)]).collect(),
    };
    if json {
        return Ok(json_line(&r));
    }
    let mut s = format!("x^{n} - 1 over GF({}): u = {}, v = {}\n", q * q, r.u, r.v);
    for f in &r.self_conjugate {
        let _ = writeln!(s, "self-conjugate  m_{}: [{}]", f.leader, join(&f.coeffs));
    }
    for [a, b] in &r.paired {
        let _ = writeln!(s, "pair  m_{}: [{}]  m_{}: [{}]", a.leader, join(&a.coeffs), b.leader, join(&b.coeffs));
    }
    Ok(s)
}

fn build_family(a: &FamilyArgs) -> Outcome<ConstructionReport> {
    let Some(family) = a.family else {
        return usage("--family is required");
    };
    Ok(match family {
        Family::Hop => {
            let Some(t) = a.t else { return usage("--family hop needs --t") };
            if a.delta.is_some_and(|d| d != 4) {
                return usage("--family hop has designed distance 4");
            }
            construct_hop(t)?
        }
        Family::PrimitiveG1 => {
            let (Some(q), Some(m), Some(delta)) = (a.q, a.m, a.delta) else {
                return usage("--family g1 needs --q, --m and --delta");
            };
            construct_g1(q, m, delta, a.e.unwrap_or(1))?
        }
        Family::QuaternaryG2 => {
            let (Some(m), Some(delta)) = (a.m, a.delta) else {
                return usage("--family g2 needs --m and --delta");
            };
            construct_g2(m, delta)?
        }
    })
}

fn construct_output(r: &ConstructionReport, json: bool) -> String {
    let out = ConstructReport {
        field: FieldHeader::of(r.code.field()),
        params: r.params.clone(),
        n: r.n(),
        k: r.k_actual,
        d: r.d_exact,
        k_formula: r.k_formula,
        d_bound_formula: r.d_bound_formula,
        bch_bound: r.d_bound_actual,
        hermitian_lcd: r.hlcd,
        generator: r.code.generator().coeffs().to_vec(),
        defining_set: r.code.defining_set().to_vec(),
        distance: r.distance.clone(),
    };
    if json {
        return json_line(&out);
    }
    let d = out.d.map_or("?".to_string(), |d| d.to_string());
    let kf = out.k_formula.map_or("-".to_string(), |k| k.to_string());
    let mut s = format!("[{}, {}, {}] over GF({})\n", out.n, out.k, d, r.code.field().size());
    let _ = writeln!(s, "k_formula = {kf}, BCH bound = {} (formula {})", out.bch_bound, out.d_bound_formula);
    let _ = writeln!(s, "Hermitian LCD: {}", out.hermitian_lcd);
    let _ = writeln!(s, "generator: [{}]", join(&out.generator));
    s
}

fn enumerate(n: usize, q: u64, list: bool, json: bool) -> Outcome<String> {
    let ctx = context(n, q)?;
    let codes = enumerate_hlcd(ctx.clone())?;
    let (u, v, count) = (codes.split().u(), codes.split().v(), codes.total());
    let listed = if list {
        let all: hermlcd::Result<Vec<CyclicCode>> = codes.collect();
        Some(all?.iter().map(CodeSummary::of).collect::<Vec<_>>())
    } else {
        None
    };
    let r = EnumerateReport { field: FieldHeader::of(ctx.small()), n, q, u, v, count, codes: listed };
    if json {
        return Ok(json_line(&r));
    }
    let mut s = format!("n = {n}, Q = {}: u = {u}, v = {v}, {count} Hermitian LCD cyclic codes\n", q * q);
    for c in r.codes.iter().flatten() {
        let _ = writeln!(s, "k = {}: [{}]", c.k, join(&c.generator));
    }
    Ok(s)
}

fn parse_range(s: &str) -> Outcome<(usize, usize)> {
    let parsed = s.split_once(':').and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)));
    match parsed {
        Some((a, b)) if a <= b => Ok((a, b)),
        _ => usage(format!("--delta-range must be `a:b` with a <= b, got {s:?}")),
    }
}

fn survey(
    family: Family,
    q: Option<u64>,
    m: Option<u32>,
    e: Option<u64>,
    range: &str,
    method: Option<DistanceMethod>,
) -> Outcome<String> {
    if family == Family::Hop {
        return usage("survey covers g1 and g2; hop has a single designed distance");
    }
    let (lo, hi) = parse_range(range)?;
    let budget = budget()?;
    let opt = |x: Option<String>| x.unwrap_or_default();
    let mut s = String::from("n,q,delta,k_formula,k_actual,bch_bound,d_exact,hlcd\n");
    for delta in lo..=hi {
        let args = FamilyArgs { family: Some(family), t: None, m, delta: Some(delta), e, q };
        let r = match build_family(&args) {
            Ok(r) => r,
            // Designed distances outside the family's range are skipped.
            Err(Failure::Domain(hermlcd::Error::OutOfRange(_))) => continue,
            Err(f) => return Err(f),
        };
        let r = match method {
            Some(method) if !r.degenerate() => r.with_distance(method, budget)?,
            _ => r,
        };
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            r.n(),
            r.params.q,
            delta,
            opt(r.k_formula.map(|k| k.to_string())),
            r.k_actual,
            r.d_bound_actual,
            opt(r.d_exact.map(|d| d.to_string())),
            r.hlcd
        );
    }
    Ok(s)
}

fn resolve_code(a: &CodeArgs) -> Outcome<CyclicCode> {
    let sources = [a.family.family.is_some(), a.coeffs.is_some(), a.generator.is_some(), a.defining_set.is_some()];
    match sources.iter().filter(|&&b| b).count() {
        0 => return usage("select a code with --family, --coeffs, --generator or --defining-set"),
        1 => {}
        _ => return usage("--family, --coeffs, --generator and --defining-set are mutually exclusive"),
    }
    if a.family.family.is_some() {
        return Ok(build_family(&a.family)?.code);
    }
    let (Some(n), Some(q)) = (a.n, a.family.q) else {
        return usage("--n and --q are required unless --family is given");
    };
    let ctx = context(n, q)?;
    if let Some(set) = &a.defining_set {
        let set = ctx.table().union_of(set.iter().copied());
        return Ok(CyclicCode::from_defining_set(ctx, &set)?);
    }
    let coeffs = match (&a.coeffs, &a.generator) {
        (Some(c), _) => c.clone(),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(Failure::Io)?;
            let m = Matrix::from_text(&text)?;
            if m.rows() != 1 {
                return Err(hermlcd::Error::Parse(format!("generator file has {} rows, expected 1", m.rows())).into());
            }
            if m.field().size() != ctx.small().size() {
                return Err(hermlcd::Error::FieldMismatch.into());
            }
            m.row(0).to_vec()
        }
        (None, None) => unreachable!("source count checked above"),
    };
    let field = ctx.small().clone();
    if let Some(&bad) = coeffs.iter().find(|&&c| !field.contains(c)) {
        return Err(hermlcd::Error::OutOfRange(format!("coefficient {bad} outside GF({})", field.size())).into());
    }
    Ok(CyclicCode::from_generator(ctx, Poly::new(field, coeffs))?)
}

fn distance_of(code: &CyclicCode, method: Option<DistanceMethod>) -> Outcome<Option<DistanceReport>> {
    match method {
        Some(m) if !code.is_degenerate() => Ok(Some(code.min_distance(m, budget()?)?)),
        _ => Ok(None),
    }
}

fn describe(a: &CodeArgs, method: Option<DistanceMethod>, json: bool) -> Outcome<String> {
    let code = resolve_code(a)?;
    let field = code.field();
    let r = DescribeReport {
        field: FieldHeader::of(field),
        n: code.n(),
        k: code.k(),
        q: field.sqrt_size().expect("even extension degree"),
        generator: code.generator().coeffs().to_vec(),
        defining_set: code.defining_set().to_vec(),
        hermitian_lcd: code.is_hermitian_lcd()?,
        bch_bound: code.bch_lower_bound(),
        distance: distance_of(&code, method)?,
    };
    if json {
        return Ok(json_line(&r));
    }
    let d = r.distance.as_ref().and_then(|d| d.exact).map_or("?".to_string(), |d| d.to_string());
    let mut s = format!("[{}, {}, {}] over GF({})\n", r.n, r.k, d, field.size());
    let _ = writeln!(s, "Hermitian LCD: {}, BCH bound: {}", r.hermitian_lcd, r.bch_bound);
    let _ = writeln!(s, "generator: [{}]", join(&r.generator));
    let _ = writeln!(s, "defining set: {{{}}}", join(&r.defining_set));
    Ok(s)
}

fn odsm(action: &OdsmCommand, json: bool) -> Outcome<String> {
    let code_args = match action {
        OdsmCommand::Setup { code }
        | OdsmCommand::Mask { code, .. }
        | OdsmCommand::Check { code, .. }
        | OdsmCommand::Sweep { code, .. } => code,
    };
    let inst = OdsmInstance::setup(resolve_code(code_args)?)?;
    let field = FieldHeader::of(inst.code().field());
    match action {
        OdsmCommand::Setup { .. } => {
            if !json {
                return Ok(format!("G\n{}H\n{}", inst.g().to_text(), inst.h().to_text()));
            }
            let r = SetupReport {
                field,
                n: inst.n(),
                k: inst.k(),
                generator: inst.code().generator().coeffs().to_vec(),
                g: inst.g().to_rows(),
                h: inst.h().to_rows(),
            };
            Ok(json_line(&r))
        }
        OdsmCommand::Mask { x, y, seed, .. } => {
            let y = match (y, seed) {
                (Some(y), _) => y.clone(),
                (None, Some(seed)) => inst.random_mask(*seed),
                (None, None) => return usage("odsm mask needs --y or --seed"),
            };
            let z = inst.mask(x, &y)?;
            let r = MaskReport { field, x: x.clone(), y, z };
            if json {
                return Ok(json_line(&r));
            }
            Ok(format!("x = {}\ny = {}\nz = {}\n", join(&r.x), join(&r.y), join(&r.z)))
        }
        OdsmCommand::Check { z, epsilon, y, .. } => {
            let c = inst.inject_and_check(z, epsilon, y)?;
            let r = CheckReport { field, detected: c.detected, recovered_y: c.recovered_y };
            if json {
                return Ok(json_line(&r));
            }
            let verdict = if r.detected { "detected" } else { "undetected" };
            Ok(format!("{verdict}; recovered y = {}\n", join(&r.recovered_y)))
        }
        OdsmCommand::Sweep { min_weight, max_weight, samples, seed, .. } => {
            if *min_weight == 0 || min_weight > max_weight {
                return usage("need 1 <= --min-weight <= --max-weight");
            }
            let budget = budget()?;
            let dist = inst.code().min_distance(DistanceMethod::Auto, budget)?;
            let d = dist.exact.unwrap_or(dist.lower);
            let sweep = inst.detection_sweep(*min_weight..=*max_weight, d, budget, *samples, *seed)?;
            let r = SweepOutput {
                field,
                n: inst.n(),
                k: inst.k(),
                d,
                d_exact: dist.exact.is_some(),
                sampled: sweep.sampled,
                seed: *seed,
                rows: sweep.rows,
            };
            if json {
                return Ok(json_line(&r));
            }
            let mut s = format!("[{}, {}] d {} {}\n", r.n, r.k, if r.d_exact { "=" } else { ">=" }, r.d);
            s.push_str("weight,total,detected,undetected,mode\n");
            for row in &r.rows {
                let mode = if row.exhaustive { "exhaustive" } else { "sampled" };
                let _ = writeln!(s, "{},{},{},{},{mode}", row.weight, row.total, row.detected, row.undetected);
            }
            Ok(s)
        }
    }
}
