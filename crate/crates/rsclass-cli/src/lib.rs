//! Command-line front end: argument parsing, subcommand dispatch and report emission.
//!
//! Exit codes: 0 success, 1 a verification failed or the computation errored,
//! 2 usage error.

pub mod grammar;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rsclass::actions::{
    aut_classes, enumerate_skes, full_automorphism_group, hurwitz_orbits, isomorphism_classes, tuple_names,
};
use rsclass::classify::{
    classify_locus, lambda_bound, render_checks_csv, render_large_csv, render_large_text, render_text,
    verify_large_orders,
};
use rsclass::group::{automorphism_group, catalogue, Group};
use rsclass::jacobian::{character_table, group_algebra_decomposition};
use rsclass::signatures::{admissible_signatures, extension_candidates, teichmuller_dimension, Signature};
use rsclass::util::is_prime;
use rsclass::Error;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "rsclass",
    version,
    about = "Classify finite group actions on Riemann surfaces of genus 2(p-1)",
    after_help = grammar::GROUP_GRAMMAR
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// the prime p >= 5; may instead come from a group descriptor suffix @p=P
    #[arg(long, global = true)]
    prime: Option<u32>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// write the report to FILE instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// worker threads; defaults to the available parallelism
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Admissible signatures of order 4*lambda*p in genus 2(p-1)
    Signatures {
        /// lambda or A..B (default 1)
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Groups of order 4*lambda*p
    Groups {
        #[arg(long)]
        lambda: Option<String>,
        /// restrict to candidates for this signature (required beyond lambda = 3)
        #[arg(long)]
        signature: Option<String>,
    },
    /// Surface-kernel epimorphisms of a group with a signature
    Skes {
        #[arg(long)]
        group: String,
        #[arg(long)]
        signature: String,
        /// print only the number of skes
        #[arg(long)]
        count: bool,
    },
    /// Equivalence classes of actions, with full automorphism groups
    Classes {
        #[arg(long)]
        group: String,
        #[arg(long)]
        signature: String,
    },
    /// Full classification of the locus for one prime
    Classify,
    /// Isotypic decomposition of the Jacobian for each class, or for one ske
    Jacobian {
        #[arg(long)]
        group: String,
        #[arg(long)]
        signature: String,
        /// comma-separated element words, e.g. "t*x,t*y,x*y*t^3"
        #[arg(long)]
        ske: Option<String>,
    },
    /// Non-existence sweep over orders 4*lambda*p
    VerifyBounds {
        /// A..B (default 2..the Hurwitz bound)
        #[arg(long)]
        lambda: Option<String>,
    },
}

/// Everything that can end a run, mapped to an exit code.
enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Descriptor(_) | Error::Signature(_) | Error::CatalogueShape { .. } => Failure::Usage(e.to_string()),
            other => Failure::Compute(other.to_string()),
        }
    }
}

/// A rendered report and whether every verification in it passed.
struct Output {
    body: String,
    pass: bool,
}

impl Output {
    fn ok(body: String) -> Output {
        Output { body, pass: true }
    }
}

/// Parses `argv` (program name first), runs the subcommand and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let result = match cli.common.jobs {
        Some(0) => Err(Failure::Usage("--jobs must be positive".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Failure::Compute(e.to_string())),
        },
        None => dispatch(&cli),
    };
    match result {
        Ok(output) => {
            let written = match &cli.common.out {
                Some(path) => std::fs::write(path, &output.body).map_err(|e| format!("{}: {e}", path.display())),
                None => out.write_all(output.body.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return 1;
            }
            if output.pass {
                0
            } else {
                let _ = writeln!(err, "verification failed");
                1
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}\n\n{}", grammar::GROUP_GRAMMAR);
            let _ = writeln!(err, "signatures: h;m1,m2,... with tokens p, 2p, 4p, ... (e.g. 0;2,2,p,2p)");
            2
        }
        Err(Failure::Compute(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn prime_of(common: &Common, group: Option<&str>) -> Result<(u32, Option<String>), Failure> {
    let (body, from_group) = match group {
        Some(g) => {
            let (b, p) = grammar::split_prime(g)?;
            (Some(b.to_string()), p)
        }
        None => (None, None),
    };
    let p = match (common.prime, from_group) {
        (Some(a), Some(b)) if a != b => {
            return Err(Failure::Usage(format!("--prime {a} conflicts with @p={b}")));
        }
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => return Err(Failure::Usage("--prime is required".into())),
    };
    if p < 5 || !is_prime(p as u64) {
        return Err(Failure::Usage(format!("--prime must be a prime at least 5, got {p}")));
    }
    Ok((p, body))
}

fn parse_lambda(text: Option<&str>, default: RangeInclusive<usize>) -> Result<RangeInclusive<usize>, Failure> {
    let Some(text) = text else { return Ok(default) };
    let bad = || Failure::Usage(format!("--lambda expects N or A..B, got {text:?}"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let range = match text.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.trim_start_matches('='))?,
        None => {
            let n = num(text)?;
            n..=n
        }
    };
    if range.is_empty() || *range.start() == 0 {
        return Err(bad());
    }
    Ok(range)
}

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialise");
    s.push('\n');
    s
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    let fmt = cli.common.format;
    match &cli.command {
        Command::Signatures { lambda } => {
            let (p, _) = prime_of(&cli.common, None)?;
            signatures(p, parse_lambda(lambda.as_deref(), 1..=1)?, fmt)
        }
        Command::Groups { lambda, signature } => {
            let (p, _) = prime_of(&cli.common, None)?;
            let s = signature.as_deref().map(|s| Signature::parse(s, Some(p))).transpose()?;
            groups(p, parse_lambda(lambda.as_deref(), 1..=1)?, s.as_ref(), fmt)
        }
        Command::Skes { group, signature, count } => {
            let (p, body) = prime_of(&cli.common, Some(group))?;
            let g = grammar::parse_group(&body.unwrap_or_default(), p)?;
            let s = Signature::parse(signature, Some(p))?;
            skes(&g, &s, *count, fmt)
        }
        Command::Classes { group, signature } => {
            let (p, body) = prime_of(&cli.common, Some(group))?;
            let g = grammar::parse_group(&body.unwrap_or_default(), p)?;
            let s = Signature::parse(signature, Some(p))?;
            classes(&g, &s, fmt)
        }
        Command::Classify => {
            let (p, _) = prime_of(&cli.common, None)?;
            let r = classify_locus(p)?;
            let body = match fmt {
                Format::Text => render_text(&r),
                Format::Json => pretty(&r.to_json()),
                Format::Csv => render_checks_csv(&r),
            };
            Ok(Output { body, pass: r.passed() })
        }
        Command::Jacobian { group, signature, ske } => {
            let (p, body) = prime_of(&cli.common, Some(group))?;
            let g = grammar::parse_group(&body.unwrap_or_default(), p)?;
            let s = Signature::parse(signature, Some(p))?;
            jacobian(&g, &s, ske.as_deref(), fmt)
        }
        Command::VerifyBounds { lambda } => {
            let (p, _) = prime_of(&cli.common, None)?;
            let range = parse_lambda(lambda.as_deref(), 2..=lambda_bound(p))?;
            if *range.start() < 2 || *range.end() > lambda_bound(p) {
                return Err(Failure::Usage(format!("--lambda must lie in 2..{} for p = {p}", lambda_bound(p))));
            }
            let r = verify_large_orders(p, range)?;
            let pass = r.rows.iter().filter(|row| row.lambda >= 4).all(|row| row.verdict.is_excluded());
            let body = match fmt {
                Format::Text => {
                    let mut t = render_large_text(&r);
                    let _ = writeln!(t, "{} no surfaces with 4*lambda*p automorphisms for lambda >= 4", if pass { "PASS" } else { "FAIL" });
                    t
                }
                Format::Json => pretty(&serde_json::to_value(&r).expect("report serialises")),
                Format::Csv => render_large_csv(&r),
            };
            Ok(Output { body, pass })
        }
    }
}

fn signatures(p: u32, lambdas: RangeInclusive<usize>, fmt: Format) -> Result<Output, Failure> {
    let genus = 2 * (p as u64 - 1);
    let mut rows = Vec::new();
    for lambda in lambdas {
        let order = 4 * lambda * p as usize;
        for s in admissible_signatures(order as u64, genus) {
            let ext: Vec<String> =
                extension_candidates(&s).iter().map(|e| format!("{} (index {})", e.outer, e.index)).collect();
            rows.push((lambda, order, s.clone(), teichmuller_dimension(&s), ext));
        }
    }
    let body = match fmt {
        Format::Text => {
            let mut t = format!("admissible signatures, p = {p}, genus {genus}\n");
            let _ = writeln!(t, "{:>6} {:>6}  {:<20} {:>4}  extends to", "lambda", "order", "signature", "dim");
            for (l, o, s, d, e) in &rows {
                let e = if e.is_empty() { "-".to_string() } else { e.join("; ") };
                let _ = writeln!(t, "{l:>6} {o:>6}  {:<20} {d:>4}  {e}", s.to_string());
            }
            t
        }
        Format::Csv => {
            let mut t = String::from("lambda,order,signature,teichmuller_dimension,extends_to\n");
            for (l, o, s, d, e) in &rows {
                let _ = writeln!(t, "{l},{o},{},{d},{}", csv_quote(&s.to_string()), csv_quote(&e.join("; ")));
            }
            t
        }
        Format::Json => pretty(&json!({
            "prime": p,
            "genus": genus,
            "signatures": rows.iter().map(|(l, o, s, d, e)| json!({
                "lambda": l, "order": o, "signature": s.to_string(), "teichmuller_dimension": d, "extends_to": e,
            })).collect::<Vec<_>>(),
        })),
    };
    Ok(Output::ok(body))
}

fn group_row(g: &Group) -> Value {
    json!({
        "group": g.tag().to_string(),
        "order": g.order(),
        "abelian": g.is_abelian(),
        "exponent": g.exponent(),
        "classes": g.conjugacy_classes().len(),
        "generators": g.generator_names(),
    })
}

fn groups(p: u32, lambdas: RangeInclusive<usize>, s: Option<&Signature>, fmt: Format) -> Result<Output, Failure> {
    let mut rows = Vec::new();
    let mut notes = Vec::new();
    for lambda in lambdas {
        let order = 4 * lambda * p as usize;
        let (gs, complete) = match s {
            Some(s) => {
                let c = rsclass::actions::candidate_groups(order, p, s)?;
                notes.extend(c.notes.iter().map(|n| format!("order {order}: {n}")));
                (c.groups, c.complete)
            }
            None if lambda <= 3 => {
                let c = catalogue(order, p)?;
                (c.groups, c.complete)
            }
            None => return Err(Failure::Usage(format!("orders beyond 12p need --signature (lambda = {lambda})"))),
        };
        for g in &gs {
            let mut row = group_row(g);
            row["lambda"] = json!(lambda);
            row["complete_list"] = json!(complete);
            rows.push(row);
        }
    }
    let body = match fmt {
        Format::Json => pretty(&json!({ "prime": p, "groups": rows, "notes": notes })),
        Format::Csv => {
            let mut t = String::from("lambda,order,group,abelian,exponent,classes,complete_list\n");
            for r in &rows {
                let _ = writeln!(
                    t,
                    "{},{},{},{},{},{},{}",
                    r["lambda"], r["order"], csv_quote(r["group"].as_str().unwrap_or("")), r["abelian"], r["exponent"], r["classes"], r["complete_list"]
                );
            }
            t
        }
        Format::Text => {
            let mut t = String::new();
            let _ = writeln!(t, "{:>6} {:>6}  {:<32} {:>8} {:>8} {:>7}", "lambda", "order", "group", "abelian", "exponent", "classes");
            for r in &rows {
                let cells: Vec<String> = ["lambda", "order", "group", "abelian", "exponent", "classes"]
                    .iter()
                    .map(|k| r[*k].as_str().map(str::to_string).unwrap_or_else(|| r[*k].to_string()))
                    .collect();
                let _ = writeln!(
                    t,
                    "{:>6} {:>6}  {:<32} {:>8} {:>8} {:>7}",
                    cells[0], cells[1], cells[2], cells[3], cells[4], cells[5]
                );
            }
            for n in &notes {
                let _ = writeln!(t, "note: {n}");
            }
            t
        }
    };
    Ok(Output::ok(body))
}

fn skes(g: &Group, s: &Signature, count: bool, fmt: Format) -> Result<Output, Failure> {
    let all = enumerate_skes(g, s)?;
    let body = match (count, fmt) {
        (true, Format::Json) => pretty(&json!({ "group": g.tag().to_string(), "signature": s.to_string(), "count": all.len() })),
        (true, Format::Csv) => format!("count\n{}\n", all.len()),
        (true, Format::Text) => format!("{}\n", all.len()),
        (false, Format::Json) => pretty(&json!({
            "group": g.tag().to_string(),
            "signature": s.to_string(),
            "skes": all.iter().map(|t| tuple_names(g, t)).collect::<Vec<_>>(),
        })),
        (false, _) => {
            let sep = if fmt == Format::Csv { "," } else { " " };
            let mut t = String::new();
            if fmt == Format::Csv {
                let head: Vec<String> = (1..=s.periods.len()).map(|i| format!("c{i}")).collect();
                let _ = writeln!(t, "{}", head.join(","));
            }
            for ske in &all {
                let names: Vec<String> = tuple_names(g, ske).iter().map(|n| csv_quote(n)).collect();
                let _ = writeln!(t, "{}", names.join(sep));
            }
            t
        }
    };
    Ok(Output::ok(body))
}

fn classes(g: &Group, s: &Signature, fmt: Format) -> Result<Output, Failure> {
    let auts = automorphism_group(g);
    let all = enumerate_skes(g, s)?;
    let by_aut = aut_classes(&all, &auts);
    let topo = hurwitz_orbits(g, s, &all, &auts)?;
    let iso = isomorphism_classes(g, s, &topo, &auts)?;
    let mut rows = Vec::new();
    for c in &iso {
        let fa = full_automorphism_group(g, s, &c.representative, &auts)?;
        rows.push(json!({
            "representative": tuple_names(g, &c.representative),
            "orbit_size": c.orbit_size,
            "full_aut": { "group": fa.group.tag().to_string(), "order": fa.group.order(),
                          "signature": fa.signature.to_string(), "ske": tuple_names(&fa.group, &fa.ske) },
            "extension_chain": fa.chain,
            "complete": fa.complete,
        }));
    }
    let body = match fmt {
        Format::Json => pretty(&json!({
            "group": g.tag().to_string(),
            "signature": s.to_string(),
            "skes": all.len(),
            "aut_classes": by_aut.len(),
            "topological_classes": topo.len(),
            "isomorphism_classes": rows,
        })),
        Format::Csv => {
            let mut t = String::from("representative,orbit_size,full_group,full_order,full_signature,complete\n");
            for r in &rows {
                let rep: Vec<&str> = r["representative"].as_array().unwrap().iter().filter_map(|v| v.as_str()).collect();
                let _ = writeln!(
                    t,
                    "{},{},{},{},{},{}",
                    csv_quote(&rep.join(" ")),
                    r["orbit_size"],
                    csv_quote(r["full_aut"]["group"].as_str().unwrap_or("")),
                    r["full_aut"]["order"],
                    csv_quote(r["full_aut"]["signature"].as_str().unwrap_or("")),
                    r["complete"]
                );
            }
            t
        }
        Format::Text => {
            let mut t = format!("{} with signature {}\n", g.tag(), s);
            let _ = writeln!(t, "  skes                  {}", all.len());
            let _ = writeln!(t, "  Aut(G) classes        {}", by_aut.len());
            let _ = writeln!(t, "  topological classes   {}", topo.len());
            let _ = writeln!(t, "  isomorphism classes   {}", iso.len());
            for r in &rows {
                let rep: Vec<&str> = r["representative"].as_array().unwrap().iter().filter_map(|v| v.as_str()).collect();
                let ske: Vec<&str> = r["full_aut"]["ske"].as_array().unwrap().iter().filter_map(|v| v.as_str()).collect();
                let _ = writeln!(
                    t,
                    "  [{}] ({} skes) -> {} {} [{}]{}",
                    rep.join(", "),
                    r["orbit_size"],
                    r["full_aut"]["group"].as_str().unwrap_or(""),
                    r["full_aut"]["signature"].as_str().unwrap_or(""),
                    ske.join(", "),
                    if r["complete"].as_bool() == Some(false) { " (supergroup list not provably complete)" } else { "" }
                );
            }
            t
        }
    };
    Ok(Output::ok(body))
}

fn jacobian(g: &Group, s: &Signature, ske: Option<&str>, fmt: Format) -> Result<Output, Failure> {
    let table = character_table(g)?;
    let skes = match ske {
        Some(text) => {
            let words: Vec<&str> = text.split(',').map(str::trim).collect();
            let t = rsclass::actions::parse_tuple(g, &words).map_err(|e| Failure::Usage(e.to_string()))?;
            rsclass::actions::check_ske(g, s, &t).map_err(|e| Failure::Usage(e.to_string()))?;
            vec![t]
        }
        None => {
            let auts = automorphism_group(g);
            let all = enumerate_skes(g, s)?;
            hurwitz_orbits(g, s, &all, &auts)?.into_iter().map(|c| c.representative).collect()
        }
    };
    let mut reports = Vec::new();
    for t in &skes {
        reports.push(group_algebra_decomposition(g, &table, s, t, &[], &[])?);
    }
    let body = match fmt {
        Format::Json => pretty(&json!({
            "group": g.tag().to_string(),
            "signature": s.to_string(),
            "decompositions": serde_json::to_value(&reports).expect("reports serialise"),
        })),
        Format::Csv => {
            let mut t = String::from("ske,irrep,degree,field_degree,n,dim\n");
            for r in &reports {
                for f in &r.factors {
                    let _ = writeln!(
                        t,
                        "{},{},{},{},{},{}",
                        csv_quote(&r.ske.join(" ")),
                        f.irrep_id,
                        f.irrep.degree,
                        f.irrep.field_degree,
                        f.n,
                        f.dim
                    );
                }
            }
            t
        }
        Format::Text => {
            let mut t = format!("{} with signature {}\n", g.tag(), s);
            for r in &reports {
                let _ = writeln!(t, "ske [{}]: total dimension {}", r.ske.join(", "), r.total_dimension());
                for f in r.factors.iter().filter(|f| f.dim > 0) {
                    let _ = writeln!(
                        t,
                        "  irrep {:>3}: degree {} over a field of degree {}, B^{} with dim B = {}",
                        f.irrep_id, f.irrep.degree, f.irrep.field_degree, f.n, f.dim
                    );
                }
                let quotients: Vec<String> = r.quotients.iter().map(|q| format!("{} {}", q.subgroup, q.genus)).collect();
                let _ = writeln!(t, "  quotient genera: {}", quotients.join(", "));
            }
            t
        }
    };
    Ok(Output::ok(body))
}
