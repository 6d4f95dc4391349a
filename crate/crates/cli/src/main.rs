//! Command line front end: parses expressions, dispatches to the decision
//! kernel, and prints certificate-bearing text or JSON documents.
//!
//! Exit codes: 0 answered, 2 syntax or arity problems, 3 precondition
//! failures, 4 exhausted search or depth budgets, 5 internal invariant
//! violations.

use clap::{Parser, Subcommand, ValueEnum};
use locb_core::arcs::{self, ArcLimit, ScanBudget};
use locb_core::construct;
use locb_core::geometry::{
    self, InclusionOutcome, InvertOutcome, LojaOutcome, NullstellensatzOutcome, RadicalOutcome,
};
use locb_core::mpoly::MPoly;
use locb_core::parse::Session;
use locb_core::rat::{rat, rat_int};
use locb_core::ratfunc::RationalFunction;
use locb_core::report;
use locb_core::resolve::{self, GlobalDecision, LocalDecision, ResolutionTree, ResolveOptions};
use locb_core::Error;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

#[derive(Parser, Debug, Clone)]
#[command(
    name = "locb",
    version,
    about = "Exact decisions about locally bounded rational functions on the plane, with certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// Output format for single queries; batch mode always prints JSON lines
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Evaluation point, e.g. "(0, 0)" or "(root(x^2-2, 1, 2), 1/2)"
    #[arg(long, global = true)]
    at: Option<String>,

    /// Blowup recursion limit
    #[arg(long, global = true, default_value_t = 64)]
    max_depth: u32,

    /// Exponent search limit for loja and radical
    #[arg(long, global = true, default_value_t = 16)]
    n_max: u32,

    /// Arc-scan budget: largest exponent numerator (denominators up to 2)
    #[arg(long, global = true, default_value_t = 3)]
    scan_exp: u32,

    /// Arc-scan budget: largest integer coefficient magnitude
    #[arg(long, global = true, default_value_t = 2)]
    scan_coeffs: u32,

    /// Accepted for reproducibility; the built-in scan family is deterministic
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// File of queries, one per line in shell-like quoting; results are JSON
    /// lines in input order
    #[arg(long, global = true)]
    batch: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Decide local boundedness globally, or at --at
    Bounded { function: String },
    /// List the indeterminacy points
    Indet { function: String },
    /// Exact value set at --at
    Valueset { function: String },
    /// Zero set as curve part, isolated points and excluded points
    Zeroset { function: String },
    /// Zero-set membership of --at
    Contains { function: String },
    /// Zero-set inclusion: is Z(g) contained in Z(f)?
    Included { g: String, f: String },
    /// Least n with f^n/g locally bounded
    Loja { f: String, g: String },
    /// Membership of f in the radical of the ideal of the generators
    Radical {
        f: String,
        #[arg(required = true)]
        generators: Vec<String>,
    },
    /// Common zero of the generators, or a partition of unity
    WeakNss {
        #[arg(required = true)]
        generators: Vec<String>,
    },
    /// Ring invertibility (empty zero set)
    Invertible { function: String },
    /// Continuity at --at: the value set collapses to one value
    Regulous { function: String },
    /// Order and limit of the function along an arc
    ArcEval { function: String, arc: String },
    /// Polynomial encoding of the set where every generator is nonnegative
    Encode {
        #[arg(required = true)]
        generators: Vec<String>,
    },
    /// Built-in example functions
    Gallery,
}

struct Opts {
    resolve: ResolveOptions,
    n_max: u32,
    budget: ScanBudget,
}

fn build_opts(cli: &Cli) -> Opts {
    let mut budget = ScanBudget::with_caps(cli.scan_exp.max(1), 2);
    let mut coefficients = vec![rat_int(0)];
    for k in 1..=cli.scan_coeffs.max(1) as i64 {
        coefficients.push(rat_int(k));
        coefficients.push(rat_int(-k));
    }
    coefficients.push(rat(1, 2));
    coefficients.push(rat(-1, 2));
    budget.coefficients = coefficients;
    Opts {
        resolve: ResolveOptions { max_depth: cli.max_depth },
        n_max: cli.n_max,
        budget,
    }
}

struct Doc {
    json: Value,
    text: Vec<String>,
    exit: u8,
}

impl Doc {
    fn ok(json: Value, text: Vec<String>) -> Doc {
        Doc { json, text, exit: 0 }
    }
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. } | Error::ArityMismatch { .. } => 2,
        Error::DepthExceeded { .. } | Error::Exhausted { .. } => 4,
        Error::Internal(_) => 5,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(path) = cli.batch.clone() {
        return run_batch(&path);
    }
    let started = Instant::now();
    match execute(&cli) {
        Ok(doc) => {
            match cli.format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&doc.json).expect("valid json"))
                }
                Format::Text => {
                    for line in &doc.text {
                        println!("{line}");
                    }
                    println!("elapsed: {} ms", started.elapsed().as_millis());
                }
            }
            ExitCode::from(doc.exit)
        }
        Err(e) => {
            let code = exit_for(&e);
            match cli.format {
                Format::Json => println!(
                    "{}",
                    json!({"error": {"code": code, "message": e.to_string()}})
                ),
                Format::Text => eprintln!("error: {e}"),
            }
            ExitCode::from(code)
        }
    }
}

fn run_batch(path: &PathBuf) -> ExitCode {
    let content = match std::fs::read_to_string(path) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return ExitCode::from(3);
        }
    };
    let lines: Vec<(usize, String)> = content
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim().to_string()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    if lines.is_empty() {
        return ExitCode::SUCCESS;
    }
    let slots: Vec<Mutex<Option<(Value, u8)>>> = lines.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(4)
        .min(lines.len());
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= lines.len() {
                    break;
                }
                let out = run_line(&lines[i].1);
                *slots[i].lock().expect("slot lock") = Some(out);
            });
        }
    });
    let mut code = 0u8;
    for (slot, (lineno, _)) in slots.iter().zip(&lines) {
        let (mut v, c) = slot
            .lock()
            .expect("slot lock")
            .take()
            .expect("worker filled the slot");
        if let Some(obj) = v.as_object_mut() {
            obj.insert("line".to_string(), json!(lineno));
        }
        println!("{}", serde_json::to_string(&v).expect("valid json"));
        if code == 0 && c != 0 {
            code = c;
        }
    }
    ExitCode::from(code)
}

fn run_line(line: &str) -> (Value, u8) {
    let words = match split_words(line) {
        Ok(w) => w,
        Err(m) => return (json!({"error": {"code": 2, "message": m}}), 2),
    };
    let mut argv = vec!["locb".to_string()];
    argv.extend(words);
    match Cli::try_parse_from(&argv) {
        Err(e) => (json!({"error": {"code": 2, "message": e.to_string()}}), 2),
        Ok(sub) => {
            if sub.batch.is_some() {
                return (
                    json!({"error": {"code": 2, "message": "nested --batch is not allowed"}}),
                    2,
                );
            }
            match execute(&sub) {
                Ok(d) => (d.json, d.exit),
                Err(e) => {
                    let c = exit_for(&e);
                    (json!({"error": {"code": c, "message": e.to_string()}}), c)
                }
            }
        }
    }
}

fn split_words(line: &str) -> std::result::Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quote: Option<char> = None;
    let mut pending = false;
    for c in line.chars() {
        match quote {
            Some(q) if c == q => quote = None,
            Some(_) => cur.push(c),
            None if c == '"' || c == '\'' => {
                quote = Some(c);
                pending = true;
            }
            None if c.is_whitespace() => {
                if pending || !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                    pending = false;
                }
            }
            None => cur.push(c),
        }
    }
    if quote.is_some() {
        return Err("unterminated quote in batch line".to_string());
    }
    if pending || !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

fn execute(cli: &Cli) -> Result<Doc, Error> {
    let cmd = cli.command.as_ref().ok_or_else(|| Error::Syntax {
        offset: 1,
        message: "missing command (try --help)".to_string(),
    })?;
    let _ = cli.seed;
    let opts = build_opts(cli);
    let mut sess = Session::new();
    match cmd {
        Command::Bounded { function } => cmd_bounded(&mut sess, function, cli, &opts),
        Command::Indet { function } => cmd_indet(&mut sess, function),
        Command::Valueset { function } => cmd_valueset(&mut sess, function, cli, &opts),
        Command::Zeroset { function } => cmd_zeroset(&mut sess, function, &opts),
        Command::Contains { function } => cmd_contains(&mut sess, function, cli, &opts),
        Command::Included { g, f } => cmd_included(&mut sess, g, f, &opts),
        Command::Loja { f, g } => cmd_loja(&mut sess, f, g, &opts),
        Command::Radical { f, generators } => cmd_radical(&mut sess, f, generators, &opts),
        Command::WeakNss { generators } => cmd_weak_nss(&mut sess, generators, &opts),
        Command::Invertible { function } => cmd_invertible(&mut sess, function, &opts),
        Command::Regulous { function } => cmd_regulous(&mut sess, function, cli, &opts),
        Command::ArcEval { function, arc } => cmd_arc_eval(&mut sess, function, arc),
        Command::Encode { generators } => cmd_encode(&mut sess, generators),
        Command::Gallery => cmd_gallery(),
    }
}

fn need_at(cli: &Cli) -> Result<&str, Error> {
    cli.at.as_deref().ok_or_else(|| Error::Syntax {
        offset: 1,
        message: "this command needs --at \"(a, b)\"".to_string(),
    })
}

/// Plane functions default to two variables; more are kept as written.
fn plane_or_natural(sess: &mut Session, text: &str) -> Result<RationalFunction, Error> {
    let f = sess.function(text, None)?;
    if f.nvars() < 2 {
        sess.function(text, Some(2))
    } else {
        Ok(f)
    }
}

fn order_text(l: &ArcLimit) -> String {
    match &l.order {
        None => "identically zero".to_string(),
        Some(o) => locb_core::rat::rat_to_string(o),
    }
}

fn tree_line(t: &ResolutionTree) -> String {
    format!(
        "certificate at {}: depth {}, nodes {}, tower height {}",
        report::point_text(&t.center),
        t.depth(),
        t.node_count(),
        t.max_tower_height()
    )
}

fn witness_doc(command: &str, f: &RationalFunction, arc: &arcs::Arc, limit: &ArcLimit) -> Doc {
    Doc::ok(
        json!({
            "command": command,
            "function": report::fraction_json(f),
            "limit": report::limit_json(limit),
            "verdict": "unbounded",
            "witness": report::arc_json(arc),
        }),
        vec![
            "verdict: unbounded".to_string(),
            format!("witness: {}", arc.display("t")),
            format!("order: {}", order_text(limit)),
            format!("limit: {}", report::limit_text(limit)),
        ],
    )
}

fn cmd_bounded(sess: &mut Session, ftext: &str, cli: &Cli, opts: &Opts) -> Result<Doc, Error> {
    match &cli.at {
        None => {
            let f = plane_or_natural(sess, ftext)?;
            if f.nvars() > 2 {
                return Err(Error::UnsupportedDimension { arity: f.nvars() });
            }
            match resolve::is_locally_bounded(&f, &opts.resolve)? {
                GlobalDecision::Bounded { certificates } => {
                    let indet = f.indeterminacy_points()?;
                    let mut text = vec!["verdict: bounded".to_string()];
                    if indet.is_empty() {
                        text.push("indeterminacy: none".to_string());
                    } else {
                        let pts: Vec<String> =
                            indet.iter().map(|p| report::point_text(p)).collect();
                        text.push(format!("indeterminacy: {}", pts.join(", ")));
                    }
                    for t in &certificates {
                        text.push(tree_line(t));
                    }
                    Ok(Doc::ok(
                        json!({
                            "command": "bounded",
                            "certificates": certificates.iter().map(report::tree_json).collect::<Vec<_>>(),
                            "function": report::fraction_json(&f),
                            "indeterminacy": indet.iter().map(|p| report::point_json(p)).collect::<Vec<_>>(),
                            "verdict": "bounded",
                        }),
                        text,
                    ))
                }
                GlobalDecision::Unbounded { arc, limit } => {
                    Ok(witness_doc("bounded", &f, &arc, &limit))
                }
            }
        }
        Some(at) => {
            let pt = sess.point(at, None)?;
            if pt.len() < 2 {
                return Err(Error::ArityMismatch { expected: 2, found: pt.len() });
            }
            let f = sess.function(ftext, Some(pt.len()))?;
            if pt.len() == 2 {
                match resolve::decide_at(&f, &pt, &opts.resolve)? {
                    LocalDecision::Bounded(tree) => Ok(Doc::ok(
                        json!({
                            "command": "bounded",
                            "at": report::point_json(&pt),
                            "certificate": report::tree_json(&tree),
                            "function": report::fraction_json(&f),
                            "verdict": "bounded",
                        }),
                        vec!["verdict: bounded".to_string(), tree_line(&tree)],
                    )),
                    LocalDecision::Unbounded { arc, limit } => {
                        Ok(witness_doc("bounded", &f, &arc, &limit))
                    }
                }
            } else {
                let limits = arcs::arc_family_scan(&f, &pt, &opts.budget);
                let blowups = limits.iter().filter(|l| l.is_infinite()).count();
                let verdict = if blowups > 0 { "unbounded" } else { "no-refutation" };
                Ok(Doc::ok(
                    json!({
                        "command": "bounded",
                        "at": report::point_json(&pt),
                        "function": report::fraction_json(&f),
                        "mode": "scan",
                        "scanned": limits.len(),
                        "unbounded_arcs": blowups,
                        "verdict": verdict,
                    }),
                    vec![
                        format!("mode: arc scan (semi-decision in arity {})", f.nvars()),
                        format!("scanned: {} arcs, {} unbounded", limits.len(), blowups),
                        format!("verdict: {verdict}"),
                    ],
                ))
            }
        }
    }
}

fn cmd_indet(sess: &mut Session, ftext: &str) -> Result<Doc, Error> {
    let f = plane_or_natural(sess, ftext)?;
    if f.nvars() > 2 {
        return Err(Error::UnsupportedDimension { arity: f.nvars() });
    }
    let pts = f.indeterminacy_points()?;
    let text = if pts.is_empty() {
        vec!["indeterminacy: none".to_string()]
    } else {
        let list: Vec<String> = pts.iter().map(|p| report::point_text(p)).collect();
        vec![format!("indeterminacy: {}", list.join(", "))]
    };
    Ok(Doc::ok(
        json!({
            "command": "indet",
            "function": report::fraction_json(&f),
            "points": pts.iter().map(|p| report::point_json(p)).collect::<Vec<_>>(),
        }),
        text,
    ))
}

fn cmd_valueset(sess: &mut Session, ftext: &str, cli: &Cli, opts: &Opts) -> Result<Doc, Error> {
    let pt = sess.point(need_at(cli)?, Some(2))?;
    let f = sess.function(ftext, Some(2))?;
    let iv = resolve::value_set(&f, &pt, &opts.resolve)?;
    Ok(Doc::ok(
        json!({
            "command": "valueset",
            "at": report::point_json(&pt),
            "function": report::fraction_json(&f),
            "interval": report::interval_json(&iv),
        }),
        vec![format!(
            "value set at {}: {}",
            report::point_text(&pt),
            report::interval_text(&iv)
        )],
    ))
}

fn cmd_zeroset(sess: &mut Session, ftext: &str, opts: &Opts) -> Result<Doc, Error> {
    let f = plane_or_natural(sess, ftext)?;
    if f.nvars() > 2 {
        return Err(Error::UnsupportedDimension { arity: f.nvars() });
    }
    let zs = geometry::zero_set(&f, &opts.resolve)?;
    let mut text = Vec::new();
    if zs.is_whole_plane() {
        text.push("zero set: the whole plane".to_string());
    } else if zs.is_empty() {
        text.push("zero set: empty".to_string());
    } else {
        if zs.has_curve() {
            text.push(format!("curve part: {}", report::poly_text(&zs.curve_part)));
        }
        if !zs.isolated_points.is_empty() {
            let list: Vec<String> =
                zs.isolated_points.iter().map(|p| report::point_text(p)).collect();
            text.push(format!("isolated points: {}", list.join(", ")));
        }
        if !zs.excluded_points.is_empty() {
            let list: Vec<String> =
                zs.excluded_points.iter().map(|p| report::point_text(p)).collect();
            text.push(format!("excluded points: {}", list.join(", ")));
        }
    }
    Ok(Doc::ok(
        json!({
            "command": "zeroset",
            "function": report::fraction_json(&f),
            "zero_set": report::zero_set_json(&zs),
        }),
        text,
    ))
}

fn cmd_contains(sess: &mut Session, ftext: &str, cli: &Cli, opts: &Opts) -> Result<Doc, Error> {
    let pt = sess.point(need_at(cli)?, None)?;
    if pt.len() < 2 {
        return Err(Error::ArityMismatch { expected: 2, found: pt.len() });
    }
    let f = sess.function(ftext, Some(pt.len()))?;
    if pt.len() == 2 {
        let inside = geometry::zero_set_contains(&f, &pt, &opts.resolve)?;
        Ok(Doc::ok(
            json!({
                "command": "contains",
                "at": report::point_json(&pt),
                "contains": inside,
                "function": report::fraction_json(&f),
                "mode": "decision",
            }),
            vec![format!(
                "zero set contains {}: {}",
                report::point_text(&pt),
                inside
            )],
        ))
    } else {
        let limits = arcs::arc_family_scan(&f, &pt, &opts.budget);
        let zero_arcs = limits.iter().filter(|l| l.in_zero_set()).count();
        let inside = zero_arcs > 0;
        let verdict = if inside {
            "contained (arc certificate found)"
        } else {
            "no zero arc within the scan budget"
        };
        Ok(Doc::ok(
            json!({
                "command": "contains",
                "at": report::point_json(&pt),
                "contains": inside,
                "function": report::fraction_json(&f),
                "mode": "scan",
                "scanned": limits.len(),
                "zero_arcs": zero_arcs,
            }),
            vec![
                format!("mode: arc scan (semi-decision in arity {})", f.nvars()),
                format!("scanned: {} arcs, {} tending to zero", limits.len(), zero_arcs),
                format!("verdict: {verdict}"),
            ],
        ))
    }
}

fn cmd_included(sess: &mut Session, gtext: &str, ftext: &str, opts: &Opts) -> Result<Doc, Error> {
    let g = sess.function(gtext, Some(2))?;
    let f = sess.function(ftext, Some(2))?;
    match geometry::zero_set_included(&g, &f, &opts.resolve)? {
        InclusionOutcome::Included => Ok(Doc::ok(
            json!({
                "command": "included",
                "f": report::fraction_json(&f),
                "g": report::fraction_json(&g),
                "included": true,
            }),
            vec!["Z(g) is contained in Z(f)".to_string()],
        )),
        InclusionOutcome::Counterexample { arc, g_limit, f_limit } => Ok(Doc::ok(
            json!({
                "command": "included",
                "counterexample": {
                    "arc": report::arc_json(&arc),
                    "f_limit": report::limit_json(&f_limit),
                    "g_limit": report::limit_json(&g_limit),
                },
                "f": report::fraction_json(&f),
                "g": report::fraction_json(&g),
                "included": false,
            }),
            vec![
                "Z(g) is not contained in Z(f)".to_string(),
                format!("witness: {}", arc.display("t")),
                format!("g along the witness tends to {}", report::limit_text(&g_limit)),
                format!("f along the witness tends to {}", report::limit_text(&f_limit)),
            ],
        )),
    }
}

fn cmd_loja(sess: &mut Session, ftext: &str, gtext: &str, opts: &Opts) -> Result<Doc, Error> {
    let f = sess.function(ftext, Some(2))?;
    let g = sess.function(gtext, Some(2))?;
    match geometry::loja_exponent(&f, &g, opts.n_max, &opts.resolve)? {
        LojaOutcome::Exponent { n, quotient } => Ok(Doc::ok(
            json!({
                "command": "loja",
                "f": report::fraction_json(&f),
                "g": report::fraction_json(&g),
                "n": n,
                "quotient": report::fraction_json(&quotient),
            }),
            vec![
                format!("exponent: {n}"),
                format!("certified quotient: {}", report::fraction_text(&quotient)),
            ],
        )),
        LojaOutcome::PreconditionFailed { arc } => Ok(Doc {
            json: json!({
                "command": "loja",
                "f": report::fraction_json(&f),
                "g": report::fraction_json(&g),
                "verdict": "precondition-failed",
                "witness": report::arc_json(&arc),
            }),
            text: vec![
                "precondition failed: Z(g) is not contained in Z(f)".to_string(),
                format!("witness: {}", arc.display("t")),
            ],
            exit: 3,
        }),
    }
}

fn cmd_radical(
    sess: &mut Session,
    ftext: &str,
    gen_texts: &[String],
    opts: &Opts,
) -> Result<Doc, Error> {
    let f = sess.function(ftext, Some(2))?;
    let gens = parse_all(sess, gen_texts)?;
    match geometry::radical_member(&f, &gens, opts.n_max, &opts.resolve)? {
        RadicalOutcome::Member { n, combined, cofactors } => Ok(Doc::ok(
            json!({
                "command": "radical",
                "cofactors": cofactors.iter().map(report::fraction_json).collect::<Vec<_>>(),
                "combined": report::fraction_json(&combined),
                "f": report::fraction_json(&f),
                "member": true,
                "n": n,
            }),
            vec![
                format!("member with exponent {n}"),
                format!(
                    "cofactors: {}",
                    cofactors
                        .iter()
                        .map(report::fraction_text)
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            ],
        )),
        RadicalOutcome::NotMember { arc } => Ok(Doc::ok(
            json!({
                "command": "radical",
                "f": report::fraction_json(&f),
                "member": false,
                "witness": report::arc_json(&arc),
            }),
            vec![
                "not a member".to_string(),
                format!("witness: {}", arc.display("t")),
            ],
        )),
    }
}

fn cmd_weak_nss(sess: &mut Session, gen_texts: &[String], opts: &Opts) -> Result<Doc, Error> {
    let gens = parse_all(sess, gen_texts)?;
    match geometry::weak_nullstellensatz(&gens, &opts.resolve)? {
        NullstellensatzOutcome::CommonZero { point } => Ok(Doc::ok(
            json!({
                "command": "weak-nss",
                "point": report::point_json(&point),
                "verdict": "common-zero",
            }),
            vec![format!("common zero at {}", report::point_text(&point))],
        )),
        NullstellensatzOutcome::Partition { coefficients } => Ok(Doc::ok(
            json!({
                "command": "weak-nss",
                "coefficients": coefficients.iter().map(report::fraction_json).collect::<Vec<_>>(),
                "verdict": "unit-ideal",
            }),
            vec![
                "unit ideal: no common zero".to_string(),
                format!(
                    "partition of unity coefficients: {}",
                    coefficients
                        .iter()
                        .map(report::fraction_text)
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            ],
        )),
    }
}

fn cmd_invertible(sess: &mut Session, ftext: &str, opts: &Opts) -> Result<Doc, Error> {
    let f = sess.function(ftext, Some(2))?;
    match geometry::is_invertible(&f, &opts.resolve)? {
        InvertOutcome::Invertible { inverse } => Ok(Doc::ok(
            json!({
                "command": "invertible",
                "function": report::fraction_json(&f),
                "inverse": report::fraction_json(&inverse),
                "invertible": true,
            }),
            vec![
                "invertible".to_string(),
                format!("inverse: {}", report::fraction_text(&inverse)),
            ],
        )),
        InvertOutcome::NotInvertible { point } => Ok(Doc::ok(
            json!({
                "command": "invertible",
                "function": report::fraction_json(&f),
                "invertible": false,
                "zero_at": report::point_json(&point),
            }),
            vec![format!(
                "not invertible: zero at {}",
                report::point_text(&point)
            )],
        )),
    }
}

fn cmd_regulous(sess: &mut Session, ftext: &str, cli: &Cli, opts: &Opts) -> Result<Doc, Error> {
    let pt = sess.point(need_at(cli)?, Some(2))?;
    let f = sess.function(ftext, Some(2))?;
    let iv = resolve::value_set(&f, &pt, &opts.resolve)?;
    let single = iv.is_single_value();
    Ok(Doc::ok(
        json!({
            "command": "regulous",
            "at": report::point_json(&pt),
            "function": report::fraction_json(&f),
            "interval": report::interval_json(&iv),
            "regulous": single,
        }),
        vec![format!(
            "regulous at {}: {} (value set {})",
            report::point_text(&pt),
            single,
            report::interval_text(&iv)
        )],
    ))
}

fn cmd_arc_eval(sess: &mut Session, ftext: &str, atext: &str) -> Result<Doc, Error> {
    let arc = sess.arc(atext)?;
    let f = sess.function(ftext, Some(arc.nvars()))?;
    let limit = arcs::compose(&f, &arc)?;
    Ok(Doc::ok(
        json!({
            "command": "arc-eval",
            "arc": report::arc_json(&arc),
            "center": report::point_json(&arc.center()),
            "function": report::fraction_json(&f),
            "limit": report::limit_json(&limit),
        }),
        vec![
            format!("arc: {}", arc.display("t")),
            format!("order: {}", order_text(&limit)),
            format!("limit: {}", report::limit_text(&limit)),
        ],
    ))
}

fn cmd_encode(sess: &mut Session, gen_texts: &[String]) -> Result<Doc, Error> {
    let mut polys = Vec::new();
    for t in gen_texts {
        polys.push(sess.polynomial(t, None)?);
    }
    let n = polys.iter().map(MPoly::nvars).max().expect("nonempty generators");
    let polys: Vec<MPoly> = polys
        .into_iter()
        .map(|p| {
            if p.nvars() == n {
                p
            } else {
                let map: Vec<usize> = (0..p.nvars()).collect();
                p.embed(n, &map)
            }
        })
        .collect();
    let enc = construct::encode_closed_sa_set(&polys)?;
    Ok(Doc::ok(
        json!({
            "command": "encode",
            "encoding": report::encoded_set_json(&enc),
            "generators": polys.iter().map(|p| Value::String(report::poly_text(p))).collect::<Vec<_>>(),
        }),
        vec![
            format!("ambient arity: {}", enc.ambient),
            format!("function: {}", report::fraction_text(&enc.h)),
            format!(
                "embedding: ({})",
                enc.embedding
                    .iter()
                    .map(report::poly_text)
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            format!("projection: first {} coordinates", enc.projection.len()),
        ],
    ))
}

fn cmd_gallery() -> Result<Doc, Error> {
    let entries = construct::gallery();
    let mut text = Vec::new();
    let width = entries.iter().map(|e| e.name.len()).max().unwrap_or(0);
    for e in &entries {
        text.push(format!("{:width$}  {}", e.name, e.description));
    }
    Ok(Doc::ok(
        json!({
            "command": "gallery",
            "entries": entries.iter().map(|e| json!({
                "description": e.description,
                "function": report::fraction_json(&e.function),
                "name": e.name,
                "vars": e.function.nvars(),
            })).collect::<Vec<_>>(),
        }),
        text,
    ))
}

fn parse_all(sess: &mut Session, texts: &[String]) -> Result<Vec<RationalFunction>, Error> {
    texts.iter().map(|t| sess.function(t, Some(2))).collect()
}
