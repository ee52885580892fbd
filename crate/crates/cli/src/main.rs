//! Command line front end: exact tangle evaluation, determinants,
//! quasi-alternating certificates, Montesinos reduction, Dehn-filling
//! family reports, cover presentations and rewrite-chain checking.
//!
//! Exit codes: 0 success, 1 domain or usage error, 2 identity violation
//! (an exact identity the tool verifies failed — a build-stopping event).

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use std::path::PathBuf;
use std::process::ExitCode;
use tanglekit::brunner::{
    abelianization_order, brunner_presentation, coarse_family_presentation, family_rewrite_chain,
    rewrite_verify, Chain, ChainVerdict, GroupPresentation,
};
use tanglekit::corpus::{corpus, CorpusSpec};
use tanglekit::dehn::{family_report, prop_surgery_description, Presentation};
use tanglekit::diagram::{closure, synthesize, Closure, PlanarDiagram};
use tanglekit::expr::{parse_closed_expr, parse_expr, ClosureKind, TangleExpr};
use tanglekit::fraction::{to_continued_fraction, Fraction};
use tanglekit::invariants::{checkerboard, det_pair, goeritz, InvariantError};
use tanglekit::montesinos::{reduced_form, MontesinosForm, MontesinosError};
use tanglekit::quasialt::{certify_family, check_certificate, QaCertificate, QaError};

const GRAMMAR: &str = "expression grammar:
  integers            3, -2
  rational leaves     [a1,a2,...] (continued fraction), p/q
  sum / product       t + t, t * t
  inversion / mirror  1/t, -t
  symmetries          flipH(t), flipV(t), rotCW(t), rotCCW(t)
  encirclement        tau(t)        (t must be a type 2 tangle)
  infinity leaf       inf
  closures (det/eval) N(t), D(t)    (numerator / denominator closure)";

#[derive(Parser)]
#[command(name = "tanglekit", version, about = "exact rational-tangle calculus", after_help = GRAMMAR)]
struct CliArgs {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate an expression: fraction, canonical continued fraction and
    /// diagram predicates
    Eval(EvalArgs),
    /// Determinant of a closure via the Goeritz pipeline
    Det(DetArgs),
    /// Quasi-alternating certificates
    Qa {
        #[command(subcommand)]
        cmd: QaCmd,
    },
    /// Montesinos normal forms
    Montesinos {
        #[command(subcommand)]
        cmd: MontesinosCmd,
    },
    /// Dehn-filling family reports
    Family {
        #[command(subcommand)]
        cmd: FamilyCmd,
    },
    /// Cover presentations from checkerboard surfaces
    Brunner {
        #[command(subcommand)]
        cmd: BrunnerCmd,
    },
    /// Enumerate the tangle corpus
    Corpus(CorpusArgs),
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, allow_hyphen_values = true)]
    expr: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DetArgs {
    /// Tangle expression, optionally wrapped as N(...) or D(...)
    #[arg(long, allow_hyphen_values = true)]
    expr: String,
    /// Closure for bare tangle expressions: N or D (default N)
    #[arg(long)]
    closure: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum QaCmd {
    /// Certify n(-p/(p+q) + tau(T)) quasi-alternating along the family route
    Certify {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        /// Write the certificate JSON here
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Re-verify a serialized certificate from scratch
    Check { file: PathBuf },
}

#[derive(Subcommand)]
enum MontesinosCmd {
    /// Reduce M(e; t1,...,tn) to its normal form
    Reduce {
        #[arg(long)]
        e: i64,
        /// Comma-separated tails, e.g. "-2,2,3/2"
        #[arg(long, allow_hyphen_values = true)]
        tails: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// Assemble the certificate-backed report for a filling
    Report {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long)]
        q: i64,
        /// Report the reciprocal presentation of the filling
        #[arg(long)]
        reciprocal: bool,
        #[arg(long)]
        json: bool,
    },
    /// The integer-surgery description of the 1/2 filling for -m
    Surgery {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum BrunnerCmd {
    /// Emit the presentation of a closed diagram
    Emit {
        /// Diagram JSON file
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Emit the coarse presentation of the family link
    Coarse {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Validate a rewrite chain against the coarse presentation
    VerifyChain { file: PathBuf },
    /// Emit the bundled rewrite chain for a slope
    Chain {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long, default_value_t = 6)]
    max_crossings: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Drop the type 2 restriction
    #[arg(long)]
    any_type: bool,
    #[arg(long)]
    no_sums: bool,
    #[arg(long)]
    no_products: bool,
    /// Also enumerate encircled tangles
    #[arg(long)]
    encircle: bool,
    /// Lift the desk-scale guard on max-crossings
    #[arg(long)]
    unguarded: bool,
    #[arg(long)]
    json: bool,
}

enum AppError {
    Domain(String),
    Identity(String),
}

impl AppError {
    fn domain(e: impl std::fmt::Display) -> AppError {
        AppError::Domain(e.to_string())
    }
}

impl From<InvariantError> for AppError {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::IdentityViolation(m) => AppError::Identity(m),
            other => AppError::Domain(other.to_string()),
        }
    }
}

impl From<QaError> for AppError {
    fn from(e: QaError) -> Self {
        match e {
            QaError::DetMismatch(m) => AppError::Identity(m),
            other => AppError::Domain(other.to_string()),
        }
    }
}

impl From<MontesinosError> for AppError {
    fn from(e: MontesinosError) -> Self {
        match e {
            MontesinosError::IdentityViolation(m) => AppError::Identity(m),
            other => AppError::Domain(other.to_string()),
        }
    }
}

impl From<tanglekit::dehn::DehnError> for AppError {
    fn from(e: tanglekit::dehn::DehnError) -> Self {
        match e {
            tanglekit::dehn::DehnError::IdentityViolation(m) => AppError::Identity(m),
            other => AppError::Domain(other.to_string()),
        }
    }
}

impl From<tanglekit::diagram::DiagramError> for AppError {
    fn from(e: tanglekit::diagram::DiagramError) -> Self {
        AppError::Domain(e.to_string())
    }
}

impl From<tanglekit::brunner::BrunnerError> for AppError {
    fn from(e: tanglekit::brunner::BrunnerError) -> Self {
        AppError::Domain(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match CliArgs::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(AppError::Identity(m)) => {
            eprintln!("identity violation: {m}");
            ExitCode::from(2)
        }
    }
}

fn parse(expr: &str) -> Result<TangleExpr, AppError> {
    parse_expr(expr).map_err(AppError::domain)
}

fn run(cmd: Cmd) -> Result<(), AppError> {
    match cmd {
        Cmd::Eval(args) => eval(&args),
        Cmd::Det(args) => det(&args),
        Cmd::Qa { cmd } => qa(cmd),
        Cmd::Montesinos { cmd } => montesinos(cmd),
        Cmd::Family { cmd } => family(cmd),
        Cmd::Brunner { cmd } => brunner(cmd),
        Cmd::Corpus(args) => corpus_cmd(&args),
    }
}

fn eval(args: &EvalArgs) -> Result<(), AppError> {
    let expr = parse(&args.expr)?;
    let fraction = expr.fraction_of();
    let diagram = synthesize(&expr).map_err(AppError::from)?;
    let predicates = diagram.predicates();
    let tangle_type = diagram.classify_type().ok();
    let cf = fraction.as_ref().and_then(|f| to_continued_fraction(f).ok());
    if args.json {
        let v = serde_json::json!({
            "expr": expr.to_string(),
            "fraction": fraction.as_ref().map(|f| f.to_string()),
            "continued_fraction": cf.as_ref().map(|c| c.to_string()),
            "crossings": diagram.crossing_count(),
            "type": tangle_type.map(|t| format!("{t:?}")),
            "predicates": predicates,
        });
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        match &fraction {
            Some(f) => println!("fraction: {f}{}", cf.map(|c| format!(" = {c}")).unwrap_or_default()),
            None => println!("fraction: not a rational tangle"),
        }
        println!("crossings: {}", diagram.crossing_count());
        if let Some(t) = tangle_type {
            println!("type: {t:?}");
        }
        println!(
            "alternating: {}, connected: {}, reduced: {}, strongly alternating: {}",
            predicates.is_alternating,
            predicates.is_connected_tangle,
            predicates.is_reduced,
            predicates.is_strongly_alternating
        );
    }
    Ok(())
}

fn closed_diagram(expr: &str, flag: &Option<String>) -> Result<PlanarDiagram, AppError> {
    let (tangle, wrapped) = parse_closed_expr(expr).map_err(AppError::domain)?;
    let kind = match (wrapped, flag.as_deref()) {
        (Some(k), _) => k,
        (None, Some("N") | Some("n")) | (None, None) => ClosureKind::Numerator,
        (None, Some("D") | Some("d")) => ClosureKind::Denominator,
        (None, Some(other)) => return Err(AppError::Domain(format!("unknown closure '{other}'"))),
    };
    let d = synthesize(&tangle).map_err(AppError::from)?;
    Ok(closure(
        &d,
        match kind {
            ClosureKind::Numerator => Closure::Numerator,
            ClosureKind::Denominator => Closure::Denominator,
        },
    ))
}

fn det(args: &DetArgs) -> Result<(), AppError> {
    let d = closed_diagram(&args.expr, &args.closure)?;
    let det = tanglekit::invariants::determinant(&d)?;
    if args.json {
        let matrix = if d.is_split() || d.crossing_count() == 0 {
            Vec::new()
        } else {
            let faces = d.plain_map().faces();
            let coloring = checkerboard(&d, &faces, false)?;
            goeritz(&d, &faces, &coloring, coloring.outer)?.entries
        };
        let v = serde_json::json!({ "det": det.to_string(), "goeritz": matrix });
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        println!("{det}");
    }
    Ok(())
}

fn qa(cmd: QaCmd) -> Result<(), AppError> {
    match cmd {
        QaCmd::Certify { expr, p, q, out, json } => {
            let t = parse(&expr)?;
            let cert = certify_family(&t, p, q)?;
            let violations = check_certificate(&cert);
            if !violations.is_empty() {
                return Err(AppError::Identity(format!(
                    "freshly built certificate failed re-checking: {violations:?}"
                )));
            }
            let payload = cert.to_json();
            if let Some(path) = out {
                std::fs::write(&path, serde_json::to_string_pretty(&payload).unwrap())
                    .map_err(AppError::domain)?;
                println!("certificate written to {}", path.display());
            }
            if json {
                println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            } else {
                println!("quasi-alternating: det {} at slope {p}/{}", cert.det(), p + q);
            }
            Ok(())
        }
        QaCmd::Check { file } => {
            let text = std::fs::read_to_string(&file).map_err(AppError::domain)?;
            let v: serde_json::Value = serde_json::from_str(&text).map_err(AppError::domain)?;
            let cert = QaCertificate::from_json(&v)?;
            let violations = check_certificate(&cert);
            if violations.is_empty() {
                println!("valid: det {}", cert.det());
                Ok(())
            } else {
                for v in &violations {
                    eprintln!("violation at {}: {}", v.path, v.message);
                }
                Err(AppError::Identity(format!("{} violations", violations.len())))
            }
        }
    }
}

fn parse_fraction_str(s: &str) -> Result<Fraction, AppError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| AppError::Domain(format!("bad fraction '{s}'")))?;
    let den: BigInt = den.parse().map_err(|_| AppError::Domain(format!("bad fraction '{s}'")))?;
    Fraction::new(num, den).map_err(AppError::domain)
}

fn montesinos(cmd: MontesinosCmd) -> Result<(), AppError> {
    match cmd {
        MontesinosCmd::Reduce { e, tails, json } => {
            let tails = tails
                .split(',')
                .map(parse_fraction_str)
                .collect::<Result<Vec<_>, _>>()?;
            let form = MontesinosForm::new(e, tails)?;
            let reduced = reduced_form(&form)?;
            if json {
                let v = serde_json::json!({ "input": form.to_json(), "reduced": reduced.to_json() });
                println!("{}", serde_json::to_string_pretty(&v).unwrap());
            } else {
                println!("{form} -> {reduced}");
            }
            Ok(())
        }
    }
}

fn family(cmd: FamilyCmd) -> Result<(), AppError> {
    match cmd {
        FamilyCmd::Report { expr, p, q, reciprocal, json } => {
            let t = parse(&expr)?;
            let which = if reciprocal { Presentation::Reciprocal } else { Presentation::Direct };
            let report = family_report(&t, p, q, which)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap());
            } else {
                println!("branch link: N({})", report.branch_link);
                println!("det: {} (N_T = {}, D_T = {})", report.determinant, report.det_pair.numerator, report.det_pair.denominator);
                println!("components: {}", report.components);
                for (name, v) in [
                    ("L-space", &report.l_space),
                    ("non-left-orderable", &report.non_left_orderable),
                    ("hyperbolic branch link", &report.hyperbolic_branch_link),
                    ("non-Seifert", &report.non_seifert),
                ] {
                    match v {
                        tanglekit::dehn::Verdict::Certified { by, .. } => {
                            println!("{name}: certified ({by})")
                        }
                        tanglekit::dehn::Verdict::Unknown { reason } => {
                            println!("{name}: unknown ({reason})")
                        }
                    }
                }
            }
            Ok(())
        }
        FamilyCmd::Surgery { m, json } => {
            let desc = prop_surgery_description(m)?;
            if json {
                let v = serde_json::json!({
                    "montesinos": desc.montesinos.to_json(),
                    "torus_knot": [desc.torus_knot.0, desc.torus_knot.1],
                    "coefficient_magnitude": desc.coefficient_magnitude.to_string(),
                    "coefficient_sign": "undetermined",
                });
                println!("{}", serde_json::to_string_pretty(&v).unwrap());
            } else {
                println!(
                    "{}; integer surgery along T({},{}) with coefficient magnitude {} (sign undetermined)",
                    desc.montesinos, desc.torus_knot.0, desc.torus_knot.1, desc.coefficient_magnitude
                );
            }
            Ok(())
        }
    }
}

fn print_presentation(pres: &GroupPresentation, format: &str) -> Result<(), AppError> {
    match format {
        "text" => print!("{}", pres.display_text()),
        "json" => println!("{}", serde_json::to_string_pretty(&pres.to_json()).unwrap()),
        "gap-like" => print!("{}", pres.display_gap_like()),
        other => return Err(AppError::Domain(format!("unknown format '{other}'"))),
    }
    Ok(())
}

fn brunner(cmd: BrunnerCmd) -> Result<(), AppError> {
    match cmd {
        BrunnerCmd::Emit { diagram, format } => {
            let text = std::fs::read_to_string(&diagram).map_err(AppError::domain)?;
            let v: serde_json::Value = serde_json::from_str(&text).map_err(AppError::domain)?;
            let d = PlanarDiagram::from_json(&v)?;
            let pres = brunner_presentation(&d)?;
            print_presentation(&pres, &format)?;
            let order = abelianization_order(&pres)?;
            let det = tanglekit::invariants::determinant(&d)?;
            if order != det {
                return Err(AppError::Identity(format!(
                    "abelianization {order} differs from determinant {det}"
                )));
            }
            Ok(())
        }
        BrunnerCmd::Coarse { expr, p, q, format } => {
            let t = parse(&expr)?;
            let pres = coarse_family_presentation(&t, p, q)?;
            print_presentation(&pres, &format)
        }
        BrunnerCmd::VerifyChain { file } => {
            let text = std::fs::read_to_string(&file).map_err(AppError::domain)?;
            let v: serde_json::Value = serde_json::from_str(&text).map_err(AppError::domain)?;
            let p = v.get("p").and_then(|x| x.as_i64()).ok_or_else(|| AppError::Domain("chain file needs p".into()))?;
            let q = v.get("q").and_then(|x| x.as_i64()).ok_or_else(|| AppError::Domain("chain file needs q".into()))?;
            let expr = v.get("expr").and_then(|x| x.as_str()).unwrap_or("-1");
            let chain = Chain::from_json(&v).ok_or_else(|| AppError::Domain("bad chain encoding".into()))?;
            let pres = coarse_family_presentation(&parse(expr)?, p, q)?;
            match rewrite_verify(&pres, &chain) {
                ChainVerdict::Valid => {
                    println!("valid ({} steps)", chain.steps.len());
                    Ok(())
                }
                ChainVerdict::Failed { step, reason } => {
                    Err(AppError::Identity(format!("step {step} failed: {reason}")))
                }
            }
        }
        BrunnerCmd::Chain { p, q, out } => {
            let chain = family_rewrite_chain(p, q);
            let mut v = chain.to_json();
            v["p"] = serde_json::json!(p);
            v["q"] = serde_json::json!(q);
            let text = serde_json::to_string_pretty(&v).unwrap();
            match out {
                Some(path) => {
                    std::fs::write(&path, text).map_err(AppError::domain)?;
                    println!("chain written to {}", path.display());
                }
                None => println!("{text}"),
            }
            Ok(())
        }
    }
}

fn corpus_cmd(args: &CorpusArgs) -> Result<(), AppError> {
    let spec = CorpusSpec {
        max_crossings: args.max_crossings,
        rationals: true,
        sums: !args.no_sums,
        products: !args.no_products,
        encircle: args.encircle,
        seed: args.seed,
        tangle_type: if args.any_type { None } else { Some(tanglekit::diagram::TangleType::Type2) },
        unguarded: args.unguarded,
    };
    let items = corpus(&spec).map_err(AppError::domain)?;
    for e in &items {
        if args.json {
            let dp = det_pair(e)?;
            println!(
                "{}",
                serde_json::json!({
                    "expr": e.to_string(),
                    "n": dp.numerator.to_string(),
                    "d": dp.denominator.to_string(),
                })
            );
        } else {
            println!("{e}");
        }
    }
    Ok(())
}
