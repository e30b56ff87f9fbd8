//! Dispatch for the `wpo` command line.
//!
//! [`run`] is the whole program minus process plumbing, so the binary and
//! the tests share one path.

use std::fmt::Write as _;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use wpo_core::dilator::DilatorSpec;
use wpo_core::kruskal::{Audit, TermSystem, DEFAULT_KERNEL_BOUND};
use wpo_core::normality::{check_dilator_quasi_embedding, check_property, Bounds, Property, Transformation};
use wpo_core::order::{enumerate_posets, FinitePoset};
use wpo_core::ordinal::{check_normal_function, otype_of, Ordinal, OrdinalMap, OtypeQuery};
use wpo_core::syntax::{format_element, parse_element, parse_ordinal, parse_poset, parse_spec, parse_term};
use wpo_core::verdict::Verdict;

#[derive(Parser, Debug)]
#[command(name = "wpo", version, about = "Dilators on partial orders, their Kruskal fixed points and order types")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    #[value(alias = "json")]
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a normality property, or a quasi embedding with --via/--into.
    Check(CheckArgs),
    /// Compare two elements of W(X).
    Compare(CompareArgs),
    /// Work with Kruskal fixed point terms.
    Tw(TwArgs),
    /// Closed-form maximal order types.
    Otype {
        #[arg(value_enum)]
        which: OtypeKind,
        args: Vec<String>,
    },
    /// Ordinal arithmetic below Gamma_0.
    Ord {
        #[command(subcommand)]
        op: OrdOp,
    },
    /// List the partial orders on n points.
    Posets {
        n: usize,
        #[arg(long)]
        unlabeled: bool,
        #[arg(long)]
        count: bool,
    },
}

#[derive(Args, Debug)]
struct CheckArgs {
    spec: String,
    #[arg(long, required_unless_present = "via", conflicts_with = "via")]
    property: Option<String>,
    #[arg(long, default_value_t = 3)]
    max_poset: usize,
    #[arg(long, default_value_t = 3)]
    max_elem: usize,
    #[arg(long, requires = "into")]
    via: Option<String>,
    #[arg(long, requires = "via")]
    into: Option<String>,
}

#[derive(Args, Debug)]
struct CompareArgs {
    spec: String,
    /// Poset file, or `-` for standard input.
    #[arg(long)]
    poset: String,
    s: String,
    t: String,
}

#[derive(Args, Debug)]
struct TwArgs {
    spec: String,
    #[arg(long, default_value_t = DEFAULT_KERNEL_BOUND)]
    kernel_bound: usize,
    #[command(subcommand)]
    action: TwAction,
}

#[derive(Subcommand, Debug)]
enum TwAction {
    /// partial-order, fixed-point-eq, height-lemma or bad-sequence-probe.
    Audit {
        check: String,
        #[arg(long, default_value_t = 7)]
        max_length: u64,
    },
    Compare { s: String, t: String },
    Enumerate {
        #[arg(long, default_value_t = 5)]
        max_length: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OtypeKind {
    Seq,
    #[value(alias = "mset")]
    Multiset,
    Sum,
    Product,
}

#[derive(Subcommand, Debug)]
enum OrdOp {
    Compare { a: String, b: String },
    /// Ordinary sum.
    Add { a: String, b: String },
    /// Natural (Hessenberg) sum.
    Sum { a: String, b: String },
    /// Natural (Hessenberg) product.
    Product { a: String, b: String },
    Wpow { a: String },
    Phi { a: String, b: String },
    /// The n-th element of the fundamental sequence of a limit.
    Fs { a: String, n: u64 },
    /// Test seq-otype, multiset-otype or omega-pow for being normal.
    Normal {
        map: String,
        #[arg(long = "probe")]
        probes: Vec<String>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// What the process should print and return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(stderr: String) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr,
        }
    }
}

type Res<T> = Result<T, String>;

fn core<T>(r: wpo_core::Result<T>) -> Res<T> {
    r.map_err(|e| e.to_string())
}

/// Runs one command line. Exit code 0 means success or pass, 1 a failing
/// verdict, 2 a usage or input error.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.exit_code() == 0 {
                Outcome::ok(text)
            } else {
                Outcome::usage(text)
            };
        }
    };
    match dispatch(&cli, stdin) {
        Ok(out) => out,
        Err(message) => Outcome::usage(format!("error: {message}\n")),
    }
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> Res<Outcome> {
    let fmt = cli.format;
    match &cli.command {
        Command::Check(a) => check(a, fmt),
        Command::Compare(a) => compare(a, fmt, stdin),
        Command::Tw(a) => tw(a, fmt),
        Command::Otype { which, args } => otype(*which, args, fmt),
        Command::Ord { op } => ord(op, fmt),
        Command::Posets { n, unlabeled, count } => posets(*n, *unlabeled, *count, fmt),
    }
}

fn verdict(v: &Verdict, fmt: Format) -> Outcome {
    let stdout = match fmt {
        Format::Text => v.to_text(),
        Format::Structured => pretty(&serde_json::to_value(v).expect("verdicts serialize")),
    };
    Outcome {
        code: if v.passed() { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn emit(fmt: Format, text: String, structured: Value) -> Outcome {
    Outcome::ok(match fmt {
        Format::Text => text,
        Format::Structured => pretty(&structured),
    })
}

fn spec(text: &str) -> Res<DilatorSpec> {
    core(parse_spec(text))
}

fn check(a: &CheckArgs, fmt: Format) -> Res<Outcome> {
    let d = spec(&a.spec)?;
    let bounds = Bounds::new(a.max_poset, a.max_elem);
    let v = match (&a.via, &a.into) {
        (Some(nu), Some(into)) => {
            let nu: Transformation = core(nu.parse())?;
            core(check_dilator_quasi_embedding(nu, &d, &spec(into)?, bounds))?
        }
        _ => {
            let name = a.property.as_deref().expect("clap requires --property without --via");
            let property: Property = core(name.parse())?;
            core(check_property(&d, property, bounds))?
        }
    };
    Ok(verdict(&v, fmt))
}

fn read_poset(path: &str, stdin: &mut dyn Read) -> Res<FinitePoset> {
    let mut text = String::new();
    if path == "-" {
        stdin.read_to_string(&mut text).map_err(|e| format!("reading standard input: {e}"))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))?;
    }
    core(parse_poset(&text))
}

fn relation(le: bool, ge: bool) -> &'static str {
    match (le, ge) {
        (true, true) => "=",
        (true, false) => "<",
        (false, true) => ">",
        (false, false) => "incomparable",
    }
}

fn compare(a: &CompareArgs, fmt: Format, stdin: &mut dyn Read) -> Res<Outcome> {
    let w = spec(&a.spec)?;
    let x = read_poset(&a.poset, stdin)?;
    let s = core(parse_element(&w, &x, &a.s))?;
    let t = core(parse_element(&w, &x, &a.t))?;
    let le = core(w.leq(&x, &s, &t))?;
    let ge = core(w.leq(&x, &t, &s))?;
    let (ps, pt) = (format_element(&x, &s), format_element(&x, &t));
    let rel = relation(le, ge);
    Ok(emit(
        fmt,
        format!("{ps} {rel} {pt}\n"),
        json!({ "spec": w.to_string(), "s": ps, "t": pt, "leq": le, "geq": ge, "relation": rel }),
    ))
}

fn tw(a: &TwArgs, fmt: Format) -> Res<Outcome> {
    let sys = core(TermSystem::new(spec(&a.spec)?).and_then(|s| s.with_kernel_bound(a.kernel_bound)))?;
    match &a.action {
        TwAction::Audit { check, max_length } => {
            let check: Audit = core(check.parse())?;
            Ok(verdict(&core(sys.audit(check, *max_length))?, fmt))
        }
        TwAction::Compare { s, t } => {
            let s = core(parse_term(&sys, s))?;
            let t = core(parse_term(&sys, t))?;
            let (le, ge) = (sys.leq(&s, &t), sys.leq(&t, &s));
            let rel = relation(le, ge);
            Ok(emit(
                fmt,
                format!("{s} {rel} {t}\n"),
                json!({ "s": s.to_string(), "t": t.to_string(), "leq": le, "geq": ge, "relation": rel }),
            ))
        }
        TwAction::Enumerate { max_length } => {
            let terms = core(sys.enumerate(*max_length))?;
            let mut text = String::new();
            for t in &terms {
                let _ = writeln!(text, "{t}\tlength {} height {}", t.length(), t.height());
            }
            let _ = writeln!(text, "{} terms", terms.len());
            let rows: Vec<Value> = terms
                .iter()
                .map(|t| json!({ "term": t.to_string(), "length": t.length(), "height": t.height() }))
                .collect();
            Ok(emit(fmt, text, json!({ "count": terms.len(), "terms": rows })))
        }
    }
}

fn ordinal(text: &str) -> Res<Ordinal> {
    core(parse_ordinal(text))
}

fn arity(args: &[String], n: usize, what: &str) -> Res<Vec<Ordinal>> {
    if args.len() != n {
        return Err(format!("{what} takes {n} ordinal argument(s), got {}", args.len()));
    }
    args.iter().map(|a| ordinal(a)).collect()
}

fn otype(which: OtypeKind, args: &[String], fmt: Format) -> Res<Outcome> {
    let query = match which {
        OtypeKind::Seq => OtypeQuery::Seq(arity(args, 1, "seq")?.remove(0)),
        OtypeKind::Multiset => OtypeQuery::Multiset(arity(args, 1, "multiset")?.remove(0)),
        OtypeKind::Sum => {
            let [a, b]: [Ordinal; 2] = arity(args, 2, "sum")?.try_into().expect("two arguments");
            OtypeQuery::Sum(a, b)
        }
        OtypeKind::Product => {
            let [a, b]: [Ordinal; 2] = arity(args, 2, "product")?.try_into().expect("two arguments");
            OtypeQuery::Product(a, b)
        }
    };
    let result = otype_of(&query);
    Ok(emit(fmt, format!("{result}\n"), json!({ "result": result.to_string() })))
}

fn ord(op: &OrdOp, fmt: Format) -> Res<Outcome> {
    let value = |o: Ordinal| emit(fmt, format!("{o}\n"), json!({ "result": o.to_string() }));
    Ok(match op {
        OrdOp::Compare { a, b } => {
            let (x, y) = (ordinal(a)?, ordinal(b)?);
            let rel = match x.cmp(&y) {
                std::cmp::Ordering::Less => "<",
                std::cmp::Ordering::Equal => "=",
                std::cmp::Ordering::Greater => ">",
            };
            emit(fmt, format!("{x} {rel} {y}\n"), json!({ "a": x.to_string(), "b": y.to_string(), "relation": rel }))
        }
        OrdOp::Add { a, b } => value(ordinal(a)?.add(&ordinal(b)?)),
        OrdOp::Sum { a, b } => value(ordinal(a)?.natural_sum(&ordinal(b)?)),
        OrdOp::Product { a, b } => value(ordinal(a)?.natural_product(&ordinal(b)?)),
        OrdOp::Wpow { a } => value(Ordinal::omega_pow(&ordinal(a)?)),
        OrdOp::Phi { a, b } => value(Ordinal::veblen(&ordinal(a)?, &ordinal(b)?)),
        OrdOp::Fs { a, n } => value(core(ordinal(a)?.fundamental_sequence(*n))?),
        OrdOp::Normal { map, probes, samples, seed } => {
            let f: OrdinalMap = core(map.parse())?;
            let probes: Vec<Ordinal> = if probes.is_empty() {
                ["w", "w^w", "e0"].iter().map(|p| ordinal(p)).collect::<Res<_>>()?
            } else {
                probes.iter().map(|p| ordinal(p)).collect::<Res<_>>()?
            };
            verdict(&core(check_normal_function(f, &probes, *samples, *seed))?, fmt)
        }
    })
}

fn posets(n: usize, unlabeled: bool, count: bool, fmt: Format) -> Res<Outcome> {
    let all = core(enumerate_posets(n, unlabeled))?;
    if count {
        return Ok(emit(fmt, format!("{}\n", all.len()), json!({ "n": n, "unlabeled": unlabeled, "count": all.len() })));
    }
    let texts: Vec<String> = all.iter().map(FinitePoset::to_text).collect();
    let mut text = texts.join("\n\n");
    text.push('\n');
    Ok(emit(fmt, text, json!({ "n": n, "unlabeled": unlabeled, "count": all.len(), "posets": texts })))
}
