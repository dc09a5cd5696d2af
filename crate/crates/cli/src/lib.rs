//! Command-line front end: reads JSON documents, runs the library, and
//! writes a JSON report to the given writer.
//!
//! Exit codes: 0 on success, 1 on a negative verdict (invalid matrix,
//! inequivalent pair, rejected witness), 2 on usage or input errors.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use expmat::classify::{classify, equiv_bir, Classification, Family};
use expmat::expmat::{action_of, exp_nilpotent, is_exponential, log_exponential, verify, ExpMatrix, NilMatrix, PolyMatrix};
use expmat::json::{
    class_to_json, field_from_str, field_to_json, matrix_input, matrix_to_json, projmap_to_json, scalar_matrix_input,
    scalar_matrix_to_json, verify_report_to_json, witness_input, witness_to_json,
};
use expmat::oracle::{enumerate_family, EnumSpec};
use expmat::{Error, Field};
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "expmat-report/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "expmat", version, about = "Verify, classify and compare exponential matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: GlobalOpts,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Field: `p`, `p^m`, `0` for the rationals, or a JSON field object.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Largest index i of a term T^(p^i); for `enumerate` the parameter
    /// range, elsewhere an upper limit on input degrees.
    #[arg(long, global = true)]
    degree_bound: Option<u32>,
    /// Skip re-verification of emitted witnesses.
    #[arg(long, global = true)]
    no_witness_verify: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the exponential-matrix axioms.
    Verify { input: PathBuf },
    /// Compute the birational class and a witness chain.
    Classify { input: PathBuf },
    /// Decide birational equivalence of two matrices.
    Equiv { left: PathBuf, right: PathBuf },
    /// Re-verify a stored witness chain (or a report containing one).
    Witness { input: PathBuf },
    /// Exponential of a nilpotent matrix over the rationals.
    Exp { input: PathBuf },
    /// Nilpotent logarithm of an exponential matrix over the rationals.
    Log { input: PathBuf },
    /// The induced action on projective space.
    Action { input: PathBuf },
    /// Stream every family matrix within the bounds as JSON lines.
    Enumerate {
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Restrict to one family: A12, A21, J3, A11 or Upper2.
        #[arg(long)]
        family: Option<String>,
    },
}

/// What a subcommand produced: an exit code and the report lines.
struct Outcome {
    code: i32,
    lines: Vec<String>,
}

impl Outcome {
    fn report(code: i32, command: &str, body: Map<String, Value>) -> Outcome {
        Outcome { code, lines: vec![render(command, body)] }
    }
}

/// Failure before or during a subcommand; always exit code 2.
struct Failure {
    error: Error,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Failure {
        Failure { error }
    }
}

fn render(command: &str, mut body: Map<String, Value>) -> String {
    body.insert("schema".into(), json!(SCHEMA));
    body.insert("command".into(), json!(command));
    serde_json::to_string_pretty(&Value::Object(body)).expect("JSON values always serialize")
}

fn error_json(e: &Error) -> Value {
    json!({ "kind": e.kind(), "message": e.to_string() })
}

/// Runs the command line `args` (including the program name) and writes the
/// report to `out`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                let code = if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { EXIT_USAGE } else { EXIT_OK };
                let _ = write!(out, "{}", e.render());
                return code;
            }
            let mut body = Map::new();
            body.insert("error".into(), json!({ "kind": "Usage", "message": e.render().to_string().trim_end() }));
            let _ = writeln!(out, "{}", render("usage", body));
            return EXIT_USAGE;
        }
    };
    let name = command_name(&cli.command);
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(f) => {
            let mut body = Map::new();
            body.insert("error".into(), error_json(&f.error));
            Outcome::report(EXIT_USAGE, name, body)
        }
    };
    for line in &outcome.lines {
        if writeln!(out, "{line}").is_err() {
            return EXIT_USAGE;
        }
    }
    outcome.code
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Verify { .. } => "verify",
        Command::Classify { .. } => "classify",
        Command::Equiv { .. } => "equiv",
        Command::Witness { .. } => "witness",
        Command::Exp { .. } => "exp",
        Command::Log { .. } => "log",
        Command::Action { .. } => "action",
        Command::Enumerate { .. } => "enumerate",
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("reading standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("reading {}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())).into())
}

fn field_flag(opts: &GlobalOpts) -> Result<Option<Field>, Failure> {
    Ok(opts.field.as_deref().map(field_from_str).transpose()?)
}

fn read_matrix(path: &Path, opts: &GlobalOpts) -> Result<PolyMatrix, Failure> {
    let m = matrix_input(&read_json(path)?, field_flag(opts)?.as_ref())?;
    check_degree(&m, opts)?;
    Ok(m)
}

/// Rejects inputs with an entry of degree above `p^b` (or `b` over ℚ).
fn check_degree(m: &PolyMatrix, opts: &GlobalOpts) -> Result<(), Failure> {
    let (Some(b), Some(d)) = (opts.degree_bound, m.max_degree()) else {
        return Ok(());
    };
    let p = m.field().characteristic();
    let limit = if p == 0 { Some(b as u64) } else { p.checked_pow(b) };
    match limit {
        Some(limit) if d as u64 > limit => {
            Err(Error::Parse(format!("entry degree {d} exceeds the degree bound {limit} from --degree-bound {b}")).into())
        }
        _ => Ok(()),
    }
}

/// Returns the matrix as an [`ExpMatrix`], or the negative `verify` report.
fn require_exponential(m: PolyMatrix) -> Result<ExpMatrix, Map<String, Value>> {
    is_exponential(&m).map_err(|report| {
        let mut body = Map::new();
        body.insert("valid".into(), json!(false));
        body.insert("verification".into(), verify_report_to_json(&report));
        body
    })
}

fn classification_json(c: &Classification) -> Map<String, Value> {
    let mut body = Map::new();
    body.insert("class".into(), class_to_json(&c.class));
    body.insert("canonical".into(), matrix_to_json(&c.canonical));
    body.insert("witness".into(), witness_to_json(&c.witness));
    body.insert("verified".into(), json!(c.verified));
    body
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    let opts = &cli.opts;
    let verify_witnesses = !opts.no_witness_verify;
    let name = command_name(&cli.command);
    match &cli.command {
        Command::Verify { input } => {
            let m = read_matrix(input, opts)?;
            let report = verify(&m);
            let mut body = Map::new();
            body.insert("field".into(), field_to_json(m.field()));
            body.insert("n".into(), json!(m.n()));
            if let Value::Object(fields) = verify_report_to_json(&report) {
                body.extend(fields);
            }
            let code = if report.valid() { EXIT_OK } else { EXIT_NEGATIVE };
            Ok(Outcome::report(code, name, body))
        }
        Command::Classify { input } => {
            let a = match require_exponential(read_matrix(input, opts)?) {
                Ok(a) => a,
                Err(body) => return Ok(Outcome::report(EXIT_NEGATIVE, name, body)),
            };
            let c = classify(&a, verify_witnesses)?;
            let mut body = classification_json(&c);
            body.insert("valid".into(), json!(true));
            Ok(Outcome::report(EXIT_OK, name, body))
        }
        Command::Equiv { left, right } => {
            let mut mats = Vec::new();
            for (side, path) in [("left", left), ("right", right)] {
                match require_exponential(read_matrix(path, opts)?) {
                    Ok(a) => mats.push(a),
                    Err(mut body) => {
                        body.insert("side".into(), json!(side));
                        body.insert("equivalent".into(), json!(false));
                        return Ok(Outcome::report(EXIT_NEGATIVE, name, body));
                    }
                }
            }
            let e = equiv_bir(&mats[0], &mats[1], verify_witnesses)?;
            let mut body = Map::new();
            body.insert("equivalent".into(), json!(e.equivalent));
            body.insert("left".into(), Value::Object(classification_json(&e.left)));
            body.insert("right".into(), Value::Object(classification_json(&e.right)));
            body.insert("witness".into(), e.witness.as_ref().map_or(Value::Null, witness_to_json));
            let code = if e.equivalent { EXIT_OK } else { EXIT_NEGATIVE };
            Ok(Outcome::report(code, name, body))
        }
        Command::Witness { input } => {
            let w = witness_input(&read_json(input)?)?;
            let mut body = Map::new();
            body.insert("field".into(), field_to_json(w.source.field()));
            body.insert("n".into(), json!(w.source.n()));
            body.insert("steps".into(), json!(w.steps.len()));
            let code = match w.verify() {
                Ok(()) => {
                    body.insert("valid".into(), json!(true));
                    EXIT_OK
                }
                Err(e) => {
                    body.insert("valid".into(), json!(false));
                    body.insert("error".into(), error_json(&e));
                    EXIT_NEGATIVE
                }
            };
            Ok(Outcome::report(code, name, body))
        }
        Command::Exp { input } => {
            let n = scalar_matrix_input(&read_json(input)?, field_flag(opts)?.as_ref())?;
            let a = exp_nilpotent(&NilMatrix::new(n)?)?;
            let mut body = Map::new();
            body.insert("matrix".into(), matrix_to_json(a.matrix()));
            Ok(Outcome::report(EXIT_OK, name, body))
        }
        Command::Log { input } => {
            let a = match require_exponential(read_matrix(input, opts)?) {
                Ok(a) => a,
                Err(body) => return Ok(Outcome::report(EXIT_NEGATIVE, name, body)),
            };
            let n = log_exponential(&a)?;
            let mut body = Map::new();
            body.insert("field".into(), field_to_json(n.field()));
            body.insert("matrix".into(), scalar_matrix_to_json(n.matrix()));
            Ok(Outcome::report(EXIT_OK, name, body))
        }
        Command::Action { input } => {
            let a = match require_exponential(read_matrix(input, opts)?) {
                Ok(a) => a,
                Err(body) => return Ok(Outcome::report(EXIT_NEGATIVE, name, body)),
            };
            let map = action_of(&a);
            let mut body = Map::new();
            body.insert("field".into(), field_to_json(a.field()));
            body.insert("display".into(), json!(map.to_string()));
            body.insert("action".into(), projmap_to_json(&map));
            Ok(Outcome::report(EXIT_OK, name, body))
        }
        Command::Enumerate { n, family } => {
            let field = field_flag(opts)?.ok_or_else(|| Error::Parse("enumerate needs --field".into()))?;
            let family = match family {
                Some(s) => Some(Family::parse(s).ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))?),
                None => None,
            };
            let spec = EnumSpec::new(&field, *n, family, opts.degree_bound.unwrap_or(1) as usize);
            let mats = enumerate_family(&spec)?;
            let lines = mats
                .iter()
                .enumerate()
                .map(|(index, a)| {
                    let line = json!({ "schema": SCHEMA, "command": name, "index": index, "matrix": matrix_to_json(a.matrix()) });
                    serde_json::to_string(&line).expect("JSON values always serialize")
                })
                .collect();
            Ok(Outcome { code: EXIT_OK, lines })
        }
    }
}
