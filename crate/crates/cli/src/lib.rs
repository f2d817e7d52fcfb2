//! Command-line front end: solving, independent verification and local queries.
//!
//! Exit codes are a stable contract: 0 solved or verified, 1 bad input, 2 obstruction or
//! failed verification, 3 outside the supported scope.

pub mod file;
pub mod verify;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use gw_core::arith::{is_prime, parse_rational};
use gw_core::brauer::{galois_maximal_subfield_certificate, symbol_class, BrauerClassJson, SymbolAlgebraJson};
use gw_core::kummer::binomial_irreducible;
use gw_core::local::{exists_cyclic_extension, local_binomial_irreducible, power_class_group, Ramification};
use gw_core::solver::{no_solution_check_p2, norm_test, solve, ExtensionJson, InstanceJson, Outcome, PlaceSpec};
use gw_core::{
    BrauerClass, CyclicExtension, Error, Mode, NFElement, NumberField, Polynomial, ProblemInstance, SolveOptions,
    SymbolAlgebra,
};

pub use file::{CertificateFile, Payload};
pub use verify::{verify_file, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;
pub const EXIT_SCOPE: i32 = 3;

const SCHEMAS: &str = "\
JSON schemas (all rationals are strings \"p/q\" or integers as strings):
  polynomial     [\"c0\", \"c1\", ..., \"1\"]  monic integral, lowest degree first
  element        coordinates in the power basis of the field, e.g. [\"1\", \"1\"] = 1 + theta
  extension      {\"field\": polynomial, \"sigma\": element}  sigma generates Gal(K/k)
  place          {\"kind\": \"finite\", \"q\": 5, \"index\": 0} or with \"factor\": [coefficients mod q],
                 {\"kind\": \"real\", \"index\": 0}
  instance       {\"extension\": extension, \"m\": 2, \"places\": [place, ...], \"mode\": \"general\"}
  class          {\"m\": 2, \"inv\": [{\"place\": place, \"num\": 1, \"den\": 2}, ...]}
  symbol         {\"a\": element, \"b\": element, \"m\": 2, \"zeta\": element}
  split input    {\"extension\": extension, \"class\": class} or {\"extension\": extension, \"symbol\": symbol}
  certificate    {\"version\", \"instance\", \"payload\": {\"kind\", \"data\"}, \"checksum\": \"sha256:...\"}";

#[derive(Parser, Debug)]
#[command(name = "gw", version, about = "Solve and certify weak Grunwald-Wang problems over number fields", after_long_help = SCHEMAS)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an instance file; prints (or writes) a certificate or an obstruction.
    Solve {
        input: PathBuf,
        /// general (mu_m in K), abelian or cyclic (mu_m in k); defaults to the file's mode.
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Rational prime for the auxiliary place used when S has no finite place.
        #[arg(long = "aux-place")]
        aux_place: Option<u64>,
        /// Height bound for the norm-element and twist searches.
        #[arg(long = "search-height", default_value_t = 10_000)]
        search_height: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Re-check a certificate file from its contents alone.
    Verify { certificate: PathBuf },
    /// Structure of Q_q^*/(Q_q^*)^n and existence of cyclic extensions of degree n.
    Local {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        /// any, totally_ramified or unramified.
        #[arg(long, default_value = "any")]
        ramification: String,
    },
    /// Maximal subfield, Galois over k, of the algebra given by a class or a symbol.
    Split {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Irreducibility of x^n - a over a number field, globally and at a place.
    Binomial {
        /// Defining polynomial as JSON; the rationals when omitted.
        #[arg(long)]
        field: Option<String>,
        /// Element as JSON coordinates, or a single rational.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        n: u64,
        /// Also decide full local degree at the primes over q.
        #[arg(long)]
        q: Option<u64>,
    },
    /// Decide whether a primitive m-th root of unity of k is a norm from K, place by place.
    NormTest {
        /// Instance or extension file.
        input: PathBuf,
        /// Required for an extension file; overrides the instance's m.
        #[arg(long)]
        m: Option<u64>,
    },
    /// Order-p^2 nonexistence check for [K:Q] = m = p.
    NoSolutionCheck { input: PathBuf },
}

/// Result of one invocation: the exit code and what goes to standard output.
#[derive(Debug)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
}

fn out(code: i32, v: &Value) -> Invocation {
    Invocation { code, stdout: file::canonical_pretty(v) + "\n" }
}

fn input_error(msg: impl Into<String>) -> Invocation {
    out(EXIT_INPUT, &json!({"status": "error", "kind": "malformed", "message": msg.into()}))
}

fn core_error(e: &Error) -> Invocation {
    let code = if e.is_input_error() { EXIT_INPUT } else { EXIT_SCOPE };
    out(code, &json!({"status": "error", "kind": e.kind(), "message": e.to_string()}))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Invocation> {
    let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn emit(cert: &CertificateFile, dest: Option<&Path>, code: i32) -> Invocation {
    let text = cert.to_text();
    match dest {
        None => Invocation { code, stdout: text },
        Some(p) => match std::fs::write(p, &text) {
            Ok(()) => out(code, &json!({"status": status_of(&cert.payload), "out": p.display().to_string()})),
            Err(e) => input_error(format!("{}: {e}", p.display())),
        },
    }
}

fn status_of(p: &Payload) -> &'static str {
    match p {
        Payload::Obstruction(_) => "obstructed",
        _ => "solved",
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return Invocation { code, stdout: e.render().to_string() };
        }
    };
    let r = match cli.command {
        Command::Solve { input, mode, out, aux_place, search_height, seed } => {
            let opts =
                SolveOptions { seed, norm_height: search_height, twist_height: search_height, aux_prime: aux_place };
            cmd_solve(&input, mode.as_deref(), out.as_deref(), &opts)
        }
        Command::Verify { certificate } => cmd_verify(&certificate),
        Command::Local { q, n, ramification } => cmd_local(q, n, &ramification),
        Command::Split { input, out, seed } => cmd_split(&input, out.as_deref(), seed),
        Command::Binomial { field, a, n, q } => cmd_binomial(field.as_deref(), &a, n, q),
        Command::NormTest { input, m } => cmd_norm_test(&input, m),
        Command::NoSolutionCheck { input } => cmd_no_solution_check(&input),
    };
    r.unwrap_or_else(|e| e)
}

fn cmd_solve(
    input: &Path,
    mode: Option<&str>,
    dest: Option<&Path>,
    opts: &SolveOptions,
) -> Result<Invocation, Invocation> {
    let j: InstanceJson = read_json(input)?;
    let mode = mode.map(|s| s.parse::<Mode>()).transpose().map_err(|e| core_error(&e))?;
    let inst = ProblemInstance::from_json(&j, mode).map_err(|e| core_error(&e))?;
    let (payload, code) = match solve(&inst, opts) {
        Ok(Outcome::Solved(c)) => (Payload::Solution(c), EXIT_OK),
        Ok(Outcome::Obstructed(o)) => (Payload::Obstruction(o), EXIT_NEGATIVE),
        // a mode that does not apply may still be settled by the order-p^2 check
        Err(e @ Error::HypothesisViolated(_)) => match no_solution_check_p2(&inst) {
            Ok(Some(o)) => (Payload::Obstruction(o), EXIT_NEGATIVE),
            _ => return Err(core_error(&e)),
        },
        Err(e) => return Err(core_error(&e)),
    };
    Ok(emit(&CertificateFile::new(inst.to_json(), payload), dest, code))
}

fn cmd_verify(path: &Path) -> Result<Invocation, Invocation> {
    let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let f = CertificateFile::parse(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let report = verify_file(&f);
    let code = if report.verified { EXIT_OK } else { EXIT_NEGATIVE };
    Ok(out(code, &serde_json::to_value(&report).expect("report serializes")))
}

fn cmd_local(q: u64, n: u64, ramification: &str) -> Result<Invocation, Invocation> {
    if !is_prime(q) {
        return Err(input_error(format!("q = {q} is not prime")));
    }
    if n == 0 {
        return Err(input_error("n must be positive"));
    }
    let ram: Ramification = ramification.parse().map_err(|e| core_error(&e))?;
    let group = power_class_group(q, n);
    let verdict = exists_cyclic_extension(q, n, ram);
    let mut v = json!({
        "q": q,
        "n": n,
        "group": {
            "orders": group.orders(),
            "size": group.size(),
            "cyclic": group.is_cyclic(),
            "unit_orders": group.unit_orders(),
        },
        "ramification": ram,
        "exists": verdict.exists,
        "witness": verdict.witness,
    });
    // for prime n every nontrivial class spans a line, and lines are the cyclic degree-n extensions
    if is_prime(n) {
        v["cyclic_extensions_of_degree_n"] = json!((group.size() - 1) / (n - 1));
    }
    Ok(out(EXIT_OK, &v))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SplitInput {
    extension: ExtensionJson,
    #[serde(default)]
    class: Option<BrauerClassJson>,
    #[serde(default)]
    symbol: Option<SymbolAlgebraJson>,
}

fn cmd_split(input: &Path, dest: Option<&Path>, seed: u64) -> Result<Invocation, Invocation> {
    let j: SplitInput = read_json(input)?;
    let e = j.extension.build().map_err(|e| core_error(&e))?;
    let class = match (&j.class, &j.symbol) {
        (Some(c), None) => BrauerClass::from_json(e.field(), c),
        (None, Some(s)) => SymbolAlgebra::from_json(e.field(), s).and_then(|s| symbol_class(&s)),
        _ => return Err(input_error("give exactly one of \"class\" and \"symbol\"")),
    }
    .map_err(|e| core_error(&e))?;
    let opts = SolveOptions { seed, ..SolveOptions::default() };
    let c = galois_maximal_subfield_certificate(&class, &e, &opts).map_err(|e| core_error(&e))?;
    let instance = c.certificate.instance.clone();
    Ok(emit(&CertificateFile::new(instance, Payload::MaximalSubfield(Box::new(c))), dest, EXIT_OK))
}

fn parse_element(k: &gw_core::Field, s: &str) -> Result<NFElement, Invocation> {
    let coords: Vec<String> = match serde_json::from_str::<Value>(s) {
        Ok(Value::Array(xs)) => xs.into_iter().map(|x| x.as_str().map(String::from).unwrap_or(x.to_string())).collect(),
        _ => {
            parse_rational(s).map_err(|e| core_error(&e))?;
            vec![s.to_string()]
        }
    };
    NFElement::from_json(k, &coords).map_err(|e| core_error(&e))
}

fn cmd_binomial(field: Option<&str>, a: &str, n: u64, q: Option<u64>) -> Result<Invocation, Invocation> {
    let k = match field {
        None => NumberField::rationals(),
        Some(f) => {
            let cs: Vec<String> = serde_json::from_str(f).map_err(|e| input_error(format!("--field: {e}")))?;
            NumberField::new(Polynomial::from_json(&cs).map_err(|e| core_error(&e))?).map_err(|e| core_error(&e))?
        }
    };
    if n == 0 {
        return Err(input_error("n must be positive"));
    }
    let a = parse_element(&k, a)?;
    let verdict = binomial_irreducible(&a, n).map_err(|e| core_error(&e))?;
    let mut v = json!({ "n": n, "a": a.to_json(), "irreducible": verdict.irreducible, "witnesses": verdict.witnesses });
    if let Some(q) = q {
        if !is_prime(q) {
            return Err(input_error(format!("q = {q} is not prime")));
        }
        let places = gw_core::places::split_prime(&k, q).map_err(|e| core_error(&e))?;
        let mut local = Vec::new();
        for w in places {
            let full = local_binomial_irreducible(&k, &w, &a, n).map_err(|e| core_error(&e))?;
            local.push(json!({ "place": PlaceSpec::from_place(&w), "full_local_degree": full }));
        }
        v["local"] = Value::Array(local);
    }
    Ok(out(EXIT_OK, &v))
}

fn read_extension_and_m(input: &Path, m: Option<u64>) -> Result<(CyclicExtension, u64), Invocation> {
    let v: Value = read_json(input)?;
    let (ext, file_m) = if v.get("extension").is_some() {
        let j: InstanceJson = serde_json::from_value(v).map_err(|e| input_error(e.to_string()))?;
        (j.extension, Some(j.m))
    } else {
        (serde_json::from_value::<ExtensionJson>(v).map_err(|e| input_error(e.to_string()))?, None)
    };
    let m = m.or(file_m).ok_or_else(|| input_error("--m is required for an extension file"))?;
    if m == 0 {
        return Err(input_error("m must be positive"));
    }
    Ok((ext.build().map_err(|e| core_error(&e))?, m))
}

fn cmd_norm_test(input: &Path, m: Option<u64>) -> Result<Invocation, Invocation> {
    let (e, m) = read_extension_and_m(input, m)?;
    if e.base_root_of_unity(m).map_err(|e| core_error(&e))?.is_none() {
        return Err(core_error(&Error::HypothesisViolated(format!("k does not contain the {m}-th roots of unity"))));
    }
    let report = norm_test(&e, m).map_err(|e| core_error(&e))?;
    Ok(out(EXIT_OK, &json!({ "m": m, "holds": report.holds, "entries": report.entries })))
}

fn cmd_no_solution_check(input: &Path) -> Result<Invocation, Invocation> {
    let j: InstanceJson = read_json(input)?;
    let inst = ProblemInstance::from_json(&j, None).map_err(|e| core_error(&e))?;
    match no_solution_check_p2(&inst).map_err(|e| core_error(&e))? {
        Some(o) => Ok(emit(&CertificateFile::new(inst.to_json(), Payload::Obstruction(o)), None, EXIT_NEGATIVE)),
        None => Ok(out(EXIT_OK, &json!({ "status": "unknown" }))),
    }
}
