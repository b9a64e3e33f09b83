use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use dcollapse::format::{parse_certificate, parse_cplx, write_certificate, write_cplx, Registry};
use dcollapse::gadgets::{build_bad_complex, build_gadget, cached_connector, GadgetKind};
use dcollapse::reduction::{
    build_reduction, certificate_from_assignment, parse_dimacs, sat_oracle,
};
use dcollapse::{
    check_certificate, collapsible_faces, decide, greedy_decide, Answer, CertificateError, Complex,
    Face, OrderPolicy, SymbolTable, Verdict,
};
use serde_json::{json, Map, Value};

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "dcollapse",
    version,
    about = "Decide and certify d-collapsibility of simplicial complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a complex is d-collapsible.
    Decide {
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Search node expansions before answering "unknown".
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        /// Random face order for greedy.
        #[arg(long)]
        seed: Option<u64>,
        /// Faces greedy collapses first when possible: a role tag or comma-separated vertex names.
        #[arg(long)]
        prefer: Vec<String>,
        /// Write the certificate here on a "yes".
        #[arg(long)]
        cert_out: Option<PathBuf>,
        file: PathBuf,
    },
    /// Check a collapse certificate against a complex.
    Certify {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        cert: PathBuf,
        file: PathBuf,
    },
    /// List the d-collapsible faces.
    Faces {
        #[arg(long)]
        d: usize,
        file: PathBuf,
    },
    /// Write a generated complex with role headers.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
        #[arg(short, long, global = true)]
        out: Option<PathBuf>,
    },
    /// Build the complex of a 3-CNF formula.
    Reduce {
        #[arg(long)]
        d: usize,
        file: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        /// Certificate for a satisfiable formula (brute-force search, at most 30 variables).
        #[arg(long)]
        cert_out: Option<PathBuf>,
        /// JSON summary.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Brute-force satisfiability of a 3-CNF formula.
    Sat { file: PathBuf },
    /// Face counts of a complex.
    Stats {
        file: PathBuf,
        /// JSON summary.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Full simplex on vertices 1..n.
    Simplex {
        #[arg(long)]
        n: usize,
    },
    Connector {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        t: usize,
    },
    Bad {
        #[arg(long)]
        d: usize,
    },
    Gadget {
        #[arg(long, value_parser = parse_kind)]
        kind: GadgetKind,
        #[arg(long)]
        d: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Greedy,
    Search,
    Auto,
}

fn parse_kind(s: &str) -> Result<GadgetKind, String> {
    GadgetKind::parse(s).ok_or_else(|| format!("unknown gadget kind {s:?} (var, clause, merge)"))
}

/// An input or usage failure, reported on stderr with exit code 3.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_complex(path: &Path) -> Result<(Complex, Registry), Failure> {
    parse_cplx(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn check_d(d: usize) -> Result<(), Failure> {
    if d == 0 {
        return Err(Failure("--d must be at least 1".into()));
    }
    Ok(())
}

fn resolve_face(k: &Complex, registry: &Registry, spec: &str) -> Result<Face, Failure> {
    if let Some(f) = registry.get(spec) {
        return Ok(f.clone());
    }
    let names: Vec<&str> = spec
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    k.named_face(&names)
        .filter(|f| k.contains(f))
        .ok_or_else(|| {
            Failure(format!(
                "{spec:?} is neither a role tag nor a face of the complex"
            ))
        })
}

fn answer_word(a: Answer) -> &'static str {
    match a {
        Answer::Yes => "yes",
        Answer::No => "no",
        Answer::Unknown => "unknown",
    }
}

fn exit_for(a: Answer) -> u8 {
    match a {
        Answer::Yes => EXIT_YES,
        Answer::No => EXIT_NO,
        Answer::Unknown => EXIT_UNKNOWN,
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_decide(
    d: usize,
    method: Method,
    budget: u64,
    seed: Option<u64>,
    prefer: &[String],
    cert_out: Option<&Path>,
    file: &Path,
) -> Result<u8, Failure> {
    check_d(d)?;
    let (k, registry) = load_complex(file)?;
    let greedy = match method {
        Method::Greedy => true,
        Method::Search => false,
        Method::Auto => d <= 2 && prefer.is_empty(),
    };
    if !greedy && !prefer.is_empty() {
        return Err(Failure("--prefer applies to --method greedy".into()));
    }
    let (name, v): (&str, Verdict) = if greedy {
        let policy = if !prefer.is_empty() {
            let faces = prefer
                .iter()
                .map(|p| resolve_face(&k, &registry, p))
                .collect::<Result<Vec<_>, _>>()?;
            OrderPolicy::Prioritized(faces)
        } else {
            seed.map_or(OrderPolicy::Lexicographic, OrderPolicy::SeededRandom)
        };
        ("greedy", greedy_decide(&k, d, &policy))
    } else {
        ("search", decide(&k, d, budget))
    };
    println!("answer: {}", answer_word(v.answer));
    println!(
        "method: {name}{}",
        if v.exact {
            ""
        } else {
            " (inexact: greedy is incomplete for d >= 3)"
        }
    );
    println!("expansions: {}", v.expansions);
    if let Some(w) = &v.stuck_witness {
        println!(
            "stuck: {} faces remain and none is {d}-collapsible; maximal faces:",
            w.len()
        );
        for m in w.maximal() {
            println!("  {}", w.face_tokens(m));
        }
    }
    if let (Some(cert), Some(path)) = (&v.certificate, cert_out) {
        write(path, &write_certificate(cert, &k))?;
        println!("certificate: {}", path.display());
    }
    Ok(exit_for(v.answer))
}

fn cmd_certify(d: usize, cert: &Path, file: &Path) -> Result<u8, Failure> {
    check_d(d)?;
    let (k, _) = load_complex(file)?;
    let c = parse_certificate(&read(cert)?, &k)
        .map_err(|e| Failure(format!("{}: {e}", cert.display())))?;
    if c.d != d {
        return Err(Failure(format!(
            "certificate declares d = {}, --d is {d}",
            c.d
        )));
    }
    match check_certificate(&k, &c) {
        Ok(()) => {
            println!("ok: {} steps collapse the complex to nothing", c.len());
            Ok(EXIT_YES)
        }
        Err(CertificateError::Step { index, source }) => {
            let step = &c.steps[index];
            println!(
                "rejected: step {} ({}): {source}",
                index + 1,
                k.face_tokens(&step.sigma)
            );
            Ok(EXIT_NO)
        }
        Err(e) => {
            println!("rejected: {e}");
            Ok(EXIT_NO)
        }
    }
}

fn cmd_faces(d: usize, file: &Path) -> Result<u8, Failure> {
    check_d(d)?;
    let (k, _) = load_complex(file)?;
    for f in collapsible_faces(&k, d) {
        println!("{}", k.face_tokens(&f));
    }
    Ok(EXIT_YES)
}

fn cmd_gen(what: &GenCommand, out: Option<&Path>) -> Result<u8, Failure> {
    let (k, registry, comment) = match *what {
        GenCommand::Simplex { n } => {
            if n == 0 {
                return Err(Failure("--n must be at least 1".into()));
            }
            let mut symbols = SymbolTable::new();
            for i in 1..=n {
                symbols.push_named(i.to_string());
            }
            (
                Complex::simplex(n).with_symbols(symbols),
                Registry::new(),
                format!("simplex on {n} vertices"),
            )
        }
        GenCommand::Connector { d, t } => {
            let c = cached_connector(d, t)?;
            let bp = &c.blueprint;
            (
                bp.complex.clone(),
                bp.registry(),
                format!("connector d={d} t={t}"),
            )
        }
        GenCommand::Bad { d } => {
            let b = build_bad_complex(d)?;
            (
                b.complex.clone(),
                b.registry(),
                format!("bad complex d={d}"),
            )
        }
        GenCommand::Gadget { kind, d } => {
            let g = build_gadget(kind, d)?;
            (
                g.complex.clone(),
                g.registry(),
                format!("{kind:?} gadget d={d}").to_lowercase(),
            )
        }
    };
    let text = write_cplx(&k, &registry, &[comment]);
    match out {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(EXIT_YES)
}

fn cmd_reduce(
    d: usize,
    file: &Path,
    out: &Path,
    cert_out: Option<&Path>,
    json: Option<&Path>,
) -> Result<u8, Failure> {
    let formula =
        parse_dimacs(&read(file)?).map_err(|e| Failure(format!("{}: {e}", file.display())))?;
    let start = Instant::now();
    let red = build_reduction(&formula, d)?;
    let generation_ms = start.elapsed().as_millis() as u64;
    let comment = format!(
        "3-CNF reduction d={d} m={} n={}",
        formula.num_vars,
        formula.num_clauses()
    );
    write(out, &write_cplx(&red.complex, &red.registry, &[comment]))?;
    let stats = red.stats();
    println!("faces: {}", stats.total_faces);

    let mut satisfiable = Value::Null;
    let mut cert_steps = Value::Null;
    if let Some(path) = cert_out {
        match sat_oracle(&formula) {
            Ok(Some(a)) => {
                let rc = certificate_from_assignment(&red, &a)?;
                write(path, &write_certificate(&rc.certificate, &red.complex))?;
                satisfiable = Value::Bool(true);
                cert_steps = json!(rc.certificate.len());
                println!(
                    "certificate: {} ({} steps)",
                    path.display(),
                    rc.certificate.len()
                );
            }
            Ok(None) => {
                satisfiable = Value::Bool(false);
                println!("unsatisfiable: no certificate written");
            }
            Err(e) => eprintln!("warning: {e}; no certificate written"),
        }
    }
    if let Some(path) = json {
        let mut obj = Map::new();
        obj.insert("m".into(), json!(stats.num_vars));
        obj.insert("n".into(), json!(stats.num_clauses));
        obj.insert("d".into(), json!(stats.d));
        obj.insert("total_faces".into(), json!(stats.total_faces));
        obj.insert("generation_ms".into(), json!(generation_ms));
        obj.insert("satisfiable".into(), satisfiable);
        obj.insert("certificate_steps".into(), cert_steps);
        for (id, t) in &stats.connection_t {
            obj.insert(format!("t.{id}"), json!(t));
        }
        write(
            path,
            &format!("{}\n", serde_json::to_string_pretty(&Value::Object(obj))?),
        )?;
    }
    Ok(EXIT_YES)
}

fn cmd_sat(file: &Path) -> Result<u8, Failure> {
    let formula =
        parse_dimacs(&read(file)?).map_err(|e| Failure(format!("{}: {e}", file.display())))?;
    match sat_oracle(&formula)? {
        Some(a) => {
            println!("s SATISFIABLE");
            let lits: Vec<String> = a
                .iter()
                .enumerate()
                .map(|(j, &v)| {
                    if v {
                        format!("{}", j + 1)
                    } else {
                        format!("-{}", j + 1)
                    }
                })
                .collect();
            println!("v {} 0", lits.join(" "));
            Ok(EXIT_YES)
        }
        None => {
            println!("s UNSATISFIABLE");
            Ok(EXIT_NO)
        }
    }
}

fn cmd_stats(file: &Path, json_path: Option<&Path>) -> Result<u8, Failure> {
    let (k, _) = load_complex(file)?;
    let f_vector = k.f_vector();
    let mut maximal_by_dim = vec![0usize; f_vector.len()];
    for m in k.maximal() {
        maximal_by_dim[m.dim()] += 1;
    }
    println!("vertices: {}", k.vertex_count());
    println!("faces: {}", k.len());
    match k.dim() {
        Some(dim) => println!("dimension: {dim}"),
        None => println!("dimension: empty"),
    }
    for (i, (f, m)) in f_vector.iter().zip(&maximal_by_dim).enumerate() {
        println!("dim {i}: {f} faces, {m} maximal");
    }
    println!("maximal faces: {}", k.maximal().len());
    if let Some(path) = json_path {
        let v = json!({
            "vertices": k.vertex_count(),
            "faces": k.len(),
            "dimension": k.dim(),
            "f_vector": f_vector,
            "maximal": k.maximal().len(),
            "maximal_by_dim": maximal_by_dim,
        });
        write(path, &format!("{}\n", serde_json::to_string_pretty(&v)?))?;
    }
    Ok(EXIT_YES)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Decide {
            d,
            method,
            budget,
            seed,
            prefer,
            cert_out,
            file,
        } => cmd_decide(
            *d,
            *method,
            *budget,
            *seed,
            prefer,
            cert_out.as_deref(),
            file,
        ),
        Command::Certify { d, cert, file } => cmd_certify(*d, cert, file),
        Command::Faces { d, file } => cmd_faces(*d, file),
        Command::Gen { what, out } => cmd_gen(what, out.as_deref()),
        Command::Reduce {
            d,
            file,
            out,
            cert_out,
            json,
        } => cmd_reduce(*d, file, out, cert_out.as_deref(), json.as_deref()),
        Command::Sat { file } => cmd_sat(file),
        Command::Stats { file, json } => cmd_stats(file, json.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            // clap's rendering already starts with "error:"
            eprint!("{e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
