//! The `dlcmi` command line.
//!
//! Exit codes: 0 success, 1 semantic failure (the report says why), 2 input
//! error (unreadable or malformed files, bad arguments). Wherever an algebra
//! file is expected a recipe such as `mv:3`, `whtriv:3`, `ex1` or
//! `mv:2*mv:3` may be given instead.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use crate::algebra::{Element, FiniteAlgebra};
use crate::compat::{self, CompatError, CompatReport, FiniteFunction, ImplicitKind};
use crate::congruence::{self, relation_to_partition, Congruence, CongruenceError};
use crate::document::{self, DocumentError};
use crate::factory::{self, AlgebraRecipe, EnumConfig, FactoryError};
use crate::varieties::{self, VarietyTag};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Environment variable overriding the enumeration size cap.
pub const ENUM_CAP_VAR: &str = "DLCMI_ENUM_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "dlcmi",
    version,
    about = "Finite DLCMI algebras: axioms, congruences, compatible functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an algebra against the axioms of a variety.
    Check {
        algebra: String,
        #[arg(long)]
        variety: VarietyTag,
    },
    /// Compute the principal congruence θ(a,b).
    Congruence {
        algebra: String,
        a: Element,
        b: Element,
        /// Repeat to cross-check several methods.
        #[arg(long = "method", value_enum)]
        methods: Vec<CongruenceMethod>,
        /// Write the Hasse diagram of the quotient as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Compare θ(a,b) with R(a,b) for every pair of elements.
    VerifyPt {
        algebra: String,
        /// Print a line for every pair, not only disagreements.
        #[arg(long)]
        all_pairs: bool,
    },
    /// The congruence lattice as a DOT Hasse diagram.
    Conlat {
        algebra: String,
        /// Write to this file instead of standard output.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Decide whether a function is compatible.
    Compatible {
        algebra: String,
        /// A function file, a comma-separated unary table such as `0,2,2`, or `identity`.
        #[arg(long = "fn")]
        function: String,
        /// Repeat to cross-check several methods.
        #[arg(long = "method", value_enum)]
        methods: Vec<CompatMethod>,
    },
    /// Compute γ_n, S_n or G_n and re-verify its defining inequalities.
    Implicit {
        algebra: String,
        #[arg(long)]
        op: ImplicitKind,
        #[arg(long)]
        n: usize,
    },
    /// Enumerate algebras of a given size up to isomorphism.
    Enumerate {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        variety: VarietyTag,
        /// Write one algebra document per class into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CongruenceMethod {
    /// Closure under translations.
    Oracle,
    /// The t_n^k characterization.
    R,
    /// Weak Heyting specialization.
    Wh,
    /// IDCRL specialization.
    Idcrl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CompatMethod {
    Oracle,
    Pcom,
    S,
}

/// A failed command: its exit code and message.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn input(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

fn semantic(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_FAILURE,
        message: message.into(),
    }
}

impl From<CongruenceError> for Failure {
    fn from(e: CongruenceError) -> Self {
        semantic(e.to_string())
    }
}

impl From<CompatError> for Failure {
    fn from(e: CompatError) -> Self {
        match e {
            CompatError::SizeMismatch { .. }
            | CompatError::ArityMismatch { .. }
            | CompatError::TableShape { .. }
            | CompatError::OutputOutOfRange { .. }
            | CompatError::ZeroArity
            | CompatError::ZeroExponent => input(e.to_string()),
            _ => semantic(e.to_string()),
        }
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let mut buf = String::new();
    let result = execute(cli.command, &mut buf);
    let _ = out.write_all(buf.as_bytes());
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(command: Command, out: &mut String) -> Outcome {
    match command {
        Command::Check { algebra, variety } => cmd_check(&load_algebra(&algebra)?, variety, out),
        Command::Congruence {
            algebra,
            a,
            b,
            methods,
            dot,
        } => cmd_congruence(
            &load_algebra(&algebra)?,
            a,
            b,
            &methods,
            dot.as_deref(),
            out,
        ),
        Command::VerifyPt { algebra, all_pairs } => {
            cmd_verify_pt(&load_algebra(&algebra)?, all_pairs, out)
        }
        Command::Conlat { algebra, dot } => {
            cmd_conlat(&load_algebra(&algebra)?, dot.as_deref(), out)
        }
        Command::Compatible {
            algebra,
            function,
            methods,
        } => {
            let alg = load_algebra(&algebra)?;
            let f = load_function(&function, alg.size())?;
            cmd_compatible(&alg, &f, &methods, out)
        }
        Command::Implicit { algebra, op, n } => cmd_implicit(&load_algebra(&algebra)?, op, n, out),
        Command::Enumerate {
            size,
            variety,
            out: dir,
        } => cmd_enumerate(size, variety, dir.as_deref(), out),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn doc_error(path: &str, e: DocumentError) -> Failure {
    input(format!("{path}: {e}"))
}

/// A file path if one exists, otherwise a recipe.
pub fn load_algebra_arg(arg: &str) -> Result<FiniteAlgebra, String> {
    load_algebra(arg).map_err(|f| f.message)
}

fn load_algebra(arg: &str) -> Result<FiniteAlgebra, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = read_file(path)?;
        return document::parse_algebra(&text).map_err(|e| doc_error(arg, e));
    }
    match arg.parse::<AlgebraRecipe>() {
        Ok(recipe) => Ok(recipe.build()),
        Err(_) => Err(input(format!("{arg}: no such file, and not a recipe (mv:N, whtriv:N, bool:K, singleton, ex1, joined by *)"))),
    }
}

fn load_function(arg: &str, size: usize) -> Result<FiniteFunction, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = read_file(path)?;
        return document::parse_function(&text, size).map_err(|e| doc_error(arg, e));
    }
    if arg == "identity" {
        return Ok(FiniteFunction::identity(size));
    }
    let table: Result<Vec<Element>, _> = arg
        .split(',')
        .map(|s| s.trim().parse::<Element>())
        .collect();
    match table {
        Ok(table) => Ok(FiniteFunction::unary(size, table)?),
        Err(_) => Err(input(format!(
            "{arg}: no such file, and not a table like 0,2,2"
        ))),
    }
}

fn check_element(alg: &FiniteAlgebra, x: Element) -> Result<(), Failure> {
    if x < alg.size() {
        Ok(())
    } else {
        Err(input(format!("element {x} is outside 0..{}", alg.size())))
    }
}

fn display_name(alg: &FiniteAlgebra) -> String {
    alg.name()
        .map_or_else(|| format!("{}-element algebra", alg.size()), str::to_string)
}

fn tuple(xs: &[Element]) -> String {
    let parts: Vec<String> = xs.iter().map(Element::to_string).collect();
    format!("({})", parts.join(","))
}

fn cmd_check(alg: &FiniteAlgebra, tag: VarietyTag, out: &mut String) -> Outcome {
    let report = varieties::check(alg, tag).map_err(|e| semantic(e.to_string()))?;
    let name = display_name(alg);
    if report.passed {
        writeln!(out, "PASS {tag}: {name}").unwrap();
        return Ok(EXIT_OK);
    }
    writeln!(
        out,
        "FAIL {tag}: {name}, {} axiom(s) violated",
        report.failures.len()
    )
    .unwrap();
    const VARS: [&str; 4] = ["x", "y", "z", "w"];
    for f in &report.failures {
        let values: Vec<String> = f
            .witness
            .iter()
            .enumerate()
            .map(|(i, v)| format!("{}={}", VARS.get(i).copied().unwrap_or("v"), v))
            .collect();
        let what = varieties::describe(f.axiom);
        if what.is_empty() {
            writeln!(out, "  {} fails at {}", f.axiom, values.join(", ")).unwrap();
        } else {
            writeln!(out, "  {} [{what}] fails at {}", f.axiom, values.join(", ")).unwrap();
        }
    }
    Ok(EXIT_FAILURE)
}

fn relation_congruence(
    alg: &FiniteAlgebra,
    a: Element,
    b: Element,
    member: impl Fn(Element, Element) -> bool,
) -> Result<Congruence, Failure> {
    let rel: Vec<Vec<bool>> = alg
        .elements()
        .map(|c| alg.elements().map(|d| member(c, d)).collect())
        .collect();
    relation_to_partition(&rel).map_err(|detail| {
        semantic(format!(
            "relation for ({a},{b}) is not an equivalence: {detail}"
        ))
    })
}

fn congruence_by(
    alg: &FiniteAlgebra,
    method: CongruenceMethod,
    a: Element,
    b: Element,
) -> Result<Congruence, Failure> {
    match method {
        CongruenceMethod::Oracle => Ok(congruence::principal_oracle(alg, a, b)),
        CongruenceMethod::R => Ok(congruence::r_congruence(alg, a, b)?),
        CongruenceMethod::Wh => {
            congruence::require_wh(alg)?;
            relation_congruence(alg, a, b, |c, d| {
                congruence::wh_membership(alg, a, b, c, d)
                    .expect("checked")
                    .is_some()
            })
        }
        CongruenceMethod::Idcrl => {
            congruence::require_idcrl(alg)?;
            relation_congruence(alg, a, b, |c, d| {
                congruence::idcrl_membership(alg, a, b, c, d)
                    .expect("checked")
                    .is_some()
            })
        }
    }
}

fn method_name(m: CongruenceMethod) -> &'static str {
    match m {
        CongruenceMethod::Oracle => "oracle",
        CongruenceMethod::R => "r",
        CongruenceMethod::Wh => "wh",
        CongruenceMethod::Idcrl => "idcrl",
    }
}

fn cmd_congruence(
    alg: &FiniteAlgebra,
    a: Element,
    b: Element,
    methods: &[CongruenceMethod],
    dot: Option<&Path>,
    out: &mut String,
) -> Outcome {
    check_element(alg, a)?;
    check_element(alg, b)?;
    let methods = if methods.is_empty() {
        vec![CongruenceMethod::Oracle]
    } else {
        methods.to_vec()
    };
    let mut results = Vec::new();
    for &m in &methods {
        results.push((m, congruence_by(alg, m, a, b)?));
    }
    let mut code = EXIT_OK;
    if results.len() == 1 {
        writeln!(out, "{}", results[0].1).unwrap();
    } else {
        for (m, c) in &results {
            writeln!(out, "{}: {c}", method_name(*m)).unwrap();
        }
        if results.iter().all(|(_, c)| *c == results[0].1) {
            writeln!(out, "AGREE").unwrap();
        } else {
            writeln!(out, "DISAGREE").unwrap();
            code = EXIT_FAILURE;
        }
    }
    if let Some(path) = dot {
        write_file(path, &quotient_dot(alg, &results[0].1))?;
    }
    Ok(code)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Nodes `n0, n1, …` in the given order with their labels; edges are the
/// covering pairs of `below`, drawn upwards.
fn hasse_dot(graph: &str, labels: &[String], below: impl Fn(usize, usize) -> bool) -> String {
    let k = labels.len();
    let lt = |i: usize, j: usize| i != j && below(i, j);
    let mut text = format!("digraph {graph} {{\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, label) in labels.iter().enumerate() {
        writeln!(text, "  n{i} [label=\"{}\"];", dot_escape(label)).unwrap();
    }
    for i in 0..k {
        for j in 0..k {
            if lt(i, j) && !(0..k).any(|m| lt(i, m) && lt(m, j)) {
                writeln!(text, "  n{i} -> n{j};").unwrap();
            }
        }
    }
    text.push_str("}\n");
    text
}

/// Hasse diagram of the quotient lattice `A/θ`, one node per block.
pub fn quotient_dot(alg: &FiniteAlgebra, theta: &Congruence) -> String {
    let blocks = theta.blocks();
    let labels: Vec<String> = blocks
        .iter()
        .map(|b| {
            let parts: Vec<String> = b.iter().map(Element::to_string).collect();
            format!("{{{}}}", parts.join(","))
        })
        .collect();
    hasse_dot("quotient", &labels, |i, j| {
        let (x, y) = (blocks[i][0], blocks[j][0]);
        theta.relates(alg.meet(x, y), x)
    })
}

/// Hasse diagram of `Con(A)`, edges from finer to coarser.
pub fn conlat_dot(cons: &[Congruence]) -> String {
    let labels: Vec<String> = cons.iter().map(Congruence::to_string).collect();
    hasse_dot("conlat", &labels, |i, j| cons[i].refines(&cons[j]))
}

fn cmd_verify_pt(alg: &FiniteAlgebra, all_pairs: bool, out: &mut String) -> Outcome {
    let start = Instant::now();
    let view = congruence::DlcmiView::new(alg)?;
    let report = view.verify_pt();
    if all_pairs {
        for p in &report.pairs {
            let verdict = if p.agree { "agree" } else { "DISAGREE" };
            writeln!(out, "({},{}): {} block(s), {verdict}", p.a, p.b, p.blocks).unwrap();
        }
    }
    for d in &report.disagreements {
        writeln!(
            out,
            "disagreement: generator ({},{}), pair ({},{}): closure {}, R {}",
            d.a, d.b, d.c, d.d, d.in_closure, d.in_r
        )
        .unwrap();
    }
    let agreeing = report.pairs.iter().filter(|p| p.agree).count();
    writeln!(out, "{} pairs, {agreeing} agree", report.pairs.len()).unwrap();
    writeln!(
        out,
        "elapsed: {:.3} ms",
        start.elapsed().as_secs_f64() * 1e3
    )
    .unwrap();
    Ok(if report.all_agree() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}

fn cmd_conlat(alg: &FiniteAlgebra, dot: Option<&Path>, out: &mut String) -> Outcome {
    let cons = congruence::all_congruences(alg);
    let text = conlat_dot(&cons);
    match dot {
        Some(path) => {
            write_file(path, &text)?;
            writeln!(out, "{} congruences", cons.len()).unwrap();
        }
        None => out.push_str(&text),
    }
    Ok(EXIT_OK)
}

fn compat_by(
    alg: &FiniteAlgebra,
    f: &FiniteFunction,
    method: CompatMethod,
) -> Result<CompatReport, Failure> {
    Ok(match method {
        CompatMethod::Oracle => compat::is_compatible_oracle(alg, f)?,
        CompatMethod::Pcom => compat::is_compatible_pcom(alg, f)?,
        CompatMethod::S => compat::idcrl_compat_s(alg, f)?,
    })
}

fn describe_report(f: &FiniteFunction, r: &CompatReport) -> String {
    match &r.witness {
        None => "compatible".to_string(),
        Some(w) => format!(
            "not compatible: witness {} ~ {} under {}, images {} and {} are not related",
            tuple(&w.left),
            tuple(&w.right),
            w.congruence,
            f.apply(&w.left),
            f.apply(&w.right)
        ),
    }
}

fn cmd_compatible(
    alg: &FiniteAlgebra,
    f: &FiniteFunction,
    methods: &[CompatMethod],
    out: &mut String,
) -> Outcome {
    let methods = if methods.is_empty() {
        vec![CompatMethod::Oracle]
    } else {
        methods.to_vec()
    };
    let mut verdicts = Vec::new();
    for &m in &methods {
        let r = compat_by(alg, f, m)?;
        let name = format!("{m:?}").to_lowercase();
        writeln!(out, "{name}: {}", describe_report(f, &r)).unwrap();
        verdicts.push(r.compatible);
    }
    let agree = verdicts.iter().all(|&v| v == verdicts[0]);
    if verdicts.len() > 1 {
        writeln!(out, "{}", if agree { "AGREE" } else { "DISAGREE" }).unwrap();
    }
    Ok(if agree && verdicts[0] {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}

fn cmd_implicit(alg: &FiniteAlgebra, kind: ImplicitKind, n: usize, out: &mut String) -> Outcome {
    let op = compat::implicit(alg, kind, n)?;
    writeln!(out, "{kind} n={n}").unwrap();
    for x in alg.elements() {
        writeln!(out, "{x} ↦ {}", op.function.apply1(x)).unwrap();
    }
    for c in &op.checks {
        match &c.counterexample {
            None => writeln!(out, "{}: verified", c.name).unwrap(),
            Some(t) => writeln!(out, "{}: FAILS at {}", c.name, tuple(t)).unwrap(),
        }
    }
    Ok(if op.all_hold() { EXIT_OK } else { EXIT_FAILURE })
}

/// Hex SHA-256 of the tables, unit and bottom (the name is excluded).
pub fn canonical_hash(alg: &FiniteAlgebra) -> String {
    let mut doc = document::AlgebraDocument::from_algebra(alg);
    doc.name = None;
    let bytes = serde_json::to_vec(&doc).expect("documents serialize");
    Sha256::digest(&bytes)
        .iter()
        .fold(String::new(), |mut s, b| {
            write!(s, "{b:02x}").unwrap();
            s
        })
}

fn enum_config() -> Result<EnumConfig, Failure> {
    match std::env::var(ENUM_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(|cap| EnumConfig { cap })
            .map_err(|_| input(format!("{ENUM_CAP_VAR}={v} is not a non-negative integer"))),
        Err(_) => Ok(EnumConfig::default()),
    }
}

fn cmd_enumerate(size: usize, tag: VarietyTag, dir: Option<&Path>, out: &mut String) -> Outcome {
    let config = enum_config()?;
    let algebras = factory::enumerate_with(size, tag, &config).map_err(|e| match e {
        FactoryError::CapExceeded { .. } => input(format!("{e}; raise it with {ENUM_CAP_VAR}")),
        _ => input(e.to_string()),
    })?;
    if let Some(dir) = dir {
        std::fs::create_dir_all(dir).map_err(|e| input(format!("{}: {e}", dir.display())))?;
        for alg in &algebras {
            let hash = canonical_hash(alg);
            let path = dir.join(format!("{tag}-{size}-{}.json", &hash[..16]));
            write_file(&path, &document::algebra_to_json(alg))?;
        }
    }
    writeln!(out, "count: {}", algebras.len()).unwrap();
    Ok(EXIT_OK)
}
