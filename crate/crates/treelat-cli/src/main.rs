//! Command-line front end for the tree lattice and its algebras. Every
//! subcommand calls exactly one library operation and renders the result as
//! canonical text, JSON, or DOT. Output is byte-identical across runs for
//! identical inputs; exit codes are 0 on success, 1 on domain errors or
//! failed verification checks, 2 on usage errors.

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use treelat_core::{
    atoms, characteristic_polynomial, coproduct_name, covers, decode, decompose_pair, dend_add,
    dend_mul, encode, enumerate_trees, grove_op, invariant_count, is_primitive, join,
    left_modular_chain, meet, moebius, parse_name, parse_tree, tri_op_names, universal_expression,
    Grove, GroveOpKind, LinComb, MoebiusMode, Name, Poset, Suite, TriOpKind,
};

#[derive(Parser)]
#[command(name = "treelat", version, about = "Planar tree lattice and arithmetic toolkit")]
struct Cli {
    /// Output rendering; `dot` is only meaningful for `order`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Print the union sign in text output as a plain "u".
    #[arg(long, global = true)]
    ascii: bool,

    /// Write the output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Cmd {
    /// List all trees of one degree, one literal per line.
    Enumerate {
        #[arg(long)]
        degree: usize,
    },
    /// Print the name of a tree.
    Encode { tree: String },
    /// Print the tree of a name.
    Decode { name: String },
    /// Print the Hasse diagram of one degree in DOT.
    Order {
        #[arg(long)]
        degree: usize,
    },
    /// Greatest lower bound of two same-degree elements.
    Meet { a: String, b: String },
    /// Least upper bound of two same-degree elements.
    Join { a: String, b: String },
    /// Elements covering one element, one per line.
    Covers { name: String },
    /// Moebius number of the interval from the bottom element.
    Moebius {
        name: String,
        #[arg(long, value_enum, default_value_t = Mode::Closed)]
        mode: Mode,
    },
    /// Atoms of one degree, one per line.
    Atoms {
        #[arg(long)]
        degree: usize,
    },
    /// Left-modular maximal chain of one degree, bottom to top.
    Chain {
        #[arg(long)]
        degree: usize,
    },
    /// Characteristic polynomial of one degree.
    Charpoly {
        #[arg(long)]
        degree: usize,
    },
    /// Interval sum of two elements.
    Star { a: String, b: String },
    /// One of the three splitting operations on two elements.
    Op {
        #[arg(long, value_enum)]
        kind: OpKind,
        a: String,
        b: String,
    },
    /// Expression writing a tree in terms of the one-vertex tree.
    Omega { tree: String },
    /// Grove addition.
    Add { a: String, b: String },
    /// One of the three set-valued operations on two groves.
    Groveop {
        #[arg(long, value_enum)]
        kind: GroveKind,
        a: String,
        b: String,
    },
    /// Grove multiplication.
    Mul { a: String, b: String },
    /// Unique sandwich factors of an element over a degree split.
    Decompose { name: String, n: usize, m: usize },
    /// Coproduct of one basis element.
    Coproduct { name: String },
    /// Report whether a basis element is primitive.
    Primcheck { name: String },
    /// Number of trees fixed under the reversal involution.
    Invariants {
        #[arg(long)]
        degree: usize,
    },
    /// Run a verification suite and print one line per check.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Clamp every check to this degree; omit for the full ranges.
        #[arg(long)]
        max_degree: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Closed,
    Brute,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpKind {
    Prec,
    Succ,
    Bullet,
}

impl OpKind {
    fn tri(self) -> TriOpKind {
        match self {
            OpKind::Prec => TriOpKind::Prec,
            OpKind::Succ => TriOpKind::Succ,
            OpKind::Bullet => TriOpKind::Bullet,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GroveKind {
    Left,
    Right,
    Mid,
}

impl GroveKind {
    fn grove(self) -> GroveOpKind {
        match self {
            GroveKind::Left => GroveOpKind::Left,
            GroveKind::Right => GroveOpKind::Right,
            GroveKind::Mid => GroveOpKind::Mid,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Counting,
    Lattice,
    Trialgebra,
    Grove,
    Hopf,
}

enum RunError {
    Domain(treelat_core::Error),
    Usage(String),
}

impl From<treelat_core::Error> for RunError {
    fn from(e: treelat_core::Error) -> RunError {
        RunError::Domain(e)
    }
}

type RunResult = Result<(String, bool), RunError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((output, success)) => {
            let text = if cli.ascii { output.replace('∪', "u") } else { output };
            if let Some(path) = &cli.out {
                if let Err(e) = fs::write(path, text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            } else {
                print!("{text}");
            }
            if success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(RunError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(RunError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Accept an element literal in either spelling: tree literals use only
/// `o ( )`, anything else is parsed as a name.
fn literal_to_name(s: &str) -> Result<Name, treelat_core::Error> {
    let t = s.trim();
    if !t.is_empty() && t.bytes().all(|b| matches!(b, b'o' | b'(' | b')')) {
        Ok(encode(&parse_tree(t)?))
    } else {
        parse_name(t)
    }
}

/// Groves are written as element literals joined by the union sign (or a
/// plain "u", which no literal contains); "∅" is the empty grove.
fn literal_to_grove(s: &str) -> Result<Grove, treelat_core::Error> {
    let t = s.trim();
    if t.is_empty() || t == "∅" {
        return Ok(Grove::empty());
    }
    let mut members = BTreeSet::new();
    for part in t.split(['∪', 'u']) {
        members.insert(literal_to_name(part)?);
    }
    let degree = members.iter().next().expect("nonempty").degree();
    Grove::new(degree, members)
}

fn require_text(format: Format, what: &str) -> Result<(), RunError> {
    if format == Format::Dot {
        return Err(RunError::Usage(format!(
            "--format dot is only available for `order`, not `{what}`"
        )));
    }
    Ok(())
}

fn render_str(format: Format, value: &str) -> String {
    match format {
        Format::Json => format!("{}\n", json!(value)),
        _ => format!("{value}\n"),
    }
}

fn render_list(format: Format, values: &[String]) -> String {
    match format {
        Format::Json => format!("{}\n", json!(values)),
        _ => {
            let mut out = String::new();
            for v in values {
                out.push_str(v);
                out.push('\n');
            }
            out
        }
    }
}

fn render_int(format: Format, value: i64) -> String {
    match format {
        Format::Json => format!("{}\n", json!(value)),
        _ => format!("{value}\n"),
    }
}

fn render_serialize<T: serde::Serialize + std::fmt::Display>(format: Format, value: &T) -> String {
    match format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string(value).expect("serialization cannot fail")
        ),
        _ => format!("{value}\n"),
    }
}

fn run(cli: &Cli) -> RunResult {
    let format = cli.format;
    let ok = |s: String| Ok((s, true));
    match &cli.command {
        Cmd::Enumerate { degree } => {
            require_text(format, "enumerate")?;
            let trees = enumerate_trees(*degree)?;
            let literals: Vec<String> = trees.iter().map(|t| t.to_string()).collect();
            ok(render_list(format, &literals))
        }
        Cmd::Encode { tree } => {
            require_text(format, "encode")?;
            let name = encode(&parse_tree(tree.trim())?);
            ok(render_str(format, &name.to_string()))
        }
        Cmd::Decode { name } => {
            require_text(format, "decode")?;
            let tree = decode(&parse_name(name.trim())?)?;
            ok(render_str(format, &tree.to_string()))
        }
        Cmd::Order { degree } => {
            if format == Format::Json {
                return Err(RunError::Usage(
                    "`order` emits DOT; --format json is not available".into(),
                ));
            }
            ok(Poset::new(*degree)?.hasse_dot())
        }
        Cmd::Meet { a, b } => {
            require_text(format, "meet")?;
            let m = meet(&literal_to_name(a)?, &literal_to_name(b)?)?;
            ok(render_str(format, &m.to_string()))
        }
        Cmd::Join { a, b } => {
            require_text(format, "join")?;
            let j = join(&literal_to_name(a)?, &literal_to_name(b)?)?;
            ok(render_str(format, &j.to_string()))
        }
        Cmd::Covers { name } => {
            require_text(format, "covers")?;
            let ups = covers(&literal_to_name(name)?)?;
            let literals: Vec<String> = ups.iter().map(|v| v.to_string()).collect();
            ok(render_list(format, &literals))
        }
        Cmd::Moebius { name, mode } => {
            require_text(format, "moebius")?;
            let m = match mode {
                Mode::Closed => MoebiusMode::Closed,
                Mode::Brute => MoebiusMode::Brute,
            };
            ok(render_int(format, moebius(&literal_to_name(name)?, m)?))
        }
        Cmd::Atoms { degree } => {
            require_text(format, "atoms")?;
            let list = atoms(*degree)?;
            let literals: Vec<String> = list.iter().map(|v| v.to_string()).collect();
            ok(render_list(format, &literals))
        }
        Cmd::Chain { degree } => {
            require_text(format, "chain")?;
            let chain = left_modular_chain(*degree)?;
            let literals: Vec<String> = chain.iter().map(|v| v.to_string()).collect();
            ok(render_list(format, &literals))
        }
        Cmd::Charpoly { degree } => {
            require_text(format, "charpoly")?;
            let p = characteristic_polynomial(*degree)?;
            ok(render_str(format, &p.to_string()))
        }
        Cmd::Star { a, b } => {
            require_text(format, "star")?;
            let s = treelat_core::star(&literal_to_name(a)?, &literal_to_name(b)?)?;
            ok(render_serialize(format, &s))
        }
        Cmd::Op { kind, a, b } => {
            require_text(format, "op")?;
            let s = tri_op_names(kind.tri(), &literal_to_name(a)?, &literal_to_name(b)?)?;
            ok(render_serialize(format, &s))
        }
        Cmd::Omega { tree } => {
            require_text(format, "omega")?;
            let t = decode(&literal_to_name(tree)?)?;
            let e = universal_expression(&t)?;
            ok(render_str(format, &e.to_string()))
        }
        Cmd::Add { a, b } => {
            require_text(format, "add")?;
            let g = dend_add(&literal_to_grove(a)?, &literal_to_grove(b)?)?;
            ok(render_serialize(format, &g))
        }
        Cmd::Groveop { kind, a, b } => {
            require_text(format, "groveop")?;
            let g = grove_op(kind.grove(), &literal_to_grove(a)?, &literal_to_grove(b)?)?;
            ok(render_serialize(format, &g))
        }
        Cmd::Mul { a, b } => {
            require_text(format, "mul")?;
            let g = dend_mul(&literal_to_grove(a)?, &literal_to_grove(b)?)?;
            ok(render_serialize(format, &g))
        }
        Cmd::Decompose { name, n, m } => {
            require_text(format, "decompose")?;
            let (u, v) = decompose_pair(&literal_to_name(name)?, *n, *m)?;
            match format {
                Format::Json => ok(format!(
                    "{}\n",
                    json!({"left": u.to_string(), "right": v.to_string()})
                )),
                _ => ok(format!("{u}\n{v}\n")),
            }
        }
        Cmd::Coproduct { name } => {
            require_text(format, "coproduct")?;
            let d = coproduct_name(&literal_to_name(name)?)?;
            ok(render_serialize(format, &*d))
        }
        Cmd::Primcheck { name } => {
            require_text(format, "primcheck")?;
            let v = literal_to_name(name)?;
            let primitive = is_primitive(&LinComb::from_name(v.clone()))?;
            match format {
                Format::Json => ok(format!(
                    "{}\n",
                    json!({"name": v.to_string(), "primitive": primitive})
                )),
                _ => ok(format!(
                    "{}\n",
                    if primitive { "primitive" } else { "not primitive" }
                )),
            }
        }
        Cmd::Invariants { degree } => {
            require_text(format, "invariants")?;
            ok(render_int(format, invariant_count(*degree)? as i64))
        }
        Cmd::Verify { suite, max_degree } => {
            require_text(format, "verify")?;
            let cap = max_degree.unwrap_or(usize::MAX);
            let suites: &[Suite] = match suite {
                SuiteArg::All => &Suite::ALL,
                SuiteArg::Counting => &[Suite::Counting],
                SuiteArg::Lattice => &[Suite::Lattice],
                SuiteArg::Trialgebra => &[Suite::Trialgebra],
                SuiteArg::Grove => &[Suite::Grove],
                SuiteArg::Hopf => &[Suite::Hopf],
            };
            let mut rows = Vec::new();
            for s in suites {
                for check in treelat_core::run_suite(*s, cap) {
                    rows.push((s.name(), check));
                }
            }
            let passed = rows.iter().filter(|(_, c)| c.passed).count();
            let success = passed == rows.len();
            // timings are dropped so identical inputs give identical bytes
            let output = match format {
                Format::Json => {
                    let items: Vec<serde_json::Value> = rows
                        .iter()
                        .map(|(suite, c)| {
                            json!({
                                "suite": suite,
                                "check": c.name,
                                "passed": c.passed,
                                "detail": c.detail,
                            })
                        })
                        .collect();
                    format!("{}\n", json!(items))
                }
                _ => {
                    let mut out = String::new();
                    for (suite, c) in &rows {
                        let status = if c.passed { "ok  " } else { "FAIL" };
                        out.push_str(&format!("{status} {suite}/{}: {}\n", c.name, c.detail));
                    }
                    out.push_str(&format!("passed {passed}/{} checks\n", rows.len()));
                    out
                }
            };
            Ok((output, success))
        }
    }
}
