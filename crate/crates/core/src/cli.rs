//! The `evalctx` command line.
//!
//! Exit codes: 0 success, 1 no match (`match` and `decompose` only),
//! 2 bad input, 3 the oracle disagrees with the matcher.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::grammar::Grammar;
use crate::matcher::{self, Bindings, Decomposition, MatchResult};
use crate::oracle;
use crate::reduction::{self, NodeStatus};
use crate::syntax::{self, load_language, LanguageDef};
use crate::term::Term;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_MATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DISAGREE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "evalctx", version, about = "Match, decompose, plug and reduce terms with evaluation contexts")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Sexpr)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Sexpr,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Whole-term matches of a pattern, one binding set per line.
    Match(MatchArgs),
    /// Decompositions whose context matches the pattern.
    Decompose(MatchArgs),
    /// Plug a term into a context.
    Plug {
        #[arg(short = 'c', long = "context")]
        context: String,
        #[arg(short = 't', long = "term")]
        term: String,
    },
    /// One reduction step under every rule of the language.
    Reduce {
        #[arg(short = 'g', long = "grammar")]
        grammar: PathBuf,
        #[arg(short = 't', long = "term")]
        term: String,
    },
    /// Breadth-first reduction graph up to a step bound.
    Trace {
        #[arg(short = 'g', long = "grammar")]
        grammar: PathBuf,
        #[arg(short = 't', long = "term")]
        term: String,
        #[arg(long = "max-steps")]
        max_steps: usize,
    },
    /// Report whether the grammar is left recursive.
    CheckGrammar {
        #[arg(short = 'g', long = "grammar")]
        grammar: PathBuf,
    },
}

#[derive(clap::Args, Debug)]
struct MatchArgs {
    #[arg(short = 'g', long = "grammar")]
    grammar: PathBuf,
    #[arg(short = 'p', long = "pattern")]
    pattern: String,
    #[arg(short = 't', long = "term")]
    term: String,
    /// Answer with the exhaustive oracle and report any disagreement with
    /// the matcher.
    #[arg(long)]
    oracle: bool,
}

struct Failure(i32, String);

fn input<E: Display>(e: E) -> Failure {
    Failure(EXIT_INPUT, e.to_string())
}

/// Runs the command line on `args` (including the program name).
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut buf = String::new();
    let code = match execute(&cli, &mut buf, err) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    };
    let _ = out.write_all(buf.as_bytes());
    code
}

fn load(path: &PathBuf) -> Result<LanguageDef, Failure> {
    load_language(path).map_err(input)
}

fn execute(cli: &Cli, out: &mut String, err: &mut dyn Write) -> Result<i32, Failure> {
    match &cli.command {
        Command::Match(a) => run_match(a, cli.format, false, out, err),
        Command::Decompose(a) => run_match(a, cli.format, true, out, err),
        Command::Plug { context, term } => {
            let c = syntax::parse_context(context).map_err(input)?;
            let t = syntax::parse_term(term).map_err(input)?;
            let r = c.plug(t);
            match cli.format {
                Format::Sexpr => line(out, &r),
                Format::Json => line(out, json!({ "term": r.to_string() })),
            }
            Ok(EXIT_OK)
        }
        Command::Reduce { grammar, term } => {
            let lang = load(grammar)?;
            let t = syntax::parse_term(term).map_err(input)?;
            let steps = reduction::step(&lang.grammar, &lang.rules, &t).map_err(input)?;
            match cli.format {
                Format::Sexpr => steps.iter().for_each(|(rule, t)| line(out, format!("({rule} {t})"))),
                Format::Json => {
                    let results: Vec<Value> =
                        steps.iter().map(|(rule, t)| json!({ "rule": rule, "term": t.to_string() })).collect();
                    line(out, json!({ "results": results }));
                }
            }
            Ok(EXIT_OK)
        }
        Command::Trace { grammar, term, max_steps } => {
            let lang = load(grammar)?;
            let t = syntax::parse_term(term).map_err(input)?;
            let tr = reduction::trace(&lang.grammar, &lang.rules, &t, *max_steps).map_err(input)?;
            match cli.format {
                Format::Sexpr => {
                    for (i, n) in tr.nodes.iter().enumerate() {
                        line(out, format!("(node {i} {} {} {})", n.depth, status_name(n.status), n.term));
                    }
                    for e in &tr.edges {
                        line(out, format!("(edge {} {} {})", e.from, e.to, e.rule));
                    }
                }
                Format::Json => {
                    let nodes: Vec<Value> = tr
                        .nodes
                        .iter()
                        .enumerate()
                        .map(|(i, n)| {
                            json!({ "id": i, "depth": n.depth, "status": status_name(n.status), "term": n.term.to_string() })
                        })
                        .collect();
                    let edges: Vec<Value> =
                        tr.edges.iter().map(|e| json!({ "from": e.from, "to": e.to, "rule": e.rule })).collect();
                    line(out, json!({ "nodes": nodes, "edges": edges }));
                }
            }
            Ok(EXIT_OK)
        }
        Command::CheckGrammar { grammar } => {
            let lang = load(grammar)?;
            let lr = lang.grammar.left_recursion();
            match cli.format {
                Format::Sexpr => match &lr {
                    Some(lr) => {
                        line(out, "left-recursive");
                        let mut path: Vec<String> = lr.cycle.iter().map(ToString::to_string).collect();
                        path.push(lr.cycle[0].to_string());
                        line(out, format!("witness: {}", path.join(" -> ")));
                    }
                    None => line(out, "not left-recursive"),
                },
                Format::Json => {
                    let witness = lr.as_ref().map(|lr| lr.cycle.iter().map(ToString::to_string).collect::<Vec<_>>());
                    line(out, json!({ "left_recursive": lr.is_some(), "witness": witness }));
                }
            }
            Ok(EXIT_OK)
        }
    }
}

fn line(out: &mut String, v: impl Display) {
    out.push_str(&v.to_string());
    out.push('\n');
}

fn status_name(s: NodeStatus) -> &'static str {
    match s {
        NodeStatus::Reduced => "reduced",
        NodeStatus::NormalForm => "normal-form",
        NodeStatus::Cutoff => "cutoff",
        NodeStatus::Cycle => "cycle",
    }
}

fn engine_results(g: &Grammar, t: &Term, p: &crate::Pattern, decomposing: bool) -> Result<BTreeSet<MatchResult>, Failure> {
    let all = matcher::m_ev(g, t, p, g).map_err(input)?;
    Ok(all.into_iter().filter(|r| r.decom.is_empty() != decomposing).collect())
}

fn oracle_results(g: &Grammar, t: &Term, p: &crate::Pattern, decomposing: bool) -> Result<BTreeSet<MatchResult>, Failure> {
    if decomposing {
        Ok(oracle::search_decompose(g, t, p, g)
            .map_err(input)?
            .into_iter()
            .map(|(ctx, subterm, b)| MatchResult::new(Decomposition::NonEmpty { ctx, subterm }, b))
            .collect())
    } else {
        Ok(oracle::search_match_original(g, t, p)
            .map_err(input)?
            .into_iter()
            .map(|b| MatchResult::new(Decomposition::Empty, b))
            .collect())
    }
}

fn run_match(a: &MatchArgs, format: Format, decomposing: bool, out: &mut String, err: &mut dyn Write) -> Result<i32, Failure> {
    let lang = load(&a.grammar)?;
    let p = syntax::parse_pattern(&a.pattern).map_err(input)?;
    let t = syntax::parse_term(&a.term).map_err(input)?;
    let g = &lang.grammar;

    let engine = engine_results(g, &t, &p, decomposing)?;
    let (shown, agree) = if a.oracle {
        let found = oracle_results(g, &t, &p, decomposing)?;
        for r in engine.difference(&found) {
            let _ = writeln!(err, "- {}", render_sexpr(r));
        }
        for r in found.difference(&engine) {
            let _ = writeln!(err, "+ {}", render_sexpr(r));
        }
        let agree = found == engine;
        (found, agree)
    } else {
        (engine, true)
    };

    match format {
        Format::Sexpr => shown.iter().for_each(|r| line(out, render_sexpr(r))),
        Format::Json => {
            let results: Vec<Value> = shown.iter().map(render_json).collect();
            line(out, json!({ "results": results }));
        }
    }
    Ok(if !agree {
        EXIT_DISAGREE
    } else if shown.is_empty() {
        EXIT_NO_MATCH
    } else {
        EXIT_OK
    })
}

/// A match prints as its bindings, a decomposition as
/// `(context subterm bindings)`.
fn render_sexpr(r: &MatchResult) -> String {
    match &r.decom {
        Decomposition::Empty => r.bindings.to_string(),
        Decomposition::NonEmpty { ctx, subterm } => format!("({ctx} {subterm} {})", r.bindings),
    }
}

fn render_json(r: &MatchResult) -> Value {
    let decomposition = match &r.decom {
        Decomposition::Empty => Value::Null,
        Decomposition::NonEmpty { ctx, subterm } => json!({ "context": ctx.to_string(), "subterm": subterm.to_string() }),
    };
    json!({ "decomposition": decomposition, "bindings": bindings_json(&r.bindings) })
}

fn bindings_json(b: &Bindings) -> Value {
    let map: Map<String, Value> = b.iter().map(|(x, t)| (x.to_string(), Value::String(t.to_string()))).collect();
    Value::Object(map)
}

