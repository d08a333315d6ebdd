//! Concrete syntax.
//!
//! Everything is written as s-expressions. In terms only `hole` is
//! reserved. Patterns reserve `hole`, `name`, `nt` and `in-hole`;
//! templates reserve `hole`, `ref` and `in-hole`. Atoms that parse as an
//! `i64` are integers, `#t`/`#f` are booleans and everything else is a
//! symbol.

mod language;
pub mod sexpr;

use std::fmt;

use thiserror::Error;

use crate::pattern::Pattern;
use crate::reduction::Template;
use crate::term::{Context, ContextError, Literal, NonTerminal, PatVar, Term};

pub use language::{load_language, parse_language, LanguageDef, LoadError};
pub use sexpr::{SExpr, SyntaxError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("`{form}` expects {expected} argument(s), got {got}")]
    Arity { form: &'static str, expected: usize, got: usize },
    #[error("`{form}` expects an identifier, got {got}")]
    ExpectedIdent { form: &'static str, got: String },
    #[error(transparent)]
    Context(#[from] ContextError),
}

fn literal(atom: &str) -> Literal {
    match atom {
        "#t" => Literal::Bool(true),
        "#f" => Literal::Bool(false),
        _ => match atom.parse::<i64>() {
            Ok(n) => Literal::Int(n),
            Err(_) => Literal::Sym(atom.to_string()),
        },
    }
}

pub fn term_from_sexpr(e: &SExpr) -> Term {
    match e {
        SExpr::Atom(a) if a == "hole" => Term::hole(),
        SExpr::Atom(a) => Term::Lit(literal(a)),
        SExpr::List(items) => Term::List(items.iter().map(term_from_sexpr).collect()),
    }
}

fn args<'a>(form: &'static str, items: &'a [SExpr], expected: usize) -> Result<&'a [SExpr], ParseError> {
    let rest = &items[1..];
    if rest.len() != expected {
        return Err(ParseError::Arity { form, expected, got: rest.len() });
    }
    Ok(rest)
}

fn ident<'a>(form: &'static str, e: &'a SExpr) -> Result<&'a str, ParseError> {
    e.as_atom().ok_or_else(|| ParseError::ExpectedIdent { form, got: e.to_string() })
}

pub fn pattern_from_sexpr(e: &SExpr) -> Result<Pattern, ParseError> {
    let items = match e {
        SExpr::Atom(a) if a == "hole" => return Ok(Pattern::Hole),
        SExpr::Atom(a) => return Ok(Pattern::Lit(literal(a))),
        SExpr::List(items) => items,
    };
    match e.head_atom() {
        Some("name") => {
            let a = args("name", items, 2)?;
            Ok(Pattern::Name(PatVar::new(ident("name", &a[0])?), Box::new(pattern_from_sexpr(&a[1])?)))
        }
        Some("nt") => {
            let a = args("nt", items, 1)?;
            Ok(Pattern::Nt(NonTerminal::new(ident("nt", &a[0])?)))
        }
        Some("in-hole") => {
            let a = args("in-hole", items, 2)?;
            Ok(Pattern::in_hole(pattern_from_sexpr(&a[0])?, pattern_from_sexpr(&a[1])?))
        }
        _ => Ok(Pattern::List(items.iter().map(pattern_from_sexpr).collect::<Result<_, _>>()?)),
    }
}

pub fn template_from_sexpr(e: &SExpr) -> Result<Template, ParseError> {
    let items = match e {
        SExpr::Atom(a) if a == "hole" => return Ok(Template::Hole),
        SExpr::Atom(a) => return Ok(Template::Lit(literal(a))),
        SExpr::List(items) => items,
    };
    match e.head_atom() {
        Some("ref") => {
            let a = args("ref", items, 1)?;
            Ok(Template::Ref(PatVar::new(ident("ref", &a[0])?)))
        }
        Some("in-hole") => {
            let a = args("in-hole", items, 2)?;
            Ok(Template::in_hole(template_from_sexpr(&a[0])?, template_from_sexpr(&a[1])?))
        }
        _ => Ok(Template::List(items.iter().map(template_from_sexpr).collect::<Result<_, _>>()?)),
    }
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    Ok(term_from_sexpr(&sexpr::parse_one(src)?))
}

/// A term with exactly one `hole`, read as a context.
pub fn parse_context(src: &str) -> Result<Context, ParseError> {
    Ok(parse_term(src)?.to_context()?)
}

pub fn parse_pattern(src: &str) -> Result<Pattern, ParseError> {
    pattern_from_sexpr(&sexpr::parse_one(src)?)
}

pub fn parse_template(src: &str) -> Result<Template, ParseError> {
    template_from_sexpr(&sexpr::parse_one(src)?)
}

fn write_seq<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    f.write_str("(")?;
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{item}")?;
    }
    f.write_str(")")
}

/// Embedded contexts print as the list they describe, with `hole` at the
/// hole position.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Lit(a) => write!(f, "{a}"),
            Term::List(items) => write_seq(f, items),
            Term::Ctx(Context::Hole) => f.write_str("hole"),
            Term::Ctx(c) => write!(f, "{}", c.plug(Term::hole())),
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.plug(Term::hole()))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Lit(a) => write!(f, "{a}"),
            Pattern::Hole => f.write_str("hole"),
            Pattern::List(items) => write_seq(f, items),
            Pattern::Name(x, p) => write!(f, "(name {x} {p})"),
            Pattern::Nt(n) => write!(f, "(nt {n})"),
            Pattern::InHole(c, h) => write!(f, "(in-hole {c} {h})"),
        }
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Template::Lit(a) => write!(f, "{a}"),
            Template::Hole => f.write_str("hole"),
            Template::List(items) => write_seq(f, items),
            Template::Ref(x) => write!(f, "(ref {x})"),
            Template::InHole(c, t) => write!(f, "(in-hole {c} {t})"),
        }
    }
}
