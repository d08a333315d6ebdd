use std::path::{Path, PathBuf};

use thiserror::Error;

use super::sexpr::{self, SExpr, SyntaxError};
use super::{pattern_from_sexpr, template_from_sexpr, ParseError};
use crate::grammar::{Grammar, Production};
use crate::pattern::Pattern;
use crate::reduction::{ReductionError, Rule};
use crate::term::NonTerminal;

/// A grammar and the reduction rules over it, as read from a file of the
/// form
///
/// ```text
/// (define-language name
///   (nt pattern ...)
///   ...)
/// (rule name lhs-pattern rhs-template)
/// ...
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageDef {
    pub name: String,
    pub grammar: Grammar,
    pub rules: Vec<Rule>,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("no define-language form")]
    MissingDefineLanguage,
    #[error("more than one define-language form")]
    DuplicateDefineLanguage,
    #[error("malformed {form}: {detail}")]
    Malformed { form: &'static str, detail: String },
    #[error("unknown top-level form {0}")]
    UnknownForm(String),
    #[error("non-terminal {nt} used in {place} is not defined")]
    UndefinedNonTerminal { nt: NonTerminal, place: String },
    #[error("rule {rule}: template variable {var} is not bound by the left-hand side")]
    UnboundTemplateVar { rule: String, var: String },
}

pub fn load_language(path: impl AsRef<Path>) -> Result<LanguageDef, LoadError> {
    let path = path.as_ref();
    let src = std::fs::read_to_string(path).map_err(|source| LoadError::Io { path: path.to_path_buf(), source })?;
    parse_language(&src)
}

fn malformed(form: &'static str, e: &SExpr) -> LoadError {
    LoadError::Malformed { form, detail: e.to_string() }
}

pub fn parse_language(src: &str) -> Result<LanguageDef, LoadError> {
    let mut def: Option<(String, Grammar)> = None;
    let mut rules = Vec::new();
    for form in sexpr::parse_all(src)? {
        match form.head_atom() {
            Some("define-language") => {
                if def.is_some() {
                    return Err(LoadError::DuplicateDefineLanguage);
                }
                def = Some(define_language(&form)?);
            }
            Some("rule") => rules.push(form),
            _ => return Err(LoadError::UnknownForm(form.to_string())),
        }
    }
    let (name, grammar) = def.ok_or(LoadError::MissingDefineLanguage)?;
    for prod in grammar.productions() {
        check_defined(&grammar, &prod.rhs, || format!("production of {}", prod.nt))?;
    }
    let rules = rules.iter().map(|r| rule(&grammar, r)).collect::<Result<_, _>>()?;
    Ok(LanguageDef { name, grammar, rules })
}

fn define_language(form: &SExpr) -> Result<(String, Grammar), LoadError> {
    let items = form.as_list().expect("head_atom implies a list");
    let name = items.get(1).and_then(SExpr::as_atom).ok_or_else(|| malformed("define-language", form))?;
    let mut prods = Vec::new();
    for clause in &items[2..] {
        let parts = clause.as_list().ok_or_else(|| malformed("define-language", clause))?;
        let nt = parts.first().and_then(SExpr::as_atom).ok_or_else(|| malformed("define-language", clause))?;
        for rhs in &parts[1..] {
            prods.push(Production::new(nt, pattern_from_sexpr(rhs)?));
        }
    }
    Ok((name.to_string(), Grammar::new(prods)))
}

fn rule(g: &Grammar, form: &SExpr) -> Result<Rule, LoadError> {
    let items = form.as_list().expect("head_atom implies a list");
    let [_, name, lhs, rhs] = items else { return Err(malformed("rule", form)) };
    let name = name.as_atom().ok_or_else(|| malformed("rule", form))?;
    let lhs = pattern_from_sexpr(lhs)?;
    check_defined(g, &lhs, || format!("rule {name}"))?;
    let rhs = template_from_sexpr(rhs)?;
    Rule::new(name, lhs, rhs).map_err(|e| match e {
        ReductionError::UnboundVariable(x) => LoadError::UnboundTemplateVar { rule: name.to_string(), var: x.0 },
        other => unreachable!("rule construction only reports unbound variables: {other}"),
    })
}

fn check_defined(g: &Grammar, p: &Pattern, place: impl Fn() -> String) -> Result<(), LoadError> {
    match p.non_terminals().into_iter().find(|n| !g.defines(n)) {
        Some(nt) => Err(LoadError::UndefinedNonTerminal { nt, place: place() }),
        None => Ok(()),
    }
}
