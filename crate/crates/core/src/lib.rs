//! Reduction semantics with evaluation contexts.
//!
//! Terms may contain holes, patterns may describe contexts with
//! `(in-hole pc ph)`, and a grammar gives meaning to non-terminals. The
//! [`matcher`] finds every match and decomposition of a term against a
//! pattern, and terminates for every grammar. The [`oracle`] answers the
//! same questions by exhaustive search and exists to check the matcher.
//! [`reduction`] builds rewriting rules on top, and [`syntax`] reads and
//! prints everything as s-expressions.
//!
//! ```
//! use evalctx::syntax::{parse_context, parse_term};
//!
//! let c = parse_context("(hole b)").unwrap();
//! assert_eq!(c.plug(parse_term("a").unwrap()).to_string(), "(a b)");
//! ```

pub mod cli;
pub mod grammar;
pub mod matcher;
pub mod oracle;
pub mod pattern;
pub mod reduction;
pub mod syntax;
pub mod term;

pub use grammar::{gleq, Grammar, GrammarError, Production};
pub use matcher::{decompose, m_ev, matches, Bindings, Decomposition, MatchError, MatchResult, Matcher};
pub use pattern::Pattern;
pub use reduction::{apply_rule, instantiate, step, trace, Rule, Template};
pub use term::{Context, ContextError, ListContext, Literal, NonTerminal, PatVar, Term};
