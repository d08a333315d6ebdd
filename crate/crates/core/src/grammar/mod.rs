//! Grammars as ordered production lists.
//!
//! Duplicated productions are kept; [`Grammar::remove_prod`] drops a single
//! occurrence, so every removal shortens the grammar by exactly one.

mod left_recursion;

use std::fmt;

use thiserror::Error;

use crate::pattern::Pattern;
use crate::term::NonTerminal;

pub use left_recursion::{hole_matchable, matches_hole, LeftRecursion};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Production {
    pub nt: NonTerminal,
    pub rhs: Pattern,
}

impl Production {
    pub fn new(nt: impl Into<String>, rhs: Pattern) -> Self {
        Production { nt: NonTerminal::new(nt), rhs }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Grammar {
    prods: Vec<Production>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error("production {nt} -> {rhs:?} is not in the grammar")]
    ProductionNotFound { nt: NonTerminal, rhs: Pattern },
}

impl Grammar {
    pub fn new(prods: Vec<Production>) -> Self {
        Grammar { prods }
    }

    pub fn empty() -> Self {
        Grammar::default()
    }

    pub fn productions(&self) -> &[Production] {
        &self.prods
    }

    /// Number of productions.
    pub fn len(&self) -> usize {
        self.prods.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prods.is_empty()
    }

    /// Sum of `1 + size(rhs)` over all productions. Bounds how many
    /// non-consuming steps matching can take before running out of
    /// productions.
    pub fn total_size(&self) -> usize {
        self.prods.iter().map(|p| 1 + p.rhs.size()).sum()
    }

    pub fn contains(&self, prod: &Production) -> bool {
        self.prods.contains(prod)
    }

    /// Right-hand sides of `n`, in grammar order.
    pub fn productions_of<'a>(&'a self, n: &'a NonTerminal) -> impl Iterator<Item = &'a Pattern> + 'a {
        self.prods.iter().filter(move |p| &p.nt == n).map(|p| &p.rhs)
    }

    /// Removes the first occurrence of `prod`.
    pub fn remove_prod(&self, prod: &Production) -> Result<Grammar, GrammarError> {
        let i = self.prods.iter().position(|p| p == prod).ok_or_else(|| {
            GrammarError::ProductionNotFound { nt: prod.nt.clone(), rhs: prod.rhs.clone() }
        })?;
        let mut prods = self.prods.clone();
        prods.remove(i);
        Ok(Grammar { prods })
    }

    /// `gleq(self, other)`: every production of `self` is in `other`.
    pub fn is_subgrammar_of(&self, other: &Grammar) -> bool {
        self.prods.iter().all(|p| other.contains(p))
    }

    /// Defined non-terminals, in first-appearance order.
    pub fn non_terminals(&self) -> Vec<NonTerminal> {
        let mut out: Vec<NonTerminal> = Vec::new();
        for p in &self.prods {
            if !out.contains(&p.nt) {
                out.push(p.nt.clone());
            }
        }
        out
    }

    pub fn defines(&self, n: &NonTerminal) -> bool {
        self.prods.iter().any(|p| &p.nt == n)
    }

    pub fn left_recursion(&self) -> Option<LeftRecursion> {
        left_recursion::find_cycle(self)
    }

    pub fn is_left_recursive(&self) -> bool {
        self.left_recursion().is_some()
    }
}

/// `gleq(g1, g2)`.
pub fn gleq(g1: &Grammar, g2: &Grammar) -> bool {
    g1.is_subgrammar_of(g2)
}

impl FromIterator<Production> for Grammar {
    fn from_iter<I: IntoIterator<Item = Production>>(iter: I) -> Self {
        Grammar::new(iter.into_iter().collect())
    }
}

impl fmt::Display for Production {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {})", self.nt, self.rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prod(n: &str, lit: &str) -> Production {
        Production::new(n, Pattern::sym(lit))
    }

    #[test]
    fn construction_and_length() {
        assert_eq!(Grammar::new(vec![]).len(), 0);
        assert_eq!(Grammar::new(vec![prod("e", "a")]).len(), 1);
        // duplicates are preserved
        assert_eq!(Grammar::new(vec![prod("e", "a"), prod("e", "a")]).len(), 2);
    }

    #[test]
    fn productions_of_filters_in_order() {
        let g = Grammar::new(vec![prod("e", "a"), prod("e", "b"), prod("v", "c")]);
        let e = NonTerminal::new("e");
        let rhs: Vec<_> = g.productions_of(&e).cloned().collect();
        assert_eq!(rhs, [Pattern::sym("a"), Pattern::sym("b")]);
        assert_eq!(g.productions_of(&NonTerminal::new("x")).count(), 0);
        assert_eq!(Grammar::empty().productions_of(&e).count(), 0);
        let single = Grammar::new(vec![prod("e", "a")]);
        assert_eq!(single.productions_of(&NonTerminal::new("v")).count(), 0);
    }

    #[test]
    fn remove_prod_drops_one_occurrence() {
        let g = Grammar::new(vec![prod("e", "a")]);
        assert_eq!(g.remove_prod(&prod("e", "a")).unwrap(), Grammar::empty());

        let g = Grammar::new(vec![prod("e", "a"), prod("e", "b")]);
        let r = g.remove_prod(&prod("e", "a")).unwrap();
        assert_eq!(r, Grammar::new(vec![prod("e", "b")]));
        assert_eq!(r.len(), g.len() - 1);
        assert!(!r.contains(&prod("e", "a")));
        assert!(r.contains(&prod("e", "b")));

        let dup = Grammar::new(vec![prod("e", "a"), prod("e", "a")]);
        let r = dup.remove_prod(&prod("e", "a")).unwrap();
        assert!(r.contains(&prod("e", "a")));
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn remove_missing_production_fails() {
        let g = Grammar::new(vec![prod("e", "a")]);
        assert!(matches!(
            g.remove_prod(&prod("v", "c")),
            Err(GrammarError::ProductionNotFound { .. })
        ));
    }

    #[test]
    fn gleq_axioms() {
        let g = Grammar::new(vec![prod("e", "a"), prod("e", "b"), prod("v", "c")]);
        assert!(gleq(&g, &g));
        for p in g.productions() {
            assert!(gleq(&g.remove_prod(p).unwrap(), &g));
        }
        assert!(!gleq(&Grammar::new(vec![prod("e", "a")]), &Grammar::empty()));
        assert!(gleq(&Grammar::empty(), &g));
    }
}
