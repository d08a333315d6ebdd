use std::collections::BTreeSet;

use crate::term::{Literal, NonTerminal, PatVar};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pattern {
    Lit(Literal),
    /// Matches only the bare hole; decomposes any term at the root.
    Hole,
    List(Vec<Pattern>),
    Name(PatVar, Box<Pattern>),
    Nt(NonTerminal),
    /// `(in-hole pc ph)`: a context matching `pc` around a subterm
    /// matching `ph`.
    InHole(Box<Pattern>, Box<Pattern>),
}

impl Pattern {
    pub fn sym(s: impl Into<String>) -> Self {
        Pattern::Lit(Literal::sym(s))
    }

    pub fn list(items: impl IntoIterator<Item = Pattern>) -> Self {
        Pattern::List(items.into_iter().collect())
    }

    pub fn name(x: impl Into<String>, p: Pattern) -> Self {
        Pattern::Name(PatVar::new(x), Box::new(p))
    }

    pub fn nt(n: impl Into<String>) -> Self {
        Pattern::Nt(NonTerminal::new(n))
    }

    pub fn in_hole(pc: Pattern, ph: Pattern) -> Self {
        Pattern::InHole(Box::new(pc), Box::new(ph))
    }

    /// Node count; every list suffix counts as a node, so the tail of a
    /// list pattern is strictly smaller than the list.
    pub fn size(&self) -> usize {
        match self {
            Pattern::Lit(_) | Pattern::Hole | Pattern::Nt(_) => 1,
            Pattern::List(items) => 1 + items.iter().map(Pattern::size).sum::<usize>(),
            Pattern::Name(_, p) => 1 + p.size(),
            Pattern::InHole(c, h) => 1 + c.size() + h.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Pattern::Lit(_) | Pattern::Hole | Pattern::Nt(_) => 0,
            Pattern::List(items) => 1 + items.iter().map(Pattern::depth).max().unwrap_or(0),
            Pattern::Name(_, p) => 1 + p.depth(),
            Pattern::InHole(c, h) => 1 + c.depth().max(h.depth()),
        }
    }

    /// All subpatterns, including `self` and every list suffix.
    pub fn subpatterns(&self) -> Vec<Pattern> {
        let mut out = Vec::new();
        self.collect_subpatterns(&mut out);
        out
    }

    fn collect_subpatterns(&self, out: &mut Vec<Pattern>) {
        out.push(self.clone());
        match self {
            Pattern::Lit(_) | Pattern::Hole | Pattern::Nt(_) => {}
            Pattern::List(items) => {
                if let Some((hd, tl)) = items.split_first() {
                    hd.collect_subpatterns(out);
                    Pattern::List(tl.to_vec()).collect_subpatterns(out);
                }
            }
            Pattern::Name(_, p) => p.collect_subpatterns(out),
            Pattern::InHole(c, h) => {
                c.collect_subpatterns(out);
                h.collect_subpatterns(out);
            }
        }
    }

    /// Variables bound by `name` patterns, not looking through non-terminals.
    pub fn bound_vars(&self) -> BTreeSet<PatVar> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<PatVar>) {
        match self {
            Pattern::Lit(_) | Pattern::Hole | Pattern::Nt(_) => {}
            Pattern::List(items) => items.iter().for_each(|p| p.collect_vars(out)),
            Pattern::Name(x, p) => {
                out.insert(x.clone());
                p.collect_vars(out);
            }
            Pattern::InHole(c, h) => {
                c.collect_vars(out);
                h.collect_vars(out);
            }
        }
    }

    /// Non-terminals referenced anywhere in the pattern.
    pub fn non_terminals(&self) -> BTreeSet<NonTerminal> {
        self.subpatterns()
            .into_iter()
            .filter_map(|p| match p {
                Pattern::Nt(n) => Some(n),
                _ => None,
            })
            .collect()
    }
}
