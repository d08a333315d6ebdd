//! Random generators shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use evalctx::syntax::{load_language, LanguageDef};
use evalctx::{Context, Grammar, ListContext, Pattern, Production, Term};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SYMBOLS: [&str; 3] = ["a", "b", "c"];
pub const VARS: [&str; 3] = ["x", "y", "z"];
pub const NON_TERMINALS: [&str; 3] = ["A", "B", "C"];

pub fn language_path(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("languages").join(file)
}

pub fn language(file: &str) -> LanguageDef {
    load_language(language_path(file)).expect("bundled language loads")
}

#[derive(Debug, Clone)]
pub struct Case {
    pub grammar: Grammar,
    pub term: Term,
    pub pattern: Pattern,
}

pub struct Gen {
    pub rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn pick<T: Clone>(&mut self, items: &[T]) -> T {
        items.choose(&mut self.rng).expect("non-empty").clone()
    }

    pub fn symbol(&mut self) -> Term {
        Term::sym(self.pick(&SYMBOLS))
    }

    /// A term of depth at most `depth`. Holes and embedded contexts appear
    /// occasionally.
    pub fn term(&mut self, depth: usize) -> Term {
        let roll: f64 = self.rng.gen();
        if depth == 0 || roll < 0.3 {
            return if self.rng.gen_bool(0.1) { Term::hole() } else { self.symbol() };
        }
        if roll < 0.36 {
            return Term::Ctx(self.context(depth));
        }
        let len = self.rng.gen_range(0..=3);
        Term::List((0..len).map(|_| self.term(depth - 1)).collect())
    }

    /// A context whose term depth is at most `depth` (at least 1).
    pub fn context(&mut self, depth: usize) -> Context {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return Context::Hole;
        }
        let before = (0..self.rng.gen_range(0..=1)).map(|_| self.term(depth - 1)).collect();
        let after = (0..self.rng.gen_range(0..=1)).map(|_| self.term(depth - 1)).collect();
        let focus = Box::new(self.context(depth - 1));
        Context::List(ListContext { before, focus, after })
    }

    /// A pattern of depth at most `depth` over the given non-terminals.
    pub fn pattern(&mut self, nts: &[&str], depth: usize) -> Pattern {
        let leaf = depth == 0;
        let choice = self.rng.gen_range(0..if leaf { 3 } else { 8 });
        match choice {
            0 => Pattern::sym(self.pick(&SYMBOLS)),
            1 if !nts.is_empty() => Pattern::nt(self.pick(nts)),
            1 | 2 => Pattern::Hole,
            3 | 4 => {
                let len = self.rng.gen_range(0..=3);
                Pattern::List((0..len).map(|_| self.pattern(nts, depth - 1)).collect())
            }
            5 => Pattern::name(self.pick(&VARS), self.pattern(nts, depth - 1)),
            _ => Pattern::in_hole(self.pattern(nts, depth - 1), self.pattern(nts, depth - 1)),
        }
    }

    /// Up to three non-terminals with up to three productions each.
    pub fn grammar(&mut self, rhs_depth: usize) -> Grammar {
        let count = self.rng.gen_range(1..=3);
        let nts = &NON_TERMINALS[..count];
        let mut prods = Vec::new();
        for n in nts {
            for _ in 0..self.rng.gen_range(1..=3) {
                prods.push(Production::new(*n, self.pattern(nts, rhs_depth)));
            }
        }
        Grammar::new(prods)
    }

    pub fn non_left_recursive_grammar(&mut self, rhs_depth: usize) -> Grammar {
        loop {
            let g = self.grammar(rhs_depth);
            if !g.is_left_recursive() {
                return g;
            }
        }
    }

    /// A term built to match `p` where that is easy to arrange; falls back
    /// to random choices elsewhere.
    pub fn instance(&mut self, g: &Grammar, p: &Pattern, depth: usize) -> Term {
        match p {
            Pattern::Lit(a) => Term::Lit(a.clone()),
            Pattern::Hole => Term::hole(),
            Pattern::List(items) if depth > 0 => {
                Term::List(items.iter().map(|q| self.instance(g, q, depth - 1)).collect())
            }
            Pattern::Name(_, q) => self.instance(g, q, depth),
            Pattern::Nt(n) if depth > 0 => {
                let rhs: Vec<Pattern> = g.productions_of(n).cloned().collect();
                if rhs.is_empty() {
                    return self.term(depth);
                }
                let q = self.pick(&rhs);
                self.instance(g, &q, depth - 1)
            }
            Pattern::InHole(pc, ph) if depth > 0 => {
                let outer = self.instance(g, pc, depth - 1);
                let inner = self.instance(g, ph, depth - 1);
                match outer.to_context() {
                    Ok(c) => c.plug(inner),
                    Err(_) => outer,
                }
            }
            _ => self.term(depth.min(1)),
        }
    }

    /// One oracle-scale case: grammar, pattern and a term that is a pattern
    /// instance half of the time.
    pub fn case(&mut self) -> Case {
        let grammar = self.non_left_recursive_grammar(2);
        let nts: Vec<&str> = grammar.non_terminals().iter().map(|n| leak(n.as_str())).collect();
        let depth = self.rng.gen_range(1..=4);
        let pattern = self.pattern(&nts, depth);
        let term = if self.rng.gen_bool(0.5) {
            let t = self.instance(&grammar, &pattern, 4);
            if t.depth() <= 4 {
                t
            } else {
                self.term(4)
            }
        } else {
            self.term(4)
        };
        Case { grammar, term, pattern }
    }
}

fn leak(s: &str) -> &'static str {
    NON_TERMINALS.iter().find(|n| **n == s).copied().expect("generated non-terminal")
}

/// `n` seeded cases.
pub fn corpus(seed: u64, n: usize) -> Vec<Case> {
    let mut gen = Gen::new(seed);
    (0..n).map(|_| gen.case()).collect()
}
