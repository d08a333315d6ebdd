//! The well-founded order on matching tuples.
//!
//! A tuple `(t', p', g')` is below `(t, p, g)` when `t'` is a proper subterm
//! of `t`, or when `t' = t` and the pattern/grammar pair has been consumed:
//!
//! * `(pc, g) < ((in-hole pc ph), g)`
//! * `(ph, g) < ((in-hole pc ph), g)`
//! * `(p, g)  < ((name x p), g)`
//! * `(p, g - (n, p)) < ((nt n), g)` when `p ∈ g(n)`
//!
//! Each pattern step shrinks the pattern and each non-terminal step removes
//! a production, so the order has no infinite descending chains whatever
//! the grammar.

use crate::grammar::{Grammar, Production};
use crate::pattern::Pattern;
use crate::term::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchingTuple<'a> {
    pub term: &'a Term,
    pub pattern: &'a Pattern,
    pub grammar: &'a Grammar,
}

impl<'a> MatchingTuple<'a> {
    pub fn new(term: &'a Term, pattern: &'a Pattern, grammar: &'a Grammar) -> Self {
        MatchingTuple { term, pattern, grammar }
    }
}

/// Whether `next` is strictly below `prev` in the order indexed by the
/// original grammar `g_orig`. The order's definition does not inspect the
/// index; it is kept so call sites name the relation they check.
pub fn tuple_order_decreases(_g_orig: &Grammar, next: MatchingTuple<'_>, prev: MatchingTuple<'_>) -> bool {
    if prev.term.has_proper_subterm(next.term) {
        return true;
    }
    next.term == prev.term && pattern_grammar_decreases(next.pattern, next.grammar, prev.pattern, prev.grammar)
}

/// The `<p×g` step relation.
pub fn pattern_grammar_decreases(p: &Pattern, g: &Grammar, prev_p: &Pattern, prev_g: &Grammar) -> bool {
    match prev_p {
        Pattern::InHole(c, h) => g == prev_g && (p == c.as_ref() || p == h.as_ref()),
        Pattern::Name(_, sub) => g == prev_g && p == sub.as_ref(),
        Pattern::Nt(n) => {
            let prod = Production { nt: n.clone(), rhs: p.clone() };
            prev_g.contains(&prod) && prev_g.remove_prod(&prod).is_ok_and(|rest| &rest == g)
        }
        Pattern::Lit(_) | Pattern::Hole | Pattern::List(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subterm_component_decreases() {
        let g = Grammar::new(vec![Production::new("e", Pattern::sym("a"))]);
        let ab = Term::list([Term::sym("a"), Term::sym("b")]);
        let a = Term::sym("a");
        let cons = Pattern::list([Pattern::sym("a"), Pattern::sym("b")]);
        let pa = Pattern::sym("a");
        assert!(tuple_order_decreases(&g, MatchingTuple::new(&a, &pa, &g), MatchingTuple::new(&ab, &cons, &g)));
    }

    #[test]
    fn in_hole_components_decrease() {
        let g = Grammar::empty();
        let t = Term::sym("a");
        let pc = Pattern::nt("E");
        let ph = Pattern::Hole;
        let p = Pattern::in_hole(pc.clone(), ph.clone());
        assert!(tuple_order_decreases(&g, MatchingTuple::new(&t, &pc, &g), MatchingTuple::new(&t, &p, &g)));
        assert!(tuple_order_decreases(&g, MatchingTuple::new(&t, &ph, &g), MatchingTuple::new(&t, &p, &g)));
    }

    #[test]
    fn order_is_strict() {
        let g = Grammar::empty();
        let t = Term::sym("a");
        let p = Pattern::name("x", Pattern::Hole);
        assert!(!tuple_order_decreases(&g, MatchingTuple::new(&t, &p, &g), MatchingTuple::new(&t, &p, &g)));
    }

    #[test]
    fn non_terminal_step_must_remove_the_production() {
        let rhs = Pattern::sym("a");
        let g = Grammar::new(vec![Production::new("e", rhs.clone())]);
        let t = Term::sym("a");
        let nt = Pattern::nt("e");
        let smaller = g.remove_prod(&Production::new("e", rhs.clone())).unwrap();
        assert!(tuple_order_decreases(&g, MatchingTuple::new(&t, &rhs, &smaller), MatchingTuple::new(&t, &nt, &g)));
        assert!(!tuple_order_decreases(&g, MatchingTuple::new(&t, &rhs, &g), MatchingTuple::new(&t, &nt, &g)));
        // grammar must be preserved on pattern steps
        let name = Pattern::name("x", rhs.clone());
        assert!(!tuple_order_decreases(&g, MatchingTuple::new(&t, &rhs, &smaller), MatchingTuple::new(&t, &name, &g)));
    }
}
