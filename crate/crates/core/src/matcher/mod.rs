//! Matching and decomposition.
//!
//! [`m_ev`] returns, for a term and a pattern, every way the pattern can
//! either match the whole term or decompose it into a context and a
//! subterm. Non-terminals are first read from a working grammar `g_cur`,
//! which loses a production each time one is tried; as soon as matching
//! descends into a proper subterm the original grammar is put back. This is
//! what makes the recursion terminate, and the [`measure`] module states the
//! order that decreases on every call.

mod bindings;
pub mod measure;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::grammar::{Grammar, Production};
use crate::pattern::Pattern;
use crate::term::{Context, PatVar, Term};

pub use bindings::{bindings_union, Bindings};
pub use measure::{tuple_order_decreases, MatchingTuple};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Decomposition {
    /// The pattern matched the whole term.
    Empty,
    /// The pattern matched `ctx`, with `subterm` sitting in its hole.
    NonEmpty { ctx: Context, subterm: Term },
}

impl Decomposition {
    pub fn non_empty(ctx: Context, subterm: Term) -> Self {
        Decomposition::NonEmpty { ctx, subterm }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Decomposition::Empty)
    }

    /// Whether this is a legitimate decomposition of `t`: plugging gives `t`
    /// back, and the subterm is either `t` itself under the bare hole or a
    /// proper subterm of `t`.
    pub fn is_valid_for(&self, t: &Term) -> bool {
        match self {
            Decomposition::Empty => true,
            Decomposition::NonEmpty { ctx, subterm } => {
                &ctx.plug(subterm.clone()) == t
                    && ((subterm == t && ctx.is_hole()) || t.has_proper_subterm(subterm))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatchResult {
    pub decom: Decomposition,
    pub bindings: Bindings,
}

impl MatchResult {
    pub fn new(decom: Decomposition, bindings: Bindings) -> Self {
        MatchResult { decom, bindings }
    }

    fn matched(bindings: Bindings) -> Self {
        MatchResult { decom: Decomposition::Empty, bindings }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchError {
    #[error("recursive call on {term} against {pattern} does not decrease the matching order")]
    MeasureViolation { term: Term, pattern: Pattern },
    #[error("recursion depth exceeded the fuel bound of {fuel}")]
    FuelExhausted { fuel: usize },
}

/// Counters collected over the lifetime of a [`Matcher`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MatchStats {
    pub calls: u64,
    pub measure_checks: u64,
    pub measure_violations: u64,
    pub fuel_exhaustions: u64,
    pub max_depth: usize,
}

impl fmt::Display for MatchStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "calls={} checks={} violations={} fuel_exhaustions={} max_depth={}",
            self.calls, self.measure_checks, self.measure_violations, self.fuel_exhaustions, self.max_depth
        )
    }
}

/// Default recursion depth cap: `10 * (size(t) + 1) * (size(p) + |g| + 1)`,
/// where `|g|` is the grammar's total size. Along any chain of calls the
/// term can shrink at most `size(t)` times, and between two shrinks the
/// pattern size plus the remaining grammar size drops on every step, so a
/// call chain never gets near this bound.
pub fn default_fuel(t: &Term, p: &Pattern, g: &Grammar) -> usize {
    10 * (t.size() + 1) * (p.size() + g.total_size() + 1)
}

/// A configured run of the matching algorithm over one original grammar.
#[derive(Debug, Clone)]
pub struct Matcher<'g> {
    g_orig: &'g Grammar,
    check_measure: bool,
    fuel: Option<usize>,
    stats: MatchStats,
}

type Tuple<'a> = (&'a Term, &'a Pattern, &'a Grammar);

impl<'g> Matcher<'g> {
    /// Measure checking is on in debug builds and off in release builds.
    pub fn new(g_orig: &'g Grammar) -> Self {
        Matcher { g_orig, check_measure: cfg!(debug_assertions), fuel: None, stats: MatchStats::default() }
    }

    pub fn check_measure(mut self, on: bool) -> Self {
        self.check_measure = on;
        self
    }

    /// Overrides [`default_fuel`].
    pub fn with_fuel(mut self, fuel: usize) -> Self {
        self.fuel = Some(fuel);
        self
    }

    pub fn grammar(&self) -> &'g Grammar {
        self.g_orig
    }

    pub fn stats(&self) -> MatchStats {
        self.stats
    }

    /// `M_ev g_orig (t, p, g_cur)`.
    pub fn run(&mut self, t: &Term, p: &Pattern, g_cur: &Grammar) -> Result<Vec<MatchResult>, MatchError> {
        let fuel = self.fuel.unwrap_or_else(|| default_fuel(t, p, self.g_orig));
        self.ev(t, p, g_cur, 0, fuel)
    }

    fn call(
        &mut self,
        prev: Tuple<'_>,
        next: Tuple<'_>,
        depth: usize,
        fuel: usize,
    ) -> Result<Vec<MatchResult>, MatchError> {
        if self.check_measure {
            self.stats.measure_checks += 1;
            let decreases = tuple_order_decreases(
                self.g_orig,
                MatchingTuple::new(next.0, next.1, next.2),
                MatchingTuple::new(prev.0, prev.1, prev.2),
            );
            if !decreases {
                self.stats.measure_violations += 1;
                return Err(MatchError::MeasureViolation { term: next.0.clone(), pattern: next.1.clone() });
            }
        }
        if depth + 1 > fuel {
            self.stats.fuel_exhaustions += 1;
            return Err(MatchError::FuelExhausted { fuel });
        }
        self.ev(next.0, next.1, next.2, depth + 1, fuel)
    }

    fn ev(
        &mut self,
        t: &Term,
        p: &Pattern,
        g_cur: &Grammar,
        depth: usize,
        fuel: usize,
    ) -> Result<Vec<MatchResult>, MatchError> {
        self.stats.calls += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let g_orig = self.g_orig;
        let here = (t, p, g_cur);

        let results = match p {
            Pattern::Hole if t.is_hole() => vec![
                MatchResult::new(Decomposition::non_empty(Context::Hole, t.clone()), Bindings::new()),
                MatchResult::matched(Bindings::new()),
            ],
            Pattern::Hole => {
                vec![MatchResult::new(Decomposition::non_empty(Context::Hole, t.clone()), Bindings::new())]
            }

            Pattern::Lit(a) => match t {
                Term::Lit(b) if a == b => vec![MatchResult::matched(Bindings::new())],
                _ => Vec::new(),
            },

            Pattern::List(ps) => {
                let Some((p_hd, p_tl)) = ps.split_first() else {
                    return Ok(match t {
                        Term::List(items) if items.is_empty() => vec![MatchResult::matched(Bindings::new())],
                        _ => Vec::new(),
                    });
                };
                let (t_hd, t_tl) = match t {
                    Term::List(items) if !items.is_empty() => (items[0].clone(), Term::List(items[1..].to_vec())),
                    Term::Ctx(Context::List(lc)) => lc.split(),
                    _ => return Ok(Vec::new()),
                };
                let p_tl = Pattern::List(p_tl.to_vec());
                let hd = self.call(here, (&t_hd, p_hd, g_orig), depth, fuel)?;
                let tl = self.call(here, (&t_tl, &p_tl, g_orig), depth, fuel)?;
                let mut out = Vec::new();
                for rh in &hd {
                    for rt in &tl {
                        let Some(decom) = select(&t_hd, &rh.decom, &t_tl, &rt.decom, t) else { continue };
                        if let Some(b) = rh.bindings.union(&rt.bindings) {
                            out.push(MatchResult::new(decom, b));
                        }
                    }
                }
                out
            }

            Pattern::InHole(pc, ph) => {
                let mut out = Vec::new();
                for rc in self.call(here, (t, pc, g_cur), depth, fuel)? {
                    let Decomposition::NonEmpty { ctx, subterm } = &rc.decom else { continue };
                    let g_h = if ctx.is_hole() { g_cur } else { g_orig };
                    for rh in self.call(here, (subterm, ph, g_h), depth, fuel)? {
                        if let Some(b) = rc.bindings.union(&rh.bindings) {
                            out.push(MatchResult::new(combine(t, ctx, subterm, &rh.decom), b));
                        }
                    }
                }
                out
            }

            Pattern::Name(x, sub) => {
                let mut out = Vec::new();
                for r in self.call(here, (t, sub, g_cur), depth, fuel)? {
                    if let Some(b) = named(x, t, &r.decom, &r.bindings) {
                        out.push(MatchResult::new(r.decom, b));
                    }
                }
                out
            }

            Pattern::Nt(n) => {
                let mut out = Vec::new();
                for rhs in g_cur.productions_of(n) {
                    let prod = Production { nt: n.clone(), rhs: rhs.clone() };
                    let g_next = g_cur.remove_prod(&prod).expect("production comes from g_cur");
                    for r in self.call(here, (t, rhs, &g_next), depth, fuel)? {
                        out.push(MatchResult::new(r.decom, Bindings::new()));
                    }
                }
                out
            }
        };

        debug_assert!(
            results.iter().all(|r| r.decom.is_valid_for(t)),
            "unsound decomposition of {t} against {p}"
        );
        Ok(results)
    }
}

/// Merges the results for the head and tail of a list into a result for
/// the whole list `whole`. At most one side may have decomposed, since a
/// context has one hole. An embedded context term only supports whole
/// matches: its cons components cannot be reassembled into a context
/// around a subterm.
pub fn select(
    t_hd: &Term,
    d_hd: &Decomposition,
    t_tl: &Term,
    d_tl: &Decomposition,
    whole: &Term,
) -> Option<Decomposition> {
    use Decomposition::{Empty, NonEmpty};
    match (d_hd, d_tl) {
        (Empty, Empty) => Some(Empty),
        _ if matches!(whole, Term::Ctx(_)) => None,
        (NonEmpty { ctx, subterm }, Empty) => {
            let Term::List(tail) = t_tl else { return None };
            Some(Decomposition::non_empty(Context::head(ctx.clone(), tail.clone()), subterm.clone()))
        }
        (Empty, NonEmpty { ctx, subterm }) => {
            let Context::List(rest) = ctx else { return None };
            Some(Decomposition::non_empty(Context::tail(t_hd.clone(), rest.clone()), subterm.clone()))
        }
        (NonEmpty { .. }, NonEmpty { .. }) => None,
    }
}

/// Result of an in-hole pattern: `whole = c[t_sub]`, and `d_h` is what the
/// hole pattern did with `t_sub`. A match of `t_sub` makes the whole an
/// in-hole match; a decomposition of `t_sub` extends `c` inward.
pub fn combine(whole: &Term, c: &Context, t_sub: &Term, d_h: &Decomposition) -> Decomposition {
    debug_assert_eq!(&c.plug(t_sub.clone()), whole);
    match d_h {
        Decomposition::Empty => Decomposition::Empty,
        Decomposition::NonEmpty { ctx, subterm } => Decomposition::non_empty(c.compose(ctx), subterm.clone()),
    }
}

/// Adds `x` bound to what was matched: the term itself for a match, the
/// context for a decomposition.
pub fn named(x: &PatVar, t: &Term, d: &Decomposition, b: &Bindings) -> Option<Bindings> {
    let v = match d {
        Decomposition::Empty => t.clone(),
        Decomposition::NonEmpty { ctx, .. } => Term::Ctx(ctx.clone()),
    };
    b.union(&Bindings::singleton(x.clone(), v))
}

/// `M_ev g_orig (t, p, g_cur)` with default settings.
pub fn m_ev(g_orig: &Grammar, t: &Term, p: &Pattern, g_cur: &Grammar) -> Result<Vec<MatchResult>, MatchError> {
    Matcher::new(g_orig).run(t, p, g_cur)
}

/// Deduplicated results of `m_ev(g, t, p, g)`.
pub fn match_set(g: &Grammar, t: &Term, p: &Pattern) -> Result<BTreeSet<MatchResult>, MatchError> {
    Ok(m_ev(g, t, p, g)?.into_iter().collect())
}

/// Binding sets of the whole-term matches of `p` against `t`.
pub fn matches(g: &Grammar, t: &Term, p: &Pattern) -> Result<BTreeSet<Bindings>, MatchError> {
    Ok(m_ev(g, t, p, g)?.into_iter().filter(|r| r.decom.is_empty()).map(|r| r.bindings).collect())
}

/// Decompositions of `t` whose context matches `p`.
pub fn decompose(g: &Grammar, t: &Term, p: &Pattern) -> Result<BTreeSet<(Context, Term, Bindings)>, MatchError> {
    Ok(m_ev(g, t, p, g)?
        .into_iter()
        .filter_map(|r| match r.decom {
            Decomposition::Empty => None,
            Decomposition::NonEmpty { ctx, subterm } => Some((ctx, subterm, r.bindings)),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::ListContext;

    fn sym(s: &str) -> Term {
        Term::sym(s)
    }

    fn ab() -> Term {
        Term::list([sym("a"), sym("b")])
    }

    fn lambda_grammar() -> Grammar {
        let nt = Pattern::nt;
        Grammar::new(vec![
            Production::new("e", Pattern::list([nt("e"), nt("e")])),
            Production::new("e", nt("x")),
            Production::new("e", nt("v")),
            Production::new("v", Pattern::list([Pattern::sym("λ"), nt("x"), nt("e")])),
            Production::new("E", Pattern::Hole),
            Production::new("E", Pattern::list([nt("E"), nt("e")])),
            Production::new("E", Pattern::list([nt("v"), nt("E")])),
            Production::new("x", Pattern::sym("x")),
            Production::new("x", Pattern::sym("y")),
        ])
    }

    fn lam(x: &str) -> Term {
        Term::list([sym("λ"), sym(x), sym(x)])
    }

    #[test]
    fn select_cases() {
        let tail = Term::list([sym("b")]);
        let e = Decomposition::Empty;
        assert_eq!(select(&sym("a"), &e, &tail, &e, &ab()), Some(Decomposition::Empty));
        let head = Decomposition::non_empty(Context::Hole, sym("a"));
        assert_eq!(
            select(&sym("a"), &head, &tail, &e, &ab()),
            Some(Decomposition::non_empty(Context::head(Context::Hole, vec![sym("b")]), sym("a")))
        );
        let tl = Decomposition::non_empty(Context::head(Context::Hole, vec![]), sym("b"));
        assert_eq!(select(&sym("a"), &head, &tail, &tl, &ab()), None);
        assert_eq!(
            select(&sym("a"), &e, &tail, &tl, &ab()),
            Some(Decomposition::non_empty(
                Context::tail(sym("a"), ListContext::head(Context::Hole, vec![])),
                sym("b")
            ))
        );
    }

    #[test]
    fn combine_cases() {
        let t = sym("t");
        assert_eq!(combine(&t, &Context::Hole, &t, &Decomposition::Empty), Decomposition::Empty);
        let c = Context::head(Context::Hole, vec![sym("b")]);
        let d = combine(&ab(), &c, &sym("a"), &Decomposition::non_empty(Context::Hole, sym("a")));
        assert_eq!(d, Decomposition::non_empty(c, sym("a")));
    }

    #[test]
    fn named_cases() {
        let x = PatVar::new("x");
        let b = named(&x, &sym("a"), &Decomposition::Empty, &Bindings::new()).unwrap();
        assert_eq!(b, Bindings::singleton(x.clone(), sym("a")));
        let c = Context::head(Context::Hole, vec![sym("b")]);
        let b = named(&x, &ab(), &Decomposition::non_empty(c.clone(), sym("a")), &Bindings::new()).unwrap();
        assert_eq!(b, Bindings::singleton(x.clone(), Term::Ctx(c)));
        let xb = Bindings::singleton(x.clone(), sym("b"));
        assert_eq!(named(&x, &sym("a"), &Decomposition::Empty, &xb), None);
    }

    #[test]
    fn hole_against_hole_gives_both_results() {
        let g = Grammar::empty();
        let r = m_ev(&g, &Term::hole(), &Pattern::Hole, &g).unwrap();
        assert_eq!(
            r,
            [
                MatchResult::new(Decomposition::non_empty(Context::Hole, Term::hole()), Bindings::new()),
                MatchResult::new(Decomposition::Empty, Bindings::new()),
            ]
        );
    }

    #[test]
    fn literals() {
        let g = Grammar::empty();
        let r = m_ev(&g, &sym("a"), &Pattern::sym("a"), &g).unwrap();
        assert_eq!(r, [MatchResult::new(Decomposition::Empty, Bindings::new())]);
        assert!(m_ev(&g, &sym("a"), &Pattern::sym("b"), &g).unwrap().is_empty());
        assert!(decompose(&g, &sym("a"), &Pattern::sym("a")).unwrap().is_empty());
    }

    #[test]
    fn in_hole_with_hole_context_matches_whole() {
        let g = Grammar::empty();
        let p = Pattern::in_hole(Pattern::Hole, Pattern::list([Pattern::sym("a"), Pattern::sym("b")]));
        let r = m_ev(&g, &ab(), &p, &g).unwrap();
        assert_eq!(r, [MatchResult::new(Decomposition::Empty, Bindings::new())]);
    }

    #[test]
    fn names_bind() {
        let g = Grammar::empty();
        let m = matches(&g, &sym("a"), &Pattern::name("x", Pattern::sym("a"))).unwrap();
        assert_eq!(m, BTreeSet::from([Bindings::singleton(PatVar::new("x"), sym("a"))]));
        assert!(matches(&g, &sym("a"), &Pattern::sym("b")).unwrap().is_empty());

        let rep = Pattern::list([Pattern::name("x", Pattern::sym("a")), Pattern::name("x", Pattern::sym("a"))]);
        let m = matches(&g, &Term::list([sym("a"), sym("a")]), &rep).unwrap();
        assert_eq!(m.len(), 1);
    }

    #[test]
    fn lambda_value_and_contexts() {
        let g = lambda_grammar();
        let m = matches(&g, &lam("x"), &Pattern::nt("v")).unwrap();
        assert_eq!(m, BTreeSet::from([Bindings::new()]));

        let app = Term::list([lam("x"), lam("y")]);
        let d = decompose(&g, &app, &Pattern::nt("E")).unwrap();
        assert!(d.contains(&(Context::Hole, app.clone(), Bindings::new())));
        // E -> (v E) also reaches the argument
        assert!(d.contains(&(
            Context::tail(lam("x"), ListContext::head(Context::Hole, vec![])),
            lam("y"),
            Bindings::new()
        )));
    }

    #[test]
    fn hole_pattern_decomposes_at_root() {
        let g = Grammar::empty();
        let d = decompose(&g, &ab(), &Pattern::Hole).unwrap();
        assert_eq!(d, BTreeSet::from([(Context::Hole, ab(), Bindings::new())]));
    }

    #[test]
    fn embedded_context_matches_list_pattern() {
        let g = Grammar::empty();
        let t = Term::Ctx(Context::head(Context::Hole, vec![sym("b")]));
        let p = Pattern::list([Pattern::Hole, Pattern::sym("b")]);
        let r = m_ev(&g, &t, &p, &g).unwrap();
        assert_eq!(r, [MatchResult::new(Decomposition::Empty, Bindings::new())]);
    }

    #[test]
    fn measure_checked_on_left_recursive_grammar() {
        let g = Grammar::new(vec![
            Production::new("n", Pattern::nt("n")),
            Production::new("n", Pattern::sym("a")),
        ]);
        let mut m = Matcher::new(&g).check_measure(true);
        let r = m.run(&sym("a"), &Pattern::nt("n"), &g).unwrap();
        // the self-loop is tried once before its production is gone
        assert_eq!(r.len(), 2);
        assert_eq!(m.stats().measure_violations, 0);
    }

    #[test]
    fn fuel_is_enforced() {
        let g = lambda_grammar();
        let app = Term::list([lam("x"), lam("y")]);
        let err = Matcher::new(&g).with_fuel(1).run(&app, &Pattern::nt("e"), &g).unwrap_err();
        assert_eq!(err, MatchError::FuelExhausted { fuel: 1 });
    }

    #[test]
    fn deterministic() {
        let g = lambda_grammar();
        let app = Term::list([Term::list([lam("x"), lam("y")]), lam("x")]);
        let p = Pattern::in_hole(Pattern::name("E", Pattern::nt("E")), Pattern::name("r", Pattern::nt("e")));
        assert_eq!(m_ev(&g, &app, &p, &g).unwrap(), m_ev(&g, &app, &p, &g).unwrap());
    }
}
