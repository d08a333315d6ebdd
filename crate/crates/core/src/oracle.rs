//! Brute-force reading of the matching and decomposition judgments.
//!
//! Nothing here shares code with the matcher beyond the term and grammar
//! types. Decompositions are found by listing every position of the term
//! and then checking, rule by rule, whether the pattern can describe the
//! context at that position. It is exponential and meant for small inputs.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::grammar::{Grammar, Production};
use crate::matcher::{Bindings, Decomposition, MatchResult};
use crate::pattern::Pattern;
use crate::term::{Context, ListContext, ListContextView, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("derivation search ran out of fuel on {term} against {pattern}; the grammar may be left recursive")]
    FuelExhausted { term: Term, pattern: Pattern },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum JudgmentKind {
    Match,
    Decompose,
}

/// A derivable judgment `g_orig ⊢ t : p, g_cur | b` or
/// `g_orig ⊢ t = C[t'] : p, g_cur | b`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Judgment {
    pub kind: JudgmentKind,
    pub g_orig: Grammar,
    pub t: Term,
    pub p: Pattern,
    pub g_cur: Grammar,
    pub decomposition: Option<(Context, Term)>,
    pub bindings: Bindings,
}

/// Every `(c, s)` with `plug(c, s) = t`, root first, then positions in
/// left-to-right preorder. Embedded contexts are single positions.
pub fn enumerate_decompositions(t: &Term) -> Vec<(Context, Term)> {
    let mut out = vec![(Context::Hole, t.clone())];
    if let Term::List(items) = t {
        for (i, item) in items.iter().enumerate() {
            for (c, s) in enumerate_decompositions(item) {
                let ctx = Context::List(ListContext {
                    before: items[..i].to_vec(),
                    focus: Box::new(c),
                    after: items[i + 1..].to_vec(),
                });
                out.push((ctx, s));
            }
        }
    }
    out
}

type Found<T> = Result<BTreeSet<T>, OracleError>;

struct Search<'g> {
    g: &'g Grammar,
}

fn fuel_for(p: &Pattern, g: &Grammar) -> usize {
    p.size() + g.total_size() + 1
}

/// Cons components of a non-empty list term or of an embedded list context.
fn uncons(t: &Term) -> Option<(Term, Term)> {
    match t {
        Term::List(items) if !items.is_empty() => Some((items[0].clone(), Term::List(items[1..].to_vec()))),
        Term::Ctx(Context::List(lc)) => Some(lc.split()),
        _ => None,
    }
}

fn cross(left: &BTreeSet<Bindings>, right: &BTreeSet<Bindings>) -> BTreeSet<Bindings> {
    left.iter().flat_map(|l| right.iter().filter_map(move |r| l.union(r))).collect()
}

impl Search<'_> {
    fn exhausted(t: &Term, p: &Pattern) -> OracleError {
        OracleError::FuelExhausted { term: t.clone(), pattern: p.clone() }
    }

    /// Bindings `b` with `g ⊢ t : p, g_cur | b`.
    fn matching(&self, t: &Term, p: &Pattern, g_cur: &Grammar, fuel: usize) -> Found<Bindings> {
        if fuel == 0 {
            return Err(Self::exhausted(t, p));
        }
        let g = self.g;
        let fresh = |p: &Pattern| fuel_for(p, g);
        let mut out = BTreeSet::new();
        match p {
            Pattern::Lit(a) => {
                if matches!(t, Term::Lit(b) if a == b) {
                    out.insert(Bindings::new());
                }
            }
            Pattern::Hole => {
                if t.is_hole() {
                    out.insert(Bindings::new());
                }
            }
            Pattern::List(ps) => match ps.split_first() {
                None => {
                    if matches!(t, Term::List(items) if items.is_empty()) {
                        out.insert(Bindings::new());
                    }
                }
                Some((p_hd, p_tl)) => {
                    if let Some((t_hd, t_tl)) = uncons(t) {
                        let p_tl = Pattern::List(p_tl.to_vec());
                        let hd = self.matching(&t_hd, p_hd, g, fresh(p_hd))?;
                        if !hd.is_empty() {
                            let tl = self.matching(&t_tl, &p_tl, g, fresh(&p_tl))?;
                            out = cross(&hd, &tl);
                        }
                    }
                }
            },
            Pattern::Name(x, sub) => {
                for b in self.matching(t, sub, g_cur, fuel - 1)? {
                    if let Some(b) = b.union(&Bindings::singleton(x.clone(), t.clone())) {
                        out.insert(b);
                    }
                }
            }
            Pattern::Nt(n) => {
                for rhs in g_cur.productions_of(n) {
                    let rest = g_cur.remove_prod(&Production { nt: n.clone(), rhs: rhs.clone() }).expect("member");
                    if !self.matching(t, rhs, &rest, fuel - 1)?.is_empty() {
                        out.insert(Bindings::new());
                        break;
                    }
                }
            }
            Pattern::InHole(pc, ph) => {
                for (c, t_c) in enumerate_decompositions(t) {
                    let bc = self.decomposing(t, &c, &t_c, pc, g_cur, fuel - 1)?;
                    if bc.is_empty() {
                        continue;
                    }
                    let bh = if c.is_hole() {
                        self.matching(t, ph, g_cur, fuel - 1)?
                    } else {
                        self.matching(&t_c, ph, g, fresh(ph))?
                    };
                    out.extend(cross(&bc, &bh));
                }
            }
        }
        Ok(out)
    }

    /// Bindings `b` with `g ⊢ t = c[s] : p, g_cur | b`, for the given `c`
    /// and `s`.
    fn decomposing(
        &self,
        t: &Term,
        c: &Context,
        s: &Term,
        p: &Pattern,
        g_cur: &Grammar,
        fuel: usize,
    ) -> Found<Bindings> {
        if fuel == 0 {
            return Err(Self::exhausted(t, p));
        }
        let g = self.g;
        let fresh = |p: &Pattern| fuel_for(p, g);
        let mut out = BTreeSet::new();
        match p {
            Pattern::Lit(_) => {}
            Pattern::Hole => {
                if c.is_hole() && s == t {
                    out.insert(Bindings::new());
                }
            }
            Pattern::List(ps) => {
                let (Some((p_hd, p_tl)), Term::List(items), Context::List(lc)) = (ps.split_first(), t, c) else {
                    return Ok(out);
                };
                if items.is_empty() {
                    return Ok(out);
                }
                let t_hd = &items[0];
                let t_tl = Term::List(items[1..].to_vec());
                let p_tl = Pattern::List(p_tl.to_vec());
                match lc.view() {
                    ListContextView::Head { hole_side, tail } => {
                        if tail != &items[1..] {
                            return Ok(out);
                        }
                        let hd = self.decomposing(t_hd, hole_side, s, p_hd, g, fresh(p_hd))?;
                        if !hd.is_empty() {
                            out = cross(&hd, &self.matching(&t_tl, &p_tl, g, fresh(&p_tl))?);
                        }
                    }
                    ListContextView::Tail { head } => {
                        if head != t_hd {
                            return Ok(out);
                        }
                        let rest = Context::List(ListContext {
                            before: lc.before[1..].to_vec(),
                            focus: lc.focus.clone(),
                            after: lc.after.clone(),
                        });
                        let hd = self.matching(t_hd, p_hd, g, fresh(p_hd))?;
                        if !hd.is_empty() {
                            out = cross(&hd, &self.decomposing(&t_tl, &rest, s, &p_tl, g, fresh(&p_tl))?);
                        }
                    }
                }
            }
            Pattern::Name(x, sub) => {
                for b in self.decomposing(t, c, s, sub, g_cur, fuel - 1)? {
                    if let Some(b) = b.union(&Bindings::singleton(x.clone(), Term::Ctx(c.clone()))) {
                        out.insert(b);
                    }
                }
            }
            Pattern::Nt(n) => {
                for rhs in g_cur.productions_of(n) {
                    let rest = g_cur.remove_prod(&Production { nt: n.clone(), rhs: rhs.clone() }).expect("member");
                    if !self.decomposing(t, c, s, rhs, &rest, fuel - 1)?.is_empty() {
                        out.insert(Bindings::new());
                        break;
                    }
                }
            }
            Pattern::InHole(pc, ph) => {
                for (cc, ch) in c.splits() {
                    let t_c = ch.plug(s.clone());
                    let bc = self.decomposing(t, &cc, &t_c, pc, g_cur, fuel - 1)?;
                    if bc.is_empty() {
                        continue;
                    }
                    let bh = if cc.is_hole() {
                        self.decomposing(t, &ch, s, ph, g_cur, fuel - 1)?
                    } else {
                        self.decomposing(&t_c, &ch, s, ph, g, fresh(ph))?
                    };
                    out.extend(cross(&bc, &bh));
                }
            }
        }
        Ok(out)
    }
}

/// Every `b` such that `g_orig ⊢ t : p, g_cur | b` is derivable.
pub fn search_match(g_orig: &Grammar, t: &Term, p: &Pattern, g_cur: &Grammar) -> Found<Bindings> {
    Search { g: g_orig }.matching(t, p, g_cur, fuel_for(p, g_cur))
}

/// Every `(C, t', b)` such that `g_orig ⊢ t = C[t'] : p, g_cur | b` is
/// derivable.
pub fn search_decompose(g_orig: &Grammar, t: &Term, p: &Pattern, g_cur: &Grammar) -> Found<(Context, Term, Bindings)> {
    let search = Search { g: g_orig };
    let mut out = BTreeSet::new();
    for (c, s) in enumerate_decompositions(t) {
        for b in search.decomposing(t, &c, &s, p, g_cur, fuel_for(p, g_cur))? {
            out.insert((c.clone(), s.clone(), b));
        }
    }
    Ok(out)
}

/// Bindings `b` with `g_orig ⊢ t = c[s] : p, g_cur | b`, for one candidate
/// decomposition.
pub fn check_decomposition(
    g_orig: &Grammar,
    t: &Term,
    c: &Context,
    s: &Term,
    p: &Pattern,
    g_cur: &Grammar,
) -> Found<Bindings> {
    if c.plug(s.clone()) != *t {
        return Ok(BTreeSet::new());
    }
    Search { g: g_orig }.decomposing(t, c, s, p, g_cur, fuel_for(p, g_cur))
}

/// Matching in the ungeneralized system, which coincides with the
/// generalized one started from the full grammar.
pub fn search_match_original(g: &Grammar, t: &Term, p: &Pattern) -> Found<Bindings> {
    search_match(g, t, p, g)
}

/// Matches and decompositions together, in the matcher's result shape.
pub fn search_results(g_orig: &Grammar, t: &Term, p: &Pattern, g_cur: &Grammar) -> Found<MatchResult> {
    let mut out: BTreeSet<MatchResult> = search_match(g_orig, t, p, g_cur)?
        .into_iter()
        .map(|b| MatchResult::new(Decomposition::Empty, b))
        .collect();
    for (ctx, subterm, b) in search_decompose(g_orig, t, p, g_cur)? {
        out.insert(MatchResult::new(Decomposition::NonEmpty { ctx, subterm }, b));
    }
    Ok(out)
}

/// All derivable judgments for `(t, p)` as explicit records.
pub fn judgments(g_orig: &Grammar, t: &Term, p: &Pattern, g_cur: &Grammar) -> Result<Vec<Judgment>, OracleError> {
    let base = |kind, decomposition, bindings| Judgment {
        kind,
        g_orig: g_orig.clone(),
        t: t.clone(),
        p: p.clone(),
        g_cur: g_cur.clone(),
        decomposition,
        bindings,
    };
    let mut out: Vec<Judgment> = search_match(g_orig, t, p, g_cur)?
        .into_iter()
        .map(|b| base(JudgmentKind::Match, None, b))
        .collect();
    for (c, s, b) in search_decompose(g_orig, t, p, g_cur)? {
        out.push(base(JudgmentKind::Decompose, Some((c, s)), b));
    }
    Ok(out)
}
