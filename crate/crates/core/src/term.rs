//! Terms, contexts and the operations that relate them: plugging, context
//! composition and the proper-subterm relation.
//!
//! A term is a literal, a list of terms, or an embedded context. A context is
//! either a bare hole or a list with exactly one position leading to a hole.
//! List contexts are stored flattened (`before`, `focus`, `after`); the cons
//! view used by the matching rules (head context versus tail context) is
//! recovered through [`ListContext::head`], [`ListContext::tail`] and
//! [`ListContext::split`].

use std::fmt;

use thiserror::Error;

/// Atomic values shared by terms and patterns.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Literal {
    Sym(String),
    Int(i64),
    Bool(bool),
}

impl Literal {
    pub fn sym(s: impl Into<String>) -> Self {
        Literal::Sym(s.into())
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Sym(s) => f.write_str(s),
            Literal::Int(n) => write!(f, "{n}"),
            Literal::Bool(true) => f.write_str("#t"),
            Literal::Bool(false) => f.write_str("#f"),
        }
    }
}

/// A pattern variable, as introduced by `(name x p)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PatVar(pub String);

impl PatVar {
    pub fn new(s: impl Into<String>) -> Self {
        PatVar(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for PatVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A grammar non-terminal, as referenced by `(nt n)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NonTerminal(pub String);

impl NonTerminal {
    pub fn new(s: impl Into<String>) -> Self {
        NonTerminal(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NonTerminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Lit(Literal),
    List(Vec<Term>),
    Ctx(Context),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Context {
    Hole,
    List(ListContext),
}

/// A list with one marked position. The terms in `before` and `after` are
/// the siblings of the position; `focus` is the context found at it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ListContext {
    pub before: Vec<Term>,
    pub focus: Box<Context>,
    pub after: Vec<Term>,
}

/// The cons view of a list context.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ListContextView<'a> {
    /// The hole is in the first element; `tail` is the rest of the list.
    Head { hole_side: &'a Context, tail: &'a [Term] },
    /// The first element is an ordinary term; the hole is further right.
    Tail { head: &'a Term },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContextError {
    #[error("term contains no hole")]
    NoHole,
    #[error("term contains {0} holes, expected exactly one")]
    MultipleHoles(usize),
}

impl ListContext {
    /// `HeadCtx(hole_side, tail)`.
    pub fn head(hole_side: Context, tail: Vec<Term>) -> Self {
        ListContext { before: Vec::new(), focus: Box::new(hole_side), after: tail }
    }

    /// `TailCtx(head, rest)`.
    pub fn tail(head: Term, rest: ListContext) -> Self {
        let mut before = Vec::with_capacity(rest.before.len() + 1);
        before.push(head);
        before.extend(rest.before);
        ListContext { before, focus: rest.focus, after: rest.after }
    }

    pub fn view(&self) -> ListContextView<'_> {
        match self.before.first() {
            None => ListContextView::Head { hole_side: &self.focus, tail: &self.after },
            Some(head) => ListContextView::Tail { head },
        }
    }

    /// Splits into the cons components: the head (as a term) and the tail
    /// (as a term). For a head context the head is the embedded context
    /// `Ctx(hole_side)` and the tail is a plain list; for a tail context the
    /// tail is the remaining list context embedded as a term.
    pub fn split(&self) -> (Term, Term) {
        match self.view() {
            ListContextView::Head { hole_side, tail } => {
                (Term::Ctx(hole_side.clone()), Term::List(tail.to_vec()))
            }
            ListContextView::Tail { head } => {
                let rest = ListContext {
                    before: self.before[1..].to_vec(),
                    focus: self.focus.clone(),
                    after: self.after.clone(),
                };
                (head.clone(), Term::Ctx(Context::List(rest)))
            }
        }
    }

    /// Number of elements of the list this context describes.
    pub fn len(&self) -> usize {
        self.before.len() + 1 + self.after.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl Context {
    pub fn head(hole_side: Context, tail: Vec<Term>) -> Self {
        Context::List(ListContext::head(hole_side, tail))
    }

    pub fn tail(head: Term, rest: ListContext) -> Self {
        Context::List(ListContext::tail(head, rest))
    }

    pub fn is_hole(&self) -> bool {
        matches!(self, Context::Hole)
    }

    /// Replaces the hole with `t`. Plugging a context-valued term embeds it
    /// as an ordinary node; hole rewiring is [`Context::compose`].
    pub fn plug(&self, t: Term) -> Term {
        match self {
            Context::Hole => t,
            Context::List(lc) => {
                let mut items = Vec::with_capacity(lc.len());
                items.extend(lc.before.iter().cloned());
                items.push(lc.focus.plug(t));
                items.extend(lc.after.iter().cloned());
                Term::List(items)
            }
        }
    }

    /// The context obtained by placing `inner` in the hole of `self`.
    pub fn compose(&self, inner: &Context) -> Context {
        match self {
            Context::Hole => inner.clone(),
            Context::List(lc) => Context::List(ListContext {
                before: lc.before.clone(),
                focus: Box::new(lc.focus.compose(inner)),
                after: lc.after.clone(),
            }),
        }
    }

    /// Every way of writing `self` as `compose(outer, inner)`, outermost
    /// split (`outer = Hole`) first.
    pub fn splits(&self) -> Vec<(Context, Context)> {
        let mut out = vec![(Context::Hole, self.clone())];
        if let Context::List(lc) = self {
            for (outer, inner) in lc.focus.splits() {
                let outer = Context::List(ListContext {
                    before: lc.before.clone(),
                    focus: Box::new(outer),
                    after: lc.after.clone(),
                });
                out.push((outer, inner));
            }
        }
        out
    }

    /// Number of `Hole` constructors on the context's own spine. Terms
    /// stored as siblings are not part of the spine.
    pub fn hole_count(&self) -> usize {
        match self {
            Context::Hole => 1,
            Context::List(lc) => lc.focus.hole_count(),
        }
    }

    fn siblings(&self) -> impl Iterator<Item = &Term> {
        let mut out = Vec::new();
        let mut cur = self;
        while let Context::List(lc) = cur {
            out.extend(lc.before.iter().chain(&lc.after));
            cur = &lc.focus;
        }
        out.into_iter()
    }

    /// Node count of the context read as a term.
    pub fn size(&self) -> usize {
        match self {
            Context::Hole => 1,
            Context::List(lc) => {
                1 + lc.before.iter().chain(&lc.after).map(Term::size).sum::<usize>() + lc.focus.size()
            }
        }
    }

    /// Length of the path from the root to the hole.
    pub fn depth(&self) -> usize {
        match self {
            Context::Hole => 0,
            Context::List(lc) => 1 + lc.focus.depth(),
        }
    }

    fn term_depth(&self) -> usize {
        match self {
            Context::Hole => 0,
            Context::List(lc) => {
                let sibling = lc.before.iter().chain(&lc.after).map(Term::depth).max().unwrap_or(0);
                1 + sibling.max(lc.focus.term_depth())
            }
        }
    }
}

impl Term {
    pub fn sym(s: impl Into<String>) -> Self {
        Term::Lit(Literal::sym(s))
    }

    pub fn int(n: i64) -> Self {
        Term::Lit(Literal::Int(n))
    }

    pub fn list(items: impl IntoIterator<Item = Term>) -> Self {
        Term::List(items.into_iter().collect())
    }

    pub fn nil() -> Self {
        Term::List(Vec::new())
    }

    /// The term consisting of a bare hole.
    pub fn hole() -> Self {
        Term::Ctx(Context::Hole)
    }

    pub fn is_hole(&self) -> bool {
        matches!(self, Term::Ctx(Context::Hole))
    }

    /// The components a matching step may recurse into without violating
    /// the subterm order: head and tail of a non-empty list, and the cons
    /// components of an embedded list context.
    pub fn immediate_subterms(&self) -> Vec<Term> {
        match self {
            Term::Lit(_) | Term::Ctx(Context::Hole) => Vec::new(),
            Term::List(items) => match items.split_first() {
                None => Vec::new(),
                Some((hd, tl)) => vec![hd.clone(), Term::List(tl.to_vec())],
            },
            Term::Ctx(Context::List(lc)) => {
                let (hd, tl) = lc.split();
                vec![hd, tl]
            }
        }
    }

    /// True iff `sub` occurs strictly inside `self`.
    pub fn has_proper_subterm(&self, sub: &Term) -> bool {
        // A proper subterm is never larger than its parent.
        if sub.size() >= self.size() {
            return false;
        }
        self.immediate_subterms()
            .iter()
            .any(|s| s == sub || s.has_proper_subterm(sub))
    }

    /// Node count, where every list suffix counts as a node.
    pub fn size(&self) -> usize {
        match self {
            Term::Lit(_) => 1,
            Term::List(items) => 1 + items.iter().map(Term::size).sum::<usize>(),
            Term::Ctx(c) => c.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Lit(_) => 0,
            Term::List(items) => 1 + items.iter().map(Term::depth).max().unwrap_or(0),
            Term::Ctx(c) => c.term_depth(),
        }
    }

    pub fn hole_count(&self) -> usize {
        match self {
            Term::Lit(_) => 0,
            Term::List(items) => items.iter().map(Term::hole_count).sum(),
            Term::Ctx(c) => c.hole_count() + c.siblings().map(Term::hole_count).sum::<usize>(),
        }
    }

    /// Rewrites embedded list contexts into plain lists with a bare hole at
    /// the hole position. This is the form the printer can express.
    pub fn flatten_contexts(&self) -> Term {
        match self {
            Term::Lit(_) | Term::Ctx(Context::Hole) => self.clone(),
            Term::List(items) => Term::List(items.iter().map(Term::flatten_contexts).collect()),
            Term::Ctx(c @ Context::List(_)) => c.plug(Term::hole()).flatten_contexts(),
        }
    }

    /// Reads a term with exactly one hole as a context whose tags record the
    /// path to that hole.
    pub fn to_context(&self) -> Result<Context, ContextError> {
        match self.hole_count() {
            0 => return Err(ContextError::NoHole),
            1 => {}
            n => return Err(ContextError::MultipleHoles(n)),
        }
        Ok(self.path_to_hole())
    }

    fn path_to_hole(&self) -> Context {
        match self {
            Term::Ctx(c) => c.clone(),
            Term::List(items) => {
                let i = items
                    .iter()
                    .position(|t| t.hole_count() > 0)
                    .expect("hole_count checked by caller");
                Context::List(ListContext {
                    before: items[..i].to_vec(),
                    focus: Box::new(items[i].path_to_hole()),
                    after: items[i + 1..].to_vec(),
                })
            }
            Term::Lit(_) => unreachable!("literals contain no hole"),
        }
    }
}

impl From<Context> for Term {
    fn from(c: Context) -> Self {
        Term::Ctx(c)
    }
}

impl From<Literal> for Term {
    fn from(l: Literal) -> Self {
        Term::Lit(l)
    }
}
