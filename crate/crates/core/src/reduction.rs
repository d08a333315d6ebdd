//! Reduction rules: a pattern on the left, a template on the right.
//!
//! A rule fires once for every set of bindings its left-hand side matches
//! with; the template is then filled in from those bindings. There is no
//! substitution, so rules can only rearrange and plug what they matched.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::grammar::Grammar;
use crate::matcher::{matches, Bindings, MatchError};
use crate::pattern::Pattern;
use crate::term::{Context, Literal, PatVar, Term};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Template {
    Lit(Literal),
    Hole,
    List(Vec<Template>),
    Ref(PatVar),
    /// Plugs the second template into the context the first one builds.
    InHole(Box<Template>, Box<Template>),
}

impl Template {
    pub fn sym(s: impl Into<String>) -> Self {
        Template::Lit(Literal::sym(s))
    }

    pub fn list(items: impl IntoIterator<Item = Template>) -> Self {
        Template::List(items.into_iter().collect())
    }

    pub fn var(x: impl Into<String>) -> Self {
        Template::Ref(PatVar::new(x))
    }

    pub fn in_hole(c: Template, t: Template) -> Self {
        Template::InHole(Box::new(c), Box::new(t))
    }

    pub fn vars(&self) -> BTreeSet<PatVar> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<PatVar>) {
        match self {
            Template::Lit(_) | Template::Hole => {}
            Template::List(items) => items.iter().for_each(|t| t.collect_vars(out)),
            Template::Ref(x) => {
                out.insert(x.clone());
            }
            Template::InHole(c, t) => {
                c.collect_vars(out);
                t.collect_vars(out);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("template variable {0} is not bound")]
    UnboundVariable(PatVar),
    #[error("in-hole template needs a context, got {0}")]
    NotAContext(Term),
    #[error(transparent)]
    Match(#[from] MatchError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub name: String,
    pub lhs: Pattern,
    pub rhs: Template,
}

impl Rule {
    /// Fails if the template refers to a variable the pattern never binds.
    pub fn new(name: impl Into<String>, lhs: Pattern, rhs: Template) -> Result<Self, ReductionError> {
        let bound = lhs.bound_vars();
        if let Some(x) = rhs.vars().into_iter().find(|x| !bound.contains(x)) {
            return Err(ReductionError::UnboundVariable(x));
        }
        Ok(Rule { name: name.into(), lhs, rhs })
    }
}

/// Fills in `tpl` from `b`. The context position of an in-hole template
/// accepts a bound context, or any term with exactly one hole.
pub fn instantiate(tpl: &Template, b: &Bindings) -> Result<Term, ReductionError> {
    Ok(match tpl {
        Template::Lit(a) => Term::Lit(a.clone()),
        Template::Hole => Term::hole(),
        Template::List(items) => Term::List(items.iter().map(|t| instantiate(t, b)).collect::<Result<_, _>>()?),
        Template::Ref(x) => b.get(x).cloned().ok_or_else(|| ReductionError::UnboundVariable(x.clone()))?,
        Template::InHole(c, t) => {
            let ctx = as_context(instantiate(c, b)?)?;
            ctx.plug(instantiate(t, b)?)
        }
    })
}

fn as_context(t: Term) -> Result<Context, ReductionError> {
    match t {
        Term::Ctx(c) => Ok(c),
        other => other.to_context().map_err(|_| ReductionError::NotAContext(other)),
    }
}

/// Every result of firing `r` on `t`, without duplicates.
pub fn apply_rule(g: &Grammar, r: &Rule, t: &Term) -> Result<Vec<Term>, ReductionError> {
    let mut out = Vec::new();
    for b in matches(g, t, &r.lhs)? {
        let next = instantiate(&r.rhs, &b)?;
        if !out.contains(&next) {
            out.push(next);
        }
    }
    Ok(out)
}

/// One reduction step under every rule, tagged with the rule name.
pub fn step(g: &Grammar, rules: &[Rule], t: &Term) -> Result<Vec<(String, Term)>, ReductionError> {
    let mut out = Vec::new();
    for r in rules {
        for next in apply_rule(g, r, t)? {
            out.push((r.name.clone(), next));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeStatus {
    /// Expanded, with at least one successor.
    Reduced,
    NormalForm,
    /// Reducible, but at the depth limit.
    Cutoff,
    /// Expanded, and one of its steps leads back to itself or to a term on
    /// the path from the root.
    Cycle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceNode {
    pub term: Term,
    pub depth: usize,
    pub status: NodeStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEdge {
    pub from: usize,
    pub to: usize,
    pub rule: String,
}

/// The reduction graph explored from a start term. Node 0 is the start;
/// nodes appear in breadth-first order and each distinct term once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub nodes: Vec<TraceNode>,
    pub edges: Vec<TraceEdge>,
}

impl Trace {
    pub fn successors(&self, node: usize) -> impl Iterator<Item = &TraceEdge> {
        self.edges.iter().filter(move |e| e.from == node)
    }

    /// Nodes that were not reduced further, for whatever reason.
    pub fn leaves(&self) -> impl Iterator<Item = &TraceNode> {
        self.nodes.iter().filter(|n| n.status != NodeStatus::Reduced)
    }

    /// Terms in normal form.
    pub fn normal_forms(&self) -> impl Iterator<Item = &Term> {
        self.nodes.iter().filter(|n| n.status == NodeStatus::NormalForm).map(|n| &n.term)
    }
}

/// Breadth-first exploration of at most `max_steps` steps from `t`.
pub fn trace(g: &Grammar, rules: &[Rule], t: &Term, max_steps: usize) -> Result<Trace, ReductionError> {
    let mut nodes = vec![TraceNode { term: t.clone(), depth: 0, status: NodeStatus::Reduced }];
    let mut parent: Vec<Option<usize>> = vec![None];
    let mut index: HashMap<Term, usize> = HashMap::from([(t.clone(), 0)]);
    let mut edges = Vec::new();

    let mut i = 0;
    while i < nodes.len() {
        let succ = step(g, rules, &nodes[i].term)?;
        if succ.is_empty() {
            nodes[i].status = NodeStatus::NormalForm;
        } else if nodes[i].depth >= max_steps {
            nodes[i].status = NodeStatus::Cutoff;
        } else {
            let mut cycle = false;
            for (rule, next) in succ {
                let to = match index.get(&next) {
                    Some(&j) => {
                        cycle |= is_ancestor(&parent, j, i);
                        j
                    }
                    None => {
                        let j = nodes.len();
                        nodes.push(TraceNode { term: next.clone(), depth: nodes[i].depth + 1, status: NodeStatus::Reduced });
                        parent.push(Some(i));
                        index.insert(next, j);
                        j
                    }
                };
                edges.push(TraceEdge { from: i, to, rule });
            }
            if cycle {
                nodes[i].status = NodeStatus::Cycle;
            }
        }
        i += 1;
    }
    Ok(Trace { nodes, edges })
}

fn is_ancestor(parent: &[Option<usize>], candidate: usize, mut node: usize) -> bool {
    loop {
        if node == candidate {
            return true;
        }
        match parent[node] {
            Some(p) => node = p,
            None => return false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::Production;

    fn sym(s: &str) -> Term {
        Term::sym(s)
    }

    fn lam(x: &str) -> Term {
        Term::list([sym("λ"), sym(x), sym(x)])
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
            Production::new("x", Pattern::sym("z")),
        ])
    }

    /// β restricted to identity functions: `(λ x x)` applied to a value.
    fn beta_id() -> Rule {
        let x = || Pattern::name("x", Pattern::nt("x"));
        let redex = Pattern::list([
            Pattern::list([Pattern::sym("λ"), x(), x()]),
            Pattern::name("a", Pattern::nt("v")),
        ]);
        let lhs = Pattern::in_hole(Pattern::name("E", Pattern::nt("E")), redex);
        Rule::new("beta", lhs, Template::in_hole(Template::var("E"), Template::var("a"))).unwrap()
    }

    #[test]
    fn instantiate_cases() {
        let b = Bindings::singleton(PatVar::new("x"), sym("a"));
        assert_eq!(instantiate(&Template::var("x"), &b).unwrap(), sym("a"));
        assert_eq!(
            instantiate(&Template::var("y"), &b),
            Err(ReductionError::UnboundVariable(PatVar::new("y")))
        );
        let e = Bindings::singleton(PatVar::new("E"), Term::Ctx(Context::head(Context::Hole, vec![sym("c")])));
        let t = instantiate(&Template::in_hole(Template::var("E"), Template::sym("b")), &e).unwrap();
        assert_eq!(t, Term::list([sym("b"), sym("c")]));
        let bad = instantiate(&Template::in_hole(Template::sym("k"), Template::sym("b")), &e);
        assert_eq!(bad, Err(ReductionError::NotAContext(sym("k"))));
        let literal_ctx = Template::in_hole(Template::list([Template::sym("f"), Template::Hole]), Template::sym("b"));
        assert_eq!(instantiate(&literal_ctx, &e).unwrap(), Term::list([sym("f"), sym("b")]));
    }

    #[test]
    fn rule_construction_checks_template_vars() {
        let err = Rule::new("r", Pattern::name("a", Pattern::nt("e")), Template::var("b")).unwrap_err();
        assert_eq!(err, ReductionError::UnboundVariable(PatVar::new("b")));
    }

    #[test]
    fn literal_rule() {
        let g = Grammar::empty();
        let r = Rule::new("r", Pattern::sym("a"), Template::sym("b")).unwrap();
        assert_eq!(apply_rule(&g, &r, &sym("a")).unwrap(), [sym("b")]);
        assert!(apply_rule(&g, &r, &sym("c")).unwrap().is_empty());
        assert!(step(&g, &[], &sym("a")).unwrap().is_empty());
        assert_eq!(step(&g, &[r], &sym("a")).unwrap().len(), 1);
    }

    #[test]
    fn two_rules_both_fire() {
        let g = Grammar::empty();
        let r1 = Rule::new("one", Pattern::sym("a"), Template::sym("b")).unwrap();
        let r2 = Rule::new("two", Pattern::name("x", Pattern::sym("a")), Template::list([Template::var("x")])).unwrap();
        let s = step(&g, &[r1, r2], &sym("a")).unwrap();
        assert_eq!(s, [("one".to_string(), sym("b")), ("two".to_string(), Term::list([sym("a")]))]);
    }

    #[test]
    fn generic_beta_shape_fires_per_context() {
        // lhs (in-hole (name E (nt E)) ((name f (nt v)) (name a (nt v)))), rhs plugs a back in
        let g = lambda_grammar();
        let lhs = Pattern::in_hole(
            Pattern::name("E", Pattern::nt("E")),
            Pattern::list([Pattern::name("f", Pattern::nt("v")), Pattern::name("a", Pattern::nt("v"))]),
        );
        let r = Rule::new("app", lhs, Template::in_hole(Template::var("E"), Template::var("a"))).unwrap();
        let t = Term::list([lam("x"), lam("y")]);
        assert_eq!(apply_rule(&g, &r, &t).unwrap(), [lam("y")]);
        // a value is not an application in any context
        assert!(apply_rule(&g, &r, &lam("x")).unwrap().is_empty());
    }

    #[test]
    fn beta_traces() {
        let g = lambda_grammar();
        let rules = [beta_id()];

        let t1 = Term::list([lam("x"), lam("y")]);
        let tr = trace(&g, &rules, &t1, 10).unwrap();
        assert_eq!(tr.nodes.len(), 2);
        assert_eq!(tr.edges.len(), 1);
        assert_eq!(tr.normal_forms().collect::<Vec<_>>(), [&lam("y")]);

        let t2 = Term::list([t1.clone(), lam("z")]);
        let tr = trace(&g, &rules, &t2, 10).unwrap();
        let terms: Vec<_> = tr.nodes.iter().map(|n| n.term.clone()).collect();
        assert_eq!(terms, [t2, Term::list([lam("y"), lam("z")]), lam("z")]);
        for n in 0..2 {
            assert_eq!(tr.successors(n).count(), 1);
        }
    }

    #[test]
    fn trace_limits() {
        let g = lambda_grammar();
        let rules = [beta_id()];
        let tr = trace(&g, &rules, &lam("x"), 5).unwrap();
        assert_eq!(tr.nodes.len(), 1);
        assert_eq!(tr.nodes[0].status, NodeStatus::NormalForm);

        let t = Term::list([lam("x"), lam("y")]);
        let tr = trace(&g, &rules, &t, 0).unwrap();
        assert_eq!(tr.nodes.len(), 1);
        assert_eq!(tr.nodes[0].status, NodeStatus::Cutoff);
    }

    #[test]
    fn trace_detects_cycles() {
        let g = Grammar::empty();
        let rules = [
            Rule::new("ab", Pattern::sym("a"), Template::sym("b")).unwrap(),
            Rule::new("ba", Pattern::sym("b"), Template::sym("a")).unwrap(),
        ];
        let tr = trace(&g, &rules, &sym("a"), 10).unwrap();
        assert_eq!(tr.nodes.len(), 2);
        assert_eq!(tr.nodes[1].status, NodeStatus::Cycle);
    }
}
