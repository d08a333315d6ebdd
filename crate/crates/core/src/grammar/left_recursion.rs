//! Left-recursion detection.
//!
//! A grammar is left recursive when some pattern reaches itself through
//! steps that consume no input: a non-terminal steps to each of its
//! right-hand sides, `(name x p)` steps to `p`, `(in-hole pc ph)` steps to
//! `pc`, and to `ph` as well when `pc` can match the bare hole. Any such
//! cycle stays inside the subpatterns of the grammar's right-hand sides, so
//! the search runs over that finite node set.

use std::collections::{BTreeSet, HashMap};

use super::Grammar;
use crate::pattern::Pattern;

/// A witness cycle: each pattern steps to the next, and the last steps back
/// to the first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftRecursion {
    pub cycle: Vec<Pattern>,
}

fn universe(g: &Grammar) -> Vec<Pattern> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for prod in g.productions() {
        for p in prod.rhs.subpatterns() {
            if seen.insert(p.clone()) {
                out.push(p);
            }
        }
    }
    out
}

/// Subpatterns of `g` that can match the bare hole, as a least fixed point.
pub fn hole_matchable(g: &Grammar) -> BTreeSet<Pattern> {
    let nodes = universe(g);
    let mut set = BTreeSet::new();
    loop {
        let before = set.len();
        for p in &nodes {
            if !set.contains(p) && step(g, &set, p) {
                set.insert(p.clone());
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

/// Whether `p` (not necessarily a subpattern of `g`) can match the bare hole.
pub fn matches_hole(g: &Grammar, p: &Pattern) -> bool {
    let set = hole_matchable(g);
    eval(g, &set, p)
}

fn step(g: &Grammar, set: &BTreeSet<Pattern>, p: &Pattern) -> bool {
    match p {
        Pattern::Hole => true,
        Pattern::Name(_, sub) => set.contains(sub.as_ref()),
        Pattern::Nt(n) => g.productions_of(n).any(|rhs| set.contains(rhs)),
        Pattern::InHole(c, h) => set.contains(c.as_ref()) && set.contains(h.as_ref()),
        Pattern::Lit(_) | Pattern::List(_) => false,
    }
}

fn eval(g: &Grammar, set: &BTreeSet<Pattern>, p: &Pattern) -> bool {
    match p {
        Pattern::Hole => true,
        Pattern::Name(_, sub) => eval(g, set, sub),
        Pattern::Nt(n) => g.productions_of(n).any(|rhs| set.contains(rhs)),
        Pattern::InHole(c, h) => eval(g, set, c) && eval(g, set, h),
        Pattern::Lit(_) | Pattern::List(_) => false,
    }
}

fn successors(g: &Grammar, holes: &BTreeSet<Pattern>, p: &Pattern) -> Vec<Pattern> {
    match p {
        Pattern::Nt(n) => g.productions_of(n).cloned().collect(),
        Pattern::Name(_, sub) => vec![(**sub).clone()],
        Pattern::InHole(c, h) => {
            let mut out = vec![(**c).clone()];
            if holes.contains(c.as_ref()) {
                out.push((**h).clone());
            }
            out
        }
        Pattern::Lit(_) | Pattern::Hole | Pattern::List(_) => Vec::new(),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mark {
    Fresh,
    OnStack,
    Done,
}

pub(super) fn find_cycle(g: &Grammar) -> Option<LeftRecursion> {
    let nodes = universe(g);
    let holes = hole_matchable(g);
    let index: HashMap<&Pattern, usize> = nodes.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let edges: Vec<Vec<usize>> = nodes
        .iter()
        .map(|p| successors(g, &holes, p).iter().map(|s| index[s]).collect())
        .collect();

    let mut marks = vec![Mark::Fresh; nodes.len()];
    let mut path = Vec::new();
    for root in 0..nodes.len() {
        if marks[root] == Mark::Fresh {
            if let Some(start) = dfs(root, &edges, &mut marks, &mut path) {
                let pos = path.iter().position(|&n| n == start).expect("cycle start is on the path");
                let cycle = path[pos..].iter().map(|&i| nodes[i].clone()).collect();
                return Some(LeftRecursion { cycle });
            }
        }
    }
    None
}

/// Returns the node that closes a cycle, leaving the cycle on `path`.
fn dfs(node: usize, edges: &[Vec<usize>], marks: &mut [Mark], path: &mut Vec<usize>) -> Option<usize> {
    marks[node] = Mark::OnStack;
    path.push(node);
    for &next in &edges[node] {
        match marks[next] {
            Mark::OnStack => return Some(next),
            Mark::Fresh => {
                if let Some(start) = dfs(next, edges, marks, path) {
                    return Some(start);
                }
            }
            Mark::Done => {}
        }
    }
    path.pop();
    marks[node] = Mark::Done;
    None
}
