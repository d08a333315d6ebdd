//! Comparing the matcher with the exhaustive search on a few inputs.

use std::collections::BTreeSet;

use evalctx::oracle::{judgments, search_results};
use evalctx::syntax::{parse_language, parse_pattern, parse_term};
use evalctx::m_ev;

const LANG: &str = "
(define-language arith
  (e (+ (nt e) (nt e)) (nt n))
  (n 0 1 2)
  (E hole (+ (nt E) (nt e)) (+ (nt n) (nt E))))
";

fn main() {
    let lang = parse_language(LANG).unwrap();
    let g = &lang.grammar;
    let t = parse_term("(+ (+ 1 2) (+ 0 1))").unwrap();
    for p in ["(nt e)", "(nt E)", "(in-hole (nt E) (+ (nt n) (nt n)))", "(in-hole (name C (nt E)) (name r (+ (nt n) (nt n))))"] {
        let pat = parse_pattern(p).unwrap();
        let engine: BTreeSet<_> = m_ev(g, &t, &pat, g).unwrap().into_iter().collect();
        let oracle = search_results(g, &t, &pat, g).unwrap();
        println!("{p}: {} results, agree = {}", engine.len(), engine == oracle);
    }

    let pat = parse_pattern("(in-hole (nt E) (+ (nt n) (nt n)))").unwrap();
    println!("judgments for {t} against {pat}:");
    for j in judgments(g, &t, &pat, g).unwrap() {
        match &j.decomposition {
            Some((c, s)) => println!("  {:?} {c} [{s}] {}", j.kind, j.bindings),
            None => println!("  {:?} {}", j.kind, j.bindings),
        }
    }
}
