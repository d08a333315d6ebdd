//! Reduction graphs for the λ-calculus and for boolean conditionals.

use std::path::Path;

use evalctx::syntax::{load_language, parse_term};
use evalctx::trace;

fn show(file: &str, term: &str, max_steps: usize) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("languages").join(file);
    let lang = load_language(path).unwrap();
    let t = parse_term(term).unwrap();
    let tr = trace(&lang.grammar, &lang.rules, &t, max_steps).unwrap();
    println!("{file}: {t}");
    for (i, n) in tr.nodes.iter().enumerate() {
        println!("  [{i}] depth {} {:?}: {}", n.depth, n.status, n.term);
    }
    for e in &tr.edges {
        println!("  {} --{}--> {}", e.from, e.rule, e.to);
    }
}

fn main() {
    show("lambda.sexp", "(((λ x x) (λ y y)) ((λ z z) (λ w w)))", 10);
    show("bool.sexp", "(if (and #t #f) (and #t #t) #f)", 10);
    show("bool.sexp", "(if (and #t #f) (and #t #t) #f)", 1);
}
