//! Every way to split a λ-term into an evaluation context and a redex.

use std::path::Path;

use evalctx::syntax::{load_language, parse_pattern, parse_term};
use evalctx::decompose;

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("languages/lambda.sexp");
    let lang = load_language(path).unwrap();
    let t = parse_term("(((λ x x) (λ y y)) ((λ z z) (λ w w)))").unwrap();

    println!("contexts of {t}:");
    let any = parse_pattern("(nt E)").unwrap();
    for (ctx, sub, _) in decompose(&lang.grammar, &t, &any).unwrap() {
        println!("  {ctx}  around  {sub}");
    }

    let redex = parse_pattern("(in-hole (name E (nt E)) (name r ((nt v) (nt v))))").unwrap();
    println!("redex positions:");
    for b in evalctx::matches(&lang.grammar, &t, &redex).unwrap() {
        println!("  {b}");
    }
}
