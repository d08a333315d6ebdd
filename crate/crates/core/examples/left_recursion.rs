//! Detecting left recursion, and the matcher still terminating on it.

use std::path::Path;

use evalctx::syntax::{load_language, parse_pattern, parse_term};
use evalctx::Matcher;

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("languages");
    for file in ["lambda.sexp", "leftrec.sexp", "leftrec-inhole.sexp"] {
        let lang = load_language(dir.join(file)).unwrap();
        match lang.grammar.left_recursion() {
            Some(lr) => {
                let cycle: Vec<String> = lr.cycle.iter().map(ToString::to_string).collect();
                println!("{file}: left recursive via {}", cycle.join(" -> "));
            }
            None => println!("{file}: not left recursive"),
        }
    }

    let lang = load_language(dir.join("leftrec-inhole.sexp")).unwrap();
    let p = parse_pattern("(nt e)").unwrap();
    for t in ["a", "(a b)", "((a b) b)", "(b a)"] {
        let term = parse_term(t).unwrap();
        let mut m = Matcher::new(&lang.grammar).check_measure(true);
        let results = m.run(&term, &p, &lang.grammar).unwrap();
        let matched = results.iter().any(|r| r.decom.is_empty());
        println!("{t}: matched={matched} ({})", m.stats());
    }
}
