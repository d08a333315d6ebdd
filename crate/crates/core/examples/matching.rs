//! Whole-term matches with non-terminals and repeated names.

use evalctx::syntax::{parse_language, parse_pattern, parse_term};
use evalctx::matches;

const LANG: &str = "
(define-language pairs
  (p ((nt s) (nt s)))
  (s a b c))
";

fn main() {
    let lang = parse_language(LANG).unwrap();
    let g = &lang.grammar;
    let cases = [
        ("(name x (nt p))", "(a b)"),
        ("((name x (nt s)) (name y (nt s)))", "(a b)"),
        ("((name x (nt s)) (name x (nt s)))", "(a b)"),
        ("((name x (nt s)) (name x (nt s)))", "(c c)"),
        ("(nt p)", "(a d)"),
    ];
    for (p, t) in cases {
        let pat = parse_pattern(p).unwrap();
        let term = parse_term(t).unwrap();
        let found = matches(g, &term, &pat).unwrap();
        if found.is_empty() {
            println!("{t} against {p}: no match");
        }
        for b in found {
            println!("{t} against {p}: {b}");
        }
    }
}
