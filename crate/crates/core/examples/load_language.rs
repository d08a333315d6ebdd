//! Loading a language file and applying its rules by hand.

use std::env;
use std::path::PathBuf;

use evalctx::syntax::{load_language, parse_term};
use evalctx::{apply_rule, step};

fn main() {
    let path = env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("languages/bool.sexp"));
    let lang = match load_language(&path) {
        Ok(l) => l,
        Err(e) => {
            eprintln!("{}: {e}", path.display());
            std::process::exit(2);
        }
    };
    println!("language {} with {} productions", lang.name, lang.grammar.len());
    for prod in lang.grammar.productions() {
        println!("  {prod}");
    }
    for r in &lang.rules {
        println!("rule {}: {} => {}", r.name, r.lhs, r.rhs);
    }

    let t = parse_term("(and (if #f #t #f) #t)").unwrap();
    for r in &lang.rules {
        let out = apply_rule(&lang.grammar, r, &t).unwrap();
        let shown: Vec<String> = out.iter().map(ToString::to_string).collect();
        println!("{} on {t}: [{}]", r.name, shown.join(", "));
    }
    for (rule, next) in step(&lang.grammar, &lang.rules, &t).unwrap() {
        println!("{t} -> {next} by {rule}");
    }
}
