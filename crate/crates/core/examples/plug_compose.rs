//! Building contexts, plugging terms into them and composing them.

use evalctx::syntax::{parse_context, parse_term};

fn main() {
    let outer = parse_context("(f hole (g c))").unwrap();
    let inner = parse_context("(hole b)").unwrap();
    let t = parse_term("a").unwrap();

    println!("outer           = {outer}");
    println!("inner           = {inner}");
    println!("outer[inner[a]] = {}", outer.plug(inner.plug(t.clone())));

    let both = outer.compose(&inner);
    println!("(outer . inner) = {both}");
    println!("plugged         = {}", both.plug(t));

    println!("splits of {both}:");
    for (o, i) in both.splits() {
        println!("  {o}  then  {i}");
    }
}
