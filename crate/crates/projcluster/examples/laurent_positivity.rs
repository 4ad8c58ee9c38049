//! Exact rational functions: arithmetic, substitution and positivity certificates.

use projcluster::arith::{certify_positive, Positivity};
use projcluster::{RatFunc, Var};
use std::collections::HashMap;

fn main() -> projcluster::Result<()> {
    let f: RatFunc = "(x^2 + x*y + y^2) / (x*y)".parse()?;
    let g: RatFunc = "x + 1".parse()?;
    println!("f = {f}");
    println!("f * g = {}", &f * &g);

    let sub: HashMap<Var, RatFunc> = [(Var::new("y"), "1 + x".parse()?)].into_iter().collect();
    println!("f(x, 1 + x) = {}", f.substitute(&sub)?);

    for expr in ["x + x^-1 + 2", "(1 + x + y) / (x + y)", "x - y"] {
        let e: RatFunc = expr.parse()?;
        match certify_positive(&e, 100, 7) {
            Positivity::NegativeWitness { point, value } => println!("{expr}: negative, {value} at {point:?}"),
            p => println!("{expr}: {}", p.label()),
        }
    }
    Ok(())
}
