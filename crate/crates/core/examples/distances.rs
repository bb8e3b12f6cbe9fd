//! The ultrametric distance between irreducible polynomials and the meet of
//! their chains.
use valfram::arith::{PBase, Val};
use valfram::chains::{chain_of, DEFAULT_SV_BOUND};
use valfram::cli::parse::parse_poly;
use valfram::okutsu::{distance, meet};

fn main() {
    let two = PBase::new(2).unwrap();
    let chain = |s: &str| chain_of(&parse_poly(s).unwrap(), two, &Val::int(DEFAULT_SV_BOUND)).unwrap();
    for (f, g) in [("x^2-2", "x^2-6"), ("x-1", "x-3"), ("x^2-2", "x^2-3")] {
        let (cf, cg) = (chain(f), chain(g));
        let u = distance(cf.poly(), cg.poly(), two).unwrap();
        let m = meet(&cf, &cg).unwrap();
        println!("u({f}, {g}) = {u}, meet {m} of weight {}", m.wt());
    }
    let f = chain("x^2-2");
    println!("u(F, F) = {}; the meet of a chain with itself is undefined", distance(f.poly(), f.poly(), two).unwrap());
}
