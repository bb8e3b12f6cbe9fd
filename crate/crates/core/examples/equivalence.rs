//! Okutsu equivalence on pairs and the classes it cuts out of a family.
use valfram::arith::PBase;
use valfram::cli::parse::parse_poly;
use valfram::corpus::{box_family, okutsu_classes, Corpus};
use valfram::okutsu::okutsu_equivalent;

fn main() {
    let two = PBase::new(2).unwrap();
    for (f, g) in [("x^2-2", "x^2-6"), ("x^2-2", "x^2-3"), ("(x^2+x+1)^2-2", "(x^2+x+1)^2+2")] {
        let eq = okutsu_equivalent(&parse_poly(f).unwrap(), &parse_poly(g).unwrap(), two).unwrap();
        println!("{f} ~ {g}: {eq}");
    }
    let corpus = Corpus::from_family(two, &box_family(2, 3)).unwrap();
    let classes = okutsu_classes(&corpus).unwrap();
    println!("{} irreducible monic polynomials of degree ≤ 2 with |coefficients| ≤ 3 at p = 2", corpus.len());
    for class in classes.iter().filter(|c| corpus.entries[c[0]].poly.deg() == 2) {
        let members: Vec<String> = class.iter().map(|&i| corpus.entries[i].poly.to_string()).collect();
        println!("  {{{}}}", members.join(", "));
    }
}
