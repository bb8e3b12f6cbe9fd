//! The Krasner constant of an irreducible polynomial and the HOS test for
//! candidate frame members.
use valfram::arith::{PBase, Val};
use valfram::chains::{chain_of, DEFAULT_SV_BOUND};
use valfram::cli::parse::parse_poly;
use valfram::okutsu::{frame_from_chain, is_hos_key, krasner_constant};

fn main() {
    let two = PBase::new(2).unwrap();
    for text in ["x^2-2", "x^2+x+1", "(x^2+x+1)^2-2", "x^4+6"] {
        let chain = chain_of(&parse_poly(text).unwrap(), two, &Val::int(DEFAULT_SV_BOUND)).unwrap();
        let omega = krasner_constant(&chain).unwrap();
        let last = frame_from_chain(&chain).unwrap().weights().unwrap().last().unwrap().1.clone();
        println!("{text}: Ω = {omega}, last weight {last}");
    }
    let chain = chain_of(&parse_poly("x^2-2").unwrap(), two, &Val::int(DEFAULT_SV_BOUND)).unwrap();
    for g in ["x", "x^2-2", "x^2+x", "x+1"] {
        println!("{g} is HOS for x^2-2: {}", is_hos_key(&chain, &parse_poly(g).unwrap()).unwrap());
    }
}
