//! Finite fields, factorization over them and extension towers.
use valfram::arith::PBase;
use valfram::residue::{ff_extend, ff_factor, ff_is_irreducible, FqCtx, FqPoly};

fn main() {
    let f2 = FqCtx::prime(PBase::new(2).unwrap());
    for c in [[0, 1, 1], [1, 0, 1], [1, 1, 1]] {
        let f = FqPoly::from_u64s(&f2, &c);
        let factors: Vec<String> = ff_factor(&f).unwrap().iter().map(|(g, m)| format!("({g})^{m}")).collect();
        println!("{f} over F_2 = {}", factors.join(" "));
    }
    let q = FqPoly::from_u64s(&f2, &[1, 1, 1]);
    let f4 = ff_extend(&f2, &q).unwrap();
    let k = f4.ctx();
    println!("F_2[t]/({q}) has order {:?}", k.order());
    let q4 = f4.embed_poly(&q);
    println!("{q} irreducible over F_4: {}", ff_is_irreducible(&q4).unwrap());
    let w = k.gen();
    let g = FqPoly::new(k, vec![w, k.one(), k.one()]);
    let f16 = ff_extend(k, &g).unwrap();
    println!("F_4[y]/({g}) has degree {} over F_2", f16.ctx().degree());
}
