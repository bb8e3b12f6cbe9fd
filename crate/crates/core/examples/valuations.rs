//! Inductive valuations: augmentation, values, Newton polygons, residual
//! polynomials and keys.
use valfram::arith::{PBase, Rat, Val};
use valfram::cli::parse::parse_poly;
use valfram::valuation::InductiveVal;

fn main() {
    let two = PBase::new(2).unwrap();
    let gauss = InductiveVal::gauss(two);
    let q = parse_poly("x^2+x+1").unwrap();
    let f = parse_poly("(x^2+x+1)^2-2").unwrap();
    println!("{q} is a key for the Gauss valuation: {}", gauss.is_key(&q));
    let mu = gauss.augment(&q, Val::frac(1, 2)).unwrap();
    println!("μ = {mu}");
    for g in [&q, &f, &parse_poly("x").unwrap()] {
        println!("μ({g}) = {}", mu.value(g));
    }
    let (deg, sv, wt) = mu.node_invariants().unwrap();
    println!("deg μ = {deg}, sv = {sv}, wt = {wt}");
    let np = gauss.newton_polygon(&q, &f).unwrap();
    for s in &np.sides {
        println!("side of slope {} over [{}, {}]", s.slope, s.start, s.end());
    }
    let psi = gauss.side_residual(&q, &Rat::frac(1, 2), &f).unwrap();
    println!("residual polynomial along it: {psi} over a field of degree {}", psi.ctx().degree());
    let eis = InductiveVal::depth_zero(two, Rat::zero(), Val::frac(1, 2)).unwrap();
    println!("x^2-2 is a key for {eis}: {}", eis.is_key(&parse_poly("x^2-2").unwrap()));
}
