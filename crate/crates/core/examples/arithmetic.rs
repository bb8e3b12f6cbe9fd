//! p-adic valuations of rationals and arithmetic in Q ∪ {±∞}.
use valfram::arith::{vp, PBase, Rat, Val};

fn main() {
    let two = PBase::new(2).unwrap();
    for q in [Rat::from_int(12), Rat::frac(3, 8), Rat::zero()] {
        println!("v_2({q}) = {}", vp(&q, two));
    }
    let half = Val::frac(1, 2);
    println!("1/2 + inf = {}", half.add(&Val::PosInf).unwrap());
    println!("min(1/2, 1/3) = {}", half.clone().min(Val::frac(1, 3)));
    println!("3 · 1/2 = {}", half.scale(&Rat::from_int(3)).unwrap());
    println!("-inf < -10^6: {}", Val::NegInf < Val::int(-1_000_000));
}
