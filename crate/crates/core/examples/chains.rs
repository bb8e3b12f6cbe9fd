//! MacLane–Vaquié chains of the extensions of v_p to Q[x]/(F).
//!
//! Usage: `cargo run --example chains -- [poly] [prime]`
use valfram::arith::{PBase, Val};
use valfram::chains::{build_chains, DEFAULT_SV_BOUND};
use valfram::cli::parse::parse_poly;

fn main() {
    let mut args = std::env::args().skip(1);
    let f = parse_poly(&args.next().unwrap_or_else(|| "(x^2+x+1)^2-2".into())).expect("polynomial");
    let p: u64 = args.next().map_or(2, |s| s.parse().expect("prime"));
    let report = build_chains(&f, PBase::new(p).expect("prime"), &Val::int(DEFAULT_SV_BOUND)).expect("chains");
    println!("{f} at p = {p}: {} branch(es)", report.branches.len());
    for b in &report.branches {
        let c = &b.chain;
        println!("  {} (local degree {}, certified {})", c.poly(), b.local_degree, c.certified());
        for node in c.nodes() {
            println!("    {node}");
        }
        if let Ok((e, f)) = c.ramification_invariants() {
            println!("    e = {e}, f = {f}, δ_0 = {:?}", c.okutsu_bound().ok().map(|v| v.to_string()));
        }
    }
}
