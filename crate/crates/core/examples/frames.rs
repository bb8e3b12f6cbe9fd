//! Okutsu frames: extraction from a chain, weights, the round trip back and
//! sampled verification.
use valfram::arith::{PBase, Val};
use valfram::chains::{chain_of, DEFAULT_SV_BOUND};
use valfram::cli::parse::parse_poly;
use valfram::okutsu::{chain_from_frame, frame_from_chain, verify_frame};
use valfram::sample::SamplerConfig;

fn main() {
    let two = PBase::new(2).unwrap();
    for text in ["x^2-2", "x^2+x+1", "(x^2+x+1)^2-2"] {
        let f = parse_poly(text).unwrap();
        let chain = chain_of(&f, two, &Val::int(DEFAULT_SV_BOUND)).unwrap();
        let frame = frame_from_chain(&chain).unwrap();
        let levels: Vec<String> = frame.levels.iter().map(|l| format!("{{{}}} γ = {}", l.phis[0], l.gamma)).collect();
        println!("{f}: [{}]", levels.join(", "));
        let weights: Vec<String> = frame.weights().unwrap().iter().map(|(m, w)| format!("({m}, {w})")).collect();
        println!("  weights {}, δ_0 = {}", weights.join(" "), frame.okutsu_bound().unwrap());
        let back = chain_from_frame(&frame, two).unwrap();
        println!("  rebuilt chain has depth {}", back.depth());
        let report = verify_frame(&frame, &chain, &SamplerConfig::default()).unwrap();
        for c in &report.checks {
            println!("  {:<36} {} ({} samples)", c.name, if c.passed { "ok" } else { "FAILED" }, c.samples);
        }
    }
}
