//! A reduced self-test over a small corpus.
use valfram::corpus::CorpusSpec;
use valfram::selftest::{run_selftest, SelftestConfig};

fn main() {
    let cfg = SelftestConfig {
        corpus: CorpusSpec { max_degree: 2, height: 3, ..CorpusSpec::standard() },
        ..SelftestConfig::default()
    };
    let report = run_selftest(&cfg).unwrap();
    for s in &report.suites {
        println!("{:<24} {:>8} checked, {} failed", s.name, s.checked, s.failed);
    }
    println!("{}", if report.passed() { "PASS" } else { "FAIL" });
}
