//! Invariant suites over a small corpus, run by `valfram selftest`.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{vp, Rat, Val};
use crate::chains::MlvChain;
use crate::cli::parse::parse_poly;
use crate::corpus::{audit_equivalence, build_corpus, Corpus, CorpusSpec};
use crate::error::Result;
use crate::okutsu::{
    chain_from_frame, distance_chains, frame_from_chain, is_hos_key, krasner_constant, meet, OkutsuFrame,
};
use crate::poly::{resultant, Poly};
use crate::sample::{int_coeffs, poly_salt, probe_ints, rng_for, SamplerConfig};

use rand::Rng;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checked: u64,
    /// At most [`MAX_REPORTED`] failure descriptions.
    pub failures: Vec<String>,
    pub failed: u64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

pub const MAX_REPORTED: usize = 5;

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub corpus_sizes: Vec<(u64, usize)>,
    pub suites: Vec<SuiteResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }
}

#[derive(Clone, Debug)]
pub struct SelftestConfig {
    pub corpus: CorpusSpec,
    pub sampler: SamplerConfig,
    /// Probes per polynomial in the sampled suites.
    pub probes: usize,
    /// Cap on sampled triples in the ultrametric suite.
    pub triples: usize,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            corpus: CorpusSpec { max_degree: 3, height: 2, ..CorpusSpec::standard() },
            sampler: SamplerConfig { grid_height: 3, random_draws: 200, ..SamplerConfig::default() },
            probes: 100,
            triples: 20_000,
        }
    }
}

struct Tally {
    name: &'static str,
    checked: u64,
    failures: Vec<String>,
    failed: u64,
}

impl Tally {
    fn new(name: &'static str) -> Tally {
        Tally { name, checked: 0, failures: Vec::new(), failed: 0 }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failed += 1;
        if self.failures.len() < MAX_REPORTED {
            self.failures.push(msg);
        }
    }

    fn merge(&mut self, other: Tally) {
        self.checked += other.checked;
        self.failed += other.failed;
        for f in other.failures {
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(f);
            }
        }
    }

    fn done(self) -> SuiteResult {
        SuiteResult { name: self.name, checked: self.checked, failures: self.failures, failed: self.failed }
    }
}

// Runs `body` on every entry in parallel and merges the tallies.
fn per_entry(
    name: &'static str,
    corpora: &[Corpus],
    body: impl Fn(&Corpus, &MlvChain, &mut Tally) -> Result<()> + Sync,
) -> SuiteResult {
    let mut total = Tally::new(name);
    for corpus in corpora {
        let parts: Vec<Tally> = corpus
            .entries
            .par_iter()
            .map(|e| {
                let mut t = Tally::new(name);
                if let Err(err) = body(corpus, &e.chain, &mut t) {
                    t.fail(format!("{} at p = {}: {err}", e.poly, corpus.prime.p()));
                }
                t
            })
            .collect();
        for t in parts {
            total.merge(t);
        }
    }
    total.done()
}

fn probes(chain: &MlvChain, count: usize, salt: u64) -> Vec<Poly> {
    let mut rng = rng_for(salt, poly_salt(chain.poly()));
    let keys: Vec<Vec<i64>> = chain.top().keys().iter().filter_map(int_coeffs).collect();
    let n = chain.poly().deg();
    (0..count).map(|_| Poly::from_ints(&probe_ints(&mut rng, &keys, chain.prime().p(), n, 1 << 10))).collect()
}

pub fn run_selftest(cfg: &SelftestConfig) -> Result<SelftestReport> {
    let corpora = build_corpus(&cfg.corpus)?;
    let seed = cfg.sampler.seed;
    let mut suites = Vec::new();

    suites.push(per_entry("parse-render", &corpora, |_, c, t| {
        let f = c.poly();
        t.check(parse_poly(&f.render()).ok().as_ref() == Some(f), || format!("{f} does not round-trip"));
        Ok(())
    }));

    suites.push(per_entry("resultant-oracle", &corpora, |corpus, c, t| {
        let n = Rat::from_int(c.poly().deg() as i64);
        for g in probes(c, cfg.probes, seed) {
            let lhs = c.vf(&g)?.scale(&n)?;
            let rhs = vp(&resultant(c.poly(), &g)?, corpus.prime);
            t.check(lhs == rhs, || format!("deg F · v_F({g}) = {lhs} but vp(Res) = {rhs} for {}", c.poly()));
        }
        Ok(())
    }));

    suites.push(per_entry("frame-round-trip", &corpora, |corpus, c, t| {
        if c.poly().deg() < 2 {
            return Ok(());
        }
        let frame = frame_from_chain(c)?;
        let back = chain_from_frame(&frame, corpus.prime)?;
        let (a, b) = (c.top(), back.top());
        let same_levels = a.len() == b.len()
            && a.levels().zip(b.levels()).all(|(x, y)| x.degree() == y.degree() && x.gamma() == y.gamma());
        t.check(same_levels, || format!("{}: levels differ after the round trip", c.poly()));
        for g in probes(c, cfg.probes, seed ^ 1) {
            let (x, y) = (c.vf(&g)?, back.vf(&g)?);
            t.check(x == y, || format!("{}: v_F({g}) = {x} but {y} after the round trip", c.poly()));
        }
        Ok(())
    }));

    suites.push(per_entry("fundamental-property", &corpora, |_, c, t| {
        if c.poly().deg() < 2 {
            return Ok(());
        }
        let report = crate::okutsu::verify_frame(&frame_from_chain(c)?, c, &cfg.sampler)?;
        t.check(report.passed(), || {
            let bad = report.first_failure().map(|f| f.name.clone()).unwrap_or_default();
            format!("{}: frame check {bad} fails", c.poly())
        });
        Ok(())
    }));

    suites.push(structure_suite(&corpora));

    suites.push(per_entry("krasner", &corpora, |_, c, t| {
        let f = c.poly();
        if f.deg() < 2 || f.gcd(&f.derivative()).deg() > 0 {
            return Ok(());
        }
        let omega = krasner_constant(c)?;
        let frame = frame_from_chain(c)?;
        let last = Val::Finite(frame.weights()?.last().expect("nonempty frame").1.clone());
        t.check(last <= omega, || format!("{f}: last weight {last} exceeds Ω = {omega}"));
        Ok(())
    }));

    suites.push(per_entry("hos-coverage", &corpora, |_, c, t| {
        if c.poly().deg() < 2 {
            return Ok(());
        }
        for phi in frame_from_chain(c)?.representatives() {
            t.check(is_hos_key(c, phi)?, || format!("{phi} is not an HOS key of {}", c.poly()));
        }
        Ok(())
    }));

    suites.push(pair_suite(&corpora, cfg));
    suites.push(ultrametric_suite(&corpora, cfg));
    suites.push(equivalence_suite(&corpora)?);
    suites.push(schema_suite(&corpora)?);

    Ok(SelftestReport { corpus_sizes: corpora.iter().map(|c| (c.prime.p(), c.len())).collect(), suites })
}

fn structure_suite(corpora: &[Corpus]) -> SuiteResult {
    per_entry("structure", corpora, |_, c, t| {
        let f = c.poly();
        let meta = c.metadata()?;
        let e: i64 = meta.iter().map(|m| m.e).product();
        let fr: usize = meta.iter().map(|m| m.residual_degree).product();
        t.check(e as usize * fr == f.deg(), || format!("{f}: e·f = {e}·{fr}"));
        if f.deg() < 2 {
            return Ok(());
        }
        let frame: OkutsuFrame = frame_from_chain(c)?;
        let mut degrees = frame.degrees();
        degrees.push(f.deg());
        t.check(degrees.windows(2).all(|w| w[1] % w[0] == 0 && w[1] > w[0]), || {
            format!("{f}: degrees {degrees:?} do not divide")
        });
        let w = frame.weights()?;
        t.check(w.windows(2).all(|p| p[0].1 < p[1].1), || format!("{f}: weights do not increase"));
        Ok(())
    })
}

fn pair_suite(corpora: &[Corpus], cfg: &SelftestConfig) -> SuiteResult {
    let mut t = Tally::new("distance-and-meet");
    for corpus in corpora {
        let mut rng = rng_for(cfg.sampler.seed, 0x6d65_6574 ^ corpus.prime.p());
        let n = corpus.len();
        if n < 2 {
            continue;
        }
        for _ in 0..cfg.triples / 10 {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if i == j {
                continue;
            }
            let (cf, cg) = (&corpus.entries[i].chain, &corpus.entries[j].chain);
            match (distance_chains(cf, cg), meet(cf, cg)) {
                (Ok(u), Ok(node)) => {
                    t.check(node.wt() == u, || format!("wt(meet({}, {})) ≠ {u}", cf.poly(), cg.poly()));
                    for h in probes(cf, 4, i as u64).into_iter().chain(probes(cg, 4, j as u64)) {
                        let ok = match (cf.vf(&h), cg.vf(&h)) {
                            (Ok(a), Ok(b)) => node.value(&h) <= a.min(b),
                            _ => false,
                        };
                        t.check(ok, || format!("meet({}, {}) exceeds a leaf at {h}", cf.poly(), cg.poly()));
                    }
                }
                (Err(e), _) | (_, Err(e)) => t.fail(format!("({}, {}): {e}", cf.poly(), cg.poly())),
            }
        }
    }
    t.done()
}

fn ultrametric_suite(corpora: &[Corpus], cfg: &SelftestConfig) -> SuiteResult {
    let mut t = Tally::new("ultrametric");
    for corpus in corpora {
        let n = corpus.len();
        if n == 0 {
            continue;
        }
        let mut rng = rng_for(cfg.sampler.seed, 0x7472_6970 ^ corpus.prime.p());
        let u = |i: usize, j: usize| {
            crate::okutsu::resultant_distance(&corpus.entries[i].poly, &corpus.entries[j].poly, corpus.prime)
        };
        for _ in 0..cfg.triples {
            let (i, j, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            let (Ok(ij), Ok(ji), Ok(ik), Ok(kj)) = (u(i, j), u(j, i), u(i, k), u(k, j)) else {
                t.fail(format!("resultant failed on triple ({i}, {j}, {k})"));
                continue;
            };
            let (f, g) = (&corpus.entries[i].poly, &corpus.entries[j].poly);
            t.check(ij == ji, || format!("u({f}, {g}) = {ij} but u({g}, {f}) = {ji}"));
            t.check(ij.is_pos_inf() == (i == j), || format!("u({f}, {g}) = {ij}"));
            t.check(ij >= ik.clone().min(kj.clone()), || format!("strong triangle fails on ({f}, {g})"));
        }
    }
    t.done()
}

fn equivalence_suite(corpora: &[Corpus]) -> Result<SuiteResult> {
    let mut t = Tally::new("okutsu-equivalence");
    for corpus in corpora {
        let audit = audit_equivalence(corpus)?;
        t.checked += audit.evaluations;
        for &(i, j) in &audit.disagreements {
            t.fail(format!("criteria disagree on ({}, {})", corpus.entries[i].poly, corpus.entries[j].poly));
        }
        for v in audit.violations {
            t.fail(v);
        }
        // closeness read from either side
        for class in &audit.classes {
            let (a, b) = (class[0], class[class.len() - 1]);
            if a == b || corpus.entries[a].poly.deg() < 2 {
                continue;
            }
            let (ca, cb) = (&corpus.entries[a].chain, &corpus.entries[b].chain);
            let u = crate::okutsu::resultant_distance(ca.poly(), cb.poly(), corpus.prime)?;
            let (wa, wb) = (ca.previous_primitive()?.wt(), cb.previous_primitive()?.wt());
            t.check(u > wa && u > wb, || format!("{} and {} are not close from both sides", ca.poly(), cb.poly()));
        }
    }
    Ok(t.done())
}

fn schema_suite(corpora: &[Corpus]) -> Result<SuiteResult> {
    let mut t = Tally::new("json-schema");
    let is_frac =
        |v: &serde_json::Value| v.as_str().is_some_and(|s| s == "inf" || s == "-inf" || s.parse::<Rat>().is_ok());
    for corpus in corpora {
        for e in corpus.entries.iter().take(200) {
            let c = serde_json::to_value(e.chain.to_json()?).expect("serializable");
            let nodes_ok = c["nodes"].as_array().is_some_and(|ns| {
                ns.iter().all(|n| {
                    n["phi"].is_string()
                        && is_frac(&n["gamma"])
                        && n["degree"].is_u64()
                        && is_frac(&n["weight"])
                        && n["residual_degree"].is_u64()
                })
            });
            t.check(
                c["prime"].is_u64()
                    && c["poly"].is_string()
                    && c["certified"].is_boolean()
                    && c["depth"].is_u64()
                    && c["e"].is_i64()
                    && c["f"].is_u64()
                    && nodes_ok,
                || format!("chain JSON of {} is malformed", e.poly),
            );
            if e.poly.deg() < 2 {
                continue;
            }
            let fr = serde_json::to_value(frame_from_chain(&e.chain)?.to_json()?).expect("serializable");
            let levels_ok = fr["levels"].as_array().is_some_and(|ls| {
                ls.iter().all(|l| l["degree"].is_u64() && l["phis"].is_array() && is_frac(&l["gamma"]))
            });
            let weights_ok = fr["weights"].as_array().is_some_and(|ws| {
                ws.iter().all(|w| w[0].as_str().is_some_and(|m| m.parse::<u64>().is_ok()) && is_frac(&w[1]))
            });
            t.check(fr["poly"].is_string() && levels_ok && weights_ok && is_frac(&fr["okutsu_bound"]), || {
                format!("frame JSON of {} is malformed", e.poly)
            });
        }
    }
    Ok(t.done())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_selftest_passes() {
        let cfg = SelftestConfig {
            corpus: CorpusSpec { primes: vec![2, 3], max_degree: 2, height: 2, ..CorpusSpec::standard() },
            sampler: SamplerConfig { grid_height: 2, random_draws: 20, ..SamplerConfig::default() },
            probes: 10,
            triples: 500,
        };
        let report = run_selftest(&cfg).unwrap();
        for s in &report.suites {
            assert!(s.passed(), "{}: {:?}", s.name, s.failures);
            assert!(s.checked > 0, "{} checked nothing", s.name);
        }
    }
}
