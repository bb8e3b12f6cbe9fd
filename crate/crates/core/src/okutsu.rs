//! Okutsu frames, the ultrametric distance on irreducible polynomials,
//! Okutsu equivalence, Krasner constants and HOS key polynomials.

use std::collections::HashMap;
use std::sync::Mutex;

use rand::Rng;
use serde::Serialize;

use crate::arith::{vp, PBase, Rat, Val};
use crate::chains::{chain_of, irreducible_chain, MlvChain, DEFAULT_SV_BOUND};
use crate::error::{Error, Result};
use crate::poly::{resultant, Poly};
use crate::sample::{int_coeffs, poly_salt, probe_ints, rng_for, visit_monic_grid, SamplerConfig, DEFAULT_SEED};
use crate::valuation::{int_expansion, trim, InductiveVal, IntPoly, NewtonPolygon};

/// Number of random pairs in the multiplicativity test of [`is_hos_key`].
pub const HOS_PAIRS: usize = 1000;

/// A level `Φ_ℓ` of a frame: polynomials of degree `m_ℓ` and `γ_ℓ = v_F(φ_ℓ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameLevel {
    pub degree: usize,
    pub phis: Vec<Poly>,
    pub gamma: Val,
}

/// `[Φ_0, …, Φ_r]` for a polynomial `F` of degree at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OkutsuFrame {
    pub poly: Poly,
    pub levels: Vec<FrameLevel>,
}

impl OkutsuFrame {
    /// Singleton levels `{φ_ℓ}` with `γ_ℓ` from the resultant. No invariant is checked.
    pub fn from_keys(poly: &Poly, keys: &[Poly], base: PBase) -> Result<OkutsuFrame> {
        let levels = keys
            .iter()
            .map(|phi| {
                Ok(FrameLevel { degree: phi.deg(), phis: vec![phi.clone()], gamma: vf_resultant(poly, phi, base)? })
            })
            .collect::<Result<_>>()?;
        Ok(OkutsuFrame { poly: poly.clone(), levels })
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.degree).collect()
    }

    /// First member of each level.
    pub fn representatives(&self) -> Vec<&Poly> {
        self.levels.iter().map(|l| &l.phis[0]).collect()
    }

    /// `m_{ℓ+1}`, with `m_{r+1} = deg F`.
    fn next_degree(&self, l: usize) -> usize {
        self.levels.get(l + 1).map_or(self.poly.deg(), |n| n.degree)
    }

    /// `(m_{ℓ+1}, w_{m_{ℓ+1}}(F) = γ_ℓ / m_ℓ)` for every level.
    pub fn weights(&self) -> Result<Vec<(usize, Rat)>> {
        self.levels
            .iter()
            .enumerate()
            .map(|(l, lvl)| {
                let g = lvl
                    .gamma
                    .finite()
                    .ok_or_else(|| Error::InvalidFrame(format!("level {l} has infinite value {}", lvl.gamma)))?;
                Ok((self.next_degree(l), g / &Rat::from_int(lvl.degree as i64)))
            })
            .collect()
    }

    /// `δ_0(F) = deg F · w_{deg F}(F)`.
    pub fn okutsu_bound(&self) -> Result<Rat> {
        let w = self.weights()?;
        let (_, last) = w.last().ok_or_else(|| Error::InvalidFrame("empty frame".into()))?;
        Ok(last * &Rat::from_int(self.poly.deg() as i64))
    }

    pub fn to_json(&self) -> Result<FrameJson> {
        Ok(FrameJson {
            poly: self.poly.to_string(),
            levels: self
                .levels
                .iter()
                .map(|l| FrameLevelJson {
                    degree: l.degree,
                    phis: l.phis.iter().map(|p| p.to_string()).collect(),
                    gamma: l.gamma.to_frac_string(),
                })
                .collect(),
            weights: self.weights()?.into_iter().map(|(m, w)| (m.to_string(), w.to_frac_string())).collect(),
            okutsu_bound: self.okutsu_bound()?.to_frac_string(),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FrameLevelJson {
    pub degree: usize,
    pub phis: Vec<String>,
    pub gamma: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FrameJson {
    pub poly: String,
    pub levels: Vec<FrameLevelJson>,
    pub weights: Vec<(String, String)>,
    pub okutsu_bound: String,
}

/// `v_F(g) = vp(Res(F, g)) / deg F`, for monic `F`.
pub fn vf_resultant(f: &Poly, g: &Poly, base: PBase) -> Result<Val> {
    vp(&resultant(f, g)?, base).scale(&Rat::frac(1, f.deg() as i64))
}

/// `u(F, G) = vp(Res(F, G)) / (deg F · deg G)`, straight from the resultant.
pub fn resultant_distance(f: &Poly, g: &Poly, base: PBase) -> Result<Val> {
    vp(&resultant(f, g)?, base).scale(&Rat::frac(1, (f.deg() * g.deg()) as i64))
}

fn undefined_for_linear(chain: &MlvChain) -> Result<()> {
    if chain.poly().deg() == 1 {
        Err(Error::UndefinedForLinear)
    } else {
        Ok(())
    }
}

/// The frame `[{φ_0}, …, {φ_r}]` of the keys of a certified chain.
pub fn frame_from_chain(chain: &MlvChain) -> Result<OkutsuFrame> {
    undefined_for_linear(chain)?;
    let top = chain.top();
    let mut levels = Vec::new();
    for (l, lvl) in top.levels().take(top.len() - 1).enumerate() {
        let gamma = chain.vf(lvl.phi())?;
        if &gamma != lvl.gamma() {
            return Err(Error::Inconsistent(format!(
                "v_F({}) = {gamma} differs from the chain value {} at level {l}",
                lvl.phi(),
                lvl.gamma()
            )));
        }
        levels.push(FrameLevel { degree: lvl.degree(), phis: vec![lvl.phi().clone()], gamma });
    }
    Ok(OkutsuFrame { poly: chain.poly().clone(), levels })
}

/// Rebuilds the chain of `F` from a frame: `μ_0 = ω_{a, γ_0}` for
/// `φ_0 = x - a`, then `[μ_ℓ; φ_{ℓ+1}, v_F(φ_{ℓ+1})]` and finally `(F, ∞)`.
pub fn chain_from_frame(frame: &OkutsuFrame, base: PBase) -> Result<MlvChain> {
    let f = &frame.poly;
    let n = f.deg();
    let invalid = |m: String| Error::InvalidFrame(m);
    if !f.is_monic() {
        return Err(invalid(format!("{f} is not monic")));
    }
    if n < 2 {
        return Err(Error::UndefinedForLinear);
    }
    check_degrees(frame).map_err(invalid)?;
    let mut gammas = Vec::with_capacity(frame.levels.len());
    for (l, lvl) in frame.levels.iter().enumerate() {
        let phi = match lvl.phis.as_slice() {
            [phi] => phi,
            _ => return Err(invalid(format!("level {l} has {} members", lvl.phis.len()))),
        };
        let g = vf_resultant(f, phi, base)?;
        if !g.is_finite() {
            return Err(invalid(format!("{phi} divides {f}")));
        }
        if g != lvl.gamma {
            return Err(invalid(format!("level {l} states γ = {} but v_F({phi}) = {g}", lvl.gamma)));
        }
        if irreducible_chain(phi, base, &Val::int(DEFAULT_SV_BOUND))?.is_none() {
            return Err(invalid(format!("{phi} is not irreducible over Q_{}", base.p())));
        }
        gammas.push(g);
    }
    let w = frame.weights()?;
    if let Some(k) = (1..w.len()).find(|&k| w[k].1 <= w[k - 1].1) {
        return Err(invalid(format!("weighted values do not increase at level {k}")));
    }
    let phi0 = &frame.levels[0].phis[0];
    let a = -&phi0.coeff(0);
    let mut mu = InductiveVal::depth_zero(base, a, gammas[0].clone())?;
    for (lvl, g) in frame.levels.iter().zip(&gammas).skip(1) {
        mu = mu.augment(&lvl.phis[0], g.clone()).map_err(|e| invalid(e.to_string()))?;
    }
    let leaf = mu.augment(f, Val::PosInf).map_err(|e| invalid(e.to_string()))?;
    Ok(MlvChain::from_leaf(base, f.clone(), leaf))
}

fn check_degrees(frame: &OkutsuFrame) -> std::result::Result<(), String> {
    let ms = frame.degrees();
    if ms.first() != Some(&1) {
        return Err("the first level must be linear".into());
    }
    for (l, lvl) in frame.levels.iter().enumerate() {
        if lvl.phis.iter().any(|p| !p.is_monic() || p.deg() != lvl.degree) {
            return Err(format!("level {l} has a member that is not monic of degree {}", lvl.degree));
        }
        let next = frame.next_degree(l);
        if next <= lvl.degree || !next.is_multiple_of(lvl.degree) {
            return Err(format!("degree {} does not properly divide {next}", lvl.degree));
        }
    }
    Ok(())
}

/// A polynomial violating a frame property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub poly: Poly,
    pub value: Val,
    pub bound: Val,
}

#[derive(Clone, Debug)]
pub struct FrameCheck {
    pub name: String,
    pub passed: bool,
    pub samples: usize,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Default)]
pub struct FrameReport {
    pub checks: Vec<FrameCheck>,
}

impl FrameReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&FrameCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, samples: usize) {
        self.checks.push(FrameCheck { name: name.into(), passed, samples, witness: None });
    }
}

/// Samples the fundamental property `v_F(g)/deg g ≤ γ_ℓ/m_ℓ` for monic
/// `g` with `0 < deg g < m_{ℓ+1}` and checks the structural properties of
/// the frame against the certified chain of `F`.
pub fn verify_frame(frame: &OkutsuFrame, chain: &MlvChain, cfg: &SamplerConfig) -> Result<FrameReport> {
    if chain.poly() != &frame.poly {
        return Err(Error::InvalidOperand(format!(
            "frame of {} checked against the chain of {}",
            frame.poly,
            chain.poly()
        )));
    }
    chain.vf(&Poly::one())?;
    let base = chain.prime();
    let mut report = FrameReport::default();
    report.push("degrees divide", check_degrees(frame).is_ok(), frame.levels.len());
    if report.checks[0].passed {
        report.push("singleton levels", frame.levels.iter().all(|l| l.phis.len() == 1), frame.levels.len());
        let mut gammas_ok = true;
        for lvl in &frame.levels {
            for phi in &lvl.phis {
                gammas_ok &= chain.vf(phi)? == lvl.gamma;
            }
        }
        report.push("stated values", gammas_ok, frame.levels.len());
        let w = frame.weights()?;
        report.push("weights increase", w.windows(2).all(|p| p[0].1 < p[1].1), w.len());
        let mut irreducible = true;
        for lvl in &frame.levels {
            for phi in &lvl.phis {
                irreducible &= irreducible_chain(phi, base, &Val::int(DEFAULT_SV_BOUND))?.is_some();
            }
        }
        report.push("irreducible members", irreducible, frame.levels.len());
    }
    let integral = frame.poly.coeffs().iter().all(|c| c.is_integer());
    for l in 0..frame.levels.len() {
        report.checks.push(fundamental_check(frame, chain, l, cfg, integral)?);
    }
    Ok(report)
}

fn fundamental_check(
    frame: &OkutsuFrame,
    chain: &MlvChain,
    l: usize,
    cfg: &SamplerConfig,
    integral: bool,
) -> Result<FrameCheck> {
    let lvl = &frame.levels[l];
    let bound_deg = frame.next_degree(l);
    let name = format!("fundamental property at level {l}");
    let Some(w) = lvl.gamma.finite().map(|g| g / &Rat::from_int(lvl.degree as i64)) else {
        return Ok(FrameCheck { name, passed: false, samples: 0, witness: None });
    };
    let p = chain.prime().p();
    // The verdict vF(g) <= t only depends on g mod p^k once k > t, because
    // vF(p^k h) >= k for integral h when F is monic integral. Classes are
    // memoized on that key.
    let per_degree: Vec<(Val, Option<i64>)> = (0..bound_deg)
        .map(|d| {
            let t = &w * &Rat::from_int(d as i64);
            let m = if integral { class_modulus(&t, p, d) } else { None };
            (Val::Finite(t), m)
        })
        .collect();
    let mut memo: HashMap<(usize, u128), bool> = HashMap::new();
    let mut samples = 0usize;
    let mut failed: Option<Vec<i64>> = None;
    let mut test = |c: &[i64]| -> Result<bool> {
        samples += 1;
        let (t, m) = &per_degree[c.len()];
        let key = m.map(|m| {
            let code = c.iter().rev().fold(0u128, |acc, x| acc * m as u128 + x.rem_euclid(m) as u128);
            (c.len(), code)
        });
        if let Some(ok) = key.as_ref().and_then(|k| memo.get(k)) {
            return Ok(*ok);
        }
        let ok = chain.vf(&monic_from(c))? <= *t;
        if let Some(k) = key {
            memo.insert(k, ok);
        }
        Ok(ok)
    };
    let mut err = None;
    for d in 1..bound_deg {
        visit_monic_grid(d, cfg.grid_height, |c| match test(c) {
            Ok(true) => true,
            Ok(false) => {
                failed = Some(c.to_vec());
                false
            }
            Err(e) => {
                err = Some(e);
                false
            }
        });
        if failed.is_some() || err.is_some() {
            break;
        }
    }
    if let Some(e) = err {
        return Err(e);
    }
    if failed.is_none() && bound_deg > 1 {
        let mut rng = rng_for(cfg.seed, poly_salt(&frame.poly) ^ l as u64);
        let h = cfg.random_height;
        for _ in 0..cfg.random_draws {
            let d = rng.gen_range(1..bound_deg);
            let c: Vec<i64> = (0..d).map(|_| rng.gen_range(-h..=h)).collect();
            if !test(&c)? {
                failed = Some(c);
                break;
            }
        }
    }
    let witness = match failed {
        Some(c) => {
            let g = monic_from(&c);
            let value = chain.vf(&g)?;
            let bound = Val::Finite(&w * &Rat::from_int(g.deg() as i64));
            Some(Witness { poly: g, value, bound })
        }
        None => None,
    };
    Ok(FrameCheck { name, passed: witness.is_none(), samples, witness })
}

fn monic_from(c: &[i64]) -> Poly {
    let mut v = c.to_vec();
    v.push(1);
    Poly::from_ints(&v)
}

/// `p^k` with `k = ⌊t⌋ + 1`, when the classes of `d` coefficients mod
/// `p^k` can be numbered in a `u128`.
fn class_modulus(t: &Rat, p: u64, d: usize) -> Option<i64> {
    if t.is_negative() {
        return None;
    }
    let k = num_traits::ToPrimitive::to_u32(&t.floor())?.checked_add(1)?;
    let m = p.checked_pow(k).filter(|&m| m <= i64::MAX as u64)?;
    (m as u128).checked_pow(d as u32)?;
    Some(m as i64)
}

/// Chain-based `u(F, G)`, checked against both leaves and the resultant.
pub fn distance_chains(cf: &MlvChain, cg: &MlvChain) -> Result<Val> {
    if cf.prime() != cg.prime() {
        return Err(Error::InvalidOperand("chains over different primes".into()));
    }
    let (f, g) = (cf.poly(), cg.poly());
    let u = resultant_distance(f, g, cf.prime())?;
    let from_f = cf.vf(g)?.scale(&Rat::frac(1, g.deg() as i64))?;
    let from_g = cg.vf(f)?.scale(&Rat::frac(1, f.deg() as i64))?;
    if from_f != u || from_g != u {
        return Err(Error::Inconsistent(format!(
            "u({f}, {g}) = {u} from the resultant, {from_f} and {from_g} from the chains"
        )));
    }
    Ok(u)
}

/// `u(F, G)` for monic `F`, `G` irreducible over `Q_p`.
pub fn distance(f: &Poly, g: &Poly, base: PBase) -> Result<Val> {
    let bound = Val::int(DEFAULT_SV_BOUND);
    distance_chains(&chain_of(f, base, &bound)?, &chain_of(g, base, &bound)?)
}

/// The greatest common lower node `v_F ∧ v_G`.
pub fn meet(cf: &MlvChain, cg: &MlvChain) -> Result<InductiveVal> {
    if cf.poly() == cg.poly() {
        return Err(Error::MeetUndefined);
    }
    let u = distance_chains(cf, cg)?;
    let top = cf.top();
    let inner = top.len() - 1;
    let below = (0..inner).rev().find(|&i| top.truncate(i + 1).wt() <= u);
    let node = match below {
        None => {
            let a = -&top.level(0).phi().coeff(0);
            InductiveVal::depth_zero(cf.prime(), a, u.clone())?
        }
        Some(i) => {
            let mu = top.truncate(i + 1);
            if mu.wt() == u {
                mu
            } else {
                let next = top.level(i + 1).phi();
                let gamma = u.scale(&Rat::from_int(next.deg() as i64))?;
                mu.augment(next, gamma)?
            }
        }
    };
    if node.wt() != u {
        return Err(Error::Inconsistent(format!("meet {node} has weight {} ≠ {u}", node.wt())));
    }
    let mut probes = top.keys();
    probes.extend(cg.top().keys());
    for h in &probes {
        if node.value(h) > cf.vf(h)?.min(cg.vf(h)?) {
            return Err(Error::Inconsistent(format!("meet {node} exceeds a leaf at {h}")));
        }
    }
    Ok(node)
}

/// Data of `F` shared by the equivalence criteria against many partners.
#[derive(Clone, Debug)]
pub struct CriteriaContext {
    f: Poly,
    base: PBase,
    rho: InductiveVal,
    weight: Val,
    bound: Val,
}

/// Both criteria for one pair, with the values they compare.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Criteria {
    pub distance: Val,
    /// `u(F, G) > wt(ρ_F)`.
    pub closer: bool,
    pub rho_difference: Val,
    /// `ρ_F(F - G) > ρ_F(F)`.
    pub equivalent: bool,
}

impl CriteriaContext {
    pub fn new(cf: &MlvChain) -> Result<CriteriaContext> {
        undefined_for_linear(cf)?;
        let rho = cf.previous_primitive()?;
        let f = cf.poly().clone();
        let bound = rho.value(&f);
        Ok(CriteriaContext { base: cf.prime(), weight: rho.wt(), rho, bound, f })
    }

    /// `ρ_F(F) = δ_0(F)`.
    pub fn okutsu_bound(&self) -> &Val {
        &self.bound
    }

    pub fn evaluate(&self, g: &Poly) -> Result<Criteria> {
        if g.deg() != self.f.deg() || !g.is_monic() {
            return Err(Error::InvalidOperand(format!("{g} is not monic of degree {}", self.f.deg())));
        }
        let distance = resultant_distance(&self.f, g, self.base)?;
        let rho_difference = self.rho.value(&(&self.f - g));
        Ok(Criteria {
            closer: distance > self.weight,
            equivalent: rho_difference > self.bound,
            distance,
            rho_difference,
        })
    }
}

/// The criteria `u(F, G) > wt(ρ_F)` and `ρ_F(F - G) > ρ_F(F)` for
/// `G` of the same degree as `F ≥ 2`.
pub fn equivalence_criteria(cf: &MlvChain, g: &Poly) -> Result<(bool, bool)> {
    let c = CriteriaContext::new(cf)?.evaluate(g)?;
    Ok((c.closer, c.equivalent))
}

/// Okutsu equivalence of two certified chains.
pub fn equivalent_chains(cf: &MlvChain, cg: &MlvChain) -> Result<bool> {
    let (f, g) = (cf.poly(), cg.poly());
    if f.deg() != g.deg() {
        return Ok(false);
    }
    if f.deg() == 1 {
        return Ok(true);
    }
    let (two, three) = equivalence_criteria(cf, g)?;
    if two != three {
        return Err(Error::Inconsistent(format!(
            "criteria disagree on ({f}, {g}): u > wt(ρ_F) is {two}, F ∼ G is {three}"
        )));
    }
    Ok(two)
}

pub fn okutsu_equivalent(f: &Poly, g: &Poly, base: PBase) -> Result<bool> {
    let bound = Val::int(DEFAULT_SV_BOUND);
    equivalent_chains(&chain_of(f, base, &bound)?, &chain_of(g, base, &bound)?)
}

/// `Ω(F) = max v(θ - θ')` over distinct roots, from the Newton polygon of
/// the Taylor coefficients evaluated under `v_F`.
pub fn krasner_constant(chain: &MlvChain) -> Result<Val> {
    undefined_for_linear(chain)?;
    let f = chain.poly();
    if f.gcd(&f.derivative()).deg() > 0 {
        return Err(Error::InseparableInput(f.to_string()));
    }
    let mut points = Vec::with_capacity(f.deg());
    for (i, c) in f.taylor_coeffs().iter().enumerate().skip(1) {
        points.push((i, chain.vf(c)?));
    }
    let np = NewtonPolygon::from_points(points);
    let steepest = np.sides.first().ok_or_else(|| Error::Inconsistent(format!("flat Taylor polygon for {f}")))?;
    Ok(Val::Finite(-&steepest.slope))
}

/// HOS key polynomial test with the default sample size and seed.
pub fn is_hos_key(chain: &MlvChain, g: &Poly) -> Result<bool> {
    is_hos_key_sampled(chain, g, HOS_PAIRS, DEFAULT_SEED)
}

/// `g = F`, or `deg g` is a frame degree (or `deg F`), `v_F(g)/deg g`
/// exceeds the previous level's weighted value, and the truncation of `v_F`
/// by `g` is multiplicative on `pairs` random pairs.
pub fn is_hos_key_sampled(chain: &MlvChain, g: &Poly, pairs: usize, seed: u64) -> Result<bool> {
    match hos_precheck(chain, g)? {
        HosCheck::Decided(b) => Ok(b),
        HosCheck::Sample(t) => t.is_multiplicative(pairs, seed),
    }
}

/// Outcome of the exact part of the HOS test.
#[derive(Clone, Debug)]
pub enum HosCheck {
    Decided(bool),
    Sample(Truncation),
}

/// The truncation `(v_F)_g`. On a `g`-expansion it only reads `v_F(g)` and
/// `v_F` on polynomials of degree below `deg g`, which the levels of the
/// chain of degree below `deg g` compute.
#[derive(Clone, Debug)]
pub struct Truncation {
    g: Poly,
    prefix: InductiveVal,
    vg: Val,
}

/// Identity of a [`Truncation`], for memoizing sampled verdicts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncationKey {
    g: Poly,
    levels: Vec<(Poly, Val)>,
    vg: Val,
}

impl Truncation {
    pub fn new(chain: &MlvChain, g: &Poly) -> Result<Truncation> {
        if !g.is_monic() || g.deg() == 0 || g.deg() > chain.poly().deg() {
            return Err(Error::InvalidOperand(format!("{g} cannot truncate v_F for F = {}", chain.poly())));
        }
        let vg = chain.vf(g)?;
        let top = chain.top();
        let k = top.levels().take_while(|l| l.degree() < g.deg()).count();
        Ok(Truncation { g: g.clone(), prefix: top.truncate(k), vg })
    }

    pub fn key(&self) -> TruncationKey {
        TruncationKey {
            g: self.g.clone(),
            levels: self.prefix.levels().map(|l| (l.phi().clone(), l.gamma().clone())).collect(),
            vg: self.vg.clone(),
        }
    }

    pub fn value(&self, f: &Poly) -> Result<Val> {
        let mut best = Val::PosInf;
        for (s, a) in f.phi_expansion(&self.g)?.iter().enumerate() {
            if !a.is_zero() {
                best = best.min(self.prefix.value(a).add(&self.vg.scale(&Rat::from_int(s as i64))?)?);
            }
        }
        Ok(best)
    }

    // exact integer route, `None` when a key is not integral or on overflow
    fn value_ints(&self, f: &[i128], g: &[i128]) -> Option<Val> {
        let Val::Finite(vg) = &self.vg else { return None };
        let mut best = Val::PosInf;
        for (s, a) in int_expansion(f, g)?.iter().enumerate() {
            if !a.is_empty() {
                best = best.min(self.prefix.value_of_ints(a)?.plus(&(vg * &Rat::from_int(s as i64))));
            }
        }
        Some(best)
    }

    /// `(v_F)_g(ab) = (v_F)_g(a) + (v_F)_g(b)` on `pairs` random pairs of
    /// degree below `2 deg g`, biased towards the keys of the prefix and `g`.
    pub fn is_multiplicative(&self, pairs: usize, seed: u64) -> Result<bool> {
        let mut rng = rng_for(seed, poly_salt(&self.g));
        let mut probes = self.prefix.keys();
        probes.push(self.g.clone());
        let int_probes: Vec<Vec<i64>> = probes.iter().filter_map(int_coeffs).collect();
        let int_g: Option<IntPoly> = int_coeffs(&self.g).map(|c| c.iter().map(|&x| x as i128).collect());
        let p = self.prefix.base().p();
        let bound = 2 * self.g.deg();
        let wide = |c: &[i64]| c.iter().map(|&x| x as i128).collect::<IntPoly>();
        for _ in 0..pairs {
            let a = probe_ints(&mut rng, &int_probes, p, bound, 1 << 10);
            let b = probe_ints(&mut rng, &int_probes, p, bound, 1 << 10);
            let fast = int_g.as_ref().and_then(|g| {
                Some((
                    self.value_ints(&int_product(&a, &b), g)?,
                    self.value_ints(&wide(&a), g)?,
                    self.value_ints(&wide(&b), g)?,
                ))
            });
            let (tab, ta, tb) = match fast {
                Some(t) => t,
                None => {
                    let (a, b) = (Poly::from_ints(&a), Poly::from_ints(&b));
                    (self.value(&(&a * &b))?, self.value(&a)?, self.value(&b)?)
                }
            };
            if tab != ta.add(&tb)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Support case, degree and threshold conditions of the HOS test, and the
/// truncation left to sample otherwise.
pub fn hos_precheck(chain: &MlvChain, g: &Poly) -> Result<HosCheck> {
    let f = chain.poly();
    chain.vf(&Poly::one())?;
    if g == f {
        return Ok(HosCheck::Decided(true));
    }
    if !g.is_monic() || g.deg() == 0 {
        return Ok(HosCheck::Decided(false));
    }
    let top = chain.top();
    let inner: Vec<&crate::valuation::Level> = top.levels().take(top.len() - 1).collect();
    let mut degrees: Vec<usize> = inner.iter().map(|l| l.degree()).collect();
    degrees.push(f.deg());
    let Some(idx) = degrees.iter().position(|&m| m == g.deg()) else {
        return Ok(HosCheck::Decided(false));
    };
    let threshold = if idx == 0 {
        Val::NegInf
    } else {
        let prev = inner[idx - 1];
        prev.gamma().scale(&Rat::frac(1, prev.degree() as i64))?
    };
    let wv = chain.vf(g)?.scale(&Rat::frac(1, g.deg() as i64))?;
    if wv <= threshold {
        return Ok(HosCheck::Decided(false));
    }
    Ok(HosCheck::Sample(Truncation::new(chain, g)?))
}

/// HOS tests sharing sampled verdicts between equal truncations.
#[derive(Debug, Default)]
pub struct HosMemo {
    seen: Mutex<HashMap<TruncationKey, bool>>,
}

impl HosMemo {
    pub fn new() -> HosMemo {
        HosMemo::default()
    }

    /// Same verdict as [`is_hos_key`].
    pub fn is_hos_key(&self, chain: &MlvChain, g: &Poly) -> Result<bool> {
        let t = match hos_precheck(chain, g)? {
            HosCheck::Decided(b) => return Ok(b),
            HosCheck::Sample(t) => t,
        };
        let key = t.key();
        if let Some(&b) = self.seen.lock().expect("memo lock").get(&key) {
            return Ok(b);
        }
        let b = t.is_multiplicative(HOS_PAIRS, DEFAULT_SEED)?;
        self.seen.lock().expect("memo lock").insert(key, b);
        Ok(b)
    }

    /// Number of distinct truncations sampled so far.
    pub fn len(&self) -> usize {
        self.seen.lock().expect("memo lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn int_product(a: &[i64], b: &[i64]) -> IntPoly {
    let mut out: IntPoly = smallvec::smallvec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += *x as i128 * *y as i128;
        }
    }
    trim(&mut out);
    out
}
