//! Inductive valuations on `Q[x]` extending the `p`-adic valuation.
//!
//! A node is the root sentinel, a depth-zero valuation `ω_{a,δ}`, or a chain
//! of ordinary augmentations `[μ; φ, γ]` on top of one. Every level with finite
//! `γ` carries its value-group data and residue field.

mod polygon;
mod residual;

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use smallvec::{smallvec, SmallVec};

use crate::arith::{vp, PBase, Rat, Val};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::residue::{ff_extend, Extension, Field, FqCtx};

pub use polygon::{NewtonPolygon, Side};
pub use residual::Laurent;

/// One augmentation step; level 0 is the depth-zero part with `φ = x - a`.
#[derive(Clone)]
pub struct Level {
    phi: Poly,
    /// Coefficients of `phi` when they are all small integers.
    int_phi: Option<Vec<i128>>,
    gamma: Val,
    data: Option<LevelData>,
}

#[derive(Clone)]
pub(crate) struct LevelData {
    /// Relative ramification `e_i`.
    pub(crate) e: i64,
    /// `Γ_i = (1/E_i) Z`.
    pub(crate) big_e: i64,
    /// `n_i^{-1} mod e_i`.
    pub(crate) n_inv: i64,
    /// Uniformizer exponents over `[p, φ_0, …, φ_i]`.
    pub(crate) pi: Vec<i64>,
    /// Exponents of `M_{i-1}(e_i γ_i)` over `[p, φ_0, …, φ_{i-1}]`.
    pub(crate) xi_norm: Vec<i64>,
    pub(crate) kappa: Field,
    /// `κ_{i-1} → κ_i`, absent at level 0.
    pub(crate) ext: Option<Arc<Extension>>,
}

impl Level {
    pub fn phi(&self) -> &Poly {
        &self.phi
    }

    pub fn gamma(&self) -> &Val {
        &self.gamma
    }

    pub fn degree(&self) -> usize {
        self.phi.deg()
    }

    /// Relative ramification index; `None` on a leaf level.
    pub fn e(&self) -> Option<i64> {
        self.data.as_ref().map(|d| d.e)
    }

    pub fn residue_field(&self) -> Option<&Field> {
        self.data.as_ref().map(|d| &d.kappa)
    }

    /// Degree over `F_p` of the residue field at this level.
    pub fn residue_degree(&self) -> Option<usize> {
        self.data.as_ref().map(|d| d.kappa.degree())
    }

    /// Degree of the residual polynomial of this key at the previous node.
    pub fn relative_residue_degree(&self) -> Option<usize> {
        self.data.as_ref().and_then(|d| d.ext.as_ref()).map(|x| x.rel_degree())
    }
}

/// Depth-zero view `ω_{a,δ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthZero {
    pub center: Rat,
    pub delta: Val,
}

/// Augmentation step view `(φ, γ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugStep {
    pub phi: Poly,
    pub gamma: Val,
}

#[derive(Clone)]
pub struct InductiveVal {
    base: PBase,
    fp: Field,
    levels: Vec<Arc<Level>>,
}

impl InductiveVal {
    /// The root sentinel `ω_{-∞}`: `vp` on constants, `-∞` elsewhere.
    pub fn root(base: PBase) -> InductiveVal {
        InductiveVal { base, fp: FqCtx::prime(base), levels: Vec::new() }
    }

    pub fn depth_zero(base: PBase, a: Rat, delta: Val) -> Result<InductiveVal> {
        InductiveVal::root(base).augment(&Poly::linear(&a), delta)
    }

    /// Gauss valuation `ω_{0,0}`.
    pub fn gauss(base: PBase) -> InductiveVal {
        InductiveVal::depth_zero(base, Rat::zero(), Val::zero()).expect("valid")
    }

    pub fn base(&self) -> PBase {
        self.base
    }

    pub fn levels(&self) -> impl Iterator<Item = &Level> {
        self.levels.iter().map(|l| l.as_ref())
    }

    pub fn level(&self, i: usize) -> &Level {
        &self.levels[i]
    }

    /// Number of levels; 0 for the root.
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_root(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn is_leaf(&self) -> bool {
        self.levels.last().is_some_and(|l| l.gamma.is_pos_inf())
    }

    pub fn is_inner(&self) -> bool {
        !self.is_root() && !self.is_leaf()
    }

    pub fn depth_zero_part(&self) -> Option<DepthZero> {
        self.levels.first().map(|l| DepthZero { center: -&l.phi.coeffs()[0], delta: l.gamma.clone() })
    }

    pub fn steps(&self) -> Vec<AugStep> {
        self.levels.iter().skip(1).map(|l| AugStep { phi: l.phi.clone(), gamma: l.gamma.clone() }).collect()
    }

    /// Keys `φ_0, …, φ_r`.
    pub fn keys(&self) -> Vec<Poly> {
        self.levels.iter().map(|l| l.phi.clone()).collect()
    }

    pub fn last_key(&self) -> Option<&Poly> {
        self.levels.last().map(|l| &l.phi)
    }

    /// `deg(μ)`; 1 for the root.
    pub fn degree(&self) -> usize {
        self.levels.last().map_or(1, |l| l.phi.deg())
    }

    /// `sv(μ) = μ(φ)`.
    pub fn sv(&self) -> Val {
        self.levels.last().map_or(Val::NegInf, |l| l.gamma.clone())
    }

    /// `wt(μ) = sv(μ)/deg(μ)`; `-∞` at the root.
    pub fn wt(&self) -> Val {
        match self.levels.last() {
            None => Val::NegInf,
            Some(l) => match &l.gamma {
                Val::Finite(g) => Val::Finite(g / &Rat::from_int(l.phi.deg() as i64)),
                other => other.clone(),
            },
        }
    }

    /// `(deg, sv, wt)` of an inner node or the root.
    pub fn node_invariants(&self) -> Result<(usize, Val, Val)> {
        if self.is_leaf() {
            return Err(Error::InvalidOperand("node invariants of a finite leaf".into()));
        }
        Ok((self.degree(), self.sv(), self.wt()))
    }

    /// Residue field of the node (`F_p` at the root).
    pub fn residue_field(&self) -> &Field {
        self.levels.iter().rev().find_map(|l| l.data.as_ref().map(|d| &d.kappa)).unwrap_or(&self.fp)
    }

    pub(crate) fn data(&self, i: usize) -> Result<&LevelData> {
        self.levels[i]
            .data
            .as_ref()
            .ok_or_else(|| Error::InvalidOperand("residue data requested on a leaf level".into()))
    }

    /// Total ramification `E_r`.
    pub fn ramification(&self) -> i64 {
        self.levels.iter().rev().find_map(|l| l.data.as_ref().map(|d| d.big_e)).unwrap_or(1)
    }

    /// Node obtained by keeping the first `k` levels.
    pub fn truncate(&self, k: usize) -> InductiveVal {
        InductiveVal { base: self.base, fp: self.fp.clone(), levels: self.levels[..k].to_vec() }
    }

    // ----------------------------------------------------------------- values

    pub fn value(&self, f: &Poly) -> Val {
        let top = self.levels.len() as isize - 1;
        let ints: Option<IntPoly> =
            f.coeffs().iter().map(|c| c.as_small().filter(|s| s.1 == 1).map(|s| s.0 as i128)).collect();
        if let Some(v) = ints.and_then(|c| self.value_ints(top, &c)) {
            return v;
        }
        self.value_at(top, f)
    }

    /// [`InductiveVal::value`] on integer coefficients, `None` on overflow
    /// or non-integral keys.
    pub(crate) fn value_of_ints(&self, f: &[i128]) -> Option<Val> {
        self.value_ints(self.levels.len() as isize - 1, f)
    }

    /// Value of an integer polynomial with trimmed coefficients `f`, when the
    /// keys involved are integral and nothing overflows.
    pub(crate) fn value_ints(&self, mut i: isize, f: &[i128]) -> Option<Val> {
        let Some(deg) = f.len().checked_sub(1) else {
            return Some(Val::PosInf);
        };
        while i > 0 && deg < self.levels[i as usize].phi.deg() {
            i -= 1;
        }
        if i < 0 || deg < self.levels[i as usize].phi.deg() {
            return Some(if deg == 0 { Val::int(vp_i128(f[0], self.base.p() as i128)) } else { Val::NegInf });
        }
        let lvl = &self.levels[i as usize];
        let key = lvl.int_phi.as_ref()?;
        let exp = int_expansion(f, key)?;
        match &lvl.gamma {
            Val::Finite(g) => {
                let mut best = Val::PosInf;
                for (s, a) in exp.iter().enumerate() {
                    if a.is_empty() {
                        continue;
                    }
                    let v = self.value_ints(i - 1, a)?.plus(&(g * &Rat::from_int(s as i64)));
                    best = best.min(v);
                }
                Some(best)
            }
            _ => self.value_ints(i - 1, &exp[0]),
        }
    }

    /// Value under the node truncated to levels `0..=i`; `i = -1` is the root.
    pub(crate) fn value_at(&self, mut i: isize, f: &Poly) -> Val {
        if f.is_zero() {
            return Val::PosInf;
        }
        // a polynomial of degree below φ_i is its own expansion
        while i > 0 && f.deg() < self.levels[i as usize].phi.deg() {
            i -= 1;
        }
        if i < 0 {
            return if f.is_constant() { vp(&f.coeff(0), self.base) } else { Val::NegInf };
        }
        let lvl = &self.levels[i as usize];
        if f.deg() < lvl.phi.deg() {
            return vp(&f.coeff(0), self.base);
        }
        let exp = f.phi_expansion(&lvl.phi).expect("keys are monic");
        match &lvl.gamma {
            Val::Finite(g) => {
                let mut best = Val::PosInf;
                for (s, a) in exp.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let v = self.value_at(i - 1, a).plus(&(g * &Rat::from_int(s as i64)));
                    best = best.min(v);
                }
                best
            }
            _ => self.value_at(i - 1, &exp[0]),
        }
    }

    /// `μ(f)/deg f`.
    pub fn weighted_value(&self, f: &Poly) -> Val {
        match self.value(f) {
            Val::Finite(v) => Val::Finite(&v / &Rat::from_int(f.deg().max(1) as i64)),
            other => other,
        }
    }

    pub fn is_minimal(&self, g: &Poly) -> bool {
        if !g.is_monic() || g.deg() == 0 {
            return false;
        }
        self.weighted_value(g) == self.wt()
    }

    /// `in_μ f = in_μ g`.
    pub fn in_equiv(&self, f: &Poly, g: &Poly) -> bool {
        if f == g {
            return true;
        }
        let vf = self.value(f);
        vf == self.value(g) && self.value(&(f - g)) > vf
    }

    /// Truncation `μ_g(f) = min μ(a_s) + s μ(g)` over the `g`-expansion.
    pub fn truncation_value(&self, g: &Poly, f: &Poly) -> Result<Val> {
        let vg = self.value(g);
        let mut best = Val::PosInf;
        for (s, a) in f.phi_expansion(g)?.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let term = self.value(a).add(&vg.scale(&Rat::from_int(s as i64))?)?;
            best = best.min(term);
        }
        Ok(best)
    }

    // ---------------------------------------------------------- construction

    pub fn is_key(&self, phi: &Poly) -> bool {
        self.key_check(phi).is_ok()
    }

    fn key_check(&self, phi: &Poly) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidAugmentation(format!("{phi} is not a key polynomial: {m}")));
        if !phi.is_monic() || phi.deg() == 0 {
            return bad("must be monic of positive degree");
        }
        if self.is_leaf() {
            return bad("finite leaves have no key polynomials");
        }
        if self.is_root() {
            return if phi.deg() == 1 { Ok(()) } else { bad("root keys are linear") };
        }
        if !self.is_minimal(phi) {
            return bad("not minimal");
        }
        let m = self.degree();
        if phi.deg() == m {
            return Ok(());
        }
        if !phi.deg().is_multiple_of(m) {
            return bad("degree not a multiple of the node degree");
        }
        let last = self.levels.len() - 1;
        let exp = phi.phi_expansion(&self.levels[last].phi)?;
        if exp[0].is_zero() || self.value(&exp[0]) != self.value(phi) {
            return bad("divisible by the last key in the graded algebra");
        }
        let r = self.residual_polynomial(phi)?;
        if r.deg() * (self.data(last)?.e as usize) != phi.deg() / m {
            return bad("residual degree mismatch");
        }
        if !r.is_irreducible()? {
            return bad("reducible residual polynomial");
        }
        Ok(())
    }

    /// `[μ; φ, γ]`. When `deg φ = deg μ` the last step is replaced.
    pub fn augment(&self, phi: &Poly, gamma: Val) -> Result<InductiveVal> {
        self.key_check(phi)?;
        if gamma == Val::NegInf {
            return Err(Error::InvalidAugmentation("γ = -∞".into()));
        }
        let cur = self.value(phi);
        if !self.is_root() && gamma <= cur {
            return Err(Error::InvalidAugmentation(format!("γ = {gamma} must exceed μ({phi}) = {cur}")));
        }
        let prefix = if !self.is_root() && phi.deg() == self.degree() {
            self.truncate(self.levels.len() - 1)
        } else {
            self.clone()
        };
        prefix.push_level(phi.clone(), gamma)
    }

    /// Augmentation without the key test, for keys produced by the engine.
    pub(crate) fn augment_trusted(&self, phi: &Poly, gamma: Val) -> Result<InductiveVal> {
        let prefix = if !self.is_root() && phi.deg() == self.degree() {
            self.truncate(self.levels.len() - 1)
        } else {
            self.clone()
        };
        prefix.push_level(phi.clone(), gamma)
    }

    fn push_level(&self, phi: Poly, gamma: Val) -> Result<InductiveVal> {
        let i = self.levels.len();
        let data = match &gamma {
            Val::Finite(g) => Some(self.level_data(i, &phi, g)?),
            _ => None,
        };
        let mut levels = self.levels.clone();
        let int_phi = phi.coeffs().iter().map(|c| c.as_small().filter(|s| s.1 == 1).map(|s| s.0 as i128)).collect();
        levels.push(Arc::new(Level { phi, int_phi, gamma, data }));
        Ok(InductiveVal { base: self.base, fp: self.fp.clone(), levels })
    }

    fn level_data(&self, i: usize, phi: &Poly, g: &Rat) -> Result<LevelData> {
        let (prev_e, prev_pi) = match i {
            0 => (1i64, vec![1i64]),
            _ => {
                let d = self.data(i - 1)?;
                (d.big_e, d.pi.clone())
            }
        };
        let den = num_traits::ToPrimitive::to_i64(&g.denom())
            .ok_or_else(|| Error::InvalidAugmentation("value denominator too large".into()))?;
        let big_e = prev_e.lcm(&den);
        let e = big_e / prev_e;
        let n = (g * &Rat::from_int(big_e))
            .to_i64()
            .ok_or_else(|| Error::InvalidAugmentation("value numerator too large".into()))?;
        // α n + β e = 1 with 0 ≤ α < e
        let (alpha, beta, n_inv) = if e == 1 {
            (0, 1, 0)
        } else {
            let a = n.rem_euclid(e);
            let inv = (1..e).find(|x| (a * x) % e == 1).expect("gcd(n, e) = 1");
            (inv, (1 - inv * n) / e, inv)
        };
        let mut pi: Vec<i64> = prev_pi.iter().map(|x| x * beta).collect();
        pi.push(alpha);
        let xi_norm = prev_pi.iter().map(|x| x * n).collect();
        let (kappa, ext) = if i == 0 {
            (self.fp.clone(), None)
        } else {
            let psi = self.residual_polynomial(phi)?;
            let ext = ff_extend(self.residue_field(), &psi)?;
            (ext.ctx().clone(), Some(Arc::new(ext)))
        };
        Ok(LevelData { e, big_e, n_inv, pi, xi_norm, kappa, ext })
    }
}

impl fmt::Display for InductiveVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(first) = self.levels.first() else {
            return write!(f, "ω_-inf");
        };
        let a = -&first.phi.coeffs()[0];
        write!(f, "ω({a},{})", first.gamma)?;
        for l in self.levels.iter().skip(1) {
            write!(f, "; ({}, {})", l.phi, l.gamma)?;
        }
        Ok(())
    }
}

impl fmt::Debug for InductiveVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

fn vp_i128(n: i128, p: i128) -> i64 {
    if p == 2 {
        return n.trailing_zeros() as i64;
    }
    let (mut k, mut n) = (0, n);
    while let Ok(m) = i64::try_from(n) {
        let q = p as i64;
        if m % q != 0 {
            return k;
        }
        n = (m / q) as i128;
        k += 1;
    }
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    k
}

pub(crate) type IntPoly = SmallVec<[i128; 8]>;

pub(crate) fn trim(v: &mut IntPoly) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

// `phi`-adic expansion over `Z` for monic `phi`, trimmed; `None` on overflow.
pub(crate) fn int_expansion(f: &[i128], phi: &[i128]) -> Option<SmallVec<[IntPoly; 8]>> {
    let m = phi.len() - 1;
    let mut out = SmallVec::new();
    let mut cur: IntPoly = f.into();
    while !cur.is_empty() {
        if cur.len() <= m {
            out.push(std::mem::take(&mut cur));
            break;
        }
        // divide by monic phi
        let mut rem = cur;
        let mut quot: IntPoly = smallvec![0i128; rem.len() - m];
        for k in (0..quot.len()).rev() {
            let c = rem[k + m];
            quot[k] = c;
            if c != 0 {
                for (j, pj) in phi.iter().enumerate() {
                    rem[k + j] = rem[k + j].checked_sub(c.checked_mul(*pj)?)?;
                }
            }
        }
        rem.truncate(m);
        trim(&mut rem);
        trim(&mut quot);
        out.push(rem);
        cur = quot;
    }
    Some(out)
}

#[cfg(test)]
mod tests;
