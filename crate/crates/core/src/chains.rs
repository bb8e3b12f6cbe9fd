//! MacLane–Vaquié chains of monic polynomials over `Q_p`, found by
//! branch-and-augment along Newton polygons.

use serde::Serialize;

use crate::arith::{PBase, Rat, Val};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::residue::ff_factor;
use crate::valuation::InductiveVal;

/// Default singular-value bound at which approximants are emitted.
pub const DEFAULT_SV_BOUND: i64 = 20;

/// Per-node data of a chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeInfo {
    pub phi: Poly,
    pub gamma: Val,
    pub degree: usize,
    pub weight: Val,
    pub e: i64,
    pub residual_degree: usize,
}

/// A chain `μ_0 < … < μ_r` with, when certified, the leaf `[μ_r; F, ∞]` on top.
///
/// Uncertified chains are approximants: `top` is the last inner node reached
/// and `poly` the current approximation of the factor.
#[derive(Clone, Debug)]
pub struct MlvChain {
    prime: PBase,
    poly: Poly,
    top: InductiveVal,
    certified: bool,
}

impl MlvChain {
    /// A certified chain from its leaf `[μ_r; F, ∞]`.
    pub(crate) fn from_leaf(prime: PBase, poly: Poly, top: InductiveVal) -> MlvChain {
        MlvChain { prime, poly, top, certified: true }
    }

    pub fn prime(&self) -> PBase {
        self.prime
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn certified(&self) -> bool {
        self.certified
    }

    /// The leaf `v_F`, or the last inner node of an approximant.
    pub fn top(&self) -> &InductiveVal {
        &self.top
    }

    fn require_certified(&self) -> Result<()> {
        if self.certified {
            Ok(())
        } else {
            Err(Error::NeedsMorePrecision(format!("branch approximated by {} is not certified", self.poly)))
        }
    }

    /// Inner nodes `μ_0, …, μ_r`.
    pub fn nodes(&self) -> Vec<InductiveVal> {
        let inner = if self.certified { self.top.len() - 1 } else { self.top.len() };
        (1..=inner).map(|k| self.top.truncate(k)).collect()
    }

    /// Number of augmentation steps to the leaf.
    pub fn depth(&self) -> usize {
        self.top.len() - 1
    }

    /// Metadata of the inner nodes.
    pub fn metadata(&self) -> Result<Vec<NodeInfo>> {
        let nodes = self.nodes();
        let mut out = Vec::with_capacity(nodes.len());
        for (i, mu) in nodes.iter().enumerate() {
            let lvl = mu.level(i);
            let residual_degree = if i + 1 < nodes.len() {
                self.top.level(i + 1).relative_residue_degree().unwrap_or(1)
            } else {
                mu.residual_polynomial(&self.poly)?.deg()
            };
            out.push(NodeInfo {
                phi: lvl.phi().clone(),
                gamma: lvl.gamma().clone(),
                degree: lvl.degree(),
                weight: mu.wt(),
                e: lvl.e().unwrap_or(1),
                residual_degree,
            });
        }
        Ok(out)
    }

    /// `v_F(g) = v(g(θ))`.
    pub fn vf(&self, g: &Poly) -> Result<Val> {
        self.require_certified()?;
        Ok(self.top.value(g))
    }

    /// `(e, f)` with `e f = deg F`.
    pub fn ramification_invariants(&self) -> Result<(i64, usize)> {
        self.require_certified()?;
        let meta = self.metadata()?;
        let e: i64 = meta.iter().map(|m| m.e).product();
        let f: usize = meta.iter().map(|m| m.residual_degree).product();
        if e as usize * f != self.poly.deg() {
            return Err(Error::Inconsistent(format!("defectless identity fails for {}: e = {e}, f = {f}", self.poly)));
        }
        Ok((e, f))
    }

    /// `ρ_F = μ_r`, the root sentinel for linear `F`.
    pub fn previous_primitive(&self) -> Result<InductiveVal> {
        self.require_certified()?;
        Ok(self.top.truncate(self.top.len() - 1))
    }

    /// `δ_0(F) = ρ_F(F) = deg F · wt(ρ_F)`.
    pub fn okutsu_bound(&self) -> Result<Val> {
        self.require_certified()?;
        if self.poly.deg() == 1 {
            return Err(Error::UndefinedForLinear);
        }
        let rho = self.previous_primitive()?;
        let v = rho.value(&self.poly);
        let check = rho.wt().scale(&Rat::from_int(self.poly.deg() as i64))?;
        if v != check {
            return Err(Error::Inconsistent(format!("ρ_F(F) = {v} but deg·wt = {check}")));
        }
        Ok(v)
    }

    pub fn to_json(&self) -> Result<ChainJson> {
        let meta = self.metadata()?;
        let (e, f) = if self.certified { self.ramification_invariants()? } else { (0, 0) };
        let mut nodes: Vec<NodeJson> = meta
            .iter()
            .map(|m| NodeJson {
                phi: m.phi.to_string(),
                gamma: m.gamma.to_frac_string(),
                degree: m.degree,
                weight: m.weight.to_frac_string(),
                residual_degree: m.residual_degree,
            })
            .collect();
        if self.certified {
            nodes.push(NodeJson {
                phi: self.poly.to_string(),
                gamma: Val::PosInf.to_frac_string(),
                degree: self.poly.deg(),
                weight: Val::PosInf.to_frac_string(),
                residual_degree: 1,
            });
        }
        Ok(ChainJson {
            prime: self.prime.p(),
            poly: self.poly.to_string(),
            certified: self.certified,
            depth: self.depth(),
            nodes,
            e,
            f,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeJson {
    pub phi: String,
    pub gamma: String,
    pub degree: usize,
    pub weight: String,
    pub residual_degree: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainJson {
    pub prime: u64,
    pub poly: String,
    pub certified: bool,
    pub depth: usize,
    pub nodes: Vec<NodeJson>,
    pub e: i64,
    pub f: usize,
}

/// One extension of `v_p` to `Q[x]/(F)`, or a cluster of them when not certified.
#[derive(Clone, Debug)]
pub struct Branch {
    pub chain: MlvChain,
    pub local_degree: usize,
    /// The chain's support polynomial is an exact factor of the input.
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct ExtensionsReport {
    pub input: Poly,
    pub prime: PBase,
    pub branches: Vec<Branch>,
}

impl ExtensionsReport {
    /// The chain of `F` itself when `F` is irreducible over `Q_p`.
    pub fn single_certified(&self) -> Result<&MlvChain> {
        match self.branches.as_slice() {
            [b] if b.chain.certified && b.chain.poly == self.input => Ok(&b.chain),
            [b] if !b.chain.certified => Err(Error::NeedsMorePrecision(format!(
                "{} was not certified below the singular-value bound",
                self.input
            ))),
            _ => Err(Error::InvalidOperand(format!("{} is not irreducible over Q_{}", self.input, self.prime.p()))),
        }
    }

    pub fn total_degree(&self) -> usize {
        self.branches.iter().map(|b| b.local_degree).sum()
    }
}

/// All branches of `F` over `Q_p`.
pub fn build_chains(f: &Poly, base: PBase, sv_bound: &Val) -> Result<ExtensionsReport> {
    if f.is_zero() || !f.is_monic() {
        return Err(Error::InvalidOperand(format!("{f} must be monic and nonzero")));
    }
    if f.deg() == 0 {
        return Err(Error::InvalidOperand("constant input".into()));
    }
    let mut branches = Vec::new();
    let root = InductiveVal::root(base);
    let x = Poly::x();
    explore(f, &root, &x, &Val::NegInf, sv_bound, &mut branches)?;
    let report = ExtensionsReport { input: f.clone(), prime: base, branches };
    if report.total_degree() != f.deg() {
        return Err(Error::Inconsistent(format!("local degrees of {f} sum to {}", report.total_degree())));
    }
    Ok(report)
}

/// Chain of a `Q_p`-irreducible `F`.
pub fn chain_of(f: &Poly, base: PBase, sv_bound: &Val) -> Result<MlvChain> {
    build_chains(f, base, sv_bound)?.single_certified().cloned()
}

/// The chain of `F` if `F` is irreducible over `Q_p`, `None` otherwise.
///
/// Agrees with [`chain_of`] but abandons the search at the first branch of
/// smaller degree, so reducible inputs are rejected cheaply. Inputs that
/// stay uncertified up to the bound also give `None`.
pub fn irreducible_chain(f: &Poly, base: PBase, sv_bound: &Val) -> Result<Option<MlvChain>> {
    if f.is_zero() || !f.is_monic() || f.deg() == 0 {
        return Err(Error::InvalidOperand(format!("{f} must be monic of positive degree")));
    }
    let mut out = Vec::new();
    let root = InductiveVal::root(base);
    match explore_inner(f, &root, &Poly::x(), &Val::NegInf, sv_bound, true, &mut out) {
        Ok(()) => {}
        Err(Error::Inconsistent(msg)) if msg == SPLIT => return Ok(None),
        Err(e) => return Err(e),
    }
    match out.pop() {
        Some(b) if out.is_empty() && b.chain.certified && b.chain.poly == *f => Ok(Some(b.chain)),
        _ => Ok(None),
    }
}

const SPLIT: &str = "split";

fn explore(
    f: &Poly,
    mu: &InductiveVal,
    phi: &Poly,
    threshold: &Val,
    sv_bound: &Val,
    out: &mut Vec<Branch>,
) -> Result<()> {
    explore_inner(f, mu, phi, threshold, sv_bound, false, out)
}

fn explore_inner(
    f: &Poly,
    mu: &InductiveVal,
    phi: &Poly,
    threshold: &Val,
    sv_bound: &Val,
    stop_on_split: bool,
    out: &mut Vec<Branch>,
) -> Result<()> {
    let n = f.deg();
    let split = || Error::Inconsistent(SPLIT.into());
    let base = mu.base();
    let exp = f.phi_expansion(phi)?;
    let smin = exp.iter().position(|a| !a.is_zero()).expect("nonzero input");
    if smin > 0 {
        if stop_on_split && phi.deg() * smin < n {
            return Err(split());
        }
        let leaf = mu.augment(phi, Val::PosInf)?;
        out.push(Branch {
            chain: MlvChain { prime: base, poly: phi.clone(), top: leaf, certified: true },
            local_degree: phi.deg() * smin,
            exact: true,
        });
    }
    let points =
        exp.iter().enumerate().skip(smin).filter(|(_, a)| !a.is_zero()).map(|(s, a)| (s, mu.value(a))).collect();
    let np = crate::valuation::NewtonPolygon::from_points(points);
    let sides = np.principal_part(threshold);
    if stop_on_split && sides.len() > 1 {
        return Err(split());
    }
    for side in sides {
        let lambda = -&side.slope;
        let nu = mu.augment_trusted(phi, Val::Finite(lambda.clone()))?;
        let e = nu.level(nu.len() - 1).e().expect("inner level") as usize;
        let r = nu.residual_polynomial(f)?;
        let factors = ff_factor(&r)?;
        if stop_on_split && factors.len() > 1 {
            return Err(split());
        }
        for (psi, mult) in factors {
            let m_new = phi.deg() * e * psi.deg();
            if mult == 1 && m_new == n {
                let leaf = nu.augment(f, Val::PosInf)?;
                out.push(Branch {
                    chain: MlvChain { prime: base, poly: f.clone(), top: leaf, certified: true },
                    local_degree: n,
                    exact: true,
                });
                continue;
            }
            let next = nu.key_lift(&psi)?;
            if Val::Finite(lambda.clone()) >= *sv_bound {
                if stop_on_split {
                    return Err(split());
                }
                out.push(Branch {
                    chain: MlvChain { prime: base, poly: next, top: nu.clone(), certified: false },
                    local_degree: m_new * mult,
                    exact: false,
                });
                continue;
            }
            if m_new == phi.deg() {
                let t = Val::Finite(lambda.clone());
                explore_inner(f, mu, &next, &t, sv_bound, stop_on_split, out)?;
            } else {
                let t = nu.value(&next);
                explore_inner(f, &nu, &next, &t, sv_bound, stop_on_split, out)?;
            }
        }
    }
    Ok(())
}
