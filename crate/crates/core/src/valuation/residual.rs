//! Residues, residual polynomials and key lifts.
//!
//! Normalization: at level `i` the value-`v` part of a polynomial is divided by
//! the monomial `M_i(v) = π_i^{E_i v}` in `p, φ_0, …, φ_i`, where
//! `π_{-1} = p` and `π_i = φ_i^α π_{i-1}^β` with `α n_i + β e_i = 1`,
//! `0 ≤ α < e_i`. The residue of a value-zero monomial is `c ξ_i^n` with
//! `ξ_i = φ_i^{e_i} / M_{i-1}(e_i γ_i)` and `c ∈ κ_i`. In `κ_{i+1}` the class of
//! `ξ_i` is the root of the extension.

use std::collections::BTreeMap;

use super::InductiveVal;
use crate::arith::{vp, Rat, Val};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::residue::{Field, Fq, FqPoly};

/// Laurent polynomial `Σ c_n ξ^n` over a residue field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    pub field: Field,
    pub terms: BTreeMap<i64, Fq>,
}

impl Laurent {
    fn zero(field: &Field) -> Laurent {
        Laurent { field: field.clone(), terms: BTreeMap::new() }
    }

    fn add_term(&mut self, n: i64, c: Fq) {
        let k = &self.field;
        let cur = self.terms.remove(&n).unwrap_or_else(|| k.zero());
        let s = k.add(&cur, &c);
        if !s.is_zero() {
            self.terms.insert(n, s);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Drop the lowest power of `ξ` and return the resulting polynomial.
    pub fn strip(&self) -> FqPoly {
        let Some((&lo, _)) = self.terms.iter().next() else {
            return FqPoly::zero(&self.field);
        };
        let hi = *self.terms.keys().next_back().unwrap();
        let mut c = vec![self.field.zero(); (hi - lo + 1) as usize];
        for (n, v) in &self.terms {
            c[(n - lo) as usize] = v.clone();
        }
        FqPoly::new(&self.field, c)
    }
}

fn rat_i64(r: &Rat) -> Result<i64> {
    r.to_i64().ok_or_else(|| Error::Inconsistent(format!("{r} is not a machine integer")))
}

fn add_scaled(a: &mut [i64], b: &[i64], k: i64) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += k * y;
    }
}

impl InductiveVal {
    fn gamma_at(&self, i: usize) -> Result<&Rat> {
        self.levels[i]
            .gamma
            .finite()
            .ok_or_else(|| Error::InvalidOperand("residue data requested on a leaf level".into()))
    }

    fn field_at(&self, i: isize) -> &Field {
        if i < 0 {
            &self.fp
        } else {
            &self.levels[i as usize].data.as_ref().expect("inner level").kappa
        }
    }

    /// Exponents of `M_i(v)` over `[p, φ_0, …, φ_i]`.
    fn monomial(&self, i: isize, v: &Rat) -> Result<Vec<i64>> {
        if i < 0 {
            return Ok(vec![rat_i64(v)?]);
        }
        let d = self.data(i as usize)?;
        let k = rat_i64(&(v * &Rat::from_int(d.big_e)))?;
        Ok(d.pi.iter().map(|x| x * k).collect())
    }

    /// Residue `c ξ_i^n` of a value-zero monomial with exponents `k`.
    fn monomial_residue(&self, i: usize, k: &[i64]) -> Result<(Fq, i64)> {
        debug_assert_eq!(k.len(), i + 2);
        let d = self.data(i)?;
        if k[i + 1] % d.e != 0 {
            return Err(Error::Inconsistent("monomial of nonzero value".into()));
        }
        let n = k[i + 1] / d.e;
        let mut lower = k[..=i].to_vec();
        add_scaled(&mut lower, &d.xi_norm, n);
        if i == 0 {
            if lower[0] != 0 {
                return Err(Error::Inconsistent("monomial of nonzero value".into()));
            }
            return Ok((d.kappa.one(), n));
        }
        let (c, m) = self.monomial_residue(i - 1, &lower)?;
        let ext = d.ext.as_ref().expect("extension above level 0");
        let l = &d.kappa;
        let z = ext.root();
        let zm = if m >= 0 { l.pow(z, m as u128) } else { l.inv(&l.pow(z, (-m) as u128))? };
        Ok((l.mul(&ext.embed(&c), &zm), n))
    }

    /// Map a Laurent polynomial over `κ_{i-1}` to `κ_i` by `ξ_{i-1} ↦ z_{i-1}`.
    fn descend(&self, i: usize, lower: &Laurent) -> Result<Fq> {
        let d = self.data(i)?;
        let l = &d.kappa;
        let Some(ext) = d.ext.as_ref() else {
            return Ok(lower.terms.get(&0).cloned().unwrap_or_else(|| l.zero()));
        };
        let z = ext.root();
        let zinv = if z.is_zero() { None } else { Some(l.inv(z)?) };
        let mut acc = l.zero();
        for (&n, c) in &lower.terms {
            let zn =
                if n >= 0 { l.pow(z, n as u128) } else { l.pow(zinv.as_ref().expect("nonzero root"), (-n) as u128) };
            acc = l.add(&acc, &l.mul(&ext.embed(c), &zn));
        }
        Ok(acc)
    }

    /// Residue of `a / M_i(v)` as a Laurent polynomial in `ξ_i` over `κ_i`;
    /// zero when `μ_i(a) > v`.
    pub(crate) fn reduce(&self, i: isize, a: &Poly, v: &Rat) -> Result<Laurent> {
        let field = self.field_at(i).clone();
        let mut out = Laurent::zero(&field);
        if a.is_zero() {
            return Ok(out);
        }
        if i < 0 {
            let c = a.coeff(0);
            let w = vp(&c, self.base);
            let vv = Val::Finite(v.clone());
            if w > vv {
                return Ok(out);
            }
            if w < vv {
                return Err(Error::Inconsistent(format!("reduction of {c} below its value")));
            }
            let q = &c / &self.base.as_rat().pow(rat_i64(v)?);
            let r = q.reduce_mod(self.base.p()).expect("unit");
            out.add_term(0, field.from_u64(r));
            return Ok(out);
        }
        let iu = i as usize;
        let g = self.gamma_at(iu)?.clone();
        let mv = self.monomial(i, v)?;
        let exp = a.phi_expansion(&self.levels[iu].phi)?;
        for (t, b) in exp.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let w = match self.value_at(i - 1, b) {
                Val::Finite(w) => w,
                _ => return Err(Error::Inconsistent("non-finite coefficient value".into())),
            };
            let tot = &w + &(&g * &Rat::from_int(t as i64));
            if &tot > v {
                continue;
            }
            if &tot < v {
                return Err(Error::Inconsistent(format!("reduction of {a} below its value")));
            }
            let lower = self.reduce(i - 1, b, &w)?;
            let lc = self.descend(iu, &lower)?;
            let mut k = self.monomial(i - 1, &w)?;
            k.push(t as i64);
            add_scaled(&mut k, &mv, -1);
            let (c, n) = self.monomial_residue(iu, &k)?;
            out.add_term(n, field.mul(&lc, &c));
        }
        Ok(out)
    }

    /// Residual polynomial of `f` at the node: the reduction of `f` at its own
    /// value, stripped of the power of `ξ` and made monic.
    pub fn residual_polynomial(&self, f: &Poly) -> Result<FqPoly> {
        if !self.is_inner() {
            return Err(Error::InvalidOperand("residual polynomials live at inner nodes".into()));
        }
        let i = self.levels.len() as isize - 1;
        let v = match self.value(f) {
            Val::Finite(v) => v,
            _ => return Err(Error::InvalidOperand("residual polynomial of zero".into())),
        };
        Ok(self.reduce(i, f, &v)?.strip().monic())
    }

    /// Residual polynomial of `f` along the side of slope `-λ` of its
    /// `φ`-Newton polygon, i.e. at `[μ; φ, λ]`.
    pub fn side_residual(&self, phi: &Poly, lambda: &Rat, f: &Poly) -> Result<FqPoly> {
        self.augment(phi, Val::Finite(lambda.clone()))?.residual_polynomial(f)
    }

    /// Monic polynomial `Σ A_j φ^{e j}` (`j ≤ deg ψ`, `A_{deg ψ} = 1`) whose
    /// residual polynomial at this node is `ψ`, the last key being `φ`.
    pub fn key_lift(&self, psi: &FqPoly) -> Result<Poly> {
        if !self.is_inner() {
            return Err(Error::InvalidOperand("key lifts live at inner nodes".into()));
        }
        let psi = psi.monic();
        let r = self.levels.len() - 1;
        let d = self.data(r)?;
        if psi.ctx() != &d.kappa || psi.deg() == 0 {
            return Err(Error::InvalidOperand("residual factor over the wrong field".into()));
        }
        if psi.coeff(0).is_zero() {
            return Err(Error::InvalidOperand("the residual factor y has no key lift".into()));
        }
        let f = psi.deg();
        let e = d.e;
        let lambda = self.gamma_at(r)?.clone();
        let phi = self.levels[r].phi.clone();
        let k = &d.kappa;
        let total = &lambda * &Rat::from_int(e * f as i64);
        let mv = self.monomial(r as isize, &total)?;
        let mut cs = Vec::with_capacity(f + 1);
        let mut ws = Vec::with_capacity(f + 1);
        for j in 0..=f {
            let w = &lambda * &Rat::from_int(e * (f - j) as i64);
            let mut mono = self.monomial(r as isize - 1, &w)?;
            mono.push(e * j as i64);
            add_scaled(&mut mono, &mv, -1);
            cs.push(self.monomial_residue(r, &mono)?.0);
            ws.push(w);
        }
        if r == 0 && phi.deg() == 1 && e == 1 && f == 1 {
            // new center a' = a + lift(-τ_0) p^λ, which stays nonnegative
            let tau0 = k.div(&k.mul(&psi.coeff(0), &cs[1]), &cs[0])?;
            let lifted = k.as_prime(&k.neg(&tau0)).ok_or_else(|| Error::Inconsistent("prime-field residue".into()))?;
            let a = -&phi.coeff(0);
            let step = &Rat::from_int(lifted as i64) * &self.base.as_rat().pow(rat_i64(&lambda)?);
            return Ok(Poly::linear(&(&a + &step)));
        }
        let phi_e = phi.pow(e as u32);
        let mut out = Poly::zero();
        for j in (0..=f).rev() {
            let a_j = if j == f {
                Poly::one()
            } else {
                let tau = k.div(&k.mul(&psi.coeff(j), &cs[f]), &cs[j])?;
                self.lift(r as isize - 1, &tau, &ws[j])?
            };
            out = &(&out * &phi_e) + &a_j;
        }
        Ok(out)
    }

    /// Polynomial `A` of degree below `deg φ_{i+1}` with `μ_i(A) ≥ w` whose
    /// residue `red_i(A, w)` maps to `τ ∈ κ_{i+1}`.
    fn lift(&self, i: isize, tau: &Fq, w: &Rat) -> Result<Poly> {
        if tau.is_zero() {
            return Ok(Poly::zero());
        }
        if i < 0 {
            let c = self.fp.as_prime(tau).ok_or_else(|| Error::Inconsistent("prime-field residue".into()))?;
            let pw = self.base.as_rat().pow(rat_i64(w)?);
            return Ok(Poly::constant(&Rat::from_int(c as i64) * &pw));
        }
        let iu = i as usize;
        let d = self.data(iu)?;
        let up = self.data(iu + 1)?;
        let ext = up.ext.as_ref().expect("extension above level 0");
        let g = self.gamma_at(iu)?.clone();
        let e = d.e;
        let t0 = (rat_i64(&(w * &Rat::from_int(d.big_e)))? * d.n_inv).rem_euclid(e.max(1));
        let t0 = if e == 1 { 0 } else { t0 };
        let mv = self.monomial(i, w)?;
        let fi = ext.rel_degree();
        let mut cs = Vec::with_capacity(fi);
        let mut ws = Vec::with_capacity(fi);
        let mut n0 = 0;
        for kk in 0..fi {
            let t = t0 + e * kk as i64;
            let wk = w - &(&g * &Rat::from_int(t));
            let mut mono = self.monomial(i - 1, &wk)?;
            mono.push(t);
            add_scaled(&mut mono, &mv, -1);
            let (c, n) = self.monomial_residue(iu, &mono)?;
            if kk == 0 {
                n0 = n;
            }
            cs.push(c);
            ws.push(wk);
        }
        let l = ext.ctx();
        let z = ext.root();
        let zn = if n0 >= 0 { l.inv(&l.pow(z, n0 as u128))? } else { l.pow(z, (-n0) as u128) };
        let coords = ext.to_tower(&l.mul(tau, &zn));
        let k = &d.kappa;
        let phi = &self.levels[iu].phi;
        let mut out = Poly::zero();
        for kk in 0..fi {
            let target = k.div(&coords[kk], &cs[kk])?;
            let lk = self.lift(i - 1, &target, &ws[kk])?;
            if !lk.is_zero() {
                let t = (t0 + e * kk as i64) as u32;
                out = &out + &(&lk * &phi.pow(t));
            }
        }
        Ok(out)
    }
}
