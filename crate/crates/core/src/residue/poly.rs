//! Univariate polynomials over a flat finite field.

use std::fmt;

use super::field::{Field, Fq};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqPoly {
    ctx: Field,
    coeffs: Vec<Fq>,
}

impl FqPoly {
    pub fn new(ctx: &Field, mut coeffs: Vec<Fq>) -> FqPoly {
        while coeffs.last().is_some_and(Fq::is_zero) {
            coeffs.pop();
        }
        FqPoly { ctx: ctx.clone(), coeffs }
    }

    pub fn zero(ctx: &Field) -> FqPoly {
        FqPoly { ctx: ctx.clone(), coeffs: vec![] }
    }

    pub fn constant(ctx: &Field, c: Fq) -> FqPoly {
        FqPoly::new(ctx, vec![c])
    }

    pub fn one(ctx: &Field) -> FqPoly {
        FqPoly::constant(ctx, ctx.one())
    }

    pub fn x(ctx: &Field) -> FqPoly {
        FqPoly::new(ctx, vec![ctx.zero(), ctx.one()])
    }

    /// Coefficients from the prime field, ascending.
    pub fn from_u64s(ctx: &Field, c: &[u64]) -> FqPoly {
        FqPoly::new(ctx, c.iter().map(|&x| ctx.from_u64(x)).collect())
    }

    pub fn ctx(&self) -> &Field {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Option<&Fq> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| *c == self.ctx.one())
    }

    pub fn monic(&self) -> FqPoly {
        match self.lc() {
            None => self.clone(),
            Some(l) => {
                let inv = self.ctx.inv(l).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &Fq) -> FqPoly {
        FqPoly::new(&self.ctx, self.coeffs.iter().map(|a| self.ctx.mul(a, c)).collect())
    }

    pub fn add(&self, o: &FqPoly) -> FqPoly {
        let k = &self.ctx;
        let n = self.coeffs.len().max(o.coeffs.len());
        FqPoly::new(k, (0..n).map(|i| k.add(&self.coeff(i), &o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &FqPoly) -> FqPoly {
        let k = &self.ctx;
        let n = self.coeffs.len().max(o.coeffs.len());
        FqPoly::new(k, (0..n).map(|i| k.sub(&self.coeff(i), &o.coeff(i))).collect())
    }

    pub fn mul(&self, o: &FqPoly) -> FqPoly {
        let k = &self.ctx;
        if self.is_zero() || o.is_zero() {
            return FqPoly::zero(k);
        }
        let mut c = vec![k.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = k.add(&c[i + j], &k.mul(a, b));
            }
        }
        FqPoly::new(k, c)
    }

    pub fn div_rem(&self, g: &FqPoly) -> Result<(FqPoly, FqPoly)> {
        let k = &self.ctx;
        let gd = g.degree().ok_or_else(|| Error::InvalidOperand("division by the zero polynomial".into()))?;
        if self.coeffs.len() <= gd {
            return Ok((FqPoly::zero(k), self.clone()));
        }
        let inv = k.inv(g.lc().unwrap())?;
        let mut r = self.coeffs.clone();
        let mut q = vec![k.zero(); r.len() - gd];
        for i in (0..q.len()).rev() {
            if r[i + gd].is_zero() {
                continue;
            }
            let t = k.mul(&r[i + gd], &inv);
            for (j, gc) in g.coeffs.iter().enumerate() {
                r[i + j] = k.sub(&r[i + j], &k.mul(&t, gc));
            }
            q[i] = t;
        }
        r.truncate(gd);
        Ok((FqPoly::new(k, q), FqPoly::new(k, r)))
    }

    pub fn rem(&self, g: &FqPoly) -> Result<FqPoly> {
        Ok(self.div_rem(g)?.1)
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn exact_div(&self, g: &FqPoly) -> FqPoly {
        let (q, r) = self.div_rem(g).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact division");
        q
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &FqPoly) -> FqPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> FqPoly {
        let k = &self.ctx;
        FqPoly::new(k, self.coeffs.iter().enumerate().skip(1).map(|(i, c)| k.scale(c, i as u64)).collect())
    }

    pub fn eval(&self, a: &Fq) -> Fq {
        let k = &self.ctx;
        self.coeffs.iter().rev().fold(k.zero(), |acc, c| k.add(&k.mul(&acc, a), c))
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u128, m: &FqPoly) -> FqPoly {
        let mut acc = FqPoly::one(&self.ctx).rem(m).expect("nonzero modulus");
        let mut sq = self.rem(m).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq).rem(m).unwrap();
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq).rem(m).unwrap();
            }
        }
        acc
    }

    pub fn pow(&self, e: u32) -> FqPoly {
        let mut acc = FqPoly::one(&self.ctx);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self(x)^q mod m` where `q` is the field size, by repeated `p`-th powers
    /// so that large fields never overflow the exponent.
    pub fn frobenius_mod(&self, m: &FqPoly) -> FqPoly {
        let mut a = self.rem(m).unwrap();
        for _ in 0..self.ctx.degree() {
            a = a.powmod(self.ctx.p() as u128, m);
        }
        a
    }

    /// Substitute `x ↦ x^p` inverse: requires all exponents divisible by `p`
    /// and takes the `p`-th root of every coefficient.
    fn pth_root(&self) -> FqPoly {
        let k = &self.ctx;
        let p = k.p() as usize;
        let n = self.deg() / p;
        FqPoly::new(k, (0..=n).map(|i| k.pth_root(&self.coeff(i * p))).collect())
    }

    /// Rabin's test.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.degree() {
            None | Some(0) => return Err(Error::InvalidOperand("irreducibility of a constant".into())),
            Some(n) => n,
        };
        if n == 1 {
            return Ok(true);
        }
        let f = self.monic();
        let x = FqPoly::x(&self.ctx);
        let mut powers = vec![x.clone()];
        for _ in 0..n {
            let next = powers.last().unwrap().frobenius_mod(&f);
            powers.push(next);
        }
        if !powers[n].sub(&x).rem(&f)?.is_zero() {
            return Ok(false);
        }
        for r in prime_divisors(n) {
            let g = powers[n / r].sub(&x).gcd(&f);
            if g.deg() > 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Squarefree decomposition: pairs `(g, m)` of coprime monic squarefree
    /// factors with `monic(self) = Π g^m`.
    pub fn squarefree(&self) -> Vec<(FqPoly, usize)> {
        let mut out = Vec::new();
        self.monic().sqf_rec(1, &mut out);
        out.sort_by_key(|(_, m)| *m);
        out
    }

    fn sqf_rec(&self, mult: usize, out: &mut Vec<(FqPoly, usize)>) {
        if self.deg() == 0 {
            return;
        }
        let p = self.ctx.p() as usize;
        let d = self.derivative();
        if d.is_zero() {
            self.pth_root().sqf_rec(mult * p, out);
            return;
        }
        let mut c = self.gcd(&d);
        let mut w = self.exact_div(&c);
        let mut i = 1;
        while w.deg() > 0 {
            let y = w.gcd(&c);
            let z = w.exact_div(&y);
            if z.deg() > 0 {
                out.push((z, i * mult));
            }
            i += 1;
            w = y;
            c = c.exact_div(&w);
        }
        if c.deg() > 0 {
            c.pth_root().sqf_rec(mult * p, out);
        }
    }

    pub fn fmt_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let k = &self.ctx;
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut cs = k.fmt_elem(c);
            if cs.contains('+') {
                cs = format!("({cs})");
            }
            let mon = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            parts.push(if i == 0 {
                cs
            } else if *c == k.one() {
                mon
            } else {
                format!("{cs}*{mon}")
            });
        }
        parts.join("+")
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with("y"))
    }
}

impl fmt::Debug for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FqPoly[{}]({})", self.ctx.degree(), self)
    }
}

pub(crate) fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
