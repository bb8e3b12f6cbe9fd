//! Finite fields `F_p[t]/(h)` with `h` monic irreducible.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use smallvec::{smallvec, SmallVec};

use crate::arith::{invmod, mulmod, PBase};
use crate::error::{Error, Result};

/// A flat finite field `F_p[t]/(h)` of degree `d = deg h`.
///
/// For the prime field `h = t` and `d = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqCtx {
    p: u64,
    modulus: Vec<u64>,
}

/// Field element: `d` coefficients in `[0, p)` over the power basis of `t`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq(pub(crate) Coords);

pub(crate) type Coords = SmallVec<[u64; 4]>;

impl Fq {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

pub type Field = Arc<FqCtx>;

impl FqCtx {
    pub fn prime(base: PBase) -> Field {
        Arc::new(FqCtx { p: base.p(), modulus: vec![0, 1] })
    }

    /// `F_p[t]/(h)`; `h` is given by coefficients over `F_p`, ascending, and
    /// must be monic irreducible.
    pub fn with_modulus(base: PBase, h: &[u64]) -> Result<Field> {
        let p = base.p();
        let mut h: Vec<u64> = h.iter().map(|c| c % p).collect();
        while h.last() == Some(&0) {
            h.pop();
        }
        if h.len() < 2 || *h.last().unwrap() != 1 {
            return Err(Error::InvalidOperand("modulus must be monic of positive degree".into()));
        }
        let ctx = FqCtx { p, modulus: h };
        if ctx.degree() > 1 {
            let fp = FqCtx::prime(base);
            let poly = super::FqPoly::new(&fp, ctx.modulus.iter().map(|&c| fp.from_u64(c)).collect());
            if !poly.is_irreducible()? {
                return Err(Error::InvalidOperand("reducible modulus".into()));
            }
        }
        Ok(Arc::new(ctx))
    }

    pub(crate) fn from_parts_unchecked(p: u64, modulus: Vec<u64>) -> Field {
        Arc::new(FqCtx { p, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn base(&self) -> PBase {
        PBase::new(self.p).expect("validated at construction")
    }

    /// Flattened degree over `F_p`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Field size as `u128`; `None` if it overflows.
    pub fn order(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.degree() as u32)
    }

    pub fn zero(&self) -> Fq {
        Fq(smallvec![0; self.degree()])
    }

    pub fn one(&self) -> Fq {
        self.from_u64(1)
    }

    pub fn from_u64(&self, c: u64) -> Fq {
        let mut v: Coords = smallvec![0; self.degree()];
        v[0] = c % self.p;
        Fq(v)
    }

    pub fn from_i64(&self, c: i64) -> Fq {
        self.from_u64(c.rem_euclid(self.p as i64) as u64)
    }

    /// The class of `t`.
    pub fn gen(&self) -> Fq {
        if self.degree() == 1 {
            return Fq(smallvec![(self.p - self.modulus[0]) % self.p]);
        }
        let mut v: Coords = smallvec![0; self.degree()];
        v[1] = 1;
        Fq(v)
    }

    pub fn from_coords(&self, c: &[u64]) -> Fq {
        let d = self.degree();
        let mut v: Coords = smallvec![0; d];
        for (i, &x) in c.iter().enumerate() {
            if i < d {
                v[i] = x % self.p;
            } else if x % self.p != 0 {
                return self.reduce_wide(c);
            }
        }
        Fq(v)
    }

    /// Element number `n` in the enumeration by base-`p` digits.
    pub fn element(&self, mut n: u128) -> Fq {
        let mut v: Coords = smallvec![0; self.degree()];
        for c in v.iter_mut() {
            *c = (n % self.p as u128) as u64;
            n /= self.p as u128;
        }
        Fq(v)
    }

    /// Inverse of [`FqCtx::element`].
    pub fn index(&self, a: &Fq) -> u128 {
        a.0.iter().rev().fold(0u128, |acc, &c| acc * self.p as u128 + c as u128)
    }

    /// Element of the prime field, if `a` lies there.
    pub fn as_prime(&self, a: &Fq) -> Option<u64> {
        if a.0[1..].iter().all(|&c| c == 0) {
            Some(a.0[0])
        } else {
            None
        }
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> Fq {
        Fq((0..self.degree()).map(|_| rng.gen_range(0..self.p)).collect())
    }

    pub fn add(&self, a: &Fq, b: &Fq) -> Fq {
        Fq(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + y) % self.p).collect())
    }

    pub fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        Fq(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + self.p - y) % self.p).collect())
    }

    pub fn neg(&self, a: &Fq) -> Fq {
        Fq(a.0.iter().map(|&x| (self.p - x) % self.p).collect())
    }

    pub fn scale(&self, a: &Fq, c: u64) -> Fq {
        Fq(a.0.iter().map(|&x| mulmod(x, c % self.p, self.p)).collect())
    }

    pub fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        let d = self.degree();
        if d == 1 {
            return Fq(smallvec![mulmod(a.0[0], b.0[0], self.p)]);
        }
        let mut w: SmallVec<[u64; 8]> = smallvec![0u64; 2 * d - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                w[i + j] = (w[i + j] + mulmod(x, y, self.p)) % self.p;
            }
        }
        self.reduce_wide(&w)
    }

    fn reduce_wide(&self, w: &[u64]) -> Fq {
        let d = self.degree();
        let p = self.p;
        let mut w: Coords = w.iter().map(|c| c % p).collect();
        for k in (d..w.len()).rev() {
            let c = w[k];
            if c == 0 {
                continue;
            }
            w[k] = 0;
            for (j, &h) in self.modulus[..d].iter().enumerate() {
                let m = mulmod(c, h, p);
                w[k - d + j] = (w[k - d + j] + p - m) % p;
            }
        }
        w.truncate(d);
        w.resize(d, 0);
        Fq(w)
    }

    pub fn pow(&self, a: &Fq, mut e: u128) -> Fq {
        let mut acc = self.one();
        let mut sq = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    pub fn inv(&self, a: &Fq) -> Result<Fq> {
        if a.is_zero() {
            return Err(Error::InvalidOperand("inverse of zero in a finite field".into()));
        }
        if self.degree() == 1 {
            return Ok(Fq(smallvec![invmod(a.0[0], self.p)]));
        }
        // extended Euclid over F_p between the element and the modulus
        let p = self.p;
        let trim = |v: &mut Vec<u64>| {
            while v.last() == Some(&0) {
                v.pop();
            }
        };
        let mut r0 = self.modulus.clone();
        let mut r1 = a.0.to_vec();
        trim(&mut r1);
        let mut s0: Vec<u64> = vec![];
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            let (q, r) = fp_divrem(&r0, &r1, p);
            let qs = fp_mul(&q, &s1, p);
            let mut s2 = fp_sub(&s0, &qs, p);
            trim(&mut s2);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant
        let c = invmod(r0[0], p);
        let v: Vec<u64> = s0.iter().map(|&x| mulmod(x, c, p)).collect();
        Ok(self.from_coords(&v))
    }

    pub fn div(&self, a: &Fq, b: &Fq) -> Result<Fq> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// The unique `b` with `b^p = a`.
    pub fn pth_root(&self, a: &Fq) -> Fq {
        // Frobenius has order d, so its inverse is the (d-1)-th iterate
        let mut b = a.clone();
        for _ in 1..self.degree() {
            b = self.pow(&b, self.p as u128);
        }
        b
    }

    pub fn fmt_elem(&self, a: &Fq) -> String {
        if self.degree() == 1 {
            return a.0[0].to_string();
        }
        let mut parts = Vec::new();
        for (i, &c) in a.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mon = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            parts.push(match (i, c) {
                (0, _) => c.to_string(),
                (_, 1) => mon,
                _ => format!("{c}*{mon}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

impl fmt::Debug for FqCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; {:?})", self.p, self.degree(), self.modulus)
    }
}

// dense F_p helpers for the inversion above

fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = invmod(b[db], p);
    if r.len() <= db {
        return (vec![], r);
    }
    let mut q = vec![0; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = mulmod(r[k + db], inv, p);
        q[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - mulmod(c, bj, p)) % p;
        }
    }
    r.truncate(db);
    while r.last() == Some(&0) {
        r.pop();
    }
    (q, r)
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut w = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            w[i + j] = (w[i + j] + mulmod(x, y, p)) % p;
        }
    }
    w
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Field {
        FqCtx::with_modulus(PBase::new(2).unwrap(), &[1, 1, 1]).unwrap()
    }

    #[test]
    fn field_axioms_exhaustive_f4_f9() {
        let f9 = FqCtx::with_modulus(PBase::new(3).unwrap(), &[1, 0, 1]).unwrap();
        for k in [f4(), f9] {
            let q = k.order().unwrap();
            for i in 0..q {
                let a = k.element(i);
                assert_eq!(k.index(&a), i);
                if !a.is_zero() {
                    assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), k.one());
                    assert_eq!(k.pow(&a, q - 1), k.one());
                }
                assert_eq!(k.pow(&k.pth_root(&a), k.p() as u128), a);
                for j in 0..q {
                    let b = k.element(j);
                    assert_eq!(k.mul(&a, &b), k.mul(&b, &a));
                    assert_eq!(k.sub(&k.add(&a, &b), &b), a);
                }
            }
        }
    }

    #[test]
    fn rejects_reducible_modulus() {
        assert!(FqCtx::with_modulus(PBase::new(2).unwrap(), &[1, 0, 1]).is_err());
        assert!(FqCtx::with_modulus(PBase::new(3).unwrap(), &[2, 0, 1]).is_err());
    }

    #[test]
    fn generator_of_f4_is_cube_root_of_unity() {
        let k = f4();
        let w = k.gen();
        assert_ne!(w, k.one());
        assert_eq!(k.pow(&w, 3), k.one());
    }
}
