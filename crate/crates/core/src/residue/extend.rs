//! Relative extensions `K[y]/(g)` flattened to a single layer over `F_p`.

use std::sync::Arc;

use super::field::{Field, Fq, FqCtx};
use super::poly::FqPoly;
use crate::arith::{invmod, mulmod};
use crate::error::{Error, Result};

/// `L = K[y]/(g)` presented as `F_p[s]/(h)`, with the base embedding and the
/// change of basis to tower coordinates `t^i y^j`.
#[derive(Clone, Debug)]
pub struct Extension {
    base: Field,
    ctx: Field,
    modulus: FqPoly,
    base_gen_image: Fq,
    root: Fq,
    /// Columns are the tower coordinates of `s^m`.
    flat_to_tower: Vec<Vec<u64>>,
}

impl Extension {
    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn ctx(&self) -> &Field {
        &self.ctx
    }

    pub fn modulus(&self) -> &FqPoly {
        &self.modulus
    }

    /// Image of `y` in `L`.
    pub fn root(&self) -> &Fq {
        &self.root
    }

    pub fn rel_degree(&self) -> usize {
        self.modulus.deg()
    }

    pub fn embed(&self, a: &Fq) -> Fq {
        let l = &self.ctx;
        a.coords().iter().rev().fold(l.zero(), |acc, &c| l.add(&l.mul(&acc, &self.base_gen_image), &l.from_u64(c)))
    }

    pub fn embed_poly(&self, f: &FqPoly) -> FqPoly {
        FqPoly::new(&self.ctx, f.coeffs().iter().map(|c| self.embed(c)).collect())
    }

    /// `Σ a_j y^j`.
    pub fn from_tower(&self, a: &[Fq]) -> Fq {
        let l = &self.ctx;
        a.iter().rev().fold(l.zero(), |acc, c| l.add(&l.mul(&acc, &self.root), &self.embed(c)))
    }

    /// Coefficients `a_0..a_{k-1}` in the base with `a = Σ a_j y^j`.
    pub fn to_tower(&self, a: &Fq) -> Vec<Fq> {
        let d = self.base.degree();
        let k = self.rel_degree();
        let p = self.ctx.p();
        let n = d * k;
        let mut coords = vec![0u64; n];
        for (row, out) in coords.iter_mut().enumerate() {
            let mut s = 0;
            for (m, &x) in a.coords().iter().enumerate() {
                s = (s + mulmod(self.flat_to_tower[row][m], x, p)) % p;
            }
            *out = s;
        }
        (0..k).map(|j| self.base.from_coords(&coords[j * d..(j + 1) * d])).collect()
    }
}

/// Extend `base` by the monic irreducible `g`.
pub fn ff_extend(base: &Field, g: &FqPoly) -> Result<Extension> {
    if !Arc::ptr_eq(g.ctx(), base) && **g.ctx() != **base {
        return Err(Error::InvalidOperand("modulus over a different field".into()));
    }
    let g = g.monic();
    if g.degree().unwrap_or(0) == 0 {
        return Err(Error::InvalidOperand("extension modulus must have positive degree".into()));
    }
    if !g.is_irreducible()? {
        return Err(Error::InvalidOperand("reducible extension modulus".into()));
    }
    let d = base.degree();
    let k = g.deg();
    let p = base.p();
    if k == 1 {
        let root = base.neg(&g.coeff(0));
        let n = d;
        let ident = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
        return Ok(Extension {
            base: base.clone(),
            ctx: base.clone(),
            modulus: g,
            base_gen_image: base.gen(),
            root,
            flat_to_tower: ident,
        });
    }
    let n = d * k;
    let y = FqPoly::x(base);
    let flat = |f: &FqPoly| -> Vec<u64> {
        let mut v = vec![0u64; n];
        for (j, c) in f.coeffs().iter().enumerate() {
            v[j * d..(j + 1) * d].copy_from_slice(c.coords());
        }
        v
    };
    let q = base.order().expect("desk-scale field");
    let candidates =
        (0..q).map(|i| y.add(&FqPoly::constant(base, base.element(i)))).chain((1..).map(|i| tower_element(base, k, i)));
    for theta in candidates {
        let mut powers = Vec::with_capacity(n + 1);
        let mut cur = FqPoly::one(base);
        for _ in 0..=n {
            powers.push(flat(&cur));
            cur = cur.mul(&theta).rem(&g)?;
        }
        let b: Vec<Vec<u64>> = (0..n).map(|r| (0..n).map(|m| powers[m][r]).collect()).collect();
        let Some(binv) = mat_inverse(&b, p) else { continue };
        // s^n = Σ c_m s^m
        let c = mat_vec(&binv, &powers[n], p);
        let mut h: Vec<u64> = c.iter().map(|&x| (p - x) % p).collect();
        h.push(1);
        let ctx = FqCtx::from_parts_unchecked(p, h);
        let col = |idx: usize| -> Fq {
            let mut e = vec![0u64; n];
            e[idx] = 1;
            Fq(mat_vec(&binv, &e, p).into())
        };
        let base_gen_image = if d == 1 { ctx.from_u64(base.gen().coords()[0]) } else { col(1) };
        let root = col(d);
        return Ok(Extension { base: base.clone(), ctx, modulus: g, base_gen_image, root, flat_to_tower: b });
    }
    unreachable!("finite fields have primitive elements")
}

fn tower_element(base: &Field, k: usize, mut i: u128) -> FqPoly {
    let q = base.order().unwrap();
    let c = (0..k)
        .map(|_| {
            let e = base.element(i % q);
            i /= q;
            e
        })
        .collect();
    FqPoly::new(base, c)
}

fn mat_vec(m: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
    m.iter().map(|row| row.iter().zip(v).fold(0, |s, (&a, &b)| (s + mulmod(a, b, p)) % p)).collect()
}

fn mat_inverse(m: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, piv);
        let inv = invmod(a[col][col], p);
        for x in a[col].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, &y) in a[r].iter_mut().zip(&pivot_row) {
                    *x = (*x + p - mulmod(f, y, p)) % p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PBase;

    fn fp(p: u64) -> Field {
        FqCtx::prime(PBase::new(p).unwrap())
    }

    #[test]
    fn prime_field_extensions() {
        let k = fp(2);
        let e = ff_extend(&k, &FqPoly::from_u64s(&k, &[1, 1, 1])).unwrap();
        assert_eq!(e.ctx().degree(), 2);
        let k3 = fp(3);
        let e = ff_extend(&k3, &FqPoly::from_u64s(&k3, &[0, 1])).unwrap();
        assert_eq!(e.ctx().degree(), 1);
        assert!(e.root().is_zero());
        assert!(ff_extend(&k3, &FqPoly::from_u64s(&k3, &[2, 0, 1])).is_err());
    }

    #[test]
    fn f16_over_f4() {
        let k2 = fp(2);
        let e4 = ff_extend(&k2, &FqPoly::from_u64s(&k2, &[1, 1, 1])).unwrap();
        let f4 = e4.ctx().clone();
        let w = e4.root().clone();
        // t^2 + t + w
        let g = FqPoly::new(&f4, vec![w.clone(), f4.one(), f4.one()]);
        let e16 = ff_extend(&f4, &g).unwrap();
        let l = e16.ctx().clone();
        assert_eq!(l.degree(), 4);
        // brute force: the generator s has exactly 4 distinct Frobenius conjugates
        let s = l.gen();
        let mut conj = vec![s.clone()];
        let mut c = s.clone();
        loop {
            c = l.pow(&c, 2);
            if c == s {
                break;
            }
            conj.push(c.clone());
        }
        assert_eq!(conj.len(), 4);
        // the root satisfies g
        assert!(e16.embed_poly(&g).eval(e16.root()).is_zero());
        // embedding is a ring map; tower coordinates round-trip
        for i in 0..4 {
            for j in 0..4 {
                let a = f4.element(i);
                let b = f4.element(j);
                assert_eq!(e16.embed(&f4.mul(&a, &b)), l.mul(&e16.embed(&a), &e16.embed(&b)));
                assert_eq!(e16.embed(&f4.add(&a, &b)), l.add(&e16.embed(&a), &e16.embed(&b)));
            }
        }
        for i in 0..16 {
            let a = l.element(i);
            assert_eq!(e16.from_tower(&e16.to_tower(&a)), a);
        }
    }

    #[test]
    fn embeddings_commute_f9_f81() {
        let k3 = fp(3);
        let e9 = ff_extend(&k3, &FqPoly::from_u64s(&k3, &[1, 0, 1])).unwrap();
        let f9 = e9.ctx().clone();
        // find an irreducible quadratic over F_9
        let g = (0..81u128)
            .map(|n| FqPoly::new(&f9, vec![f9.element(n % 9), f9.element(n / 9), f9.one()]))
            .find(|g| g.is_irreducible().unwrap())
            .unwrap();
        let e = ff_extend(&f9, &g).unwrap();
        assert_eq!(e.ctx().degree(), 4);
        let l = e.ctx();
        for i in 0..9 {
            for j in 0..9 {
                let a = f9.element(i);
                let b = f9.element(j);
                assert_eq!(e.embed(&f9.mul(&a, &b)), l.mul(&e.embed(&a), &e.embed(&b)));
            }
        }
        assert!(e.embed_poly(&g).eval(e.root()).is_zero());
        for i in 0..81 {
            let a = l.element(i);
            assert_eq!(e.from_tower(&e.to_tower(&a)), a);
        }
    }
}
