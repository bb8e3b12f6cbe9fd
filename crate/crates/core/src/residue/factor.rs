//! Factorization over finite fields: squarefree, distinct-degree, then
//! Cantor–Zassenhaus equal-degree splitting.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::Fq;
use super::poly::FqPoly;
use crate::error::{Error, Result};

/// Seed of the splitting generator; the output is sorted, so it only affects speed.
pub const DEFAULT_SPLIT_SEED: u64 = 0x5eed_f00d;

/// Monic irreducible factors with multiplicities, sorted by degree and then
/// coefficients. The product times `lc(f)` recovers `f`.
pub fn ff_factor(f: &FqPoly) -> Result<Vec<(FqPoly, usize)>> {
    ff_factor_seeded(f, DEFAULT_SPLIT_SEED)
}

pub fn ff_factor_seeded(f: &FqPoly, seed: u64) -> Result<Vec<(FqPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::InvalidOperand("factorization of the zero polynomial".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (g, m) in f.squarefree() {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, &mut rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort_by(|a, b| canonical_key(&a.0).cmp(&canonical_key(&b.0)).then(a.1.cmp(&b.1)));
    Ok(out)
}

pub fn ff_is_irreducible(f: &FqPoly) -> Result<bool> {
    f.is_irreducible()
}

fn canonical_key(f: &FqPoly) -> (usize, Vec<Fq>) {
    (f.deg(), f.coeffs().iter().rev().cloned().collect())
}

/// Pairs `(h, d)` where `h` is the product of the degree-`d` irreducible
/// factors of the squarefree monic `f`.
fn distinct_degree(f: &FqPoly) -> Vec<(FqPoly, usize)> {
    let ctx = f.ctx().clone();
    let x = FqPoly::x(&ctx);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.frobenius_mod(&rest);
        let g = h.sub(&x).gcd(&rest);
        if g.deg() > 0 {
            rest = rest.exact_div(&g);
            h = h.rem(&rest).unwrap();
            out.push((g, d));
        }
    }
    if rest.deg() > 0 {
        let n = rest.deg();
        out.push((rest, n));
    }
    out
}

fn equal_degree(f: &FqPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FqPoly> {
    if f.deg() == d {
        return vec![f.clone()];
    }
    let ctx = f.ctx().clone();
    let n = f.deg();
    loop {
        // random polynomial of degree < n
        let a = FqPoly::new(&ctx, (0..n).map(|_| ctx.random(rng)).collect());
        if a.deg() == 0 {
            continue;
        }
        let b = splitting_map(&a, d, f);
        let g = b.gcd(f);
        if g.deg() > 0 && g.deg() < n {
            let h = f.exact_div(&g);
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

// Odd q: a^((q^d-1)/2) - 1. Characteristic 2: the absolute trace
// a + a^2 + ... + a^(2^(kd-1)) with q = 2^k.
fn splitting_map(a: &FqPoly, d: usize, f: &FqPoly) -> FqPoly {
    let ctx = f.ctx().clone();
    let p = ctx.p();
    if p == 2 {
        let steps = ctx.degree() * d;
        let mut t = a.rem(f).unwrap();
        let mut acc = t.clone();
        for _ in 1..steps {
            t = t.mul(&t).rem(f).unwrap();
            acc = acc.add(&t);
        }
        return acc;
    }
    // (q^d - 1)/2 = (q - 1)/2 · (1 + q + ... + q^(d-1)): take the norm-like
    // product of Frobenius conjugates, then the power (q-1)/2
    let mut conj = a.rem(f).unwrap();
    let mut prod = conj.clone();
    for _ in 1..d {
        conj = conj.frobenius_mod(f);
        prod = prod.mul(&conj).rem(f).unwrap();
    }
    let half = (ctx.order().expect("field size fits in u128") - 1) / 2;
    prod.powmod(half, f).sub(&FqPoly::one(&ctx))
}
