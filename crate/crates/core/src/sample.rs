//! Deterministic polynomial samplers: exhaustive coefficient grids and
//! seeded random draws.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::Poly;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x0c70_5eed;

#[derive(Clone, Debug)]
pub struct SamplerConfig {
    /// Coefficients of the exhaustive grid lie in `[-grid_height, grid_height]`.
    pub grid_height: i64,
    pub random_draws: usize,
    /// Coefficient bound of random draws.
    pub random_height: i64,
    pub seed: u64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig { grid_height: 8, random_draws: 1000, random_height: 1 << 12, seed: DEFAULT_SEED }
    }
}

/// A generator keyed by `seed` and a per-call `salt`.
pub fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// A stable salt derived from the rendering of `f`.
pub fn poly_salt(f: &Poly) -> u64 {
    // FNV-1a
    f.to_string().bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

/// `0, 1, -1, 2, -2, …, h, -h`.
pub fn heights(h: i64) -> Vec<i64> {
    let mut out = vec![0];
    for k in 1..=h {
        out.push(k);
        out.push(-k);
    }
    out
}

/// All monic polynomials of degree `deg` with lower coefficients in
/// `[-h, h]`, smallest coefficients first.
pub fn monic_grid(deg: usize, h: i64) -> impl Iterator<Item = Poly> {
    let hs = heights(h);
    let total = hs.len().pow(deg as u32);
    (0..total).map(move |mut idx| {
        let mut c = vec![0i64; deg + 1];
        for cj in c.iter_mut().take(deg) {
            *cj = hs[idx % hs.len()];
            idx /= hs.len();
        }
        c[deg] = 1;
        Poly::from_ints(&c)
    })
}

/// Calls `visit` on the lower coefficients of every polynomial of
/// [`monic_grid`], in the same order, until it returns `false`.
pub fn visit_monic_grid(deg: usize, h: i64, mut visit: impl FnMut(&[i64]) -> bool) {
    let hs = heights(h);
    let mut digits = vec![0usize; deg];
    let mut c = vec![0i64; deg];
    loop {
        if !visit(&c) {
            return;
        }
        let mut j = 0;
        loop {
            if j == deg {
                return;
            }
            digits[j] += 1;
            if digits[j] < hs.len() {
                c[j] = hs[digits[j]];
                break;
            }
            digits[j] = 0;
            c[j] = 0;
            j += 1;
        }
    }
}

/// Number of polynomials produced by [`monic_grid`].
pub fn monic_grid_len(deg: usize, h: i64) -> usize {
    (2 * h as usize + 1).pow(deg as u32)
}

pub fn random_monic<R: Rng>(rng: &mut R, deg: usize, h: i64) -> Poly {
    let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-h..=h)).collect();
    c.push(1);
    Poly::from_ints(&c)
}

/// A nonzero integer polynomial of degree at most `max_deg`.
pub fn random_poly<R: Rng>(rng: &mut R, max_deg: usize, h: i64) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-h..=h)).collect();
    if c[deg] == 0 {
        c[deg] = if rng.gen() { 1 } else { -1 };
    }
    Poly::from_ints(&c)
}

/// Random polynomials of degree below `bound` biased towards high values
/// under valuations built from `keys`: plain draws, key perturbations by
/// powers of `p`, and products of both.
pub fn probe_poly<R: Rng>(rng: &mut R, keys: &[Poly], p: u64, bound: usize, h: i64) -> Poly {
    let int_keys: Vec<Vec<i64>> = keys.iter().filter_map(int_coeffs).collect();
    Poly::from_ints(&probe_ints(rng, &int_keys, p, bound, h))
}

/// Integer coefficients of `f`, if they are all small integers.
pub fn int_coeffs(f: &Poly) -> Option<Vec<i64>> {
    f.coeffs().iter().map(|c| c.as_small().filter(|s| s.1 == 1).map(|s| s.0)).collect()
}

/// Coefficient vector of a [`probe_poly`] draw, with keys given by their
/// integer coefficients.
pub fn probe_ints<R: Rng>(rng: &mut R, keys: &[Vec<i64>], p: u64, bound: usize, h: i64) -> Vec<i64> {
    let max_deg = bound.saturating_sub(1);
    let ints = |rng: &mut R, max_deg: usize, h: i64| -> Vec<i64> {
        let deg = rng.gen_range(0..=max_deg);
        let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-h..=h)).collect();
        if c[deg] == 0 {
            c[deg] = if rng.gen() { 1 } else { -1 };
        }
        c
    };
    loop {
        let mut g = match rng.gen_range(0..4) {
            0 => ints(rng, max_deg, h),
            1 | 2 if !keys.is_empty() => {
                let k = &keys[rng.gen_range(0..keys.len())];
                if k.len() > max_deg + 1 {
                    continue;
                }
                let pe = (p as i64).pow(rng.gen_range(0..8u32));
                let unit = rng.gen_range(1..=h.min(50));
                let noise = ints(rng, max_deg, 4);
                let mut g = vec![0i64; k.len().max(noise.len())];
                for (i, c) in k.iter().enumerate() {
                    g[i] += unit * c;
                }
                for (i, c) in noise.iter().enumerate() {
                    g[i] += pe * c;
                }
                g
            }
            _ => {
                let a = ints(rng, max_deg / 2, 16);
                let b = ints(rng, max_deg + 1 - a.len(), 16);
                let mut g = vec![0i64; a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    for (j, y) in b.iter().enumerate() {
                        g[i + j] += x * y;
                    }
                }
                g
            }
        };
        while g.last() == Some(&0) {
            g.pop();
        }
        if !g.is_empty() && g.len() <= max_deg + 1 {
            return g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_starts_at_monomial() {
        let g: Vec<Poly> = monic_grid(1, 2).collect();
        assert_eq!(g.len(), monic_grid_len(1, 2));
        assert_eq!(g[0], Poly::x());
        assert_eq!(g[1], Poly::from_ints(&[1, 1]));
        assert_eq!(monic_grid(2, 1).count(), 9);
        let mut seen = Vec::new();
        visit_monic_grid(2, 1, |c| {
            let mut v = c.to_vec();
            v.push(1);
            seen.push(Poly::from_ints(&v));
            true
        });
        assert_eq!(seen, monic_grid(2, 1).collect::<Vec<_>>());
    }

    #[test]
    fn seeded_draws_repeat() {
        let a: Vec<Poly> = (0..5).map(|_| random_poly(&mut rng_for(7, 1), 3, 9)).collect();
        let b: Vec<Poly> = (0..5).map(|_| random_poly(&mut rng_for(7, 1), 3, 9)).collect();
        assert_eq!(a, b);
    }
}
