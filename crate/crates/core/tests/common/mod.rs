//! Oracles written against integer arithmetic only, sharing no code with the
//! library beyond its polynomial type for input.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use valfram::arith::{Rat, Val};
use valfram::poly::Poly;

pub fn ints(f: &Poly) -> Vec<i64> {
    f.coeffs().iter().map(|c| c.to_i64().expect("integer coefficient")).collect()
}

pub fn rat(n: i64, d: i64) -> Val {
    Val::Finite(Rat::frac(n, d))
}

/// Exponent of `p` in a nonzero integer.
pub fn vp_big(n: &BigInt, p: u64) -> i64 {
    assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        k += 1;
    }
    k
}

fn vp_i128(mut n: i128, p: u64) -> i64 {
    assert!(n != 0);
    let p = p as i128;
    let mut k = 0;
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    k
}

/// `Res(F, g) = det` of multiplication by `g` on `Z[x]/(F)`, for monic `F`.
pub fn norm_resultant(f: &[i64], g: &[i64]) -> BigInt {
    let n = f.len() - 1;
    assert_eq!(f[n], 1, "monic modulus");
    if n == 0 {
        return BigInt::one();
    }
    let rows = multiplication_matrix(f, g);
    if let Some(d) = bareiss_i128(rows.clone()) {
        return BigInt::from(d);
    }
    bareiss_big(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect())
}

/// `vp(Res(F, g))`, or `None` when the resultant vanishes.
pub fn vp_norm(f: &[i64], g: &[i64], p: u64) -> Option<i64> {
    let n = f.len() - 1;
    if n == 0 {
        return Some(0);
    }
    let rows = multiplication_matrix(f, g);
    match bareiss_i128(rows.clone()) {
        Some(0) => None,
        Some(d) => Some(vp_i128(d, p)),
        None => {
            let d = bareiss_big(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect());
            (!d.is_zero()).then(|| vp_big(&d, p))
        }
    }
}

/// `v_F(g)` from the norm, for monic integral `F`.
pub fn vf_oracle(f: &Poly, g: &Poly, p: u64) -> Val {
    let n = f.deg() as i64;
    match vp_norm(&ints(f), &ints(g), p) {
        None => Val::PosInf,
        Some(k) => rat(k, n),
    }
}

/// `u(F, G) = vp(Res) / (deg F deg G)`.
pub fn distance_oracle(f: &Poly, g: &Poly, p: u64) -> Val {
    match vp_norm(&ints(f), &ints(g), p) {
        None => Val::PosInf,
        Some(k) => rat(k, (f.deg() * g.deg()) as i64),
    }
}

// Row i holds the coefficients of x^i g mod F.
fn multiplication_matrix(f: &[i64], g: &[i64]) -> Vec<Vec<i128>> {
    let n = f.len() - 1;
    let mut cur = vec![0i128; n];
    // reduce g mod F first
    let mut gg: Vec<i128> = g.iter().map(|&c| c as i128).collect();
    for top in (n..gg.len()).rev() {
        let c = gg[top];
        if c != 0 {
            for j in 0..=n {
                gg[top - n + j] -= c * f[j] as i128;
            }
        }
    }
    for (j, c) in gg.iter().take(n).enumerate() {
        cur[j] = *c;
    }
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        rows.push(cur.clone());
        // multiply by x and reduce with x^n = -(f_0 + … + f_{n-1} x^{n-1})
        let lead = cur[n - 1];
        for j in (1..n).rev() {
            cur[j] = cur[j - 1] - lead * f[j] as i128;
        }
        cur[0] = -lead * f[0] as i128;
    }
    rows
}

fn bareiss_i128(mut a: Vec<Vec<i128>>) -> Option<i128> {
    let n = a.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r][k] != 0) else { return Some(0) };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j].checked_mul(a[k][k])?.checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = t / prev;
            }
        }
        prev = a[k][k];
    }
    a[n - 1][n - 1].checked_mul(sign)
}

fn bareiss_big(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else { return BigInt::zero() };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    &a[n - 1][n - 1] * sign
}

// ---------------------------------------------------------------- Hensel

fn rem_mod(f: &[i64], g: &[i64], m: i64) -> Vec<i64> {
    let mut r: Vec<i64> = f.iter().map(|c| c.rem_euclid(m)).collect();
    let dg = g.len() - 1;
    for top in (dg..r.len()).rev() {
        let c = r[top];
        if c != 0 {
            for j in 0..=dg {
                r[top - dg + j] = (r[top - dg + j] - c * g[j]).rem_euclid(m);
            }
        }
    }
    r.truncate(dg);
    r
}

/// No monic divisor of `F` mod `p^k` of degree `d` reduces to `h` mod `p`.
///
/// A monic factor of `F` over `Z_p` reducing to `h` would give one.
pub fn no_lift_of(f: &[i64], h: &[i64], p: i64, k: u32) -> bool {
    let d = h.len() - 1;
    let m = p.pow(k);
    let lifts = (p.pow(k - 1) as usize).pow(d as u32);
    for idx in 0..lifts {
        let mut g = h.to_vec();
        let mut t = idx;
        for gj in g.iter_mut().take(d) {
            *gj = (gj.rem_euclid(p) + p * (t % p.pow(k - 1) as usize) as i64).rem_euclid(m);
            t /= p.pow(k - 1) as usize;
        }
        if rem_mod(f, &g, m).iter().all(|&c| c == 0) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------- Krasner

/// `max v(θ - θ')` over distinct roots of a separable monic integral `F`,
/// from the Newton polygon of `D(y) = Π_{i≠j} (y - (θ_i - θ_j))`, whose
/// coefficients come from power sums of root differences.
pub fn root_difference_oracle(f: &[i64], p: u64) -> Val {
    let n = f.len() - 1;
    let big = |x: i64| BigRational::from_integer(BigInt::from(x));
    let m = n * (n - 1);
    // power sums s_k of the roots of F by Newton's identities
    let e = |i: usize| -> BigRational {
        // elementary symmetric e_i = (-1)^i f_{n-i}
        let c = big(f[n - i]);
        if i.is_multiple_of(2) {
            c
        } else {
            -c
        }
    };
    let mut s: Vec<BigRational> = vec![big(n as i64)];
    for k in 1..=m {
        let mut acc = BigRational::zero();
        for i in 1..k.min(n + 1) {
            let term = e(i) * &s[k - i];
            acc += if i % 2 == 1 { term } else { -term };
        }
        if k <= n {
            let term = e(k) * big(k as i64);
            acc += if k % 2 == 1 { term } else { -term };
        }
        s.push(acc);
    }
    // P_k = Σ_{i,j} (θ_i - θ_j)^k, the i = j terms vanish for k ≥ 1
    let mut binom = vec![BigInt::one()];
    let mut q: Vec<BigRational> = vec![big(m as i64)];
    for k in 1..=m {
        let mut next = vec![BigInt::one(); k + 1];
        for j in 1..k {
            next[j] = &binom[j - 1] + &binom[j];
        }
        binom = next;
        let mut acc = BigRational::zero();
        for j in 0..=k {
            let t = BigRational::from_integer(binom[j].clone()) * &s[j] * &s[k - j];
            acc += if (k - j) % 2 == 0 { t } else { -t };
        }
        q.push(acc);
    }
    // coefficients of D from its power sums: c_m = 1, elementary sums e'_k
    let mut el: Vec<BigRational> = vec![BigRational::one()];
    for k in 1..=m {
        let mut acc = BigRational::zero();
        for i in 1..=k {
            let t = &el[k - i] * &q[i];
            acc += if i % 2 == 1 { t } else { -t };
        }
        el.push(acc / big(k as i64));
    }
    // D(y) = Σ_k (-1)^k e'_k y^{m-k}; the constant term is ±e'_m
    let v = |r: &BigRational| -> Option<Rat> {
        if r.is_zero() {
            return None;
        }
        Some(Rat::from_int(vp_big(r.numer(), p) - vp_big(r.denom(), p)))
    };
    let v0 = v(&el[m]).expect("separable input");
    let mut best: Option<Rat> = None;
    for k in 1..=m {
        // coefficient of y^k is ±e'_{m-k}
        if let Some(vk) = v(&el[m - k]) {
            let slope = &(&v0 - &vk) / &Rat::from_int(k as i64);
            if best.as_ref().is_none_or(|b| &slope > b) {
                best = Some(slope);
            }
        }
    }
    Val::Finite(best.expect("nonconstant"))
}

// ---------------------------------------------------------------- probes

/// Nonzero integer polynomials of degree below `bound`: plain draws and
/// multiples of `keys` perturbed by powers of `p`.
pub fn probe<R: Rng>(rng: &mut R, keys: &[Vec<i64>], p: u64, bound: usize) -> Vec<i64> {
    loop {
        let deg = rng.gen_range(0..bound);
        let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-4096..=4096)).collect();
        if rng.gen_bool(0.5) && !keys.is_empty() {
            let k = &keys[rng.gen_range(0..keys.len())];
            if k.len() <= bound {
                let pe = (p as i64).pow(rng.gen_range(0..10));
                let unit = rng.gen_range(1..=9);
                c = vec![0; k.len().max(c.len())];
                for (i, x) in k.iter().enumerate() {
                    c[i] += unit * x;
                }
                for ci in c.iter_mut() {
                    *ci += pe * rng.gen_range(-3..=3);
                }
            }
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        if !c.is_empty() && c.len() <= bound {
            return c;
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}
