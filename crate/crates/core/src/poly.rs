//! Dense univariate polynomials over `Q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::Rat;
use crate::error::{Error, Result};

/// Polynomial with rational coefficients in ascending degree order.
///
/// The coefficient vector never ends in a zero; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    pub fn x() -> Poly {
        Poly { coeffs: vec![Rat::zero(), Rat::one()] }
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// `x - a`
    pub fn linear(a: &Rat) -> Poly {
        Poly::from_coeffs(vec![-a, Rat::one()])
    }

    pub fn monomial(c: Rat, k: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Poly {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Integer coefficients, ascending.
    pub fn from_ints(c: &[i64]) -> Poly {
        Poly::from_coeffs(c.iter().map(|&n| Rat::from_int(n)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rat> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; callers guard zero first.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(Rat::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn monic(&self) -> Poly {
        match self.lc() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * &Rat::from_int(i as i64)).collect())
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        let mut sq = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    pub fn eval(&self, a: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * a) + c;
        }
        acc
    }

    /// `f(x + a)`.
    pub fn shift(&self, a: &Rat) -> Poly {
        if a.is_zero() {
            return self.clone();
        }
        let mut c = self.coeffs.clone();
        let n = c.len();
        // repeated synthetic division by (x - a)
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &c[j + 1] * a;
                c[j] += &t;
            }
        }
        Poly::from_coeffs(c)
    }

    /// Long division; `g` must be nonzero.
    pub fn div_rem(&self, g: &Poly) -> Result<(Poly, Poly)> {
        let gd = g.degree().ok_or_else(|| Error::InvalidOperand("division by the zero polynomial".into()))?;
        if self.coeffs.len() <= gd {
            return Ok((Poly::zero(), self.clone()));
        }
        let lc = g.lc().unwrap();
        let inv = if lc.is_one() { None } else { Some(lc.recip()) };
        let mut r = self.coeffs.clone();
        let mut q = vec![Rat::zero(); r.len() - gd];
        for k in (0..q.len()).rev() {
            let top = &r[k + gd];
            if top.is_zero() {
                continue;
            }
            let t = match &inv {
                None => top.clone(),
                Some(i) => top * i,
            };
            for (j, gc) in g.coeffs.iter().enumerate() {
                if !gc.is_zero() {
                    let m = &t * gc;
                    r[k + j] -= &m;
                }
            }
            q[k] = t;
        }
        r.truncate(gd);
        Ok((Poly::from_coeffs(q), Poly::from_coeffs(r)))
    }

    pub fn rem(&self, g: &Poly) -> Result<Poly> {
        Ok(self.div_rem(g)?.1)
    }

    /// Monic greatest common divisor (zero when both inputs vanish).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Coefficients `[a_0, a_1, …]` of the `phi`-adic expansion
    /// `self = Σ a_s phi^s` with `deg a_s < deg phi`.
    pub fn phi_expansion(&self, phi: &Poly) -> Result<Vec<Poly>> {
        if !phi.is_monic() || phi.deg() < 1 {
            return Err(Error::InvalidOperand(format!("expansion base {phi} must be monic of positive degree")));
        }
        if phi.deg() == 1 {
            // Taylor shift at the root of phi
            let a = -&phi.coeffs[0];
            let s = self.shift(&a);
            return Ok(s.coeffs.into_iter().map(Poly::constant).collect());
        }
        let mut out = Vec::new();
        let mut f = self.clone();
        while !f.is_zero() {
            let (q, r) = f.div_rem(phi)?;
            out.push(r);
            f = q;
        }
        Ok(out)
    }

    /// Coefficients `c_i = f^{(i)}/i!`, so that `f(x + y) = Σ c_i(x) y^i`.
    pub fn taylor_coeffs(&self) -> Vec<Poly> {
        let n = self.coeffs.len();
        (0..n)
            .map(|i| Poly::from_coeffs((i..n).map(|k| &self.coeffs[k] * &Rat::from_bigint(binomial(k, i))).collect()))
            .collect()
    }

    /// Integer coefficient vector and the positive common denominator `d`
    /// with `self = ints / d`.
    pub fn clear_denominators(&self) -> (Vec<BigInt>, BigInt) {
        let mut d = BigInt::one();
        for c in &self.coeffs {
            d = d.lcm(&c.denom());
        }
        let ints = self.coeffs.iter().map(|c| c.numer() * (&d / c.denom())).collect();
        (ints, d)
    }

    /// Render with the grammar accepted by the expression parser.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut c = long.coeffs.clone();
        for (i, s) in short.coeffs.iter().enumerate() {
            c[i] += s;
        }
        Poly::from_coeffs(c)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut c = self.coeffs.clone();
        c.resize(n, Rat::zero());
        for (i, s) in rhs.coeffs.iter().enumerate() {
            c[i] -= s;
        }
        Poly::from_coeffs(c)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let m = a * b;
                    c[i + j] += &m;
                }
            }
        }
        Poly::from_coeffs(c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let mon = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if k == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mon}")?;
            } else {
                write!(f, "{a}*{mon}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

// ---------------------------------------------------------------------------
// resultants

/// `Res(f, g) = lc(f)^{deg g} Π_{f(α)=0} g(α)`, via the Sylvester determinant
/// over `Z` after clearing denominators.
pub fn resultant(f: &Poly, g: &Poly) -> Result<Rat> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::InvalidOperand("resultant of the zero polynomial".into()));
    }
    let ints = |p: &Poly| {
        p.coeffs.iter().map(|c| c.as_small().filter(|s| s.1 == 1).map(|s| s.0 as i128)).collect::<Option<Vec<_>>>()
    };
    if let (Some(fs), Some(gs)) = (ints(f), ints(g)) {
        if let Some(d) = bareiss_i128(sylvester_matrix(&fs, &gs)) {
            return Ok(Rat::from_i128(d, 1));
        }
    }
    let (fi, df) = f.clear_denominators();
    let (gi, dg) = g.clear_denominators();
    let det = sylvester_det(&fi, &gi);
    let m = f.deg() as u32;
    let n = g.deg() as u32;
    let corr = num_traits::pow(df, n as usize) * num_traits::pow(dg, m as usize);
    Ok(Rat::from_bigints(det, corr))
}

/// Second route for the resultant: the subresultant remainder sequence over `Z`.
pub fn resultant_subresultant(f: &Poly, g: &Poly) -> Result<Rat> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::InvalidOperand("resultant of the zero polynomial".into()));
    }
    let (fi, df) = f.clear_denominators();
    let (gi, dg) = g.clear_denominators();
    let r = subresultant_int(fi, gi);
    let corr = num_traits::pow(df, g.deg()) * num_traits::pow(dg, f.deg());
    Ok(Rat::from_bigints(r, corr))
}

fn sylvester_matrix<T: Clone + Zero>(f: &[T], g: &[T]) -> Vec<Vec<T>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![T::zero(); size];
        for (k, c) in f.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![T::zero(); size];
        for (k, c) in g.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

fn sylvester_det(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let small = |v: &[BigInt]| v.iter().map(|c| c.to_i64().map(|x| x as i128)).collect::<Option<Vec<_>>>();
    if let (Some(fs), Some(gs)) = (small(f), small(g)) {
        if let Some(d) = bareiss_i128(sylvester_matrix(&fs, &gs)) {
            return BigInt::from(d);
        }
    }
    bareiss_big(sylvester_matrix(f, g))
}

// Fraction-free elimination in machine integers; `None` on overflow.
fn bareiss_i128(mut m: Vec<Vec<i128>>) -> Option<i128> {
    let n = m.len();
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let piv = (k + 1..n).find(|&i| m[i][k] != 0)?;
            m.swap(k, piv);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].checked_mul(m[k][k])?;
                let b = m[i][k].checked_mul(m[k][j])?;
                let num = a.checked_sub(b)?;
                // exact division, much cheaper when both sides fit a word
                m[i][j] = match (i64::try_from(num), i64::try_from(prev)) {
                    (Ok(x), Ok(y)) => (x / y) as i128,
                    _ => num / prev,
                };
            }
        }
        prev = m[k][k];
    }
    Some(sign * m[n - 1][n - 1])
}

// Zero column: the loop above bails out with `None` and the big path reports 0.
fn bareiss_big(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(piv) => {
                    m.swap(k, piv);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

// lc(b)^{deg a - deg b + 1} a = q b + r
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    for k in (db..a.len()).rev() {
        let lr = r[k].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[k - db + j] -= &lr * bc;
        }
    }
    r.truncate(db);
    trim(&mut r);
    r
}

fn subresultant_int(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> BigInt {
    trim(&mut a);
    trim(&mut b);
    let ca = content(&a);
    let cb = content(&b);
    for c in a.iter_mut() {
        *c /= &ca;
    }
    for c in b.iter_mut() {
        *c /= &cb;
    }
    let deg = |v: &Vec<BigInt>| v.len() - 1;
    let t = num_traits::pow(ca.abs(), deg(&b)) * num_traits::pow(cb.abs(), deg(&a));
    let t = t
        * if ca.is_negative() && deg(&b) % 2 == 1 { -1 } else { 1 }
        * if cb.is_negative() && deg(&a) % 2 == 1 { -1 } else { 1 };
    let mut s = BigInt::one();
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            s = -s;
        }
    }
    if deg(&b) == 0 {
        return s * t * num_traits::pow(b[0].clone(), deg(&a));
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = deg(&a) - deg(&b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            s = -s;
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        if r.is_empty() {
            return BigInt::zero();
        }
        let div = &g * num_traits::pow(h.clone(), delta);
        b = r.into_iter().map(|c| c / &div).collect();
        g = a.last().unwrap().clone();
        h = if delta == 0 { h } else { num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1) };
        if deg(&b) == 0 {
            let da = deg(&a);
            let num = num_traits::pow(b[0].clone(), da);
            let res = if da == 0 { num * h } else { num / num_traits::pow(h, da - 1) };
            return s * t * res;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn div_rem_example() {
        // x^4 - 4x^2 + 36 = (x^2 - 2)(x^2 - 2) + 32
        let (q, r) = p(&[36, 0, -4, 0, 1]).div_rem(&p(&[-2, 0, 1])).unwrap();
        assert_eq!(q, p(&[-2, 0, 1]));
        assert_eq!(r, p(&[32]));
        assert!(p(&[1, 1]).div_rem(&Poly::zero()).is_err());
    }

    #[test]
    fn identities() {
        let f = p(&[36, 0, -4, 0, 1]);
        assert_eq!(&f * &Poly::one(), f);
        assert_eq!(p(&[-2, 0, 1]).derivative(), p(&[0, 2]));
        assert_eq!(p(&[1, 1]).pow(3), p(&[1, 3, 3, 1]));
    }

    #[test]
    fn phi_expansion_examples() {
        assert_eq!(p(&[1, 3, 1]).phi_expansion(&Poly::x()).unwrap(), vec![p(&[1]), p(&[3]), p(&[1])]);
        assert_eq!(
            p(&[36, 0, -4, 0, 1]).phi_expansion(&p(&[-2, 0, 1])).unwrap(),
            vec![p(&[32]), Poly::zero(), p(&[1])]
        );
        let phi = p(&[-2, 0, 1]);
        assert_eq!(phi.phi_expansion(&phi).unwrap(), vec![Poly::zero(), p(&[1])]);
        assert!(p(&[1, 1]).phi_expansion(&p(&[1, 2])).is_err());
    }

    #[test]
    fn resultant_examples() {
        let r = resultant(&p(&[-2, 0, 1]), &p(&[-6, 0, 1])).unwrap();
        assert_eq!(r, Rat::from_int(16));
        // Res(x - a, g) = g(a)
        let g = p(&[5, -3, 0, 2]);
        let a = Rat::frac(3, 2);
        assert_eq!(resultant(&Poly::linear(&a), &g).unwrap(), g.eval(&a));
        assert_eq!(resultant(&g, &Poly::one()).unwrap(), Rat::one());
        assert!(resultant(&g, &Poly::zero()).is_err());
        assert_eq!(resultant_subresultant(&p(&[-2, 0, 1]), &p(&[-6, 0, 1])).unwrap(), Rat::from_int(16));
    }

    #[test]
    fn taylor_examples() {
        assert_eq!(p(&[-2, 0, 1]).taylor_coeffs(), vec![p(&[-2, 0, 1]), p(&[0, 2]), p(&[1])]);
        assert_eq!(p(&[0, 0, 0, 1]).taylor_coeffs(), vec![p(&[0, 0, 0, 1]), p(&[0, 0, 3]), p(&[0, 3]), p(&[1])]);
    }

    #[test]
    fn taylor_reconstructs_shift() {
        // f(x + y) at y = 5/3 equals Σ c_i(x) (5/3)^i
        let f = p(&[36, 0, -4, 0, 1]);
        let y = Rat::frac(5, 3);
        let mut acc = Poly::zero();
        for (i, c) in f.taylor_coeffs().iter().enumerate() {
            acc = &acc + &c.scale(&y.pow(i as i64));
        }
        assert_eq!(acc, f.shift(&y));
        // and the shift agrees with direct substitution
        for t in -3..=3 {
            let t = Rat::from_int(t);
            assert_eq!(f.shift(&y).eval(&t), f.eval(&(&t + &y)));
        }
    }

    #[test]
    fn render_forms() {
        assert_eq!(p(&[-1, 2, 3, 2, 1]).to_string(), "x^4+2*x^3+3*x^2+2*x-1");
        assert_eq!(Poly::zero().to_string(), "0");
        let q = Poly::from_coeffs(vec![Rat::frac(-1, 2), Rat::zero(), Rat::frac(3, 2)]);
        assert_eq!(q.to_string(), "3/2*x^2-1/2");
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec((-20i64..20, 1i64..4), 1..=max_deg + 1)
            .prop_map(|v| Poly::from_coeffs(v.into_iter().map(|(n, d)| Rat::frac(n, d)).collect()))
    }

    fn arb_monic(max_deg: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec(-20i64..20, 1..=max_deg).prop_map(|mut v| {
            v.push(1);
            Poly::from_ints(&v)
        })
    }

    proptest! {
        #[test]
        fn expansion_reconstructs(f in arb_poly(9), phi in arb_monic(3)) {
            let parts = f.phi_expansion(&phi).unwrap();
            let mut acc = Poly::zero();
            for a in parts.iter().rev() {
                prop_assert!(a.is_zero() || a.deg() < phi.deg());
                acc = &(&acc * &phi) + a;
            }
            prop_assert_eq!(acc, f);
        }

        #[test]
        fn resultant_routes_agree(f in arb_poly(5), g in arb_poly(5)) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            let a = resultant(&f, &g).unwrap();
            let b = resultant_subresultant(&f, &g).unwrap();
            prop_assert_eq!(&a, &b);
            // Res(f, g) = (-1)^{deg f deg g} Res(g, f)
            let sign = if f.deg() * g.deg() % 2 == 1 { -Rat::one() } else { Rat::one() };
            prop_assert_eq!(a, &sign * &resultant(&g, &f).unwrap());
        }

        #[test]
        fn resultant_matches_root_product(roots_f in prop::collection::vec(-6i64..6, 1..4),
                                          roots_g in prop::collection::vec(-6i64..6, 1..4),
                                          lf in 1i64..4) {
            let mut f = Poly::constant(Rat::from_int(lf));
            for r in &roots_f {
                f = &f * &Poly::linear(&Rat::from_int(*r));
            }
            let mut g = Poly::one();
            for r in &roots_g {
                g = &g * &Poly::linear(&Rat::from_int(*r));
            }
            let mut expect = Rat::from_int(lf).pow(g.deg() as i64);
            for r in &roots_f {
                expect = &expect * &g.eval(&Rat::from_int(*r));
            }
            prop_assert_eq!(resultant(&f, &g).unwrap(), expect.clone());
            prop_assert_eq!(resultant_subresultant(&f, &g).unwrap(), expect);
        }
    }
}
