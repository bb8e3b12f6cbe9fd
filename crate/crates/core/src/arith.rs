//! Exact rationals, the extended value group `Q ∪ {±∞}` and the base p-adic
//! valuation.
//!
//! [`Rat`] keeps machine-word numerators and denominators inline and only
//! switches to arbitrary precision when an intermediate result does not fit.
//! Both representations are canonical, so equality and hashing are structural.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone)]
pub struct Rat(Repr);

#[derive(Clone)]
enum Repr {
    // invariant: den > 0, gcd(num, den) = 1, num != i64::MIN
    Small(i64, i64),
    // invariant: does not fit the small representation
    Big(BigRational),
}

fn fits_small(n: i128, d: i128) -> bool {
    n > i64::MIN as i128 && n <= i64::MAX as i128 && d <= i64::MAX as i128
}

impl Rat {
    pub fn zero() -> Rat {
        Rat(Repr::Small(0, 1))
    }

    pub fn one() -> Rat {
        Rat(Repr::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Rat {
        if n == i64::MIN {
            Rat::from_big(BigRational::from_integer(BigInt::from(n)))
        } else {
            Rat(Repr::Small(n, 1))
        }
    }

    /// `num / den`; panics when `den == 0`.
    pub fn frac(num: i64, den: i64) -> Rat {
        Rat::from_i128(num as i128, den as i128)
    }

    pub fn from_bigint(n: BigInt) -> Rat {
        Rat::from_big(BigRational::from_integer(n))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Rat {
        assert!(!den.is_zero(), "zero denominator");
        Rat::from_big(BigRational::new(num, den))
    }

    pub(crate) fn from_i128(mut n: i128, mut d: i128) -> Rat {
        assert!(d != 0, "zero denominator");
        if n == 0 {
            return Rat::zero();
        }
        if d == 1 {
            return match i64::try_from(n) {
                Ok(v) if v != i64::MIN => Rat(Repr::Small(v, 1)),
                _ => Rat(Repr::Big(BigRational::from_integer(BigInt::from(n)))),
            };
        }
        if d < 0 {
            match (n.checked_neg(), d.checked_neg()) {
                (Some(a), Some(b)) => {
                    n = a;
                    d = b;
                }
                _ => return Rat::from_big(BigRational::new(BigInt::from(n), BigInt::from(d))),
            }
        }
        let g = n.unsigned_abs().gcd(&d.unsigned_abs());
        if g > 1 {
            n /= g as i128;
            d /= g as i128;
        }
        if fits_small(n, d) {
            Rat(Repr::Small(n as i64, d as i64))
        } else {
            Rat(Repr::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d))))
        }
    }

    fn from_big(r: BigRational) -> Rat {
        if let (Some(n), Some(d)) = (r.numer().to_i128(), r.denom().to_i128()) {
            if fits_small(n, d) {
                return Rat(Repr::Small(n as i64, d as i64));
            }
        }
        Rat(Repr::Big(r))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    /// Small `(numerator, denominator)` pair when available.
    pub fn as_small(&self) -> Option<(i64, i64)> {
        match self.0 {
            Repr::Small(n, d) => Some((n, d)),
            Repr::Big(_) => None,
        }
    }

    /// The value as an `i64` when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        match self.0 {
            Repr::Small(n, 1) => Some(n),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(r) => {
                if r.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small(n, d) => Rat::from_i128(*d as i128, *n as i128),
            Repr::Big(r) => Rat::from_big(r.recip()),
        }
    }

    /// `self^k` for any integer `k` (`self` must be nonzero when `k < 0`).
    pub fn pow(&self, k: i64) -> Rat {
        let base = if k < 0 { self.recip() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Rat::one();
        let mut sq = base;
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

    /// Floor of the rational as a big integer.
    pub fn floor(&self) -> BigInt {
        self.to_big().floor().to_integer()
    }

    /// Residue of `self` in `F_p`, or `None` when `p` divides the denominator.
    pub fn reduce_mod(&self, p: u64) -> Option<u64> {
        match &self.0 {
            Repr::Small(n, d) => {
                let d = (*d as u64) % p;
                if d == 0 {
                    return None;
                }
                let n = n.rem_euclid(p as i64) as u64;
                Some(mulmod(n, invmod(d, p), p))
            }
            Repr::Big(r) => {
                let pb = BigInt::from(p);
                let d = r.denom().mod_floor(&pb).to_u64().unwrap();
                if d == 0 {
                    return None;
                }
                let n = r.numer().mod_floor(&pb).to_u64().unwrap();
                Some(mulmod(n, invmod(d, p), p))
            }
        }
    }

    /// Always-`a/b` rendering used by the serialized formats.
    pub fn to_frac_string(&self) -> String {
        match &self.0 {
            Repr::Small(n, d) => format!("{n}/{d}"),
            Repr::Big(r) => format!("{}/{}", r.numer(), r.denom()),
        }
    }
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn invmod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    powmod(a, p - 2, p)
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::from_int(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Rat {
        Rat::from_bigint(n)
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Rat) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Rat {}

impl Hash for Rat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(r) => {
                1u8.hash(state);
                r.numer().hash(state);
                r.denom().hash(state);
            }
        }
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, 1), Repr::Small(c, 1)) => Rat::from_i128(*a as i128 + *c as i128, 1),
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rat::from_i128(a * d + c * b, b * d)
            }
            _ => Rat::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl<'a> Sub<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, 1), Repr::Small(c, 1)) => Rat::from_i128(*a as i128 - *c as i128, 1),
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rat::from_i128(a * d - c * b, b * d)
            }
            _ => Rat::from_big(self.to_big() - rhs.to_big()),
        }
    }
}

impl<'a> Mul<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, 1), Repr::Small(c, 1)) => Rat::from_i128(*a as i128 * *c as i128, 1),
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rat::from_i128(a * c, b * d)
            }
            _ => Rat::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl<'a> Div<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rat::from_i128(a * d, b * c)
            }
            _ => Rat::from_big(self.to_big() / rhs.to_big()),
        }
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match &self.0 {
            Repr::Small(n, d) => Rat(Repr::Small(-*n, *d)),
            Repr::Big(r) => Rat::from_big(-r.clone()),
        }
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Rat> for &'a Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rat> {
        let bad = || Error::InvalidOperand(format!("not a rational literal: {s:?}"));
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rat::from_bigints(n, d))
    }
}

/// An element of `Q ∪ {+∞}` with a `−∞` sentinel below every finite value.
///
/// `−∞` only ever reports the weight of the root node; arithmetic on it is
/// rejected.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Val {
    NegInf,
    Finite(Rat),
    PosInf,
}

impl Val {
    pub fn zero() -> Val {
        Val::Finite(Rat::zero())
    }

    pub fn int(n: i64) -> Val {
        Val::Finite(Rat::from_int(n))
    }

    pub fn frac(n: i64, d: i64) -> Val {
        Val::Finite(Rat::frac(n, d))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Val::Finite(_))
    }

    pub fn is_pos_inf(&self) -> bool {
        matches!(self, Val::PosInf)
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Val::Finite(r) => Some(r),
            _ => None,
        }
    }

    /// Ordered-group addition with `+∞` absorbing.
    pub fn add(&self, other: &Val) -> Result<Val> {
        match (self, other) {
            (Val::NegInf, _) | (_, Val::NegInf) => Err(Error::InvalidOperand("arithmetic on -inf".into())),
            (Val::PosInf, _) | (_, Val::PosInf) => Ok(Val::PosInf),
            (Val::Finite(a), Val::Finite(b)) => Ok(Val::Finite(a + b)),
        }
    }

    /// `self + r`; panics on the `−∞` sentinel.
    pub fn plus(&self, r: &Rat) -> Val {
        match self {
            Val::Finite(a) => Val::Finite(a + r),
            Val::PosInf => Val::PosInf,
            Val::NegInf => panic!("arithmetic on -inf"),
        }
    }

    pub fn min(self, other: Val) -> Val {
        std::cmp::min(self, other)
    }

    /// Multiplication by a rational; infinities only scale by positive factors.
    pub fn scale(&self, r: &Rat) -> Result<Val> {
        match self {
            Val::Finite(a) => Ok(Val::Finite(a * r)),
            Val::PosInf if r.is_positive() => Ok(Val::PosInf),
            Val::PosInf => Err(Error::InvalidOperand("non-positive multiple of +inf".into())),
            Val::NegInf => Err(Error::InvalidOperand("arithmetic on -inf".into())),
        }
    }

    /// JSON rendering: `"a/b"`, `"inf"` or `"-inf"`.
    pub fn to_frac_string(&self) -> String {
        match self {
            Val::NegInf => "-inf".into(),
            Val::PosInf => "inf".into(),
            Val::Finite(r) => r.to_frac_string(),
        }
    }
}

impl From<Rat> for Val {
    fn from(r: Rat) -> Val {
        Val::Finite(r)
    }
}

impl Ord for Val {
    fn cmp(&self, other: &Val) -> Ordering {
        match (self, other) {
            (Val::Finite(a), Val::Finite(b)) => a.cmp(b),
            (Val::NegInf, Val::NegInf) | (Val::PosInf, Val::PosInf) => Ordering::Equal,
            (Val::NegInf, _) | (_, Val::PosInf) => Ordering::Less,
            (_, Val::NegInf) | (Val::PosInf, _) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Val {
    fn partial_cmp(&self, other: &Val) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::NegInf => write!(f, "-inf"),
            Val::PosInf => write!(f, "inf"),
            Val::Finite(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Val {
    type Err = Error;

    fn from_str(s: &str) -> Result<Val> {
        match s.trim() {
            "inf" | "+inf" => Ok(Val::PosInf),
            "-inf" => Ok(Val::NegInf),
            other => Ok(Val::Finite(other.parse()?)),
        }
    }
}

/// The base valued field `(Q, v_p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PBase {
    p: u64,
}

impl PBase {
    /// Largest accepted prime; keeps residue-field products inside `u64`.
    pub const MAX_PRIME: u64 = (1 << 31) - 1;

    pub fn new(p: u64) -> Result<PBase> {
        if !(2..=Self::MAX_PRIME).contains(&p) {
            return Err(Error::InvalidOperand(format!("prime {p} out of range")));
        }
        let mut d = 2u64;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return Err(Error::InvalidOperand(format!("{p} is not prime")));
            }
            d += 1;
        }
        Ok(PBase { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn as_rat(&self) -> Rat {
        Rat::from_int(self.p as i64)
    }
}

fn small_vp(mut n: i64, p: i64) -> i64 {
    let mut k = 0;
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    k
}

fn big_vp(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

/// Integer p-adic valuation of a nonzero rational.
pub fn vp_int(q: &Rat, base: PBase) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    let p = base.p as i64;
    Some(match &q.0 {
        Repr::Small(n, d) => small_vp(*n, p) - small_vp(*d, p),
        Repr::Big(r) => {
            let pb = BigInt::from(p);
            big_vp(r.numer(), &pb) - big_vp(r.denom(), &pb)
        }
    })
}

/// The p-adic valuation of `q`; `vp(0) = +∞`.
pub fn vp(q: &Rat, base: PBase) -> Val {
    match vp_int(q, base) {
        None => Val::PosInf,
        Some(k) => Val::int(k),
    }
}
