//! Binary floating-point numbers of arbitrary precision: a `BigInt` mantissa
//! and a power-of-two exponent, rounded to nearest after every operation.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `mant * 2^exp`, with `|mant| < 2^(prec+1)` after normalization.
#[derive(Clone, Debug)]
pub struct Real {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

fn round_shift(m: &BigInt, s: u64) -> BigInt {
    if s == 0 {
        return m.clone();
    }
    let half = BigInt::one() << (s - 1);
    let mag = (m.abs() + half) >> s;
    if m.is_negative() {
        -mag
    } else {
        mag
    }
}

impl Real {
    fn normalized(mant: BigInt, exp: i64, prec: u32) -> Self {
        if mant.is_zero() {
            return Self::zero(prec);
        }
        let bits = mant.bits();
        if bits > prec as u64 {
            let s = bits - prec as u64;
            Self {
                mant: round_shift(&mant, s),
                exp: exp + s as i64,
                prec,
            }
        } else {
            Self { mant, exp, prec }
        }
    }

    pub fn zero(prec: u32) -> Self {
        Self {
            mant: BigInt::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(1, prec)
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        Self::from_bigint(BigInt::from(n), prec)
    }

    pub fn from_bigint(n: BigInt, prec: u32) -> Self {
        Self::normalized(n, 0, prec)
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        let (num, den) = (r.numer(), r.denom());
        if num.is_zero() {
            return Self::zero(prec);
        }
        let shift = prec as i64 + 2 + den.bits() as i64 - num.bits() as i64;
        let q = if shift >= 0 {
            (num << shift as u64) / den
        } else {
            num / (den << (-shift) as u64)
        };
        Self::normalized(q, -shift, prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Same value, rounded (or zero-extended) to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        Self::normalized(self.mant.clone(), self.exp, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self {
            mant: self.mant.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    /// Position of the leading bit: `|self|` lies in `[2^(top-1), 2^top)`.
    fn top(&self) -> i64 {
        self.exp + self.mant.bits() as i64
    }

    /// Multiplies by `2^k` exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Self {
            mant: self.mant.clone(),
            exp: self.exp + k,
            prec: self.prec,
        }
    }

    pub fn powi(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn recip(&self) -> Self {
        &Self::one(self.prec) / self
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let drop = (bits - 60).max(0);
        let m = (&self.mant >> drop as u64).to_f64().unwrap_or(0.0);
        m * 2f64.powi((self.exp + drop) as i32)
    }

    /// `floor(log10 |self|)` estimated from the leading bits; may be off by one.
    fn approx_log10(&self) -> i64 {
        let bits = self.mant.bits() as i64;
        let drop = (bits - 60).max(0);
        let m = (self.mant.abs() >> drop as u64).to_f64().unwrap_or(1.0);
        (m.log10() + (self.exp + drop) as f64 * std::f64::consts::LOG10_2).floor() as i64
    }

    /// `round(|self| * 10^k)` as an integer.
    fn scaled_decimal(&self, k: i64) -> BigInt {
        let mut num = self.mant.abs();
        let mut den = BigInt::one();
        let ten = BigInt::from(10);
        if k >= 0 {
            num *= num_traits::pow(ten, k as usize);
        } else {
            den *= num_traits::pow(ten, (-k) as usize);
        }
        if self.exp >= 0 {
            num <<= self.exp as u64;
        } else {
            den <<= (-self.exp) as u64;
        }
        (num * 2 + &den) / (den * 2)
    }

    /// Scientific notation with `digits` significant decimal digits, e.g. `-1.7724e0`.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return format!("0.{}e0", "0".repeat(digits - 1));
        }
        let mut e10 = self.approx_log10();
        let mut n = self.scaled_decimal(digits as i64 - 1 - e10);
        for _ in 0..4 {
            let len = n.to_string().len();
            if len > digits {
                e10 += 1;
            } else if len < digits {
                e10 -= 1;
            } else {
                break;
            }
            n = self.scaled_decimal(digits as i64 - 1 - e10);
        }
        let s = n.to_string();
        let sign = if self.is_negative() { "-" } else { "" };
        let (head, tail) = s.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{e10}")
        } else {
            format!("{sign}{head}.{tail}e{e10}")
        }
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "square root of a negative number");
        if self.is_zero() {
            return self.clone();
        }
        let want = 2 * self.prec as i64 + 4;
        let mut shift = (want - self.mant.bits() as i64).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = &self.mant << shift as u64;
        let e = self.exp - shift;
        Self::normalized(m.sqrt(), e / 2, self.prec)
    }

    /// Natural logarithm of a positive number.
    pub fn ln(&self) -> Self {
        assert!(
            !self.is_zero() && !self.is_negative(),
            "logarithm of a non-positive number"
        );
        let p = self.prec;
        let wp = p + 32;
        // self = f * 2^t with f in [1/sqrt2, sqrt2)
        let bits = self.mant.bits() as i64;
        let mut t = self.exp + bits;
        let mut f = Self {
            mant: self.mant.clone(),
            exp: -bits,
            prec: wp,
        }
        .with_prec(wp);
        if f.to_f64() < std::f64::consts::FRAC_1_SQRT_2 {
            f = f.mul_pow2(1);
            t -= 1;
        }
        let one = Self::one(wp);
        let y = &(&f - &one) / &(&f + &one);
        let series = atanh_series(&y).mul_pow2(1);
        let result = &series + &(&ln2(wp) * &Self::from_int(t, wp));
        result.with_prec(p)
    }

    pub fn exp(&self) -> Self {
        let p = self.prec;
        const HALVINGS: i64 = 16;
        let wp = p + 48 + HALVINGS as u32;
        let x = self.with_prec(wp);
        let l2 = ln2(wp);
        let k = (x.to_f64() / std::f64::consts::LN_2).round() as i64;
        let r = (&x - &(&l2 * &Self::from_int(k, wp))).mul_pow2(-HALVINGS);
        let eps_top = -(wp as i64) - 8;
        let mut sum = Self::one(wp);
        let mut term = Self::one(wp);
        let mut i = 1i64;
        loop {
            term = &(&term * &r) / &Self::from_int(i, wp);
            if term.is_zero() || term.top() < eps_top {
                break;
            }
            sum = &sum + &term;
            i += 1;
        }
        for _ in 0..HALVINGS {
            sum = &sum * &sum;
        }
        sum.mul_pow2(k).with_prec(p)
    }

    /// Relative distance `|self - other| / |other|` (absolute when `other` is zero).
    pub fn rel_diff(&self, other: &Self) -> Self {
        let d = (self - other).abs();
        if other.is_zero() {
            d
        } else {
            &d / &other.abs()
        }
    }

    /// `10^(-k)` at this precision.
    pub fn ten_pow_neg(k: u32, prec: u32) -> Self {
        Self::from_rational(
            &BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), k as usize)),
            prec,
        )
    }
}

/// `Σ y^(2k+1)/(2k+1)` for `|y| < 1`.
fn atanh_series(y: &Real) -> Real {
    let wp = y.prec;
    let y2 = y * y;
    let mut power = y.clone();
    let mut sum = y.clone();
    let eps_top = -(wp as i64) - 8;
    let mut k = 1i64;
    loop {
        power = &power * &y2;
        let term = &power / &Real::from_int(2 * k + 1, wp);
        if term.is_zero() || term.top() < eps_top {
            break;
        }
        sum = &sum + &term;
        k += 1;
    }
    sum
}

/// Fixed-point `2^bits * Σ (-1)^k / ((2k+1) x^(2k+1))`, the Gregory series of `atan(1/x)`.
fn atan_inv_fixed(x: u64, bits: u64) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut term = (BigInt::one() << bits) / &x;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !term.is_zero() {
        let t = &term / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += t;
        } else {
            sum -= t;
        }
        term /= &x2;
        k += 1;
    }
    sum
}

fn cached(table: &'static OnceLock<Mutex<HashMap<u32, Real>>>, prec: u32, f: impl FnOnce() -> Real) -> Real {
    let map = table.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().unwrap().get(&prec) {
        return v.clone();
    }
    let v = f();
    map.lock().unwrap().insert(prec, v.clone());
    v
}

/// π by Machin's arctangent formula `π = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi(prec: u32) -> Real {
    static PI: OnceLock<Mutex<HashMap<u32, Real>>> = OnceLock::new();
    cached(&PI, prec, || {
        let bits = prec as u64 + 32;
        let fixed = atan_inv_fixed(5, bits) * 16 - atan_inv_fixed(239, bits) * 4;
        Real::normalized(fixed, -(bits as i64), prec)
    })
}

/// `ln 2 = 2 atanh(1/3)`.
pub fn ln2(prec: u32) -> Real {
    static LN2: OnceLock<Mutex<HashMap<u32, Real>>> = OnceLock::new();
    cached(&LN2, prec, || {
        let wp = prec + 16;
        let third = Real::from_rational(&BigRational::new(1.into(), 3.into()), wp);
        atanh_series(&third).mul_pow2(1).with_prec(prec)
    })
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Real {}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        // exact comparison, independent of precision
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        a.cmp(&b)
    }
}

impl<'a> Add<&'a Real> for &'a Real {
    type Output = Real;

    fn add(self, rhs: &Real) -> Real {
        let prec = self.prec.max(rhs.prec);
        if rhs.is_zero() {
            return self.with_prec(prec);
        }
        if self.is_zero() {
            return rhs.with_prec(prec);
        }
        let gap = prec as i64 + 4;
        if self.top() - rhs.top() > gap {
            return self.with_prec(prec);
        }
        if rhs.top() - self.top() > gap {
            return rhs.with_prec(prec);
        }
        let e = self.exp.min(rhs.exp);
        let m = (&self.mant << (self.exp - e) as u64) + (&rhs.mant << (rhs.exp - e) as u64);
        Real::normalized(m, e, prec)
    }
}

impl Neg for &Real {
    type Output = Real;

    fn neg(self) -> Real {
        Real {
            mant: -&self.mant,
            exp: self.exp,
            prec: self.prec,
        }
    }
}

impl Neg for Real {
    type Output = Real;

    fn neg(self) -> Real {
        -&self
    }
}

impl<'a> Sub<&'a Real> for &'a Real {
    type Output = Real;

    fn sub(self, rhs: &Real) -> Real {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Real> for &'a Real {
    type Output = Real;

    fn mul(self, rhs: &Real) -> Real {
        let prec = self.prec.max(rhs.prec);
        Real::normalized(&self.mant * &rhs.mant, self.exp + rhs.exp, prec)
    }
}

impl<'a> Div<&'a Real> for &'a Real {
    type Output = Real;

    fn div(self, rhs: &Real) -> Real {
        assert!(!rhs.is_zero(), "division by zero");
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            return Real::zero(prec);
        }
        let shift =
            (prec as i64 + 2 + rhs.mant.bits() as i64 - self.mant.bits() as i64).max(0);
        let q = (&self.mant << shift as u64) / &rhs.mant;
        Real::normalized(q, self.exp - shift - rhs.exp, prec)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f
            .precision()
            .unwrap_or(((self.prec as f64) * std::f64::consts::LOG10_2) as usize);
        f.write_str(&self.to_decimal_string(digits))
    }
}

impl Real {
    /// Sign as -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    const P: u32 = 256;

    fn r(x: i64) -> Real {
        Real::from_int(x, P)
    }

    fn close(a: &Real, b: &Real, bits: i64) -> bool {
        let d = (a - b).abs();
        d.is_zero() || d.top() < b.top() - bits
    }

    #[test]
    fn arithmetic_basics() {
        assert_eq!(&r(3) + &r(4), r(7));
        assert_eq!(&r(3) - &r(4), r(-1));
        assert_eq!(&r(6) * &r(-7), r(-42));
        assert_eq!(&r(42) / &r(6), r(7));
        let third = Real::from_rational(&rat(1, 3), P);
        assert!(close(&(&third * &r(3)), &r(1), 250));
        assert!(r(2) > r(1));
        assert!(Real::from_rational(&rat(-1, 2), P) < r(0));
        assert_eq!(r(2).powi(10), r(1024));
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(r(24).to_decimal_string(5), "2.4000e1");
        assert_eq!(Real::from_rational(&rat(-1, 8), P).to_decimal_string(3), "-1.25e-1");
        assert_eq!(Real::from_rational(&rat(2, 3), P).to_decimal_string(4), "6.667e-1");
        assert_eq!(r(9999).to_decimal_string(2), "1.0e4");
        assert_eq!(Real::zero(P).to_decimal_string(3), "0.00e0");
    }

    #[test]
    fn sqrt_squares_back() {
        let two = r(2);
        let s = two.sqrt();
        assert!(close(&(&s * &s), &two, 250));
        assert_eq!(r(49).sqrt(), r(7));
        assert_eq!(
            Real::from_rational(&rat(1, 4), P).sqrt(),
            Real::from_rational(&rat(1, 2), P)
        );
    }

    #[test]
    fn exp_ln_inverse() {
        for x in [rat(1, 1), rat(-7, 3), rat(150, 1), rat(1, 1000)] {
            let v = Real::from_rational(&x, P);
            assert!(close(&v.exp().ln(), &v, 240), "x = {x}");
        }
        let e = r(1).exp();
        assert!(e.to_decimal_string(20).starts_with("2.718281828459045235"));
        assert!(r(10).ln().to_decimal_string(20).starts_with("2.302585092994045684"));
    }

    #[test]
    fn constants() {
        assert!(pi(P).to_decimal_string(40).starts_with("3.14159265358979323846264338327950288419"));
        assert!(ln2(P).to_decimal_string(30).starts_with("6.9314718055994530941723212145"));
    }
}
