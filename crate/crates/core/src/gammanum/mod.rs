//! Arbitrary-precision Gamma function, polygamma functions and Gamma
//! derivatives at rational points, used as an oracle for the exact
//! coefficient identities.
//!
//! Polygamma values come from the asymptotic expansion at a shifted argument
//! `z = q + J` combined with the recurrence
//! `ψ^(k)(q) = ψ^(k)(q+J) + (-1)^(k+1) k! Σ_{i<J} (q+i)^-(k+1)`,
//! which also covers negative non-integer `q`. Derivatives of Γ follow from
//! `Γ^(n) = Γ · Y_n(ψ, ψ', .., ψ^(n-1))` with `Y_n` the complete Bell polynomial.

mod bernoulli;
pub mod real;
mod verify;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

pub use bernoulli::even_bernoulli;
pub use real::Real;
pub use verify::{
    identity_sweep, recover_basis, verify_identity, verify_identity_with, RecoveredBasis,
    VerificationReport,
};

use crate::error::{Error, Result};
use crate::rational::{binomial, factorial, int, Rational};

pub const MIN_DIGITS: u32 = 20;
pub const DEFAULT_GUARD_DIGITS: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionContext {
    decimal_digits: u32,
    guard_digits: u32,
}

impl PrecisionContext {
    pub fn new(decimal_digits: u32) -> Result<Self> {
        Self::with_guard(decimal_digits, DEFAULT_GUARD_DIGITS)
    }

    pub fn with_guard(decimal_digits: u32, guard_digits: u32) -> Result<Self> {
        if decimal_digits < MIN_DIGITS {
            return Err(Error::InvalidPrecision(decimal_digits));
        }
        Ok(Self {
            decimal_digits,
            guard_digits,
        })
    }

    pub fn decimal_digits(&self) -> u32 {
        self.decimal_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    pub fn working_digits(&self) -> u32 {
        self.decimal_digits + self.guard_digits
    }

    pub fn working_bits(&self) -> u32 {
        (self.working_digits() as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 8
    }

    /// Same reporting precision, twice the digits.
    pub fn doubled(&self) -> Self {
        Self {
            decimal_digits: 2 * self.decimal_digits,
            guard_digits: self.guard_digits,
        }
    }

    /// Default verification tolerance exponent: `10^-(digits - guard)`.
    pub fn default_tolerance_exponent(&self) -> u32 {
        self.decimal_digits.saturating_sub(self.guard_digits)
    }

    pub fn real(&self, r: &Rational) -> Real {
        Real::from_rational(r, self.working_bits())
    }

    /// Smallest argument at which the asymptotic series is used.
    fn shift_target(&self, k: usize) -> i64 {
        let base = (0.4 * self.working_digits() as f64).ceil() as i64;
        base.max(10) + k as i64
    }
}

fn check_pole(q: &Rational) -> Result<()> {
    if q.is_integer() && !q.is_positive() {
        return Err(Error::PoleArgument(q.to_string()));
    }
    Ok(())
}

/// Number of unit steps taking `q` to at least `target`.
fn steps_to(q: &Rational, target: i64) -> i64 {
    let gap = int(target) - q;
    if gap.is_positive() {
        gap.ceil().to_integer().try_into().expect("shift fits in i64")
    } else {
        0
    }
}

/// Sum of the asymptotic tail `Σ_j c_j w^(2j + offset)` with `c_j = B_2j * weight(j)`,
/// or `None` if the terms start growing before they drop below the working epsilon.
fn asymptotic_tail(
    w: &Real,
    offset: u32,
    scale: &Real,
    weight: impl Fn(usize) -> Rational,
) -> Option<Real> {
    let prec = w.prec();
    let w2 = w * w;
    let mut power = w.powi(offset);
    let mut sum = Real::zero(prec);
    let eps = &scale.abs() * &Real::one(prec).mul_pow2(-(prec as i64) - 8);
    let mut last: Option<Real> = None;
    let mut j = 1usize;
    loop {
        let bern = even_bernoulli(j);
        power = &power * &w2;
        let term = &Real::from_rational(&(&bern[j - 1] * weight(j)), prec) * &power;
        let mag = term.abs();
        if mag < eps {
            return Some(sum);
        }
        if last.as_ref().is_some_and(|l| &mag > l) {
            return None;
        }
        sum = &sum + &term;
        last = Some(mag);
        j += 1;
    }
}

/// `ψ^(k)(z)` from the asymptotic expansion at a large rational `z`.
fn polygamma_asymptotic(k: usize, z: &Rational, prec: u32) -> Option<Real> {
    let zr = Real::from_rational(z, prec);
    let w = zr.recip();
    if k == 0 {
        // ψ(z) = ln z - 1/(2z) - Σ B_2j / (2j z^2j)
        let lead = &zr.ln() - &w.mul_pow2(-1);
        let tail = asymptotic_tail(&w, 0, &lead, |j| int(2 * j as i64).recip())?;
        return Some(&lead - &tail);
    }
    // ψ^(k)(z) = (-1)^(k+1) [(k-1)!/z^k + k!/(2 z^(k+1)) + Σ B_2j (2j+k-1)!/(2j)! / z^(2j+k)]
    let kk = k as u64;
    let wk = w.powi(k as u32);
    let lead = &(&wk * &Real::from_bigint(factorial(kk - 1), prec))
        + &(&(&wk * &w) * &Real::from_bigint(factorial(kk), prec)).mul_pow2(-1);
    let tail = asymptotic_tail(&w, k as u32, &lead, |j| {
        let j = j as u64;
        BigRational::new(factorial(2 * j + kk - 1), factorial(2 * j))
    })?;
    let v = &lead + &tail;
    Some(if k % 2 == 1 { v } else { -v })
}

/// `ψ^(k)(q)` for rational `q` not a nonpositive integer.
pub fn polygamma(k: usize, q: &Rational, ctx: &PrecisionContext) -> Result<Real> {
    check_pole(q)?;
    let prec = ctx.working_bits();
    let mut target = ctx.shift_target(k);
    loop {
        let steps = steps_to(q, target);
        let z = q + int(steps);
        if let Some(at_z) = polygamma_asymptotic(k, &z, prec) {
            let mut correction = Real::zero(prec);
            for i in 0..steps {
                let base = q + int(i);
                let term = num_traits::pow(base.recip(), k + 1);
                correction = &correction + &Real::from_rational(&term, prec);
            }
            let correction = &correction * &Real::from_bigint(factorial(k as u64), prec);
            let v = if k.is_multiple_of(2) {
                &at_z - &correction
            } else {
                &at_z + &correction
            };
            return Ok(v);
        }
        target *= 2;
    }
}

/// `ln Γ(z)` by Stirling's series at a large rational `z`.
fn ln_gamma_asymptotic(z: &Rational, prec: u32) -> Option<Real> {
    let zr = Real::from_rational(z, prec);
    let w = zr.recip();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let two_pi = real::pi(prec).mul_pow2(1);
    let lead = &(&(&Real::from_rational(&(z - &half), prec) * &zr.ln()) - &zr)
        + &two_pi.ln().mul_pow2(-1);
    // Σ B_2j / (2j (2j-1) z^(2j-1)) = w * Σ B_2j / (2j(2j-1)) w^(2j-2)
    let tail = asymptotic_tail(&w, 0, &lead, |j| {
        let j = j as i64;
        int(2 * j * (2 * j - 1)).recip()
    })?;
    // tail used w^(2j); divide one power of w back out
    Some(&lead + &(&tail * &zr))
}

/// `Γ(q)` for rational `q` not a nonpositive integer; negative `q` through
/// `Γ(q) = Γ(q+J) / Π_{i<J} (q+i)`.
pub fn gamma_value(q: &Rational, ctx: &PrecisionContext) -> Result<Real> {
    check_pole(q)?;
    let prec = ctx.working_bits();
    let mut target = ctx.shift_target(0);
    loop {
        let steps = steps_to(q, target);
        let z = q + int(steps);
        if let Some(ln_g) = ln_gamma_asymptotic(&z, prec) {
            let product = (0..steps).fold(Rational::one(), |acc, i| acc * (q + int(i)));
            return Ok(&ln_g.exp() / &Real::from_rational(&product, prec));
        }
        target *= 2;
    }
}

/// `Γ^(0..n)(q)`.
#[derive(Debug, Clone)]
pub struct GammaDerivatives {
    pub point: Rational,
    pub order: usize,
    pub values: Vec<Real>,
    pub precision: PrecisionContext,
}

impl GammaDerivatives {
    pub fn get(&self, ell: usize) -> &Real {
        &self.values[ell]
    }
}

/// Complete Bell polynomials `Y_0..Y_n` of `xs = (x_1, .., x_n)` by
/// `Y_{m+1} = Σ_i C(m, i) Y_{m-i} x_{i+1}`.
pub fn complete_bell(xs: &[Real], n: usize, prec: u32) -> Vec<Real> {
    assert!(xs.len() >= n, "need x_1..x_n");
    let mut y = vec![Real::one(prec)];
    for m in 0..n {
        let mut acc = Real::zero(prec);
        for i in 0..=m {
            let c = Real::from_bigint(binomial(m as u64, i as u64), prec);
            acc = &acc + &(&(&c * &y[m - i]) * &xs[i]);
        }
        y.push(acc);
    }
    y
}

pub fn gamma_derivatives(q: &Rational, n: usize, ctx: &PrecisionContext) -> Result<GammaDerivatives> {
    check_pole(q)?;
    let prec = ctx.working_bits();
    let gamma = gamma_value(q, ctx)?;
    let psis = (0..n)
        .map(|k| polygamma(k, q, ctx))
        .collect::<Result<Vec<_>>>()?;
    let values = complete_bell(&psis, n, prec)
        .into_iter()
        .map(|y| &gamma * &y)
        .collect();
    Ok(GammaDerivatives {
        point: q.clone(),
        order: n,
        values,
        precision: *ctx,
    })
}

/// Euler–Mascheroni constant as `-ψ(1)`.
pub fn euler_gamma(ctx: &PrecisionContext) -> Real {
    -polygamma(0, &Rational::one(), ctx).expect("1 is not a pole")
}

/// π from Machin's formula, at the context's working precision.
pub fn pi(ctx: &PrecisionContext) -> Real {
    real::pi(ctx.working_bits())
}

/// `true` when `q` is an integer (used by callers that render lattice points).
pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one() || q.numer().is_multiple_of(q.denom())
}

/// `|a - b| < 10^-digits · max(|b|, 1)`.
pub fn agrees_to(a: &Real, b: &Real, digits: u32) -> bool {
    let prec = a.prec().max(b.prec());
    let scale = if b.abs() > Real::one(prec) {
        b.abs()
    } else {
        Real::one(prec)
    };
    (a - b).abs() < &Real::ten_pow_neg(digits, prec) * &scale
}
