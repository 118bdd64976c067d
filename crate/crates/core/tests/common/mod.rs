//! Shared strategies and independent oracles for the integration tests.
#![allow(dead_code)]

use lattice_gamma::coeffs::Kappa;
use lattice_gamma::rational::{rat, Rational};
use lattice_gamma::sympoly::{ArgumentFamily, FamilyKind};
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Rational shifts strictly inside (0, 1), including the known set.
pub fn kappa_value() -> impl Strategy<Value = Rational> {
    prop_oneof![
        (1i64..7).prop_map(|i| [rat(1, 6), rat(1, 4), rat(1, 3), rat(1, 2), rat(2, 3), rat(3, 4), rat(5, 6)]
            [(i - 1) as usize]
            .clone()),
        (2i64..40).prop_flat_map(|d| (1..d).prop_map(move |p| rat(p, d))),
    ]
}

pub fn kappa() -> impl Strategy<Value = Kappa> {
    kappa_value().prop_map(|v| Kappa::new(v).unwrap())
}

pub fn family() -> impl Strategy<Value = ArgumentFamily> {
    prop_oneof![
        Just(ArgumentFamily::plain()),
        kappa_value().prop_map(|k| ArgumentFamily::new(FamilyKind::PlusShift, Some(k)).unwrap()),
        kappa_value().prop_map(|k| ArgumentFamily::new(FamilyKind::MinusShift, Some(k)).unwrap()),
    ]
}

/// Strictly increasing subsets of `0..=max` of size `1..=max_size`.
pub fn increasing_subset(max: usize, max_size: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::btree_set(0..=max, 1..=max_size).prop_map(|s| s.into_iter().collect())
}

/// Truncated power series in `t`, coefficients `c[0..len]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series(pub Vec<Rational>);

impl Series {
    pub fn constant(c: Rational, len: usize) -> Self {
        let mut v = vec![Rational::zero(); len];
        v[0] = c;
        Series(v)
    }

    /// `a + t`
    pub fn linear(a: Rational, len: usize) -> Self {
        let mut s = Self::constant(a, len);
        if len > 1 {
            s.0[1] = Rational::one();
        }
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        let len = self.0.len();
        let mut out = vec![Rational::zero(); len];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate().take(len - i) {
                out[i + j] += a * b;
            }
        }
        Series(out)
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Self {
        let len = self.0.len();
        let a0 = self.0[0].clone();
        let mut out = vec![Rational::zero(); len];
        out[0] = a0.recip();
        for k in 1..len {
            let mut acc = Rational::zero();
            for i in 1..=k {
                acc += &self.0[i] * &out[k - i];
            }
            out[k] = -acc / &a0;
        }
        Series(out)
    }
}
