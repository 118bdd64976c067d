//! Elementary (`e_v`) and complete homogeneous (`h_v`) symmetric polynomials
//! evaluated on every prefix `x^(j) = (x_1, .., x_j)` of one of the three
//! argument sequences, plus brute-force enumeration oracles.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{binomial_saturating, int, Rational};

/// Subset enumeration for `e_v` is exponential in the list length.
pub const ELEMENTARY_GUARD_LEN: usize = 20;
/// Maximum number of degree-`v` monomials enumerated for `h_v`.
pub const HOMOGENEOUS_GUARD_MONOMIALS: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    Plain,
    PlusShift,
    MinusShift,
}

impl FamilyKind {
    pub fn is_shifted(self) -> bool {
        !matches!(self, FamilyKind::Plain)
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Plain => "plain",
            FamilyKind::PlusShift => "plus",
            FamilyKind::MinusShift => "minus",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolyKind {
    Elementary,
    Homogeneous,
}

/// One of the sequences `x_s = 1/s`, `x_s = 1/(s-1+kappa)`, `x_s = 1/(s-kappa)`, `s >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgumentFamily {
    kind: FamilyKind,
    kappa: Option<Rational>,
}

impl ArgumentFamily {
    /// Validates the kappa requirement of `kind`: shifted kinds need `kappa` in
    /// `(0, 1)`, `Plain` must not carry one.
    pub fn new(kind: FamilyKind, kappa: Option<Rational>) -> Result<Self> {
        match (kind, kappa) {
            (FamilyKind::Plain, None) => Ok(Self::plain()),
            (FamilyKind::Plain, Some(k)) => Err(Error::SpecMismatch(format!(
                "plain family takes no kappa (got {k})"
            ))),
            (_, None) => Err(Error::MissingKappa),
            (kind, Some(k)) => {
                if k <= Rational::zero() || k >= Rational::one() {
                    return Err(Error::InvalidKappa(k.to_string()));
                }
                Ok(Self {
                    kind,
                    kappa: Some(k),
                })
            }
        }
    }

    pub fn plain() -> Self {
        Self {
            kind: FamilyKind::Plain,
            kappa: None,
        }
    }

    pub fn plus_shift(kappa: Rational) -> Result<Self> {
        Self::new(FamilyKind::PlusShift, Some(kappa))
    }

    pub fn minus_shift(kappa: Rational) -> Result<Self> {
        Self::new(FamilyKind::MinusShift, Some(kappa))
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn kappa(&self) -> Option<&Rational> {
        self.kappa.as_ref()
    }

    /// The `s`-th argument, `s >= 1`.
    pub fn x(&self, s: usize) -> Rational {
        assert!(s >= 1, "argument sequences are 1-indexed");
        let s = int(s as i64);
        let den = match (&self.kind, &self.kappa) {
            (FamilyKind::Plain, _) => s,
            (FamilyKind::PlusShift, Some(k)) => s - Rational::one() + k,
            (FamilyKind::MinusShift, Some(k)) => s - k,
            _ => unreachable!("constructor enforces kappa for shifted kinds"),
        };
        den.recip()
    }

    /// `x^(len) = (x_1, .., x_len)`.
    pub fn prefix(&self, len: usize) -> Vec<Rational> {
        (1..=len).map(|s| self.x(s)).collect()
    }
}

/// Dense `(maxLen + 1) x (maxDeg + 1)` table; row `j` is the length-`j` prefix,
/// including the empty prefix at `j = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrefixTable {
    family: ArgumentFamily,
    kind: PolyKind,
    max_len: usize,
    max_deg: usize,
    values: Vec<Rational>,
}

impl PrefixTable {
    pub fn family(&self) -> &ArgumentFamily {
        &self.family
    }

    pub fn kind(&self) -> PolyKind {
        self.kind
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn max_deg(&self) -> usize {
        self.max_deg
    }

    /// Value of the degree-`v` polynomial at the length-`j` prefix.
    pub fn get(&self, j: usize, v: usize) -> &Rational {
        assert!(
            j <= self.max_len && v <= self.max_deg,
            "({j}, {v}) outside table {}x{}",
            self.max_len,
            self.max_deg
        );
        &self.values[j * (self.max_deg + 1) + v]
    }

    fn empty(family: &ArgumentFamily, kind: PolyKind, max_len: usize, max_deg: usize) -> Self {
        let width = max_deg + 1;
        let mut values = vec![Rational::zero(); (max_len + 1) * width];
        // e_0 = h_0 = 1 on every prefix, including the empty one; e_v(∅) = h_v(∅) = 0 otherwise.
        for j in 0..=max_len {
            values[j * width] = Rational::one();
        }
        Self {
            family: family.clone(),
            kind,
            max_len,
            max_deg,
            values,
        }
    }
}

/// `e_v(x^(j))` for `0 <= j <= max_len`, `0 <= v <= max_deg` via
/// `e_c(x^(j)) = e_c(x^(j-1)) + x_j e_{c-1}(x^(j-1))`.
pub fn elementary_prefix(family: &ArgumentFamily, max_len: usize, max_deg: usize) -> PrefixTable {
    let mut table = PrefixTable::empty(family, PolyKind::Elementary, max_len, max_deg);
    let width = max_deg + 1;
    for j in 1..=max_len {
        let x = family.x(j);
        let (prev, cur) = table.values.split_at_mut(j * width);
        let prev = &prev[(j - 1) * width..];
        let cur = &mut cur[..width];
        for v in 1..width {
            cur[v] = &prev[v] + &x * &prev[v - 1];
        }
    }
    table
}

/// `h_v(x^(j))` via `h_c(x^(j)) = h_c(x^(j-1)) + x_j h_{c-1}(x^(j))`; the second
/// term reads the current row, so each row is filled in increasing degree.
pub fn homogeneous_prefix(family: &ArgumentFamily, max_len: usize, max_deg: usize) -> PrefixTable {
    let mut table = PrefixTable::empty(family, PolyKind::Homogeneous, max_len, max_deg);
    let width = max_deg + 1;
    for j in 1..=max_len {
        let x = family.x(j);
        let (prev, cur) = table.values.split_at_mut(j * width);
        let prev = &prev[(j - 1) * width..];
        let cur = &mut cur[..width];
        for v in 1..width {
            cur[v] = &prev[v] + &x * &cur[v - 1];
        }
    }
    table
}

pub fn prefix_table(
    kind: PolyKind,
    family: &ArgumentFamily,
    max_len: usize,
    max_deg: usize,
) -> PrefixTable {
    match kind {
        PolyKind::Elementary => elementary_prefix(family, max_len, max_deg),
        PolyKind::Homogeneous => homogeneous_prefix(family, max_len, max_deg),
    }
}

/// Sum over all size-`v` subsets of products.
pub fn elementary_bruteforce(xs: &[Rational], v: usize) -> Result<Rational> {
    if xs.len() > ELEMENTARY_GUARD_LEN {
        return Err(Error::GuardExceeded(format!(
            "{} arguments exceed the subset-enumeration limit of {}",
            xs.len(),
            ELEMENTARY_GUARD_LEN
        )));
    }
    if v > xs.len() {
        return Ok(Rational::zero());
    }
    let n = xs.len();
    let mut total = Rational::zero();
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as usize != v {
            continue;
        }
        let product = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .fold(Rational::one(), |acc, i| acc * &xs[i]);
        total += product;
    }
    Ok(total)
}

/// Sum over all degree-`v` monomials with repetition (multisets of size `v`).
pub fn homogeneous_bruteforce(xs: &[Rational], v: usize) -> Result<Rational> {
    if v == 0 {
        return Ok(Rational::one());
    }
    if xs.is_empty() {
        return Ok(Rational::zero());
    }
    let count = binomial_saturating((xs.len() + v - 1) as u64, v as u64);
    if count > HOMOGENEOUS_GUARD_MONOMIALS {
        return Err(Error::GuardExceeded(format!(
            "{count} monomials exceed the enumeration limit of {HOMOGENEOUS_GUARD_MONOMIALS}"
        )));
    }
    // Non-decreasing index tuples i_1 <= .. <= i_v enumerate each monomial once.
    let n = xs.len();
    let mut idx = vec![0usize; v];
    let mut total = Rational::zero();
    loop {
        total += idx.iter().fold(Rational::one(), |acc, &i| acc * &xs[i]);
        let Some(pos) = (0..v).rev().find(|&p| idx[p] + 1 < n) else {
            break;
        };
        let next = idx[pos] + 1;
        for slot in &mut idx[pos..] {
            *slot = next;
        }
    }
    Ok(total)
}
