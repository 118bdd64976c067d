//! Lower bounds on the fraction of transcendental values among Gamma
//! derivatives over finite index windows, with direct min-sum oracles.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gammanum::{PrecisionContext, Real};
use crate::rational::{int, rat, Rational};

/// Digits used for the irrational prior bound unless asked otherwise.
pub const PRIOR_DIGITS: u32 = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DensityVariant {
    /// `max{0, √N - 5/2} / N`
    Prior,
    /// Fixed derivative order, plain lattice.
    FixedN,
    /// Fixed derivative order, shifted lattices.
    FixedNShifted,
    /// Orders `2..=N` against lattice `1..=M`.
    Bivariate,
    /// Orders `1..=N` against shifted lattice `0..=M`.
    BivariateShifted,
}

impl DensityVariant {
    pub const ALL: [DensityVariant; 5] = [
        DensityVariant::Prior,
        DensityVariant::FixedN,
        DensityVariant::FixedNShifted,
        DensityVariant::Bivariate,
        DensityVariant::BivariateShifted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DensityVariant::Prior => "prior",
            DensityVariant::FixedN => "fixed-n",
            DensityVariant::FixedNShifted => "fixed-n-shifted",
            DensityVariant::Bivariate => "bivariate",
            DensityVariant::BivariateShifted => "bivariate-shifted",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.name() == s)
    }

    pub fn is_shifted(self) -> bool {
        matches!(self, DensityVariant::FixedNShifted | DensityVariant::BivariateShifted)
    }
}

impl fmt::Display for DensityVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Whichever of `n` (derivative order), `N` (order window) and `M`
/// (lattice window) the variant uses.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityParams {
    pub n: Option<u64>,
    pub big_n: Option<u64>,
    pub big_m: Option<u64>,
}

/// Exact when the bound is rational; the prior bound at non-square `N` is
/// irrational and carries the digit count it was evaluated to.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundValue {
    Exact(Rational),
    Approx { value: Real, digits: u32 },
}

impl BoundValue {
    pub fn exact(&self) -> Option<&Rational> {
        match self {
            BoundValue::Exact(r) => Some(r),
            BoundValue::Approx { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, BoundValue::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            BoundValue::Exact(r) => Real::from_rational(r, 64).to_f64(),
            BoundValue::Approx { value, .. } => value.to_f64(),
        }
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Exact(r) => write!(f, "{r}"),
            BoundValue::Approx { value, digits } => f.write_str(&value.to_decimal_string(*digits as usize)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityBound {
    pub variant: DensityVariant,
    pub params: DensityParams,
    pub value: BoundValue,
    pub branch: &'static str,
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(what.to_string()))
    }
}

fn q(num: u64, den: u64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn beta_prior(big_n: u64) -> Result<DensityBound> {
    beta_prior_digits(big_n, PRIOR_DIGITS)
}

pub fn beta_prior_digits(big_n: u64, digits: u32) -> Result<DensityBound> {
    require(big_n >= 1, "prior bound needs N >= 1")?;
    let params = DensityParams {
        big_n: Some(big_n),
        ..Default::default()
    };
    // √N ≤ 5/2 ⇔ 4N ≤ 25
    if 4 * big_n <= 25 {
        return Ok(DensityBound {
            variant: DensityVariant::Prior,
            params,
            value: BoundValue::Exact(Rational::zero()),
            branch: "sqrt(N)<=5/2",
        });
    }
    let root = big_n.sqrt();
    if root * root == big_n {
        let v = (int(root as i64) - rat(5, 2)) / int(big_n as i64);
        return Ok(DensityBound {
            variant: DensityVariant::Prior,
            params,
            value: BoundValue::Exact(v),
            branch: "perfect-square",
        });
    }
    let ctx = PrecisionContext::new(digits.max(20))?;
    let prec = ctx.working_bits();
    let sqrt = Real::from_int(big_n as i64, prec).sqrt();
    let v = &(&sqrt - &Real::from_rational(&rat(5, 2), prec)) / &Real::from_int(big_n as i64, prec);
    Ok(DensityBound {
        variant: DensityVariant::Prior,
        params,
        value: BoundValue::Approx { value: v, digits },
        branch: "irrational",
    })
}

/// `1 - min{n-1, M}/M`.
pub fn beta_fixed_n(n: u64, big_m: u64) -> Result<DensityBound> {
    require(n >= 2 && big_m >= 1, "fixed-n bound needs n >= 2, M >= 1")?;
    let (value, branch) = if big_m < n {
        (Rational::zero(), "M<=n-1")
    } else {
        (Rational::one() - q(n - 1, big_m), "M>n-1")
    };
    Ok(DensityBound {
        variant: DensityVariant::FixedN,
        params: DensityParams {
            n: Some(n),
            big_m: Some(big_m),
            ..Default::default()
        },
        value: BoundValue::Exact(value),
        branch,
    })
}

/// `1 - min{n, M+1}/(M+1)`.
pub fn beta_fixed_n_shifted(n: u64, big_m: u64) -> Result<DensityBound> {
    require(n >= 1, "shifted fixed-n bound needs n >= 1")?;
    let (value, branch) = if big_m < n {
        (Rational::zero(), "M+1<=n")
    } else {
        (Rational::one() - q(n, big_m + 1), "M+1>n")
    };
    Ok(DensityBound {
        variant: DensityVariant::FixedNShifted,
        params: DensityParams {
            n: Some(n),
            big_m: Some(big_m),
            ..Default::default()
        },
        value: BoundValue::Exact(value),
        branch,
    })
}

/// Both branch formulas of the plain bivariate bound, evaluated regardless
/// of which one applies: `((M-1)/(2(N-1)), 1 - N/(2M))`.
pub fn bivariate_branches(big_n: u64, big_m: u64) -> (Rational, Rational) {
    (q(big_m - 1, 2 * (big_n - 1)), Rational::one() - q(big_n, 2 * big_m))
}

/// Both branch formulas of the shifted bivariate bound:
/// `(M/(2N), 1 - (N+1)/(2(M+1)))`.
pub fn bivariate_shifted_branches(big_n: u64, big_m: u64) -> (Rational, Rational) {
    (q(big_m, 2 * big_n), Rational::one() - q(big_n + 1, 2 * (big_m + 1)))
}

pub fn beta_bivariate(big_n: u64, big_m: u64) -> Result<DensityBound> {
    require(big_n >= 2 && big_m >= 1, "bivariate bound needs N >= 2, M >= 1")?;
    let (low, high) = bivariate_branches(big_n, big_m);
    let (value, branch) = if big_m < big_n {
        (low, "M<=N-1")
    } else {
        (high, "M>N-1")
    };
    Ok(DensityBound {
        variant: DensityVariant::Bivariate,
        params: DensityParams {
            big_n: Some(big_n),
            big_m: Some(big_m),
            ..Default::default()
        },
        value: BoundValue::Exact(value),
        branch,
    })
}

pub fn beta_bivariate_shifted(big_n: u64, big_m: u64) -> Result<DensityBound> {
    require(big_n >= 1, "shifted bivariate bound needs N >= 1")?;
    let (low, high) = bivariate_shifted_branches(big_n, big_m);
    let (value, branch) = if big_m < big_n {
        (low, "M+1<=N")
    } else {
        (high, "M+1>N")
    };
    Ok(DensityBound {
        variant: DensityVariant::BivariateShifted,
        params: DensityParams {
            big_n: Some(big_n),
            big_m: Some(big_m),
            ..Default::default()
        },
        value: BoundValue::Exact(value),
        branch,
    })
}

/// Direct min-sum over the order window, no closed form:
/// plain `1 - Σ_{n=2}^{N} min{n-1, M} / ((N-1) M)`,
/// shifted `1 - Σ_{n=1}^{N} min{n, M+1} / (N (M+1))`.
pub fn bivariate_oracle(shifted: bool, big_n: u64, big_m: u64) -> Result<Rational> {
    if shifted {
        require(big_n >= 1, "shifted oracle needs N >= 1")?;
        let algebraic: u64 = (1..=big_n).map(|n| n.min(big_m + 1)).sum();
        Ok(Rational::one() - q(algebraic, big_n * (big_m + 1)))
    } else {
        require(big_n >= 2 && big_m >= 1, "plain oracle needs N >= 2, M >= 1")?;
        let algebraic: u64 = (2..=big_n).map(|n| (n - 1).min(big_m)).sum();
        Ok(Rational::one() - q(algebraic, (big_n - 1) * big_m))
    }
}

/// Fixed-order oracle by counting lattice indices that may carry an
/// algebraic value (at most `n-1` plain, `n` shifted).
pub fn fixed_n_oracle(shifted: bool, n: u64, big_m: u64) -> Result<Rational> {
    let (cells, budget) = if shifted {
        require(n >= 1, "shifted fixed-n oracle needs n >= 1")?;
        (big_m + 1, n)
    } else {
        require(n >= 2 && big_m >= 1, "fixed-n oracle needs n >= 2, M >= 1")?;
        (big_m, n - 1)
    };
    let algebraic = (0..cells).filter(|&i| i < budget).count() as u64;
    Ok(Rational::one() - q(algebraic, cells))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridRow {
    pub bound: DensityBound,
    /// `None` for the prior bound, which has no min-sum form.
    pub oracle: Option<Rational>,
}

impl GridRow {
    pub fn matches(&self) -> bool {
        match (&self.oracle, self.bound.value.exact()) {
            (Some(o), Some(v)) => o == v,
            (None, _) => true,
            (Some(_), None) => false,
        }
    }
}

/// Cartesian sweep in row-major order over `first` (N, or n for the
/// fixed-order variants) and `second` (M; ignored by the prior bound).
pub fn density_grid(
    variant: DensityVariant,
    first: RangeInclusive<u64>,
    second: RangeInclusive<u64>,
) -> Result<Vec<GridRow>> {
    let mut rows = Vec::new();
    for a in first {
        if variant == DensityVariant::Prior {
            rows.push(GridRow {
                bound: beta_prior(a)?,
                oracle: None,
            });
            continue;
        }
        for b in second.clone() {
            let (bound, oracle) = match variant {
                DensityVariant::FixedN => (beta_fixed_n(a, b)?, fixed_n_oracle(false, a, b)?),
                DensityVariant::FixedNShifted => (beta_fixed_n_shifted(a, b)?, fixed_n_oracle(true, a, b)?),
                DensityVariant::Bivariate => (beta_bivariate(a, b)?, bivariate_oracle(false, a, b)?),
                DensityVariant::BivariateShifted => {
                    (beta_bivariate_shifted(a, b)?, bivariate_oracle(true, a, b)?)
                }
                DensityVariant::Prior => unreachable!(),
            };
            rows.push(GridRow {
                bound,
                oracle: Some(oracle),
            });
        }
    }
    Ok(rows)
}
