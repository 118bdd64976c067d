//! Rational coefficients expressing `Γ^(n)` at a lattice point through the
//! derivatives at the base point (1 for the plain lattice, `κ` for the shifted
//! ones), and the linear systems assembled from them.
//!
//! * plain: `Γ^(n)(m) = Σ_ℓ T_{n,ℓ}(m) Γ^(ℓ)(1)`, `T = (m-1)! n!/ℓ! e_{n-ℓ}(1, 1/2, .., 1/(m-1))`
//! * plus: `Γ^(n)(m+κ) = Σ_ℓ T⁺ Γ^(ℓ)(κ)`, `T⁺ = Γ(m+κ)/Γ(κ) n!/ℓ! e_{n-ℓ}(1/κ, .., 1/(m-1+κ))`
//! * minus: `Γ^(n)(-m+κ) = Σ_ℓ T⁻ Γ^(ℓ)(κ)`, `T⁻ = Γ(-m+κ)/Γ(κ) n!/ℓ! h_{n-ℓ}(1/(1-κ), .., 1/(m-κ))`

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{permutation_sign, RationalMatrix};
use crate::rational::{falling_ratio, factorial, int, rat, Rational};
use crate::sympoly::{elementary_prefix, homogeneous_prefix, ArgumentFamily, FamilyKind, PolyKind, PrefixTable};

/// Shift values whose Gamma value is known to be transcendental.
pub fn known_transcendental_kappas() -> [Rational; 7] {
    [
        rat(1, 6),
        rat(1, 4),
        rat(1, 3),
        rat(1, 2),
        rat(2, 3),
        rat(3, 4),
        rat(5, 6),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kappa {
    value: Rational,
    known_transcendental: bool,
}

impl Kappa {
    pub fn new(value: Rational) -> Result<Self> {
        if value <= Rational::zero() || value >= Rational::one() {
            return Err(Error::InvalidKappa(value.to_string()));
        }
        let known_transcendental = known_transcendental_kappas().contains(&value);
        Ok(Self {
            value,
            known_transcendental,
        })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(crate::rational::parse_rational(s)?)
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn known_transcendental(&self) -> bool {
        self.known_transcendental
    }

    /// All seven whitelisted shifts.
    pub fn whitelist() -> Vec<Kappa> {
        known_transcendental_kappas()
            .into_iter()
            .map(|k| Kappa::new(k).expect("whitelist lies in (0, 1)"))
            .collect()
    }
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shift {
    Plus,
    Minus,
}

impl Shift {
    pub fn family_kind(self) -> FamilyKind {
        match self {
            Shift::Plus => FamilyKind::PlusShift,
            Shift::Minus => FamilyKind::MinusShift,
        }
    }
}

/// Family, strictly increasing nonnegative (plain: positive) indices, and the shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSpec {
    family: FamilyKind,
    indices: Vec<i64>,
    kappa: Option<Kappa>,
}

impl LatticeSpec {
    pub fn new(family: FamilyKind, indices: Vec<i64>, kappa: Option<Kappa>) -> Result<Self> {
        match (family, &kappa) {
            (FamilyKind::Plain, Some(k)) => {
                return Err(Error::SpecMismatch(format!(
                    "plain lattice takes no kappa (got {k})"
                )))
            }
            (FamilyKind::PlusShift | FamilyKind::MinusShift, None) => {
                return Err(Error::MissingKappa)
            }
            _ => {}
        }
        if indices.is_empty() {
            return Err(Error::SpecMismatch("index set is empty".into()));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NonIncreasingIndices(indices));
        }
        let min = if family == FamilyKind::Plain { 1 } else { 0 };
        if indices[0] < min {
            return Err(Error::SpecMismatch(format!(
                "{family} lattice indices must be >= {min}, got {}",
                indices[0]
            )));
        }
        Ok(Self {
            family,
            indices,
            kappa,
        })
    }

    pub fn plain(indices: Vec<i64>) -> Result<Self> {
        Self::new(FamilyKind::Plain, indices, None)
    }

    pub fn shifted(shift: Shift, indices: Vec<i64>, kappa: Kappa) -> Result<Self> {
        Self::new(shift.family_kind(), indices, Some(kappa))
    }

    pub fn family(&self) -> FamilyKind {
        self.family
    }

    pub fn indices(&self) -> &[i64] {
        &self.indices
    }

    pub fn kappa(&self) -> Option<&Kappa> {
        self.kappa.as_ref()
    }

    /// The `r`-th lattice point as an exact rational: `m`, `m+κ` or `-m+κ`.
    pub fn point(&self, r: usize) -> Rational {
        lattice_point(self.family, self.indices[r], self.kappa.as_ref())
    }

    pub fn argument_family(&self) -> ArgumentFamily {
        ArgumentFamily::new(self.family, self.kappa.as_ref().map(|k| k.value.clone()))
            .expect("validated at construction")
    }

    /// Number of rows a square system of derivative order `n` needs.
    pub fn square_size(family: FamilyKind, n: usize) -> usize {
        match family {
            FamilyKind::Plain => n,
            _ => n + 1,
        }
    }
}

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(ToString::to_string).collect();
        write!(f, "{} {{{}}}", self.family, idx.join(","))?;
        if let Some(k) = &self.kappa {
            write!(f, " kappa={k}")?;
        }
        Ok(())
    }
}

pub fn lattice_point(family: FamilyKind, m: i64, kappa: Option<&Kappa>) -> Rational {
    match (family, kappa) {
        (FamilyKind::Plain, _) => int(m),
        (FamilyKind::PlusShift, Some(k)) => int(m) + &k.value,
        (FamilyKind::MinusShift, Some(k)) => int(-m) + &k.value,
        _ => panic!("shifted lattice point without kappa"),
    }
}

/// `Γ(m+κ)/Γ(κ) = Π_{u=0}^{m-1} (u+κ)` or `Γ(-m+κ)/Γ(κ) = 1 / Π_{u=1}^{m} (κ-u)`.
pub fn rational_gamma_ratio(kappa: &Kappa, m: usize, shift: Shift) -> Rational {
    let k = &kappa.value;
    match shift {
        Shift::Plus => (0..m).fold(Rational::one(), |acc, u| acc * (int(u as i64) + k)),
        Shift::Minus => (1..=m)
            .fold(Rational::one(), |acc, u| acc * (k - int(u as i64)))
            .recip(),
    }
}

fn check_order(n: usize, ell: usize) {
    assert!(ell <= n, "coefficient index ℓ = {ell} exceeds order n = {n}");
}

fn coefficient(scale: &Rational, n: usize, ell: usize, sym: &Rational) -> Rational {
    scale * BigRational::from_integer(falling_ratio(n as u64, ell as u64)) * sym
}

pub fn t_plain(n: usize, ell: usize, m: usize) -> Rational {
    check_order(n, ell);
    assert!(m >= 1, "plain lattice points start at 1");
    let table = elementary_prefix(&ArgumentFamily::plain(), m - 1, n - ell);
    let scale = BigRational::from_integer(factorial(m as u64 - 1));
    coefficient(&scale, n, ell, table.get(m - 1, n - ell))
}

pub fn t_plus(n: usize, ell: usize, m: usize, kappa: &Kappa) -> Rational {
    check_order(n, ell);
    let family = ArgumentFamily::plus_shift(kappa.value.clone()).expect("valid kappa");
    let table = elementary_prefix(&family, m, n - ell);
    let scale = rational_gamma_ratio(kappa, m, Shift::Plus);
    coefficient(&scale, n, ell, table.get(m, n - ell))
}

pub fn t_minus(n: usize, ell: usize, m: usize, kappa: &Kappa) -> Rational {
    check_order(n, ell);
    let family = ArgumentFamily::minus_shift(kappa.value.clone()).expect("valid kappa");
    let table = homogeneous_prefix(&family, m, n - ell);
    let scale = rational_gamma_ratio(kappa, m, Shift::Minus);
    coefficient(&scale, n, ell, table.get(m, n - ell))
}

/// Row scale and symmetric-polynomial table shared by every coefficient in a system.
struct RowSource {
    table: PrefixTable,
    family: FamilyKind,
    kappa: Option<Kappa>,
}

impl RowSource {
    fn new(family: FamilyKind, kappa: Option<&Kappa>, max_m: usize, n: usize) -> Self {
        let arg = ArgumentFamily::new(family, kappa.map(|k| k.value.clone())).expect("validated");
        let table = match family {
            FamilyKind::Plain => elementary_prefix(&arg, max_m.saturating_sub(1), n),
            FamilyKind::PlusShift => elementary_prefix(&arg, max_m, n),
            FamilyKind::MinusShift => homogeneous_prefix(&arg, max_m, n),
        };
        Self {
            table,
            family,
            kappa: kappa.cloned(),
        }
    }

    /// Prefix length used by index `m` (`m - 1` for plain, `m` for shifted).
    fn prefix_len(&self, m: usize) -> usize {
        match self.family {
            FamilyKind::Plain => m - 1,
            _ => m,
        }
    }

    fn row_scale(&self, m: usize) -> Rational {
        match (self.family, &self.kappa) {
            (FamilyKind::Plain, _) => BigRational::from_integer(factorial(m as u64 - 1)),
            (FamilyKind::PlusShift, Some(k)) => rational_gamma_ratio(k, m, Shift::Plus),
            (FamilyKind::MinusShift, Some(k)) => rational_gamma_ratio(k, m, Shift::Minus),
            _ => unreachable!(),
        }
    }

    fn coefficient(&self, n: usize, ell: usize, m: usize) -> Rational {
        let scale = self.row_scale(m);
        coefficient(&scale, n, ell, self.table.get(self.prefix_len(m), n - ell))
    }
}

/// The unknown vector of a system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisLabel {
    /// `Γ^(1)(1), .., Γ^(n)(1)`
    DerivativesAtOne { n: usize },
    /// `Γ^(0)(κ), .., Γ^(n)(κ)`
    DerivativesAtKappa { n: usize },
}

impl BasisLabel {
    pub fn orders(&self) -> std::ops::RangeInclusive<usize> {
        match *self {
            BasisLabel::DerivativesAtOne { n } => 1..=n,
            BasisLabel::DerivativesAtKappa { n } => 0..=n,
        }
    }

    pub fn labels(&self) -> Vec<String> {
        let at = match self {
            BasisLabel::DerivativesAtOne { .. } => "1",
            BasisLabel::DerivativesAtKappa { .. } => "kappa",
        };
        self.orders().map(|l| format!("Gamma^({l})({at})")).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSystem {
    pub spec: LatticeSpec,
    pub n: usize,
    pub matrix: RationalMatrix,
    /// `T_{n,0}(m_r)` per row; empty for the shifted families.
    pub constant_column: Vec<Rational>,
    pub unknowns: BasisLabel,
}

impl CoeffSystem {
    pub fn is_square(&self) -> bool {
        self.matrix.is_square()
    }
}

fn to_usize(m: i64) -> usize {
    usize::try_from(m).expect("validated nonnegative")
}

/// Assembles the coefficient matrix of the lattice system for derivative order `n`.
/// Fewer rows than the square size are allowed for inspection.
pub fn build_system(spec: &LatticeSpec, n: usize) -> Result<CoeffSystem> {
    let k = spec.indices.len();
    let max_m = to_usize(*spec.indices.last().expect("nonempty"));
    let source = RowSource::new(spec.family, spec.kappa.as_ref(), max_m, n);
    let ms: Vec<usize> = spec.indices.iter().map(|&m| to_usize(m)).collect();
    match spec.family {
        FamilyKind::Plain => {
            if n == 0 {
                return Err(Error::SpecMismatch(
                    "plain system of order 0 has no unknowns".into(),
                ));
            }
            let matrix = RationalMatrix::from_fn(k, n, |r, c| source.coefficient(n, c + 1, ms[r]))?;
            let constant_column = ms.iter().map(|&m| source.coefficient(n, 0, m)).collect();
            Ok(CoeffSystem {
                spec: spec.clone(),
                n,
                matrix,
                constant_column,
                unknowns: BasisLabel::DerivativesAtOne { n },
            })
        }
        _ => {
            let matrix = RationalMatrix::from_fn(k, n + 1, |r, c| source.coefficient(n, c, ms[r]))?;
            Ok(CoeffSystem {
                spec: spec.clone(),
                n,
                matrix,
                constant_column: Vec::new(),
                unknowns: BasisLabel::DerivativesAtKappa { n },
            })
        }
    }
}

/// The structured matrix a square coefficient matrix reduces to by column
/// scaling and column reversal, together with the scalings themselves:
/// `det(T) = det(parent) · Π row_scales · Π column_scales · reversal_sign`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructuredReduction {
    pub poly: PolyKind,
    pub family: ArgumentFamily,
    /// `m'` indices of the parent `E`/`H` matrix.
    pub m_primes: Vec<usize>,
    pub row_scales: Vec<Rational>,
    /// `n!/ℓ!` for each column of the coefficient matrix, left to right.
    pub column_scales: Vec<Rational>,
    /// Parity of the column reversal, computed from the permutation.
    pub reversal_sign: i32,
}

impl StructuredReduction {
    pub fn predicted_det(&self, parent_det: &Rational) -> Rational {
        let rows = self.row_scales.iter().fold(Rational::one(), |acc, s| acc * s);
        let cols = self.column_scales.iter().fold(Rational::one(), |acc, s| acc * s);
        parent_det * rows * cols * BigRational::from_integer(BigInt::from(self.reversal_sign))
    }

    /// The reduced matrix obtained from `t` by dividing out the column scales,
    /// reversing the column order, and dividing out the row scales.
    pub fn reduce(&self, t: &RationalMatrix) -> RationalMatrix {
        let inv_cols: Vec<Rational> = self.column_scales.iter().map(|s| s.recip()).collect();
        let inv_rows: Vec<Rational> = self.row_scales.iter().map(|s| s.recip()).collect();
        let reversal: Vec<usize> = (0..t.cols()).rev().collect();
        t.scale_columns(&inv_cols)
            .permute_columns(&reversal)
            .scale_rows(&inv_rows)
    }
}

pub fn structured_reduction(spec: &LatticeSpec, n: usize) -> Result<StructuredReduction> {
    let size = LatticeSpec::square_size(spec.family, n);
    if spec.indices.len() != size || size == 0 {
        return Err(Error::NotSquare {
            rows: spec.indices.len(),
            cols: size,
        });
    }
    let ms: Vec<usize> = spec.indices.iter().map(|&m| to_usize(m)).collect();
    let max_m = *ms.last().unwrap();
    let source = RowSource::new(spec.family, spec.kappa.as_ref(), max_m, 0);
    let (poly, m_primes, first_ell) = match spec.family {
        FamilyKind::Plain => (PolyKind::Elementary, ms.iter().map(|m| m - 1).collect(), 1),
        FamilyKind::PlusShift => (PolyKind::Elementary, ms.clone(), 0),
        FamilyKind::MinusShift => (PolyKind::Homogeneous, ms.clone(), 0),
    };
    let row_scales = ms.iter().map(|&m| source.row_scale(m)).collect();
    let column_scales = (first_ell..=n)
        .map(|ell| BigRational::from_integer(falling_ratio(n as u64, ell as u64)))
        .collect();
    let reversal: Vec<usize> = (0..size).rev().collect();
    Ok(StructuredReduction {
        poly,
        family: spec.argument_family(),
        m_primes,
        row_scales,
        column_scales,
        reversal_sign: permutation_sign(&reversal),
    })
}
