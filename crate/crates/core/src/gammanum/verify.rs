//! Numerical checks of the exact coefficient identities against the
//! independent Gamma-derivative oracle.

use crate::coeffs::{build_system, lattice_point, t_minus, t_plain, t_plus, Kappa, LatticeSpec};
use crate::error::{Error, Result};
use crate::linalg::inverse_exact;
use crate::rational::{int, Rational};
use crate::sympoly::FamilyKind;

use super::{gamma_derivatives, GammaDerivatives, PrecisionContext, Real};

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub family: FamilyKind,
    pub n: usize,
    pub m: usize,
    pub kappa: Option<Rational>,
    /// `false` when κ is outside the known-transcendental set.
    pub unconditional: bool,
    pub point: Rational,
    pub lhs: Real,
    pub rhs: Real,
    pub abs_residual: Real,
    pub rel_residual: Real,
    pub tolerance_exponent: u32,
    pub pass: bool,
}

fn coefficient(family: FamilyKind, n: usize, ell: usize, m: usize, kappa: Option<&Kappa>) -> Rational {
    match family {
        FamilyKind::Plain => t_plain(n, ell, m),
        FamilyKind::PlusShift => t_plus(n, ell, m, kappa.expect("validated")),
        FamilyKind::MinusShift => t_minus(n, ell, m, kappa.expect("validated")),
    }
}

fn base_point(family: FamilyKind, kappa: Option<&Kappa>) -> Rational {
    match family {
        FamilyKind::Plain => int(1),
        _ => kappa.expect("validated").value().clone(),
    }
}

fn check_args(family: FamilyKind, m: usize, kappa: Option<&Kappa>) -> Result<()> {
    match (family, kappa) {
        (FamilyKind::Plain, Some(_)) => Err(Error::SpecMismatch("plain lattice takes no kappa".into())),
        (FamilyKind::Plain, None) if m == 0 => Err(Error::PoleArgument("0".into())),
        (FamilyKind::PlusShift | FamilyKind::MinusShift, None) => Err(Error::MissingKappa),
        _ => Ok(()),
    }
}

fn report(
    family: FamilyKind,
    n: usize,
    m: usize,
    kappa: Option<&Kappa>,
    at_point: &GammaDerivatives,
    at_base: &GammaDerivatives,
    tolerance_exponent: u32,
) -> VerificationReport {
    let prec = at_point.precision.working_bits();
    let lhs = at_point.get(n).clone();
    let mut rhs = Real::zero(prec);
    for ell in 0..=n {
        let t = coefficient(family, n, ell, m, kappa);
        rhs = &rhs + &(&Real::from_rational(&t, prec) * at_base.get(ell));
    }
    let abs_residual = (&lhs - &rhs).abs();
    let rel_residual = if lhs.is_zero() {
        abs_residual.clone()
    } else {
        &abs_residual / &lhs.abs()
    };
    let one = Real::one(prec);
    let measured = if lhs.abs() < one { &abs_residual } else { &rel_residual };
    let pass = measured < &Real::ten_pow_neg(tolerance_exponent, prec);
    VerificationReport {
        family,
        n,
        m,
        kappa: kappa.map(|k| k.value().clone()),
        unconditional: kappa.is_none_or(|k| k.known_transcendental()),
        point: at_point.point.clone(),
        lhs,
        rhs,
        abs_residual,
        rel_residual,
        tolerance_exponent,
        pass,
    }
}

/// Compares `Γ^(n)` at lattice index `m` with the coefficient expansion over
/// the base-point derivatives, at the context's default tolerance.
pub fn verify_identity(
    family: FamilyKind,
    n: usize,
    m: usize,
    kappa: Option<&Kappa>,
    ctx: &PrecisionContext,
) -> Result<VerificationReport> {
    verify_identity_with(family, n, m, kappa, ctx, ctx.default_tolerance_exponent())
}

/// As [`verify_identity`] with an explicit tolerance `10^-tolerance_exponent`.
pub fn verify_identity_with(
    family: FamilyKind,
    n: usize,
    m: usize,
    kappa: Option<&Kappa>,
    ctx: &PrecisionContext,
    tolerance_exponent: u32,
) -> Result<VerificationReport> {
    check_args(family, m, kappa)?;
    let point = lattice_point(family, m as i64, kappa);
    let at_point = gamma_derivatives(&point, n, ctx)?;
    let at_base = gamma_derivatives(&base_point(family, kappa), n, ctx)?;
    Ok(report(family, n, m, kappa, &at_point, &at_base, tolerance_exponent))
}

/// Every `(n, m)` with `n <= n_max` and lattice index up to `m_max`
/// (from 1 for the plain lattice, from 0 for the shifted ones), computing the
/// Gamma derivatives at each point once.
pub fn identity_sweep(
    family: FamilyKind,
    n_max: usize,
    m_max: usize,
    kappa: Option<&Kappa>,
    ctx: &PrecisionContext,
    tolerance_exponent: u32,
) -> Result<Vec<VerificationReport>> {
    check_args(family, 1, kappa)?;
    let at_base = gamma_derivatives(&base_point(family, kappa), n_max, ctx)?;
    let first_m = if family == FamilyKind::Plain { 1 } else { 0 };
    let mut out = Vec::new();
    for m in first_m..=m_max {
        let point = lattice_point(family, m as i64, kappa);
        let at_point = gamma_derivatives(&point, n_max, ctx)?;
        for n in 0..=n_max {
            out.push(report(family, n, m, kappa, &at_point, &at_base, tolerance_exponent));
        }
    }
    Ok(out)
}

/// Basis derivatives recovered from lattice data by the exact inverse, with
/// the directly computed values alongside.
#[derive(Debug, Clone)]
pub struct RecoveredBasis {
    pub labels: Vec<String>,
    pub values: Vec<Real>,
    pub reference: Vec<Real>,
    /// Right-hand side used: lattice derivatives minus the constant column.
    pub lattice_values: Vec<Real>,
}

impl RecoveredBasis {
    pub fn max_abs_error(&self) -> Real {
        let prec = self.values.first().map_or(64, |v| v.prec());
        self.values
            .iter()
            .zip(&self.reference)
            .map(|(a, b)| (a - b).abs())
            .fold(Real::zero(prec), |acc, d| if d > acc { d } else { acc })
    }
}

pub fn recover_basis(spec: &LatticeSpec, n: usize, ctx: &PrecisionContext) -> Result<RecoveredBasis> {
    let system = build_system(spec, n)?;
    if !system.is_square() {
        return Err(Error::NotSquare {
            rows: system.matrix.rows(),
            cols: system.matrix.cols(),
        });
    }
    let inverse = inverse_exact(&system.matrix)?;
    let prec = ctx.working_bits();
    let mut rhs = Vec::with_capacity(spec.indices().len());
    for (r, &m) in spec.indices().iter().enumerate() {
        let point = lattice_point(spec.family(), m, spec.kappa());
        let derivs = gamma_derivatives(&point, n, ctx)?;
        let mut v = derivs.get(n).clone();
        if let Some(c) = system.constant_column.get(r) {
            // Γ^(0)(1) = 1, so the ℓ = 0 term is the bare coefficient
            v = &v - &Real::from_rational(c, prec);
        }
        rhs.push(v);
    }
    let size = rhs.len();
    let values = (0..size)
        .map(|i| {
            (0..size).fold(Real::zero(prec), |acc, j| {
                &acc + &(&Real::from_rational(inverse.get(i, j), prec) * &rhs[j])
            })
        })
        .collect();
    let base = base_point(spec.family(), spec.kappa());
    let all = gamma_derivatives(&base, n, ctx)?;
    let reference = system
        .unknowns
        .orders()
        .map(|l| all.get(l).clone())
        .collect();
    Ok(RecoveredBasis {
        labels: system.unknowns.labels(),
        values,
        reference,
        lattice_values: rhs,
    })
}
