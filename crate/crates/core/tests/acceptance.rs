//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::time::{Duration, Instant};

use lattice_gamma::coeffs::{build_system, Kappa, LatticeSpec};
use lattice_gamma::density::{
    beta_bivariate, bivariate_branches, bivariate_oracle, bivariate_shifted_branches, density_grid, DensityVariant,
};
use lattice_gamma::gammanum::{
    gamma_derivatives, gamma_value, identity_sweep, recover_basis, PrecisionContext, Real,
};
use lattice_gamma::linalg::{det_exact, inverse_exact, positivity_chain, RationalMatrix};
use lattice_gamma::rational::{rat, Rational};
use lattice_gamma::sympoly::{
    elementary_bruteforce, elementary_prefix, homogeneous_bruteforce, homogeneous_prefix, ArgumentFamily,
    FamilyKind, PolyKind,
};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

const EULER_GAMMA_100: &str = "5772156649015328606065120900824024310421593359399235988057672348848677267776646709369470632917467495";
const PI_100: &str = "31415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679";

/// `0.<digits>` or `<d>.<digits>` given as an integer string scaled by 10^-(len-lead).
fn literal(digits: &str, integer_digits: usize, prec: u32) -> Real {
    let num: BigInt = digits.parse().unwrap();
    let den = num_traits::pow(BigInt::from(10), digits.len() - integer_digits);
    Real::from_rational(&Rational::new(num, den), prec)
}

fn euler_gamma_literal(prec: u32) -> Real {
    literal(EULER_GAMMA_100, 0, prec)
}

fn pi_literal(prec: u32) -> Real {
    literal(PI_100, 1, prec)
}

fn within(a: &Real, b: &Real, exponent: u32) -> bool {
    (a - b).abs() < Real::ten_pow_neg(exponent, a.prec().max(b.prec()))
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(limit: Duration, start: Instant) -> Result<Duration, String> {
    let elapsed = start.elapsed();
    check(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))?;
    Ok(elapsed)
}

fn families() -> Vec<(ArgumentFamily, String)> {
    let mut out = vec![(ArgumentFamily::plain(), "plain".to_string())];
    for k in Kappa::whitelist() {
        let v = k.value().clone();
        out.push((ArgumentFamily::new(FamilyKind::PlusShift, Some(v.clone())).unwrap(), format!("plus {v}")));
        out.push((ArgumentFamily::new(FamilyKind::MinusShift, Some(v.clone())).unwrap(), format!("minus {v}")));
    }
    out
}

/// Strictly increasing subsets of `0..=max` with `1..=max_size` elements.
fn subsets(max: usize, max_size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << (max + 1)) {
        if mask.count_ones() as usize <= max_size {
            out.push((0..=max).filter(|&i| mask >> i & 1 == 1).collect());
        }
    }
    out.sort();
    out
}

fn identity_sweep_criterion() -> Outcome {
    let start = Instant::now();
    let ctx = PrecisionContext::new(60).map_err(|e| e.to_string())?;
    let limit = Real::ten_pow_neg(40, ctx.working_bits());
    let mut count = 0;
    let mut runs: Vec<(FamilyKind, usize, usize, Option<Kappa>)> = vec![(FamilyKind::Plain, 8, 12, None)];
    for k in Kappa::whitelist() {
        runs.push((FamilyKind::PlusShift, 6, 8, Some(k.clone())));
        runs.push((FamilyKind::MinusShift, 6, 8, Some(k)));
    }
    for (family, n_max, m_max, kappa) in runs {
        let reports = identity_sweep(family, n_max, m_max, kappa.as_ref(), &ctx, 40).map_err(|e| e.to_string())?;
        for rep in reports {
            check(rep.pass && rep.rel_residual < limit, || {
                format!(
                    "{family} n={} m={} kappa={:?}: rel residual {}",
                    rep.n,
                    rep.m,
                    rep.kappa.as_ref().map(ToString::to_string),
                    rep.rel_residual.to_decimal_string(6)
                )
            })?;
            count += 1;
        }
    }
    let t = timed(Duration::from_secs(120), start)?;
    Ok(format!("{count} identities, rel residual < 1e-40 at 60 digits, {t:.1?}"))
}

fn certificate_criterion() -> Outcome {
    let start = Instant::now();
    let sets = subsets(10, 5);
    let mut chains = 0;
    let mut terms = 0;
    for (fam, label) in families() {
        for mp in &sets {
            for poly in [PolyKind::Elementary, PolyKind::Homogeneous] {
                let chain = positivity_chain(mp, &fam, poly).map_err(|e| e.to_string())?;
                let direct = det_exact(&chain.parent).map_err(|e| e.to_string())?;
                check(direct.is_positive() && chain.parent_det == direct, || {
                    format!("{label} {poly:?} {mp:?}: det {direct}")
                })?;
                if let Some(cert) = &chain.certificate {
                    check(cert.total_det == direct && cert.term_sum() == direct, || {
                        format!("{label} {poly:?} {mp:?}: certificate {} vs det {direct}", cert.total_det)
                    })?;
                    terms += cert.surviving.len();
                }
                check(chain.is_consistent_and_positive(), || {
                    format!("{label} {poly:?} {mp:?}: chain not positive")
                })?;
                chains += 1;
            }
        }
    }
    let t = timed(Duration::from_secs(60), start)?;
    Ok(format!("{chains} E/H matrices, {terms} positive Cauchy-Binet terms, {t:.1?}"))
}

fn square_systems_criterion() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    let mut specs: Vec<(LatticeSpec, usize)> = Vec::new();
    for mp in subsets(10, 5) {
        let plain: Vec<i64> = mp.iter().map(|&m| m as i64 + 1).collect();
        specs.push((LatticeSpec::plain(plain).unwrap(), mp.len()));
        for k in Kappa::whitelist() {
            let idx: Vec<i64> = mp.iter().map(|&m| m as i64).collect();
            for family in [FamilyKind::PlusShift, FamilyKind::MinusShift] {
                specs.push((LatticeSpec::new(family, idx.clone(), Some(k.clone())).unwrap(), mp.len() - 1));
            }
        }
    }
    for (spec, n) in specs {
        let t = build_system(&spec, n).map_err(|e| e.to_string())?.matrix;
        let det = det_exact(&t).map_err(|e| e.to_string())?;
        check(!det.is_zero(), || format!("{spec}: singular"))?;
        let inv = inverse_exact(&t).map_err(|e| format!("{spec}: {e}"))?;
        let id = RationalMatrix::identity(t.rows());
        check(&t * &inv == id && &inv * &t == id, || format!("{spec}: inverse round trip"))?;
        count += 1;
    }
    let t = start.elapsed();
    Ok(format!("{count} square systems nonsingular with exact inverses, {t:.1?}"))
}

fn recovery_criterion() -> Outcome {
    let ctx = PrecisionContext::new(60).map_err(|e| e.to_string())?;
    let prec = ctx.working_bits();
    let neg_gamma = -euler_gamma_literal(prec);
    let pi = pi_literal(prec);
    let zeta2 = &(&pi * &pi) / &Real::from_int(6, prec);
    let mut count = 0;
    for n in 2..=4usize {
        let sets: [Vec<i64>; 3] = [
            (1..=n as i64).collect(),
            (2..=n as i64 + 1).collect(),
            [2, 5, 7, 11][..n].to_vec(),
        ];
        for idx in sets {
            let spec = LatticeSpec::plain(idx.clone()).unwrap();
            let rec = recover_basis(&spec, n, &ctx).map_err(|e| e.to_string())?;
            let d1 = &rec.values[0];
            let d2 = &rec.values[1];
            check(within(d1, &neg_gamma, 40), || {
                format!("plain {idx:?}: Gamma'(1) = {}", d1.to_decimal_string(50))
            })?;
            check(within(&(d2 - &(d1 * d1)), &zeta2, 40), || format!("plain {idx:?}: zeta(2) check"))?;
            count += 1;
        }
    }
    for k in Kappa::whitelist() {
        let direct = gamma_value(k.value(), &ctx).map_err(|e| e.to_string())?;
        for family in [FamilyKind::PlusShift, FamilyKind::MinusShift] {
            for n in 1..=3usize {
                let sets: [Vec<i64>; 3] = [
                    (0..=n as i64).collect(),
                    (1..=n as i64 + 1).collect(),
                    [0, 2, 5, 7][..=n].to_vec(),
                ];
                for idx in sets {
                    let spec = LatticeSpec::new(family, idx.clone(), Some(k.clone())).unwrap();
                    let rec = recover_basis(&spec, n, &ctx).map_err(|e| e.to_string())?;
                    check(within(&rec.values[0], &direct, 40), || {
                        format!("{family} kappa={} {idx:?}: Gamma(kappa) mismatch", k.value())
                    })?;
                    count += 1;
                }
            }
        }
    }
    // Γ(1/2) = √π against the literal, tying the shifted anchor to an independent value
    let half = gamma_value(&rat(1, 2), &ctx).map_err(|e| e.to_string())?;
    check(within(&half, &pi.sqrt(), 40), || "Gamma(1/2) vs sqrt(pi)".into())?;
    Ok(format!("{count} recoveries within 1e-40 (-gamma, zeta(2), Gamma(kappa))"))
}

fn density_criterion() -> Outcome {
    let start = Instant::now();
    let plain = density_grid(DensityVariant::Bivariate, 2..=200, 1..=200).map_err(|e| e.to_string())?;
    check(plain.len() == 199 * 200, || format!("{} plain rows", plain.len()))?;
    for row in &plain {
        let (n, m) = (row.bound.params.big_n.unwrap(), row.bound.params.big_m.unwrap());
        let oracle = bivariate_oracle(false, n, m).map_err(|e| e.to_string())?;
        check(row.bound.value.exact() == Some(&oracle), || format!("plain N={n} M={m}"))?;
    }
    let shifted = density_grid(DensityVariant::BivariateShifted, 1..=200, 0..=200).map_err(|e| e.to_string())?;
    check(shifted.len() == 200 * 201, || format!("{} shifted rows", shifted.len()))?;
    for row in &shifted {
        let (n, m) = (row.bound.params.big_n.unwrap(), row.bound.params.big_m.unwrap());
        let oracle = bivariate_oracle(true, n, m).map_err(|e| e.to_string())?;
        check(row.bound.value.exact() == Some(&oracle), || format!("shifted N={n} M={m}"))?;
    }
    for n in 2..=200u64 {
        let (a, b) = bivariate_branches(n, n - 1);
        check(a == b, || format!("plain boundary N={n}"))?;
    }
    for n in 1..=200u64 {
        let (a, b) = bivariate_shifted_branches(n, n - 1);
        check(a == b, || format!("shifted boundary N={n}"))?;
    }
    for n in [10u64, 100, 200] {
        let v = beta_bivariate(n, n).map_err(|e| e.to_string())?.value.exact().cloned().unwrap();
        check((&v - rat(1, 2)).abs() <= Rational::new(1.into(), (2 * (n - 1)).into()), || {
            format!("beta({n},{n}) = {v}")
        })?;
    }
    let ten = beta_bivariate(10, 10).map_err(|e| e.to_string())?;
    check(ten.value.exact() == Some(&rat(1, 2)), || "beta(10,10) != 1/2".into())?;
    let t = timed(Duration::from_secs(10), start)?;
    Ok(format!("{} grid cells equal their min-sum oracles, boundaries exact, {t:.1?}", plain.len() + shifted.len()))
}

fn sympoly_criterion() -> Outcome {
    let mut cells = 0;
    for (fam, label) in families() {
        let e = elementary_prefix(&fam, 8, 8);
        let h = homogeneous_prefix(&fam, 8, 8);
        for j in 0..=8 {
            let xs = fam.prefix(j);
            for v in 0..=8 {
                let be = elementary_bruteforce(&xs, v).map_err(|e| e.to_string())?;
                let bh = homogeneous_bruteforce(&xs, v).map_err(|e| e.to_string())?;
                check(e.get(j, v) == &be && h.get(j, v) == &bh, || format!("{label} len={j} deg={v}"))?;
                if v >= 1 {
                    let dual = (0..=v).fold(Rational::zero(), |acc, i| {
                        let t = e.get(j, i) * h.get(j, v - i);
                        if i % 2 == 0 { acc + t } else { acc - t }
                    });
                    check(dual.is_zero(), || format!("{label} Newton duality len={j} deg={v}"))?;
                }
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} table cells equal brute force, Newton duality exact"))
}

fn anchors(ctx: &PrecisionContext) -> Result<[Real; 4], String> {
    let e = |x: lattice_gamma::Error| x.to_string();
    let at_one = gamma_derivatives(&rat(1, 1), 2, ctx).map_err(e)?;
    Ok([
        at_one.get(1).clone(),
        at_one.get(2).clone(),
        gamma_value(&rat(1, 2), ctx).map_err(e)?,
        gamma_value(&rat(-1, 2), ctx).map_err(e)?,
    ])
}

fn precision_doubling_criterion() -> Outcome {
    let names = ["-gamma", "gamma^2+pi^2/6", "sqrt(pi)", "-2sqrt(pi)"];
    for digits in [40u32, 80] {
        let ctx = PrecisionContext::new(digits).map_err(|e| e.to_string())?;
        let base = anchors(&ctx)?;
        let doubled = anchors(&ctx.doubled())?;
        for ((a, b), name) in base.iter().zip(&doubled).zip(names) {
            let rel = a.rel_diff(b);
            check(rel <= Real::ten_pow_neg(digits, a.prec()), || {
                format!("{name} at {digits} digits moved by {}", rel.to_decimal_string(6))
            })?;
        }
        // and against the literals
        let prec = ctx.working_bits();
        let g = euler_gamma_literal(prec);
        let pi = pi_literal(prec);
        let expected = [
            -g.clone(),
            &(&g * &g) + &(&(&pi * &pi) / &Real::from_int(6, prec)),
            pi.sqrt(),
            -pi.sqrt().mul_pow2(1),
        ];
        for ((a, b), name) in base.iter().zip(&expected).zip(names) {
            check(a.rel_diff(b) <= Real::ten_pow_neg(digits, prec), || {
                format!("{name} at {digits} digits disagrees with reference")
            })?;
        }
    }
    Ok("anchors stable under precision doubling at 40 and 80 digits".into())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("identity sweep", identity_sweep_criterion),
        ("E/H determinant certificates", certificate_criterion),
        ("square system inverses", square_systems_criterion),
        ("basis recovery", recovery_criterion),
        ("density closed forms", density_criterion),
        ("symmetric-polynomial oracles", sympoly_criterion),
        ("precision doubling", precision_doubling_criterion),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
