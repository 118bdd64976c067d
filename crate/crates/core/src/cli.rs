//! Command-line front end. Every subcommand produces an [`OutputEnvelope`]
//! rendered as JSON (one object) or CSV (header plus rows).
//!
//! Exit codes: 0 success, 1 a verification or cross-check failed, 2 usage error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::coeffs::{build_system, structured_reduction, Kappa, LatticeSpec};
use crate::density::{density_grid, DensityVariant};
use crate::error::Error;
use crate::gammanum::{identity_sweep, recover_basis, PrecisionContext, Real};
use crate::linalg::{det_exact, inverse_exact, positivity_chain, RationalMatrix};
use crate::rational::{format_rational, Rational};
use crate::sympoly::{
    elementary_bruteforce, homogeneous_bruteforce, prefix_table, ArgumentFamily, FamilyKind, PolyKind,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Digits shown for residuals and errors.
const RESIDUAL_DIGITS: usize = 6;

#[derive(Debug, Parser)]
#[command(
    name = "lattice-gamma",
    version,
    about = "Exact coefficients, determinant certificates and high-precision checks for Gamma derivatives on lattices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients expressing Γ^(n) at lattice points through the basis derivatives.
    Coeffs(CoeffsArgs),
    /// Coefficient matrix of an index set: entries, determinant, inverse or certificate.
    Matrix(MatrixArgs),
    /// High-precision checks of the identities or of basis recovery.
    Verify(VerifyArgs),
    /// Transcendental-density lower bounds.
    Density(DensityArgs),
    /// Prefix tables of elementary / complete homogeneous symmetric polynomials.
    Sympoly(SympolyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Plain,
    Plus,
    Minus,
}

impl From<FamilyArg> for FamilyKind {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Plain => FamilyKind::Plain,
            FamilyArg::Plus => FamilyKind::PlusShift,
            FamilyArg::Minus => FamilyKind::MinusShift,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Derivative order, `n` or `a..b`.
    #[arg(long)]
    pub n: String,
    /// Lattice index, `m` or `a..b`.
    #[arg(long)]
    pub m: String,
    #[arg(long)]
    pub kappa: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Show {
    #[default]
    Matrix,
    Det,
    Inverse,
    CauchyBinet,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub n: usize,
    /// Strictly increasing lattice indices, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub indices: Vec<i64>,
    #[arg(long)]
    pub kappa: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    pub show: Show,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    #[default]
    Identity,
    Recover,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub n_max: usize,
    /// Largest lattice index in identity mode.
    #[arg(long, default_value_t = 8)]
    pub m_max: usize,
    /// Comma-separated shifts; defaults to the known-transcendental set.
    #[arg(long)]
    pub kappa_set: Option<String>,
    #[arg(long, default_value_t = 60)]
    pub digits: u32,
    /// Pass threshold `10^-t`; defaults to `digits - 20`.
    #[arg(long)]
    pub tolerance: Option<u32>,
    #[arg(long, value_enum, default_value_t)]
    pub mode: Mode,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Prior,
    FixedN,
    FixedNShifted,
    Bivariate,
    BivariateShifted,
}

impl From<VariantArg> for DensityVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Prior => DensityVariant::Prior,
            VariantArg::FixedN => DensityVariant::FixedN,
            VariantArg::FixedNShifted => DensityVariant::FixedNShifted,
            VariantArg::Bivariate => DensityVariant::Bivariate,
            VariantArg::BivariateShifted => DensityVariant::BivariateShifted,
        }
    }
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    #[arg(long, value_enum)]
    pub variant: VariantArg,
    /// Order window, `N` or `a..b` (prior and bivariate variants).
    #[arg(long = "N")]
    pub big_n: Option<String>,
    /// Lattice window, `M` or `a..b`.
    #[arg(long = "M")]
    pub big_m: Option<String>,
    /// Fixed derivative order, `n` or `a..b` (fixed-n variants).
    #[arg(long)]
    pub n: Option<String>,
    /// Shift the shifted bounds refer to; only affects the conditional label.
    #[arg(long)]
    pub kappa: Option<String>,
    #[arg(long)]
    pub with_oracle: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Elementary,
    Homogeneous,
}

#[derive(Debug, Args)]
pub struct SympolyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long)]
    pub max_len: usize,
    #[arg(long)]
    pub max_deg: usize,
    #[arg(long)]
    pub kappa: Option<String>,
    /// Adds a brute-force column and fails on any mismatch.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputEnvelope {
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub rows: Vec<BTreeMap<String, Value>>,
    pub warnings: Vec<String>,
    pub exit_status: i32,
    /// Column order for CSV; not serialized.
    #[serde(skip)]
    pub columns: Vec<String>,
}

impl OutputEnvelope {
    fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            params: BTreeMap::new(),
            rows: Vec::new(),
            warnings: Vec::new(),
            exit_status: EXIT_OK,
            columns: Vec::new(),
        }
    }

    fn param(&mut self, key: &str, value: impl ToString) {
        self.params.insert(key.to_string(), value.to_string());
    }

    fn push(&mut self, row: Vec<(&str, Value)>) {
        for (k, _) in &row {
            if !self.columns.iter().any(|c| c == k) {
                self.columns.push(k.to_string());
            }
        }
        self.rows
            .push(row.into_iter().map(|(k, v)| (k.to_string(), v)).collect());
    }

    fn fail(&mut self) {
        self.exit_status = EXIT_FAILURE;
    }

    /// Canonical JSON: keys sorted, two-space indentation.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("envelope serializes");
        serde_json::to_string_pretty(&value).expect("value serializes")
    }

    pub fn to_csv(&self) -> String {
        let columns: Vec<String> = if self.columns.is_empty() {
            let mut keys: Vec<String> = Vec::new();
            for row in &self.rows {
                for k in row.keys() {
                    if !keys.contains(k) {
                        keys.push(k.clone());
                    }
                }
            }
            keys
        } else {
            self.columns.clone()
        };
        let mut out = columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = columns
                .iter()
                .map(|c| match row.get(c) {
                    None | Some(Value::Null) => String::new(),
                    Some(Value::String(s)) => s.clone(),
                    Some(v) => v.to_string(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

/// What a finished invocation prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn s(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

fn r(v: &Rational) -> Value {
    Value::String(format_rational(v))
}

fn u(v: usize) -> Value {
    Value::from(v as u64)
}

fn real(v: &Real, digits: usize) -> Value {
    Value::String(v.to_decimal_string(digits))
}

/// `"5"`, `"2..7"` or `"2..=7"`, all inclusive.
pub fn parse_range(text: &str) -> Option<RangeInclusive<u64>> {
    let t = text.trim();
    let parsed = if let Some((a, b)) = t.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        (a.trim().parse().ok()?, b.trim().parse().ok()?)
    } else {
        let v = t.parse().ok()?;
        (v, v)
    };
    Some(parsed.0..=parsed.1)
}

fn range_arg(name: &str, text: &str) -> CliResult<RangeInclusive<u64>> {
    let range = parse_range(text).ok_or_else(|| CliError::Usage(format!("--{name}: cannot parse range {text:?}")))?;
    if range.is_empty() {
        return Err(CliError::Usage(format!("--{name}: empty range {text:?}")));
    }
    Ok(range)
}

fn conditional_warning(kappas: &[Kappa]) -> Option<String> {
    let outside: Vec<String> = kappas
        .iter()
        .filter(|k| !k.known_transcendental())
        .map(|k| k.value().to_string())
        .collect();
    (!outside.is_empty()).then(|| {
        format!(
            "kappa {} outside the known-transcendental set; transcendence conclusions are conditional",
            outside.join(", ")
        )
    })
}

fn kappa_for(family: FamilyKind, text: Option<&str>) -> CliResult<Option<Kappa>> {
    match (family, text) {
        (FamilyKind::Plain, Some(_)) => {
            Err(Error::SpecMismatch("plain family takes no --kappa".into()).into())
        }
        (FamilyKind::Plain, None) => Ok(None),
        (_, None) => Err(Error::MissingKappa.into()),
        (_, Some(t)) => Ok(Some(Kappa::parse(t)?)),
    }
}

fn warn_kappa(env: &mut OutputEnvelope, kappa: Option<&Kappa>) {
    if let Some(w) = conditional_warning(kappa.map(std::slice::from_ref).unwrap_or(&[])) {
        env.warnings.push(w);
    }
}

fn cmd_coeffs(a: &CoeffsArgs) -> CliResult<OutputEnvelope> {
    let family = FamilyKind::from(a.family);
    let kappa = kappa_for(family, a.kappa.as_deref())?;
    let ns = range_arg("n", &a.n)?;
    let ms = range_arg("m", &a.m)?;
    if family == FamilyKind::Plain && *ms.start() == 0 {
        return Err(CliError::Usage("plain lattice indices start at 1".into()));
    }
    let mut env = OutputEnvelope::new("coeffs");
    env.param("family", family);
    env.param("n", &a.n);
    env.param("m", &a.m);
    if let Some(k) = &kappa {
        env.param("kappa", k.value());
    }
    warn_kappa(&mut env, kappa.as_ref());
    for n in ns {
        let n = n as usize;
        for m in ms.clone() {
            let spec = LatticeSpec::new(family, vec![m as i64], kappa.clone())?;
            // a single-row system with every ℓ, including the constant column
            let row: Vec<Rational> = if family == FamilyKind::Plain {
                let mut v = vec![crate::coeffs::t_plain(n, 0, m as usize)];
                if n > 0 {
                    v.extend(build_system(&spec, n)?.matrix.row(0).iter().cloned());
                }
                v
            } else {
                build_system(&spec, n)?.matrix.row(0).to_vec()
            };
            for (ell, value) in row.iter().enumerate() {
                env.push(vec![
                    ("n", u(n)),
                    ("ell", u(ell)),
                    ("m", Value::from(m)),
                    ("point", r(&spec.point(0))),
                    ("value", r(value)),
                ]);
            }
        }
    }
    Ok(env)
}

fn push_matrix(env: &mut OutputEnvelope, m: &RationalMatrix, labels: &[String]) {
    for i in 0..m.rows() {
        let mut row = vec![("row", u(i + 1))];
        let cells: Vec<(String, Value)> = (0..m.cols()).map(|j| (labels[j].clone(), r(m.get(i, j)))).collect();
        let owned: Vec<(&str, Value)> = cells.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
        row.extend(owned);
        env.push(row);
    }
}

fn cmd_matrix(a: &MatrixArgs) -> CliResult<OutputEnvelope> {
    let family = FamilyKind::from(a.family);
    let kappa = kappa_for(family, a.kappa.as_deref())?;
    let spec = LatticeSpec::new(family, a.indices.clone(), kappa.clone())?;
    let system = build_system(&spec, a.n)?;
    let mut env = OutputEnvelope::new("matrix");
    env.param("family", family);
    env.param("n", a.n);
    env.param(
        "indices",
        a.indices.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(";"),
    );
    env.param("show", format!("{:?}", a.show).to_lowercase());
    if let Some(k) = &kappa {
        env.param("kappa", k.value());
    }
    warn_kappa(&mut env, kappa.as_ref());
    let ells: Vec<String> = system.unknowns.orders().map(|l| format!("l{l}")).collect();
    let need_square = |system: &crate::coeffs::CoeffSystem| -> CliResult<()> {
        if system.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: system.matrix.rows(),
                cols: system.matrix.cols(),
            }
            .into())
        }
    };
    match a.show {
        Show::Matrix => push_matrix(&mut env, &system.matrix, &ells),
        Show::Det => {
            need_square(&system)?;
            let det = det_exact(&system.matrix)?;
            // second route: the structured parent determinant rescaled
            let red = structured_reduction(&spec, a.n)?;
            let chain = positivity_chain(&red.m_primes, &red.family, red.poly)?;
            let structured = red.predicted_det(&chain.parent_det);
            let agree = structured == det;
            env.push(vec![
                ("det", r(&det)),
                ("structured_det", r(&structured)),
                ("parent_det", r(&chain.parent_det)),
                ("agree", Value::Bool(agree)),
            ]);
            if !agree || det == Rational::from_integer(0.into()) {
                env.fail();
            }
        }
        Show::Inverse => {
            need_square(&system)?;
            match inverse_exact(&system.matrix) {
                Ok(inv) => {
                    let k = inv.cols();
                    let labels: Vec<String> = (1..=k).map(|c| format!("c{c}")).collect();
                    push_matrix(&mut env, &inv, &labels);
                    if &system.matrix * &inv != RationalMatrix::identity(k) {
                        env.fail();
                    }
                }
                Err(Error::Singular { det }) => {
                    env.warnings.push(format!("coefficient matrix is singular (det = {det})"));
                    env.fail();
                }
                Err(e) => return Err(e.into()),
            }
        }
        Show::CauchyBinet => {
            need_square(&system)?;
            let red = structured_reduction(&spec, a.n)?;
            let chain = positivity_chain(&red.m_primes, &red.family, red.poly)?;
            env.param("parent", match red.poly {
                PolyKind::Elementary => "E",
                PolyKind::Homogeneous => "H",
            });
            env.param(
                "parent_indices",
                red.m_primes.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(";"),
            );
            if let Some(cert) = &chain.certificate {
                for t in &cert.surviving {
                    let subset = t.subset.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";");
                    env.push(vec![
                        ("kind", s("term")),
                        ("subset", s(subset)),
                        ("det_a", r(&t.det_a)),
                        ("det_b", r(&t.det_b)),
                        ("value", r(&(&t.det_a * &t.det_b))),
                    ]);
                }
                env.push(vec![
                    ("kind", s("pruned")),
                    ("value", s(cert.pruned_count)),
                ]);
                env.push(vec![("kind", s("total")), ("value", r(&cert.total_det))]);
            }
            env.push(vec![("kind", s("parent_det")), ("value", r(&chain.parent_det))]);
            let det = det_exact(&system.matrix)?;
            env.push(vec![("kind", s("matrix_det")), ("value", r(&det))]);
            if !chain.is_consistent_and_positive() || red.predicted_det(&chain.parent_det) != det {
                env.fail();
            }
        }
    }
    Ok(env)
}

fn parse_kappa_set(text: Option<&str>) -> CliResult<Vec<Kappa>> {
    match text {
        None => Ok(Kappa::whitelist()),
        Some(t) => t
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| Kappa::parse(p).map_err(CliError::from))
            .collect(),
    }
}

fn cmd_verify(a: &VerifyArgs) -> CliResult<OutputEnvelope> {
    let family = FamilyKind::from(a.family);
    let ctx = PrecisionContext::new(a.digits)?;
    let tol = a.tolerance.unwrap_or(ctx.default_tolerance_exponent());
    let kappas: Vec<Option<Kappa>> = if family == FamilyKind::Plain {
        if a.kappa_set.is_some() {
            return Err(Error::SpecMismatch("plain family takes no --kappa-set".into()).into());
        }
        vec![None]
    } else {
        let set = parse_kappa_set(a.kappa_set.as_deref())?;
        if set.is_empty() {
            return Err(CliError::Usage("--kappa-set is empty".into()));
        }
        set.into_iter().map(Some).collect()
    };
    let mut env = OutputEnvelope::new("verify");
    env.param("family", family);
    env.param("n_max", a.n_max);
    env.param("digits", a.digits);
    env.param("tolerance", format!("1e-{tol}"));
    env.param("mode", format!("{:?}", a.mode).to_lowercase());
    let flat: Vec<Kappa> = kappas.iter().flatten().cloned().collect();
    if !flat.is_empty() {
        env.param(
            "kappa_set",
            flat.iter().map(|k| k.value().to_string()).collect::<Vec<_>>().join(";"),
        );
    }
    if let Some(w) = conditional_warning(&flat) {
        env.warnings.push(w);
    }
    let digits = a.digits as usize;
    let kappa_cell = |k: &Option<Kappa>| k.as_ref().map_or(Value::Null, |k| r(k.value()));
    match a.mode {
        Mode::Identity => {
            env.param("m_max", a.m_max);
            for kappa in &kappas {
                for rep in identity_sweep(family, a.n_max, a.m_max, kappa.as_ref(), &ctx, tol)? {
                    if !rep.pass {
                        env.fail();
                    }
                    env.push(vec![
                        ("kappa", kappa_cell(kappa)),
                        ("n", u(rep.n)),
                        ("m", u(rep.m)),
                        ("point", r(&rep.point)),
                        ("lhs", real(&rep.lhs, digits)),
                        ("rhs", real(&rep.rhs, digits)),
                        ("abs_residual", real(&rep.abs_residual, RESIDUAL_DIGITS)),
                        ("rel_residual", real(&rep.rel_residual, RESIDUAL_DIGITS)),
                        ("pass", Value::Bool(rep.pass)),
                    ]);
                }
            }
        }
        Mode::Recover => {
            let prec = ctx.working_bits();
            let threshold = Real::ten_pow_neg(tol, prec);
            let first_n = if family == FamilyKind::Plain { 1 } else { 0 };
            for kappa in &kappas {
                for n in first_n..=a.n_max {
                    // consecutive indices from the lowest admissible one
                    let size = LatticeSpec::square_size(family, n) as i64;
                    let start = if family == FamilyKind::Plain { 1 } else { 0 };
                    let spec = LatticeSpec::new(family, (start..start + size).collect(), kappa.clone())?;
                    let rec = recover_basis(&spec, n, &ctx)?;
                    for (i, label) in rec.labels.iter().enumerate() {
                        let err = (&rec.values[i] - &rec.reference[i]).abs();
                        let pass = err < threshold;
                        if !pass {
                            env.fail();
                        }
                        env.push(vec![
                            ("kappa", kappa_cell(kappa)),
                            ("n", u(n)),
                            (
                                "indices",
                                s(spec.indices().iter().map(|i| i.to_string()).collect::<Vec<_>>().join(";")),
                            ),
                            ("unknown", s(label)),
                            ("recovered", real(&rec.values[i], digits)),
                            ("reference", real(&rec.reference[i], digits)),
                            ("abs_error", real(&err, RESIDUAL_DIGITS)),
                            ("pass", Value::Bool(pass)),
                        ]);
                    }
                }
            }
        }
    }
    Ok(env)
}

fn cmd_density(a: &DensityArgs) -> CliResult<OutputEnvelope> {
    let variant = DensityVariant::from(a.variant);
    let mut env = OutputEnvelope::new("density");
    env.param("variant", variant);
    let need = |name: &str, v: &Option<String>| -> CliResult<RangeInclusive<u64>> {
        match v {
            Some(t) => range_arg(name, t),
            None => Err(CliError::Usage(format!("--{name} is required for --variant {variant}"))),
        }
    };
    let (first, second, first_key) = match variant {
        DensityVariant::Prior => (need("N", &a.big_n)?, 0..=0, "N"),
        DensityVariant::FixedN | DensityVariant::FixedNShifted => (need("n", &a.n)?, need("M", &a.big_m)?, "n"),
        DensityVariant::Bivariate | DensityVariant::BivariateShifted => {
            (need("N", &a.big_n)?, need("M", &a.big_m)?, "N")
        }
    };
    for (k, v) in [("N", &a.big_n), ("M", &a.big_m), ("n", &a.n)] {
        if let Some(v) = v {
            env.param(k, v);
        }
    }
    let status = match &a.kappa {
        Some(t) if variant.is_shifted() => {
            let k = Kappa::parse(t)?;
            env.param("kappa", k.value());
            warn_kappa(&mut env, Some(&k));
            Some(if k.known_transcendental() { "unconditional" } else { "conditional" })
        }
        Some(_) => return Err(CliError::Usage("--kappa only applies to the shifted variants".into())),
        None => None,
    };
    let with_oracle = a.with_oracle && variant != DensityVariant::Prior;
    if a.with_oracle && !with_oracle {
        env.warnings.push("the prior bound has no min-sum oracle; --with-oracle ignored".into());
    }
    env.param("with_oracle", with_oracle);
    for row in density_grid(variant, first, second)? {
        let p = row.bound.params;
        let mut cells = vec![(first_key, Value::from(if first_key == "n" { p.n } else { p.big_n }.unwrap_or(0)))];
        if let Some(m) = p.big_m {
            cells.push(("M", Value::from(m)));
        }
        cells.push(("value", s(&row.bound.value)));
        cells.push(("exact", Value::Bool(row.bound.value.is_exact())));
        cells.push(("branch", s(row.bound.branch)));
        if let Some(st) = status {
            cells.push(("status", s(st)));
        }
        if with_oracle {
            let matches = row.matches();
            if !matches {
                env.fail();
            }
            cells.push(("oracle", row.oracle.as_ref().map_or(Value::Null, r)));
            cells.push(("matches", Value::Bool(matches)));
        }
        env.push(cells);
    }
    Ok(env)
}

fn cmd_sympoly(a: &SympolyArgs) -> CliResult<OutputEnvelope> {
    let family = FamilyKind::from(a.family);
    let kappa = kappa_for(family, a.kappa.as_deref())?;
    let args = ArgumentFamily::new(family, kappa.as_ref().map(|k| k.value().clone()))?;
    let kind = match a.kind {
        KindArg::Elementary => PolyKind::Elementary,
        KindArg::Homogeneous => PolyKind::Homogeneous,
    };
    let mut env = OutputEnvelope::new("sympoly");
    env.param("family", family);
    env.param("kind", format!("{:?}", a.kind).to_lowercase());
    env.param("max_len", a.max_len);
    env.param("max_deg", a.max_deg);
    if let Some(k) = &kappa {
        env.param("kappa", k.value());
    }
    warn_kappa(&mut env, kappa.as_ref());
    let table = prefix_table(kind, &args, a.max_len, a.max_deg);
    for j in 0..=a.max_len {
        let xs = args.prefix(j);
        for v in 0..=a.max_deg {
            let value = table.get(j, v);
            let mut cells = vec![("len", u(j)), ("deg", u(v)), ("value", r(value))];
            if a.oracle {
                let brute = match kind {
                    PolyKind::Elementary => elementary_bruteforce(&xs, v)?,
                    PolyKind::Homogeneous => homogeneous_bruteforce(&xs, v)?,
                };
                let matches = &brute == value;
                if !matches {
                    env.fail();
                }
                cells.push(("oracle", r(&brute)));
                cells.push(("matches", Value::Bool(matches)));
            }
            env.push(cells);
        }
    }
    Ok(env)
}

fn dispatch(cli: &Cli) -> (CliResult<OutputEnvelope>, Format) {
    match &cli.command {
        Command::Coeffs(a) => (cmd_coeffs(a), a.format),
        Command::Matrix(a) => (cmd_matrix(a), a.format),
        Command::Verify(a) => (cmd_verify(a), a.format),
        Command::Density(a) => (cmd_density(a), a.format),
        Command::Sympoly(a) => (cmd_sympoly(a), a.format),
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    exit_code: code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    exit_code: code,
                }
            };
        }
    };
    let (result, format) = dispatch(&cli);
    match result {
        Ok(env) => {
            let mut stdout = env.render(format);
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            let stderr = if format == Format::Csv {
                env.warnings.iter().map(|w| format!("warning: {w}\n")).collect()
            } else {
                String::new()
            };
            Outcome {
                stdout,
                stderr,
                exit_code: env.exit_status,
            }
        }
        Err(e) => {
            let msg = match e {
                CliError::Usage(m) => m,
                CliError::Lib(e) => e.to_string(),
            };
            Outcome {
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
                exit_code: EXIT_USAGE,
            }
        }
    }
}
