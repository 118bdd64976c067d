//! Exact dense linear algebra over the rationals, and the structured matrices
//! behind the positivity argument: `E` (elementary) and `H` (complete
//! homogeneous) prefix matrices, their row-difference reduction, the banded
//! `A * B` factorization of the reduced minor, and a certificate-producing
//! Cauchy–Binet expansion.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{binomial_saturating, Rational};
use crate::sympoly::{prefix_table, ArgumentFamily, PolyKind};

/// Upper bound on the number of column subsets a Cauchy–Binet expansion may visit.
pub const CAUCHY_BINET_GUARD: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rational) -> Result<Self> {
        let entries = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| (r, c)))
            .map(|(r, c)| f(r, c))
            .collect();
        Self::new(rows, cols, entries)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| {
            if r == c {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .expect("identity of size zero")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Submatrix on the given (ordered) row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        Self::from_fn(rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Self::from_fn(self.rows, rhs.cols, |r, c| {
            (0..self.cols).fold(Rational::zero(), |acc, k| acc + self.get(r, k) * rhs.get(k, c))
        })
    }

    /// Multiplies column `c` by `scales[c]`.
    pub fn scale_columns(&self, scales: &[Rational]) -> Self {
        assert_eq!(scales.len(), self.cols);
        Self::from_fn(self.rows, self.cols, |r, c| self.get(r, c) * &scales[c]).unwrap()
    }

    pub fn scale_rows(&self, scales: &[Rational]) -> Self {
        assert_eq!(scales.len(), self.rows);
        Self::from_fn(self.rows, self.cols, |r, c| self.get(r, c) * &scales[r]).unwrap()
    }

    /// Reorders columns so that new column `c` is old column `perm[c]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.cols);
        Self::from_fn(self.rows, self.cols, |r, c| self.get(r, perm[c]).clone()).unwrap()
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.try_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Sign (+1 or -1) of a permutation of `0..n`, from its cycle decomposition.
pub fn permutation_sign(perm: &[usize]) -> i32 {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut transpositions = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            assert!(perm[i] < n, "not a permutation: {perm:?}");
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        transpositions += len - 1;
    }
    if transpositions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Determinant by fraction-free (Bareiss) elimination. Each row is first
/// cleared of denominators, so elimination runs on integers with exact division.
pub fn det_exact(m: &RationalMatrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut row_scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|r| {
            let lcm = m
                .row(r)
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row_scale *= &lcm;
            m.row(r)
                .iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect();
    let det = bareiss_in_place(&mut a);
    Ok(BigRational::new(det, row_scale))
}

fn bareiss_in_place(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Exact inverse by Gauss–Jordan elimination over the rationals.
pub fn inverse_exact(m: &RationalMatrix) -> Result<RationalMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut a = m.to_rows();
    let mut inv = RationalMatrix::identity(n).to_rows();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Err(Error::Singular { det: "0".into() });
        };
        a.swap(k, p);
        inv.swap(k, p);
        let pivot = a[k][k].recip();
        for j in 0..n {
            a[k][j] = &a[k][j] * &pivot;
            inv[k][j] = &inv[k][j] * &pivot;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let factor = a[i][k].clone();
            for j in 0..n {
                let da = &factor * &a[k][j];
                a[i][j] -= da;
                let di = &factor * &inv[k][j];
                inv[i][j] -= di;
            }
        }
    }
    RationalMatrix::from_rows(inv)
}

fn check_increasing(m_primes: &[usize]) -> Result<()> {
    if m_primes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NonIncreasingIndices(
            m_primes.iter().map(|&m| m as i64).collect(),
        ));
    }
    Ok(())
}

fn build_prefix_matrix(
    kind: PolyKind,
    m_primes: &[usize],
    family: &ArgumentFamily,
    size: usize,
) -> Result<RationalMatrix> {
    if m_primes.len() != size {
        return Err(Error::DimensionMismatch(format!(
            "{} indices for a {size}x{size} matrix",
            m_primes.len()
        )));
    }
    check_increasing(m_primes)?;
    let max_len = m_primes.last().copied().unwrap_or(0);
    let table = prefix_table(kind, family, max_len, size.saturating_sub(1));
    RationalMatrix::from_fn(size, size, |r, c| table.get(m_primes[r], c).clone())
}

/// `n x n` matrix with entry `(r, c) = e_{c-1}(x^(m'_r))`.
pub fn build_e(m_primes: &[usize], family: &ArgumentFamily, n: usize) -> Result<RationalMatrix> {
    build_prefix_matrix(PolyKind::Elementary, m_primes, family, n)
}

/// `(n+1) x (n+1)` matrix with entry `(r, c) = h_{c-1}(x^(m'_r))`.
pub fn build_h(m_primes: &[usize], family: &ArgumentFamily, n: usize) -> Result<RationalMatrix> {
    build_prefix_matrix(PolyKind::Homogeneous, m_primes, family, n + 1)
}

/// Keeps the first row and replaces every later row by its difference with
/// the row above. Determinant-preserving.
pub fn row_difference(m: &RationalMatrix) -> RationalMatrix {
    RationalMatrix::from_fn(m.rows, m.cols, |r, c| {
        if r == 0 {
            m.get(0, c).clone()
        } else {
            m.get(r, c) - m.get(r - 1, c)
        }
    })
    .unwrap()
}

/// Row-difference reduction followed by expansion along the first column:
/// the lower-right `(k-1) x (k-1)` block of `row_difference(m)`. Only
/// meaningful when the first column of `m` is all ones.
pub fn difference_minor(m: &RationalMatrix) -> Result<RationalMatrix> {
    if m.rows < 2 || m.cols < 2 {
        return Err(Error::DimensionMismatch(format!(
            "difference minor needs at least 2x2, got {}x{}",
            m.rows, m.cols
        )));
    }
    let f = row_difference(m);
    let rows: Vec<usize> = (1..f.rows).collect();
    let cols: Vec<usize> = (1..f.cols).collect();
    f.select(&rows, &cols)
}

/// Banded factor `A` and prefix-polynomial factor `B` with `A * B` equal to the
/// difference minor of the parent `E` (or `H`) matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct AbFactorization {
    pub a: RationalMatrix,
    pub b: RationalMatrix,
}

pub fn ab_factorization(
    m_primes: &[usize],
    family: &ArgumentFamily,
    poly: PolyKind,
) -> Result<AbFactorization> {
    if m_primes.len() < 2 {
        return Err(Error::DimensionMismatch(
            "factorization needs at least two indices".into(),
        ));
    }
    check_increasing(m_primes)?;
    let k = m_primes.len();
    let width = m_primes[k - 1];
    let table = prefix_table(poly, family, width, k - 2);
    // A[r, j] = x_j on the band m'_r < j <= m'_{r+1} (1-based j)
    let a = RationalMatrix::from_fn(k - 1, width, |r, j| {
        let j = j + 1;
        if m_primes[r] < j && j <= m_primes[r + 1] {
            family.x(j)
        } else {
            Rational::zero()
        }
    })?;
    let b = RationalMatrix::from_fn(width, k - 1, |j, c| {
        let j = j + 1;
        match poly {
            PolyKind::Elementary => table.get(j - 1, c).clone(),
            PolyKind::Homogeneous => table.get(j, c).clone(),
        }
    })?;
    Ok(AbFactorization { a, b })
}

/// One nonzero term of a Cauchy–Binet expansion. `subset` is 1-based.
#[derive(Debug, Clone, PartialEq)]
pub struct CauchyBinetTerm {
    pub subset: Vec<usize>,
    pub det_a: Rational,
    pub det_b: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CauchyBinetCertificate {
    pub total_det: Rational,
    pub surviving: Vec<CauchyBinetTerm>,
    pub pruned_count: u128,
}

impl CauchyBinetCertificate {
    /// Every surviving term has two strictly positive factors and at least one term survives.
    pub fn all_terms_positive(&self) -> bool {
        !self.surviving.is_empty()
            && self
                .surviving
                .iter()
                .all(|t| t.det_a.is_positive() && t.det_b.is_positive())
    }

    /// Every surviving subset satisfies `m'_r < s_r <= m'_{r+1}`.
    pub fn satisfies_interleaving(&self, m_primes: &[usize]) -> bool {
        self.surviving.iter().all(|t| {
            t.subset.len() + 1 == m_primes.len()
                && t
                    .subset
                    .iter()
                    .enumerate()
                    .all(|(r, &s)| m_primes[r] < s && s <= m_primes[r + 1])
        })
    }

    /// Recomputes the sum of surviving products.
    pub fn term_sum(&self) -> Rational {
        self.surviving
            .iter()
            .fold(Rational::zero(), |acc, t| acc + &t.det_a * &t.det_b)
    }
}

/// For each column of `a`, its only nonzero row, if every column has at most
/// one and those rows never decrease from left to right (a staircase band).
fn band_rows(a: &RationalMatrix) -> Option<Vec<Option<usize>>> {
    let rows: Vec<Option<usize>> = (0..a.cols)
        .map(|c| {
            let mut nz = (0..a.rows).filter(|&r| !a.get(r, c).is_zero());
            let first = nz.next();
            match nz.next() {
                Some(_) => None,
                None => Some(first),
            }
        })
        .collect::<Option<_>>()?;
    let occupied: Vec<usize> = rows.iter().flatten().copied().collect();
    occupied.windows(2).all(|w| w[0] <= w[1]).then_some(rows)
}

/// `det(A B) = sum over |S| = p of det(A[:, S]) det(B[S, :])`, keeping every
/// nonzero term. Subsets are visited in lexicographic order. When `A` is a
/// staircase band (each column has at most one nonzero, in a row that never
/// decreases left to right) a subset whose `r`-th column does not
/// sit in row `r` has a structurally zero `det(A[:, S])` and is pruned before
/// any determinant is evaluated.
pub fn cauchy_binet(a: &RationalMatrix, b: &RationalMatrix) -> Result<CauchyBinetCertificate> {
    let (p, q) = (a.rows, a.cols);
    if b.rows != q || b.cols != p {
        return Err(Error::DimensionMismatch(format!(
            "A is {p}x{q} so B must be {q}x{p}, got {}x{}",
            b.rows, b.cols
        )));
    }
    let total = binomial_saturating(q as u64, p as u64);
    if total > CAUCHY_BINET_GUARD {
        return Err(Error::GuardExceeded(format!(
            "{total} column subsets exceed the limit of {CAUCHY_BINET_GUARD}"
        )));
    }
    let bands = band_rows(a);
    let all_rows: Vec<usize> = (0..p).collect();
    let mut surviving = Vec::new();
    let mut total_det = Rational::zero();
    let mut visited: u128 = 0;

    let mut subset: Vec<usize> = (0..p).collect();
    if p <= q {
        loop {
            visited += 1;
            let structurally_zero = bands.as_ref().is_some_and(|bands| {
                subset
                    .iter()
                    .enumerate()
                    .any(|(r, &s)| bands[s] != Some(r))
            });
            if !structurally_zero {
                let det_a = det_exact(&a.select(&all_rows, &subset)?)?;
                if !det_a.is_zero() {
                    let det_b = det_exact(&b.select(&subset, &all_rows)?)?;
                    if !det_b.is_zero() {
                        total_det += &det_a * &det_b;
                        surviving.push(CauchyBinetTerm {
                            subset: subset.iter().map(|s| s + 1).collect(),
                            det_a,
                            det_b,
                        });
                    }
                }
            }
            // next combination in lexicographic order
            let Some(i) = (0..p).rev().find(|&i| subset[i] < q - p + i) else {
                break;
            };
            subset[i] += 1;
            for j in i + 1..p {
                subset[j] = subset[j - 1] + 1;
            }
        }
    }
    Ok(CauchyBinetCertificate {
        total_det,
        pruned_count: visited - surviving.len() as u128,
        surviving,
    })
}

/// Every step of the positivity argument for one parent matrix: the parent
/// determinant, the row-difference and minor determinants, and (for size at
/// least 2) the Cauchy–Binet certificate of `A * B`.
#[derive(Debug, Clone, PartialEq)]
pub struct PositivityChain {
    pub poly: PolyKind,
    pub m_primes: Vec<usize>,
    pub parent: RationalMatrix,
    pub parent_det: Rational,
    pub row_difference_det: Rational,
    pub minor_det: Option<Rational>,
    pub factorization: Option<AbFactorization>,
    pub certificate: Option<CauchyBinetCertificate>,
}

impl PositivityChain {
    /// All determinants along the chain agree, are positive, and the certificate
    /// (if any) is term-wise positive and interleaved.
    pub fn is_consistent_and_positive(&self) -> bool {
        if !self.parent_det.is_positive() || self.row_difference_det != self.parent_det {
            return false;
        }
        match (&self.minor_det, &self.factorization, &self.certificate) {
            (None, None, None) => self.parent_det.is_one(),
            (Some(minor), Some(_), Some(cert)) => {
                minor == &self.parent_det
                    && cert.total_det == *minor
                    && cert.term_sum() == *minor
                    && cert.all_terms_positive()
                    && cert.satisfies_interleaving(&self.m_primes)
            }
            _ => false,
        }
    }
}

pub fn positivity_chain(
    m_primes: &[usize],
    family: &ArgumentFamily,
    poly: PolyKind,
) -> Result<PositivityChain> {
    let size = m_primes.len();
    let parent = build_prefix_matrix(poly, m_primes, family, size)?;
    let parent_det = det_exact(&parent)?;
    let row_difference_det = det_exact(&row_difference(&parent))?;
    let (minor_det, factorization, certificate) = if size >= 2 {
        let minor = difference_minor(&parent)?;
        let fac = ab_factorization(m_primes, family, poly)?;
        if fac.a.try_mul(&fac.b)? != minor {
            return Err(Error::DimensionMismatch(
                "A * B does not reproduce the difference minor".into(),
            ));
        }
        let cert = cauchy_binet(&fac.a, &fac.b)?;
        (Some(det_exact(&minor)?), Some(fac), Some(cert))
    } else {
        (None, None, None)
    };
    Ok(PositivityChain {
        poly,
        m_primes: m_primes.to_vec(),
        parent,
        parent_det,
        row_difference_det,
        minor_det,
        factorization,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .unwrap()
    }

    /// Laplace expansion along the first row; independent of elimination.
    fn det_cofactor(a: &RationalMatrix) -> Rational {
        let n = a.rows();
        if n == 1 {
            return a.get(0, 0).clone();
        }
        let mut total = Rational::zero();
        for c in 0..n {
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&j| j != c).collect();
            let minor = det_cofactor(&a.select(&rows, &cols).unwrap());
            let term = a.get(0, c) * minor;
            if c % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn det_examples() {
        assert_eq!(det_exact(&m(&[&[0, 1], &[2, 1]])).unwrap(), int(-2));
        assert_eq!(det_exact(&RationalMatrix::identity(5)).unwrap(), int(1));
        assert_eq!(det_exact(&m(&[&[1, 2, 3], &[4, 5, 6], &[1, 2, 3]])).unwrap(), int(0));
        assert!(matches!(
            det_exact(&m(&[&[1, 2, 3]])),
            Err(Error::NotSquare { rows: 1, cols: 3 })
        ));
    }

    #[test]
    fn det_needs_pivoting() {
        let a = m(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        assert_eq!(det_exact(&a).unwrap(), int(-1));
        let frac = RationalMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 5), rat(2, 7)],
        ])
        .unwrap();
        assert_eq!(det_exact(&frac).unwrap(), rat(1, 7) - rat(1, 15));
    }

    #[test]
    fn inverse_examples() {
        let inv = inverse_exact(&m(&[&[0, 1], &[2, 1]])).unwrap();
        let expected = RationalMatrix::from_rows(vec![
            vec![rat(-1, 2), rat(1, 2)],
            vec![int(1), int(0)],
        ])
        .unwrap();
        assert_eq!(inv, expected);
        assert_eq!(
            inverse_exact(&RationalMatrix::identity(3)).unwrap(),
            RationalMatrix::identity(3)
        );
        assert!(matches!(
            inverse_exact(&m(&[&[1, 2], &[2, 4]])),
            Err(Error::Singular { .. })
        ));
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
        // reversal of k elements has sign (-1)^(k/2)
        for k in 1..9usize {
            let rev: Vec<usize> = (0..k).rev().collect();
            let expected = if (k / 2) % 2 == 0 { 1 } else { -1 };
            assert_eq!(permutation_sign(&rev), expected, "k = {k}");
        }
    }

    #[test]
    fn e_and_h_examples() {
        let plain = ArgumentFamily::plain();
        let e1 = build_e(&[4], &plain, 1).unwrap();
        assert_eq!(e1, m(&[&[1]]));
        let e2 = build_e(&[0, 1], &plain, 2).unwrap();
        assert_eq!(e2, m(&[&[1, 0], &[1, 1]]));
        assert_eq!(det_exact(&e2).unwrap(), int(1));
        let e3 = build_e(&[0, 2, 5], &plain, 3).unwrap();
        let d3 = det_exact(&e3).unwrap();
        assert!(d3.is_positive());
        assert_eq!(d3, det_cofactor(&e3));

        let minus_half = ArgumentFamily::minus_shift(rat(1, 2)).unwrap();
        assert_eq!(build_h(&[7], &minus_half, 0).unwrap(), m(&[&[1]]));
        let h = build_h(&[0, 1], &minus_half, 1).unwrap();
        assert_eq!(h, m(&[&[1, 0], &[1, 2]]));
        assert_eq!(det_exact(&h).unwrap(), int(2));
        let minus_third = ArgumentFamily::minus_shift(rat(1, 3)).unwrap();
        let h3 = build_h(&[0, 1, 3], &minus_third, 2).unwrap();
        assert!(det_exact(&h3).unwrap().is_positive());

        assert!(matches!(
            build_e(&[2, 1], &plain, 2),
            Err(Error::NonIncreasingIndices(_))
        ));
        assert!(matches!(
            build_h(&[0, 1], &plain, 2),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn row_difference_examples() {
        assert_eq!(
            row_difference(&m(&[&[1, 0], &[1, 1]])),
            m(&[&[1, 0], &[0, 1]])
        );
        let single = m(&[&[3, 4, 5]]);
        assert_eq!(row_difference(&single), single);
        let e = build_e(&[0, 1, 4, 6], &ArgumentFamily::plain(), 4).unwrap();
        assert_eq!(
            det_exact(&row_difference(&e)).unwrap(),
            det_exact(&e).unwrap()
        );
    }

    #[test]
    fn ab_examples() {
        let plain = ArgumentFamily::plain();
        let fac = ab_factorization(&[0, 1], &plain, PolyKind::Elementary).unwrap();
        assert_eq!(fac.a, m(&[&[1]]));
        assert_eq!(fac.b, m(&[&[1]]));
        let d = difference_minor(&build_e(&[0, 1], &plain, 2).unwrap()).unwrap();
        assert_eq!(d, m(&[&[1]]));

        let minus_half = ArgumentFamily::minus_shift(rat(1, 2)).unwrap();
        let fac = ab_factorization(&[0, 1], &minus_half, PolyKind::Homogeneous).unwrap();
        assert_eq!(fac.a, m(&[&[2]]));
        assert_eq!(fac.b, m(&[&[1]]));
        let d = difference_minor(&build_h(&[0, 1], &minus_half, 1).unwrap()).unwrap();
        assert_eq!(d, m(&[&[2]]));

        // bands are disjoint: each column of A has at most one nonzero
        let fac = ab_factorization(&[1, 3, 4, 8], &plain, PolyKind::Elementary).unwrap();
        for c in 0..fac.a.cols() {
            let nonzero = (0..fac.a.rows()).filter(|&r| !fac.a.get(r, c).is_zero()).count();
            assert!(nonzero <= 1);
        }
        assert_eq!(
            &fac.a * &fac.b,
            difference_minor(&build_e(&[1, 3, 4, 8], &plain, 4).unwrap()).unwrap()
        );
    }

    #[test]
    fn cauchy_binet_examples() {
        let one = m(&[&[1]]);
        let cert = cauchy_binet(&one, &one).unwrap();
        assert_eq!(cert.total_det, int(1));
        assert_eq!(cert.surviving.len(), 1);
        assert_eq!(cert.pruned_count, 0);

        let plain = ArgumentFamily::plain();
        let fac = ab_factorization(&[0, 2, 5], &plain, PolyKind::Elementary).unwrap();
        let cert = cauchy_binet(&fac.a, &fac.b).unwrap();
        let d = difference_minor(&build_e(&[0, 2, 5], &plain, 3).unwrap()).unwrap();
        assert_eq!(cert.total_det, det_exact(&d).unwrap());
        assert!(cert.all_terms_positive());
        assert!(cert.satisfies_interleaving(&[0, 2, 5]));
        // C(5, 2) = 10 subsets; bands (0,2] and (2,5] leave 2 * 3 = 6
        assert_eq!(cert.surviving.len(), 6);
        assert_eq!(cert.pruned_count, 4);
    }

    #[test]
    fn cauchy_binet_permuted_band_not_pruned() {
        // one nonzero per column but rows decrease: not a staircase, det(A) = -1
        let a = m(&[&[0, -1], &[-1, 0]]);
        let cert = cauchy_binet(&a, &RationalMatrix::identity(2)).unwrap();
        assert_eq!(cert.total_det, int(-1));
        assert_eq!(cert.pruned_count, 0);
    }

    #[test]
    fn cauchy_binet_dense_matches_product() {
        // non-banded A: no structural pruning, zero terms are still dropped
        let a = m(&[&[1, 2, 0], &[3, 1, 1]]);
        let b = m(&[&[1, 0], &[2, 1], &[0, 5]]);
        let cert = cauchy_binet(&a, &b).unwrap();
        assert_eq!(cert.total_det, det_exact(&(&a * &b)).unwrap());
        assert_eq!(cert.term_sum(), cert.total_det);
    }

    #[test]
    fn cauchy_binet_errors() {
        let a = m(&[&[1, 2, 3]]);
        assert!(matches!(
            cauchy_binet(&a, &a),
            Err(Error::DimensionMismatch(_))
        ));
        let wide = RationalMatrix::from_fn(10, 40, |_, _| int(1)).unwrap();
        let tall = RationalMatrix::from_fn(40, 10, |_, _| int(1)).unwrap();
        assert!(matches!(
            cauchy_binet(&wide, &tall),
            Err(Error::GuardExceeded(_))
        ));
    }

    #[test]
    fn chain_single_row() {
        let chain = positivity_chain(&[3], &ArgumentFamily::plain(), PolyKind::Elementary).unwrap();
        assert!(chain.certificate.is_none());
        assert!(chain.is_consistent_and_positive());
    }
}
