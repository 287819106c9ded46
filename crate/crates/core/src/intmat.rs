//! Exact linear algebra over ℤ: determinants, characteristic polynomials,
//! matrix powers, unimodularity, and Smith normal form with transforms.
//!
//! All arithmetic is arbitrary precision; nothing here rounds or overflows.
//! Determinants use Bareiss fraction-free elimination, characteristic
//! polynomials use the Faddeev–LeVerrier recurrence (all divisions exact),
//! and the Smith normal form reduction picks the smallest-nonzero-absolute
//! value pivot (ties broken row-major) so the transforms `U`, `V` are
//! deterministic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::polyalg::IntPoly;

/// Largest supported dimension. Certification itself only uses 2..=4.
pub const MAX_DIM: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    /// Dimension outside 1..=MAX_DIM, or rows of unequal length.
    BadShape(String),
    /// Negative power of a matrix with |det| != 1.
    NonUnimodularInverse,
    /// Companion matrix preconditions violated (non-monic, degree < 2, zero constant term).
    BadCompanionInput(String),
    /// Text input could not be parsed.
    Parse(String),
    /// Singular matrix where an invertible one was required.
    Singular,
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::BadShape(s) => write!(f, "bad matrix shape: {}", s),
            MatrixError::NonUnimodularInverse => {
                write!(f, "negative power of a non-unimodular matrix")
            }
            MatrixError::BadCompanionInput(s) => write!(f, "bad companion input: {}", s),
            MatrixError::Parse(s) => write!(f, "matrix parse error: {}", s),
            MatrixError::Singular => write!(f, "singular matrix"),
        }
    }
}

impl std::error::Error for MatrixError {}

/// Square matrix of arbitrary-precision integers, row-major, immutable after
/// construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(n: usize, entries: Vec<BigInt>) -> Result<Self, MatrixError> {
        if n == 0 || n > MAX_DIM {
            return Err(MatrixError::BadShape(format!(
                "dimension {} not in 1..={}",
                n, MAX_DIM
            )));
        }
        if entries.len() != n * n {
            return Err(MatrixError::BadShape(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                n,
                n
            )));
        }
        Ok(IntMatrix { n, entries })
    }

    /// Convenience constructor from i64 rows, mostly for tests and fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must be square");
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| BigInt::from(x)))
            .collect();
        IntMatrix::new(n, entries).expect("valid dimensions")
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        IntMatrix::new(n, entries).expect("valid dimensions")
    }

    pub fn minus_identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = -BigInt::one();
        }
        IntMatrix::new(n, entries).expect("valid dimensions")
    }

    pub fn zero(n: usize) -> Self {
        IntMatrix::new(n, vec![BigInt::zero(); n * n]).expect("valid dimensions")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.n)
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix {
            n: self.n,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        IntMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        IntMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        IntMatrix { n, entries }
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        IntMatrix {
            n: self.n,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        if n == 1 {
            return self.entries[0].clone();
        }
        if n == 2 {
            return self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0);
        }
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect();
        bareiss_det(&mut m)
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    /// Characteristic polynomial det(xI - M), monic of degree n, via the
    /// Faddeev–LeVerrier recurrence (every division is exact over ℤ).
    pub fn char_poly(&self) -> IntPoly {
        let n = self.n;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut b = self.clone();
        let mut c = -b.trace();
        coeffs[n - 1] = c.clone();
        for k in 2..=n {
            let shifted = b.add(&IntMatrix::identity(n).scale(&c));
            b = self.mul(&shifted);
            let t = -b.trace();
            let k_big = BigInt::from(k);
            debug_assert!((&t % &k_big).is_zero());
            c = t / k_big;
            coeffs[n - k] = c.clone();
        }
        IntPoly::from_coeffs(coeffs)
    }

    /// Companion matrix of a monic polynomial of degree >= 2 with nonzero
    /// constant term: identity block above the diagonal, last row
    /// `(-a_0, -a_1, ..., -a_{n-1})`.
    pub fn companion(p: &IntPoly) -> Result<IntMatrix, MatrixError> {
        if !p.is_monic() {
            return Err(MatrixError::BadCompanionInput("polynomial not monic".into()));
        }
        let n = match p.degree() {
            Some(d) if d >= 2 => d,
            _ => return Err(MatrixError::BadCompanionInput("degree must be >= 2".into())),
        };
        if n > MAX_DIM {
            return Err(MatrixError::BadShape(format!("degree {} too large", n)));
        }
        if p.coeff(0).is_zero() {
            return Err(MatrixError::BadCompanionInput("zero constant term".into()));
        }
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n - 1 {
            entries[i * n + i + 1] = BigInt::one();
        }
        for j in 0..n {
            entries[(n - 1) * n + j] = -p.coeff(j);
        }
        Ok(IntMatrix { n, entries })
    }

    /// Exact integer power. Negative exponents require |det| = 1; the inverse
    /// is formed from the adjugate, which is integral for unimodular input.
    pub fn pow(&self, k: i64) -> Result<IntMatrix, MatrixError> {
        if k >= 0 {
            return Ok(self.pow_nonneg(k as u64));
        }
        let inv = self.inverse_unimodular()?;
        Ok(inv.pow_nonneg(k.unsigned_abs()))
    }

    fn pow_nonneg(&self, mut k: u64) -> IntMatrix {
        let mut result = IntMatrix::identity(self.n);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Inverse of a unimodular matrix: adjugate divided by det, where
    /// det = ±1 keeps every entry integral.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix, MatrixError> {
        let d = self.det();
        if !d.abs().is_one() {
            return Err(MatrixError::NonUnimodularInverse);
        }
        let adj = self.adjugate();
        // det is ±1, so dividing by det is the same as multiplying by it.
        Ok(adj.scale(&d))
    }

    /// Adjugate (transposed cofactor matrix); satisfies M * adj(M) = det(M) I.
    pub fn adjugate(&self) -> IntMatrix {
        let n = self.n;
        if n == 1 {
            return IntMatrix::identity(1);
        }
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j);
                let sign = if (i + j) % 2 == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                };
                // adj[j][i] = (-1)^{i+j} det(minor_ij)
                entries[j * n + i] = sign * minor.det();
            }
        }
        IntMatrix { n, entries }
    }

    fn minor(&self, row: usize, col: usize) -> IntMatrix {
        let n = self.n;
        let mut entries = Vec::with_capacity((n - 1) * (n - 1));
        for i in 0..n {
            if i == row {
                continue;
            }
            for j in 0..n {
                if j == col {
                    continue;
                }
                entries.push(self.get(i, j).clone());
            }
        }
        IntMatrix {
            n: n - 1,
            entries,
        }
    }

    pub fn commutes_with(&self, other: &IntMatrix) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Smith normal form `U * M * V = diag(d)` with unimodular transforms.
    ///
    /// Pivot rule: smallest nonzero absolute value in the remaining
    /// submatrix, ties broken by row-major position. Invariant factors are
    /// normalized nonnegative with the sign absorbed into `U`.
    pub fn smith_normal_form(&self) -> SnfResult {
        let n = self.n;
        let mut w: Vec<Vec<BigInt>> = (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut u: Vec<Vec<BigInt>> = identity_rows(n);
        let mut v: Vec<Vec<BigInt>> = identity_rows(n);

        for t in 0..n {
            'step: loop {
                let Some((pi, pj)) = select_pivot(&w, t) else {
                    break 'step; // remaining block is zero
                };
                if pi != t {
                    w.swap(pi, t);
                    u.swap(pi, t);
                }
                if pj != t {
                    swap_cols(&mut w, pj, t);
                    swap_cols(&mut v, pj, t);
                }
                let mut dirty = false;
                // clear column t below the pivot
                for i in t + 1..n {
                    if !w[i][t].is_zero() {
                        let q = &w[i][t] / &w[t][t];
                        if !q.is_zero() {
                            row_sub(&mut w, i, t, &q);
                            row_sub(&mut u, i, t, &q);
                        }
                        if !w[i][t].is_zero() {
                            dirty = true;
                        }
                    }
                }
                // clear row t right of the pivot
                for j in t + 1..n {
                    if !w[t][j].is_zero() {
                        let q = &w[t][j] / &w[t][t];
                        if !q.is_zero() {
                            col_sub(&mut w, j, t, &q);
                            col_sub(&mut v, j, t, &q);
                        }
                        if !w[t][j].is_zero() {
                            dirty = true;
                        }
                    }
                }
                if dirty {
                    continue 'step; // smaller residues exist; reselect pivot
                }
                // pivot now divides its row and column; enforce divisibility
                // into the trailing block by folding a bad row into row t
                let mut fixed = true;
                'scan: for i in t + 1..n {
                    for j in t + 1..n {
                        if !(&w[i][j] % &w[t][t]).is_zero() {
                            let one = BigInt::one();
                            row_sub(&mut w, t, i, &-&one);
                            row_sub(&mut u, t, i, &-&one);
                            fixed = false;
                            break 'scan;
                        }
                    }
                }
                if fixed {
                    break 'step;
                }
            }
            if w[t][t].is_negative() {
                negate_row(&mut w, t);
                negate_row(&mut u, t);
            }
        }

        let d: Vec<BigInt> = (0..n).map(|i| w[i][i].clone()).collect();
        let flatten = |rows: Vec<Vec<BigInt>>| IntMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        };
        SnfResult {
            d,
            u: flatten(u),
            v: flatten(v),
        }
    }

    /// Parse the matrix text format: first line `n`, then `n` lines of `n`
    /// whitespace-separated integers; `#` starts a comment line.
    pub fn parse_text(input: &str) -> Result<IntMatrix, MatrixError> {
        let mut lines = input
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| MatrixError::Parse("empty input".into()))?
            .parse()
            .map_err(|_| MatrixError::Parse("first line must be the dimension".into()))?;
        if n == 0 || n > MAX_DIM {
            return Err(MatrixError::Parse(format!(
                "dimension {} not in 1..={}",
                n, MAX_DIM
            )));
        }
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| MatrixError::Parse(format!("missing row {}", i + 1)))?;
            let row: Result<Vec<BigInt>, _> = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<BigInt>()
                        .map_err(|_| MatrixError::Parse(format!("bad integer `{}`", tok)))
                })
                .collect();
            let row = row?;
            if row.len() != n {
                return Err(MatrixError::Parse(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    n
                )));
            }
            entries.extend(row);
        }
        if lines.next().is_some() {
            return Err(MatrixError::Parse("trailing content after matrix".into()));
        }
        IntMatrix::new(n, entries)
    }

    /// Parse the inline form used on the command line: rows separated by
    /// `;`, entries by whitespace, e.g. `"0 1; 1 5"`.
    pub fn parse_inline(input: &str) -> Result<IntMatrix, MatrixError> {
        let rows: Vec<&str> = input.split(';').map(str::trim).collect();
        let n = rows.len();
        if n == 0 || n > MAX_DIM {
            return Err(MatrixError::Parse(format!(
                "dimension {} not in 1..={}",
                n, MAX_DIM
            )));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let parsed: Result<Vec<BigInt>, _> = row
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<BigInt>()
                        .map_err(|_| MatrixError::Parse(format!("bad integer `{}`", tok)))
                })
                .collect();
            let parsed = parsed?;
            if parsed.len() != n {
                return Err(MatrixError::Parse(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    parsed.len(),
                    n
                )));
            }
            entries.extend(parsed);
        }
        IntMatrix::new(n, entries)
    }

    /// Inline form, re-parseable by `parse_inline`.
    pub fn to_inline(&self) -> String {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.get(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl fmt::Display for IntMatrix {
    /// The matrix text format (dimension line, then rows).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Smith normal form output: `u * m * v = diag(d)`, `d_i >= 0`,
/// `d_i | d_{i+1}`, `|det u| = |det v| = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub d: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let n = self.d.len();
        let mut entries = vec![BigInt::zero(); n * n];
        for (i, di) in self.d.iter().enumerate() {
            entries[i * n + i] = di.clone();
        }
        IntMatrix::new(n, entries).expect("valid dimensions")
    }
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

fn select_pivot(w: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let n = w.len();
    let mut best: Option<(usize, usize)> = None;
    for i in t..n {
        for j in t..n {
            if w[i][j].is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if w[i][j].abs() < w[bi][bj].abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

fn swap_cols(rows: &mut [Vec<BigInt>], a: usize, b: usize) {
    for row in rows.iter_mut() {
        row.swap(a, b);
    }
}

/// row_i -= q * row_t
fn row_sub(rows: &mut [Vec<BigInt>], i: usize, t: usize, q: &BigInt) {
    let n = rows[t].len();
    for j in 0..n {
        let delta = q * &rows[t][j];
        rows[i][j] -= delta;
    }
}

/// col_j -= q * col_t
fn col_sub(rows: &mut [Vec<BigInt>], j: usize, t: usize, q: &BigInt) {
    for row in rows.iter_mut() {
        let delta = q * &row[t];
        row[j] -= delta;
    }
}

fn negate_row(rows: &mut [Vec<BigInt>], i: usize) {
    for x in rows[i].iter_mut() {
        *x = -&*x;
    }
}

fn bareiss_det(m: &mut [Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                debug_assert!((&num % &prev).is_zero());
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Square matrix of exact rationals; used for γ-images, order bases, and the
/// change-of-basis algebra around them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    n: usize,
    entries: Vec<BigRational>,
}

impl QMatrix {
    pub fn new(n: usize, entries: Vec<BigRational>) -> Result<Self, MatrixError> {
        if n == 0 || n > MAX_DIM {
            return Err(MatrixError::BadShape(format!(
                "dimension {} not in 1..={}",
                n, MAX_DIM
            )));
        }
        if entries.len() != n * n {
            return Err(MatrixError::BadShape(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                n,
                n
            )));
        }
        Ok(QMatrix { n, entries })
    }

    pub fn from_int(m: &IntMatrix) -> QMatrix {
        QMatrix {
            n: m.n,
            entries: m
                .entries
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect(),
        }
    }

    pub fn identity(n: usize) -> QMatrix {
        QMatrix::from_int(&IntMatrix::identity(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut entries = vec![BigRational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        QMatrix { n, entries }
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.n, other.n);
        QMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> QMatrix {
        QMatrix {
            n: self.n,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    /// Some(integer matrix) iff every entry has denominator 1.
    pub fn to_int(&self) -> Option<IntMatrix> {
        let mut entries = Vec::with_capacity(self.n * self.n);
        for x in &self.entries {
            if !x.is_integer() {
                return None;
            }
            entries.push(x.to_integer());
        }
        Some(IntMatrix {
            n: self.n,
            entries,
        })
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|x| x.is_integer())
    }

    pub fn det(&self) -> BigRational {
        // Clear denominators and reuse the integer Bareiss path.
        let n = self.n;
        let mut den = BigInt::one();
        for x in &self.entries {
            den = num_integer::lcm(den, x.denom().clone());
        }
        let scaled: Vec<BigInt> = self
            .entries
            .iter()
            .map(|x| x.numer() * (&den / x.denom()))
            .collect();
        let m = IntMatrix { n, entries: scaled };
        let mut denom_pow = BigInt::one();
        for _ in 0..n {
            denom_pow *= &den;
        }
        BigRational::new(m.det(), denom_pow)
    }

    /// Exact inverse via Gauss–Jordan elimination over ℚ.
    pub fn inverse(&self) -> Result<QMatrix, MatrixError> {
        let n = self.n;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut inv: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Err(MatrixError::Singular);
            };
            a.swap(col, p);
            inv.swap(col, p);
            let piv = a[col][col].clone();
            for j in 0..n {
                a[col][j] /= &piv;
                inv[col][j] /= &piv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for j in 0..n {
                    let da = &factor * &a[col][j];
                    a[r][j] -= da;
                    let di = &factor * &inv[col][j];
                    inv[r][j] -= di;
                }
            }
        }
        Ok(QMatrix {
            n,
            entries: inv.into_iter().flatten().collect(),
        })
    }

    /// Apply to a column vector.
    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn to_inline(&self) -> String {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| format_rational(self.get(i, j)))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(tok: &str) -> Result<BigRational, MatrixError> {
    let tok = tok.trim();
    if let Some((num, den)) = tok.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| MatrixError::Parse(format!("bad rational `{}`", tok)))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| MatrixError::Parse(format!("bad rational `{}`", tok)))?;
        if d.is_zero() {
            return Err(MatrixError::Parse(format!("zero denominator in `{}`", tok)));
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = tok
            .parse()
            .map_err(|_| MatrixError::Parse(format!("bad integer `{}`", tok)))?;
        Ok(BigRational::from_integer(n))
    }
}

/// Solve a (possibly non-square) rational linear system given as rows of
/// `(coefficients, rhs)`. Returns None when inconsistent; free variables are
/// set to zero.
pub(crate) fn solve_rectangular(
    rows: &[Vec<BigRational>],
    rhs: &[BigRational],
) -> Option<Vec<BigRational>> {
    let m = rows.len();
    assert_eq!(m, rhs.len());
    let cols = rows.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let piv = a[rank][col].clone();
        for j in col..=cols {
            a[rank][j] /= &piv;
        }
        for r in 0..m {
            if r == rank || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in col..=cols {
                let d = &f * &a[rank][j];
                a[r][j] -= d;
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == m {
            break;
        }
    }
    // inconsistent if a zero row has nonzero rhs
    for r in rank..m {
        if !a[r][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); cols];
    for (r, &col) in pivot_cols.iter().enumerate() {
        x[col] = a[r][cols].clone();
    }
    Some(x)
}
