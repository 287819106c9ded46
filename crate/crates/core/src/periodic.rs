//! Periodic-point counting for toral automorphisms via Bowen–Franks groups,
//! the 2^n threshold and the odd-prime hypothesis, exact affine fixed-point
//! solving on the torus, and a finite-model check of the involution-orbit
//! fact behind the odd-prime argument.
//!
//! |Per^k(A)| is computed as |det(A^k - I)| and cross-checked on every call
//! against the independent resultant route |res(p_A, x^k - 1)|; the two
//! exact pipelines must agree or the call panics (an internal tripwire, not
//! an input error).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::intmat::{IntMatrix, MatrixError};
use crate::polyalg::{self, IntPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PeriodicError {
    /// A^k - I singular: the automorphism has k-periodic eigenvalue 1, so
    /// the count is infinite (non-hyperbolic input).
    SingularPower(u64),
    NotOddPrime(u64),
    SizeMismatch,
    NotABijection,
    Matrix(MatrixError),
}

impl fmt::Display for PeriodicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PeriodicError::SingularPower(k) => {
                write!(f, "A^{} - I is singular (input not hyperbolic)", k)
            }
            PeriodicError::NotOddPrime(p) => write!(f, "{} is not an odd prime", p),
            PeriodicError::SizeMismatch => write!(f, "permutations act on different sets"),
            PeriodicError::NotABijection => write!(f, "image array is not a bijection"),
            PeriodicError::Matrix(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for PeriodicError {}

impl From<MatrixError> for PeriodicError {
    fn from(e: MatrixError) -> Self {
        PeriodicError::Matrix(e)
    }
}

/// |Per^k(A)| = |det(A^k - I)|, cross-checked against |res(p_A, x^k - 1)|.
pub fn per_count(a: &IntMatrix, k: u64) -> Result<BigInt, PeriodicError> {
    assert!(k >= 1, "period must be positive");
    let ak = a.pow(k as i64)?;
    let m = ak.sub(&IntMatrix::identity(a.n()));
    let det = m.det();
    if det.is_zero() {
        return Err(PeriodicError::SingularPower(k));
    }
    let count = det.abs();
    // independent route: the resultant of the characteristic polynomial
    // with x^k - 1
    let char = a.char_poly();
    let res = polyalg::resultant(&char, &IntPoly::x_pow_minus_one(k as usize))
        .expect("nonzero polynomials");
    assert_eq!(
        count,
        res.abs(),
        "determinant and resultant periodic-point counts disagree"
    );
    Ok(count)
}

/// Nontrivial invariant factors of BF_k(A) = ℤ^n / (A^k - I)ℤ^n.
pub fn bf_invariants(a: &IntMatrix, k: u64) -> Result<Vec<BigInt>, PeriodicError> {
    let ak = a.pow(k as i64)?;
    let m = ak.sub(&IntMatrix::identity(a.n()));
    if m.det().is_zero() {
        return Err(PeriodicError::SingularPower(k));
    }
    let snf = m.smith_normal_form();
    Ok(snf.d.into_iter().filter(|d| !d.is_one()).collect())
}

/// Per-period table: |Per^k(A)| and the invariant factors of BF_k(A).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerCountTable {
    pub rows: BTreeMap<u64, (BigInt, Vec<BigInt>)>,
}

pub fn per_count_table(a: &IntMatrix, periods: &[u64]) -> Result<PerCountTable, PeriodicError> {
    let mut rows = BTreeMap::new();
    for &k in periods {
        let count = per_count(a, k)?;
        let invariants = bf_invariants(a, k)?;
        debug_assert_eq!(count, invariants.iter().product::<BigInt>());
        rows.insert(k, (count, invariants));
    }
    Ok(PerCountTable { rows })
}

/// |Per^p(A)| - |Per^1(A)| for an odd prime p; nonnegative since the fixed
/// points sit inside the p-periodic points.
pub fn non_fixed_count(a: &IntMatrix, p: u64) -> Result<BigInt, PeriodicError> {
    if p == 2 || !is_prime(p) {
        return Err(PeriodicError::NotOddPrime(p));
    }
    let full = per_count(a, p)?;
    let fixed = per_count(a, 1)?;
    let diff = full - fixed;
    debug_assert!(!diff.is_negative());
    Ok(diff)
}

/// |Per^1(-I)| = 2^n on the n-torus: the comparison threshold of both
/// hypotheses.
pub fn threshold(n: usize) -> BigInt {
    BigInt::one() << n
}

/// Least odd prime p <= cap with |Per^p(A)| - |Per^1(A)| > 2^n.
pub fn smallest_admissible_prime(a: &IntMatrix, cap: u64) -> Result<Option<u64>, PeriodicError> {
    let bound = threshold(a.n());
    let mut p = 3;
    while p <= cap {
        if is_prime(p) && non_fixed_count(a, p)? > bound {
            return Ok(Some(p));
        }
        p += 2;
    }
    Ok(None)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Number of solutions on the torus of (B - I)θ ≡ -c (mod ℤ^n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffineFixedPoints {
    /// B - I nonsingular: exactly |det(B - I)| solutions, independent of c.
    Count(BigInt),
    /// B - I singular: solvability decided through the Smith normal form.
    Degenerate { solvable: bool },
}

pub fn affine_fixed_points(b: &IntMatrix, c: &[BigRational]) -> AffineFixedPoints {
    let n = b.n();
    assert_eq!(c.len(), n, "translation vector length");
    let m = b.sub(&IntMatrix::identity(n));
    let det = m.det();
    if !det.is_zero() {
        return AffineFixedPoints::Count(det.abs());
    }
    // singular: U M V = D turns (B-I)θ ≡ -c into D θ' ≡ -U c; rows with
    // d_i = 0 need an integral right-hand side, everything else is solvable
    let snf = m.smith_normal_form();
    let neg_c: Vec<BigRational> = c.iter().map(|x| -x).collect();
    let rhs: Vec<BigRational> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(snf.u.get(i, j).clone()) * &neg_c[j])
                .sum()
        })
        .collect();
    let solvable = (0..n).all(|i| !snf.d[i].is_zero() || rhs[i].is_integer());
    AffineFixedPoints::Degenerate { solvable }
}

/// Bijection on {0, .., n-1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePermutation {
    map: Vec<usize>,
}

impl FinitePermutation {
    pub fn new(map: Vec<usize>) -> Result<FinitePermutation, PeriodicError> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n || seen[v] {
                return Err(PeriodicError::NotABijection);
            }
            seen[v] = true;
        }
        Ok(FinitePermutation { map })
    }

    pub fn identity(n: usize) -> FinitePermutation {
        FinitePermutation {
            map: (0..n).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn commutes_with(&self, other: &FinitePermutation) -> bool {
        self.size() == other.size()
            && (0..self.size()).all(|i| self.apply(other.apply(i)) == other.apply(self.apply(i)))
    }

    pub fn is_involution(&self) -> bool {
        (0..self.size()).all(|i| self.apply(self.apply(i)) == i)
    }
}

/// Outcome of the involution-orbit check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvolutionVerdict {
    /// Hypotheses hold and g(θ) avoids the forward f-orbit of θ for every
    /// eligible θ.
    ConclusionHolds,
    HypothesisFails(Hypothesis),
    /// Would falsify the underlying fact; must never occur.
    CounterexampleFound { theta: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    Commuting,
    Involution,
    NontrivialG,
    MovedPeriodicPointExists,
}

/// For commuting f, g with g² = id, g ≠ id, and some θ of exact period
/// dividing p (but not 1) moved by g: check that g(θ) never lands on the
/// f-orbit {θ, f(θ), ..., f^{p-1}(θ)} for any such θ.
pub fn involution_orbit_check(
    f: &FinitePermutation,
    g: &FinitePermutation,
    p: u64,
) -> Result<InvolutionVerdict, PeriodicError> {
    if f.size() != g.size() {
        return Err(PeriodicError::SizeMismatch);
    }
    if p == 2 || !is_prime(p) {
        return Err(PeriodicError::NotOddPrime(p));
    }
    if !f.commutes_with(g) {
        return Ok(InvolutionVerdict::HypothesisFails(Hypothesis::Commuting));
    }
    if !g.is_involution() {
        return Ok(InvolutionVerdict::HypothesisFails(Hypothesis::Involution));
    }
    if g.is_identity() {
        return Ok(InvolutionVerdict::HypothesisFails(Hypothesis::NontrivialG));
    }
    let n = f.size();
    let mut found_eligible = false;
    for theta in 0..n {
        // θ ∈ Per^p(f) \ Per^1(f), moved by g
        if f.apply(theta) == theta {
            continue;
        }
        let mut x = theta;
        for _ in 0..p {
            x = f.apply(x);
        }
        if x != theta {
            continue;
        }
        if g.apply(theta) == theta {
            continue;
        }
        found_eligible = true;
        // conclusion: g(θ) not in {f^k(θ) : k = 0..p-1}
        let target = g.apply(theta);
        let mut orbit_point = theta;
        for _ in 0..p {
            if orbit_point == target {
                return Ok(InvolutionVerdict::CounterexampleFound { theta });
            }
            orbit_point = f.apply(orbit_point);
        }
    }
    if !found_eligible {
        return Ok(InvolutionVerdict::HypothesisFails(
            Hypothesis::MovedPeriodicPointExists,
        ));
    }
    Ok(InvolutionVerdict::ConclusionHolds)
}
