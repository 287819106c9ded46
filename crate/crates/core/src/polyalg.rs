//! Integer polynomial algebra: irreducibility over ℚ for degree <= 4,
//! signatures via Sturm sequences, exact unit-circle root detection,
//! discriminants, resultants, and cyclotomic polynomials.
//!
//! Sturm chains are kept over ℤ with primitive-part normalization at every
//! step; signs are corrected for the pseudo-remainder multiplier so the
//! classical variation count stays valid. Resultants run a pseudo-remainder
//! sequence with content extraction and assemble the exact value from the
//! standard transformation rules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    ZeroPolynomial,
    NonMonic,
    DegreeOutOfRange(String),
    ZeroConstantTerm,
    NotSquarefree,
    UnsupportedCyclotomicOrder(u32),
    Parse(String),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::ZeroPolynomial => write!(f, "zero polynomial not allowed"),
            PolyError::NonMonic => write!(f, "polynomial must be monic"),
            PolyError::DegreeOutOfRange(s) => write!(f, "degree out of range: {}", s),
            PolyError::ZeroConstantTerm => write!(f, "constant term must be nonzero"),
            PolyError::NotSquarefree => write!(f, "polynomial must be squarefree"),
            PolyError::UnsupportedCyclotomicOrder(m) => {
                write!(f, "cyclotomic order {} not supported", m)
            }
            PolyError::Parse(s) => write!(f, "polynomial parse error: {}", s),
        }
    }
}

impl std::error::Error for PolyError {}

/// Integer-coefficient polynomial in canonical form: coefficients indexed by
/// power, no trailing zeros, the zero polynomial is the empty sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> IntPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Coefficients given highest degree first, as in `1, -5, -1` for x²-5x-1.
    pub fn from_i64_desc(desc: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(desc.iter().rev().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> IntPoly {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> IntPoly {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> IntPoly {
        IntPoly::from_coeffs(vec![c])
    }

    pub fn x() -> IntPoly {
        IntPoly::from_coeffs(vec![BigInt::zero(), BigInt::one()])
    }

    /// x^k - 1
    pub fn x_pow_minus_one(k: usize) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[0] = -BigInt::one();
        coeffs[k] = BigInt::one();
        IntPoly::from_coeffs(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn has_zero_constant_term(&self) -> bool {
        self.coeffs.first().map_or(true, |c| c.is_zero())
    }

    /// Coefficient of x^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        IntPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        IntPoly::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        IntPoly::from_coeffs(coeffs)
    }

    /// x^deg * p(1/x): the coefficient sequence reversed.
    pub fn reversal(&self) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        IntPoly::from_coeffs(coeffs)
    }

    /// gcd of the coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Divide out the (positive) content; keeps the leading sign.
    pub fn primitive_part(&self) -> IntPoly {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Pseudo-remainder: returns (r, t) with lc(d)^t * self = q*d + r and
    /// deg r < deg d.
    pub fn pseudo_rem(&self, d: &IntPoly) -> (IntPoly, u32) {
        let dd = d.degree().expect("divisor must be nonzero");
        let lc = d.leading().unwrap().clone();
        let mut r = self.clone();
        let mut t = 0u32;
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let shift = dr - dd;
            let lead = r.leading().unwrap().clone();
            // r = lc*r - lead * x^shift * d
            let mut new_coeffs = vec![BigInt::zero(); dr + 1];
            for (i, c) in r.coeffs.iter().enumerate() {
                new_coeffs[i] = c * &lc;
            }
            for (i, c) in d.coeffs.iter().enumerate() {
                new_coeffs[i + shift] -= c * &lead;
            }
            r = IntPoly::from_coeffs(new_coeffs);
            t += 1;
        }
        (r, t)
    }

    /// Exact division: Some(q) with self = q * d, None if the division does
    /// not come out exactly over ℤ.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let dd = d.degree().unwrap();
        let sd = self.degree().unwrap();
        if sd < dd {
            return None;
        }
        let lc = d.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); sd - dd + 1];
        for k in (0..q.len()).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            q[k] = qk.clone();
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[k + i] -= c * &qk;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::from_coeffs(q))
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return normalize_sign(b);
        }
        if b.is_zero() {
            return normalize_sign(a);
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (r, _) = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        normalize_sign(a)
    }

    /// p divided by gcd(p, p'); multiplicities collapse to one.
    pub fn squarefree_part(&self) -> IntPoly {
        if self.is_zero() || self.degree() == Some(0) {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        self.div_exact(&g)
            .expect("gcd divides the polynomial exactly")
    }

    /// Parse either `x^4+2x^3-2x+1` style ASCII or a highest-degree-first
    /// coefficient list `1,2,0,-2,1`.
    pub fn parse(input: &str) -> Result<IntPoly, PolyError> {
        let s = input.trim();
        if s.is_empty() {
            return Err(PolyError::Parse("empty input".into()));
        }
        if s.contains(',') {
            let coeffs: Result<Vec<BigInt>, _> = s
                .split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<BigInt>()
                        .map_err(|_| PolyError::Parse(format!("bad coefficient `{}`", tok.trim())))
                })
                .collect();
            let mut coeffs = coeffs?;
            coeffs.reverse();
            return Ok(IntPoly::from_coeffs(coeffs));
        }
        parse_poly_expr(s)
    }
}

fn normalize_sign(p: IntPoly) -> IntPoly {
    match p.leading() {
        Some(lc) if lc.is_negative() => p.neg(),
        _ => p,
    }
}

fn parse_poly_expr(s: &str) -> Result<IntPoly, PolyError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(PolyError::Parse("empty input".into()));
    }
    // split into signed terms
    let mut terms: Vec<(i8, String)> = Vec::new();
    let mut sign = 1i8;
    let mut cur = String::new();
    let mut chars = compact.chars().peekable();
    if let Some(&c) = chars.peek() {
        if c == '+' || c == '-' {
            sign = if c == '-' { -1 } else { 1 };
            chars.next();
        }
    }
    for c in chars {
        if c == '+' || c == '-' {
            if cur.is_empty() {
                return Err(PolyError::Parse("dangling sign".into()));
            }
            terms.push((sign, std::mem::take(&mut cur)));
            sign = if c == '-' { -1 } else { 1 };
        } else {
            cur.push(c);
        }
    }
    if cur.is_empty() {
        return Err(PolyError::Parse("dangling sign".into()));
    }
    terms.push((sign, cur));

    let mut acc = IntPoly::zero();
    for (sign, term) in terms {
        let (coeff, power) = parse_term(&term)?;
        let coeff = if sign < 0 { -coeff } else { coeff };
        let mut coeffs = vec![BigInt::zero(); power + 1];
        coeffs[power] = coeff;
        acc = acc.add(&IntPoly::from_coeffs(coeffs));
    }
    Ok(acc)
}

/// One term like `2x^3`, `x`, `x^2`, `7`, `3*x^2`.
fn parse_term(term: &str) -> Result<(BigInt, usize), PolyError> {
    let bad = || PolyError::Parse(format!("bad term `{}`", term));
    match term.find('x') {
        None => {
            let c: BigInt = term.parse().map_err(|_| bad())?;
            Ok((c, 0))
        }
        Some(pos) => {
            let coeff_part = term[..pos].trim_end_matches('*');
            let coeff: BigInt = if coeff_part.is_empty() {
                BigInt::one()
            } else {
                coeff_part.parse().map_err(|_| bad())?
            };
            let rest = &term[pos + 1..];
            let power = if rest.is_empty() {
                1
            } else if let Some(exp) = rest.strip_prefix('^') {
                exp.parse::<usize>().map_err(|_| bad())?
            } else {
                return Err(bad());
            };
            Ok((coeff, power))
        }
    }
}

impl fmt::Display for IntPoly {
    /// Renders the `x^2-5x-1` form; re-parseable by `IntPoly::parse`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            match k {
                0 => write!(f, "{}", mag)?,
                1 => {
                    if mag.is_one() {
                        write!(f, "x")?;
                    } else {
                        write!(f, "{}x", mag)?;
                    }
                }
                _ => {
                    if mag.is_one() {
                        write!(f, "x^{}", k)?;
                    } else {
                        write!(f, "{}x^{}", mag, k)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Root signature of a squarefree polynomial: `r1` real roots and `r2`
/// complex-conjugate pairs, `r1 + 2 r2 = degree`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub r1: usize,
    pub r2: usize,
}

impl Signature {
    /// Unit rank r1 + r2 - 1 of the corresponding number field.
    pub fn unit_rank(&self) -> usize {
        self.r1 + self.r2 - 1
    }
}

/// Interval endpoint for Sturm counting.
#[derive(Debug, Clone, PartialEq)]
pub enum Bound {
    NegInf,
    Val(BigRational),
    PosInf,
}

/// Exact number of distinct real roots of a squarefree `p` in `(lo, hi]`.
pub fn real_root_count(p: &IntPoly, lo: &Bound, hi: &Bound) -> Result<usize, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(0);
    }
    if p.gcd(&p.derivative()).degree() != Some(0) {
        return Err(PolyError::NotSquarefree);
    }
    let chain = sturm_chain(p);
    let va = variations(&chain, lo);
    let vb = variations(&chain, hi);
    Ok(va.saturating_sub(vb))
}

/// Signature (r1, r2) of a squarefree polynomial via Sturm counting over all
/// of ℝ.
pub fn signature(p: &IntPoly) -> Result<Signature, PolyError> {
    let deg = p.degree().ok_or(PolyError::ZeroPolynomial)?;
    let r1 = real_root_count(p, &Bound::NegInf, &Bound::PosInf)?;
    debug_assert!((deg - r1) % 2 == 0);
    Ok(Signature {
        r1,
        r2: (deg - r1) / 2,
    })
}

fn sturm_chain(p: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![p.primitive_part(), p.derivative().primitive_part()];
    loop {
        let k = chain.len();
        if chain[k - 1].is_zero() || chain[k - 1].degree() == Some(0) {
            break;
        }
        let (r, t) = chain[k - 2].pseudo_rem(&chain[k - 1]);
        if r.is_zero() {
            break;
        }
        // true remainder is r / lc^t; negate and fix the multiplier's sign so
        // the chain keeps the Sturm sign property
        let lc_negative = chain[k - 1].leading().unwrap().is_negative();
        let flip = lc_negative && t % 2 == 1;
        let next = if flip { r } else { r.neg() };
        chain.push(next.primitive_part());
    }
    chain
}

fn sign_at(p: &IntPoly, bound: &Bound) -> i8 {
    match p.degree() {
        None => 0,
        Some(deg) => match bound {
            Bound::NegInf => {
                let s = if p.leading().unwrap().is_negative() {
                    -1
                } else {
                    1
                };
                if deg % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
            Bound::PosInf => {
                if p.leading().unwrap().is_negative() {
                    -1
                } else {
                    1
                }
            }
            Bound::Val(x) => {
                let v = p.eval_rational(x);
                if v.is_zero() {
                    0
                } else if v.is_negative() {
                    -1
                } else {
                    1
                }
            }
        },
    }
}

fn variations(chain: &[IntPoly], bound: &Bound) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in chain {
        let s = sign_at(p, bound);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Irreducibility over ℚ for monic integer polynomials of degree 1..=4 with
/// nonzero constant term.
///
/// Rational roots are checked over the divisors of the constant term; for
/// degree 4 the remaining monic quadratic × quadratic splits are ruled out
/// by enumerating divisor pairs of the constant term and solving the
/// coefficient equations (Gauss's lemma reduces ℚ-factorization to ℤ).
pub fn is_irreducible(p: &IntPoly) -> Result<bool, PolyError> {
    let deg = p.degree().ok_or(PolyError::ZeroPolynomial)?;
    if !p.is_monic() {
        return Err(PolyError::NonMonic);
    }
    if deg == 0 || deg > 4 {
        return Err(PolyError::DegreeOutOfRange(format!(
            "irreducibility test supports degree 1..=4, got {}",
            deg
        )));
    }
    if p.coeff(0).is_zero() {
        return Err(PolyError::ZeroConstantTerm);
    }
    if deg == 1 {
        return Ok(true);
    }
    if has_integer_root(p) {
        return Ok(false);
    }
    if deg < 4 {
        return Ok(true);
    }
    // degree 4: look for p = (x^2 + a x + b)(x^2 + c x + d) over ℤ
    let c3 = p.coeff(3);
    let c2 = p.coeff(2);
    let c1 = p.coeff(1);
    let e = p.coeff(0);
    for b in divisors_signed(&e) {
        let d = &e / &b;
        // a + c = c3, b + d + a c = c2, a d + b c = c1
        let s = &c3;
        let target_ac = &c2 - &b - &d;
        if b != d {
            // a (d - b) = c1 - b s
            let num = &c1 - &b * s;
            let den = &d - &b;
            let (a, r) = num.div_rem(&den);
            if !r.is_zero() {
                continue;
            }
            let c = s - &a;
            if &a * &c == target_ac {
                return Ok(false);
            }
        } else {
            // b == d forces a d + b c = b (a + c) = b s
            if &b * s != c1 {
                continue;
            }
            // integers a, c with a + c = s, a c = target_ac
            let disc = s * s - BigInt::from(4) * &target_ac;
            if disc.is_negative() {
                continue;
            }
            let root = disc.sqrt();
            if &root * &root != disc {
                continue;
            }
            if ((s + &root) % BigInt::from(2)).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn has_integer_root(p: &IntPoly) -> bool {
    let e = p.coeff(0);
    if e.is_zero() {
        return true;
    }
    for d in divisors_signed(&e) {
        if p.eval_int(&d).is_zero() {
            return true;
        }
    }
    false
}

/// All divisors of |e|, both signs, e != 0.
fn divisors_signed(e: &BigInt) -> Vec<BigInt> {
    let n = e.abs();
    let mut divs = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            divs.push(d.clone());
            divs.push(-d.clone());
            if q != d {
                divs.push(q.clone());
                divs.push(-q);
            }
        }
        d += 1;
    }
    divs
}

/// True iff `p` has a complex root of modulus exactly one. Fully exact:
/// candidate unit-circle roots are common roots of `p` and its reversal;
/// after removing ±1, the surviving self-reciprocal part is transformed by
/// y = x + 1/x and its real roots are counted in (-2, 2) by Sturm.
pub fn has_unimodular_root(p: &IntPoly) -> Result<bool, PolyError> {
    let deg = p.degree().ok_or(PolyError::ZeroPolynomial)?;
    if deg < 1 {
        return Ok(false);
    }
    if p.coeff(0).is_zero() {
        return Err(PolyError::ZeroConstantTerm);
    }
    let q = p.squarefree_part();
    if q.eval_int(&BigInt::one()).is_zero() || q.eval_int(&BigInt::from(-1)).is_zero() {
        return Ok(true);
    }
    let g = q.gcd(&q.reversal());
    let gd = g.degree().unwrap();
    if gd == 0 {
        return Ok(false);
    }
    // g is squarefree, closed under x -> 1/x, and has no root at ±1, so it is
    // palindromic of even degree
    debug_assert!(gd % 2 == 0);
    debug_assert_eq!(g, g.reversal());
    let m = gd / 2;
    // g(x) / x^m = c_m + sum_k c_{m+k} (x^k + x^{-k}); substitute
    // x^k + x^{-k} = B_k(y) with B_0 = 2, B_1 = y, B_k = y B_{k-1} - B_{k-2}
    let mut b_prev = IntPoly::constant(BigInt::from(2));
    let mut b_cur = IntPoly::x();
    let mut transformed = IntPoly::constant(g.coeff(m));
    for k in 1..=m {
        transformed = transformed.add(&b_cur.scale(&g.coeff(m + k)));
        let next = IntPoly::x().mul(&b_cur).sub(&b_prev);
        b_prev = b_cur;
        b_cur = next;
    }
    // conjugate unit-circle pairs of g correspond exactly to real roots of
    // the transform in the open interval (-2, 2); y = ±2 cannot occur since
    // ±1 are not roots of g
    let two = BigRational::from_integer(BigInt::from(2));
    let count = real_root_count(&transformed, &Bound::Val(-two.clone()), &Bound::Val(two))?;
    Ok(count > 0)
}

/// Exact resultant of two nonzero integer polynomials via a pseudo-remainder
/// sequence with content extraction.
pub fn resultant(p: &IntPoly, q: &IntPoly) -> Result<BigInt, PolyError> {
    if p.is_zero() || q.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let r = resultant_rec(p, q);
    debug_assert!(r.is_integer());
    Ok(r.to_integer())
}

fn resultant_rec(a: &IntPoly, b: &IntPoly) -> BigRational {
    let da = a.degree().unwrap();
    let db = b.degree().unwrap();
    if da < db {
        let sign = if da * db % 2 == 1 { -1 } else { 1 };
        return resultant_rec(b, a) * BigRational::from_integer(BigInt::from(sign));
    }
    if db == 0 {
        // res(a, c) = c^{deg a}
        return BigRational::from_integer(pow_bigint(b.leading().unwrap(), da as u32));
    }
    let (r, t) = a.pseudo_rem(b);
    if r.is_zero() {
        return BigRational::zero();
    }
    let lc = b.leading().unwrap();
    let dr = r.degree().unwrap();
    // with lc^t a = q b + r: res(b, a) = lc^{da - dr - t db} res(b, r),
    // and res(a, b) = (-1)^{da db} res(b, a); extracting the content c of r
    // contributes c^{db}
    let content = r.content();
    let r_prim = r.primitive_part();
    let sign = if da * db % 2 == 1 { -1 } else { 1 };
    let e = da as i64 - dr as i64 - t as i64 * db as i64;
    let lc_pow = BigRational::from_integer(pow_bigint(lc, e.unsigned_abs() as u32));
    let mut factor =
        BigRational::from_integer(BigInt::from(sign) * pow_bigint(&content, db as u32));
    if e >= 0 {
        factor *= lc_pow;
    } else {
        factor /= lc_pow;
    }
    factor * resultant_rec(b, &r_prim)
}

fn pow_bigint(base: &BigInt, mut exp: u32) -> BigInt {
    let mut result = BigInt::one();
    let mut b = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            result *= &b;
        }
        exp >>= 1;
        if exp > 0 {
            b = &b * &b;
        }
    }
    result
}

/// Polynomial discriminant `(-1)^{d(d-1)/2} res(p, p') / lc(p)`, degree >= 2.
pub fn discriminant(p: &IntPoly) -> Result<BigInt, PolyError> {
    let deg = p.degree().ok_or(PolyError::ZeroPolynomial)?;
    if deg < 2 {
        return Err(PolyError::DegreeOutOfRange(format!(
            "discriminant needs degree >= 2, got {}",
            deg
        )));
    }
    let dp = p.derivative();
    let res = if dp.is_zero() {
        BigInt::zero()
    } else {
        resultant(p, &dp)?
    };
    let sign = if (deg * (deg - 1) / 2) % 2 == 1 {
        BigInt::from(-1)
    } else {
        BigInt::one()
    };
    let num = sign * res;
    let lc = p.leading().unwrap();
    debug_assert!((&num % lc).is_zero());
    Ok(num / lc)
}

/// Orders m with φ(m) <= 4, the candidate torsion orders for fields of
/// degree <= 4.
pub const SUPPORTED_CYCLOTOMIC_ORDERS: [u32; 9] = [1, 2, 3, 4, 5, 6, 8, 10, 12];

/// Cyclotomic polynomial Φ_m for the supported orders.
pub fn cyclotomic(m: u32) -> Result<IntPoly, PolyError> {
    if !SUPPORTED_CYCLOTOMIC_ORDERS.contains(&m) {
        return Err(PolyError::UnsupportedCyclotomicOrder(m));
    }
    Ok(cyclotomic_raw(m))
}

/// Φ_m for any m >= 1, via Φ_m = (x^m - 1) / Π_{d|m, d<m} Φ_d.
pub(crate) fn cyclotomic_raw(m: u32) -> IntPoly {
    let mut num = IntPoly::x_pow_minus_one(m as usize);
    for d in 1..m {
        if m % d == 0 {
            num = num
                .div_exact(&cyclotomic_raw(d))
                .expect("cyclotomic division is exact");
        }
    }
    num
}

pub(crate) fn euler_phi(m: u32) -> u32 {
    let mut result = m;
    let mut n = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// If `p` is a product of cyclotomic polynomials, the list of their orders
/// (with multiplicity); None otherwise. `p` must be monic.
pub(crate) fn cyclotomic_factor_orders(p: &IntPoly) -> Option<Vec<u32>> {
    let deg = p.degree()?;
    if !p.is_monic() {
        return None;
    }
    let mut rest = p.clone();
    let mut orders = Vec::new();
    // φ(m) <= 8 forces m <= 30
    for m in 1..=30u32 {
        if euler_phi(m) as usize > deg {
            continue;
        }
        let phi_m = cyclotomic_raw(m);
        while let Some(q) = rest.div_exact(&phi_m) {
            orders.push(m);
            rest = q;
            if rest.degree() == Some(0) {
                break;
            }
        }
    }
    if rest == IntPoly::one() {
        Some(orders)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(desc: &[i64]) -> IntPoly {
        IntPoly::from_i64_desc(desc)
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn canonical_form_and_accessors() {
        let p = IntPoly::from_coeffs(vec![
            BigInt::from(1),
            BigInt::from(2),
            BigInt::zero(),
            BigInt::zero(),
        ]);
        assert_eq!(p.degree(), Some(1));
        assert!(IntPoly::zero().degree().is_none());
        assert_eq!(poly(&[1, -5, -1]).coeff(2), BigInt::one());
        assert_eq!(poly(&[1, -5, -1]).coeff(7), BigInt::zero());
    }

    #[test]
    fn display_and_parse_roundtrip() {
        for desc in [
            vec![1, -5, -1],
            vec![1, 2, 0, -2, 1],
            vec![1, 0, 1],
            vec![-2, 0, 3, 7],
            vec![1, -1],
            vec![5],
        ] {
            let p = poly(&desc);
            let shown = p.to_string();
            assert_eq!(IntPoly::parse(&shown).unwrap(), p, "roundtrip {}", shown);
        }
        assert_eq!(
            IntPoly::parse("x^4+2x^3-2x+1").unwrap(),
            poly(&[1, 2, 0, -2, 1])
        );
        assert_eq!(IntPoly::parse("1,2,0,-2,1").unwrap(), poly(&[1, 2, 0, -2, 1]));
        assert_eq!(IntPoly::parse("3*x^2 - 1").unwrap(), poly(&[3, 0, -1]));
        assert_eq!(IntPoly::parse("x").unwrap(), poly(&[1, 0]));
        assert!(IntPoly::parse("x^").is_err());
        assert!(IntPoly::parse("2y+1").is_err());
        assert!(IntPoly::parse("+").is_err());
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&poly(&[1, -1, -1])).unwrap());
        assert!(!is_irreducible(&poly(&[1, 0, -1])).unwrap()); // (x-1)(x+1)
        assert!(is_irreducible(&poly(&[1, 2, 0, -2, 1])).unwrap());
        assert!(is_irreducible(&poly(&[1, -5, -1])).unwrap());
        assert!(is_irreducible(&poly(&[1, -1, 0, -1])).unwrap());
        // (x^2+x+1)(x^2-x+1) = x^4+x^2+1
        assert!(!is_irreducible(&poly(&[1, 0, 1, 0, 1])).unwrap());
        // (x^2-2)(x^2-3) = x^4-5x^2+6
        assert!(!is_irreducible(&poly(&[1, 0, -5, 0, 6])).unwrap());
        // degree 1 always irreducible
        assert!(is_irreducible(&poly(&[1, 7])).unwrap());
        assert_eq!(is_irreducible(&poly(&[2, 1, 1])), Err(PolyError::NonMonic));
        assert!(matches!(
            is_irreducible(&poly(&[1, 0, 0, 0, 0, 1])),
            Err(PolyError::DegreeOutOfRange(_))
        ));
    }

    #[test]
    fn signature_examples() {
        assert_eq!(
            signature(&poly(&[1, -5, -1])).unwrap(),
            Signature { r1: 2, r2: 0 }
        );
        assert_eq!(
            signature(&poly(&[1, -1, 0, -1])).unwrap(),
            Signature { r1: 1, r2: 1 }
        );
        assert_eq!(
            signature(&poly(&[1, 2, 0, -2, 1])).unwrap(),
            Signature { r1: 0, r2: 2 }
        );
        assert_eq!(
            signature(&poly(&[1, 6, 10, 3, 1])).unwrap(),
            Signature { r1: 0, r2: 2 }
        );
        assert_eq!(signature(&poly(&[1, 0, -2])).unwrap().r1, 2);
        assert_eq!(
            signature(&poly(&[1, 0, 2])).unwrap(),
            Signature { r1: 0, r2: 1 }
        );
    }

    #[test]
    fn signature_degree_identity_on_random_squarefree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let mut checked = 0;
        while checked < 150 {
            let deg = rng.gen_range(1..=5);
            let p = random_poly(&mut rng, deg, 8);
            let Ok(sig) = signature(&p) else { continue };
            assert_eq!(sig.r1 + 2 * sig.r2, deg, "p = {}", p);
            checked += 1;
        }
    }

    #[test]
    fn signature_rejects_non_squarefree() {
        // (x-1)^2
        assert_eq!(signature(&poly(&[1, -2, 1])), Err(PolyError::NotSquarefree));
    }

    #[test]
    fn real_root_count_examples() {
        let p = poly(&[1, 0, -2]); // x^2 - 2
        assert_eq!(
            real_root_count(&p, &Bound::Val(rat(0)), &Bound::Val(rat(2))).unwrap(),
            1
        );
        let q = poly(&[1, 0, 1]); // x^2 + 1
        assert_eq!(real_root_count(&q, &Bound::NegInf, &Bound::PosInf).unwrap(), 0);
        let r = poly(&[1, -5, -1]);
        assert_eq!(real_root_count(&r, &Bound::NegInf, &Bound::PosInf).unwrap(), 2);
        // half-open convention: root at the right endpoint is counted
        let s = poly(&[1, -1]); // x - 1
        assert_eq!(
            real_root_count(&s, &Bound::Val(rat(0)), &Bound::Val(rat(1))).unwrap(),
            1
        );
        assert_eq!(
            real_root_count(&s, &Bound::Val(rat(1)), &Bound::Val(rat(2))).unwrap(),
            0
        );
    }

    #[test]
    fn unimodular_root_examples() {
        assert!(has_unimodular_root(&poly(&[1, 0, 1])).unwrap()); // ±i
        assert!(!has_unimodular_root(&poly(&[1, -5, -1])).unwrap());
        // self-reciprocal with transform root y = 3 outside [-2, 2]
        assert!(!has_unimodular_root(&poly(&[1, -3, 1])).unwrap());
        assert!(has_unimodular_root(&poly(&[1, -1, 1])).unwrap()); // Φ_6
        assert!(has_unimodular_root(&poly(&[1, 1, 1])).unwrap()); // Φ_3
        assert!(has_unimodular_root(&poly(&[1, 0, -1])).unwrap()); // roots ±1
        // Salem-type quartic: two real reciprocal roots and a unit-circle pair
        assert!(has_unimodular_root(&poly(&[1, -1, -1, -1, 1])).unwrap());
        // bundled quartics are hyperbolic
        assert!(!has_unimodular_root(&poly(&[1, 2, 0, -2, 1])).unwrap());
        assert!(!has_unimodular_root(&poly(&[1, 6, 10, 3, 1])).unwrap());
        assert_eq!(
            has_unimodular_root(&poly(&[1, 1, 0])),
            Err(PolyError::ZeroConstantTerm)
        );
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(
            resultant(&poly(&[1, -1, -1]), &poly(&[1, -2])).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            resultant(&poly(&[1, -5, -1]), &poly(&[1, -1])).unwrap(),
            BigInt::from(-5)
        );
        assert_eq!(
            resultant(&poly(&[1, -1]), &poly(&[1, -1])).unwrap(),
            BigInt::zero()
        );
        assert!(resultant(&IntPoly::zero(), &poly(&[1, -1])).is_err());
    }

    #[test]
    fn resultant_matches_sylvester_determinant() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..400 {
            let dp = rng.gen_range(1..=5);
            let dq = rng.gen_range(1..=5);
            let p = random_poly(&mut rng, dp, 9);
            let q = random_poly(&mut rng, dq, 9);
            assert_eq!(
                resultant(&p, &q).unwrap(),
                sylvester_resultant(&p, &q),
                "p={} q={}",
                p,
                q
            );
        }
    }

    // independent oracle: resultant as the Sylvester matrix determinant,
    // expanded by cofactors over bigints
    fn sylvester_resultant(p: &IntPoly, q: &IntPoly) -> BigInt {
        let m = p.degree().unwrap();
        let n = q.degree().unwrap();
        if m == 0 && n == 0 {
            return BigInt::one();
        }
        let size = m + n;
        let mut rows = vec![vec![BigInt::zero(); size]; size];
        for i in 0..n {
            for k in 0..=m {
                rows[i][i + k] = p.coeff(m - k);
            }
        }
        for i in 0..m {
            for k in 0..=n {
                rows[n + i][i + k] = q.coeff(n - k);
            }
        }
        cofactor_det(&rows)
    }

    fn cofactor_det(rows: &[Vec<BigInt>]) -> BigInt {
        let n = rows.len();
        if n == 1 {
            return rows[0][0].clone();
        }
        let mut acc = BigInt::zero();
        for j in 0..n {
            if rows[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<BigInt>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(k, _)| *k != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = &rows[0][j] * cofactor_det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn random_poly(rng: &mut rand_chacha::ChaCha8Rng, deg: usize, bound: i64) -> IntPoly {
        use rand::Rng;
        loop {
            let mut coeffs: Vec<BigInt> =
                (0..=deg).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
            if coeffs[deg].is_zero() {
                coeffs[deg] = BigInt::one();
            }
            let p = IntPoly::from_coeffs(coeffs);
            if !p.is_zero() {
                return p;
            }
        }
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&poly(&[1, -5, -1])).unwrap(), BigInt::from(29));
        assert_eq!(discriminant(&poly(&[1, -8, -1])).unwrap(), BigInt::from(68));
        assert_eq!(
            discriminant(&poly(&[1, -1, 0, -1])).unwrap(),
            BigInt::from(-31)
        );
        assert_eq!(
            discriminant(&poly(&[1, 4, 6, 1])).unwrap(),
            BigInt::from(-139)
        );
        assert!(discriminant(&poly(&[1, -1])).is_err());
    }

    #[test]
    fn discriminant_zero_iff_gcd_nonconstant() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for _ in 0..200 {
            let deg = rng.gen_range(2..=4);
            let p = random_poly(&mut rng, deg, 6);
            let disc = discriminant(&p).unwrap();
            let g = p.gcd(&p.derivative());
            assert_eq!(disc.is_zero(), g.degree() != Some(0), "p={}", p);
        }
        // squares are always detected
        let sq = poly(&[1, -2]).mul(&poly(&[1, -2]));
        assert!(discriminant(&sq).unwrap().is_zero());
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1).unwrap(), poly(&[1, -1]));
        assert_eq!(cyclotomic(4).unwrap(), poly(&[1, 0, 1]));
        assert_eq!(cyclotomic(12).unwrap(), poly(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(2).unwrap(), poly(&[1, 1]));
        assert_eq!(cyclotomic(6).unwrap(), poly(&[1, -1, 1]));
        assert_eq!(
            cyclotomic(7),
            Err(PolyError::UnsupportedCyclotomicOrder(7))
        );
        assert_eq!(
            cyclotomic(9),
            Err(PolyError::UnsupportedCyclotomicOrder(9))
        );
    }

    #[test]
    fn cyclotomic_product_identity_up_to_12() {
        for k in 1..=12u32 {
            let mut prod = IntPoly::one();
            for d in 1..=k {
                if k % d == 0 {
                    prod = prod.mul(&cyclotomic_raw(d));
                }
            }
            assert_eq!(prod, IntPoly::x_pow_minus_one(k as usize), "k = {}", k);
        }
    }

    #[test]
    fn cyclotomic_factor_detection() {
        let p = cyclotomic_raw(12).mul(&cyclotomic_raw(1));
        let mut orders = cyclotomic_factor_orders(&p).unwrap();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 12]);
        assert!(cyclotomic_factor_orders(&poly(&[1, -5, -1])).is_none());
        assert!(cyclotomic_factor_orders(&poly(&[1, -1, -1])).is_none());
    }

    #[test]
    fn gcd_and_squarefree_part() {
        let p = poly(&[1, -1]).mul(&poly(&[1, -1])).mul(&poly(&[1, 1]));
        assert_eq!(p.squarefree_part(), poly(&[1, -1]).mul(&poly(&[1, 1])));
        let g = poly(&[2, -2]).gcd(&poly(&[4, 4]));
        // primitive gcd of 2(x-1) and 4(x+1) is 1
        assert_eq!(g, IntPoly::one());
        let h = poly(&[1, -1, -1]).mul(&poly(&[1, 3]));
        assert_eq!(h.gcd(&poly(&[1, -1, -1])), poly(&[1, -1, -1]));
    }
}
