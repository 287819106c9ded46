//! Arbitrary-precision binary floating point, used only as a numeric search
//! guide. A value is `m * 2^e` with a bigint mantissa; operations round the
//! mantissa to a requested number of bits. Conversions back to exact
//! rationals are lossless, so anything found here can be verified exactly.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigFloat {
    m: BigInt,
    e: i64,
}

impl BigFloat {
    pub fn zero() -> BigFloat {
        BigFloat {
            m: BigInt::zero(),
            e: 0,
        }
    }

    pub fn one() -> BigFloat {
        BigFloat {
            m: BigInt::one(),
            e: 0,
        }
    }

    pub fn from_bigint(x: &BigInt) -> BigFloat {
        BigFloat { m: x.clone(), e: 0 }.trimmed()
    }

    pub fn from_i64(x: i64) -> BigFloat {
        BigFloat::from_bigint(&BigInt::from(x))
    }

    /// Round a rational to `prec` significant bits.
    pub fn from_rational(x: &BigRational, prec: u32) -> BigFloat {
        if x.is_zero() {
            return BigFloat::zero();
        }
        let num = x.numer();
        let den = x.denom();
        let shift = prec as i64 + 2 + den.bits() as i64 - num.bits() as i64;
        let shift = shift.max(0) as u64;
        let scaled = num << shift;
        let m = rounded_div(&scaled, den);
        BigFloat {
            m,
            e: -(shift as i64),
        }
        .rounded(prec)
    }

    /// Exact value as a rational; never loses information.
    pub fn to_rational(&self) -> BigRational {
        if self.e >= 0 {
            BigRational::from_integer(&self.m << self.e as u64)
        } else {
            BigRational::new(self.m.clone(), BigInt::one() << (-self.e) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.m.bits() as i64;
        if bits > 900 {
            let drop = bits - 64;
            let m = (&self.m >> drop as u64).to_f64().unwrap_or(0.0);
            return m * 2f64.powi((self.e + drop) as i32);
        }
        self.m.to_f64().unwrap_or(0.0) * 2f64.powi(self.e as i32)
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    pub fn neg(&self) -> BigFloat {
        BigFloat {
            m: -&self.m,
            e: self.e,
        }
    }

    pub fn abs(&self) -> BigFloat {
        BigFloat {
            m: self.m.abs(),
            e: self.e,
        }
    }

    fn trimmed(mut self) -> BigFloat {
        if self.m.is_zero() {
            self.e = 0;
            return self;
        }
        let tz = self.m.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.m >>= tz;
            self.e += tz as i64;
        }
        self
    }

    fn rounded(mut self, prec: u32) -> BigFloat {
        let bits = self.m.bits();
        if bits > prec as u64 {
            let shift = bits - prec as u64;
            let half = BigInt::one() << (shift - 1);
            let neg = self.m.is_negative();
            let mag = BigInt::from(self.m.magnitude().clone());
            let mag = (mag + half) >> shift;
            self.m = if neg { -mag } else { mag };
            self.e += shift as i64;
        }
        self.trimmed()
    }

    /// log2 of the magnitude, within one unit; i64::MIN for zero.
    fn mag2(&self) -> i64 {
        if self.m.is_zero() {
            i64::MIN
        } else {
            self.m.bits() as i64 + self.e
        }
    }

    pub fn add(&self, other: &BigFloat, prec: u32) -> BigFloat {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (hi, lo) = if self.e >= other.e {
            (self, other)
        } else {
            (other, self)
        };
        // drop the smaller addend when it cannot influence the rounded result
        if lo.mag2() < hi.mag2() - prec as i64 - 4 {
            return hi.clone().rounded(prec);
        }
        let shift = (hi.e - lo.e) as u64;
        let m = (&hi.m << shift) + &lo.m;
        BigFloat { m, e: lo.e }.rounded(prec)
    }

    pub fn sub(&self, other: &BigFloat, prec: u32) -> BigFloat {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &BigFloat, prec: u32) -> BigFloat {
        BigFloat {
            m: &self.m * &other.m,
            e: self.e + other.e,
        }
        .rounded(prec)
    }

    pub fn div(&self, other: &BigFloat, prec: u32) -> BigFloat {
        assert!(!other.is_zero(), "bigfloat division by zero");
        if self.is_zero() {
            return BigFloat::zero();
        }
        let shift = (prec as i64 + 2 + other.m.bits() as i64 - self.m.bits() as i64).max(0) as u64;
        let scaled = &self.m << shift;
        let m = rounded_div(&scaled, &other.m);
        BigFloat {
            m,
            e: self.e - other.e - shift as i64,
        }
        .rounded(prec)
    }

    /// Square root of a nonnegative value, `prec` significant bits.
    pub fn sqrt(&self, prec: u32) -> BigFloat {
        assert!(!self.is_negative(), "bigfloat sqrt of negative value");
        if self.is_zero() {
            return BigFloat::zero();
        }
        let target = 2 * (prec as u64 + 2);
        let bits = self.m.bits();
        let mut shift = target.saturating_sub(bits);
        if (self.e - shift as i64) % 2 != 0 {
            shift += 1;
        }
        let scaled = &self.m << shift;
        BigFloat {
            m: scaled.sqrt(),
            e: (self.e - shift as i64) / 2,
        }
        .rounded(prec)
    }

    pub fn cmp(&self, other: &BigFloat) -> Ordering {
        let sa = sign_of(&self.m);
        let sb = sign_of(&other.m);
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let la = self.mag2();
        let lb = other.mag2();
        let mag_order = if (la - lb).abs() > 1 {
            la.cmp(&lb)
        } else {
            let d = self.e - other.e;
            if d >= 0 {
                BigInt::from(self.m.magnitude() << d as u64)
                    .magnitude()
                    .cmp(other.m.magnitude())
            } else {
                self.m
                    .magnitude()
                    .cmp(BigInt::from(other.m.magnitude() << (-d) as u64).magnitude())
            }
        };
        if sa > 0 {
            mag_order
        } else {
            mag_order.reverse()
        }
    }

    /// 2^k as a bigfloat.
    pub fn pow2(k: i64) -> BigFloat {
        BigFloat {
            m: BigInt::one(),
            e: k,
        }
    }
}

fn sign_of(x: &BigInt) -> i8 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

fn rounded_div(num: &BigInt, den: &BigInt) -> BigInt {
    let half = BigInt::from(den.magnitude() >> 1u8);
    let adj = if num.is_negative() { -half } else { half };
    (num + adj) / den
}

/// Complex number over bigfloats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Complex {
    pub fn zero() -> Complex {
        Complex {
            re: BigFloat::zero(),
            im: BigFloat::zero(),
        }
    }

    pub fn one() -> Complex {
        Complex {
            re: BigFloat::one(),
            im: BigFloat::zero(),
        }
    }

    pub fn real(x: BigFloat) -> Complex {
        Complex {
            re: x,
            im: BigFloat::zero(),
        }
    }

    pub fn new(re: BigFloat, im: BigFloat) -> Complex {
        Complex { re, im }
    }

    pub fn from_rationals(re: &BigRational, im: &BigRational, prec: u32) -> Complex {
        Complex {
            re: BigFloat::from_rational(re, prec),
            im: BigFloat::from_rational(im, prec),
        }
    }

    pub fn conj(&self) -> Complex {
        Complex {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn neg(&self) -> Complex {
        Complex {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn add(&self, other: &Complex, prec: u32) -> Complex {
        Complex {
            re: self.re.add(&other.re, prec),
            im: self.im.add(&other.im, prec),
        }
    }

    pub fn sub(&self, other: &Complex, prec: u32) -> Complex {
        Complex {
            re: self.re.sub(&other.re, prec),
            im: self.im.sub(&other.im, prec),
        }
    }

    pub fn mul(&self, other: &Complex, prec: u32) -> Complex {
        let ac = self.re.mul(&other.re, prec);
        let bd = self.im.mul(&other.im, prec);
        let ad = self.re.mul(&other.im, prec);
        let bc = self.im.mul(&other.re, prec);
        Complex {
            re: ac.sub(&bd, prec),
            im: ad.add(&bc, prec),
        }
    }

    pub fn div(&self, other: &Complex, prec: u32) -> Complex {
        let d = other.abs2(prec);
        let num = self.mul(&other.conj(), prec);
        Complex {
            re: num.re.div(&d, prec),
            im: num.im.div(&d, prec),
        }
    }

    /// |z|^2
    pub fn abs2(&self, prec: u32) -> BigFloat {
        self.re
            .mul(&self.re, prec)
            .add(&self.im.mul(&self.im, prec), prec)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

/// Real k-th root of a positive value by Newton iteration from an f64 seed.
pub fn nth_root(a: &BigFloat, k: u32, prec: u32) -> BigFloat {
    assert!(k >= 1);
    assert!(!a.is_negative() && !a.is_zero());
    if k == 1 {
        return a.clone();
    }
    let seed = a.to_f64().powf(1.0 / k as f64);
    let mut x = BigFloat::from_rational(
        &BigRational::from_float(seed).unwrap_or_else(|| BigRational::from_integer(1.into())),
        prec,
    );
    if x.is_zero() || x.is_negative() {
        x = BigFloat::one();
    }
    let kf = BigFloat::from_i64(k as i64);
    // quadratic convergence; the bound covers cold f64 seeds at high precision
    let iters = 8 + 2 * (64 - (prec as u64).leading_zeros());
    for _ in 0..iters {
        // x - (x^k - a) / (k x^{k-1})
        let mut xk1 = BigFloat::one();
        for _ in 0..k - 1 {
            xk1 = xk1.mul(&x, prec);
        }
        let xk = xk1.mul(&x, prec);
        let num = xk.sub(a, prec);
        let den = kf.mul(&xk1, prec);
        x = x.sub(&num.div(&den, prec), prec);
    }
    x
}

/// Solve a square complex linear system by Gaussian elimination with
/// partial pivoting. None when a pivot vanishes.
pub fn solve_complex_system(
    matrix: &[Vec<Complex>],
    rhs: &[Complex],
    prec: u32,
) -> Option<Vec<Complex>> {
    let n = matrix.len();
    assert_eq!(rhs.len(), n);
    let mut a: Vec<Vec<Complex>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let mut best = col;
        let mut best_mag = a[col][col].abs2(prec);
        for r in col + 1..n {
            let mag = a[r][col].abs2(prec);
            if mag.cmp(&best_mag) == Ordering::Greater {
                best = r;
                best_mag = mag;
            }
        }
        if best_mag.is_zero() {
            return None;
        }
        a.swap(col, best);
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = a[r][col].div(&a[col][col], prec);
            for j in col..=n {
                let d = f.mul(&a[col][j], prec);
                a[r][j] = a[r][j].sub(&d, prec);
            }
        }
    }
    Some(
        (0..n)
            .map(|i| a[i][n].div(&a[i][i], prec))
            .collect(),
    )
}

/// Horner evaluation of a polynomial with complex coefficients (ascending).
pub fn eval_complex_poly(coeffs: &[Complex], z: &Complex, prec: u32) -> Complex {
    let mut acc = Complex::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z, prec).add(c, prec);
    }
    acc
}

/// Simultaneous root iteration (Durand–Kerner) for a monic polynomial with
/// complex coefficients given in ascending order. Returns None when the
/// iteration fails to settle within the iteration budget; the caller then
/// retries at higher precision.
pub fn durand_kerner(
    coeffs: &[Complex],
    prec: u32,
    warm_start: Option<&[Complex]>,
) -> Option<Vec<Complex>> {
    let deg = coeffs.len() - 1;
    assert!(deg >= 1, "degree must be positive");
    // root bound: 1 + max |c_i|
    let mut bound = BigFloat::one();
    for c in &coeffs[..deg] {
        let mag = c.abs2(prec).sqrt(prec);
        if mag.cmp(&bound) == Ordering::Greater {
            bound = mag;
        }
    }
    let scale = bound.add(&BigFloat::one(), prec);

    let mut roots: Vec<Complex> = match warm_start {
        Some(w) if w.len() == deg => w.to_vec(),
        _ => {
            // spiral seeds: powers of 0.4 + 0.9i scaled by the root bound,
            // asymmetric about the real axis
            let base = Complex::new(
                BigFloat::from_rational(&BigRational::new(2.into(), 5.into()), prec),
                BigFloat::from_rational(&BigRational::new(9.into(), 10.into()), prec),
            );
            let mut seeds = Vec::with_capacity(deg);
            let mut cur = base.clone();
            for _ in 0..deg {
                seeds.push(Complex {
                    re: cur.re.mul(&scale, prec),
                    im: cur.im.mul(&scale, prec),
                });
                cur = cur.mul(&base, prec);
            }
            seeds
        }
    };

    let tol = scale
        .mul(&scale, prec)
        .mul(&BigFloat::pow2(-2 * (prec as i64 - 8)), prec);
    let max_iter = if warm_start.is_some() { 80 } else { 400 };

    for _ in 0..max_iter {
        let mut worst = BigFloat::zero();
        for i in 0..deg {
            let zi = roots[i].clone();
            let mut denom = Complex::one();
            for (j, zj) in roots.iter().enumerate() {
                if j != i {
                    denom = denom.mul(&zi.sub(zj, prec), prec);
                }
            }
            if denom.abs2(prec).is_zero() {
                // coincident iterates; nudge one and keep going
                roots[i] = zi.add(
                    &Complex::new(BigFloat::pow2(-(prec as i64) / 2), BigFloat::zero()),
                    prec,
                );
                worst = scale.clone();
                continue;
            }
            let val = eval_complex_poly(coeffs, &zi, prec);
            let delta = val.div(&denom, prec);
            roots[i] = zi.sub(&delta, prec);
            let d2 = delta.abs2(prec);
            if d2.cmp(&worst) == Ordering::Greater {
                worst = d2;
            }
        }
        if worst.cmp(&tol) != Ordering::Greater {
            return Some(roots);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn arithmetic_roundtrips_through_rationals() {
        let a = BigFloat::from_rational(&rat(355, 113), 128);
        let b = BigFloat::from_rational(&rat(-7, 3), 128);
        let sum = a.add(&b, 128).to_rational();
        let expect = rat(355, 113) + rat(-7, 3);
        let err = (sum - expect).abs();
        assert!(err < rat(1, 1 << 30));
        assert_eq!(
            BigFloat::from_i64(12).mul(&BigFloat::from_i64(-3), 64),
            BigFloat::from_i64(-36)
        );
    }

    #[test]
    fn sqrt_squares_back() {
        let x = BigFloat::from_i64(2);
        let r = x.sqrt(200);
        let sq = r.mul(&r, 200).to_rational();
        let err = (sq - rat(2, 1)).abs();
        assert!(err < BigRational::new(BigInt::one(), BigInt::one() << 150));
    }

    #[test]
    fn exact_comparisons() {
        let a = BigFloat::from_rational(&rat(1, 3), 100);
        let b = BigFloat::from_rational(&rat(1, 2), 100);
        assert_eq!(a.cmp(&b), Ordering::Less);
        assert_eq!(b.cmp(&a), Ordering::Greater);
        assert_eq!(a.cmp(&a), Ordering::Equal);
        assert_eq!(
            BigFloat::from_i64(-5).cmp(&BigFloat::from_i64(3)),
            Ordering::Less
        );
        // very different magnitudes never shift huge amounts
        let tiny = BigFloat::pow2(-100_000);
        let big = BigFloat::pow2(100_000);
        assert_eq!(tiny.cmp(&big), Ordering::Less);
        assert!(big.add(&tiny, 64).cmp(&big) == Ordering::Equal);
    }

    #[test]
    fn durand_kerner_finds_roots_of_x2_plus_1() {
        let coeffs = vec![Complex::one(), Complex::zero(), Complex::one()];
        let roots = durand_kerner(&coeffs, 128, None).expect("converges");
        for z in &roots {
            let val = eval_complex_poly(&coeffs, z, 128);
            let mag = val.abs2(128);
            assert!(mag.cmp(&BigFloat::pow2(-100)) == Ordering::Less);
        }
        // one root in each half plane
        let ups = roots.iter().filter(|z| !z.im.is_negative()).count();
        assert_eq!(ups, 1);
    }

    #[test]
    fn durand_kerner_warm_start_refines() {
        // x^2 - 5x - 1
        let coeffs: Vec<Complex> = [-1i64, -5, 1]
            .iter()
            .map(|&c| Complex::real(BigFloat::from_i64(c)))
            .collect();
        let rough = durand_kerner(&coeffs, 64, None).unwrap();
        let fine = durand_kerner(&coeffs, 256, Some(&rough)).unwrap();
        for z in &fine {
            let val = eval_complex_poly(&coeffs, z, 256);
            assert!(val.abs2(256).cmp(&BigFloat::pow2(-400)) == Ordering::Less);
        }
    }
}
