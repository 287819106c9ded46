//! Real quadratic fields: fundamental units by continued fractions, field
//! discriminants from polynomial discriminants, and synthesis of field data
//! records so quadratic inputs need no external table.
//!
//! The continued fraction of ω (ω = (1+√D)/2 for D odd, √(D/4) for D even)
//! is expanded with exact integer state (P + √D)/Q; the first repeat of
//! (P, Q) closes the period and the product of the step matrices over one
//! period yields the fundamental unit. Everything is exact integer
//! arithmetic; the only floor taken is the exact floor of a quadratic
//! irrational.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;

use super::{FieldData, FieldElement, FieldError};
use crate::intmat::QMatrix;
use crate::polyalg::{self, IntPoly};

/// A unit of a real quadratic field written as (t + u√D)/2 over the field
/// discriminant D; equivalently a + b·ω in the standard basis {1, ω}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadUnit {
    /// Coefficient of 1 in the {1, ω} basis.
    pub a: BigInt,
    /// Coefficient of ω in the {1, ω} basis.
    pub b: BigInt,
    /// Field discriminant.
    pub disc: BigInt,
}

impl QuadUnit {
    /// As (t + u√D)/2.
    pub fn half_coords(&self) -> (BigInt, BigInt) {
        if self.disc.is_odd() {
            // ω = (1+√D)/2: a + bω = (2a+b + b√D)/2
            (BigInt::from(2) * &self.a + &self.b, self.b.clone())
        } else {
            // ω = √(D/4) = √D/2: a + bω = (2a + b√D)/2
            (BigInt::from(2) * &self.a, self.b.clone())
        }
    }

    /// Field norm, ±1 for a unit.
    pub fn norm(&self) -> BigRational {
        let (t, u) = self.half_coords();
        BigRational::new(&t * &t - &self.disc * &u * &u, BigInt::from(4))
    }

    /// Exact comparison of (t + u√D)/2 against a rational.
    pub fn cmp_rational(&self, r: &BigRational) -> std::cmp::Ordering {
        let (t, u) = self.half_coords();
        // (t + u√D)/2 - r has the sign of (t - 2r) + u√D over 2
        let lhs = BigRational::from_integer(t) - BigRational::from_integer(2.into()) * r;
        sign_a_plus_b_sqrt_d(&lhs, &BigRational::from_integer(u), &self.disc)
            .cmp(&0)
    }

    /// The unit expressed in the power basis of a quadratic field whose
    /// defining polynomial is x² + bx + c with λ = (-b + √disc(p))/2 (the
    /// larger root) and disc(p) = index² · D.
    pub fn to_power_basis(&self, p: &IntPoly, index: &BigInt) -> FieldElement {
        assert_eq!(p.degree(), Some(2));
        let b = p.coeff(1);
        // √D = (2λ + b) / index
        let sqrt_d_lambda = BigRational::new(BigInt::from(2), index.clone());
        let sqrt_d_const = BigRational::new(b, index.clone());
        // ω in the power basis
        let (omega_const, omega_lambda) = if self.disc.is_odd() {
            // (1 + √D)/2
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            (
                (&sqrt_d_const + BigRational::one()) * &half,
                &sqrt_d_lambda * &half,
            )
        } else {
            // √D / 2
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            (&sqrt_d_const * &half, &sqrt_d_lambda * &half)
        };
        let a = BigRational::from_integer(self.a.clone());
        let bq = BigRational::from_integer(self.b.clone());
        FieldElement::from_coords(vec![&a + &bq * omega_const, bq * omega_lambda])
    }
}

impl fmt::Display for QuadUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (t, u) = self.half_coords();
        if t.is_even() && u.is_even() {
            let t2 = &t / BigInt::from(2);
            let u2 = &u / BigInt::from(2);
            if u2.is_one() {
                write!(f, "{}+sqrt({})", t2, self.disc)
            } else {
                write!(f, "{}+{}*sqrt({})", t2, u2, self.disc)
            }
        } else if u.is_one() {
            write!(f, "({}+sqrt({}))/2", t, self.disc)
        } else {
            write!(f, "({}+{}*sqrt({}))/2", t, u, self.disc)
        }
    }
}

/// Sign of a + b√d for rationals a, b and a positive non-square integer d.
pub fn sign_a_plus_b_sqrt_d(a: &BigRational, b: &BigRational, d: &BigInt) -> i32 {
    let sa = rational_sign(a);
    let sb = rational_sign(b);
    if sb == 0 {
        return sa;
    }
    if sa == 0 {
        return sb;
    }
    if sa == sb {
        return sa;
    }
    // opposite signs: compare a² with b²d
    let a2 = a * a;
    let b2d = b * b * BigRational::from_integer(d.clone());
    match a2.cmp(&b2d) {
        std::cmp::Ordering::Greater => sa,
        std::cmp::Ordering::Less => sb,
        std::cmp::Ordering::Equal => 0,
    }
}

fn rational_sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_negative() {
        -1
    } else {
        1
    }
}

/// d = f² · d0 with d0 squarefree, by trial division. Handles any d whose
/// square part is reachable by dividing out primes below ~10^6; a leftover
/// cofactor beyond that bound has at most two prime factors, so a perfect
/// square test finishes the job.
fn squarefree_decompose(d: &BigInt) -> Result<(BigInt, BigInt), FieldError> {
    let mut n = d.abs();
    if n.is_zero() {
        return Err(FieldError::InvalidDiscriminant("zero".into()));
    }
    let mut f = BigInt::one();
    let mut d0 = BigInt::one();
    let mut p = BigInt::from(2);
    let bound = BigInt::from(1_000_000);
    while &p * &p <= n && p <= bound {
        if (&n % &p).is_zero() {
            let mut count = 0u32;
            while (&n % &p).is_zero() {
                n /= &p;
                count += 1;
            }
            for _ in 0..count / 2 {
                f *= &p;
            }
            if count % 2 == 1 {
                d0 *= &p;
            }
        }
        p += 1u32;
    }
    if !n.is_one() {
        let root = n.sqrt();
        if &root * &root == n {
            f *= root;
        } else {
            // n is prime or a product of two distinct primes above the
            // bound; either way squarefree
            d0 *= &n;
        }
    }
    Ok((f, d0 * d.signum()))
}

/// Field discriminant D and index f with disc(p) = f²·D, for a quadratic
/// polynomial with positive non-square discriminant.
pub fn quadratic_field_discriminant(p: &IntPoly) -> Result<(BigInt, BigInt), FieldError> {
    if p.degree() != Some(2) {
        return Err(FieldError::DegreeOutOfRange(p.degree().unwrap_or(0)));
    }
    let disc = polyalg::discriminant(p)?;
    if !disc.is_positive() {
        return Err(FieldError::InvalidDiscriminant(format!(
            "disc(p) = {} is not positive",
            disc
        )));
    }
    let (f, d0) = squarefree_decompose(&disc)?;
    if d0.is_one() {
        return Err(FieldError::InvalidDiscriminant(
            "disc(p) is a perfect square (reducible polynomial)".into(),
        ));
    }
    let four = BigInt::from(4);
    if d0.mod_floor(&four) == BigInt::one() {
        Ok((d0, f))
    } else {
        // d0 ≡ 2, 3 (mod 4): D = 4 d0 and f must be even
        if f.is_odd() {
            return Err(FieldError::InvalidDiscriminant(format!(
                "inconsistent square decomposition of {}",
                disc
            )));
        }
        Ok((&four * d0, f / BigInt::from(2)))
    }
}

/// Exact floor of (p + √d)/q for a positive non-square d and q ≠ 0.
fn floor_quadratic(p: &BigInt, q: &BigInt, d: &BigInt) -> BigInt {
    assert!(!q.is_zero());
    let s = d.sqrt();
    // initial guess and exact adjustment; value = (p + √d)/q is irrational
    let mut a = (p + &s).div_floor(q);
    // a <= value  <=>  aq - p <= √d  (q > 0), with the inequality flipped
    // for q < 0; encode both via sign tests against √d
    let le_value = |a: &BigInt| -> bool {
        let t = a * q - p; // compare t with √d, sign-aware
        if q.is_positive() {
            // need t <= √d
            !t.is_positive() || &t * &t <= *d
        } else {
            // need t >= √d
            t.is_positive() && &t * &t >= *d
        }
    };
    while !le_value(&a) {
        a -= 1;
    }
    loop {
        let next = &a + 1;
        if le_value(&next) {
            a = next;
        } else {
            return a;
        }
    }
}

/// Fundamental unit of the order of discriminant D (> 1 in the real
/// embedding sending √D to the positive root), by the continued fraction of
/// ω with exact integer state and period detection.
pub fn quadratic_fundamental_unit(d: &BigInt) -> Result<QuadUnit, FieldError> {
    if !d.is_positive() {
        return Err(FieldError::InvalidDiscriminant(format!(
            "{} is not a real quadratic discriminant",
            d
        )));
    }
    let m4 = d.mod_floor(&BigInt::from(4));
    if m4 != BigInt::zero() && m4 != BigInt::one() {
        return Err(FieldError::InvalidDiscriminant(format!(
            "{} is not 0 or 1 mod 4",
            d
        )));
    }
    let root = d.sqrt();
    if &root * &root == *d {
        return Err(FieldError::InvalidDiscriminant(format!(
            "{} is a perfect square",
            d
        )));
    }

    // x_0 = ω = (P_0 + √D)/Q_0
    let mut p = if d.is_odd() {
        BigInt::one()
    } else {
        BigInt::zero()
    };
    let mut q = BigInt::from(2);
    // full convergent products M_0 ... M_{i-1} as 2x2 integer matrices
    let mut full = [
        [BigInt::one(), BigInt::zero()],
        [BigInt::zero(), BigInt::one()],
    ];
    let mut seen: HashMap<(BigInt, BigInt), ([[BigInt; 2]; 2], BigInt, BigInt)> =
        HashMap::new();
    let max_steps = 2_000_000usize;
    for _step in 0..max_steps {
        if let Some((full_j, pj, qj)) = seen.get(&(p.clone(), q.clone())) {
            // period closed: N = full_j^{-1} * full, the multiplier of x_j
            let n_mat = mat2_inv_mul(full_j, &full);
            let gamma = n_mat[1][0].clone();
            let delta = n_mat[1][1].clone();
            // ε = γ x_j + δ = (t + u√D)/2
            let two = BigInt::from(2);
            let u_num = &two * &gamma;
            let t_num = &two * (&gamma * pj + &delta * qj);
            let (u, ur) = u_num.div_rem(qj);
            let (t, tr) = t_num.div_rem(qj);
            if !ur.is_zero() || !tr.is_zero() {
                return Err(FieldError::InvalidDiscriminant(
                    "continued fraction unit was not integral (internal)".into(),
                ));
            }
            // sanity: t² - D u² = ±4 and ε > 1
            let norm4 = &t * &t - d * &u * &u;
            if norm4.abs() != BigInt::from(4) {
                return Err(FieldError::InvalidDiscriminant(
                    "continued fraction unit has wrong norm (internal)".into(),
                ));
            }
            let (a, b) = if d.is_odd() {
                // a = (t-u)/2, b = u
                let (a, r) = (&t - &u).div_rem(&two);
                if !r.is_zero() {
                    return Err(FieldError::InvalidDiscriminant(
                        "parity mismatch in unit coordinates (internal)".into(),
                    ));
                }
                (a, u)
            } else {
                let (a, r) = t.div_rem(&two);
                if !r.is_zero() {
                    return Err(FieldError::InvalidDiscriminant(
                        "parity mismatch in unit coordinates (internal)".into(),
                    ));
                }
                (a, u)
            };
            let unit = QuadUnit {
                a,
                b,
                disc: d.clone(),
            };
            debug_assert_eq!(unit.cmp_rational(&BigRational::one()), std::cmp::Ordering::Greater);
            return Ok(unit);
        }
        seen.insert(
            (p.clone(), q.clone()),
            (full.clone(), p.clone(), q.clone()),
        );
        let a = floor_quadratic(&p, &q, d);
        // x_{i+1} = 1/(x_i - a): P' = aQ - P, Q' = (D - P'^2)/Q
        let p_next = &a * &q - &p;
        let q_next_num = d - &p_next * &p_next;
        let (q_next, rem) = q_next_num.div_rem(&q);
        debug_assert!(rem.is_zero());
        // full = full * [[a, 1], [1, 0]]
        full = mat2_mul(&full, &[[a, BigInt::one()], [BigInt::one(), BigInt::zero()]]);
        p = p_next;
        q = q_next;
    }
    Err(FieldError::InvalidDiscriminant(
        "continued fraction period exceeded the step budget".into(),
    ))
}

fn mat2_mul(a: &[[BigInt; 2]; 2], b: &[[BigInt; 2]; 2]) -> [[BigInt; 2]; 2] {
    [
        [
            &a[0][0] * &b[0][0] + &a[0][1] * &b[1][0],
            &a[0][0] * &b[0][1] + &a[0][1] * &b[1][1],
        ],
        [
            &a[1][0] * &b[0][0] + &a[1][1] * &b[1][0],
            &a[1][0] * &b[0][1] + &a[1][1] * &b[1][1],
        ],
    ]
}

/// a^{-1} * b for unimodular 2x2 a.
fn mat2_inv_mul(a: &[[BigInt; 2]; 2], b: &[[BigInt; 2]; 2]) -> [[BigInt; 2]; 2] {
    let det = &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0];
    debug_assert!(det.abs().is_one());
    let inv = [
        [&a[1][1] * &det, -&a[0][1] * &det],
        [-&a[1][0] * &det, &a[0][0] * &det],
    ];
    mat2_mul(&inv, b)
}

/// Build a verified field data record for a real quadratic polynomial: the
/// field discriminant from the square decomposition of disc(p), the
/// integral basis {1, ω} expressed through √D = (2λ + b)/index, and the
/// fundamental unit from the continued fraction engine.
pub fn synthesize_quadratic_field_data(p: &IntPoly) -> Result<FieldData, FieldError> {
    let (d, index) = quadratic_field_discriminant(p)?;
    let unit = quadratic_fundamental_unit(&d)?;
    let b = p.coeff(1);
    // ω in the power basis, as in QuadUnit::to_power_basis
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let sqrt_d_lambda = BigRational::new(BigInt::from(2), index.clone());
    let sqrt_d_const = BigRational::new(b, index.clone());
    let (omega_const, omega_lambda) = if d.is_odd() {
        (
            (&sqrt_d_const + BigRational::one()) * &half,
            &sqrt_d_lambda * &half,
        )
    } else {
        (&sqrt_d_const * &half, &sqrt_d_lambda * &half)
    };
    let basis = QMatrix::new(
        2,
        vec![
            BigRational::one(),
            BigRational::zero(),
            omega_const,
            omega_lambda,
        ],
    )
    .map_err(|e| FieldError::BadFieldData(e.to_string()))?;
    FieldData::new(
        2,
        d.clone(),
        basis,
        unit.to_power_basis(p, &index),
        Some(2),
        format!("computed: continued fraction unit for disc {}", d),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(d: i64) -> QuadUnit {
        quadratic_fundamental_unit(&BigInt::from(d)).unwrap()
    }

    #[test]
    fn known_fundamental_units() {
        // (5+sqrt 29)/2
        let u29 = unit(29);
        assert_eq!(u29.half_coords(), (BigInt::from(5), BigInt::one()));
        // (1+sqrt 5)/2
        let u5 = unit(5);
        assert_eq!(u5.half_coords(), (BigInt::one(), BigInt::one()));
        // 4+sqrt 17
        let u17 = unit(17);
        assert_eq!(u17.half_coords(), (BigInt::from(8), BigInt::from(2)));
        // (3+sqrt 13)/2
        let u13 = unit(13);
        assert_eq!(u13.half_coords(), (BigInt::from(3), BigInt::one()));
        // 1+sqrt 2
        let u8 = unit(8);
        assert_eq!(u8.half_coords(), (BigInt::from(2), BigInt::one()));
    }

    #[test]
    fn units_have_norm_pm_one_and_exceed_one() {
        for d in [5i64, 8, 12, 13, 17, 21, 24, 28, 29, 33, 40, 41, 44, 53, 56, 61] {
            let u = unit(d);
            let n = u.norm();
            assert!(
                n == BigRational::one() || n == -BigRational::one(),
                "norm of unit for {} is {}",
                d,
                n
            );
            assert_eq!(
                u.cmp_rational(&BigRational::one()),
                std::cmp::Ordering::Greater
            );
        }
    }

    #[test]
    fn fundamentality_by_bounded_enumeration() {
        // no unit u' of the order satisfies 1 < u' < ε
        for d in [5i64, 8, 13, 17, 29, 40, 41, 61] {
            let eps = unit(d);
            let dd = BigInt::from(d);
            let (t, u) = eps.half_coords();
            // |y| ≤ (ε+1)/√D < (t + 2 + u√D)/(2√D); a generous integer bound
            let y_cap: BigInt =
                (&t + BigInt::from(2) + &u * (dd.sqrt() + BigInt::one())) / (dd.sqrt() * 2)
                    + BigInt::from(2);
            let mut y = -y_cap.clone();
            while y <= y_cap {
                // x range with 1 < x + yω < ε
                for x in -200i64..=200 {
                    let cand = QuadUnit {
                        a: BigInt::from(x),
                        b: y.clone(),
                        disc: dd.clone(),
                    };
                    let n = cand.norm();
                    if n.abs() != BigRational::one() {
                        continue;
                    }
                    let above_one =
                        cand.cmp_rational(&BigRational::one()) == std::cmp::Ordering::Greater;
                    if !above_one {
                        continue;
                    }
                    // cand > 1 must not be strictly below ε
                    let (ct, cu) = cand.half_coords();
                    let diff_t = BigRational::from_integer(&t - &ct);
                    let diff_u = BigRational::from_integer(&u - &cu);
                    let sign = sign_a_plus_b_sqrt_d(&diff_t, &diff_u, &dd);
                    assert!(
                        sign <= 0,
                        "unit {} below the claimed fundamental unit {} for disc {}",
                        cand,
                        eps,
                        d
                    );
                }
                y += 1;
            }
        }
    }

    #[test]
    fn rejects_bad_discriminants() {
        assert!(quadratic_fundamental_unit(&BigInt::from(-7)).is_err());
        assert!(quadratic_fundamental_unit(&BigInt::from(7)).is_err()); // 3 mod 4
        assert!(quadratic_fundamental_unit(&BigInt::from(16)).is_err()); // square
    }

    #[test]
    fn field_discriminants_from_polynomials() {
        let cases: &[(&[i64], i64, i64)] = &[
            (&[1, -5, -1], 29, 1),
            (&[1, -1, -1], 5, 1),
            (&[1, -8, -1], 17, 2),
            (&[1, -36, -1], 13, 10),
            (&[1, -14, -1], 8, 5),
        ];
        for (desc, d, f) in cases {
            let p = IntPoly::from_i64_desc(desc);
            let (dd, ff) = quadratic_field_discriminant(&p).unwrap();
            assert_eq!(dd, BigInt::from(*d), "disc for {}", p);
            assert_eq!(ff, BigInt::from(*f), "index for {}", p);
        }
    }

    #[test]
    fn synthesized_data_matches_bundled() {
        use crate::numfield::bundled_table;
        for desc in [
            [1i64, -5, -1],
            [1, -1, -1],
            [1, -8, -1],
            [1, -36, -1],
            [1, -14, -1],
        ] {
            let p = IntPoly::from_i64_desc(&desc);
            let synth = synthesize_quadratic_field_data(&p).unwrap();
            let bundled = bundled_table().lookup(&p).unwrap();
            assert_eq!(synth.field_discriminant, bundled.field_discriminant);
            assert_eq!(synth.integral_basis, bundled.integral_basis);
            assert_eq!(synth.fundamental_unit, bundled.fundamental_unit);
        }
    }

    #[test]
    fn power_basis_conversion_matches_known_units() {
        // disc 13, p = x^2-36x-1: ε = (λ-3)/10
        let p = IntPoly::from_i64_desc(&[1, -36, -1]);
        let u = unit(13);
        let fe = u.to_power_basis(&p, &BigInt::from(10));
        assert_eq!(
            fe,
            FieldElement::from_coords(vec![
                BigRational::new((-3).into(), 10.into()),
                BigRational::new(1.into(), 10.into())
            ])
        );
        // disc 8, p = x^2-14x-1: ε = (λ-2)/5
        let p8 = IntPoly::from_i64_desc(&[1, -14, -1]);
        let fe8 = unit(8).to_power_basis(&p8, &BigInt::from(5));
        assert_eq!(
            fe8,
            FieldElement::from_coords(vec![
                BigRational::new((-2).into(), 5.into()),
                BigRational::new(1.into(), 5.into())
            ])
        );
    }
}
