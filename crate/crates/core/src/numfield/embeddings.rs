//! Certified root approximations for the embeddings of a number field.
//!
//! Durand–Kerner produces approximations; certification is exact: each
//! approximation z gets the radius bound deg·|p(z)/p'(z)| (every disc of
//! that radius around z contains a root), evaluated in exact complex
//! rational arithmetic since bigfloat values convert losslessly. Disjoint
//! discs each containing a root pin down exactly one root apiece; the real
//! ones are confirmed by exact sign changes and counted against the Sturm
//! signature, the rest are paired by conjugation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bigfloat::{durand_kerner, Complex};
use crate::numfield::{FieldError, NumberField, PrecisionPolicy};
use crate::polyalg::{self, IntPoly};

/// Exact complex rational number, for certification arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct QComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl QComplex {
    fn zero() -> QComplex {
        QComplex {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    fn mul(&self, other: &QComplex) -> QComplex {
        QComplex {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    fn add_real(&self, r: &BigRational) -> QComplex {
        QComplex {
            re: &self.re + r,
            im: self.im.clone(),
        }
    }

    fn sub(&self, other: &QComplex) -> QComplex {
        QComplex {
            re: &self.re - &other.re,
            im: &self.im - &other.im,
        }
    }

    fn abs2(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

fn eval_intpoly(p: &IntPoly, z: &QComplex) -> QComplex {
    let mut acc = QComplex::zero();
    for i in (0..p.coeffs().len()).rev() {
        acc = acc.mul(z).add_real(&BigRational::from_integer(p.coeff(i)));
    }
    acc
}

/// Classification of one approximated root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbeddingKind {
    Real,
    /// Index of the conjugate partner.
    ComplexPaired(usize),
}

/// One certified embedding: an approximation plus an exact radius bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub approx_re: BigRational,
    pub approx_im: BigRational,
    pub radius_sq: BigRational,
    pub kind: EmbeddingKind,
}

/// All embeddings of a field at some precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingSet {
    pub embeddings: Vec<Embedding>,
    pub precision_bits: u32,
}

impl EmbeddingSet {
    pub fn real_count(&self) -> usize {
        self.embeddings
            .iter()
            .filter(|e| e.kind == EmbeddingKind::Real)
            .count()
    }
}

/// Internal result shared by the torsion and root searches: bigfloat
/// approximations plus their certified classification.
#[derive(Debug, Clone)]
pub(crate) struct CertifiedRoots {
    pub approx: Vec<Complex>,
    pub kinds: Vec<EmbeddingKind>,
    pub radius_sq: Vec<BigRational>,
}

pub(crate) fn default_target_radius_sq(prec: u32) -> BigRational {
    // comfortably below the lattice-rounding scale at this precision
    let shift = (prec as u64).saturating_sub(8).max(16);
    BigRational::new(BigInt::one(), BigInt::one() << shift)
}

/// Approximate and certify all roots of a squarefree polynomial at the given
/// precision. None means "retry at higher precision".
pub(crate) fn certified_roots(
    p: &IntPoly,
    prec: u32,
    warm: Option<&[Complex]>,
    target_radius_sq: &BigRational,
) -> Option<CertifiedRoots> {
    let deg = p.degree()?;
    if deg == 0 {
        return None;
    }
    let coeffs: Vec<Complex> = (0..=deg)
        .map(|i| {
            Complex::real(crate::bigfloat::BigFloat::from_rational(
                &BigRational::from_integer(p.coeff(i)),
                prec,
            ))
        })
        .collect();
    let lead = p.coeff(deg);
    let coeffs = if lead.is_one() {
        coeffs
    } else {
        // normalize to monic for the iteration; roots are unchanged
        let lead_bf =
            crate::bigfloat::BigFloat::from_rational(&BigRational::from_integer(lead), prec);
        coeffs
            .iter()
            .map(|c| Complex {
                re: c.re.div(&lead_bf, prec),
                im: c.im.div(&lead_bf, prec),
            })
            .collect()
    };
    let approx = durand_kerner(&coeffs, prec, warm)?;

    let dp = p.derivative();
    let deg_sq = BigRational::from_integer(BigInt::from((deg * deg) as u64));
    let mut exact: Vec<QComplex> = Vec::with_capacity(deg);
    let mut radius_sq: Vec<BigRational> = Vec::with_capacity(deg);
    for z in &approx {
        let q = QComplex {
            re: z.re.to_rational(),
            im: z.im.to_rational(),
        };
        let pv = eval_intpoly(p, &q).abs2();
        let dv = eval_intpoly(&dp, &q).abs2();
        if dv.is_zero() {
            return None;
        }
        let r2 = &deg_sq * pv / dv;
        if &r2 > target_radius_sq {
            return None;
        }
        radius_sq.push(r2);
        exact.push(q);
    }

    // pairwise disjoint discs: |Δ|² > 2(r_i² + r_j²) ≥ (r_i + r_j)²
    for i in 0..deg {
        for j in i + 1..deg {
            let d2 = exact[i].sub(&exact[j]).abs2();
            let bound = BigRational::from_integer(BigInt::from(2))
                * (&radius_sq[i] + &radius_sq[j]);
            if d2 <= bound {
                return None;
            }
        }
    }

    // real roots: candidates with |im|² ≤ r², confirmed by an exact sign
    // change of p across the disc; the count must match the Sturm signature
    let expected_real = polyalg::signature(p).ok()?.r1;
    let mut kinds = vec![EmbeddingKind::ComplexPaired(usize::MAX); deg];
    let mut real_found = 0;
    for i in 0..deg {
        let im2 = &exact[i].im * &exact[i].im;
        if im2 > radius_sq[i] {
            continue;
        }
        let s = pow2_at_least(&radius_sq[i]);
        let lo = &exact[i].re - &s;
        let hi = &exact[i].re + &s;
        let plo = p.eval_rational(&lo);
        let phi = p.eval_rational(&hi);
        let confirmed = plo.is_zero() || phi.is_zero() || (plo.is_negative() != phi.is_negative());
        if confirmed {
            kinds[i] = EmbeddingKind::Real;
            real_found += 1;
        }
    }
    if real_found != expected_real {
        return None;
    }

    // conjugation pairing for the rest
    for i in 0..deg {
        if kinds[i] == EmbeddingKind::Real {
            continue;
        }
        let conj_i = QComplex {
            re: exact[i].re.clone(),
            im: -exact[i].im.clone(),
        };
        let mut partner = None;
        for j in 0..deg {
            if j == i || kinds[j] == EmbeddingKind::Real {
                continue;
            }
            let d2 = conj_i.sub(&exact[j]).abs2();
            let bound = BigRational::from_integer(BigInt::from(2))
                * (&radius_sq[i] + &radius_sq[j]);
            if d2 <= bound {
                if partner.is_some() {
                    return None; // ambiguous pairing
                }
                partner = Some(j);
            }
        }
        let j = partner?;
        kinds[i] = EmbeddingKind::ComplexPaired(j);
    }
    // pairing must be an involution
    for i in 0..deg {
        if let EmbeddingKind::ComplexPaired(j) = kinds[i] {
            if j == usize::MAX || kinds[j] != EmbeddingKind::ComplexPaired(i) {
                return None;
            }
        }
    }

    Some(CertifiedRoots {
        approx,
        kinds,
        radius_sq,
    })
}

/// Smallest power of two s with s² ≥ 4·r².
fn pow2_at_least(r_sq: &BigRational) -> BigRational {
    let four_r2 = BigRational::from_integer(BigInt::from(4)) * r_sq;
    let mut s = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if &s * &s >= four_r2 {
        loop {
            let next = &s * &half;
            if &next * &next >= four_r2 {
                s = next;
            } else {
                return s;
            }
        }
    }
    while &s * &s < four_r2 {
        s = &s * &two;
    }
    s
}

/// All embeddings of the field with certified radii at most the target,
/// climbing the precision ladder as needed; errors when the cap is reached
/// without certification.
pub fn embeddings(
    k: &NumberField,
    target_radius_sq: &BigRational,
    policy: &PrecisionPolicy,
) -> Result<EmbeddingSet, FieldError> {
    let mut warm: Option<Vec<Complex>> = None;
    for prec in policy.rungs() {
        match certified_roots(k.poly(), prec, warm.as_deref(), target_radius_sq) {
            Some(r) => {
                let embeddings = r
                    .approx
                    .iter()
                    .zip(&r.kinds)
                    .zip(&r.radius_sq)
                    .map(|((z, kind), r2)| Embedding {
                        approx_re: z.re.to_rational(),
                        approx_im: if *kind == EmbeddingKind::Real {
                            BigRational::zero()
                        } else {
                            z.im.to_rational()
                        },
                        radius_sq: r2.clone(),
                        kind: *kind,
                    })
                    .collect();
                return Ok(EmbeddingSet {
                    embeddings,
                    precision_bits: prec,
                });
            }
            None => {
                // keep whatever approximations exist as a warm start
                let coeffs: Vec<Complex> = (0..=k.poly().degree().unwrap())
                    .map(|i| {
                        Complex::real(crate::bigfloat::BigFloat::from_rational(
                            &BigRational::from_integer(k.poly().coeff(i)),
                            prec,
                        ))
                    })
                    .collect();
                warm = durand_kerner(&coeffs, prec, warm.as_deref());
            }
        }
    }
    Err(FieldError::PrecisionExhausted {
        cap_bits: policy.cap_bits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn poly(desc: &[i64]) -> IntPoly {
        IntPoly::from_i64_desc(desc)
    }

    fn target() -> BigRational {
        BigRational::new(BigInt::one(), BigInt::one() << 40)
    }

    #[test]
    fn quadratic_real_roots() {
        let k = NumberField::new(poly(&[1, -5, -1])).unwrap();
        let es = embeddings(&k, &target(), &PrecisionPolicy::default()).unwrap();
        assert_eq!(es.real_count(), 2);
        let mut roots: Vec<f64> = es
            .embeddings
            .iter()
            .map(|e| e.approx_re.to_f64().unwrap())
            .collect();
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // (5 ± sqrt 29)/2
        assert!((roots[0] + 0.19258).abs() < 1e-4);
        assert!((roots[1] - 5.19258).abs() < 1e-4);
    }

    #[test]
    fn gaussian_field_roots() {
        let k = NumberField::new(poly(&[1, 0, 1])).unwrap();
        let es = embeddings(&k, &target(), &PrecisionPolicy::default()).unwrap();
        assert_eq!(es.real_count(), 0);
        for e in &es.embeddings {
            assert!((e.approx_im.to_f64().unwrap().abs() - 1.0).abs() < 1e-9);
            assert!(e.approx_re.to_f64().unwrap().abs() < 1e-9);
        }
        // conjugation pairing is an involution
        match es.embeddings[0].kind {
            EmbeddingKind::ComplexPaired(j) => {
                assert_eq!(es.embeddings[j].kind, EmbeddingKind::ComplexPaired(0));
            }
            EmbeddingKind::Real => panic!("expected complex"),
        }
    }

    #[test]
    fn cubic_signature_consistency() {
        let k = NumberField::new(poly(&[1, -1, 0, -1])).unwrap();
        let es = embeddings(&k, &target(), &PrecisionPolicy::default()).unwrap();
        assert_eq!(es.real_count(), 1);
        let real = es
            .embeddings
            .iter()
            .find(|e| e.kind == EmbeddingKind::Real)
            .unwrap();
        assert!((real.approx_re.to_f64().unwrap() - 1.46557).abs() < 1e-4);
        // radii certified below the target
        for e in &es.embeddings {
            assert!(e.radius_sq <= target());
        }
    }

    #[test]
    fn radii_really_contain_roots() {
        // the disc-320 quartic: totally complex
        let k = NumberField::new(poly(&[1, 2, 0, -2, 1])).unwrap();
        let es = embeddings(&k, &target(), &PrecisionPolicy::default()).unwrap();
        assert_eq!(es.real_count(), 0);
        assert_eq!(es.embeddings.len(), 4);
    }
}
