//! The correspondence between matrices commuting with A and elements of
//! ℚ(λ): v(λ) ↦ v(A). Computes the matrix centralizer C(A) exactly by
//! scanning torsion-adjusted powers of the fundamental unit for integral
//! images, builds the torsion matrix J, and provides the cyclic-group facts
//! about powers of J hitting -I.
//!
//! Soundness of the scan: every rational matrix commuting with A lies in
//! ℚ[A], so C(A) = ℚ[A] ∩ GL(n,ℤ) and its image under v(A) ↦ v(λ) is a
//! subgroup of the units of o_F. When the unit group has rank one with
//! fundamental unit ε and torsion generator ζ, C(A) is exactly the set of
//! ζ^j ε^s whose matrix image is integral; the determinant of an integral
//! image is ±N(unit) = ±1 automatically.

use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;

use crate::intmat::{IntMatrix, MatrixError, QMatrix};
use crate::numfield::{
    self, fe_mul, fe_pow, FieldData, FieldElement, FieldError, NumberField, Order, PrecisionPolicy,
};
use crate::polyalg;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CentralizerError {
    /// char_poly(A) does not match the element's defining polynomial.
    FieldMatrixMismatch,
    /// The requested torsion element has a non-integral matrix image.
    NonIntegralImage,
    /// No integral unit image found up to s_max. Carries the least power of
    /// the fundamental unit known to lie in ℤ[λ] as a certified retry bound,
    /// when one was found.
    ScanExhausted {
        s_max: u64,
        power_in_z_lambda: Option<u64>,
    },
    /// Operation requires a finite-order matrix.
    NotFiniteOrder,
    /// Operation requires an even-order matrix.
    OddOrder,
    Precondition(String),
    Field(FieldError),
    Matrix(MatrixError),
}

impl fmt::Display for CentralizerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CentralizerError::FieldMatrixMismatch => {
                write!(f, "matrix characteristic polynomial does not define this field")
            }
            CentralizerError::NonIntegralImage => {
                write!(f, "torsion element has a non-integral matrix image")
            }
            CentralizerError::ScanExhausted {
                s_max,
                power_in_z_lambda,
            } => match power_in_z_lambda {
                Some(s) => write!(
                    f,
                    "no integral unit image up to s_max = {}; the unit power {} lies in Z[lambda], retry with s_max >= {}",
                    s_max, s, s
                ),
                None => write!(f, "no integral unit image up to s_max = {}", s_max),
            },
            CentralizerError::NotFiniteOrder => write!(f, "matrix does not have finite order"),
            CentralizerError::OddOrder => write!(f, "matrix order is odd"),
            CentralizerError::Precondition(s) => write!(f, "precondition violated: {}", s),
            CentralizerError::Field(e) => write!(f, "{}", e),
            CentralizerError::Matrix(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for CentralizerError {}

impl From<FieldError> for CentralizerError {
    fn from(e: FieldError) -> Self {
        CentralizerError::Field(e)
    }
}

impl From<MatrixError> for CentralizerError {
    fn from(e: MatrixError) -> Self {
        CentralizerError::Matrix(e)
    }
}

/// The matrix v(A) for the element with representing polynomial v, exact
/// rational entries.
pub fn gamma_matrix(
    u: &FieldElement,
    a: &IntMatrix,
    k: &NumberField,
) -> Result<QMatrix, CentralizerError> {
    if &a.char_poly() != k.poly() || u.len() != k.degree() {
        return Err(CentralizerError::FieldMatrixMismatch);
    }
    let n = a.n();
    let mut acc = QMatrix::new(n, vec![BigRational::zero(); n * n]).expect("square");
    let mut power = IntMatrix::identity(n);
    for (i, c) in u.coords().iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&QMatrix::from_int(&power).scale(c));
        }
        if i + 1 < u.len() {
            power = power.mul(a);
        }
    }
    Ok(acc)
}

/// One tested point of the integral-unit scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanStep {
    /// Power of the fundamental unit.
    pub s: u64,
    /// Power of the torsion generator ζ.
    pub torsion_power: u32,
    /// The rational matrix image of ζ^j ε^s.
    pub image: QMatrix,
    pub integral: bool,
}

/// Exact description of C(A) = ⟨B⟩ × ⟨J⟩.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerDescription {
    /// Infinite-order generator.
    pub b: IntMatrix,
    pub b_inverse: IntMatrix,
    /// Torsion generator of order `torsion_order`.
    pub j: IntMatrix,
    pub torsion_order: u32,
    /// γ(B) = ζ^{torsion_power} ε^{power_index}.
    pub power_index: u64,
    pub torsion_power: u32,
    /// B lies in {±A^{±1} J^t}, i.e. ⟨B⟩×⟨J⟩ = ⟨A⟩×⟨J⟩.
    pub generated_by_a: bool,
    /// Which representative matched, when generated_by_a holds.
    pub matched_form: Option<String>,
    /// Every (s, j) tested, in scan order, ending at the integral hit.
    pub scan: Vec<ScanStep>,
}

/// Compute C(A) exactly by scanning ζ^j ε^s for integral matrix images in
/// lexicographic (s, j) order. The torsion part is read off at s = 0; the
/// first integral hit with s >= 1 is the infinite generator.
pub fn integral_unit_scan(
    a: &IntMatrix,
    fd: &FieldData,
    s_max: u64,
    policy: &PrecisionPolicy,
) -> Result<CentralizerDescription, CentralizerError> {
    let p = a.char_poly();
    let k = NumberField::new(p)?;
    let sig = k.signature();
    if sig.unit_rank() != 1 {
        return Err(CentralizerError::Precondition(format!(
            "unit rank {} != 1",
            sig.unit_rank()
        )));
    }
    let order = fd.order();
    let (m, zeta) = numfield::find_torsion_generator(&k, &order, policy)?;
    let eps = &fd.fundamental_unit;

    // torsion part of C(A): exponents j with an integral image form a
    // subgroup of Z/m; its generator exponent is the gcd of the members
    let mut gen_exp = m;
    for j in 1..m {
        let zj = fe_pow(&zeta, j as i64, &k)?;
        let img = gamma_matrix(&zj, a, &k)?;
        if img.is_integral() {
            gen_exp = gcd_u32(gen_exp, j);
        }
    }
    let torsion_order = m / gen_exp;
    let zeta_gen = fe_pow(&zeta, gen_exp as i64, &k)?;
    let j_mat = find_j(a, &zeta_gen, &k)?;

    // scan for the infinite generator
    let mut scan = Vec::new();
    let mut hit: Option<(u64, u32, IntMatrix)> = None;
    let mut eps_pow = FieldElement::one(k.degree());
    'outer: for s in 1..=s_max {
        eps_pow = fe_mul(&eps_pow, eps, &k);
        for j in 0..m {
            let zj = fe_pow(&zeta, j as i64, &k)?;
            let u = fe_mul(&zj, &eps_pow, &k);
            let image = gamma_matrix(&u, a, &k)?;
            let integral = image.is_integral();
            scan.push(ScanStep {
                s,
                torsion_power: j,
                image: image.clone(),
                integral,
            });
            if integral {
                hit = Some((s, j, image.to_int().expect("integral")));
                break 'outer;
            }
        }
    }
    let Some((power_index, torsion_power, b)) = hit else {
        // certified retry bound: the least unit power landing in Z[λ]
        let power_order = Order::power(k.degree());
        let mut bound = None;
        let mut pw = FieldElement::one(k.degree());
        for s in 1..=512u64 {
            pw = fe_mul(&pw, eps, &k);
            if (0..m).any(|j| {
                fe_pow(&zeta, j as i64, &k)
                    .map(|zj| numfield::in_order(&fe_mul(&zj, &pw, &k), &power_order))
                    .unwrap_or(false)
            }) {
                bound = Some(s);
                break;
            }
        }
        return Err(CentralizerError::ScanExhausted {
            s_max,
            power_in_z_lambda: bound,
        });
    };

    // soundness assertions on every output
    assert!(b.is_unimodular(), "scan hit is not unimodular");
    assert!(b.commutes_with(a), "scan hit does not commute with A");
    assert!(
        matches!(matrix_order(&b, 64), Ok(MatrixOrder::Infinite)),
        "scan hit has finite order"
    );
    let b_inverse = b.inverse_unimodular()?;

    let (generated_by_a, matched_form) = match_generated_by_a(a, &b, &j_mat, torsion_order)?;

    Ok(CentralizerDescription {
        b,
        b_inverse,
        j: j_mat,
        torsion_order,
        power_index,
        torsion_power,
        generated_by_a,
        matched_form,
        scan,
    })
}

/// B ∈ {A J^t, -A J^t, A^{-1} J^t, -A^{-1} J^t} for some t; equivalent to
/// ⟨B⟩ × ⟨J⟩ = ⟨A⟩ × ⟨J⟩ as matrix groups.
fn match_generated_by_a(
    a: &IntMatrix,
    b: &IntMatrix,
    j_mat: &IntMatrix,
    torsion_order: u32,
) -> Result<(bool, Option<String>), CentralizerError> {
    let a_inv = a.inverse_unimodular()?;
    let mut j_pow = IntMatrix::identity(a.n());
    for t in 0..torsion_order {
        if t > 0 {
            j_pow = j_pow.mul(j_mat);
        }
        let candidates = [
            (a.mul(&j_pow), format!("A*J^{}", t)),
            (a.mul(&j_pow).neg(), format!("-A*J^{}", t)),
            (a_inv.mul(&j_pow), format!("A^-1*J^{}", t)),
            (a_inv.mul(&j_pow).neg(), format!("-A^-1*J^{}", t)),
        ];
        for (cand, label) in candidates {
            if cand == *b {
                return Ok((true, Some(label)));
            }
        }
    }
    Ok((false, None))
}

/// The torsion matrix J = v(A) for a root of unity ζ with integral image;
/// canonical representative: lexicographically smallest entry sequence
/// among the generators of ⟨J⟩ (all of which have integral images).
pub fn find_j(
    a: &IntMatrix,
    zeta: &FieldElement,
    k: &NumberField,
) -> Result<IntMatrix, CentralizerError> {
    let img = gamma_matrix(zeta, a, k)?;
    let j0 = img.to_int().ok_or(CentralizerError::NonIntegralImage)?;
    let order = match matrix_order(&j0, 64)? {
        MatrixOrder::Finite(o) => o,
        MatrixOrder::Infinite => {
            return Err(CentralizerError::Precondition(
                "element is not a root of unity".into(),
            ))
        }
    };
    let mut best: Option<IntMatrix> = None;
    let mut pw = IntMatrix::identity(a.n());
    for t in 1..=order {
        pw = pw.mul(&j0);
        if gcd_u64(t, order) != 1 {
            continue;
        }
        match &best {
            None => best = Some(pw.clone()),
            Some(cur) => {
                if lex_less(&pw, cur) {
                    best = Some(pw.clone());
                }
            }
        }
    }
    let j = best.expect("a generator exists");
    // consistency: J^order = I, J^{order/2} = -I, and J commutes with A
    debug_assert!(j.pow(order as i64).unwrap().is_identity());
    if order % 2 == 0 {
        debug_assert_eq!(
            j.pow((order / 2) as i64).unwrap(),
            IntMatrix::minus_identity(a.n())
        );
    }
    debug_assert!(j.commutes_with(a));
    Ok(j)
}

fn lex_less(a: &IntMatrix, b: &IntMatrix) -> bool {
    a.entries() < b.entries()
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixOrder {
    Finite(u64),
    Infinite,
}

/// Least k with M^k = I, or Infinite. Finiteness is decided exactly: a
/// unimodular matrix has finite order iff its characteristic polynomial is
/// a product of cyclotomics and M^N = I for N the lcm of their orders.
pub fn matrix_order(m: &IntMatrix, cap: u64) -> Result<MatrixOrder, CentralizerError> {
    if !m.is_unimodular() {
        return Err(CentralizerError::Precondition(
            "matrix must be unimodular".into(),
        ));
    }
    let mut pw = m.clone();
    for k in 1..=cap {
        if pw.is_identity() {
            return Ok(MatrixOrder::Finite(k));
        }
        if k < cap {
            pw = pw.mul(m);
        }
    }
    let char = m.char_poly();
    let Some(orders) = polyalg::cyclotomic_factor_orders(&char) else {
        return Ok(MatrixOrder::Infinite);
    };
    let n_lcm = orders
        .iter()
        .fold(1u64, |acc, &o| num_integer::lcm(acc, o as u64));
    if !m.pow(n_lcm as i64)?.is_identity() {
        // cyclotomic spectrum but a nontrivial nilpotent part
        return Ok(MatrixOrder::Infinite);
    }
    // the true order divides n_lcm
    let mut best = n_lcm;
    for d in 1..=n_lcm {
        if n_lcm % d == 0 && m.pow(d as i64)?.is_identity() {
            best = d;
            break;
        }
    }
    Ok(MatrixOrder::Finite(best))
}

/// For J of finite even order 2k: whether J^k = -I. Must hold whenever
/// -I ∈ ⟨J⟩; used as a consistency assertion.
pub fn half_order_is_minus_identity(j: &IntMatrix) -> Result<bool, CentralizerError> {
    let order = match matrix_order(j, 64)? {
        MatrixOrder::Finite(o) => o,
        MatrixOrder::Infinite => return Err(CentralizerError::NotFiniteOrder),
    };
    if order % 2 != 0 {
        return Err(CentralizerError::OddOrder);
    }
    let half = j.pow((order / 2) as i64)?;
    Ok(half == IntMatrix::minus_identity(j.n()))
}

/// Least t with (J^l)^t = -I, or None. Brute force over t <= 2·order(J),
/// which suffices by cyclicity.
pub fn power_to_minus_identity(
    j: &IntMatrix,
    l: u64,
) -> Result<Option<u64>, CentralizerError> {
    let order = match matrix_order(j, 64)? {
        MatrixOrder::Finite(o) => o,
        MatrixOrder::Infinite => return Err(CentralizerError::NotFiniteOrder),
    };
    let minus_i = IntMatrix::minus_identity(j.n());
    let mut has_minus = false;
    let mut pw = IntMatrix::identity(j.n());
    for _ in 1..=order {
        pw = pw.mul(j);
        if pw == minus_i {
            has_minus = true;
        }
    }
    if !has_minus {
        return Err(CentralizerError::Precondition("-I not in <J>".into()));
    }
    if l == 0 || l >= order {
        return Err(CentralizerError::Precondition(format!(
            "l = {} not in 1..order = {}",
            l, order
        )));
    }
    let jl = j.pow(l as i64)?;
    let mut acc = IntMatrix::identity(j.n());
    for t in 1..=2 * order {
        acc = acc.mul(&jl);
        if acc == minus_i {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::bundled_table;
    use crate::polyalg::IntPoly;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn field(desc: &[i64]) -> NumberField {
        NumberField::new(IntPoly::from_i64_desc(desc)).unwrap()
    }

    #[test]
    fn gamma_of_lambda_is_a() {
        let a = IntMatrix::from_i64(&[&[0, 1], &[1, 5]]);
        let k = field(&[1, -5, -1]);
        let img = gamma_matrix(&FieldElement::lambda(2), &a, &k).unwrap();
        assert_eq!(img.to_int().unwrap(), a);
    }

    #[test]
    fn gamma_printed_matrices() {
        // (-3+λ)/10 at A = [[18,5],[65,18]] gives [[3/2,1/2],[13/2,3/2]]
        let a = IntMatrix::from_i64(&[&[18, 5], &[65, 18]]);
        let k = field(&[1, -36, -1]);
        let u = FieldElement::from_coords(vec![rat(-3, 10), rat(1, 10)]);
        let img = gamma_matrix(&u, &a, &k).unwrap();
        let expect = QMatrix::new(
            2,
            vec![rat(3, 2), rat(1, 2), rat(13, 2), rat(3, 2)],
        )
        .unwrap();
        assert_eq!(img, expect);
        // (-2+λ)/5 at A = [[2,5],[5,12]] gives [[0,1],[1,2]]
        let a2 = IntMatrix::from_i64(&[&[2, 5], &[5, 12]]);
        let k2 = field(&[1, -14, -1]);
        let u2 = FieldElement::from_coords(vec![rat(-2, 5), rat(1, 5)]);
        let img2 = gamma_matrix(&u2, &a2, &k2).unwrap();
        assert_eq!(img2.to_int().unwrap(), IntMatrix::from_i64(&[&[0, 1], &[1, 2]]));
    }

    #[test]
    fn gamma_rejects_mismatched_field() {
        let a = IntMatrix::from_i64(&[&[0, 1], &[1, 5]]);
        let k = field(&[1, -1, -1]);
        assert_eq!(
            gamma_matrix(&FieldElement::lambda(2), &a, &k),
            Err(CentralizerError::FieldMatrixMismatch)
        );
    }

    #[test]
    fn gamma_is_a_ring_homomorphism() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        let cases = [
            (IntMatrix::from_i64(&[&[0, 1], &[1, 5]]), field(&[1, -5, -1])),
            (
                IntMatrix::companion(&IntPoly::from_i64_desc(&[1, -1, 0, -1])).unwrap(),
                field(&[1, -1, 0, -1]),
            ),
        ];
        for (a, k) in &cases {
            let n = k.degree();
            for _ in 0..200 {
                let u = FieldElement::from_coords(
                    (0..n).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=3))).collect(),
                );
                let v = FieldElement::from_coords(
                    (0..n).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=3))).collect(),
                );
                let gu = gamma_matrix(&u, a, k).unwrap();
                let gv = gamma_matrix(&v, a, k).unwrap();
                let product = gamma_matrix(&fe_mul(&u, &v, k), a, k).unwrap();
                assert_eq!(gu.mul(&gv), product);
                let sum = gamma_matrix(&numfield::fe_add(&u, &v, k), a, k).unwrap();
                assert_eq!(gu.add(&gv), sum);
            }
        }
    }

    fn scan(a: &IntMatrix, p_desc: &[i64]) -> CentralizerDescription {
        let p = IntPoly::from_i64_desc(p_desc);
        let fd = bundled_table().lookup(&p).unwrap();
        integral_unit_scan(a, fd, 64, &PrecisionPolicy::default()).unwrap()
    }

    #[test]
    fn scan_disc_13_hits_power_three() {
        let a = IntMatrix::from_i64(&[&[18, 5], &[65, 18]]);
        let d = scan(&a, &[1, -36, -1]);
        assert_eq!(d.power_index, 3);
        assert_eq!(d.b, a);
        assert!(d.generated_by_a);
        assert_eq!(d.j, IntMatrix::minus_identity(2));
        assert_eq!(d.torsion_order, 2);
        // the rejected images at s = 1, 2 are the printed half-integer ones
        let s1 = d
            .scan
            .iter()
            .find(|st| st.s == 1 && st.torsion_power == 0)
            .unwrap();
        assert!(!s1.integral);
        assert_eq!(
            s1.image,
            QMatrix::new(2, vec![rat(3, 2), rat(1, 2), rat(13, 2), rat(3, 2)]).unwrap()
        );
        let s2 = d
            .scan
            .iter()
            .find(|st| st.s == 2 && st.torsion_power == 0)
            .unwrap();
        assert_eq!(
            s2.image,
            QMatrix::new(2, vec![rat(11, 2), rat(3, 2), rat(39, 2), rat(11, 2)]).unwrap()
        );
        // minimality: no earlier step is integral
        for st in &d.scan {
            if (st.s, st.torsion_power) != (d.power_index, d.torsion_power) {
                assert!(!st.integral);
            }
        }
    }

    #[test]
    fn scan_disc_8_finds_cube_root() {
        let a = IntMatrix::from_i64(&[&[2, 5], &[5, 12]]);
        let d = scan(&a, &[1, -14, -1]);
        assert_eq!(d.power_index, 1);
        let v = IntMatrix::from_i64(&[&[0, 1], &[1, 2]]);
        assert_eq!(d.b, v);
        assert!(!d.generated_by_a);
        assert_eq!(v.pow(3).unwrap(), a);
    }

    #[test]
    fn scan_disc_29_immediate() {
        let a = IntMatrix::from_i64(&[&[0, 1], &[1, 5]]);
        let d = scan(&a, &[1, -5, -1]);
        assert_eq!(d.power_index, 1);
        assert_eq!(d.b, a);
        assert!(d.generated_by_a);
        assert_eq!(d.j, IntMatrix::minus_identity(2));
    }

    #[test]
    fn scan_quartic_torsion_four() {
        let p = IntPoly::from_i64_desc(&[1, 2, 0, -2, 1]);
        let a = IntMatrix::companion(&p).unwrap();
        let d = scan(&a, &[1, 2, 0, -2, 1]);
        assert_eq!(d.power_index, 1);
        assert_eq!(d.b, a);
        assert!(d.generated_by_a);
        assert_eq!(d.torsion_order, 4);
        // J² = -I and ⟨J⟩ equals the group of the known generator
        // 1 - λ - 2λ² - λ³
        assert_eq!(d.j.pow(2).unwrap(), IntMatrix::minus_identity(4));
        let known = IntMatrix::from_i64(&[
            &[1, -1, -2, -1],
            &[1, -1, -1, 0],
            &[0, 1, -1, -1],
            &[1, -2, 1, 1],
        ]);
        assert_eq!(known.pow(2).unwrap(), IntMatrix::minus_identity(4));
        assert_eq!(group_of(&d.j), group_of(&known));
        // output commutes and is unimodular
        assert!(d.j.commutes_with(&a));
        assert!(d.j.is_unimodular());
    }

    #[test]
    fn scan_quartic_torsion_six() {
        let p = IntPoly::from_i64_desc(&[1, 6, 10, 3, 1]);
        let a = IntMatrix::companion(&p).unwrap();
        let d = scan(&a, &[1, 6, 10, 3, 1]);
        assert_eq!(d.torsion_order, 6);
        assert_eq!(d.b, a);
        assert!(d.generated_by_a);
        assert_eq!(d.j.pow(3).unwrap(), IntMatrix::minus_identity(4));
        let printed = IntMatrix::from_i64(&[
            &[0, -3, -1, 0],
            &[0, 0, -3, -1],
            &[1, 3, 10, 3],
            &[-3, -8, -27, -8],
        ]);
        assert_eq!(group_of(&d.j), group_of(&printed));
    }

    fn group_of(j: &IntMatrix) -> Vec<IntMatrix> {
        let mut elems = vec![IntMatrix::identity(j.n())];
        let mut pw = j.clone();
        while !pw.is_identity() {
            elems.push(pw.clone());
            pw = pw.mul(j);
        }
        elems.sort_by(|a, b| a.entries().cmp(b.entries()));
        elems
    }

    #[test]
    fn scan_exhaustion_reports_bound() {
        let a = IntMatrix::from_i64(&[&[18, 5], &[65, 18]]);
        let p = IntPoly::from_i64_desc(&[1, -36, -1]);
        let fd = bundled_table().lookup(&p).unwrap();
        let err = integral_unit_scan(&a, fd, 2, &PrecisionPolicy::default()).unwrap_err();
        assert_eq!(
            err,
            CentralizerError::ScanExhausted {
                s_max: 2,
                power_in_z_lambda: Some(3)
            }
        );
    }

    #[test]
    fn matrix_order_examples() {
        assert_eq!(
            matrix_order(&IntMatrix::minus_identity(2), 64).unwrap(),
            MatrixOrder::Finite(2)
        );
        let a = IntMatrix::from_i64(&[&[0, 1], &[1, 5]]);
        assert_eq!(matrix_order(&a, 64).unwrap(), MatrixOrder::Infinite);
        // order found beyond a tiny cap through the exact route
        let j4 = IntMatrix::companion(&polyalg::cyclotomic(4).unwrap()).unwrap();
        assert_eq!(matrix_order(&j4, 1).unwrap(), MatrixOrder::Finite(4));
        // unipotent: cyclotomic spectrum but infinite order
        let unip = IntMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        assert_eq!(matrix_order(&unip, 8).unwrap(), MatrixOrder::Infinite);
        assert!(matrix_order(&IntMatrix::from_i64(&[&[2, 0], &[0, 1]]), 8).is_err());
    }

    #[test]
    fn half_order_examples() {
        assert!(half_order_is_minus_identity(&IntMatrix::minus_identity(2)).unwrap());
        let j8 = IntMatrix::companion(&polyalg::cyclotomic(8).unwrap()).unwrap();
        assert!(half_order_is_minus_identity(&j8).unwrap());
        // order 4 block ⊕ identity: -I not in <J>, half power is not -I
        let block = IntMatrix::from_i64(&[
            &[0, -1, 0, 0],
            &[1, 0, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
        ]);
        assert!(!half_order_is_minus_identity(&block).unwrap());
        // odd order rejected
        let j3 = IntMatrix::companion(&polyalg::cyclotomic(3).unwrap()).unwrap();
        assert_eq!(
            half_order_is_minus_identity(&j3),
            Err(CentralizerError::OddOrder)
        );
        assert_eq!(
            half_order_is_minus_identity(&IntMatrix::from_i64(&[&[0, 1], &[1, 5]])),
            Err(CentralizerError::NotFiniteOrder)
        );
    }

    #[test]
    fn powers_reaching_minus_identity() {
        // order 4 model: every l in 1..4 reaches -I
        let j4 = IntMatrix::companion(&polyalg::cyclotomic(4).unwrap()).unwrap();
        assert_eq!(power_to_minus_identity(&j4, 1).unwrap(), Some(2));
        assert_eq!(power_to_minus_identity(&j4, 2).unwrap(), Some(1));
        assert_eq!(power_to_minus_identity(&j4, 3).unwrap(), Some(2));
        // order 6 model: l = 2 never reaches -I
        let j6 = IntMatrix::companion(&polyalg::cyclotomic(6).unwrap()).unwrap();
        assert_eq!(power_to_minus_identity(&j6, 2).unwrap(), None);
        assert_eq!(power_to_minus_identity(&j6, 1).unwrap(), Some(3));
        // precondition failures
        assert!(power_to_minus_identity(&j4, 0).is_err());
        assert!(power_to_minus_identity(&j4, 4).is_err());
        let block = IntMatrix::from_i64(&[
            &[0, -1, 0, 0],
            &[1, 0, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
        ]);
        assert!(power_to_minus_identity(&block, 1).is_err());
    }

    #[test]
    fn cyclic_lemma_on_rotation_models() {
        // power-of-two orders: every 0 < l < order reaches -I
        for m in [2u64, 4, 8, 16] {
            let j = rotation_model(m as u32);
            assert!(half_order_is_minus_identity(&j).unwrap());
            for l in 1..m {
                assert!(
                    power_to_minus_identity(&j, l).unwrap().is_some(),
                    "order {} l {}",
                    m,
                    l
                );
            }
        }
        // orders 2^d k with odd k > 2: absent exactly at l = 2^d
        for (m, l) in [(6u32, 2u64), (10, 2), (12, 4)] {
            let j = rotation_model(m);
            assert!(half_order_is_minus_identity(&j).unwrap());
            assert_eq!(power_to_minus_identity(&j, l).unwrap(), None, "order {}", m);
        }
    }

    pub(crate) fn rotation_model(m: u32) -> IntMatrix {
        if m == 2 {
            IntMatrix::minus_identity(2)
        } else {
            IntMatrix::companion(&polyalg::cyclotomic_raw(m)).unwrap()
        }
    }
}
