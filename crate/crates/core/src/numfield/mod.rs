//! Arithmetic in the number field F = ℚ(λ) for λ a root of an irreducible
//! monic polynomial of degree 2..=4: field element arithmetic in the power
//! basis, norms, order membership, torsion (roots of unity), fundamental
//! units, and verification of externally supplied field tables.
//!
//! Degrees 3 and 4 take their ring-of-integers data from a bundled table and
//! verify it; real quadratic fields compute their own fundamental unit by
//! continued fractions. Numeric steps (root approximation, lattice rounding)
//! follow a precision ladder and every conclusion is re-verified exactly.

pub mod embeddings;
pub mod quadratic;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::bigfloat::{solve_complex_system, BigFloat, Complex};
use crate::intmat::{format_rational, parse_rational, QMatrix};
use crate::polyalg::{self, IntPoly, PolyError, Signature};
use embeddings::EmbeddingSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    NotIrreducible,
    DegreeOutOfRange(usize),
    DivisionByZero,
    SingularBasis,
    MismatchedField,
    InvalidDiscriminant(String),
    BadFieldData(String),
    PrecisionExhausted { cap_bits: u32 },
    Parse(String),
    Poly(PolyError),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotIrreducible => write!(f, "polynomial is not irreducible over Q"),
            FieldError::DegreeOutOfRange(d) => {
                write!(f, "field degree {} outside supported range 2..=4", d)
            }
            FieldError::DivisionByZero => write!(f, "division by zero field element"),
            FieldError::SingularBasis => write!(f, "basis matrix is singular"),
            FieldError::MismatchedField => write!(f, "element does not belong to this field"),
            FieldError::InvalidDiscriminant(s) => write!(f, "invalid discriminant: {}", s),
            FieldError::BadFieldData(s) => write!(f, "bad field data: {}", s),
            FieldError::PrecisionExhausted { cap_bits } => {
                write!(f, "precision ladder exhausted at {} bits", cap_bits)
            }
            FieldError::Parse(s) => write!(f, "field data parse error: {}", s),
            FieldError::Poly(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for FieldError {}

impl From<PolyError> for FieldError {
    fn from(e: PolyError) -> Self {
        FieldError::Poly(e)
    }
}

/// Numeric precision ladder: start at `start_bits`, double until lattice
/// rounding is unambiguous or `cap_bits` is reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub start_bits: u32,
    pub cap_bits: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            start_bits: 64,
            cap_bits: 4096,
        }
    }
}

impl PrecisionPolicy {
    pub fn rungs(&self) -> impl Iterator<Item = u32> {
        let start = self.start_bits.max(16);
        let cap = self.cap_bits.max(start);
        std::iter::successors(Some(start), move |&p| {
            if p >= cap {
                None
            } else {
                Some((p * 2).min(cap))
            }
        })
    }
}

/// The field ℚ(λ) for λ a root of a monic irreducible polynomial of degree
/// 2..=4; irreducibility is checked at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberField {
    poly: IntPoly,
    degree: usize,
    signature: Signature,
}

impl NumberField {
    pub fn new(poly: IntPoly) -> Result<NumberField, FieldError> {
        let degree = poly.degree().ok_or(FieldError::NotIrreducible)?;
        if !(2..=4).contains(&degree) {
            return Err(FieldError::DegreeOutOfRange(degree));
        }
        if !polyalg::is_irreducible(&poly)? {
            return Err(FieldError::NotIrreducible);
        }
        let signature = polyalg::signature(&poly)?;
        Ok(NumberField {
            poly,
            degree,
            signature,
        })
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }
}

/// Element of ℚ(λ) as rational coordinates in the power basis
/// 1, λ, ..., λ^{n-1}; always reduced mod the defining polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement {
    coords: Vec<BigRational>,
}

impl FieldElement {
    pub fn from_coords(coords: Vec<BigRational>) -> FieldElement {
        FieldElement { coords }
    }

    pub fn from_i64(coords: &[i64]) -> FieldElement {
        FieldElement {
            coords: coords
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        }
    }

    pub fn zero(n: usize) -> FieldElement {
        FieldElement {
            coords: vec![BigRational::zero(); n],
        }
    }

    pub fn one(n: usize) -> FieldElement {
        let mut coords = vec![BigRational::zero(); n];
        coords[0] = BigRational::one();
        FieldElement { coords }
    }

    pub fn minus_one(n: usize) -> FieldElement {
        let mut coords = vec![BigRational::zero(); n];
        coords[0] = -BigRational::one();
        FieldElement { coords }
    }

    /// λ itself.
    pub fn lambda(n: usize) -> FieldElement {
        let mut coords = vec![BigRational::zero(); n];
        coords[1] = BigRational::one();
        FieldElement { coords }
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// The representing polynomial with a common denominator cleared:
    /// (integer polynomial, denominator).
    pub fn integer_rep(&self) -> (IntPoly, BigInt) {
        let mut den = BigInt::one();
        for c in &self.coords {
            den = den.lcm(c.denom());
        }
        let coeffs = self
            .coords
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (IntPoly::from_coeffs(coeffs), den)
    }
}

impl fmt::Display for FieldElement {
    /// Power-basis coordinates, lowest power first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_rational).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

fn check_len(z: &FieldElement, k: &NumberField) -> Result<(), FieldError> {
    if z.coords.len() != k.degree {
        return Err(FieldError::MismatchedField);
    }
    Ok(())
}

pub fn fe_add(a: &FieldElement, b: &FieldElement, k: &NumberField) -> FieldElement {
    debug_assert_eq!(a.coords.len(), k.degree);
    debug_assert_eq!(b.coords.len(), k.degree);
    FieldElement {
        coords: a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(x, y)| x + y)
            .collect(),
    }
}

pub fn fe_sub(a: &FieldElement, b: &FieldElement, k: &NumberField) -> FieldElement {
    debug_assert_eq!(a.coords.len(), k.degree);
    FieldElement {
        coords: a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(x, y)| x - y)
            .collect(),
    }
}

pub fn fe_neg(a: &FieldElement) -> FieldElement {
    FieldElement {
        coords: a.coords.iter().map(|x| -x).collect(),
    }
}

/// Product in ℚ(λ), reduced mod the defining polynomial.
pub fn fe_mul(a: &FieldElement, b: &FieldElement, k: &NumberField) -> FieldElement {
    let n = k.degree;
    debug_assert_eq!(a.coords.len(), n);
    debug_assert_eq!(b.coords.len(), n);
    let mut prod = vec![BigRational::zero(); 2 * n - 1];
    for (i, x) in a.coords.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coords.iter().enumerate() {
            prod[i + j] += x * y;
        }
    }
    reduce_mod_poly(&mut prod, k);
    FieldElement { coords: prod }
}

/// Reduce a coordinate vector mod the (monic) defining polynomial, leaving
/// exactly n coordinates.
fn reduce_mod_poly(coords: &mut Vec<BigRational>, k: &NumberField) {
    let n = k.degree;
    let p = &k.poly;
    for i in (n..coords.len()).rev() {
        let c = std::mem::replace(&mut coords[i], BigRational::zero());
        if c.is_zero() {
            continue;
        }
        // λ^i = λ^{i-n} (-a_{n-1} λ^{n-1} - ... - a_0)
        for j in 0..n {
            let a = p.coeff(j);
            if a.is_zero() {
                continue;
            }
            coords[i - n + j] -= &c * BigRational::from_integer(a);
        }
    }
    coords.truncate(n);
    while coords.len() < n {
        coords.push(BigRational::zero());
    }
}

/// Multiplicative inverse via the extended Euclidean algorithm in ℚ[x]
/// against the (irreducible) defining polynomial.
pub fn fe_inv(a: &FieldElement, k: &NumberField) -> Result<FieldElement, FieldError> {
    check_len(a, k)?;
    if a.is_zero() {
        return Err(FieldError::DivisionByZero);
    }
    let n = k.degree;
    let p: Vec<BigRational> = (0..=n)
        .map(|i| BigRational::from_integer(k.poly.coeff(i)))
        .collect();
    // extended euclid: r0 = p, r1 = a, with s tracking the cofactor of a
    let mut r0 = p;
    let mut r1 = a.coords.clone();
    trim(&mut r1);
    let mut s0 = vec![BigRational::zero()];
    let mut s1 = vec![BigRational::one()];
    while qdeg(&r1).is_some() && qdeg(&r1) != Some(0) {
        let (q, r) = qpoly_divrem(&r0, &r1);
        let s_next = qpoly_sub(&s0, &qpoly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s_next;
    }
    if qdeg(&r1).is_none() {
        // impossible for irreducible p and a != 0
        return Err(FieldError::DivisionByZero);
    }
    let c = r1[0].clone();
    let mut inv: Vec<BigRational> = s1.iter().map(|x| x / &c).collect();
    reduce_mod_poly(&mut inv, k);
    Ok(FieldElement { coords: inv })
}

/// Exact integer power, negative exponents through `fe_inv`.
pub fn fe_pow(a: &FieldElement, e: i64, k: &NumberField) -> Result<FieldElement, FieldError> {
    check_len(a, k)?;
    let base = if e < 0 { fe_inv(a, k)? } else { a.clone() };
    let mut exp = e.unsigned_abs();
    let mut result = FieldElement::one(k.degree);
    let mut b = base;
    while exp > 0 {
        if exp & 1 == 1 {
            result = fe_mul(&result, &b, k);
        }
        exp >>= 1;
        if exp > 0 {
            b = fe_mul(&b, &b, k);
        }
    }
    Ok(result)
}

/// Field norm N_{F/ℚ}(z) computed exactly as a resultant against the
/// defining polynomial.
pub fn fe_norm(z: &FieldElement, k: &NumberField) -> BigRational {
    debug_assert_eq!(z.coords.len(), k.degree);
    if z.is_zero() {
        return BigRational::zero();
    }
    let (w, den) = z.integer_rep();
    // N(w(λ)/den) = res(p, w) / den^n for monic p
    let res = polyalg::resultant(&k.poly, &w).expect("nonzero inputs");
    let mut den_pow = BigInt::one();
    for _ in 0..k.degree {
        den_pow *= &den;
    }
    BigRational::new(res, den_pow)
}

/// Evaluate an integer polynomial at a field element.
pub fn fe_eval_intpoly(p: &IntPoly, z: &FieldElement, k: &NumberField) -> FieldElement {
    let n = k.degree;
    let deg = match p.degree() {
        None => return FieldElement::zero(n),
        Some(d) => d,
    };
    let mut acc = FieldElement::zero(n);
    for i in (0..=deg).rev() {
        acc = fe_mul(&acc, z, k);
        acc.coords[0] += BigRational::from_integer(p.coeff(i));
    }
    acc
}

// -- small rational-polynomial helpers for the extended euclid above --

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn qdeg(v: &[BigRational]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

fn qpoly_divrem(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let dd = qdeg(den).expect("nonzero divisor");
    let lc = den.last().unwrap();
    let mut rem: Vec<BigRational> = num.to_vec();
    trim(&mut rem);
    let nd = match qdeg(&rem) {
        Some(d) if d >= dd => d,
        _ => return (vec![], rem),
    };
    let mut q = vec![BigRational::zero(); nd - dd + 1];
    for k in (0..q.len()).rev() {
        if rem.len() < k + dd + 1 {
            continue;
        }
        let top = rem[k + dd].clone();
        if top.is_zero() {
            continue;
        }
        let f = &top / lc;
        q[k] = f.clone();
        for (i, c) in den.iter().enumerate() {
            rem[k + i] -= &f * c;
        }
        trim(&mut rem);
    }
    (q, rem)
}

fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn qpoly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let get = |v: &[BigRational], i: usize| v.get(i).cloned().unwrap_or_else(BigRational::zero);
    let mut out: Vec<BigRational> = (0..n).map(|i| get(a, i) - get(b, i)).collect();
    trim(&mut out);
    out
}

/// An order in F given by a basis whose rows are elements in the power
/// basis. The first row must represent 1 and the basis must be invertible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Order {
    basis: QMatrix,
    inv_t: QMatrix,
}

impl Order {
    pub fn from_basis(basis: QMatrix) -> Result<Order, FieldError> {
        let n = basis.n();
        for j in 0..n {
            let expect = if j == 0 {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            if *basis.get(0, j) != expect {
                return Err(FieldError::BadFieldData(
                    "first basis row must represent 1".into(),
                ));
            }
        }
        let transpose = transpose(&basis);
        let inv_t = transpose.inverse().map_err(|_| FieldError::SingularBasis)?;
        Ok(Order { basis, inv_t })
    }

    /// The power-basis order ℤ[λ].
    pub fn power(n: usize) -> Order {
        Order {
            basis: QMatrix::identity(n),
            inv_t: QMatrix::identity(n),
        }
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    pub fn n(&self) -> usize {
        self.basis.n()
    }

    /// Coordinates of a field element in this order's basis.
    pub fn coords(&self, z: &FieldElement) -> Vec<BigRational> {
        self.inv_t.mul_vec(z.coords())
    }

    /// Field element from integer coordinates in this order's basis.
    pub fn element_from_coords(&self, t: &[BigInt]) -> FieldElement {
        let n = self.n();
        let mut coords = vec![BigRational::zero(); n];
        for (i, ti) in t.iter().enumerate() {
            if ti.is_zero() {
                continue;
            }
            for j in 0..n {
                coords[j] += self.basis.get(i, j) * BigRational::from_integer(ti.clone());
            }
        }
        FieldElement { coords }
    }

    /// |det(basis)|; equals 1/[o : ℤ[λ]] when the rows span an order
    /// containing the power order.
    pub fn basis_det_abs(&self) -> BigRational {
        let d = self.basis.det();
        if d.is_negative() {
            -d
        } else {
            d
        }
    }

    fn inv_t_entry(&self, i: usize, j: usize) -> &BigRational {
        self.inv_t.get(i, j)
    }
}

fn transpose(m: &QMatrix) -> QMatrix {
    let n = m.n();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push(m.get(j, i).clone());
        }
    }
    QMatrix::new(n, entries).expect("square")
}

/// True iff z has integer coordinates in the given order basis.
pub fn in_order(z: &FieldElement, order: &Order) -> bool {
    order.coords(z).iter().all(|c| c.is_integer())
}

/// True iff z lies in the order and has field norm ±1 (the inverse then
/// lies in the order automatically).
pub fn is_unit_in_order(z: &FieldElement, order: &Order, k: &NumberField) -> bool {
    in_order(z, order) && fe_norm(z, k).abs() == BigRational::one()
}

/// Index [o_F : ℤ[λ]] from the square ratio disc(p) / disc(F).
pub fn order_index(p: &IntPoly, fd: &FieldData) -> Result<BigInt, FieldError> {
    let disc_p = polyalg::discriminant(p)?;
    if fd.field_discriminant.is_zero() {
        return Err(FieldError::InvalidDiscriminant("zero discriminant".into()));
    }
    let (ratio, rem) = disc_p.div_rem(&fd.field_discriminant);
    if !rem.is_zero() || !ratio.is_positive() {
        return Err(FieldError::InvalidDiscriminant(format!(
            "disc(p) = {} is not a positive square multiple of disc(F) = {}",
            disc_p, fd.field_discriminant
        )));
    }
    let root = ratio.sqrt();
    if &root * &root != ratio {
        return Err(FieldError::InvalidDiscriminant(format!(
            "disc(p)/disc(F) = {} is not a perfect square",
            ratio
        )));
    }
    Ok(root)
}

/// Monic minimal polynomial of z over ℚ, ascending coefficients.
pub fn minimal_polynomial(z: &FieldElement, k: &NumberField) -> Vec<BigRational> {
    let n = k.degree;
    let mut powers: Vec<FieldElement> = vec![FieldElement::one(n)];
    for d in 1..=n {
        let next = fe_mul(powers.last().unwrap(), z, k);
        powers.push(next);
        // does z^d depend linearly on 1, z, ..., z^{d-1}?
        let rows: Vec<Vec<BigRational>> = (0..n)
            .map(|coord| (0..d).map(|i| powers[i].coords[coord].clone()).collect())
            .collect();
        let rhs: Vec<BigRational> = (0..n)
            .map(|coord| powers[d].coords[coord].clone())
            .collect();
        if let Some(sol) = crate::intmat::solve_rectangular(&rows, &rhs) {
            // consistency check: solve_rectangular already guarantees it
            let mut coeffs: Vec<BigRational> = sol.iter().map(|a| -a).collect();
            coeffs.push(BigRational::one());
            return coeffs;
        }
    }
    unreachable!("z^n always depends on lower powers in a degree-n field")
}

/// Algebraic integers have monic integer minimal polynomials.
pub fn is_algebraic_integer(z: &FieldElement, k: &NumberField) -> bool {
    minimal_polynomial(z, k).iter().all(|c| c.is_integer())
}

/// External table record describing the ring of integers o_F.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldData {
    pub degree: usize,
    pub field_discriminant: BigInt,
    /// Row i = i-th basis element of o_F written in the power basis.
    pub integral_basis: QMatrix,
    /// Fundamental unit in the power basis.
    pub fundamental_unit: FieldElement,
    pub torsion_order_hint: Option<u32>,
    pub provenance: String,
}

impl FieldData {
    pub fn new(
        degree: usize,
        field_discriminant: BigInt,
        integral_basis: QMatrix,
        fundamental_unit: FieldElement,
        torsion_order_hint: Option<u32>,
        provenance: String,
    ) -> Result<FieldData, FieldError> {
        if integral_basis.n() != degree || fundamental_unit.coords.len() != degree {
            return Err(FieldError::BadFieldData(
                "degree does not match basis/unit dimensions".into(),
            ));
        }
        // type invariants: first basis row is 1, basis invertible
        Order::from_basis(integral_basis.clone())?;
        Ok(FieldData {
            degree,
            field_discriminant,
            integral_basis,
            fundamental_unit,
            torsion_order_hint,
            provenance,
        })
    }

    pub fn order(&self) -> Order {
        Order::from_basis(self.integral_basis.clone()).expect("validated at construction")
    }
}

/// A collection of field data records keyed by defining polynomial.
#[derive(Debug, Clone, Default)]
pub struct FieldTable {
    records: Vec<(IntPoly, FieldData)>,
}

impl FieldTable {
    pub fn new() -> FieldTable {
        FieldTable {
            records: Vec::new(),
        }
    }

    pub fn insert(&mut self, poly: IntPoly, data: FieldData) {
        self.records.push((poly, data));
    }

    pub fn lookup(&self, poly: &IntPoly) -> Option<&FieldData> {
        self.records
            .iter()
            .find(|(p, _)| p == poly)
            .map(|(_, d)| d)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> impl Iterator<Item = (&IntPoly, &FieldData)> {
        self.records.iter().map(|(p, d)| (p, d))
    }

    /// Parse the key/value field data format. Records start at a `poly =`
    /// line; keys are `degree`, `disc`, `basis` (rows separated by `;`,
    /// rational entries), `fundamental_unit`, optional `torsion`, and
    /// `provenance`. `#` starts a comment.
    pub fn parse(input: &str) -> Result<FieldTable, FieldError> {
        let mut table = FieldTable::new();
        let mut current: Option<RecordBuilder> = None;
        for (lineno, raw) in input.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                FieldError::Parse(format!("line {}: expected key = value", lineno + 1))
            })?;
            let key = key.trim();
            let value = value.trim();
            if key == "poly" {
                if let Some(b) = current.take() {
                    let (p, d) = b.finish()?;
                    table.insert(p, d);
                }
                let poly = IntPoly::parse(value)
                    .map_err(|e| FieldError::Parse(format!("line {}: {}", lineno + 1, e)))?;
                current = Some(RecordBuilder::new(poly));
            } else {
                let b = current.as_mut().ok_or_else(|| {
                    FieldError::Parse(format!("line {}: field before any poly =", lineno + 1))
                })?;
                b.set(key, value)
                    .map_err(|e| FieldError::Parse(format!("line {}: {}", lineno + 1, e)))?;
            }
        }
        if let Some(b) = current.take() {
            let (p, d) = b.finish()?;
            table.insert(p, d);
        }
        Ok(table)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (p, d) in &self.records {
            out.push_str(&format!("poly = {}\n", p));
            out.push_str(&format!("degree = {}\n", d.degree));
            out.push_str(&format!("disc = {}\n", d.field_discriminant));
            out.push_str(&format!("basis = {}\n", d.integral_basis.to_inline()));
            let unit: Vec<String> = d
                .fundamental_unit
                .coords
                .iter()
                .map(format_rational)
                .collect();
            out.push_str(&format!("fundamental_unit = {}\n", unit.join(" ")));
            if let Some(t) = d.torsion_order_hint {
                out.push_str(&format!("torsion = {}\n", t));
            }
            out.push_str(&format!("provenance = {}\n\n", d.provenance));
        }
        out
    }
}

struct RecordBuilder {
    poly: IntPoly,
    degree: Option<usize>,
    disc: Option<BigInt>,
    basis: Option<QMatrix>,
    unit: Option<FieldElement>,
    torsion: Option<u32>,
    provenance: Option<String>,
}

impl RecordBuilder {
    fn new(poly: IntPoly) -> RecordBuilder {
        RecordBuilder {
            poly,
            degree: None,
            disc: None,
            basis: None,
            unit: None,
            torsion: None,
            provenance: None,
        }
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), FieldError> {
        match key {
            "degree" => {
                self.degree = Some(
                    value
                        .parse()
                        .map_err(|_| FieldError::Parse(format!("bad degree `{}`", value)))?,
                )
            }
            "disc" => {
                self.disc = Some(
                    value
                        .parse()
                        .map_err(|_| FieldError::Parse(format!("bad disc `{}`", value)))?,
                )
            }
            "basis" => {
                let rows: Vec<&str> = value.split(';').map(str::trim).collect();
                let n = rows.len();
                let mut entries = Vec::with_capacity(n * n);
                for row in rows {
                    let parsed: Result<Vec<BigRational>, FieldError> = row
                        .split_whitespace()
                        .map(|tok| {
                            parse_rational(tok).map_err(|e| FieldError::Parse(e.to_string()))
                        })
                        .collect();
                    let parsed = parsed?;
                    if parsed.len() != n {
                        return Err(FieldError::Parse("basis rows must be square".into()));
                    }
                    entries.extend(parsed);
                }
                self.basis =
                    Some(QMatrix::new(n, entries).map_err(|e| FieldError::Parse(e.to_string()))?);
            }
            "fundamental_unit" => {
                let parsed: Result<Vec<BigRational>, FieldError> = value
                    .split_whitespace()
                    .map(|tok| parse_rational(tok).map_err(|e| FieldError::Parse(e.to_string())))
                    .collect();
                self.unit = Some(FieldElement::from_coords(parsed?));
            }
            "torsion" => {
                self.torsion = Some(
                    value
                        .parse()
                        .map_err(|_| FieldError::Parse(format!("bad torsion `{}`", value)))?,
                )
            }
            "provenance" => self.provenance = Some(value.to_string()),
            other => return Err(FieldError::Parse(format!("unknown key `{}`", other))),
        }
        Ok(())
    }

    fn finish(self) -> Result<(IntPoly, FieldData), FieldError> {
        let degree = self
            .degree
            .ok_or_else(|| FieldError::Parse("missing degree".into()))?;
        let disc = self
            .disc
            .ok_or_else(|| FieldError::Parse("missing disc".into()))?;
        let basis = self
            .basis
            .ok_or_else(|| FieldError::Parse("missing basis".into()))?;
        let unit = self
            .unit
            .ok_or_else(|| FieldError::Parse("missing fundamental_unit".into()))?;
        let data = FieldData::new(
            degree,
            disc,
            basis,
            unit,
            self.torsion,
            self.provenance.unwrap_or_default(),
        )?;
        Ok((self.poly, data))
    }
}

/// The field table shipped with the binary.
pub fn bundled_table() -> &'static FieldTable {
    use std::sync::OnceLock;
    static TABLE: OnceLock<FieldTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        FieldTable::parse(include_str!("bundled_fields.txt")).expect("bundled table parses")
    })
}

/// Largest order of a root of unity in the order, with a generator whose
/// order is verified exactly (Φ_m(ζ) = 0).
///
/// Fields with a real embedding only contain ±1. Totally complex fields are
/// searched for m descending: primitive m-th roots of unity are assigned to
/// the embeddings consistently with conjugation, the Vandermonde system is
/// solved numerically, the solution is rounded to the order lattice, and
/// the result is verified exactly. A candidate order counts as absent only
/// when every assignment rounded cleanly to a lattice point that failed the
/// exact check (possibly after the numerics stabilized across two rungs);
/// a candidate still undecided at the precision cap is an error rather than
/// a silent fallback to a smaller order.
pub fn find_torsion_generator(
    k: &NumberField,
    order: &Order,
    policy: &PrecisionPolicy,
) -> Result<(u32, FieldElement), FieldError> {
    let n = k.degree();
    if k.signature().r1 > 0 {
        return Ok((2, FieldElement::minus_one(n)));
    }
    let candidates: &[u32] = match n {
        4 => &[12, 10, 8, 6, 4],
        2 => &[6, 4],
        _ => &[],
    };
    for &m in candidates {
        if polyalg::euler_phi(m) as usize == n && !cyclotomic_disc_compatible(m, k, order) {
            continue;
        }
        match search_torsion_order(m, k, order, policy) {
            TorsionSearch::Found(zeta) => return Ok((m, zeta)),
            TorsionSearch::Absent => continue,
            TorsionSearch::Undecided => {
                return Err(FieldError::PrecisionExhausted {
                    cap_bits: policy.cap_bits,
                })
            }
        }
    }
    Ok((2, FieldElement::minus_one(n)))
}

enum TorsionSearch {
    Found(FieldElement),
    Absent,
    Undecided,
}

/// For φ(m) = [F : ℚ] the field would have to be ℚ(ζ_m), whose discriminant
/// is known; a mismatch rules the order out exactly.
fn cyclotomic_disc_compatible(m: u32, k: &NumberField, order: &Order) -> bool {
    let cyclo_disc: i64 = match m {
        8 => 256,
        10 => 125,
        12 => 144,
        3 | 6 => -3,
        4 => -4,
        _ => return true,
    };
    let Ok(disc_p) = polyalg::discriminant(k.poly()) else {
        return true;
    };
    // disc(order) = disc(p) * det(basis)^2
    let det = order.basis_det_abs();
    let disc_order = BigRational::from_integer(disc_p) * &det * &det;
    if !disc_order.is_integer() {
        return false;
    }
    let disc_order = disc_order.to_integer();
    let cyclo = BigInt::from(cyclo_disc);
    if (&disc_order % &cyclo).is_zero() {
        let ratio = disc_order / cyclo;
        if ratio.is_positive() {
            let root = ratio.sqrt();
            return &root * &root == ratio;
        }
    }
    false
}

fn search_torsion_order(
    m: u32,
    k: &NumberField,
    order: &Order,
    policy: &PrecisionPolicy,
) -> TorsionSearch {
    let phi_m = polyalg::cyclotomic_raw(m);
    let mut warm_field: Option<Vec<Complex>> = None;
    let mut warm_cyclo: Option<Vec<Complex>> = None;
    let mut prev_snapshot: Option<Vec<Vec<BigRational>>> = None;
    for prec in policy.rungs() {
        let target = embeddings::default_target_radius_sq(prec);
        let Some(field_roots) =
            embeddings::certified_roots(k.poly(), prec, warm_field.as_deref(), &target)
        else {
            continue;
        };
        warm_field = Some(field_roots.approx.clone());
        let Some(cyclo_roots) =
            embeddings::certified_roots(&phi_m, prec, warm_cyclo.as_deref(), &target)
        else {
            continue;
        };
        warm_cyclo = Some(cyclo_roots.approx.clone());

        let slots = conjugation_slots(&field_roots);
        let per_slot: Vec<Vec<Complex>> = slots
            .iter()
            .map(|slot| {
                let mut v: Vec<Complex> = match slot {
                    Slot::Real(_) => cyclo_roots
                        .approx
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| cyclo_roots.kinds[*i] == embeddings::EmbeddingKind::Real)
                        .map(|(_, z)| z.clone())
                        .collect(),
                    Slot::Pair(_, _) => cyclo_roots.approx.clone(),
                };
                sort_complex(&mut v);
                v
            })
            .collect();
        if per_slot.iter().any(|v| v.is_empty()) {
            return TorsionSearch::Absent;
        }
        let outcome = try_assignments(k, order, &field_roots, &slots, &per_slot, prec, |cand| {
            fe_eval_intpoly(&phi_m, cand, k).is_zero()
        });
        match outcome {
            SearchOutcome::Found(zeta) => return TorsionSearch::Found(zeta),
            SearchOutcome::NotFound {
                ambiguous,
                snapshot,
            } => {
                if !ambiguous {
                    return TorsionSearch::Absent;
                }
                // ambiguous but numerically stable across two rungs: the
                // solutions have converged away from the lattice
                if let Some(prev) = &prev_snapshot {
                    if snapshots_stable(prev, &snapshot) {
                        return TorsionSearch::Absent;
                    }
                }
                prev_snapshot = Some(snapshot);
            }
        }
    }
    TorsionSearch::Undecided
}

pub(crate) enum SearchOutcome {
    Found(FieldElement),
    /// No assignment verified. `ambiguous` records whether any rounding or
    /// solve was inconclusive, and `snapshot` holds the solved order-basis
    /// coordinates per assignment so the caller can detect that the
    /// numerics have stabilized across ladder rungs.
    NotFound {
        ambiguous: bool,
        snapshot: Vec<Vec<BigRational>>,
    },
}

/// Coordinate snapshots agree to within 2^-20 in every entry.
pub(crate) fn snapshots_stable(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let tol = BigRational::new(BigInt::one(), BigInt::one() << 20);
    a.iter().zip(b).all(|(x, y)| {
        x.len() == y.len()
            && x.iter()
                .zip(y)
                .all(|(u, v)| (u - v).abs() < tol)
    })
}

pub(crate) enum Slot {
    Real(usize),
    Pair(usize, usize),
}

pub(crate) fn conjugation_slots(roots: &embeddings::CertifiedRoots) -> Vec<Slot> {
    let mut slots = Vec::new();
    let mut seen = vec![false; roots.kinds.len()];
    for (i, kind) in roots.kinds.iter().enumerate() {
        if seen[i] {
            continue;
        }
        match kind {
            embeddings::EmbeddingKind::Real => {
                seen[i] = true;
                slots.push(Slot::Real(i));
            }
            embeddings::EmbeddingKind::ComplexPaired(j) => {
                seen[i] = true;
                seen[*j] = true;
                slots.push(Slot::Pair(i, *j));
            }
        }
    }
    slots
}

/// Assign one target root per conjugate slot (conjugate forced on the
/// partner), solve the Vandermonde system for power-basis coordinates,
/// round to the order lattice, verify exactly. First verified hit wins;
/// enumeration order is fixed, so the result is deterministic.
pub(crate) fn try_assignments<FVerify>(
    k: &NumberField,
    order: &Order,
    field_roots: &embeddings::CertifiedRoots,
    slots: &[Slot],
    per_slot: &[Vec<Complex>],
    prec: u32,
    verify: FVerify,
) -> SearchOutcome
where
    FVerify: Fn(&FieldElement) -> bool,
{
    let n = k.degree();
    let vandermonde: Vec<Vec<Complex>> = field_roots
        .approx
        .iter()
        .map(|z| {
            let mut row = Vec::with_capacity(n);
            let mut p = Complex::one();
            for _ in 0..n {
                row.push(p.clone());
                p = p.mul(z, prec);
            }
            row
        })
        .collect();
    let mut choice = vec![0usize; slots.len()];
    let mut ambiguous = false;
    let mut snapshot: Vec<Vec<BigRational>> = Vec::new();
    loop {
        let mut rhs = vec![Complex::zero(); n];
        for (s, slot) in slots.iter().enumerate() {
            let t = &per_slot[s][choice[s]];
            match slot {
                Slot::Real(i) => rhs[*i] = t.clone(),
                Slot::Pair(i, j) => {
                    rhs[*i] = t.clone();
                    rhs[*j] = t.conj();
                }
            }
        }
        match solve_complex_system(&vandermonde, &rhs, prec) {
            Some(coords) => {
                let (rounding, raw) = round_to_order(order, &coords, prec);
                snapshot.push(raw);
                match rounding {
                    Rounding::Lattice(candidate) => {
                        if verify(&candidate) {
                            return SearchOutcome::Found(candidate);
                        }
                    }
                    Rounding::Ambiguous => ambiguous = true,
                }
            }
            None => {
                ambiguous = true;
                snapshot.push(Vec::new());
            }
        }
        // next assignment
        let mut s = 0;
        loop {
            if s == slots.len() {
                return SearchOutcome::NotFound {
                    ambiguous,
                    snapshot,
                };
            }
            choice[s] += 1;
            if choice[s] < per_slot[s].len() {
                break;
            }
            choice[s] = 0;
            s += 1;
        }
    }
}

enum Rounding {
    Lattice(FieldElement),
    Ambiguous,
}

/// Round approximate power-basis coordinates to the nearest point of the
/// order lattice; ambiguous when any coordinate is 1/4 or further from its
/// nearest integer. Also returns the raw order-basis coordinates.
fn round_to_order(order: &Order, coords: &[Complex], prec: u32) -> (Rounding, Vec<BigRational>) {
    let n = order.n();
    let mut t_int = Vec::with_capacity(n);
    let mut raw = Vec::with_capacity(n);
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let mut ambiguous = false;
    for i in 0..n {
        let mut acc = BigFloat::zero();
        for (j, c) in coords.iter().enumerate() {
            let w = BigFloat::from_rational(order.inv_t_entry(i, j), prec);
            acc = acc.add(&w.mul(&c.re, prec), prec);
        }
        let r = acc.to_rational();
        let nearest = round_rational(&r);
        let dist = (&r - BigRational::from_integer(nearest.clone())).abs();
        if dist >= quarter {
            ambiguous = true;
        }
        raw.push(r);
        t_int.push(nearest);
    }
    if ambiguous {
        (Rounding::Ambiguous, raw)
    } else {
        (Rounding::Lattice(order.element_from_coords(&t_int)), raw)
    }
}

pub(crate) fn round_rational(r: &BigRational) -> BigInt {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    (r + half).floor().to_integer()
}

/// Search for η in the order with η^k = ζ^j · u for some torsion power j
/// (a torsion-adjusted k-th root): numeric k-th roots across the
/// embeddings, rounded to the lattice and verified exactly. Ok(None) means
/// verified absence; a question still undecided at the precision cap is an
/// error, never a silent "no".
pub fn is_proper_power_in_order(
    u: &FieldElement,
    k_exp: u32,
    order: &Order,
    torsion: &(u32, FieldElement),
    k: &NumberField,
    policy: &PrecisionPolicy,
) -> Result<Option<FieldElement>, FieldError> {
    assert!(k_exp >= 2);
    let (m, zeta) = torsion;
    // exact norm prefilter: η^k = t forces N(η)^k = N(t) with N(η) = ±1
    let feasible_j: Vec<(u32, FieldElement)> = (0..*m)
        .filter_map(|j| {
            let zeta_j = fe_pow(zeta, j as i64, k).expect("torsion power");
            let t = fe_mul(&zeta_j, u, k);
            let norm = fe_norm(&t, k);
            let one = BigRational::one();
            let ok = if k_exp % 2 == 0 {
                norm == one
            } else {
                norm.abs() == one
            };
            if ok {
                Some((j, t))
            } else {
                None
            }
        })
        .collect();
    if feasible_j.is_empty() {
        return Ok(None);
    }
    let mut warm_field: Option<Vec<Complex>> = None;
    let mut prev_snapshot: Option<Vec<Vec<BigRational>>> = None;
    for prec in policy.rungs() {
        let target = embeddings::default_target_radius_sq(prec);
        let Some(field_roots) =
            embeddings::certified_roots(k.poly(), prec, warm_field.as_deref(), &target)
        else {
            continue;
        };
        warm_field = Some(field_roots.approx.clone());
        let mut all_definite = true;
        let mut rung_snapshot: Vec<Vec<BigRational>> = Vec::new();
        for (_, t) in &feasible_j {
            let slots = conjugation_slots(&field_roots);
            let mut per_slot: Vec<Vec<Complex>> = Vec::new();
            let mut feasible = true;
            for slot in &slots {
                let idx = match slot {
                    Slot::Real(i) => *i,
                    Slot::Pair(i, _) => *i,
                };
                let sigma_t = embed_element(t, &field_roots.approx[idx], prec);
                match kth_roots(&sigma_t, k_exp, matches!(slot, Slot::Real(_)), prec) {
                    Some(mut roots) if !roots.is_empty() => {
                        sort_complex(&mut roots);
                        per_slot.push(roots);
                    }
                    Some(_) => {
                        // no real k-th root by sign/parity
                        feasible = false;
                        break;
                    }
                    None => {
                        // numeric failure; climb the ladder
                        feasible = false;
                        all_definite = false;
                        break;
                    }
                }
            }
            if !feasible {
                rung_snapshot.push(Vec::new());
                continue;
            }
            let outcome =
                try_assignments(k, order, &field_roots, &slots, &per_slot, prec, |cand| {
                    fe_pow(cand, k_exp as i64, k).expect("power") == *t
                });
            match outcome {
                SearchOutcome::Found(eta) => return Ok(Some(eta)),
                SearchOutcome::NotFound {
                    ambiguous,
                    snapshot,
                } => {
                    if ambiguous {
                        all_definite = false;
                    }
                    rung_snapshot.extend(snapshot);
                }
            }
        }
        if all_definite {
            return Ok(None);
        }
        if let Some(prev) = &prev_snapshot {
            if snapshots_stable(prev, &rung_snapshot) {
                return Ok(None);
            }
        }
        prev_snapshot = Some(rung_snapshot);
    }
    Err(FieldError::PrecisionExhausted {
        cap_bits: policy.cap_bits,
    })
}

/// Deterministic ordering of complex approximations by exact value.
fn sort_complex(v: &mut [Complex]) {
    v.sort_by(|a, b| {
        (a.re.to_rational(), a.im.to_rational()).cmp(&(b.re.to_rational(), b.im.to_rational()))
    });
}

/// σ(t) for the embedding sending λ to the given root approximation.
fn embed_element(t: &FieldElement, root: &Complex, prec: u32) -> Complex {
    let mut acc = Complex::zero();
    for c in t.coords().iter().rev() {
        let c_bf = Complex::real(BigFloat::from_rational(c, prec));
        acc = acc.mul(root, prec).add(&c_bf, prec);
    }
    acc
}

/// All complex k-th roots of a value; real slots keep only the real roots
/// (decided by sign and parity). None signals a numeric failure, an empty
/// list that no real root exists.
fn kth_roots(value: &Complex, k_exp: u32, real_slot: bool, prec: u32) -> Option<Vec<Complex>> {
    use crate::bigfloat::nth_root;
    if real_slot {
        let x = &value.re;
        if x.is_zero() {
            return None;
        }
        let r = nth_root(&x.abs(), k_exp, prec);
        return Some(if x.is_negative() {
            if k_exp % 2 == 1 {
                vec![Complex::real(r.neg())]
            } else {
                vec![]
            }
        } else if k_exp % 2 == 0 {
            vec![Complex::real(r.clone()), Complex::real(r.neg())]
        } else {
            vec![Complex::real(r)]
        });
    }
    // all roots of w^k = value
    let mut coeffs = vec![Complex::zero(); k_exp as usize + 1];
    coeffs[0] = value.neg();
    coeffs[k_exp as usize] = Complex::one();
    crate::bigfloat::durand_kerner(&coeffs, prec, None)
}

/// Verification report for a field data record.
#[derive(Debug, Clone)]
pub struct FieldCheck {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct FieldDataReport {
    pub checks: Vec<FieldCheck>,
    pub order_index: Option<BigInt>,
    pub torsion: Option<(u32, FieldElement)>,
}

impl FieldDataReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Verify a field data record against the defining polynomial: basis
/// integrality, discriminant/index consistency, unit membership and norm,
/// a desk-scale fundamentality certificate (not a torsion-adjusted k-th
/// power for k in {2, 3, 5}), and the torsion hint.
pub fn verify_field_data(
    p: &IntPoly,
    fd: &FieldData,
    policy: &PrecisionPolicy,
) -> Result<FieldDataReport, FieldError> {
    let k = NumberField::new(p.clone())?;
    if fd.degree != k.degree() {
        return Err(FieldError::BadFieldData(format!(
            "record degree {} but polynomial degree {}",
            fd.degree,
            k.degree()
        )));
    }
    let order = fd.order();
    let mut checks = Vec::new();

    // (a) basis elements are algebraic integers
    let mut all_integral = true;
    for i in 0..k.degree() {
        let row: Vec<BigRational> = (0..k.degree())
            .map(|j| fd.integral_basis.get(i, j).clone())
            .collect();
        let elem = FieldElement::from_coords(row);
        if !is_algebraic_integer(&elem, &k) {
            all_integral = false;
        }
    }
    checks.push(FieldCheck {
        name: "basis_algebraic_integers",
        pass: all_integral,
        detail: if all_integral {
            "every basis element has a monic integer minimal polynomial".into()
        } else {
            "a basis element is not an algebraic integer".into()
        },
    });

    // (b) disc(p) / disc(F) is a positive perfect square, and the index it
    // gives matches the basis determinant
    let mut order_index_val = None;
    match order_index(p, fd) {
        Ok(idx) => {
            let det = order.basis_det_abs();
            let expected = BigRational::new(BigInt::one(), idx.clone());
            let pass = det == expected;
            checks.push(FieldCheck {
                name: "discriminant_index",
                pass,
                detail: format!(
                    "index from discriminants = {}, |det(basis)| = {}",
                    idx,
                    format_rational(&det)
                ),
            });
            if pass {
                order_index_val = Some(idx);
            }
        }
        Err(e) => checks.push(FieldCheck {
            name: "discriminant_index",
            pass: false,
            detail: e.to_string(),
        }),
    }

    // (c) fundamental unit lies in o_F with norm ±1
    let unit_ok = is_unit_in_order(&fd.fundamental_unit, &order, &k);
    checks.push(FieldCheck {
        name: "unit_in_order",
        pass: unit_ok,
        detail: format!(
            "N(unit) = {}",
            format_rational(&fe_norm(&fd.fundamental_unit, &k))
        ),
    });

    // torsion generator, reused by (d) and (e); an undecided search is a
    // failed check, never a silent fallback
    let torsion = match find_torsion_generator(&k, &order, policy) {
        Ok(t) => Some(t),
        Err(e) => {
            checks.push(FieldCheck {
                name: "unit_power_free",
                pass: false,
                detail: format!("skipped: torsion search failed ({})", e),
            });
            checks.push(FieldCheck {
                name: "torsion_hint",
                pass: false,
                detail: format!("torsion order undecided: {}", e),
            });
            None
        }
    };

    if let Some(torsion) = &torsion {
        // (d) desk-scale fundamentality: not a torsion-adjusted k-th power
        let mut power_free = true;
        let mut power_detail =
            String::from("no torsion-adjusted k-th root exists for k in {2, 3, 5}");
        if unit_ok {
            for k_exp in [2u32, 3, 5] {
                match is_proper_power_in_order(
                    &fd.fundamental_unit,
                    k_exp,
                    &order,
                    torsion,
                    &k,
                    policy,
                ) {
                    Ok(Some(eta)) => {
                        power_free = false;
                        power_detail = format!("unit is a {}-th power of {}", k_exp, eta);
                        break;
                    }
                    Ok(None) => {}
                    Err(e) => {
                        power_free = false;
                        power_detail = format!("{}-th power question undecided: {}", k_exp, e);
                        break;
                    }
                }
            }
        } else {
            power_free = false;
            power_detail = "skipped: unit check failed".into();
        }
        checks.push(FieldCheck {
            name: "unit_power_free",
            pass: power_free,
            detail: power_detail,
        });

        // (e) torsion hint matches the computed order
        match fd.torsion_order_hint {
            Some(hint) => {
                let pass = hint == torsion.0;
                checks.push(FieldCheck {
                    name: "torsion_hint",
                    pass,
                    detail: format!("computed torsion order {}, hint {}", torsion.0, hint),
                });
            }
            None => checks.push(FieldCheck {
                name: "torsion_hint",
                pass: true,
                detail: format!("no hint; computed torsion order {}", torsion.0),
            }),
        }
    }

    Ok(FieldDataReport {
        checks,
        order_index: order_index_val,
        torsion,
    })
}

/// Certified approximations of all embeddings of the field.
pub fn field_embeddings(
    k: &NumberField,
    target_radius_sq: &BigRational,
    policy: &PrecisionPolicy,
) -> Result<EmbeddingSet, FieldError> {
    embeddings::embeddings(k, target_radius_sq, policy)
}
