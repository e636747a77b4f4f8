//! Exact arithmetic in finite fields `F_{q^m}` with `q = p^e`.
//!
//! A field is described by a [`FieldDesc`]: the characteristic `p`, the base
//! exponent `e` (so the base field is `F_q`), the extension degree `m` over
//! `F_q`, and a monic irreducible modulus of degree `e·m` over `F_p`. Elements
//! are coefficient vectors in the polynomial basis and carry a handle to their
//! field; arithmetic between elements of different fields is rejected.
//!
//! Every extension degree gets its own field. Elements of `F_{q^d}` are never
//! compared with elements of `F_{q^t}` directly; when a computation needs to
//! see a small field inside a larger one it goes through an explicit
//! [`Embedding`].

mod fp_poly;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Deref, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

use crate::arith::is_prime;

pub use fp_poly::is_irreducible;

/// Default bound on the number of elements of any field we construct.
pub const DEFAULT_CAP: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("exponent and extension degree must be positive (e = {e}, m = {m})")]
    ZeroDegree { e: u32, m: u32 },
    #[error("field of size {p}^{k} exceeds the element cap {cap}")]
    CapExceeded { p: u64, k: u64, cap: u64 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("expected {expected} coefficients, got {got}")]
    BadLength { expected: usize, got: usize },
    #[error("coefficient {value} is not reduced modulo {p}")]
    BadCoefficient { value: u32, p: u64 },
    #[error("zero has no multiplicative inverse")]
    DivisionByZero,
    #[error("F_{p}^{from} does not embed into F_{p}^{into}")]
    NoEmbedding { p: u64, from: u64, into: u64 },
}

/// Descriptor of `F_{q^m}`, `q = p^e`.
#[derive(Debug, Clone)]
pub struct FieldDesc {
    p: u64,
    e: u32,
    m: u32,
    /// Monic, low degree first, length `e·m + 1`.
    modulus: Vec<u32>,
    size: u64,
    cap: u64,
}

impl FieldDesc {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Degree over the prime field, `e·m`.
    pub fn degree(&self) -> u32 {
        self.e * self.m
    }

    /// Cardinality of the base field `F_q`.
    pub fn q(&self) -> u64 {
        self.p.pow(self.e)
    }

    /// Number of elements, `q^m`.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldDesc {}

/// Shared handle to a field descriptor.
#[derive(Clone)]
pub struct Field(Arc<FieldDesc>);

impl Deref for Field {
    type Target = FieldDesc;

    fn deref(&self) -> &FieldDesc {
        &self.0
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} (modulus {:?})", self.p, self.degree(), self.modulus)
    }
}

/// Build `F_{q^m}` with `q = p^e` under the default element cap.
pub fn make_field(p: u64, e: u32, m: u32) -> Result<Field, GfError> {
    make_field_with_cap(p, e, m, DEFAULT_CAP)
}

/// Build `F_{q^m}` with `q = p^e`. The modulus is the smallest monic
/// irreducible of degree `e·m` over `F_p`, ordering candidates by the integer
/// whose base-p digits are the non-leading coefficients.
pub fn make_field_with_cap(p: u64, e: u32, m: u32, cap: u64) -> Result<Field, GfError> {
    if !is_prime(p) || p > u32::MAX as u64 / 2 {
        return Err(GfError::NotPrime(p));
    }
    if e == 0 || m == 0 {
        return Err(GfError::ZeroDegree { e, m });
    }
    let k = e as u64 * m as u64;
    let size = u32::try_from(k)
        .ok()
        .and_then(|k| p.checked_pow(k))
        .filter(|&s| s <= cap)
        .ok_or(GfError::CapExceeded { p, k, cap })?;
    let modulus = fp_poly::smallest_irreducible(p as u32, k as u32);
    Ok(Field(Arc::new(FieldDesc {
        p,
        e,
        m,
        modulus,
        size,
        cap,
    })))
}

impl Field {
    pub fn desc(&self) -> &FieldDesc {
        &self.0
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.degree() as usize],
            field: self.clone(),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Image of an integer under `Z -> F_p -> F`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let mut x = self.zero();
        x.coeffs[0] = n.rem_euclid(self.p as i64) as u32;
        x
    }

    /// The class of `x` modulo the defining polynomial.
    pub fn generator(&self) -> FieldElement {
        let mut x = self.zero();
        if self.degree() == 1 {
            // modulus is x - c
            x.coeffs[0] = ((self.p - self.modulus[0] as u64) % self.p) as u32;
        } else {
            x.coeffs[1] = 1;
        }
        x
    }

    /// Element from explicit polynomial-basis coefficients.
    pub fn element(&self, coeffs: Vec<u32>) -> Result<FieldElement, GfError> {
        let expected = self.degree() as usize;
        if coeffs.len() != expected {
            return Err(GfError::BadLength {
                expected,
                got: coeffs.len(),
            });
        }
        if let Some(&value) = coeffs.iter().find(|&&c| c as u64 >= self.p) {
            return Err(GfError::BadCoefficient { value, p: self.p });
        }
        Ok(FieldElement {
            coeffs,
            field: self.clone(),
        })
    }

    /// Inverse of [`FieldElement::index`]; `index < size`.
    pub fn from_index(&self, mut index: u64) -> FieldElement {
        debug_assert!(index < self.size);
        let mut x = self.zero();
        for c in x.coeffs.iter_mut() {
            *c = (index % self.p) as u32;
            index /= self.p;
        }
        x
    }

    /// All elements, each exactly once, in increasing [`FieldElement::index`].
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.size).map(move |i| self.from_index(i))
    }

    /// Multiply two reduced coefficient vectors modulo the defining polynomial.
    fn mul_coeffs(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let k = self.degree() as usize;
        let p = self.p;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // x^k = -(modulus[0] + ... + modulus[k-1] x^{k-1})
        for top in (k..2 * k - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for j in 0..k {
                let sub = c * self.modulus[j] as u64 % p;
                prod[top - k + j] = (prod[top - k + j] + p - sub) % p;
            }
        }
        prod.truncate(k);
        prod.into_iter().map(|c| c as u32).collect()
    }
}

/// Enumerate every element of `f` in a deterministic order.
pub fn enumerate_field(f: &Field) -> Result<impl Iterator<Item = FieldElement> + '_, GfError> {
    if f.size > f.cap {
        return Err(GfError::CapExceeded {
            p: f.p,
            k: f.degree() as u64,
            cap: f.cap,
        });
    }
    Ok(f.elements())
}

/// Element of a finite field in the polynomial basis.
#[derive(Clone)]
pub struct FieldElement {
    coeffs: Vec<u32>,
    field: Field,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Position in the enumeration order: `sum c_i p^i`.
    pub fn index(&self) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.field.p + c as u64)
    }

    fn check_same(&self, other: &Self) -> Result<(), GfError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(GfError::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, GfError> {
        self.check_same(other)?;
        let p = self.field.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| ((a as u64 + b as u64) % p) as u32)
            .collect();
        Ok(Self {
            coeffs,
            field: self.field.clone(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, GfError> {
        self.check_same(other)?;
        let p = self.field.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| ((a as u64 + p - b as u64) % p) as u32)
            .collect();
        Ok(Self {
            coeffs,
            field: self.field.clone(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, GfError> {
        self.check_same(other)?;
        Ok(Self {
            coeffs: self.field.mul_coeffs(&self.coeffs, &other.coeffs),
            field: self.field.clone(),
        })
    }

    /// Multiply by an integer (reduced into the prime field).
    pub fn scale(&self, n: i64) -> Self {
        let p = self.field.p;
        let c = n.rem_euclid(p as i64) as u64;
        Self {
            coeffs: self.coeffs.iter().map(|&a| (a as u64 * c % p) as u32).collect(),
            field: self.field.clone(),
        }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc.coeffs = self.field.mul_coeffs(&acc.coeffs, &base.coeffs);
            }
            exp >>= 1;
            if exp > 0 {
                base.coeffs = self.field.mul_coeffs(&base.coeffs, &base.coeffs);
            }
        }
        acc
    }

    pub fn inverse(&self) -> Result<Self, GfError> {
        if self.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        Ok(self.pow(self.field.size - 2))
    }

    /// `x^q`, the arithmetic Frobenius over the base field `F_q`.
    pub fn frobenius_q(&self) -> Self {
        self.pow(self.field.q())
    }

    /// Smallest `d ≥ 1` with `x^{q^d} = x`; divides the extension degree `m`.
    pub fn minimal_degree(&self) -> u32 {
        let mut y = self.frobenius_q();
        let mut d = 1;
        while y != *self {
            y = y.frobenius_q();
            d += 1;
        }
        d
    }

    /// The distinct conjugates `x, x^q, x^{q^2}, ...`.
    pub fn frobenius_orbit(&self) -> Vec<Self> {
        let mut orbit = vec![self.clone()];
        let mut y = self.frobenius_q();
        while y != *self {
            let next = y.frobenius_q();
            orbit.push(y);
            y = next;
        }
        orbit
    }
}

/// Frobenius `x -> x^q` as a free function.
pub fn frobenius_q(x: &FieldElement) -> FieldElement {
    x.frobenius_q()
}

pub fn minimal_degree(x: &FieldElement) -> u32 {
    x.minimal_degree()
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by [`FieldElement::index`]; elements of different fields compare by
/// field degree first.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;

            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                self.$checked(rhs).expect("arithmetic across different fields")
            }
        }

        impl $trait for FieldElement {
            type Output = FieldElement;

            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        self.scale(-1)
    }
}

/// A field homomorphism `F_{q^d} -> F_{q^n}` for `d | n`, fixed by the image
/// of the source generator (a root of the source modulus in the target).
#[derive(Debug, Clone)]
pub struct Embedding {
    source: Field,
    target: Field,
    image: FieldElement,
}

impl Embedding {
    /// Find an embedding of `source` into `target`. Both must share `p` and
    /// `e`, and the source extension degree must divide the target's.
    ///
    /// The roots of the source modulus live in the unique subfield of size
    /// `|source|`, which is the image of `y -> y^{(|T|-1)/(|S|-1)}` on the
    /// nonzero target elements; candidates are scanned in index order.
    pub fn new(source: &Field, target: &Field) -> Result<Self, GfError> {
        let no = GfError::NoEmbedding {
            p: source.p,
            from: source.degree() as u64,
            into: target.degree() as u64,
        };
        if source.p != target.p || target.degree() % source.degree() != 0 {
            return Err(no);
        }
        let modulus = source.modulus.clone();
        let is_root = |z: &FieldElement| {
            let mut acc = target.zero();
            for &c in modulus.iter().rev() {
                acc = &(&acc * z) + &target.from_int(c as i64);
            }
            acc.is_zero()
        };
        let zero = target.zero();
        if is_root(&zero) {
            return Ok(Self {
                source: source.clone(),
                target: target.clone(),
                image: zero,
            });
        }
        let exponent = (target.size - 1) / (source.size - 1);
        for i in 1..target.size {
            let z = target.from_index(i).pow(exponent);
            if is_root(&z) {
                return Ok(Self {
                    source: source.clone(),
                    target: target.clone(),
                    image: z,
                });
            }
        }
        Err(no)
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn apply(&self, x: &FieldElement) -> Result<FieldElement, GfError> {
        if *x.field() != self.source {
            return Err(GfError::FieldMismatch);
        }
        let mut acc = self.target.zero();
        for &c in x.coeffs.iter().rev() {
            acc = &(&acc * &self.image) + &self.target.from_int(c as i64);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primitive_element_count;
    use std::collections::{BTreeMap, HashSet};

    #[test]
    fn prime_field_f2() {
        let f = make_field(2, 1, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        let elems: Vec<u64> = enumerate_field(&f).unwrap().map(|x| x.index()).collect();
        assert_eq!(elems, vec![0, 1]);
    }

    #[test]
    fn f4_modulus_and_frobenius() {
        let f = make_field(2, 1, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(enumerate_field(&f).unwrap().count(), 4);
        let g = f.generator();
        // g^2 = g + 1
        assert_eq!(g.frobenius_q(), &g + &f.one());
        assert_eq!(g.minimal_degree(), 2);
    }

    #[test]
    fn f9_modulus_is_x2_plus_1() {
        let f = make_field(3, 1, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn same_inputs_same_modulus() {
        let a = make_field(5, 1, 3).unwrap();
        let b = make_field(5, 1, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.modulus(), b.modulus());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(make_field(4, 1, 1).unwrap_err(), GfError::NotPrime(4));
        assert_eq!(make_field(1, 1, 1).unwrap_err(), GfError::NotPrime(1));
        assert!(matches!(make_field(2, 1, 25), Err(GfError::CapExceeded { .. })));
        assert!(matches!(make_field_with_cap(3, 1, 3, 26), Err(GfError::CapExceeded { .. })));
        assert!(matches!(make_field(2, 0, 1), Err(GfError::ZeroDegree { .. })));
        assert!(make_field(2, 1, 24).is_ok());
    }

    #[test]
    fn cross_field_arithmetic_is_an_error() {
        let a = make_field(2, 1, 2).unwrap().one();
        let b = make_field(2, 1, 3).unwrap().one();
        assert_eq!(a.checked_add(&b).unwrap_err(), GfError::FieldMismatch);
        assert_eq!(a.checked_mul(&b).unwrap_err(), GfError::FieldMismatch);
    }

    #[test]
    fn element_validation() {
        let f = make_field(3, 1, 2).unwrap();
        assert!(f.element(vec![1, 2]).is_ok());
        assert!(matches!(f.element(vec![1]), Err(GfError::BadLength { .. })));
        assert!(matches!(f.element(vec![3, 0]), Err(GfError::BadCoefficient { .. })));
    }

    #[test]
    fn base_field_is_fixed_and_m_iterates_to_identity() {
        // q = 4, m = 3: F_64 viewed over F_4
        let f = make_field(2, 2, 3).unwrap();
        for x in f.elements() {
            let mut y = x.clone();
            for _ in 0..3 {
                y = y.frobenius_q();
            }
            assert_eq!(y, x);
            assert_eq!(3 % x.minimal_degree(), 0);
        }
        assert_eq!(f.zero().minimal_degree(), 1);
        assert_eq!(f.one().minimal_degree(), 1);
    }

    #[test]
    fn degree_census_f64_over_f2() {
        let f = make_field(2, 1, 6).unwrap();
        let mut census: BTreeMap<u32, i128> = BTreeMap::new();
        for x in f.elements() {
            *census.entry(x.minimal_degree()).or_default() += 1;
        }
        let expected: BTreeMap<u32, i128> = [(1, 2), (2, 2), (3, 6), (6, 54)].into_iter().collect();
        assert_eq!(census, expected);
        for (&d, &n) in &census {
            assert_eq!(n, primitive_element_count(2, d as u64));
        }
    }

    #[test]
    fn degree_census_matches_mobius_for_several_fields() {
        for &(p, e, m) in &[(3u64, 1u32, 4u32), (2, 2, 3), (5, 1, 2), (3, 2, 2), (7, 1, 2)] {
            let f = make_field(p, e, m).unwrap();
            let mut census: BTreeMap<u32, i128> = BTreeMap::new();
            for x in f.elements() {
                *census.entry(x.minimal_degree()).or_default() += 1;
            }
            for d in (1..=m).filter(|d| m % d == 0) {
                assert_eq!(
                    census.get(&d).copied().unwrap_or(0),
                    primitive_element_count(p.pow(e), d as u64),
                    "p={p} e={e} m={m} d={d}"
                );
            }
        }
    }

    #[test]
    fn orbit_size_equals_minimal_degree() {
        let f = make_field(3, 1, 4).unwrap();
        for x in f.elements() {
            let orbit = x.frobenius_orbit();
            let distinct: HashSet<_> = orbit.iter().cloned().collect();
            assert_eq!(distinct.len(), orbit.len());
            assert_eq!(orbit.len() as u32, x.minimal_degree());
        }
    }

    #[test]
    fn degree_two_element_inside_degree_four() {
        // q = 2, m = 4: a root of the irreducible quadratic x^2 + x + 1
        let f = make_field(2, 1, 4).unwrap();
        let root = f
            .elements()
            .find(|z| (&(z * z) + z) == f.one())
            .expect("x^2+x+1 splits in F_16");
        assert_eq!(root.minimal_degree(), 2);
    }

    #[test]
    fn inverse_round_trip() {
        let f = make_field(5, 1, 2).unwrap();
        for x in f.elements().filter(|x| !x.is_zero()) {
            assert!((&x * &x.inverse().unwrap()).is_one());
        }
        assert_eq!(f.zero().inverse().unwrap_err(), GfError::DivisionByZero);
    }

    #[test]
    fn embedding_is_a_ring_map_onto_the_subfield() {
        for &(p, e, d, n) in &[(2u64, 1u32, 2u32, 6u32), (3, 1, 2, 4), (2, 2, 2, 4), (5, 1, 1, 3), (2, 1, 3, 6)] {
            let small = make_field(p, e, d).unwrap();
            let big = make_field(p, e, n).unwrap();
            let emb = Embedding::new(&small, &big).unwrap();
            let mut image = HashSet::new();
            for x in small.elements() {
                let ex = emb.apply(&x).unwrap();
                assert_eq!(ex.pow(small.size()), ex, "image lies in the subfield");
                assert_eq!(emb.apply(&x.frobenius_q()).unwrap(), ex.frobenius_q());
                image.insert(ex);
            }
            assert_eq!(image.len() as u64, small.size());
            for x in small.elements().step_by(3) {
                for y in small.elements().step_by(2) {
                    assert_eq!(emb.apply(&(&x * &y)).unwrap(), &emb.apply(&x).unwrap() * &emb.apply(&y).unwrap());
                    assert_eq!(emb.apply(&(&x + &y)).unwrap(), &emb.apply(&x).unwrap() + &emb.apply(&y).unwrap());
                }
            }
        }
        let a = make_field(2, 1, 2).unwrap();
        let b = make_field(2, 1, 3).unwrap();
        assert!(matches!(Embedding::new(&a, &b), Err(GfError::NoEmbedding { .. })));
    }

    fn small_field() -> impl proptest::strategy::Strategy<Value = Field> {
        use proptest::prelude::*;
        prop::sample::select(vec![(2u64, 1u32, 1u32), (2, 1, 4), (3, 1, 2), (2, 2, 3), (5, 1, 2), (7, 1, 1)])
            .prop_map(|(p, e, m)| make_field(p, e, m).unwrap())
    }

    proptest::proptest! {
        #[test]
        fn field_axioms(f in small_field(), a in 0u64..1 << 20, b in 0u64..1 << 20, c in 0u64..1 << 20) {
            let n = f.size();
            let (x, y, z) = (f.from_index(a % n), f.from_index(b % n), f.from_index(c % n));
            proptest::prop_assert_eq!(&x + &y, &y + &x);
            proptest::prop_assert_eq!(&x * &y, &y * &x);
            proptest::prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            proptest::prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            proptest::prop_assert!((&x + &(-&x)).is_zero());
            if !x.is_zero() {
                proptest::prop_assert!((&x * &x.inverse().unwrap()).is_one());
            }
        }

        #[test]
        fn orbit_size_divides_degree(f in small_field(), a in 0u64..1 << 20) {
            let x = f.from_index(a % f.size());
            let d = x.minimal_degree();
            proptest::prop_assert_eq!(x.frobenius_orbit().len() as u32, d);
            proptest::prop_assert_eq!(f.m() % d, 0);
            proptest::prop_assert_eq!(x.pow(f.q().pow(d)), x);
        }
    }
}
