//! Smooth projective curves over `F_q`: the projective line and smooth plane
//! curves with coefficients in the prime field.
//!
//! Points over `F_{q^i}` are enumerated inside the field `F_{q^i}` itself and
//! carried in normalized homogeneous coordinates: `[a:1]` or `[1:0]` on the
//! line, first nonzero coordinate equal to one in the plane. Both conventions
//! are preserved by the coordinate-wise Frobenius, so comparing normalized
//! coordinates is enough to detect fixed points and orbits.

mod numerator;
mod spec;

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::gf::{make_field_with_cap, Embedding, Field, FieldElement, GfError, DEFAULT_CAP};

pub use numerator::{
    counts_from_numerator, extremality_of_c, zeta_numerator_from_counts, Extremality, ZetaNumerator,
};
pub use spec::CurveSpec;

#[derive(Debug, Error)]
pub enum CurveError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("plane curve polynomial is zero")]
    ZeroPolynomial,
    #[error("plane curve polynomial is not homogeneous (degrees {0} and {1})")]
    NotHomogeneous(u32, u32),
    #[error("plane curve has degree 0")]
    ConstantPolynomial,
    #[error("singular point {point} over F_q^{degree}: all partial derivatives vanish")]
    Singular { degree: u32, point: String },
    #[error("Weil bound violated over F_q^{i}: N = {count}, q = {q}, g = {genus}")]
    WeilBound { i: u32, count: u64, q: u64, genus: u32 },
    #[error("point counts are inconsistent: {0}")]
    InconsistentCounts(String),
    #[error("zeta numerator does not reproduce N_{i}: expected {expected}, got {got}")]
    RoundTrip { i: u32, expected: u64, got: BigInt },
    #[error("need N_1..N_{needed} but the table stops at N_{have}")]
    MissingCounts { needed: u32, have: u32 },
    #[error("unknown curve kind {0:?} (expected \"p1\" or \"plane\")")]
    UnknownKind(String),
    #[error("invalid point: {0}")]
    BadPoint(String),
    #[error("extension degree must be positive")]
    ZeroExtension,
}

/// One term `coef · x^ex y^ey z^ez` with `coef` reduced modulo `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub ex: u32,
    pub ey: u32,
    pub ez: u32,
    pub coef: u32,
}

impl Monomial {
    fn degree(&self) -> u32 {
        self.ex + self.ey + self.ez
    }
}

/// Homogeneous polynomial in `x, y, z` over `F_p`, like terms merged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanePolynomial {
    p: u64,
    degree: u32,
    terms: Vec<Monomial>,
}

impl PlanePolynomial {
    /// Terms are `(coef, ex, ey, ez)`; coefficients are reduced modulo `p`.
    pub fn new(p: u64, terms: &[(i64, u32, u32, u32)]) -> Result<Self, CurveError> {
        let mut merged: std::collections::BTreeMap<(u32, u32, u32), u64> = Default::default();
        for &(c, ex, ey, ez) in terms {
            let slot = merged.entry((ex, ey, ez)).or_default();
            *slot = (*slot + c.rem_euclid(p as i64) as u64) % p;
        }
        let terms: Vec<Monomial> = merged
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|((ex, ey, ez), c)| Monomial {
                ex,
                ey,
                ez,
                coef: c as u32,
            })
            .collect();
        let first = terms.first().ok_or(CurveError::ZeroPolynomial)?;
        let degree = first.degree();
        if let Some(t) = terms.iter().find(|t| t.degree() != degree) {
            return Err(CurveError::NotHomogeneous(degree, t.degree()));
        }
        if degree == 0 {
            return Err(CurveError::ConstantPolynomial);
        }
        Ok(Self { p, degree, terms })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    /// Formal partial derivative in variable 0, 1 or 2; may be zero (no terms).
    fn partial(&self, var: usize) -> Vec<Monomial> {
        self.terms
            .iter()
            .filter_map(|t| {
                let mut t = *t;
                let exp = match var {
                    0 => &mut t.ex,
                    1 => &mut t.ey,
                    _ => &mut t.ez,
                };
                let c = (t.coef as u64 * (*exp as u64 % self.p)) % self.p;
                if c == 0 {
                    return None;
                }
                *exp -= 1;
                t.coef = c as u32;
                Some(t)
            })
            .collect()
    }

    fn powers(x: &FieldElement, n: u32) -> Vec<FieldElement> {
        let mut out = Vec::with_capacity(n as usize + 1);
        out.push(x.field().one());
        for i in 0..n as usize {
            let next = &out[i] * x;
            out.push(next);
        }
        out
    }

    fn eval_terms(terms: &[Monomial], degree: u32, pt: &[FieldElement]) -> FieldElement {
        let f = pt[0].field();
        let px = Self::powers(&pt[0], degree);
        let py = Self::powers(&pt[1], degree);
        let pz = Self::powers(&pt[2], degree);
        terms.iter().fold(f.zero(), |acc, t| {
            let m = &(&px[t.ex as usize] * &py[t.ey as usize]) * &pz[t.ez as usize];
            &acc + &m.scale(t.coef as i64)
        })
    }

    pub fn eval(&self, pt: &[FieldElement]) -> FieldElement {
        Self::eval_terms(&self.terms, self.degree, pt)
    }

    /// Coefficients, indexed by the power of `z`, of `F(x, y, z)` for fixed
    /// `x` and `y`.
    fn z_coefficients(&self, x: &FieldElement, y: &FieldElement) -> Vec<FieldElement> {
        let f = x.field();
        let px = Self::powers(x, self.degree);
        let py = Self::powers(y, self.degree);
        let mut out = vec![f.zero(); self.degree as usize + 1];
        for t in &self.terms {
            let m = (&px[t.ex as usize] * &py[t.ey as usize]).scale(t.coef as i64);
            out[t.ez as usize] = &out[t.ez as usize] + &m;
        }
        out
    }
}

fn horner(coeffs: &[FieldElement], z: &FieldElement) -> FieldElement {
    coeffs
        .iter()
        .rev()
        .fold(z.field().zero(), |acc, c| &(&acc * z) + c)
}

impl fmt::Display for PlanePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let mut s = if t.coef == 1 { String::new() } else { t.coef.to_string() };
                for (name, e) in [("x", t.ex), ("y", t.ey), ("z", t.ez)] {
                    match e {
                        0 => {}
                        1 => s.push_str(name),
                        e => s.push_str(&format!("{name}^{e}")),
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveKind {
    ProjectiveLine,
    PlaneCurve(PlanePolynomial),
}

/// The smooth curve `C` over `F_q`, `q = p^e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveModel {
    kind: CurveKind,
    p: u64,
    e: u32,
    base: Field,
    genus: u32,
}

impl CurveModel {
    pub fn projective_line(p: u64, e: u32) -> Result<Self, CurveError> {
        Self::projective_line_with_cap(p, e, DEFAULT_CAP)
    }

    pub fn projective_line_with_cap(p: u64, e: u32, cap: u64) -> Result<Self, CurveError> {
        let base = make_field_with_cap(p, e, 1, cap)?;
        Ok(Self {
            kind: CurveKind::ProjectiveLine,
            p,
            e,
            base,
            genus: 0,
        })
    }

    /// Plane curve `F(x, y, z) = 0` with `F` given as `(coef, ex, ey, ez)` terms.
    pub fn plane(p: u64, e: u32, terms: &[(i64, u32, u32, u32)]) -> Result<Self, CurveError> {
        Self::plane_with_cap(p, e, terms, DEFAULT_CAP)
    }

    pub fn plane_with_cap(
        p: u64,
        e: u32,
        terms: &[(i64, u32, u32, u32)],
        cap: u64,
    ) -> Result<Self, CurveError> {
        let base = make_field_with_cap(p, e, 1, cap)?;
        let poly = PlanePolynomial::new(p, terms)?;
        let d = poly.degree();
        Ok(Self {
            kind: CurveKind::PlaneCurve(poly),
            p,
            e,
            base,
            genus: (d - 1) * (d - 2) / 2,
        })
    }

    pub fn kind(&self) -> &CurveKind {
        &self.kind
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.base.q()
    }

    pub fn base_field(&self) -> &Field {
        &self.base
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn cap(&self) -> u64 {
        self.base.cap()
    }

    /// `F_{q^i}` under this curve's element cap.
    pub fn field(&self, i: u32) -> Result<Field, CurveError> {
        if i == 0 {
            return Err(CurveError::ZeroExtension);
        }
        Ok(make_field_with_cap(self.p, self.e, i, self.cap())?)
    }

    /// Normalize homogeneous coordinates and check the point lies on `C`.
    pub fn point(&self, coords: Vec<FieldElement>) -> Result<GeometricPoint, CurveError> {
        let expected = match self.kind {
            CurveKind::ProjectiveLine => 2,
            CurveKind::PlaneCurve(_) => 3,
        };
        if coords.len() != expected {
            return Err(CurveError::BadPoint(format!(
                "expected {expected} coordinates, got {}",
                coords.len()
            )));
        }
        let field = coords[0].field().clone();
        if coords.iter().any(|c| *c.field() != field) {
            return Err(CurveError::BadPoint("coordinates from different fields".into()));
        }
        if field.p() != self.p || field.e() != self.e {
            return Err(CurveError::BadPoint("coordinates not in an extension of F_q".into()));
        }
        let pivot = match self.kind {
            CurveKind::ProjectiveLine => coords.iter().rposition(|c| !c.is_zero()),
            CurveKind::PlaneCurve(_) => coords.iter().position(|c| !c.is_zero()),
        }
        .ok_or_else(|| CurveError::BadPoint("all coordinates are zero".into()))?;
        let inv = coords[pivot].inverse()?;
        let coords: Vec<FieldElement> = coords.iter().map(|c| c * &inv).collect();
        let pt = GeometricPoint { coords };
        if !self.contains(&pt) {
            return Err(CurveError::BadPoint(format!("{pt} is not on the curve")));
        }
        Ok(pt)
    }

    pub fn contains(&self, pt: &GeometricPoint) -> bool {
        match &self.kind {
            CurveKind::ProjectiveLine => pt.coords.len() == 2,
            CurveKind::PlaneCurve(poly) => pt.coords.len() == 3 && poly.eval(&pt.coords).is_zero(),
        }
    }

    /// Every point of `C(F_{q^i})` exactly once, in increasing normalized
    /// coordinate order.
    pub fn enumerate_points(
        &self,
        i: u32,
    ) -> Result<Box<dyn Iterator<Item = GeometricPoint>>, CurveError> {
        let f = self.field(i)?;
        match &self.kind {
            CurveKind::ProjectiveLine => Ok(Box::new(projective_line_points(f))),
            CurveKind::PlaneCurve(poly) => Ok(Box::new(plane_points(f, poly.clone()))),
        }
    }

    /// Jacobian criterion at one point of a plane curve.
    fn is_smooth_at(&self, pt: &GeometricPoint) -> bool {
        match &self.kind {
            CurveKind::ProjectiveLine => true,
            CurveKind::PlaneCurve(poly) => (0..3).any(|var| {
                let d = poly.partial(var);
                !PlanePolynomial::eval_terms(&d, poly.degree, &pt.coords).is_zero()
            }),
        }
    }

    /// `N_i = #C(F_{q^i})` for `i = 1..=n_max`.
    ///
    /// Plane curves are enumerated, and every point found is checked against
    /// the Jacobian criterion; the projective line uses `q^i + 1`. Each count
    /// must satisfy the Weil bound.
    pub fn count_points(&self, n_max: u32) -> Result<PointCountTable, CurveError> {
        let q = self.q();
        let mut counts = Vec::with_capacity(n_max as usize);
        for i in 1..=n_max {
            let field = self.field(i)?;
            let n = match self.kind {
                CurveKind::ProjectiveLine => field.size() + 1,
                CurveKind::PlaneCurve(_) => {
                    let mut n = 0u64;
                    for pt in self.enumerate_points(i)? {
                        if !self.is_smooth_at(&pt) {
                            return Err(CurveError::Singular {
                                degree: i,
                                point: pt.to_string(),
                            });
                        }
                        n += 1;
                    }
                    n
                }
            };
            if !weil_bound_holds(q, self.genus, i, n) {
                return Err(CurveError::WeilBound {
                    i,
                    count: n,
                    q,
                    genus: self.genus,
                });
            }
            counts.push(n);
        }
        Ok(PointCountTable {
            q,
            genus: self.genus,
            counts,
        })
    }

    /// Frobenius orbits of size exactly `t`, one [`ClosedPoint`] each, sorted by
    /// representative.
    pub fn closed_points_of_degree(&self, t: u32) -> Result<Vec<ClosedPoint>, CurveError> {
        let mut seen: HashSet<GeometricPoint> = HashSet::new();
        let mut out = Vec::new();
        for pt in self.enumerate_points(t)? {
            if seen.contains(&pt) || pt.degree() != t {
                continue;
            }
            let orbit = pt.frobenius_orbit();
            let representative = orbit.iter().min().cloned().expect("orbit is non-empty");
            seen.extend(orbit);
            out.push(ClosedPoint {
                representative,
                degree: t,
            });
        }
        out.sort();
        Ok(out)
    }

    pub fn to_spec(&self) -> CurveSpec {
        CurveSpec::from_model(self)
    }
}

impl fmt::Display for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            CurveKind::ProjectiveLine => write!(f, "P^1 over F_{}", self.q()),
            CurveKind::PlaneCurve(poly) => write!(f, "{{{poly} = 0}} over F_{}", self.q()),
        }
    }
}

fn projective_line_points(f: Field) -> impl Iterator<Item = GeometricPoint> {
    let size = f.size();
    let zero = f.zero();
    let one = f.one();
    let head = [
        GeometricPoint {
            coords: vec![zero.clone(), one.clone()],
        },
        GeometricPoint {
            coords: vec![one.clone(), zero],
        },
    ];
    head.into_iter().chain((1..size).map(move |i| GeometricPoint {
        coords: vec![f.from_index(i), one.clone()],
    }))
}

fn plane_points(f: Field, poly: PlanePolynomial) -> impl Iterator<Item = GeometricPoint> {
    let zero = f.zero();
    let one = f.one();
    let origin = vec![zero.clone(), zero.clone(), one.clone()];
    let head = poly.eval(&origin).is_zero().then_some(GeometricPoint { coords: origin });
    let row = move |x: FieldElement, y: FieldElement| -> Vec<GeometricPoint> {
        let zc = poly.z_coefficients(&x, &y);
        x.field()
            .elements()
            .filter(|z| horner(&zc, z).is_zero())
            .map(|z| GeometricPoint {
                coords: vec![x.clone(), y.clone(), z],
            })
            .collect()
    };
    let size = f.size();
    let line = row(zero, one.clone());
    let rest = (0..size).flat_map(move |yi| row(one.clone(), f.from_index(yi)));
    head.into_iter().chain(line).chain(rest)
}

/// `(N - q^i - 1)^2 <= 4 g^2 q^i`.
pub fn weil_bound_holds(q: u64, genus: u32, i: u32, count: u64) -> bool {
    let qi = BigInt::from(q).pow(i);
    let diff = BigInt::from(count) - &qi - 1;
    let g = BigInt::from(genus);
    &diff * &diff <= BigInt::from(4) * &g * &g * qi
}

/// A point of `C` over some `F_{q^i}`, in normalized homogeneous coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeometricPoint {
    coords: Vec<FieldElement>,
}

impl GeometricPoint {
    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn field(&self) -> &Field {
        self.coords[0].field()
    }

    pub fn frobenius_q(&self) -> Self {
        Self {
            coords: self.coords.iter().map(FieldElement::frobenius_q).collect(),
        }
    }

    /// Size of the Frobenius orbit, i.e. the smallest `d` with `F_q^d(P) = P`.
    pub fn degree(&self) -> u32 {
        let mut y = self.frobenius_q();
        let mut d = 1;
        while y != *self {
            y = y.frobenius_q();
            d += 1;
        }
        d
    }

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

    /// Image under a field embedding; normalization survives because
    /// embeddings fix 0 and 1.
    pub fn embed(&self, emb: &Embedding) -> Result<Self, GfError> {
        Ok(Self {
            coords: self
                .coords
                .iter()
                .map(|c| emb.apply(c))
                .collect::<Result<_, _>>()?,
        })
    }
}

impl fmt::Display for GeometricPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

impl fmt::Debug for GeometricPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {:?}", self.field())
    }
}

/// A Frobenius orbit of `degree` geometric points, stored by its smallest
/// member (coordinates in `F_{q^degree}`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosedPoint {
    degree: u32,
    representative: GeometricPoint,
}

impl ClosedPoint {
    /// Closed point through `pt`; the representative is re-chosen as the
    /// orbit minimum so any member gives the same value.
    pub fn through(pt: &GeometricPoint) -> Self {
        let orbit = pt.frobenius_orbit();
        Self {
            degree: orbit.len() as u32,
            representative: orbit.into_iter().min().expect("orbit is non-empty"),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn representative(&self) -> &GeometricPoint {
        &self.representative
    }

    pub fn orbit(&self) -> Vec<GeometricPoint> {
        self.representative.frobenius_orbit()
    }
}

/// `N_i = #C(F_{q^i})` for `i = 1..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointCountTable {
    pub q: u64,
    pub genus: u32,
    /// `counts[i - 1] = N_i`.
    pub counts: Vec<u64>,
}

impl PointCountTable {
    pub fn get(&self, i: u32) -> Option<u64> {
        i.checked_sub(1).and_then(|k| self.counts.get(k as usize).copied())
    }

    pub fn n_max(&self) -> u32 {
        self.counts.len() as u32
    }

    /// The table restricted to `N_1..N_n`.
    pub fn truncated(&self, n: u32) -> Self {
        Self {
            counts: self.counts.iter().take(n as usize).copied().collect(),
            ..self.clone()
        }
    }
}
