//! Singular curves `Y` with a given smooth normalization `C`, described by
//! their gluing data.
//!
//! A [`SingularFiber`] records one closed singular point `P` of `Y`: its degree
//! `d_P` and the degrees `d_Q` of the closed points of `C` lying over it. Seen
//! over the algebraic closure this is `d_P` singular points, each with
//! `sum(d_Q) / d_P` smooth branches glued transversally (an axial singularity),
//! so the fiber raises the arithmetic genus by `sum(d_Q) - d_P`. A fiber with a
//! single branch of degree `d_P` is a unibranch point; it changes neither
//! `Δ_Y` nor the zeta function.
//!
//! [`UnibranchThickening`]s model the cusp-like subring `F_q + m^{y+1}` at a
//! smooth closed point. Only their genus contribution `degree · y` is kept.

mod formulas;
mod json;
mod profiles;

use std::collections::HashSet;

use thiserror::Error;

use crate::curve::{ClosedPoint, CurveError, CurveModel};
use crate::gf::GfError;

pub use formulas::{
    telescoping_second_form, glued_projective_line_count, glued_projective_line_genus, mobius_orbit_count,
    telescoped_projective_line_count, telescoped_projective_line_genus, telescoping_count,
};
pub use json::{FiberJson, FieldJson, PointJson, SingularCurveJson, ThickeningJson};
pub use profiles::{enumerate_profiles, random_profile, ProfileConstraints};

#[derive(Debug, Error)]
pub enum GlueError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("a fiber needs at least one branch")]
    NoBranches,
    #[error("degrees must be positive")]
    ZeroDegree,
    #[error("branch degree {d_q} is not a multiple of d_P = {d_p}")]
    NotDivisible { d_p: u32, d_q: u32 },
    #[error("invalid gluing degrees: {0}")]
    BadDegrees(String),
    #[error("concrete points do not match the fiber: {0}")]
    ConcreteMismatch(String),
    #[error("closed point {0} is used twice")]
    Overlap(String),
    #[error("invalid thickening: {0}")]
    BadThickening(String),
    #[error("unsatisfiable profile constraints: {0}")]
    Unsatisfiable(String),
    #[error("malformed curve description: {0}")]
    Json(String),
}

/// Closed singular point of degree `d_P` with branches of degrees `d_Q`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SingularFiber {
    d_p: u32,
    /// Sorted ascending.
    branches: Vec<u32>,
    /// Same order as `branches` when present.
    concrete: Option<Vec<ClosedPoint>>,
}

impl SingularFiber {
    /// Abstract fiber, degrees only.
    pub fn new(d_p: u32, mut branches: Vec<u32>) -> Result<Self, GlueError> {
        if branches.is_empty() {
            return Err(GlueError::NoBranches);
        }
        if d_p == 0 || branches.contains(&0) {
            return Err(GlueError::ZeroDegree);
        }
        if let Some(&d_q) = branches.iter().find(|&&d_q| d_q % d_p != 0) {
            return Err(GlueError::NotDivisible { d_p, d_q });
        }
        branches.sort_unstable();
        Ok(Self {
            d_p,
            branches,
            concrete: None,
        })
    }

    /// Fiber glueing the given closed points of `C` over one closed point of
    /// degree `d_p`.
    pub fn glued(d_p: u32, mut points: Vec<ClosedPoint>) -> Result<Self, GlueError> {
        points.sort();
        let mut fiber = Self::new(d_p, points.iter().map(ClosedPoint::degree).collect())?;
        let distinct: HashSet<&ClosedPoint> = points.iter().collect();
        if distinct.len() != points.len() {
            return Err(GlueError::ConcreteMismatch("repeated closed point".into()));
        }
        fiber.concrete = Some(points);
        Ok(fiber)
    }

    pub fn d_p(&self) -> u32 {
        self.d_p
    }

    pub fn branches(&self) -> &[u32] {
        &self.branches
    }

    pub fn concrete(&self) -> Option<&[ClosedPoint]> {
        self.concrete.as_deref()
    }

    /// The same fiber without its points.
    pub fn abstracted(&self) -> Self {
        Self {
            concrete: None,
            ..self.clone()
        }
    }

    /// `#u^{-1}(P)` for one geometric point `P` of the orbit.
    pub fn geometric_size(&self) -> u32 {
        self.branches.iter().sum::<u32>() / self.d_p
    }

    /// Contribution `sum(d_Q) - d_P` to `Δ_Y`.
    pub fn delta(&self) -> u32 {
        self.branches.iter().sum::<u32>() - self.d_p
    }

    pub fn is_singular(&self) -> bool {
        self.delta() > 0
    }
}

/// Unibranch thickening at a closed point of degree `degree`, raising `p_a`
/// by `y` at each of its geometric points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnibranchThickening {
    degree: u32,
    y: u32,
    location: Option<ClosedPoint>,
}

impl UnibranchThickening {
    pub fn new(degree: u32, y: u32) -> Result<Self, GlueError> {
        if degree == 0 || y == 0 {
            return Err(GlueError::BadThickening("degree and y must be positive".into()));
        }
        Ok(Self {
            degree,
            y,
            location: None,
        })
    }

    pub fn at(location: ClosedPoint, y: u32) -> Result<Self, GlueError> {
        let mut t = Self::new(location.degree(), y)?;
        t.location = Some(location);
        Ok(t)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn y(&self) -> u32 {
        self.y
    }

    pub fn location(&self) -> Option<&ClosedPoint> {
        self.location.as_ref()
    }

    pub fn genus_increment(&self) -> u64 {
        self.degree as u64 * self.y as u64
    }
}

/// A curve `Y` given by its normalization and gluing data. Fibers and
/// thickenings are kept sorted, so two curves built from the same data in
/// different orders compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularCurve {
    normalization: CurveModel,
    fibers: Vec<SingularFiber>,
    thickenings: Vec<UnibranchThickening>,
}

impl SingularCurve {
    pub fn new(
        normalization: CurveModel,
        mut fibers: Vec<SingularFiber>,
        mut thickenings: Vec<UnibranchThickening>,
    ) -> Result<Self, GlueError> {
        fibers.sort();
        thickenings.sort();
        let mut used: HashSet<ClosedPoint> = HashSet::new();
        let mut claim = |cp: &ClosedPoint| -> Result<(), GlueError> {
            let pt = cp.representative();
            if pt.field().p() != normalization.p() || pt.field().e() != normalization.e() {
                return Err(GlueError::ConcreteMismatch(format!("{pt} is not over an extension of F_q")));
            }
            if !normalization.contains(pt) {
                return Err(GlueError::ConcreteMismatch(format!("{pt} is not on the normalization")));
            }
            if !used.insert(cp.clone()) {
                return Err(GlueError::Overlap(pt.to_string()));
            }
            Ok(())
        };
        for fiber in &fibers {
            if let Some(points) = &fiber.concrete {
                let degrees: Vec<u32> = points.iter().map(ClosedPoint::degree).collect();
                if degrees != fiber.branches {
                    return Err(GlueError::ConcreteMismatch(format!(
                        "branch degrees {:?} but points of degrees {degrees:?}",
                        fiber.branches
                    )));
                }
                for cp in points {
                    claim(cp)?;
                }
            }
        }
        for t in &thickenings {
            if let Some(cp) = &t.location {
                if cp.degree() != t.degree {
                    return Err(GlueError::BadThickening(format!(
                        "degree {} but located at a point of degree {}",
                        t.degree,
                        cp.degree()
                    )));
                }
                claim(cp)?;
            }
        }
        Ok(Self {
            normalization,
            fibers,
            thickenings,
        })
    }

    /// `C` itself, no singularities.
    pub fn smooth(normalization: CurveModel) -> Self {
        Self {
            normalization,
            fibers: Vec::new(),
            thickenings: Vec::new(),
        }
    }

    pub fn normalization(&self) -> &CurveModel {
        &self.normalization
    }

    pub fn fibers(&self) -> &[SingularFiber] {
        &self.fibers
    }

    pub fn thickenings(&self) -> &[UnibranchThickening] {
        &self.thickenings
    }

    /// Whether every fiber carries its closed points.
    pub fn is_concrete(&self) -> bool {
        self.fibers.iter().all(|f| f.concrete.is_some())
    }

    /// One gluing step: collapse a single Frobenius orbit of degree `t ≥ 2`
    /// to a rational point.
    pub fn glue_orbit(&self, orbit: ClosedPoint) -> Result<Self, GlueError> {
        if orbit.degree() < 2 {
            return Err(GlueError::BadDegrees(
                "gluing an orbit needs a closed point of degree at least 2".into(),
            ));
        }
        let mut fibers = self.fibers.clone();
        fibers.push(SingularFiber::glued(1, vec![orbit])?);
        Self::new(self.normalization.clone(), fibers, self.thickenings.clone())
    }

    pub fn with_thickening(&self, t: UnibranchThickening) -> Result<Self, GlueError> {
        let mut thickenings = self.thickenings.clone();
        thickenings.push(t);
        Self::new(self.normalization.clone(), self.fibers.clone(), thickenings)
    }

    /// `Δ_Y = sum over fibers of (sum d_Q - d_P)`.
    pub fn delta(&self) -> u64 {
        self.fibers.iter().map(|f| f.delta() as u64).sum()
    }

    /// `p_a(Y) = g(C) + Δ_Y + sum over thickenings of degree · y`.
    pub fn arithmetic_genus(&self) -> u64 {
        self.normalization.genus() as u64
            + self.delta()
            + self.thickenings.iter().map(UnibranchThickening::genus_increment).sum::<u64>()
    }

    /// Number of closed singular points (fibers with more than one geometric
    /// branch, plus thickenings).
    pub fn singular_closed_points(&self) -> usize {
        self.fibers.iter().filter(|f| f.is_singular()).count() + self.thickenings.len()
    }
}

/// `(p_a(Y), Δ_Y)`.
pub fn genus_and_delta(y: &SingularCurve) -> (u64, u64) {
    (y.arithmetic_genus(), y.delta())
}

/// Glue every listed orbit, one step at a time, in the given order.
pub fn glue_orbits(
    c: &CurveModel,
    orbits: impl IntoIterator<Item = ClosedPoint>,
) -> Result<SingularCurve, GlueError> {
    orbits
        .into_iter()
        .try_fold(SingularCurve::smooth(c.clone()), |y, cp| y.glue_orbit(cp))
}

/// `C_{[q,n]}`: every closed point of degree `2 ≤ t ≤ n` is glued to a
/// rational point.
pub fn build_glued_curve(c: &CurveModel, n: u32) -> Result<SingularCurve, GlueError> {
    if n < 2 {
        return Err(GlueError::BadDegrees(format!("n must be at least 2, got {n}")));
    }
    build_selective_glued_curve(c, &(2..=n).collect::<Vec<_>>())
}

/// `C_{[q; t_1, ..., t_s]}`: glue only the closed points whose degree is one of
/// the strictly increasing `ts`, all at least 2.
pub fn build_selective_glued_curve(c: &CurveModel, ts: &[u32]) -> Result<SingularCurve, GlueError> {
    if ts.is_empty() {
        return Err(GlueError::BadDegrees("empty degree list".into()));
    }
    if ts[0] < 2 {
        return Err(GlueError::BadDegrees(format!("degree {} is below 2", ts[0])));
    }
    if ts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(GlueError::BadDegrees(format!("{ts:?} is not strictly increasing")));
    }
    let mut orbits = Vec::new();
    for &t in ts {
        orbits.extend(c.closed_points_of_degree(t)?);
    }
    glue_orbits(c, orbits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveModel;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn p1(p: u64) -> CurveModel {
        CurveModel::projective_line(p, 1).unwrap()
    }

    fn branch_histogram(y: &SingularCurve) -> Vec<(u32, Vec<u32>)> {
        y.fibers().iter().map(|f| (f.d_p(), f.branches().to_vec())).collect()
    }

    #[test]
    fn fiber_invariants() {
        assert!(matches!(SingularFiber::new(1, vec![]), Err(GlueError::NoBranches)));
        assert!(matches!(SingularFiber::new(0, vec![1]), Err(GlueError::ZeroDegree)));
        assert!(matches!(
            SingularFiber::new(2, vec![3]),
            Err(GlueError::NotDivisible { d_p: 2, d_q: 3 })
        ));
        let f = SingularFiber::new(2, vec![4, 2]).unwrap();
        assert_eq!(f.branches(), &[2, 4]);
        assert_eq!(f.geometric_size(), 3);
        assert_eq!(f.delta(), 4);
        assert!(!SingularFiber::new(3, vec![3]).unwrap().is_singular());
    }

    #[test]
    fn glued_projective_line_over_f2() {
        let y = build_glued_curve(&p1(2), 2).unwrap();
        assert_eq!(branch_histogram(&y), vec![(1, vec![2])]);
        assert_eq!(genus_and_delta(&y), (1, 1));

        let y3 = build_glued_curve(&p1(2), 3).unwrap();
        assert_eq!(y3.fibers().len(), 3);
        assert_eq!(
            y3.fibers().iter().filter(|f| f.branches() == [3]).count(),
            2
        );
        assert_eq!(y3.arithmetic_genus(), 5);
    }

    #[test]
    fn glued_projective_line_over_f3() {
        let y = build_glued_curve(&p1(3), 2).unwrap();
        assert_eq!(y.fibers().len(), 3);
        assert_eq!(genus_and_delta(&y), (3, 3));
    }

    #[test]
    fn selective_gluing() {
        let c = p1(2);
        assert_eq!(build_selective_glued_curve(&c, &[2]).unwrap(), build_glued_curve(&c, 2).unwrap());
        let y = build_selective_glued_curve(&c, &[3]).unwrap();
        assert_eq!(branch_histogram(&y), vec![(1, vec![3]), (1, vec![3])]);
        let y = build_selective_glued_curve(&p1(3), &[2, 3]).unwrap();
        assert_eq!(y.fibers().iter().filter(|f| f.branches() == [2]).count(), 3);
        assert_eq!(y.fibers().iter().filter(|f| f.branches() == [3]).count(), 8);
    }

    #[test]
    fn constructor_preconditions() {
        let c = p1(2);
        assert!(matches!(build_glued_curve(&c, 1), Err(GlueError::BadDegrees(_))));
        assert!(matches!(build_selective_glued_curve(&c, &[]), Err(GlueError::BadDegrees(_))));
        assert!(matches!(build_selective_glued_curve(&c, &[3, 2]), Err(GlueError::BadDegrees(_))));
        assert!(matches!(build_selective_glued_curve(&c, &[1, 2]), Err(GlueError::BadDegrees(_))));
        let capped = CurveModel::projective_line_with_cap(2, 1, 8).unwrap();
        assert!(matches!(build_glued_curve(&capped, 4), Err(GlueError::Curve(_))));
    }

    #[test]
    fn gluing_order_does_not_matter() {
        let c = CurveModel::projective_line(3, 1).unwrap();
        let reference = build_glued_curve(&c, 4).unwrap();
        let mut orbits: Vec<ClosedPoint> = (2..=4)
            .flat_map(|t| c.closed_points_of_degree(t).unwrap())
            .collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            orbits.shuffle(&mut rng);
            assert_eq!(glue_orbits(&c, orbits.clone()).unwrap(), reference);
        }
    }

    #[test]
    fn overlapping_fibers_are_rejected() {
        let c = p1(2);
        let cp = c.closed_points_of_degree(2).unwrap().remove(0);
        let y = SingularCurve::smooth(c.clone()).glue_orbit(cp.clone()).unwrap();
        assert!(matches!(y.glue_orbit(cp.clone()), Err(GlueError::Overlap(_))));
        assert!(matches!(
            y.with_thickening(UnibranchThickening::at(cp, 1).unwrap()),
            Err(GlueError::Overlap(_))
        ));
        let rational = c.closed_points_of_degree(1).unwrap();
        assert!(matches!(
            SingularFiber::glued(1, vec![rational[0].clone(), rational[0].clone()]),
            Err(GlueError::ConcreteMismatch(_))
        ));
        assert!(matches!(y.glue_orbit(rational[0].clone()), Err(GlueError::BadDegrees(_))));
    }

    #[test]
    fn concrete_points_must_lie_on_the_normalization() {
        let e = CurveModel::plane(2, 1, &[(1, 0, 2, 1), (1, 0, 1, 2), (1, 3, 0, 0)]).unwrap();
        let foreign = p1(3).closed_points_of_degree(2).unwrap().remove(0);
        let fiber = SingularFiber::glued(1, vec![foreign]).unwrap();
        assert!(matches!(
            SingularCurve::new(e, vec![fiber], vec![]),
            Err(GlueError::ConcreteMismatch(_))
        ));
    }

    #[test]
    fn thickenings_only_change_genus() {
        let y = SingularCurve::smooth(p1(5));
        let t = UnibranchThickening::new(1, 2).unwrap();
        assert_eq!(genus_and_delta(&y.with_thickening(t).unwrap()), (2, 0));
        let t3 = UnibranchThickening::new(3, 2).unwrap();
        assert_eq!(y.with_thickening(t3).unwrap().arithmetic_genus(), 6);
        assert!(UnibranchThickening::new(1, 0).is_err());
        let smooth = SingularCurve::smooth(p1(2));
        assert_eq!(genus_and_delta(&smooth), (0, 0));
    }
}
