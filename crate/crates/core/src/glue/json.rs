//! JSON form of a [`SingularCurve`]:
//!
//! ```text
//! {"curve": {...},
//!  "fibers": [{"dP": 1, "branches": [2], "points": [...]}],
//!  "thickenings": [{"degree": 1, "y": 2, "point": {...}}]}
//! ```
//!
//! A point is `{"field": {"p", "e", "m", "modulus"}, "coords": [[c_0, ...], ...]}`
//! with each coordinate given by its coefficients over `F_p` in the named field.

use serde::{Deserialize, Serialize};

use super::{GlueError, SingularCurve, SingularFiber, UnibranchThickening};
use crate::curve::{ClosedPoint, CurveModel, CurveSpec, GeometricPoint};
use crate::gf::make_field_with_cap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u64,
    pub e: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub field: FieldJson,
    pub coords: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberJson {
    #[serde(rename = "dP")]
    pub d_p: u32,
    pub branches: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<PointJson>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThickeningJson {
    pub degree: u32,
    pub y: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<PointJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularCurveJson {
    pub curve: CurveSpec,
    pub fibers: Vec<FiberJson>,
    #[serde(default)]
    pub thickenings: Vec<ThickeningJson>,
}

impl PointJson {
    fn from_point(pt: &GeometricPoint) -> Self {
        let f = pt.field();
        Self {
            field: FieldJson {
                p: f.p(),
                e: f.e(),
                m: f.m(),
                modulus: f.modulus().to_vec(),
            },
            coords: pt.coords().iter().map(|c| c.coeffs().to_vec()).collect(),
        }
    }

    fn to_closed_point(&self, c: &CurveModel) -> Result<ClosedPoint, GlueError> {
        let fj = &self.field;
        let f = make_field_with_cap(fj.p, fj.e, fj.m, c.cap())?;
        if f.modulus() != fj.modulus.as_slice() {
            return Err(GlueError::Json(format!(
                "modulus {:?} differs from the canonical {:?}",
                fj.modulus,
                f.modulus()
            )));
        }
        let coords = self
            .coords
            .iter()
            .map(|cs| f.element(cs.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ClosedPoint::through(&c.point(coords)?))
    }
}

impl SingularCurve {
    pub fn to_json(&self) -> SingularCurveJson {
        let point = |cp: &ClosedPoint| PointJson::from_point(cp.representative());
        SingularCurveJson {
            curve: self.normalization().to_spec(),
            fibers: self
                .fibers()
                .iter()
                .map(|f| FiberJson {
                    d_p: f.d_p(),
                    branches: f.branches().to_vec(),
                    points: f.concrete().map(|ps| ps.iter().map(point).collect()),
                })
                .collect(),
            thickenings: self
                .thickenings()
                .iter()
                .map(|t| ThickeningJson {
                    degree: t.degree(),
                    y: t.y(),
                    point: t.location().map(point),
                })
                .collect(),
        }
    }

    /// Rebuild and revalidate; fields are created under `cap`.
    pub fn from_json(j: &SingularCurveJson, cap: u64) -> Result<Self, GlueError> {
        let c = j.curve.to_model(cap)?;
        let mut fibers = Vec::with_capacity(j.fibers.len());
        for fj in &j.fibers {
            let fiber = match &fj.points {
                None => SingularFiber::new(fj.d_p, fj.branches.clone())?,
                Some(points) => {
                    let points = points
                        .iter()
                        .map(|p| p.to_closed_point(&c))
                        .collect::<Result<Vec<_>, _>>()?;
                    let fiber = SingularFiber::glued(fj.d_p, points)?;
                    let mut declared = fj.branches.clone();
                    declared.sort_unstable();
                    if declared != fiber.branches() {
                        return Err(GlueError::ConcreteMismatch(format!(
                            "declared branches {:?}, points have degrees {:?}",
                            fj.branches,
                            fiber.branches()
                        )));
                    }
                    fiber
                }
            };
            fibers.push(fiber);
        }
        let mut thickenings = Vec::with_capacity(j.thickenings.len());
        for tj in &j.thickenings {
            let t = match &tj.point {
                None => UnibranchThickening::new(tj.degree, tj.y)?,
                Some(p) => {
                    let cp = p.to_closed_point(&c)?;
                    if cp.degree() != tj.degree {
                        return Err(GlueError::BadThickening(format!(
                            "degree {} but the point has degree {}",
                            tj.degree,
                            cp.degree()
                        )));
                    }
                    UnibranchThickening::at(cp, tj.y)?
                }
            };
            thickenings.push(t);
        }
        Self::new(c, fibers, thickenings)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    pub fn from_json_str(s: &str, cap: u64) -> Result<Self, GlueError> {
        let j: SingularCurveJson = serde_json::from_str(s).map_err(|e| GlueError::Json(e.to_string()))?;
        Self::from_json(&j, cap)
    }
}
