//! JSON description of a curve model:
//! `{"kind": "p1" | "plane", "p": int, "e": int, "poly": [[coef, ex, ey, ez], ...]}`.

use serde::{Deserialize, Serialize};

use super::{CurveError, CurveKind, CurveModel};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub kind: String,
    pub p: u64,
    pub e: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub poly: Vec<[i64; 4]>,
}

impl CurveSpec {
    pub fn from_model(c: &CurveModel) -> Self {
        match c.kind() {
            CurveKind::ProjectiveLine => Self {
                kind: "p1".into(),
                p: c.p(),
                e: c.e(),
                poly: Vec::new(),
            },
            CurveKind::PlaneCurve(poly) => Self {
                kind: "plane".into(),
                p: c.p(),
                e: c.e(),
                poly: poly
                    .terms()
                    .iter()
                    .map(|t| [t.coef as i64, t.ex as i64, t.ey as i64, t.ez as i64])
                    .collect(),
            },
        }
    }

    pub fn to_model(&self, cap: u64) -> Result<CurveModel, CurveError> {
        match self.kind.as_str() {
            "p1" => CurveModel::projective_line_with_cap(self.p, self.e, cap),
            "plane" => {
                let mut terms = Vec::with_capacity(self.poly.len());
                for &[c, ex, ey, ez] in &self.poly {
                    let exp = |v: i64| {
                        u32::try_from(v)
                            .map_err(|_| CurveError::BadPoint(format!("exponent {v} out of range")))
                    };
                    terms.push((c, exp(ex)?, exp(ey)?, exp(ez)?));
                }
                CurveModel::plane_with_cap(self.p, self.e, &terms, cap)
            }
            other => Err(CurveError::UnknownKind(other.to_string())),
        }
    }
}
