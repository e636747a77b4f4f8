//! The factor `Z_Y(t) / Z_C(t)` contributed by the singularities of `Y`, and
//! point counts of `Y` over every `F_{q^n}`.
//!
//! For a closed singular point `P` of degree `d_P` with closed branch points
//! `Q` of degrees `d_Q`, the local factor is
//! `prod_Q (1 - t^{d_Q}) / (1 - t^{d_P})`: a polynomial of degree
//! `sum d_Q - d_P` whose inverse roots `β_j` are roots of unity. Then
//! `#Y(F_{q^n}) = N_n - sum_j β_j^n`. Roots are never computed; power sums come
//! from Newton's identities and root shapes from exact coefficient comparison.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::curve::{CurveError, GeometricPoint, PointCountTable};
use crate::gf::{Embedding, GfError};
use crate::glue::{SingularCurve, SingularFiber};

pub use crate::poly::IntPolynomial;

#[derive(Debug, Error)]
pub enum ZetaError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("fiber d_P = {d_p}, branches {branches:?}: 1 - t^d_P does not divide the branch product")]
    InexactDivision { d_p: u32, branches: Vec<u32> },
    #[error("#Y(F_q^{n}) would be {value}: gluing data inconsistent with the normalization")]
    NegativeCount { n: u32, value: BigInt },
    #[error("the direct count needs concrete fibers")]
    AbstractFiber,
    #[error("point {0} of a fiber does not lie on the normalization")]
    PointOffCurve(String),
}

/// `prod_Q (1 - t^{d_Q}) / (1 - t^{d_P})` for one fiber.
pub fn fiber_factor(fiber: &SingularFiber) -> Result<IntPolynomial, ZetaError> {
    let product = fiber
        .branches()
        .iter()
        .fold(IntPolynomial::one(), |acc, &d_q| acc.mul_one_minus_t_pow(d_q as usize));
    product
        .div_exact(&IntPolynomial::one_minus_t_pow(fiber.d_p() as usize))
        .ok_or_else(|| ZetaError::InexactDivision {
            d_p: fiber.d_p(),
            branches: fiber.branches().to_vec(),
        })
}

/// Product of the fiber factors; thickenings contribute 1.
pub fn singular_factor(y: &SingularCurve) -> Result<IntPolynomial, ZetaError> {
    y.fibers()
        .iter()
        .try_fold(IntPolynomial::one(), |acc, f| Ok(&acc * &fiber_factor(f)?))
}

/// `p_1..p_{n_max}`, power sums of the inverse roots of `f = 1 + c_1 t + ...`:
/// `p_k = -k c_k - sum_{i=1}^{k-1} c_i p_{k-i}`.
pub fn power_sums(f: &IntPolynomial, n_max: u32) -> Vec<BigInt> {
    debug_assert!(f.coeff(0).is_one(), "constant term must be 1");
    let mut p: Vec<BigInt> = Vec::with_capacity(n_max as usize);
    for k in 1..=n_max as usize {
        let mut v = -BigInt::from(k) * f.coeff(k);
        for i in 1..k {
            v -= f.coeff(i) * &p[k - i - 1];
        }
        p.push(v);
    }
    p
}

/// `f = (1 + t)^{deg f}`, i.e. every inverse root is `-1`.
pub fn all_roots_minus_one(f: &IntPolynomial) -> bool {
    *f == IntPolynomial::binomial_power(&BigInt::one(), f.degree().unwrap_or(0))
}

/// `f = (1 - t)^{deg f}`, i.e. every inverse root is `+1`.
pub fn all_roots_plus_one(f: &IntPolynomial) -> bool {
    *f == IntPolynomial::binomial_power(&-BigInt::one(), f.degree().unwrap_or(0))
}

/// Every fiber is unibranch (`branches = [d_P]`) or a rational point under
/// which a single degree-2 closed point is glued.
pub fn lemma_e0_structural(y: &SingularCurve) -> bool {
    y.fibers()
        .iter()
        .all(|f| f.branches() == [f.d_p()] || (f.d_p() == 1 && f.branches() == [2]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZetaReport {
    pub singular_factor: IntPolynomial,
    pub delta: u64,
    /// `counts_y[n - 1] = #Y(F_{q^n})`.
    pub counts_y: Vec<u64>,
    /// `counts_c[n - 1] = N_n`.
    pub counts_c: Vec<u64>,
    pub all_minus_one: bool,
    pub all_plus_one: bool,
}

/// Counts of `Y` from `N_1..N_{n_max}` of the normalization and the singular
/// factor.
pub fn count_points_singular(y: &SingularCurve, n_max: u32) -> Result<ZetaReport, ZetaError> {
    let tbl = y.normalization().count_points(n_max)?;
    count_points_singular_with(y, &tbl)
}

/// As [`count_points_singular`], reusing a count table of the normalization.
pub fn count_points_singular_with(y: &SingularCurve, tbl: &PointCountTable) -> Result<ZetaReport, ZetaError> {
    let f = singular_factor(y)?;
    let sums = power_sums(&f, tbl.n_max());
    let mut counts_y = Vec::with_capacity(sums.len());
    for (i, s) in sums.iter().enumerate() {
        let value = BigInt::from(tbl.counts[i]) - s;
        let n = i as u32 + 1;
        if value.is_negative() {
            return Err(ZetaError::NegativeCount { n, value });
        }
        counts_y.push(value.to_u64().expect("bounded by N_n + Δ"));
    }
    debug_assert_eq!(f.degree().unwrap_or(0) as u64, y.delta());
    Ok(ZetaReport {
        all_minus_one: all_roots_minus_one(&f),
        all_plus_one: all_roots_plus_one(&f),
        delta: y.delta(),
        singular_factor: f,
        counts_y,
        counts_c: tbl.counts.clone(),
    })
}

/// `#Y(F_{q^n})` straight from the gluing data: enumerate `C(F_{q^n})`, drop
/// every point lying in a fiber, add the `d_P` points of each singular closed
/// point with `d_P | n`.
pub fn count_points_direct(y: &SingularCurve, n: u32) -> Result<u64, ZetaError> {
    let c = y.normalization();
    let target = c.field(n)?;
    let mut embeddings: HashMap<u32, Embedding> = HashMap::new();
    let mut removed: HashSet<GeometricPoint> = HashSet::new();
    let mut added = 0u64;
    for fiber in y.fibers() {
        let points = fiber.concrete().ok_or(ZetaError::AbstractFiber)?;
        for cp in points {
            if n % cp.degree() != 0 {
                continue;
            }
            let source = cp.representative().field();
            if !embeddings.contains_key(&source.m()) {
                embeddings.insert(source.m(), Embedding::new(source, &target)?);
            }
            let emb = &embeddings[&source.m()];
            for pt in cp.orbit() {
                let image = pt.embed(emb)?;
                if !c.contains(&image) {
                    return Err(ZetaError::PointOffCurve(image.to_string()));
                }
                removed.insert(image);
            }
        }
        if n % fiber.d_p() == 0 {
            added += fiber.d_p() as u64;
        }
    }
    let smooth = c.enumerate_points(n)?.filter(|pt| !removed.contains(pt)).count() as u64;
    Ok(smooth + added)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSide {
    Upper,
    Lower,
    /// `Δ = 0`: both bounds equal `N_n`.
    Both,
    Interior,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub n: u32,
    pub count_c: u64,
    pub count_y: u64,
    pub lower: i128,
    pub upper: i128,
    pub side: BoundSide,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalityReport {
    pub delta: u64,
    pub all_minus_one: bool,
    pub all_plus_one: bool,
    /// Both flags hold only because the factor is the constant 1.
    pub vacuous: bool,
    pub rows: Vec<BoundRow>,
    pub note: String,
}

/// `N_n - Δ <= #Y(F_{q^n}) <= N_n + Δ` for `n = 1..=n_max`, with the side
/// reached in each row.
pub fn extremality_report(y: &SingularCurve, n_max: u32) -> Result<ExtremalityReport, ZetaError> {
    let z = count_points_singular(y, n_max)?;
    Ok(extremality_from(&z))
}

pub fn extremality_from(z: &ZetaReport) -> ExtremalityReport {
    let d = z.delta as i128;
    let rows = z
        .counts_c
        .iter()
        .zip(&z.counts_y)
        .enumerate()
        .map(|(i, (&c, &yv))| {
            let (lower, upper) = (c as i128 - d, c as i128 + d);
            let side = match yv as i128 {
                _ if d == 0 => BoundSide::Both,
                v if v == upper => BoundSide::Upper,
                v if v == lower => BoundSide::Lower,
                _ => BoundSide::Interior,
            };
            BoundRow {
                n: i as u32 + 1,
                count_c: c,
                count_y: yv,
                lower,
                upper,
                side,
            }
        })
        .collect();
    let vacuous = z.delta == 0;
    let note = if vacuous {
        "Δ = 0: the singular factor is 1, both flags hold vacuously and the bounds collapse to N_n".to_string()
    } else if z.all_minus_one {
        "every β_j = -1: #Y(F_{q^n}) = N_n + Δ for odd n and N_n - Δ for even n".to_string()
    } else if z.all_plus_one {
        "every β_j = +1: #Y(F_{q^n}) = N_n - Δ for every n".to_string()
    } else {
        "mixed inverse roots: the bounds are not attained for every n".to_string()
    };
    ExtremalityReport {
        delta: z.delta,
        all_minus_one: z.all_minus_one,
        all_plus_one: z.all_plus_one,
        vacuous,
        rows,
        note,
    }
}

/// `-p_n` for the singular factor alone: `#Y(F_{q^n}) - N_n`, usable for
/// abstract profiles on any normalization.
pub fn count_offsets(y: &SingularCurve, n_max: u32) -> Result<Vec<BigInt>, ZetaError> {
    Ok(power_sums(&singular_factor(y)?, n_max).into_iter().map(|s| -s).collect())
}

/// Whether `f` divides `prod_fibers prod_Q (1 - t^{d_Q})` exactly.
pub fn divides_branch_product(y: &SingularCurve, f: &IntPolynomial) -> bool {
    let product = y
        .fibers()
        .iter()
        .flat_map(|fib| fib.branches().iter())
        .fold(IntPolynomial::one(), |acc, &d_q| acc.mul_one_minus_t_pow(d_q as usize));
    product.div_exact(f).is_some()
}
