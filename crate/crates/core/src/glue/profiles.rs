//! Abstract singularity profiles: seeded random ones for property tests and
//! exhaustive lists for small `Δ`.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GlueError, SingularCurve, SingularFiber};
use crate::curve::CurveModel;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileConstraints {
    /// Only fibers with at least two geometric branches.
    pub seminormal_only: bool,
    pub d_p_range: RangeInclusive<u32>,
    pub branch_degree_range: RangeInclusive<u32>,
}

impl Default for ProfileConstraints {
    fn default() -> Self {
        Self {
            seminormal_only: false,
            d_p_range: 1..=3,
            branch_degree_range: 1..=6,
        }
    }
}

/// For each admissible `d_P`, the admissible branch degrees (multiples of `d_P`).
fn admissible(cons: &ProfileConstraints) -> Vec<(u32, Vec<u32>)> {
    cons.d_p_range
        .clone()
        .filter(|&d| d > 0)
        .map(|d_p| {
            let qs: Vec<u32> = cons
                .branch_degree_range
                .clone()
                .filter(|&d_q| d_q >= d_p && d_q % d_p == 0)
                .collect();
            (d_p, qs)
        })
        .filter(|(_, qs)| !qs.is_empty())
        .collect()
}

/// A random abstract profile on `c` with `Δ_Y <= budget`, reproducible from
/// `seed`.
pub fn random_profile(
    c: &CurveModel,
    seed: u64,
    budget: u64,
    cons: &ProfileConstraints,
) -> Result<SingularCurve, GlueError> {
    let shapes = admissible(cons);
    if shapes.is_empty() {
        return Err(GlueError::Unsatisfiable(format!(
            "no branch degree in {:?} is a multiple of a d_P in {:?}",
            cons.branch_degree_range, cons.d_p_range
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fibers = Vec::new();
    let mut remaining = budget;
    let mut attempts = 4 * budget + 4;
    while remaining > 0 && attempts > 0 {
        attempts -= 1;
        if rng.gen_ratio(1, 6) {
            break;
        }
        let fiber = if rng.gen_ratio(1, 3) && shapes[0].0 == 1 && shapes[0].1.contains(&2) {
            SingularFiber::new(1, vec![2])?
        } else {
            let (d_p, qs) = &shapes[rng.gen_range(0..shapes.len())];
            let mut branches = vec![qs[rng.gen_range(0..qs.len())]];
            while rng.gen_bool(0.5) {
                branches.push(qs[rng.gen_range(0..qs.len())]);
            }
            SingularFiber::new(*d_p, branches)?
        };
        if cons.seminormal_only && fiber.geometric_size() < 2 {
            continue;
        }
        if fiber.delta() as u64 <= remaining {
            remaining -= fiber.delta() as u64;
            fibers.push(fiber);
        }
    }
    SingularCurve::new(c.clone(), fibers, Vec::new())
}

/// Nondecreasing branch lists over `qs[start..]` with `sum - d_p <= max_delta`.
fn branch_lists(d_p: u32, qs: &[u32], max_delta: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let sum: u32 = prefix.iter().sum();
    if !prefix.is_empty() {
        out.push(prefix.clone());
    }
    let start = prefix.last().map_or(0, |last| qs.iter().position(|q| q == last).unwrap());
    for &d_q in &qs[start..] {
        if sum + d_q > d_p + max_delta {
            break;
        }
        prefix.push(d_q);
        branch_lists(d_p, qs, max_delta, prefix, out);
        prefix.pop();
    }
}

/// Every fiber shape with branch degrees at most `max_branch_degree` and
/// `Δ`-contribution at most `max_delta`.
fn fiber_shapes(max_delta: u32, max_branch_degree: u32, seminormal_only: bool) -> Vec<SingularFiber> {
    let mut shapes = Vec::new();
    for d_p in 1..=max_branch_degree {
        let qs: Vec<u32> = (d_p..=max_branch_degree).filter(|d| d % d_p == 0).collect();
        let mut lists = Vec::new();
        branch_lists(d_p, &qs, max_delta, &mut Vec::new(), &mut lists);
        for branches in lists {
            let f = SingularFiber::new(d_p, branches).expect("admissible by construction");
            if !seminormal_only || f.geometric_size() >= 2 {
                shapes.push(f);
            }
        }
    }
    shapes.sort();
    shapes
}

/// All multisets of fibers with total `Δ <= max_delta` and branch degrees at
/// most `max_branch_degree`, the empty profile included. Unibranch fibers
/// (`Δ`-contribution 0) appear at most once each so the list stays finite.
pub fn enumerate_profiles(max_delta: u32, max_branch_degree: u32, seminormal_only: bool) -> Vec<Vec<SingularFiber>> {
    fn go(
        shapes: &[SingularFiber],
        start: usize,
        budget: u32,
        current: &mut Vec<SingularFiber>,
        out: &mut Vec<Vec<SingularFiber>>,
    ) {
        out.push(current.clone());
        for (i, f) in shapes.iter().enumerate().skip(start) {
            if f.delta() > budget {
                continue;
            }
            let next = if f.delta() == 0 { i + 1 } else { i };
            current.push(f.clone());
            go(shapes, next, budget - f.delta(), current, out);
            current.pop();
        }
    }
    let shapes = fiber_shapes(max_delta, max_branch_degree, seminormal_only);
    let mut out = Vec::new();
    go(&shapes, 0, max_delta, &mut Vec::new(), &mut out);
    out
}
