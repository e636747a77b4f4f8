//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Every comparison below is exact (integers or rationals); the only
//! tolerance is the wall-clock limit of criterion 1.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;

use singular_curves::curve::{
    counts_from_numerator, extremality_of_c, zeta_numerator_from_counts, CurveModel, Extremality,
};
use singular_curves::gf::DEFAULT_CAP;
use singular_curves::glue::{
    build_glued_curve, build_selective_glued_curve, enumerate_profiles, glued_projective_line_count,
    telescoped_projective_line_count, random_profile, ProfileConstraints, SingularCurve, SingularFiber,
    UnibranchThickening,
};
use singular_curves::zeta::{
    all_roots_minus_one, count_points_direct, count_points_singular, count_points_singular_with,
    lemma_e0_structural, singular_factor,
};

const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(60);
const RANDOM_PROFILES: u64 = 1000;

type Outcome = Result<String, String>;

fn p1(p: u64, e: u32) -> CurveModel {
    CurveModel::projective_line(p, e).unwrap()
}

/// `(p, e)` for each prime power used below.
fn prime_power(q: u64) -> (u64, u32) {
    match q {
        4 => (2, 2),
        8 => (2, 3),
        9 => (3, 2),
        q => (q, 1),
    }
}

fn plane(p: u64, e: u32, terms: &[(i64, u32, u32, u32)]) -> CurveModel {
    CurveModel::plane(p, e, terms).unwrap()
}

/// y^2 z + y z^2 = x^3
fn supersingular_cubic(e: u32) -> CurveModel {
    plane(2, e, &[(1, 0, 2, 1), (1, 0, 1, 2), (1, 3, 0, 0)])
}

fn cubics() -> Vec<CurveModel> {
    vec![
        supersingular_cubic(1),
        // y^2 z + x y z = x^3 + z^3
        plane(2, 1, &[(1, 0, 2, 1), (1, 1, 1, 1), (1, 3, 0, 0), (1, 0, 0, 3)]),
        // y^2 z = x^3 + x z^2 + z^3
        plane(3, 1, &[(1, 0, 2, 1), (-1, 3, 0, 0), (-1, 1, 0, 2), (-1, 0, 0, 3)]),
        // y^2 z = x^3 - x z^2 + z^3
        plane(3, 1, &[(1, 0, 2, 1), (-1, 3, 0, 0), (1, 1, 0, 2), (-1, 0, 0, 3)]),
    ]
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut mismatches = Vec::new();
    let mut run = |c: &CurveModel, y: &SingularCurve, top: u32| {
        let z = count_points_singular(y, top).unwrap();
        for n in 1..=top {
            let direct = count_points_direct(y, n).unwrap();
            checked += 1;
            if direct != z.counts_y[n as usize - 1] {
                mismatches.push(format!("{c} n={n}: {} vs {direct}", z.counts_y[n as usize - 1]));
            }
        }
    };
    for q in [2u64, 3, 4, 5] {
        let (p, e) = prime_power(q);
        let c = p1(p, e);
        let top = (1..=8).filter(|&n| q.pow(n) <= DEFAULT_CAP).max().unwrap();
        for n_glue in 2..=4 {
            run(&c, &build_glued_curve(&c, n_glue).unwrap(), top);
        }
        run(&c, &build_selective_glued_curve(&c, &[3]).unwrap(), top);
        run(&c, &build_selective_glued_curve(&c, &[2, 4]).unwrap(), top);
    }
    // Genus one normalizations; plane enumeration costs q^(2n).
    for (c, top, glue) in [
        (supersingular_cubic(1), 8, 4),
        (cubics()[1].clone(), 8, 4),
        (cubics()[2].clone(), 5, 3),
        (supersingular_cubic(2), 4, 2),
    ] {
        run(&c, &build_glued_curve(&c, glue).unwrap(), top);
    }
    let elapsed = start.elapsed();
    let detail = format!("{checked} (curve, n) pairs in {:.1}s", elapsed.as_secs_f64());
    if !mismatches.is_empty() {
        return Err(format!("{detail}; mismatches: {}", mismatches.join("; ")));
    }
    if elapsed > ORACLE_TIME_LIMIT {
        return Err(format!("{detail}; over the {}s limit", ORACLE_TIME_LIMIT.as_secs()));
    }
    Ok(detail)
}

fn criterion_2() -> Outcome {
    let mut failures = Vec::new();
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let (p, e) = prime_power(q);
        let y = build_glued_curve(&p1(p, e), 2).unwrap();
        let expected_count = q + 1 + (q * q - q) / 2;
        let expected_genus = (q * q - q) / 2;
        let zeta = count_points_singular(&y, 1).unwrap().counts_y[0];
        let direct = count_points_direct(&y, 1).unwrap();
        if zeta != expected_count || direct != expected_count || y.arithmetic_genus() != expected_genus {
            failures.push(format!(
                "q={q}: count {zeta}/{direct} vs {expected_count}, p_a {} vs {expected_genus}",
                y.arithmetic_genus()
            ));
        }
    }
    let mut comparisons = Vec::new();
    for q in [2u64, 3, 4, 5] {
        let (p, e) = prime_power(q);
        for n in 3..=4 {
            let y = build_glued_curve(&p1(p, e), n).unwrap();
            let enumerated = BigInt::from(count_points_direct(&y, 1).unwrap());
            let mobius = glued_projective_line_count(q, n);
            if enumerated != mobius {
                failures.push(format!("q={q} n={n}: enumeration {enumerated} vs Möbius {mobius}"));
            }
            let printed = telescoped_projective_line_count(q, n);
            if printed != BigRational::from_integer(mobius.clone()) {
                comparisons.push(format!("q={q},n={n}: {mobius} vs printed {printed}"));
            }
        }
    }
    println!("  n >= 3 comparison with the printed closed form (not asserted): {}", comparisons.join("; "));
    if !comparisons.iter().any(|c| c.starts_with("q=2,n=3:") && c.ends_with("16/3")) {
        failures.push("expected the q=2, n=3 mismatch (16/3) to be reported".into());
    }
    if failures.is_empty() {
        Ok(format!("n=2 exact for 7 values of q; n in 3..=4 Möbius form matches enumeration; {} printed-form mismatches reported", comparisons.len()))
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_3() -> Outcome {
    let c = p1(2, 1);
    let cons = ProfileConstraints::default();
    let (mut agree, mut holds) = (0u64, 0u64);
    for seed in 0..RANDOM_PROFILES {
        let y = random_profile(&c, seed, 8, &cons).unwrap();
        assert!(y.delta() <= 8);
        let structural = lemma_e0_structural(&y);
        holds += structural as u64;
        agree += (structural == all_roots_minus_one(&singular_factor(&y).unwrap())) as u64;
    }
    let profiles = enumerate_profiles(3, 4, false);
    let total = profiles.len();
    let exhaustive = profiles
        .into_iter()
        .filter(|fibers| {
            let y = SingularCurve::new(c.clone(), fibers.clone(), vec![]).unwrap();
            lemma_e0_structural(&y) == all_roots_minus_one(&singular_factor(&y).unwrap())
        })
        .count();
    let detail = format!(
        "random {agree}/{RANDOM_PROFILES} ({holds} satisfy the condition), exhaustive {exhaustive}/{total}"
    );
    if agree == RANDOM_PROFILES && exhaustive == total && holds > 0 && holds < RANDOM_PROFILES {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_4() -> Outcome {
    let mut curves: Vec<CurveModel> = [2u64, 3, 4, 5, 7, 8, 9]
        .iter()
        .map(|&q| {
            let (p, e) = prime_power(q);
            p1(p, e)
        })
        .collect();
    curves.extend(cubics());
    curves.push(supersingular_cubic(2));
    let mut failures = Vec::new();
    for c in &curves {
        let tbl = c.count_points(2).unwrap();
        let (n1, n2) = (BigInt::from(tbl.counts[0]), BigInt::from(tbl.counts[1]));
        let expected = BigRational::from_integer(n1.clone()) + BigRational::new(n2 - n1, BigInt::from(2));
        let y = build_glued_curve(c, 2).unwrap();
        let got = count_points_singular_with(&y, &tbl.truncated(1)).unwrap().counts_y[0];
        let direct = count_points_direct(&y, 1).unwrap();
        if BigRational::from_integer(BigInt::from(got)) != expected || got != direct {
            failures.push(format!("{c}: {got}/{direct} vs {expected}"));
        }
    }
    if failures.is_empty() {
        Ok(format!("{} curves", curves.len()))
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let mut summary = Vec::new();
    for c in cubics() {
        let q = c.q() as i128;
        let tbl = c.count_points(6).unwrap();
        for (i, &n) in tbl.counts.iter().enumerate() {
            let qi = q.pow(i as u32 + 1);
            let diff = n as i128 - qi - 1;
            if diff * diff > 4 * qi {
                failures.push(format!("{c}: Weil bound fails at i={}", i + 1));
            }
        }
        let z = zeta_numerator_from_counts(&tbl.truncated(1), 1).unwrap();
        let series = counts_from_numerator(&z, 6);
        // Independent closed form: s_n = α^n + ᾱ^n with s_n = a s_{n-1} - q s_{n-2}.
        let a = q + 1 - tbl.counts[0] as i128;
        let mut s = vec![2i128, a];
        for k in 2..=6 {
            s.push(a * s[k - 1] - q * s[k - 2]);
        }
        for n in 2..=6usize {
            let expected = tbl.counts[n - 1];
            if series[n - 1] != BigInt::from(expected) || q.pow(n as u32) + 1 - s[n] != expected as i128 {
                failures.push(format!("{c}: N_{n} = {expected}, series {}", series[n - 1]));
            }
        }
        summary.push(format!("q={} N={:?}", q, tbl.counts));
    }
    if failures.is_empty() {
        Ok(summary.join("; "))
    } else {
        Err(failures.join("; "))
    }
}

/// The glued count over `F_q` as a function of the trace `a` of a genus one
/// curve: `N_1 + sum_{t in ts} (N_t - N_{t-1}) / t`.
fn telescoped_count_for_trace(q: i128, a: i128, ts: &[u32]) -> BigRational {
    let mut s = vec![BigInt::from(2), BigInt::from(a)];
    let top = *ts.iter().max().unwrap() as usize;
    for k in 2..=top {
        let next = BigInt::from(a) * &s[k - 1] - BigInt::from(q) * &s[k - 2];
        s.push(next);
    }
    let n = |i: usize| BigInt::from(q).pow(i as u32) + 1 - &s[i];
    ts.iter().fold(BigRational::from_integer(n(1)), |acc, &t| {
        acc + BigRational::new(n(t as usize) - n(t as usize - 1), BigInt::from(t))
    })
}

fn criterion_6() -> Outcome {
    let c = supersingular_cubic(2);
    let q = c.q();
    let n_max = 5;
    let tbl = c.count_points(n_max).unwrap();
    let z = zeta_numerator_from_counts(&tbl.truncated(1), 1).unwrap();
    let flag = extremality_of_c(&z, q);
    let maximal = tbl.counts[0] == q + 1 + 2 * 2 && flag == Extremality::Maximal;

    let ts = [3u32];
    let y = build_selective_glued_curve(&c, &ts).unwrap();
    let report = count_points_singular_with(&y, &tbl).unwrap();
    let delta = report.delta;
    let mut misses = Vec::new();
    for n in (1..=n_max).step_by(2) {
        let bound = tbl.counts[n as usize - 1] + delta;
        let got = report.counts_y[n as usize - 1];
        if got != bound {
            misses.push(format!("n={n}: {got} vs N_n + Δ = {bound}"));
        }
    }

    // The telescoped count, maximized over every Weil-admissible trace,
    // peaks exactly at the maximal curve.
    let counts: Vec<(i128, BigRational)> = (-4..=4).map(|a| (a, telescoped_count_for_trace(q as i128, a, &ts))).collect();
    let best = counts.iter().map(|(_, v)| v).max().unwrap();
    let argmax: Vec<i128> = counts.iter().filter(|(_, v)| v == best).map(|(a, _)| *a).collect();
    let direct = count_points_direct(&y, 1).unwrap();
    let faithful = argmax == [-4] && BigRational::from_integer(BigInt::from(direct)) == *best;

    let detail = format!(
        "N_1 = {} flagged {flag:?}; C_[4;3]: Δ = {delta}, counts {:?} vs N {:?}; \
         glued count {direct} is the maximum over traces (argmax {argmax:?}): {faithful}",
        tbl.counts[0], report.counts_y, tbl.counts
    );
    if maximal && faithful && misses.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; upper bound not reached: {}", misses.join(", ")))
    }
}

fn criterion_7() -> Outcome {
    // Seminormal fibers have d_P <= Δ and d_Q <= 2Δ, so branch degree 2δ is exhaustive.
    let c = p1(7, 1);
    let n1 = c.count_points(1).unwrap().counts[0];
    let mut failures = Vec::new();
    let mut checked = 0;
    for delta in 1..=3u32 {
        let profiles: Vec<Vec<SingularFiber>> = enumerate_profiles(delta, 2 * delta, true)
            .into_iter()
            .filter(|p| p.iter().map(|f| f.delta()).sum::<u32>() == delta)
            .collect();
        for fibers in profiles {
            checked += 1;
            let all_two = fibers.iter().all(|f| f.d_p() == 1 && f.branches() == [2]);
            let y = SingularCurve::new(c.clone(), fibers.clone(), vec![]).unwrap();
            let count = count_points_singular(&y, 1).unwrap().counts_y[0];
            let at_bound = count == n1 + delta as u64;
            if count > n1 + delta as u64 || at_bound != all_two {
                failures.push(format!("δ={delta} {fibers:?}: {count}"));
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{checked} seminormal profiles with δ <= 3 over P^1(F_7)"))
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    let mut bases: Vec<SingularCurve> = vec![
        build_glued_curve(&p1(2, 1), 2).unwrap(),
        build_glued_curve(&p1(3, 1), 3).unwrap(),
        build_selective_glued_curve(&p1(2, 2), &[3]).unwrap(),
        SingularCurve::smooth(p1(5, 1)),
    ];
    for c in cubics() {
        bases.push(build_glued_curve(&c, 2).unwrap());
    }
    for y in bases {
        let c = y.normalization().clone();
        let glued: Vec<_> = y.fibers().iter().flat_map(|f| f.concrete().unwrap().to_vec()).collect();
        let free = |d: u32| {
            c.closed_points_of_degree(d)
                .unwrap()
                .into_iter()
                .filter(|cp| !glued.contains(cp))
                .collect::<Vec<_>>()
        };
        let mut thickenings = Vec::new();
        if let Some(cp) = free(1).into_iter().next() {
            thickenings.push(UnibranchThickening::at(cp, 2).unwrap());
        }
        if let Some(cp) = free(3).into_iter().last() {
            thickenings.push(UnibranchThickening::at(cp, 1).unwrap());
        }
        thickenings.push(UnibranchThickening::new(2, 3).unwrap());
        let increment: u64 = thickenings.iter().map(|t| t.degree() as u64 * t.y() as u64).sum();

        let thick = SingularCurve::new(c.clone(), y.fibers().to_vec(), thickenings).unwrap();
        cases += 1;
        if thick.arithmetic_genus() != y.arithmetic_genus() + increment {
            failures.push(format!("{c}: p_a {} -> {}", y.arithmetic_genus(), thick.arithmetic_genus()));
        }
        let n_max = if c.genus() == 0 || c.q() == 2 { 8 } else { 6 };
        let before = count_points_singular(&y, n_max).unwrap();
        let after = count_points_singular(&thick, n_max).unwrap();
        if before.counts_y != after.counts_y || before.singular_factor != after.singular_factor {
            failures.push(format!("{c}: count table changed"));
        }
    }
    if failures.is_empty() {
        Ok(format!("{cases} curves, p_a shifted by sum d·y, tables unchanged"))
    } else {
        Err(failures.join("; "))
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("oracle equivalence of zeta and direct counts", criterion_1),
        ("glued projective line count and genus at n = 2", criterion_2),
        ("structural and polynomial root tests agree", criterion_3),
        ("telescoping count at n = 2", criterion_4),
        ("Weil bounds and numerator round trip", criterion_5),
        ("maximal curve and odd-degree selective gluing", criterion_6),
        ("profile-level extremality", criterion_7),
        ("thickenings change genus only", criterion_8),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} PASS {title}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL {title}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
