//! Closed forms for point counts and genera of glued curves.
//!
//! The Möbius forms count closed points of degree exactly `t`; the
//! telescoping forms use `(N_t - N_{t-1}) / t` and are evaluated as exact
//! rationals since they need not be integers once `t >= 3`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::primitive_element_count;
use crate::curve::PointCountTable;

/// `O_t = (1/t) sum_{d | t} mu(t/d) q^d`, the number of closed points of degree
/// `t` on the projective line (`t >= 2`) or monic irreducibles of degree `t`.
pub fn mobius_orbit_count(q: u64, t: u32) -> BigInt {
    BigInt::from(primitive_element_count(q, t as u64)) / BigInt::from(t)
}

/// `#P^1_{[q,n]}(F_q) = q + 1 + sum_{t=2}^{n} O_t`.
pub fn glued_projective_line_count(q: u64, n: u32) -> BigInt {
    (2..=n).fold(BigInt::from(q) + 1, |acc, t| acc + mobius_orbit_count(q, t))
}

/// `p_a(P^1_{[q,n]}) = sum_{t=2}^{n} (t - 1) O_t`.
pub fn glued_projective_line_genus(q: u64, n: u32) -> BigInt {
    (2..=n).fold(BigInt::zero(), |acc, t| acc + BigInt::from(t - 1) * mobius_orbit_count(q, t))
}

fn ratio(num: BigInt, den: u32) -> BigRational {
    BigRational::new(num, BigInt::from(den))
}

/// `q + 1 + sum_{t=2}^{n} (q^t - q^{t-1}) / t`, as printed in the literature.
/// Agrees with [`glued_projective_line_count`] for `n = 2` only.
pub fn telescoped_projective_line_count(q: u64, n: u32) -> BigRational {
    let q = BigInt::from(q);
    (2..=n).fold(BigRational::from_integer(&q + 1), |acc, t| {
        acc + ratio(q.pow(t) - q.pow(t - 1), t)
    })
}

/// `sum_{t=2}^{n} (q^t - q^{t-1})(t - 1) / t`.
pub fn telescoped_projective_line_genus(q: u64, n: u32) -> BigRational {
    let q = BigInt::from(q);
    (2..=n).fold(BigRational::zero(), |acc, t| {
        acc + ratio((q.pow(t) - q.pow(t - 1)) * BigInt::from(t - 1), t)
    })
}

/// `N_1 + sum_{t in ts} (N_t - N_{t-1}) / t`. Panics if the table is too short.
pub fn telescoping_count(tbl: &PointCountTable, ts: &[u32]) -> BigRational {
    let n = |i: u32| BigInt::from(tbl.get(i).expect("table covers every t"));
    ts.iter()
        .fold(BigRational::from_integer(n(1)), |acc, &t| acc + ratio(n(t) - n(t - 1), t))
}

/// `sum_{i=1}^{n-1} N_i / (i + 1) + N_n / n`, the second printed form of the
/// telescoping count. It equals [`telescoping_count`] with `ts = 2..=n` only
/// when `n = 2`.
pub fn telescoping_second_form(tbl: &PointCountTable, n: u32) -> BigRational {
    let nn = |i: u32| BigInt::from(tbl.get(i).expect("table covers 1..=n"));
    (1..n).fold(ratio(nn(n), n), |acc, i| acc + ratio(nn(i), i + 1))
}
